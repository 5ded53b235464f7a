//! Line-oriented scene files.
//!
//! ```text
//! # z ↦ z² on the square circle, conjugation symmetry
//! [complex]
//! vertex 1 colour 0
//! vertex i colour 1
//! simplex 1 i
//!
//! [action]
//! generator c = (i -i)
//!
//! [map]
//! level 1
//! {1} -> 1
//!
//! [smooth]
//! point {1}
//! rho c = [-1]
//! dphi = [2]
//!
//! [options]
//! policy all
//! ```
//!
//! Sections: `complex`, `action`, `map`, `smooth`, `sign`, `options`.
//! Matrices are written `[a b; c d]` with entries `p/q`; `[]` is the empty
//! matrix. Group elements in `rho` lines are products of generator names
//! such as `r*s` (`e` is the identity).

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use thiserror::Error;

use crate::exact_linalg::{RatMatrix, Rational};
use crate::group::{PermGroup, Subgroup};
use crate::lefschetz::{ComponentDatum, FixedOrbitDatum, SubgroupPolicy, SubmanifoldDatum};
use crate::sign_character::OrthogonalActionData;
use crate::simplicial::{
    components_of, setwise_stabilizer, CellularMapSpec, ColouredComplex, GComplex, SimplexId, Subdivision, VertexPath,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line} [{section}]: {message}")]
pub struct SceneError {
    pub section: String,
    pub line: usize,
    pub message: String,
}

const SECTIONS: [&str; 6] = ["complex", "action", "map", "smooth", "sign", "options"];

struct Section {
    header: usize,
    lines: Vec<(usize, String)>,
}

/// An orthogonal action and a commuting automorphism, for the `sign` command.
#[derive(Clone, Debug)]
pub struct SignProblem {
    pub data: OrthogonalActionData,
    pub a: RatMatrix,
}

#[derive(Clone, Debug)]
pub struct Scene {
    tower: Option<Subdivision>,
    group: Arc<PermGroup>,
    points: Vec<String>,
    generators: Vec<(String, usize)>,
    map: Option<CellularMapSpec>,
    fixed_points: Vec<FixedOrbitDatum>,
    submanifold: Option<SubmanifoldDatum>,
    sign: Option<SignProblem>,
    policy: Option<SubgroupPolicy>,
}

impl Scene {
    pub fn tower(&self) -> Option<&Subdivision> {
        self.tower.as_ref()
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn generators(&self) -> &[(String, usize)] {
        &self.generators
    }

    pub fn map(&self) -> Option<&CellularMapSpec> {
        self.map.as_ref()
    }

    pub fn fixed_points(&self) -> &[FixedOrbitDatum] {
        &self.fixed_points
    }

    pub fn submanifold(&self) -> Option<&SubmanifoldDatum> {
        self.submanifold.as_ref()
    }

    pub fn has_smooth(&self) -> bool {
        !self.fixed_points.is_empty() || self.submanifold.is_some()
    }

    pub fn sign(&self) -> Option<&SignProblem> {
        self.sign.as_ref()
    }

    pub fn policy(&self) -> Option<SubgroupPolicy> {
        self.policy
    }

    /// Names of the points the group acts on (the vertices, if there is a
    /// complex).
    pub fn point_names(&self) -> &[String] {
        &self.points
    }
}

fn err(section: &str, line: usize, message: impl ToString) -> SceneError {
    SceneError { section: section.to_string(), line, message: message.to_string() }
}

fn split_sections(text: &str) -> Result<HashMap<String, Section>, SceneError> {
    let mut sections: HashMap<String, Section> = HashMap::new();
    let mut current: Option<String> = None;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
            let name = name.trim().to_string();
            if !SECTIONS.contains(&name.as_str()) {
                return Err(err(&name, line_no, format!("unknown section, expected one of {}", SECTIONS.join(", "))));
            }
            if sections.contains_key(&name) {
                return Err(err(&name, line_no, "section appears twice"));
            }
            sections.insert(name.clone(), Section { header: line_no, lines: Vec::new() });
            current = Some(name);
            continue;
        }
        match &current {
            Some(name) => sections.get_mut(name).expect("open section").lines.push((line_no, line.to_string())),
            None => return Err(err("-", line_no, "text before the first section header")),
        }
    }
    Ok(sections)
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let r: Rational = s.parse().ok()?;
    Some(r)
}

/// `[a b; c d]`, `[]` for the empty matrix.
pub fn parse_matrix(s: &str) -> Result<RatMatrix, String> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| format!("matrix must be bracketed: {s}"))?;
    if inner.trim().is_empty() {
        return Ok(RatMatrix::zeros(0, 0));
    }
    let rows = inner
        .split(';')
        .map(|row| {
            row.split_whitespace()
                .map(|x| parse_rational(x).ok_or_else(|| format!("not a rational number: {x}")))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    RatMatrix::from_rows(rows).map_err(|e| e.to_string())
}

fn parse_cycles(s: &str, index: &HashMap<&str, usize>, degree: usize) -> Result<Vec<usize>, String> {
    let mut perm: Vec<usize> = (0..degree).collect();
    let mut seen = BTreeSet::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let body = rest.strip_prefix('(').ok_or_else(|| format!("expected '(' in {s}"))?;
        let close = body.find(')').ok_or_else(|| format!("unclosed cycle in {s}"))?;
        let cycle = body[..close]
            .split_whitespace()
            .map(|n| index.get(n).copied().ok_or_else(|| format!("unknown point {n}")))
            .collect::<Result<Vec<_>, _>>()?;
        for (k, &p) in cycle.iter().enumerate() {
            if !seen.insert(p) {
                return Err(format!("point listed twice in {s}"));
            }
            perm[p] = cycle[(k + 1) % cycle.len()];
        }
        rest = body[close + 1..].trim_start();
    }
    Ok(perm)
}

fn parse_word(word: &str, gens: &[(String, usize)], group: &PermGroup) -> Result<usize, String> {
    let mut acc = 0;
    for part in word.split('*').map(str::trim) {
        let g = if part == "e" {
            0
        } else {
            gens.iter().find(|(n, _)| n == part).map(|(_, g)| *g).ok_or_else(|| format!("unknown generator {part}"))?
        };
        acc = group.mul(acc, g);
    }
    Ok(acc)
}

/// `key = value` with `key` possibly several words.
fn split_assignment(line: &str) -> Option<(&str, &str)> {
    let (k, v) = line.split_once('=')?;
    Some((k.trim(), v.trim()))
}

fn parse_complex(sec: &Section) -> Result<ColouredComplex, SceneError> {
    let mut names = Vec::new();
    let mut colours = Vec::new();
    let mut simplices = Vec::new();
    for (line, text) in &sec.lines {
        let words: Vec<&str> = text.split_whitespace().collect();
        match words.as_slice() {
            ["vertex", name, "colour", c] => {
                let c: usize = c.parse().map_err(|_| err("complex", *line, format!("bad colour {c}")))?;
                if name.contains(['{', '}', ',', '(', ')', '*']) {
                    return Err(err("complex", *line, format!("vertex name {name} uses a reserved character")));
                }
                names.push(name.to_string());
                colours.push(c);
            }
            ["simplex", rest @ ..] if !rest.is_empty() => simplices.push((*line, rest.iter().map(|s| s.to_string()).collect::<Vec<_>>())),
            _ => return Err(err("complex", *line, format!("expected `vertex NAME colour C` or `simplex V ...`, got `{text}`"))),
        }
    }
    let index: HashMap<&str, usize> = names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
    let maximal = simplices
        .iter()
        .map(|(line, vs)| {
            vs.iter()
                .map(|v| index.get(v.as_str()).copied().ok_or_else(|| err("complex", *line, format!("unknown vertex {v}"))))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    ColouredComplex::from_maximal(names, colours, &maximal).map_err(|e| err("complex", sec.header, e))
}

fn parse_action(sec: Option<&Section>, points: &mut Vec<String>) -> Result<(Arc<PermGroup>, Vec<(String, usize)>), SceneError> {
    let mut raw = Vec::new();
    if let Some(sec) = sec {
        for (line, text) in &sec.lines {
            if let Some(rest) = text.strip_prefix("points ") {
                if !points.is_empty() {
                    return Err(err("action", *line, "points are already given by the complex"));
                }
                points.extend(rest.split_whitespace().map(String::from));
            } else if let Some((lhs, rhs)) = text.strip_prefix("generator ").and_then(split_assignment) {
                if lhs.is_empty() || lhs == "e" || lhs.contains(char::is_whitespace) || lhs.contains('*') {
                    return Err(err("action", *line, format!("bad generator name `{lhs}`")));
                }
                raw.push((*line, lhs.to_string(), rhs.to_string()));
            } else {
                return Err(err("action", *line, format!("expected `generator NAME = (a b)...` or `points ...`, got `{text}`")));
            }
        }
    }
    let index: HashMap<&str, usize> = points.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
    let perms = raw
        .iter()
        .map(|(line, _, rhs)| parse_cycles(rhs, &index, points.len()).map_err(|m| err("action", *line, m)))
        .collect::<Result<Vec<_>, _>>()?;
    let header = sec.map_or(0, |s| s.header);
    let group = PermGroup::generate(points.len(), &perms).map_err(|e| err("action", header, e))?;
    let names = raw
        .into_iter()
        .zip(&perms)
        .map(|((_, name, _), p)| (name, group.index_of(p).expect("generator in group")))
        .collect();
    Ok((group, names))
}

enum Block {
    Point { line: usize, path: VertexPath, rho: Vec<(usize, String, RatMatrix)>, dphi: Option<RatMatrix> },
    Sub { line: usize, simplices: Vec<(usize, Vec<String>)>, comps: Vec<Comp> },
}

struct Comp {
    line: usize,
    anchor: String,
    rho: Vec<(usize, String, RatMatrix)>,
    dnu: Option<RatMatrix>,
}

fn parse_smooth_blocks(sec: &Section) -> Result<Vec<Block>, SceneError> {
    let e = |line: usize, m: String| err("smooth", line, m);
    let mut blocks: Vec<Block> = Vec::new();
    for (line, text) in &sec.lines {
        let line = *line;
        if let Some(p) = text.strip_prefix("point ") {
            let path = VertexPath::parse(p).ok_or_else(|| e(line, format!("bad vertex {p}")))?;
            blocks.push(Block::Point { line, path, rho: Vec::new(), dphi: None });
        } else if text == "submanifold" {
            blocks.push(Block::Sub { line, simplices: Vec::new(), comps: Vec::new() });
        } else if let Some(rest) = text.strip_prefix("simplex ") {
            match blocks.last_mut() {
                Some(Block::Sub { simplices, comps, .. }) if comps.is_empty() => {
                    simplices.push((line, rest.split_whitespace().map(String::from).collect()))
                }
                _ => return Err(e(line, "`simplex` belongs to a submanifold, before its components".into())),
            }
        } else if let Some(anchor) = text.strip_prefix("component ") {
            match blocks.last_mut() {
                Some(Block::Sub { comps, .. }) => {
                    comps.push(Comp { line, anchor: anchor.trim().to_string(), rho: Vec::new(), dnu: None })
                }
                _ => return Err(e(line, "`component` belongs to a submanifold".into())),
            }
        } else if let Some((lhs, rhs)) = split_assignment(text) {
            let m = parse_matrix(rhs).map_err(|m| e(line, m))?;
            let (rho, slot, key) = match blocks.last_mut() {
                Some(Block::Point { rho, dphi, .. }) => (rho, dphi, "dphi"),
                Some(Block::Sub { comps, .. }) if !comps.is_empty() => {
                    let c = comps.last_mut().expect("component");
                    (&mut c.rho, &mut c.dnu, "dnu")
                }
                _ => return Err(e(line, format!("`{lhs}` outside a point or component"))),
            };
            if let Some(word) = lhs.strip_prefix("rho ") {
                rho.push((line, word.trim().to_string(), m));
            } else if lhs == key {
                if slot.is_some() {
                    return Err(e(line, format!("{key} given twice")));
                }
                *slot = Some(m);
            } else {
                return Err(e(line, format!("expected `rho WORD = [...]` or `{key} = [...]`")));
            }
        } else {
            return Err(e(line, format!("unrecognized line `{text}`")));
        }
    }
    Ok(blocks)
}

fn action_data(
    section: &str,
    line: usize,
    subgroup: Subgroup,
    dim: usize,
    rho: &[(usize, String, RatMatrix)],
    gens: &[(String, usize)],
) -> Result<OrthogonalActionData, SceneError> {
    let group = subgroup.parent().clone();
    let mut images = Vec::new();
    for (l, word, m) in rho {
        let g = parse_word(word, gens, &group).map_err(|msg| err(section, *l, msg))?;
        images.push((g, m.clone()));
    }
    OrthogonalActionData::from_generators(subgroup, dim, images).map_err(|e| err(section, line, e))
}

pub fn parse_scene(text: &str) -> Result<Scene, SceneError> {
    let sections = split_sections(text)?;
    let complex = sections.get("complex").map(parse_complex).transpose()?;
    let mut points: Vec<String> = complex.as_ref().map(|c| c.names().to_vec()).unwrap_or_default();
    let (group, generators) = parse_action(sections.get("action"), &mut points)?;

    let mut tower = match complex {
        Some(c) => {
            // an invalid action is blamed on [action] when there is one
            let (name, header) = match sections.get("action") {
                Some(a) => ("action", a.header),
                None => ("complex", sections["complex"].header),
            };
            let gx = GComplex::new(c, group.clone()).map_err(|e| err(name, header, e))?;
            Some(Subdivision::new(gx))
        }
        None => None,
    };
    let need = |name: &str| -> Result<(), SceneError> {
        if sections.contains_key(name) && !sections.contains_key("complex") {
            return Err(err(name, sections[name].header, "needs a [complex] section"));
        }
        Ok(())
    };
    need("map")?;
    need("smooth")?;

    let map = match (sections.get("map"), tower.as_mut()) {
        (Some(sec), Some(tower)) => Some(parse_map(sec, tower)?),
        _ => None,
    };

    let mut fixed_points = Vec::new();
    let mut submanifold = None;
    if let (Some(sec), Some(tower)) = (sections.get("smooth"), tower.as_mut()) {
        for block in parse_smooth_blocks(sec)? {
            match block {
                Block::Point { line, path, rho, dphi } => {
                    let level = path.depth();
                    tower.ensure_level(level).map_err(|e| err("smooth", line, e))?;
                    let vertex = tower.resolve(level, &path).map_err(|e| err("smooth", line, e))?;
                    let carrier = tower.level(level).carrier(SimplexId { dim: 0, idx: vertex });
                    let stab = tower.base().stabilizer_of(carrier);
                    let dphi = dphi.ok_or_else(|| err("smooth", line, "point needs `dphi = [...]`"))?;
                    let tangent = action_data("smooth", line, stab, dphi.rows(), &rho, &generators)?;
                    fixed_points.push(FixedOrbitDatum { level, vertex, tangent, dphi });
                }
                Block::Sub { line, simplices, comps } => {
                    if submanifold.is_some() {
                        return Err(err("smooth", line, "only one submanifold per scene"));
                    }
                    submanifold = Some(parse_submanifold(tower.base(), line, &simplices, &comps, &generators)?);
                }
            }
        }
    }

    let sign = sections.get("sign").map(|sec| parse_sign(sec, &group, &generators)).transpose()?;

    let mut policy = None;
    if let Some(sec) = sections.get("options") {
        for (line, text) in &sec.lines {
            match text.split_whitespace().collect::<Vec<_>>().as_slice() {
                ["policy", p] => policy = Some(p.parse().map_err(|m: String| err("options", *line, m))?),
                _ => return Err(err("options", *line, format!("unknown option `{text}`"))),
            }
        }
    }

    Ok(Scene { tower, group, points, generators, map, fixed_points, submanifold, sign, policy })
}

fn parse_map(sec: &Section, tower: &mut Subdivision) -> Result<CellularMapSpec, SceneError> {
    let mut lines = sec.lines.iter();
    let level = match lines.next() {
        Some((line, text)) => match text.strip_prefix("level ").map(|l| l.trim().parse::<usize>()) {
            Some(Ok(k)) => {
                tower.ensure_level(k).map_err(|e| err("map", *line, e))?;
                k
            }
            _ => return Err(err("map", *line, "first line must be `level K`")),
        },
        None => return Err(err("map", sec.header, "empty map")),
    };
    let n = tower.level(level).complex().num_vertices();
    let mut image: Vec<Option<usize>> = vec![None; n];
    for (line, text) in lines {
        let (lhs, rhs) = text.split_once("->").ok_or_else(|| err("map", *line, "expected `VERTEX -> VERTEX`"))?;
        let path = VertexPath::parse(lhs).ok_or_else(|| err("map", *line, format!("bad vertex {}", lhs.trim())))?;
        let v = tower.resolve(level, &path).map_err(|e| err("map", *line, e))?;
        let target = tower
            .base()
            .complex()
            .vertex_index(rhs.trim())
            .ok_or_else(|| err("map", *line, format!("unknown target vertex {}", rhs.trim())))?;
        if image[v].replace(target).is_some() {
            return Err(err("map", *line, format!("vertex {} mapped twice", lhs.trim())));
        }
    }
    let complete: Option<Vec<usize>> = image.iter().copied().collect();
    let map = complete.ok_or_else(|| {
        let missing = image.iter().position(Option::is_none).expect("some vertex missing");
        err("map", sec.header, format!("no image for vertex {}", tower.level(level).complex().name(missing)))
    })?;
    CellularMapSpec::new(tower, level, map).map_err(|e| err("map", sec.header, e))
}

fn parse_submanifold(
    gx: &GComplex,
    line: usize,
    simplices: &[(usize, Vec<String>)],
    comps: &[Comp],
    gens: &[(String, usize)],
) -> Result<SubmanifoldDatum, SceneError> {
    let x = gx.complex();
    let mut y = BTreeSet::new();
    for (l, names) in simplices {
        let verts = names
            .iter()
            .map(|n| x.vertex_index(n).ok_or_else(|| err("smooth", *l, format!("unknown vertex {n}"))))
            .collect::<Result<Vec<_>, _>>()?;
        let top = x.id_of(&verts).ok_or_else(|| err("smooth", *l, format!("not a simplex: {}", names.join(" "))))?;
        let vs = x.vertices_of(top).to_vec();
        for mask in 1u64..(1u64 << vs.len()) {
            let face: Vec<usize> = (0..vs.len()).filter(|i| mask >> i & 1 == 1).map(|i| vs[i]).collect();
            y.insert(x.id_of(&face).expect("face"));
        }
    }
    let ylist: Vec<SimplexId> = y.into_iter().collect();
    let components = components_of(x, &ylist);
    let mut data = Vec::new();
    for c in comps {
        let anchor = x.vertex_index(&c.anchor).ok_or_else(|| err("smooth", c.line, format!("unknown vertex {}", c.anchor)))?;
        let comp = components
            .iter()
            .find(|comp| comp.contains(&SimplexId { dim: 0, idx: anchor }))
            .ok_or_else(|| err("smooth", c.line, format!("vertex {} is not in the submanifold", c.anchor)))?;
        let k = setwise_stabilizer(gx, comp).map_err(|e| err("smooth", c.line, e))?;
        let dnu = c.dnu.clone().ok_or_else(|| err("smooth", c.line, "component needs `dnu = [...]`"))?;
        let normal = action_data("smooth", c.line, k, dnu.rows(), &c.rho, gens)?;
        data.push(ComponentDatum { anchor, normal, dnu });
    }
    if data.is_empty() {
        return Err(err("smooth", line, "submanifold needs at least one `component`"));
    }
    Ok(SubmanifoldDatum { simplices: ylist, components: data })
}

fn parse_sign(sec: &Section, group: &Arc<PermGroup>, gens: &[(String, usize)]) -> Result<SignProblem, SceneError> {
    let mut rho = Vec::new();
    let mut a = None;
    for (line, text) in &sec.lines {
        let (lhs, rhs) = split_assignment(text).ok_or_else(|| err("sign", *line, "expected `rho WORD = [...]` or `a = [...]`"))?;
        let m = parse_matrix(rhs).map_err(|m| err("sign", *line, m))?;
        if let Some(word) = lhs.strip_prefix("rho ") {
            rho.push((*line, word.trim().to_string(), m));
        } else if lhs == "a" {
            a = Some(m);
        } else {
            return Err(err("sign", *line, format!("unknown key `{lhs}`")));
        }
    }
    let a = a.ok_or_else(|| err("sign", sec.header, "missing `a = [...]`"))?;
    let data = action_data("sign", sec.header, Subgroup::whole(group), a.rows(), &rho, gens)?;
    Ok(SignProblem { data, a })
}
