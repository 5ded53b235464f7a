//! Runs a command on a parsed scene and renders the result as text and JSON.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{json, Value};
use thiserror::Error;

use crate::lefschetz::{
    classes_equal_mod_relations, combinatorial_lefschetz, euler_characteristic, pointevals_relations,
    smooth_submanifold_lefschetz, smooth_transverse_lefschetz, LefschetzClass, LefschetzError, RelationLattice,
    SubgroupPolicy, Verdict,
};
use crate::scene::Scene;
use crate::sign_character::{lueck_rosenberg_degree, signed_sign_character, SignError};
use crate::simplicial::{chain_map, chain_supertrace, homology_trace_oracle, GComplex, SimplicialError, Subdivision};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Euler,
    LefComb,
    LefSmooth,
    Compare,
    Oracle,
    Sign,
}

impl Command {
    pub const ALL: [Command; 6] =
        [Command::Euler, Command::LefComb, Command::LefSmooth, Command::Compare, Command::Oracle, Command::Sign];

    pub fn name(self) -> &'static str {
        match self {
            Command::Euler => "euler",
            Command::LefComb => "lef-comb",
            Command::LefSmooth => "lef-smooth",
            Command::Compare => "compare",
            Command::Oracle => "oracle",
            Command::Sign => "sign",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Command::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| format!("unknown command {s}"))
    }
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error("scene has no [{0}] section")]
    Missing(&'static str),
    #[error(transparent)]
    Lefschetz(#[from] LefschetzError),
    #[error(transparent)]
    Simplicial(#[from] SimplicialError),
    #[error(transparent)]
    Sign(#[from] SignError),
    #[error("homology trace {homology} differs from chain supertrace {chain}")]
    OracleMismatch { homology: i64, chain: i64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Success,
    NotProven,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub command: Command,
    pub status: Status,
    pub lines: Vec<String>,
    pub json: Value,
}

impl Report {
    pub fn text(&self) -> String {
        let mut s = self.lines.join("\n");
        s.push('\n');
        s
    }

    pub fn json_text(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.json).expect("json");
        s.push('\n');
        s
    }
}

fn int(n: &BigInt) -> Value {
    match i64::try_from(n) {
        Ok(v) => json!(v),
        Err(_) => json!(n.to_string()),
    }
}

fn class_json(gx: &GComplex, c: &LefschetzClass) -> Value {
    let atoms: Vec<Value> = c
        .entries()
        .iter()
        .map(|(s, v)| {
            json!({
                "site": gx.display_site(*s),
                "stab": gx.stabilizer(*s).order(),
                "cf": v.iter().map(int).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({ "atoms": atoms, "index": int(&c.index(gx)) })
}

fn class_lines(out: &mut Vec<String>, title: &str, gx: &GComplex, c: &LefschetzClass) {
    out.push(title.to_string());
    if c.is_zero() {
        out.push("  (zero)".to_string());
    }
    out.extend(c.lines(gx).into_iter().map(|l| format!("  atom {l}")));
    out.push(format!("  index {}", c.index(gx)));
}

fn one_line(gx: &GComplex, c: &LefschetzClass) -> String {
    c.lines(gx).iter().map(|l| format!("[{l}]")).collect::<Vec<_>>().join(" + ")
}

fn tower(scene: &Scene) -> Result<&Subdivision, RunError> {
    scene.tower().ok_or(RunError::Missing("complex"))
}

fn header(scene: &Scene, cmd: Command) -> (Vec<String>, Value) {
    let mut lines = vec![format!("command {cmd}")];
    let mut info = json!({ "command": cmd.name(), "group_order": scene.group().order() });
    if let Some(t) = scene.tower() {
        let c = t.base().complex();
        let counts: Vec<usize> = (0..=c.dim()).map(|d| c.count(d)).collect();
        let shown: Vec<String> = counts.iter().map(ToString::to_string).collect();
        lines.push(format!("complex dim={} simplices=[{}] group={}", c.dim(), shown.join(","), scene.group().order()));
        info["simplices"] = json!(counts);
    } else {
        lines.push(format!("points={} group={}", scene.point_names().len(), scene.group().order()));
    }
    (lines, info)
}

pub fn smooth_class(scene: &Scene) -> Result<LefschetzClass, RunError> {
    let t = tower(scene)?;
    if !scene.has_smooth() {
        return Err(RunError::Missing("smooth"));
    }
    let mut c = smooth_transverse_lefschetz(t, scene.fixed_points())?;
    if let Some(sub) = scene.submanifold() {
        c = c.add(&smooth_submanifold_lefschetz(t.base(), sub)?);
    }
    Ok(c)
}

pub fn combinatorial_class(scene: &Scene) -> Result<LefschetzClass, RunError> {
    let t = tower(scene)?;
    let f = scene.map().ok_or(RunError::Missing("map"))?;
    Ok(combinatorial_lefschetz(t, f)?)
}

pub fn relations(scene: &Scene, policy: Option<SubgroupPolicy>) -> Result<(RelationLattice, SubgroupPolicy), RunError> {
    let policy = policy.or(scene.policy()).unwrap_or_default();
    Ok((pointevals_relations(tower(scene)?.base(), policy)?, policy))
}

/// `policy` overrides the scene's `[options]`.
pub fn run(scene: &Scene, cmd: Command, policy: Option<SubgroupPolicy>) -> Result<Report, RunError> {
    let (mut lines, mut js) = header(scene, cmd);
    let mut status = Status::Success;
    match cmd {
        Command::Euler => {
            let gx = tower(scene)?.base();
            let e = euler_characteristic(gx);
            class_lines(&mut lines, "euler class", gx, &e);
            js["euler"] = class_json(gx, &e);
        }
        Command::LefComb => {
            let c = combinatorial_class(scene)?;
            let gx = tower(scene)?.base();
            class_lines(&mut lines, "combinatorial class", gx, &c);
            js["combinatorial"] = class_json(gx, &c);
        }
        Command::LefSmooth => {
            let c = smooth_class(scene)?;
            let gx = tower(scene)?.base();
            class_lines(&mut lines, "smooth class", gx, &c);
            js["smooth"] = class_json(gx, &c);
        }
        Command::Compare => {
            let comb = combinatorial_class(scene)?;
            let smooth = smooth_class(scene)?;
            let gx = tower(scene)?.base();
            let (rel, policy) = relations(scene, policy)?;
            class_lines(&mut lines, "combinatorial class", gx, &comb);
            class_lines(&mut lines, "smooth class", gx, &smooth);
            lines.push(format!("relations policy={policy} generators={} rank={}", rel.len(), rel.rank()));
            js["combinatorial"] = class_json(gx, &comb);
            js["smooth"] = class_json(gx, &smooth);
            js["relations"] = json!({ "policy": policy.to_string(), "generators": rel.len(), "rank": rel.rank() });
            match classes_equal_mod_relations(&comb, &smooth, &rel)? {
                Verdict::Equal(cert) => {
                    lines.push("verdict equal".to_string());
                    lines.push(format!("certificate terms={}", cert.len()));
                    let mut cj = Vec::new();
                    for (i, c) in &cert {
                        let g = &rel.generators()[*i];
                        lines.push(format!("  {c} * relation {i}: {}", one_line(gx, g)));
                        cj.push(json!({ "relation": i, "coefficient": int(c), "class": class_json(gx, g) }));
                    }
                    js["verdict"] = json!("equal");
                    js["certificate"] = json!(cj);
                }
                Verdict::NotProven(residual) => {
                    status = Status::NotProven;
                    lines.push("verdict not-proven".to_string());
                    class_lines(&mut lines, "residual", gx, &residual);
                    js["verdict"] = json!("not-proven");
                    js["residual"] = class_json(gx, &residual);
                }
            }
        }
        Command::Oracle => {
            let t = tower(scene)?;
            let f = scene.map().ok_or(RunError::Missing("map"))?;
            let homology = homology_trace_oracle(t, f)?;
            let chain = chain_supertrace(&chain_map(t, f)?);
            if homology != chain {
                return Err(RunError::OracleMismatch { homology, chain });
            }
            lines.push(format!("homology trace {homology}"));
            lines.push(format!("chain supertrace {chain}"));
            js["homology_trace"] = json!(homology);
            js["chain_supertrace"] = json!(chain);
        }
        Command::Sign => {
            let sp = scene.sign().ok_or(RunError::Missing("sign"))?;
            let s = signed_sign_character(&sp.data, &sp.a)?;
            lines.push(s.to_string());
            let degree = lueck_rosenberg_degree(&sp.data, &sp.a)?;
            let mut dj = Vec::new();
            for d in &degree {
                let members: Vec<String> = d.subgroup.members().iter().map(ToString::to_string).collect();
                lines.push(format!("  degree subgroup order={} elements=[{}] sign={}", d.subgroup.order(), members.join(","), d.value));
                dj.push(json!({ "order": d.subgroup.order(), "elements": d.subgroup.members(), "sign": d.value }));
            }
            let cf: Vec<Value> = s.cf().values().iter().map(|v| int(&v.to_integer())).collect();
            let chi: Vec<Value> = s.character().values().iter().map(|v| int(&v.to_integer())).collect();
            js["cf"] = json!(cf);
            js["parity"] = json!(s.parity().to_string());
            js["character"] = json!(chi);
            js["degree"] = json!(dj);
        }
    }
    js["status"] = json!(match status {
        Status::Success => "ok",
        Status::NotProven => "not-proven",
    });
    Ok(Report { command: cmd, status, lines, json: js })
}
