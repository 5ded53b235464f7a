//! Coloured simplicial complexes with a finite group action.
//!
//! Simplices are stored as vertex lists sorted by vertex index and are
//! addressed by [`SimplexId`]. The canonical orientation of a simplex lists
//! its vertices by increasing colour. Barycentric subdivisions are built as a
//! [`Subdivision`] tower; every level keeps its carrier simplices in the base
//! complex and the barycentric coordinates of its vertices, which is all the
//! chain-map computation needs.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exact_linalg::{det_sign, independent_columns, kernel, rat, solve_in_span, LinalgError, RatMatrix, Rational};
use crate::group::{GroupError, PermGroup, Subgroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SimplexId {
    pub dim: usize,
    pub idx: usize,
}

/// A simplex orbit, the site of a Lefschetz atom.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SiteId {
    pub dim: usize,
    pub orbit: usize,
}

/// One violated constraint found by [`validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Diagnostic {
    ColourOutOfRange { vertex: String, colour: usize, max: usize },
    ColourClash { simplex: String, colour: usize },
    GroupDegree { expected: usize, found: usize },
    NotSimplicial { element: usize, simplex: String },
    ColourNotPreserved { element: usize, vertex: String },
    NotPointwise { element: usize, simplex: String },
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::ColourOutOfRange { vertex, colour, max } => {
                write!(f, "vertex {vertex} has colour {colour}, colours must lie in 0..={max}")
            }
            Diagnostic::ColourClash { simplex, colour } => {
                write!(f, "colouring error: simplex {simplex} has two vertices of colour {colour}")
            }
            Diagnostic::GroupDegree { expected, found } => {
                write!(f, "group acts on {found} points, the complex has {expected} vertices")
            }
            Diagnostic::NotSimplicial { element, simplex } => {
                write!(f, "group element {element} maps simplex {simplex} to a non-simplex")
            }
            Diagnostic::ColourNotPreserved { element, vertex } => {
                write!(f, "colour-preservation error: group element {element} changes the colour of vertex {vertex}")
            }
            Diagnostic::NotPointwise { element, simplex } => {
                write!(f, "group element {element} maps {simplex} to itself without fixing it pointwise")
            }
        }
    }
}

fn join_diagnostics(d: &[Diagnostic]) -> String {
    d.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimplicialError {
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("duplicate vertex name {0}")]
    DuplicateVertex(String),
    #[error("vertex index {0} out of range")]
    VertexOutOfRange(usize),
    #[error("simplex lists vertex {0} twice")]
    RepeatedVertex(String),
    #[error("empty simplex")]
    EmptySimplex,
    #[error("complex has no vertices")]
    EmptyComplex,
    #[error("{}", join_diagnostics(.0))]
    Invalid(Vec<Diagnostic>),
    #[error("vertex map has {found} entries, level {level} has {expected} vertices")]
    MapLength { level: usize, expected: usize, found: usize },
    #[error("map is not simplicial: {0} is not sent to a simplex")]
    NotSimplicial(String),
    #[error("map is not equivariant: f(g·v) ≠ g·f(v) for element {element} at vertex {vertex}")]
    NotEquivariant { element: usize, vertex: String },
    #[error("chain map diagonal differs across the orbit of {0}")]
    InconsistentOrbit(String),
    #[error("simplex {simplex} is not carried by {carrier} with the same dimension")]
    CarrierMismatch { simplex: String, carrier: String },
    #[error("no vertex {path} at subdivision level {level}")]
    BadPath { path: String, level: usize },
    #[error("not a simplex: {0}")]
    NotASimplex(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Finite simplicial complex with a vertex colouring.
#[derive(Clone, Debug)]
pub struct ColouredComplex {
    names: Vec<String>,
    colours: Vec<usize>,
    simplices: Vec<Vec<Vec<usize>>>,
    lookup: HashMap<Vec<usize>, SimplexId>,
}

impl ColouredComplex {
    /// Closes the maximal simplices under faces. Every named vertex is a
    /// 0-simplex. The colouring is not checked here; see [`validate`].
    pub fn from_maximal(
        names: Vec<String>,
        colours: Vec<usize>,
        maximal: &[Vec<usize>],
    ) -> Result<Self, SimplicialError> {
        if names.is_empty() {
            return Err(SimplicialError::EmptyComplex);
        }
        let mut seen = HashSet::new();
        for n in &names {
            if !seen.insert(n.as_str()) {
                return Err(SimplicialError::DuplicateVertex(n.clone()));
            }
        }
        if colours.len() != names.len() {
            return Err(SimplicialError::VertexOutOfRange(colours.len()));
        }
        let mut all: HashSet<Vec<usize>> = (0..names.len()).map(|v| vec![v]).collect();
        for s in maximal {
            if s.is_empty() {
                return Err(SimplicialError::EmptySimplex);
            }
            let mut s = s.clone();
            s.sort_unstable();
            if let Some(&v) = s.iter().find(|&&v| v >= names.len()) {
                return Err(SimplicialError::VertexOutOfRange(v));
            }
            if let Some(w) = s.windows(2).find(|w| w[0] == w[1]) {
                return Err(SimplicialError::RepeatedVertex(names[w[0]].clone()));
            }
            if all.contains(&s) {
                continue;
            }
            for mask in 1u64..(1u64 << s.len()) {
                let face: Vec<usize> = (0..s.len()).filter(|i| mask >> i & 1 == 1).map(|i| s[i]).collect();
                all.insert(face);
            }
        }
        let top = all.iter().map(Vec::len).max().unwrap_or(1);
        let mut simplices = vec![Vec::new(); top];
        for s in all {
            simplices[s.len() - 1].push(s);
        }
        let mut lookup = HashMap::new();
        for (dim, list) in simplices.iter_mut().enumerate() {
            list.sort();
            for (idx, s) in list.iter().enumerate() {
                lookup.insert(s.clone(), SimplexId { dim, idx });
            }
        }
        Ok(Self { names, colours, simplices, lookup })
    }

    pub fn dim(&self) -> usize {
        self.simplices.len() - 1
    }

    pub fn num_vertices(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn colour(&self, v: usize) -> usize {
        self.colours[v]
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn count(&self, dim: usize) -> usize {
        self.simplices.get(dim).map_or(0, Vec::len)
    }

    pub fn simplices(&self, dim: usize) -> &[Vec<usize>] {
        self.simplices.get(dim).map_or(&[], Vec::as_slice)
    }

    pub fn ids(&self) -> impl Iterator<Item = SimplexId> + '_ {
        self.simplices
            .iter()
            .enumerate()
            .flat_map(|(dim, l)| (0..l.len()).map(move |idx| SimplexId { dim, idx }))
    }

    pub fn total_simplices(&self) -> usize {
        self.simplices.iter().map(Vec::len).sum()
    }

    pub fn vertices_of(&self, id: SimplexId) -> &[usize] {
        &self.simplices[id.dim][id.idx]
    }

    /// Looks up a simplex by its vertex set (any order).
    pub fn id_of(&self, vertices: &[usize]) -> Option<SimplexId> {
        let mut v = vertices.to_vec();
        v.sort_unstable();
        self.lookup.get(&v).copied()
    }

    /// Vertices in increasing colour (ties broken by index).
    pub fn oriented(&self, id: SimplexId) -> Vec<usize> {
        let mut v = self.vertices_of(id).to_vec();
        v.sort_by_key(|&x| (self.colours[x], x));
        v
    }

    pub fn display_simplex(&self, id: SimplexId) -> String {
        let names: Vec<&str> = self.oriented(id).iter().map(|&v| self.names[v].as_str()).collect();
        format!("{{{}}}", names.join(","))
    }

    /// Simplices that are not a proper face of another simplex.
    pub fn maximal_simplices(&self) -> Vec<SimplexId> {
        let mut is_face = HashSet::new();
        for dim in 1..self.simplices.len() {
            for s in &self.simplices[dim] {
                for skip in 0..s.len() {
                    let face: Vec<usize> = s.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, &v)| v).collect();
                    is_face.insert(self.lookup[&face]);
                }
            }
        }
        self.ids().filter(|id| !is_face.contains(id)).collect()
    }

    /// Boundary `C_d → C_{d-1}` in the colour orientation; `d = 0` gives the
    /// `0 × n₀` matrix.
    pub fn boundary_matrix(&self, d: usize) -> RatMatrix {
        if d == 0 {
            return RatMatrix::zeros(0, self.count(0));
        }
        let mut m = RatMatrix::zeros(self.count(d - 1), self.count(d));
        for idx in 0..self.count(d) {
            let o = self.oriented(SimplexId { dim: d, idx });
            for skip in 0..o.len() {
                let face: Vec<usize> = o.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, &v)| v).collect();
                let f = self.id_of(&face).expect("face closed");
                m[(f.idx, idx)] = rat(if skip % 2 == 0 { 1 } else { -1 });
            }
        }
        m
    }
}

/// Checks the colouring and, against it, the group action: simplices go to
/// simplices, colours are preserved, and every element that maps a simplex
/// to itself fixes it pointwise.
pub fn validate(x: &ColouredComplex, group: &PermGroup) -> Result<(), Vec<Diagnostic>> {
    let mut diags = Vec::new();
    let n = x.dim();
    for v in 0..x.num_vertices() {
        if x.colour(v) > n {
            diags.push(Diagnostic::ColourOutOfRange { vertex: x.name(v).to_string(), colour: x.colour(v), max: n });
        }
    }
    for s in x.simplices(1) {
        if x.colour(s[0]) == x.colour(s[1]) {
            let id = x.id_of(s).expect("edge");
            diags.push(Diagnostic::ColourClash { simplex: x.display_simplex(id), colour: x.colour(s[0]) });
        }
    }
    if group.degree() != x.num_vertices() {
        diags.push(Diagnostic::GroupDegree { expected: x.num_vertices(), found: group.degree() });
        return Err(diags);
    }
    for g in 0..group.order() {
        let perm = group.element(g);
        for v in 0..x.num_vertices() {
            if x.colour(perm[v]) != x.colour(v) {
                diags.push(Diagnostic::ColourNotPreserved { element: g, vertex: x.name(v).to_string() });
            }
        }
        for id in x.ids() {
            let s = x.vertices_of(id);
            let img: Vec<usize> = s.iter().map(|&v| perm[v]).collect();
            match x.id_of(&img) {
                None => diags.push(Diagnostic::NotSimplicial { element: g, simplex: x.display_simplex(id) }),
                Some(t) if t == id && s.iter().any(|&v| perm[v] != v) => {
                    diags.push(Diagnostic::NotPointwise { element: g, simplex: x.display_simplex(id) })
                }
                Some(_) => {}
            }
        }
    }
    if diags.is_empty() {
        Ok(())
    } else {
        Err(diags)
    }
}

#[derive(Clone, Debug)]
pub struct Orbit {
    pub rep: usize,
    pub members: Vec<usize>,
    pub stabilizer: Subgroup,
}

/// Simplex orbits per dimension, representatives lexicographically smallest.
#[derive(Clone, Debug)]
pub struct OrbitTable {
    orbits: Vec<Vec<Orbit>>,
    orbit_of: Vec<Vec<usize>>,
    // smallest g with g·rep = simplex
    transporter: Vec<Vec<usize>>,
}

impl OrbitTable {
    pub fn orbits(&self, dim: usize) -> &[Orbit] {
        self.orbits.get(dim).map_or(&[], Vec::as_slice)
    }

    pub fn orbit(&self, site: SiteId) -> &Orbit {
        &self.orbits[site.dim][site.orbit]
    }

    pub fn site_of(&self, id: SimplexId) -> SiteId {
        SiteId { dim: id.dim, orbit: self.orbit_of[id.dim][id.idx] }
    }

    pub fn transporter(&self, id: SimplexId) -> usize {
        self.transporter[id.dim][id.idx]
    }

    pub fn sites(&self) -> impl Iterator<Item = SiteId> + '_ {
        self.orbits.iter().enumerate().flat_map(|(dim, l)| (0..l.len()).map(move |orbit| SiteId { dim, orbit }))
    }
}

/// A validated coloured complex with its group action and orbit table.
#[derive(Clone, Debug)]
pub struct GComplex {
    complex: ColouredComplex,
    group: Arc<PermGroup>,
    // [dim][g][idx] -> image idx
    action: Vec<Vec<Vec<usize>>>,
    orbits: OrbitTable,
}

impl GComplex {
    pub fn new(complex: ColouredComplex, group: Arc<PermGroup>) -> Result<Self, SimplicialError> {
        validate(&complex, &group).map_err(SimplicialError::Invalid)?;
        let action: Vec<Vec<Vec<usize>>> = (0..=complex.dim())
            .map(|dim| {
                (0..group.order())
                    .map(|g| {
                        complex
                            .simplices(dim)
                            .iter()
                            .map(|s| {
                                let img: Vec<usize> = s.iter().map(|&v| group.apply(g, v)).collect();
                                complex.id_of(&img).expect("validated").idx
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let mut orbits = Vec::new();
        let mut orbit_of = Vec::new();
        let mut transporter = Vec::new();
        for dim in 0..=complex.dim() {
            let n = complex.count(dim);
            let mut of = vec![usize::MAX; n];
            let mut tr = vec![0; n];
            let mut list = Vec::new();
            // simplices are sorted lexicographically, so the first unvisited one is the smallest
            for idx in 0..n {
                if of[idx] != usize::MAX {
                    continue;
                }
                let mut members = Vec::new();
                let mut stab = Vec::new();
                for g in 0..group.order() {
                    let t = action[dim][g][idx];
                    if t == idx {
                        stab.push(g);
                    }
                    if of[t] == usize::MAX {
                        of[t] = list.len();
                        tr[t] = g;
                        members.push(t);
                    }
                }
                members.sort_unstable();
                let stabilizer = Subgroup::from_members(&group, &stab)?;
                list.push(Orbit { rep: idx, members, stabilizer });
            }
            orbits.push(list);
            orbit_of.push(of);
            transporter.push(tr);
        }
        Ok(Self { complex, group, action, orbits: OrbitTable { orbits, orbit_of, transporter } })
    }

    /// Complex with the trivial group acting.
    pub fn without_symmetry(complex: ColouredComplex) -> Result<Self, SimplicialError> {
        let g = PermGroup::trivial(complex.num_vertices());
        Self::new(complex, g)
    }

    pub fn complex(&self) -> &ColouredComplex {
        &self.complex
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn orbit_table(&self) -> &OrbitTable {
        &self.orbits
    }

    pub fn act(&self, g: usize, id: SimplexId) -> SimplexId {
        SimplexId { dim: id.dim, idx: self.action[id.dim][g][id.idx] }
    }

    pub fn site_of(&self, id: SimplexId) -> SiteId {
        self.orbits.site_of(id)
    }

    pub fn rep(&self, site: SiteId) -> SimplexId {
        SimplexId { dim: site.dim, idx: self.orbits.orbit(site).rep }
    }

    pub fn stabilizer(&self, site: SiteId) -> &Subgroup {
        &self.orbits.orbit(site).stabilizer
    }

    /// Stabilizer of an arbitrary simplex.
    pub fn stabilizer_of(&self, id: SimplexId) -> Subgroup {
        let site = self.site_of(id);
        self.stabilizer(site).conjugate(self.orbits.transporter(id))
    }

    pub fn display_site(&self, site: SiteId) -> String {
        self.complex.display_simplex(self.rep(site))
    }

    pub fn sites(&self) -> Vec<SiteId> {
        self.orbits.sites().collect()
    }
}

/// Nested vertex address: a base vertex name, or a set of addresses one
/// level down naming a simplex whose barycentre is the vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VertexPath {
    Name(String),
    Set(Vec<VertexPath>),
}

impl VertexPath {
    pub fn depth(&self) -> usize {
        match self {
            VertexPath::Name(_) => 0,
            VertexPath::Set(items) => 1 + items.iter().map(VertexPath::depth).max().unwrap_or(0),
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        fn item(s: &[u8], pos: &mut usize) -> Option<VertexPath> {
            while *pos < s.len() && s[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
            if *pos < s.len() && s[*pos] == b'{' {
                *pos += 1;
                let mut items = Vec::new();
                loop {
                    items.push(item(s, pos)?);
                    while *pos < s.len() && s[*pos].is_ascii_whitespace() {
                        *pos += 1;
                    }
                    match s.get(*pos) {
                        Some(b',') => *pos += 1,
                        Some(b'}') => {
                            *pos += 1;
                            return Some(VertexPath::Set(items));
                        }
                        _ => return None,
                    }
                }
            }
            let start = *pos;
            while *pos < s.len() && !matches!(s[*pos], b'{' | b'}' | b',') && !s[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
            (start < *pos).then(|| VertexPath::Name(String::from_utf8_lossy(&s[start..*pos]).into_owned()))
        }
        let bytes = s.as_bytes();
        let mut pos = 0;
        let p = item(bytes, &mut pos)?;
        bytes[pos..].iter().all(u8::is_ascii_whitespace).then_some(p)
    }
}

impl fmt::Display for VertexPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexPath::Name(n) => f.write_str(n),
            VertexPath::Set(items) => {
                let parts: Vec<String> = items.iter().map(ToString::to_string).collect();
                write!(f, "{{{}}}", parts.join(","))
            }
        }
    }
}

/// One level of an iterated barycentric subdivision.
#[derive(Clone, Debug)]
pub struct Level {
    gcomplex: GComplex,
    carrier: Vec<Vec<SimplexId>>,
    bary: Vec<Vec<(usize, Rational)>>,
    source: Vec<SimplexId>,
}

impl Level {
    pub fn gcomplex(&self) -> &GComplex {
        &self.gcomplex
    }

    pub fn complex(&self) -> &ColouredComplex {
        &self.gcomplex.complex
    }

    /// Smallest base simplex containing the given simplex of this level.
    pub fn carrier(&self, id: SimplexId) -> SimplexId {
        self.carrier[id.dim][id.idx]
    }

    /// Barycentric coordinates of a vertex of this level over base vertices.
    pub fn barycentric(&self, v: usize) -> &[(usize, Rational)] {
        &self.bary[v]
    }

    /// Simplex of the previous level whose barycentre is vertex `v`
    /// (meaningless at level 0, where it is the vertex itself).
    pub fn source(&self, v: usize) -> SimplexId {
        self.source[v]
    }
}

/// A base G-complex and its iterated barycentric subdivisions.
#[derive(Clone, Debug)]
pub struct Subdivision {
    levels: Vec<Level>,
}

impl Subdivision {
    pub fn new(base: GComplex) -> Self {
        let c = &base.complex;
        let carrier = (0..=c.dim()).map(|dim| (0..c.count(dim)).map(|idx| SimplexId { dim, idx }).collect()).collect();
        let bary = (0..c.num_vertices()).map(|v| vec![(v, Rational::one())]).collect();
        let source = (0..c.num_vertices()).map(|v| SimplexId { dim: 0, idx: v }).collect();
        Self { levels: vec![Level { gcomplex: base, carrier, bary, source }] }
    }

    /// Tower with at least `k` subdivision levels above the base.
    pub fn with_levels(base: GComplex, k: usize) -> Result<Self, SimplicialError> {
        let mut t = Self::new(base);
        t.ensure_level(k)?;
        Ok(t)
    }

    pub fn base(&self) -> &GComplex {
        &self.levels[0].gcomplex
    }

    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, k: usize) -> &Level {
        &self.levels[k]
    }

    pub fn ensure_level(&mut self, k: usize) -> Result<(), SimplicialError> {
        while self.levels.len() <= k {
            let next = self.subdivide_top()?;
            self.levels.push(next);
        }
        Ok(())
    }

    fn subdivide_top(&self) -> Result<Level, SimplicialError> {
        let prev = self.levels.last().expect("base level");
        let base = &self.levels[0].gcomplex.complex;
        let pc = &prev.gcomplex.complex;
        let group = prev.gcomplex.group.clone();

        let old: Vec<SimplexId> = pc.ids().collect();
        let vertex_of: HashMap<SimplexId, usize> = old.iter().enumerate().map(|(i, &id)| (id, i)).collect();
        let names: Vec<String> = old
            .iter()
            .map(|&id| {
                let parts: Vec<&str> = pc.oriented(id).iter().map(|&v| pc.name(v)).collect();
                format!("{{{}}}", parts.join(","))
            })
            .collect();
        let colours: Vec<usize> = old.iter().map(|id| id.dim).collect();
        let bary: Vec<Vec<(usize, Rational)>> = old
            .iter()
            .map(|&id| {
                let verts = pc.vertices_of(id);
                let w = Rational::new(1.into(), (verts.len() as i64).into());
                let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
                for &v in verts {
                    for (b, c) in &prev.bary[v] {
                        *acc.entry(*b).or_insert_with(Rational::zero) += c * &w;
                    }
                }
                acc.into_iter().collect()
            })
            .collect();

        // full flags of every maximal simplex: one per vertex ordering
        let mut maximal_flags = Vec::new();
        for m in pc.maximal_simplices() {
            let verts = pc.vertices_of(m).to_vec();
            for order in permutations(&verts) {
                let flag: Vec<usize> = (1..=order.len())
                    .map(|len| vertex_of[&pc.id_of(&order[..len]).expect("face")])
                    .collect();
                maximal_flags.push(flag);
            }
        }
        let complex = ColouredComplex::from_maximal(names, colours, &maximal_flags)?;

        let elements: Vec<Vec<usize>> = (0..group.order())
            .map(|g| old.iter().map(|&id| vertex_of[&prev.gcomplex.act(g, id)]).collect())
            .collect();
        let induced = PermGroup::from_elements(old.len(), elements)?;
        let gcomplex = GComplex::new(complex, induced)?;

        let carrier = (0..=gcomplex.complex.dim())
            .map(|dim| {
                gcomplex
                    .complex
                    .simplices(dim)
                    .iter()
                    .map(|s| {
                        let support: Vec<usize> = s
                            .iter()
                            .flat_map(|&v| bary[v].iter().map(|(b, _)| *b))
                            .collect::<std::collections::BTreeSet<_>>()
                            .into_iter()
                            .collect();
                        base.id_of(&support).expect("carrier is a base simplex")
                    })
                    .collect()
            })
            .collect();
        Ok(Level { gcomplex, carrier, bary, source: old })
    }

    /// Resolves a nested vertex address at level `k`.
    pub fn resolve(&self, k: usize, path: &VertexPath) -> Result<usize, SimplicialError> {
        let bad = || SimplicialError::BadPath { path: path.to_string(), level: k };
        match path {
            VertexPath::Name(n) if k == 0 => self.levels[0].gcomplex.complex.vertex_index(n).ok_or_else(bad),
            VertexPath::Set(items) if k > 0 => {
                let verts = items.iter().map(|p| self.resolve(k - 1, p)).collect::<Result<Vec<_>, _>>()?;
                let id = self.levels[k - 1].gcomplex.complex.id_of(&verts).ok_or_else(bad)?;
                let lvl = &self.levels[k];
                lvl.source.iter().position(|&s| s == id).ok_or_else(bad)
            }
            _ => Err(bad()),
        }
    }
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let first = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, first);
            out.push(p);
        }
    }
    out
}

/// Sign of a permutation given as a sequence of distinct keys.
fn sequence_parity<T: Ord>(seq: &[T]) -> i8 {
    let mut inversions = 0;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Simplicial, equivariant map from the level-`k` subdivision to the base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellularMapSpec {
    level: usize,
    vertex_map: Vec<usize>,
}

impl CellularMapSpec {
    pub fn new(tower: &Subdivision, level: usize, vertex_map: Vec<usize>) -> Result<Self, SimplicialError> {
        if level > tower.depth() {
            return Err(SimplicialError::BadPath { path: format!("level {level}"), level });
        }
        let lvl = tower.level(level);
        let domain = lvl.complex();
        let base = tower.base();
        if vertex_map.len() != domain.num_vertices() {
            return Err(SimplicialError::MapLength { level, expected: domain.num_vertices(), found: vertex_map.len() });
        }
        if let Some(&v) = vertex_map.iter().find(|&&v| v >= base.complex.num_vertices()) {
            return Err(SimplicialError::VertexOutOfRange(v));
        }
        for id in domain.maximal_simplices() {
            let img: std::collections::BTreeSet<usize> = domain.vertices_of(id).iter().map(|&v| vertex_map[v]).collect();
            let img: Vec<usize> = img.into_iter().collect();
            if base.complex.id_of(&img).is_none() {
                return Err(SimplicialError::NotSimplicial(domain.display_simplex(id)));
            }
        }
        let group = base.group();
        let dgroup = lvl.gcomplex.group();
        for g in 0..group.order() {
            for v in 0..domain.num_vertices() {
                if vertex_map[dgroup.apply(g, v)] != group.apply(g, vertex_map[v]) {
                    return Err(SimplicialError::NotEquivariant { element: g, vertex: domain.name(v).to_string() });
                }
            }
        }
        Ok(Self { level, vertex_map })
    }

    /// The identity of the base complex at level 0.
    pub fn identity(tower: &Subdivision) -> Self {
        Self { level: 0, vertex_map: (0..tower.base().complex.num_vertices()).collect() }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn vertex_map(&self) -> &[usize] {
        &self.vertex_map
    }
}

/// Per-simplex orientation choice on the base complex: `true` flips the
/// colour orientation (swaps its first two vertices).
#[derive(Clone, Debug, Default)]
pub struct Orientation {
    flipped: HashSet<SimplexId>,
}

impl Orientation {
    pub fn colour_order() -> Self {
        Self::default()
    }

    pub fn flip(&mut self, id: SimplexId) {
        if !self.flipped.remove(&id) {
            self.flipped.insert(id);
        }
    }

    fn order(&self, x: &ColouredComplex, id: SimplexId) -> Vec<usize> {
        let mut o = x.oriented(id);
        if self.flipped.contains(&id) && o.len() >= 2 {
            o.swap(0, 1);
        }
        o
    }
}

fn bary_matrix(tower: &Subdivision, level: usize, rows: &[usize], cols: &[usize]) -> RatMatrix {
    let lvl = tower.level(level);
    let mut m = RatMatrix::zeros(rows.len(), cols.len());
    for (i, &v) in rows.iter().enumerate() {
        for (b, c) in lvl.barycentric(v) {
            if let Some(j) = cols.iter().position(|x| x == b) {
                m[(i, j)] = c.clone();
            }
        }
    }
    m
}

fn subdivision_sign_oriented(
    tower: &Subdivision,
    level: usize,
    tau: SimplexId,
    sigma: SimplexId,
    orientation: &Orientation,
) -> Result<i8, SimplicialError> {
    let lvl = tower.level(level);
    let base = tower.base().complex();
    if tau.dim != sigma.dim || lvl.carrier(tau) != sigma {
        return Err(SimplicialError::CarrierMismatch {
            simplex: lvl.complex().display_simplex(tau),
            carrier: base.display_simplex(sigma),
        });
    }
    let rows = lvl.complex().oriented(tau);
    let cols = orientation.order(base, sigma);
    Ok(det_sign(&bary_matrix(tower, level, &rows, &cols))?)
}

/// Orientation sign of a level-`k` simplex inside its carrier: the sign of
/// the determinant of its vertices' barycentric coordinates, both sides in
/// colour order.
pub fn subdivision_sign(tower: &Subdivision, level: usize, tau: SimplexId, sigma: SimplexId) -> Result<i8, SimplicialError> {
    subdivision_sign_oriented(tower, level, tau, sigma, &Orientation::colour_order())
}

fn map_sign_oriented(
    tower: &Subdivision,
    f: &CellularMapSpec,
    tau: SimplexId,
    target: SimplexId,
    orientation: &Orientation,
) -> i8 {
    let domain = tower.level(f.level).complex();
    let base = tower.base().complex();
    let imgs: Vec<usize> = domain.oriented(tau).iter().map(|&v| f.vertex_map[v]).collect();
    let mut sorted = imgs.clone();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) || sorted.as_slice() != base.vertices_of(target) {
        return 0;
    }
    let order = orientation.order(base, target);
    let positions: Vec<usize> = imgs.iter().map(|v| order.iter().position(|w| w == v).expect("in target")).collect();
    sequence_parity(&positions)
}

/// `0` if `f` collapses `τ′` or misses `target`; otherwise the parity of the
/// permutation from `f` of `τ′`'s colour-ordered vertices to `target`'s.
pub fn map_vertex_sign(tower: &Subdivision, f: &CellularMapSpec, tau: SimplexId, target: SimplexId) -> i8 {
    map_sign_oriented(tower, f, tau, target, &Orientation::colour_order())
}

/// Full cellular chain map `Φ_d` for every `d`; entry `(σ, τ)` is the signed
/// count of level-`k` pieces of `τ` mapped onto `σ`.
pub fn chain_map(tower: &Subdivision, f: &CellularMapSpec) -> Result<Vec<RatMatrix>, SimplicialError> {
    chain_map_with_orientation(tower, f, &Orientation::colour_order())
}

pub fn chain_map_with_orientation(
    tower: &Subdivision,
    f: &CellularMapSpec,
    orientation: &Orientation,
) -> Result<Vec<RatMatrix>, SimplicialError> {
    let lvl = tower.level(f.level);
    let domain = lvl.complex();
    let base = tower.base().complex();
    let mut out: Vec<RatMatrix> = (0..=base.dim()).map(|d| RatMatrix::zeros(base.count(d), base.count(d))).collect();
    for d in 0..=base.dim() {
        for idx in 0..domain.count(d) {
            let tau = SimplexId { dim: d, idx };
            let carrier = lvl.carrier(tau);
            if carrier.dim != d {
                continue;
            }
            let img: std::collections::BTreeSet<usize> = domain.vertices_of(tau).iter().map(|&v| f.vertex_map[v]).collect();
            if img.len() != d + 1 {
                continue;
            }
            let img: Vec<usize> = img.into_iter().collect();
            let target = base.id_of(&img).ok_or_else(|| SimplicialError::NotSimplicial(domain.display_simplex(tau)))?;
            let s = subdivision_sign_oriented(tower, f.level, tau, carrier, orientation)?
                * map_sign_oriented(tower, f, tau, target, orientation);
            out[d][(target.idx, carrier.idx)] += rat(s as i64);
        }
    }
    Ok(out)
}

/// `Φ_σσ` per simplex orbit, checked to agree across each orbit.
pub fn chain_diagonal(tower: &Subdivision, f: &CellularMapSpec) -> Result<BTreeMap<SiteId, i64>, SimplicialError> {
    let phi = chain_map(tower, f)?;
    let gx = tower.base();
    let mut out = BTreeMap::new();
    for site in gx.sites() {
        let orbit = gx.orbit_table().orbit(site);
        let value = &phi[site.dim][(orbit.rep, orbit.rep)];
        for &m in &orbit.members {
            if phi[site.dim][(m, m)] != *value {
                return Err(SimplicialError::InconsistentOrbit(gx.display_site(site)));
            }
        }
        out.insert(site, to_i64(value));
    }
    Ok(out)
}

fn to_i64(r: &Rational) -> i64 {
    r.to_integer().try_into().expect("chain map entry fits in i64")
}

/// `Σ_d (-1)^d tr Φ_d`.
pub fn chain_supertrace(phi: &[RatMatrix]) -> i64 {
    phi.iter()
        .enumerate()
        .map(|(d, m)| {
            let tr: Rational = (0..m.rows()).map(|i| m[(i, i)].clone()).sum();
            if d % 2 == 0 {
                to_i64(&tr)
            } else {
                -to_i64(&tr)
            }
        })
        .sum()
}

/// Matrix of the subdivision chain map `C_d(X) → C_d(Sd^k X)`.
pub fn subdivision_chain_matrix(tower: &Subdivision, level: usize, d: usize) -> Result<RatMatrix, SimplicialError> {
    let lvl = tower.level(level);
    let base = tower.base().complex();
    let mut m = RatMatrix::zeros(lvl.complex().count(d), base.count(d));
    for idx in 0..lvl.complex().count(d) {
        let tau = SimplexId { dim: d, idx };
        let c = lvl.carrier(tau);
        if c.dim == d {
            m[(idx, c.idx)] = rat(subdivision_sign(tower, level, tau, c)? as i64);
        }
    }
    Ok(m)
}

/// Alternating trace of `f` on rational simplicial homology, computed from
/// the full chain map and the boundary matrices (the group is ignored).
pub fn homology_trace_oracle(tower: &Subdivision, f: &CellularMapSpec) -> Result<i64, SimplicialError> {
    let phi = chain_map(tower, f)?;
    let x = tower.base().complex();
    let mut total = Rational::zero();
    for d in 0..=x.dim() {
        let cycles = kernel(&x.boundary_matrix(d));
        let bd = if d < x.dim() { x.boundary_matrix(d + 1) } else { RatMatrix::zeros(x.count(d), 0) };
        let boundaries: Vec<Vec<Rational>> = independent_columns(&bd).into_iter().map(|j| bd.column(j)).collect();
        let mut basis = boundaries.clone();
        let mut complement = Vec::new();
        for z in cycles {
            if solve_in_span(&basis, &z)?.is_none() {
                basis.push(z.clone());
                complement.push(basis.len() - 1);
            }
        }
        let mut tr = Rational::zero();
        for &c in &complement {
            let image = phi[d].mul_vec(&basis[c])?;
            let coords = solve_in_span(&basis, &image)?.expect("chain map preserves cycles");
            tr += &coords[c];
        }
        if d % 2 == 0 {
            total += tr;
        } else {
            total -= tr;
        }
    }
    Ok(to_i64(&total))
}

/// The fixed subcomplex `X^H` and its connected components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedSubcomplex {
    pub simplices: Vec<SimplexId>,
    pub components: Vec<Vec<SimplexId>>,
}

/// Components of an arbitrary face-closed simplex list, by vertex-path
/// connectivity; components ordered by smallest vertex.
pub fn components_of(x: &ColouredComplex, simplices: &[SimplexId]) -> Vec<Vec<SimplexId>> {
    let n = x.num_vertices();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut a: usize) -> usize {
        while p[a] != a {
            p[a] = p[p[a]];
            a = p[a];
        }
        a
    }
    for &id in simplices {
        let vs = x.vertices_of(id);
        for w in vs.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<SimplexId>> = BTreeMap::new();
    for &id in simplices {
        let root = find(&mut parent, x.vertices_of(id)[0]);
        groups.entry(root).or_default().push(id);
    }
    groups.into_values().map(|mut v| {
        v.sort();
        v
    }).collect()
}

/// Simplices whose stabilizer contains `H` (colour preservation makes
/// setwise and pointwise fixing agree), split into components.
pub fn fixed_subcomplex(gx: &GComplex, h: &Subgroup) -> FixedSubcomplex {
    let simplices: Vec<SimplexId> = gx
        .complex
        .ids()
        .filter(|&id| h.members().iter().all(|&g| gx.act(g, id) == id))
        .collect();
    let components = components_of(&gx.complex, &simplices);
    FixedSubcomplex { simplices, components }
}

/// Setwise stabilizer of a set of simplices.
pub fn setwise_stabilizer(gx: &GComplex, set: &[SimplexId]) -> Result<Subgroup, SimplicialError> {
    let members: HashSet<SimplexId> = set.iter().copied().collect();
    let stab: Vec<usize> = (0..gx.group.order()).filter(|&g| set.iter().all(|&id| members.contains(&gx.act(g, id)))).collect();
    Ok(Subgroup::from_members(&gx.group, &stab)?)
}

/// Orbit order `|G·σ|`.
pub fn orbit_size(gx: &GComplex, site: SiteId) -> usize {
    gx.orbit_table().orbit(site).members.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn square_circle() -> GComplex {
        let names = ["1", "i", "-1", "-i"].iter().map(|s| s.to_string()).collect();
        let x = ColouredComplex::from_maximal(names, vec![0, 1, 0, 1], &[vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]]).unwrap();
        let g = PermGroup::generate(4, &[vec![0, 3, 2, 1]]).unwrap();
        GComplex::new(x, g).unwrap()
    }

    fn edge() -> GComplex {
        let x = ColouredComplex::from_maximal(vec!["a".into(), "b".into()], vec![0, 1], &[vec![0, 1]]).unwrap();
        GComplex::without_symmetry(x).unwrap()
    }

    fn triangle() -> GComplex {
        let names = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        let x = ColouredComplex::from_maximal(names, vec![0, 1, 2], &[vec![0, 1, 2]]).unwrap();
        GComplex::without_symmetry(x).unwrap()
    }

    fn cross_polytope_boundary() -> ColouredComplex {
        // vertices +u_i at 2i, -u_i at 2i+1, colour i
        let names: Vec<String> = (1..=4).flat_map(|i| [format!("u{i}"), format!("-u{i}")]).collect();
        let colours = (0..4).flat_map(|i| [i, i]).collect();
        let maximal: Vec<Vec<usize>> =
            (0..16u32).map(|m| (0..4).map(|i| 2 * i + ((m >> i) & 1) as usize).collect()).collect();
        ColouredComplex::from_maximal(names, colours, &maximal).unwrap()
    }

    fn vid(x: &ColouredComplex, names: &[&str]) -> SimplexId {
        let v: Vec<usize> = names.iter().map(|n| x.vertex_index(n).unwrap()).collect();
        x.id_of(&v).unwrap()
    }

    #[test]
    fn validation_examples() {
        square_circle();
        let names = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        let tri = ColouredComplex::from_maximal(names, vec![0, 1, 0], &[vec![0, 1], vec![1, 2], vec![2, 0]]).unwrap();
        let err = validate(&tri, &PermGroup::trivial(3)).unwrap_err();
        assert!(err.iter().any(|d| matches!(d, Diagnostic::ColourClash { .. })));
        let sq = square_circle();
        let rot = PermGroup::generate(4, &[vec![1, 2, 3, 0]]).unwrap();
        let err = validate(sq.complex(), &rot).unwrap_err();
        assert!(err.iter().any(|d| matches!(d, Diagnostic::ColourNotPreserved { .. })));
        assert!(err.iter().any(|d| d.to_string().starts_with("colour-preservation error")));
    }

    #[test]
    fn subdivision_counts() {
        let t = Subdivision::with_levels(edge(), 1).unwrap();
        let c = t.level(1).complex();
        assert_eq!((c.count(0), c.count(1)), (3, 2));
        let t = Subdivision::with_levels(square_circle(), 1).unwrap();
        let c = t.level(1).complex();
        assert_eq!((c.count(0), c.count(1)), (8, 8));
        let t = Subdivision::with_levels(triangle(), 1).unwrap();
        let c = t.level(1).complex();
        assert_eq!((c.count(0), c.count(1), c.count(2)), (7, 12, 6));
    }

    #[test]
    fn subdivision_carriers_and_colours() {
        let t = Subdivision::with_levels(triangle(), 2).unwrap();
        for k in 1..=2 {
            let lvl = t.level(k);
            let c = lvl.complex();
            for id in c.ids() {
                // carrier is monotone under faces
                for &v in c.vertices_of(id) {
                    let cv = lvl.carrier(SimplexId { dim: 0, idx: v });
                    let carrier = lvl.carrier(id);
                    let cs = t.base().complex().vertices_of(carrier);
                    assert!(t.base().complex().vertices_of(cv).iter().all(|x| cs.contains(x)));
                }
            }
            assert!(validate(c, lvl.gcomplex().group()).is_ok());
        }
    }

    #[test]
    fn orbit_examples() {
        let sq = square_circle();
        let x = sq.complex();
        let ot = sq.orbit_table();
        let v: Vec<(Vec<String>, usize)> = ot
            .orbits(0)
            .iter()
            .map(|o| (o.members.iter().map(|&m| x.name(m).to_string()).collect(), o.stabilizer.order()))
            .collect();
        assert_eq!(
            v,
            vec![(vec!["1".into()], 2), (vec!["i".into(), "-i".into()], 1), (vec!["-1".into()], 2)]
        );
        let e: Vec<(Vec<String>, usize)> = ot
            .orbits(1)
            .iter()
            .map(|o| {
                (
                    o.members.iter().map(|&m| x.display_simplex(SimplexId { dim: 1, idx: m })).collect(),
                    o.stabilizer.order(),
                )
            })
            .collect();
        assert_eq!(
            e,
            vec![
                (vec!["{1,i}".into(), "{1,-i}".into()], 1),
                (vec!["{-1,i}".into(), "{-1,-i}".into()], 1)
            ]
        );

        let tri = triangle();
        for d in 0..=2 {
            assert!(tri.orbit_table().orbits(d).iter().all(|o| o.members.len() == 1 && o.stabilizer.order() == 1));
        }

        let x = cross_polytope_boundary();
        let mut flip: Vec<usize> = (0..8).collect();
        flip.swap(6, 7);
        let gx = GComplex::new(x, PermGroup::generate(8, &[flip]).unwrap()).unwrap();
        for d in 0..=3 {
            for o in gx.orbit_table().orbits(d) {
                let touches_u4 = gx.complex().vertices_of(SimplexId { dim: d, idx: o.rep }).iter().any(|&v| v >= 6);
                assert_eq!(o.members.len(), if touches_u4 { 2 } else { 1 });
                assert_eq!(o.stabilizer.order(), if touches_u4 { 1 } else { 2 });
            }
        }
    }

    #[test]
    fn subdivision_sign_examples() {
        let t = Subdivision::with_levels(square_circle(), 1).unwrap();
        let x = t.base().complex();
        let e1 = vid(x, &["1", "i"]);
        assert_eq!(subdivision_sign(&t, 0, e1, e1).unwrap(), 1);
        let lvl = t.level(1);
        let p1 = VertexPath::parse("{1}").unwrap();
        let pi = VertexPath::parse("{i}").unwrap();
        let m1 = VertexPath::parse("{1,i}").unwrap();
        let (a, b, m) = (t.resolve(1, &p1).unwrap(), t.resolve(1, &pi).unwrap(), t.resolve(1, &m1).unwrap());
        let first = lvl.complex().id_of(&[a, m]).unwrap();
        let second = lvl.complex().id_of(&[b, m]).unwrap();
        assert_eq!(subdivision_sign(&t, 1, first, e1).unwrap(), 1);
        assert_eq!(subdivision_sign(&t, 1, second, e1).unwrap(), -1);
        let e2 = vid(x, &["i", "-1"]);
        assert!(subdivision_sign(&t, 1, first, e2).is_err());
    }

    #[test]
    fn map_sign_examples() {
        let t = Subdivision::new(edge());
        let id = CellularMapSpec::identity(&t);
        let e = SimplexId { dim: 1, idx: 0 };
        assert_eq!(map_vertex_sign(&t, &id, e, e), 1);
        let swap = CellularMapSpec::new(&t, 0, vec![1, 0]).unwrap();
        assert_eq!(map_vertex_sign(&t, &swap, e, e), -1);
        let collapse = CellularMapSpec::new(&t, 0, vec![0, 0]).unwrap();
        assert_eq!(map_vertex_sign(&t, &collapse, e, e), 0);
    }

    fn z_squared(t: &Subdivision) -> CellularMapSpec {
        // octagon vertex at angle kπ/4 goes to the square vertex at angle kπ/2
        let order = ["{1}", "{1,i}", "{i}", "{i,-1}", "{-1}", "{-1,-i}", "{-i}", "{-i,1}"];
        let square = ["1", "i", "-1", "-i"];
        let mut map = vec![0; 8];
        for (k, p) in order.iter().enumerate() {
            let v = t.resolve(1, &VertexPath::parse(p).unwrap()).unwrap();
            map[v] = t.base().complex().vertex_index(square[k % 4]).unwrap();
        }
        CellularMapSpec::new(t, 1, map).unwrap()
    }

    #[test]
    fn chain_diagonal_examples() {
        let t = Subdivision::with_levels(square_circle(), 1).unwrap();
        let f = z_squared(&t);
        let diag = chain_diagonal(&t, &f).unwrap();
        let gx = t.base();
        let shown: Vec<(String, i64)> = diag.iter().map(|(s, v)| (gx.display_site(*s), *v)).collect();
        assert_eq!(
            shown,
            vec![
                ("{1}".to_string(), 1),
                ("{i}".to_string(), 0),
                ("{-1}".to_string(), 0),
                ("{1,i}".to_string(), 1),
                ("{-1,i}".to_string(), 0)
            ]
        );
        let id = chain_diagonal(&t, &CellularMapSpec::identity(&t)).unwrap();
        assert!(id.values().all(|&v| v == 1));

        let te = Subdivision::new(edge());
        let swap = CellularMapSpec::new(&te, 0, vec![1, 0]).unwrap();
        let d = chain_diagonal(&te, &swap).unwrap();
        assert_eq!(d.values().copied().collect::<Vec<_>>(), vec![0, 0, -1]);
    }

    #[test]
    fn non_equivariant_or_non_simplicial_maps_rejected() {
        let t = Subdivision::new(square_circle());
        // rotation by a quarter turn does not commute with conjugation
        assert!(matches!(
            CellularMapSpec::new(&t, 0, vec![1, 2, 3, 0]),
            Err(SimplicialError::NotSimplicial(_)) | Err(SimplicialError::NotEquivariant { .. })
        ));
        // 1 and -1 are not joined by an edge
        assert!(CellularMapSpec::new(&t, 0, vec![0, 1, 0, 2]).is_err());
    }

    #[test]
    fn fixed_subcomplex_examples() {
        let sq = square_circle();
        let whole = Subgroup::whole(sq.group());
        let fx = fixed_subcomplex(&sq, &whole);
        assert_eq!(fx.simplices.len(), 2);
        assert_eq!(fx.components.len(), 2);
        let triv = fixed_subcomplex(&sq, &Subgroup::trivial(sq.group()));
        assert_eq!(triv.simplices.len(), 8);
        assert_eq!(triv.components.len(), 1);

        let x = cross_polytope_boundary();
        let mut flip: Vec<usize> = (0..8).collect();
        flip.swap(6, 7);
        let gx = GComplex::new(x, PermGroup::generate(8, &[flip]).unwrap()).unwrap();
        let fx = fixed_subcomplex(&gx, &Subgroup::whole(gx.group()));
        let counts: Vec<usize> = (0..=3).map(|d| fx.simplices.iter().filter(|s| s.dim == d).count()).collect();
        assert_eq!(counts, vec![6, 12, 8, 0]);
        assert_eq!(fx.components.len(), 1);
    }

    #[test]
    fn homology_trace_examples() {
        let t = Subdivision::with_levels(square_circle(), 1).unwrap();
        assert_eq!(homology_trace_oracle(&t, &CellularMapSpec::identity(&t)).unwrap(), 0);
        assert_eq!(homology_trace_oracle(&t, &z_squared(&t)).unwrap(), -1);

        let x = cross_polytope_boundary();
        let t = Subdivision::new(GComplex::without_symmetry(x).unwrap());
        let map: Vec<usize> = (0..8).map(|v| if v >= 6 { 13 - v } else { v }).collect();
        let f = CellularMapSpec::new(&t, 0, map).unwrap();
        assert_eq!(homology_trace_oracle(&t, &f).unwrap(), 2);
        assert_eq!(chain_supertrace(&chain_map(&t, &f).unwrap()), 2);
    }

    #[test]
    fn subdivision_commutes_with_boundary() {
        for gx in [triangle(), square_circle()] {
            let t = Subdivision::with_levels(gx, 2).unwrap();
            for k in 1..=2 {
                for d in 1..=t.base().complex().dim() {
                    let lhs = t.level(k).complex().boundary_matrix(d).mul(&subdivision_chain_matrix(&t, k, d).unwrap()).unwrap();
                    let rhs = subdivision_chain_matrix(&t, k, d - 1).unwrap().mul(&t.base().complex().boundary_matrix(d)).unwrap();
                    assert_eq!(lhs, rhs, "level {k}, dim {d}");
                }
            }
        }
    }

    #[test]
    fn fixed_subcomplex_is_antitone() {
        let sq = square_circle();
        let subs = crate::group::all_subgroups(&Subgroup::whole(sq.group()));
        for a in &subs {
            for b in &subs {
                if a.is_subgroup_of(b) {
                    let fa = fixed_subcomplex(&sq, a);
                    let fb = fixed_subcomplex(&sq, b);
                    assert!(fb.simplices.iter().all(|s| fa.simplices.contains(s)));
                }
            }
        }
    }

    #[test]
    fn vertex_paths() {
        let p = VertexPath::parse("{{1},{1,i}}").unwrap();
        assert_eq!(p.depth(), 2);
        assert_eq!(p.to_string(), "{{1},{1,i}}");
        assert!(VertexPath::parse("{1,").is_none());
        assert!(VertexPath::parse("a b").is_none());
        let t = Subdivision::with_levels(square_circle(), 2).unwrap();
        let v = t.resolve(2, &VertexPath::parse("{{i},{-1,i}}").unwrap()).unwrap();
        assert_eq!(t.level(2).complex().name(v), "{{i},{-1,i}}");
        assert!(t.resolve(1, &VertexPath::parse("{1,-1}").unwrap()).is_err());
    }
}
