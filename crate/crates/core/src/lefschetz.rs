//! Equivariant Lefschetz classes: the combinatorial and smooth formulas, the
//! point-evaluation relation lattice, and the equality check between them.
//!
//! A class is a finite sum of atoms `[ξ_{Gσ, χ}]`, one integer class
//! function per simplex orbit. Atoms living on a non-representative simplex
//! are transported to the orbit representative by conjugation.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::exact_linalg::{rat, IntLattice, LinalgError, Membership, RatMatrix};
use crate::group::{all_subgroups_with, cyclic_subgroups, sign_characters, ClassFunction, GroupError, Subgroup};
use crate::sign_character::{signed_sign_character, OrthogonalActionData, SignError};
use crate::simplicial::{
    chain_diagonal, components_of, fixed_subcomplex, setwise_stabilizer, CellularMapSpec, GComplex, SimplexId,
    SimplicialError, SiteId, Subdivision,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LefschetzError {
    #[error(transparent)]
    Simplicial(#[from] SimplicialError),
    #[error(transparent)]
    Sign(#[from] SignError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("character at {site} is not defined on its stabilizer")]
    StabilizerMismatch { site: String },
    #[error("fixed set is not closed under faces at {0}")]
    NotFaceClosed(String),
    #[error("fixed set is not invariant: {0} leaves it")]
    NotInvariant(String),
    #[error("component through {0} has no normal data")]
    ComponentUncovered(String),
    #[error("components through {0} and {1} are in the same orbit, give normal data once")]
    ComponentRepeated(String, String),
    #[error("vertex {0} does not lie in the fixed set")]
    AnchorOutsideFixedSet(String),
    #[error("stabilizer of {0} is not contained in its component's stabilizer")]
    StabilizerNotInComponent(String),
    #[error("classes live on different complexes")]
    CoordinateMismatch,
}

/// Integer class-function coefficients per simplex orbit. Zero entries are
/// never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LefschetzClass {
    entries: BTreeMap<SiteId, Vec<BigInt>>,
}

impl LefschetzClass {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &BTreeMap<SiteId, Vec<BigInt>> {
        &self.entries
    }

    pub fn get(&self, site: SiteId) -> Option<&[BigInt]> {
        self.entries.get(&site).map(Vec::as_slice)
    }

    fn add_values(&mut self, site: SiteId, values: &[BigInt]) {
        let slot = self.entries.entry(site).or_insert_with(|| vec![BigInt::zero(); values.len()]);
        for (a, b) in slot.iter_mut().zip(values) {
            *a += b;
        }
        if slot.iter().all(Zero::is_zero) {
            self.entries.remove(&site);
        }
    }

    /// Adds an atom given by a class function on the stabilizer of any
    /// simplex in the orbit.
    pub fn add_atom(&mut self, gx: &GComplex, simplex: SimplexId, cf: &ClassFunction) -> Result<(), LefschetzError> {
        let site = gx.site_of(simplex);
        let mismatch = || LefschetzError::StabilizerMismatch { site: gx.complex().display_simplex(simplex) };
        if cf.subgroup().members() != gx.stabilizer_of(simplex).members() {
            return Err(mismatch());
        }
        let g = gx.orbit_table().transporter(simplex);
        let moved = cf.conjugate_transport(gx.group().inv(g));
        let values = moved.to_integers()?;
        if moved.subgroup().members() != gx.stabilizer(site).members() {
            return Err(mismatch());
        }
        self.add_values(site, &values);
        Ok(())
    }

    pub fn atom(gx: &GComplex, simplex: SimplexId, cf: &ClassFunction) -> Result<Self, LefschetzError> {
        let mut c = Self::zero();
        c.add_atom(gx, simplex, cf)?;
        Ok(c)
    }

    /// Atom with the trivial character times `n`.
    pub fn trivial_atom(gx: &GComplex, site: SiteId, n: i64) -> Self {
        let mut c = Self::zero();
        let k = gx.stabilizer(site).num_classes();
        c.add_values(site, &vec![BigInt::from(n); k]);
        c
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (s, v) in &other.entries {
            out.add_values(*s, v);
        }
        out
    }

    pub fn neg(&self) -> Self {
        let entries = self.entries.iter().map(|(s, v)| (*s, v.iter().map(|x| -x).collect())).collect();
        Self { entries }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, n: &BigInt) -> Self {
        if n.is_zero() {
            return Self::zero();
        }
        let entries = self.entries.iter().map(|(s, v)| (*s, v.iter().map(|x| x * n).collect())).collect();
        Self { entries }
    }

    /// Underlying non-equivariant count: each atom contributes
    /// `|G·σ| · cf(e)`, the dimension of the induced representation.
    pub fn index(&self, gx: &GComplex) -> BigInt {
        self.entries
            .iter()
            .map(|(s, v)| BigInt::from(gx.orbit_table().orbit(*s).members.len()) * &v[0])
            .sum()
    }

    /// One line per atom, `site=<repr> stab=<order> cf=[...]`.
    pub fn lines(&self, gx: &GComplex) -> Vec<String> {
        self.entries
            .iter()
            .map(|(s, v)| {
                let vals: Vec<String> = v.iter().map(ToString::to_string).collect();
                format!("site={} stab={} cf=[{}]", gx.display_site(*s), gx.stabilizer(*s).order(), vals.join(","))
            })
            .collect()
    }
}

/// `Σ_σ̇ (-1)^{dim σ} Φ_σσ [ξ_σ̇]`.
pub fn combinatorial_lefschetz(tower: &Subdivision, f: &CellularMapSpec) -> Result<LefschetzClass, LefschetzError> {
    let diag = chain_diagonal(tower, f)?;
    let gx = tower.base();
    let mut out = LefschetzClass::zero();
    for (site, phi) in diag {
        let n = if site.dim % 2 == 0 { phi } else { -phi };
        out = out.add(&LefschetzClass::trivial_atom(gx, site, n));
    }
    Ok(out)
}

/// `Σ_σ̇ (-1)^{dim σ} [ξ_σ̇]`.
pub fn euler_characteristic(gx: &GComplex) -> LefschetzClass {
    let mut out = LefschetzClass::zero();
    for site in gx.sites() {
        let n = if site.dim % 2 == 0 { 1 } else { -1 };
        out = out.add(&LefschetzClass::trivial_atom(gx, site, n));
    }
    out
}

/// A transverse fixed point: vertex `vertex` of subdivision level `level`,
/// the tangent representation of its stabilizer, and `D_pφ`.
#[derive(Clone, Debug)]
pub struct FixedOrbitDatum {
    pub level: usize,
    pub vertex: usize,
    pub tangent: OrthogonalActionData,
    pub dphi: RatMatrix,
}

impl FixedOrbitDatum {
    /// The base simplex whose interior contains the point.
    pub fn carrier(&self, tower: &Subdivision) -> SimplexId {
        tower.level(self.level).carrier(SimplexId { dim: 0, idx: self.vertex })
    }
}

/// `Σ_p [ξ_{Gp, cf_p}]` with `cf_p = sign det(I − D_pφ)` on fixed subspaces.
pub fn smooth_transverse_lefschetz(
    tower: &Subdivision,
    data: &[FixedOrbitDatum],
) -> Result<LefschetzClass, LefschetzError> {
    let gx = tower.base();
    let mut out = LefschetzClass::zero();
    for d in data {
        let carrier = d.carrier(tower);
        let cf = signed_sign_character(&d.tangent, &d.dphi.one_minus()?)?;
        out.add_atom(gx, carrier, cf.cf())?;
    }
    Ok(out)
}

/// Normal data for one orbit of fixed-set components, the component being
/// the one through `anchor` (a base vertex).
#[derive(Clone, Debug)]
pub struct ComponentDatum {
    pub anchor: usize,
    pub normal: OrthogonalActionData,
    pub dnu: RatMatrix,
}

/// A fixed subcomplex `Y` with normal data per orbit of its components.
#[derive(Clone, Debug)]
pub struct SubmanifoldDatum {
    pub simplices: Vec<SimplexId>,
    pub components: Vec<ComponentDatum>,
}

/// `Σ_{σ̇ ⊆ Y} (-1)^{dim σ} [ξ_{Gσ, cf_C|Stab σ}]`, `cf_C` the sign character of
/// `I − D_νφ` on the component through `σ`.
pub fn smooth_submanifold_lefschetz(gx: &GComplex, sub: &SubmanifoldDatum) -> Result<LefschetzClass, LefschetzError> {
    let x = gx.complex();
    let y: BTreeSet<SimplexId> = sub.simplices.iter().copied().collect();
    for &s in &y {
        let verts = x.vertices_of(s);
        for skip in (0..verts.len()).filter(|_| s.dim > 0) {
            let face: Vec<usize> = verts.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, &v)| v).collect();
            let f = x.id_of(&face).expect("face");
            if !y.contains(&f) {
                return Err(LefschetzError::NotFaceClosed(x.display_simplex(s)));
            }
        }
        for g in 0..gx.group().order() {
            if !y.contains(&gx.act(g, s)) {
                return Err(LefschetzError::NotInvariant(x.display_simplex(s)));
            }
        }
    }
    let ylist: Vec<SimplexId> = y.iter().copied().collect();
    let comps = components_of(x, &ylist);
    let comp_of_vertex: HashMap<usize, usize> = comps
        .iter()
        .enumerate()
        .flat_map(|(i, c)| c.iter().filter(|s| s.dim == 0).map(move |s| (s.idx, i)))
        .collect();

    // per component: (datum, g) with g·(datum component) = this component
    let mut cover: Vec<Option<(usize, usize)>> = vec![None; comps.len()];
    let mut cfs = Vec::new();
    for (di, d) in sub.components.iter().enumerate() {
        let c = *comp_of_vertex
            .get(&d.anchor)
            .ok_or_else(|| LefschetzError::AnchorOutsideFixedSet(x.name(d.anchor).to_string()))?;
        let k = setwise_stabilizer(gx, &comps[c])?;
        if d.normal.subgroup().members() != k.members() {
            return Err(LefschetzError::StabilizerMismatch { site: x.name(d.anchor).to_string() });
        }
        cfs.push(signed_sign_character(&d.normal, &d.dnu.one_minus()?)?.into_cf());
        for g in 0..gx.group().order() {
            let target = comp_of_vertex[&gx.group().apply(g, d.anchor)];
            match cover[target] {
                None => cover[target] = Some((di, g)),
                Some((other, _)) if other != di => {
                    return Err(LefschetzError::ComponentRepeated(
                        x.name(sub.components[other].anchor).to_string(),
                        x.name(d.anchor).to_string(),
                    ))
                }
                Some(_) => {}
            }
        }
    }
    if let Some(c) = cover.iter().position(Option::is_none) {
        return Err(LefschetzError::ComponentUncovered(x.display_simplex(comps[c][0])));
    }

    let mut out = LefschetzClass::zero();
    let mut done = BTreeSet::new();
    for &s in &ylist {
        let site = gx.site_of(s);
        if !done.insert(site) {
            continue;
        }
        let rep = gx.rep(site);
        let c = comp_of_vertex[&x.vertices_of(rep)[0]];
        let (di, g) = cover[c].expect("covered");
        let cf = cfs[di].conjugate_transport(g);
        let stab = gx.stabilizer(site);
        if !stab.is_subgroup_of(cf.subgroup()) {
            return Err(LefschetzError::StabilizerNotInComponent(x.display_simplex(rep)));
        }
        let restricted = cf.restrict(stab)?;
        let restricted = if site.dim.is_multiple_of(2) { restricted } else { restricted.scale(&rat(-1)) };
        out.add_atom(gx, rep, &restricted)?;
    }
    Ok(out)
}

/// Which subgroups `H` generate point-evaluation relations.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SubgroupPolicy {
    /// Every subgroup when `|G| ≤ 32`, otherwise cyclic subgroups and
    /// simplex stabilizers.
    #[default]
    All,
    CyclicAndStabilizers,
}

impl FromStr for SubgroupPolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "all" => Ok(Self::All),
            "cyclic+stab" => Ok(Self::CyclicAndStabilizers),
            other => Err(format!("unknown policy {other}, expected all or cyclic+stab")),
        }
    }
}

impl fmt::Display for SubgroupPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::All => "all",
            Self::CyclicAndStabilizers => "cyclic+stab",
        })
    }
}

/// Integer span of point-evaluation identifications, flattened over every
/// `(site, conjugacy class)` coordinate of the complex.
#[derive(Clone, Debug)]
pub struct RelationLattice {
    generators: Vec<LefschetzClass>,
    coords: Vec<(SiteId, usize)>,
    lattice: IntLattice,
}

fn coordinates(gx: &GComplex) -> Vec<(SiteId, usize)> {
    gx.sites().into_iter().flat_map(|s| (0..gx.stabilizer(s).num_classes()).map(move |c| (s, c))).collect()
}

fn flatten(coords: &[(SiteId, usize)], c: &LefschetzClass) -> Result<Vec<BigInt>, LefschetzError> {
    let mut v = vec![BigInt::zero(); coords.len()];
    let mut used = 0;
    for (i, (s, k)) in coords.iter().enumerate() {
        if let Some(vals) = c.get(*s) {
            v[i] = vals.get(*k).cloned().ok_or(LefschetzError::CoordinateMismatch)?;
            used += 1;
        }
    }
    let expected: usize = c.entries.values().map(Vec::len).sum();
    if used != expected {
        return Err(LefschetzError::CoordinateMismatch);
    }
    Ok(v)
}

fn unflatten(coords: &[(SiteId, usize)], v: &[BigInt]) -> LefschetzClass {
    let mut out = LefschetzClass::zero();
    let mut by_site: BTreeMap<SiteId, Vec<BigInt>> = BTreeMap::new();
    for ((s, k), x) in coords.iter().zip(v) {
        let slot = by_site.entry(*s).or_default();
        if slot.len() <= *k {
            slot.resize(k + 1, BigInt::zero());
        }
        slot[*k] = x.clone();
    }
    for (s, vals) in by_site {
        out.add_values(s, &vals);
    }
    out
}

fn policy_subgroups(gx: &GComplex, policy: SubgroupPolicy) -> Vec<Subgroup> {
    let whole = Subgroup::whole(gx.group());
    let mut stabs: Vec<Subgroup> = gx.sites().into_iter().map(|s| gx.stabilizer(s).clone()).collect();
    stabs.sort_by(|a, b| a.members().cmp(b.members()));
    stabs.dedup_by(|a, b| a.members() == b.members());
    match policy {
        SubgroupPolicy::All => all_subgroups_with(&whole, &stabs),
        SubgroupPolicy::CyclicAndStabilizers => {
            let mut out = cyclic_subgroups(&whole);
            for s in stabs {
                if !out.iter().any(|o| o.members() == s.members()) {
                    out.push(s);
                }
            }
            out
        }
    }
}

/// Identifications `ind_H^{Stab σ}(χ) at σ ≡ ind_H^{Stab τ}(χ) at τ` for
/// `σ, τ` in one component of `X^H`, `χ` trivial, a ±1 character, or the
/// regular character of `H`. Generators are differences against the first
/// simplex of each component; duplicates are dropped.
pub fn pointevals_relations(gx: &GComplex, policy: SubgroupPolicy) -> Result<RelationLattice, LefschetzError> {
    let coords = coordinates(gx);
    let mut generators = Vec::new();
    let mut seen = BTreeSet::new();
    for h in policy_subgroups(gx, policy) {
        let mut pool = sign_characters(&h);
        pool.push(ClassFunction::regular(h.clone()));
        pool.dedup();
        let fixed = fixed_subcomplex(gx, &h);
        for comp in &fixed.components {
            for chi in &pool {
                let mut atoms = Vec::with_capacity(comp.len());
                for &s in comp {
                    let induced = chi.induce(&gx.stabilizer_of(s))?;
                    atoms.push(LefschetzClass::atom(gx, s, &induced)?);
                }
                for a in &atoms[1..] {
                    let r = atoms[0].sub(a);
                    if r.is_zero() {
                        continue;
                    }
                    let v = flatten(&coords, &r)?;
                    let neg: Vec<BigInt> = v.iter().map(|x| -x).collect();
                    if seen.contains(&v) || seen.contains(&neg) {
                        continue;
                    }
                    seen.insert(v);
                    generators.push(r);
                }
            }
        }
    }
    let flat = generators.iter().map(|g| flatten(&coords, g)).collect::<Result<Vec<_>, _>>()?;
    let lattice = IntLattice::new(coords.len(), flat)?;
    Ok(RelationLattice { generators, coords, lattice })
}

impl RelationLattice {
    pub fn generators(&self) -> &[LefschetzClass] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    /// Canonical representative of `c` modulo the lattice.
    pub fn reduce(&self, c: &LefschetzClass) -> Result<LefschetzClass, LefschetzError> {
        let v = flatten(&self.coords, c)?;
        Ok(unflatten(&self.coords, &self.lattice.reduce(&v)?))
    }

    /// Rebuilds `Σ cᵢ·generatorᵢ` from a certificate.
    pub fn combine(&self, certificate: &[(usize, BigInt)]) -> LefschetzClass {
        certificate.iter().fold(LefschetzClass::zero(), |acc, (i, c)| acc.add(&self.generators[*i].scale(c)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// `u − v = Σ c·generator` over the listed `(generator, c)` pairs.
    Equal(Vec<(usize, BigInt)>),
    /// Reduced form of `u − v`; nonzero, but not a proof of inequality.
    NotProven(LefschetzClass),
}

impl Verdict {
    pub fn is_equal(&self) -> bool {
        matches!(self, Verdict::Equal(_))
    }
}

pub fn classes_equal_mod_relations(
    u: &LefschetzClass,
    v: &LefschetzClass,
    relations: &RelationLattice,
) -> Result<Verdict, LefschetzError> {
    let diff = u.sub(v);
    if diff.is_zero() {
        return Ok(Verdict::Equal(Vec::new()));
    }
    let d = flatten(&relations.coords, &diff)?;
    // a single generator multiple is the shortest possible certificate
    for (i, g) in relations.lattice.generators().iter().enumerate() {
        if let Some(c) = integer_multiple(&d, g) {
            return Ok(Verdict::Equal(vec![(i, c)]));
        }
    }
    match relations.lattice.membership(&d)? {
        Membership::Inside(coeffs) => {
            Ok(Verdict::Equal(coeffs.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect()))
        }
        Membership::Outside(residual) => Ok(Verdict::NotProven(unflatten(&relations.coords, &residual))),
    }
}

fn integer_multiple(d: &[BigInt], g: &[BigInt]) -> Option<BigInt> {
    let i = g.iter().position(|x| !x.is_zero())?;
    if (&d[i] % &g[i]).is_zero() {
        let c = &d[i] / &g[i];
        let matches = d.iter().zip(g).all(|(a, b)| *a == &c * b);
        (matches && !c.is_zero()).then_some(c)
    } else {
        None
    }
}

/// Moves a class on `X` to `Sd X` (level 1 of `tower`): the orbit of `σ`
/// becomes the orbit of its barycentre, with the same stabilizer.
pub fn lift_to_subdivision(tower: &Subdivision, c: &LefschetzClass) -> Result<LefschetzClass, LefschetzError> {
    let gx = tower.base();
    let lvl = tower.level(1);
    let sd = lvl.gcomplex();
    let mut out = LefschetzClass::zero();
    for (site, values) in c.entries() {
        let rep = gx.rep(*site);
        let v = (0..lvl.complex().num_vertices()).find(|&v| lvl.source(v) == rep).expect("barycentre exists");
        let vid = SimplexId { dim: 0, idx: v };
        let stab = sd.stabilizer_of(vid);
        let own = gx.stabilizer(*site);
        // element indices agree between levels, so classes match by representative
        let vals: Vec<_> = stab
            .class_reps()
            .iter()
            .map(|&r| values[own.class_index(r).expect("same stabilizer")].clone().into())
            .collect();
        let cf = ClassFunction::new(stab, vals)?;
        out.add_atom(sd, vid, &cf)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::PermGroup;
    use num_traits::One;
    use crate::simplicial::{ColouredComplex, VertexPath};

    fn square_circle() -> GComplex {
        let names = ["1", "i", "-1", "-i"].iter().map(|s| s.to_string()).collect();
        let x = ColouredComplex::from_maximal(names, vec![0, 1, 0, 1], &[vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]]).unwrap();
        GComplex::new(x, PermGroup::generate(4, &[vec![0, 3, 2, 1]]).unwrap()).unwrap()
    }

    fn z_squared(t: &Subdivision) -> CellularMapSpec {
        let order = ["{1}", "{1,i}", "{i}", "{i,-1}", "{-1}", "{-1,-i}", "{-i}", "{-i,1}"];
        let square = ["1", "i", "-1", "-i"];
        let mut map = vec![0; 8];
        for (k, p) in order.iter().enumerate() {
            let v = t.resolve(1, &VertexPath::parse(p).unwrap()).unwrap();
            map[v] = t.base().complex().vertex_index(square[k % 4]).unwrap();
        }
        CellularMapSpec::new(t, 1, map).unwrap()
    }

    fn at(gx: &GComplex, names: &[&str]) -> SimplexId {
        let v: Vec<usize> = names.iter().map(|n| gx.complex().vertex_index(n).unwrap()).collect();
        gx.complex().id_of(&v).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn smooth_z2(t: &Subdivision, dphi: i64) -> LefschetzClass {
        let gx = t.base();
        let one = at(gx, &["1"]);
        let stab = gx.stabilizer_of(one);
        let c = stab.members()[1];
        let tangent = OrthogonalActionData::from_generators(stab, 1, vec![(c, RatMatrix::scalar(1, rat(-1)))]).unwrap();
        let datum = FixedOrbitDatum { level: 0, vertex: one.idx, tangent, dphi: RatMatrix::scalar(1, rat(dphi)) };
        smooth_transverse_lefschetz(t, &[datum]).unwrap()
    }

    #[test]
    fn combinatorial_and_smooth_z_squared() {
        let t = Subdivision::with_levels(square_circle(), 1).unwrap();
        let gx = t.base();
        let comb = combinatorial_lefschetz(&t, &z_squared(&t)).unwrap();
        assert_eq!(comb.lines(gx), vec!["site={1} stab=2 cf=[1,1]", "site={1,i} stab=1 cf=[-1]"]);
        assert_eq!(comb.index(gx), BigInt::from(-1));
        let smooth = smooth_z2(&t, 2);
        assert_eq!(smooth.lines(gx), vec!["site={1} stab=2 cf=[-1,1]"]);

        let rel = pointevals_relations(gx, SubgroupPolicy::All).unwrap();
        match classes_equal_mod_relations(&comb, &smooth, &rel).unwrap() {
            Verdict::Equal(cert) => {
                assert_eq!(cert.len(), 1);
                assert_eq!(rel.combine(&cert), comb.sub(&smooth));
                let g = &rel.generators()[cert[0].0];
                let expected = LefschetzClass::atom(gx, at(gx, &["1"]), &ClassFunction::regular(gx.stabilizer_of(at(gx, &["1"]))))
                    .unwrap()
                    .sub(&LefschetzClass::trivial_atom(gx, gx.site_of(at(gx, &["1", "i"])), 1));
                assert!(*g == expected || *g == expected.neg());
                assert_eq!(g.scale(&cert[0].1), expected);
            }
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn euler_examples() {
        let gx = square_circle();
        let e = euler_characteristic(&gx);
        assert_eq!(e.entries().len(), 5);
        assert_eq!(e.index(&gx), BigInt::zero());
        let t = Subdivision::new(gx.clone());
        assert_eq!(combinatorial_lefschetz(&t, &CellularMapSpec::identity(&t)).unwrap(), e);

        let point = GComplex::without_symmetry(ColouredComplex::from_maximal(vec!["p".into()], vec![0], &[]).unwrap()).unwrap();
        let e = euler_characteristic(&point);
        assert_eq!(e.lines(&point), vec!["site={p} stab=1 cf=[1]"]);
        assert!(pointevals_relations(&point, SubgroupPolicy::All).unwrap().is_empty());
    }

    #[test]
    fn edge_swap() {
        let x = ColouredComplex::from_maximal(vec!["a".into(), "b".into()], vec![0, 1], &[vec![0, 1]]).unwrap();
        let t = Subdivision::new(GComplex::without_symmetry(x).unwrap());
        let f = CellularMapSpec::new(&t, 0, vec![1, 0]).unwrap();
        let c = combinatorial_lefschetz(&t, &f).unwrap();
        assert_eq!(c.lines(t.base()), vec!["site={a,b} stab=1 cf=[1]"]);
        assert_eq!(c.index(t.base()), BigInt::one());
    }

    #[test]
    fn relations_respect_components() {
        let gx = square_circle();
        let rel = pointevals_relations(&gx, SubgroupPolicy::All).unwrap();
        let whole = Subgroup::whole(gx.group());
        let tau = ClassFunction::trivial(whole.clone());
        let a = LefschetzClass::atom(&gx, at(&gx, &["1"]), &tau).unwrap();
        let b = LefschetzClass::atom(&gx, at(&gx, &["-1"]), &tau).unwrap();
        match classes_equal_mod_relations(&a, &b, &rel).unwrap() {
            Verdict::NotProven(r) => assert!(!r.is_zero()),
            v => panic!("{v:?}"),
        }
        assert_eq!(classes_equal_mod_relations(&a, &a, &rel).unwrap(), Verdict::Equal(vec![]));
        for g in rel.generators() {
            assert_eq!(g.index(&gx), BigInt::zero());
        }
    }

    #[test]
    fn corrupted_datum_not_proven() {
        let t = Subdivision::with_levels(square_circle(), 1).unwrap();
        let comb = combinatorial_lefschetz(&t, &z_squared(&t)).unwrap();
        let bad = smooth_z2(&t, -2);
        let rel = pointevals_relations(t.base(), SubgroupPolicy::All).unwrap();
        assert!(!classes_equal_mod_relations(&comb, &bad, &rel).unwrap().is_equal());
        assert_eq!(bad.index(t.base()), BigInt::one());
    }

    #[test]
    fn attracting_point_is_positive() {
        let t = Subdivision::new(square_circle());
        let c = smooth_z2(&t, 0);
        assert_eq!(c.get(t.base().site_of(at(t.base(), &["1"]))), Some(ints(&[1, 1]).as_slice()));
    }

    #[test]
    fn subdivision_invariance_of_euler() {
        let t = Subdivision::with_levels(square_circle(), 1).unwrap();
        let lifted = lift_to_subdivision(&t, &euler_characteristic(t.base())).unwrap();
        let sd = t.level(1).gcomplex();
        let rel = pointevals_relations(sd, SubgroupPolicy::All).unwrap();
        assert!(classes_equal_mod_relations(&lifted, &euler_characteristic(sd), &rel).unwrap().is_equal());
        assert_eq!(lifted.index(sd), BigInt::zero());
    }

    #[test]
    fn policy_parsing() {
        assert_eq!("cyclic+stab".parse::<SubgroupPolicy>().unwrap(), SubgroupPolicy::CyclicAndStabilizers);
        assert!("most".parse::<SubgroupPolicy>().is_err());
        assert_eq!(SubgroupPolicy::All.to_string(), "all");
    }
}
