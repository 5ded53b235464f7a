//! Finite permutation groups, their subgroups, and exact class functions.
//!
//! Elements are stored once in a [`PermGroup`] (identity at index 0) together
//! with a full multiplication table; everything else refers to elements by
//! index. Composition is right-to-left: `mul(a, b)` maps `x` to `a(b(x))`.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exact_linalg::{rat, Rational};

/// Groups above this order are rejected; the multiplication table is dense.
pub const MAX_GROUP_ORDER: usize = 1024;

/// Exhaustive subgroup enumeration is used up to this order.
pub const EXHAUSTIVE_SUBGROUP_BOUND: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("generator {index} is not a permutation of {degree} points")]
    NotAPermutation { index: usize, degree: usize },
    #[error("group order exceeds {MAX_GROUP_ORDER}")]
    TooLarge,
    #[error("element list does not start with the identity")]
    MissingIdentity,
    #[error("element list contains a duplicate at index {0}")]
    Duplicate(usize),
    #[error("element list is not closed under composition")]
    NotClosed,
    #[error("element {0} is not in the group")]
    NotInGroup(usize),
    #[error("not a subgroup chain: the smaller group is not contained in the larger one")]
    NotASubgroupChain,
    #[error("class functions live on different subgroups")]
    SubgroupMismatch,
    #[error("class function has {found} values, the subgroup has {expected} conjugacy classes")]
    WrongLength { expected: usize, found: usize },
    #[error("class function value {0} is not an integer")]
    NonIntegral(Rational),
}

/// A finite group of permutations of `0..degree`.
pub struct PermGroup {
    degree: usize,
    elements: Vec<Vec<usize>>,
    lookup: HashMap<Vec<usize>, usize>,
    table: Vec<usize>,
    inverse: Vec<usize>,
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup").field("degree", &self.degree).field("order", &self.order()).finish()
    }
}

fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&x| a[x]).collect()
}

fn is_permutation(p: &[usize], degree: usize) -> bool {
    if p.len() != degree {
        return false;
    }
    let mut seen = vec![false; degree];
    for &x in p {
        if x >= degree || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

impl PermGroup {
    /// Closes the generators under composition.
    pub fn generate(degree: usize, generators: &[Vec<usize>]) -> Result<Arc<Self>, GroupError> {
        for (index, g) in generators.iter().enumerate() {
            if !is_permutation(g, degree) {
                return Err(GroupError::NotAPermutation { index, degree });
            }
        }
        let identity: Vec<usize> = (0..degree).collect();
        let mut elements = vec![identity.clone()];
        let mut lookup = HashMap::from([(identity, 0)]);
        let mut queue = VecDeque::from([0]);
        while let Some(i) = queue.pop_front() {
            for g in generators {
                let p = compose(g, &elements[i]);
                if !lookup.contains_key(&p) {
                    if elements.len() == MAX_GROUP_ORDER {
                        return Err(GroupError::TooLarge);
                    }
                    lookup.insert(p.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(p);
                }
            }
        }
        Self::finish(degree, elements, lookup)
    }

    /// Uses the given element order verbatim (identity first); fails unless
    /// the list is already a group.
    pub fn from_elements(degree: usize, elements: Vec<Vec<usize>>) -> Result<Arc<Self>, GroupError> {
        if elements.len() > MAX_GROUP_ORDER {
            return Err(GroupError::TooLarge);
        }
        for (index, g) in elements.iter().enumerate() {
            if !is_permutation(g, degree) {
                return Err(GroupError::NotAPermutation { index, degree });
            }
        }
        if elements.first().is_none_or(|e| e.iter().enumerate().any(|(i, &x)| i != x)) {
            return Err(GroupError::MissingIdentity);
        }
        let mut lookup = HashMap::new();
        for (i, e) in elements.iter().enumerate() {
            if lookup.insert(e.clone(), i).is_some() {
                return Err(GroupError::Duplicate(i));
            }
        }
        Self::finish(degree, elements, lookup)
    }

    pub fn trivial(degree: usize) -> Arc<Self> {
        Self::generate(degree, &[]).expect("trivial group")
    }

    fn finish(
        degree: usize,
        elements: Vec<Vec<usize>>,
        lookup: HashMap<Vec<usize>, usize>,
    ) -> Result<Arc<Self>, GroupError> {
        let n = elements.len();
        let mut table = Vec::with_capacity(n * n);
        for a in &elements {
            for b in &elements {
                let c = compose(a, b);
                table.push(*lookup.get(&c).ok_or(GroupError::NotClosed)?);
            }
        }
        let inverse = (0..n).map(|a| (0..n).find(|&b| table[a * n + b] == 0).expect("inverse")).collect();
        Ok(Arc::new(Self { degree, elements, lookup, table, inverse }))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, i: usize) -> &[usize] {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[Vec<usize>] {
        &self.elements
    }

    pub fn index_of(&self, perm: &[usize]) -> Option<usize> {
        self.lookup.get(perm).copied()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `g h g⁻¹`
    pub fn conj(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inv(g))
    }

    pub fn apply(&self, g: usize, point: usize) -> usize {
        self.elements[g][point]
    }
}

#[derive(Debug)]
struct Classes {
    classes: Vec<Vec<usize>>,
    class_of: HashMap<usize, usize>,
}

/// A subgroup of a [`PermGroup`], with its conjugacy classes. Classes are
/// ordered by their smallest element index, so the identity class comes first.
#[derive(Clone)]
pub struct Subgroup {
    parent: Arc<PermGroup>,
    members: Arc<Vec<usize>>,
    classes: Arc<Classes>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.parent, &other.parent) && self.members == other.members
    }
}

impl Eq for Subgroup {}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subgroup").field("members", &self.members).finish()
    }
}

fn closure(parent: &PermGroup, gens: &[usize]) -> Vec<usize> {
    let mut seen = BTreeSet::from([0]);
    let mut queue = VecDeque::from([0]);
    while let Some(x) = queue.pop_front() {
        for &g in gens {
            let y = parent.mul(g, x);
            if seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    seen.into_iter().collect()
}

impl Subgroup {
    fn build(parent: Arc<PermGroup>, members: Vec<usize>) -> Self {
        let mut classes = Vec::new();
        let mut class_of = HashMap::new();
        for &h in &members {
            if class_of.contains_key(&h) {
                continue;
            }
            let class: BTreeSet<usize> = members.iter().map(|&x| parent.conj(x, h)).collect();
            for &c in &class {
                class_of.insert(c, classes.len());
            }
            classes.push(class.into_iter().collect());
        }
        Self { parent, members: Arc::new(members), classes: Arc::new(Classes { classes, class_of }) }
    }

    pub fn whole(parent: &Arc<PermGroup>) -> Self {
        Self::build(parent.clone(), (0..parent.order()).collect())
    }

    pub fn trivial(parent: &Arc<PermGroup>) -> Self {
        Self::build(parent.clone(), vec![0])
    }

    pub fn generated(parent: &Arc<PermGroup>, gens: &[usize]) -> Result<Self, GroupError> {
        if let Some(&g) = gens.iter().find(|&&g| g >= parent.order()) {
            return Err(GroupError::NotInGroup(g));
        }
        Ok(Self::build(parent.clone(), closure(parent, gens)))
    }

    /// Verifies identity and closure.
    pub fn from_members(parent: &Arc<PermGroup>, members: &[usize]) -> Result<Self, GroupError> {
        let set: BTreeSet<usize> = members.iter().copied().collect();
        if let Some(&g) = set.iter().find(|&&g| g >= parent.order()) {
            return Err(GroupError::NotInGroup(g));
        }
        if !set.contains(&0) {
            return Err(GroupError::MissingIdentity);
        }
        for &a in &set {
            for &b in &set {
                if !set.contains(&parent.mul(a, b)) {
                    return Err(GroupError::NotClosed);
                }
            }
        }
        Ok(Self::build(parent.clone(), set.into_iter().collect()))
    }

    pub fn parent(&self) -> &Arc<PermGroup> {
        &self.parent
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.members.binary_search(&g).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        Arc::ptr_eq(&self.parent, &other.parent) && self.members.iter().all(|&g| other.contains(g))
    }

    /// `g H g⁻¹`
    pub fn conjugate(&self, g: usize) -> Self {
        let mut members: Vec<usize> = self.members.iter().map(|&h| self.parent.conj(g, h)).collect();
        members.sort_unstable();
        Self::build(self.parent.clone(), members)
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes.classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes.classes.len()
    }

    /// Smallest element of each class.
    pub fn class_reps(&self) -> Vec<usize> {
        self.classes.classes.iter().map(|c| c[0]).collect()
    }

    pub fn class_index(&self, g: usize) -> Option<usize> {
        self.classes.class_of.get(&g).copied()
    }

    /// Small generating set, chosen greedily in element order.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![0];
        for &m in self.members.iter() {
            if span.binary_search(&m).is_err() {
                gens.push(m);
                span = closure(&self.parent, &gens);
            }
        }
        gens
    }
}

/// Every subgroup of `h`, sorted by order then members. Exhaustive when
/// `|h| ≤ 32`; above that only the cyclic subgroups are returned.
pub fn all_subgroups(h: &Subgroup) -> Vec<Subgroup> {
    all_subgroups_with(h, &[])
}

/// As [`all_subgroups`], adding `extra` (those contained in `h`) to the
/// fallback list for large groups.
pub fn all_subgroups_with(h: &Subgroup, extra: &[Subgroup]) -> Vec<Subgroup> {
    let parent = h.parent();
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    if h.order() <= EXHAUSTIVE_SUBGROUP_BOUND {
        let mut queue = VecDeque::from([vec![0usize]]);
        found.insert(vec![0]);
        while let Some(s) = queue.pop_front() {
            for &g in h.members() {
                if s.binary_search(&g).is_ok() {
                    continue;
                }
                let mut gens = s.clone();
                gens.push(g);
                let t = closure(parent, &gens);
                if found.insert(t.clone()) {
                    queue.push_back(t);
                }
            }
        }
    } else {
        for &g in h.members() {
            found.insert(closure(parent, &[g]));
        }
        for e in extra.iter().filter(|e| e.is_subgroup_of(h)) {
            found.insert(e.members().to_vec());
        }
    }
    let mut out: Vec<Subgroup> = found.into_iter().map(|m| Subgroup::build(parent.clone(), m)).collect();
    out.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.members().cmp(b.members())));
    out
}

pub fn cyclic_subgroups(h: &Subgroup) -> Vec<Subgroup> {
    let found: BTreeSet<Vec<usize>> = h.members().iter().map(|&g| closure(h.parent(), &[g])).collect();
    let mut out: Vec<Subgroup> = found.into_iter().map(|m| Subgroup::build(h.parent().clone(), m)).collect();
    out.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.members().cmp(b.members())));
    out
}

pub fn conjugacy_classes(h: &Subgroup) -> &[Vec<usize>] {
    h.classes()
}

/// A rational-valued function on a subgroup, constant on its conjugacy
/// classes; stored as one value per class.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassFunction {
    subgroup: Subgroup,
    values: Vec<Rational>,
}

impl ClassFunction {
    pub fn new(subgroup: Subgroup, values: Vec<Rational>) -> Result<Self, GroupError> {
        if values.len() != subgroup.num_classes() {
            return Err(GroupError::WrongLength { expected: subgroup.num_classes(), found: values.len() });
        }
        Ok(Self { subgroup, values })
    }

    pub fn from_ints(subgroup: Subgroup, values: &[i64]) -> Result<Self, GroupError> {
        Self::new(subgroup, values.iter().map(|&v| rat(v)).collect())
    }

    /// Evaluates `f` on each class representative.
    pub fn from_fn(subgroup: Subgroup, mut f: impl FnMut(usize) -> Rational) -> Self {
        let values = subgroup.class_reps().into_iter().map(&mut f).collect();
        Self { subgroup, values }
    }

    pub fn constant(subgroup: Subgroup, c: Rational) -> Self {
        let values = vec![c; subgroup.num_classes()];
        Self { subgroup, values }
    }

    pub fn trivial(subgroup: Subgroup) -> Self {
        Self::constant(subgroup, Rational::one())
    }

    /// Character of the regular representation: `|H|` at the identity, 0 elsewhere.
    pub fn regular(subgroup: Subgroup) -> Self {
        let order = rat(subgroup.order() as i64);
        Self::from_fn(subgroup, |g| if g == 0 { order.clone() } else { Rational::zero() })
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn value_at(&self, g: usize) -> Option<&Rational> {
        self.subgroup.class_index(g).map(|c| &self.values[c])
    }

    fn same_subgroup(&self, other: &Self) -> Result<(), GroupError> {
        if self.subgroup == other.subgroup {
            Ok(())
        } else {
            Err(GroupError::SubgroupMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, GroupError> {
        self.same_subgroup(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        Ok(Self { subgroup: self.subgroup.clone(), values })
    }

    pub fn pointwise_mul(&self, other: &Self) -> Result<Self, GroupError> {
        self.same_subgroup(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect();
        Ok(Self { subgroup: self.subgroup.clone(), values })
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self { subgroup: self.subgroup.clone(), values: self.values.iter().map(|v| v * s).collect() }
    }

    /// `(ind χ)(k) = |H|⁻¹ Σ_{x ∈ K, x⁻¹kx ∈ H} χ(x⁻¹kx)`
    pub fn induce(&self, k: &Subgroup) -> Result<Self, GroupError> {
        let h = &self.subgroup;
        if !h.is_subgroup_of(k) {
            return Err(GroupError::NotASubgroupChain);
        }
        let g = h.parent();
        let inv_order = Rational::new(BigInt::one(), BigInt::from(h.order()));
        Ok(Self::from_fn(k.clone(), |rep| {
            let mut sum = Rational::zero();
            for &x in k.members() {
                let y = g.conj(g.inv(x), rep);
                if let Some(v) = self.value_at(y) {
                    sum += v;
                }
            }
            sum * &inv_order
        }))
    }

    pub fn restrict(&self, h: &Subgroup) -> Result<Self, GroupError> {
        if !h.is_subgroup_of(&self.subgroup) {
            return Err(GroupError::NotASubgroupChain);
        }
        Ok(Self::from_fn(h.clone(), |rep| self.value_at(rep).expect("member").clone()))
    }

    /// Class function on `g H g⁻¹` with value `χ(h)` at `g h g⁻¹`.
    pub fn conjugate_transport(&self, g: usize) -> Self {
        let parent = self.subgroup.parent().clone();
        let target = self.subgroup.conjugate(g);
        let ginv = parent.inv(g);
        Self::from_fn(target, |rep| self.value_at(parent.conj(ginv, rep)).expect("conjugate member").clone())
    }

    pub fn is_integral(&self) -> bool {
        self.values.iter().all(|v| v.is_integer())
    }

    /// Integer values, or an error naming the first non-integral one.
    pub fn to_integers(&self) -> Result<Vec<BigInt>, GroupError> {
        self.values
            .iter()
            .map(|v| if v.is_integer() { Ok(v.to_integer()) } else { Err(GroupError::NonIntegral(v.clone())) })
            .collect()
    }
}

/// All homomorphisms `H → {±1}`, trivial one first.
pub fn sign_characters(h: &Subgroup) -> Vec<ClassFunction> {
    let parent = h.parent();
    let gens = h.generators();
    let mut out = Vec::new();
    'assign: for mask in 0u64..(1u64 << gens.len()) {
        let mut value: HashMap<usize, i64> = HashMap::from([(0, 1)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (bit, &s) in gens.iter().enumerate() {
                let sv = if mask >> bit & 1 == 1 { -1 } else { 1 };
                let y = parent.mul(s, x);
                let v = sv * value[&x];
                match value.get(&y) {
                    Some(&w) if w != v => continue 'assign,
                    Some(_) => {}
                    None => {
                        value.insert(y, v);
                        queue.push_back(y);
                    }
                }
            }
        }
        out.push(ClassFunction::from_fn(h.clone(), |g| rat(value[&g])));
    }
    out.sort_by(|a, b| b.values.cmp(&a.values));
    out.dedup();
    out
}
