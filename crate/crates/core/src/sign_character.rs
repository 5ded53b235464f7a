//! Equivariant sign of a commuting invertible linear map.
//!
//! For a finite group `H` acting orthogonally on `ℝⁿ` and an invertible `A`
//! commuting with the action, the graded sign line is recorded as the signed
//! class function `g ↦ sign det(A|Fix(g))`. The parity is its value at the
//! identity; the ungraded character is the class function divided by that
//! value.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::exact_linalg::{det_sign, fixed_subspace, kernel, rat, restrict_operator, LinalgError, RatMatrix};
use crate::group::{all_subgroups, ClassFunction, GroupError, Subgroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SignError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("element {0} is not in the acting subgroup")]
    NotInSubgroup(usize),
    #[error("matrix for element {element} is not {dim}x{dim}")]
    WrongShape { element: usize, dim: usize },
    #[error("matrix for element {0} is not orthogonal")]
    NotOrthogonal(usize),
    #[error("representation is inconsistent at element {0} (not a homomorphism)")]
    Inconsistent(usize),
    #[error("given elements generate a proper subgroup of the acting group")]
    DoesNotGenerate,
    #[error("map is singular")]
    Singular,
    #[error("map does not commute with the action of element {0}")]
    DoesNotCommute(usize),
    #[error("the two sign characters live on different groups")]
    Mismatch,
}

/// An orthogonal representation `ρ: H → O(n)` with exact entries.
#[derive(Clone, Debug)]
pub struct OrthogonalActionData {
    subgroup: Subgroup,
    dim: usize,
    rho: HashMap<usize, RatMatrix>,
}

impl OrthogonalActionData {
    /// Extends `ρ` from the listed elements to the subgroup they generate,
    /// which must be all of `subgroup`.
    pub fn from_generators(
        subgroup: Subgroup,
        dim: usize,
        generators: Vec<(usize, RatMatrix)>,
    ) -> Result<Self, SignError> {
        let parent = subgroup.parent().clone();
        for (g, m) in &generators {
            if !subgroup.contains(*g) {
                return Err(SignError::NotInSubgroup(*g));
            }
            if m.rows() != dim || m.cols() != dim {
                return Err(SignError::WrongShape { element: *g, dim });
            }
            if !m.is_orthogonal() {
                return Err(SignError::NotOrthogonal(*g));
            }
        }
        let mut rho = HashMap::from([(0usize, RatMatrix::identity(dim))]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (s, m) in &generators {
                let y = parent.mul(*s, x);
                let my = m.mul(&rho[&x])?;
                match rho.get(&y) {
                    Some(existing) if *existing != my => return Err(SignError::Inconsistent(y)),
                    Some(_) => {}
                    None => {
                        rho.insert(y, my);
                        queue.push_back(y);
                    }
                }
            }
        }
        if rho.len() != subgroup.order() {
            return Err(SignError::DoesNotGenerate);
        }
        let data = Self { subgroup, dim, rho };
        data.check_homomorphism()?;
        Ok(data)
    }

    /// The trivial representation on `ℝ^dim`.
    pub fn trivial(subgroup: Subgroup, dim: usize) -> Self {
        let rho = subgroup.members().iter().map(|&g| (g, RatMatrix::identity(dim))).collect();
        Self { subgroup, dim, rho }
    }

    fn check_homomorphism(&self) -> Result<(), SignError> {
        let parent = self.subgroup.parent();
        for &a in self.subgroup.members() {
            for &b in self.subgroup.members() {
                let ab = parent.mul(a, b);
                if self.rho[&a].mul(&self.rho[&b])? != self.rho[&ab] {
                    return Err(SignError::Inconsistent(ab));
                }
            }
        }
        Ok(())
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rho(&self, g: usize) -> Option<&RatMatrix> {
        self.rho.get(&g)
    }

    /// Representation `ρ₁ ⊕ ρ₂` on `ℝ^{n₁+n₂}`.
    pub fn direct_sum(&self, other: &Self) -> Result<Self, SignError> {
        if self.subgroup != other.subgroup {
            return Err(SignError::Mismatch);
        }
        let rho = self.rho.iter().map(|(&g, m)| (g, m.direct_sum(&other.rho[&g]))).collect();
        Ok(Self { subgroup: self.subgroup.clone(), dim: self.dim + other.dim, rho })
    }

    /// Same representation viewed on `g H g⁻¹`: `ρ'(g h g⁻¹) = ρ(h)`.
    pub fn conjugate_transport(&self, g: usize) -> Self {
        let parent = self.subgroup.parent();
        let rho = self.rho.iter().map(|(&h, m)| (parent.conj(g, h), m.clone())).collect();
        Self { subgroup: self.subgroup.conjugate(g), dim: self.dim, rho }
    }

    fn check_operator(&self, a: &RatMatrix) -> Result<(), SignError> {
        if a.rows() != self.dim || a.cols() != self.dim {
            return Err(LinalgError::DimensionMismatch { expected: self.dim, found: a.rows() }.into());
        }
        if det_sign(a)? == 0 {
            return Err(SignError::Singular);
        }
        for &g in self.subgroup.members() {
            let r = &self.rho[&g];
            if r.mul(a)? != a.mul(r)? {
                return Err(SignError::DoesNotCommute(g));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// Sign line of a commuting automorphism, held as the ±1-valued class
/// function `cf = (-1)^ε · χ`.
#[derive(Clone, Debug, PartialEq)]
pub struct SignedSignCharacter {
    cf: ClassFunction,
}

impl SignedSignCharacter {
    pub fn cf(&self) -> &ClassFunction {
        &self.cf
    }

    pub fn into_cf(self) -> ClassFunction {
        self.cf
    }

    pub fn parity(&self) -> Parity {
        if self.cf.values()[0] == rat(-1) {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    /// The ungraded character `χ`; always `+1` at the identity.
    pub fn character(&self) -> ClassFunction {
        match self.parity() {
            Parity::Even => self.cf.clone(),
            Parity::Odd => self.cf.scale(&rat(-1)),
        }
    }

    /// Pointwise product; parities add mod 2.
    pub fn tensor(&self, other: &Self) -> Result<Self, SignError> {
        if self.cf.subgroup() != other.cf.subgroup() {
            return Err(SignError::Mismatch);
        }
        Ok(Self { cf: self.cf.pointwise_mul(&other.cf)? })
    }

    /// The trivial, evenly graded line.
    pub fn unit(subgroup: Subgroup) -> Self {
        Self { cf: ClassFunction::trivial(subgroup) }
    }
}

fn format_values(cf: &ClassFunction) -> String {
    let v: Vec<String> = cf.values().iter().map(ToString::to_string).collect();
    format!("[{}]", v.join(","))
}

impl fmt::Display for SignedSignCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "cf = {}; (parity, χ) = ({}, {})",
            format_values(&self.cf),
            self.parity(),
            format_values(&self.character())
        )
    }
}

fn restricted_sign(a: &RatMatrix, subspace: &[Vec<crate::exact_linalg::Rational>]) -> Result<i8, SignError> {
    let c = restrict_operator(a, subspace)?;
    match det_sign(&c)? {
        0 => Err(SignError::Singular),
        s => Ok(s),
    }
}

/// `cf(g) = sign det(A|Fix(ρ(g)))`, one value per conjugacy class of `H`.
pub fn signed_sign_character(data: &OrthogonalActionData, a: &RatMatrix) -> Result<SignedSignCharacter, SignError> {
    data.check_operator(a)?;
    let mut values = Vec::with_capacity(data.subgroup.num_classes());
    for rep in data.subgroup.class_reps() {
        let fix = fixed_subspace(&data.rho[&rep])?;
        values.push(rat(restricted_sign(a, &fix)? as i64));
    }
    Ok(SignedSignCharacter { cf: ClassFunction::new(data.subgroup.clone(), values)? })
}

/// One entry of the degree table: a representative of a conjugacy class of
/// subgroups `L ≤ H` and `sign det(A|Fix(L))`.
#[derive(Clone, Debug, PartialEq)]
pub struct DegreeEntry {
    pub subgroup: Subgroup,
    pub value: i8,
}

/// Sign of `A` on the joint fixed space of every subgroup `L ≤ H`, up to
/// `H`-conjugacy.
pub fn lueck_rosenberg_degree(data: &OrthogonalActionData, a: &RatMatrix) -> Result<Vec<DegreeEntry>, SignError> {
    data.check_operator(a)?;
    let subs = all_subgroups(&data.subgroup);
    let mut seen: Vec<Vec<usize>> = Vec::new();
    let mut out = Vec::new();
    for l in subs {
        if seen.iter().any(|m| m.as_slice() == l.members()) {
            continue;
        }
        for &h in data.subgroup.members() {
            let c = l.conjugate(h);
            if !seen.iter().any(|m| m.as_slice() == c.members()) {
                seen.push(c.members().to_vec());
            }
        }
        let n = data.dim;
        let gens = l.generators();
        let mut stacked = RatMatrix::zeros(gens.len() * n, n);
        for (k, g) in gens.iter().enumerate() {
            let d = data.rho[g].sub(&RatMatrix::identity(n))?;
            for i in 0..n {
                for j in 0..n {
                    stacked[(k * n + i, j)] = d[(i, j)].clone();
                }
            }
        }
        let fix = kernel(&stacked);
        let value = restricted_sign(a, &fix)?;
        out.push(DegreeEntry { subgroup: l, value });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::rat_frac;
    use crate::group::PermGroup;

    fn z2_on_line() -> OrthogonalActionData {
        let g = PermGroup::generate(2, &[vec![1, 0]]).unwrap();
        let h = Subgroup::whole(&g);
        OrthogonalActionData::from_generators(h, 1, vec![(1, RatMatrix::from_int_rows(&[vec![-1]]).unwrap())]).unwrap()
    }

    fn ints(cf: &ClassFunction) -> Vec<i64> {
        cf.to_integers().unwrap().iter().map(|v| v.try_into().unwrap()).collect()
    }

    #[test]
    fn reflection_of_the_line() {
        let data = z2_on_line();
        let s = signed_sign_character(&data, &RatMatrix::from_int_rows(&[vec![-1]]).unwrap()).unwrap();
        assert_eq!(ints(s.cf()), vec![-1, 1]);
        assert_eq!(s.parity(), Parity::Odd);
        assert_eq!(ints(&s.character()), vec![1, -1]);
        assert_eq!(s.to_string(), "cf = [-1,1]; (parity, χ) = (odd, [1,-1])");
    }

    #[test]
    fn identity_is_even_and_trivial() {
        let data = z2_on_line();
        let s = signed_sign_character(&data, &RatMatrix::identity(1)).unwrap();
        assert_eq!(s, SignedSignCharacter::unit(data.subgroup().clone()));
        assert_eq!(s.parity(), Parity::Even);
    }

    #[test]
    fn orientation_reversal_on_r3() {
        let g = PermGroup::trivial(1);
        let data = OrthogonalActionData::trivial(Subgroup::whole(&g), 3);
        let s = signed_sign_character(&data, &RatMatrix::scalar(3, rat(-1))).unwrap();
        assert_eq!(ints(s.cf()), vec![-1]);
        assert_eq!(s.parity(), Parity::Odd);
        assert_eq!(ints(&s.character()), vec![1]);
    }

    #[test]
    fn tensor_examples() {
        let data = z2_on_line();
        let s = signed_sign_character(&data, &RatMatrix::from_int_rows(&[vec![-1]]).unwrap()).unwrap();
        let unit = SignedSignCharacter::unit(data.subgroup().clone());
        assert_eq!(s.tensor(&unit).unwrap(), s);
        let sq = s.tensor(&s).unwrap();
        assert_eq!(sq, unit);
        assert_eq!(sq.parity(), Parity::Even);
    }

    #[test]
    fn errors() {
        let data = z2_on_line();
        assert_eq!(
            signed_sign_character(&data, &RatMatrix::zeros(1, 1)).unwrap_err(),
            SignError::Singular
        );
        let g = PermGroup::generate(2, &[vec![1, 0]]).unwrap();
        let h = Subgroup::whole(&g);
        let swap = RatMatrix::from_int_rows(&[vec![0, 1], vec![1, 0]]).unwrap();
        let plane = OrthogonalActionData::from_generators(h.clone(), 2, vec![(1, swap)]).unwrap();
        let shear = RatMatrix::from_int_rows(&[vec![1, 1], vec![0, 1]]).unwrap();
        assert_eq!(signed_sign_character(&plane, &shear).unwrap_err(), SignError::DoesNotCommute(1));
        let not_orth = RatMatrix::from_rows(vec![vec![rat_frac(1, 2)]]).unwrap();
        assert_eq!(
            OrthogonalActionData::from_generators(h.clone(), 1, vec![(1, not_orth)]).unwrap_err(),
            SignError::NotOrthogonal(1)
        );
        // -1 on a generator of order 2 is fine, but +1 and -1 for the same element is not
        let inconsistent = vec![
            (1, RatMatrix::from_int_rows(&[vec![-1]]).unwrap()),
            (1, RatMatrix::identity(1)),
        ];
        assert!(matches!(
            OrthogonalActionData::from_generators(h.clone(), 1, inconsistent),
            Err(SignError::Inconsistent(_))
        ));
        assert_eq!(
            OrthogonalActionData::from_generators(h, 1, vec![]).unwrap_err(),
            SignError::DoesNotGenerate
        );
    }

    #[test]
    fn degree_table() {
        let data = z2_on_line();
        let minus = RatMatrix::from_int_rows(&[vec![-1]]).unwrap();
        let deg = lueck_rosenberg_degree(&data, &minus).unwrap();
        assert_eq!(deg.len(), 2);
        assert_eq!((deg[0].subgroup.order(), deg[0].value), (1, -1));
        assert_eq!((deg[1].subgroup.order(), deg[1].value), (2, 1));
        let id = lueck_rosenberg_degree(&data, &RatMatrix::identity(1)).unwrap();
        assert!(id.iter().all(|e| e.value == 1));
    }

    #[test]
    fn degree_on_cyclic_subgroups_matches_cf() {
        // Z/4 rotating the plane, plus a trivial summand; A = rotation ⊕ (-2)
        let g = PermGroup::generate(4, &[vec![1, 2, 3, 0]]).unwrap();
        let h = Subgroup::whole(&g);
        let rot = RatMatrix::from_int_rows(&[vec![0, -1, 0], vec![1, 0, 0], vec![0, 0, 1]]).unwrap();
        let data = OrthogonalActionData::from_generators(h.clone(), 3, vec![(1, rot)]).unwrap();
        let a = RatMatrix::from_int_rows(&[vec![0, -1, 0], vec![1, 0, 0], vec![0, 0, -2]]).unwrap();
        let s = signed_sign_character(&data, &a).unwrap();
        let deg = lueck_rosenberg_degree(&data, &a).unwrap();
        for &x in h.members() {
            let cyc = Subgroup::generated(&g, &[x]).unwrap();
            let entry = deg.iter().find(|e| e.subgroup == cyc).unwrap();
            assert_eq!(rat(entry.value as i64), *s.cf().value_at(x).unwrap());
        }
    }
}
