//! Exact rational matrices and integer lattices.
//!
//! Everything here is exact: rationals are arbitrary precision, determinants
//! use fraction-free elimination, and lattice questions are answered through
//! a reduced Hermite normal form that keeps track of the unimodular
//! transformation so that membership comes with an integer certificate.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational number in lowest terms with a positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("ragged rows: row {row} has {found} entries, expected {expected}")]
    Ragged { row: usize, expected: usize, found: usize },
    #[error("subspace is not invariant: image of basis vector {column} leaves the span")]
    NotInvariant { column: usize },
    #[error("basis vectors are linearly dependent")]
    DependentBasis,
}

/// Dense matrix of rationals, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn scalar(n: usize, s: Rational) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = s.clone();
        }
        m
    }

    /// Builds a matrix from rows. A `cols` hint is needed for the 0-row case.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(0, Vec::len);
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(LinalgError::Ragged { row: i, expected: cols, found: r.len() });
            }
            data.extend(r);
        }
        Ok(Self { rows: nrows, cols, data })
    }

    pub fn from_int_rows(rows: &[Vec<i64>]) -> Result<Self, LinalgError> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect())
    }

    pub fn diagonal(entries: &[Rational]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch { expected: self.cols, found: v.len() });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn add(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(Self { rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Ok(Self { rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * s).collect() }
    }

    /// `I - self`, for square matrices.
    pub fn one_minus(&self) -> Result<Self, LinalgError> {
        self.require_square()?;
        Self::identity(self.rows).sub(self)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }

    pub fn is_orthogonal(&self) -> bool {
        self.is_square() && self.transpose().mul(self).is_ok_and(|p| p.is_identity())
    }

    /// Block-diagonal sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out[(self.rows + i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        out
    }

    fn check_same_shape(&self, other: &Self) -> Result<(), LinalgError> {
        if self.rows != other.rows {
            return Err(LinalgError::DimensionMismatch { expected: self.rows, found: other.rows });
        }
        if self.cols != other.cols {
            return Err(LinalgError::DimensionMismatch { expected: self.cols, found: other.cols });
        }
        Ok(())
    }

    fn require_square(&self) -> Result<(), LinalgError> {
        if self.is_square() {
            Ok(())
        } else {
            Err(LinalgError::NotSquare { rows: self.rows, cols: self.cols })
        }
    }
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

/// Prints as `[a b; c d]`, the same syntax scene files accept.
impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
        }
        write!(f, "]")
    }
}

/// Exact sign of the determinant, in `{-1, 0, 1}`. The empty matrix has
/// determinant `+1`.
///
/// Each row is scaled by the (positive) lcm of its denominators and the
/// resulting integer matrix goes through Bareiss elimination.
pub fn det_sign(m: &RatMatrix) -> Result<i8, LinalgError> {
    m.require_square()?;
    let n = m.rows;
    let mut a: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let row = m.row(i);
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect();
    let mut sign = 1i8;
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return Ok(0);
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        return Ok(1);
    }
    let d = &a[n - 1][n - 1];
    Ok(if d.is_negative() { -sign } else { sign })
}

/// Reduced row echelon form in place; returns the pivot columns.
fn rref(a: &mut [Vec<Rational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..cols {
        if row == a.len() {
            break;
        }
        let Some(p) = (row..a.len()).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = a[row][c].recip();
        for x in a[row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..a.len() {
            if r != row && !a[r][c].is_zero() {
                let factor = a[r][c].clone();
                let (src, dst) = if r < row {
                    let (lo, hi) = a.split_at_mut(row);
                    (&hi[0], &mut lo[r])
                } else {
                    let (lo, hi) = a.split_at_mut(r);
                    (&lo[row], &mut hi[0])
                };
                for (d, s) in dst.iter_mut().zip(src.iter()) {
                    if !s.is_zero() {
                        *d -= &factor * s;
                    }
                }
            }
        }
        pivots.push(c);
        row += 1;
    }
    pivots
}

fn to_rows(m: &RatMatrix) -> Vec<Vec<Rational>> {
    (0..m.rows).map(|i| m.row(i).to_vec()).collect()
}

pub fn rank(m: &RatMatrix) -> usize {
    let mut a = to_rows(m);
    rref(&mut a, m.cols).len()
}

/// Indices of a maximal linearly independent set of columns (first-come).
pub fn independent_columns(m: &RatMatrix) -> Vec<usize> {
    let mut a = to_rows(m);
    rref(&mut a, m.cols)
}

/// Echelonized basis of the null space of `m`.
pub fn kernel(m: &RatMatrix) -> Vec<Vec<Rational>> {
    let mut a = to_rows(m);
    let pivots = rref(&mut a, m.cols);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); m.cols];
            v[f] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -a[r][f].clone();
            }
            v
        })
        .collect()
}

/// Basis of the eigenspace of `m` for eigenvalue 1, i.e. `ker(m - I)`.
pub fn fixed_subspace(m: &RatMatrix) -> Result<Vec<Vec<Rational>>, LinalgError> {
    m.require_square()?;
    Ok(kernel(&m.sub(&RatMatrix::identity(m.rows))?))
}

/// Coordinates of `y` over the linearly independent `basis`, if `y` lies in
/// its span.
pub fn solve_in_span(
    basis: &[Vec<Rational>],
    y: &[Rational],
) -> Result<Option<Vec<Rational>>, LinalgError> {
    let n = y.len();
    let k = basis.len();
    for b in basis {
        if b.len() != n {
            return Err(LinalgError::DimensionMismatch { expected: n, found: b.len() });
        }
    }
    let mut a: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rational> = basis.iter().map(|b| b[i].clone()).collect();
            row.push(y[i].clone());
            row
        })
        .collect();
    let pivots = rref(&mut a, k + 1);
    if pivots.iter().filter(|&&p| p < k).count() < k {
        return Err(LinalgError::DependentBasis);
    }
    if pivots.contains(&k) {
        return Ok(None);
    }
    let mut x = vec![Rational::zero(); k];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = a[r][k].clone();
    }
    Ok(Some(x))
}

/// Matrix of `a` restricted to the invariant subspace spanned by `basis`:
/// `a · b_j = Σ_i c_ij · b_i`.
pub fn restrict_operator(a: &RatMatrix, basis: &[Vec<Rational>]) -> Result<RatMatrix, LinalgError> {
    a.require_square()?;
    let k = basis.len();
    let mut c = RatMatrix::zeros(k, k);
    for (j, b) in basis.iter().enumerate() {
        let y = a.mul_vec(b)?;
        let coords = solve_in_span(basis, &y)?.ok_or(LinalgError::NotInvariant { column: j })?;
        for (i, x) in coords.into_iter().enumerate() {
            c[(i, j)] = x;
        }
    }
    Ok(c)
}

/// Integer span of a finite list of generator vectors, with a cached reduced
/// (column-style) Hermite normal form.
#[derive(Clone, Debug)]
pub struct IntLattice {
    dim: usize,
    generators: Vec<Vec<BigInt>>,
    basis: Vec<Vec<BigInt>>,
    pivot_rows: Vec<usize>,
    // each basis vector as an integer combination of the generators
    transform: Vec<Vec<BigInt>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    /// Integer coefficients over the lattice generators reproducing the vector.
    Inside(Vec<BigInt>),
    /// Canonical representative of the vector modulo the lattice (nonzero).
    Outside(Vec<BigInt>),
}

impl Membership {
    pub fn is_inside(&self) -> bool {
        matches!(self, Membership::Inside(_))
    }
}

fn axpy(y: &mut [BigInt], q: &BigInt, x: &[BigInt]) {
    // y -= q * x
    for (a, b) in y.iter_mut().zip(x) {
        if !b.is_zero() {
            *a -= q * b;
        }
    }
}

impl IntLattice {
    pub fn new(dim: usize, generators: Vec<Vec<BigInt>>) -> Result<Self, LinalgError> {
        for g in &generators {
            if g.len() != dim {
                return Err(LinalgError::DimensionMismatch { expected: dim, found: g.len() });
            }
        }
        let ng = generators.len();
        let mut cols: Vec<Vec<BigInt>> = generators.clone();
        let mut trans: Vec<Vec<BigInt>> = (0..ng)
            .map(|i| {
                let mut u = vec![BigInt::zero(); ng];
                u[i] = BigInt::one();
                u
            })
            .collect();
        let mut active: Vec<usize> =
            (0..ng).filter(|&i| cols[i].iter().any(|x| !x.is_zero())).collect();
        let mut basis_idx = Vec::new();
        let mut pivot_rows = Vec::new();
        for r in 0..dim {
            loop {
                let nz: Vec<usize> = active.iter().copied().filter(|&c| !cols[c][r].is_zero()).collect();
                if nz.is_empty() {
                    break;
                }
                let p = *nz.iter().min_by(|&&x, &&y| cols[x][r].abs().cmp(&cols[y][r].abs()).then(x.cmp(&y))).unwrap();
                if nz.len() == 1 {
                    if cols[p][r].is_negative() {
                        cols[p].iter_mut().for_each(|x| *x = -&*x);
                        trans[p].iter_mut().for_each(|x| *x = -&*x);
                    }
                    basis_idx.push(p);
                    pivot_rows.push(r);
                    active.retain(|&c| c != p);
                    break;
                }
                let (pc, pt) = (cols[p].clone(), trans[p].clone());
                for &c in nz.iter().filter(|&&c| c != p) {
                    let q = cols[c][r].div_floor(&pc[r]);
                    axpy(&mut cols[c], &q, &pc);
                    axpy(&mut trans[c], &q, &pt);
                }
            }
        }
        let mut basis: Vec<Vec<BigInt>> = basis_idx.iter().map(|&i| cols[i].clone()).collect();
        let mut transform: Vec<Vec<BigInt>> = basis_idx.iter().map(|&i| trans[i].clone()).collect();
        for j in 0..basis.len() {
            let r = pivot_rows[j];
            let (bj, tj) = (basis[j].clone(), transform[j].clone());
            for i in 0..j {
                let q = basis[i][r].div_floor(&bj[r]);
                if !q.is_zero() {
                    axpy(&mut basis[i], &q, &bj);
                    axpy(&mut transform[i], &q, &tj);
                }
            }
        }
        Ok(Self { dim, generators, basis, pivot_rows, transform })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Vec<BigInt>] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// The reduced Hermite basis (one vector per pivot row).
    pub fn hermite_basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    fn reduce_with_coefficients(&self, v: &[BigInt]) -> Result<(Vec<BigInt>, Vec<BigInt>), LinalgError> {
        if v.len() != self.dim {
            return Err(LinalgError::DimensionMismatch { expected: self.dim, found: v.len() });
        }
        let mut res = v.to_vec();
        let mut coeffs = Vec::with_capacity(self.basis.len());
        for (b, &r) in self.basis.iter().zip(&self.pivot_rows) {
            let q = res[r].div_floor(&b[r]);
            if !q.is_zero() {
                axpy(&mut res, &q, b);
            }
            coeffs.push(q);
        }
        Ok((res, coeffs))
    }

    /// Canonical representative of `v` modulo the lattice.
    pub fn reduce(&self, v: &[BigInt]) -> Result<Vec<BigInt>, LinalgError> {
        Ok(self.reduce_with_coefficients(v)?.0)
    }

    pub fn membership(&self, v: &[BigInt]) -> Result<Membership, LinalgError> {
        let (res, coeffs) = self.reduce_with_coefficients(v)?;
        if res.iter().any(|x| !x.is_zero()) {
            return Ok(Membership::Outside(res));
        }
        let mut cert = vec![BigInt::zero(); self.generators.len()];
        for (q, t) in coeffs.iter().zip(&self.transform) {
            if !q.is_zero() {
                let neg = -q;
                axpy(&mut cert, &neg, t);
            }
        }
        Ok(Membership::Inside(cert))
    }

    /// `Σ c_i · g_i`.
    pub fn combine(&self, coefficients: &[BigInt]) -> Result<Vec<BigInt>, LinalgError> {
        if coefficients.len() != self.generators.len() {
            return Err(LinalgError::DimensionMismatch {
                expected: self.generators.len(),
                found: coefficients.len(),
            });
        }
        let mut out = vec![BigInt::zero(); self.dim];
        for (c, g) in coefficients.iter().zip(&self.generators) {
            if !c.is_zero() {
                let neg = -c;
                axpy(&mut out, &neg, g);
            }
        }
        Ok(out)
    }
}

pub fn lattice_membership(l: &IntLattice, v: &[BigInt]) -> Result<Membership, LinalgError> {
    l.membership(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_int_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    // cofactor expansion, used as an independent check on Bareiss
    fn cofactor_det(a: &RatMatrix) -> Rational {
        let n = a.rows();
        if n == 0 {
            return Rational::one();
        }
        let mut total = Rational::zero();
        for j in 0..n {
            let minor_rows: Vec<Vec<Rational>> = (1..n)
                .map(|i| (0..n).filter(|&c| c != j).map(|c| a[(i, c)].clone()).collect())
                .collect();
            let minor = if n == 1 { RatMatrix::zeros(0, 0) } else { RatMatrix::from_rows(minor_rows).unwrap() };
            let term = &a[(0, j)] * cofactor_det(&minor);
            if j % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    }

    #[test]
    fn det_sign_examples() {
        assert_eq!(det_sign(&m(&[&[-1]])).unwrap(), -1);
        assert_eq!(det_sign(&RatMatrix::zeros(0, 0)).unwrap(), 1);
        assert_eq!(det_sign(&m(&[&[0, -1], &[1, 0]])).unwrap(), 1);
        assert_eq!(det_sign(&m(&[&[1, 2], &[2, 4]])).unwrap(), 0);
        assert!(matches!(det_sign(&RatMatrix::zeros(2, 3)), Err(LinalgError::NotSquare { .. })));
    }

    #[test]
    fn det_sign_with_fractions() {
        let a = RatMatrix::from_rows(vec![
            vec![rat(1), rat(0)],
            vec![rat_frac(1, 2), rat_frac(1, 2)],
        ])
        .unwrap();
        assert_eq!(det_sign(&a).unwrap(), 1);
        let b = RatMatrix::from_rows(vec![
            vec![rat(0), rat(1)],
            vec![rat_frac(1, 2), rat_frac(1, 2)],
        ])
        .unwrap();
        assert_eq!(det_sign(&b).unwrap(), -1);
    }

    #[test]
    fn fixed_subspace_examples() {
        let id = RatMatrix::identity(2);
        let basis = fixed_subspace(&id).unwrap();
        assert_eq!(basis, vec![vec![rat(1), rat(0)], vec![rat(0), rat(1)]]);
        assert!(fixed_subspace(&m(&[&[-1]])).unwrap().is_empty());
        assert!(fixed_subspace(&m(&[&[0, -1], &[1, 0]])).unwrap().is_empty());
        let swap = m(&[&[0, 1], &[1, 0]]);
        let b = fixed_subspace(&swap).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(swap.mul_vec(&b[0]).unwrap(), b[0]);
    }

    #[test]
    fn restrict_operator_examples() {
        let e1 = vec![rat(1), rat(0)];
        let e2 = vec![rat(0), rat(1)];
        let two = RatMatrix::scalar(2, rat(2));
        assert_eq!(restrict_operator(&two, std::slice::from_ref(&e1)).unwrap(), m(&[&[2]]));
        let d = m(&[&[3, 0], &[0, 5]]);
        assert_eq!(restrict_operator(&d, std::slice::from_ref(&e2)).unwrap(), m(&[&[5]]));
        let swap = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(restrict_operator(&swap, std::slice::from_ref(&e1)), Err(LinalgError::NotInvariant { column: 0 }));
        assert!(restrict_operator(&d, &[vec![rat(1)]]).is_err());
        assert_eq!(
            restrict_operator(&d, &[e1.clone(), e1]).unwrap_err(),
            LinalgError::DependentBasis
        );
    }

    #[test]
    fn lattice_examples() {
        let l = IntLattice::new(2, vec![ints(&[2, 0]), ints(&[0, 2])]).unwrap();
        assert!(matches!(l.membership(&ints(&[1, 1])).unwrap(), Membership::Outside(_)));
        let w = ints(&[3, -1, 4]);
        let l = IntLattice::new(3, vec![w.clone()]).unwrap();
        assert_eq!(l.membership(&w).unwrap(), Membership::Inside(ints(&[1])));
        let l = IntLattice::new(2, vec![]).unwrap();
        assert_eq!(l.membership(&ints(&[0, 0])).unwrap(), Membership::Inside(vec![]));
        assert!(l.membership(&ints(&[0])).is_err());
    }

    #[test]
    fn lattice_hermite_reduction_is_canonical() {
        let a = IntLattice::new(2, vec![ints(&[2, 1]), ints(&[0, 3])]).unwrap();
        let b = IntLattice::new(2, vec![ints(&[2, 4]), ints(&[2, 1]), ints(&[4, 5])]).unwrap();
        assert_eq!(a.hermite_basis(), b.hermite_basis());
        for v in [[5, 7], [-3, 2], [0, 1]] {
            assert_eq!(a.reduce(&ints(&v)).unwrap(), b.reduce(&ints(&v)).unwrap());
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_matrix(n: usize) -> impl Strategy<Value = RatMatrix> {
            prop::collection::vec((-4i64..=4, 1i64..=3), n * n).prop_map(move |v| {
                let rows = (0..n)
                    .map(|i| (0..n).map(|j| rat_frac(v[i * n + j].0, v[i * n + j].1)).collect())
                    .collect();
                RatMatrix::from_rows(rows).unwrap()
            })
        }

        fn sign_of(r: &Rational) -> i8 {
            if r.is_zero() {
                0
            } else if r.is_negative() {
                -1
            } else {
                1
            }
        }

        proptest! {
            #[test]
            fn det_sign_matches_cofactor(a in (1usize..=4).prop_flat_map(small_matrix)) {
                prop_assert_eq!(det_sign(&a).unwrap(), sign_of(&cofactor_det(&a)));
            }

            #[test]
            fn det_sign_multiplicative((a, b) in (1usize..=4).prop_flat_map(|n| (small_matrix(n), small_matrix(n)))) {
                let ab = a.mul(&b).unwrap();
                prop_assert_eq!(det_sign(&ab).unwrap(), det_sign(&a).unwrap() * det_sign(&b).unwrap());
            }

            #[test]
            fn fixed_vectors_are_fixed(a in (1usize..=4).prop_flat_map(small_matrix)) {
                for v in fixed_subspace(&a).unwrap() {
                    prop_assert_eq!(a.mul_vec(&v).unwrap(), v);
                }
            }

            #[test]
            fn restriction_is_basis_independent(
                d in prop::collection::vec(-3i64..=3, 3),
                mix in prop::collection::vec(-2i64..=2, 4),
            ) {
                // A = diag(d0, d1, d2) preserves span(e0, e1); compare two bases of it
                let a = RatMatrix::diagonal(&d.iter().map(|&x| rat(x)).collect::<Vec<_>>());
                let b1 = vec![vec![rat(1), rat(0), rat(0)], vec![rat(0), rat(1), rat(0)]];
                let p = RatMatrix::from_int_rows(&[vec![mix[0], mix[1]], vec![mix[2], mix[3]]]).unwrap();
                prop_assume!(det_sign(&p).unwrap() != 0);
                let b2: Vec<Vec<Rational>> = (0..2).map(|j| {
                    vec![p[(0, j)].clone(), p[(1, j)].clone(), rat(0)]
                }).collect();
                let c1 = restrict_operator(&a, &b1).unwrap();
                let c2 = restrict_operator(&a, &b2).unwrap();
                prop_assert_eq!(det_sign(&c1).unwrap(), det_sign(&c2).unwrap());
            }

            #[test]
            fn membership_certificate_reproduces(
                gens in prop::collection::vec(prop::collection::vec(-5i64..=5, 3), 0..5),
                coeffs in prop::collection::vec(-3i64..=3, 5),
                noise in prop::collection::vec(-2i64..=2, 3),
            ) {
                let g: Vec<Vec<BigInt>> = gens.iter().map(|v| ints(v)).collect();
                let l = IntLattice::new(3, g.clone()).unwrap();
                let mut v = vec![BigInt::zero(); 3];
                for (c, gv) in coeffs.iter().zip(&g) {
                    for k in 0..3 { v[k] += BigInt::from(*c) * &gv[k]; }
                }
                match l.membership(&v).unwrap() {
                    Membership::Inside(cert) => prop_assert_eq!(l.combine(&cert).unwrap(), v.clone()),
                    Membership::Outside(_) => prop_assert!(false, "combination reported outside"),
                }
                let w: Vec<BigInt> = v.iter().zip(&noise).map(|(a, b)| a + BigInt::from(*b)).collect();
                match l.membership(&w).unwrap() {
                    Membership::Inside(cert) => prop_assert_eq!(l.combine(&cert).unwrap(), w),
                    Membership::Outside(res) => {
                        // residual differs from w by a lattice vector
                        let diff: Vec<BigInt> = w.iter().zip(&res).map(|(a, b)| a - b).collect();
                        prop_assert!(l.membership(&diff).unwrap().is_inside());
                    }
                }
            }
        }
    }
}
