//! Exact dense matrices over the rationals or over a polynomial ring.
//!
//! Rational matrices get plain Gauss-Jordan (RREF, kernel, inverse);
//! polynomial matrices get fraction-free Bareiss elimination so the only
//! division ever performed is an exact one.

use alloc::vec::Vec;
use alloc::{format, vec};
use core::fmt;

use num_traits::{One, Zero};

use crate::poly::Polynomial;
use crate::Rational;

/// Entry domain of an exact matrix.
pub trait Entry: Clone + PartialEq {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Exact quotient; panics if the division is not exact. Bareiss
    /// elimination only ever divides by previously produced pivots, for
    /// which exactness is guaranteed.
    fn exact_div(&self, other: &Self) -> Self;
}

impl Entry for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, other: &Self) -> Self {
        self / other
    }
}

impl Entry for Polynomial {
    fn zero_like(&self) -> Self {
        Polynomial::zero(self.nvars())
    }
    fn one_like(&self) -> Self {
        Polynomial::one(self.nvars())
    }
    fn is_zero(&self) -> bool {
        Polynomial::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        Polynomial::add(self, other).expect("matrix entries share a ring")
    }
    fn sub(&self, other: &Self) -> Self {
        Polynomial::sub(self, other).expect("matrix entries share a ring")
    }
    fn mul(&self, other: &Self) -> Self {
        Polynomial::mul(self, other).expect("matrix entries share a ring")
    }
    fn neg(&self) -> Self {
        Polynomial::neg(self)
    }
    fn exact_div(&self, other: &Self) -> Self {
        Polynomial::exact_div(self, other).expect("Bareiss division is exact")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatError {
    DimensionMismatch,
    Singular,
    NotSquare,
}

impl fmt::Display for MatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatError::DimensionMismatch => write!(f, "matrix dimension mismatch"),
            MatError::Singular => write!(f, "matrix is singular"),
            MatError::NotSquare => write!(f, "matrix is not square"),
        }
    }
}

impl core::error::Error for MatError {}

/// Dense row-major matrix over an exact domain.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mat<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

impl<T: Entry> Mat<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Mat {
            rows,
            cols,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Entry::is_zero)
    }

    pub fn transpose(&self) -> Mat<T> {
        Mat::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mat_add(&self, other: &Mat<T>) -> Result<Mat<T>, MatError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(MatError::DimensionMismatch);
        }
        Ok(Mat::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j).add(other.get(i, j))
        }))
    }

    pub fn mat_sub(&self, other: &Mat<T>) -> Result<Mat<T>, MatError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(MatError::DimensionMismatch);
        }
        Ok(Mat::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j).sub(other.get(i, j))
        }))
    }

    pub fn mat_mul(&self, other: &Mat<T>) -> Result<Mat<T>, MatError> {
        if self.cols != other.rows {
            return Err(MatError::DimensionMismatch);
        }
        let zero = self
            .entries
            .first()
            .or_else(|| other.entries.first())
            .map(Entry::zero_like);
        Ok(Mat::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = zero.clone().expect("nonempty product");
            for k in 0..self.cols {
                acc = acc.add(&self.get(i, k).mul(other.get(k, j)));
            }
            acc
        }))
    }

    pub fn scale(&self, c: &T) -> Mat<T> {
        Mat::from_fn(self.rows, self.cols, |i, j| self.get(i, j).mul(c))
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[T]) -> Result<Vec<T>, MatError> {
        if v.len() != self.cols {
            return Err(MatError::DimensionMismatch);
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = v[0].zero_like();
                for k in 0..self.cols {
                    acc = acc.add(&self.get(i, k).mul(&v[k]));
                }
                acc
            })
            .collect())
    }

    /// Row-major vectorization.
    pub fn vectorize(&self) -> Vec<T> {
        self.entries.clone()
    }

    pub fn from_vec(rows: usize, cols: usize, entries: Vec<T>) -> Self {
        assert_eq!(entries.len(), rows * cols);
        Mat {
            rows,
            cols,
            entries,
        }
    }
}

impl Mat<Rational> {
    pub fn identity(n: usize) -> Self {
        Mat::from_fn(n, n, |i, j| {
            if i == j {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat::from_fn(rows, cols, |_, _| Rational::zero())
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref_with_pivots(&self) -> (Mat<Rational>, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            // first nonzero entry in this column at or below row r
            let Some(p) = (r..m.rows).find(|&i| !Zero::is_zero(m.get(i, c))) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    let a = m.get(r, j).clone();
                    let b = m.get(p, j).clone();
                    m.set(r, j, b);
                    m.set(p, j, a);
                }
            }
            let inv = m.get(r, c).recip();
            for j in 0..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i != r && !Zero::is_zero(m.get(i, c)) {
                    let factor = m.get(i, c).clone();
                    for j in 0..m.cols {
                        let v = m.get(i, j) - &(m.get(r, j) * &factor);
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rref(&self) -> Mat<Rational> {
        self.rref_with_pivots().0
    }

    pub fn rank(&self) -> usize {
        self.rref_with_pivots().1.len()
    }

    /// Basis of the right null space, from the RREF free-variable
    /// convention: one vector per free column, with -1 in the free slot
    /// and the pivot entries read off the RREF, then normalized so the
    /// first nonzero coordinate is 1.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref_with_pivots();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivots.contains(&free) {
                continue;
            }
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = -Rational::one();
            for (pi, &pc) in pivots.iter().enumerate() {
                v[pc] = r.get(pi, free).clone();
            }
            normalize_rational_vec(&mut v);
            basis.push(v);
        }
        basis
    }

    pub fn invert(&self) -> Result<Mat<Rational>, MatError> {
        if self.rows != self.cols {
            return Err(MatError::NotSquare);
        }
        let n = self.rows;
        let aug = Mat::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                Rational::one()
            } else {
                Rational::zero()
            }
        });
        let (r, pivots) = aug.rref_with_pivots();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
            return Err(MatError::Singular);
        }
        Ok(Mat::from_fn(n, n, |i, j| r.get(i, j + n).clone()))
    }

    pub fn det(&self) -> Result<Rational, MatError> {
        if self.rows != self.cols {
            return Err(MatError::NotSquare);
        }
        let mut m = self.clone();
        let n = self.rows;
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !Zero::is_zero(m.get(i, c))) else {
                return Ok(Rational::zero());
            };
            if p != c {
                det = -det;
                for j in 0..n {
                    let a = m.get(c, j).clone();
                    let b = m.get(p, j).clone();
                    m.set(c, j, b);
                    m.set(p, j, a);
                }
            }
            let piv = m.get(c, c).clone();
            det *= &piv;
            for i in c + 1..n {
                if !Zero::is_zero(m.get(i, c)) {
                    let factor = m.get(i, c) / &piv;
                    for j in c..n {
                        let v = m.get(i, j) - &(m.get(c, j) * &factor);
                        m.set(i, j, v);
                    }
                }
            }
        }
        Ok(det)
    }
}

/// Scale so the first nonzero coordinate is 1.
pub fn normalize_rational_vec(v: &mut [Rational]) {
    if let Some(first) = v.iter().find(|x| !Zero::is_zero(*x)).cloned() {
        let inv = first.recip();
        for x in v.iter_mut() {
            *x *= &inv;
        }
    }
}

impl Mat<Polynomial> {
    pub fn poly_identity(n: usize, nvars: usize) -> Self {
        Mat::from_fn(n, n, |i, j| {
            if i == j {
                Polynomial::one(nvars)
            } else {
                Polynomial::zero(nvars)
            }
        })
    }

    /// Fraction-free row echelon form (Bareiss): returns the echelon
    /// matrix and its pivot columns. Pivot rows keep polynomial entries;
    /// the only divisions are by the previous pivot and are exact.
    pub fn bareiss_echelon(&self) -> (Mat<Polynomial>, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0usize;
        let mut prev_pivot: Option<Polynomial> = None;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    let a = m.get(r, j).clone();
                    let b = m.get(p, j).clone();
                    m.set(r, j, b);
                    m.set(p, j, a);
                }
            }
            let piv = m.get(r, c).clone();
            for i in r + 1..m.rows {
                let lead = m.get(i, c).clone();
                for j in 0..m.cols {
                    let mut v = piv
                        .mul(m.get(i, j))
                        .unwrap()
                        .sub(&lead.mul(m.get(r, j)).unwrap())
                        .unwrap();
                    if let Some(prev) = &prev_pivot {
                        v = v.exact_div(prev).expect("Bareiss division is exact");
                    }
                    m.set(i, j, v);
                }
            }
            prev_pivot = Some(piv);
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.bareiss_echelon().1.len()
    }

    /// Basis of the right kernel over the fraction field, scaled to
    /// polynomial entries with rational content stripped and positive
    /// leading coefficient. One vector per free column.
    pub fn bareiss_kernel(&self) -> Vec<Vec<Polynomial>> {
        let nvars = self
            .entries
            .first()
            .map(Polynomial::nvars)
            .unwrap_or(0);
        let (e, pivots) = self.bareiss_echelon();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivots.contains(&free) {
                continue;
            }
            // Fraction-free back substitution: before writing the pivot
            // coordinate of row i we multiply the whole vector by the
            // pivot entry, so every coordinate stays polynomial.
            let mut v = vec![Polynomial::zero(nvars); self.cols];
            v[free] = Polynomial::one(nvars);
            for (pi, &pc) in pivots.iter().enumerate().rev() {
                let mut s = Polynomial::zero(nvars);
                for j in pc + 1..self.cols {
                    if !e.get(pi, j).is_zero() && !v[j].is_zero() {
                        s = s.add(&e.get(pi, j).mul(&v[j]).unwrap()).unwrap();
                    }
                }
                let piv = e.get(pi, pc).clone();
                for x in v.iter_mut() {
                    *x = x.mul(&piv).unwrap();
                }
                v[pc] = s.neg();
            }
            normalize_poly_vec(&mut v);
            basis.push(v);
        }
        basis
    }
}

/// Strip the common rational content and make the leading coefficient of
/// the first nonzero entry positive.
pub fn normalize_poly_vec(v: &mut [Polynomial]) {
    use num_integer::Integer;
    use num_traits::Signed;
    let mut num = num_bigint::BigInt::zero();
    let mut den = num_bigint::BigInt::one();
    for p in v.iter() {
        for (_, c) in p.terms() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
    }
    if num.is_zero() {
        return;
    }
    let mut content = Rational::new(num, den);
    let first_lc = v
        .iter()
        .find(|p| !Polynomial::is_zero(p))
        .and_then(|p| p.leading_term().map(|(_, c)| c.clone()));
    if let Some(lc) = first_lc {
        if lc.is_negative() {
            content = -content;
        }
    }
    let inv = content.recip();
    for p in v.iter_mut() {
        *p = p.scale(&inv);
    }
}

impl<T: Entry + fmt::Display> fmt::Display for Mat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<_> = (0..self.cols)
                .map(|j| format!("{}", self.get(i, j)))
                .collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn m(rows: Vec<Vec<i64>>) -> Mat<Rational> {
        Mat::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(rat).collect())
                .collect(),
        )
    }

    #[test]
    fn rref_basics() {
        assert_eq!(m(vec![vec![2, 0], vec![0, 4]]).rref(), Mat::identity(2));
        let z = Mat::zero(2, 2);
        assert_eq!(z.rref(), z);
        assert_eq!(
            m(vec![vec![1, 2], vec![2, 4]]).rref(),
            m(vec![vec![1, 2], vec![0, 0]])
        );
    }

    #[test]
    fn rank_basics() {
        assert_eq!(Mat::identity(3).rank(), 3);
        assert_eq!(Mat::zero(2, 3).rank(), 0);
        assert_eq!(m(vec![vec![1, 2], vec![2, 4]]).rank(), 1);
    }

    #[test]
    fn kernel_basics() {
        let k = m(vec![vec![1, 1]]).kernel_basis();
        assert_eq!(k, vec![vec![rat(1), rat(-1)]]);
        assert!(Mat::identity(3).kernel_basis().is_empty());
        let k = Mat::zero(2, 2).kernel_basis();
        assert_eq!(k.len(), 2);
        assert_eq!(k[0], vec![rat(1), rat(0)]);
        assert_eq!(k[1], vec![rat(0), rat(1)]);
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let a = m(vec![vec![1, 2, 3], vec![4, 5, 6]]);
        let ker = a.kernel_basis();
        assert_eq!(a.rank() + ker.len(), a.cols());
        for v in &ker {
            assert!(a.apply(v).unwrap().iter().all(|x| Zero::is_zero(x)));
        }
    }

    #[test]
    fn invert_basics() {
        assert_eq!(Mat::identity(3).invert().unwrap(), Mat::identity(3));
        let a = m(vec![vec![1, 1], vec![0, 1]]);
        assert_eq!(a.invert().unwrap(), m(vec![vec![1, -1], vec![0, 1]]));
        assert!(matches!(
            m(vec![vec![1, 2], vec![2, 4]]).invert(),
            Err(MatError::Singular)
        ));
    }

    #[test]
    fn transpose_and_mul() {
        let a = m(vec![vec![1, 2], vec![3, 4], vec![5, 6]]);
        assert_eq!(a.transpose().transpose(), a);
        let b = m(vec![vec![1, 0], vec![0, 2]]);
        let ab = a.mat_mul(&b).unwrap();
        assert_eq!(
            ab.transpose(),
            b.transpose().mat_mul(&a.transpose()).unwrap()
        );
        assert_eq!(Mat::identity(2).mat_mul(&b).unwrap(), b);
    }

    #[test]
    fn bareiss_kernel_single_row() {
        use crate::poly::Polynomial;
        let x1 = Polynomial::var(2, 0);
        let x2 = Polynomial::var(2, 1);
        let a = Mat::from_rows(vec![vec![x1.clone(), x2.clone()]]);
        let k = a.bareiss_kernel();
        assert_eq!(k.len(), 1);
        // (x2, -x1) up to sign and content
        assert_eq!(k[0][0], x2);
        assert_eq!(k[0][1], x1.neg());
    }

    #[test]
    fn bareiss_kernel_of_identity_is_empty() {
        let id = Mat::poly_identity(3, 2);
        assert!(id.bareiss_kernel().is_empty());
        assert_eq!(id.rank(), 3);
    }

    #[test]
    fn bareiss_matches_rational_specialization() {
        use crate::poly::Polynomial;
        // [[x1, x2], [x1^2, x1*x2]] has rank 1, kernel dim 1
        let x1 = Polynomial::var(2, 0);
        let x2 = Polynomial::var(2, 1);
        let a = Mat::from_rows(vec![
            vec![x1.clone(), x2.clone()],
            vec![x1.pow(2), x1.mul(&x2).unwrap()],
        ]);
        let ker = a.bareiss_kernel();
        assert_eq!(ker.len(), 1);
        for vals in [[rat(2), rat(3)], [rat(-1), rat(5)], [rat(7), rat(11)]] {
            let spec = Mat::from_fn(2, 2, |i, j| a.get(i, j).evaluate(&vals).unwrap());
            assert_eq!(spec.kernel_basis().len(), 1);
            // the specialized kernel vector annihilates the matrix
            let kv: Vec<Rational> = ker[0].iter().map(|p| p.evaluate(&vals).unwrap()).collect();
            assert!(spec.apply(&kv).unwrap().iter().all(|x| Zero::is_zero(x)));
        }
    }
}
