//! Structure analysis of finite-dimensional commutative matrix algebras:
//! minimal polynomials, the radical, and the unique complete set of
//! primitive orthogonal idempotents.

use alloc::vec::Vec;
use alloc::vec;
use core::fmt;

use num_traits::{One, Zero};
use rand_core::{RngCore, SeedableRng};

use crate::factor::factor_rational_poly;
use crate::matrix::Mat;
use crate::unipoly::UniPoly;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    Empty,
    NotSquare,
    SizeMismatch,
    /// The span is not closed under multiplication.
    NotClosed,
    /// Two elements of the span fail to commute.
    NotCommutative,
    /// The span contains no multiplicative identity.
    MissingIdentity,
    /// No primitive element was found within the retry budget.
    RetryExhausted,
}

impl fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraError::Empty => write!(f, "empty matrix span"),
            AlgebraError::NotSquare => write!(f, "matrices must be square"),
            AlgebraError::SizeMismatch => write!(f, "matrices have mismatched sizes"),
            AlgebraError::NotClosed => write!(f, "span is not closed under multiplication"),
            AlgebraError::NotCommutative => write!(f, "span is not commutative"),
            AlgebraError::MissingIdentity => write!(f, "span contains no identity element"),
            AlgebraError::RetryExhausted => {
                write!(f, "primitive element search exhausted its retry budget")
            }
        }
    }
}

impl core::error::Error for AlgebraError {}

/// Coordinates over the algebra basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgebraElement {
    pub coords: Vec<Rational>,
}

/// Finite-dimensional commutative unital algebra of n x n matrices,
/// presented by a basis (identity first) and structure constants.
#[derive(Clone, Debug)]
pub struct CommAlgebra {
    n: usize,
    basis: Vec<Mat<Rational>>,
    /// `mult[i][j]` = coordinates of `basis[i] * basis[j]`.
    mult: Vec<Vec<Vec<Rational>>>,
}

/// The unique complete set of primitive orthogonal idempotents.
#[derive(Clone, Debug)]
pub struct IdempotentSet {
    pub elements: Vec<AlgebraElement>,
    pub matrices: Vec<Mat<Rational>>,
}

impl IdempotentSet {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Solve `sum_i c_i * basis_vecs[i] = target`; the basis vectors must be
/// linearly independent.
fn solve_in_span(basis_vecs: &[Vec<Rational>], target: &[Rational]) -> Option<Vec<Rational>> {
    let m = basis_vecs.len();
    let dim = target.len();
    // columns = basis vectors, augmented with the target
    let aug = Mat::from_fn(dim, m + 1, |i, j| {
        if j < m {
            basis_vecs[j][i].clone()
        } else {
            target[i].clone()
        }
    });
    let (r, pivots) = aug.rref_with_pivots();
    if pivots.contains(&m) {
        return None; // inconsistent
    }
    let mut coords = vec![Rational::zero(); m];
    for (row, &col) in pivots.iter().enumerate() {
        coords[col] = r.get(row, m).clone();
    }
    Some(coords)
}

impl CommAlgebra {
    /// Build the algebra generated (as a vector space) by the given
    /// matrices. The span must contain an identity element, be closed
    /// under multiplication and be commutative; violations are reported
    /// distinctly since they indicate an upstream center bug.
    pub fn from_matrix_span(mats: &[Mat<Rational>]) -> Result<CommAlgebra, AlgebraError> {
        let first = mats.first().ok_or(AlgebraError::Empty)?;
        if first.rows() != first.cols() {
            return Err(AlgebraError::NotSquare);
        }
        let n = first.rows();
        if mats.iter().any(|m| m.rows() != n || m.cols() != n) {
            return Err(AlgebraError::SizeMismatch);
        }
        // independent spanning set, identity first if present
        let vecs: Vec<Vec<Rational>> = mats.iter().map(Mat::vectorize).collect();
        let span = Mat::from_rows(vecs);
        let (r, pivots) = span.rref_with_pivots();
        let span_rows: Vec<Vec<Rational>> = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        // identity of the span: u with u * b = b for all spanning b.
        // For a unital matrix algebra containing I this is I itself, but
        // corner algebras have a smaller unit; solve for it.
        let unit = find_unit(n, &span_rows).ok_or(AlgebraError::MissingIdentity)?;
        // basis: unit first, then independent RREF rows
        let mut basis_vecs: Vec<Vec<Rational>> = vec![unit.vectorize()];
        for row in &span_rows {
            let mut stacked = basis_vecs.clone();
            stacked.push(row.clone());
            if Mat::from_rows(stacked).rank() == basis_vecs.len() + 1 {
                basis_vecs.push(row.clone());
            }
        }
        debug_assert_eq!(basis_vecs.len(), span_rows.len());
        let basis: Vec<Mat<Rational>> = basis_vecs
            .iter()
            .map(|v| Mat::from_vec(n, n, v.clone()))
            .collect();
        // commutativity and closure, with structure constants
        let m = basis.len();
        let mut mult = vec![vec![Vec::new(); m]; m];
        for i in 0..m {
            for j in i..m {
                let prod = basis[i].mat_mul(&basis[j]).expect("square");
                let back = basis[j].mat_mul(&basis[i]).expect("square");
                if prod != back {
                    return Err(AlgebraError::NotCommutative);
                }
                let coords = solve_in_span(&basis_vecs, &prod.vectorize())
                    .ok_or(AlgebraError::NotClosed)?;
                mult[i][j] = coords.clone();
                mult[j][i] = coords;
            }
        }
        Ok(CommAlgebra { n, basis, mult })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn matrix_size(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> &[Mat<Rational>] {
        &self.basis
    }

    pub fn unit(&self) -> AlgebraElement {
        let mut coords = vec![Rational::zero(); self.dim()];
        coords[0] = Rational::one();
        AlgebraElement { coords }
    }

    pub fn zero_elem(&self) -> AlgebraElement {
        AlgebraElement {
            coords: vec![Rational::zero(); self.dim()],
        }
    }

    pub fn to_matrix(&self, x: &AlgebraElement) -> Mat<Rational> {
        let mut acc = Mat::zero(self.n, self.n);
        for (i, c) in x.coords.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.mat_add(&self.basis[i].scale(c)).expect("square");
            }
        }
        acc
    }

    pub fn from_matrix(&self, m: &Mat<Rational>) -> Option<AlgebraElement> {
        let basis_vecs: Vec<Vec<Rational>> = self.basis.iter().map(Mat::vectorize).collect();
        solve_in_span(&basis_vecs, &m.vectorize()).map(|coords| AlgebraElement { coords })
    }

    pub fn add(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        AlgebraElement {
            coords: x
                .coords
                .iter()
                .zip(y.coords.iter())
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        AlgebraElement {
            coords: x
                .coords
                .iter()
                .zip(y.coords.iter())
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, x: &AlgebraElement, c: &Rational) -> AlgebraElement {
        AlgebraElement {
            coords: x.coords.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        let m = self.dim();
        let mut coords = vec![Rational::zero(); m];
        for (i, a) in x.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.coords.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in self.mult[i][j].iter().enumerate() {
                    coords[k] += &ab * c;
                }
            }
        }
        AlgebraElement { coords }
    }

    /// Left-multiplication operator of `x` on the algebra, in basis
    /// coordinates.
    pub fn left_mult_operator(&self, x: &AlgebraElement) -> Mat<Rational> {
        let m = self.dim();
        let mut cols = Vec::with_capacity(m);
        for j in 0..m {
            let mut e = self.zero_elem();
            e.coords[j] = Rational::one();
            cols.push(self.mul(x, &e).coords);
        }
        Mat::from_fn(m, m, |i, j| cols[j][i].clone())
    }

    /// Evaluate a univariate polynomial at an algebra element.
    pub fn eval_poly(&self, p: &UniPoly, x: &AlgebraElement) -> AlgebraElement {
        let mut acc = self.zero_elem();
        for i in (0..p.coeffs().len()).rev() {
            acc = self.mul(&acc, x);
            let c = p.coeff(i);
            if !c.is_zero() {
                acc = self.add(&acc, &self.scale(&self.unit(), &c));
            }
        }
        acc
    }

    /// Monic least-degree polynomial with `m(x) = 0`, found by the first
    /// linear dependence among 1, x, x^2, ...
    pub fn min_poly(&self, x: &AlgebraElement) -> UniPoly {
        let m = self.dim();
        let mut powers: Vec<Vec<Rational>> = vec![self.unit().coords];
        let mut current = self.unit();
        for _ in 1..=m {
            current = self.mul(&current, x);
            powers.push(current.coords.clone());
            // left kernel of the power matrix = kernel of its transpose
            let pmat = Mat::from_rows(powers.clone());
            let kernel = pmat.transpose().kernel_basis();
            if let Some(v) = kernel.first() {
                // the previous powers are independent, so the last
                // coordinate is nonzero; normalize monic
                let k = v.len() - 1;
                debug_assert!(!v[k].is_zero());
                let inv = v[k].clone().recip();
                return UniPoly::from_coeffs(v.iter().map(|c| c * &inv).collect());
            }
        }
        unreachable!("an element of an m-dimensional algebra satisfies a degree <= m polynomial")
    }

    /// Basis of the Jacobson radical, as the kernel of the trace form
    /// `G_{ij} = trace(L_{b_i} L_{b_j})` (valid in characteristic 0).
    pub fn radical(&self) -> Vec<AlgebraElement> {
        let m = self.dim();
        let ops: Vec<Mat<Rational>> = (0..m)
            .map(|i| {
                let mut e = self.zero_elem();
                e.coords[i] = Rational::one();
                self.left_mult_operator(&e)
            })
            .collect();
        let gram = Mat::from_fn(m, m, |i, j| {
            let prod = ops[i].mat_mul(&ops[j]).expect("square");
            let mut tr = Rational::zero();
            for k in 0..m {
                tr += prod.get(k, k);
            }
            tr
        });
        gram.kernel_basis()
            .into_iter()
            .map(|coords| AlgebraElement { coords })
            .collect()
    }

    /// The unique complete set of primitive orthogonal idempotents.
    ///
    /// Searches for an element whose image generates the semisimple
    /// quotient (certified by the squarefree part of its minimal
    /// polynomial reaching degree dim(A) - dim(radical)), then splits the
    /// full minimal polynomial into coprime prime-power blocks and reads
    /// the idempotents off Bezout combinations. Those are exactly
    /// idempotent and exactly orthogonal, no lifting through the radical
    /// is needed.
    pub fn split_idempotents(&self, seed: u64) -> Result<IdempotentSet, AlgebraError> {
        let semisimple_dim = self.dim() - self.radical().len();
        if semisimple_dim == 1 {
            return Ok(self.idempotent_set(vec![self.unit()]));
        }
        let x = self.find_splitting_element(seed, semisimple_dim)?;
        let mp = self.min_poly(&x);
        let factorization = factor_rational_poly(&mp);
        if factorization.factors.len() == 1 {
            return Ok(self.idempotent_set(vec![self.unit()]));
        }
        let mut idempotents = Vec::new();
        for (p, e) in &factorization.factors {
            let block = p.monic().pow(*e);
            let rest = mp.div_rem(&block).0;
            let (g, _, b) = block.extended_gcd(&rest);
            debug_assert_eq!(g, UniPoly::one());
            // b * rest = 1 mod block, = 0 mod every other block
            let ei = self.eval_poly(&b.mul(&rest), &x);
            debug_assert_eq!(self.mul(&ei, &ei), ei);
            idempotents.push(ei);
        }
        Ok(self.idempotent_set(idempotents))
    }

    /// Deterministic ordering: by corner dimension, then lexicographic
    /// order of the matrix entries.
    fn idempotent_set(&self, elements: Vec<AlgebraElement>) -> IdempotentSet {
        let mut pairs: Vec<(usize, Mat<Rational>, AlgebraElement)> = elements
            .into_iter()
            .map(|e| {
                let corner_dim = self.left_mult_operator(&e).rank();
                let m = self.to_matrix(&e);
                (corner_dim, m, e)
            })
            .collect();
        pairs.sort_by(|a, b| {
            // by corner dimension, then so that support on earlier
            // coordinates comes first
            a.0.cmp(&b.0)
                .then_with(|| b.1.vectorize().cmp(&a.1.vectorize()))
        });
        let mut elements = Vec::new();
        let mut matrices = Vec::new();
        for (_, m, e) in pairs {
            elements.push(e);
            matrices.push(m);
        }
        IdempotentSet { elements, matrices }
    }

    /// An element whose minimal polynomial has squarefree part of degree
    /// `semisimple_dim`: seeded random coordinates in {-9..9} with at
    /// most 8 resamples, then a deterministic sweep over basis elements,
    /// pairwise sums, and geometric combinations.
    fn find_splitting_element(
        &self,
        seed: u64,
        semisimple_dim: usize,
    ) -> Result<AlgebraElement, AlgebraError> {
        let target = semisimple_dim;
        let good = |x: &AlgebraElement| {
            self.min_poly(x)
                .squarefree_part()
                .degree()
                .map_or(false, |d| d == target)
        };
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..8 {
            let coords: Vec<Rational> = (0..self.dim())
                .map(|_| crate::rat((rng.next_u32() % 19) as i64 - 9))
                .collect();
            let x = AlgebraElement { coords };
            if good(&x) {
                return Ok(x);
            }
        }
        let m = self.dim();
        for i in 0..m {
            let mut e = self.zero_elem();
            e.coords[i] = Rational::one();
            if good(&e) {
                return Ok(e);
            }
        }
        for i in 0..m {
            for j in i + 1..m {
                let mut e = self.zero_elem();
                e.coords[i] = Rational::one();
                e.coords[j] = Rational::one();
                if good(&e) {
                    return Ok(e);
                }
            }
        }
        // geometric sweep: sum lambda^i b_i; a primitive element exists
        // for all but finitely many lambda
        for lambda in 2i64..64 {
            let mut coords = Vec::with_capacity(m);
            let mut pw = Rational::one();
            for _ in 0..m {
                coords.push(pw.clone());
                pw *= crate::rat(lambda);
            }
            let x = AlgebraElement { coords };
            if good(&x) {
                return Ok(x);
            }
        }
        Err(AlgebraError::RetryExhausted)
    }

    /// True iff the unit is the only idempotent, i.e. the algebra is
    /// local.
    pub fn is_local(&self) -> Result<bool, AlgebraError> {
        Ok(self.split_idempotents(0)?.len() == 1)
    }
}

fn find_unit(n: usize, span_rows: &[Vec<Rational>]) -> Option<Mat<Rational>> {
    // u in span with u * b_j = b_j for every spanning element b_j:
    // linear system in the span coordinates of u.
    let m = span_rows.len();
    let mats: Vec<Mat<Rational>> = span_rows
        .iter()
        .map(|v| Mat::from_vec(n, n, v.clone()))
        .collect();
    // rows: for each j, n*n equations sum_i u_i (b_i b_j) = b_j
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for bj in &mats {
        let products: Vec<Mat<Rational>> = mats
            .iter()
            .map(|bi| bi.mat_mul(bj).expect("square"))
            .collect();
        for r in 0..n {
            for c in 0..n {
                rows.push(
                    products
                        .iter()
                        .map(|p| p.get(r, c).clone())
                        .collect::<Vec<_>>(),
                );
                rhs.push(bj.get(r, c).clone());
            }
        }
    }
    // solve least-structure system via augmented RREF
    let aug = Mat::from_fn(rows.len(), m + 1, |i, j| {
        if j < m {
            rows[i][j].clone()
        } else {
            rhs[i].clone()
        }
    });
    let (r, pivots) = aug.rref_with_pivots();
    if pivots.contains(&m) {
        return None;
    }
    let mut coords = vec![Rational::zero(); m];
    for (row, &col) in pivots.iter().enumerate() {
        coords[col] = r.get(row, m).clone();
    }
    let mut u = Mat::zero(n, n);
    for (i, c) in coords.iter().enumerate() {
        u = u.mat_add(&mats[i].scale(c)).expect("square");
    }
    // confirm two-sided identity on the span
    for b in &mats {
        if u.mat_mul(b).expect("square") != *b || b.mat_mul(&u).expect("square") != *b {
            return None;
        }
    }
    Some(u)
}

/// Verify the idempotent axioms exactly: e_i^2 = e_i, e_i e_j = 0 for
/// i != j, and sum e_i = unit.
pub fn verify_idempotent_axioms(algebra: &CommAlgebra, set: &IdempotentSet) -> bool {
    let mut sum = algebra.zero_elem();
    for (i, e) in set.elements.iter().enumerate() {
        if algebra.mul(e, e) != *e {
            return false;
        }
        for (j, f) in set.elements.iter().enumerate() {
            if i != j && algebra.mul(e, f) != algebra.zero_elem() {
                return false;
            }
        }
        sum = algebra.add(&sum, e);
    }
    sum == algebra.unit()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::center::matrix_unit;
    use crate::rat;

    fn diag_algebra() -> CommAlgebra {
        CommAlgebra::from_matrix_span(&[matrix_unit(2, 0, 0), matrix_unit(2, 1, 1)]).unwrap()
    }

    fn nilpotent_algebra() -> CommAlgebra {
        // {I, N} with N = [[0,1],[0,0]]
        CommAlgebra::from_matrix_span(&[Mat::identity(2), matrix_unit(2, 0, 1)]).unwrap()
    }

    fn rotation_algebra() -> CommAlgebra {
        // I and J = [[0,-1],[1,0]] with J^2 = -I: a field (min poly t^2+1)
        let j = Mat::from_rows(vec![vec![rat(0), rat(-1)], vec![rat(1), rat(0)]]);
        CommAlgebra::from_matrix_span(&[Mat::identity(2), j]).unwrap()
    }

    #[test]
    fn from_matrix_span_basics() {
        let one = CommAlgebra::from_matrix_span(&[Mat::identity(3)]).unwrap();
        assert_eq!(one.dim(), 1);
        assert_eq!(diag_algebra().dim(), 2);
        assert_eq!(nilpotent_algebra().dim(), 2);
    }

    #[test]
    fn from_matrix_span_rejects_bad_input() {
        // not closed: E12 alone has E12^2 = 0 in span, but no identity
        assert!(matches!(
            CommAlgebra::from_matrix_span(&[matrix_unit(2, 0, 1)]),
            Err(AlgebraError::MissingIdentity)
        ));
        // not commutative: E12 and E21 together
        let res =
            CommAlgebra::from_matrix_span(&[Mat::identity(2), matrix_unit(2, 0, 1), matrix_unit(2, 1, 0)]);
        assert!(matches!(
            res,
            Err(AlgebraError::NotCommutative) | Err(AlgebraError::NotClosed)
        ));
    }

    #[test]
    fn min_poly_examples() {
        let a = diag_algebra();
        assert_eq!(a.min_poly(&a.unit()), UniPoly::from_ints(&[-1, 1]));
        // E11 inside the diagonal algebra: t^2 - t
        let e11 = a.from_matrix(&matrix_unit(2, 0, 0)).unwrap();
        assert_eq!(a.min_poly(&e11), UniPoly::from_ints(&[0, -1, 1]));
        // nilpotent N: t^2
        let na = nilpotent_algebra();
        let n = na.from_matrix(&matrix_unit(2, 0, 1)).unwrap();
        assert_eq!(na.min_poly(&n), UniPoly::from_ints(&[0, 0, 1]));
    }

    #[test]
    fn radical_examples() {
        assert!(diag_algebra().radical().is_empty());
        let na = nilpotent_algebra();
        let rad = na.radical();
        assert_eq!(rad.len(), 1);
        // the radical element is nilpotent
        let r = &rad[0];
        let mp = na.min_poly(r);
        for i in 0..mp.coeffs().len() - 1 {
            assert_eq!(mp.coeff(i), rat(0));
        }
        assert!(rotation_algebra().radical().is_empty());
    }

    #[test]
    fn split_diagonal_algebra() {
        let a = diag_algebra();
        let set = a.split_idempotents(0).unwrap();
        assert_eq!(set.len(), 2);
        assert!(verify_idempotent_axioms(&a, &set));
        assert_eq!(set.matrices[0], matrix_unit(2, 0, 0));
        assert_eq!(set.matrices[1], matrix_unit(2, 1, 1));
        assert!(!a.is_local().unwrap());
    }

    #[test]
    fn split_local_algebras() {
        let na = nilpotent_algebra();
        let set = na.split_idempotents(0).unwrap();
        assert_eq!(set.len(), 1);
        assert_eq!(set.matrices[0], Mat::identity(2));
        assert!(na.is_local().unwrap());

        let ra = rotation_algebra();
        let set = ra.split_idempotents(0).unwrap();
        assert_eq!(set.len(), 1);
        assert!(ra.is_local().unwrap());

        let one = CommAlgebra::from_matrix_span(&[Mat::identity(1)]).unwrap();
        assert!(one.is_local().unwrap());
    }

    #[test]
    fn split_is_seed_independent() {
        let a = diag_algebra();
        let m0 = a.split_idempotents(0).unwrap().matrices;
        let m1 = a.split_idempotents(1).unwrap().matrices;
        let m42 = a.split_idempotents(42).unwrap().matrices;
        assert_eq!(m0, m1);
        assert_eq!(m0, m42);
    }

    #[test]
    fn corner_dimensions_sum_to_dim() {
        // k[t]/(t^3 - t) via the regular representation of multiplication
        // by t on basis {1, t, t^2}
        let t_op = Mat::from_rows(vec![
            vec![rat(0), rat(0), rat(0)],
            vec![rat(1), rat(0), rat(1)],
            vec![rat(0), rat(1), rat(0)],
        ]);
        let t2 = t_op.mat_mul(&t_op).unwrap();
        let a = CommAlgebra::from_matrix_span(&[Mat::identity(3), t_op, t2]).unwrap();
        assert_eq!(a.dim(), 3);
        let set = a.split_idempotents(0).unwrap();
        assert_eq!(set.len(), 3);
        assert!(verify_idempotent_axioms(&a, &set));
        let total: usize = set
            .elements
            .iter()
            .map(|e| a.left_mult_operator(e).rank())
            .sum();
        assert_eq!(total, a.dim());
    }
}
