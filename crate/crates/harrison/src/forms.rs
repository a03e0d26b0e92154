//! Validated homogeneous forms, their symmetric d-linear tensors and
//! Hessians.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use alloc::vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::matrix::{Mat, MatError};
use crate::poly::{Monomial, PolyError, Polynomial};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FormError {
    ZeroPolynomial,
    NotHomogeneous,
    /// The theory requires degree at least 3.
    DegreeTooLow(u32),
    MixedDegrees,
    DimensionMismatch,
    Singular,
    /// Operation requires a nondegenerate form.
    Degenerate,
    Poly(PolyError),
}

impl fmt::Display for FormError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormError::ZeroPolynomial => write!(f, "the zero polynomial is not a form"),
            FormError::NotHomogeneous => write!(f, "polynomial is not homogeneous"),
            FormError::DegreeTooLow(d) => write!(f, "degree {d} is below 3"),
            FormError::MixedDegrees => write!(f, "summands have different degrees"),
            FormError::DimensionMismatch => write!(f, "matrix dimension mismatch"),
            FormError::Singular => write!(f, "change of variables is singular"),
            FormError::Degenerate => write!(f, "form is degenerate"),
            FormError::Poly(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for FormError {}

impl From<PolyError> for FormError {
    fn from(e: PolyError) -> Self {
        FormError::Poly(e)
    }
}

impl From<MatError> for FormError {
    fn from(e: MatError) -> Self {
        match e {
            MatError::Singular => FormError::Singular,
            _ => FormError::DimensionMismatch,
        }
    }
}

/// Homogeneous polynomial of degree `d >= 3` in `n` variables, with its
/// Hessian and symmetric tensor computed eagerly so shared values are
/// read-only.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Form {
    poly: Polynomial,
    degree: u32,
    nvars: usize,
    hessian: Mat<Polynomial>,
    tensor: SymmetricTensor,
}

/// Symmetric d-linear tensor of a form: only sorted index tuples are
/// stored, multiplicity is carried by the multinomial factor.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymmetricTensor {
    order: u32,
    dim: usize,
    entries: BTreeMap<Vec<usize>, Rational>,
}

fn factorial(k: u32) -> Rational {
    let mut acc = Rational::one();
    for i in 2..=k {
        acc *= Rational::from_integer(i.into());
    }
    acc
}

impl Form {
    /// Validate and wrap a polynomial as a form of degree `d >= 3`.
    pub fn from_poly(p: Polynomial) -> Result<Form, FormError> {
        if p.is_zero() {
            return Err(FormError::ZeroPolynomial);
        }
        let d = p.homogeneous_degree().ok_or(FormError::NotHomogeneous)?;
        if d < 3 {
            return Err(FormError::DegreeTooLow(d));
        }
        let nvars = p.nvars();
        let hessian = compute_hessian(&p);
        let tensor = SymmetricTensor::from_poly(&p, d);
        Ok(Form {
            poly: p,
            degree: d,
            nvars,
            hessian,
            tensor,
        })
    }

    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn hessian(&self) -> &Mat<Polynomial> {
        &self.hessian
    }

    pub fn tensor(&self) -> &SymmetricTensor {
        &self.tensor
    }

    /// True iff the first partials are linearly independent, i.e. no
    /// variable can be removed by an invertible change of variables.
    pub fn is_nondegenerate(&self) -> bool {
        partials_rank(&self.poly) == self.nvars
    }

    /// The form `g` with `g(y) = f(P y)` for invertible `P`.
    pub fn change_vars(&self, p: &Mat<Rational>) -> Result<Form, FormError> {
        if p.rows() != self.nvars || p.cols() != self.nvars {
            return Err(FormError::DimensionMismatch);
        }
        if Zero::is_zero(&p.det()?) {
            return Err(FormError::Singular);
        }
        Form::from_poly(self.poly.subst_linear(p)?)
    }

    /// Sum of forms of equal degree on disjoint variable blocks.
    pub fn direct_sum(parts: &[Form]) -> Result<Form, FormError> {
        let first = parts.first().ok_or(FormError::ZeroPolynomial)?;
        let d = first.degree;
        if parts.iter().any(|f| f.degree != d) {
            return Err(FormError::MixedDegrees);
        }
        let total: usize = parts.iter().map(|f| f.nvars).sum();
        let mut acc = Polynomial::zero(total);
        let mut offset = 0;
        for f in parts {
            acc = acc.add(&f.poly.shift_vars(total, offset))?;
            offset += f.nvars;
        }
        Form::from_poly(acc)
    }
}

/// Rank of the span of the first partial derivatives, as vectors of
/// monomial coefficients.
pub fn partials_rank(p: &Polynomial) -> usize {
    let n = p.nvars();
    let partials: Vec<Polynomial> = (0..n).map(|i| p.diff(i).expect("in range")).collect();
    // column index per monomial appearing in any partial
    let mut cols: BTreeMap<Monomial, usize> = BTreeMap::new();
    for q in &partials {
        for (m, _) in q.terms() {
            let next = cols.len();
            cols.entry(m.clone()).or_insert(next);
        }
    }
    if cols.is_empty() {
        return 0;
    }
    let rows: Vec<Vec<Rational>> = partials
        .iter()
        .map(|q| {
            let mut row = vec![Rational::zero(); cols.len()];
            for (m, c) in q.terms() {
                row[cols[m]] = c.clone();
            }
            row
        })
        .collect();
    Mat::from_rows(rows).rank()
}

fn compute_hessian(p: &Polynomial) -> Mat<Polynomial> {
    let n = p.nvars();
    let partials: Vec<Polynomial> = (0..n).map(|i| p.diff(i).expect("in range")).collect();
    Mat::from_fn(n, n, |i, j| partials[i].diff(j).expect("in range"))
}

impl SymmetricTensor {
    /// Symmetrized coefficients: the monomial `c * x^alpha` contributes
    /// `c * alpha! / d!` at the sorted index tuple of that monomial.
    pub fn from_poly(p: &Polynomial, d: u32) -> SymmetricTensor {
        let dim = p.nvars();
        let d_fact = factorial(d);
        let mut entries = BTreeMap::new();
        for (m, c) in p.terms() {
            let mut tuple = Vec::with_capacity(d as usize);
            let mut alpha_fact = Rational::one();
            for (i, &e) in m.0.iter().enumerate() {
                alpha_fact *= factorial(e);
                for _ in 0..e {
                    tuple.push(i);
                }
            }
            let value = c * &alpha_fact / &d_fact;
            entries.insert(tuple, value);
        }
        SymmetricTensor {
            order: d,
            dim,
            entries,
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Vec<usize>, &Rational)> {
        self.entries.iter()
    }

    pub fn get(&self, sorted_tuple: &[usize]) -> Rational {
        self.entries
            .get(sorted_tuple)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Full multilinear evaluation `sum a_{i1..id} v1_{i1} ... vd_{id}`,
    /// summing each stored sorted tuple over its distinct permutations.
    pub fn theta(&self, args: &[Vec<Rational>]) -> Result<Rational, FormError> {
        if args.len() != self.order as usize {
            return Err(FormError::DimensionMismatch);
        }
        if args.iter().any(|v| v.len() != self.dim) {
            return Err(FormError::DimensionMismatch);
        }
        let mut acc = Rational::zero();
        for (tuple, a) in &self.entries {
            let mut perm_sum = Rational::zero();
            for_each_distinct_permutation(tuple, &mut |perm| {
                let mut prod = Rational::one();
                for (k, &i) in perm.iter().enumerate() {
                    prod *= &args[k][i];
                }
                perm_sum += prod;
            });
            acc += a * perm_sum;
        }
        Ok(acc)
    }

    /// Rebuild the polynomial `Theta(x, ..., x)`; inverse of `from_poly`.
    pub fn reconstruct(&self) -> Polynomial {
        let d_fact = factorial(self.order);
        let mut p = Polynomial::zero(self.dim);
        let mut terms = Vec::new();
        for (tuple, a) in &self.entries {
            let mut exps = vec![0u32; self.dim];
            for &i in tuple {
                exps[i] += 1;
            }
            let mut alpha_fact = Rational::one();
            for &e in &exps {
                alpha_fact *= factorial(e);
            }
            terms.push((Monomial(exps), a * &d_fact / alpha_fact));
        }
        for (m, c) in terms {
            p = p
                .add(&Polynomial::from_terms(self.dim, [(m, c)]))
                .expect("same ring");
        }
        p
    }
}

/// Call `f` once per distinct permutation of the (sorted) multiset.
fn for_each_distinct_permutation(sorted: &[usize], f: &mut impl FnMut(&[usize])) {
    let mut perm: Vec<usize> = sorted.to_vec();
    loop {
        f(&perm);
        // next lexicographic permutation; sorted input guarantees we
        // enumerate each distinct arrangement exactly once
        let Some(i) = (0..perm.len().saturating_sub(1))
            .rev()
            .find(|&i| perm[i] < perm[i + 1])
        else {
            return;
        };
        let j = (i + 1..perm.len()).rev().find(|&j| perm[j] > perm[i]).unwrap();
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn x(nvars: usize, i: usize) -> Polynomial {
        Polynomial::var(nvars, i)
    }

    fn cubic_sum2() -> Form {
        Form::from_poly(x(2, 0).pow(3).add(&x(2, 1).pow(3)).unwrap()).unwrap()
    }

    #[test]
    fn from_poly_validation() {
        let f = cubic_sum2();
        assert_eq!(f.degree(), 3);
        assert_eq!(f.nvars(), 2);
        assert!(matches!(
            Form::from_poly(x(2, 0).pow(2).add(&x(2, 1)).unwrap()),
            Err(FormError::NotHomogeneous)
        ));
        assert!(matches!(
            Form::from_poly(x(1, 0).pow(2)),
            Err(FormError::DegreeTooLow(2))
        ));
        assert!(matches!(
            Form::from_poly(Polynomial::zero(2)),
            Err(FormError::ZeroPolynomial)
        ));
    }

    #[test]
    fn tensor_coefficients() {
        // f = x1^2 x2: a_{(0,0,1)} = 1/3
        let f = Form::from_poly(x(2, 0).pow(2).mul(&x(2, 1)).unwrap()).unwrap();
        assert_eq!(f.tensor().get(&[0, 0, 1]), Rational::new(1.into(), 3.into()));
        let g = Form::from_poly(x(1, 0).pow(3)).unwrap();
        assert_eq!(g.tensor().get(&[0, 0, 0]), rat(1));
        let h = Form::from_poly(
            x(3, 0).mul(&x(3, 1)).unwrap().mul(&x(3, 2)).unwrap(),
        )
        .unwrap();
        assert_eq!(h.tensor().get(&[0, 1, 2]), Rational::new(1.into(), 6.into()));
    }

    #[test]
    fn theta_reconstructs_evaluation() {
        let f = cubic_sum2();
        let v = vec![rat(1), rat(2)];
        let val = f.tensor().theta(&[v.clone(), v.clone(), v]).unwrap();
        assert_eq!(val, rat(9));
        // a_{112} of x1^2 x2 via theta on basis vectors
        let g = Form::from_poly(x(2, 0).pow(2).mul(&x(2, 1)).unwrap()).unwrap();
        let e1 = vec![rat(1), rat(0)];
        let e2 = vec![rat(0), rat(1)];
        assert_eq!(
            g.tensor().theta(&[e1.clone(), e1, e2]).unwrap(),
            Rational::new(1.into(), 3.into())
        );
    }

    #[test]
    fn tensor_reconstruction_is_exact() {
        let p = x(3, 0)
            .pow(3)
            .add(&x(3, 0).mul(&x(3, 1)).unwrap().mul(&x(3, 2)).unwrap().scale(&rat(5)))
            .unwrap()
            .add(&x(3, 2).pow(3).scale(&rat(-2)))
            .unwrap();
        let f = Form::from_poly(p.clone()).unwrap();
        assert_eq!(f.tensor().reconstruct(), p);
    }

    #[test]
    fn hessian_examples() {
        let f = cubic_sum2();
        let h = f.hessian();
        assert_eq!(*h.get(0, 0), x(2, 0).scale(&rat(6)));
        assert_eq!(*h.get(1, 1), x(2, 1).scale(&rat(6)));
        assert!(h.get(0, 1).is_zero());

        let g = Form::from_poly(
            x(3, 0).mul(&x(3, 1)).unwrap().mul(&x(3, 2)).unwrap(),
        )
        .unwrap();
        let h = g.hessian();
        assert!(h.get(0, 0).is_zero());
        assert_eq!(*h.get(0, 1), x(3, 2));
        assert_eq!(*h.get(0, 2), x(3, 1));
        assert_eq!(*h.get(1, 2), x(3, 0));
    }

    #[test]
    fn nondegeneracy_examples() {
        assert!(cubic_sum2().is_nondegenerate());
        let g = Form::from_poly(x(2, 0).add(&x(2, 1)).unwrap().pow(3)).unwrap();
        assert!(!g.is_nondegenerate());
        let h = Form::from_poly(x(2, 0).pow(2).mul(&x(2, 1)).unwrap()).unwrap();
        assert!(h.is_nondegenerate());
    }

    #[test]
    fn change_vars_composition() {
        let f = cubic_sum2();
        assert_eq!(f.change_vars(&Mat::identity(2)).unwrap(), f);
        let p = Mat::from_rows(vec![vec![rat(1), rat(1)], vec![rat(0), rat(1)]]);
        let q = Mat::from_rows(vec![vec![rat(2), rat(0)], vec![rat(1), rat(1)]]);
        let lhs = f.change_vars(&p).unwrap().change_vars(&q).unwrap();
        let rhs = f.change_vars(&p.mat_mul(&q).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        let sing = Mat::from_rows(vec![vec![rat(1), rat(1)], vec![rat(1), rat(1)]]);
        assert!(matches!(f.change_vars(&sing), Err(FormError::Singular)));
    }

    #[test]
    fn direct_sum_examples() {
        let a = Form::from_poly(x(1, 0).pow(3)).unwrap();
        let s = Form::direct_sum(&[a.clone(), a.clone()]).unwrap();
        assert_eq!(s, cubic_sum2());
        assert_eq!(Form::direct_sum(&[a.clone()]).unwrap(), a);

        let b = Form::from_poly(
            x(2, 0)
                .pow(3)
                .add(&x(2, 0).pow(2).mul(&x(2, 1)).unwrap())
                .unwrap(),
        )
        .unwrap();
        let t = Form::direct_sum(&[b, a.clone()]).unwrap();
        assert_eq!(t.nvars(), 3);

        let quartic = Form::from_poly(x(1, 0).pow(4)).unwrap();
        assert!(matches!(
            Form::direct_sum(&[a, quartic]),
            Err(FormError::MixedDegrees)
        ));
    }

    #[test]
    fn nondegeneracy_respects_direct_sum() {
        let a = cubic_sum2();
        let deg = Form::from_poly(x(2, 0).add(&x(2, 1)).unwrap().pow(3)).unwrap();
        assert!(Form::direct_sum(&[a.clone(), a.clone()])
            .unwrap()
            .is_nondegenerate());
        assert!(!Form::direct_sum(&[a, deg]).unwrap().is_nondegenerate());
    }

    #[test]
    fn euler_relation() {
        let p = x(3, 0)
            .pow(4)
            .add(&x(3, 1).pow(2).mul(&x(3, 2).pow(2)).unwrap().scale(&rat(3)))
            .unwrap();
        let f = Form::from_poly(p.clone()).unwrap();
        let mut acc = Polynomial::zero(3);
        for i in 0..3 {
            acc = acc
                .add(&x(3, i).mul(&p.diff(i).unwrap()).unwrap())
                .unwrap();
        }
        assert_eq!(acc, p.scale(&rat(4)));
        assert_eq!(f.degree(), 4);
    }
}
