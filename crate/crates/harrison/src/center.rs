//! The center of a form: matrices `X` with `H X = X^T H`, `H` the
//! Hessian. Computed over the rationals, or over a polynomial parameter
//! ring via fraction-free elimination.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use alloc::vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::forms::{Form, FormError};
use crate::matrix::{normalize_poly_vec, Mat};
use crate::poly::{Monomial, Polynomial};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CenterError {
    Degenerate,
    SizeMismatch,
    Form(FormError),
}

impl fmt::Display for CenterError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CenterError::Degenerate => write!(f, "center of a degenerate form is refused"),
            CenterError::SizeMismatch => write!(f, "matrix size mismatch"),
            CenterError::Form(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for CenterError {}

impl From<FormError> for CenterError {
    fn from(e: FormError) -> Self {
        CenterError::Form(e)
    }
}

/// Canonical basis of the center as a subspace of n x n matrices: the
/// RREF (over row-major vectorizations) of the kernel of the defining
/// linear system.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CenterBasis {
    pub n: usize,
    pub basis: Vec<Mat<Rational>>,
}

impl CenterBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// RREF of the stacked vectorizations; equal spans give equal
    /// canonical matrices.
    pub fn canonical_span(&self) -> Mat<Rational> {
        canonical_span_of(&self.basis, self.n)
    }
}

/// Center basis over a polynomial parameter ring.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyCenterBasis {
    pub n: usize,
    pub basis: Vec<Mat<Polynomial>>,
}

impl PolyCenterBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// RREF of the row-major vectorizations of a span of matrices, with zero
/// rows dropped.
pub fn canonical_span_of(mats: &[Mat<Rational>], n: usize) -> Mat<Rational> {
    if mats.is_empty() {
        return Mat::zero(0, n * n);
    }
    let rows: Vec<Vec<Rational>> = mats.iter().map(Mat::vectorize).collect();
    let (r, pivots) = Mat::from_rows(rows).rref_with_pivots();
    Mat::from_fn(pivots.len(), n * n, |i, j| r.get(i, j).clone())
}

/// Linear system for `H X = X^T H`: one equation per pair `i < j` and per
/// monomial of `(H X - X^T H)_{ij}`, in the n^2 unknowns `X_{kl}`
/// vectorized row-major. Diagonal entries are skipped: `H X - X^T H` is
/// antisymmetric whenever `H` is symmetric.
fn center_system(f: &Form) -> Mat<Rational> {
    let n = f.nvars();
    let h = f.hessian();
    let mut monomials: BTreeSet<Monomial> = BTreeSet::new();
    for i in 0..n {
        for j in 0..n {
            for (m, _) in h.get(i, j).terms() {
                monomials.insert(m.clone());
            }
        }
    }
    let monomials: Vec<Monomial> = monomials.into_iter().collect();
    let mut rows = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for m in &monomials {
                let mut row = vec![Rational::zero(); n * n];
                for k in 0..n {
                    // + H[i][k] * X[k][j]
                    row[k * n + j] += h.get(i, k).coeff(m);
                    // - X[k][i] * H[k][j]
                    row[k * n + i] -= h.get(k, j).coeff(m);
                }
                if row.iter().any(|c| !Zero::is_zero(c)) {
                    rows.push(row);
                }
            }
        }
    }
    if rows.is_empty() {
        Mat::zero(0, n * n)
    } else {
        Mat::from_rows(rows)
    }
}

/// Basis of the center of a nondegenerate form, canonicalized by RREF of
/// the vectorizations.
pub fn center_basis(f: &Form) -> Result<CenterBasis, CenterError> {
    if !f.is_nondegenerate() {
        return Err(CenterError::Degenerate);
    }
    let n = f.nvars();
    let system = center_system(f);
    let kernel = if system.rows() == 0 {
        // n = 1: no constraints, the whole matrix space
        Mat::zero(1, n * n).kernel_basis()
    } else {
        system.kernel_basis()
    };
    let canon = canonical_span_of(
        &kernel
            .into_iter()
            .map(|v| Mat::from_vec(n, n, v))
            .collect::<Vec<_>>(),
        n,
    );
    let basis = (0..canon.rows())
        .map(|i| Mat::from_vec(n, n, canon.row(i).to_vec()))
        .collect();
    Ok(CenterBasis { n, basis })
}

pub fn center_dim(f: &Form) -> Result<usize, CenterError> {
    Ok(center_basis(f)?.dim())
}

/// Exact membership test: `H X - X^T H = 0` as a polynomial matrix.
pub fn is_central(f: &Form, x: &Mat<Rational>) -> Result<bool, CenterError> {
    let n = f.nvars();
    if x.rows() != n || x.cols() != n {
        return Err(CenterError::SizeMismatch);
    }
    let nvars = f.nvars();
    let xp = Mat::from_fn(n, n, |i, j| {
        Polynomial::constant(nvars, x.get(i, j).clone())
    });
    let h = f.hessian();
    let lhs = h.mat_mul(&xp).expect("square");
    let rhs = xp.transpose().mat_mul(h).expect("square");
    Ok(lhs.mat_sub(&rhs).expect("square").is_zero())
}

/// A form whose coefficients live in a polynomial ring over parameters:
/// the first `nparams` variables of `poly` are parameters, the remaining
/// `n` are the form's variables. Coefficients must be denominator-cleared
/// by the caller.
#[derive(Clone, Debug)]
pub struct ParametricForm {
    pub poly: Polynomial,
    pub nparams: usize,
}

impl ParametricForm {
    pub fn main_vars(&self) -> usize {
        self.poly.nvars() - self.nparams
    }

    /// Degree in the main (non-parameter) variables; the polynomial must
    /// be homogeneous in them.
    pub fn main_degree(&self) -> Result<u32, FormError> {
        if self.poly.is_zero() {
            return Err(FormError::ZeroPolynomial);
        }
        let mut deg = None;
        for (m, _) in self.poly.terms() {
            let d: u32 = m.0[self.nparams..].iter().sum();
            match deg {
                None => deg = Some(d),
                Some(prev) if prev != d => return Err(FormError::NotHomogeneous),
                _ => {}
            }
        }
        let d = deg.expect("nonzero");
        if d < 3 {
            return Err(FormError::DegreeTooLow(d));
        }
        Ok(d)
    }

    /// Partial derivative with respect to main variable `i` (0-based in
    /// the main block).
    fn main_diff(&self, i: usize) -> Polynomial {
        self.poly.diff(self.nparams + i).expect("in range")
    }

    /// Coefficient of the given main-variable monomial, as a polynomial
    /// in the parameters.
    fn coeff_wrt_main(p: &Polynomial, nparams: usize, main: &[u32]) -> Polynomial {
        let mut out = Polynomial::zero(nparams);
        let mut terms = Vec::new();
        for (m, c) in p.terms() {
            if &m.0[nparams..] == main {
                terms.push((Monomial(m.0[..nparams].to_vec()), c.clone()));
            }
        }
        for (m, c) in terms {
            out = out
                .add(&Polynomial::from_terms(nparams, [(m, c)]))
                .expect("same ring");
        }
        out
    }

    fn main_monomials(polys: &[&Polynomial], nparams: usize) -> Vec<Vec<u32>> {
        let mut set: BTreeSet<Vec<u32>> = BTreeSet::new();
        for p in polys {
            for (m, _) in p.terms() {
                set.insert(m.0[nparams..].to_vec());
            }
        }
        set.into_iter().collect()
    }

    /// Nondegeneracy over the fraction field of the parameter ring: the
    /// main-variable partials are linearly independent over k(params).
    pub fn is_nondegenerate(&self) -> bool {
        let n = self.main_vars();
        let partials: Vec<Polynomial> = (0..n).map(|i| self.main_diff(i)).collect();
        let refs: Vec<&Polynomial> = partials.iter().collect();
        let mons = Self::main_monomials(&refs, self.nparams);
        if mons.is_empty() {
            return false;
        }
        let m = Mat::from_fn(n, mons.len(), |i, j| {
            Self::coeff_wrt_main(&partials[i], self.nparams, &mons[j])
        });
        m.rank() == n
    }
}

/// Center over the fraction field of the parameter ring, computed by
/// fraction-free elimination; basis vectors have polynomial entries with
/// content stripped. The dimension equals the kernel dimension over the
/// fraction field.
pub fn center_over_polycoeffs(pf: &ParametricForm) -> Result<PolyCenterBasis, CenterError> {
    let d = pf.main_degree()?;
    let _ = d;
    if !pf.is_nondegenerate() {
        return Err(CenterError::Degenerate);
    }
    let n = pf.main_vars();
    let nparams = pf.nparams;
    // Hessian with respect to the main variables
    let partials: Vec<Polynomial> = (0..n).map(|i| pf.main_diff(i)).collect();
    let h = Mat::from_fn(n, n, |i, j| {
        partials[i].diff(nparams + j).expect("in range")
    });
    let mut entry_refs: Vec<&Polynomial> = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            entry_refs.push(h.get(i, j));
        }
    }
    let mons = ParametricForm::main_monomials(&entry_refs, nparams);
    let mut rows: Vec<Vec<Polynomial>> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for m in &mons {
                let mut row = vec![Polynomial::zero(nparams); n * n];
                for k in 0..n {
                    let plus = ParametricForm::coeff_wrt_main(h.get(i, k), nparams, m);
                    let minus = ParametricForm::coeff_wrt_main(h.get(k, j), nparams, m);
                    row[k * n + j] = row[k * n + j].add(&plus).expect("same ring");
                    row[k * n + i] = row[k * n + i].sub(&minus).expect("same ring");
                }
                if row.iter().any(|p| !p.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let kernel = if rows.is_empty() {
        // unconstrained: standard basis
        (0..n * n)
            .map(|k| {
                let mut v = vec![Polynomial::zero(nparams); n * n];
                v[k] = Polynomial::one(nparams);
                v
            })
            .collect()
    } else {
        Mat::from_rows(rows).bareiss_kernel()
    };
    let basis = kernel
        .into_iter()
        .map(|mut v| {
            normalize_poly_vec(&mut v);
            Mat::from_vec(n, n, v)
        })
        .collect();
    Ok(PolyCenterBasis { n, basis })
}

/// Standard matrix unit `E_{ij}` as a rational matrix.
pub fn matrix_unit(n: usize, i: usize, j: usize) -> Mat<Rational> {
    Mat::from_fn(n, n, |r, c| {
        if r == i && c == j {
            Rational::one()
        } else {
            Rational::zero()
        }
    })
}
