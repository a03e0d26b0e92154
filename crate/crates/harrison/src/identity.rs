//! Verification and refutation of composition identities of sums of
//! d-th powers, with the concrete constructions used to witness or rule
//! them out.

use alloc::vec::Vec;
use alloc::vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::center::{center_dim, CenterError};
use crate::decompose::rational_dth_root;
use crate::forms::{Form, FormError};
use crate::matrix::Mat;
use crate::poly::{Monomial, PolyError, Polynomial};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdentityError {
    /// d must be at least 3.
    DegreeTooLow(u32),
    /// The common denominator must be nonzero.
    ZeroDenominator,
    /// Numerator rows must agree in length and variable count.
    MalformedSpec,
    /// The witness construction needs at least 4 slots.
    TooFewSlots(usize),
    /// Refutation requires r >= 2.
    TrivialRank(usize),
    /// All coefficients must be nonzero in this construction.
    ZeroCoefficient,
    /// A specialization produced a zero or otherwise invalid form.
    DegenerateSpecialization,
    NonLinearInput,
    Poly(PolyError),
    Form(FormError),
    Center(CenterError),
}

impl fmt::Display for IdentityError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdentityError::DegreeTooLow(d) => write!(f, "degree {d} is below 3"),
            IdentityError::ZeroDenominator => write!(f, "common denominator is zero"),
            IdentityError::MalformedSpec => write!(f, "malformed composition spec"),
            IdentityError::TooFewSlots(n) => {
                write!(f, "witness construction needs at least 4 slots, got {n}")
            }
            IdentityError::TrivialRank(r) => {
                write!(f, "refutation applies to r >= 2, got {r}")
            }
            IdentityError::ZeroCoefficient => write!(f, "coefficients must all be nonzero"),
            IdentityError::DegenerateSpecialization => {
                write!(f, "specialization is degenerate")
            }
            IdentityError::NonLinearInput => write!(f, "inputs must be linear forms"),
            IdentityError::Poly(e) => write!(f, "{e}"),
            IdentityError::Form(e) => write!(f, "{e}"),
            IdentityError::Center(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for IdentityError {}

impl From<PolyError> for IdentityError {
    fn from(e: PolyError) -> Self {
        IdentityError::Poly(e)
    }
}

impl From<FormError> for IdentityError {
    fn from(e: FormError) -> Self {
        IdentityError::Form(e)
    }
}

impl From<CenterError> for IdentityError {
    fn from(e: CenterError) -> Self {
        IdentityError::Center(e)
    }
}

/// A candidate composition identity
/// `(x_1^d + .. + x_r^d)(y_1^d + .. + y_m^d) = z_1^d + .. + z_n^d`
/// where each `z_k = (1/q) * sum_j p_kj(x) y_j` is linear in `y` with
/// coefficients in the rational function field in `x`, presented with a
/// single common denominator `q`.
#[derive(Clone, Debug)]
pub struct ZSpec {
    /// Number of x variables.
    pub r: usize,
    /// Degree of the identity, at least 3.
    pub d: u32,
    /// Common denominator, a nonzero polynomial in the x variables.
    pub q: Polynomial,
    /// One row per z form; entry (k, j) is the numerator of the
    /// y_j-coefficient of z_k, a polynomial in the x variables. All rows
    /// share a common width, the number of y variables.
    pub numerators: Vec<Vec<Polynomial>>,
}

impl ZSpec {
    /// Number of z forms.
    pub fn num_z(&self) -> usize {
        self.numerators.len()
    }

    /// Number of y variables.
    pub fn num_y(&self) -> usize {
        self.numerators.first().map_or(0, Vec::len)
    }

    pub fn validate(&self) -> Result<(), IdentityError> {
        if self.d < 3 {
            return Err(IdentityError::DegreeTooLow(self.d));
        }
        if self.q.is_zero() {
            return Err(IdentityError::ZeroDenominator);
        }
        if self.q.nvars() != self.r {
            return Err(IdentityError::MalformedSpec);
        }
        let ny = self.num_y();
        if self.numerators.is_empty() || ny == 0 {
            return Err(IdentityError::MalformedSpec);
        }
        for row in &self.numerators {
            if row.len() != ny || row.iter().any(|p| p.nvars() != self.r) {
                return Err(IdentityError::MalformedSpec);
            }
        }
        Ok(())
    }
}

/// Residual of the composition identity in the joint ring
/// `k[x_1..x_r, y_1..y_m]`:
/// `q^d (sum x_i^d)(sum y_j^d) - sum_k (sum_j p_kj y_j)^d`.
/// The identity holds iff the residual is zero.
pub fn verify_power_identity(spec: &ZSpec) -> Result<(bool, Polynomial), IdentityError> {
    spec.validate()?;
    let r = spec.r;
    let ny = spec.num_y();
    let total = r + ny;
    let embed_x = |p: &Polynomial| p.shift_vars(total, 0);
    let y = |j: usize| Polynomial::var(total, r + j);

    let mut x_sum = Polynomial::zero(total);
    for i in 0..r {
        x_sum = x_sum.add(&Polynomial::var(total, i).pow(spec.d))?;
    }
    let mut y_sum = Polynomial::zero(total);
    for j in 0..ny {
        y_sum = y_sum.add(&y(j).pow(spec.d))?;
    }
    let lhs = embed_x(&spec.q)
        .pow(spec.d)
        .mul(&x_sum)?
        .mul(&y_sum)?;
    let mut rhs = Polynomial::zero(total);
    for row in &spec.numerators {
        let mut z = Polynomial::zero(total);
        for (j, p) in row.iter().enumerate() {
            z = z.add(&embed_x(p).mul(&y(j))?)?;
        }
        rhs = rhs.add(&z.pow(spec.d))?;
    }
    let residual = lhs.sub(&rhs)?;
    Ok((residual.is_zero(), residual))
}

/// The explicit witness for degree-d composition with n >= 4 slots:
/// `z1 = x1 y1, z2 = x1 y2, z3 = x2 y1, z4 = x2 y2`, remaining z zero,
/// which realizes `(x1^d + x2^d)(y1^d + y2^d) = sum z_k^d`.
pub fn corollary33_witness(d: u32, n: usize) -> Result<ZSpec, IdentityError> {
    if d < 3 {
        return Err(IdentityError::DegreeTooLow(d));
    }
    if n < 4 {
        return Err(IdentityError::TooFewSlots(n));
    }
    let r = 2usize;
    let x1 = Polynomial::var(r, 0);
    let x2 = Polynomial::var(r, 1);
    let zero = Polynomial::zero(r);
    let mut numerators = vec![
        vec![x1.clone(), zero.clone()],
        vec![zero.clone(), x1],
        vec![x2.clone(), zero.clone()],
        vec![zero.clone(), x2],
    ];
    for _ in 4..n {
        numerators.push(vec![zero.clone(), zero.clone()]);
    }
    Ok(ZSpec {
        r,
        d,
        q: Polynomial::one(r),
        numerators,
    })
}

/// If `f = l^d` for a linear form `l` over the rationals, return `l`
/// (canonical sign: positive leading coefficient when d is even; forced
/// when d is odd). The candidate is read off the pure-power coefficients
/// and cross terms, then verified by exact expansion.
pub fn is_dth_power(f: &Form) -> Option<Polynomial> {
    let n = f.nvars();
    let d = f.degree();
    let pure = |i: usize| {
        let mut exps = vec![0u32; n];
        exps[i] = d;
        f.poly().coeff(&Monomial(exps))
    };
    let coeffs: Vec<Rational> = (0..n).map(pure).collect();
    let lead = coeffs.iter().position(|c| !c.is_zero())?;
    let a_lead = rational_dth_root(&coeffs[lead], d)?;
    // remaining coefficients from the cross term with the leading slot:
    // coeff of x_lead^(d-1) x_j = d * a_lead^(d-1) * a_j
    let mut a = vec![Rational::zero(); n];
    a[lead] = a_lead.clone();
    let mut lead_pow = Rational::one();
    for _ in 0..d - 1 {
        lead_pow *= &a_lead;
    }
    let scale = Rational::from_integer(d.into()) * lead_pow;
    for (j, slot) in a.iter_mut().enumerate() {
        if j == lead {
            continue;
        }
        let mut exps = vec![0u32; n];
        exps[lead] = d - 1;
        exps[j] = 1;
        let cross = f.poly().coeff(&Monomial(exps));
        *slot = cross / &scale;
    }
    let mut linear = Polynomial::zero(n);
    for (j, c) in a.iter().enumerate() {
        if !c.is_zero() {
            linear = linear
                .add(&Polynomial::var(n, j).scale(c))
                .expect("same ring");
        }
    }
    if linear.pow(d) == *f.poly() {
        Some(linear)
    } else {
        None
    }
}

/// Which kind of inconsistency the refutation certificate exhibits.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ContradictionKind {
    /// A cross term must vanish although both slots carry units.
    CrossTermNonzero,
    /// The pure-power coefficients cannot all be d-th powers.
    PowerSumMismatch,
}

impl fmt::Display for ContradictionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ContradictionKind::CrossTermNonzero => write!(f, "cross-term-nonzero"),
            ContradictionKind::PowerSumMismatch => write!(f, "power-sum-mismatch"),
        }
    }
}

/// Replayable certificate that `x_1^d + .. + x_r^d` is not the d-th power
/// of a linear form: the coefficient equations in the unknown linear
/// coefficients `a_1..a_r` are jointly inconsistent.
#[derive(Clone, Debug)]
pub struct RefutationCertificate {
    pub r: usize,
    pub d: u32,
    pub kind: ContradictionKind,
    /// Polynomials in `a_1..a_r` that a putative d-th power forces to
    /// vanish, together with the pure-power unit constraints
    /// `a_i^d - 1 = 0`.
    pub unit_equations: Vec<Polynomial>,
    pub cross_equation: Polynomial,
}

impl RefutationCertificate {
    /// Recompute the equations and check they are inconsistent: each
    /// `a_i^d = 1` forces `a_i` to be a unit, while the cross term
    /// `d a_1^(d-1) a_2 = 0` forces one of them to vanish.
    pub fn replay(&self) -> bool {
        let expected = build_refutation_equations(self.r, self.d);
        if self.unit_equations != expected.0 || self.cross_equation != expected.1 {
            return false;
        }
        // the cross equation is a single monomial with nonzero
        // coefficient supported on unit-constrained variables only
        let mut terms = self.cross_equation.terms();
        let Some((mono, coeff)) = terms.next() else {
            return false;
        };
        if terms.next().is_some() || coeff.is_zero() {
            return false;
        }
        mono.0
            .iter()
            .enumerate()
            .all(|(i, &e)| e == 0 || i < self.unit_equations.len())
    }
}

fn build_refutation_equations(r: usize, d: u32) -> (Vec<Polynomial>, Polynomial) {
    let unit_equations = (0..r)
        .map(|i| {
            Polynomial::var(r, i)
                .pow(d)
                .sub(&Polynomial::one(r))
                .expect("same ring")
        })
        .collect();
    let cross = Polynomial::var(r, 0)
        .pow(d - 1)
        .mul(&Polynomial::var(r, 1))
        .expect("same ring")
        .scale(&Rational::from_integer(d.into()));
    (unit_equations, cross)
}

/// Certificate that `x_1^d + .. + x_r^d` (r >= 2) is not a d-th power:
/// reading `(a_1 x_1 + .. + a_r x_r)^d` off against the target forces
/// `a_i^d = 1` for each i and `d a_1^(d-1) a_2 = 0`, which is
/// inconsistent.
pub fn refute_composition(r: usize, d: u32) -> Result<RefutationCertificate, IdentityError> {
    if r < 2 {
        return Err(IdentityError::TrivialRank(r));
    }
    if d < 3 {
        return Err(IdentityError::DegreeTooLow(d));
    }
    let (unit_equations, cross_equation) = build_refutation_equations(r, d);
    Ok(RefutationCertificate {
        r,
        d,
        kind: ContradictionKind::CrossTermNonzero,
        unit_equations,
        cross_equation,
    })
}

/// The form `g = sum_k y_k^d + (sum_k a_k y_k)^d` in n variables, all
/// `a_k` nonzero.
pub fn thm32_form(n: usize, d: u32, a: &[Rational]) -> Result<Form, IdentityError> {
    if d < 3 {
        return Err(IdentityError::DegreeTooLow(d));
    }
    if a.len() != n || n < 2 {
        return Err(IdentityError::MalformedSpec);
    }
    if a.iter().any(Zero::is_zero) {
        return Err(IdentityError::ZeroCoefficient);
    }
    let mut g = Polynomial::zero(n);
    let mut extra = Polynomial::zero(n);
    for (k, ak) in a.iter().enumerate() {
        g = g.add(&Polynomial::var(n, k).pow(d))?;
        extra = extra.add(&Polynomial::var(n, k).scale(ak))?;
    }
    g = g.add(&extra.pow(d))?;
    Ok(Form::from_poly(g)?)
}

/// Center dimension of the `thm32_form` instance.
pub fn thm32_center_dim(n: usize, d: u32, a: &[Rational]) -> Result<usize, IdentityError> {
    let g = thm32_form(n, d, a)?;
    Ok(center_dim(&g)?)
}

/// Are the e-th powers of the given linear forms linearly independent?
pub fn powers_linear_independent(forms: &[Polynomial], e: u32) -> Result<bool, IdentityError> {
    if forms.is_empty() {
        return Ok(true);
    }
    for p in forms {
        if p.is_zero() || p.homogeneous_degree() != Some(1) {
            return Err(IdentityError::NonLinearInput);
        }
    }
    let powers: Vec<Polynomial> = forms.iter().map(|p| p.pow(e)).collect();
    // coefficient matrix over the monomials of degree e
    let mut mons: Vec<Monomial> = Vec::new();
    for p in &powers {
        for (m, _) in p.terms() {
            if !mons.contains(m) {
                mons.push(m.clone());
            }
        }
    }
    let mat = Mat::from_fn(powers.len(), mons.len(), |i, j| powers[i].coeff(&mons[j]));
    Ok(mat.rank() == forms.len())
}

/// Substitute rational values for the first `x_values.len()` variables of
/// a form on joint variables and re-validate the result as a form in the
/// remaining ones.
pub fn specialize(f: &Form, x_values: &[Rational]) -> Result<Form, IdentityError> {
    let k = x_values.len();
    let total = f.nvars();
    if k >= total {
        return Err(IdentityError::MalformedSpec);
    }
    let ny = total - k;
    let images: Vec<Polynomial> = (0..total)
        .map(|i| {
            if i < k {
                Polynomial::constant(ny, x_values[i].clone())
            } else {
                Polynomial::var(ny, i - k)
            }
        })
        .collect();
    let specialized = f.poly().subst(&images)?;
    Form::from_poly(specialized).map_err(|_| IdentityError::DegenerateSpecialization)
}
