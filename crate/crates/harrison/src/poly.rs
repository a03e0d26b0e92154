//! Sparse multivariate polynomials over exact rationals.
//!
//! Terms are kept in a `BTreeMap` keyed by exponent vector under graded
//! lexicographic order, so iteration order (and hence serialization) is
//! deterministic. Zero coefficients are never stored; the zero polynomial
//! has an empty term map.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use alloc::{format, vec};
use core::cmp::Ordering;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::matrix::Mat;
use crate::Rational;

/// Exponent vector of a single term. Length always equals the ambient
/// variable count of the enclosing polynomial.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Componentwise quotient, or `None` if some exponent of `other`
    /// exceeds the corresponding exponent of `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<u32>>>()
            .map(Monomial)
    }
}

// Graded lexicographic: total degree first, then lex on exponent vectors.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyError {
    /// The two operands live in polynomial rings with different variable counts.
    VariableMismatch { left: usize, right: usize },
    /// A variable index exceeds the ambient variable count.
    IndexOutOfRange { index: usize, nvars: usize },
    /// An evaluation point has the wrong length.
    LengthMismatch { expected: usize, got: usize },
    /// `exact_div` was asked to divide by zero.
    DivisionByZero,
    /// The divisor does not divide the dividend exactly.
    NotDivisible,
    /// A matrix argument has incompatible dimensions.
    DimensionMismatch,
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::VariableMismatch { left, right } => {
                write!(f, "variable count mismatch: {left} vs {right}")
            }
            PolyError::IndexOutOfRange { index, nvars } => {
                write!(f, "variable index {index} out of range for {nvars} variables")
            }
            PolyError::LengthMismatch { expected, got } => {
                write!(f, "expected vector of length {expected}, got {got}")
            }
            PolyError::DivisionByZero => write!(f, "division by the zero polynomial"),
            PolyError::NotDivisible => write!(f, "polynomial division is not exact"),
            PolyError::DimensionMismatch => write!(f, "matrix dimension mismatch"),
        }
    }
}

impl core::error::Error for PolyError {}

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Equality is structural: two polynomials are equal iff their term maps
/// are equal (same variable count, same exponent vectors, same reduced
/// coefficients).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(nvars), c);
        }
        Polynomial { nvars, terms }
    }

    /// The polynomial `x_i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(Monomial(exps), Rational::one());
        Polynomial { nvars, terms }
    }

    pub fn from_terms<I>(nvars: usize, it: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Polynomial::zero(nvars);
        for (m, c) in it {
            assert_eq!(m.nvars(), nvars, "monomial length mismatch");
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Leading term under graded lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.total_degree()).max()
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    fn check_same_ring(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.nvars != other.nvars {
            return Err(PolyError::VariableMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_same_ring(other)?;
        let mut out = self.clone();
        for (m, c) in other.terms.iter() {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k * c))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_same_ring(other)?;
        let mut out = Polynomial::zero(self.nvars);
        for (m1, c1) in self.terms.iter() {
            for (m2, c2) in other.terms.iter() {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    /// Repeated-squaring power; `pow(p, 0) = 1`.
    pub fn pow(&self, k: u32) -> Polynomial {
        let mut result = Polynomial::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base).expect("same ring");
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base).expect("same ring");
            }
        }
        result
    }

    /// Exact division: returns `r` with `q * r = self` when `q` divides
    /// `self`, otherwise `Err(NotDivisible)`.
    pub fn exact_div(&self, q: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_same_ring(q)?;
        if q.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let (lt_m, lt_c) = q.leading_term().expect("nonzero");
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(self.nvars);
        while !rem.is_zero() {
            let (rm, rc) = rem.leading_term().expect("nonzero");
            let qm = match rm.checked_div(lt_m) {
                Some(qm) => qm,
                None => return Err(PolyError::NotDivisible),
            };
            let qc = rc / lt_c;
            let t = Polynomial::from_terms(self.nvars, [(qm, qc)]);
            rem = rem.sub(&t.mul(q)?)?;
            quot = quot.add(&t)?;
        }
        Ok(quot)
    }

    /// Formal partial derivative with respect to variable `var_index`.
    pub fn diff(&self, var_index: usize) -> Result<Polynomial, PolyError> {
        if var_index >= self.nvars {
            return Err(PolyError::IndexOutOfRange {
                index: var_index,
                nvars: self.nvars,
            });
        }
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in self.terms.iter() {
            let e = m.0[var_index];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[var_index] = e - 1;
            out.add_term(Monomial(exps), c * Rational::from_integer(e.into()));
        }
        Ok(out)
    }

    /// Substitute `x_i := sum_j P[i][j] * y_j`, i.e. return `self(P * y)`.
    pub fn subst_linear(&self, p: &Mat<Rational>) -> Result<Polynomial, PolyError> {
        if p.rows() != self.nvars || p.cols() != self.nvars {
            return Err(PolyError::DimensionMismatch);
        }
        let images: Vec<Polynomial> = (0..self.nvars)
            .map(|i| {
                let mut row = Polynomial::zero(self.nvars);
                for j in 0..self.nvars {
                    let c = p.get(i, j).clone();
                    if !c.is_zero() {
                        row = row.add(&Polynomial::var(self.nvars, j).scale(&c)).unwrap();
                    }
                }
                row
            })
            .collect();
        self.subst(&images)
    }

    /// Substitute each variable by the given polynomial (all images in a
    /// common ring).
    pub fn subst(&self, images: &[Polynomial]) -> Result<Polynomial, PolyError> {
        if images.len() != self.nvars {
            return Err(PolyError::LengthMismatch {
                expected: self.nvars,
                got: images.len(),
            });
        }
        let target_nvars = match images.first() {
            Some(q) => q.nvars(),
            None => return Ok(Polynomial::constant(0, self.coeff(&Monomial::one(0)))),
        };
        let mut out = Polynomial::zero(target_nvars);
        for (m, c) in self.terms.iter() {
            let mut term = Polynomial::constant(target_nvars, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&images[i].pow(e))?;
                }
            }
            out = out.add(&term)?;
        }
        Ok(out)
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational, PolyError> {
        if point.len() != self.nvars {
            return Err(PolyError::LengthMismatch {
                expected: self.nvars,
                got: point.len(),
            });
        }
        let mut acc = Rational::zero();
        for (m, c) in self.terms.iter() {
            let mut v = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    v *= &point[i];
                }
            }
            acc += v;
        }
        Ok(acc)
    }

    /// Degree `d` when every term has total degree `d`; `None` when the
    /// polynomial is inhomogeneous or zero (use [`Polynomial::is_zero`] to
    /// tell the two apart).
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys();
        let d = it.next()?.total_degree();
        if it.all(|m| m.total_degree() == d) {
            Some(d)
        } else {
            None
        }
    }

    /// Rational content: gcd of numerators over lcm of denominators, signed
    /// so that dividing by it leaves a positive leading coefficient.
    pub fn content(&self) -> Rational {
        use num_integer::Integer;
        let mut num = num_bigint::BigInt::zero();
        let mut den = num_bigint::BigInt::one();
        for c in self.terms.values() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            return Rational::zero();
        }
        let mut content = Rational::new(num, den);
        if let Some((_, lc)) = self.leading_term() {
            if lc.is_negative() {
                content = -content;
            }
        }
        content
    }

    /// Divide out the rational content; the result has integer coprime
    /// coefficients and positive leading coefficient. Zero maps to zero.
    pub fn primitive_part(&self) -> Polynomial {
        let c = self.content();
        if c.is_zero() {
            return self.clone();
        }
        self.scale(&c.recip())
    }

    /// Embed into a larger ring: variable `i` maps to `offset + i` among
    /// `new_nvars` variables.
    pub fn shift_vars(&self, new_nvars: usize, offset: usize) -> Polynomial {
        assert!(offset + self.nvars <= new_nvars);
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut exps = vec![0u32; new_nvars];
                exps[offset..offset + self.nvars].copy_from_slice(&m.0);
                (Monomial(exps), c.clone())
            })
            .collect();
        Polynomial {
            nvars: new_nvars,
            terms,
        }
    }
}

fn fmt_coeff(c: &Rational) -> String {
    if c.denom().is_one() {
        format!("{}", c.numer())
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Grammar-compatible rendering: terms in descending graded lex order,
/// explicit `*` between factors, `^` for powers, variables named `x1..xn`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || m.total_degree() == 0 {
                factors.push(fmt_coeff(&mag));
            }
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("x{}", i + 1)),
                    _ => factors.push(format!("x{}^{}", i + 1, e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn x(nvars: usize, i: usize) -> Polynomial {
        Polynomial::var(nvars, i)
    }

    #[test]
    fn add_cancels() {
        let x1 = x(2, 0);
        let x2 = x(2, 1);
        let p = x1.add(&x2).unwrap();
        let q = x1.sub(&x2).unwrap();
        let sum = p.add(&q).unwrap();
        assert_eq!(sum, x1.scale(&rat(2)));
    }

    #[test]
    fn add_identity_and_merge() {
        let p = x(2, 0).pow(2).add(&x(2, 1)).unwrap();
        assert_eq!(p.add(&Polynomial::zero(2)).unwrap(), p);
        let q = p.add(&x(2, 1)).unwrap();
        assert_eq!(
            q,
            x(2, 0).pow(2).add(&x(2, 1).scale(&rat(2))).unwrap()
        );
    }

    #[test]
    fn add_rejects_mismatched_rings() {
        let p = x(2, 0);
        let q = x(3, 0);
        assert!(matches!(
            p.add(&q),
            Err(PolyError::VariableMismatch { .. })
        ));
    }

    #[test]
    fn binomial_square_and_cube() {
        let s = x(2, 0).add(&x(2, 1)).unwrap();
        let sq = s.mul(&s).unwrap();
        let expect = x(2, 0)
            .pow(2)
            .add(&x(2, 0).mul(&x(2, 1)).unwrap().scale(&rat(2)))
            .unwrap()
            .add(&x(2, 1).pow(2))
            .unwrap();
        assert_eq!(sq, expect);
        assert_eq!(s.pow(2), sq);
        assert_eq!(s.pow(3), sq.mul(&s).unwrap());
        assert_eq!(s.pow(0), Polynomial::one(2));
    }

    #[test]
    fn pow_of_scaled_var() {
        let p = x(1, 0).scale(&rat(2));
        assert_eq!(p.pow(3), x(1, 0).pow(3).scale(&rat(8)));
    }

    #[test]
    fn exact_div_difference_of_squares() {
        let p = x(2, 0).pow(2).sub(&x(2, 1).pow(2)).unwrap();
        let q = x(2, 0).sub(&x(2, 1)).unwrap();
        let r = p.exact_div(&q).unwrap();
        assert_eq!(r, x(2, 0).add(&x(2, 1)).unwrap());
        assert_eq!(p.exact_div(&Polynomial::one(2)).unwrap(), p);
        assert!(matches!(
            x(2, 0).exact_div(&x(2, 1)),
            Err(PolyError::NotDivisible)
        ));
        assert!(matches!(
            x(2, 0).exact_div(&Polynomial::zero(2)),
            Err(PolyError::DivisionByZero)
        ));
    }

    #[test]
    fn diff_basics() {
        assert_eq!(x(2, 0).pow(3).diff(0).unwrap(), x(2, 0).pow(2).scale(&rat(3)));
        assert_eq!(x(2, 1).pow(3).diff(0).unwrap(), Polynomial::zero(2));
        let p = x(2, 0).mul(&x(2, 1).pow(2)).unwrap();
        assert_eq!(
            p.diff(1).unwrap(),
            x(2, 0).mul(&x(2, 1)).unwrap().scale(&rat(2))
        );
        assert!(p.diff(5).is_err());
    }

    #[test]
    fn subst_linear_identity_and_shear() {
        let p = x(2, 0).pow(3).add(&x(2, 1).pow(3)).unwrap();
        let id = Mat::identity(2);
        assert_eq!(p.subst_linear(&id).unwrap(), p);

        // x1 -> y1 + y2 under P = [[1,1],[0,1]]
        let shear = Mat::from_rows(vec![
            vec![rat(1), rat(1)],
            vec![rat(0), rat(1)],
        ]);
        let q = x(2, 0).pow(3).subst_linear(&shear).unwrap();
        let expect = x(2, 0).add(&x(2, 1)).unwrap().pow(3);
        assert_eq!(q, expect);
    }

    #[test]
    fn evaluate_basics() {
        let p = x(2, 0).pow(3).add(&x(2, 1).pow(3)).unwrap();
        assert_eq!(p.evaluate(&[rat(1), rat(2)]).unwrap(), rat(9));
        let q = x(2, 0).mul(&x(2, 1)).unwrap();
        assert_eq!(
            q.evaluate(&[Rational::new(1.into(), 2.into()), Rational::new(2.into(), 3.into())])
                .unwrap(),
            Rational::new(1.into(), 3.into())
        );
        assert!(p.evaluate(&[rat(1)]).is_err());
    }

    #[test]
    fn homogeneous_degree_cases() {
        let p = x(2, 0).pow(3).add(&x(2, 1).pow(3)).unwrap();
        assert_eq!(p.homogeneous_degree(), Some(3));
        let q = x(2, 0).pow(2).add(&x(2, 1)).unwrap();
        assert_eq!(q.homogeneous_degree(), None);
        let r = x(3, 0)
            .mul(&x(3, 1))
            .unwrap()
            .mul(&x(3, 2))
            .unwrap();
        assert_eq!(r.homogeneous_degree(), Some(3));
        let z = Polynomial::zero(2);
        assert_eq!(z.homogeneous_degree(), None);
        assert!(z.is_zero());
    }

    #[test]
    fn display_roundtrip_shape() {
        use alloc::string::ToString;
        let p = x(2, 0)
            .pow(2)
            .scale(&rat(-3))
            .add(&x(2, 1))
            .unwrap()
            .add(&Polynomial::constant(2, Rational::new(1.into(), 2.into())))
            .unwrap();
        assert_eq!(p.to_string(), "-3*x1^2 + x2 + 1/2");
    }
}
