//! Dense univariate polynomials over the rationals.

use alloc::vec::Vec;
use alloc::{format, vec};
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::Rational;

/// Univariate polynomial, dense coefficient vector, constant term first.
/// Invariant: the leading coefficient is nonzero (the zero polynomial has
/// an empty coefficient vector).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = UniPoly { coeffs: vec![c] };
        p.trim();
        p
    }

    /// The monomial `t`.
    pub fn t() -> Self {
        UniPoly {
            coeffs: vec![Rational::zero(), Rational::one()],
        }
    }

    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        let mut p = UniPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        UniPoly::from_coeffs(coeffs.iter().map(|&c| crate::rat(c)).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().map_or(false, Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial has none.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::from_coeffs((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::from_coeffs((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> UniPoly {
        if c.is_zero() {
            return UniPoly::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|k| k * c).collect(),
        }
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        UniPoly::from_coeffs(coeffs)
    }

    pub fn pow(&self, k: u32) -> UniPoly {
        let mut result = UniPoly::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let dd = divisor.degree().unwrap();
        let lc = divisor.leading();
        let mut rem = self.clone();
        let mut quot = vec![
            Rational::zero();
            self.coeffs.len().saturating_sub(divisor.coeffs.len()) + 1
        ];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let c = rem.leading() / &lc;
            let shift = rd - dd;
            quot[shift] = c.clone();
            // rem -= c * t^shift * divisor
            let mut sub = vec![Rational::zero(); shift];
            sub.extend(divisor.coeffs.iter().map(|k| k * &c));
            rem = rem.sub(&UniPoly::from_coeffs(sub));
        }
        (UniPoly::from_coeffs(quot), rem)
    }

    pub fn rem(&self, divisor: &UniPoly) -> UniPoly {
        self.div_rem(divisor).1
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading().recip())
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: returns `(g, s, t)` with `s*self + t*other = g`, `g`
    /// monic (or zero).
    pub fn extended_gcd(&self, other: &UniPoly) -> (UniPoly, UniPoly, UniPoly) {
        let mut r0 = self.clone();
        let mut r1 = other.clone();
        let mut s0 = UniPoly::one();
        let mut s1 = UniPoly::zero();
        let mut t0 = UniPoly::zero();
        let mut t1 = UniPoly::one();
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.leading().recip();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn evaluate(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Rational content, signed to leave a positive leading coefficient.
    pub fn content(&self) -> Rational {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in &self.coeffs {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            return Rational::zero();
        }
        let mut content = Rational::new(num, den);
        if self.leading().is_negative() {
            content = -content;
        }
        content
    }

    /// Integer primitive part with positive leading coefficient.
    pub fn primitive_part(&self) -> UniPoly {
        let c = self.content();
        if c.is_zero() {
            return self.clone();
        }
        self.scale(&c.recip())
    }

    /// True iff gcd with the derivative is constant.
    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None | Some(0) => true,
            Some(_) => self.gcd(&self.derivative()).degree() == Some(0),
        }
    }

    /// Squarefree part: product of the distinct irreducible factors.
    pub fn squarefree_part(&self) -> UniPoly {
        match self.degree() {
            None | Some(0) => self.clone(),
            Some(_) => {
                let g = self.gcd(&self.derivative());
                self.div_rem(&g).0.monic()
            }
        }
    }

    /// Yun's squarefree decomposition: returns `[(g_1, 1), (g_2, 2), ...]`
    /// with the `g_i` monic squarefree and pairwise coprime, skipping
    /// trivial `g_i = 1`, such that `self = lc * prod g_i^i`.
    pub fn squarefree_decomposition(&self) -> Vec<(UniPoly, u32)> {
        let f = self.monic();
        let Some(d) = f.degree() else {
            return Vec::new();
        };
        if d == 0 {
            return Vec::new();
        }
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.div_rem(&a0).0;
        let mut c = fp.div_rem(&a0).0;
        let mut d_poly = c.sub(&b.derivative());
        let mut out = Vec::new();
        let mut i = 1u32;
        loop {
            let g = b.gcd(&d_poly);
            if g.degree().map_or(false, |dg| dg > 0) {
                out.push((g.clone(), i));
            }
            b = b.div_rem(&g).0;
            if b.degree() == Some(0) {
                break;
            }
            c = d_poly.div_rem(&g).0;
            d_poly = c.sub(&b.derivative());
            i += 1;
        }
        out
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
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
            let coeff_str = if mag.denom().is_one() {
                format!("{}", mag.numer())
            } else {
                format!("{}/{}", mag.numer(), mag.denom())
            };
            match i {
                0 => write!(f, "{coeff_str}")?,
                1 if mag.is_one() => write!(f, "t")?,
                1 => write!(f, "{coeff_str}*t")?,
                _ if mag.is_one() => write!(f, "t^{i}")?,
                _ => write!(f, "{coeff_str}*t^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    #[test]
    fn div_rem_roundtrip() {
        let a = UniPoly::from_ints(&[2, 0, -3, 1, 4]);
        let b = UniPoly::from_ints(&[1, 2, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().map_or(true, |d| d < 2));
    }

    #[test]
    fn gcd_of_multiples() {
        let g = UniPoly::from_ints(&[-1, 1]); // t - 1
        let a = g.mul(&UniPoly::from_ints(&[1, 1]));
        let b = g.mul(&UniPoly::from_ints(&[2, 0, 1]));
        assert_eq!(a.gcd(&b), g.monic());
    }

    #[test]
    fn extended_gcd_bezout() {
        let a = UniPoly::from_ints(&[1, 0, 1]); // t^2 + 1
        let b = UniPoly::from_ints(&[-2, 0, 0, 1]); // t^3 - 2
        let (g, s, t) = a.extended_gcd(&b);
        assert_eq!(g, UniPoly::one());
        assert_eq!(s.mul(&a).add(&t.mul(&b)), UniPoly::one());
    }

    #[test]
    fn squarefree_decomposition_of_cube_times_linear() {
        // (t-1)^2 * (t+2)
        let f = UniPoly::from_ints(&[-1, 1])
            .pow(2)
            .mul(&UniPoly::from_ints(&[2, 1]));
        let dec = f.squarefree_decomposition();
        assert_eq!(dec.len(), 2);
        assert_eq!(dec[0], (UniPoly::from_ints(&[2, 1]), 1));
        assert_eq!(dec[1], (UniPoly::from_ints(&[-1, 1]), 2));
        assert!(!f.is_squarefree());
        assert!(f.squarefree_part().is_squarefree());
    }

    #[test]
    fn evaluate_horner() {
        let f = UniPoly::from_ints(&[1, -2, 1]); // (t-1)^2
        assert_eq!(f.evaluate(&rat(3)), rat(4));
        assert_eq!(f.evaluate(&rat(1)), rat(0));
    }

    #[test]
    fn content_and_primitive_part() {
        let f = UniPoly::from_coeffs(vec![
            Rational::new(2.into(), 3.into()),
            Rational::new((-4).into(), 3.into()),
        ]);
        let pp = f.primitive_part();
        assert_eq!(pp, UniPoly::from_ints(&[-1, 2]));
        assert_eq!(pp.scale(&f.content()), f);
    }
}
