//! JSON document types: the stable on-disk representation of forms and
//! composition specs. Rationals are carried as strings, never floats.

use anyhow::{anyhow, bail, Context, Result};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use harrison::poly::{Monomial, Polynomial};
use harrison::Rational;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TermDocument {
    pub coefficient: String,
    pub exponents: Vec<u32>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct FormDocument {
    pub variables: Vec<String>,
    pub terms: Vec<TermDocument>,
}

/// Composition spec document: `r` x variables, `n` z forms of degree `d`,
/// a common denominator `q` in the x variables, and one row of numerator
/// polynomials per z form (one entry per y variable).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ZSpecDocument {
    pub r: usize,
    pub n: usize,
    pub d: u32,
    pub q: FormDocument,
    pub numerators: Vec<Vec<FormDocument>>,
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: num_bigint::BigInt = num
        .trim()
        .parse()
        .with_context(|| format!("invalid rational numerator in {s:?}"))?;
    let d: num_bigint::BigInt = den
        .trim()
        .parse()
        .with_context(|| format!("invalid rational denominator in {s:?}"))?;
    if d.is_zero() {
        bail!("zero denominator in {s:?}");
    }
    Ok(Rational::new(n, d))
}

pub fn rational_string(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl FormDocument {
    pub fn from_polynomial(p: &Polynomial, variables: &[String]) -> Result<FormDocument> {
        if variables.len() != p.nvars() {
            bail!(
                "variable list length {} does not match polynomial in {} variables",
                variables.len(),
                p.nvars()
            );
        }
        let terms = p
            .terms()
            .map(|(m, c)| TermDocument {
                coefficient: rational_string(c),
                exponents: m.0.clone(),
            })
            .collect();
        Ok(FormDocument {
            variables: variables.to_vec(),
            terms,
        })
    }

    pub fn to_polynomial(&self) -> Result<Polynomial> {
        let nvars = self.variables.len();
        let mut p = Polynomial::zero(nvars);
        for t in &self.terms {
            if t.exponents.len() != nvars {
                bail!(
                    "term exponent list length {} does not match {} variables",
                    t.exponents.len(),
                    nvars
                );
            }
            let c = parse_rational(&t.coefficient)?;
            let term = Polynomial::from_terms(nvars, [(Monomial(t.exponents.clone()), c)]);
            p = p.add(&term).map_err(|e| anyhow!("{e}"))?;
        }
        Ok(p)
    }
}

/// Default variable names `x1..xn`.
pub fn default_variables(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

/// Polynomial rendered in the expression grammar with the given names:
/// terms in descending monomial order, explicit `*` and `^`.
pub fn print_polynomial(p: &Polynomial, variables: &[String]) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (m, c)) in p.terms().collect::<Vec<_>>().into_iter().rev().enumerate() {
        let neg = c < &Rational::zero();
        let mag = if neg { -c.clone() } else { c.clone() };
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else if neg {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let mut pieces: Vec<String> = Vec::new();
        let is_constant_term = m.0.iter().all(|&e| e == 0);
        if mag != Rational::from_integer(1.into()) || is_constant_term {
            pieces.push(rational_string(&mag));
        }
        for (i, &e) in m.0.iter().enumerate() {
            match e {
                0 => {}
                1 => pieces.push(variables[i].clone()),
                _ => pieces.push(format!("{}^{}", variables[i], e)),
            }
        }
        out.push_str(&pieces.join("*"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use harrison::rat;

    #[test]
    fn rational_strings_roundtrip() {
        for s in ["0", "5", "-7", "2/3", "-11/4"] {
            let c = parse_rational(s).unwrap();
            assert_eq!(rational_string(&c), s);
        }
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn document_roundtrip() {
        let p = Polynomial::var(2, 0)
            .pow(3)
            .add(&Polynomial::var(2, 1).pow(3).scale(&rat(-2)))
            .unwrap();
        let vars = default_variables("x", 2);
        let doc = FormDocument::from_polynomial(&p, &vars).unwrap();
        assert_eq!(doc.to_polynomial().unwrap(), p);
        let json = serde_json::to_string(&doc).unwrap();
        let back: FormDocument = serde_json::from_str(&json).unwrap();
        assert_eq!(back, doc);
    }

    #[test]
    fn printing_matches_grammar() {
        let p = Polynomial::var(2, 0)
            .pow(2)
            .scale(&rat(-3))
            .add(&Polynomial::var(2, 1))
            .unwrap()
            .add(&Polynomial::constant(2, Rational::new(1.into(), 2.into())))
            .unwrap();
        let vars = default_variables("x", 2);
        assert_eq!(print_polynomial(&p, &vars), "-3*x1^2 + x2 + 1/2");
        assert_eq!(print_polynomial(&Polynomial::zero(2), &vars), "0");
    }
}
