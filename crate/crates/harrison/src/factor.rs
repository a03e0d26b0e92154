//! Univariate factorization over the rationals: squarefree decomposition,
//! Cantor-Zassenhaus factorization modulo a prime, Hensel lifting to a
//! Mignotte-style bound and subset recombination. Degrees at the scales
//! this engine sees stay small, so recombination cost is negligible.

use alloc::vec::Vec;
use alloc::vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::unipoly::UniPoly;
use crate::Rational;

/// Complete factorization over Q: `input = content * prod factor_i ^ mult_i`
/// with each factor a primitive irreducible integer polynomial with
/// positive leading coefficient, sorted canonically.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Factorization {
    pub content: Rational,
    pub factors: Vec<(UniPoly, u32)>,
}

impl Factorization {
    pub fn product(&self) -> UniPoly {
        let mut acc = UniPoly::constant(self.content.clone());
        for (f, m) in &self.factors {
            acc = acc.mul(&f.pow(*m));
        }
        acc
    }
}

/// Factor a nonzero univariate rational polynomial into irreducibles.
pub fn factor_rational_poly(u: &UniPoly) -> Factorization {
    assert!(!u.is_zero(), "cannot factor the zero polynomial");
    let content = u.content();
    let prim = u.primitive_part();
    if prim.degree() == Some(0) {
        return Factorization {
            content,
            factors: Vec::new(),
        };
    }
    let mut factors: Vec<(UniPoly, u32)> = Vec::new();
    let mut residual = prim.clone();
    for (g, mult) in prim.squarefree_decomposition() {
        // g is monic over Q; factor its integer primitive part
        let gp = g.primitive_part();
        for irr in factor_squarefree_primitive(&gp) {
            residual = exact_quotient(&residual, &irr.pow(mult));
            factors.push((irr, mult));
        }
    }
    // whatever constant is left over joins the content
    debug_assert_eq!(residual.degree(), Some(0));
    let leftover = residual.coeff(0);
    factors.sort_by(|a, b| cmp_factor(&a.0, &b.0).then(a.1.cmp(&b.1)));
    Factorization {
        content: content * leftover,
        factors,
    }
}

fn cmp_factor(a: &UniPoly, b: &UniPoly) -> core::cmp::Ordering {
    a.degree()
        .cmp(&b.degree())
        .then_with(|| {
            let da = a.degree().unwrap_or(0);
            for i in (0..=da).rev() {
                let c = a.coeff(i).cmp(&b.coeff(i));
                if c != core::cmp::Ordering::Equal {
                    return c;
                }
            }
            core::cmp::Ordering::Equal
        })
}

fn exact_quotient(a: &UniPoly, b: &UniPoly) -> UniPoly {
    let (q, r) = a.div_rem(b);
    assert!(r.is_zero(), "inexact quotient in factorization bookkeeping");
    q
}

/// Factor a primitive squarefree integer polynomial of degree >= 1 into
/// irreducibles (primitive, positive leading coefficient).
fn factor_squarefree_primitive(f: &UniPoly) -> Vec<UniPoly> {
    let deg = f.degree().expect("nonzero");
    if deg == 1 {
        return vec![f.clone()];
    }
    let lc = f.leading();
    // Monicize: f*(t) = lc^(n-1) * f(t / lc) is monic over Z and its
    // irreducible factors map back by t -> lc * t plus primitive part.
    let monic = monicize(f, &lc);
    let monic_factors = factor_monic_squarefree(&monic);
    let mut out: Vec<UniPoly> = monic_factors
        .iter()
        .map(|g| substitute_scaled(g, &lc).primitive_part())
        .collect();
    // the leftover constant is absorbed by the caller via exact division
    out.sort_by(cmp_factor);
    out
}

fn monicize(f: &UniPoly, lc: &Rational) -> UniPoly {
    let n = f.degree().unwrap();
    // coefficient of t^i becomes c_i * lc^(n-1-i)
    let coeffs = (0..=n)
        .map(|i| {
            let mut c = f.coeff(i);
            for _ in 0..(n - 1).saturating_sub(i) {
                c *= lc;
            }
            if i == n {
                Rational::one()
            } else {
                c
            }
        })
        .collect();
    UniPoly::from_coeffs(coeffs)
}

fn substitute_scaled(g: &UniPoly, lc: &Rational) -> UniPoly {
    // g(lc * t)
    let n = g.degree().unwrap_or(0);
    let coeffs = (0..=n)
        .map(|i| {
            let mut c = g.coeff(i);
            for _ in 0..i {
                c *= lc;
            }
            c
        })
        .collect();
    UniPoly::from_coeffs(coeffs)
}

/// Zassenhaus for a monic squarefree integer polynomial of degree >= 2.
fn factor_monic_squarefree(f: &UniPoly) -> Vec<UniPoly> {
    let deg = f.degree().expect("nonzero");
    if deg == 1 {
        return vec![f.clone()];
    }
    let fz: Vec<BigInt> = (0..=deg).map(|i| f.coeff(i).to_integer()).collect();
    // pick a prime keeping f squarefree mod p
    let mut p = 1009u64;
    let modular = loop {
        let fp = reduce_mod(&fz, p);
        if fp.len() == deg + 1 && modp_is_squarefree(&fp, p) {
            break fp;
        }
        p = next_prime(p + 1);
    };
    let mut rng = SplitMix64::new(0x9e3779b97f4a7c15);
    let modular_factors = cantor_zassenhaus(&modular, p, &mut rng);
    if modular_factors.len() == 1 {
        return vec![f.clone()];
    }
    // Hensel lift to p^e > 2 * bound on factor coefficients
    let norm1: BigInt = fz.iter().map(Signed::abs).sum();
    let bound: BigInt = (BigInt::one() << deg) * norm1 + BigInt::one();
    let target: BigInt = bound * 2;
    let mut pk = BigInt::from(p);
    while pk <= target {
        pk *= BigInt::from(p);
    }
    let lifted = hensel_lift_tree(&fz, &modular_factors, p, &pk);
    recombine(f, lifted, &pk)
}

/// Subset recombination of lifted modular factors.
fn recombine(f: &UniPoly, mut lifted: Vec<Vec<BigInt>>, pk: &BigInt) -> Vec<UniPoly> {
    let mut remaining = f.clone();
    let mut out = Vec::new();
    let mut size = 1usize;
    'outer: while 2 * size <= lifted.len() {
        let indices: Vec<usize> = (0..lifted.len()).collect();
        for subset in subsets_of_size(&indices, size) {
            let mut prod = vec![BigInt::one()];
            for &i in &subset {
                prod = modint_poly_mul(&prod, &lifted[i], pk);
            }
            let candidate = symmetric_poly(&prod, pk);
            let cand_poly =
                UniPoly::from_coeffs(candidate.iter().map(|c| Rational::from_integer(c.clone())).collect());
            let (q, r) = remaining.div_rem(&cand_poly);
            if r.is_zero() {
                out.push(cand_poly);
                remaining = q;
                let mut keep = Vec::new();
                for (i, fac) in lifted.into_iter().enumerate() {
                    if !subset.contains(&i) {
                        keep.push(fac);
                    }
                }
                lifted = keep;
                continue 'outer;
            }
        }
        size += 1;
    }
    if remaining.degree().map_or(false, |d| d > 0) {
        out.push(remaining);
    }
    out
}

fn subsets_of_size(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let n = items.len();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.iter().map(|&i| items[i]).collect());
        // advance combination
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

// ---------------------------------------------------------------------
// arithmetic mod p (u64) and mod p^k (BigInt)
// ---------------------------------------------------------------------

fn reduce_mod(f: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    let mut out: Vec<u64> = f
        .iter()
        .map(|c| c.mod_floor(&pb).to_u64().unwrap())
        .collect();
    while out.last().map_or(false, |&c| c == 0) {
        out.pop();
    }
    out
}

fn next_prime(mut n: u64) -> u64 {
    loop {
        if is_prime(n) {
            return n;
        }
        n += 1;
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

struct SplitMix64(u64);

impl SplitMix64 {
    fn new(seed: u64) -> Self {
        SplitMix64(seed)
    }
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }
}

// polynomials mod p: Vec<u64>, constant first, no trailing zeros
type ModPoly = Vec<u64>;

fn mp_trim(f: &mut ModPoly) {
    while f.last() == Some(&0) {
        f.pop();
    }
}

fn mp_deg(f: &ModPoly) -> Option<usize> {
    f.len().checked_sub(1)
}

fn addm(a: u64, b: u64, p: u64) -> u64 {
    (a + b) % p
}

fn subm(a: u64, b: u64, p: u64) -> u64 {
    (a + p - b % p) % p
}

fn mulm(a: u64, b: u64, p: u64) -> u64 {
    (a as u128 * b as u128 % p as u128) as u64
}

fn powm(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulm(acc, a, p);
        }
        a = mulm(a, a, p);
        e >>= 1;
    }
    acc
}

fn invm(a: u64, p: u64) -> u64 {
    powm(a, p - 2, p)
}


fn mp_sub(a: &ModPoly, b: &ModPoly, p: u64) -> ModPoly {
    let n = a.len().max(b.len());
    let mut out: ModPoly = (0..n)
        .map(|i| subm(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0), p))
        .collect();
    mp_trim(&mut out);
    out
}

fn mp_mul(a: &ModPoly, b: &ModPoly, p: u64) -> ModPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = addm(out[i + j], mulm(x, y, p), p);
        }
    }
    mp_trim(&mut out);
    out
}

fn mp_scale(a: &ModPoly, c: u64, p: u64) -> ModPoly {
    let mut out: ModPoly = a.iter().map(|&x| mulm(x, c, p)).collect();
    mp_trim(&mut out);
    out
}

/// Division with remainder mod p.
fn mp_divrem(a: &ModPoly, b: &ModPoly, p: u64) -> (ModPoly, ModPoly) {
    let db = mp_deg(b).expect("division by zero mod p");
    let lc_inv = invm(b[db], p);
    let mut rem = a.clone();
    let mut quot = vec![0u64; a.len().saturating_sub(b.len()) + 1];
    while let Some(dr) = mp_deg(&rem) {
        if dr < db {
            break;
        }
        let c = mulm(rem[dr], lc_inv, p);
        let shift = dr - db;
        quot[shift] = c;
        for (j, &bc) in b.iter().enumerate() {
            rem[shift + j] = subm(rem[shift + j], mulm(c, bc, p), p);
        }
        mp_trim(&mut rem);
    }
    mp_trim(&mut quot);
    (quot, rem)
}

fn mp_gcd(a: &ModPoly, b: &ModPoly, p: u64) -> ModPoly {
    let mut a = a.clone();
    let mut b = b.clone();
    while !b.is_empty() {
        let (_, r) = mp_divrem(&a, &b, p);
        a = b;
        b = r;
    }
    if let Some(d) = mp_deg(&a) {
        let inv = invm(a[d], p);
        a = mp_scale(&a, inv, p);
    }
    a
}

fn mp_derivative(a: &ModPoly, p: u64) -> ModPoly {
    let mut out: ModPoly = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| mulm(c, (i as u64) % p, p))
        .collect();
    mp_trim(&mut out);
    out
}

fn modp_is_squarefree(f: &ModPoly, p: u64) -> bool {
    let d = mp_derivative(f, p);
    if d.is_empty() {
        return false;
    }
    mp_deg(&mp_gcd(f, &d, p)) == Some(0)
}

/// `base^e mod (f, p)` with a big exponent.
fn mp_powmod_big(base: &ModPoly, e: &BigUint, f: &ModPoly, p: u64) -> ModPoly {
    let mut acc: ModPoly = vec![1];
    let mut b = mp_divrem(base, f, p).1;
    for i in 0..e.bits() {
        if e.bit(i) {
            acc = mp_divrem(&mp_mul(&acc, &b, p), f, p).1;
        }
        b = mp_divrem(&mp_mul(&b, &b, p), f, p).1;
    }
    acc
}

/// Cantor-Zassenhaus factorization of a monic squarefree polynomial mod an
/// odd prime: distinct-degree then equal-degree splitting.
fn cantor_zassenhaus(f: &ModPoly, p: u64, rng: &mut SplitMix64) -> Vec<ModPoly> {
    let mut out = Vec::new();
    // distinct degree
    let mut res = f.clone();
    let mut h: ModPoly = vec![0, 1]; // t
    let mut k = 1usize;
    let mut stages: Vec<(ModPoly, usize)> = Vec::new();
    while mp_deg(&res).map_or(false, |d| d >= 2 * k) {
        h = mp_powmod_big(&h, &BigUint::from(p), &res, p);
        let hx = mp_sub(&h, &vec![0, 1], p);
        let g = mp_gcd(&hx, &res, p);
        if mp_deg(&g).map_or(false, |d| d > 0) {
            stages.push((g.clone(), k));
            res = mp_divrem(&res, &g, p).0;
            h = mp_divrem(&h, &res, p).1;
        }
        k += 1;
    }
    if mp_deg(&res).map_or(false, |d| d > 0) {
        let d = mp_deg(&res).unwrap();
        stages.push((res, d));
    }
    // equal degree
    for (g, k) in stages {
        equal_degree_split(&g, k, p, rng, &mut out);
    }
    out.sort();
    out
}

fn equal_degree_split(g: &ModPoly, k: usize, p: u64, rng: &mut SplitMix64, out: &mut Vec<ModPoly>) {
    let d = mp_deg(g).expect("nonzero");
    if d == k {
        out.push(g.clone());
        return;
    }
    // exponent (p^k - 1) / 2
    let e = (BigUint::from(p).pow(k as u32) - BigUint::one()) / BigUint::from(2u32);
    loop {
        let mut r: ModPoly = (0..d).map(|_| rng.next() % p).collect();
        mp_trim(&mut r);
        if mp_deg(&r).map_or(true, |dr| dr == 0) {
            continue;
        }
        let w = mp_powmod_big(&r, &e, g, p);
        let w1 = mp_sub(&w, &vec![1], p);
        let h = mp_gcd(&w1, g, p);
        if let Some(dh) = mp_deg(&h) {
            if dh > 0 && dh < d {
                let rest = mp_divrem(g, &h, p).0;
                equal_degree_split(&h, k, p, rng, out);
                equal_degree_split(&rest, k, p, rng, out);
                return;
            }
        }
    }
}

// polynomials mod p^k: Vec<BigInt> in [0, p^k), constant first
fn modint_reduce(f: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = f.iter().map(|c| c.mod_floor(m)).collect();
    while out.last().map_or(false, Zero::is_zero) {
        out.pop();
    }
    out
}

fn modint_poly_mul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = (&out[i + j] + x * y).mod_floor(m);
        }
    }
    while out.last().map_or(false, Zero::is_zero) {
        out.pop();
    }
    out
}


/// Symmetric representative in (-m/2, m/2].
fn symmetric_poly(f: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let half = m / 2;
    f.iter()
        .map(|c| {
            let r = c.mod_floor(m);
            if r > half {
                r - m
            } else {
                r
            }
        })
        .collect()
}

/// Lift a list of pairwise-coprime monic factors of a monic `f` from mod p
/// to mod `pk` (a power of p) by binary splitting.
fn hensel_lift_tree(f: &[BigInt], factors: &[ModPoly], p: u64, pk: &BigInt) -> Vec<Vec<BigInt>> {
    let target = modint_reduce(f, pk);
    lift_split(&target, factors, p, pk)
}

fn lift_split(target: &[BigInt], factors: &[ModPoly], p: u64, pk: &BigInt) -> Vec<Vec<BigInt>> {
    if factors.len() == 1 {
        return vec![target.to_vec()];
    }
    let mid = factors.len() / 2;
    let (left, right) = factors.split_at(mid);
    let g0 = left
        .iter()
        .fold(vec![1u64], |acc, f| mp_mul(&acc, f, p));
    let h0 = right
        .iter()
        .fold(vec![1u64], |acc, f| mp_mul(&acc, f, p));
    let (g, h) = hensel_lift_pair(target, &g0, &h0, p, pk);
    let mut out = lift_split(&g, left, p, pk);
    out.extend(lift_split(&h, right, p, pk));
    out
}

/// Linear Hensel lifting of `target = g * h mod p` (all monic) to mod `pk`.
fn hensel_lift_pair(
    target: &[BigInt],
    g0: &ModPoly,
    h0: &ModPoly,
    p: u64,
    pk: &BigInt,
) -> (Vec<BigInt>, Vec<BigInt>) {
    // Bezout mod p: s*g0 + t*h0 = 1
    let (s0, t0) = mp_bezout(g0, h0, p);
    let pb = BigInt::from(p);
    let mut g: Vec<BigInt> = g0.iter().map(|&c| BigInt::from(c)).collect();
    let mut h: Vec<BigInt> = h0.iter().map(|&c| BigInt::from(c)).collect();
    let mut modulus = pb.clone();
    while &modulus < pk {
        let next = &modulus * &pb;
        // delta = (target - g*h)/modulus mod p
        let prod = poly_mul_plain(&g, &h);
        let diff = poly_sub_plain(target, &prod);
        let delta: ModPoly = {
            let mut d: Vec<u64> = diff
                .iter()
                .map(|c| {
                    let q = c / &modulus;
                    debug_assert!((c - &q * &modulus).is_zero());
                    q.mod_floor(&pb).to_u64().unwrap()
                })
                .collect();
            mp_trim(&mut d);
            d
        };
        // tau = t*delta mod g0 (deg < deg g0), sigma = (delta - tau*h0)/g0
        let tau = mp_divrem(&mp_mul(&t0, &delta, p), g0, p).1;
        let num = mp_sub(&delta, &mp_mul(&tau, h0, p), p);
        let (sigma, rem) = mp_divrem(&num, g0, p);
        debug_assert!(rem.is_empty());
        let _ = &s0;
        // g += modulus * tau ; h += modulus * sigma
        for (i, &c) in tau.iter().enumerate() {
            if i >= g.len() {
                g.resize(i + 1, BigInt::zero());
            }
            g[i] += &modulus * BigInt::from(c);
        }
        for (i, &c) in sigma.iter().enumerate() {
            if i >= h.len() {
                h.resize(i + 1, BigInt::zero());
            }
            h[i] += &modulus * BigInt::from(c);
        }
        modulus = next;
        g = modint_reduce(&g, &modulus);
        h = modint_reduce(&h, &modulus);
    }
    (modint_reduce(&g, pk), modint_reduce(&h, pk))
}

fn poly_mul_plain(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub_plain(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    (0..n)
        .map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero))
        .collect()
}

/// Bezout coefficients mod p for coprime g, h: s*g + t*h = 1.
fn mp_bezout(g: &ModPoly, h: &ModPoly, p: u64) -> (ModPoly, ModPoly) {
    let mut r0 = g.clone();
    let mut r1 = h.clone();
    let mut s0: ModPoly = vec![1];
    let mut s1: ModPoly = Vec::new();
    let mut t0: ModPoly = Vec::new();
    let mut t1: ModPoly = vec![1];
    while !r1.is_empty() {
        let (q, r) = mp_divrem(&r0, &r1, p);
        let s = mp_sub(&s0, &mp_mul(&q, &s1, p), p);
        let t = mp_sub(&t0, &mp_mul(&q, &t1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
        t0 = t1;
        t1 = t;
    }
    let d = mp_deg(&r0).expect("coprime inputs");
    assert_eq!(d, 0, "factors are not coprime mod p");
    let inv = invm(r0[0], p);
    (mp_scale(&s0, inv, p), mp_scale(&t0, inv, p))
}
