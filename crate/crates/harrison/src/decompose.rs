//! Direct-sum decomposition of nondegenerate forms via the primitive
//! idempotents of the center, diagonalizability testing, and
//! certificates.

use alloc::string::ToString;
use alloc::vec::Vec;
use alloc::vec;
use core::fmt;

use num_traits::{Signed, Zero};

use crate::algebra::{AlgebraError, CommAlgebra};
use crate::center::{center_basis, CenterError};
use crate::forms::{Form, FormError};
use crate::matrix::Mat;
use crate::poly::{Monomial, Polynomial};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecomposeError {
    Degenerate,
    Center(CenterError),
    Algebra(AlgebraError),
    Form(FormError),
    /// The assembled change of variables failed to separate the blocks;
    /// indicates an internal bug.
    CrossTermsRemain,
}

impl fmt::Display for DecomposeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecomposeError::Degenerate => write!(f, "cannot decompose a degenerate form"),
            DecomposeError::Center(e) => write!(f, "{e}"),
            DecomposeError::Algebra(e) => write!(f, "{e}"),
            DecomposeError::Form(e) => write!(f, "{e}"),
            DecomposeError::CrossTermsRemain => {
                write!(f, "change of variables failed to separate blocks")
            }
        }
    }
}

impl core::error::Error for DecomposeError {}

impl From<CenterError> for DecomposeError {
    fn from(e: CenterError) -> Self {
        match e {
            CenterError::Degenerate => DecomposeError::Degenerate,
            other => DecomposeError::Center(other),
        }
    }
}

impl From<AlgebraError> for DecomposeError {
    fn from(e: AlgebraError) -> Self {
        DecomposeError::Algebra(e)
    }
}

impl From<FormError> for DecomposeError {
    fn from(e: FormError) -> Self {
        DecomposeError::Form(e)
    }
}

/// Change of variables `P` and the block forms of `f(P y)` on disjoint
/// variable ranges.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub p: Mat<Rational>,
    /// (offset of the block's first variable, block form)
    pub blocks: Vec<(usize, Form)>,
}

impl Decomposition {
    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }
}

/// Columns of the idempotent matrix indexed by the RREF pivot columns: a
/// deterministic basis of its column space.
fn column_space_basis(e: &Mat<Rational>) -> Vec<Vec<Rational>> {
    let (_, pivots) = e.rref_with_pivots();
    pivots
        .iter()
        .map(|&c| (0..e.rows()).map(|r| e.get(r, c).clone()).collect())
        .collect()
}

/// Decompose a nondegenerate form into indecomposable direct summands.
///
/// Blocks are ordered by (dimension, canonical serialization of the block
/// form) and the change of variables is assembled accordingly.
pub fn decompose_with_seed(f: &Form, seed: u64) -> Result<Decomposition, DecomposeError> {
    let n = f.nvars();
    let cb = center_basis(f)?;
    let algebra = CommAlgebra::from_matrix_span(&cb.basis)?;
    let idempotents = algebra.split_idempotents(seed)?;
    // column spaces of the idempotents decompose the coordinate space
    let mut column_bases: Vec<Vec<Vec<Rational>>> = idempotents
        .matrices
        .iter()
        .map(column_space_basis)
        .collect();
    // provisional change of variables to read the blocks off
    let assemble = |bases: &[Vec<Vec<Rational>>]| -> Mat<Rational> {
        let cols: Vec<Vec<Rational>> = bases.iter().flatten().cloned().collect();
        Mat::from_fn(n, n, |i, j| cols[j][i].clone())
    };
    let provisional = assemble(&column_bases);
    let g = f.change_vars(&provisional)?;
    let dims: Vec<usize> = column_bases.iter().map(Vec::len).collect();
    let blocks = extract_blocks(&g, &dims)?;
    // reorder blocks canonically and rebuild P to match
    let mut order: Vec<usize> = (0..blocks.len()).collect();
    order.sort_by(|&a, &b| {
        blocks[a]
            .nvars()
            .cmp(&blocks[b].nvars())
            .then_with(|| blocks[a].poly().to_string().cmp(&blocks[b].poly().to_string()))
    });
    let blocks: Vec<Form> = order.iter().map(|&i| blocks[i].clone()).collect();
    column_bases = order.iter().map(|&i| column_bases[i].clone()).collect();
    let p = assemble(&column_bases);
    let mut offset = 0;
    let mut placed = Vec::new();
    for b in blocks {
        let w = b.nvars();
        placed.push((offset, b));
        offset += w;
    }
    let decomposition = Decomposition { p, blocks: placed };
    if !verify_decomposition(f, &decomposition) {
        return Err(DecomposeError::CrossTermsRemain);
    }
    Ok(decomposition)
}

pub fn decompose(f: &Form) -> Result<Decomposition, DecomposeError> {
    decompose_with_seed(f, 0)
}

/// Split `g` into forms on the given contiguous variable ranges; errors
/// if any monomial crosses a range boundary.
fn extract_blocks(g: &Form, dims: &[usize]) -> Result<Vec<Form>, DecomposeError> {
    let mut blocks = Vec::new();
    let mut offset = 0usize;
    let poly = g.poly();
    for &w in dims {
        let mut terms = Vec::new();
        for (m, c) in poly.terms() {
            let inside: u32 = m.0[offset..offset + w].iter().sum();
            if inside == m.total_degree() {
                terms.push((Monomial(m.0[offset..offset + w].to_vec()), c.clone()));
            } else if inside > 0 {
                return Err(DecomposeError::CrossTermsRemain);
            }
        }
        let block_poly = Polynomial::from_terms(w, terms);
        blocks.push(Form::from_poly(block_poly)?);
        offset += w;
    }
    Ok(blocks)
}

/// True iff `f(P y)` equals the sum of the blocks on their disjoint
/// ranges, exactly.
pub fn verify_decomposition(f: &Form, d: &Decomposition) -> bool {
    let n = f.nvars();
    if d.p.rows() != n || d.p.cols() != n {
        return false;
    }
    let Ok(g) = f.poly().subst_linear(&d.p) else {
        return false;
    };
    let mut sum = Polynomial::zero(n);
    for (offset, b) in &d.blocks {
        if offset + b.nvars() > n {
            return false;
        }
        sum = sum
            .add(&b.poly().shift_vars(n, *offset))
            .expect("same ring");
    }
    g == sum
}

/// True iff the center splits into exactly n one-dimensional pieces.
pub fn is_diagonalizable(f: &Form) -> Result<bool, DecomposeError> {
    let cb = center_basis(f)?;
    if cb.dim() < f.nvars() {
        return Ok(false);
    }
    let algebra = CommAlgebra::from_matrix_span(&cb.basis)?;
    Ok(algebra.split_idempotents(0)?.len() == f.nvars())
}

/// When `f` is diagonalizable, a change of variables `P` and nonzero
/// coefficients `c` with `f(P y) = sum c_i y_i^d`.
pub fn diagonalize(f: &Form) -> Result<Option<(Mat<Rational>, Vec<Rational>)>, DecomposeError> {
    let d = decompose(f)?;
    if d.blocks.iter().any(|(_, b)| b.nvars() != 1) {
        return Ok(None);
    }
    let coeffs = d
        .blocks
        .iter()
        .map(|(_, b)| {
            let m = Monomial(vec![b.degree()]);
            b.poly().coeff(&m)
        })
        .collect();
    Ok(Some((d.p, coeffs)))
}

/// Are `c * y^d` and `c' * y^d` related by a linear change of variable,
/// i.e. is `c'/c` the d-th power of a rational? For even `d` the sign
/// must match; for odd `d` every sign works.
pub fn dth_power_equivalent(c: &Rational, c_prime: &Rational, d: u32) -> bool {
    if c.is_zero() || c_prime.is_zero() {
        return false;
    }
    let ratio = c_prime / c;
    rational_dth_root(&ratio, d).is_some()
}

/// Exact d-th root of a rational, if one exists (for even d the input
/// must be positive; the positive root is returned).
pub fn rational_dth_root(x: &Rational, d: u32) -> Option<Rational> {
    if x.is_zero() {
        return Some(Rational::zero());
    }
    if d % 2 == 0 && x.is_negative() {
        return None;
    }
    let num = x.numer();
    let den = x.denom();
    let num_abs = num.abs();
    let rn = num_abs.nth_root(d);
    let rd = den.nth_root(d);
    if num_bigint::BigInt::pow(&rn, d) != num_abs || num_bigint::BigInt::pow(&rd, d) != *den {
        return None;
    }
    let root = Rational::new(rn, rd);
    if num.is_negative() {
        // d is odd here
        Some(-root)
    } else {
        Some(root)
    }
}
