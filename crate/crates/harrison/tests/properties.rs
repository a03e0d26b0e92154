//! Property-based checks of the algebraic invariants the engine relies
//! on, over randomly generated small inputs.

use harrison::algebra::{verify_idempotent_axioms, CommAlgebra};
use harrison::center::{canonical_span_of, center_basis, center_dim, is_central};
use harrison::decompose::{decompose, verify_decomposition};
use harrison::factor::factor_rational_poly;
use harrison::forms::Form;
use harrison::identity::{corollary33_witness, verify_power_identity};
use harrison::matrix::Mat;
use harrison::poly::{Monomial, Polynomial};
use harrison::unipoly::UniPoly;
use harrison::{rat, Rational};

use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

/// Sparse polynomial in `nvars` variables with small exponents.
fn polynomial(nvars: usize) -> impl Strategy<Value = Polynomial> {
    let term = (
        proptest::collection::vec(0u32..=3, nvars),
        -5i64..=5,
    );
    proptest::collection::vec(term, 0..5).prop_map(move |terms| {
        let mut p = Polynomial::zero(nvars);
        for (exps, c) in terms {
            let t = Polynomial::from_terms(nvars, [(Monomial(exps), rat(c))]);
            p = p.add(&t).unwrap();
        }
        p
    })
}

fn nonzero_polynomial(nvars: usize) -> impl Strategy<Value = Polynomial> {
    polynomial(nvars).prop_filter("nonzero", |p| !p.is_zero())
}

fn rational_matrix(n: usize) -> impl Strategy<Value = Mat<Rational>> {
    proptest::collection::vec(rational(), n * n)
        .prop_map(move |v| Mat::from_vec(n, n, v))
}

fn small_int_matrix(n: usize) -> impl Strategy<Value = Mat<Rational>> {
    proptest::collection::vec(-3i64..=3, n * n)
        .prop_map(move |v| Mat::from_vec(n, n, v.into_iter().map(rat).collect()))
}

fn invertible_matrix(n: usize) -> impl Strategy<Value = Mat<Rational>> {
    small_int_matrix(n).prop_filter("invertible", |m| m.invert().is_ok())
}

/// Random diagonal form sum c_i x_i^d with distinct nonzero coefficients.
fn diagonal_form(n: usize, d: u32) -> impl Strategy<Value = Form> {
    proptest::collection::vec(1i64..=9, n)
        .prop_filter("distinct", |v| {
            let mut s = v.clone();
            s.sort_unstable();
            s.dedup();
            s.len() == v.len()
        })
        .prop_map(move |coeffs| {
            let mut p = Polynomial::zero(n);
            for (i, c) in coeffs.into_iter().enumerate() {
                p = p.add(&Polynomial::var(n, i).pow(d).scale(&rat(c))).unwrap();
            }
            Form::from_poly(p).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_axioms(p in polynomial(3), q in polynomial(3), r in polynomial(3)) {
        let a = p.add(&q).unwrap().add(&r).unwrap();
        let b = p.add(&q.add(&r).unwrap()).unwrap();
        prop_assert_eq!(a, b);
        let lhs = p.mul(&q.add(&r).unwrap()).unwrap();
        let rhs = p.mul(&q).unwrap().add(&p.mul(&r).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(p.mul(&q).unwrap(), q.mul(&p).unwrap());
    }

    #[test]
    fn exact_div_recovers_factor(p in nonzero_polynomial(3), q in nonzero_polynomial(3)) {
        let prod = p.mul(&q).unwrap();
        prop_assert_eq!(prod.exact_div(&q).unwrap(), p);
    }

    #[test]
    fn diff_linear_and_leibniz(p in polynomial(3), q in polynomial(3), i in 0usize..3) {
        let sum_diff = p.add(&q).unwrap().diff(i).unwrap();
        let diff_sum = p.diff(i).unwrap().add(&q.diff(i).unwrap()).unwrap();
        prop_assert_eq!(sum_diff, diff_sum);
        let prod_diff = p.mul(&q).unwrap().diff(i).unwrap();
        let leibniz = p
            .diff(i).unwrap().mul(&q).unwrap()
            .add(&p.mul(&q.diff(i).unwrap()).unwrap()).unwrap();
        prop_assert_eq!(prod_diff, leibniz);
    }

    #[test]
    fn subst_linear_composes(p in polynomial(3), a in rational_matrix(3), b in rational_matrix(3)) {
        let step = p.subst_linear(&a).unwrap().subst_linear(&b).unwrap();
        let joint = p.subst_linear(&a.mat_mul(&b).unwrap()).unwrap();
        prop_assert_eq!(step, joint);
    }

    #[test]
    fn evaluate_is_multiplicative(
        p in polynomial(3),
        q in polynomial(3),
        v in proptest::collection::vec(rational(), 3),
    ) {
        let prod = p.mul(&q).unwrap().evaluate(&v).unwrap();
        prop_assert_eq!(prod, p.evaluate(&v).unwrap() * q.evaluate(&v).unwrap());
        let sum = p.add(&q).unwrap().evaluate(&v).unwrap();
        prop_assert_eq!(sum, p.evaluate(&v).unwrap() + q.evaluate(&v).unwrap());
    }

    #[test]
    fn kernel_and_rank(m in proptest::collection::vec(rational(), 12)
        .prop_map(|v| Mat::from_vec(3, 4, v)))
    {
        let kernel = m.kernel_basis();
        prop_assert_eq!(m.rank() + kernel.len(), 4);
        for k in &kernel {
            let image = m.apply(k).unwrap();
            prop_assert!(image.iter().all(|x| x == &rat(0)));
        }
    }

    #[test]
    fn inverse_roundtrip(m in rational_matrix(3)) {
        if let Ok(inv) = m.invert() {
            prop_assert_eq!(inv.mat_mul(&m).unwrap(), Mat::identity(3));
        } else {
            prop_assert!(m.rank() < 3);
        }
    }

    #[test]
    fn transpose_of_product(a in rational_matrix(3), b in rational_matrix(3)) {
        let lhs = a.mat_mul(&b).unwrap().transpose();
        let rhs = b.transpose().mat_mul(&a.transpose()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn factor_product_roundtrip(
        coeffs in proptest::collection::vec(-4i64..=4, 2..6)
            .prop_filter("nonzero lead", |v| *v.last().unwrap() != 0),
    ) {
        let u = UniPoly::from_ints(&coeffs);
        let f = factor_rational_poly(&u);
        prop_assert_eq!(f.product(), u);
    }
}

proptest! {
    // Symbolic checks with Hessians and centers are heavier; fewer cases.
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn euler_relation(p in polynomial(3).prop_filter("cubic form", |p| {
        p.homogeneous_degree() == Some(3)
    })) {
        let d = 3u32;
        let mut lhs = Polynomial::zero(3);
        for i in 0..3 {
            lhs = lhs
                .add(&Polynomial::var(3, i).mul(&p.diff(i).unwrap()).unwrap())
                .unwrap();
        }
        prop_assert_eq!(lhs, p.scale(&rat(d.into())));
    }

    #[test]
    fn hessian_base_change(f in diagonal_form(3, 3), p in invertible_matrix(3)) {
        let g = f.change_vars(&p).unwrap();
        // H_g(y) = P^T H_f(P y) P
        let n = 3;
        let p_poly = Mat::from_fn(n, n, |i, j| {
            Polynomial::constant(n, p.get(i, j).clone())
        });
        let h_at_py = Mat::from_fn(n, n, |i, j| {
            f.hessian().get(i, j).subst_linear(&p).unwrap()
        });
        let expect = p_poly
            .transpose()
            .mat_mul(&h_at_py).unwrap()
            .mat_mul(&p_poly).unwrap();
        prop_assert_eq!(g.hessian().clone(), expect);
    }

    #[test]
    fn tensor_reconstructs(f in diagonal_form(3, 4), p in invertible_matrix(3)) {
        let g = f.change_vars(&p).unwrap();
        prop_assert_eq!(g.tensor().reconstruct(), g.poly().clone());
    }

    #[test]
    fn center_membership_and_closure(f in diagonal_form(3, 3), p in invertible_matrix(3)) {
        let g = f.change_vars(&p).unwrap();
        let cb = center_basis(&g).unwrap();
        let span = cb.canonical_span();
        for x in &cb.basis {
            prop_assert!(is_central(&g, x).unwrap());
        }
        // identity in the span: adjoining it does not grow the RREF
        let mut with_id = cb.basis.clone();
        with_id.push(Mat::identity(3));
        prop_assert_eq!(canonical_span_of(&with_id, 3), span.clone());
        // closure and commutativity of basis products
        for x in &cb.basis {
            for y in &cb.basis {
                let xy = x.mat_mul(y).unwrap();
                prop_assert_eq!(xy.clone(), y.mat_mul(x).unwrap());
                let mut adjoined = cb.basis.clone();
                adjoined.push(xy);
                prop_assert_eq!(canonical_span_of(&adjoined, 3), span.clone());
            }
        }
    }

    #[test]
    fn center_conjugation_equivariance(f in diagonal_form(3, 3), p in invertible_matrix(3)) {
        let g = f.change_vars(&p).unwrap();
        let inv = p.invert().unwrap();
        let conjugated: Vec<Mat<Rational>> = center_basis(&f)
            .unwrap()
            .basis
            .iter()
            .map(|x| inv.mat_mul(x).unwrap().mat_mul(&p).unwrap())
            .collect();
        prop_assert_eq!(
            center_basis(&g).unwrap().canonical_span(),
            canonical_span_of(&conjugated, 3)
        );
    }

    #[test]
    fn center_scaling_invariance(f in diagonal_form(3, 3), c in 1i64..=7) {
        let scaled = Form::from_poly(f.poly().scale(&rat(c))).unwrap();
        prop_assert_eq!(
            center_basis(&scaled).unwrap().canonical_span(),
            center_basis(&f).unwrap().canonical_span()
        );
    }

    #[test]
    fn center_direct_sum_additivity(f in diagonal_form(2, 4), g in diagonal_form(2, 4)) {
        let sum = Form::direct_sum(&[f.clone(), g.clone()]).unwrap();
        prop_assert_eq!(
            center_dim(&sum).unwrap(),
            center_dim(&f).unwrap() + center_dim(&g).unwrap()
        );
    }

    #[test]
    fn idempotent_axioms_and_uniqueness(f in diagonal_form(3, 3), p in invertible_matrix(3)) {
        let g = f.change_vars(&p).unwrap();
        let algebra = CommAlgebra::from_matrix_span(&center_basis(&g).unwrap().basis).unwrap();
        let set = algebra.split_idempotents(0).unwrap();
        prop_assert!(verify_idempotent_axioms(&algebra, &set));
        for seed in [1u64, 42] {
            prop_assert_eq!(
                algebra.split_idempotents(seed).unwrap().matrices,
                set.matrices.clone()
            );
        }
        // dim(A) = sum of dim(e_i A)
        let total: usize = set
            .elements
            .iter()
            .map(|e| algebra.left_mult_operator(e).rank())
            .sum();
        prop_assert_eq!(total, algebra.dim());
    }

    #[test]
    fn decompose_soundness(f in diagonal_form(3, 3), p in invertible_matrix(3)) {
        let g = f.change_vars(&p).unwrap();
        let dec = decompose(&g).unwrap();
        prop_assert!(verify_decomposition(&g, &dec));
        prop_assert_eq!(dec.block_count(), 3);
    }

    #[test]
    fn witness_permutation_invariance(
        d in 3u32..=5,
        perm_seed in 0usize..24,
    ) {
        let mut spec = corollary33_witness(d, 4).unwrap();
        // apply one of the 4! permutations of the z rows
        let mut order: Vec<usize> = (0..4).collect();
        let mut s = perm_seed;
        for i in (1..4).rev() {
            order.swap(i, s % (i + 1));
            s /= i + 1;
        }
        let rows = spec.numerators.clone();
        spec.numerators = order.into_iter().map(|i| rows[i].clone()).collect();
        prop_assert!(verify_power_identity(&spec).unwrap().0);
    }
}
