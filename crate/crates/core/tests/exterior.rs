//! Exterior algebra: worked examples and algebraic laws.

use g2het::exterior::{blades_of_degree, lefschetz_dual, merge_sign};
use g2het::g2::{standard_phi, standard_psi};
use g2het::{int, rat, Form, Rational};
use proptest::prelude::*;

fn e7(ix: &[usize]) -> Form {
    Form::e(7, ix)
}

fn e6(ix: &[usize]) -> Form {
    Form::e(6, ix)
}

fn e4(ix: &[usize]) -> Form {
    Form::e(4, ix)
}

#[test]
fn wedge_examples() {
    assert_eq!(e7(&[1]).wedge(&e7(&[2])), e7(&[1, 2]));

    let omega = e6(&[1, 2]) + e6(&[3, 4]) + e6(&[5, 6]);
    let expected = (e6(&[1, 2, 3, 4]) + e6(&[1, 2, 5, 6]) + e6(&[3, 4, 5, 6])).scale(&int(2));
    assert_eq!(omega.wedge(&omega), expected);

    // Oracle: expand the six cross terms of σ∧σ by hand. Only e13∧e24 and
    // e14∧e23 survive: 2(−4)(−4)e1324 + 2(3)(−3)e1423 = −32 e1234 − 18 e1234.
    let sigma = e4(&[1, 3]).scale(&int(-4)) + e4(&[1, 4]).scale(&int(3))
        - e4(&[2, 3]).scale(&int(3))
        - e4(&[2, 4]).scale(&int(4));
    let by_hand = e4(&[1, 3, 2, 4]).scale(&int(32)) + e4(&[1, 4, 2, 3]).scale(&int(-18));
    assert_eq!(by_hand, e4(&[1, 2, 3, 4]).scale(&int(-50)));
    assert_eq!(sigma.wedge(&sigma), by_hand);
    let alpha0 = e4(&[1, 2]).scale(&int(5)) - e4(&[3, 4]).scale(&int(5));
    assert_eq!(alpha0.wedge(&alpha0), by_hand);
}

#[test]
fn hodge_examples() {
    assert_eq!(standard_phi::<Rational>().hodge(), standard_psi());
    assert_eq!(e4(&[1, 2]).hodge(), e4(&[3, 4]));
    // (1,3,2,4) is an odd permutation.
    assert_eq!(merge_sign(0b0101, 0b1010), -1);
    assert_eq!(e4(&[1, 3]).hodge(), -e4(&[2, 4]));
}

#[test]
fn inner_examples() {
    assert_eq!((e4(&[1, 2]) - e4(&[3, 4])).norm2(), int(2));
    let lambda = int(1);
    let a = e4(&[1, 3]) - e4(&[2, 4]);
    let b = e4(&[2, 4]).scale(&(int(-2) * lambda));
    assert_eq!(a.inner(&b), int(2));
    assert_eq!((-(e6(&[3, 6]) + e6(&[4, 5]))).norm2(), int(2));
    // Mismatched shapes pair to zero.
    assert_eq!(e4(&[1, 2]).inner(&e4(&[1])), int(0));
}

#[test]
fn contraction_examples() {
    assert_eq!(e7(&[1]).contract(&e7(&[1, 2])), e7(&[2]));
    let psi: Form = standard_psi();
    let k = e7(&[2]).contract(&psi);
    for m in blades_of_degree(7, 3) {
        let c = Form::from_terms(7, 3, [(m, int(1))]).unwrap();
        assert_eq!(k.inner(&c), psi.inner(&e7(&[2]).wedge(&c)));
    }
    // ψ ⌟ (e² ∧ ψ) = |ψ|² e² − (terms cancelling by type), here 3 e².
    let dpsi = e7(&[2]).wedge(&psi);
    assert_eq!(psi.contract(&dpsi), e7(&[2]).scale(&int(3)));
}

/// Independent oracle for `Λ(σ∧σ)`: with `σ = ⟨A·,·⟩` (`A` skew and
/// commuting with `J`), the 2-form `2⟨A² J·,·⟩`, computed by matrices.
fn lefschetz_oracle(sigma: &Form) -> Form {
    let s = sigma.skew_matrix();
    // J as a matrix acting on column vectors: J e_{2k-1} = e_{2k}.
    let mut j = vec![vec![int(0); 6]; 6];
    for k in 0..3 {
        j[2 * k + 1][2 * k] = int(1);
        j[2 * k][2 * k + 1] = int(-1);
    }
    // σ(e_i, e_j) = ⟨A e_i, e_j⟩ = A[j][i], so A = Sᵀ.
    let a: Vec<Vec<Rational>> = (0..6).map(|r| (0..6).map(|c| s[c][r].clone()).collect()).collect();
    let a2j = g2het::linalg::matmul(&g2het::linalg::matmul(&a, &a), &j);
    // (x, y) ↦ 2⟨A² J x, y⟩ has matrix 2 (A² J)ᵀ.
    let m: Vec<Vec<Rational>> = (0..6)
        .map(|r| (0..6).map(|c| a2j[c][r].clone() * int(2)).collect())
        .collect();
    Form::from_skew_matrix(&m)
}

#[test]
fn lefschetz_examples() {
    let omega = e6(&[1, 2]) + e6(&[3, 4]) + e6(&[5, 6]);
    assert_eq!(lefschetz_dual(&omega.wedge(&omega)).unwrap(), omega.scale(&int(4)));
    assert!(lefschetz_dual(&Form::<Rational>::zero(6, 4)).unwrap().is_zero());
    let sigma = e6(&[1, 2]) - e6(&[3, 4]);
    assert_eq!(lefschetz_dual(&sigma.wedge(&sigma)).unwrap(), lefschetz_oracle(&sigma));
    let sigma = e6(&[1, 3]).scale(&int(-4)) + e6(&[1, 4]).scale(&int(3))
        - e6(&[2, 3]).scale(&int(3))
        - e6(&[2, 4]).scale(&int(4));
    assert_eq!(lefschetz_dual(&sigma.wedge(&sigma)).unwrap(), lefschetz_oracle(&sigma));
    assert!(lefschetz_dual(&omega).is_err());
}

#[test]
fn phi_wedge_psi_is_seven_volumes() {
    let phi: Form = standard_phi();
    assert_eq!(phi.wedge(&standard_psi()), Form::volume(7).scale(&int(7)));
    assert_eq!(phi.len(), 7);
    assert!(phi.terms().all(|(_, c)| *c == int(1) || *c == int(-1)));
}

fn arb_form(n: usize, p: usize) -> impl Strategy<Value = Form> {
    let blades = blades_of_degree(n, p);
    let count = blades.len();
    proptest::collection::vec((0..count, -5i64..=5, 1i64..=3), 0..=20.min(count.max(1)))
        .prop_map(move |terms| {
            Form::from_terms(
                n,
                p,
                terms.into_iter().map(|(b, num, den)| (blades[b], rat(num, den))),
            )
            .unwrap()
        })
}

fn arb_dim_deg() -> impl Strategy<Value = (usize, usize, usize, usize)> {
    (1usize..=7).prop_flat_map(|n| (Just(n), 0..=n, 0..=n, 0..=n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn wedge_is_graded_commutative_and_associative(
        (a, b, c) in arb_dim_deg().prop_flat_map(|(n, p, q, r)| (arb_form(n, p), arb_form(n, q), arb_form(n, r)))
    ) {
        let (p, q) = (a.degree(), b.degree());
        let sign = if (p * q) % 2 == 0 { int(1) } else { int(-1) };
        prop_assert_eq!(a.wedge(&b), b.wedge(&a).scale(&sign));
        prop_assert_eq!(a.wedge(&b).wedge(&c), a.wedge(&b.wedge(&c)));
    }

    #[test]
    fn hodge_is_an_involution_up_to_sign(
        a in (1usize..=7).prop_flat_map(|n| (0..=n).prop_flat_map(move |p| arb_form(n, p)))
    ) {
        let (n, p) = (a.dim(), a.degree());
        let sign = if (p * (n - p)) % 2 == 0 { int(1) } else { int(-1) };
        prop_assert_eq!(a.hodge().hodge(), a.scale(&sign));
        prop_assert_eq!(a.hodge().norm2(), a.norm2());
    }

    #[test]
    fn wedge_with_hodge_is_inner_product(
        (a, b) in (1usize..=7).prop_flat_map(|n| (0..=n).prop_flat_map(move |p| (arb_form(n, p), arb_form(n, p))))
    ) {
        let n = a.dim();
        prop_assert_eq!(a.wedge(&b.hodge()), Form::volume(n).scale(&a.inner(&b)));
    }

    #[test]
    fn contraction_is_adjoint_to_wedge(
        (a, b) in (1usize..=7).prop_flat_map(|n| (0..=n).prop_flat_map(move |q| (0..=q).prop_flat_map(move |p| (arb_form(n, p), arb_form(n, q)))))
    ) {
        let n = a.dim();
        let k = b.degree() - a.degree();
        let ab = a.contract(&b);
        for m in blades_of_degree(n, k) {
            let c = Form::from_terms(n, k, [(m, int(1))]).unwrap();
            prop_assert_eq!(ab.inner(&c), b.inner(&a.wedge(&c)));
        }
    }

    #[test]
    fn norm_vanishes_only_on_zero(a in (1usize..=7).prop_flat_map(|n| (0..=n).prop_flat_map(move |p| arb_form(n, p)))) {
        prop_assert_eq!(a.norm2() == int(0), a.is_zero());
        prop_assert!(a.norm2() >= int(0));
    }
}
