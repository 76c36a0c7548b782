//! Bounded searches: recovery of known solutions, empty boxes, symmetry keys
//! and spec files.
//!
//! The exhaustive `k = 2`, `B = 2` scans form a slow tier and are ignored by
//! default; run them with `cargo test --release --test search -- --ignored`.

use g2het::cli::parse_problem;
use g2het::hetsys::{verify, GaugeField};
use g2het::linalg::matmul;
use g2het::nilalg::{catalog_entry, LieAlgebra};
use g2het::search::*;
use g2het::su2red::{self, GaugeComponents};
use g2het::su3red::{self, endo_of_form, omega};
use g2het::{int, rat, Form, Rational};
use num_traits::Zero;

fn e4(ix: &[usize]) -> Form {
    Form::e(4, ix)
}

fn e6(ix: &[usize]) -> Form {
    Form::e(6, ix)
}

fn e7(ix: &[usize]) -> Form {
    Form::e(7, ix)
}

fn nonzero_lambdas() -> Vec<Rational> {
    vec![int(-1), rat(-1, 2), rat(1, 2), int(1)]
}

fn run(spec: &SearchSpec) -> SearchResult {
    let r = search(spec).unwrap();
    assert!(r.exhaustive);
    r
}

fn assert_empty(spec: SearchSpec) {
    let report = nonexistence_report(&spec).unwrap();
    assert!(report.holds(), "{:?}", report.lines());
    assert!(report.lines()[0].starts_with("no solutions within bound"));
}

/// `(λ, α₀, [(σ_r, ε_r)])` on the line-centre reduction, lifted to dimension 7.
fn line_centre(lambda: Rational, alpha0: Form, data: Vec<(Form, Rational)>) -> (LieAlgebra, GaugeField) {
    let alpha = omega().scale(&(lambda * int(2))) + alpha0;
    let alg = LieAlgebra::center_last(7, vec![su3red::lift(&alpha)]).unwrap();
    let (forms, eps) = data.into_iter().map(|(s, e)| (su3red::lift(&s), e)).unzip();
    (alg, GaugeField::new(forms, eps).unwrap())
}

/// The three solutions on two instantons with `λ = ½` and `rank α = 2, 4, 6`.
fn half_lambda_solutions() -> Vec<(LieAlgebra, GaugeField)> {
    let h = rat(1, 2);
    vec![
        line_centre(
            h.clone(),
            -e6(&[1, 2]) - e6(&[3, 4]) + e6(&[5, 6]).scale(&int(2)),
            vec![(e6(&[1, 2]) - e6(&[5, 6]), int(3)), (e6(&[3, 4]) - e6(&[5, 6]), int(3))],
        ),
        line_centre(
            h.clone(),
            -e6(&[1, 2]) + e6(&[5, 6]),
            vec![
                (-e6(&[1, 2]) + e6(&[3, 4]).scale(&int(2)) - e6(&[5, 6]), rat(1, 2)),
                (e6(&[1, 2]) - e6(&[5, 6]), rat(5, 2)),
            ],
        ),
        line_centre(
            h,
            Form::zero(6, 2),
            vec![
                (e6(&[1, 2]).scale(&int(-2)) + e6(&[3, 4]) + e6(&[5, 6]), rat(1, 2)),
                (e6(&[3, 4]) - e6(&[5, 6]), rat(3, 2)),
            ],
        ),
    ]
}

/// The `n'= 3` solution at `λ = 1`.
fn space_solution() -> (LieAlgebra, GaugeField) {
    let alg = LieAlgebra::center_last(
        7,
        vec![e7(&[2, 4]).scale(&int(-2)), e7(&[1, 4]).scale(&int(-2)), e7(&[1, 2]).scale(&int(2))],
    )
    .unwrap();
    let f1 = e7(&[1, 5]).scale(&int(2)) + e7(&[2, 6]) + e7(&[4, 7]);
    let f2 = e7(&[4, 6]).scale(&int(2)) + e7(&[2, 7]).scale(&int(2));
    (alg, GaugeField::new(vec![f1, f2], vec![int(2), rat(3, 2)]).unwrap())
}

#[test]
fn orbit_keys_ignore_documented_symmetries() {
    let (alg, gauge) = half_lambda_solutions().remove(1);
    let key = endomorphism_orbit_key(&alg, &gauge).unwrap();
    let f = gauge.forms();
    let e = gauge.eps();
    // Reorder, flip a sign and rescale F² by 2 with ε₂ divided by 4.
    let moved = GaugeField::new(
        vec![f[1].scale(&int(2)), -f[0].clone()],
        vec![e[1].clone() / int(4), e[0].clone()],
    )
    .unwrap();
    assert_eq!(endomorphism_orbit_key(&alg, &moved).unwrap(), key);

    let (alg, gauge) = space_solution();
    let key = component_orbit_key(&alg, &gauge).unwrap();
    let f = gauge.forms();
    let e = gauge.eps();
    let moved = GaugeField::new(vec![-f[1].clone(), f[0].scale(&int(3))], vec![e[1].clone(), e[0].clone() / int(9)])
        .unwrap();
    assert_eq!(component_orbit_key(&alg, &moved).unwrap(), key);
}

#[test]
fn space_solution_is_recovered() {
    let (alg, gauge) = space_solution();
    let key = component_orbit_key(&alg, &gauge).unwrap();
    let spec = SearchSpec::new(Reduction::Components, 2, 2, vec![int(1)]).with_derived_dim(3);
    let r = run(&spec);
    let hit = r.solutions.iter().find(|s| s.key == key).expect("recovered");
    assert_eq!(hit.name, Some("n63+R"));
    assert_eq!(hit.derived_dim, 3);
    let a = hit.algebra.alphas();
    for i in 0..3 {
        for j in 0..3 {
            assert!(a[i].wedge(&a[j]).is_zero());
        }
    }
}

#[test]
fn flat_lambda_components_are_recovered() {
    // n63+R with λ = 0 and F = e¹² − e³⁴, ε = Σ|αᵢ|²/2 = 3.
    let alphas = [e4(&[1, 3]), e4(&[2, 3]).scale(&int(2)), e4(&[1, 2])];
    let alg = LieAlgebra::center_last(7, alphas.iter().map(su2red::lift).collect()).unwrap();
    let f = GaugeComponents::new(e4(&[1, 2]) - e4(&[3, 4]), std::array::from_fn(|_| Form::zero(4, 1))).ambient();
    let gauge = GaugeField::new(vec![f], vec![int(3)]).unwrap();
    assert!(verify(&alg, &gauge).unwrap().passed());
    let key = component_orbit_key(&alg, &gauge).unwrap();
    let spec = SearchSpec::new(Reduction::Components, 1, 1, vec![int(0)]).with_structure(alg);
    let r = run(&spec);
    assert!(r.solutions.iter().any(|s| s.key == key));
    assert!(r.solutions.iter().all(|s| s.lambda.is_zero() && s.name == Some("n63+R")));
}

#[test]
fn no_single_positive_instanton_with_nonzero_lambda() {
    assert_empty(SearchSpec::new(Reduction::Endomorphism, 1, 3, nonzero_lambdas()).with_signs(&[1]));
}

#[test]
fn no_plane_centre_solutions_with_one_instanton() {
    assert_empty(SearchSpec::new(Reduction::Components, 1, 2, nonzero_lambdas()).with_derived_dim(2));
}

#[test]
fn no_solutions_with_negative_pairing_small_boxes() {
    assert_empty(SearchSpec::new(Reduction::Endomorphism, 1, 2, nonzero_lambdas()).with_signs(&[-1]));
    assert_empty(SearchSpec::new(Reduction::Components, 1, 2, nonzero_lambdas()).with_signs(&[-1]));
    assert_empty(SearchSpec::new(Reduction::Endomorphism, 2, 1, nonzero_lambdas()).with_signs(&[-1, -1]));
    assert_empty(SearchSpec::new(Reduction::Components, 2, 1, nonzero_lambdas()).with_signs(&[-1, -1]));
}

#[test]
fn pair_scans_in_the_unit_box() {
    let nz = nonzero_lambdas();
    assert_empty(SearchSpec::new(Reduction::Endomorphism, 2, 1, nz.clone()).with_signs(&[1, -1]));
    assert_empty(SearchSpec::new(Reduction::Components, 2, 1, nz.clone()).with_derived_dim(2));
    assert_empty(SearchSpec::new(Reduction::Components, 2, 1, nz).with_target("n73A"));
}

#[test]
fn h3_target_fails_the_rank_gate() {
    let spec = SearchSpec::new(Reduction::Endomorphism, 1, 2, vec![int(0)]).with_target("h3+R4");
    let report = nonexistence_report(&spec).unwrap();
    assert!(report.holds());
    assert!(report.result.gate_failures > 0);
    assert!(report.lines().iter().any(|l| l.contains("not a proof")));
}

/// `L²` of the endomorphism of a curvature form on the line-centre reduction.
fn square(f: &Form) -> Vec<Vec<Rational>> {
    let m = endo_of_form(&su3red::restrict(f)).unwrap().matrix();
    matmul(&m, &m)
}

#[test]
fn mixed_signs_force_flat_lambda_and_collinear_squares() {
    let mut lambdas = nonzero_lambdas();
    lambdas.push(int(0));
    let spec = SearchSpec::new(Reduction::Endomorphism, 2, 1, lambdas).with_signs(&[1, -1]);
    let r = run(&spec);
    assert!(!r.solutions.is_empty());
    for s in &r.solutions {
        assert!(s.lambda.is_zero());
        let (a, b) = (square(&s.gauge.forms()[0]), square(&s.gauge.forms()[1]));
        let (i, j) = (0..6)
            .flat_map(|i| (0..6).map(move |j| (i, j)))
            .find(|&(i, j)| !b[i][j].is_zero())
            .unwrap();
        let c = a[i][j].clone() / &b[i][j];
        assert!(c > int(0));
        for i in 0..6 {
            for j in 0..6 {
                assert_eq!(a[i][j], c.clone() * &b[i][j]);
            }
        }
    }
}

#[test]
fn output_is_deterministic_and_reverifies() {
    let spec = SearchSpec::new(Reduction::Components, 2, 1, nonzero_lambdas());
    let a = run(&spec);
    let b = run(&spec);
    let keys = |r: &SearchResult| r.solutions.iter().map(|s| s.key.clone()).collect::<Vec<_>>();
    assert!(!a.solutions.is_empty());
    assert_eq!(keys(&a), keys(&b));
    assert_eq!(a.candidates, b.candidates);
    for s in &a.solutions {
        let text = s.problem().render();
        let p = parse_problem(&text).unwrap();
        let report = verify(p.algebra.as_ref().unwrap(), p.gauge.as_ref().unwrap()).unwrap();
        assert!(report.passed(), "{text}");
        assert_eq!(report.lambda, s.lambda);
    }
}

#[test]
fn spec_files_round_trip() {
    let spec = SearchSpec::new(Reduction::Components, 2, 2, nonzero_lambdas())
        .with_signs(&[1, -1])
        .with_target("n63+R")
        .with_eps(vec![int(2), rat(-3, 2)]);
    let text = spec.to_problem().render();
    let back = SearchSpec::from_problem(&parse_problem(&text).unwrap()).unwrap();
    assert_eq!(back, spec);

    let grid = parse_problem("[options]\nreduction = endomorphism\nk = 1\nbound = 2\nlambda_max = 1\n").unwrap();
    let spec = SearchSpec::from_problem(&grid).unwrap();
    assert_eq!(spec.lambdas, lambda_grid(&int(1), &[1, 2]));
    assert_eq!(spec.lambdas.len(), 5);

    let bad = parse_problem("[options]\nreduction = endomorphism\nk = 1\nbound = 0\nlambda = 0\n").unwrap();
    assert!(matches!(SearchSpec::from_problem(&bad), Err(SearchError::InvalidSpec(_))));
    let bad = parse_problem("[options]\nreduction = lines\nk = 1\nbound = 1\nlambda = 0\n").unwrap();
    assert!(SearchSpec::from_problem(&bad).is_err());
}

#[test]
fn unsupported_and_invalid_specs() {
    let c = SearchSpec::new(Reduction::Components, 1, 1, vec![int(0)]);
    assert_eq!(search(&c), Err(SearchError::NeedsStructure));
    let k3 = SearchSpec::new(Reduction::Components, 3, 1, vec![int(1)]);
    assert!(matches!(search(&k3), Err(SearchError::Unsupported(_))));
    let wide = SearchSpec::new(Reduction::Endomorphism, 2, 4, vec![int(1)]);
    assert!(matches!(search(&wide), Err(SearchError::Unsupported(_))));
    let wrong = SearchSpec::new(Reduction::Endomorphism, 1, 1, vec![int(1)]).with_target("n63+R");
    assert!(matches!(search(&wrong), Err(SearchError::InvalidSpec(_))));
    let presets = open_question_presets();
    assert_eq!(presets.len(), 2);
    assert!(matches!(search(&presets[0].1), Err(SearchError::Unsupported(_))));
    assert_eq!(endomorphism_group_size(), 192);
    assert_eq!(component_group_size(), 64);
    assert!(catalog_entry("n63+R").is_some());
}

#[test]
#[ignore = "slow tier: k = 2, B = 2 scan"]
fn slow_no_mixed_sign_pairs_with_nonzero_lambda() {
    assert_empty(SearchSpec::new(Reduction::Endomorphism, 2, 2, nonzero_lambdas()).with_signs(&[1, -1]));
}

#[test]
#[ignore = "slow tier: k = 2, B = 2 scan"]
fn slow_no_plane_centre_pairs() {
    assert_empty(SearchSpec::new(Reduction::Components, 2, 2, nonzero_lambdas()).with_derived_dim(2));
}

#[test]
#[ignore = "slow tier: k = 2, B = 2 scan"]
fn slow_no_n73a_pairs() {
    assert_empty(SearchSpec::new(Reduction::Components, 2, 2, nonzero_lambdas()).with_target("n73A"));
}

#[test]
#[ignore = "slow tier: k = 2, B = 2 scan"]
fn slow_no_negative_pairs() {
    assert_empty(SearchSpec::new(Reduction::Endomorphism, 2, 2, nonzero_lambdas()).with_signs(&[-1, -1]));
    assert_empty(SearchSpec::new(Reduction::Components, 2, 2, nonzero_lambdas()).with_signs(&[-1, -1]));
}
