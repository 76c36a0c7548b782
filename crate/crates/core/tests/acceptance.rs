//! Acceptance suite: prints one PASS or FAIL line per criterion.
//!
//! Runs as a plain program (`harness = false`), so the lines always appear in
//! the `cargo test` output. Criterion 9 runs its `k = 1` scans by default and
//! adds the exhaustive `k = 2`, `B = 2` scans when invoked with `--ignored` or
//! `--include-ignored`:
//!
//! ```text
//! cargo test --release --test acceptance -- --ignored
//! ```
//!
//! The program exits successfully when the failing criteria are exactly the
//! expected ones. Criterion 5 is expected to fail: two of the printed `λ = 0`
//! data sets are not solutions (see the README).

mod common;

use std::collections::BTreeSet;
use std::fs;
use std::process::ExitCode;
use std::time::Instant;

use g2het::bundle::{bundle_check, split_gauge};
use g2het::cli::{parse_algebra, parse_problem, render_algebra};
use g2het::g2::{classify, standard_phi, standard_psi, torsion, torsion_h};
use g2het::hetsys::{scal_identity_check, verify, GaugeField};
use g2het::nilalg::{catalog, catalog_entry, LieAlgebra};
use g2het::search::{endomorphism_orbit_key, nonexistence_report, search, Reduction, SearchSpec};
use g2het::su2red::{self, dh_closed_form, system_check, GaugeComponents};
use g2het::su3red;
use g2het::{int, rat, Form, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::bundle_oracle::{random_closed_form, random_element, Oracle};
use common::curvature::scal_oracle;
use common::solutions::{golden_dir, published, Known};

/// Criteria expected to fail, with the reason recorded in the README.
const EXPECTED_FAILURES: [u32; 1] = [5];

struct Verdict {
    pass: bool,
    detail: String,
}

impl Verdict {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Verdict {
            pass,
            detail: detail.into(),
        }
    }
}

fn e7(ix: &[usize]) -> Form {
    Form::e(7, ix)
}

fn omega7() -> Form {
    e7(&[1, 2]) + e7(&[3, 4]) + e7(&[5, 6])
}

fn hodge_consistency() -> Verdict {
    let phi: Form = standard_phi();
    let psi: Form = standard_psi();
    let star = phi.hodge();
    let same = star.len() == 7 && psi.len() == 7 && star.terms().eq(psi.terms());
    Verdict::new(same, format!("*phi has {} terms, psi has {}", star.len(), psi.len()))
}

fn catalog_check() -> Verdict {
    let cat = catalog();
    let mut bad = Vec::new();
    for e in &cat {
        let d = e.algebra.validate();
        if !d.passed() || d.derived_dim != e.derived_dim {
            bad.push(e.name);
        }
    }
    let prints: Vec<_> = cat.iter().map(|e| e.algebra.fingerprint()).collect();
    let distinct = (0..prints.len()).all(|i| (i + 1..prints.len()).all(|j| prints[i] != prints[j]));
    let groups: Vec<usize> = (1..=3).map(|n| cat.iter().filter(|e| e.derived_dim == n).count()).collect();
    Verdict::new(
        bad.is_empty() && distinct && groups == [3, 6, 7],
        format!(
            "{} entries grouped {:?} by derived dimension, invalid: {:?}, fingerprints distinct: {distinct}",
            cat.len(),
            groups,
            bad
        ),
    )
}

/// `de⁴ = e¹³`, `de⁶ = e¹⁵`, `de⁷ = −e³⁵`.
fn notcal() -> LieAlgebra {
    let z = || Form::zero(7, 2);
    LieAlgebra::new(vec![z(), z(), z(), e7(&[1, 3]), z(), e7(&[1, 5]), -e7(&[3, 5])]).unwrap()
}

fn torsion_vectors() -> Verdict {
    let t = torsion(&notcal()).unwrap();
    let c = t.classify();
    let notcal_ok = t.tau2.is_zero() && t.tau1 == e7(&[2]).scale(&rat(1, 4)) && !c.coclosed;
    let h7 = LieAlgebra::center_last(7, vec![omega7()]).unwrap();
    let th = torsion(&h7).unwrap();
    let h7_ok = th.tau1.is_zero() && th.tau2.is_zero() && th.lambda == rat(1, 2);
    Verdict::new(
        notcal_ok && h7_ok,
        format!(
            "notcal: tau1 = {}, tau2 = {}, coclosed = {}; h7: tau1 = {}, tau2 = {}, lambda = {}",
            t.tau1, t.tau2, c.coclosed, th.tau1, th.tau2, th.lambda
        ),
    )
}

fn coclosed_property(solutions: &[Known]) -> Verdict {
    let mut algebras: Vec<(String, LieAlgebra)> = catalog().into_iter().map(|e| (e.name.to_string(), e.algebra)).collect();
    algebras.extend(solutions.iter().map(|k| (k.label.to_string(), k.algebra.clone())));
    let mut g2t = 0;
    let mut bad = Vec::new();
    for (name, a) in &algebras {
        let c = classify(a).unwrap();
        if c.g2t {
            g2t += 1;
            if !c.coclosed {
                bad.push(name.clone());
            }
        }
    }
    Verdict::new(
        bad.is_empty(),
        format!("{} algebras (catalog and published), {g2t} G2T, all coclosed except {:?}", algebras.len(), bad),
    )
}

fn published_solutions(solutions: &[Known]) -> Verdict {
    let mut bad = Vec::new();
    for k in solutions {
        let r = verify(&k.algebra, &k.gauge).unwrap();
        if !(r.passed() && r.lambda == k.lambda && r.signature == k.signature) {
            let failing: Vec<String> = r.lines().iter().filter(|l| !l.passed()).map(|l| l.to_string()).collect();
            bad.push(format!("{} (lambda = {}: {})", k.label, r.lambda, failing.join(", ")));
        }
    }
    Verdict::new(
        bad.is_empty(),
        format!(
            "{} of {} pass; printed data that fail: {}",
            solutions.len() - bad.len(),
            solutions.len(),
            if bad.is_empty() { "none".to_string() } else { bad.join("; ") }
        ),
    )
}

fn scal_identity(solutions: &[Known]) -> Verdict {
    let mut oracle_ok = true;
    let mut algebras: Vec<LieAlgebra> = catalog().into_iter().map(|e| e.algebra).collect();
    algebras.extend(solutions.iter().map(|k| k.algebra.clone()));
    for a in &algebras {
        let closed: Rational = a.alphas().iter().map(Form::norm2).sum::<Rational>() * rat(-1, 2);
        oracle_ok &= a.scalar_curvature() == scal_oracle(a) && a.scalar_curvature() == closed;
    }
    let mut zero = 0;
    let mut bad = Vec::new();
    let mut excluded = Vec::new();
    for k in solutions {
        if !verify(&k.algebra, &k.gauge).unwrap().passed() {
            let res = scal_identity_check(&k.algebra, &k.gauge)
                .map_or_else(|e| e.to_string(), |r| format!("residual {r}"));
            excluded.push(format!("{} ({res})", k.label));
            continue;
        }
        match scal_identity_check(&k.algebra, &k.gauge) {
            Ok(r) if r == int(0) => zero += 1,
            other => bad.push(format!("{}: {other:?}", k.label)),
        }
    }
    Verdict::new(
        oracle_ok && bad.is_empty(),
        format!(
            "residual 0 on {zero} solutions, nonzero on {:?}; curvature oracle agrees on {} algebras: {oracle_ok}; not solutions: {}",
            bad,
            algebras.len(),
            excluded.join(", ")
        ),
    )
}

/// `H = 2λφ − (4λω − α₀) ∧ e⁷` for derived dimension one, `α = 2λω + α₀`.
fn line_centre_h(a: &LieAlgebra) -> Option<Form> {
    let s = su3red::SU3Split::of(a).ok()?;
    let lambda = s.b / int(2);
    let alpha0 = su3red::lift(&s.alpha0);
    let phi: Form = standard_phi();
    Some(phi.scale(&(lambda.clone() * int(2))) - (omega7().scale(&(lambda * int(4))) - alpha0).wedge(&e7(&[7])))
}

fn dh_cross_check(solutions: &[Known]) -> Verdict {
    let mut algebras: Vec<(String, LieAlgebra)> = catalog().into_iter().map(|e| (e.name.to_string(), e.algebra)).collect();
    algebras.extend(solutions.iter().map(|k| (k.label.to_string(), k.algebra.clone())));
    let mut checked = Vec::new();
    let mut bad = Vec::new();
    let mut skipped = Vec::new();
    for (name, a) in &algebras {
        if !classify(a).unwrap().g2t {
            continue;
        }
        let dh = a.d(&torsion_h(a).unwrap());
        let closed = if a.derived_dim() == 1 {
            line_centre_h(a).map(|h| a.d(&h))
        } else {
            dh_closed_form(a).ok()
        };
        match closed {
            Some(c) if c == dh => checked.push(name.clone()),
            Some(_) => bad.push(name.clone()),
            None => skipped.push(name.clone()),
        }
    }
    Verdict::new(
        bad.is_empty() && skipped.is_empty() && !checked.is_empty(),
        format!(
            "{} G2T algebras (catalog and published) agree; disagreeing: {bad:?}; without closed form: {skipped:?}",
            checked.len()
        ),
    )
}

fn random_components(rng: &mut ChaCha8Rng, alphas_norm: &Rational) -> (GaugeComponents, Rational) {
    let e4 = |ix: &[usize]| Form::e(4, ix);
    let asd = [e4(&[1, 2]) - e4(&[3, 4]), e4(&[1, 3]) + e4(&[2, 4]), e4(&[1, 4]) - e4(&[2, 3])];
    let mut f0 = Form::zero(4, 2);
    for b in &asd {
        f0 = f0 + b.scale(&int(rng.gen_range(-1..=1)));
    }
    if rng.gen_bool(0.2) {
        f0 = f0 + (e4(&[1, 2]) + e4(&[3, 4])).scale(&int(rng.gen_range(-1..=1)));
    }
    let mut v: [Form; 3] = std::array::from_fn(|_| Form::zero(4, 1));
    if rng.gen_bool(0.5) {
        for vi in v.iter_mut().take(2) {
            for i in 1..=4 {
                *vi = vi.clone() + e4(&[i]).scale(&int(rng.gen_range(-1..=1)));
            }
        }
        v[2] = if rng.gen_bool(0.8) {
            -su2red::j_action(2, &v[0]) + su2red::j_action(1, &v[1])
        } else {
            e4(&[rng.gen_range(1..=4)])
        };
    }
    let norm = f0.norm2();
    let eps = if rng.gen_bool(0.5) && norm != int(0) {
        alphas_norm.clone() / norm
    } else {
        [rat(1, 2), int(1), int(2), int(-1), rat(-3, 2)][rng.gen_range(0..5)].clone()
    };
    (GaugeComponents::new(f0, v), eps)
}

fn system_equivalence(solutions: &[Known]) -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(0xfeed);
    let mut entries = 0;
    let mut agree = 0;
    let mut passing = 0;
    let mut disagree = Vec::new();
    let mut excluded = Vec::new();
    let mut compare = |name: &str, a: &LieAlgebra, comps: &[GaugeComponents], eps: &[Rational]| {
        let forms: Vec<Form> = comps.iter().map(GaugeComponents::ambient).collect();
        let full = verify(a, &GaugeField::new(forms, eps.to_vec()).unwrap()).unwrap().passed();
        match system_check(a, comps, eps) {
            Ok(lines) if lines.iter().all(|l| l.passed()) == full => {
                agree += 1;
                passing += full as usize;
            }
            other => disagree.push(format!("{name}: {other:?}")),
        }
    };
    for e in catalog().into_iter().filter(|e| e.derived_dim >= 2) {
        if su2red::a_matrix(&e.algebra).is_err() {
            excluded.push(e.name);
            continue;
        }
        entries += 1;
        let norms: Rational = e.algebra.alphas().iter().map(Form::norm2).sum();
        for _ in 0..50 {
            let k = rng.gen_range(1..=2);
            let (comps, eps): (Vec<_>, Vec<_>) = (0..k).map(|_| random_components(&mut rng, &norms)).unzip();
            compare(e.name, &e.algebra, &comps, &eps);
        }
    }
    for k in solutions.iter().filter(|k| k.algebra.derived_dim() >= 2) {
        let comps: Vec<GaugeComponents> = k.gauge.forms().iter().map(|f| GaugeComponents::split(f).unwrap()).collect();
        compare(k.label, &k.algebra, &comps, k.gauge.eps());
    }
    Verdict::new(
        disagree.is_empty() && entries > 0,
        format!(
            "{entries} entries x 50 random candidates plus published data: {agree} agree ({passing} solutions), disagreements: {disagree:?}; outside the split normal form: {excluded:?}"
        ),
    )
}

fn nonzero_lambdas() -> Vec<Rational> {
    vec![int(-1), rat(-1, 2), rat(1, 2), int(1)]
}

fn nonexistence(slow: bool) -> Verdict {
    let l = nonzero_lambdas;
    let mut specs = vec![
        ("n'=1, k=1, (+)", SearchSpec::new(Reduction::Endomorphism, 1, 2, l()).with_signs(&[1])),
        ("n'=2, k=1", SearchSpec::new(Reduction::Components, 1, 2, l()).with_derived_dim(2)),
        ("n'=1, k=1, (-)", SearchSpec::new(Reduction::Endomorphism, 1, 2, l()).with_signs(&[-1])),
        ("n'=2,3, k=1, (-)", SearchSpec::new(Reduction::Components, 1, 2, l()).with_signs(&[-1])),
    ];
    if slow {
        specs.extend([
            ("n'=1, k=2, (+,-)", SearchSpec::new(Reduction::Endomorphism, 2, 2, l()).with_signs(&[1, -1])),
            ("n'=2, k=2", SearchSpec::new(Reduction::Components, 2, 2, l()).with_derived_dim(2)),
            ("n73A, k=2", SearchSpec::new(Reduction::Components, 2, 2, l()).with_target("n73A")),
            ("n'=1, k=2, (-,-)", SearchSpec::new(Reduction::Endomorphism, 2, 2, l()).with_signs(&[-1, -1])),
            ("n'=2,3, k=2, (-,-)", SearchSpec::new(Reduction::Components, 2, 2, l()).with_signs(&[-1, -1])),
        ]);
    }
    let mut bad = Vec::new();
    for (name, spec) in &specs {
        let report = nonexistence_report(spec).unwrap();
        if !report.holds() {
            bad.push(format!("{name}: {}", report.lines()[0]));
        }
    }
    let scope = if slow {
        "k = 1 and k = 2 scans"
    } else {
        "k = 1 scans only; the k = 2 scans run with --ignored"
    };
    Verdict::new(
        bad.is_empty(),
        format!("B = 2, lambda in {{-1, -1/2, 1/2, 1}}, {} boxes ({scope}), non-empty: {bad:?}", specs.len()),
    )
}

fn search_recovery(solutions: &[Known]) -> Verdict {
    let find = |label: &str| solutions.iter().find(|k| k.label == label).unwrap();
    let h5 = find("line_single_h5");
    let spec = SearchSpec::new(Reduction::Endomorphism, 1, 5, vec![int(0)])
        .with_signs(&[1])
        .with_target("h5+R2")
        .with_eps(vec![int(1)]);
    let r = search(&spec).unwrap();
    let key = endomorphism_orbit_key(&h5.algebra, &h5.gauge).unwrap();
    let h5_found = r.exhaustive
        && r.solutions.iter().any(|s| s.key == key && s.name == Some("h5+R2") && !s.family);

    let spec = SearchSpec::new(Reduction::Endomorphism, 2, 2, vec![rat(1, 2)]).with_signs(&[1, 1]);
    let r = search(&spec).unwrap();
    let mut found = 0;
    for (label, rank) in [("line_half_rank2", 2), ("line_half_rank4", 4), ("line_half_rank6", 6)] {
        let k = find(label);
        let key = endomorphism_orbit_key(&k.algebra, &k.gauge).unwrap();
        found += r
            .solutions
            .iter()
            .any(|s| s.key == key && s.report.passed() && s.algebra.differential(7).rank2() == rank) as usize;
    }
    let ordered = r
        .solutions
        .windows(2)
        .all(|w| (&w[0].lambda, &w[0].key) < (&w[1].lambda, &w[1].key));
    Verdict::new(
        h5_found && found == 3 && ordered && r.exhaustive,
        format!(
            "B = 5: h5 solution found: {h5_found}; B = 2, lambda = 1/2: {found} of 3 found among {} orbits, strictly ordered: {ordered}",
            r.solutions.len()
        ),
    )
}

fn bundle_integrality(solutions: &[Known]) -> Verdict {
    let mut passed = 0;
    let mut bad = Vec::new();
    for k in solutions {
        match bundle_check(&k.algebra, &k.gauge) {
            Ok(lines) if lines.iter().all(|l| l.passed()) => passed += 1,
            other => bad.push(format!("{}: {other:?}", k.label)),
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let cat = catalog();
    let mut oracle_agree = 0;
    for case in 0..20 {
        let alg = &cat[case % cat.len()].algebra;
        let f = random_closed_form(alg, &mut rng);
        let g = split_gauge(alg, &f).unwrap();
        let oracle = Oracle::new(alg, &f);
        let (m, nz) = (g.splitting.m(), g.splitting.nz());
        let mut ok = (0..m).all(|i| (0..m).all(|j| (0..m).all(|l| g.c[i][j][l] == oracle.c(i, j, l))));
        for factor in [1, 6] {
            let c1 = random_element(m, nz, factor, &mut rng);
            let c2 = random_element(m, nz, factor, &mut rng);
            ok &= g.cocycle_at(&c1, &c2) == oracle.cocycle(&c1, &c2);
        }
        oracle_agree += ok as usize;
    }
    Verdict::new(
        bad.is_empty() && oracle_agree == 20,
        format!(
            "factor-6 scan passes on {passed} of {} gauge fields, failures: {bad:?}; closed form agrees with the symbolic oracle on {oracle_agree} of 20 cases",
            solutions.len()
        ),
    )
}

fn parser_round_trip(solutions: &[Known]) -> Verdict {
    let dir = golden_dir();
    let mut bad = Vec::new();
    let mut files = 0;
    for k in solutions {
        let path = dir.join(format!("{}.problem", k.label));
        let Ok(text) = fs::read_to_string(&path) else {
            bad.push(format!("missing {}", path.display()));
            continue;
        };
        files += 1;
        let round = parse_problem(&text).map(|p| p.render());
        if round.as_deref() != Ok(text.as_str()) || k.problem().render() != text {
            bad.push(k.label.to_string());
        }
    }
    let tuples = fs::read_to_string(dir.join("catalog.tuples")).unwrap_or_default();
    let mut tuple_count = 0;
    for line in tuples.lines() {
        let Some((name, tuple)) = line.split_once(' ') else {
            bad.push(format!("bad catalog line {line:?}"));
            continue;
        };
        tuple_count += 1;
        let round = parse_algebra(tuple).map(|a| render_algebra(&a));
        let listed = catalog_entry(name).map(|e| e.tuple);
        if round.as_deref() != Ok(tuple) || listed.as_deref() != Some(tuple) {
            bad.push(name.to_string());
        }
    }
    Verdict::new(
        bad.is_empty() && files == solutions.len() && tuple_count == catalog().len(),
        format!("{files} problem files and {tuple_count} catalog tuples byte-exact; mismatches: {bad:?}"),
    )
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let slow = args.iter().any(|a| a == "--ignored" || a == "--include-ignored");
    let solutions = published();
    let criteria: Vec<(u32, &str, Box<dyn Fn() -> Verdict + '_>)> = vec![
        (1, "Hodge consistency", Box::new(hodge_consistency)),
        (2, "catalog validates, fingerprints distinct", Box::new(catalog_check)),
        (3, "torsion vectors", Box::new(torsion_vectors)),
        (4, "G2T implies coclosed", Box::new(|| coclosed_property(&solutions))),
        (5, "published solutions verify", Box::new(|| published_solutions(&solutions))),
        (6, "scalar curvature identity", Box::new(|| scal_identity(&solutions))),
        (7, "dH closed forms", Box::new(|| dh_cross_check(&solutions))),
        (8, "reduced system equals full system", Box::new(|| system_equivalence(&solutions))),
        (9, "bounded nonexistence", Box::new(move || nonexistence(slow))),
        (10, "search recovery", Box::new(|| search_recovery(&solutions))),
        (11, "bundle integrality", Box::new(|| bundle_integrality(&solutions))),
        (12, "parser round trip", Box::new(|| parser_round_trip(&solutions))),
    ];
    let mut failed = BTreeSet::new();
    for (n, title, run) in &criteria {
        let start = Instant::now();
        let v = run();
        let status = if v.pass { "PASS" } else { "FAIL" };
        println!(
            "{status} {n:>2} {title}: {} [{:.1}s]",
            v.detail,
            start.elapsed().as_secs_f64()
        );
        if !v.pass {
            failed.insert(*n);
        }
    }
    let expected: BTreeSet<u32> = EXPECTED_FAILURES.into_iter().collect();
    if failed == expected {
        println!("acceptance: failing criteria {failed:?} are exactly the expected ones");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failing criteria {failed:?}, expected {expected:?}");
        ExitCode::FAILURE
    }
}
