//! Bounded exact search for integral solutions of the reduced systems.
//!
//! Two reductions are searched.
//!
//! * [`Reduction::Endomorphism`] covers one-dimensional derived algebras. The
//!   data are trace-free Hermitian `3 × 3` matrices `H₀, H₁, …, H_k` with
//!   `α = 2λω + ⟨H₀J·,·⟩`, `F^r = ⟨H_rJ·,·⟩` and
//!   `H₀² + 8λ² I = Σ ε_r H_r²`.
//! * [`Reduction::Components`] covers derived dimension two and three. The
//!   data are the components `(v₁^r, v₂^r, F₀^r)` of each curvature form with
//!   `v₃^r = −J₂v₁^r + J₁v₂^r` and `F₀^r` anti-self-dual. For `λ ≠ 0` the
//!   structure forms are `α₁ = (1/2λ) Σ ε_r v₂^r∧v₃^r` and its cyclic
//!   companions; for `λ = 0` the structure is fixed by the caller.
//!
//! Every integer entry ranges over `[−B, B]`. The pairing coefficients are
//! either fixed or solved exactly; when they form a line of solutions one
//! deterministic representative is reported and the solution is flagged as a
//! family. Results are reduced modulo a finite group of structure-preserving
//! coordinate changes, flips `F^r ↦ −F^r`, reordering of the curvature forms
//! and rescaling `F^r ↦ tF^r, ε_r ↦ ε_r/t²`, and each orbit is reported
//! through its least representative in the encoding order. Every reported
//! solution has passed [`hetsys::verify`].

mod components;
mod eps;
mod lattice;
mod line;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicBool, Ordering};
use std::time::{Duration, Instant};

use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::cli::{parse_rationals, render_rationals, ParseError, ProblemFile};
use crate::hetsys::{self, GaugeField, VerificationReport};
use crate::nilalg::{catalog_entry, identify, LieAlgebra};
use crate::scalar::{int, Rational};

pub use components::component_group_size;
pub use line::endomorphism_group_size;

/// Which reduced system is searched.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reduction {
    /// Derived dimension one, Hermitian endomorphism data.
    Endomorphism,
    /// Derived dimension two or three, `(v₁, v₂, F₀)` component data.
    Components,
}

impl fmt::Display for Reduction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Reduction::Endomorphism => "endomorphism",
            Reduction::Components => "components",
        })
    }
}

/// Treatment of the pairing coefficients `ε_r`.
#[derive(Debug, Clone, PartialEq)]
pub enum EpsMode {
    /// Solve for `ε` exactly from the linear and quadratic conditions.
    Solve,
    /// Use the given values, matched up to reordering of the curvature forms.
    Fixed(Vec<Rational>),
}

/// Errors of the search front end.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SearchError {
    #[error("invalid search spec: {0}")]
    InvalidSpec(String),
    #[error("unsupported search: {0}")]
    Unsupported(String),
    #[error("lambda = 0 in the component reduction needs a fixed [algebra]")]
    NeedsStructure,
    /// A candidate accepted by the reduced equations failed full verification.
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

impl From<ParseError> for SearchError {
    fn from(e: ParseError) -> Self {
        SearchError::InvalidSpec(e.to_string())
    }
}

/// What to search for.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchSpec {
    pub reduction: Reduction,
    /// Number of curvature forms.
    pub k: usize,
    /// Required signs of `ε`, as a multiset. `None` accepts every sign.
    pub signs: Option<Vec<i8>>,
    /// Coefficient bound `B`.
    pub bound: i64,
    /// Candidate values of `λ`.
    pub lambdas: Vec<Rational>,
    pub eps: EpsMode,
    /// Keep only solutions with this derived dimension.
    pub derived_dim: Option<usize>,
    /// Keep only solutions on this catalog algebra.
    pub target: Option<String>,
    /// Keep only solutions with `rank α` equal to this (endomorphism reduction).
    pub alpha_rank: Option<usize>,
    /// Fixed structure for `λ = 0` in the component reduction.
    pub structure: Option<LieAlgebra>,
    /// Wall-clock budget; the result is marked non-exhaustive when it runs out.
    pub budget: Option<Duration>,
}

/// All rationals `p/q` with `q` in `denominators` and `|p/q| ≤ max`, sorted.
pub fn lambda_grid(max: &Rational, denominators: &[i64]) -> Vec<Rational> {
    let mut out = Vec::new();
    for &q in denominators {
        if q <= 0 {
            continue;
        }
        let top = (max.clone() * int(q)).floor().to_integer().to_i64().unwrap_or(0);
        for p in -top..=top {
            out.push(Rational::new(p.into(), q.into()));
        }
    }
    out.sort();
    out.dedup();
    out
}

impl SearchSpec {
    /// A spec with `ε` solved, no sign or shape filters and no budget.
    pub fn new(reduction: Reduction, k: usize, bound: i64, lambdas: Vec<Rational>) -> Self {
        SearchSpec {
            reduction,
            k,
            signs: None,
            bound,
            lambdas,
            eps: EpsMode::Solve,
            derived_dim: None,
            target: None,
            alpha_rank: None,
            structure: None,
            budget: None,
        }
    }

    pub fn with_signs(mut self, signs: &[i8]) -> Self {
        self.signs = Some(signs.to_vec());
        self
    }

    pub fn with_derived_dim(mut self, n: usize) -> Self {
        self.derived_dim = Some(n);
        self
    }

    pub fn with_target(mut self, name: &str) -> Self {
        self.target = Some(name.to_string());
        self
    }

    pub fn with_alpha_rank(mut self, r: usize) -> Self {
        self.alpha_rank = Some(r);
        self
    }

    pub fn with_structure(mut self, alg: LieAlgebra) -> Self {
        self.structure = Some(alg);
        self
    }

    pub fn with_eps(mut self, eps: Vec<Rational>) -> Self {
        self.eps = EpsMode::Fixed(eps);
        self
    }

    pub fn with_budget(mut self, budget: Duration) -> Self {
        self.budget = Some(budget);
        self
    }

    /// Checks the invariants `B ≥ 1`, `k ≥ 1` and the consistency of filters.
    pub fn validate(&self) -> Result<(), SearchError> {
        let bad = |m: String| Err(SearchError::InvalidSpec(m));
        if self.bound < 1 {
            return bad(format!("bound must be at least 1, got {}", self.bound));
        }
        if self.k < 1 {
            return bad("k must be at least 1".into());
        }
        if self.lambdas.is_empty() {
            return bad("empty lambda set".into());
        }
        if let Some(s) = &self.signs {
            if s.len() != self.k || s.iter().any(|&x| x != 1 && x != -1) {
                return bad(format!("sign pattern must have {} entries of + or -", self.k));
            }
        }
        if let EpsMode::Fixed(e) = &self.eps {
            if e.len() != self.k || e.iter().any(Zero::is_zero) {
                return bad(format!("fixed eps must have {} nonzero entries", self.k));
            }
        }
        if let Some(t) = &self.target {
            if catalog_entry(t).is_none() {
                return bad(format!("unknown target algebra {t}"));
            }
        }
        match (self.reduction, self.derived_dim) {
            (Reduction::Endomorphism, Some(n)) if n != 1 => {
                return bad(format!("endomorphism reduction has derived dimension 1, not {n}"))
            }
            (Reduction::Components, Some(n)) if !(2..=3).contains(&n) => {
                return bad(format!("component reduction has derived dimension 2 or 3, not {n}"))
            }
            _ => {}
        }
        if self.alpha_rank.is_some() && self.reduction != Reduction::Endomorphism {
            return bad("alpha_rank applies to the endomorphism reduction".into());
        }
        if self.structure.is_some() && self.reduction != Reduction::Components {
            return bad("a fixed structure applies to the component reduction".into());
        }
        if self.k > 2 {
            return Err(SearchError::Unsupported(format!(
                "k = {} (the enumeration covers k = 1 and k = 2)",
                self.k
            )));
        }
        Ok(())
    }

    /// Reads a spec from the `[options]` (and optional `[algebra]`) of a
    /// problem file. Keys: `reduction` (`endomorphism` | `components`), `k`,
    /// `signs` (e.g. `+,-`), `bound`, `lambda` (list) or `lambda_max` with
    /// `lambda_denominators` (default `1, 2`), `eps` (`solve` or a list),
    /// `derived_dim`, `target`, `alpha_rank`, `budget_seconds`.
    pub fn from_problem(p: &ProblemFile) -> Result<Self, SearchError> {
        let bad = |m: String| SearchError::InvalidSpec(m);
        let known = [
            "reduction",
            "k",
            "signs",
            "bound",
            "lambda",
            "lambda_max",
            "lambda_denominators",
            "eps",
            "derived_dim",
            "target",
            "alpha_rank",
            "budget_seconds",
        ];
        for (key, _) in &p.options {
            if !known.contains(&key.as_str()) {
                return Err(bad(format!("unknown option {key}")));
            }
        }
        let uint = |key: &str| -> Result<Option<usize>, SearchError> {
            p.option(key)
                .map(|v| v.trim().parse::<usize>().map_err(|_| bad(format!("{key} must be a nonnegative integer"))))
                .transpose()
        };
        let reduction = match p.option("reduction").map(str::trim) {
            Some("endomorphism") => Reduction::Endomorphism,
            Some("components") => Reduction::Components,
            Some(other) => return Err(bad(format!("unknown reduction {other}"))),
            None => return Err(bad("missing option reduction".into())),
        };
        let k = uint("k")?.ok_or_else(|| bad("missing option k".into()))?;
        let bound = uint("bound")?.ok_or_else(|| bad("missing option bound".into()))? as i64;
        let lambdas = match p.option("lambda") {
            Some(list) => parse_rationals(list)?,
            None => {
                let max = match p.option("lambda_max") {
                    Some(v) => parse_single_rational(v)?,
                    None => int(1),
                };
                let dens = match p.option("lambda_denominators") {
                    Some(v) => parse_rationals(v)?
                        .iter()
                        .map(|r| r.to_integer().to_i64().filter(|_| r.is_integer()))
                        .collect::<Option<Vec<i64>>>()
                        .ok_or_else(|| bad("lambda_denominators must be integers".into()))?,
                    None => vec![1, 2],
                };
                lambda_grid(&max, &dens)
            }
        };
        let mut spec = SearchSpec::new(reduction, k, bound, lambdas);
        if let Some(s) = p.option("signs") {
            spec.signs = Some(parse_signs(s)?);
        }
        if let Some(e) = p.option("eps") {
            if e.trim() != "solve" {
                spec.eps = EpsMode::Fixed(parse_rationals(e)?);
            }
        }
        spec.derived_dim = uint("derived_dim")?;
        spec.target = p.option("target").map(|t| t.trim().to_string());
        spec.alpha_rank = uint("alpha_rank")?;
        spec.structure = p.algebra.clone();
        if let Some(b) = uint("budget_seconds")? {
            spec.budget = Some(Duration::from_secs(b as u64));
        }
        spec.validate()?;
        Ok(spec)
    }

    /// The spec as a problem file with an `[options]` section.
    pub fn to_problem(&self) -> ProblemFile {
        let mut o: Vec<(String, String)> = vec![
            ("reduction".into(), self.reduction.to_string()),
            ("k".into(), self.k.to_string()),
        ];
        if let Some(s) = &self.signs {
            let s: Vec<&str> = s.iter().map(|&x| if x > 0 { "+" } else { "-" }).collect();
            o.push(("signs".into(), s.join(", ")));
        }
        o.push(("bound".into(), self.bound.to_string()));
        o.push(("lambda".into(), render_rationals(&self.lambdas)));
        if let EpsMode::Fixed(e) = &self.eps {
            o.push(("eps".into(), render_rationals(e)));
        }
        if let Some(n) = self.derived_dim {
            o.push(("derived_dim".into(), n.to_string()));
        }
        if let Some(t) = &self.target {
            o.push(("target".into(), t.clone()));
        }
        if let Some(r) = self.alpha_rank {
            o.push(("alpha_rank".into(), r.to_string()));
        }
        if let Some(b) = self.budget {
            o.push(("budget_seconds".into(), b.as_secs().to_string()));
        }
        ProblemFile {
            algebra: self.structure.clone(),
            gauge: None,
            options: o,
        }
    }
}

fn parse_single_rational(text: &str) -> Result<Rational, SearchError> {
    let v = parse_rationals(text)?;
    match v.as_slice() {
        [r] => Ok(r.clone()),
        _ => Err(SearchError::InvalidSpec(format!("expected one rational, got {text:?}"))),
    }
}

fn parse_signs(text: &str) -> Result<Vec<i8>, SearchError> {
    text.split(',')
        .map(|s| match s.trim() {
            "+" => Ok(1),
            "-" => Ok(-1),
            other => Err(SearchError::InvalidSpec(format!("bad sign {other:?}, expected + or -"))),
        })
        .collect()
}

/// Predefined targets for signature questions the existence results leave
/// open. Running them asserts nothing; the first needs `k = 3`, which the
/// enumeration does not cover and reports as unsupported.
pub fn open_question_presets() -> Vec<(&'static str, SearchSpec)> {
    let lambdas = lambda_grid(&int(1), &[1, 2]).into_iter().filter(|l| !l.is_zero()).collect::<Vec<_>>();
    vec![
        (
            "n52+R2 signature (1,2)",
            SearchSpec::new(Reduction::Components, 3, 1, lambdas.clone())
                .with_signs(&[1, -1, -1])
                .with_target("n52+R2"),
        ),
        (
            "n63+R signature (1,1)",
            SearchSpec::new(Reduction::Components, 2, 1, lambdas)
                .with_signs(&[1, -1])
                .with_target("n63+R"),
        ),
    ]
}

/// Canonical encoding of a symmetry orbit of solutions. Solutions with equal
/// keys are equivalent under the documented symmetries.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrbitKey(pub(crate) Vec<i64>);

pub(crate) fn push_rational(out: &mut Vec<i64>, r: &Rational) {
    out.push(r.numer().to_i64().expect("small numerator"));
    out.push(r.denom().to_i64().expect("small denominator"));
}

/// One verified solution.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub algebra: LieAlgebra,
    pub gauge: GaugeField,
    pub lambda: Rational,
    pub report: VerificationReport,
    /// Dimension of the derived algebra.
    pub derived_dim: usize,
    /// Catalog name, when the structure is in normal form.
    pub name: Option<&'static str>,
    /// The pairing coefficients were picked from a line of solutions.
    pub family: bool,
    pub key: OrbitKey,
}

impl Solution {
    /// The solution as a problem file that `hetsys::verify` accepts.
    pub fn problem(&self) -> ProblemFile {
        ProblemFile {
            algebra: Some(self.algebra.clone()),
            gauge: Some(self.gauge.clone()),
            options: vec![("lambda".into(), self.lambda.to_string())],
        }
    }
}

/// Outcome of a search.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    /// One solution per orbit, ordered by `(λ, key)`.
    pub solutions: Vec<Solution>,
    /// Innermost candidates examined.
    pub candidates: u64,
    /// Candidates discarded by a shape gate before solving.
    pub gate_failures: u64,
    /// Orbits solving the reduced system with non-integral structure
    /// constants; they are not reported as solutions.
    pub non_integral: u64,
    pub elapsed: Duration,
    /// The whole box was covered within the budget.
    pub exhaustive: bool,
}

/// Reduced data of one solution before assembly, already canonical.
#[derive(Debug, Clone)]
pub(crate) struct Raw {
    pub lambda: Rational,
    pub alphas: Vec<crate::exterior::Form>,
    pub forms: Vec<crate::exterior::Form>,
    pub eps: Vec<Rational>,
    pub family: bool,
}

/// Shared bookkeeping of one search run.
pub(crate) struct Run<'a> {
    pub spec: &'a SearchSpec,
    deadline: Option<Instant>,
    timed_out: AtomicBool,
}

impl<'a> Run<'a> {
    fn new(spec: &'a SearchSpec) -> Self {
        Run {
            spec,
            deadline: spec.budget.map(|b| Instant::now() + b),
            timed_out: AtomicBool::new(false),
        }
    }

    /// False once the budget is used up; callers then skip remaining work.
    pub fn in_budget(&self) -> bool {
        match self.deadline {
            Some(d) if Instant::now() > d => {
                self.timed_out.store(true, Ordering::Relaxed);
                false
            }
            _ => true,
        }
    }

    pub fn signs(&self) -> Option<&[i8]> {
        self.spec.signs.as_deref()
    }
}

/// Per-slice tallies, merged in slice order.
#[derive(Default)]
pub(crate) struct Tally {
    pub found: Vec<(OrbitKey, Raw)>,
    pub candidates: u64,
    pub gate_failures: u64,
}

impl Tally {
    pub fn merge(mut self, other: Tally) -> Tally {
        self.found.extend(other.found);
        self.candidates += other.candidates;
        self.gate_failures += other.gate_failures;
        self
    }
}

/// Runs the search selected by `spec.reduction`.
pub fn search(spec: &SearchSpec) -> Result<SearchResult, SearchError> {
    match spec.reduction {
        Reduction::Endomorphism => search_n1(spec),
        Reduction::Components => search_n23(spec),
    }
}

/// Search in the endomorphism reduction (derived dimension one).
pub fn search_n1(spec: &SearchSpec) -> Result<SearchResult, SearchError> {
    if spec.reduction != Reduction::Endomorphism {
        return Err(SearchError::InvalidSpec("expected the endomorphism reduction".into()));
    }
    spec.validate()?;
    let start = Instant::now();
    let run = Run::new(spec);
    let tally = line::run(&run)?;
    finish(&run, tally, start)
}

/// Search in the component reduction (derived dimension two or three).
pub fn search_n23(spec: &SearchSpec) -> Result<SearchResult, SearchError> {
    if spec.reduction != Reduction::Components {
        return Err(SearchError::InvalidSpec("expected the component reduction".into()));
    }
    spec.validate()?;
    let start = Instant::now();
    let run = Run::new(spec);
    let tally = components::run(&run)?;
    finish(&run, tally, start)
}

fn finish(run: &Run, tally: Tally, start: Instant) -> Result<SearchResult, SearchError> {
    let mut unique: BTreeMap<OrbitKey, Raw> = BTreeMap::new();
    for (key, raw) in tally.found {
        unique.entry(key).or_insert(raw);
    }
    let mut solutions = Vec::new();
    let mut non_integral = 0;
    for (key, raw) in unique {
        match assemble(run.spec, key, raw)? {
            Assembled::Kept(s) => solutions.push(s),
            Assembled::NonIntegral => non_integral += 1,
            Assembled::Filtered => {}
        }
    }
    Ok(SearchResult {
        solutions,
        candidates: tally.candidates,
        gate_failures: tally.gate_failures,
        non_integral,
        elapsed: start.elapsed(),
        exhaustive: !run.timed_out.load(Ordering::Relaxed),
    })
}

enum Assembled {
    Kept(Solution),
    Filtered,
    NonIntegral,
}

/// Builds, filters and verifies one solution. Catalog targets only match
/// integral structures. Verification failures are errors: the reduced
/// equations are equivalent to the full system, so a failure means a defect
/// in the search.
fn assemble(spec: &SearchSpec, key: OrbitKey, raw: Raw) -> Result<Assembled, SearchError> {
    let incons = |m: String| SearchError::Inconsistent(m);
    let algebra = LieAlgebra::center_last(7, raw.alphas.clone()).map_err(|e| incons(e.to_string()))?;
    let diag = algebra.validate();
    let derived_dim = diag.derived_dim;
    if spec.derived_dim.is_some_and(|d| d != derived_dim) {
        return Ok(Assembled::Filtered);
    }
    let integral = raw.alphas.iter().chain(&raw.forms).all(|f| f.is_integral());
    let name = if diag.passed() { identify(&algebra) } else { None };
    if let Some(t) = &spec.target {
        if name != Some(t.as_str()) {
            return Ok(Assembled::Filtered);
        }
    }
    if !integral {
        return Ok(Assembled::NonIntegral);
    }
    let gauge = GaugeField::new(raw.forms.clone(), raw.eps.clone()).map_err(|e| incons(e.to_string()))?;
    let report = hetsys::verify(&algebra, &gauge).map_err(|e| incons(e.to_string()))?;
    if !report.passed() || report.lambda != raw.lambda {
        let failed: Vec<String> = report
            .lines()
            .iter()
            .filter(|l| !l.passed())
            .map(|l| l.name.clone())
            .collect();
        return Err(incons(format!(
            "search candidate fails verification (lambda {} vs {}; {})",
            report.lambda,
            raw.lambda,
            failed.join(", ")
        )));
    }
    Ok(Assembled::Kept(Solution {
        algebra,
        gauge,
        lambda: raw.lambda,
        report,
        derived_dim,
        name,
        family: raw.family,
        key,
    }))
}

/// Bounded nonexistence evidence: the outcome of a search phrased as a
/// statement about the searched box only.
#[derive(Debug, Clone, PartialEq)]
pub struct NonexistenceReport {
    pub spec: SearchSpec,
    pub result: SearchResult,
}

impl NonexistenceReport {
    /// The box was covered completely and contains no solution of the
    /// reduced system, integral or not.
    pub fn holds(&self) -> bool {
        self.result.solutions.is_empty() && self.result.non_integral == 0 && self.result.exhaustive
    }

    /// Report lines; the first one carries the verdict.
    pub fn lines(&self) -> Vec<String> {
        let s = &self.spec;
        let r = &self.result;
        let lambdas: Vec<String> = s.lambdas.iter().map(ToString::to_string).collect();
        let verdict = if !r.solutions.is_empty() || r.non_integral > 0 {
            format!(
                "FOUND {} integral and {} non-integral solution(s) within bound B = {}",
                r.solutions.len(),
                r.non_integral,
                s.bound
            )
        } else if r.exhaustive {
            format!(
                "no solutions within bound B = {}, lambda in {{{}}}",
                s.bound,
                lambdas.join(", ")
            )
        } else {
            format!("no solutions found before the budget ran out (bound B = {}, incomplete)", s.bound)
        };
        let mut filters = vec![format!("reduction={}", s.reduction), format!("k={}", s.k)];
        if let Some(sg) = &s.signs {
            let sg: Vec<&str> = sg.iter().map(|&x| if x > 0 { "+" } else { "-" }).collect();
            filters.push(format!("signs=({})", sg.join(",")));
        }
        if let Some(n) = s.derived_dim {
            filters.push(format!("derived_dim={n}"));
        }
        if let Some(t) = &s.target {
            filters.push(format!("target={t}"));
        }
        if let Some(a) = s.alpha_rank {
            filters.push(format!("alpha_rank={a}"));
        }
        vec![
            verdict,
            format!("scope: {}", filters.join(" ")),
            format!(
                "candidates={} gate_failures={} non_integral={} exhaustive={} elapsed={:.2}s",
                r.candidates,
                r.gate_failures,
                r.non_integral,
                r.exhaustive,
                r.elapsed.as_secs_f64()
            ),
            "status: bounded evidence for the searched box only, not a proof".to_string(),
        ]
    }
}

/// Runs `spec` and phrases the outcome as bounded evidence.
pub fn nonexistence_report(spec: &SearchSpec) -> Result<NonexistenceReport, SearchError> {
    let result = search(spec)?;
    Ok(NonexistenceReport {
        spec: spec.clone(),
        result,
    })
}

/// Orbit key of given data in the endomorphism reduction, for comparing
/// known solutions with search output.
pub fn endomorphism_orbit_key(alg: &LieAlgebra, gauge: &GaugeField) -> Result<OrbitKey, SearchError> {
    line::orbit_key_of(alg, gauge)
}

/// Orbit key of given data in the component reduction.
pub fn component_orbit_key(alg: &LieAlgebra, gauge: &GaugeField) -> Result<OrbitKey, SearchError> {
    components::orbit_key_of(alg, gauge)
}

/// `(ε₁, ε₂)` admissible under a fixed list, possibly after swapping.
/// Returns whether the curvature forms must be swapped.
pub(crate) fn fixed_match(eps: &[Rational], fixed: &[Rational]) -> Option<bool> {
    if eps == fixed {
        return Some(false);
    }
    let rev: Vec<Rational> = eps.iter().rev().cloned().collect();
    (rev == fixed).then_some(true)
}
