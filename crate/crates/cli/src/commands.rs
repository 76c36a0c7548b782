//! Command implementations. Each returns the full report text and a verdict;
//! `main` prints the text and maps the verdict to an exit code.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use thiserror::Error;

use g2het::bundle::{self, BundleError};
use g2het::cli::{parse_algebra, parse_problem, parse_rationals, render_algebra, render_rationals, ParseError, ProblemFile};
use g2het::g2;
use g2het::hetsys::{self, CheckLine, GaugeField};
use g2het::nilalg::{self, identify, LieAlgebra};
use g2het::search::{self, SearchError, SearchSpec, Solution};
use g2het::Rational;

use crate::Format;

/// Report text and whether the requested check passed.
pub struct Outcome {
    pub text: String,
    pub passed: bool,
}

/// Errors that stop a command before it produces a verdict.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
    #[error("{0}")]
    Input(String),
    /// The command ran but hit a condition that counts as a failed check.
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            _ => 2,
        }
    }
}

fn read_problem(path: &Path) -> Result<ProblemFile, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    parse_problem(&text).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

/// Algebra and gauge field of a problem file, both required.
fn system_of(p: &ProblemFile, path: &Path) -> Result<(LieAlgebra, GaugeField), CliError> {
    let missing = |s: &str| CliError::Input(format!("{}: missing [{s}] section", path.display()));
    let alg = p.algebra.clone().ok_or_else(|| missing("algebra"))?;
    let gauge = p.gauge.clone().ok_or_else(|| missing("gauge"))?;
    Ok((alg, gauge))
}

fn class_of(alg: &LieAlgebra) -> &'static str {
    if alg.derived_dim() == 0 {
        "abelian"
    } else {
        identify(alg).unwrap_or("unknown")
    }
}

/// `catalog [--fingerprints]`: passes when every entry validates.
pub fn catalog(fingerprints: bool, format: Format) -> Result<Outcome, CliError> {
    let mut text = String::new();
    let mut passed = true;
    for e in nilalg::catalog() {
        let ok = e.algebra.validate().passed() && e.algebra.derived_dim() == e.derived_dim;
        passed &= ok;
        let status = if ok { "valid" } else { "INVALID" };
        match format {
            Format::Lines => {
                let _ = write!(text, "ALGEBRA {} n'={} {} {}", e.name, e.derived_dim, status, e.tuple);
                if fingerprints {
                    let _ = write!(text, " | {}", e.algebra.fingerprint());
                }
                text.push('\n');
            }
            Format::Human => {
                let _ = writeln!(text, "{:<8} {:<14} n'={}  {}  {}", e.name, e.display, e.derived_dim, e.tuple, status);
                if fingerprints {
                    let _ = writeln!(text, "         {}", e.algebra.fingerprint());
                }
            }
        }
    }
    Ok(Outcome { text, passed })
}

/// `torsion <alg>`: always passes once the algebra parses.
pub fn torsion(algebra: &str, format: Format) -> Result<Outcome, CliError> {
    let alg = parse_algebra(algebra).map_err(|source| CliError::Parse {
        path: PathBuf::from("<algebra>"),
        source,
    })?;
    let t = g2::torsion(&alg).map_err(|e| CliError::Input(e.to_string()))?;
    let class = t.classify();
    let mut text = String::new();
    if format == Format::Human {
        let _ = writeln!(text, "algebra: {}", render_algebra(&alg));
        let _ = writeln!(text, "class: {}", class_of(&alg));
    }
    let _ = writeln!(text, "tau0 = {}", t.tau0);
    let _ = writeln!(text, "tau1 = {}", t.tau1);
    let _ = writeln!(text, "tau2 = {}", t.tau2);
    let _ = writeln!(text, "tau3 = {}", t.tau3);
    let _ = writeln!(text, "lambda = {}", t.lambda);
    let _ = writeln!(text, "g2t = {}", class.g2t);
    let _ = writeln!(text, "coclosed = {}", class.coclosed);
    let _ = writeln!(text, "torsion_free = {}", class.torsion_free);
    Ok(Outcome { text, passed: true })
}

/// Checks of the optional `lambda` and `signature` expectations.
fn expectation_lines(p: &ProblemFile, report: &hetsys::VerificationReport, path: &Path) -> Result<Vec<CheckLine>, CliError> {
    let bad = |m: String| CliError::Input(format!("{}: {m}", path.display()));
    let mut out = Vec::new();
    for (key, value) in &p.options {
        match key.as_str() {
            "lambda" => {
                let want = single_rational(value).ok_or_else(|| bad(format!("lambda must be one rational, got {value:?}")))?;
                out.push(CheckLine::scalar("lambda", &(report.lambda.clone() - want)));
            }
            "signature" => {
                let want = parse_signature(value).ok_or_else(|| bad(format!("signature must read 'p, q', got {value:?}")))?;
                let (p, q) = report.signature;
                let mut line = CheckLine::flag("signature", (p, q) == want);
                if !line.passed() {
                    line.residual = Some(format!("({p},{q})"));
                }
                out.push(line);
            }
            other => return Err(bad(format!("unknown option {other} (expected lambda or signature)"))),
        }
    }
    Ok(out)
}

fn single_rational(text: &str) -> Option<Rational> {
    match parse_rationals(text).ok()?.as_slice() {
        [r] => Some(r.clone()),
        _ => None,
    }
}

fn parse_signature(text: &str) -> Option<(usize, usize)> {
    let (p, q) = text.trim().trim_start_matches('(').trim_end_matches(')').split_once(',')?;
    Some((p.trim().parse().ok()?, q.trim().parse().ok()?))
}

fn render_checks(lines: &[CheckLine], passed: bool, header: &[String], format: Format) -> String {
    let mut text = String::new();
    if format == Format::Human {
        for h in header {
            let _ = writeln!(text, "{h}");
        }
    }
    for l in lines {
        let _ = writeln!(text, "{l}");
    }
    let verdict = if passed { "PASS" } else { "FAIL" };
    match format {
        Format::Lines => {
            let _ = writeln!(text, "RESULT {verdict}");
        }
        Format::Human => {
            let _ = writeln!(text, "result: {verdict}");
        }
    }
    text
}

/// `het verify <problem-file>`: passes iff every check passes.
pub fn het_verify(path: &Path, format: Format) -> Result<Outcome, CliError> {
    let p = read_problem(path)?;
    let (alg, gauge) = system_of(&p, path)?;
    let report = hetsys::verify(&alg, &gauge).map_err(|e| CliError::Input(e.to_string()))?;
    let mut lines = report.lines();
    lines.extend(expectation_lines(&p, &report, path)?);
    let passed = lines.iter().all(CheckLine::passed);
    let (pos, neg) = report.signature;
    let header = vec![
        format!("algebra: {} ({})", render_algebra(&alg), class_of(&alg)),
        format!("lambda = {}", report.lambda),
        format!("signature = ({pos},{neg})"),
    ];
    Ok(Outcome {
        text: render_checks(&lines, passed, &header, format),
        passed,
    })
}

fn solution_line(s: &Solution) -> String {
    let (p, q) = hetsys::signature(&s.gauge);
    let mut line = format!(
        "SOLUTION lambda={}; class={}; signature=({p},{q}); family={}; algebra={}",
        s.lambda,
        s.name.unwrap_or("unknown"),
        s.family,
        render_algebra(&s.algebra)
    );
    for (r, f) in s.gauge.forms().iter().enumerate() {
        let _ = write!(line, "; F{}={f}", r + 1);
    }
    let _ = write!(line, "; eps={}", render_rationals(s.gauge.eps()));
    line
}

/// `het search <spec-file>`: passes when the whole box was covered.
pub fn het_search(path: &Path, out: Option<&Path>, format: Format) -> Result<Outcome, CliError> {
    let p = read_problem(path)?;
    let spec = SearchSpec::from_problem(&p).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let report = search::nonexistence_report(&spec).map_err(|e| match e {
        SearchError::Inconsistent(m) => CliError::Failed(format!("internal inconsistency: {m}")),
        other => CliError::Input(other.to_string()),
    })?;
    let r = &report.result;
    if let Some(dir) = out {
        write_solutions(dir, &r.solutions)?;
    }
    let mut text = String::new();
    match format {
        Format::Lines => {
            for s in &r.solutions {
                let _ = writeln!(text, "{}", solution_line(s));
            }
            let _ = writeln!(
                text,
                "SUMMARY solutions={} non_integral={} candidates={} gate_failures={} exhaustive={}",
                r.solutions.len(),
                r.non_integral,
                r.candidates,
                r.gate_failures,
                r.exhaustive
            );
        }
        Format::Human => {
            for l in report.lines() {
                let _ = writeln!(text, "{l}");
            }
            for (i, s) in r.solutions.iter().enumerate() {
                let (pos, neg) = hetsys::signature(&s.gauge);
                let _ = writeln!(
                    text,
                    "\nsolution {}: {} lambda = {} signature = ({pos},{neg}){}",
                    i + 1,
                    s.name.unwrap_or("unknown"),
                    s.lambda,
                    if s.family { " [family representative]" } else { "" }
                );
                for l in s.problem().render().lines() {
                    let _ = writeln!(text, "  {l}");
                }
            }
        }
    }
    Ok(Outcome {
        text,
        passed: r.exhaustive,
    })
}

fn write_solutions(dir: &Path, solutions: &[Solution]) -> Result<(), CliError> {
    let fail = |path: &Path| {
        let path = path.to_path_buf();
        move |source| CliError::Write { path, source }
    };
    fs::create_dir_all(dir).map_err(fail(dir))?;
    for (i, s) in solutions.iter().enumerate() {
        let path = dir.join(format!("solution_{:04}.problem", i + 1));
        fs::write(&path, s.problem().render()).map_err(fail(&path))?;
    }
    Ok(())
}

/// `bundle check <problem-file>`: passes iff every curvature form passes the
/// factor-6 integrality scan.
pub fn bundle_check(path: &Path, format: Format) -> Result<Outcome, CliError> {
    let p = read_problem(path)?;
    let (alg, gauge) = system_of(&p, path)?;
    let lines = bundle::bundle_check(&alg, &gauge).map_err(|e| match e {
        BundleError::NotClosed(_) | BundleError::NotIntegral { .. } => CliError::Failed(e.to_string()),
        other => CliError::Input(other.to_string()),
    })?;
    let passed = lines.iter().all(CheckLine::passed);
    let header = vec![
        format!("algebra: {} ({})", render_algebra(&alg), class_of(&alg)),
        "lattice: factor 6".to_string(),
    ];
    Ok(Outcome {
        text: render_checks(&lines, passed, &header, format),
        passed,
    })
}
