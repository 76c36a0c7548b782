//! Published solutions of the heterotic system, as printed, together with
//! the file names of their problem files in the golden corpus.

use g2het::cli::ProblemFile;
use g2het::hetsys::GaugeField;
use g2het::nilalg::LieAlgebra;
use g2het::su2red;
use g2het::su3red;
use g2het::{int, rat, Form, Rational};

/// One solution with its expected `λ` and signature `(k₊, k₋)`.
pub struct Known {
    /// File stem in the golden corpus.
    pub label: &'static str,
    pub algebra: LieAlgebra,
    pub gauge: GaugeField,
    pub lambda: Rational,
    pub signature: (usize, usize),
}

impl Known {
    /// Problem file carrying the expected `λ` and signature as options.
    pub fn problem(&self) -> ProblemFile {
        ProblemFile {
            algebra: Some(self.algebra.clone()),
            gauge: Some(self.gauge.clone()),
            options: vec![
                ("lambda".into(), self.lambda.to_string()),
                ("signature".into(), format!("{}, {}", self.signature.0, self.signature.1)),
            ],
        }
    }
}

fn e4(ix: &[usize]) -> Form {
    Form::e(4, ix)
}

fn e6(ix: &[usize]) -> Form {
    Form::e(6, ix)
}

fn e7(ix: &[usize]) -> Form {
    Form::e(7, ix)
}

fn gauge(forms: Vec<Form>, eps: Vec<Rational>) -> GaugeField {
    GaugeField::new(forms, eps).unwrap()
}

/// Line-centre data `α = 2λω + α₀` with forms `σ_r` on the 6-dimensional base.
fn line_centre(label: &'static str, lambda: Rational, alpha0: Form, data: Vec<(Form, Rational)>, signature: (usize, usize)) -> Known {
    let alpha = su3red::omega().scale(&(lambda.clone() * int(2))) + alpha0;
    let algebra = LieAlgebra::center_last(7, vec![su3red::lift(&alpha)]).unwrap();
    let (forms, eps) = data.into_iter().map(|(s, e)| (su3red::lift(&s), e)).unzip();
    Known {
        label,
        algebra,
        gauge: gauge(forms, eps),
        lambda,
        signature,
    }
}

fn line_solutions() -> Vec<Known> {
    let h = rat(1, 2);
    let s = |k: i64, f: Form| f.scale(&int(k));
    vec![
        line_centre(
            "line_half_rank2",
            h.clone(),
            -e6(&[1, 2]) - e6(&[3, 4]) + s(2, e6(&[5, 6])),
            vec![(e6(&[1, 2]) - e6(&[5, 6]), int(3)), (e6(&[3, 4]) - e6(&[5, 6]), int(3))],
            (2, 0),
        ),
        line_centre(
            "line_half_rank4",
            h.clone(),
            -e6(&[1, 2]) + e6(&[5, 6]),
            vec![
                (-e6(&[1, 2]) + s(2, e6(&[3, 4])) - e6(&[5, 6]), rat(1, 2)),
                (e6(&[1, 2]) - e6(&[5, 6]), rat(5, 2)),
            ],
            (2, 0),
        ),
        line_centre(
            "line_half_rank6",
            h,
            Form::zero(6, 2),
            vec![
                (s(-2, e6(&[1, 2])) + e6(&[3, 4]) + e6(&[5, 6]), rat(1, 2)),
                (e6(&[3, 4]) - e6(&[5, 6]), rat(3, 2)),
            ],
            (2, 0),
        ),
        line_centre(
            "line_single_h5",
            int(0),
            s(5, e6(&[1, 2])) - s(5, e6(&[3, 4])),
            vec![(
                s(-4, e6(&[1, 3])) + s(3, e6(&[1, 4])) - s(3, e6(&[2, 3])) - s(4, e6(&[2, 4])),
                int(1),
            )],
            (1, 0),
        ),
        line_centre(
            "line_indefinite_h7",
            int(0),
            e6(&[1, 2]) - s(2, e6(&[3, 4])) + e6(&[5, 6]),
            vec![
                (e6(&[1, 2]) - e6(&[3, 4]), int(1)),
                (e6(&[1, 2]) - s(2, e6(&[3, 4])) + e6(&[5, 6]), int(1)),
                (e6(&[1, 2]) - e6(&[3, 4]), int(-1)),
            ],
            (2, 1),
        ),
    ]
}

/// `(file stem, α₁, α₂, α₃)` of the `λ = 0` list, exactly as printed.
pub fn flat_lambda_data() -> Vec<(&'static str, [Form; 3])> {
    let z = || Form::zero(4, 2);
    let s = |k: i64, f: Form| f.scale(&int(k));
    vec![
        ("flat_n52_R2", [e4(&[1, 3]), e4(&[2, 3]), z()]),
        ("flat_h3_h3_R", [e4(&[1, 3]) + e4(&[1, 4]), -e4(&[2, 3]) + e4(&[2, 4]), z()]),
        ("flat_h3C_R", [e4(&[1, 3]) - e4(&[2, 4]), e4(&[1, 4]) + e4(&[2, 3]), z()]),
        ("flat_n62_R", [s(2, e4(&[1, 3])), e4(&[1, 4]) + e4(&[2, 3]), z()]),
        ("flat_n63_R", [e4(&[1, 3]), s(2, e4(&[2, 3])), e4(&[1, 2])]),
        ("flat_n73A", [e4(&[2, 4]), e4(&[2, 3]), s(2, e4(&[1, 2]))]),
        ("flat_n73B", [e4(&[1, 2]) + e4(&[1, 3]), s(2, e4(&[1, 4])), -e4(&[2, 4]) + e4(&[3, 4])]),
        ("flat_n73B1", [-e4(&[1, 4]), s(2, e4(&[1, 3])) + e4(&[2, 4]), e4(&[1, 2]) - e4(&[3, 4])]),
        ("flat_n73C", [e4(&[2, 4]), e4(&[2, 3]), e4(&[1, 2]) + e4(&[3, 4])]),
        ("flat_n73D", [e4(&[1, 2]) + e4(&[1, 4]) + e4(&[3, 4]), -e4(&[1, 3]), s(2, e4(&[2, 4]))]),
        ("flat_n73D1", [e4(&[1, 2]) - e4(&[3, 4]), e4(&[1, 3]) + e4(&[2, 4]), e4(&[1, 4]) - e4(&[2, 3])]),
    ]
}

/// Algebra with `d zⁱ = αᵢ` for 2-forms on the 4-dimensional base.
pub fn split_algebra(alphas: &[Form; 3]) -> LieAlgebra {
    LieAlgebra::center_last(7, alphas.iter().map(su2red::lift).collect()).unwrap()
}

/// The `λ = 0` list with the single instanton `F = e¹² − e³⁴` and
/// `ε = Σ|αᵢ|²/2`.
fn flat_solutions() -> Vec<Known> {
    flat_lambda_data()
        .into_iter()
        .map(|(label, alphas)| {
            let eps: Rational = alphas.iter().map(Form::norm2).sum::<Rational>() / int(2);
            Known {
                label,
                algebra: split_algebra(&alphas),
                gauge: gauge(vec![e7(&[1, 2]) - e7(&[3, 4])], vec![eps]),
                lambda: int(0),
                signature: (1, 0),
            }
        })
        .collect()
}

/// The `n'= 2` family with three instantons at integer `λ`.
pub fn plane_family(label: &'static str, l: i64) -> Known {
    let algebra = LieAlgebra::center_last(7, vec![e7(&[1, 3]), e7(&[1, 4]).scale(&int(1 - 6 * l)), Form::zero(7, 2)]).unwrap();
    let forms = vec![e7(&[1, 5]) + e7(&[4, 7]), e7(&[1, 6]) + e7(&[3, 7]), e7(&[1, 3]) + e7(&[2, 4])];
    let eps = vec![int(12 * l * l - 2 * l), int(2 * l), int(12 * l * l - 6 * l + 1)];
    let negative = eps.iter().filter(|e| **e < int(0)).count();
    Known {
        label,
        algebra,
        gauge: gauge(forms, eps),
        lambda: int(l),
        signature: (3 - negative, negative),
    }
}

/// The `n'= 3` solution at `λ = 1` with two instantons.
fn space_solution() -> Known {
    let s = |k: i64, f: Form| f.scale(&int(k));
    let algebra = LieAlgebra::center_last(7, vec![s(-2, e7(&[2, 4])), s(-2, e7(&[1, 4])), s(2, e7(&[1, 2]))]).unwrap();
    let f1 = s(2, e7(&[1, 5])) + e7(&[2, 6]) + e7(&[4, 7]);
    let f2 = s(2, e7(&[4, 6])) + s(2, e7(&[2, 7]));
    Known {
        label: "space_lambda_1",
        algebra,
        gauge: gauge(vec![f1, f2], vec![int(2), rat(3, 2)]),
        lambda: int(1),
        signature: (2, 0),
    }
}

/// Every published solution, in a fixed order.
pub fn published() -> Vec<Known> {
    let mut out = line_solutions();
    out.extend(flat_solutions());
    out.push(plane_family("plane_lambda_1", 1));
    out.push(plane_family("plane_lambda_minus1", -1));
    out.push(space_solution());
    out
}

/// Directory of the golden corpus.
pub fn golden_dir() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../golden")
}
