//! Reduction of the heterotic system when the derived algebra is a line.
//!
//! The coframe is split as `𝔳 ⊕ ⟨z⟩` with `𝔳 = ⟨e₁, …, e₆⟩` and `z = e₇`.
//! The standard SU(3)-structure on `𝔳` is
//!
//! ```text
//! ω = e¹² + e³⁴ + e⁵⁶,   Ω₊ = e¹³⁵ − e¹⁴⁶ − e²³⁶ − e²⁴⁵,   J e_{2k−1} = e_{2k},
//! ```
//!
//! so that `φ = ω ∧ z + Ω₊`. Forms on `𝔳` are handled in dimension 6 and
//! lifted to dimension 7 when they meet the algebra.
//!
//! A primitive (1,1)-form `σ` corresponds to the trace-free symmetric
//! endomorphism `L` commuting with `J` given by `σ(x, y) = ⟨L J x, y⟩`. Such an
//! `L` is a trace-free Hermitian 3×3 matrix `X + iY` acting on `ℂ³ ≅ 𝔳`, with
//! `e_{2k}` playing the role of `i e_{2k−1}`.

use thiserror::Error;

use crate::exterior::{blades_of_degree, sum, Form};
use crate::g2;
use crate::hetsys::{self, CheckLine, GaugeField, HetError};
use crate::linalg::{identity, matmul};
use crate::nilalg::LieAlgebra;
use crate::scalar::{int, rat, Rational};

/// Errors raised by the line-centre reduction.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Su3Error {
    #[error("expected a 2-form on the 6-dimensional base, got degree {degree} in dimension {dim}")]
    Shape { dim: usize, degree: usize },
    #[error("the algebra is not of the form de^7 = alpha with alpha on e1..e6")]
    NotLineCentre,
    #[error("not closed: dF = {0}")]
    NotClosed(String),
    #[error("not an instanton: F ^ psi = {0}")]
    NotInstanton(String),
    #[error("{name} is not a primitive (1,1)-form: {detail}")]
    NotPrimitive11 { name: String, detail: String },
    #[error("invalid endomorphism: {0}")]
    InvalidEndo(String),
    #[error("the structure form vanishes, so the algebra is abelian")]
    Abelian,
    #[error("{0} is not integral")]
    NotIntegral(String),
    #[error("the data do not solve the reduced equation")]
    NotASolution,
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Het(#[from] HetError),
}

fn e6(ix: &[usize]) -> Form {
    Form::e(6, ix)
}

/// `ω = e¹² + e³⁴ + e⁵⁶` on `𝔳`.
pub fn omega() -> Form {
    e6(&[1, 2]) + e6(&[3, 4]) + e6(&[5, 6])
}

/// `Ω₊ = e¹³⁵ − e¹⁴⁶ − e²³⁶ − e²⁴⁵` on `𝔳`.
pub fn omega_plus() -> Form {
    e6(&[1, 3, 5]) - e6(&[1, 4, 6]) - e6(&[2, 3, 6]) - e6(&[2, 4, 5])
}

/// `Ω₋ = *₆ Ω₊`.
pub fn omega_minus() -> Form {
    omega_plus().hodge()
}

/// `(J η)(·) = −η(J ·)` on 1-forms: `e^{2k−1} ↦ e^{2k}`, `e^{2k} ↦ −e^{2k−1}`.
pub fn j_covector(eta: &Form) -> Form {
    let mut out = Form::zero(6, 1);
    for (b, c) in eta.terms() {
        let i = b.indices()[0];
        out = if i % 2 == 1 {
            out + Form::term(6, &[i + 1], c.clone()).unwrap()
        } else {
            out - Form::term(6, &[i - 1], c.clone()).unwrap()
        };
    }
    out
}

/// The pull-back `a(J·, J·)` of a form on `𝔳`; 2-forms of type (1,1) are
/// exactly the fixed points in degree two.
pub fn j_pullback(a: &Form) -> Form {
    // e^{2k−1} ∘ J = −e^{2k}, e^{2k} ∘ J = e^{2k−1}.
    let image = |i: usize| -> (usize, i64) {
        if i % 2 == 1 {
            (i + 1, -1)
        } else {
            (i - 1, 1)
        }
    };
    let mut out = Form::zero(a.dim(), a.degree());
    for (b, c) in a.terms() {
        let mut idx = Vec::new();
        let mut sign = 1;
        for i in b.indices() {
            let (j, s) = image(i);
            idx.push(j);
            sign *= s;
        }
        out = out + Form::term(a.dim(), &idx, c.clone() * int(sign)).unwrap();
    }
    out
}

/// Lifts a form on `𝔳` to the 7-dimensional algebra.
pub fn lift(a: &Form) -> Form {
    a.relabel(7, |i| i).expect("6 into 7")
}

/// The part of a 7-dimensional form not involving `e⁷`, as a form on `𝔳`.
pub fn restrict(a: &Form) -> Form {
    let mut out = Form::zero(6, a.degree());
    for (b, c) in a.terms() {
        if b.mask() & (1 << 6) == 0 {
            out = out + Form::term(6, &b.indices(), c.clone()).unwrap();
        }
    }
    out
}

/// Splits a 7-dimensional form as `a_𝔳 + η ∧ e⁷`, returning `(a_𝔳, η)` on `𝔳`.
pub fn split_z(a: &Form) -> (Form, Form) {
    let mut base = Form::zero(6, a.degree());
    let mut eta = Form::zero(6, a.degree().saturating_sub(1));
    for (b, c) in a.terms() {
        let idx = b.indices();
        if idx.last() == Some(&7) {
            eta = eta + Form::term(6, &idx[..idx.len() - 1], c.clone()).unwrap();
        } else {
            base = base + Form::term(6, &idx, c.clone()).unwrap();
        }
    }
    (base, eta)
}

/// The SU(3) data of an algebra with `d e⁷ = α` and `e¹, …, e⁶` closed.
#[derive(Debug, Clone, PartialEq)]
pub struct SU3Split {
    /// `α = d e⁷` as a form on `𝔳`.
    pub alpha: Form,
    /// `⟨α, ω⟩ / 3`, equal to `2λ`.
    pub b: Rational,
    /// `α − b ω`.
    pub alpha0: Form,
}

impl SU3Split {
    pub fn of(alg: &LieAlgebra) -> Result<Self, Su3Error> {
        if alg.dim() != 7 || alg.derived_indices() != vec![7] {
            return Err(Su3Error::NotLineCentre);
        }
        let a7 = alg.differential(7);
        if a7.support_mask() & (1 << 6) != 0 {
            return Err(Su3Error::NotLineCentre);
        }
        let alpha = restrict(a7);
        let b = alpha.inner(&omega()) / int(3);
        let alpha0 = &alpha - omega().scale(&b);
        Ok(SU3Split { alpha, b, alpha0 })
    }
}

/// `a = b ω + β + σ` with `β` of type (2,0)+(0,2) and `σ` primitive (1,1).
#[derive(Debug, Clone, PartialEq)]
pub struct TypeDecomp2 {
    pub b: Rational,
    pub beta: Form,
    pub sigma: Form,
}

/// Type decomposition of a 2-form on `𝔳`.
pub fn decompose2(a: &Form) -> Result<TypeDecomp2, Su3Error> {
    if a.dim() != 6 || a.degree() != 2 {
        return Err(Su3Error::Shape {
            dim: a.dim(),
            degree: a.degree(),
        });
    }
    let b = a.inner(&omega()) / int(3);
    let rest = a - omega().scale(&b);
    let jr = j_pullback(&rest);
    let half = rat(1, 2);
    Ok(TypeDecomp2 {
        b,
        beta: (&rest - &jr).scale(&half),
        sigma: (&rest + &jr).scale(&half),
    })
}

/// `σ` is of type (1,1) and primitive, i.e. `σ ∧ ω = −*₆ σ`.
pub fn is_primitive_11(sigma: &Form) -> bool {
    sigma.dim() == 6
        && sigma.degree() == 2
        && (sigma.wedge(&omega()) + sigma.hodge()).is_zero()
}

fn require_primitive(name: &str, sigma: &Form) -> Result<(), Su3Error> {
    if sigma.dim() != 6 || sigma.degree() != 2 {
        return Err(Su3Error::Shape {
            dim: sigma.dim(),
            degree: sigma.degree(),
        });
    }
    if !is_primitive_11(sigma) {
        let d = decompose2(sigma)?;
        return Err(Su3Error::NotPrimitive11 {
            name: name.to_string(),
            detail: format!("omega part {}, (2,0) part {}", d.b, d.beta),
        });
    }
    Ok(())
}

/// A basis of the 8-dimensional space of primitive (1,1)-forms.
pub fn primitive_11_basis() -> Vec<Form> {
    vec![
        e6(&[1, 2]) - e6(&[3, 4]),
        e6(&[3, 4]) - e6(&[5, 6]),
        e6(&[1, 3]) + e6(&[2, 4]),
        e6(&[1, 4]) - e6(&[2, 3]),
        e6(&[1, 5]) + e6(&[2, 6]),
        e6(&[1, 6]) - e6(&[2, 5]),
        e6(&[3, 5]) + e6(&[4, 6]),
        e6(&[3, 6]) - e6(&[4, 5]),
    ]
}

/// Checks the three SU(3) identities
/// `*(σ∧σ∧ω) = −|σ|²`, `(*(η∧Ω₊))² = 2 *(η∧Jη)` and `|*(η∧Ω₊)|² = 2|η|²`
/// on the primitive (1,1) basis, on sums of pairs of it, and on every `eⁱ`.
pub fn su3_identities_check() -> Vec<CheckLine> {
    let w = omega();
    let op = omega_plus();
    let mut sigmas = primitive_11_basis();
    let basis = sigmas.clone();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            sigmas.push(&basis[i] + &basis[j].scale(&int(j as i64 - i as i64)));
        }
    }
    let sigma_ok = sigmas
        .iter()
        .all(|s| s.wedge(s).wedge(&w).hodge().scalar_part() == -s.norm2());
    let mut eta_sq = true;
    let mut eta_norm = true;
    for m in blades_of_degree(6, 1) {
        let eta = Form::from_terms(6, 1, [(m, int(1))]).unwrap();
        let x = eta.wedge(&op).hodge();
        eta_sq &= x.wedge(&x) == eta.wedge(&j_covector(&eta)).hodge().scale(&int(2));
        eta_norm &= x.norm2() == eta.norm2() * int(2);
    }
    vec![
        CheckLine::flag("su3_sigma_square", sigma_ok),
        CheckLine::flag("su3_eta_square", eta_sq),
        CheckLine::flag("su3_eta_norm", eta_norm),
    ]
}

/// Decomposition `F = ½ *₆(η ∧ Ω₊) + σ + η ∧ z` of a closed instanton on an
/// algebra with a line centre. Returns `(η, σ)` on `𝔳`.
pub fn instanton_normal_form(alg: &LieAlgebra, f: &Form) -> Result<(Form, Form), Su3Error> {
    let split = SU3Split::of(alg)?;
    if f.dim() != 7 || f.degree() != 2 {
        return Err(Su3Error::Shape {
            dim: f.dim(),
            degree: f.degree(),
        });
    }
    let df = alg.d(f);
    if !df.is_zero() {
        return Err(Su3Error::NotClosed(df.to_string()));
    }
    let fpsi = f.wedge(&g2::standard_psi());
    if !fpsi.is_zero() {
        return Err(Su3Error::NotInstanton(fpsi.to_string()));
    }
    let (fv, eta) = split_z(f);
    let sigma = &fv - eta.wedge(&omega_plus()).hodge().scale(&rat(1, 2));
    if !is_primitive_11(&sigma) || !eta.wedge(&split.alpha).is_zero() {
        return Err(Su3Error::Inconsistent(format!(
            "instanton decomposition failed for {f}"
        )));
    }
    if split.alpha.rank2() >= 4 && !eta.is_zero() {
        return Err(Su3Error::Inconsistent(
            "eta must vanish when rank(alpha) >= 4".to_string(),
        ));
    }
    Ok((eta, sigma))
}

/// A trace-free symmetric endomorphism of `𝔳` commuting with `J`, stored as
/// the Hermitian matrix `X + iY` (`X` symmetric trace-free, `Y` skew).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct JEndo {
    x: [[Rational; 3]; 3],
    y: [[Rational; 3]; 3],
}

fn zero3() -> [[Rational; 3]; 3] {
    std::array::from_fn(|_| std::array::from_fn(|_| int(0)))
}

impl JEndo {
    /// Builds from the blocks, checking symmetry, skewness and trace.
    pub fn from_blocks(x: [[Rational; 3]; 3], y: [[Rational; 3]; 3]) -> Result<Self, Su3Error> {
        for i in 0..3 {
            for j in 0..3 {
                if x[i][j] != x[j][i] {
                    return Err(Su3Error::InvalidEndo("X is not symmetric".into()));
                }
                if y[i][j] != -y[j][i].clone() {
                    return Err(Su3Error::InvalidEndo("Y is not skew".into()));
                }
            }
        }
        if x[0][0].clone() + &x[1][1] + &x[2][2] != int(0) {
            return Err(Su3Error::InvalidEndo("trace is not zero".into()));
        }
        Ok(JEndo { x, y })
    }

    /// From integer blocks.
    pub fn from_int_blocks(x: [[i64; 3]; 3], y: [[i64; 3]; 3]) -> Result<Self, Su3Error> {
        JEndo::from_blocks(x.map(|r| r.map(int)), y.map(|r| r.map(int)))
    }

    /// From a real 6×6 matrix in the basis `e₁, …, e₆`.
    pub fn from_matrix(m: &[Vec<Rational>]) -> Result<Self, Su3Error> {
        if m.len() != 6 || m.iter().any(|r| r.len() != 6) {
            return Err(Su3Error::InvalidEndo("expected a 6x6 matrix".into()));
        }
        let mut x = zero3();
        let mut y = zero3();
        for k in 0..3 {
            for l in 0..3 {
                let (a, b) = (m[2 * k][2 * l].clone(), m[2 * k + 1][2 * l].clone());
                if m[2 * k + 1][2 * l + 1] != a || m[2 * k][2 * l + 1] != -b.clone() {
                    return Err(Su3Error::InvalidEndo("does not commute with J".into()));
                }
                x[k][l] = a;
                y[k][l] = b;
            }
        }
        let e = JEndo::from_blocks(x, y)?;
        Ok(e)
    }

    pub fn x(&self) -> &[[Rational; 3]; 3] {
        &self.x
    }

    pub fn y(&self) -> &[[Rational; 3]; 3] {
        &self.y
    }

    /// The real 6×6 matrix.
    pub fn matrix(&self) -> Vec<Vec<Rational>> {
        let mut m = vec![vec![int(0); 6]; 6];
        for k in 0..3 {
            for l in 0..3 {
                m[2 * k][2 * l] = self.x[k][l].clone();
                m[2 * k + 1][2 * l + 1] = self.x[k][l].clone();
                m[2 * k + 1][2 * l] = self.y[k][l].clone();
                m[2 * k][2 * l + 1] = -self.y[k][l].clone();
            }
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.x.iter().flatten().chain(self.y.iter().flatten()).all(|c| *c == int(0))
    }
}

fn j_matrix() -> Vec<Vec<Rational>> {
    let mut j = vec![vec![int(0); 6]; 6];
    for k in 0..3 {
        j[2 * k + 1][2 * k] = int(1);
        j[2 * k][2 * k + 1] = int(-1);
    }
    j
}

/// `L` with `σ(x, y) = ⟨L J x, y⟩`.
pub fn endo_of_form(sigma: &Form) -> Result<JEndo, Su3Error> {
    require_primitive("sigma", sigma)?;
    // S[i][j] = σ(e_i, e_j) = (L J)[j][i], so L J = Sᵀ and L = −Sᵀ J.
    let s = sigma.skew_matrix();
    let st: Vec<Vec<Rational>> = (0..6).map(|r| (0..6).map(|c| s[c][r].clone()).collect()).collect();
    let l: Vec<Vec<Rational>> = matmul(&st, &j_matrix())
        .into_iter()
        .map(|r| r.into_iter().map(|c| -c).collect())
        .collect();
    JEndo::from_matrix(&l)
}

/// The 2-form `⟨L J ·, ·⟩`.
pub fn form_of_endo(l: &JEndo) -> Form {
    let lj = matmul(&l.matrix(), &j_matrix());
    let s: Vec<Vec<Rational>> = (0..6).map(|r| (0..6).map(|c| lj[c][r].clone()).collect()).collect();
    Form::from_skew_matrix(&s)
}

/// Outcome of [`reduced_equation_check`]: both formulations agree.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedCheck {
    /// `α₀∧α₀ − 4λ²ω∧ω − Σ ε_r σ^r∧σ^r`.
    pub residual: Form,
    /// `L₀² − Σ ε_r L_r² + 8λ² Id`.
    pub endo_residual: Vec<Vec<Rational>>,
}

impl ReducedCheck {
    pub fn holds(&self) -> bool {
        self.residual.is_zero()
    }
}

/// Checks `α₀∧α₀ − 4λ²ω∧ω = Σ ε_r σ^r∧σ^r` as 4-forms and, independently,
/// `L₀² − Σ ε_r L_r² = −8λ² Id` as matrices. The two must agree.
pub fn reduced_equation_check(
    alpha0: &Form,
    lambda: &Rational,
    data: &[(Form, Rational)],
) -> Result<ReducedCheck, Su3Error> {
    require_primitive("alpha0", alpha0)?;
    for (r, (s, _)) in data.iter().enumerate() {
        require_primitive(&format!("sigma{}", r + 1), s)?;
    }
    let w = omega();
    let l2 = lambda.clone() * lambda;
    let lhs = alpha0.wedge(alpha0) - w.wedge(&w).scale(&(l2.clone() * int(4)));
    let rhs = sum(Form::zero(6, 4), data.iter().map(|(s, e)| s.wedge(s).scale(e)));
    let residual = lhs - rhs;

    let sq = |m: &Vec<Vec<Rational>>| matmul(m, m);
    let l0 = endo_of_form(alpha0)?.matrix();
    let mut acc = sq(&l0);
    for (s, e) in data {
        let lr = sq(&endo_of_form(s)?.matrix());
        for i in 0..6 {
            for j in 0..6 {
                acc[i][j] -= lr[i][j].clone() * e;
            }
        }
    }
    let id = identity::<Rational>(6);
    for i in 0..6 {
        for j in 0..6 {
            acc[i][j] += id[i][j].clone() * &l2 * int(8);
        }
    }
    let endo_zero = acc.iter().flatten().all(|c| *c == int(0));
    if endo_zero != residual.is_zero() {
        return Err(Su3Error::Inconsistent(
            "form and endomorphism versions of the reduced equation disagree".into(),
        ));
    }
    Ok(ReducedCheck {
        residual,
        endo_residual: acc,
    })
}

/// One gauge component `F = ½ *₆(η∧Ω₊) + σ + η ∧ z` of the reduced system.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedGauge {
    pub eta: Form,
    pub sigma: Form,
    pub eps: Rational,
}

impl ReducedGauge {
    /// The ambient 2-form.
    pub fn ambient(&self) -> Form {
        let fv = self.eta.wedge(&omega_plus()).hodge().scale(&rat(1, 2)) + &self.sigma;
        lift(&fv) + lift(&self.eta).wedge(&Form::e(7, &[7]))
    }
}

/// The four lines of the reduced system for `α = 2λω + α₀`.
pub fn full_reduced_system_check(
    alpha0: &Form,
    lambda: &Rational,
    data: &[ReducedGauge],
) -> Result<Vec<CheckLine>, Su3Error> {
    let alpha = omega().scale(&(lambda.clone() * int(2))) + alpha0;
    let op = omega_plus();
    let mut lines = Vec::new();
    for (r, g) in data.iter().enumerate() {
        lines.push(CheckLine::form(format!("eta{}_wedge_alpha", r + 1), &g.eta.wedge(&alpha)));
    }
    let xs: Vec<Form> = data.iter().map(|g| g.eta.wedge(&op).hodge()).collect();
    let mixed = sum(
        Form::zero(6, 4),
        data.iter().zip(&xs).map(|(g, x)| x.wedge(&g.sigma).scale(&g.eps)),
    );
    let squares = sum(
        Form::zero(6, 4),
        data.iter().zip(&xs).map(|(g, x)| x.wedge(x).scale(&g.eps)),
    );
    lines.push(CheckLine::form("mixed_31", &mixed));
    lines.push(CheckLine::form("eta_squares", &squares));
    let sig: Vec<(Form, Rational)> = data.iter().map(|g| (g.sigma.clone(), g.eps.clone())).collect();
    let reduced = reduced_equation_check(alpha0, lambda, &sig)?;
    lines.push(CheckLine::form("reduced_equation", &reduced.residual));
    let last = sum(
        Form::zero(6, 3),
        data.iter()
            .zip(&xs)
            .map(|(g, x)| (x.wedge(&g.eta) + g.sigma.wedge(&g.eta).scale(&int(2))).scale(&g.eps)),
    );
    lines.push(CheckLine::form("eta_three_form", &last));
    Ok(lines)
}

/// The algebra `d e⁷ = 2λω + α₀` and gauge field `F^r = σ^r`, verified.
pub fn assemble(
    lambda: &Rational,
    alpha0: &Form,
    data: &[(Form, Rational)],
) -> Result<(LieAlgebra, GaugeField), Su3Error> {
    let alpha = omega().scale(&(lambda.clone() * int(2))) + alpha0;
    if alpha.is_zero() {
        return Err(Su3Error::Abelian);
    }
    if !alpha.is_integral() {
        return Err(Su3Error::NotIntegral(format!("2 lambda omega + alpha0 = {alpha}")));
    }
    for (r, (s, _)) in data.iter().enumerate() {
        if !s.is_integral() {
            return Err(Su3Error::NotIntegral(format!("sigma{} = {s}", r + 1)));
        }
    }
    if !reduced_equation_check(alpha0, lambda, data)?.holds() {
        return Err(Su3Error::NotASolution);
    }
    let alg = LieAlgebra::center_last(7, vec![lift(&alpha)]).expect("7-dimensional shape");
    let g = GaugeField::new(
        data.iter().map(|(s, _)| lift(s)).collect(),
        data.iter().map(|(_, e)| e.clone()).collect(),
    )?;
    let report = hetsys::verify(&alg, &g)?;
    if !report.passed() || report.lambda != *lambda {
        return Err(Su3Error::Inconsistent(
            "assembled data fail the heterotic system".into(),
        ));
    }
    Ok((alg, g))
}
