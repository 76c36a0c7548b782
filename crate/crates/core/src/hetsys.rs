//! The invariant heterotic G₂-system on a 7-dimensional Lie algebra.
//!
//! For the standard G₂-structure `φ`, abelian curvature 2-forms `F¹, …, Fᵏ`
//! and nonzero pairing coefficients `ε_r`, the system reads
//!
//! ```text
//! τ₂ = 0,   dF^r = 0,   F^r ∧ ψ = 0,   dH = Σ ε_r F^r ∧ F^r.
//! ```
//!
//! [`verify`] checks each condition exactly and keeps the residual forms.
//! Every solution also satisfies the scalar identity
//! `Scal − ½|H|² + Σ ε_r |F^r|² − 8δτ₁ − 16|τ₁|² = 4λ²`, reported alongside.

use std::fmt;

use thiserror::Error;

use crate::exterior::{sum, Form};
use crate::g2::{self, G2Error, TorsionForms};
use crate::nilalg::LieAlgebra;
use crate::scalar::{int, Rational};

/// Errors raised when building gauge data or running checks.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum HetError {
    #[error("pairing coefficient eps{index} is zero")]
    ZeroEpsilon { index: usize },
    #[error("{forms} curvature forms but {eps} pairing coefficients")]
    LengthMismatch { forms: usize, eps: usize },
    #[error("curvature form F{index} must be a 2-form in dimension 7")]
    NotTwoForm { index: usize },
    #[error(transparent)]
    G2(#[from] G2Error),
}

/// Curvature `F_θ = Σ F^r t_r` of a torus connection with the diagonal
/// pairing `⟨t_r, t_s⟩ = ε_r δ_rs`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaugeField {
    forms: Vec<Form>,
    eps: Vec<Rational>,
}

impl GaugeField {
    /// Checks shapes and that every `ε_r` is nonzero.
    pub fn new(forms: Vec<Form>, eps: Vec<Rational>) -> Result<Self, HetError> {
        if forms.len() != eps.len() {
            return Err(HetError::LengthMismatch {
                forms: forms.len(),
                eps: eps.len(),
            });
        }
        for (r, f) in forms.iter().enumerate() {
            if f.dim() != 7 || f.degree() != 2 {
                return Err(HetError::NotTwoForm { index: r + 1 });
            }
        }
        if let Some(r) = eps.iter().position(|e| *e == int(0)) {
            return Err(HetError::ZeroEpsilon { index: r + 1 });
        }
        Ok(GaugeField { forms, eps })
    }

    /// The flat bundle, `k = 0`.
    pub fn flat() -> Self {
        GaugeField {
            forms: Vec::new(),
            eps: Vec::new(),
        }
    }

    pub fn k(&self) -> usize {
        self.forms.len()
    }

    pub fn forms(&self) -> &[Form] {
        &self.forms
    }

    pub fn eps(&self) -> &[Rational] {
        &self.eps
    }

    /// `Σ ε_r F^r ∧ F^r`.
    pub fn pairing_square(&self) -> Form {
        sum(
            Form::zero(7, 4),
            self.forms
                .iter()
                .zip(&self.eps)
                .map(|(f, e)| f.wedge(f).scale(e)),
        )
    }

    /// `Σ ε_r |F^r|²`.
    pub fn pairing_norm(&self) -> Rational {
        self.forms
            .iter()
            .zip(&self.eps)
            .map(|(f, e)| f.norm2() * e)
            .sum()
    }
}

/// Outcome of a single named check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::NotApplicable => "N/A",
        })
    }
}

/// One line of a machine-readable report: `CHECK <name> <status> [residual=<r>]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckLine {
    pub name: String,
    pub status: Status,
    /// Canonical rendering of the nonzero residual of a failed check.
    pub residual: Option<String>,
}

impl CheckLine {
    /// A check whose residual is a form; it passes iff the form vanishes.
    pub fn form(name: impl Into<String>, residual: &Form) -> Self {
        CheckLine {
            name: name.into(),
            status: Status::from_bool(residual.is_zero()),
            residual: (!residual.is_zero()).then(|| residual.to_string()),
        }
    }

    /// A check whose residual is a number; it passes iff the number vanishes.
    pub fn scalar(name: impl Into<String>, residual: &Rational) -> Self {
        let ok = *residual == int(0);
        CheckLine {
            name: name.into(),
            status: Status::from_bool(ok),
            residual: (!ok).then(|| residual.to_string()),
        }
    }

    /// A boolean check without residual.
    pub fn flag(name: impl Into<String>, ok: bool) -> Self {
        CheckLine {
            name: name.into(),
            status: Status::from_bool(ok),
            residual: None,
        }
    }

    pub fn not_applicable(name: impl Into<String>) -> Self {
        CheckLine {
            name: name.into(),
            status: Status::NotApplicable,
            residual: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

impl fmt::Display for CheckLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CHECK {} {}", self.name, self.status)?;
        if let Some(r) = &self.residual {
            write!(f, " residual={r}")?;
        }
        Ok(())
    }
}

/// Residuals of the heterotic system for one algebra and gauge field.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub torsion: TorsionForms,
    pub lambda: Rational,
    /// `τ₂`, zero iff the structure is G₂T.
    pub tau2: Form,
    /// `dF^r` per curvature form.
    pub closed: Vec<Form>,
    /// `F^r ∧ ψ` per curvature form.
    pub instanton: Vec<Form>,
    /// `dH − Σ ε_r F^r ∧ F^r`, absent when `τ₂ ≠ 0` leaves `H` undefined.
    pub bianchi: Option<Form>,
    /// Residual of the scalar identity, absent when `τ₂ ≠ 0`.
    pub scal_identity: Option<Rational>,
    pub signature: (usize, usize),
}

impl VerificationReport {
    /// All residuals vanish.
    pub fn passed(&self) -> bool {
        self.tau2.is_zero()
            && self.closed.iter().all(Form::is_zero)
            && self.instanton.iter().all(Form::is_zero)
            && self.bianchi.as_ref().is_some_and(Form::is_zero)
            && self.scal_identity.as_ref().is_some_and(|r| *r == int(0))
    }

    /// Report lines in a fixed order.
    pub fn lines(&self) -> Vec<CheckLine> {
        let mut out = vec![CheckLine::form("g2t", &self.tau2)];
        for (r, f) in self.closed.iter().enumerate() {
            out.push(CheckLine::form(format!("closed_F{}", r + 1), f));
        }
        for (r, f) in self.instanton.iter().enumerate() {
            out.push(CheckLine::form(format!("instanton_F{}", r + 1), f));
        }
        out.push(match &self.bianchi {
            Some(res) => CheckLine::form("bianchi", res),
            None => CheckLine::not_applicable("bianchi"),
        });
        out.push(match &self.scal_identity {
            Some(res) => CheckLine::scalar("scal_identity", res),
            None => CheckLine::not_applicable("scal_identity"),
        });
        out
    }
}

/// Checks the invariant heterotic system for the standard `φ` on `alg`.
pub fn verify(alg: &LieAlgebra, g: &GaugeField) -> Result<VerificationReport, HetError> {
    let t = g2::torsion(alg)?;
    let psi: Form = g2::standard_psi();
    let closed = g.forms.iter().map(|f| alg.d(f)).collect();
    let instanton = g.forms.iter().map(|f| f.wedge(&psi)).collect();
    let (bianchi, scal_identity) = if t.tau2.is_zero() {
        let h = g2::torsion_h_from(&t)?;
        let res = alg.d(&h) - g.pairing_square();
        (Some(res), Some(scal_residual(alg, g, &t, &h)))
    } else {
        (None, None)
    };
    Ok(VerificationReport {
        lambda: t.lambda.clone(),
        tau2: t.tau2.clone(),
        torsion: t,
        closed,
        instanton,
        bianchi,
        scal_identity,
        signature: signature(g),
    })
}

/// Counts of positive and negative `ε_r`.
pub fn signature(g: &GaugeField) -> (usize, usize) {
    let pos = g.eps.iter().filter(|e| **e > int(0)).count();
    (pos, g.eps.len() - pos)
}

fn scal_residual(alg: &LieAlgebra, g: &GaugeField, t: &TorsionForms, h: &Form) -> Rational {
    let delta = g2::codifferential_of(alg, &t.tau1);
    alg.scalar_curvature() - h.norm2() / int(2) + g.pairing_norm()
        - delta * int(8)
        - t.tau1.norm2() * int(16)
        - t.lambda.clone() * &t.lambda * int(4)
}

/// `Scal − ½|H|² + Σ ε_r|F^r|² − 8δτ₁ − 16|τ₁|² − 4λ²`; zero on every solution.
pub fn scal_identity_check(alg: &LieAlgebra, g: &GaugeField) -> Result<Rational, HetError> {
    let t = g2::torsion(alg)?;
    let h = g2::torsion_h_from(&t)?;
    Ok(scal_residual(alg, g, &t, &h))
}

/// Every `F^r` has integer coefficients on the coframe blades.
pub fn integrality_check(g: &GaugeField) -> bool {
    g.forms.iter().all(Form::is_integral)
}
