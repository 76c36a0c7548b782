//! The standard G₂-structure on a 7-dimensional Lie algebra and its intrinsic
//! torsion.
//!
//! With `φ` the standard 3-form in the given orthonormal coframe and `ψ = *φ`,
//! the torsion forms are
//!
//! ```text
//! τ₀ = 1/7 *(φ ∧ dφ)            τ₁ = 1/12 *(φ ∧ *dφ)
//! τ₂ = *(4 τ₁ ∧ ψ − dψ)         τ₃ = *(dφ − τ₀ ψ − 3 τ₁ ∧ φ)
//! ```
//!
//! so that `dφ = τ₀ψ + 3τ₁∧φ + *τ₃` and `dψ = 4τ₁∧ψ − *τ₂`. Membership of
//! `τ₂` in `Λ²₁₄` and of `τ₃` in `Λ³₂₇` is checked on every extraction.

use thiserror::Error;

use crate::exterior::Form;
use crate::nilalg::LieAlgebra;
use crate::scalar::{Rational, Scalar};

/// Errors raised by torsion computations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum G2Error {
    #[error("G2-structures live in dimension 7, got {0}")]
    Dimension(usize),
    #[error("no characteristic connection: tau2 = {0} is nonzero")]
    NoCharacteristicConnection(String),
    #[error("internal error: torsion component {name} failed its type check, residual {residual}")]
    Residual { name: &'static str, residual: String },
}

fn e<S: Scalar>(ix: &[usize]) -> Form<S> {
    Form::e(7, ix)
}

/// `φ = e^{127} + e^{347} + e^{567} + e^{135} − e^{245} − e^{146} − e^{236}`.
pub fn standard_phi<S: Scalar>() -> Form<S> {
    e(&[1, 2, 7]) + e(&[3, 4, 7]) + e(&[5, 6, 7]) + e(&[1, 3, 5])
        - e(&[2, 4, 5])
        - e(&[1, 4, 6])
        - e(&[2, 3, 6])
}

/// `ψ = e^{1234} + e^{1256} + e^{3456} + e^{1367} + e^{1457} + e^{2357} − e^{2467}`.
pub fn standard_psi<S: Scalar>() -> Form<S> {
    e(&[1, 2, 3, 4]) + e(&[1, 2, 5, 6]) + e(&[3, 4, 5, 6]) + e(&[1, 3, 6, 7])
        + e(&[1, 4, 5, 7])
        + e(&[2, 3, 5, 7])
        - e(&[2, 4, 6, 7])
}

/// Intrinsic torsion of the standard G₂-structure on an algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct TorsionForms<S: Scalar = Rational> {
    pub tau0: S,
    pub tau1: Form<S>,
    pub tau2: Form<S>,
    pub tau3: Form<S>,
    /// `λ = 7/12 τ₀`.
    pub lambda: S,
    pub dphi: Form<S>,
    pub dpsi: Form<S>,
    /// `τ₂ ∧ φ = −*τ₂`.
    pub tau2_in_14: bool,
    /// `τ₃ ∧ φ = 0` and `τ₃ ∧ ψ = 0`.
    pub tau3_in_27: bool,
}

/// Torsion class predicates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub torsion_free: bool,
    /// `dψ = 0`, i.e. `τ₁ = τ₂ = 0`.
    pub coclosed: bool,
    /// `τ₂ = 0`.
    pub g2t: bool,
}

impl<S: Scalar> TorsionForms<S> {
    pub fn classify(&self) -> Classification {
        let g2t = self.tau2.is_zero();
        let coclosed = g2t && self.tau1.is_zero();
        Classification {
            torsion_free: coclosed && self.tau0.is_zero() && self.tau3.is_zero(),
            coclosed,
            g2t,
        }
    }
}

/// Extracts `(τ₀, τ₁, τ₂, τ₃)` for the standard `φ` on `alg`.
pub fn torsion<S: Scalar>(alg: &LieAlgebra<S>) -> Result<TorsionForms<S>, G2Error> {
    if alg.dim() != 7 {
        return Err(G2Error::Dimension(alg.dim()));
    }
    let phi = standard_phi::<S>();
    let psi = standard_psi::<S>();
    let dphi = alg.d(&phi);
    let dpsi = alg.d(&psi);
    let frac = |p: i64, q: i64| S::int(p) / S::int(q);

    let tau0 = phi.wedge(&dphi).hodge().scalar_part() * frac(1, 7);
    let tau1 = phi.wedge(&dphi.hodge()).hodge().scale(&frac(1, 12));
    let tau2 = (tau1.wedge(&psi).scale(&S::int(4)) - &dpsi).hodge();
    let tau3 = (&dphi - psi.scale(&tau0) - tau1.wedge(&phi).scale(&S::int(3))).hodge();

    let tau2_res = tau2.wedge(&phi) + tau2.hodge();
    let tau3_res_phi = tau3.wedge(&phi);
    let tau3_res_psi = tau3.wedge(&psi);
    if !tau2_res.is_zero() {
        return Err(G2Error::Residual {
            name: "tau2",
            residual: tau2_res.to_string(),
        });
    }
    if !tau3_res_phi.is_zero() || !tau3_res_psi.is_zero() {
        return Err(G2Error::Residual {
            name: "tau3",
            residual: format!("{tau3_res_phi} ; {tau3_res_psi}"),
        });
    }
    let lambda = tau0.clone() * frac(7, 12);
    Ok(TorsionForms {
        tau0,
        tau1,
        tau2,
        tau3,
        lambda,
        dphi,
        dpsi,
        tau2_in_14: true,
        tau3_in_27: true,
    })
}

/// Torsion class of the standard structure on `alg`.
pub fn classify<S: Scalar>(alg: &LieAlgebra<S>) -> Result<Classification, G2Error> {
    Ok(torsion(alg)?.classify())
}

/// Torsion 3-form `H = 1/6 τ₀ φ − τ₁ ⌟ ψ − τ₃` of the characteristic
/// connection, defined only when `τ₂ = 0`.
pub fn torsion_h<S: Scalar>(alg: &LieAlgebra<S>) -> Result<Form<S>, G2Error> {
    let t = torsion(alg)?;
    torsion_h_from(&t)
}

/// [`torsion_h`] from already computed torsion forms.
pub fn torsion_h_from<S: Scalar>(t: &TorsionForms<S>) -> Result<Form<S>, G2Error> {
    if !t.tau2.is_zero() {
        return Err(G2Error::NoCharacteristicConnection(t.tau2.to_string()));
    }
    let phi = standard_phi::<S>();
    let psi = standard_psi::<S>();
    let sixth = S::one() / S::int(6);
    Ok(phi.scale(&(t.tau0.clone() * sixth)) - t.tau1.contract(&psi) - &t.tau3)
}

/// The alternative expression `7/6 τ₀ φ − *dφ`, valid when `τ₁ = τ₂ = 0`.
pub fn torsion_h_coclosed<S: Scalar>(t: &TorsionForms<S>) -> Form<S> {
    let phi = standard_phi::<S>();
    phi.scale(&(t.tau0.clone() * S::int(7) / S::int(6))) - t.dphi.hodge()
}

/// Codifferential `δτ₁ = −*d*τ₁` of the Lee form, a constant for invariant data.
pub fn codifferential_tau1<S: Scalar>(alg: &LieAlgebra<S>) -> Result<S, G2Error> {
    let t = torsion(alg)?;
    Ok(codifferential_of(alg, &t.tau1))
}

/// `δθ = −*d*θ` for an invariant 1-form `θ`.
pub fn codifferential_of<S: Scalar>(alg: &LieAlgebra<S>, theta: &Form<S>) -> S {
    -alg.d(&theta.hodge()).hodge().scalar_part()
}
