//! Reduction of the heterotic system when the derived algebra has dimension
//! two or three.
//!
//! The coframe is split as `𝔯 ⊕ ⟨z¹, z², z³⟩` with `𝔯 = ⟨e₁, …, e₄⟩` and
//! `zⁱ = e⁴⁺ⁱ`. The standard SU(2)-structure on `𝔯` is
//!
//! ```text
//! ω₁ = e¹³ − e²⁴,   ω₂ = −e¹⁴ − e²³,   ω₃ = e¹² + e³⁴,
//! ```
//!
//! so that `φ = Σ ωᵢ ∧ zⁱ + z¹²³`. The algebra is given by `d zⁱ = αᵢ` with
//! `αᵢ ∈ Λ²𝔯*`, where `α₃ = 0` exactly when the derived algebra is a plane.
//! Forms on `𝔯` are handled in dimension 4.

use thiserror::Error;

use crate::exterior::{sum, Form};
use crate::g2;
use crate::hetsys::{self, CheckLine, GaugeField, HetError, Status};
use crate::nilalg::LieAlgebra;
use crate::scalar::{int, rat, Rational};

/// Errors raised by the plane and space centre reductions.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Su2Error {
    #[error("expected derived algebra <e5,e6> or <e5,e6,e7> with structure forms on e1..e4")]
    NotNormalForm,
    #[error("expected a derived algebra of dimension {expected}, got {got}")]
    WrongDerivedDim { expected: usize, got: usize },
    #[error("the structure is not G2T: a-matrix is not symmetric")]
    NotG2T,
    #[error("expected a {degree}-form in dimension {dim}")]
    Shape { dim: usize, degree: usize },
    #[error("dF != 0: {0}")]
    NotClosed(String),
    #[error("not an instanton: F ^ psi = {0}")]
    NotInstanton(String),
    #[error("{0} is not integral")]
    NotIntegral(String),
    #[error("the algebra fails validation: {0}")]
    InvalidAlgebra(String),
    #[error("the data do not solve the reduced system: {0}")]
    NotASolution(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Het(#[from] HetError),
}

fn e4(ix: &[usize]) -> Form {
    Form::e(4, ix)
}

/// `(ω₁, ω₂, ω₃)` on `𝔯`.
pub fn omegas() -> [Form; 3] {
    [
        e4(&[1, 3]) - e4(&[2, 4]),
        -e4(&[1, 4]) - e4(&[2, 3]),
        e4(&[1, 2]) + e4(&[3, 4]),
    ]
}

/// `J_i v = v♯ ⌟ ω_i` on 1-forms, so that `ω_i(·,·) = ⟨J_i ·, ·⟩`.
pub fn j_action(i: usize, v: &Form) -> Form {
    v.contract(&omegas()[i - 1])
}

/// The matrix of `J_i` on vectors: column `a` holds `J_i e_a`.
pub fn j_matrix(i: usize) -> Vec<Vec<Rational>> {
    let w = &omegas()[i - 1];
    (0..4)
        .map(|b| (0..4).map(|a| pair_coeff(w, a + 1, b + 1)).collect())
        .collect()
}

/// `ω(e_a, e_b)` for a 2-form.
fn pair_coeff(w: &Form, a: usize, b: usize) -> Rational {
    match a.cmp(&b) {
        std::cmp::Ordering::Less => w.coeff_of(&[a, b]),
        std::cmp::Ordering::Greater => -w.coeff_of(&[b, a]),
        std::cmp::Ordering::Equal => int(0),
    }
}

/// Lifts a form on `𝔯` into the 7-dimensional algebra.
pub fn lift(a: &Form) -> Form {
    a.relabel(7, |i| i).expect("4 into 7")
}

/// `zⁱ = e⁴⁺ⁱ` in the algebra.
pub fn z(i: usize) -> Form {
    Form::e(7, &[4 + i])
}

/// Self-dual and anti-self-dual parts of a 2-form on `𝔯`.
pub fn sd_asd(a: &Form) -> Result<(Form, Form), Su2Error> {
    if a.dim() != 4 || a.degree() != 2 {
        return Err(Su2Error::Shape { dim: 4, degree: 2 });
    }
    let star = a.hodge();
    let half = rat(1, 2);
    Ok(((a + &star).scale(&half), (a - &star).scale(&half)))
}

/// The SU(2) data of an algebra in normal form.
#[derive(Debug, Clone, PartialEq)]
pub struct SU2Split {
    /// `(α₁, α₂, α₃)` on `𝔯`.
    pub alphas: [Form; 3],
    /// Dimension of the derived algebra, 2 or 3.
    pub derived_dim: usize,
}

impl SU2Split {
    pub fn of(alg: &LieAlgebra) -> Result<Self, Su2Error> {
        if alg.dim() != 7 {
            return Err(Su2Error::NotNormalForm);
        }
        let derived = alg.derived_indices();
        let nd = derived.len();
        if !(derived == vec![5, 6] || derived == vec![5, 6, 7]) {
            return Err(Su2Error::NotNormalForm);
        }
        let mut alphas: [Form; 3] = std::array::from_fn(|_| Form::zero(4, 2));
        for i in 1..=3 {
            let a = alg.differential(4 + i);
            if a.support_mask() & !0b1111 != 0 {
                return Err(Su2Error::NotNormalForm);
            }
            alphas[i - 1] = restrict(a);
        }
        Ok(SU2Split {
            alphas,
            derived_dim: nd,
        })
    }
}

fn restrict(a: &Form) -> Form {
    let mut out = Form::zero(4, a.degree());
    for (b, c) in a.terms() {
        if b.mask() & !0b1111 == 0 {
            out = out + Form::term(4, &b.indices(), c.clone()).unwrap();
        }
    }
    out
}

/// `a_ij = ⟨ω_i, α_j⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AMatrix(pub [[Rational; 3]; 3]);

impl AMatrix {
    pub fn is_symmetric(&self) -> bool {
        (0..3).all(|i| (0..3).all(|j| self.0[i][j] == self.0[j][i]))
    }

    pub fn trace(&self) -> Rational {
        self.0[0][0].clone() + &self.0[1][1] + &self.0[2][2]
    }
}

pub fn a_matrix(alg: &LieAlgebra) -> Result<AMatrix, Su2Error> {
    let s = SU2Split::of(alg)?;
    let w = omegas();
    Ok(AMatrix(std::array::from_fn(|i| {
        std::array::from_fn(|j| w[i].inner(&s.alphas[j]))
    })))
}

/// `λ = (a₁₁ + a₂₂ + a₃₃)/6`.
pub fn lambda_of(alg: &LieAlgebra) -> Result<Rational, Su2Error> {
    Ok(a_matrix(alg)?.trace() / int(6))
}

/// G₂T, equivalently symmetry of the a-matrix.
pub fn is_g2t(alg: &LieAlgebra) -> Result<bool, Su2Error> {
    Ok(a_matrix(alg)?.is_symmetric())
}

/// `−4λ Σ αᵢ ∧ z^{jk} + (12λ² − Σ|αᵢ|²) e¹²³⁴` for cyclic `(i, j, k)`.
pub fn dh_closed_form(alg: &LieAlgebra) -> Result<Form, Su2Error> {
    let a = a_matrix(alg)?;
    if !a.is_symmetric() {
        return Err(Su2Error::NotG2T);
    }
    let s = SU2Split::of(alg)?;
    let lambda = a.trace() / int(6);
    let pairs = [(2, 3), (3, 1), (1, 2)];
    let mut dh = Form::zero(7, 4);
    for (i, (j, k)) in pairs.into_iter().enumerate() {
        dh = dh + lift(&s.alphas[i]).wedge(&z(j)).wedge(&z(k)).scale(&(int(-4) * &lambda));
    }
    let norms: Rational = s.alphas.iter().map(Form::norm2).sum();
    let vol = Form::e(7, &[1, 2, 3, 4]);
    Ok(dh + vol.scale(&(lambda.clone() * &lambda * int(12) - norms)))
}

/// One curvature form split as `F = F₀ + Σ vᵢ ∧ zⁱ + a₁ z²³ + a₂ z³¹ + a₃ z¹²`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaugeComponents {
    /// `F₀` on `𝔯`.
    pub f0: Form,
    /// `(v₁, v₂, v₃)` on `𝔯`.
    pub v: [Form; 3],
    /// `(a₁, a₂, a₃)`, zero for a closed instanton.
    pub a: [Rational; 3],
}

impl GaugeComponents {
    /// Splits any 2-form on the algebra.
    pub fn split(f: &Form) -> Result<Self, Su2Error> {
        if f.dim() != 7 || f.degree() != 2 {
            return Err(Su2Error::Shape { dim: 7, degree: 2 });
        }
        let mut f0 = Form::zero(4, 2);
        let mut v: [Form; 3] = std::array::from_fn(|_| Form::zero(4, 1));
        let mut a: [Rational; 3] = std::array::from_fn(|_| int(0));
        for (b, c) in f.terms() {
            match b.indices()[..] {
                [x, y] if y <= 4 => f0 = f0 + Form::term(4, &[x, y], c.clone()).unwrap(),
                [x, y] if x <= 4 => {
                    v[y - 5] = &v[y - 5] + Form::term(4, &[x], c.clone()).unwrap();
                }
                [5, 6] => a[2] = c.clone(),
                [5, 7] => a[1] = -c.clone(),
                [6, 7] => a[0] = c.clone(),
                _ => unreachable!("2-form blade"),
            }
        }
        Ok(GaugeComponents { f0, v, a })
    }

    /// Components with `a = 0`.
    pub fn new(f0: Form, v: [Form; 3]) -> Self {
        GaugeComponents {
            f0,
            v,
            a: std::array::from_fn(|_| int(0)),
        }
    }

    /// The ambient 2-form.
    pub fn ambient(&self) -> Form {
        let mut f = lift(&self.f0);
        for i in 1..=3 {
            f = f + lift(&self.v[i - 1]).wedge(&z(i));
        }
        let zz = [(2, 3), (3, 1), (1, 2)];
        for (i, (j, k)) in zz.into_iter().enumerate() {
            f = f + z(j).wedge(&z(k)).scale(&self.a[i]);
        }
        f
    }
}

/// Splits a closed instanton, checking every condition of the decomposition.
pub fn instanton_normal_form(alg: &LieAlgebra, f: &Form) -> Result<GaugeComponents, Su2Error> {
    let s = SU2Split::of(alg)?;
    let c = GaugeComponents::split(f)?;
    let df = alg.d(f);
    if c.a.iter().any(|x| *x != int(0)) || !df.is_zero() {
        return Err(Su2Error::NotClosed(df.to_string()));
    }
    let fpsi = f.wedge(&g2::standard_psi());
    if !fpsi.is_zero() {
        return Err(Su2Error::NotInstanton(fpsi.to_string()));
    }
    let w = omegas();
    let closed_part = sum(
        Form::zero(4, 3),
        (0..3).map(|i| c.v[i].wedge(&s.alphas[i])),
    );
    let omega_part = sum(Form::zero(4, 3), (0..3).map(|i| c.v[i].wedge(&w[i])));
    let asd = w.iter().all(|wi| c.f0.wedge(wi).is_zero()) && c.f0.hodge() == -c.f0.clone();
    let v3 = -j_action(2, &c.v[0]) + j_action(1, &c.v[1]);
    if !closed_part.is_zero() || !omega_part.is_zero() || !asd || v3 != c.v[2] {
        return Err(Su2Error::Inconsistent(format!(
            "decomposition of the instanton {f} violates its own conditions"
        )));
    }
    Ok(c)
}

fn multi(name: &str, residuals: Vec<Form>) -> CheckLine {
    let bad: Vec<String> = residuals
        .iter()
        .filter(|r| !r.is_zero())
        .map(|r| r.to_string())
        .collect();
    CheckLine {
        name: name.to_string(),
        status: Status::from_bool(bad.is_empty()),
        residual: (!bad.is_empty()).then(|| bad.join("; ")),
    }
}

/// Checks equations (1)–(8), the vanishing of the `aᵢ` and the G₂T condition.
///
/// The combined verdict equals [`hetsys::verify`] on the reassembled data.
pub fn system_check(
    alg: &LieAlgebra,
    comps: &[GaugeComponents],
    eps: &[Rational],
) -> Result<Vec<CheckLine>, Su2Error> {
    if comps.len() != eps.len() {
        return Err(HetError::LengthMismatch {
            forms: comps.len(),
            eps: eps.len(),
        }
        .into());
    }
    let s = SU2Split::of(alg)?;
    let a = a_matrix(alg)?;
    let lambda = a.trace() / int(6);
    let w = omegas();
    let al = &s.alphas;
    let two_l = lambda.clone() * int(2);
    let weighted = |f: &dyn Fn(&GaugeComponents) -> Form, zero: Form| {
        sum(zero, comps.iter().zip(eps).map(|(c, e)| f(c).scale(e)))
    };

    let mut lines = vec![CheckLine::flag("g2t", a.is_symmetric())];
    lines.push(CheckLine::flag(
        "a_zero",
        comps.iter().all(|c| c.a.iter().all(|x| *x == int(0))),
    ));
    lines.push(multi(
        "eq1",
        comps
            .iter()
            .flat_map(|c| w.iter().map(move |wi| c.f0.wedge(wi)))
            .collect(),
    ));
    lines.push(multi(
        "eq5",
        (0..3)
            .map(|i| weighted(&|c| c.f0.wedge(&c.v[i]), Form::zero(4, 3)))
            .collect(),
    ));
    lines.push(multi(
        "eq2",
        comps
            .iter()
            .map(|c| sum(Form::zero(4, 3), (0..3).map(|i| c.v[i].wedge(&al[i]))))
            .collect(),
    ));
    lines.push(multi(
        "eq3",
        comps
            .iter()
            .map(|c| sum(Form::zero(4, 3), (0..3).map(|i| c.v[i].wedge(&w[i]))))
            .collect(),
    ));
    let lhs4: Rational = comps.iter().zip(eps).map(|(c, e)| c.f0.norm2() * e).sum();
    let rhs4: Rational =
        al.iter().map(Form::norm2).sum::<Rational>() - lambda.clone() * &lambda * int(12);
    lines.push(CheckLine::scalar("eq4", &(lhs4 - rhs4)));
    for (name, (i, j), k) in [("eq6", (0, 1), 2), ("eq7", (2, 0), 1), ("eq8", (1, 2), 0)] {
        let lhs = weighted(&|c| c.v[i].wedge(&c.v[j]), Form::zero(4, 2));
        lines.push(CheckLine::form(name, &(lhs - al[k].scale(&two_l))));
    }

    let g = GaugeField::new(comps.iter().map(GaugeComponents::ambient).collect(), eps.to_vec())?;
    let full = hetsys::verify(alg, &g)?.passed();
    if full != lines.iter().all(CheckLine::passed) {
        return Err(Su2Error::Inconsistent(
            "reduced system and full heterotic system disagree".into(),
        ));
    }
    Ok(lines)
}

/// `|φ(z₁, z₂, z₃)|`, which is 1 in normal form: `φ` calibrates the derived algebra.
pub fn calibration_check(alg: &LieAlgebra) -> Result<bool, Su2Error> {
    let s = SU2Split::of(alg)?;
    if s.derived_dim != 3 {
        return Err(Su2Error::WrongDerivedDim {
            expected: 3,
            got: s.derived_dim,
        });
    }
    let phi: Form = g2::standard_phi();
    let value = phi.coeff_of(&[5, 6, 7]);
    Ok(value.clone() * &value == int(1))
}

/// Builds the algebra `d zⁱ = αᵢ` and the gauge field `F^r = F₀^r + Σ vᵢ^r ∧ zⁱ`,
/// and verifies the result.
pub fn assemble(
    alphas: &[Form; 3],
    comps: &[GaugeComponents],
    eps: &[Rational],
) -> Result<(LieAlgebra, GaugeField), Su2Error> {
    for (i, a) in alphas.iter().enumerate() {
        if a.dim() != 4 || a.degree() != 2 {
            return Err(Su2Error::Shape { dim: 4, degree: 2 });
        }
        if !a.is_integral() {
            return Err(Su2Error::NotIntegral(format!("alpha{} = {a}", i + 1)));
        }
    }
    for (r, c) in comps.iter().enumerate() {
        let f = c.ambient();
        if !f.is_integral() {
            return Err(Su2Error::NotIntegral(format!("F{} = {f}", r + 1)));
        }
    }
    let alg = LieAlgebra::center_last(7, alphas.iter().map(lift).collect())
        .map_err(|e| Su2Error::InvalidAlgebra(e.to_string()))?;
    let diag = alg.validate();
    if !diag.passed() {
        return Err(Su2Error::InvalidAlgebra(diag.failures().join("; ")));
    }
    let lines = system_check(&alg, comps, eps)?;
    let failed: Vec<String> = lines
        .iter()
        .filter(|l| !l.passed())
        .map(|l| l.name.clone())
        .collect();
    if !failed.is_empty() {
        return Err(Su2Error::NotASolution(failed.join(", ")));
    }
    let g = GaugeField::new(comps.iter().map(GaugeComponents::ambient).collect(), eps.to_vec())?;
    if !hetsys::verify(&alg, &g)?.passed() {
        return Err(Su2Error::Inconsistent("assembled data fail verification".into()));
    }
    Ok((alg, g))
}
