//! Cocycle constants for principal torus bundles over 2-step nilmanifolds.
//!
//! Let `𝔫 = 𝔳 ⊕ 𝔫′` be a 2-step nilpotent algebra in normal form: the closed
//! coframe indices span `𝔳*` and the derived indices span `(𝔫′)*`. Write `e_i`
//! for the basis of `𝔳` and `z_r` for the basis of `𝔫′`. When the structure
//! constants are integers, the factor-6 lattice
//!
//! ```text
//! Γ = exp(span_ℤ(6e_1, …, 6e_m, z_1, …, z_{n′}))
//! ```
//!
//! is cocompact. A closed integral 2-form `F = F₁ + F₂` with
//! `F₁ = Σ F_rs e^{rs}` and `F₂ = Σ F̃_ir e^i ∧ z^r` determines constants
//! `c(γ₁, γ₂)` whose integrality makes `F` the curvature of a connection on a
//! circle bundle over `Γ\N`. With `η^i = Σ_r F̃_ir z^r` and `dη^i = ½ Σ c_ijk e^{jk}`,
//!
//! ```text
//! c(C₁, C₂) = Σ_{r<s} F_rs e^r(C₁) e^s(C₂) + Σ_i e^i(C₁) η^i(C₂)
//!           − ⅙ Σ c_ijk e^j(C₁) e^i(C₂) e^k(C₂) − ⅓ Σ c_ijk e^i(C₁) e^j(C₁) e^k(C₂).
//! ```
//!
//! Group elements are written in exponential coordinates and multiplied with
//! the exact 2-step product `exp(A) exp(B) = exp(A + B + ½[A, B])`.

use std::fmt;

use num_integer::Integer;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::exterior::Form;
use crate::hetsys::{CheckLine, GaugeField, Status};
use crate::nilalg::LieAlgebra;
use crate::scalar::{int, Rational};

/// Errors raised when splitting a curvature form.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BundleError {
    #[error("algebra is not in normal form: d e{index} involves a derived index")]
    NotNormalForm { index: usize },
    #[error("structure constants are not integers")]
    NonIntegralAlgebra,
    #[error("form is not closed: {0}")]
    NotClosed(String),
    #[error("form is not integral: coefficient {coeff} on {blade}")]
    NotIntegral { blade: String, coeff: String },
    #[error("form has dimension {form}, algebra has dimension {alg}")]
    Dimension { form: usize, alg: usize },
    #[error("lattice vector has {got} coordinates, expected {expected}")]
    LatticeShape { expected: usize, got: usize },
}

/// Integer coordinates of `C = Σ m_i·6e_i + Σ p_j z_j` in the factor-6 lattice.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticeVector {
    pub m: Vec<i64>,
    pub p: Vec<i64>,
}

impl LatticeVector {
    pub fn new(m: Vec<i64>, p: Vec<i64>) -> Self {
        LatticeVector { m, p }
    }

    /// The group element `exp(C)` for lattice spacing `factor` along `𝔳`.
    pub fn element(&self, factor: i64) -> Element {
        Element {
            v: self.m.iter().map(|&x| int(x * factor)).collect(),
            z: self.p.iter().map(|&x| int(x)).collect(),
        }
    }
}

/// A point `exp(C)` of the simply connected group, with `C = Σ v_i e_i + Σ z_r z_r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Element {
    pub v: Vec<Rational>,
    pub z: Vec<Rational>,
}

impl Element {
    pub fn identity(m: usize, nz: usize) -> Self {
        Element {
            v: vec![Rational::zero(); m],
            z: vec![Rational::zero(); nz],
        }
    }

    /// `exp(C)⁻¹ = exp(−C)`.
    pub fn inverse(&self) -> Self {
        Element {
            v: self.v.iter().map(|x| -x).collect(),
            z: self.z.iter().map(|x| -x).collect(),
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.v.iter().map(|x| x.to_string()).collect();
        let z: Vec<String> = self.z.iter().map(|x| x.to_string()).collect();
        write!(f, "({}; {})", v.join(","), z.join(","))
    }
}

/// The splitting `𝔫 = 𝔳 ⊕ 𝔫′` of a normal-form algebra, with structure
/// constants `c^r_jk` defined by `dz^r = −½ Σ c^r_jk e^{jk}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Splitting {
    /// 1-based coframe indices spanning `𝔳*`.
    pub v_indices: Vec<usize>,
    /// 1-based coframe indices spanning `(𝔫′)*`.
    pub z_indices: Vec<usize>,
    /// `c^r_jk = ⟨[e_j, e_k], z_r⟩`, indexed `[r][j][k]` from 0 in splitting order.
    pub structure: Vec<Vec<Vec<Rational>>>,
}

impl Splitting {
    /// Splits a normal-form algebra with integer structure constants.
    pub fn of(alg: &LieAlgebra) -> Result<Self, BundleError> {
        let n = alg.dim();
        let z_indices = alg.derived_indices();
        let v_indices: Vec<usize> = (1..=n).filter(|i| !z_indices.contains(i)).collect();
        let m = v_indices.len();
        let mut structure = vec![vec![vec![Rational::zero(); m]; m]; z_indices.len()];
        for (r, &zi) in z_indices.iter().enumerate() {
            let dz = alg.differential(zi);
            for (blade, c) in dz.terms() {
                if !c.is_integer() {
                    return Err(BundleError::NonIntegralAlgebra);
                }
                let idx = blade.indices();
                let pos = |i: usize| v_indices.iter().position(|&x| x == i);
                let (Some(j), Some(k)) = (pos(idx[0]), pos(idx[1])) else {
                    return Err(BundleError::NotNormalForm { index: zi });
                };
                structure[r][j][k] = -c.clone();
                structure[r][k][j] = c.clone();
            }
        }
        Ok(Splitting {
            v_indices,
            z_indices,
            structure,
        })
    }

    /// `dim 𝔳`.
    pub fn m(&self) -> usize {
        self.v_indices.len()
    }

    /// `dim 𝔫′`.
    pub fn nz(&self) -> usize {
        self.z_indices.len()
    }

    /// Generators `6e_i` and `z_r` of the factor-6 lattice (or another spacing).
    pub fn generators(&self, factor: i64) -> Vec<Element> {
        let (m, nz) = (self.m(), self.nz());
        let mut out = Vec::with_capacity(m + nz);
        for i in 0..m {
            let mut g = Element::identity(m, nz);
            g.v[i] = int(factor);
            out.push(g);
        }
        for r in 0..nz {
            let mut g = Element::identity(m, nz);
            g.z[r] = int(1);
            out.push(g);
        }
        out
    }

    /// `exp(A) exp(B) = exp(A + B + ½[A, B])`.
    pub fn product(&self, a: &Element, b: &Element) -> Element {
        let v = a.v.iter().zip(&b.v).map(|(x, y)| x + y).collect();
        let half = Rational::new(1.into(), 2.into());
        let z = (0..self.nz())
            .map(|r| {
                let mut bracket = Rational::zero();
                for (j, aj) in a.v.iter().enumerate() {
                    if aj.is_zero() {
                        continue;
                    }
                    for (k, bk) in b.v.iter().enumerate() {
                        let c = &self.structure[r][j][k];
                        if !c.is_zero() && !bk.is_zero() {
                            bracket += c * aj * bk;
                        }
                    }
                }
                &a.z[r] + &b.z[r] + half.clone() * bracket
            })
            .collect();
        Element { v, z }
    }
}

/// A closed integral 2-form split as `F₁ + F₂` along `𝔫 = 𝔳 ⊕ 𝔫′`.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitGauge {
    pub splitting: Splitting,
    /// `F_rs = F₁(e_r, e_s)`, a skew `m × m` integer matrix.
    pub f1: Vec<Vec<Rational>>,
    /// `F̃_ir = F₂(e_i, z_r)`, an `m × n′` integer matrix.
    pub f2: Vec<Vec<Rational>>,
    /// `c_ijk = −Σ_r F̃_ir c^r_jk`, skew in `j, k`.
    pub c: Vec<Vec<Vec<Rational>>>,
}

impl SplitGauge {
    pub fn is_zero(&self) -> bool {
        self.f1.iter().flatten().all(Zero::is_zero) && self.f2.iter().flatten().all(Zero::is_zero)
    }

    /// `c(γ₁, γ₂)` for two group elements.
    pub fn cocycle_at(&self, c1: &Element, c2: &Element) -> Rational {
        let m = self.splitting.m();
        let mut total = Rational::zero();
        for r in 0..m {
            for s in r + 1..m {
                if !self.f1[r][s].is_zero() {
                    total += &self.f1[r][s] * &c1.v[r] * &c2.v[s];
                }
            }
        }
        for i in 0..m {
            if c1.v[i].is_zero() {
                continue;
            }
            let eta: Rational = self.f2[i].iter().zip(&c2.z).map(|(f, z)| f * z).sum();
            total += &c1.v[i] * eta;
        }
        let sixth = Rational::new(1.into(), 6.into());
        let third = Rational::new(1.into(), 3.into());
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    let c = &self.c[i][j][k];
                    if c.is_zero() {
                        continue;
                    }
                    total -= &sixth * c * &c1.v[j] * &c2.v[i] * &c2.v[k];
                    total -= &third * c * &c1.v[i] * &c1.v[j] * &c2.v[k];
                }
            }
        }
        total
    }
}

/// Splits a closed integral 2-form into its `Λ²𝔳*` and `𝔳*⊗(𝔫′)*` parts.
pub fn split_gauge(alg: &LieAlgebra, f: &Form) -> Result<SplitGauge, BundleError> {
    if f.dim() != alg.dim() || f.degree() != 2 {
        return Err(BundleError::Dimension {
            form: f.dim(),
            alg: alg.dim(),
        });
    }
    let splitting = Splitting::of(alg)?;
    let df = alg.d(f);
    if !df.is_zero() {
        return Err(BundleError::NotClosed(format!("dF = {df}")));
    }
    let (m, nz) = (splitting.m(), splitting.nz());
    let mut f1 = vec![vec![Rational::zero(); m]; m];
    let mut f2 = vec![vec![Rational::zero(); nz]; m];
    for (blade, c) in f.terms() {
        if !c.is_integer() {
            return Err(BundleError::NotIntegral {
                blade: Form::from_blade(blade, int(1)).to_string(),
                coeff: c.to_string(),
            });
        }
        let idx = blade.indices();
        let vpos = |i: usize| splitting.v_indices.iter().position(|&x| x == i);
        let zpos = |i: usize| splitting.z_indices.iter().position(|&x| x == i);
        match (vpos(idx[0]), vpos(idx[1]), zpos(idx[0]), zpos(idx[1])) {
            (Some(r), Some(s), _, _) => {
                f1[r][s] = c.clone();
                f1[s][r] = -c.clone();
            }
            (Some(i), None, _, Some(r)) => f2[i][r] = c.clone(),
            (None, Some(i), Some(r), _) => f2[i][r] = -c.clone(),
            _ => {
                return Err(BundleError::NotClosed(format!(
                    "component on {} pairs two derived directions",
                    Form::from_blade(blade, int(1))
                )))
            }
        }
    }
    let c = cijk(&splitting, &f2);
    Ok(SplitGauge {
        splitting,
        f1,
        f2,
        c,
    })
}

fn cijk(sp: &Splitting, f2: &[Vec<Rational>]) -> Vec<Vec<Vec<Rational>>> {
    let m = sp.m();
    let mut c = vec![vec![vec![Rational::zero(); m]; m]; m];
    for (i, row) in f2.iter().enumerate() {
        for (r, fir) in row.iter().enumerate() {
            if fir.is_zero() {
                continue;
            }
            for j in 0..m {
                for k in 0..m {
                    c[i][j][k] -= fir * &sp.structure[r][j][k];
                }
            }
        }
    }
    c
}

/// `c(γ₁, γ₂)` for two vectors of the factor-6 lattice.
pub fn cocycle_c(
    g: &SplitGauge,
    c1: &LatticeVector,
    c2: &LatticeVector,
) -> Result<Rational, BundleError> {
    let (m, nz) = (g.splitting.m(), g.splitting.nz());
    for c in [c1, c2] {
        if c.m.len() != m || c.p.len() != nz {
            return Err(BundleError::LatticeShape {
                expected: m + nz,
                got: c.m.len() + c.p.len(),
            });
        }
    }
    Ok(g.cocycle_at(&c1.element(6), &c2.element(6)))
}

/// The cocycle condition `c_ijk + c_jki + c_kij = 0` for the `𝔳*⊗(𝔫′)*` form
/// `f2`, which holds exactly when `d f2 = 0`.
///
/// # Panics
///
/// Panics if the cyclic-sum test and the Chevalley–Eilenberg differential
/// disagree, which would indicate an internal error.
pub fn cocycle_condition_check(alg: &LieAlgebra, f2: &Form) -> Result<bool, BundleError> {
    let sp = Splitting::of(alg)?;
    let (m, nz) = (sp.m(), sp.nz());
    let mut tilde = vec![vec![Rational::zero(); nz]; m];
    for (blade, c) in f2.terms() {
        let idx = blade.indices();
        let vpos = |i: usize| sp.v_indices.iter().position(|&x| x == i);
        let zpos = |i: usize| sp.z_indices.iter().position(|&x| x == i);
        match (vpos(idx[0]), zpos(idx[1]), zpos(idx[0]), vpos(idx[1])) {
            (Some(i), Some(r), _, _) => tilde[i][r] = c.clone(),
            (_, _, Some(r), Some(i)) => tilde[i][r] = -c.clone(),
            _ => {
                return Err(BundleError::NotClosed(format!(
                    "component on {} is not of mixed type",
                    Form::from_blade(blade, int(1))
                )))
            }
        }
    }
    let c = cijk(&sp, &tilde);
    let mut cyclic = true;
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                if !(&c[i][j][k] + &c[j][k][i] + &c[k][i][j]).is_zero() {
                    cyclic = false;
                }
            }
        }
    }
    assert_eq!(cyclic, alg.d(f2).is_zero(), "cocycle condition disagrees with dF");
    Ok(cyclic)
}

/// A pair of group elements on which the cocycle is not an integer.
#[derive(Debug, Clone, PartialEq)]
pub struct Failure {
    pub first: Element,
    pub second: Element,
    pub value: Rational,
}

/// Outcome of [`integrality_scan`].
#[derive(Debug, Clone, PartialEq)]
pub struct ScanReport {
    /// Number of ordered pairs evaluated.
    pub pairs: usize,
    /// Pairs with a non-integral value, in scan order.
    pub failures: Vec<Failure>,
    /// Largest rational `q` with every sampled value in `qℤ` (zero when all vanish).
    /// The values are integral exactly when `q` is an integer; its size is the
    /// margin left by the lattice spacing.
    pub content: Rational,
}

impl ScanReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Number of words of length two and three kept in the deterministic sample.
const WORD_SAMPLE: usize = 48;

/// Evaluates the cocycle on every ordered pair of generators and their
/// inverses, and on every ordered pair drawn from a deterministic sample of
/// products of up to three generators.
pub fn integrality_scan(g: &SplitGauge, generators: &[Element]) -> ScanReport {
    let sp = &g.splitting;
    let mut letters: Vec<Element> = generators.to_vec();
    letters.extend(generators.iter().map(Element::inverse));

    // Words of length two and three in lexicographic order, thinned by a
    // fixed stride so the sample spreads over all letters.
    let nl = letters.len();
    let total_words = nl * nl + nl * nl * nl;
    let stride = (total_words / WORD_SAMPLE).max(1);
    let mut sample = letters.clone();
    let mut idx = 0usize;
    for a in 0..nl {
        for b in 0..nl {
            if idx % stride == 0 {
                sample.push(sp.product(&letters[a], &letters[b]));
            }
            idx += 1;
        }
    }
    for a in 0..nl {
        for b in 0..nl {
            for c in 0..nl {
                if idx % stride == 0 {
                    let ab = sp.product(&letters[a], &letters[b]);
                    sample.push(sp.product(&ab, &letters[c]));
                }
                idx += 1;
            }
        }
    }

    let values: Vec<(usize, usize, Rational)> = (0..sample.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let sample = &sample;
            (0..sample.len()).map(move |j| (i, j, g.cocycle_at(&sample[i], &sample[j])))
        })
        .collect();

    let mut content = Rational::zero();
    let mut failures = Vec::new();
    for (i, j, v) in &values {
        content = rational_gcd(&content, v);
        if !v.is_integer() {
            failures.push(Failure {
                first: sample[*i].clone(),
                second: sample[*j].clone(),
                value: v.clone(),
            });
        }
    }
    ScanReport {
        pairs: values.len(),
        failures,
        content,
    }
}

/// `gcd(a, b)` in the sense of fractional ideals: `gcd(numerators) / lcm(denominators)`.
fn rational_gcd(a: &Rational, b: &Rational) -> Rational {
    if a.is_zero() {
        return b.abs();
    }
    if b.is_zero() {
        return a.abs();
    }
    let num = a.numer().gcd(b.numer());
    let den = a.denom().lcm(b.denom());
    Rational::new(num, den)
}

/// Smallest lattice spacing among `candidates` for which the scan passes.
pub fn smallest_integral_factor(g: &SplitGauge, candidates: &[i64]) -> Option<i64> {
    candidates
        .iter()
        .copied()
        .find(|&f| integrality_scan(g, &g.splitting.generators(f)).passed())
}

/// Runs the factor-6 scan on every curvature form of a gauge field.
///
/// Returns one check line per form, `bundle_F<r>`, whose residual is the
/// first non-integral cocycle value found.
pub fn bundle_check(alg: &LieAlgebra, gauge: &GaugeField) -> Result<Vec<CheckLine>, BundleError> {
    let mut lines = Vec::new();
    for (r, f) in gauge.forms().iter().enumerate() {
        let g = split_gauge(alg, f)?;
        let report = integrality_scan(&g, &g.splitting.generators(6));
        let name = format!("bundle_F{}", r + 1);
        lines.push(match report.failures.first() {
            None => CheckLine::flag(name, true),
            Some(fail) => CheckLine {
                name,
                status: Status::Fail,
                residual: Some(fail.value.to_string()),
            },
        });
    }
    Ok(lines)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_is_associative_and_inverse() {
        let alg = LieAlgebra::center_last(7, vec![Form::e(7, &[1, 2]), Form::e(7, &[1, 3])]).unwrap();
        let sp = Splitting::of(&alg).unwrap();
        let g = sp.generators(1);
        let ab_c = sp.product(&sp.product(&g[0], &g[1]), &g[2]);
        let a_bc = sp.product(&g[0], &sp.product(&g[1], &g[2]));
        assert_eq!(ab_c, a_bc);
        let id = sp.product(&g[0], &g[0].inverse());
        assert_eq!(id, Element::identity(5, 2));
        // [e_1, e_2] = −z_1 with d z^1 = e^{12}.
        let c = sp.product(&g[0], &g[1]);
        assert_eq!(c.z[0], Rational::new((-1).into(), 2.into()));
    }

    #[test]
    fn rational_gcd_is_ideal_gcd() {
        let r = crate::scalar::rat;
        assert_eq!(rational_gcd(&r(36, 1), &r(-24, 1)), r(12, 1));
        assert_eq!(rational_gcd(&r(1, 2), &r(1, 3)), r(1, 6));
        assert_eq!(rational_gcd(&r(0, 1), &r(-5, 1)), r(5, 1));
    }
}
