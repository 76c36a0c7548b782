//! Search in the component reduction (derived dimension two or three).
//!
//! A curvature form without `z^{jk}` part is stored as `x = (v₁, v₂) ∈ ℤ⁸`
//! together with the anti-self-dual coefficients `c ∈ ℤ³` of
//! `F₀ = c₁(e¹² − e³⁴) + c₂(e¹³ + e²⁴) + c₃(e¹⁴ − e²³)`. Two-forms on `𝔯`
//! use the coordinates `(12, 13, 14, 23, 24, 34)` and three-forms
//! `(123, 124, 134, 234)`. With `v₃ = −J₂v₁ + J₁v₂` and the products
//! `P₁ = v₂∧v₃, P₂ = v₃∧v₁, P₃ = v₁∧v₂`, the reduced system for `λ ≠ 0` is
//!
//! ```text
//! αᵢ = (1/2λ) Σ_r ε_r Pᵢ(x_r)
//! Σ_s ε_s Σᵢ vᵢ(x_r) ∧ Pᵢ(x_s) = 0        for every r
//! Σ_r ε_r Σᵢ ⟨ωᵢ, Pᵢ(x_r)⟩ = 12λ²
//! Σ_r ε_r F₀^r ∧ vᵢ(x_r) = 0              for every i
//! Σ_r 2ε_r |c_r|² = Σᵢ |αᵢ|² − 12λ²
//! ```
//!
//! For `λ = 0` the structure is fixed; the first three lines become
//! `Σᵢ vᵢ(x_r) ∧ αᵢ = 0` and `Σ_r ε_r Pᵢ(x_r) = 0`.

use std::collections::HashMap;
use std::sync::OnceLock;

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use super::eps::{pick, signs_match, zeros, EpsSet, Quadratic, Zeros};
use super::lattice::{box_kernel_points, normalize, sign_normal};
use super::{fixed_match, push_rational, EpsMode, OrbitKey, Raw, Run, SearchError, Tally};
use crate::exterior::Form;
use crate::g2::standard_phi;
use crate::hetsys::GaugeField;
use crate::linalg::rank;
use crate::nilalg::{catalog_entry, LieAlgebra};
use crate::scalar::{int, Rational};
use crate::su2red::{self, GaugeComponents, SU2Split};

type V4 = [i64; 4];
type F2 = [i64; 6];
type F3 = [i64; 4];
type X = [i64; 8];
type C = [i64; 3];
/// `(x, c)` of one curvature form.
type Y = [i64; 11];
/// `(α₁, α₂, α₃)` in dense two-form coordinates.
type Alphas = [[Rational; 6]; 3];

const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
const TRIPLES: [(usize, usize, usize); 4] = [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)];
/// Two-form coordinate of `e^{ab}` for `a ≠ b`.
const IDX: [[usize; 4]; 4] = [[6, 0, 1, 2], [0, 6, 3, 4], [1, 3, 6, 5], [2, 4, 5, 6]];
/// Anti-self-dual basis.
const ASD: [F2; 3] = [[1, 0, 0, 0, 0, -1], [0, 1, 0, 0, 1, 0], [0, 0, 1, -1, 0, 0]];
/// `(ω₁, ω₂, ω₃)`.
const OMEGA: [F2; 3] = [[0, 1, 0, 0, -1, 0], [0, 0, -1, -1, 0, 0], [1, 0, 0, 0, 0, 1]];

fn wedge11(a: &V4, b: &V4) -> F2 {
    PAIRS.map(|(i, j)| a[i] * b[j] - a[j] * b[i])
}

fn wedge12(v: &V4, p: &F2) -> F3 {
    TRIPLES.map(|(a, b, c)| v[a] * p[IDX[b][c]] - v[b] * p[IDX[a][c]] + v[c] * p[IDX[a][b]])
}

/// Integer matrices of `J₁, J₂, J₃` acting on 1-forms.
fn j_ints() -> &'static [[V4; 4]; 3] {
    static J: OnceLock<[[V4; 4]; 3]> = OnceLock::new();
    J.get_or_init(|| {
        std::array::from_fn(|i| {
            let m = su2red::j_matrix(i + 1);
            std::array::from_fn(|b| std::array::from_fn(|a| m[b][a].to_integer().to_i64().expect("unit entries")))
        })
    })
}

fn apply_j(i: usize, v: &V4) -> V4 {
    let m = &j_ints()[i];
    std::array::from_fn(|b| (0..4).map(|a| m[b][a] * v[a]).sum())
}

/// `v₃ = −J₂v₁ + J₁v₂`.
fn v3_of(v1: &V4, v2: &V4) -> V4 {
    let a = apply_j(1, v1);
    let b = apply_j(0, v2);
    std::array::from_fn(|k| b[k] - a[k])
}

/// Quantities derived from `x`.
#[derive(Debug, Clone)]
struct Xd {
    v: [V4; 3],
    p: [F2; 3],
    /// `Σᵢ vᵢ ∧ Pᵢ`.
    t: F3,
    /// `Σᵢ ⟨ωᵢ, Pᵢ⟩`.
    q: i64,
}

fn xdata(x: &X) -> Xd {
    let v1 = [x[0], x[1], x[2], x[3]];
    let v2 = [x[4], x[5], x[6], x[7]];
    let v = [v1, v2, v3_of(&v1, &v2)];
    let p = [wedge11(&v[1], &v[2]), wedge11(&v[2], &v[0]), wedge11(&v[0], &v[1])];
    let t = cross_parts(&v, &p);
    let q = (0..3).map(|i| (0..6).map(|m| OMEGA[i][m] * p[i][m]).sum::<i64>()).sum();
    Xd { v, p, t, q }
}

fn cross_parts(v: &[V4; 3], p: &[F2; 3]) -> F3 {
    let mut t = [0; 4];
    for i in 0..3 {
        let w = wedge12(&v[i], &p[i]);
        for k in 0..4 {
            t[k] += w[k];
        }
    }
    t
}

/// `Σᵢ vᵢ(a) ∧ Pᵢ(b)`.
fn cross(a: &Xd, b: &Xd) -> F3 {
    cross_parts(&a.v, &b.p)
}

fn flat_p(d: &Xd) -> [i64; 18] {
    std::array::from_fn(|j| d.p[j / 6][j % 6])
}

/// Rows `(i, t)` and columns `m` of `c ↦ F₀ ∧ vᵢ`.
fn eq5_matrix(d: &Xd) -> [C; 12] {
    let mut n = [[0; 3]; 12];
    for i in 0..3 {
        for m in 0..3 {
            let w = wedge12(&d.v[i], &ASD[m]);
            for t in 0..4 {
                n[4 * i + t][m] = w[t];
            }
        }
    }
    n
}

fn apply_eq5(n: &[C; 12], c: &C) -> [i64; 12] {
    std::array::from_fn(|r| (0..3).map(|m| n[r][m] * c[m]).sum())
}

fn norm2(c: &C) -> i64 {
    c.iter().map(|a| a * a).sum()
}

/// A signed permutation of `e₁, …, e₄` combined with a signed permutation of
/// `z¹, z²` fixing `z³` up to sign, preserving `φ`.
#[derive(Debug, Clone)]
struct Sym {
    perm: [usize; 4],
    sign: [i64; 4],
    zperm: [usize; 3],
    zsign: [i64; 3],
    /// Coordinate map on two-forms: coordinate `m` goes to `two[m].0` with sign `two[m].1`.
    two: [(usize, i64); 6],
    /// `c' = asd · c`.
    asd: [C; 3],
}

impl Sym {
    fn new(perm: [usize; 4], sign: [i64; 4], zperm: [usize; 3], zsign: [i64; 3]) -> Self {
        let two = PAIRS.map(|(a, b)| {
            let (pa, pb) = (perm[a], perm[b]);
            let s = sign[a] * sign[b];
            (IDX[pa][pb], if pa < pb { s } else { -s })
        });
        let mut sym = Sym {
            perm,
            sign,
            zperm,
            zsign,
            two,
            asd: [[0; 3]; 3],
        };
        for m in 0..3 {
            let img = sym.form(&ASD[m]);
            for n in 0..3 {
                sym.asd[n][m] = img[n];
            }
        }
        sym
    }

    fn vec(&self, v: &[i64]) -> V4 {
        let mut out = [0; 4];
        for a in 0..4 {
            out[self.perm[a]] = self.sign[a] * v[a];
        }
        out
    }

    fn form(&self, f: &F2) -> F2 {
        let mut out = [0; 6];
        for m in 0..6 {
            let (n, s) = self.two[m];
            out[n] = s * f[m];
        }
        out
    }

    fn form_q(&self, f: &[Rational; 6]) -> [Rational; 6] {
        let mut out: [Rational; 6] = std::array::from_fn(|_| int(0));
        for m in 0..6 {
            let (n, s) = self.two[m];
            out[n] = f[m].clone() * int(s);
        }
        out
    }

    fn x(&self, x: &[i64]) -> X {
        let mut out = [0; 8];
        for i in 0..2 {
            let v = self.vec(&x[4 * i..4 * i + 4]);
            let j = self.zperm[i];
            for a in 0..4 {
                out[4 * j + a] = self.zsign[i] * v[a];
            }
        }
        out
    }

    fn c(&self, c: &[i64]) -> C {
        std::array::from_fn(|n| (0..3).map(|m| self.asd[n][m] * c[m]).sum())
    }

    fn y(&self, y: &Y) -> Y {
        let x = self.x(&y[..8]);
        let c = self.c(&y[8..]);
        let mut out = [0; 11];
        out[..8].copy_from_slice(&x);
        out[8..].copy_from_slice(&c);
        if !sign_normal(&out) {
            out = out.map(|a| -a);
        }
        out
    }

    fn alphas(&self, a: &Alphas) -> Alphas {
        let mut out: Alphas = std::array::from_fn(|_| std::array::from_fn(|_| int(0)));
        for i in 0..3 {
            out[self.zperm[i]] = self.form_q(&a[i]).map(|r| r * int(self.zsign[i]));
        }
        out
    }
}

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    if (0..4).all(|i| p[..i].iter().all(|&q| q != p[i])) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

/// Image of a 7-dimensional form under `e_a ↦ s_a e_{π(a)}` (0-based).
fn map7(f: &Form, img: &[(usize, i64); 7]) -> Form {
    let mut out = Form::zero(7, f.degree());
    for (b, c) in f.terms() {
        let mut sign = 1;
        let idx: Vec<usize> = b
            .indices()
            .into_iter()
            .map(|i| {
                sign *= img[i - 1].1;
                img[i - 1].0 + 1
            })
            .collect();
        out = out + Form::term(7, &idx, c.clone() * int(sign)).expect("permuted blade");
    }
    out
}

fn group() -> Vec<Sym> {
    let phi: Form = standard_phi();
    let mut out = Vec::new();
    for perm in permutations4() {
        for smask in 0..16 {
            let sign: [i64; 4] = std::array::from_fn(|a| if smask >> a & 1 == 1 { -1 } else { 1 });
            for zperm in [[0, 1, 2], [1, 0, 2]] {
                for tmask in 0..8 {
                    let zsign: [i64; 3] = std::array::from_fn(|i| if tmask >> i & 1 == 1 { -1 } else { 1 });
                    let img: [(usize, i64); 7] = std::array::from_fn(|j| {
                        if j < 4 {
                            (perm[j], sign[j])
                        } else {
                            (4 + zperm[j - 4], zsign[j - 4])
                        }
                    });
                    if map7(&phi, &img) == phi {
                        out.push(Sym::new(perm, sign, zperm, zsign));
                    }
                }
            }
        }
    }
    out
}

/// Order of the coordinate symmetry group used by the component search.
pub fn component_group_size() -> usize {
    group().len()
}

fn index(x: &X, b: i64) -> u32 {
    let w = 2 * b + 1;
    x.iter().fold(0i64, |acc, &xi| acc * w + xi + b) as u32
}

fn decode(mut idx: u32, b: i64) -> X {
    let w = (2 * b + 1) as u32;
    let mut x = [0; 8];
    for j in (0..8).rev() {
        x[j] = (idx % w) as i64 - b;
        idx /= w;
    }
    x
}

/// Least index in the orbit of `x` under the group and `x ↦ −x`.
fn rep_of(g: &[Sym], x: &X, b: i64) -> u32 {
    let mut best = u32::MAX;
    for s in g {
        let y = s.x(x);
        best = best.min(index(&y, b)).min(index(&y.map(|a| -a), b));
    }
    best
}

struct Ctx<'a> {
    run: &'a Run<'a>,
    b: i64,
    g: Vec<Sym>,
    /// Required derived dimension.
    dim: Option<usize>,
    /// Structure forms fixed by the caller.
    fixed: Option<Alphas>,
}

pub(crate) fn run(run: &Run) -> Result<Tally, SearchError> {
    let spec = run.spec;
    let b = spec.bound;
    match spec.k {
        1 if b > 4 => {
            return Err(SearchError::Unsupported("k = 1 in the component reduction needs B <= 4".into()))
        }
        2 if b > 2 => {
            return Err(SearchError::Unsupported("k = 2 in the component reduction needs B <= 2".into()))
        }
        _ => {}
    }
    let mut dim = spec.derived_dim;
    if let Some(t) = &spec.target {
        let d = catalog_entry(t).expect("validated target").derived_dim;
        if !(2..=3).contains(&d) {
            return Err(SearchError::InvalidSpec(format!(
                "target {t} has derived dimension {d}, not 2 or 3"
            )));
        }
        if dim.is_some_and(|n| n != d) {
            return Ok(Tally::default());
        }
        dim = Some(d);
    }
    let mut lambdas = spec.lambdas.clone();
    let fixed = match &spec.structure {
        Some(alg) => {
            let bad = |e: su2red::Su2Error| SearchError::InvalidSpec(format!("structure: {e}"));
            let split = SU2Split::of(alg).map_err(bad)?;
            if !su2red::is_g2t(alg).map_err(bad)? {
                return Err(SearchError::InvalidSpec("structure: the a-matrix is not symmetric".into()));
            }
            let l = su2red::lambda_of(alg).map_err(bad)?;
            if !lambdas.contains(&l) {
                return Ok(Tally::default());
            }
            lambdas = vec![l];
            Some(split.alphas.each_ref().map(dense2))
        }
        None => {
            if lambdas.iter().any(Zero::is_zero) {
                return Err(SearchError::NeedsStructure);
            }
            None
        }
    };
    let ctx = Ctx {
        run,
        b,
        g: group(),
        dim,
        fixed,
    };
    if lambdas[0].is_zero() {
        return Ok(lambda_zero(&ctx));
    }
    Ok(match spec.k {
        1 => single(&ctx, &lambdas),
        _ => pairs(&ctx, &lambdas),
    })
}

fn eps_ok(ctx: &Ctx, eps: &[Rational]) -> bool {
    if !signs_match(eps, ctx.run.signs()) {
        return false;
    }
    match &ctx.run.spec.eps {
        EpsMode::Solve => true,
        EpsMode::Fixed(f) => fixed_match(eps, f).is_some(),
    }
}

/// Structure forms in normal form and passing the shape filters. A nonzero
/// `α₃` dependent on `α₁, α₂` is outside the normal form and is rejected.
fn alpha_ok(ctx: &Ctx, a: &Alphas) -> bool {
    let third_zero = a[2].iter().all(Zero::is_zero);
    let r = rank(a.iter().map(|f| f.to_vec()).collect());
    let dim = match (third_zero, r) {
        (true, 2) => 2,
        (false, 3) => 3,
        _ => return false,
    };
    if ctx.dim.is_some_and(|d| d != dim) {
        return false;
    }
    ctx.fixed.as_ref().map_or(true, |f| f == a)
}

/// `αᵢ = (1/2λ) Σ_r ε_r Pᵢ(x_r)`, or the fixed structure for `λ = 0`.
fn alphas_of(ctx: &Ctx, lambda: &Rational, ds: &[&Xd], eps: &[Rational]) -> Alphas {
    if lambda.is_zero() {
        return ctx.fixed.clone().expect("structure for lambda = 0");
    }
    let two_l = lambda.clone() * int(2);
    std::array::from_fn(|i| {
        std::array::from_fn(|m| {
            let s: Rational = ds.iter().zip(eps).map(|(d, e)| e.clone() * int(d.p[i][m])).sum();
            s / &two_l
        })
    })
}

fn alpha_norm2(a: &Alphas) -> Rational {
    a.iter().flatten().map(|r| r.clone() * r).sum()
}

/// The volume condition as a quadratic in `ε`.
fn volume_quadratic(ctx: &Ctx, lambda: &Rational, ds: [&Xd; 2], cs: [&C; 2]) -> Quadratic {
    let b = cs.map(|c| int(-2 * norm2(c)));
    if lambda.is_zero() {
        let fixed = ctx.fixed.as_ref().expect("structure for lambda = 0");
        return Quadratic {
            a: std::array::from_fn(|_| [int(0), int(0)]),
            b,
            c: alpha_norm2(fixed),
        };
    }
    let p = ds.map(flat_p);
    let four_l2 = lambda.clone() * lambda * int(4);
    Quadratic {
        a: std::array::from_fn(|r| {
            std::array::from_fn(|s| {
                let g: i64 = (0..18).map(|j| p[r][j] * p[s][j]).sum();
                int(g) / &four_l2
            })
        }),
        b,
        c: -(lambda.clone() * lambda * int(12)),
    }
}

fn y_of(x: &X, c: &C) -> Y {
    let mut y = [0; 11];
    y[..8].copy_from_slice(x);
    y[8..].copy_from_slice(c);
    y
}

/// Normalizes each curvature form to a primitive sign-normal vector,
/// canonicalizes and records the solution.
fn emit(ctx: &Ctx, t: &mut Tally, lambda: &Rational, alpha: &Alphas, data: &[(Y, Rational)], family: bool) {
    let mut items = Vec::with_capacity(data.len());
    for (y, e) in data {
        let mut y = *y;
        let g = y.iter().fold(0i64, |g, &a| g.gcd(&a));
        if !normalize(&mut y) {
            return;
        }
        items.push((y, e.clone() * int(g * g)));
    }
    if items.len() == 2 && items[0].0 == items[1].0 {
        return;
    }
    let (key, alpha, items) = canonical(&ctx.g, lambda, alpha, &items);
    t.found.push((key, raw(lambda, &alpha, &items, family)));
}

fn encode(lambda: &Rational, alpha: &Alphas, items: &[(Y, Rational)]) -> Vec<i64> {
    let mut out = Vec::with_capacity(2 + 36 + 13 * items.len());
    push_rational(&mut out, lambda);
    for r in alpha.iter().flatten() {
        push_rational(&mut out, r);
    }
    for (y, e) in items {
        out.extend_from_slice(y);
        push_rational(&mut out, e);
    }
    out
}

fn canonical(g: &[Sym], lambda: &Rational, alpha: &Alphas, items: &[(Y, Rational)]) -> (OrbitKey, Alphas, Vec<(Y, Rational)>) {
    let mut best: Option<(Vec<i64>, Alphas, Vec<(Y, Rational)>)> = None;
    for s in g {
        let a = s.alphas(alpha);
        let mut its: Vec<(Y, Rational)> = items.iter().map(|(y, e)| (s.y(y), e.clone())).collect();
        its.sort();
        let enc = encode(lambda, &a, &its);
        if best.as_ref().map_or(true, |(b, _, _)| enc < *b) {
            best = Some((enc, a, its));
        }
    }
    let (enc, a, its) = best.expect("nonempty group");
    (OrbitKey(enc), a, its)
}

fn dense2(f: &Form) -> [Rational; 6] {
    PAIRS.map(|(a, b)| f.coeff_of(&[a + 1, b + 1]))
}

fn form2(f: &[Rational; 6]) -> Form {
    Form::from_terms(4, 2, PAIRS.iter().zip(f).map(|(&(a, b), c)| ((1u64 << a) | (1u64 << b), c.clone())))
        .expect("2-form on four generators")
}

fn form1(v: &V4) -> Form {
    Form::from_terms(4, 1, (0..4).map(|a| (1u64 << a, int(v[a])))).expect("1-form on four generators")
}

fn ambient(y: &Y) -> Form {
    let v1 = [y[0], y[1], y[2], y[3]];
    let v2 = [y[4], y[5], y[6], y[7]];
    let v3 = v3_of(&v1, &v2);
    let f0: F2 = std::array::from_fn(|m| (0..3).map(|n| y[8 + n] * ASD[n][m]).sum());
    GaugeComponents::new(form2(&f0.map(int)), [form1(&v1), form1(&v2), form1(&v3)]).ambient()
}

fn raw(lambda: &Rational, alpha: &Alphas, items: &[(Y, Rational)], family: bool) -> Raw {
    Raw {
        lambda: lambda.clone(),
        alphas: alpha.iter().map(|a| su2red::lift(&form2(a))).collect(),
        forms: items.iter().map(|(y, _)| ambient(y)).collect(),
        eps: items.iter().map(|(_, e)| e.clone()).collect(),
        family,
    }
}

/// One curvature form, `λ ≠ 0`: `T(x) = 0`, `ε = 12λ²/q(x)`.
fn single(ctx: &Ctx, lambdas: &[Rational]) -> Tally {
    let b = ctx.b;
    let w = (2 * b + 1) as u32;
    let chunk = w.pow(6);
    let tallies: Vec<Tally> = (0..w * w)
        .into_par_iter()
        .map(|ci| {
            let mut t = Tally::default();
            if !ctx.run.in_budget() {
                return t;
            }
            for idx in ci * chunk..(ci + 1) * chunk {
                t.candidates += 1;
                let x = decode(idx, b);
                let d = xdata(&x);
                if d.t != [0; 4] || d.q == 0 {
                    t.gate_failures += 1;
                    continue;
                }
                if rep_of(&ctx.g, &x, b) != idx {
                    continue;
                }
                for l in lambdas {
                    let eps = [l.clone() * l * int(12) / int(d.q)];
                    if !eps_ok(ctx, &eps) {
                        continue;
                    }
                    let alpha = alphas_of(ctx, l, &[&d], &eps);
                    if !alpha_ok(ctx, &alpha) {
                        continue;
                    }
                    let rest = alpha_norm2(&alpha) - l.clone() * l * int(12);
                    let rows: Vec<[i128; 3]> = eq5_matrix(&d).iter().map(|r| r.map(i128::from)).collect();
                    box_kernel_points::<3>(rows, b, |c| {
                        if eps[0].clone() * int(2 * norm2(c)) == rest {
                            emit(ctx, &mut t, l, &alpha, &[(y_of(&x, c), eps[0].clone())], false);
                        }
                    });
                }
            }
            t
        })
        .collect();
    tallies.into_iter().fold(Tally::default(), Tally::merge)
}

/// How the closedness conditions constrain `ε` for a pair.
enum PairKind {
    /// `ε` proportional to this direction.
    Dir([i64; 2]),
    /// No constraint.
    Free,
}

/// `ε₁c₁ + ε₂c₂ = 0` with both entries nonzero, for the columns
/// `c₁ = (T₁₁, T₂₁)` and `c₂ = (T₁₂, T₂₂)`.
fn pair_kind(d1: &Xd, d2: &Xd) -> Option<PairKind> {
    let u = cross(d1, d2);
    let w = cross(d2, d1);
    let c1: [i64; 8] = std::array::from_fn(|j| if j < 4 { d1.t[j] } else { w[j - 4] });
    let c2: [i64; 8] = std::array::from_fn(|j| if j < 4 { u[j] } else { d2.t[j - 4] });
    let z1 = c1.iter().all(|&a| a == 0);
    let z2 = c2.iter().all(|&a| a == 0);
    match (z1, z2) {
        (true, true) => Some(PairKind::Free),
        (false, false) => {
            let p = c2.iter().position(|&a| a != 0).expect("nonzero column");
            if (0..8).all(|j| c1[j] * c2[p] == c2[j] * c1[p]) {
                Some(PairKind::Dir([c2[p], -c1[p]]))
            } else {
                None
            }
        }
        _ => None,
    }
}

/// Two curvature forms, `λ ≠ 0`. The first form runs over orbit
/// representatives, the second over sign-normal vectors of an orbit that is
/// not smaller.
fn pairs(ctx: &Ctx, lambdas: &[Rational]) -> Tally {
    let b = ctx.b;
    let n = (2 * b + 1).pow(8) as u32;
    let rep: Vec<u32> = (0..n).into_par_iter().map(|i| rep_of(&ctx.g, &decode(i, b), b)).collect();
    let mut order: Vec<u32> = (0..n).filter(|&i| sign_normal(&decode(i, b))).collect();
    order.sort_by_key(|&i| (rep[i as usize], i));
    let order_rep: Vec<u32> = order.iter().map(|&i| rep[i as usize]).collect();
    let ps: Vec<[i32; 18]> = order
        .par_iter()
        .map(|&i| flat_p(&xdata(&decode(i, b))).map(|a| a as i32))
        .collect();
    let firsts: Vec<u32> = (0..n).filter(|&i| rep[i as usize] == i).collect();
    let tallies: Vec<Tally> = firsts
        .par_iter()
        .map(|&i1| {
            let mut t = Tally::default();
            if !ctx.run.in_budget() {
                return t;
            }
            let start = order_rep.partition_point(|&r| r < i1);
            scan(ctx, i1, &order[start..], &ps[start..], lambdas, &mut t);
            t
        })
        .collect();
    tallies.into_iter().fold(Tally::default(), Tally::merge)
}

fn scan(ctx: &Ctx, i1: u32, order: &[u32], ps: &[[i32; 18]], lambdas: &[Rational], t: &mut Tally) {
    let b = ctx.b;
    let x1 = decode(i1, b);
    let d1 = xdata(&x1);
    // u = M P(x₂) is the mixed term T(x₁, x₂).
    let mut m = [[0i64; 18]; 4];
    for i in 0..3 {
        for k in 0..6 {
            let mut e = [0; 6];
            e[k] = 1;
            let col = wedge12(&d1.v[i], &e);
            for r in 0..4 {
                m[r][6 * i + k] = col[r];
            }
        }
    }
    // u ∥ T₁₁, or u = 0 when T₁₁ = 0.
    let rows: Vec<[i64; 18]> = match d1.t.iter().position(|&a| a != 0) {
        Some(k) => (0..4)
            .filter(|&j| j != k)
            .map(|j| std::array::from_fn(|s| d1.t[k] * m[j][s] - d1.t[j] * m[k][s]))
            .collect(),
        None => m.to_vec(),
    };
    for (&i2, p2) in order.iter().zip(ps) {
        t.candidates += 1;
        if rows
            .iter()
            .any(|r| r.iter().zip(p2).map(|(a, &b)| a * b as i64).sum::<i64>() != 0)
        {
            continue;
        }
        let x2 = decode(i2, b);
        let d2 = xdata(&x2);
        let Some(kind) = pair_kind(&d1, &d2) else {
            t.gate_failures += 1;
            continue;
        };
        for l in lambdas {
            let trace = EpsSet::All.meet(&[int(d1.q), int(d2.q)], &(l.clone() * l * int(12)));
            let set = match kind {
                PairKind::Free => trace,
                PairKind::Dir([k1, k2]) => trace.meet_rows([[k2, -k1]]),
            };
            f0_stage(ctx, l, [&x1, &x2], [&d1, &d2], set, t);
        }
    }
}

/// Solves for the anti-self-dual parts and the pairing coefficients of a
/// pair whose `ε` is restricted to `set`.
fn f0_stage(ctx: &Ctx, lambda: &Rational, xs: [&X; 2], ds: [&Xd; 2], set: EpsSet, t: &mut Tally) {
    let b = ctx.b;
    let n = ds.map(eq5_matrix);
    match set {
        EpsSet::Empty => {}
        EpsSet::Point(e) => {
            if !eps_ok(ctx, &e) {
                return;
            }
            let alpha = alphas_of(ctx, lambda, &ds, &e);
            if !alpha_ok(ctx, &alpha) {
                return;
            }
            let den = e[0].denom().lcm(e[1].denom());
            let ints = e.each_ref().map(|r| (r.clone() * Rational::from(den.clone())).to_integer().to_i128());
            let [Some(e1), Some(e2)] = ints else { return };
            let rows: Vec<[i128; 6]> = (0..12)
                .map(|r| std::array::from_fn(|j| if j < 3 { e1 * n[0][r][j] as i128 } else { e2 * n[1][r][j - 3] as i128 }))
                .collect();
            box_kernel_points::<6>(rows, b, |c| {
                let c1 = [c[0], c[1], c[2]];
                let c2 = [c[3], c[4], c[5]];
                let q = volume_quadratic(ctx, lambda, ds, [&c1, &c2]);
                if q.eval(&e).is_zero() {
                    let data = [(y_of(xs[0], &c1), e[0].clone()), (y_of(xs[1], &c2), e[1].clone())];
                    emit(ctx, t, lambda, &alpha, &data, false);
                }
            });
        }
        set => {
            let classes = [0, 1].map(|r| f0_classes(b, xs[r], &n[r]));
            for c1 in &classes[0].0 {
                for c2 in &classes[1].0 {
                    solve_pair(ctx, lambda, xs, ds, set.clone(), [c1, c2], t);
                }
            }
            for (dir, l1) in &classes[0].1 {
                let Some(l2) = classes[1].1.get(dir) else { continue };
                for (c1, s1) in l1 {
                    for (c2, s2) in l2 {
                        let s = set.clone().meet_rows([[*s1, *s2]]);
                        solve_pair(ctx, lambda, xs, ds, s, [c1, c2], t);
                    }
                }
            }
        }
    }
}

/// Anti-self-dual parts split by `N c`: those with `N c = 0`, and the others
/// grouped by the primitive direction of `N c` with their scale.
type F0Classes = (Vec<C>, HashMap<[i64; 12], Vec<(C, i64)>>);

fn f0_classes(b: i64, x: &X, n: &[C; 12]) -> F0Classes {
    let x_zero = x.iter().all(|&a| a == 0);
    let mut zero = Vec::new();
    let mut dirs: HashMap<[i64; 12], Vec<(C, i64)>> = HashMap::new();
    box_kernel_points::<3>(vec![], b, |c| {
        if x_zero {
            // The form is F₀ alone: keep primitive sign-normal parts.
            let g = c.iter().fold(0i64, |g, &a| g.gcd(&a));
            if g != 1 || !sign_normal(c) {
                return;
            }
        }
        let mut v = apply_eq5(n, c);
        let p = v.iter().position(|&a| a != 0);
        match p {
            None => zero.push(*c),
            Some(p) => {
                let raw = v[p];
                normalize(&mut v);
                dirs.entry(v).or_default().push((*c, raw / v[p]));
            }
        }
    });
    (zero, dirs)
}

fn solve_pair(ctx: &Ctx, lambda: &Rational, xs: [&X; 2], ds: [&Xd; 2], set: EpsSet, cs: [&C; 2], t: &mut Tally) {
    if set == EpsSet::Empty {
        return;
    }
    let q = volume_quadratic(ctx, lambda, ds, cs);
    let (points, family) = match zeros(set, &q) {
        Zeros::Points(ps) => (ps, false),
        Zeros::Family(s) => match &ctx.run.spec.eps {
            EpsMode::Fixed(f) => {
                let f: [Rational; 2] = [f[0].clone(), f[1].clone()];
                let r = [f[1].clone(), f[0].clone()];
                let on = |p: &[Rational; 2]| {
                    s.clone().meet(&[int(1), int(0)], &p[0]).meet(&[int(0), int(1)], &p[1]) != EpsSet::Empty
                };
                let mut v: Vec<[Rational; 2]> = [f, r].into_iter().filter(|p| on(p)).collect();
                v.dedup();
                (v, false)
            }
            EpsMode::Solve => (pick(&s, ctx.run.signs()).into_iter().collect(), true),
        },
    };
    for e in points {
        if !eps_ok(ctx, &e) {
            continue;
        }
        let alpha = alphas_of(ctx, lambda, &ds, &e);
        if !alpha_ok(ctx, &alpha) {
            continue;
        }
        let data = [(y_of(xs[0], cs[0]), e[0].clone()), (y_of(xs[1], cs[1]), e[1].clone())];
        emit(ctx, t, lambda, &alpha, &data, family);
    }
}

/// `λ = 0` with the structure fixed: `x` runs over the integer kernel of
/// `x ↦ Σᵢ vᵢ ∧ αᵢ`.
fn lambda_zero(ctx: &Ctx) -> Tally {
    let b = ctx.b;
    let zero = int(0);
    let alpha = ctx.fixed.as_ref().expect("structure for lambda = 0");
    if !alpha_ok(ctx, alpha) {
        return Tally::default();
    }
    let den = alpha.iter().flatten().fold(num_bigint::BigInt::from(1), |d, r| d.lcm(r.denom()));
    let a_int: [F2; 3] = alpha
        .each_ref()
        .map(|f| f.each_ref().map(|r| (r.clone() * Rational::from(den.clone())).to_integer().to_i64().expect("small structure")));
    let mut rows = vec![[0i128; 8]; 4];
    for j in 0..8 {
        let mut x = [0; 8];
        x[j] = 1;
        let d = xdata(&x);
        let mut col = [0; 4];
        for i in 0..3 {
            let w = wedge12(&d.v[i], &a_int[i]);
            for r in 0..4 {
                col[r] += w[r];
            }
        }
        for r in 0..4 {
            rows[r][j] = col[r] as i128;
        }
    }
    let mut kernel = Vec::new();
    box_kernel_points::<8>(rows, b, |x| {
        if sign_normal(x) {
            kernel.push(*x);
        }
    });
    let data: Vec<Xd> = kernel.iter().map(xdata).collect();
    let norm = alpha_norm2(alpha);
    if ctx.run.spec.k == 1 {
        let mut t = Tally::default();
        for (x, d) in kernel.iter().zip(&data) {
            t.candidates += 1;
            if d.p.iter().flatten().any(|&a| a != 0) {
                t.gate_failures += 1;
                continue;
            }
            let rows: Vec<[i128; 3]> = eq5_matrix(d).iter().map(|r| r.map(i128::from)).collect();
            box_kernel_points::<3>(rows, b, |c| {
                let c2 = norm2(c);
                if c2 == 0 {
                    return;
                }
                let eps = [norm.clone() / int(2 * c2)];
                if eps_ok(ctx, &eps) {
                    emit(ctx, &mut t, &zero, alpha, &[(y_of(x, c), eps[0].clone())], false);
                }
            });
        }
        return t;
    }
    let tallies: Vec<Tally> = (0..kernel.len())
        .into_par_iter()
        .map(|i| {
            let mut t = Tally::default();
            if !ctx.run.in_budget() {
                return t;
            }
            let p1 = flat_p(&data[i]);
            for j in i..kernel.len() {
                t.candidates += 1;
                let p2 = flat_p(&data[j]);
                let z1 = p1.iter().all(|&a| a == 0);
                let set = match (z1, p2.iter().position(|&a| a != 0)) {
                    (true, None) => EpsSet::All,
                    (false, Some(p)) if (0..18).all(|s| p1[s] * p2[p] == p2[s] * p1[p]) => {
                        EpsSet::All.meet_rows([[p1[p], p2[p]]])
                    }
                    _ => {
                        t.gate_failures += 1;
                        continue;
                    }
                };
                f0_stage(ctx, &zero, [&kernel[i], &kernel[j]], [&data[i], &data[j]], set, &mut t);
            }
            t
        })
        .collect();
    tallies.into_iter().fold(Tally::default(), Tally::merge)
}

/// Orbit key of given data, normalized as in the search.
pub(crate) fn orbit_key_of(alg: &LieAlgebra, gauge: &GaugeField) -> Result<OrbitKey, SearchError> {
    let bad = |m: String| SearchError::InvalidSpec(m);
    let split = SU2Split::of(alg).map_err(|e| bad(e.to_string()))?;
    let lambda = su2red::lambda_of(alg).map_err(|e| bad(e.to_string()))?;
    let alpha = split.alphas.each_ref().map(dense2);
    let mut items = Vec::new();
    for (r, (f, e)) in gauge.forms().iter().zip(gauge.eps()).enumerate() {
        let gc = GaugeComponents::split(f).map_err(|e| bad(e.to_string()))?;
        if gc.a.iter().any(|a| !a.is_zero()) {
            return Err(bad(format!("F{} has a z^jk component", r + 1)));
        }
        let mut q: Vec<Rational> = Vec::with_capacity(15);
        for v in &gc.v {
            q.extend((1..=4).map(|a| v.coeff_of(&[a])));
        }
        q.extend([[1, 2], [1, 3], [1, 4]].iter().map(|ix| gc.f0.coeff_of(ix)));
        let den = q.iter().fold(num_bigint::BigInt::from(1), |d, r| d.lcm(r.denom()));
        let scale = Rational::from(den);
        let ints: Vec<i64> = q
            .iter()
            .map(|r| (r.clone() * &scale).to_integer().to_i64())
            .collect::<Option<_>>()
            .ok_or_else(|| bad("coefficients too large".into()))?;
        let mut y = [0; 11];
        y[..8].copy_from_slice(&ints[..8]);
        y[8..].copy_from_slice(&ints[12..]);
        if ints[8..12] != v3_of(&[y[0], y[1], y[2], y[3]], &[y[4], y[5], y[6], y[7]]) {
            return Err(bad(format!("F{} is not an instanton: v3 != -J2 v1 + J1 v2", r + 1)));
        }
        let f0: F2 = std::array::from_fn(|m| (0..3).map(|n| y[8 + n] * ASD[n][m]).sum());
        if form2(&f0.map(int)) != gc.f0.scale(&scale) {
            return Err(bad(format!("F{} has a self-dual part on e1..e4", r + 1)));
        }
        let e = e.clone() / (scale.clone() * &scale);
        let g = y.iter().fold(0i64, |g, &a| g.gcd(&a));
        if !normalize(&mut y) {
            return Err(bad(format!("F{} vanishes", r + 1)));
        }
        items.push((y, e * int(g * g)));
    }
    Ok(canonical(&group(), &lambda, &alpha, &items).0)
}
