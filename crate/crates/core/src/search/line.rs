//! Search in the endomorphism reduction.
//!
//! A trace-free Hermitian matrix `H = X + iY` is stored by its eight integer
//! parameters `(x₁₁, x₂₂, x₁₂, x₁₃, x₂₃, y₁₂, y₁₃, y₂₃)` with
//! `x₃₃ = −x₁₁ − x₂₂`. The box bounds every real entry, including `x₃₃`, so
//! it is invariant under the symmetry group used here: conjugation by
//! permutation matrices and by diagonal matrices with entries in
//! `{±1, ±i}`, optionally followed by complex conjugation (192 elements).
//! Conjugations come from `SU(3)` up to a central phase; complex conjugation
//! is the reflection `e_{2j} ↦ −e_{2j}` combined with `z ↦ −z`, which
//! preserves `φ` and `λ`.
//!
//! The equation only involves `H₀²`, so `H₀` is enumerated up to the group
//! and its sign, and both `±H₀` are reported.

use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use super::eps::{pick, signs_match, EpsSet};
use super::lattice::{box_kernel_points, sign_normal};
use super::{fixed_match, push_rational, OrbitKey, Raw, Run, SearchError, Tally};
use crate::hetsys::GaugeField;
use crate::nilalg::{catalog_entry, LieAlgebra};
use crate::scalar::{int, Rational};
use crate::search::EpsMode;
use crate::su3red::{self, endo_of_form, form_of_endo, omega, JEndo};

type C = (i64, i64);
type Herm = [[C; 3]; 3];
pub(crate) type Params = [i64; 8];

fn cmul(a: C, b: C) -> C {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

fn conj(a: C) -> C {
    (a.0, -a.1)
}

fn herm(p: &Params) -> Herm {
    let [x11, x22, x12, x13, x23, y12, y13, y23] = *p;
    [
        [(x11, 0), (x12, y12), (x13, y13)],
        [(x12, -y12), (x22, 0), (x23, y23)],
        [(x13, -y13), (x23, -y23), (-x11 - x22, 0)],
    ]
}

fn params(h: &Herm) -> Params {
    [
        h[0][0].0, h[1][1].0, h[0][1].0, h[0][2].0, h[1][2].0, h[0][1].1, h[0][2].1, h[1][2].1,
    ]
}

fn mul(a: &Herm, b: &Herm) -> Herm {
    let mut out = [[(0, 0); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let mut s = (0, 0);
            for l in 0..3 {
                let t = cmul(a[i][l], b[l][j]);
                s = (s.0 + t.0, s.1 + t.1);
            }
            out[i][j] = s;
        }
    }
    out
}

/// The Hermitian matrix `H²` as `(s₁₁, s₂₂, s₃₃, re s₁₂, im s₁₂, re s₁₃, im s₁₃, re s₂₃, im s₂₃)`.
fn square9(h: &Herm) -> [i64; 9] {
    let s = mul(h, h);
    [
        s[0][0].0, s[1][1].0, s[2][2].0, s[0][1].0, s[0][1].1, s[0][2].0, s[0][2].1, s[1][2].0,
        s[1][2].1,
    ]
}

/// One element of the symmetry group.
#[derive(Debug, Clone, Copy)]
struct Transform {
    perm: [usize; 3],
    phase: [u8; 3],
    conj: bool,
}

fn i_pow(k: u8) -> C {
    match k % 4 {
        0 => (1, 0),
        1 => (0, 1),
        2 => (-1, 0),
        _ => (0, -1),
    }
}

impl Transform {
    fn apply(&self, h: &Herm) -> Herm {
        let mut out = [[(0, 0); 3]; 3];
        for j in 0..3 {
            for k in 0..3 {
                let v = cmul(
                    cmul(i_pow(self.phase[j]), h[self.perm[j]][self.perm[k]]),
                    conj(i_pow(self.phase[k])),
                );
                out[j][k] = if self.conj { conj(v) } else { v };
            }
        }
        out
    }
}

fn group() -> Vec<Transform> {
    const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut g = Vec::with_capacity(192);
    for conj in [false, true] {
        for perm in PERMS {
            for p1 in 0..4 {
                for p2 in 0..4 {
                    g.push(Transform {
                        perm,
                        phase: [0, p1, p2],
                        conj,
                    });
                }
            }
        }
    }
    g
}

/// Order of the symmetry group acting on endomorphism data.
pub fn endomorphism_group_size() -> usize {
    group().len()
}

fn quadrant(re: i64, im: i64) -> bool {
    (re == 0 && im == 0) || (re > 0 && im >= 0)
}

/// Partially canonical under the group and `H ↦ −H`: diagonal ascending and
/// not above its negated reversal, `h₁₂` and `h₁₃` in the first quadrant.
/// Every orbit meets this set.
fn is_partial_canonical(p: &Params) -> bool {
    let d = [p[0], p[1], -p[0] - p[1]];
    d[0] <= d[1] && d[1] <= d[2] && quadrant(p[2], p[5]) && quadrant(p[3], p[6]) && d <= [-d[2], -d[1], -d[0]]
}

/// Least partially canonical element of the orbit under the group and sign.
fn is_orbit_least(p: &Params, g: &[Transform]) -> bool {
    let h = herm(p);
    for t in g {
        let q = params(&t.apply(&h));
        let neg = q.map(|x| -x);
        for c in [q, neg] {
            if is_partial_canonical(&c) && c < *p {
                return false;
            }
        }
    }
    true
}

fn partial_canonical_reps(b: i64) -> Vec<Params> {
    let mut out = Vec::new();
    let quads: Vec<(i64, i64)> = std::iter::once((0, 0))
        .chain((1..=b).flat_map(|re| (0..=b).map(move |im| (re, im))))
        .collect();
    for x11 in -b..=b {
        for x22 in x11..=b {
            let x33 = -x11 - x22;
            if x33 < x22 || x33 > b {
                continue;
            }
            if [x11, x22, x33] > [-x33, -x22, -x11] {
                continue;
            }
            for &(x12, y12) in &quads {
                for &(x13, y13) in &quads {
                    for x23 in -b..=b {
                        for y23 in -b..=b {
                            out.push([x11, x22, x12, x13, x23, y12, y13, y23]);
                        }
                    }
                }
            }
        }
    }
    out
}

fn in_box(p: &Params, b: i64) -> bool {
    p.iter().all(|x| x.abs() <= b) && (p[0] + p[1]).abs() <= b
}

fn gcd_all(p: &[i64]) -> i64 {
    p.iter().fold(0i64, |g, &x| g.gcd(&x))
}

fn signed(p: &Params) -> Params {
    if sign_normal(p) {
        *p
    } else {
        p.map(|x| -x)
    }
}

fn cdet2(a: C, b: C, c: C, d: C) -> (i128, i128) {
    let x = cmul(a, d);
    let y = cmul(b, c);
    ((x.0 - y.0) as i128, (x.1 - y.1) as i128)
}

/// Complex rank of a `3 × 3` complex integer matrix.
fn complex_rank(m: &Herm) -> usize {
    let c = |z: C| (z.0 as i128, z.1 as i128);
    let mul128 = |a: (i128, i128), b: (i128, i128)| (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0);
    let minor = |r: [usize; 2], k: [usize; 2]| cdet2(m[r[0]][k[0]], m[r[0]][k[1]], m[r[1]][k[0]], m[r[1]][k[1]]);
    let mut det = (0i128, 0i128);
    for (j, sgn) in [(0usize, 1i128), (1, -1), (2, 1)] {
        let cols: Vec<usize> = (0..3).filter(|&x| x != j).collect();
        let t = mul128(c(m[0][j]), minor([1, 2], [cols[0], cols[1]]));
        det = (det.0 + sgn * t.0, det.1 + sgn * t.1);
    }
    if det != (0, 0) {
        return 3;
    }
    let pairs = [[0, 1], [0, 2], [1, 2]];
    for r in pairs {
        for k in pairs {
            if minor(r, k) != (0, 0) {
                return 2;
            }
        }
    }
    usize::from(m.iter().flatten().any(|z| *z != (0, 0)))
}

/// `8λ²` as `num/den` and `2λ` as an integer, or why `λ` is skipped.
enum LambdaClass {
    Ok { num: i64, den: i64, two_lambda: i64 },
    /// `6λ ∉ ℤ`: `tr(2λ I + H₀) = 6λ` cannot be an integer.
    NoIntegral,
}

fn classify(lambda: &Rational) -> Result<LambdaClass, SearchError> {
    let two = lambda.clone() * int(2);
    if !(two.clone() * int(3)).is_integer() {
        return Ok(LambdaClass::NoIntegral);
    }
    if !two.is_integer() {
        return Err(SearchError::Unsupported(format!(
            "lambda = {lambda}: the endomorphism enumeration needs 2 lambda to be an integer"
        )));
    }
    let c = lambda.clone() * lambda * int(8);
    Ok(LambdaClass::Ok {
        num: c.numer().to_i64().ok_or_else(|| SearchError::InvalidSpec("lambda too large".into()))?,
        den: c.denom().to_i64().ok_or_else(|| SearchError::InvalidSpec("lambda too large".into()))?,
        two_lambda: two.to_integer().to_i64().ok_or_else(|| SearchError::InvalidSpec("lambda too large".into()))?,
    })
}

/// Distinct squares of primitive, sign-normal, nonzero matrices in the box.
struct Squares {
    s: Vec<[i64; 9]>,
    roots: Vec<Vec<Params>>,
}

fn squares(b: i64) -> Squares {
    let mut map: std::collections::HashMap<[i64; 9], Vec<Params>> = std::collections::HashMap::new();
    let mut p = [-b; 8];
    loop {
        if in_box(&p, b) && gcd_all(&p) == 1 && sign_normal(&p) {
            map.entry(square9(&herm(&p))).or_default().push(p);
        }
        let mut j = 0;
        loop {
            if j == 8 {
                let mut entries: Vec<([i64; 9], Vec<Params>)> = map.into_iter().collect();
                entries.sort();
                let (s, roots) = entries.into_iter().unzip();
                return Squares { s, roots };
            }
            if p[j] < b {
                p[j] += 1;
                break;
            }
            p[j] = -b;
            j += 1;
        }
    }
}

/// The shared per-search context.
struct Ctx<'a> {
    run: &'a Run<'a>,
    group: Vec<Transform>,
    /// `(λ, 2λ, 8λ² = num/den)` grouped by `8λ²`.
    classes: Vec<((i64, i64), Vec<(Rational, i64)>)>,
    alpha_rank: Option<usize>,
    squares: Option<Squares>,
}

pub(crate) fn run(run: &Run) -> Result<Tally, SearchError> {
    let spec = run.spec;
    if spec.k == 2 && spec.bound > 3 {
        return Err(SearchError::Unsupported("k = 2 in the endomorphism reduction needs B <= 3".into()));
    }
    let mut alpha_rank = spec.alpha_rank;
    if let Some(t) = &spec.target {
        let entry = catalog_entry(t).expect("validated target");
        if entry.derived_dim != 1 {
            return Err(SearchError::InvalidSpec(format!(
                "target {t} has derived dimension {}, not 1",
                entry.derived_dim
            )));
        }
        let r = entry.algebra.alphas()[0].rank2();
        if alpha_rank.is_some_and(|a| a != r) {
            return Ok(Tally::default());
        }
        alpha_rank = Some(r);
    }
    let mut classes: Vec<((i64, i64), Vec<(Rational, i64)>)> = Vec::new();
    for l in &spec.lambdas {
        if let LambdaClass::Ok { num, den, two_lambda } = classify(l)? {
            match classes.iter_mut().find(|(c, _)| *c == (num, den)) {
                Some((_, v)) => v.push((l.clone(), two_lambda)),
                None => classes.push(((num, den), vec![(l.clone(), two_lambda)])),
            }
        }
    }
    let g = group();
    let reps: Vec<Params> = partial_canonical_reps(spec.bound)
        .into_iter()
        .filter(|p| spec.k == 1 || is_orbit_least(p, &g))
        .collect();
    let ctx = Ctx {
        run,
        group: g,
        classes,
        alpha_rank,
        squares: (spec.k == 2).then(|| squares(spec.bound)),
    };
    let tallies: Vec<Result<Tally, SearchError>> = reps
        .par_iter()
        .map(|h0| {
            if !run.in_budget() {
                return Ok(Tally::default());
            }
            let mut t = Tally::default();
            for ((num, den), lambdas) in &ctx.classes {
                process(&ctx, h0, *num, *den, lambdas, &mut t)?;
            }
            Ok(t)
        })
        .collect();
    let mut total = Tally::default();
    for t in tallies {
        total = total.merge(t?);
    }
    Ok(total)
}

/// Admissible `(λ, ±H₀)` combinations after the shape gate.
fn gated(ctx: &Ctx, h0: &Params, lambdas: &[(Rational, i64)], t: &mut Tally) -> Vec<(Rational, Params)> {
    let mut out = Vec::new();
    let zero = h0.iter().all(|&x| x == 0);
    for (l, two_lambda) in lambdas {
        let signs: &[i64] = if zero { &[1] } else { &[1, -1] };
        for &s in signs {
            let h = h0.map(|x| s * x);
            let mut m = herm(&h);
            for (i, row) in m.iter_mut().enumerate() {
                row[i].0 += two_lambda;
            }
            let rank = complex_rank(&m);
            if rank == 0 {
                continue;
            }
            if ctx.alpha_rank.is_some_and(|r| r != 2 * rank) {
                t.gate_failures += 1;
                continue;
            }
            out.push((l.clone(), h));
        }
    }
    out
}

fn process(
    ctx: &Ctx,
    h0: &Params,
    num: i64,
    den: i64,
    lambdas: &[(Rational, i64)],
    t: &mut Tally,
) -> Result<(), SearchError> {
    let targets = gated(ctx, h0, lambdas, t);
    if targets.is_empty() {
        return Ok(());
    }
    // A = den H₀² + num I, so that H₀² + 8λ² I = A / den.
    let mut a = square9(&herm(h0)).map(|x| x * den);
    for x in a.iter_mut().take(3) {
        *x += num;
    }
    let mut found: Vec<(Vec<(Params, Rational)>, bool)> = Vec::new();
    if ctx.run.spec.k == 1 {
        solve_k1(ctx, &a, den, t, &mut found);
    } else {
        solve_k2(ctx, &a, den, t, &mut found);
    }
    for (data, family) in found {
        for (l, h) in &targets {
            let (key, canon) = canonical(&ctx.group, l, h, &data);
            t.found.push((key, raw(l, &canon.0, &canon.1, family)));
        }
    }
    Ok(())
}

fn first_nonzero(v: &[i64]) -> Option<usize> {
    v.iter().position(|&x| x != 0)
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

fn solve_k1(ctx: &Ctx, a: &[i64; 9], den: i64, t: &mut Tally, found: &mut Vec<(Vec<(Params, Rational)>, bool)>) {
    let b = ctx.run.spec.bound;
    let p = first_nonzero(a).expect("A is nonzero");
    // [H₁, A] = 0: nine real equations in the eight parameters of H₁.
    let ah = {
        let mut m = [[(0i64, 0i64); 3]; 3];
        m[0][0] = (a[0], 0);
        m[1][1] = (a[1], 0);
        m[2][2] = (a[2], 0);
        m[0][1] = (a[3], a[4]);
        m[1][0] = (a[3], -a[4]);
        m[0][2] = (a[5], a[6]);
        m[2][0] = (a[5], -a[6]);
        m[1][2] = (a[7], a[8]);
        m[2][1] = (a[7], -a[8]);
        m
    };
    let mut rows = vec![[0i128; 8]; 9];
    for col in 0..8 {
        let mut e = [0i64; 8];
        e[col] = 1;
        let h = herm(&e);
        let x = mul(&h, &ah);
        let y = mul(&ah, &h);
        let k = |i: usize, j: usize| (x[i][j].0 - y[i][j].0, x[i][j].1 - y[i][j].1);
        let comps = [
            k(0, 0).1,
            k(1, 1).1,
            k(2, 2).1,
            k(0, 1).0,
            k(0, 1).1,
            k(0, 2).0,
            k(0, 2).1,
            k(1, 2).0,
            k(1, 2).1,
        ];
        for (r, v) in comps.into_iter().enumerate() {
            rows[r][col] = v as i128;
        }
    }
    let mut count = 0u64;
    box_kernel_points(rows, b, |h1| {
        count += 1;
        if !in_box(h1, b) || !sign_normal(h1) || gcd_all(h1) != 1 {
            return;
        }
        let s = square9(&herm(h1));
        let sp = s[p];
        if sp == 0 || (0..9).any(|j| s[j] as i128 * a[p] as i128 != a[j] as i128 * sp as i128) {
            return;
        }
        let eps = Rational::new(a[p].into(), (sp * den).into());
        if eps_ok(ctx, std::slice::from_ref(&eps)) {
            found.push((vec![(*h1, eps)], false));
        }
    });
    t.candidates += count;
}

fn mix(h: u64, x: u64) -> u64 {
    (h ^ x).wrapping_mul(0x100_0000_01b3).rotate_left(29)
}

fn solve_k2(ctx: &Ctx, a: &[i64; 9], den: i64, t: &mut Tally, found: &mut Vec<(Vec<(Params, Rational)>, bool)>) {
    let sq = ctx.squares.as_ref().expect("squares for k = 2");
    let p = first_nonzero(a).expect("A is nonzero");
    let ap = a[p];
    t.candidates += sq.s.len() as u64;
    // S' = A_p S − S_p A removes the A direction; a solution pairs two
    // squares with parallel S', or two squares parallel to A.
    let mut keyed: Vec<(u64, u32)> = Vec::with_capacity(sq.s.len());
    let mut zero_class: Vec<u32> = Vec::new();
    for (idx, s) in sq.s.iter().enumerate() {
        let sp = s[p];
        let mut d = [0i64; 9];
        for j in 0..9 {
            d[j] = ap * s[j] - sp * a[j];
        }
        match first_nonzero(&d) {
            None => zero_class.push(idx as u32),
            Some(q) => {
                let dq = d[q] as f64;
                let mut h = mix(0xcbf2_9ce4_8422_2325, q as u64);
                for &x in &d[q + 1..] {
                    let r = x as f64 / dq;
                    h = mix(h, if r == 0.0 { 0 } else { r.to_bits() });
                }
                keyed.push((h, idx as u32));
            }
        }
    }
    keyed.sort_unstable();
    let signs = ctx.run.signs();
    let want_pos = signs.map(|s| s.iter().filter(|&&x| x > 0).count());
    let mut start = 0;
    while start < keyed.len() {
        let mut end = start + 1;
        while end < keyed.len() && keyed[end].0 == keyed[start].0 {
            end += 1;
        }
        for x in start..end {
            for y in x + 1..end {
                let (i, j) = (keyed[x].1 as usize, keyed[y].1 as usize);
                let (s1, s2) = (&sq.s[i], &sq.s[j]);
                let d1: Vec<i64> = (0..9).map(|c| ap * s1[c] - s1[p] * a[c]).collect();
                let q = first_nonzero(&d1).expect("nonzero class");
                let d2q = ap * s2[q] - s2[p] * a[q];
                let dd = s2[p] as i128 * d1[q] as i128 - d2q as i128 * s1[p] as i128;
                if dd == 0 {
                    continue;
                }
                let n1 = -(d2q as i128) * ap as i128;
                let n2 = ap as i128 * d1[q] as i128;
                if n1 == 0 || n2 == 0 {
                    continue;
                }
                if let Some(w) = want_pos {
                    let pos = usize::from((n1 > 0) == (dd > 0)) + usize::from((n2 > 0) == (dd > 0));
                    if pos != w {
                        continue;
                    }
                }
                if (0..9).any(|c| dd * a[c] as i128 != n1 * s1[c] as i128 + n2 * s2[c] as i128) {
                    continue;
                }
                let scale = Rational::from_integer((dd * den as i128).into());
                let eps = [
                    Rational::from_integer(n1.into()) / &scale,
                    Rational::from_integer(n2.into()) / &scale,
                ];
                if !eps_ok(ctx, &eps) {
                    continue;
                }
                for h1 in &sq.roots[i] {
                    for h2 in &sq.roots[j] {
                        found.push((vec![(*h1, eps[0].clone()), (*h2, eps[1].clone())], false));
                    }
                }
            }
        }
        start = end;
    }
    // Both squares parallel to A: ν₁ε₁ + ν₂ε₂ = 1/den with S_r = ν_r A.
    for (x, &i) in zero_class.iter().enumerate() {
        for &j in &zero_class[x..] {
            let (i, j) = (i as usize, j as usize);
            let nu = |s: &[i64; 9]| Rational::new(s[p].into(), ap.into());
            let line = EpsSet::All.meet(&[nu(&sq.s[i]), nu(&sq.s[j])], &Rational::new(1.into(), den.into()));
            let picked: Vec<([Rational; 2], bool)> = match &ctx.run.spec.eps {
                EpsMode::Fixed(f) => {
                    let mut v = Vec::new();
                    for e in [[f[0].clone(), f[1].clone()], [f[1].clone(), f[0].clone()]] {
                        if line.clone().meet(&[int(1), int(0)], &e[0]).meet(&[int(0), int(1)], &e[1]) != EpsSet::Empty
                            && signs_match(&e, signs)
                        {
                            v.push((e, false));
                        }
                    }
                    v
                }
                EpsMode::Solve => pick(&line, signs).map(|e| (e, true)).into_iter().collect(),
            };
            for (e, family) in picked {
                for (u, h1) in sq.roots[i].iter().enumerate() {
                    let from = if i == j { u + 1 } else { 0 };
                    for h2 in &sq.roots[j][from..] {
                        found.push((vec![(*h1, e[0].clone()), (*h2, e[1].clone())], family));
                    }
                }
            }
        }
    }
}

type Canon = (Params, Vec<(Params, Rational)>);

fn encode(h0: &Params, data: &[(Params, Rational)]) -> Vec<i64> {
    let mut v = h0.to_vec();
    for (h, e) in data {
        v.extend_from_slice(h);
        push_rational(&mut v, e);
    }
    v
}

/// Least image of the data under the group, with each `H_r` sign-normal and
/// the curvature forms sorted.
fn canonical(g: &[Transform], lambda: &Rational, h0: &Params, data: &[(Params, Rational)]) -> (OrbitKey, Canon) {
    let h0m = herm(h0);
    let hs: Vec<Herm> = data.iter().map(|(h, _)| herm(h)).collect();
    let mut best: Option<(Vec<i64>, Canon)> = None;
    for t in g {
        let g0 = params(&t.apply(&h0m));
        let mut gd: Vec<(Params, Rational)> = hs
            .iter()
            .zip(data)
            .map(|(h, (_, e))| (signed(&params(&t.apply(h))), e.clone()))
            .collect();
        gd.sort();
        let enc = encode(&g0, &gd);
        if best.as_ref().map_or(true, |(b, _)| enc < *b) {
            best = Some((enc, (g0, gd)));
        }
    }
    let (enc, canon) = best.expect("nonempty group");
    let mut key = Vec::with_capacity(enc.len() + 2);
    push_rational(&mut key, lambda);
    key.extend(enc);
    (OrbitKey(key), canon)
}

fn endo(p: &Params) -> JEndo {
    let [x11, x22, x12, x13, x23, y12, y13, y23] = *p;
    JEndo::from_int_blocks(
        [[x11, x12, x13], [x12, x22, x23], [x13, x23, -x11 - x22]],
        [[0, y12, y13], [-y12, 0, y23], [-y13, -y23, 0]],
    )
    .expect("trace-free Hermitian parameters")
}

fn params_of_endo(e: &JEndo) -> Option<Params> {
    let (x, y) = (e.x(), e.y());
    let r = |v: &Rational| v.is_integer().then(|| v.to_integer().to_i64()).flatten();
    Some([
        r(&x[0][0])?,
        r(&x[1][1])?,
        r(&x[0][1])?,
        r(&x[0][2])?,
        r(&x[1][2])?,
        r(&y[0][1])?,
        r(&y[0][2])?,
        r(&y[1][2])?,
    ])
}

fn raw(lambda: &Rational, h0: &Params, data: &[(Params, Rational)], family: bool) -> Raw {
    let alpha = omega().scale(&(lambda.clone() * int(2))) + form_of_endo(&endo(h0));
    Raw {
        lambda: lambda.clone(),
        alphas: vec![su3red::lift(&alpha)],
        forms: data.iter().map(|(h, _)| su3red::lift(&form_of_endo(&endo(h)))).collect(),
        eps: data.iter().map(|(_, e)| e.clone()).collect(),
        family,
    }
}

/// Orbit key of ambient data `d e⁷ = α`, `F^r` on `e¹…e⁶`.
pub(crate) fn orbit_key_of(alg: &LieAlgebra, gauge: &GaugeField) -> Result<OrbitKey, SearchError> {
    let bad = |m: &str| SearchError::InvalidSpec(m.to_string());
    if alg.dim() != 7 || alg.derived_indices() != vec![7] {
        return Err(bad("expected an algebra with d e7 = alpha the only nonzero differential"));
    }
    let alpha = su3red::restrict(alg.differential(7));
    let w = omega();
    let lambda = alpha.inner(&w) / int(6);
    let alpha0 = alpha - w.scale(&(lambda.clone() * int(2)));
    let h0 = endo_of_form(&alpha0)
        .ok()
        .as_ref()
        .and_then(params_of_endo)
        .ok_or_else(|| bad("alpha - 2 lambda omega is not an integral primitive (1,1)-form"))?;
    let mut data = Vec::new();
    for (f, e) in gauge.forms().iter().zip(gauge.eps()) {
        if f.support_mask() & (1 << 6) != 0 {
            return Err(bad("curvature form involves e7"));
        }
        let h = endo_of_form(&su3red::restrict(f))
            .ok()
            .as_ref()
            .and_then(params_of_endo)
            .ok_or_else(|| bad("curvature form is not an integral primitive (1,1)-form"))?;
        let gcd = gcd_all(&h);
        if gcd == 0 {
            return Err(bad("zero curvature form"));
        }
        let e = e.clone() * int(gcd * gcd);
        data.push((signed(&h.map(|x| x / gcd)), e));
    }
    Ok(canonical(&group(), &lambda, &h0, &data).0)
}
