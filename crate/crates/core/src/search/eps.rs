//! Exact solution sets for the pairing coefficients `(ε₁, ε₂)`.
//!
//! The reduced equations are linear in `ε` except for one quadratic
//! condition, so every solution set is an affine subspace of `ℚ²` cut by a
//! quadratic. Components of dimension one are reported through a single
//! deterministic representative.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::scalar::{int, Rational};

/// An affine subspace of `ℚ²`.
#[derive(Debug, Clone, PartialEq)]
pub(crate) enum EpsSet {
    Empty,
    Point([Rational; 2]),
    Line { base: [Rational; 2], dir: [Rational; 2] },
    All,
}

fn dot(a: &[Rational; 2], b: &[Rational; 2]) -> Rational {
    a[0].clone() * &b[0] + a[1].clone() * &b[1]
}

fn along(base: &[Rational; 2], dir: &[Rational; 2], s: &Rational) -> [Rational; 2] {
    [
        base[0].clone() + dir[0].clone() * s,
        base[1].clone() + dir[1].clone() * s,
    ]
}

impl EpsSet {
    /// Intersection with `{ε : a·ε = b}`.
    pub(crate) fn meet(self, a: &[Rational; 2], b: &Rational) -> EpsSet {
        match self {
            EpsSet::Empty => EpsSet::Empty,
            EpsSet::Point(p) => {
                if dot(a, &p) == *b {
                    EpsSet::Point(p)
                } else {
                    EpsSet::Empty
                }
            }
            EpsSet::Line { base, dir } => {
                let ad = dot(a, &dir);
                let ap = dot(a, &base);
                if !ad.is_zero() {
                    let s = (b.clone() - ap) / ad;
                    EpsSet::Point(along(&base, &dir, &s))
                } else if ap == *b {
                    EpsSet::Line { base, dir }
                } else {
                    EpsSet::Empty
                }
            }
            EpsSet::All => {
                if a[0].is_zero() && a[1].is_zero() {
                    if b.is_zero() {
                        EpsSet::All
                    } else {
                        EpsSet::Empty
                    }
                } else {
                    let base = if !a[0].is_zero() {
                        [b.clone() / &a[0], int(0)]
                    } else {
                        [int(0), b.clone() / &a[1]]
                    };
                    EpsSet::Line {
                        base,
                        dir: [a[1].clone(), -a[0].clone()],
                    }
                }
            }
        }
    }

    /// Intersection with `{ε : c₁ε₁ + c₂ε₂ = 0}` for each integer row.
    pub(crate) fn meet_rows(self, rows: impl IntoIterator<Item = [i64; 2]>) -> EpsSet {
        let zero = int(0);
        let mut set = self;
        for [c1, c2] in rows {
            if c1 == 0 && c2 == 0 {
                continue;
            }
            set = set.meet(&[int(c1), int(c2)], &zero);
            if set == EpsSet::Empty {
                break;
            }
        }
        set
    }
}

/// `Q(ε) = εᵀ A ε + b·ε + c` with symmetric `A`.
#[derive(Debug, Clone)]
pub(crate) struct Quadratic {
    pub a: [[Rational; 2]; 2],
    pub b: [Rational; 2],
    pub c: Rational,
}

impl Quadratic {
    pub(crate) fn eval(&self, e: &[Rational; 2]) -> Rational {
        let mut v = self.c.clone() + dot(&self.b, e);
        for i in 0..2 {
            for j in 0..2 {
                v += self.a[i][j].clone() * &e[i] * &e[j];
            }
        }
        v
    }

    fn is_linear(&self) -> bool {
        self.a.iter().flatten().all(Zero::is_zero)
    }
}

/// Zeros of a quadratic on an affine subspace.
#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Zeros {
    Points(Vec<[Rational; 2]>),
    /// The quadratic vanishes on a whole line or on all of `ℚ²`.
    Family(EpsSet),
}

/// Exact square root of a nonnegative rational, when it is rational.
pub(crate) fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let root = |n: &BigInt| {
        let s = n.sqrt();
        (s.clone() * &s == *n).then_some(s)
    };
    Some(Rational::new(root(r.numer())?, root(r.denom())?))
}

pub(crate) fn zeros(set: EpsSet, q: &Quadratic) -> Zeros {
    match set {
        EpsSet::Empty => Zeros::Points(vec![]),
        EpsSet::Point(p) => Zeros::Points(if q.eval(&p).is_zero() { vec![p] } else { vec![] }),
        EpsSet::Line { base, dir } => {
            let mut ad = [int(0), int(0)];
            for (i, x) in ad.iter_mut().enumerate() {
                *x = q.a[i][0].clone() * &dir[0] + q.a[i][1].clone() * &dir[1];
            }
            let c2 = dot(&dir, &ad);
            let c1 = dot(&base, &ad) * int(2) + dot(&q.b, &dir);
            let c0 = q.eval(&base);
            if c2.is_zero() {
                if c1.is_zero() {
                    return if c0.is_zero() {
                        Zeros::Family(EpsSet::Line { base, dir })
                    } else {
                        Zeros::Points(vec![])
                    };
                }
                let s = -c0 / c1;
                return Zeros::Points(vec![along(&base, &dir, &s)]);
            }
            let disc = c1.clone() * &c1 - c2.clone() * &c0 * int(4);
            let Some(root) = rational_sqrt(&disc) else {
                return Zeros::Points(vec![]);
            };
            let two_a = c2 * int(2);
            let mut out = vec![along(&base, &dir, &((-c1.clone() - &root) / &two_a))];
            if !root.is_zero() {
                out.push(along(&base, &dir, &((-c1 + root) / two_a)));
            }
            out.sort();
            Zeros::Points(out)
        }
        EpsSet::All => {
            if q.is_linear() {
                let set = EpsSet::All.meet(&q.b, &(-q.c.clone()));
                match set {
                    EpsSet::Empty => Zeros::Points(vec![]),
                    other => Zeros::Family(other),
                }
            } else {
                // Only reached for λ ≠ 0, where the trace condition always
                // cuts the set down to a line first.
                Zeros::Points(vec![])
            }
        }
    }
}

/// The ε-sign pattern matches as a multiset and no entry vanishes.
pub(crate) fn signs_match(eps: &[Rational], signs: Option<&[i8]>) -> bool {
    if eps.iter().any(Zero::is_zero) {
        return false;
    }
    let Some(signs) = signs else {
        return true;
    };
    let pos = eps.iter().filter(|e| e.is_positive()).count();
    let want = signs.iter().filter(|&&s| s > 0).count();
    eps.len() == signs.len() && pos == want
}

/// Orderings of the sign multiset tried for a two-element `ε`.
fn sign_orders(signs: Option<&[i8]>) -> Vec<[i8; 2]> {
    let all = [[1, 1], [1, -1], [-1, 1], [-1, -1]];
    match signs {
        None => all.to_vec(),
        Some(s) => {
            let pos = s.iter().filter(|&&x| x > 0).count();
            all.into_iter()
                .filter(|o| o.iter().filter(|&&x| x > 0).count() == pos)
                .collect()
        }
    }
}

/// A deterministic point of a line or plane of solutions with the requested
/// signs. On a line `base + s·dir` the admissible `s` form an open interval;
/// the midpoint is taken when it is bounded, otherwise the point at distance
/// one from the finite end, otherwise `s = 0`. The sign orders are tried as
/// `(+,+), (+,−), (−,+), (−,−)`.
pub(crate) fn pick(set: &EpsSet, signs: Option<&[i8]>) -> Option<[Rational; 2]> {
    match set {
        EpsSet::Empty => None,
        EpsSet::Point(p) => signs_match(p, signs).then(|| p.clone()),
        EpsSet::All => sign_orders(signs)
            .first()
            .map(|o| [int(o[0] as i64), int(o[1] as i64)]),
        EpsSet::Line { base, dir } => {
            for order in sign_orders(signs) {
                let mut lo: Option<Rational> = None;
                let mut hi: Option<Rational> = None;
                let mut feasible = true;
                for r in 0..2 {
                    let want = order[r] as i64;
                    if dir[r].is_zero() {
                        if (base[r].clone() * int(want)).is_positive() {
                            continue;
                        }
                        feasible = false;
                        break;
                    }
                    // want·(base + s·dir) > 0.
                    let root = -base[r].clone() / &dir[r];
                    if (dir[r].clone() * int(want)).is_positive() {
                        lo = Some(lo.map_or(root.clone(), |l| l.max(root.clone())));
                    } else {
                        hi = Some(hi.map_or(root.clone(), |h| h.min(root.clone())));
                    }
                }
                if !feasible {
                    continue;
                }
                let s = match (&lo, &hi) {
                    (Some(l), Some(h)) if l < h => (l.clone() + h) / int(2),
                    (Some(_), Some(_)) => continue,
                    (Some(l), None) => l.clone() + int(1),
                    (None, Some(h)) => h.clone() - int(1),
                    (None, None) => int(0),
                };
                return Some(along(base, dir, &s));
            }
            None
        }
    }
}
