//! Symbolic model of circle-bundle transition functions, used as an
//! independent oracle for the closed-form cocycle.

use std::collections::BTreeMap;

use g2het::bundle::Element;
use g2het::exterior::blades_of_degree;
use g2het::linalg;
use g2het::nilalg::LieAlgebra;
use g2het::{int, rat, Form, Rational};
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Polynomials in the coordinates `(Y¹, …, Yᵐ, W¹, …, W^{n′})` of `p = exp(Y + W)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl Poly {
    fn constant(nvars: usize, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; nvars], c);
        }
        Poly { nvars, terms }
    }

    fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Poly {
            nvars,
            terms: [(e, Rational::one())].into_iter().collect(),
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut terms = self.terms.clone();
        for (m, c) in &o.terms {
            let v = terms.remove(m).unwrap_or_else(Rational::zero) + c;
            if !v.is_zero() {
                terms.insert(m.clone(), v);
            }
        }
        Poly { nvars: self.nvars, terms }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::constant(self.nvars, Rational::zero());
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    fn mul(&self, o: &Poly) -> Poly {
        let mut out = Poly::constant(self.nvars, Rational::zero());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let m: Vec<u32> = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                out = out.add(&Poly {
                    nvars: self.nvars,
                    terms: [(m, c1 * c2)].into_iter().collect(),
                });
            }
        }
        out
    }

    /// Composition `p(s₁, …, s_N)`.
    fn substitute(&self, subs: &[Poly]) -> Poly {
        let mut out = Poly::constant(self.nvars, Rational::zero());
        for (m, c) in &self.terms {
            let mut t = Poly::constant(self.nvars, c.clone());
            for (i, &e) in m.iter().enumerate() {
                for _ in 0..e {
                    t = t.mul(&subs[i]);
                }
            }
            out = out.add(&t);
        }
        out
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self
                .terms
                .iter()
                .next()
                .filter(|(m, _)| m.iter().all(|&e| e == 0))
                .map(|(_, c)| c.clone()),
            _ => None,
        }
    }
}

/// Independent model of the circle-bundle transition data, built only from
/// the algebra's bracket constants and the raw coefficients of `F`.
pub struct Oracle {
    v: Vec<usize>,
    z: Vec<usize>,
    /// `⟨[e_a, e_b], e_c⟩` on the full coframe, 0-based.
    bracket: Vec<Vec<Vec<Rational>>>,
    f: Form,
}

impl Oracle {
    pub fn new(alg: &LieAlgebra, f: &Form) -> Self {
        let z = alg.derived_indices();
        let v = (1..=alg.dim()).filter(|i| !z.contains(i)).collect();
        Oracle {
            v,
            z,
            bracket: alg.bracket_constants(),
            f: f.clone(),
        }
    }

    fn nvars(&self) -> usize {
        self.v.len() + self.z.len()
    }

    fn fv(&self, a: usize, b: usize) -> Rational {
        // F(e_a, e_b) for 1-based coframe indices.
        if a < b {
            self.f.coeff_of(&[a, b])
        } else if a > b {
            -self.f.coeff_of(&[b, a])
        } else {
            Rational::zero()
        }
    }

    /// `c_ijk = dη^i(e_j, e_k) = −η^i([e_j, e_k])` with `η^i = F(e_i, ·)|_{𝔫′}`.
    pub fn c(&self, i: usize, j: usize, k: usize) -> Rational {
        let (vi, vj, vk) = (self.v[i], self.v[j], self.v[k]);
        let mut total = Rational::zero();
        for &zr in &self.z {
            total -= self.fv(vi, zr) * &self.bracket[vj - 1][vk - 1][zr - 1];
        }
        total
    }

    /// `exp(A) exp(B)` computed from the full bracket.
    pub fn bch(&self, a: &Element, b: &Element) -> Element {
        let mut out = Element {
            v: a.v.iter().zip(&b.v).map(|(x, y)| x + y).collect(),
            z: a.z.iter().zip(&b.z).map(|(x, y)| x + y).collect(),
        };
        for (r, &zr) in self.z.iter().enumerate() {
            for (j, &vj) in self.v.iter().enumerate() {
                for (k, &vk) in self.v.iter().enumerate() {
                    out.z[r] += rat(1, 2) * &self.bracket[vj - 1][vk - 1][zr - 1] * &a.v[j] * &b.v[k];
                }
            }
        }
        out
    }

    /// The transition function `f_γ` for `γ = exp(C)` as a polynomial on `N`.
    pub fn f_gamma(&self, c: &Element) -> Poly {
        let n = self.nvars();
        let m = self.v.len();
        let y = |k: usize| Poly::var(n, k);
        let mut out = Poly::constant(n, Rational::zero());
        for r in 0..m {
            for s in r + 1..m {
                let coef = self.fv(self.v[r], self.v[s]) * &c.v[r];
                out = out.add(&y(s).scale(&coef));
            }
        }
        for i in 0..m {
            let mut u_eta = Poly::constant(n, Rational::zero());
            for (r, &zr) in self.z.iter().enumerate() {
                u_eta = u_eta.add(&Poly::var(n, m + r).scale(&self.fv(self.v[i], zr)));
            }
            out = out.add(&u_eta.scale(&c.v[i]));
        }
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    let cijk = self.c(i, j, k);
                    if cijk.is_zero() {
                        continue;
                    }
                    let quad = y(i).mul(&y(k)).scale(&(rat(-1, 6) * &cijk * &c.v[j]));
                    let lin = y(k).scale(&(rat(-1, 3) * &cijk * &c.v[i] * &c.v[j]));
                    out = out.add(&quad).add(&lin);
                }
            }
        }
        out
    }

    /// `γ* g` for a function `g` on `N`: substitute the coordinates of `γ p`.
    pub fn pull_back(&self, c: &Element, g: &Poly) -> Poly {
        let n = self.nvars();
        let m = self.v.len();
        let mut subs = Vec::with_capacity(n);
        for k in 0..m {
            subs.push(Poly::var(n, k).add(&Poly::constant(n, c.v[k].clone())));
        }
        for (r, &zr) in self.z.iter().enumerate() {
            let mut s = Poly::var(n, m + r).add(&Poly::constant(n, c.z[r].clone()));
            for (j, &vj) in self.v.iter().enumerate() {
                for (k, &vk) in self.v.iter().enumerate() {
                    let coef = rat(1, 2) * &self.bracket[vj - 1][vk - 1][zr - 1] * &c.v[j];
                    s = s.add(&Poly::var(n, k).scale(&coef));
                }
            }
            subs.push(s);
        }
        g.substitute(&subs)
    }

    /// `f_{γ₂} + γ₂* f_{γ₁} − f_{γ₁γ₂}`, which must be constant.
    pub fn cocycle(&self, c1: &Element, c2: &Element) -> Rational {
        let prod = self.bch(c1, c2);
        let total = self
            .f_gamma(c2)
            .add(&self.pull_back(c2, &self.f_gamma(c1)))
            .add(&self.f_gamma(&prod).scale(&int(-1)));
        total.as_constant().expect("cocycle is constant on N")
    }
}

/// Random integral closed 2-form on `alg`.
pub fn random_closed_form(alg: &LieAlgebra, rng: &mut ChaCha8Rng) -> Form {
    let masks = blades_of_degree(7, 2);
    let three = blades_of_degree(7, 3);
    let columns: Vec<Form> = masks
        .iter()
        .map(|&mk| alg.d(&Form::from_terms(7, 2, [(mk, int(1))]).unwrap()))
        .collect();
    let rows: Vec<Vec<Rational>> = three
        .iter()
        .map(|&t| columns.iter().map(|c| c.coeff(t)).collect())
        .collect();
    let kernel = linalg::kernel(&rows, masks.len());
    let mut f = Form::zero(7, 2);
    for vec in kernel {
        let k: i64 = rng.gen_range(-2..=2);
        let lcm = vec
            .iter()
            .fold(num_bigint::BigInt::one(), |acc, x| num_integer::lcm(acc, x.denom().clone()));
        let scale = Rational::from_integer(lcm) * int(k);
        let g = Form::from_terms(7, 2, masks.iter().copied().zip(vec.into_iter().map(|x| x * &scale))).unwrap();
        f = f + g;
    }
    f
}

pub fn random_element(sp_m: usize, nz: usize, factor: i64, rng: &mut ChaCha8Rng) -> Element {
    Element {
        v: (0..sp_m).map(|_| int(factor * rng.gen_range(-2..=2))).collect(),
        z: (0..nz).map(|_| int(rng.gen_range(-2..=2))).collect(),
    }
}
