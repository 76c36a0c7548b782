//! Exact exterior algebra over an orthonormal coframe `e^1, …, e^n`.
//!
//! A basis monomial `e^{i_1 … i_p}` with `i_1 < … < i_p` is a [`Blade`], stored
//! as a bitmask with bit `i - 1` standing for `e^i`. A [`Form`] is a sparse
//! homogeneous combination of blades kept in a sorted map, so iteration order
//! (and therefore rendering) is deterministic.
//!
//! Conventions: the coframe is orthonormal, the orientation is `e^{1…n}`,
//! monomials are orthonormal for the induced inner product, and the Hodge
//! operator is fixed by `a ∧ *b = ⟨a, b⟩ e^{1…n}`. Vectors and covectors are
//! identified through the metric, so `e_i` and `e^i` are used interchangeably.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::scalar::{Rational, Scalar};

/// Largest supported dimension of the underlying vector space.
pub const MAX_DIM: usize = 63;

/// Errors raised by exterior algebra operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExteriorError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("cannot contract a {0}-form into a {1}-form")]
    ContractionDegree(usize, usize),
    #[error("index {index} outside 1..={dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("repeated index {0} in a blade")]
    RepeatedIndex(usize),
    #[error("dimension {0} exceeds the supported maximum")]
    DimensionTooLarge(usize),
    #[error("expected a {expected_degree}-form in dimension {expected_dim}, got a {degree}-form in dimension {dim}")]
    WrongShape {
        expected_dim: usize,
        expected_degree: usize,
        dim: usize,
        degree: usize,
    },
}

/// Sign `(-1)^N` where `N` counts pairs `(i ∈ a, j ∈ b)` with `i > j`.
///
/// For disjoint index sets this is the sign with `e^a ∧ e^b = sign · e^{a∪b}`.
pub fn merge_sign(a: u64, b: u64) -> i64 {
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        swaps += (a >> (j + 1)).count_ones();
        rest &= rest - 1;
    }
    if swaps % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Basis monomial `e^{i_1 … i_p}` in dimension `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Blade {
    dim: usize,
    mask: u64,
}

impl Blade {
    /// Builds a blade from 1-based indices in any order (the order is not a sign).
    pub fn from_indices(dim: usize, indices: &[usize]) -> Result<Self, ExteriorError> {
        if dim > MAX_DIM {
            return Err(ExteriorError::DimensionTooLarge(dim));
        }
        let mut mask = 0u64;
        for &i in indices {
            if i == 0 || i > dim {
                return Err(ExteriorError::IndexOutOfRange { index: i, dim });
            }
            let bit = 1u64 << (i - 1);
            if mask & bit != 0 {
                return Err(ExteriorError::RepeatedIndex(i));
            }
            mask |= bit;
        }
        Ok(Blade { dim, mask })
    }

    /// Builds a blade from a bitmask; bits above `dim` are rejected.
    pub fn from_mask(dim: usize, mask: u64) -> Result<Self, ExteriorError> {
        if dim > MAX_DIM {
            return Err(ExteriorError::DimensionTooLarge(dim));
        }
        if mask >> dim != 0 {
            let index = 64 - mask.leading_zeros() as usize;
            return Err(ExteriorError::IndexOutOfRange { index, dim });
        }
        Ok(Blade { dim, mask })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn degree(&self) -> usize {
        self.mask.count_ones() as usize
    }

    /// Ascending 1-based indices.
    pub fn indices(&self) -> Vec<usize> {
        mask_indices(self.mask)
    }
}

/// Ascending 1-based indices of a bitmask.
pub fn mask_indices(mask: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut rest = mask;
    while rest != 0 {
        out.push(rest.trailing_zeros() as usize + 1);
        rest &= rest - 1;
    }
    out
}

fn full_mask(dim: usize) -> u64 {
    if dim == 64 {
        u64::MAX
    } else {
        (1u64 << dim) - 1
    }
}

/// Homogeneous exterior form of degree `p` on an `n`-dimensional space.
///
/// No zero coefficient is ever stored, so structural equality is equality of
/// forms.
#[derive(Debug, Clone, PartialEq)]
pub struct Form<S: Scalar = Rational> {
    dim: usize,
    degree: usize,
    terms: BTreeMap<u64, S>,
}

impl<S: Scalar> Form<S> {
    /// The zero `degree`-form in dimension `dim`.
    pub fn zero(dim: usize, degree: usize) -> Self {
        assert!(dim <= MAX_DIM, "dimension {dim} exceeds {MAX_DIM}");
        Form {
            dim,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// The 0-form `c`.
    pub fn constant(dim: usize, c: S) -> Self {
        let mut f = Self::zero(dim, 0);
        f.add_term(0, c);
        f
    }

    /// `c · e^{indices}`, with the indices taken in the given order
    /// (so `[2, 1]` yields `-c e^{12}`).
    pub fn term(dim: usize, indices: &[usize], c: S) -> Result<Self, ExteriorError> {
        let blade = Blade::from_indices(dim, indices)?;
        let mut sign = 1i64;
        for (a, &i) in indices.iter().enumerate() {
            for &j in &indices[a + 1..] {
                if i > j {
                    sign = -sign;
                }
            }
        }
        let mut f = Self::zero(dim, blade.degree());
        f.add_term(blade.mask, if sign < 0 { -c } else { c });
        Ok(f)
    }

    /// `e^{indices}` with coefficient one.
    ///
    /// # Panics
    ///
    /// Panics on invalid or repeated indices; intended for literals in code.
    pub fn e(dim: usize, indices: &[usize]) -> Self {
        Self::term(dim, indices, S::one()).expect("valid blade literal")
    }

    /// Single-blade form `c · blade`.
    pub fn from_blade(blade: Blade, c: S) -> Self {
        let mut f = Self::zero(blade.dim, blade.degree());
        f.add_term(blade.mask, c);
        f
    }

    /// Builds a form from `(mask, coefficient)` pairs, summing repeats.
    pub fn from_terms<I>(dim: usize, degree: usize, terms: I) -> Result<Self, ExteriorError>
    where
        I: IntoIterator<Item = (u64, S)>,
    {
        let mut f = Self::zero(dim, degree);
        for (mask, c) in terms {
            let blade = Blade::from_mask(dim, mask)?;
            if blade.degree() != degree {
                return Err(ExteriorError::DegreeMismatch(blade.degree(), degree));
            }
            f.add_term(mask, c);
        }
        Ok(f)
    }

    /// The volume form `e^{1…n}`.
    pub fn volume(dim: usize) -> Self {
        let mut f = Self::zero(dim, dim);
        f.add_term(full_mask(dim), S::one());
        f
    }

    /// Adds `c · e^{mask}` in place; the caller guarantees the degree matches.
    pub(crate) fn add_term(&mut self, mask: u64, c: S) {
        debug_assert_eq!(mask.count_ones() as usize, self.degree);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&mask) {
            Some(v) => {
                *v = v.clone() + c;
                if v.is_zero() {
                    self.terms.remove(&mask);
                }
            }
            None => {
                self.terms.insert(mask, c);
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending bitmask order.
    pub fn terms(&self) -> impl Iterator<Item = (Blade, &S)> + '_ {
        let dim = self.dim;
        self.terms.iter().map(move |(&mask, c)| (Blade { dim, mask }, c))
    }

    /// Coefficient of `e^{mask}` (zero when absent).
    pub fn coeff(&self, mask: u64) -> S {
        self.terms.get(&mask).cloned().unwrap_or_else(S::zero)
    }

    /// Coefficient of `e^{indices}` in ascending order.
    pub fn coeff_of(&self, indices: &[usize]) -> S {
        match Blade::from_indices(self.dim, indices) {
            Ok(b) => self.coeff(b.mask),
            Err(_) => S::zero(),
        }
    }

    /// Value of a 0-form.
    pub fn scalar_part(&self) -> S {
        self.coeff(0)
    }

    /// Applies `f` to every coefficient, dropping zeros.
    pub fn map_coeffs<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Form<T> {
        let mut out = Form::zero(self.dim, self.degree);
        for (&m, c) in &self.terms {
            out.add_term(m, f(c));
        }
        out
    }

    /// Multiplies by a scalar.
    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim, self.degree);
        }
        let mut out = Self::zero(self.dim, self.degree);
        for (&m, v) in &self.terms {
            out.terms.insert(m, v.clone() * c.clone());
        }
        out
    }

    /// Checked sum.
    pub fn try_add(&self, other: &Self) -> Result<Self, ExteriorError> {
        self.same_shape(other)?;
        let mut out = self.clone();
        for (&m, c) in &other.terms {
            out.add_term(m, c.clone());
        }
        Ok(out)
    }

    fn same_shape(&self, other: &Self) -> Result<(), ExteriorError> {
        if self.dim != other.dim {
            return Err(ExteriorError::DimensionMismatch(self.dim, other.dim));
        }
        if self.degree != other.degree {
            return Err(ExteriorError::DegreeMismatch(self.degree, other.degree));
        }
        Ok(())
    }

    /// Checked wedge product. A result of degree above `n` is the zero form
    /// of that degree.
    pub fn try_wedge(&self, other: &Self) -> Result<Self, ExteriorError> {
        if self.dim != other.dim {
            return Err(ExteriorError::DimensionMismatch(self.dim, other.dim));
        }
        let mut out = Self::zero(self.dim, self.degree + other.degree);
        for (&a, ca) in &self.terms {
            for (&b, cb) in &other.terms {
                if a & b != 0 {
                    continue;
                }
                let c = ca.clone() * cb.clone();
                let c = if merge_sign(a, b) < 0 { -c } else { c };
                out.add_term(a | b, c);
            }
        }
        Ok(out)
    }

    /// Wedge product.
    ///
    /// # Panics
    ///
    /// Panics on a dimension mismatch; use [`Form::try_wedge`] to handle it.
    pub fn wedge(&self, other: &Self) -> Self {
        self.try_wedge(other).expect("wedge of forms of equal dimension")
    }

    /// Hodge star: `*e^I = sign(I, I^c) e^{I^c}`.
    pub fn hodge(&self) -> Self {
        let full = full_mask(self.dim);
        let mut out = Self::zero(self.dim, self.dim - self.degree);
        for (&m, c) in &self.terms {
            let comp = full & !m;
            let c = if merge_sign(m, comp) < 0 { -c.clone() } else { c.clone() };
            out.add_term(comp, c);
        }
        out
    }

    /// Inner product with orthonormal monomials; zero for mismatched shapes.
    pub fn inner(&self, other: &Self) -> S {
        if self.dim != other.dim || self.degree != other.degree {
            return S::zero();
        }
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = S::zero();
        for (m, c) in &small.terms {
            if let Some(d) = large.terms.get(m) {
                acc = acc + c.clone() * d.clone();
            }
        }
        acc
    }

    /// Squared norm `⟨a, a⟩`.
    pub fn norm2(&self) -> S {
        self.inner(self)
    }

    /// Interior product `self ⌟ b`, characterised by `⟨a ⌟ b, c⟩ = ⟨b, a ∧ c⟩`.
    pub fn try_contract(&self, b: &Self) -> Result<Self, ExteriorError> {
        if self.dim != b.dim {
            return Err(ExteriorError::DimensionMismatch(self.dim, b.dim));
        }
        if self.degree > b.degree {
            return Err(ExteriorError::ContractionDegree(self.degree, b.degree));
        }
        let mut out = Self::zero(self.dim, b.degree - self.degree);
        for (&i, ci) in &self.terms {
            for (&j, cj) in &b.terms {
                if i & j != i {
                    continue;
                }
                let k = j & !i;
                let c = ci.clone() * cj.clone();
                let c = if merge_sign(i, k) < 0 { -c } else { c };
                out.add_term(k, c);
            }
        }
        Ok(out)
    }

    /// Interior product `self ⌟ b`.
    ///
    /// # Panics
    ///
    /// Panics on mismatched dimensions or when `deg self > deg b`.
    pub fn contract(&self, b: &Self) -> Self {
        self.try_contract(b).expect("contraction of compatible forms")
    }

    /// Keeps the terms whose blade satisfies `keep`.
    pub fn filter(&self, keep: impl Fn(u64) -> bool) -> Self {
        let mut out = Self::zero(self.dim, self.degree);
        for (&m, c) in &self.terms {
            if keep(m) {
                out.terms.insert(m, c.clone());
            }
        }
        out
    }

    /// Union of the index sets of all blades.
    pub fn support_mask(&self) -> u64 {
        self.terms.keys().fold(0, |acc, m| acc | m)
    }

    /// Re-embeds into dimension `dim` through an index map `old ↦ new`
    /// (1-based); the map must be injective on the support.
    pub fn relabel(&self, dim: usize, map: impl Fn(usize) -> usize) -> Result<Self, ExteriorError> {
        let mut out = Self::zero(dim, self.degree);
        for (&m, c) in &self.terms {
            let image: Vec<usize> = mask_indices(m).into_iter().map(&map).collect();
            let t = Form::term(dim, &image, c.clone())?;
            for (&mm, cc) in &t.terms {
                out.add_term(mm, cc.clone());
            }
        }
        Ok(out)
    }

    /// Dense coefficient vector over the blades of this degree, in ascending
    /// bitmask order.
    pub fn to_dense(&self) -> Vec<S> {
        blades_of_degree(self.dim, self.degree)
            .into_iter()
            .map(|m| self.coeff(m))
            .collect()
    }

    /// Skew-symmetric `n × n` matrix of a 2-form, `M[i][j] = a(e_i, e_j)`.
    pub fn skew_matrix(&self) -> Vec<Vec<S>> {
        assert_eq!(self.degree, 2, "skew matrix of a 2-form");
        let n = self.dim;
        let mut m = vec![vec![S::zero(); n]; n];
        for (&mask, c) in &self.terms {
            let idx = mask_indices(mask);
            let (i, j) = (idx[0] - 1, idx[1] - 1);
            m[i][j] = c.clone();
            m[j][i] = -c.clone();
        }
        m
    }

    /// The 2-form with `a(e_i, e_j) = M[i][j]`, read from the upper triangle.
    pub fn from_skew_matrix(m: &[Vec<S>]) -> Self {
        let n = m.len();
        let mut f = Self::zero(n, 2);
        for (i, row) in m.iter().enumerate() {
            for (j, c) in row.iter().enumerate().skip(i + 1) {
                f.add_term((1u64 << i) | (1u64 << j), c.clone());
            }
        }
        f
    }

    /// Rank of a 2-form as a skew-symmetric matrix.
    pub fn rank2(&self) -> usize {
        crate::linalg::rank(self.skew_matrix())
    }
}

impl Form<Rational> {
    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }
}

/// All blade masks of degree `p` in dimension `n`, ascending.
pub fn blades_of_degree(n: usize, p: usize) -> Vec<u64> {
    (0..(1u64 << n)).filter(|m| m.count_ones() as usize == p).collect()
}

/// Lefschetz-type contraction `Λ = ½ Σ_i (J e_i) ⌟ e_i ⌟` on 4-forms in dimension 6
/// with `J e_{2k-1} = e_{2k}`.
pub fn lefschetz_dual<S: Scalar>(a: &Form<S>) -> Result<Form<S>, ExteriorError> {
    if a.dim() != 6 || a.degree() != 4 {
        return Err(ExteriorError::WrongShape {
            expected_dim: 6,
            expected_degree: 4,
            dim: a.dim(),
            degree: a.degree(),
        });
    }
    let mut out = Form::zero(6, 2);
    for i in 1..=6 {
        let ei = Form::<S>::e(6, &[i]);
        let jei = complex_structure_vector(i);
        let inner = ei.contract(a);
        out = out + jei.contract(&inner);
    }
    Ok(out.scale(&(S::one() / S::int(2))))
}

/// `J e_i` for the standard complex structure `J e_{2k-1} = e_{2k}` on `ℝ^6`.
pub fn complex_structure_vector<S: Scalar>(i: usize) -> Form<S> {
    if i % 2 == 1 {
        Form::e(6, &[i + 1])
    } else {
        Form::e(6, &[i - 1]).scale(&-S::one())
    }
}

impl<S: Scalar> fmt::Display for Form<S> {
    /// Canonical rendering: terms by ascending bitmask, unit coefficients
    /// omitted, e.g. `e12 - 1/2 e56`; the zero form renders as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (&mask, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if mask == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag} ")?;
            }
            write!(f, "e")?;
            for i in mask_indices(mask) {
                write!(f, "{i}")?;
            }
        }
        Ok(())
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl<S: Scalar> $trait<&Form<S>> for &Form<S> {
            type Output = Form<S>;
            fn $method(self, rhs: &Form<S>) -> Form<S> {
                $body(self, rhs)
            }
        }
        impl<S: Scalar> $trait<Form<S>> for Form<S> {
            type Output = Form<S>;
            fn $method(self, rhs: Form<S>) -> Form<S> {
                $body(&self, &rhs)
            }
        }
        impl<S: Scalar> $trait<&Form<S>> for Form<S> {
            type Output = Form<S>;
            fn $method(self, rhs: &Form<S>) -> Form<S> {
                $body(&self, rhs)
            }
        }
        impl<S: Scalar> $trait<Form<S>> for &Form<S> {
            type Output = Form<S>;
            fn $method(self, rhs: Form<S>) -> Form<S> {
                $body(self, &rhs)
            }
        }
    };
}

fn add_forms<S: Scalar>(a: &Form<S>, b: &Form<S>) -> Form<S> {
    a.try_add(b).expect("sum of forms of equal shape")
}

fn sub_forms<S: Scalar>(a: &Form<S>, b: &Form<S>) -> Form<S> {
    a.try_add(&-b).expect("difference of forms of equal shape")
}

binop!(Add, add, add_forms);
binop!(Sub, sub, sub_forms);

impl<S: Scalar> Neg for &Form<S> {
    type Output = Form<S>;
    fn neg(self) -> Form<S> {
        self.scale(&-S::one())
    }
}

impl<S: Scalar> Neg for Form<S> {
    type Output = Form<S>;
    fn neg(self) -> Form<S> {
        self.scale(&-S::one())
    }
}

impl<S: Scalar> Mul<&Form<S>> for &Form<S> {
    type Output = Form<S>;
    /// `a * b` is the wedge product.
    fn mul(self, rhs: &Form<S>) -> Form<S> {
        self.wedge(rhs)
    }
}

/// Sums forms of a common shape; an empty iterator yields `zero`.
pub fn sum<S: Scalar>(zero: Form<S>, forms: impl IntoIterator<Item = Form<S>>) -> Form<S> {
    forms.into_iter().fold(zero, |acc, f| acc + f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    fn e(ix: &[usize]) -> Form {
        Form::e(7, ix)
    }

    #[test]
    fn merge_sign_matches_permutation_parity() {
        // e3 ∧ e1 = -e13, e2 ∧ e13 = -e123, e13 ∧ e2 = -e123
        assert_eq!(merge_sign(0b100, 0b001), -1);
        assert_eq!(merge_sign(0b010, 0b101), -1);
        assert_eq!(merge_sign(0b101, 0b010), -1);
        assert_eq!(merge_sign(0b011, 0b100), 1);
    }

    #[test]
    fn term_orders_indices_with_sign() {
        let f: Form = Form::term(4, &[3, 1], int(2)).unwrap();
        assert_eq!(f.coeff_of(&[1, 3]), int(-2));
        assert!(Form::<Rational>::term(4, &[1, 1], int(1)).is_err());
        assert!(Form::<Rational>::term(4, &[5], int(1)).is_err());
    }

    #[test]
    fn rendering_is_canonical() {
        let f = e(&[5, 6]).scale(&rat(-1, 2));
        assert_eq!(f.to_string(), "-1/2 e56");
        let g = e(&[3, 4]) - e(&[1, 2]).scale(&int(5));
        assert_eq!(g.to_string(), "-5 e12 + e34");
        assert_eq!(Form::<Rational>::zero(7, 2).to_string(), "0");
        assert_eq!(Form::constant(7, rat(3, 2)).to_string(), "3/2");
    }

    #[test]
    fn contraction_rejects_higher_degree() {
        assert!(e(&[1, 2]).try_contract(&e(&[1])).is_err());
        assert_eq!(e(&[1]).contract(&e(&[1, 2])), e(&[2]));
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let a: Form = Form::e(4, &[1]);
        let b: Form = Form::e(5, &[2]);
        assert_eq!(a.try_wedge(&b), Err(ExteriorError::DimensionMismatch(4, 5)));
    }
}
