//! 2-step nilpotent Lie algebras given by their structure equations.
//!
//! An algebra of dimension `n` is stored as the list of differentials
//! `d e^1, …, d e^n` of its orthonormal coframe (Salamon notation). The
//! differential extends to all forms as an anti-derivation, the
//! Chevalley–Eilenberg differential.
//!
//! Normal form means: every nonzero `d e^i` lies in `Λ²⟨e^j : j < i, d e^j = 0⟩`.
//! The coframe then splits into closed indices and derived indices (those with
//! `d e^i ≠ 0`); `d² = 0` holds automatically and the algebra is 2-step
//! nilpotent. The structure 2-forms `α_r` are the nonzero differentials in
//! index order.
//!
//! Brackets follow the convention `dα(X, Y) = −α([X, Y])`. Curvature and all
//! norms are even in this sign.

use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::exterior::{mask_indices, ExteriorError, Form};
use crate::linalg;
use crate::scalar::{Rational, Scalar};

/// Errors raised when building or using a Lie algebra.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("structure equations need one 2-form per coframe element")]
    Shape,
    #[error("differential of e{index} is not a 2-form in dimension {dim}")]
    NotTwoForm { index: usize, dim: usize },
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
    #[error("invalid algebra: {0}")]
    Invalid(String),
}

/// A nilpotent Lie algebra of dimension `n ≤ 8` through its structure equations.
#[derive(Debug, Clone, PartialEq)]
pub struct LieAlgebra<S: Scalar = Rational> {
    name: Option<String>,
    structure: Vec<Form<S>>,
}

impl<S: Scalar> LieAlgebra<S> {
    /// Builds an algebra from `(d e^1, …, d e^n)`. Only the shape is checked
    /// here; use [`LieAlgebra::validate`] for the algebraic conditions.
    pub fn new(structure: Vec<Form<S>>) -> Result<Self, AlgebraError> {
        let n = structure.len();
        if n == 0 || n > 8 {
            return Err(AlgebraError::Shape);
        }
        for (i, f) in structure.iter().enumerate() {
            if f.dim() != n || f.degree() != 2 {
                return Err(AlgebraError::NotTwoForm { index: i + 1, dim: n });
            }
        }
        Ok(LieAlgebra {
            name: None,
            structure,
        })
    }

    /// The abelian algebra `ℝ^n`.
    pub fn abelian(n: usize) -> Self {
        LieAlgebra::new((0..n).map(|_| Form::zero(n, 2)).collect()).expect("abelian shape")
    }

    /// Algebra of dimension `n` whose last `alphas.len()` coframe elements have
    /// the given differentials, all others being closed.
    pub fn center_last(n: usize, alphas: Vec<Form<S>>) -> Result<Self, AlgebraError> {
        let k = alphas.len();
        if k > n {
            return Err(AlgebraError::Shape);
        }
        let mut structure: Vec<Form<S>> = (0..n - k).map(|_| Form::zero(n, 2)).collect();
        structure.extend(alphas);
        LieAlgebra::new(structure)
    }

    /// Attaches a display name.
    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn dim(&self) -> usize {
        self.structure.len()
    }

    /// `d e^i` for a 1-based index.
    pub fn differential(&self, i: usize) -> &Form<S> {
        &self.structure[i - 1]
    }

    /// The full list `(d e^1, …, d e^n)`.
    pub fn structure(&self) -> &[Form<S>] {
        &self.structure
    }

    /// Indices with nonzero differential, ascending.
    pub fn derived_indices(&self) -> Vec<usize> {
        (1..=self.dim())
            .filter(|&i| !self.structure[i - 1].is_zero())
            .collect()
    }

    /// The structure 2-forms `α_r`: the nonzero differentials in index order.
    pub fn alphas(&self) -> Vec<Form<S>> {
        self.structure.iter().filter(|f| !f.is_zero()).cloned().collect()
    }

    /// Number of nonzero structure forms (the derived dimension once validated).
    pub fn derived_dim(&self) -> usize {
        self.structure.iter().filter(|f| !f.is_zero()).count()
    }

    /// Chevalley–Eilenberg differential, checked for dimension.
    pub fn try_d(&self, a: &Form<S>) -> Result<Form<S>, AlgebraError> {
        if a.dim() != self.dim() {
            return Err(ExteriorError::DimensionMismatch(a.dim(), self.dim()).into());
        }
        let n = self.dim();
        let mut out = Form::zero(n, a.degree() + 1);
        for (blade, c) in a.terms() {
            let idx = blade.indices();
            for (k, &i) in idx.iter().enumerate() {
                let de = &self.structure[i - 1];
                if de.is_zero() {
                    continue;
                }
                // d(e^{i_1 … i_p}) = Σ_k (−1)^k e^{I∖i_k} ∧ d e^{i_k}, since the
                // 2-form d e^{i_k} commutes past everything.
                let rest_mask = blade.mask() & !(1u64 << (i - 1));
                let rest = Form::from_terms(n, a.degree() - 1, [(rest_mask, c.clone())])?;
                let term = rest.wedge(de);
                out = if k % 2 == 0 { out + term } else { out - term };
            }
        }
        Ok(out)
    }

    /// Chevalley–Eilenberg differential.
    ///
    /// # Panics
    ///
    /// Panics if the form does not live in dimension `n`.
    pub fn d(&self, a: &Form<S>) -> Form<S> {
        self.try_d(a).expect("form of the algebra's dimension")
    }

    /// Structure constants `⟨[e_i, e_j], e_k⟩ = −(d e^k)(e_i, e_j)`, indexed
    /// `c[i][j][k]` from 0.
    pub fn bracket_constants(&self) -> Vec<Vec<Vec<S>>> {
        let n = self.dim();
        let mut c = vec![vec![vec![S::zero(); n]; n]; n];
        for k in 0..n {
            for (blade, v) in self.structure[k].terms() {
                let idx = mask_indices(blade.mask());
                let (i, j) = (idx[0] - 1, idx[1] - 1);
                c[i][j][k] = -v.clone();
                c[j][i][k] = v.clone();
            }
        }
        c
    }

    /// Scalar curvature of the left-invariant metric making the coframe
    /// orthonormal, assembled from the Koszul formula
    /// `⟨∇_{e_i} e_j, e_k⟩ = ½(⟨[e_i,e_j],e_k⟩ − ⟨[e_j,e_k],e_i⟩ + ⟨[e_k,e_i],e_j⟩)`.
    pub fn scalar_curvature(&self) -> S {
        let n = self.dim();
        let c = self.bracket_constants();
        let half = S::one() / S::int(2);
        let mut g = vec![vec![vec![S::zero(); n]; n]; n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    g[i][j][k] = (c[i][j][k].clone() - c[j][k][i].clone() + c[k][i][j].clone())
                        * half.clone();
                }
            }
        }
        // ⟨R(e_i, e_j) e_l, e_k⟩ with R(X,Y) = ∇_X∇_Y − ∇_Y∇_X − ∇_{[X,Y]}.
        let riem = |i: usize, j: usize, l: usize, k: usize| -> S {
            let mut acc = S::zero();
            for m in 0..n {
                acc = acc + g[j][l][m].clone() * g[i][m][k].clone()
                    - g[i][l][m].clone() * g[j][m][k].clone()
                    - c[i][j][m].clone() * g[m][l][k].clone();
            }
            acc
        };
        let mut scal = S::zero();
        for i in 0..n {
            for j in 0..n {
                scal = scal + riem(i, j, j, i);
            }
        }
        scal
    }
}

impl LieAlgebra<Rational> {
    /// Checks the structural conditions and reports every finding.
    pub fn validate(&self) -> Diagnostics {
        let n = self.dim();
        let mut checks = Vec::new();

        let closed: Vec<bool> = self.structure.iter().map(|f| f.is_zero()).collect();
        let mut bad = Vec::new();
        for (i, f) in self.structure.iter().enumerate() {
            let support = f.support_mask();
            let allowed: u64 = (0..i).filter(|&j| closed[j]).map(|j| 1u64 << j).sum();
            if support & !allowed != 0 {
                bad.push(format!("de{}", i + 1));
            }
        }
        checks.push(Check::new(
            "normal_form",
            bad.is_empty(),
            if bad.is_empty() {
                "each de^i lies in Λ² of earlier closed coframe elements".to_string()
            } else {
                format!("not normal form: {}", bad.join(", "))
            },
        ));

        let mut d2_fail = Vec::new();
        for i in 1..=n {
            let e: Form = Form::e(n, &[i]);
            let dde = self.d(&self.d(&e));
            if !dde.is_zero() {
                d2_fail.push(format!("d(de{i}) = {dde}"));
            }
        }
        checks.push(Check::new(
            "d_squared",
            d2_fail.is_empty(),
            if d2_fail.is_empty() {
                "d∘d = 0 on the coframe".to_string()
            } else {
                d2_fail.join("; ")
            },
        ));

        let alphas = self.alphas();
        let rank = linalg::rank(alphas.iter().map(|a| a.to_dense()).collect());
        let independent = rank == alphas.len();
        checks.push(Check::new(
            "independent",
            independent,
            if independent {
                format!("{} independent structure forms", alphas.len())
            } else {
                format!("dependent structure forms: rank {rank} < {}", alphas.len())
            },
        ));

        let integral = self.structure.iter().all(|f| f.is_integral());
        checks.push(Check::new(
            "integral",
            integral,
            if integral {
                "integer structure constants".to_string()
            } else {
                "non-integral structure constants".to_string()
            },
        ));

        let rank_alpha = if alphas.len() == 1 {
            Some(alphas[0].rank2())
        } else {
            None
        };
        Diagnostics {
            checks,
            derived_dim: rank,
            rank_alpha,
        }
    }

    /// Coarse isomorphism invariants.
    pub fn fingerprint(&self) -> Fingerprint {
        let alphas = self.alphas();
        let n = self.dim();
        let k = alphas.len();
        let mut wedges = Vec::new();
        let mut all_vanish = true;
        for i in 0..k {
            for j in i..k {
                let w = alphas[i].wedge(&alphas[j]);
                if !w.is_zero() {
                    all_vanish = false;
                }
                wedges.push(w);
            }
        }
        let wedge_span_dim = linalg::rank(wedges.iter().map(|w| w.to_dense()).collect());
        let mut alpha_ranks: Vec<usize> = alphas.iter().map(|a| a.rank2()).collect();
        alpha_ranks.sort_unstable();

        // Smallest subspace U of the coframe span with every α_r ∈ Λ²U: its
        // dimension is the rank of the map v ↦ (v ⌟ α_r)_r.
        let mut rows = Vec::new();
        for i in 1..=n {
            let v: Form = Form::e(n, &[i]);
            let mut row = Vec::new();
            for a in &alphas {
                row.extend(v.contract(a).to_dense());
            }
            rows.push(row);
        }
        let support_dim = linalg::rank(rows);

        // When all α_i ∧ α_j are multiples of one 4-form w, the pairing
        // (i, j) ↦ α_i ∧ α_j / w is a quadratic form on the centre whose
        // inertia (up to overall sign) is invariant.
        let pencil_inertia = if wedge_span_dim <= 1 {
            let w = wedges.iter().find(|w| !w.is_zero()).cloned();
            let mut m = vec![vec![Rational::from_integer(0.into()); k]; k];
            if let Some(w) = w {
                let wn = w.norm2();
                for i in 0..k {
                    for j in 0..k {
                        m[i][j] = alphas[i].wedge(&alphas[j]).inner(&w) / wn.clone();
                    }
                }
            }
            let (p, q) = linalg::inertia(&m);
            Some((p.max(q), p.min(q)))
        } else {
            None
        };

        Fingerprint {
            derived_dim: k,
            rank_alpha: if k == 1 { Some(alphas[0].rank2()) } else { None },
            wedge_span_dim,
            alpha_ranks,
            all_wedges_vanish: all_vanish,
            support_dim,
            pencil_inertia,
        }
    }
}

/// One named diagnostic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, passed: bool, detail: String) -> Self {
        Check {
            name,
            passed,
            detail,
        }
    }
}

/// Outcome of [`LieAlgebra::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostics {
    pub checks: Vec<Check>,
    /// Dimension of the span of the structure forms.
    pub derived_dim: usize,
    /// Rank of the single structure form when the derived dimension is one.
    pub rank_alpha: Option<usize>,
}

impl Diagnostics {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// Details of the failed checks.
    pub fn failures(&self) -> Vec<String> {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| format!("{}: {}", c.name, c.detail))
            .collect()
    }
}

/// Coarse invariants separating the catalog entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Fingerprint {
    pub derived_dim: usize,
    /// Rank of `α` when the derived dimension is one.
    pub rank_alpha: Option<usize>,
    /// `dim span{α_i ∧ α_j : i ≤ j}`.
    pub wedge_span_dim: usize,
    /// Sorted ranks of the individual `α_i`.
    pub alpha_ranks: Vec<usize>,
    pub all_wedges_vanish: bool,
    /// Dimension of the smallest subspace carrying all `α_i`.
    pub support_dim: usize,
    /// Inertia `(max, min)` of the wedge pairing when it is scalar valued.
    pub pencil_inertia: Option<(usize, usize)>,
}

impl fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n'={}", self.derived_dim)?;
        if let Some(r) = self.rank_alpha {
            write!(f, " rank={r}")?;
        }
        write!(
            f,
            " wedges={} ranks={:?} vanish={} support={}",
            self.wedge_span_dim, self.alpha_ranks, self.all_wedges_vanish, self.support_dim
        )?;
        if let Some((p, q)) = self.pencil_inertia {
            write!(f, " pencil=({p},{q})")?;
        }
        Ok(())
    }
}

/// One algebra of the classification list.
#[derive(Debug, Clone, PartialEq)]
pub struct CatalogEntry {
    /// Short identifier used on the command line, e.g. `n73D1`.
    pub name: &'static str,
    /// Conventional display name, e.g. `n_{7,3,D_1}`.
    pub display: &'static str,
    /// Salamon tuple as written in the classification.
    pub tuple: String,
    pub algebra: LieAlgebra,
    pub derived_dim: usize,
}

/// `(name, display, derived dimension, structure tuple)` of the 16 algebras.
const CATALOG: [(&str, &str, usize, [&str; 7]); 16] = [
    ("h3+R4", "h_3+R^4", 1, ["", "", "", "", "", "", "12"]),
    ("h5+R2", "h_5+R^2", 1, ["", "", "", "", "", "", "12+34"]),
    ("h7", "h_7", 1, ["", "", "", "", "", "", "12+34+56"]),
    ("n52+R2", "n_{5,2}+R^2", 2, ["", "", "", "", "12", "13", ""]),
    ("h3+h3+R", "h_3+h_3+R", 2, ["", "", "", "", "12", "34", ""]),
    ("h3C+R", "h_3^C+R", 2, ["", "", "", "", "13-24", "14+23", ""]),
    ("n62+R", "n_{6,2}+R", 2, ["", "", "", "", "12", "14+23", ""]),
    ("n72A", "n_{7,2,A}", 2, ["", "", "", "", "", "12", "14+35"]),
    ("n72B", "n_{7,2,B}", 2, ["", "", "", "", "", "12+34", "15+23"]),
    ("n63+R", "n_{6,3}+R", 3, ["", "", "", "", "12", "13", "23"]),
    ("n73A", "n_{7,3,A}", 3, ["", "", "", "", "12", "23", "24"]),
    ("n73B", "n_{7,3,B}", 3, ["", "", "", "", "12", "23", "34"]),
    ("n73B1", "n_{7,3,B_1}", 3, ["", "", "", "", "12-34", "13+24", "14"]),
    ("n73C", "n_{7,3,C}", 3, ["", "", "", "", "12+34", "23", "24"]),
    ("n73D", "n_{7,3,D}", 3, ["", "", "", "", "12+34", "13", "24"]),
    ("n73D1", "n_{7,3,D_1}", 3, ["", "", "", "", "12-34", "13+24", "14-23"]),
];

/// Parses the compact `12+34-56` notation used by the built-in catalog.
fn compact_form(text: &str) -> Form {
    let mut f = Form::zero(7, 2);
    let mut sign = 1i64;
    let mut digits = String::new();
    let flush = |digits: &mut String, sign: i64, f: &mut Form| {
        if digits.is_empty() {
            return;
        }
        let idx: Vec<usize> = digits.chars().map(|c| c.to_digit(10).unwrap() as usize).collect();
        *f = f.clone() + Form::term(7, &idx, crate::scalar::int(sign)).unwrap();
        digits.clear();
    };
    for ch in text.chars() {
        match ch {
            '+' | '-' => {
                flush(&mut digits, sign, &mut f);
                sign = if ch == '-' { -1 } else { 1 };
            }
            d => digits.push(d),
        }
    }
    flush(&mut digits, sign, &mut f);
    f
}

fn compact_tuple(t: &[&str; 7]) -> String {
    let parts: Vec<String> = t
        .iter()
        .map(|s| {
            if s.is_empty() {
                "0".to_string()
            } else {
                compact_form(s).to_string()
            }
        })
        .collect();
    format!("({})", parts.join(","))
}

/// The real 7-dimensional 2-step nilpotent Lie algebras: 3 with derived
/// dimension one, 6 with two and 7 with three.
pub fn catalog() -> Vec<CatalogEntry> {
    CATALOG
        .iter()
        .map(|(name, display, nd, tuple)| {
            let structure = tuple.iter().map(|s| compact_form(s)).collect();
            let algebra = LieAlgebra::new(structure)
                .expect("catalog shape")
                .with_name(*name);
            CatalogEntry {
                name,
                display,
                tuple: compact_tuple(tuple),
                algebra,
                derived_dim: *nd,
            }
        })
        .collect()
}

/// Looks up a catalog entry by its short name.
pub fn catalog_entry(name: &str) -> Option<CatalogEntry> {
    catalog().into_iter().find(|e| e.name == name)
}

/// Isomorphism class of a 7-dimensional 2-step nilpotent algebra, by
/// fingerprint. Fingerprints are invariants and separate the catalog, so the
/// answer is exact for every valid nonabelian 7-dimensional input.
pub fn identify(alg: &LieAlgebra) -> Option<&'static str> {
    if alg.dim() != 7 || alg.derived_dim() == 0 {
        return None;
    }
    static PRINTS: OnceLock<Vec<(&'static str, Fingerprint)>> = OnceLock::new();
    let prints = PRINTS.get_or_init(|| {
        catalog()
            .into_iter()
            .map(|e| (e.name, e.algebra.fingerprint()))
            .collect()
    });
    let fp = alg.fingerprint();
    prints.iter().find(|(_, p)| *p == fp).map(|(name, _)| *name)
}
