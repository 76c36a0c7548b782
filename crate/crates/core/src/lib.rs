//! Exact exterior calculus for invariant heterotic G₂-systems on
//! 7-dimensional 2-step nilpotent Lie algebras.
//!
//! All arithmetic is exact. The lower layers ([`exterior`], [`nilalg`],
//! [`g2`]) are generic over a [`Scalar`] field and default to [`Rational`];
//! the layers that reason about integrality and enumerate integer data are
//! written for [`Rational`] only.

pub mod bundle;
pub mod cli;
pub mod exterior;
pub mod g2;
pub mod hetsys;
pub mod linalg;
pub mod nilalg;
pub mod scalar;
pub mod search;
pub mod su2red;
pub mod su3red;

pub use exterior::{Blade, ExteriorError, Form};
pub use scalar::{int, rat, Rational, Scalar};
