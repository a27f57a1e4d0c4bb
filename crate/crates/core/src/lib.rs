//! Exact homological algebra over finite-dimensional standard graded algebras.

pub mod algebra;
pub mod complex;
pub mod counterexample;
pub mod duality;
pub mod error;
pub mod expr;
pub mod free;
pub mod groebner;
pub mod hilbert;
pub mod linalg;
pub mod resolution;
pub mod scalar;
pub mod series;
#[cfg(test)]
mod testing;

pub use algebra::{AlgebraElement, AlgebraSpec, GradedAlgebra};
pub use error::{Error, Result};
pub use expr::PolyExpr;
pub use hilbert::HilbertFunction;
pub use linalg::KMatrix;
pub use scalar::Scalar;
pub use complex::Complex;
pub use free::{FreeModule, ModuleMap};
pub use resolution::{GradedBettiTable, Presentation, Resolution};
