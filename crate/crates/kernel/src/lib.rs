//! Exact-arithmetic kernel: rationals, polynomials, certified algebraic
//! numbers, number fields, rational matrices and their certified spectra,
//! generalized eigenspaces and growth signatures.
//!
//! Every decision made by this crate is exact. Intervals appear only as
//! refinable certificates around exactly-represented algebraic numbers;
//! no comparison is ever settled by floating point.

pub mod algebraic;
pub mod complexroots;
pub mod eigenspace;
pub mod error;
pub mod factor;
pub mod growth;
pub mod matrix;
pub mod numfield;
pub mod poly;
pub mod rational;
pub mod resultant;
pub mod spectrum;

pub use algebraic::RealAlgebraic;
pub use error::KernelError;
pub use matrix::RationalMatrix;
pub use poly::{IntPoly, RatPoly};
pub use rational::{parse_rational, rational_to_string, Rational};
pub use spectrum::{CertifiedSpectrum, EigenvalueEntry, EigenvalueKind};
