//! Exact computational commutative algebra for weighted graded rings.
//!
//! The crate is `no_std` (it needs `alloc`). It provides sparse polynomials
//! over the rationals and prime fields, reduced Groebner bases, Hilbert
//! series and graded-component analysis of quotient rings, Rees algebra and
//! associated graded presentations, Newton polygon irreducibility
//! certificates, and the checks that combine these into a verdict on the
//! existence of Ulrich modules over the localization at the irrelevant ideal.
#![no_std]

extern crate alloc;

pub mod checker;
pub mod error;
pub mod field;
pub mod graded;
pub mod groebner;
pub mod intpoly;
pub mod poly;
pub mod polytope;
pub mod rees;

pub use error::{AlgebraError, BudgetKind, ParseError};
pub use field::{CoefficientField, Scalar};
pub use graded::{HilbertSeries, MonomialIdeal, RingPresentation};
pub use groebner::{Budget, GroebnerBasis, IdealPresentation};
pub use poly::{parse_polynomial, Monomial, MonomialOrder, PolyRing, Polynomial, VariableTable};
pub use intpoly::IntPoly;
