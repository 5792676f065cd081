//! Exact rational integration over finite measure spaces.
//!
//! Two integrals are implemented side by side: the measure integral, built
//! from simple functions, monotone dyadic approximation and the split
//! `f = f⁺ − f⁻`; and the Bochner integral, built from absolutely summable
//! series of simple functions. [`bochner::series_from_mi`] and
//! [`bochner::mi_from_series`] turn each representation into the other, and
//! [`bochner::theorem_check`] compares the two values with a certified gap.
//!
//! Every value is an exact [`rational::Rational`].

pub mod bochner;
pub mod error;
pub mod harness;
pub mod measure_space;
pub mod mi_integrator;
pub mod rational;
pub mod simple_function;

pub use error::{Error, Result};
