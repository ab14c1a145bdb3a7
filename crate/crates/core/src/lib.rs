//! Sharp worst-case errors of Fourier partial sums on Weyl–Nagy and Poisson
//! classes, their asymptotic main terms, and the inequalities behind the
//! remainder bounds.
//!
//! Everything is generic over [`Real`] (`f32` or `f64`); the `F64` aliases
//! below are what the command-line harness uses.

pub mod asymptotics;
pub mod boundslab;
pub mod error;
pub mod exponent;
pub mod kernels;
pub mod quad;
pub mod real;
pub mod scaled;
pub mod sharp;
pub mod specfun;

pub use error::{Error, Result};
pub use exponent::Exponent;
pub use real::Real;
pub use scaled::ScaledValue;

pub type ScaledF64 = ScaledValue<f64>;
pub type ScaledF32 = ScaledValue<f32>;
pub type ExponentF64 = Exponent<f64>;
pub type KernelSpecF64 = kernels::KernelSpec<f64>;
pub type KernelSpecF32 = kernels::KernelSpec<f32>;
