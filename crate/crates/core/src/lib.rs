//! Fermi-Dirac integrals `F_{k/2}(η)` of half-integer order, written in
//! terms of Riemann and Hurwitz zeta functions.
//!
//! The closed form in [`fermi`] is built from the special functions in
//! [`special`] and the exponential ratio model in [`model`]. [`oracle`]
//! evaluates the defining integral independently, by quadrature and by the
//! exponential series, for validation.
//!
//! Every numerical routine is generic over [`Real`] (`f32` or `f64`); the
//! aliases below fix the scalar to `f64`.

pub mod error;
pub mod fermi;
pub mod model;
pub mod oracle;
pub mod report;
pub mod scalar;
pub mod special;

pub use error::{Error, Result};
pub use fermi::{eta_zero_exact, fd_closed_form, fd_half, fd_three_halves, integrand, Method};
pub use model::{Maximizer, Order};
pub use oracle::{fd_quadrature, fd_series_nondegenerate};
pub use scalar::Real;

pub type EvaluationResult = fermi::EvaluationResult<f64>;
pub type ModelCoefficients = model::ModelCoefficients<f64>;
pub type QuadratureConfig = oracle::QuadratureConfig<f64>;
pub type ZetaArgument = special::ZetaArgument<f64>;

pub type EvaluationResult32 = fermi::EvaluationResult<f32>;
pub type ModelCoefficients32 = model::ModelCoefficients<f32>;
pub type QuadratureConfig32 = oracle::QuadratureConfig<f32>;
