//! Closed-form Fermi-Dirac integrals of half-integer order.
//!
//! Writing the shifted integrand as the model `a − b·e^{−cξ}` times the
//! η = 0 integrand gives
//!
//! ```text
//! F_{k/2}(η) = Γ(1+k/2)·[ e^η·(1 − 2^{−k/2})·ζ(1+k/2)
//!              − b·( 2^{−k/2}·ζ(1+k/2, (c+1)/2) − ζ(1+k/2, c+1) ) ]
//! ```
//!
//! with `b = (e^η − 1)/(e^{−η} + 1)`. The approximation is accurate for
//! η ≤ 5 and degrades above.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::model::{self, ModelCoefficients, Order};
use crate::scalar::Real;
use crate::special::{alternating_hurwitz, gamma_half_integer, riemann_zeta};

/// η above which results carry a validity warning.
pub const VALIDITY_LIMIT: f64 = 5.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    Quadrature,
    Series,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::ClosedForm => "closed",
            Method::Quadrature => "quadrature",
            Method::Series => "series",
        })
    }
}

/// A value of `F_{k/2}(η)` and how it was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvaluationResult<T> {
    pub value: T,
    pub method: Method,
    /// Set when η exceeds [`VALIDITY_LIMIT`].
    pub validity_warning: bool,
    /// Model constants; only present for [`Method::ClosedForm`] with η ≠ 0.
    pub coefficients: Option<ModelCoefficients<T>>,
}

impl<T: Real> EvaluationResult<T> {
    pub(crate) fn new(value: T, method: Method, eta: T) -> Self {
        Self {
            value,
            method,
            validity_warning: eta > T::lit(VALIDITY_LIMIT),
            coefficients: None,
        }
    }
}

/// Integrand `ξ^{k/2} / (1 + e^{ξ−η})`, overflow-safe for large ξ.
pub fn integrand<T: Real>(k: Order, xi: T, eta: T) -> T {
    let power = xi.powf(k.half());
    let x = xi - eta;
    if x > T::zero() {
        let decay = (-x).exp();
        power * decay / (T::one() + decay)
    } else {
        power / (T::one() + x.exp())
    }
}

/// Exact value at η = 0: `Γ(1+k/2)·(1 − 2^{−k/2})·ζ(1+k/2)`.
pub fn eta_zero_exact<T: Real>(k: Order) -> Result<T> {
    let gamma: T = gamma_half_integer(k.get() as i64)?;
    Ok(gamma * dirichlet_eta(k)?)
}

/// `(1 − 2^{−k/2})·ζ(1+k/2)`.
fn dirichlet_eta<T: Real>(k: Order) -> Result<T> {
    let zeta = riemann_zeta(k.zeta_exponent::<T>())?;
    Ok((T::one() - T::lit(2.0).powf(-k.half::<T>())) * zeta)
}

/// Closed-form approximation of `F_{k/2}(η)`.
///
/// For `|η| < 1e-12` the amplitude `b` vanishes and the result is exactly
/// [`eta_zero_exact`]. Values for η > 5 are returned with
/// `validity_warning` set.
pub fn fd_closed_form<T: Real>(k: Order, eta: T) -> Result<EvaluationResult<T>> {
    let (a, b) = model::boundary_coefficients(eta)?;
    let gamma: T = gamma_half_integer(k.get() as i64)?;
    let leading = a * dirichlet_eta::<T>(k)?;

    let mut result = if eta.abs() < T::lit(model::DEGENERATE_ETA) {
        EvaluationResult::new(gamma * leading, Method::ClosedForm, eta)
    } else {
        let coeffs = model::model_coefficients(k, eta)?;
        let shift = coeffs.c + T::one();
        let alternating = alternating_hurwitz(k.zeta_exponent::<T>(), shift)?;
        let mut r = EvaluationResult::new(gamma * (leading - b * alternating), Method::ClosedForm, eta);
        r.coefficients = Some(coeffs);
        r
    };
    result.validity_warning = eta > T::lit(VALIDITY_LIMIT);
    Ok(result)
}

/// `F_{1/2}(η)` by the closed form.
pub fn fd_half<T: Real>(eta: T) -> Result<EvaluationResult<T>> {
    fd_closed_form(Order::new(1)?, eta)
}

/// `F_{3/2}(η)` by the closed form.
pub fn fd_three_halves<T: Real>(eta: T) -> Result<EvaluationResult<T>> {
    fd_closed_form(Order::new(3)?, eta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::hurwitz_zeta;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn k(n: i64) -> Order {
        Order::new(n).unwrap()
    }

    #[test]
    fn integrand_examples() {
        assert_eq!(integrand(k(1), 0.0, 3.0), 0.0);
        assert_eq!(integrand(k(1), 0.0, -3.0), 0.0);
        assert_relative_eq!(
            integrand(k(1), 1.0, 0.0),
            1.0 / (1.0 + 1f64.exp()),
            max_relative = 1e-15
        );
        assert_eq!(integrand(k(3), 4.0, 4.0), 4.0);
        assert!(integrand(k(9), 2000.0f64, 0.0) >= 0.0);
    }

    #[test]
    fn eta_zero_values() {
        assert_relative_eq!(
            eta_zero_exact::<f64>(k(2)).unwrap(),
            PI * PI / 12.0,
            max_relative = 1e-13
        );
        let g = 3.0 * PI.sqrt() / 4.0;
        let expected = g * (1.0 - 2f64.powf(-1.5)) * 1.341_487_257_250_917;
        assert_relative_eq!(
            eta_zero_exact::<f64>(k(3)).unwrap(),
            expected,
            max_relative = 1e-13
        );
        assert!((eta_zero_exact::<f64>(k(3)).unwrap() - 1.1528).abs() < 1e-4);
        assert!((eta_zero_exact::<f64>(k(1)).unwrap() - 0.678094).abs() < 5e-7);
    }

    #[test]
    fn degenerate_branch_is_exact() {
        for n in 1..=9 {
            let r = fd_closed_form(k(n), 0.0f64).unwrap();
            assert_eq!(r.value, eta_zero_exact::<f64>(k(n)).unwrap());
            assert!(r.coefficients.is_none());
        }
    }

    #[test]
    fn table_rows() {
        let cases: [(f64, f64); 4] = [(0.0, 0.678094), (-4.0, 0.0161393), (5.0, 8.99919), (2.0, 2.30003)];
        for (eta, expected) in cases {
            let v = fd_half(eta).unwrap().value;
            assert!((v - expected).abs() / expected < 1e-5, "eta {eta}: {v}");
        }
    }

    #[test]
    fn validity_flag() {
        assert!(!fd_half(5.0).unwrap().validity_warning);
        assert!(fd_half(5.000001).unwrap().validity_warning);
        assert!(fd_half(6.0f64).unwrap().value.is_finite());
    }

    /// The k = 1 closed form written out term by term.
    fn half_order_assembly(eta: f64) -> f64 {
        let coeffs = model::model_coefficients(k(1), eta).unwrap();
        let (a, b) = model::boundary_coefficients(eta).unwrap();
        let gamma: f64 = gamma_half_integer(1).unwrap();
        let zeta = riemann_zeta(1.0 + 0.5).unwrap();
        let q = coeffs.c + 1.0;
        let bracket =
            2f64.powf(1.0 - 1.5) * hurwitz_zeta(1.5, q / 2.0).unwrap() - hurwitz_zeta(1.5, q).unwrap();
        gamma * (a * ((1.0 - 2f64.powf(-0.5)) * zeta) - b * bracket)
    }

    fn three_halves_assembly(eta: f64) -> f64 {
        let coeffs = model::model_coefficients(k(3), eta).unwrap();
        let (a, b) = model::boundary_coefficients(eta).unwrap();
        let gamma: f64 = gamma_half_integer(3).unwrap();
        let zeta = riemann_zeta(1.0 + 1.5).unwrap();
        let q = coeffs.c + 1.0;
        let bracket =
            2f64.powf(1.0 - 2.5) * hurwitz_zeta(2.5, q / 2.0).unwrap() - hurwitz_zeta(2.5, q).unwrap();
        gamma * (a * ((1.0 - 2f64.powf(-1.5)) * zeta) - b * bracket)
    }

    #[test]
    fn generic_order_matches_dedicated_assemblies() {
        for eta in [-6.0f64, -2.5, -0.1, 0.1, 1.0, 3.3, 5.0] {
            assert_eq!(
                fd_half(eta).unwrap().value.to_bits(),
                half_order_assembly(eta).to_bits()
            );
            assert_eq!(
                fd_three_halves(eta).unwrap().value.to_bits(),
                three_halves_assembly(eta).to_bits()
            );
        }
    }

    #[test]
    fn continuity_at_zero() {
        let f0 = fd_half(0.0f64).unwrap().value;
        for eta in [1e-6, -1e-6, 1e-11, -1e-11] {
            assert!((fd_half(eta).unwrap().value - f0).abs() <= 1e-5);
        }
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(fd_half(800.0).is_err());
        assert!(fd_half(f64::NAN).is_err());
    }

    #[test]
    fn single_precision() {
        let v: f32 = fd_half(-1.0f32).unwrap().value;
        assert!((v - 0.292405).abs() < 1e-4);
    }
}
