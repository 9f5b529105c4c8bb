//! Exponential model of the integrand ratio.
//!
//! The ratio between the η-shifted integrand and the η = 0 integrand,
//! `(1 + e^ξ) / (1 + e^{ξ−η})`, rises from `2 / (1 + e^{−η})` at ξ = 0 to
//! `e^η` as ξ → ∞. It is modelled as `a − b·e^{−cξ}`: `a` and `b` come from
//! the two ends, and `c` from requiring the model to be exact at the maximum
//! `ξ_m` of the integrand `ξ^{k/2} / (1 + e^{ξ−η})`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Largest supported order `k`.
pub const MAX_ORDER: u32 = 9;

/// Below this |η| the amplitude `b` is treated as exactly zero.
pub const DEGENERATE_ETA: f64 = 1e-12;

/// Above this η, `e^η` is too close to overflow to be used.
pub const MAX_ETA: f64 = 700.0;

const INITIAL_BRACKET_PAD: f64 = 3.0;
const MAX_BRACKET_EXPANSIONS: usize = 10;
const MAX_NEWTON_ITERATIONS: usize = 200;

/// The numerator `k` of the half-integer order `k/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "u32")]
pub struct Order(u32);

impl Order {
    pub fn new(k: i64) -> Result<Self> {
        if (1..=MAX_ORDER as i64).contains(&k) {
            Ok(Order(k as u32))
        } else {
            Err(Error::domain(format!(
                "order k must lie in 1..={MAX_ORDER}, got {k}"
            )))
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// `k` as a scalar.
    pub fn value<T: Real>(self) -> T {
        T::count(self.0 as usize)
    }

    /// `k / 2`.
    pub fn half<T: Real>(self) -> T {
        self.value::<T>() * T::lit(0.5)
    }

    /// The zeta exponent `1 + k/2`.
    pub fn zeta_exponent<T: Real>(self) -> T {
        T::one() + self.half::<T>()
    }
}

impl TryFrom<i64> for Order {
    type Error = Error;

    fn try_from(k: i64) -> Result<Self> {
        Order::new(k)
    }
}

impl From<Order> for u32 {
    fn from(k: Order) -> u32 {
        k.0
    }
}

impl std::fmt::Display for Order {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Fitted constants of `a − b·e^{−cξ}` together with the anchor `ξ_m`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelCoefficients<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub xi_m: T,
}

impl<T: Real> ModelCoefficients<T> {
    /// Model value `a − b·e^{−cξ}`.
    pub fn eval(&self, xi: T) -> T {
        self.a - self.b * (-self.c * xi).exp()
    }
}

/// The maximizer `ξ_m`, stored as `k/2 + offset`.
///
/// For strongly negative η the offset is many orders of magnitude smaller
/// than `k/2`, so it is kept separately to retain its relative precision.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Maximizer<T> {
    pub half_order: T,
    pub offset: T,
}

impl<T: Real> Maximizer<T> {
    pub fn xi(&self) -> T {
        self.half_order + self.offset
    }
}

/// `ln(1 + e^x)` without overflow.
fn softplus<T: Real>(x: T) -> T {
    if x > T::zero() {
        x + (-x).exp().ln_1p()
    } else {
        x.exp().ln_1p()
    }
}

/// Ratio `(1 + e^ξ) / (1 + e^{ξ−η})` of the shifted to the unshifted
/// integrand.
pub fn ratio<T: Real>(xi: T, eta: T) -> T {
    if xi >= eta {
        eta.exp() * (T::one() + (-xi).exp()) / (T::one() + (eta - xi).exp())
    } else {
        (T::one() + xi.exp()) / (T::one() + (xi - eta).exp())
    }
}

/// End-point coefficients `a = e^η` and `b = (e^η − 1)/(e^{−η} + 1)`.
pub fn boundary_coefficients<T: Real>(eta: T) -> Result<(T, T)> {
    if !eta.is_finite() {
        return Err(Error::domain(format!("eta must be finite, got {eta}")));
    }
    if eta > T::lit(MAX_ETA) {
        return Err(Error::domain(format!(
            "eta = {eta} exceeds the overflow guard {MAX_ETA}"
        )));
    }
    let a = eta.exp();
    let b = eta.exp_m1() / ((-eta).exp() + T::one());
    Ok((a, b))
}

/// Residual `k·e^η + e^ξ(k − 2ξ)` of the maximizer condition, evaluated at
/// `ξ = k/2 + offset`.
pub fn maximizer_residual<T: Real>(k: Order, eta: T, m: &Maximizer<T>) -> T {
    let kv = k.value::<T>();
    kv * eta.exp() - T::lit(2.0) * m.offset * (m.half_order + m.offset).exp()
}

/// Solves `k·e^η + e^ξ(k − 2ξ) = 0` for its unique root beyond `k/2`.
///
/// With `t = ξ − k/2` the condition reads `t·e^t = (k/2)·e^{η − k/2}`, whose
/// left side is increasing and convex on `t ≥ 0`. The root is found by a
/// Newton iteration safeguarded by bisection on a sign-changing bracket.
pub fn solve_maximizer<T: Real>(k: Order, eta: T) -> Result<Maximizer<T>> {
    if !eta.is_finite() {
        return Err(Error::domain(format!("eta must be finite, got {eta}")));
    }
    let half = k.half::<T>();
    let target = half * (eta - half).exp();
    if !target.is_finite() {
        return Err(Error::domain(format!(
            "eta = {eta} overflows the maximizer condition"
        )));
    }
    let h = |t: T| t * t.exp() - target;
    let dh = |t: T| (T::one() + t) * t.exp();

    // h(0) = -target < 0.
    let mut lo = T::zero();
    let mut hi = eta.max(T::zero()) + T::lit(INITIAL_BRACKET_PAD);
    let mut expansions = 0;
    while h(hi) <= T::zero() {
        if expansions == MAX_BRACKET_EXPANSIONS {
            return Err(Error::NoConvergence {
                routine: "maximizer bracket",
                detail: format!("no sign change below xi = {} at eta = {eta}", half + hi),
            });
        }
        lo = hi;
        hi = hi * T::lit(2.0);
        expansions += 1;
    }

    let eps = T::epsilon();
    // Start on the convex side, where plain Newton is monotone.
    let mut t = hi.min(target.max(T::min_positive_value()));
    if h(t) < T::zero() {
        t = hi;
    }
    for _ in 0..MAX_NEWTON_ITERATIONS {
        let value = h(t);
        if value == T::zero() {
            return Ok(Maximizer {
                half_order: half,
                offset: t,
            });
        }
        if value < T::zero() {
            lo = lo.max(t);
        } else {
            hi = hi.min(t);
        }
        let mut next = t - value / dh(t);
        if !(next > lo && next < hi) {
            next = lo + (hi - lo) * T::lit(0.5);
        }
        let step = (next - t).abs();
        t = next;
        if step <= T::lit(4.0) * eps * t || hi - lo <= T::lit(2.0) * eps * hi {
            return Ok(Maximizer {
                half_order: half,
                offset: t,
            });
        }
    }
    Err(Error::NoConvergence {
        routine: "maximizer Newton iteration",
        detail: format!("k = {k}, eta = {eta}"),
    })
}

/// `ξ_m` as a plain scalar; see [`solve_maximizer`].
pub fn solve_xi_m<T: Real>(k: Order, eta: T) -> Result<T> {
    solve_maximizer(k, eta).map(|m| m.xi())
}

fn check_degenerate<T: Real>(eta: T) -> Result<()> {
    if eta.abs() < T::lit(DEGENERATE_ETA) {
        return Err(Error::DegenerateEta {
            eta: eta.to_f64().unwrap_or(0.0),
        });
    }
    Ok(())
}

fn interpolation_tolerance<T: Real>() -> T {
    T::lit(4096.0) * T::epsilon()
}

fn decay_rate<T: Real>(eta: T, m: &Maximizer<T>) -> Result<T> {
    // With ratio(ξ_m, η) substituted, the logarithm argument
    // (e^{−η}+1)(e^η − ratio)/(e^η − 1) collapses to (1 + e^{−η})/(1 + e^{ξ_m−η}).
    let xi = m.xi();
    let log_arg = softplus(-eta) - softplus(xi - eta);
    let c = -log_arg / xi;
    let breakdown = |reason: String| Error::ModelBreakdown {
        eta: eta.to_f64().unwrap_or(f64::NAN),
        reason,
    };
    if !c.is_finite() {
        return Err(breakdown(format!("decay constant is not finite ({c})")));
    }
    if c <= -T::one() {
        return Err(breakdown(format!("decay constant c = {c} <= -1")));
    }
    Ok(c)
}

/// Decay constant `c` fixed by exact interpolation at `ξ_m`.
pub fn coefficient_c<T: Real>(k: Order, eta: T) -> Result<T> {
    model_coefficients(k, eta).map(|coeffs| coeffs.c)
}

/// All four model constants for order `k` and degeneracy `eta`.
///
/// Fails with [`Error::DegenerateEta`] when `|eta| < 1e-12`, where `b = 0`
/// and `c` is indeterminate.
pub fn model_coefficients<T: Real>(k: Order, eta: T) -> Result<ModelCoefficients<T>> {
    let (a, b) = boundary_coefficients(eta)?;
    check_degenerate(eta)?;
    let m = solve_maximizer(k, eta)?;
    let c = decay_rate(eta, &m)?;
    let coeffs = ModelCoefficients {
        a,
        b,
        c,
        xi_m: m.xi(),
    };

    let expected = ratio(coeffs.xi_m, eta);
    let got = coeffs.eval(coeffs.xi_m);
    if (got - expected).abs() > interpolation_tolerance::<T>() * expected.abs() {
        return Err(Error::ModelBreakdown {
            eta: eta.to_f64().unwrap_or(f64::NAN),
            reason: format!("model misses the ratio at xi_m: {got} vs {expected}"),
        });
    }
    Ok(coeffs)
}

/// Model value `a − b·e^{−cξ}`.
pub fn model_f<T: Real>(xi: T, coeffs: &ModelCoefficients<T>) -> T {
    coeffs.eval(xi)
}

/// Maximizers of the exact integrand and of the modelled integrand
/// `model(ξ)·ξ^{k/2}/(1 + e^ξ)`, for comparing the two.
///
/// Diagnostic only: the two are close but not equal, and no threshold is
/// attached to their difference.
pub fn maximizer_comparison<T: Real>(k: Order, eta: T) -> Result<(T, T)> {
    let coeffs = model_coefficients(k, eta)?;
    let half = k.half::<T>();
    let modelled = |xi: T| coeffs.eval(xi) * xi.powf(half) / (T::one() + xi.exp());

    // Golden-section search; the modelled integrand is unimodal on this range.
    let inv_phi = T::lit(0.618_033_988_749_894_8);
    let mut lo = T::zero();
    let mut hi = coeffs.xi_m * T::lit(3.0) + T::one();
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (modelled(x1), modelled(x2));
    while hi - lo > T::lit(1e-10).max(T::epsilon().sqrt()) * (T::one() + hi) {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = modelled(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = modelled(x1);
        }
    }
    Ok((coeffs.xi_m, (lo + hi) * T::lit(0.5)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn k(n: i64) -> Order {
        Order::new(n).unwrap()
    }

    /// Bisection on ξ directly, independent of the offset formulation.
    fn bisect_xi(k: f64, eta: f64, mut lo: f64, mut hi: f64) -> f64 {
        let g = |x: f64| k * eta.exp() + x.exp() * (k - 2.0 * x);
        assert!(g(lo) > 0.0 && g(hi) < 0.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if g(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn order_range() {
        assert!(Order::new(0).is_err());
        assert!(Order::new(10).is_err());
        assert_eq!(Order::new(9).unwrap().get(), 9);
        assert_eq!(k(3).half::<f64>(), 1.5);
        assert_eq!(k(3).zeta_exponent::<f64>(), 2.5);
    }

    #[test]
    fn ratio_examples() {
        for eta in [-3.0f64, -0.5, 0.7, 4.0] {
            assert_relative_eq!(ratio(0.0, eta), 2.0 / (1.0 + (-eta).exp()), max_relative = 1e-15);
        }
        assert_eq!(ratio(0.0, 0.0), 1.0);
        assert_relative_eq!(ratio(50.0, 2.0), 2f64.exp(), max_relative = 1e-12);
        // Direct form at a point where it does not overflow.
        let (xi, eta) = (1.3f64, 2.2f64);
        assert_relative_eq!(
            ratio(xi, eta),
            (1.0 + xi.exp()) / (1.0 + (xi - eta).exp()),
            max_relative = 1e-15
        );
        assert!(ratio(1000.0f64, 3.0).is_finite());
    }

    #[test]
    fn boundary_examples() {
        assert_eq!(boundary_coefficients(0.0).unwrap(), (1.0, 0.0));
        let (a, b) = boundary_coefficients(1.0).unwrap();
        assert_relative_eq!(a, std::f64::consts::E, max_relative = 1e-15);
        assert_relative_eq!(b, 1.256_164_671_199_035_5, max_relative = 1e-14);
        let (a, b) = boundary_coefficients(-2.0).unwrap();
        assert_relative_eq!(a, 0.135_335_283_236_612_7, max_relative = 1e-15);
        assert_relative_eq!(b, -0.103_070_560_807_622_4, max_relative = 1e-14);
        assert!(boundary_coefficients(701.0).is_err());
        assert!(boundary_coefficients(f64::INFINITY).is_err());
    }

    #[test]
    fn boundary_value_at_origin() {
        for eta in [-6.0f64, -1.0, 0.3, 5.0] {
            let (a, b) = boundary_coefficients(eta).unwrap();
            // a − b cancels by a factor of about e^η / 2 for positive η.
            assert_relative_eq!(a - b, 2.0 / (1.0 + (-eta).exp()), max_relative = 1e-12);
            assert_eq!(b.signum(), eta.signum());
        }
    }

    #[test]
    fn maximizer_against_bisection() {
        let xi = solve_xi_m(k(1), 0.0).unwrap();
        assert_relative_eq!(xi, bisect_xi(1.0, 0.0, 0.5, 2.0), max_relative = 1e-14);
        assert!((xi - 0.739).abs() < 5e-4);
        let xi3 = solve_xi_m(k(3), 0.0).unwrap();
        assert_relative_eq!(xi3, bisect_xi(3.0, 0.0, 1.5, 3.0), max_relative = 1e-14);
        assert!((xi3 - 1.76).abs() < 5e-3);
    }

    #[test]
    fn maximizer_tends_to_half_order() {
        let m = solve_maximizer::<f64>(k(1), -40.0).unwrap();
        assert!(m.offset > 0.0 && m.offset < 1e-17);
        let r = maximizer_residual(k(1), -40.0, &m);
        assert!(r.abs() <= 1e-12 * (-40f64).exp());
        // Large η stays well behaved.
        let m = solve_maximizer::<f64>(k(5), 300.0).unwrap();
        assert!(maximizer_residual(k(5), 300.0, &m).abs() <= 1e-12 * 5.0 * 300f64.exp());
    }

    #[test]
    fn degenerate_eta_rejected() {
        assert!(matches!(
            coefficient_c::<f64>(k(1), 0.0),
            Err(Error::DegenerateEta { .. })
        ));
        assert!(matches!(
            coefficient_c::<f64>(k(1), 1e-13),
            Err(Error::DegenerateEta { .. })
        ));
        assert!(coefficient_c::<f64>(k(1), 1e-11).is_ok());
    }

    /// The decay constant straight from its defining logarithm, for moderate η.
    fn c_from_definition(k: Order, eta: f64) -> f64 {
        let xi = solve_xi_m(k, eta).unwrap();
        let arg = ((-eta).exp() + 1.0) * (eta.exp() - ratio(xi, eta)) / (eta.exp() - 1.0);
        -arg.ln() / xi
    }

    #[test]
    fn c_matches_defining_formula() {
        for eta in [-3.0, -1.0, -0.2, 0.4, 1.0, 2.5, 5.0] {
            for n in [1, 3, 7] {
                let c = coefficient_c(k(n), eta).unwrap();
                assert_relative_eq!(c, c_from_definition(k(n), eta), max_relative = 1e-10);
            }
        }
    }

    #[test]
    fn c_examples() {
        let coeffs = model_coefficients(k(1), 1.0).unwrap();
        assert!(coeffs.c > -1.0);
        assert_relative_eq!(
            coeffs.eval(coeffs.xi_m),
            ratio(coeffs.xi_m, 1.0),
            max_relative = 1e-12
        );
        let xi = solve_xi_m(k(1), -3.0).unwrap();
        let arg = ((3f64).exp() + 1.0) * ((-3f64).exp() - ratio(xi, -3.0)) / ((-3f64).exp() - 1.0);
        assert!(arg > 0.0 && arg.is_finite());
        assert!(coefficient_c(k(1), -3.0f64).unwrap().is_finite());
    }

    #[test]
    fn model_anchors() {
        let coeffs = model_coefficients(k(1), 2.0).unwrap();
        assert_relative_eq!(
            model_f(0.0, &coeffs),
            2.0 / (1.0 + (-2f64).exp()),
            max_relative = 1e-14
        );
        assert_relative_eq!(model_f(200.0, &coeffs), 2f64.exp(), max_relative = 1e-14);
    }

    #[test]
    fn maximizer_comparison_is_close() {
        let (exact, modelled) = maximizer_comparison(k(1), -1.0f64).unwrap();
        assert!((exact - modelled).abs() < 0.2, "{exact} vs {modelled}");
    }

    #[test]
    fn order_serde() {
        let k: Order = serde_json::from_str("3").unwrap();
        assert_eq!(k.get(), 3);
        assert!(serde_json::from_str::<Order>("12").is_err());
    }
}
