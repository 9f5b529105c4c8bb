//! Reference evaluations of the defining integral, independent of the zeta
//! closed form.
//!
//! Two routes are provided: adaptive Gauss–Legendre quadrature, valid for
//! any η up to 60, and the alternating exponential series, valid for η ≤ 0.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fermi::{integrand, EvaluationResult, Method};
use crate::model::Order;
use crate::scalar::Real;
use crate::special::gamma_half_integer;

/// Upper η accepted by the quadrature.
pub const QUADRATURE_MAX_ETA: f64 = 60.0;

const GAUSS_POINTS: usize = 10;
const MAX_TAIL_DOUBLINGS: usize = 8;

/// Alternating-series terms summed directly before switching to acceleration.
const DIRECT_SERIES_LIMIT: usize = 400;
/// Terms used by the accelerated alternating sum.
const ACCELERATED_TERMS: usize = 36;
const SERIES_REL_TOL: f64 = 1e-15;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig<T> {
    pub abs_tol: T,
    pub rel_tol: T,
    pub max_subdivisions: usize,
    /// Distance past `max(η, 0)` covered by panels before the analytic tail
    /// bound takes over. Grown automatically if the bound exceeds `abs_tol`.
    pub tail_cutoff_margin: T,
}

impl<T: Real> Default for QuadratureConfig<T> {
    fn default() -> Self {
        Self {
            abs_tol: T::lit(1e-14),
            rel_tol: T::lit(1e-12),
            max_subdivisions: 2000,
            tail_cutoff_margin: T::lit(40.0),
        }
    }
}

impl<T: Real> QuadratureConfig<T> {
    pub fn with_rel_tol(mut self, rel_tol: T) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > T::zero() && self.rel_tol > T::zero()) {
            return Err(Error::domain("quadrature tolerances must be positive"));
        }
        if self.max_subdivisions < 1 {
            return Err(Error::domain("max_subdivisions must be at least 1"));
        }
        if self.tail_cutoff_margin.is_nan() || self.tail_cutoff_margin < T::lit(30.0) {
            return Err(Error::domain("tail_cutoff_margin must be at least 30"));
        }
        Ok(())
    }
}

/// Gauss–Legendre nodes and weights on [-1, 1], by Newton iteration on the
/// Legendre polynomial.
fn gauss_legendre<T: Real>(n: usize) -> Vec<(T, T)> {
    let mut rule = Vec::with_capacity(n);
    let nf = T::count(n);
    for i in 0..n {
        let mut x = (T::PI() * (T::count(i) + T::lit(0.75)) / (nf + T::lit(0.5))).cos();
        let mut dp = T::one();
        for _ in 0..100 {
            let (mut p0, mut p1) = (T::one(), x);
            for j in 2..=n {
                let jf = T::count(j);
                let p2 = ((T::lit(2.0) * jf - T::one()) * x * p1 - (jf - T::one()) * p0) / jf;
                p0 = p1;
                p1 = p2;
            }
            dp = nf * (x * p1 - p0) / (x * x - T::one());
            let dx = p1 / dp;
            x = x - dx;
            if dx.abs() <= T::epsilon() {
                break;
            }
        }
        let w = T::lit(2.0) / ((T::one() - x * x) * dp * dp);
        rule.push((x, w));
    }
    rule
}

struct Panel<T> {
    lo: T,
    hi: T,
    estimate: T,
    error: T,
}

struct Integrator<T, F> {
    rule: Vec<(T, T)>,
    f: F,
}

impl<T: Real, F: Fn(T) -> T> Integrator<T, F> {
    fn gauss(&self, lo: T, hi: T) -> T {
        let mid = (lo + hi) * T::lit(0.5);
        let half = (hi - lo) * T::lit(0.5);
        let sum = self
            .rule
            .iter()
            .fold(T::zero(), |acc, &(x, w)| acc + w * (self.f)(mid + half * x));
        sum * half
    }

    /// Single-panel estimate: the two-half Gauss sum, with the difference
    /// from the one-panel sum as its error.
    fn panel(&self, lo: T, hi: T) -> Panel<T> {
        let mid = (lo + hi) * T::lit(0.5);
        let coarse = self.gauss(lo, hi);
        let fine = self.gauss(lo, mid) + self.gauss(mid, hi);
        Panel {
            lo,
            hi,
            estimate: fine,
            error: (fine - coarse).abs(),
        }
    }
}

/// Upper bound for ∫_T^∞ ξ^{k/2}·e^{η−ξ} dξ, valid for T > k/2.
fn tail_bound<T: Real>(k: Order, eta: T, cutoff: T) -> T {
    let p = k.half::<T>();
    if cutoff <= p {
        return T::infinity();
    }
    (eta - cutoff + p * cutoff.ln()).exp() * cutoff / (cutoff - p)
}

/// `F_{k/2}(η)` by adaptive quadrature of the defining integral.
pub fn fd_quadrature<T: Real>(k: Order, eta: T, config: &QuadratureConfig<T>) -> Result<EvaluationResult<T>> {
    config.validate()?;
    if !eta.is_finite() || eta > T::lit(QUADRATURE_MAX_ETA) {
        return Err(Error::domain(format!(
            "quadrature needs finite eta <= {QUADRATURE_MAX_ETA}, got {eta}"
        )));
    }

    let start = eta.max(T::zero());
    let mut margin = config.tail_cutoff_margin;
    let mut doublings = 0;
    while tail_bound(k, eta, start + margin) > config.abs_tol {
        if doublings == MAX_TAIL_DOUBLINGS {
            return Err(Error::NoConvergence {
                routine: "quadrature tail cutoff",
                detail: format!("tail bound above abs_tol at cutoff {}", start + margin),
            });
        }
        margin = margin * T::lit(2.0);
        doublings += 1;
    }
    let cutoff = start + margin;

    let integrator = Integrator {
        rule: gauss_legendre(GAUSS_POINTS),
        f: |xi: T| integrand(k, xi, eta),
    };

    // The first panel is short so the ξ^{k/2} behaviour at the origin is
    // resolved by bisection toward zero.
    let mut breaks = vec![T::zero(), T::one()];
    if start + T::one() > T::one() {
        breaks.push(start + T::one());
    }
    breaks.push(cutoff);
    let mut panels: Vec<Panel<T>> = breaks.windows(2).map(|w| integrator.panel(w[0], w[1])).collect();

    let mut subdivisions = 0;
    loop {
        let total = panels.iter().fold(T::zero(), |acc, p| acc + p.estimate);
        let error = panels.iter().fold(T::zero(), |acc, p| acc + p.error);
        if error <= config.abs_tol.max(config.rel_tol * total.abs()) {
            return Ok(EvaluationResult::new(total, Method::Quadrature, eta));
        }
        if subdivisions >= config.max_subdivisions {
            return Err(Error::NoConvergence {
                routine: "adaptive quadrature",
                detail: format!("error estimate {error} after {subdivisions} subdivisions"),
            });
        }
        let worst = panels
            .iter()
            .enumerate()
            .max_by(|(_, a), (_, b)| a.error.partial_cmp(&b.error).unwrap_or(std::cmp::Ordering::Equal))
            .map(|(i, _)| i)
            .expect("at least one panel");
        let p = panels.swap_remove(worst);
        let mid = (p.lo + p.hi) * T::lit(0.5);
        panels.push(integrator.panel(p.lo, mid));
        panels.push(integrator.panel(mid, p.hi));
        subdivisions += 1;
    }
}

/// Σ_{n≥0} (−1)^n·a_n for a completely monotone sequence, by the
/// Cohen–Rodriguez Villegas–Zagier acceleration.
fn accelerated_alternating_sum<T: Real>(terms: usize, a: impl Fn(usize) -> T) -> T {
    let n = T::count(terms);
    let root = (T::lit(3.0) + T::lit(8.0).sqrt()).powf(n);
    let d = (root + root.recip()) * T::lit(0.5);
    let mut b = -T::one();
    let mut c = -d;
    let mut s = T::zero();
    for i in 0..terms {
        let kf = T::count(i);
        c = b - c;
        s = s + c * a(i);
        b = (kf + n) * (kf - n) * b / ((kf + T::lit(0.5)) * (kf + T::one()));
    }
    s / d
}

/// `F_{k/2}(η)` for η ≤ 0 from Γ(1+k/2)·Σ_{n≥1} (−1)^{n+1} e^{nη} / n^{1+k/2}.
///
/// The series is summed directly when it converges within a few hundred
/// terms; close to η = 0, where convergence is only conditional, the
/// alternating sum is accelerated instead.
pub fn fd_series_nondegenerate<T: Real>(k: Order, eta: T) -> Result<EvaluationResult<T>> {
    if !eta.is_finite() || eta > T::zero() {
        return Err(Error::domain(format!("series needs finite eta <= 0, got {eta}")));
    }
    let s = k.zeta_exponent::<T>();
    let term = |n: usize| {
        let nf = T::count(n);
        (nf * eta - s * nf.ln()).exp()
    };

    // Smallest N whose first omitted term is below the tolerance relative to
    // the leading term (the sum is at least half the leading term).
    let threshold = T::lit(SERIES_REL_TOL) * T::lit(0.5) * term(1);
    let direct_len = (1..=DIRECT_SERIES_LIMIT).find(|&n| term(n + 1) < threshold);

    let sum = match direct_len {
        Some(len) => (1..=len).rev().fold(
            T::zero(),
            |acc, n| {
                if n % 2 == 1 {
                    acc + term(n)
                } else {
                    acc - term(n)
                }
            },
        ),
        None => accelerated_alternating_sum(ACCELERATED_TERMS, |i| term(i + 1)),
    };
    let gamma: T = gamma_half_integer(k.get() as i64)?;
    Ok(EvaluationResult::new(gamma * sum, Method::Series, eta))
}
