//! Gamma, Riemann zeta and Hurwitz zeta building blocks.
//!
//! Only the convergent regime `s > 1`, `q > 0` is supported. The Hurwitz
//! zeta function is evaluated by direct summation of the leading terms
//! followed by an Euler–Maclaurin correction for the remainder.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Number of terms summed directly before the Euler–Maclaurin tail.
const DIRECT_TERMS: usize = 25;

/// `B_{2j} / (2j)!` for `j = 1..=6`.
const BERNOULLI_OVER_FACTORIAL: [f64; 6] = [
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40_320.0,
    5.0 / 66.0 / 3_628_800.0,
    -691.0 / 2730.0 / 479_001_600.0,
];

/// Argument pair `(s, q)` of the Hurwitz zeta function, validated to lie in
/// the convergent, pole-free domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaArgument<T> {
    s: T,
    q: T,
}

impl<T: Real> ZetaArgument<T> {
    pub fn new(s: T, q: T) -> Result<Self> {
        if !s.is_finite() || s <= T::one() {
            return Err(Error::domain(format!(
                "zeta exponent must satisfy s > 1, got {s}"
            )));
        }
        if !q.is_finite() || q <= T::zero() {
            return Err(Error::domain(format!("zeta shift must satisfy q > 0, got {q}")));
        }
        Ok(Self { s, q })
    }

    pub fn s(&self) -> T {
        self.s
    }

    pub fn q(&self) -> T {
        self.q
    }

    /// ζ(s, q) for this argument.
    pub fn hurwitz(&self) -> T {
        hurwitz_unchecked(self.s, self.q)
    }
}

/// Γ(1 + k/2) for a positive integer `k`, built from Γ(1/2) = √π, Γ(1) = 1
/// and Γ(x + 1) = x·Γ(x).
pub fn gamma_half_integer<T: Real>(k: i64) -> Result<T> {
    if k < 1 {
        return Err(Error::domain(format!("gamma_half_integer needs k >= 1, got {k}")));
    }
    let half = T::lit(0.5);
    // Γ(1 + k/2) = Π_{j} (j/2) down to the seed Γ(1/2) or Γ(1).
    let (mut acc, mut x) = if k % 2 == 0 {
        (T::one(), T::one())
    } else {
        (T::PI().sqrt(), half)
    };
    let target = T::one() + T::from_i64(k).unwrap() * half;
    while x < target {
        acc = acc * x;
        x = x + T::one();
    }
    Ok(acc)
}

/// Riemann zeta ζ(s) for `s > 1`, evaluated as ζ(s, 1).
pub fn riemann_zeta<T: Real>(s: T) -> Result<T> {
    hurwitz_zeta(s, T::one())
}

/// Hurwitz zeta ζ(s, q) = Σ_{n≥0} (n + q)^{-s} for `s > 1`, `q > 0`.
pub fn hurwitz_zeta<T: Real>(s: T, q: T) -> Result<T> {
    ZetaArgument::new(s, q).map(|arg| arg.hurwitz())
}

/// Alternating Hurwitz sum Σ_{n≥0} (-1)^n (n + q)^{-s}, expressed through
/// two ordinary Hurwitz zetas as 2^{1-s}·ζ(s, q/2) − ζ(s, q).
pub fn alternating_hurwitz<T: Real>(s: T, q: T) -> Result<T> {
    let arg = ZetaArgument::new(s, q)?;
    let two = T::lit(2.0);
    let halved = hurwitz_unchecked(s, q / two);
    Ok(two.powf(T::one() - s) * halved - arg.hurwitz())
}

fn hurwitz_unchecked<T: Real>(s: T, q: T) -> T {
    // Sum smallest terms first.
    let direct = (0..DIRECT_TERMS)
        .rev()
        .map(|n| (T::count(n) + q).powf(-s))
        .fold(T::zero(), |acc, t| acc + t);

    let x = T::count(DIRECT_TERMS) + q;
    let x_pow = x.powf(-s);
    let inv_x2 = (x * x).recip();

    // Σ_j B_{2j}/(2j)! · s(s+1)…(s+2j−2) · x^{−s−2j+1}
    let mut rising = s;
    let mut power = x_pow / x;
    let mut correction = T::zero();
    for (j, &coef) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
        if j > 0 {
            let m = T::count(2 * j);
            rising = rising * (s + m - T::one()) * (s + m);
            power = power * inv_x2;
        }
        correction = correction + T::lit(coef) * rising * power;
    }

    let integral = x * x_pow / (s - T::one());
    let midpoint = x_pow * T::lit(0.5);
    direct + (correction + midpoint + integral)
}
