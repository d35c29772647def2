//! Tanh-sinh (double exponential) quadrature on a finite interval.
//!
//! Tolerates integrable algebraic singularities at either endpoint, which is
//! what the normalization integral `∫₀¹ |φ(z)|² dz/(βz²)` has at `z = 0`.

use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature<T> {
    pub value: T,
    /// Step `h = 2^-level` in the transformed variable.
    pub level: u32,
    /// |I(level) − I(level − 1)|
    pub error_estimate: T,
}

/// Integrates at a fixed step `h = 2^-level`.
pub fn tanh_sinh_fixed<T: Real, F: Fn(T) -> T>(f: F, a: T, b: T, level: u32) -> T {
    let h = T::lit(2.0).powi(-(level as i32));
    let half_pi = T::FRAC_PI_2();
    let width = b - a;
    let two = T::lit(2.0);
    // Stop once the node's distance to the endpoint underflows usefully.
    let floor = T::min_positive_value().sqrt();

    let mut sum = f(a + width / two) * half_pi;
    let mut k = 1usize;
    loop {
        let t = h * T::from_count(k);
        let u = half_pi * t.sinh();
        let delta = ((two * u).exp() + T::one()).recip();
        if delta < floor {
            break;
        }
        let w = half_pi * t.cosh() * T::lit(4.0) * delta * (T::one() - delta);
        let offset = delta * width;
        sum = sum + w * (f(a + offset) + f(b - offset));
        k += 1;
    }
    sum * h * width / two
}

/// Refines the step until two successive levels agree to `rel_tol`.
pub fn tanh_sinh<T: Real, F: Fn(T) -> T>(f: F, a: T, b: T, rel_tol: T) -> Result<Quadrature<T>> {
    const MAX_LEVEL: u32 = 12;
    let mut prev = tanh_sinh_fixed(&f, a, b, 0);
    for level in 1..=MAX_LEVEL {
        let cur = tanh_sinh_fixed(&f, a, b, level);
        if !cur.is_finite() {
            return Err(Error::Divergent(format!(
                "integrand not finite at quadrature level {level}"
            )));
        }
        let err = (cur - prev).abs();
        if level >= 3 && err <= rel_tol * cur.abs() {
            return Ok(Quadrature {
                value: cur,
                level,
                error_estimate: err,
            });
        }
        prev = cur;
    }
    Err(Error::Convergence(format!(
        "tanh-sinh did not reach relative tolerance {rel_tol} by level {MAX_LEVEL}"
    )))
}
