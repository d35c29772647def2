//! Series solutions `φ(z) = e^{pz + qz²/2} Σ aₙ z^{2n+L+1/2}`.
//!
//! The coefficients obey the three-term recurrence
//! `Xₙaₙ + Yₙ₊₁aₙ₊₁ + Zₙ₊₂aₙ₊₂ = 0` with
//!
//! ```text
//! Xₙ = 2q(2n+L+1) − A₃    Yₙ = A₂ + p(4n+2L+1)    Zₙ = 4n(n+L) + 2L²
//! ```
//!
//! started from `a₀ = 1`, `Y₀a₀ + Z₁a₁ = 0`. With that start the first `N+1`
//! equations form the tridiagonal system whose determinant (diagonal `Yₖ`,
//! superdiagonal `Zₖ₊₁`, subdiagonal `Xₖ₋₁`) must vanish for `aₙ₊₁ = 0`.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::potential::{MorseSystem, ReducedParams, SignConvention};
use crate::quadrature::{tanh_sinh, tanh_sinh_fixed};
use crate::scalar::{cx, Real};
use crate::spectrum::{pdm_energy, quantization_l, Branch};

/// Relative size below which the two tail coefficients count as zero.
pub const TRUNCATION_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RecurrenceRow<T> {
    pub index: usize,
    pub x: Complex<T>,
    pub y: Complex<T>,
    pub z: Complex<T>,
}

pub fn recurrence_row<T: Real>(n: usize, rp: &ReducedParams<T>, l: Complex<T>) -> RecurrenceRow<T> {
    let nn = T::from_count(n);
    let two = T::lit(2.0);
    let four = T::lit(4.0);
    RecurrenceRow {
        index: n,
        x: rp.q * (l + two * nn + T::one()) * two - rp.a3,
        y: rp.a2 + rp.p * (l * two + four * nn + T::one()),
        z: (l + nn) * (four * nn) + l * l * two,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WavefunctionSeries<T> {
    pub p: Complex<T>,
    pub q: Complex<T>,
    pub l: Complex<T>,
    /// `a₀ … a_N`, with `a₀ = 1`.
    pub coefficients: Vec<Complex<T>>,
    pub truncation_index: usize,
    /// `a_{N+1}`, `a_{N+2}` continued from the recurrence.
    pub tail: [Complex<T>; 2],
    pub truncated_exactly: bool,
    pub signs: SignConvention,
}

impl<T: Real> WavefunctionSeries<T> {
    /// Bare series with given coefficients; used for synthetic checks.
    pub fn from_parts(
        p: Complex<T>,
        q: Complex<T>,
        l: Complex<T>,
        coefficients: Vec<Complex<T>>,
    ) -> Self {
        let truncation_index = coefficients.len().saturating_sub(1);
        Self {
            p,
            q,
            l,
            coefficients,
            truncation_index,
            tail: [Complex::default(); 2],
            truncated_exactly: true,
            signs: SignConvention::Consistent,
        }
    }

    pub fn scaled(&self, factor: T) -> Self {
        let mut out = self.clone();
        for a in &mut out.coefficients {
            *a = *a * factor;
        }
        for a in &mut out.tail {
            *a = *a * factor;
        }
        out
    }

    fn max_coefficient(&self) -> T {
        self.coefficients
            .iter()
            .fold(T::zero(), |acc, a| acc.max(a.norm()))
    }
}

fn next_coefficient<T: Real>(
    k: usize,
    rp: &ReducedParams<T>,
    l: Complex<T>,
    a: &[Complex<T>],
    strict: bool,
) -> Result<Complex<T>> {
    // Solves row k−1 of the system for a_k:
    // k = 1: Y₀a₀ + Z₁a₁ = 0;  k ≥ 2: X_{k−2}a_{k−2} + Y_{k−1}a_{k−1} + Z_k a_k = 0.
    let z = recurrence_row(k, rp, l).z;
    let prev = recurrence_row(k - 1, rp, l);
    let mut rhs = prev.y * a[k - 1];
    if k >= 2 {
        rhs = rhs + recurrence_row(k - 2, rp, l).x * a[k - 2];
    }
    if z.norm_sqr() == T::zero() {
        if strict {
            return Err(Error::DegenerateRecurrence { index: k });
        }
        // Free coefficient: report the unsatisfied residual instead.
        return Ok(rhs);
    }
    Ok(-rhs / z)
}

/// Builds `a₀ … a_N` and the two continued tail coefficients.
pub fn build_series<T: Real>(
    rp: &ReducedParams<T>,
    l: Complex<T>,
    truncation_index: usize,
) -> Result<WavefunctionSeries<T>> {
    let n_max = truncation_index;
    let mut a: Vec<Complex<T>> = Vec::with_capacity(n_max + 3);
    a.push(cx(T::one()));
    for k in 1..=n_max {
        let next = next_coefficient(k, rp, l, &a, true)?;
        a.push(next);
    }
    for k in n_max + 1..=n_max + 2 {
        let next = next_coefficient(k, rp, l, &a, false)?;
        a.push(next);
    }
    let tail = [a[n_max + 1], a[n_max + 2]];
    a.truncate(n_max + 1);

    let mut series = WavefunctionSeries {
        p: rp.p,
        q: rp.q,
        l,
        coefficients: a,
        truncation_index: n_max,
        tail,
        truncated_exactly: false,
        signs: rp.signs,
    };
    let bound = T::lit(TRUNCATION_TOLERANCE) * series.max_coefficient();
    series.truncated_exactly = tail.iter().all(|t| t.norm() < bound);
    Ok(series)
}

/// Closed-form level `n` with its series truncated at `a_n`.
pub fn level_series<T: Real>(
    n: usize,
    sys: &MorseSystem<T>,
    signs: SignConvention,
) -> Result<(Complex<T>, WavefunctionSeries<T>)> {
    let energy = pdm_energy(n, sys, Branch::Particle).energy;
    let rp = sys.reduce(energy, signs);
    let l = quantization_l(n, &rp)?;
    Ok((energy, build_series(&rp, l, n)?))
}

/// `|det M| / Π‖rowₖ‖` for the `(n+1)×(n+1)` tridiagonal coefficient matrix.
///
/// By Hadamard's inequality the result lies in `[0, 1]`.
pub fn determinant_residual<T: Real>(rp: &ReducedParams<T>, l: Complex<T>, n: usize) -> T {
    let rows: Vec<RecurrenceRow<T>> = (0..=n + 1).map(|k| recurrence_row(k, rp, l)).collect();
    let norm = |k: usize| -> T {
        let mut s = rows[k].y.norm_sqr();
        if k > 0 {
            s = s + rows[k - 1].x.norm_sqr();
        }
        if k < n {
            s = s + rows[k + 1].z.norm_sqr();
        }
        s.sqrt()
    };

    // Continuant scaled by the running product of row norms.
    let mut r_prev = T::one();
    let mut d_prev2 = cx(T::zero());
    let mut d_prev = cx(T::one());
    for k in 0..=n {
        let r = norm(k);
        if r == T::zero() {
            return T::zero();
        }
        let mut d = rows[k].y / r * d_prev;
        if k > 0 {
            d = d - rows[k - 1].x * rows[k].z / (r * r_prev) * d_prev2;
        }
        d_prev2 = d_prev;
        d_prev = d;
        r_prev = r;
    }
    d_prev.norm()
}

/// `φ(z) = e^{pz + qz²/2} Σ aₙ z^{2n+L+1/2}` on the principal branch.
pub fn evaluate_phi<T: Real>(ws: &WavefunctionSeries<T>, z: Complex<T>) -> Result<Complex<T>> {
    let half = T::lit(0.5);
    if z.norm_sqr() == T::zero() {
        if ws.l.re + half > T::zero() {
            return Ok(Complex::default());
        }
        return Err(Error::Divergent(format!(
            "z^(L+1/2) at z = 0 with Re(L) + 1/2 = {}",
            ws.l.re + half
        )));
    }
    let z2 = z * z;
    let poly = ws
        .coefficients
        .iter()
        .rev()
        .fold(Complex::default(), |acc, a| acc * z2 + a);
    let power = ((ws.l + half) * z.ln()).exp();
    let gauss = (ws.p * z + ws.q * z2 * half).exp();
    Ok(gauss * power * poly)
}

/// `ψ(x) = φ(e^{-βx}) e^{βx/2}`.
pub fn evaluate_psi<T: Real>(ws: &WavefunctionSeries<T>, x: T, beta: T) -> Result<Complex<T>> {
    if x < T::zero() {
        return Err(Error::InvalidParameter(format!("x must be >= 0, got {x}")));
    }
    let z = (-beta * x).exp();
    Ok(evaluate_phi(ws, cx(z))? * (beta * x * T::lit(0.5)).exp())
}

fn norm_integrand<T: Real>(ws: &WavefunctionSeries<T>, beta: T) -> impl Fn(T) -> T + '_ {
    move |z: T| {
        let phi = evaluate_phi(ws, cx(z)).unwrap_or_else(|_| cx(T::nan()));
        phi.norm_sqr() / (beta * z * z)
    }
}

fn check_integrable<T: Real>(ws: &WavefunctionSeries<T>, beta: T) -> Result<()> {
    if beta.is_nan() || beta <= T::zero() {
        return Err(Error::InvalidParameter(format!(
            "beta must be positive, got {beta}"
        )));
    }
    if ws.l.re <= T::zero() {
        return Err(Error::Divergent(format!(
            "|psi|^2 ~ e^(-2 Re(L) beta x) is not integrable for Re(L) = {}",
            ws.l.re
        )));
    }
    Ok(())
}

/// Scale `s` with `∫₀^∞ |s·ψ(x)|² dx = 1`, integrated over `z ∈ (0, 1]`.
pub fn normalize_numeric<T: Real>(ws: &WavefunctionSeries<T>, beta: T) -> Result<T> {
    check_integrable(ws, beta)?;
    let q = tanh_sinh(
        norm_integrand(ws, beta),
        T::zero(),
        T::one(),
        T::lit(1e-12).max(T::epsilon() * T::lit(16.0)),
    )?;
    finish_norm(q.value)
}

/// Same as [`normalize_numeric`] at a fixed quadrature step `2^-level`.
pub fn normalize_numeric_at_level<T: Real>(
    ws: &WavefunctionSeries<T>,
    beta: T,
    level: u32,
) -> Result<T> {
    check_integrable(ws, beta)?;
    finish_norm(tanh_sinh_fixed(
        norm_integrand(ws, beta),
        T::zero(),
        T::one(),
        level,
    ))
}

fn finish_norm<T: Real>(integral: T) -> Result<T> {
    if !(integral.is_finite() && integral > T::zero()) {
        return Err(Error::Divergent(format!("norm integral = {integral}")));
    }
    Ok(integral.sqrt().recip())
}
