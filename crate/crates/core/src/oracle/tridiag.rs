//! Symmetric tridiagonal eigenvalues by Sturm-sequence bisection, and
//! eigenvectors by inverse iteration.

use crate::scalar::Real;

/// Number of eigenvalues strictly below `lambda`.
///
/// `diag` has length n, `off` length n−1.
pub fn sturm_count<T: Real>(diag: &[T], off: &[T], lambda: T) -> usize {
    let guard = T::min_positive_value().sqrt();
    let mut count = 0;
    let mut pivot = T::one();
    for (i, &d) in diag.iter().enumerate() {
        let coupling = if i == 0 {
            T::zero()
        } else {
            off[i - 1] * off[i - 1]
        };
        let prev = if pivot.abs() < guard {
            guard.copysign(pivot)
        } else {
            pivot
        };
        pivot = (d - lambda) - if i == 0 { T::zero() } else { coupling / prev };
        if pivot < T::zero() {
            count += 1;
        }
    }
    count
}

/// Gershgorin interval containing every eigenvalue.
pub fn gershgorin_bounds<T: Real>(diag: &[T], off: &[T]) -> (T, T) {
    let n = diag.len();
    let mut lo = T::infinity();
    let mut hi = T::neg_infinity();
    for i in 0..n {
        let mut radius = T::zero();
        if i > 0 {
            radius = radius + off[i - 1].abs();
        }
        if i + 1 < n {
            radius = radius + off[i].abs();
        }
        lo = lo.min(diag[i] - radius);
        hi = hi.max(diag[i] + radius);
    }
    (lo, hi)
}

/// The `index`-th smallest eigenvalue (0-based).
pub fn kth_eigenvalue<T: Real>(diag: &[T], off: &[T], index: usize) -> T {
    let (mut lo, mut hi) = gershgorin_bounds(diag, off);
    let pad = (hi - lo).abs() * T::lit(1e-12) + T::min_positive_value();
    lo = lo - pad;
    hi = hi + pad;
    let tol = T::epsilon() * T::lit(4.0);
    for _ in 0..400 {
        let mid = (lo + hi) * T::lit(0.5);
        if mid <= lo || mid >= hi {
            break;
        }
        if sturm_count(diag, off, mid) > index {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo <= tol * lo.abs().max(hi.abs()) {
            break;
        }
    }
    (lo + hi) * T::lit(0.5)
}

/// The `k` smallest eigenvalues in ascending order.
pub fn lowest_eigenvalues<T: Real>(diag: &[T], off: &[T], k: usize) -> Vec<T> {
    (0..k.min(diag.len()))
        .map(|i| kth_eigenvalue(diag, off, i))
        .collect()
}

/// Unit eigenvector for an eigenvalue estimate, by inverse iteration.
pub fn inverse_iteration<T: Real>(diag: &[T], off: &[T], lambda: T) -> Vec<T> {
    let n = diag.len();
    let scale = diag
        .iter()
        .chain(off.iter())
        .fold(T::zero(), |acc, v| acc.max(v.abs()))
        .max(T::one());
    let shift = lambda + scale * T::epsilon() * T::lit(8.0);
    let mut v = vec![T::one(); n];
    // Deterministic non-symmetric start avoids orthogonality to the target.
    for (i, x) in v.iter_mut().enumerate() {
        *x = T::one() + T::lit(0.1) * T::from_count(i % 7);
    }
    for _ in 0..3 {
        v = solve_shifted(diag, off, shift, &v);
        let norm = v.iter().fold(T::zero(), |acc, x| acc + *x * *x).sqrt();
        if norm == T::zero() || !norm.is_finite() {
            break;
        }
        for x in &mut v {
            *x = *x / norm;
        }
    }
    v
}

// Solves (A − σI)x = b with partial pivoting (tridiagonal LU gains one
// superdiagonal of fill).
fn solve_shifted<T: Real>(diag: &[T], off: &[T], sigma: T, b: &[T]) -> Vec<T> {
    let n = diag.len();
    if n == 0 {
        return Vec::new();
    }
    let tiny = T::min_positive_value().sqrt();
    // Row i holds (d[i], u1[i], u2[i]) for columns i, i+1, i+2 after elimination.
    let mut d: Vec<T> = diag.iter().map(|&x| x - sigma).collect();
    let mut u1: Vec<T> = (0..n)
        .map(|i| if i + 1 < n { off[i] } else { T::zero() })
        .collect();
    let mut u2 = vec![T::zero(); n];
    let mut lower: Vec<T> = (0..n)
        .map(|i| if i > 0 { off[i - 1] } else { T::zero() })
        .collect();
    let mut rhs = b.to_vec();
    for i in 0..n - 1 {
        // Candidate pivots: row i (d[i]) and row i+1 (lower[i+1]).
        if lower[i + 1].abs() > d[i].abs() {
            // Swap rows i and i+1.
            let (di, ui1, ui2) = (d[i], u1[i], u2[i]);
            d[i] = lower[i + 1];
            u1[i] = d[i + 1];
            u2[i] = u1[i + 1];
            lower[i + 1] = di;
            d[i + 1] = ui1;
            u1[i + 1] = ui2;
            rhs.swap(i, i + 1);
        }
        if d[i].abs() < tiny {
            d[i] = tiny;
        }
        let m = lower[i + 1] / d[i];
        d[i + 1] = d[i + 1] - m * u1[i];
        u1[i + 1] = u1[i + 1] - m * u2[i];
        rhs[i + 1] = rhs[i + 1] - m * rhs[i];
        lower[i + 1] = T::zero();
    }
    if d[n - 1].abs() < tiny {
        d[n - 1] = tiny;
    }
    let mut x = vec![T::zero(); n];
    for i in (0..n).rev() {
        let mut s = rhs[i];
        if i + 1 < n {
            s = s - u1[i] * x[i + 1];
        }
        if i + 2 < n {
            s = s - u2[i] * x[i + 2];
        }
        x[i] = s / d[i];
    }
    x
}
