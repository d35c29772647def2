//! Finite-difference eigensolver for the real effective equation
//!
//! ```text
//! −ψ''(x) − U(x)ψ(x) = λψ(x),    λ = Q²β²(E² − m₀²c⁴)
//! ```
//!
//! on `[x_min, x_max]` with Dirichlet ends. Because the equation is linear
//! in `E²`, one symmetric tridiagonal eigenproblem gives every level; no
//! nonlinear iteration is involved.

pub mod tridiag;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::potential::{effective_line_potential, MorseSystem};
use crate::scalar::{cx, Real};
use crate::spectrum::{Branch, QuantizedLevel};

use self::tridiag::{inverse_iteration, lowest_eigenvalues};

pub const MIN_POINTS: usize = 64;
pub const DEFAULT_POINTS: usize = 4096;

/// Uniform grid with Dirichlet conditions at both ends.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec<T> {
    pub x_min: T,
    pub x_max: T,
    /// Node count including both boundary nodes.
    pub points: usize,
}

impl<T: Real> GridSpec<T> {
    pub fn new(x_min: T, x_max: T, points: usize) -> Result<Self> {
        if points < MIN_POINTS {
            return Err(Error::InvalidRequest(format!(
                "grid needs at least {MIN_POINTS} points, got {points}"
            )));
        }
        if !(x_max > x_min && x_max.is_finite() && x_min.is_finite()) {
            return Err(Error::InvalidRequest(format!(
                "grid interval [{x_min}, {x_max}] is empty"
            )));
        }
        Ok(Self {
            x_min,
            x_max,
            points,
        })
    }

    /// `[0, x_max]` with `e^{-βx_max} = 10⁻¹²`, so every exponential term of
    /// the coupling has fallen below 10⁻¹² of its value at the origin.
    pub fn for_beta(beta: T, points: usize) -> Result<Self> {
        Self::new(T::zero(), T::lit(12.0) * T::LN_10() / beta, points)
    }

    pub fn spacing(&self) -> T {
        (self.x_max - self.x_min) / T::from_count(self.points - 1)
    }

    /// Same interval at half the spacing.
    pub fn refined(&self) -> Self {
        Self {
            points: 2 * self.points - 1,
            ..*self
        }
    }

    fn interior(&self) -> impl Iterator<Item = T> + '_ {
        let h = self.spacing();
        (1..self.points - 1).map(move |i| self.x_min + h * T::from_count(i))
    }
}

/// Interior diagonal and off-diagonal of `−d²/dx² + V(x)`.
pub fn assemble<T: Real, F: Fn(T) -> T>(grid: &GridSpec<T>, potential: F) -> (Vec<T>, Vec<T>) {
    let h2 = grid.spacing().powi(2);
    let inv = h2.recip();
    let diag: Vec<T> = grid
        .interior()
        .map(|x| T::lit(2.0) * inv + potential(x))
        .collect();
    let off = vec![-inv; diag.len().saturating_sub(1)];
    (diag, off)
}

/// Lowest `k` eigenvalues of `−ψ'' + V(x)ψ = λψ` on the grid.
pub fn solve_line<T: Real, F: Fn(T) -> T>(
    grid: &GridSpec<T>,
    potential: F,
    k: usize,
) -> Result<Vec<T>> {
    if k == 0 || k >= grid.points - 2 {
        return Err(Error::InvalidRequest(format!(
            "cannot extract {k} eigenvalues from {} interior points",
            grid.points - 2
        )));
    }
    let (diag, off) = assemble(grid, potential);
    Ok(lowest_eigenvalues(&diag, &off, k))
}

/// `(4λ(h/2) − λ(h))/3` elementwise.
pub fn richardson<T: Real>(coarse: &[T], fine: &[T]) -> Vec<T> {
    coarse
        .iter()
        .zip(fine)
        .map(|(&c, &f)| (T::lit(4.0) * f - c) / T::lit(3.0))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleResult<T> {
    /// `λ` on `grid`, ascending.
    pub eigenvalues: Vec<T>,
    /// Particle-branch energies `√(m₀²c⁴ + λ/(Q²β²))` from `eigenvalues`;
    /// the antiparticle branch is the negation.
    pub energies: Vec<Complex<T>>,
    pub grid: GridSpec<T>,
    /// Extrapolated `λ` from `grid` and its refinement.
    pub richardson_estimate: Vec<T>,
    /// Particle-branch energies from `richardson_estimate`.
    pub richardson_energies: Vec<Complex<T>>,
    /// Whether each eigenvector has decayed well before `x_max`.
    pub decays: Vec<bool>,
    pub provenance: u64,
}

impl<T: Real> OracleResult<T> {
    pub fn energy(&self, index: usize, branch: Branch) -> Option<Complex<T>> {
        self.richardson_energies
            .get(index)
            .map(|e| branch.apply(*e))
    }
}

fn energy_from_lambda<T: Real>(lambda: T, sys: &MorseSystem<T>) -> Complex<T> {
    let m0 = sys.mass.m0_energy();
    let scale = (sys.q_inv / sys.potential.beta()).powi(2);
    (cx(m0 * m0) + lambda * scale).sqrt()
}

fn tail_has_decayed<T: Real>(v: &[T]) -> bool {
    let peak = v.iter().fold(T::zero(), |acc, x| acc.max(x.abs()));
    let tail_len = (v.len() / 20).max(1);
    let tail = v[v.len() - tail_len..]
        .iter()
        .fold(T::zero(), |acc, x| acc.max(x.abs()));
    tail <= T::lit(1e-6) * peak
}

/// Solves the effective equation of a real system for its `k` lowest levels.
pub fn solve_effective<T: Real>(
    sys: &MorseSystem<T>,
    grid: &GridSpec<T>,
    k: usize,
) -> Result<OracleResult<T>> {
    let u = effective_line_potential(&sys.potential, &sys.mass, sys.q_inv)?;
    let potential = |x: T| -u.eval(x);
    let eigenvalues = solve_line(grid, potential, k)?;
    let fine = solve_line(&grid.refined(), potential, k)?;
    let richardson_estimate = richardson(&eigenvalues, &fine);

    let (diag, off) = assemble(grid, potential);
    let decays = eigenvalues
        .iter()
        .map(|&lam| tail_has_decayed(&inverse_iteration(&diag, &off, lam)))
        .collect();

    Ok(OracleResult {
        energies: eigenvalues
            .iter()
            .map(|&l| energy_from_lambda(l, sys))
            .collect(),
        richardson_energies: richardson_estimate
            .iter()
            .map(|&l| energy_from_lambda(l, sys))
            .collect(),
        eigenvalues,
        grid: *grid,
        richardson_estimate,
        decays,
        provenance: sys.fingerprint(),
    })
}

/// Nonrelativistic Morse problem `−ψ'' + 2m·D(e^{-2βx} − 2e^{-βx})ψ = 2m·Eψ` (ħ = 1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MorseProblem {
    pub depth: f64,
    pub beta: f64,
    pub mass: f64,
}

impl Default for MorseProblem {
    fn default() -> Self {
        Self {
            depth: 50.0,
            beta: 1.0,
            mass: 0.5,
        }
    }
}

impl MorseProblem {
    fn omega(&self) -> f64 {
        self.beta * (2.0 * self.depth / self.mass).sqrt()
    }

    /// `E_n = −D + ω(n+½) − ω²(n+½)²/(4D)`.
    pub fn exact_level(&self, n: usize) -> f64 {
        let w = self.omega() * (n as f64 + 0.5);
        -self.depth + w - w * w / (4.0 * self.depth)
    }

    /// `⌊√(2mD)/β − ½⌋ + 1`, or 0 when the well holds no level.
    pub fn bound_state_count(&self) -> usize {
        let s = (2.0 * self.mass * self.depth).sqrt() / self.beta - 0.5;
        if s < 0.0 {
            0
        } else {
            s.floor() as usize + 1
        }
    }

    pub fn potential(&self, x: f64) -> f64 {
        let e = (-self.beta * x).exp();
        self.depth * (e * e - 2.0 * e)
    }

    /// A grid wide enough for the lowest levels: the repulsive wall on the
    /// left, a decayed tail on the right.
    pub fn default_grid(&self, points: usize) -> Result<GridSpec<f64>> {
        GridSpec::new(-2.5 / self.beta, 40.0 / self.beta, points)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationLevel {
    pub n: usize,
    pub exact: f64,
    pub raw: f64,
    pub richardson: f64,
    pub relative_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub problem: MorseProblem,
    pub grid: GridSpec<f64>,
    pub levels: Vec<ValidationLevel>,
    /// Eigenvalues below the dissociation threshold with decayed eigenvectors.
    pub bound_levels: Vec<f64>,
    pub expected_bound_count: usize,
    /// Error ratio `err(h)/err(h/2)` for the particle in a box `[0, π]`.
    pub box_convergence_ratio: f64,
    pub box_lowest: f64,
    /// `(h, h/2)` versus `(h/2, h/4)` extrapolations, max relative spread.
    pub richardson_spread: f64,
    pub tolerance: f64,
    pub passed: bool,
}

/// Relative tolerance on the three lowest Morse levels after extrapolation.
pub const VALIDATION_TOLERANCE: f64 = 1e-6;

/// Runs the nonrelativistic Morse and particle-in-a-box self-tests.
pub fn validate_oracle(grid: &GridSpec<f64>) -> Result<ValidationReport> {
    validate_oracle_with(MorseProblem::default(), grid)
}

pub fn validate_oracle_with(
    problem: MorseProblem,
    grid: &GridSpec<f64>,
) -> Result<ValidationReport> {
    let to_energy = |lam: f64| lam / (2.0 * problem.mass);
    let scaled = |x: f64| 2.0 * problem.mass * problem.potential(x);

    let count = problem.bound_state_count();
    let k = 3.min(grid.points - 3);
    let raw = solve_line(grid, scaled, k)?;
    let half = solve_line(&grid.refined(), scaled, k)?;
    let quarter = solve_line(&grid.refined().refined(), scaled, k)?;
    let rich = richardson(&raw, &half);
    let rich_fine = richardson(&half, &quarter);

    let mut levels = Vec::new();
    for n in 0..k.min(count) {
        let exact = problem.exact_level(n);
        let richardson = to_energy(rich[n]);
        levels.push(ValidationLevel {
            n,
            exact,
            raw: to_energy(raw[n]),
            richardson,
            relative_error: ((richardson - exact) / exact).abs(),
        });
    }
    let richardson_spread = rich
        .iter()
        .zip(&rich_fine)
        .take(k.min(count))
        .map(|(a, b)| ((a - b) / b).abs())
        .fold(0.0, f64::max);

    let bound_levels = bound_levels(&problem, grid)?;

    let box_grid = |points| GridSpec::new(0.0, std::f64::consts::PI, points);
    let b1 = solve_line(&box_grid(grid.points)?, |_| 0.0, 1)?[0];
    let b2 = solve_line(&box_grid(2 * grid.points - 1)?, |_| 0.0, 1)?[0];
    let box_convergence_ratio = (b1 - 1.0).abs() / (b2 - 1.0).abs();

    let levels_ok = levels.len() == k.min(count)
        && levels
            .iter()
            .all(|l| l.relative_error < VALIDATION_TOLERANCE);
    let box_ok = (box_convergence_ratio - 4.0).abs() < 0.1;
    if !levels_ok && levels.iter().any(|l| !l.richardson.is_finite()) {
        return Err(Error::Convergence(format!(
            "non-finite eigenvalue on {} points",
            grid.points
        )));
    }
    Ok(ValidationReport {
        problem,
        grid: *grid,
        levels,
        bound_levels,
        expected_bound_count: count,
        box_convergence_ratio,
        box_lowest: b1,
        richardson_spread,
        tolerance: VALIDATION_TOLERANCE,
        passed: levels_ok && box_ok,
    })
}

fn bound_levels(problem: &MorseProblem, grid: &GridSpec<f64>) -> Result<Vec<f64>> {
    let scaled = |x: f64| 2.0 * problem.mass * problem.potential(x);
    let (diag, off) = assemble(grid, scaled);
    let below = tridiag::sturm_count(&diag, &off, 0.0);
    let mut out = Vec::new();
    for lam in lowest_eigenvalues(&diag, &off, below) {
        if tail_has_decayed(&inverse_iteration(&diag, &off, lam)) {
            out.push(lam / (2.0 * problem.mass));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow<T> {
    pub n: usize,
    pub branch: Branch,
    pub closed_form: Complex<T>,
    pub oracle: Option<Complex<T>>,
    pub abs_deviation: Option<T>,
    pub rel_deviation: Option<T>,
    pub oracle_decays: Option<bool>,
    pub matched: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport<T> {
    pub tolerance: T,
    pub provenance: u64,
    pub rows: Vec<ComparisonRow<T>>,
}

impl<T: Real> ComparisonReport<T> {
    pub fn all_match(&self) -> bool {
        self.rows.iter().all(|r| r.matched)
    }

    pub fn mismatches(&self) -> usize {
        self.rows.iter().filter(|r| !r.matched).count()
    }
}

/// Pairs closed-form level `n` with the oracle's `n`-th eigenvalue.
///
/// A row matches when the relative deviation is within `tolerance`; rows
/// without an oracle counterpart never match. Disagreement is reported, not
/// raised.
pub fn compare_report<T: Real>(
    levels: &[QuantizedLevel<T>],
    oracle: &OracleResult<T>,
    tolerance: T,
) -> Result<ComparisonReport<T>> {
    if let Some(bad) = levels.iter().find(|l| l.provenance != oracle.provenance) {
        return Err(Error::ProvenanceMismatch {
            closed_form: bad.provenance,
            oracle: oracle.provenance,
        });
    }
    let rows = levels
        .iter()
        .map(|lvl| {
            let other = oracle.energy(lvl.n, lvl.branch);
            let abs = other.map(|o| (lvl.energy - o).norm());
            let rel = other.map(|o| {
                (lvl.energy - o).norm()
                    / lvl.energy.norm().max(o.norm()).max(T::min_positive_value())
            });
            ComparisonRow {
                n: lvl.n,
                branch: lvl.branch,
                closed_form: lvl.energy,
                oracle: other,
                abs_deviation: abs,
                rel_deviation: rel,
                oracle_decays: oracle.decays.get(lvl.n).copied(),
                matched: rel.is_some_and(|r| r <= tolerance),
            }
        })
        .collect();
    Ok(ComparisonReport {
        tolerance,
        provenance: oracle.provenance,
        rows,
    })
}
