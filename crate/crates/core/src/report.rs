//! Data products: the molecular level table, the `m₁` sweep and the
//! closed-form versus finite-difference comparison.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::{compare_report, solve_effective, ComparisonReport, GridSpec, OracleResult};
use crate::potential::MorseSystem;
use crate::spectrum::{constant_mass_energy, pdm_energy, Branch, QuantizedLevel};
use crate::units::{MoleculeParams, Registry};

/// Quantum numbers of the published table.
pub const TABLE_N: [usize; 8] = [0, 2, 4, 10, 20, 30, 40, 50];

/// Published `±E_n` in MeV, per molecule, in [`TABLE_N`] order.
pub const PUBLISHED: [(&str, [f64; 8]); 3] = [
    (
        "H2",
        [
            663.819, 663.827, 663.835, 663.859, 663.899, 663.939, 663.979, 664.020,
        ],
    ),
    (
        "LiH",
        [
            1159.420, 1159.430, 1159.440, 1159.470, 1159.520, 1159.570, 1159.620, 1159.670,
        ],
    ),
    (
        "HCl",
        [
            1291.130, 1291.140, 1291.150, 1291.190, 1291.260, 1291.330, 1291.390, 1291.460,
        ],
    ),
];

/// Published `E₅₀ − E₀` spacings in MeV.
pub const PUBLISHED_SPACING: [(&str, f64); 3] = [("H2", 0.201), ("LiH", 0.250), ("HCl", 0.330)];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub molecule: String,
    pub n: usize,
    /// Particle branch, MeV; the antiparticle level is its negation.
    pub energy: f64,
    pub published: f64,
    pub deviation: f64,
}

/// Constant-mass levels of the three published molecules at [`TABLE_N`].
pub fn table1(registry: &Registry) -> Result<Vec<TableRow>> {
    let mut rows = Vec::with_capacity(24);
    for (name, published) in PUBLISHED {
        let mol = registry.lookup(name)?;
        let sys = MorseSystem::<f64>::from_molecule(mol, 0.0)?;
        for (&n, &value) in TABLE_N.iter().zip(&published) {
            let energy = constant_mass_energy(n, &sys, Branch::Particle)?.energy.re;
            rows.push(TableRow {
                molecule: mol.name.clone(),
                n,
                energy,
                published: value,
                deviation: energy - value,
            });
        }
    }
    Ok(rows)
}

/// `E₅₀ − E₀` for one molecule in MeV.
pub fn level_spacing(mol: &MoleculeParams) -> Result<f64> {
    let sys = MorseSystem::<f64>::from_molecule(mol, 0.0)?;
    let e = |n| constant_mass_energy(n, &sys, Branch::Particle).map(|l| l.energy.re);
    Ok(e(50)? - e(0)?)
}

/// Logarithmic grid in `1/M = m₁/m₀`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepGrid {
    pub min: f64,
    pub max: f64,
    pub points: usize,
    /// Prepend the `1/M = 0` constant-mass row.
    pub include_limit: bool,
}

impl Default for SweepGrid {
    fn default() -> Self {
        Self {
            min: 1e-6,
            max: 1e-4,
            points: 1001,
            include_limit: true,
        }
    }
}

impl SweepGrid {
    pub fn values(&self) -> Result<Vec<f64>> {
        if self.points == 0 {
            return Err(Error::InvalidRequest(
                "sweep needs at least one point".into(),
            ));
        }
        if !(self.min > 0.0 && self.max >= self.min && self.max < 1.0) {
            return Err(Error::InvalidRequest(format!(
                "1/M range [{}, {}] must satisfy 0 < min <= max < 1",
                self.min, self.max
            )));
        }
        if self.points > 1 && self.max == self.min {
            return Err(Error::InvalidRequest("empty 1/M range".into()));
        }
        let mut out = Vec::with_capacity(self.points + 1);
        if self.include_limit {
            out.push(0.0);
        }
        let (lo, hi) = (self.min.ln(), self.max.ln());
        let steps = (self.points.max(2) - 1) as f64;
        for i in 0..self.points {
            let x = if i == 0 {
                self.min
            } else if i + 1 == self.points {
                self.max
            } else {
                (lo + (hi - lo) * i as f64 / steps).exp()
            };
            out.push(x);
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub inverse_m: f64,
    pub m1_energy: f64,
    pub particle: Complex<f64>,
    pub antiparticle: Complex<f64>,
}

/// Level `n` of the position-dependent-mass spectrum against `1/M`.
pub fn sweep(mol: &MoleculeParams, n: usize, grid: &SweepGrid) -> Result<Vec<SweepRow>> {
    let base = MorseSystem::<f64>::from_molecule(mol, 0.0)?;
    let m0 = base.mass.m0_energy();
    grid.values()?
        .into_iter()
        .map(|inverse_m| {
            let m1_energy = inverse_m * m0;
            let sys = base.with_m1(m1_energy)?;
            Ok(SweepRow {
                inverse_m,
                m1_energy,
                particle: pdm_energy(n, &sys, Branch::Particle).energy,
                antiparticle: pdm_energy(n, &sys, Branch::Antiparticle).energy,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub molecule: String,
    pub levels: Vec<QuantizedLevel<f64>>,
    pub oracle: OracleResult<f64>,
    pub comparison: ComparisonReport<f64>,
}

/// Closed-form constant-mass levels `0..count` of a molecule against the
/// finite-difference solution of the same equation.
pub fn verify(
    mol: &MoleculeParams,
    count: usize,
    points: usize,
    tolerance: f64,
) -> Result<VerifyReport> {
    let sys = MorseSystem::<f64>::from_molecule(mol, 0.0)?;
    let grid = GridSpec::for_beta(sys.potential.beta(), points)?;
    let oracle = solve_effective(&sys, &grid, count)?;
    let mut levels = Vec::with_capacity(2 * count);
    for n in 0..count {
        for branch in Branch::BOTH {
            levels.push(constant_mass_energy(n, &sys, branch)?);
        }
    }
    let comparison = compare_report(&levels, &oracle, tolerance)?;
    Ok(VerifyReport {
        molecule: mol.name.clone(),
        levels,
        oracle,
        comparison,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_grid_shape() {
        let g = SweepGrid {
            points: 5,
            ..SweepGrid::default()
        };
        let v = g.values().unwrap();
        assert_eq!(v.len(), 6);
        assert_eq!(v[0], 0.0);
        assert_eq!(v[1], 1e-6);
        assert_eq!(v[5], 1e-4);
        assert!((v[3] - 1e-5).abs() < 1e-18);
        assert!(v.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn sweep_grid_rejects_bad_ranges() {
        for g in [
            SweepGrid {
                points: 0,
                ..SweepGrid::default()
            },
            SweepGrid {
                min: 0.0,
                ..SweepGrid::default()
            },
            SweepGrid {
                min: 1e-3,
                max: 1e-4,
                ..SweepGrid::default()
            },
            SweepGrid {
                min: 1e-4,
                max: 1e-4,
                ..SweepGrid::default()
            },
            SweepGrid {
                max: 2.0,
                ..SweepGrid::default()
            },
        ] {
            assert!(g.values().is_err(), "{g:?}");
        }
    }

    #[test]
    fn table_has_24_rows() {
        let rows = table1(&Registry::builtin()).unwrap();
        assert_eq!(rows.len(), 24);
        assert!(rows.iter().all(|r| r.deviation.abs() < 0.02));
    }

    #[test]
    fn table_needs_the_published_molecules() {
        let reg = Registry::parse("H2,38267.76,1.9426,0.7416,0.50391").unwrap();
        assert!(matches!(table1(&reg), Err(Error::UnknownMolecule { .. })));
    }
}
