//! Physical constants, spectroscopic unit conversions and the molecule registry.
//!
//! Energies handed to the solver are in MeV. The inverse scale `1/Q` is
//! `ħc·a·r₀` read numerically with ħc in eV·Å, giving eV; see [`inverse_q`].

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// ħc in eV·Å (CODATA 2018).
pub const HBAR_C_EV_ANGSTROM: f64 = 1973.269804;
/// Rest energy of one atomic mass unit in MeV (CODATA 2018).
pub const AMU_MEV: f64 = 931.49410242;
/// Energy of one wavenumber (cm⁻¹) in eV, i.e. `hc` in eV·cm.
pub const WAVENUMBER_EV: f64 = 1.239841984e-4;
/// eV per MeV.
pub const EV_PER_MEV: f64 = 1.0e6;

/// The fixed set of constants used for unit conversion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    /// eV·Å
    pub hbar_c: f64,
    /// MeV per amu
    pub amu_energy: f64,
    /// eV per cm⁻¹
    pub wavenumber_energy: f64,
}

impl PhysicalConstants {
    pub const CODATA_2018: Self = Self {
        hbar_c: HBAR_C_EV_ANGSTROM,
        amu_energy: AMU_MEV,
        wavenumber_energy: WAVENUMBER_EV,
    };
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::CODATA_2018
    }
}

fn non_negative<T: Real>(quantity: &'static str, value: T) -> Result<T> {
    if value < T::zero() || value.is_nan() {
        return Err(Error::Negative {
            quantity,
            value: value.as_f64(),
        });
    }
    Ok(value)
}

/// Wavenumber (cm⁻¹) to energy (eV).
pub fn wavenumber_to_energy<T: Real>(w: T) -> Result<T> {
    Ok(non_negative("wavenumber", w)? * T::lit(WAVENUMBER_EV))
}

/// Energy (eV) to wavenumber (cm⁻¹).
pub fn energy_to_wavenumber<T: Real>(e: T) -> Result<T> {
    Ok(non_negative("energy", e)? / T::lit(WAVENUMBER_EV))
}

/// Mass in amu to rest energy in MeV.
pub fn amu_to_rest_energy<T: Real>(m: T) -> Result<T> {
    Ok(non_negative("mass", m)? * T::lit(AMU_MEV))
}

/// Spectroscopic constants of one diatomic molecule.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MoleculeParams {
    pub name: String,
    /// Dissociation energy D in cm⁻¹.
    pub dissociation_energy: f64,
    /// Potential width a in Å⁻¹.
    pub width: f64,
    /// Equilibrium distance r₀ in Å.
    pub equilibrium_distance: f64,
    /// Rest mass m₀ in amu.
    pub rest_mass: f64,
}

impl MoleculeParams {
    pub fn new(
        name: impl Into<String>,
        dissociation_energy: f64,
        width: f64,
        equilibrium_distance: f64,
        rest_mass: f64,
    ) -> Result<Self> {
        let name = name.into();
        if name.trim().is_empty() {
            return Err(Error::InvalidParameter("molecule name is empty".into()));
        }
        for (label, v) in [
            ("D", dissociation_energy),
            ("a", width),
            ("r0", equilibrium_distance),
            ("m0", rest_mass),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "{name}: {label} must be positive and finite, got {v}"
                )));
            }
        }
        Ok(Self {
            name,
            dissociation_energy,
            width,
            equilibrium_distance,
            rest_mass,
        })
    }

    /// Dimensionless exponent scale β = a·r₀.
    pub fn beta(&self) -> f64 {
        self.width * self.equilibrium_distance
    }

    pub fn dissociation_energy_ev(&self) -> f64 {
        self.dissociation_energy * WAVENUMBER_EV
    }

    pub fn rest_energy_mev(&self) -> f64 {
        self.rest_mass * AMU_MEV
    }
}

impl fmt::Display for MoleculeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (D={} cm^-1, a={} A^-1, r0={} A, m0={} amu)",
            self.name,
            self.dissociation_energy,
            self.width,
            self.equilibrium_distance,
            self.rest_mass
        )
    }
}

/// `1/Q = ħc·a·r₀` in eV, with ħc in eV·Å and the Å dropped.
pub fn inverse_q(mol: &MoleculeParams) -> f64 {
    HBAR_C_EV_ANGSTROM * mol.width * mol.equilibrium_distance
}

/// The built-in registry file shipped with the crate.
pub const BUILTIN_REGISTRY: &str = include_str!("../data/molecules.csv");

/// A set of molecules keyed by case-insensitive name.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Registry {
    molecules: Vec<MoleculeParams>,
}

impl Registry {
    pub fn builtin() -> Self {
        Self::parse(BUILTIN_REGISTRY).expect("built-in registry is well formed")
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::Registry {
            line: 0,
            message: format!("cannot read {}: {e}", path.display()),
        })?;
        Self::parse(&text)
    }

    /// Parses `name,D_cm-1,a_A-1,r0_A,m0_amu` records; `#` starts a comment line.
    pub fn parse(text: &str) -> Result<Self> {
        let mut molecules: Vec<MoleculeParams> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            if fields.len() != 5 {
                return Err(Error::Registry {
                    line: line_no,
                    message: format!("expected 5 fields, found {}", fields.len()),
                });
            }
            let mut nums = [0.0; 4];
            for (slot, field) in nums.iter_mut().zip(&fields[1..]) {
                *slot = field.parse().map_err(|_| Error::Registry {
                    line: line_no,
                    message: format!("'{field}' is not a number"),
                })?;
            }
            let mol = MoleculeParams::new(fields[0], nums[0], nums[1], nums[2], nums[3]).map_err(
                |e| Error::Registry {
                    line: line_no,
                    message: e.to_string(),
                },
            )?;
            if molecules
                .iter()
                .any(|m| m.name.eq_ignore_ascii_case(&mol.name))
            {
                return Err(Error::Registry {
                    line: line_no,
                    message: format!("duplicate molecule '{}'", mol.name),
                });
            }
            molecules.push(mol);
        }
        Ok(Self { molecules })
    }

    pub fn lookup(&self, name: &str) -> Result<&MoleculeParams> {
        self.molecules
            .iter()
            .find(|m| m.name.eq_ignore_ascii_case(name.trim()))
            .ok_or_else(|| Error::UnknownMolecule {
                name: name.to_string(),
                available: self.names(),
            })
    }

    pub fn names(&self) -> Vec<String> {
        self.molecules.iter().map(|m| m.name.clone()).collect()
    }

    pub fn molecules(&self) -> &[MoleculeParams] {
        &self.molecules
    }

    pub fn len(&self) -> usize {
        self.molecules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.molecules.is_empty()
    }
}

/// Looks a molecule up in the built-in registry.
pub fn lookup_molecule(name: &str) -> Result<MoleculeParams> {
    Registry::builtin().lookup(name).cloned()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    // hc/e from the exact SI values of h, c and e.
    fn hc_ev_cm() -> f64 {
        let h = 6.626_070_15e-34;
        let c = 299_792_458.0;
        let e = 1.602_176_634e-19;
        h * c / e * 100.0
    }

    #[test]
    fn wavenumber_factor_matches_si_definition() {
        assert_relative_eq!(WAVENUMBER_EV, hc_ev_cm(), max_relative = 1e-9);
        let hbar_c = hc_ev_cm() / 100.0 / (2.0 * std::f64::consts::PI) * 1e10;
        assert_relative_eq!(HBAR_C_EV_ANGSTROM, hbar_c, max_relative = 1e-9);
    }

    #[test]
    fn wavenumber_conversion() {
        assert_eq!(wavenumber_to_energy(0.0_f64).unwrap(), 0.0);
        assert_relative_eq!(
            wavenumber_to_energy(38267.76_f64).unwrap(),
            4.744_597_548_163_58,
            max_relative = 1e-13
        );
        assert_relative_eq!(
            wavenumber_to_energy(20287.0_f64).unwrap(),
            2.515_267_432_940_80,
            max_relative = 1e-13
        );
        assert!(matches!(
            wavenumber_to_energy(-1.0_f64),
            Err(Error::Negative { .. })
        ));
    }

    #[test]
    fn amu_conversion() {
        assert_eq!(amu_to_rest_energy(0.0_f64).unwrap(), 0.0);
        assert_relative_eq!(
            amu_to_rest_energy(0.50391_f64).unwrap(),
            469.389_193_150_462,
            max_relative = 1e-13
        );
        assert_relative_eq!(
            amu_to_rest_energy(0.9801045_f64).unwrap(),
            912.961_561_505_303,
            max_relative = 1e-13
        );
        assert!(amu_to_rest_energy(-0.1_f64).is_err());
    }

    #[test]
    fn registry_holds_caption_constants() {
        let reg = Registry::builtin();
        assert_eq!(reg.names(), ["H2", "LiH", "HCl"]);
        let h2 = reg.lookup("h2").unwrap();
        assert_eq!(
            (
                h2.dissociation_energy,
                h2.width,
                h2.equilibrium_distance,
                h2.rest_mass
            ),
            (38267.76, 1.9426, 0.7416, 0.50391)
        );
        let hcl = lookup_molecule("HCl").unwrap();
        assert_eq!(
            (
                hcl.dissociation_energy,
                hcl.width,
                hcl.equilibrium_distance,
                hcl.rest_mass
            ),
            (37255.0, 1.8677, 1.2746, 0.9801045)
        );
        let lih = lookup_molecule("LIH").unwrap();
        assert_eq!(lih.rest_mass, 0.8801221);
    }

    #[test]
    fn unknown_molecule_lists_available() {
        let err = lookup_molecule("He2").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("He2") && msg.contains("H2, LiH, HCl"), "{msg}");
    }

    #[test]
    fn inverse_q_values() {
        let reg = Registry::builtin();
        let expect = [
            ("H2", 2_842.755_94),
            ("LiH", 3_551.563_61),
            ("HCl", 4_697.507_73),
        ];
        for (name, value) in expect {
            assert_relative_eq!(
                inverse_q(reg.lookup(name).unwrap()),
                value,
                max_relative = 1e-8
            );
        }
    }

    #[test]
    fn inverse_q_is_linear_in_width() {
        let h2 = lookup_molecule("H2").unwrap();
        let mut wide = h2.clone();
        wide.width *= 2.0;
        assert_relative_eq!(inverse_q(&wide), 2.0 * inverse_q(&h2), max_relative = 1e-15);
    }

    #[test]
    fn registry_parse_errors() {
        assert!(matches!(
            Registry::parse("X,1,2,3"),
            Err(Error::Registry { line: 1, .. })
        ));
        assert!(matches!(
            Registry::parse("# c\nX,1,2,3,abc"),
            Err(Error::Registry { line: 2, .. })
        ));
        assert!(matches!(
            Registry::parse("X,1,2,3,-4"),
            Err(Error::Registry { line: 1, .. })
        ));
        assert!(matches!(
            Registry::parse("X,1,2,3,4\nx,1,2,3,4"),
            Err(Error::Registry { line: 2, .. })
        ));
        let reg = Registry::parse("# only comments\n\n").unwrap();
        assert!(reg.is_empty());
    }
}
