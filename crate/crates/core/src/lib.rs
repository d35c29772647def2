//! Bound states of the one-dimensional effective-mass Klein-Gordon equation
//! with a generalized Morse scalar potential `V₁e^{-2βx} − V₂e^{-βx}` and a
//! mass profile `m₀ + m₁e^{-βx}`.
//!
//! * [`units`]: constants, conversions and the molecule registry.
//! * [`potential`]: parameters and the reduction to the `z = e^{-βx}` equation.
//! * [`spectrum`]: closed-form energies (position-dependent and constant mass,
//!   real and complex potentials, the `A₂ = A₄ = 0` case).
//! * [`wavefunction`]: series coefficients, determinant residuals, `φ`, `ψ`.
//! * [`oracle`]: an independent finite-difference eigensolver.
//! * [`report`]: the table, sweep and comparison products behind the CLI.
//!
//! Everything numeric is generic over [`Real`] (`f32`, `f64`); the `*F64`
//! and `*F32` aliases below fix the scalar.

pub mod error;
pub mod oracle;
pub mod potential;
pub mod quadrature;
pub mod report;
pub mod scalar;
pub mod spectrum;
pub mod units;
pub mod wavefunction;

pub use error::{Error, Result};
pub use num_complex::Complex;
pub use oracle::{compare_report, solve_effective, validate_oracle, GridSpec, OracleResult};
pub use potential::{
    complex_potential_params, effective_line_potential, morse_from_dissociation, reduce,
    reduce_with, MassModel, MorseSystem, PotentialSpec, ReducedParams, SignConvention,
};
pub use scalar::Real;
pub use spectrum::{
    complex_constant_mass_energy, complex_energy, constant_mass_energy, energy_from_l,
    energy_via_quantization, pdm_energy, quantization_l, special_case_energy, Branch, ComplexCase,
    ComplexReading, LevelSource, QuantizedLevel, TildeParams,
};
pub use units::{
    amu_to_rest_energy, inverse_q, lookup_molecule, wavenumber_to_energy, MoleculeParams,
    PhysicalConstants, Registry,
};
pub use wavefunction::{
    build_series, determinant_residual, evaluate_phi, evaluate_psi, normalize_numeric,
    recurrence_row, RecurrenceRow, WavefunctionSeries,
};

pub type PotentialSpecF64 = PotentialSpec<f64>;
pub type PotentialSpecF32 = PotentialSpec<f32>;
pub type MassModelF64 = MassModel<f64>;
pub type MassModelF32 = MassModel<f32>;
pub type MorseSystemF64 = MorseSystem<f64>;
pub type MorseSystemF32 = MorseSystem<f32>;
pub type ReducedParamsF64 = ReducedParams<f64>;
pub type ReducedParamsF32 = ReducedParams<f32>;
pub type QuantizedLevelF64 = QuantizedLevel<f64>;
pub type QuantizedLevelF32 = QuantizedLevel<f32>;
pub type WavefunctionSeriesF64 = WavefunctionSeries<f64>;
pub type WavefunctionSeriesF32 = WavefunctionSeries<f32>;
pub type OracleResultF64 = OracleResult<f64>;
pub type GridSpecF64 = GridSpec<f64>;
pub type Complex64 = Complex<f64>;
pub type Complex32 = Complex<f32>;
