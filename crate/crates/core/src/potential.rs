//! Generalized Morse potential, exponential mass profile and the reduction of
//! the Klein-Gordon equation to the `z = e^{-βx}` form.
//!
//! With `V_s(x) = V₁e^{-2βx} − V₂e^{-βx}` and `m(x) = m₀ + m₁e^{-βx}` the
//! equation for `φ(z) = √z ψ(z)` reads
//!
//! ```text
//! φ'' + (−A₃ + A₁/z² + A₂/z − A₄z − A₅z²) φ = 0
//! A₁ = Q²(E² − m₀²) + 1/4        A₂ = 2Q²(V₂m₀ − m₀m₁)
//! A₃ = Q²(V₂² + 2V₁m₀ − 2V₂m₁ + m₁²)
//! A₄ = 2Q²(V₁V₂ − V₁m₁)          A₅ = Q²V₁²
//! ```
//!
//! All energies (V₁, V₂, m₀c², m₁c², E, 1/Q) share one unit chosen by the
//! caller; the molecular helpers use MeV.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{cx, Real};
use crate::units::{MoleculeParams, EV_PER_MEV};

/// Which sign to use for the Gaussian-exponent parameter `p`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SignConvention {
    /// `p = −Q(V₂ − m₁c²)`, `q = −QV₁`: satisfies both `q² = A₅` and `2pq = A₄`.
    #[default]
    Consistent,
    /// `p = +Q(V₂ − m₁c²)`, `q = −QV₁`, the literal form; gives `2pq = −A₄`.
    PaperSigns,
}

/// Generalized Morse parameters `V₁`, `V₂` (possibly complex) and `β`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PotentialSpec<T> {
    v1: Complex<T>,
    v2: Complex<T>,
    beta: T,
    is_real: bool,
}

impl<T: Real> PotentialSpec<T> {
    pub fn new(v1: Complex<T>, v2: Complex<T>, beta: T) -> Result<Self> {
        if !(beta > T::zero() && beta.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "beta must be positive and finite, got {beta}"
            )));
        }
        if v1.norm_sqr() == T::zero() {
            return Err(Error::DegeneratePotential("V1 = 0".into()));
        }
        if ![v1.re, v1.im, v2.re, v2.im].iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidParameter("V1, V2 must be finite".into()));
        }
        let is_real = v1.im == T::zero() && v2.im == T::zero();
        Ok(Self {
            v1,
            v2,
            beta,
            is_real,
        })
    }

    pub fn real(v1: T, v2: T, beta: T) -> Result<Self> {
        Self::new(cx(v1), cx(v2), beta)
    }

    pub fn v1(&self) -> Complex<T> {
        self.v1
    }

    pub fn v2(&self) -> Complex<T> {
        self.v2
    }

    pub fn beta(&self) -> T {
        self.beta
    }

    pub fn is_real(&self) -> bool {
        self.is_real
    }

    /// `V_s(x) = V₁e^{-2βx} − V₂e^{-βx}`.
    pub fn value_at(&self, x: T) -> Complex<T> {
        let e = (-self.beta * x).exp();
        self.v1 * (e * e) - self.v2 * e
    }
}

/// Exponential mass profile `m(x)c² = m₀c² + m₁c²e^{-βx}`, stored as rest energies.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MassModel<T> {
    m0_energy: T,
    m1_energy: T,
}

impl<T: Real> MassModel<T> {
    pub fn new(m0_energy: T, m1_energy: T) -> Result<Self> {
        if !(m0_energy > T::zero() && m0_energy.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "m0c^2 must be positive, got {m0_energy}"
            )));
        }
        if !m1_energy.is_finite() || m0_energy + m1_energy.min(T::zero()) <= T::zero() {
            return Err(Error::InvalidParameter(format!(
                "mass profile not positive on x >= 0: m0c^2 = {m0_energy}, m1c^2 = {m1_energy}"
            )));
        }
        Ok(Self {
            m0_energy,
            m1_energy,
        })
    }

    pub fn constant(m0_energy: T) -> Result<Self> {
        Self::new(m0_energy, T::zero())
    }

    pub fn m0_energy(&self) -> T {
        self.m0_energy
    }

    pub fn m1_energy(&self) -> T {
        self.m1_energy
    }

    pub fn is_constant(&self) -> bool {
        self.m1_energy == T::zero()
    }

    pub fn with_m1(&self, m1_energy: T) -> Result<Self> {
        Self::new(self.m0_energy, m1_energy)
    }

    pub fn energy_at(&self, x: T, beta: T) -> T {
        self.m0_energy + self.m1_energy * (-beta * x).exp()
    }
}

/// Coefficients of the transformed equation at a fixed energy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReducedParams<T> {
    pub q_inv: T,
    pub a1: Complex<T>,
    pub a2: Complex<T>,
    pub a3: Complex<T>,
    pub a4: Complex<T>,
    pub a5: Complex<T>,
    pub p: Complex<T>,
    pub q: Complex<T>,
    /// `A₁` carries `E²`; the other coefficients do not.
    pub energy_dependent: bool,
    pub signs: SignConvention,
}

impl<T: Real> ReducedParams<T> {
    /// `L² = A₁ − 1/4 = Q²(E² − m₀²c⁴)`.
    pub fn l_squared(&self) -> Complex<T> {
        self.a1 - cx(T::lit(0.25))
    }

    pub fn q_scale(&self) -> T {
        self.q_inv.recip()
    }
}

/// Standard Morse identification `V₁ = D`, `V₂ = 2D`: minimum `−D` at `x = 0`.
pub fn morse_from_dissociation<T: Real>(d: T, beta: T) -> Result<PotentialSpec<T>> {
    if !(d > T::zero() && d.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "dissociation energy must be positive, got {d}"
        )));
    }
    PotentialSpec::real(d, d + d, beta)
}

/// Complex parameterization `V₁ = (υ₁ + iυ₂)²`, `V₂ = (υ₁ + iυ₂)(1 + 2υ₃)`, `β = 1`.
pub fn complex_potential_params<T: Real>(u1: T, u2: T, u3: T) -> Result<PotentialSpec<T>> {
    if u1 == T::zero() && u2 == T::zero() {
        return Err(Error::DegeneratePotential(
            "u1 = u2 = 0 gives V1 = 0".into(),
        ));
    }
    let w = Complex::new(u1, u2);
    let two = T::lit(2.0);
    PotentialSpec::new(w * w, w * (T::one() + two * u3), T::one())
}

/// Builds `A₁…A₅`, `p`, `q` at energy `e`; `q_inv` is `1/Q`.
pub fn reduce<T: Real>(
    pot: &PotentialSpec<T>,
    mass: &MassModel<T>,
    q_inv: T,
    e: Complex<T>,
) -> ReducedParams<T> {
    reduce_with(pot, mass, q_inv, e, SignConvention::Consistent)
}

pub fn reduce_with<T: Real>(
    pot: &PotentialSpec<T>,
    mass: &MassModel<T>,
    q_inv: T,
    e: Complex<T>,
    signs: SignConvention,
) -> ReducedParams<T> {
    let q_scale = q_inv.recip();
    let q2 = q_scale * q_scale;
    let two = T::lit(2.0);
    let (v1, v2) = (pot.v1, pot.v2);
    let m0 = mass.m0_energy;
    let m1 = mass.m1_energy;

    let a1 = (e * e - cx(m0 * m0)) * q2 + cx(T::lit(0.25));
    let a2 = cx(two * q2 * (-m0 * m1)) + v2 * (two * q2 * m0);
    let a3 = (v2 * v2 + v1 * (two * m0) - v2 * (two * m1) + cx(m1 * m1)) * q2;
    let a4 = (v1 * v2 - v1 * m1) * (two * q2);
    let a5 = v1 * v1 * q2;

    let q = -v1 * q_scale;
    let p = match signs {
        SignConvention::Consistent => -(v2 - m1) * q_scale,
        SignConvention::PaperSigns => (v2 - m1) * q_scale,
    };

    ReducedParams {
        q_inv,
        a1,
        a2,
        a3,
        a4,
        a5,
        p,
        q,
        energy_dependent: true,
        signs,
    }
}

/// The x-space coupling `U(x)` of the real equation `−ψ'' − U(x)ψ = λψ`,
/// `λ = Q²β²(E² − m₀²c⁴)`.
///
/// `U(x) = Σₖ cₖ e^{-kβx}` for k = 1..4, each coefficient scaled by `Q²β²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinePotential<T> {
    beta: T,
    coefficients: [T; 4],
}

impl<T: Real> LinePotential<T> {
    pub fn coefficients(&self) -> [T; 4] {
        self.coefficients
    }

    pub fn beta(&self) -> T {
        self.beta
    }

    pub fn eval(&self, x: T) -> T {
        let e = (-self.beta * x).exp();
        // Horner in e, highest power first.
        let [c1, c2, c3, c4] = self.coefficients;
        (((c4 * e + c3) * e + c2) * e + c1) * e
    }

    /// Largest `|cₖ|` at x = 0, used for domain truncation.
    pub fn magnitude_at_origin(&self) -> T {
        self.coefficients
            .iter()
            .fold(T::zero(), |acc, c| acc.max(c.abs()))
    }
}

pub fn effective_line_potential<T: Real>(
    pot: &PotentialSpec<T>,
    mass: &MassModel<T>,
    q_inv: T,
) -> Result<LinePotential<T>> {
    if !pot.is_real {
        return Err(Error::Unsupported(
            "the finite-difference equation needs a real potential".into(),
        ));
    }
    let scale = (pot.beta / q_inv).powi(2);
    let two = T::lit(2.0);
    let (v1, v2) = (pot.v1.re, pot.v2.re);
    let (m0, m1) = (mass.m0_energy, mass.m1_energy);
    let coefficients = [
        scale * two * (v2 * m0 - m0 * m1),
        -scale * (v2 * v2 + two * v1 * m0 - two * v2 * m1 + m1 * m1),
        scale * two * (v1 * v2 - v1 * m1),
        -scale * v1 * v1,
    ];
    Ok(LinePotential {
        beta: pot.beta,
        coefficients,
    })
}

/// Potential, mass profile and `1/Q` bundled together.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MorseSystem<T> {
    pub potential: PotentialSpec<T>,
    pub mass: MassModel<T>,
    pub q_inv: T,
}

impl<T: Real> MorseSystem<T> {
    pub fn new(potential: PotentialSpec<T>, mass: MassModel<T>, q_inv: T) -> Result<Self> {
        if !(q_inv > T::zero() && q_inv.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "1/Q must be positive, got {q_inv}"
            )));
        }
        Ok(Self {
            potential,
            mass,
            q_inv,
        })
    }

    /// Morse map `V₁ = D`, `V₂ = 2D`, `β = a·r₀`, energies in MeV, with `m₁c² = m1_energy`.
    pub fn from_molecule(mol: &MoleculeParams, m1_energy: T) -> Result<Self> {
        let mev = |ev: f64| T::lit(ev / EV_PER_MEV);
        let potential =
            morse_from_dissociation(mev(mol.dissociation_energy_ev()), T::lit(mol.beta()))?;
        let mass = MassModel::new(T::lit(mol.rest_energy_mev()), m1_energy)?;
        Self::new(potential, mass, mev(crate::units::inverse_q(mol)))
    }

    pub fn with_m1(&self, m1_energy: T) -> Result<Self> {
        Self::new(self.potential, self.mass.with_m1(m1_energy)?, self.q_inv)
    }

    pub fn reduce(&self, e: Complex<T>, signs: SignConvention) -> ReducedParams<T> {
        reduce_with(&self.potential, &self.mass, self.q_inv, e, signs)
    }

    /// Stable 64-bit digest of every parameter (FNV-1a over the f64 bit patterns).
    pub fn fingerprint(&self) -> u64 {
        let words = [
            self.potential.v1.re,
            self.potential.v1.im,
            self.potential.v2.re,
            self.potential.v2.im,
            self.potential.beta,
            self.mass.m0_energy,
            self.mass.m1_energy,
            self.q_inv,
        ];
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for w in words {
            for b in w.as_f64().to_bits().to_le_bytes() {
                h ^= u64::from(b);
                h = h.wrapping_mul(0x0000_0100_0000_01b3);
            }
        }
        h
    }
}
