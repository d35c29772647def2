//! Closed-form energy levels.
//!
//! Every formula here has the shape `E = ±√R`; the principal square root is
//! taken first and the branch sign applied afterwards, so the antiparticle
//! level is the exact negation of the particle level.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::potential::{MassModel, MorseSystem, ReducedParams, SignConvention};
use crate::scalar::{cx, Real};

/// Particle (+) or antiparticle (−) root.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Particle,
    Antiparticle,
}

impl Branch {
    pub const BOTH: [Branch; 2] = [Branch::Particle, Branch::Antiparticle];

    pub fn apply<T: Real>(self, root: Complex<T>) -> Complex<T> {
        match self {
            Branch::Particle => root,
            Branch::Antiparticle => -root,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Branch::Particle => '+',
            Branch::Antiparticle => '-',
        }
    }
}

/// Which closed form produced a level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LevelSource {
    PdmReal,
    ConstMassReal,
    PdmComplex,
    ConstMassComplex,
    SpecialCase,
}

impl LevelSource {
    pub fn as_str(self) -> &'static str {
        match self {
            LevelSource::PdmReal => "pdm-real",
            LevelSource::ConstMassReal => "const-mass-real",
            LevelSource::PdmComplex => "pdm-complex",
            LevelSource::ConstMassComplex => "const-mass-complex",
            LevelSource::SpecialCase => "special-case",
        }
    }
}

/// One energy level with its leading-power parameter `L`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuantizedLevel<T> {
    pub n: usize,
    pub branch: Branch,
    pub energy: Complex<T>,
    pub l: Complex<T>,
    pub source: LevelSource,
    /// Real-mode formula whose radicand went negative; `energy` is then imaginary.
    pub negative_radicand: bool,
    /// Fingerprint of the inputs, see [`MorseSystem::fingerprint`].
    pub provenance: u64,
}

impl<T: Real> QuantizedLevel<T> {
    pub fn is_real(&self) -> bool {
        self.energy.im == T::zero()
    }
}

/// `Ṽ₁ = V₂²/(2V₁) + m₀c²` and `Ṽ₂ = −V₂/V₁ + m₁c²/(2V₁)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TildeParams<T> {
    pub v1_tilde: Complex<T>,
    pub v2_tilde: Complex<T>,
}

impl<T: Real> TildeParams<T> {
    pub fn from_system(sys: &MorseSystem<T>) -> Self {
        let (v1, v2) = (sys.potential.v1(), sys.potential.v2());
        let two = T::lit(2.0);
        let m0 = sys.mass.m0_energy();
        let m1 = sys.mass.m1_energy();
        Self {
            v1_tilde: v2 * v2 / (v1 * two) + m0,
            v2_tilde: -v2 / v1 + cx(m1) / (v1 * two),
        }
    }

    /// The primed pair for the complex parameterization, taken literally:
    /// `Ṽ′₁ = 2(υ₃+1)²/2 + m₀c²` (read as `(υ₃+1)² + m₀c²`) and
    /// `Ṽ′₂ = (2υ₃+1)/(υ₁+iυ₂) + m₁c²/(2(υ₁+iυ₂)²)`.
    pub fn from_complex_case(case: &ComplexCase<T>, mass: &MassModel<T>) -> Self {
        let w = case.w();
        let two = T::lit(2.0);
        let u3p1 = case.u3 + T::one();
        Self {
            v1_tilde: cx(u3p1 * u3p1 + mass.m0_energy()),
            v2_tilde: cx(two * case.u3 + T::one()) / w + cx(mass.m1_energy()) / (w * w * two),
        }
    }
}

/// Real inputs `υ₁, υ₂, υ₃` of the complex potential and the scale `Q′`.
///
/// `Q′` is given as `1/ħ²c²`, which does not fit its use as a
/// dimension-matching scale; it defaults to 1 (natural units).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexCase<T> {
    pub u1: T,
    pub u2: T,
    pub u3: T,
    pub q_prime: T,
}

impl<T: Real> ComplexCase<T> {
    pub fn new(u1: T, u2: T, u3: T) -> Result<Self> {
        Self::with_q_prime(u1, u2, u3, T::one())
    }

    pub fn with_q_prime(u1: T, u2: T, u3: T, q_prime: T) -> Result<Self> {
        if u1 == T::zero() && u2 == T::zero() {
            return Err(Error::DegeneratePotential(
                "u1 = u2 = 0 gives V1 = 0".into(),
            ));
        }
        if !(q_prime > T::zero() && q_prime.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "Q' must be positive, got {q_prime}"
            )));
        }
        Ok(Self {
            u1,
            u2,
            u3,
            q_prime,
        })
    }

    fn w(&self) -> Complex<T> {
        Complex::new(self.u1, self.u2)
    }

    fn fingerprint(&self, mass: &MassModel<T>) -> u64 {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for w in [
            self.u1,
            self.u2,
            self.u3,
            self.q_prime,
            mass.m0_energy(),
            mass.m1_energy(),
        ] {
            for b in w.as_f64().to_bits().to_le_bytes() {
                h ^= u64::from(b);
                h = h.wrapping_mul(0x0000_0100_0000_01b3);
            }
        }
        h
    }
}

/// How to read the constant-mass formula of the complex case.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ComplexReading {
    /// Primed `Ṽ′₁` in both places.
    #[default]
    Consistent,
    /// Unprimed `Ṽ₁` (from `V₁`, `V₂` of the complex potential) in the radicand, read literally.
    StrictLiteral,
}

/// Solves `2q(2n + L + 1) = A₃` for `L`.
pub fn quantization_l<T: Real>(n: usize, rp: &ReducedParams<T>) -> Result<Complex<T>> {
    if rp.q.norm_sqr() == T::zero() {
        return Err(Error::DegeneratePotential("q = 0".into()));
    }
    let two = T::lit(2.0);
    let level = two * T::from_count(n) + T::one();
    Ok(rp.a3 / (rp.q * two) - level)
}

/// `E = ±√(m₀²c⁴ + L²/Q²)`.
pub fn energy_from_l<T: Real>(l: Complex<T>, m0c2: T, q_inv: T, branch: Branch) -> Complex<T> {
    branch.apply((l * l * (q_inv * q_inv) + m0c2 * m0c2).sqrt())
}

/// Energy through the quantization route: `L` from the truncation condition, then `E(L)`.
pub fn energy_via_quantization<T: Real>(
    n: usize,
    sys: &MorseSystem<T>,
    branch: Branch,
) -> Result<Complex<T>> {
    let rp = sys.reduce(Complex::default(), SignConvention::Consistent);
    let l = quantization_l(n, &rp)?;
    Ok(energy_from_l(l, sys.mass.m0_energy(), sys.q_inv, branch))
}

/// Radicand of the position-dependent-mass formula for scale `q` (i.e. `Q`).
fn pdm_radicand<T: Real>(n: usize, m0: T, m1: T, q: T, tilde: &TildeParams<T>) -> Complex<T> {
    let two = T::lit(2.0);
    let odd = two * T::from_count(n) + T::one();
    let k = tilde.v1_tilde * q + odd;
    let mixed = tilde.v2_tilde * m1;
    let bracket = tilde.v1_tilde * (two * q) + mixed * q + two * odd;
    k * k / (q * q) + mixed / q * bracket + m0 * m0
}

fn radicand_is_negative<T: Real>(r: Complex<T>) -> bool {
    r.re < T::zero() && r.im == T::zero()
}

fn leading_power_l<T: Real>(n: usize, sys: &MorseSystem<T>) -> Complex<T> {
    // q = −QV₁ ≠ 0 by construction of PotentialSpec.
    let rp = sys.reduce(Complex::default(), SignConvention::Consistent);
    quantization_l(n, &rp).expect("V1 != 0 guarantees q != 0")
}

/// Position-dependent-mass spectrum
/// `E = ±{m₀² + [2n+1+QṼ₁]²/Q² + (m₁Ṽ₂/Q)[2(2n+1) + 2QṼ₁ + Qm₁Ṽ₂]}^{1/2}`.
pub fn pdm_energy<T: Real>(n: usize, sys: &MorseSystem<T>, branch: Branch) -> QuantizedLevel<T> {
    let tilde = TildeParams::from_system(sys);
    let r = pdm_radicand(
        n,
        sys.mass.m0_energy(),
        sys.mass.m1_energy(),
        sys.q_inv.recip(),
        &tilde,
    );
    let real = sys.potential.is_real();
    QuantizedLevel {
        n,
        branch,
        energy: branch.apply(r.sqrt()),
        l: leading_power_l(n, sys),
        source: if real {
            LevelSource::PdmReal
        } else {
            LevelSource::PdmComplex
        },
        negative_radicand: real && radicand_is_negative(r),
        provenance: sys.fingerprint(),
    }
}

/// Constant-mass spectrum `E = ±(2n+1+QṼ₁)·√(1/Q² + (m₀c²/(2n+1+QṼ₁))²)`.
///
/// Only `m₀` of the mass model is used.
pub fn constant_mass_energy<T: Real>(
    n: usize,
    sys: &MorseSystem<T>,
    branch: Branch,
) -> Result<QuantizedLevel<T>> {
    if !sys.potential.is_real() {
        return Err(Error::Unsupported(
            "constant_mass_energy needs a real potential; use complex_constant_mass_energy".into(),
        ));
    }
    let constant = sys.with_m1(T::zero())?;
    let tilde = TildeParams::from_system(&constant);
    let q = sys.q_inv.recip();
    let two = T::lit(2.0);
    let k = tilde.v1_tilde.re * q + two * T::from_count(n) + T::one();
    let m0 = sys.mass.m0_energy();
    let root = k * (sys.q_inv * sys.q_inv + (m0 / k).powi(2)).sqrt();
    Ok(QuantizedLevel {
        n,
        branch,
        energy: branch.apply(cx(root)),
        l: leading_power_l(n, &constant),
        source: LevelSource::ConstMassReal,
        negative_radicand: false,
        provenance: constant.fingerprint(),
    })
}

/// Complex-potential spectrum: the position-dependent-mass formula with `Q′`, `Ṽ′₁`, `Ṽ′₂`.
pub fn complex_energy<T: Real>(
    n: usize,
    case: &ComplexCase<T>,
    mass: &MassModel<T>,
    branch: Branch,
) -> QuantizedLevel<T> {
    let tilde = TildeParams::from_complex_case(case, mass);
    let r = pdm_radicand(n, mass.m0_energy(), mass.m1_energy(), case.q_prime, &tilde);
    QuantizedLevel {
        n,
        branch,
        energy: branch.apply(r.sqrt()),
        l: complex_l(n, case, &tilde, mass.m1_energy()),
        source: LevelSource::PdmComplex,
        negative_radicand: false,
        provenance: case.fingerprint(mass),
    }
}

// L = −(2n+1 + Q′Ṽ′₁ + Q′m₁Ṽ′₂), which gives E² = m₀² + L²/Q′².
fn complex_l<T: Real>(
    n: usize,
    case: &ComplexCase<T>,
    tilde: &TildeParams<T>,
    m1: T,
) -> Complex<T> {
    let odd = T::lit(2.0) * T::from_count(n) + T::one();
    -(tilde.v1_tilde * case.q_prime + tilde.v2_tilde * (case.q_prime * m1) + odd)
}

/// Constant-mass spectrum of the complex potential.
pub fn complex_constant_mass_energy<T: Real>(
    n: usize,
    case: &ComplexCase<T>,
    m0c2: T,
    branch: Branch,
    reading: ComplexReading,
) -> Result<QuantizedLevel<T>> {
    let mass = MassModel::constant(m0c2)?;
    let tilde = TildeParams::from_complex_case(case, &mass);
    let two = T::lit(2.0);
    let odd = two * T::from_count(n) + T::one();
    let qp = case.q_prime;
    let k = tilde.v1_tilde * qp + odd;
    let k_inner = match reading {
        ComplexReading::Consistent => k,
        ComplexReading::StrictLiteral => {
            let w = case.w();
            let v1 = w * w;
            let v2 = w * (T::one() + two * case.u3);
            (v2 * v2 / (v1 * two) + m0c2) * qp + odd
        }
    };
    let inner = (cx(m0c2) / k_inner).powi(2) + qp.powi(2).recip();
    Ok(QuantizedLevel {
        n,
        branch,
        energy: branch.apply(k * inner.sqrt()),
        l: complex_l(n, case, &tilde, T::zero()),
        source: LevelSource::ConstMassComplex,
        negative_radicand: false,
        provenance: case.fingerprint(&mass),
    })
}

/// Relative tolerance for the `V₂ = m₁c²` precondition of the special case.
pub const SPECIAL_CASE_TOLERANCE: f64 = 1e-9;

/// Spectrum of the reduced equation with `A₂ = A₄ = 0` (requires `V₂ = m₁c²`):
///
/// ```text
/// ε = ∓{m₀² + 4Q²(m₁c² + m₀c²)²[2n+1+√(1/4 − V₁²Q²)]^{-2} − 1/(4Q²)}^{1/2}
/// ```
///
/// `4c²/(β²ħ²)` is read as `4Q²` in energy units. The particle branch carries
/// the leading minus sign.
pub fn special_case_energy<T: Real>(
    n: usize,
    sys: &MorseSystem<T>,
    branch: Branch,
) -> Result<QuantizedLevel<T>> {
    let v2 = sys.potential.v2();
    let m1 = sys.mass.m1_energy();
    let scale = v2.norm().max(m1.abs());
    if (v2 - m1).norm() > T::lit(SPECIAL_CASE_TOLERANCE) * scale {
        return Err(Error::SpecialCaseNotApplicable {
            v2: v2.re.as_f64(),
            m1c2: m1.as_f64(),
        });
    }
    let q = sys.q_inv.recip();
    let two = T::lit(2.0);
    let four = T::lit(4.0);
    let m0 = sys.mass.m0_energy();
    let v1q = sys.potential.v1() * q;
    let root = (cx(T::lit(0.25)) - v1q * v1q).sqrt();
    let bracket = root + two * T::from_count(n) + T::one();
    let r = (cx(four * q * q * (m1 + m0).powi(2)) / (bracket * bracket))
        + (m0 * m0 - (four * q * q).recip());
    let energy = -branch.apply(r.sqrt());
    let l = ((energy * energy - m0 * m0) * (q * q)).sqrt();
    Ok(QuantizedLevel {
        n,
        branch,
        energy,
        l,
        source: LevelSource::SpecialCase,
        negative_radicand: sys.potential.is_real() && radicand_is_negative(r),
        provenance: sys.fingerprint(),
    })
}
