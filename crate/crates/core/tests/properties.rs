use morsekg::units::{energy_to_wavenumber, HBAR_C_EV_ANGSTROM};
use morsekg::wavefunction::build_series;
use morsekg::{
    complex_potential_params, effective_line_potential, evaluate_phi, evaluate_psi, inverse_q,
    pdm_energy, quantization_l, recurrence_row, wavenumber_to_energy, Branch, Complex, MassModel,
    MoleculeParams, MorseSystem, PotentialSpec, SignConvention,
};
use proptest::prelude::*;

fn system() -> impl Strategy<Value = MorseSystem<f64>> {
    (
        0.05..10.0f64,
        -10.0..10.0f64,
        0.2..3.0f64,
        0.1..10.0f64,
        -0.9..5.0f64,
        0.1..10.0f64,
    )
        .prop_map(|(v1, v2, beta, m0, m1_frac, q_inv)| {
            let pot = PotentialSpec::real(v1, v2, beta).unwrap();
            let mass = MassModel::new(m0, m1_frac * m0).unwrap();
            MorseSystem::new(pot, mass, q_inv).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn wavenumber_round_trip(w in 1e-3..1e6f64) {
        let back = energy_to_wavenumber(wavenumber_to_energy(w).unwrap()).unwrap();
        prop_assert!(((back - w) / w).abs() < 1e-14);
    }

    #[test]
    fn inverse_q_is_bilinear(a in 0.1..5.0f64, r0 in 0.2..4.0f64, k in 0.1..10.0f64) {
        let mol = |a, r0| MoleculeParams::new("X", 1000.0, a, r0, 1.0).unwrap();
        let base = inverse_q(&mol(a, r0));
        prop_assert!((base - HBAR_C_EV_ANGSTROM * a * r0).abs() <= 1e-12 * base);
        prop_assert!((inverse_q(&mol(k * a, r0)) - k * base).abs() <= 1e-12 * k * base);
        prop_assert!((inverse_q(&mol(a, k * r0)) - k * base).abs() <= 1e-12 * k * base);
    }

    #[test]
    fn line_potential_matches_direct_form(sys in system(), x in 0.0..8.0f64) {
        // U = -Q²β²[(m(x) + V(x))² - m₀²] from the squared effective mass.
        let u = effective_line_potential(&sys.potential, &sys.mass, sys.q_inv).unwrap();
        let beta = sys.potential.beta();
        let m = sys.mass.energy_at(x, beta) + sys.potential.value_at(x).re;
        let m0 = sys.mass.m0_energy();
        let scale = (beta / sys.q_inv).powi(2);
        let direct = -scale * (m * m - m0 * m0);
        let size = scale * (m * m + m0 * m0);
        prop_assert!((u.eval(x) - direct).abs() <= 1e-12 * size.max(f64::MIN_POSITIVE));
    }

    #[test]
    fn sign_contract(sys in system(), n in 0usize..30) {
        let plus = pdm_energy(n, &sys, Branch::Particle).energy;
        let minus = pdm_energy(n, &sys, Branch::Antiparticle).energy;
        prop_assert_eq!(minus, -plus);
        prop_assert!(plus.re >= sys.mass.m0_energy() * (1.0 - 1e-15));
        let rp = sys.reduce(plus, SignConvention::Consistent);
        let alt = sys.reduce(plus, SignConvention::PaperSigns);
        prop_assert_eq!(alt.p, -rp.p);
        prop_assert_eq!(alt.q, rp.q);
    }

    #[test]
    fn real_parameterization_stays_real(u1 in 0.05..3.0f64, u3 in -3.0..3.0f64) {
        let pot = complex_potential_params(u1, 0.0, u3).unwrap();
        prop_assert!(pot.is_real());
        prop_assert_eq!(pot.v1().im, 0.0);
        prop_assert_eq!(pot.v2().im, 0.0);
    }

    #[test]
    fn recurrence_rows_are_consistent(sys in system(), n in 0usize..10) {
        let e = pdm_energy(n, &sys, Branch::Particle).energy;
        let rp = sys.reduce(e, SignConvention::Consistent);
        let l = quantization_l(n, &rp).unwrap();
        // The quantized L kills X_n.
        let x = recurrence_row(n, &rp, l).x;
        prop_assert!(x.norm() <= 1e-12 * (rp.a3.norm() + (rp.q * l).norm()));
        // L² = A₁ − 1/4 at the closed-form energy.
        prop_assert!((l * l - rp.l_squared()).norm() <= 1e-10 * (l * l).norm().max(1.0));
    }

    #[test]
    fn psi_is_phi_over_sqrt_z(
        l in -2.0..2.0f64, p in -2.0..2.0f64, q in -2.0..0.0f64,
        a1 in -1.0..1.0f64, a2 in -1.0..1.0f64, x in 0.05..6.0f64, beta in 0.3..2.0f64,
    ) {
        let c = |v: f64| Complex::new(v, 0.0);
        let ws = morsekg::WavefunctionSeries::from_parts(c(p), c(q), c(l), vec![c(1.0), c(a1), c(a2)]);
        let z = (-beta * x).exp();
        let phi = evaluate_phi(&ws, c(z)).unwrap();
        let psi = evaluate_psi(&ws, x, beta).unwrap();
        prop_assert!((psi * z.sqrt() - phi).norm() <= 1e-13 * phi.norm().max(1e-300));
    }

    #[test]
    fn build_series_is_linear_in_a0(sys in system(), n in 1usize..8) {
        let e = pdm_energy(n, &sys, Branch::Particle).energy;
        let rp = sys.reduce(e, SignConvention::Consistent);
        let l = quantization_l(n, &rp).unwrap();
        let ws = build_series(&rp, l, n).unwrap();
        prop_assert_eq!(ws.coefficients.len(), n + 1);
        prop_assert_eq!(ws.coefficients[0], Complex::new(1.0, 0.0));
        let scaled = ws.scaled(3.0);
        for (a, b) in ws.coefficients.iter().zip(&scaled.coefficients) {
            prop_assert!((a * 3.0 - b).norm() <= 1e-15 * b.norm());
        }
    }
}
