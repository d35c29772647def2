use morsekg::wavefunction::{build_series, determinant_residual};
use morsekg::{
    constant_mass_energy, evaluate_phi, pdm_energy, quantization_l, special_case_energy, Branch,
    Complex, MassModel, MorseSystem, PotentialSpec, ReducedParams, SignConvention,
    WavefunctionSeries,
};
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type C = Complex<f64>;

fn desk(v1: f64, v2: f64, m0: f64, m1: f64) -> MorseSystem<f64> {
    let pot = PotentialSpec::real(v1, v2, 1.0).unwrap();
    MorseSystem::new(pot, MassModel::new(m0, m1).unwrap(), 1.0).unwrap()
}

// Banded system of the recurrence: row k reads X_{k-1}a_{k-1} + Y_k a_k + Z_{k+1}a_{k+1}.
fn banded(rp: &ReducedParams<f64>, l: C, size: usize) -> DMatrix<C> {
    let k = |i: usize| i as f64;
    let x = |i: usize| 2.0 * rp.q * (2.0 * k(i) + l + 1.0) - rp.a3;
    let y = |i: usize| rp.a2 + rp.p * (4.0 * k(i) + 2.0 * l + 1.0);
    let z = |i: usize| 4.0 * k(i) * (k(i) + l) + 2.0 * l * l;
    DMatrix::from_fn(size, size, |r, c| {
        if c == r {
            y(r)
        } else if c == r + 1 {
            z(c)
        } else if r == c + 1 {
            x(c)
        } else {
            C::new(0.0, 0.0)
        }
    })
}

#[test]
fn series_matches_dense_solve() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..50 {
        let sys = desk(
            rng.gen_range(0.3..3.0),
            rng.gen_range(-3.0..3.0),
            rng.gen_range(0.5..2.0),
            rng.gen_range(-0.4..1.0),
        );
        let n = rng.gen_range(1..=12);
        let e = pdm_energy(n, &sys, Branch::Particle).energy;
        let rp = sys.reduce(e, SignConvention::Consistent);
        let l = quantization_l(n, &rp).unwrap();
        let ws = build_series(&rp, l, n).unwrap();

        // Rows 0..n-1 with a0 = 1 moved to the right-hand side.
        let m = banded(&rp, l, n + 1);
        let lhs = m.view((0, 1), (n, n)).into_owned();
        let rhs = DVector::from_iterator(n, (0..n).map(|r| -m[(r, 0)]));
        let sol = lhs.lu().solve(&rhs).expect("nonsingular");
        let scale = ws.coefficients.iter().fold(1.0f64, |s, a| s.max(a.norm()));
        for k in 1..=n {
            let diff = (sol[k - 1] - ws.coefficients[k]).norm();
            assert!(
                diff <= 1e-9 * scale,
                "n={n} k={k}: {} vs {}",
                sol[k - 1],
                ws.coefficients[k]
            );
        }
    }
}

#[test]
fn truncated_series_spans_the_nullspace() {
    // Root in m1 of det for level 2 at fixed V2, bisected on the real determinant.
    let n = 2;
    let det = |m1: f64| {
        let sys = desk(1.0, 2.5, 1.0, m1);
        let e = pdm_energy(n, &sys, Branch::Particle).energy;
        let rp = sys.reduce(e, SignConvention::Consistent);
        let l = quantization_l(n, &rp).unwrap();
        banded(&rp, l, n + 1).determinant().re
    };
    let (mut a, mut b) = (0.0, 1.0);
    assert!(det(a).signum() != det(b).signum());
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if det(mid).signum() == det(a).signum() {
            a = mid;
        } else {
            b = mid;
        }
    }
    let sys = desk(1.0, 2.5, 1.0, 0.5 * (a + b));
    let e = pdm_energy(n, &sys, Branch::Particle).energy;
    let rp = sys.reduce(e, SignConvention::Consistent);
    let l = quantization_l(n, &rp).unwrap();
    let ws = build_series(&rp, l, n).unwrap();
    assert!(ws.truncated_exactly);
    assert!(determinant_residual(&rp, l, n) < 1e-8);

    let svd = banded(&rp, l, n + 1).svd(false, true);
    let (idx, smallest) =
        svd.singular_values
            .iter()
            .enumerate()
            .fold(
                (0, f64::INFINITY),
                |acc, (i, &s)| if s < acc.1 { (i, s) } else { acc },
            );
    assert!(smallest < 1e-10 * svd.singular_values.max());
    let v_t = svd.v_t.unwrap();
    let null: Vec<C> = (0..=n).map(|c| v_t[(idx, c)].conj()).collect();
    for k in 0..=n {
        let want = null[k] / null[0];
        assert!(
            (want - ws.coefficients[k]).norm() <= 1e-8 * want.norm().max(1.0),
            "k={k}"
        );
    }
}

// Error-free transforms for a double-double accumulator.
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

#[test]
fn phi_matches_extended_precision_sum() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let z = 0.5f64;
    for _ in 0..200 {
        let len = rng.gen_range(1..=15);
        let l: f64 = rng.gen_range(-0.4..3.0);
        let p: f64 = rng.gen_range(-2.0..2.0);
        let q: f64 = rng.gen_range(-2.0..2.0);
        let a: Vec<f64> = (0..len).map(|_| rng.gen_range(-5.0..5.0)).collect();

        // z^{2k} = 4^{-k} is exact, so every product below is exact in double-double.
        let (mut hi, mut lo) = (0.0, 0.0);
        let mut pow = 1.0;
        for &ak in &a {
            let (ph, pl) = two_prod(ak, pow);
            let (s, e) = two_sum(hi, ph);
            hi = s;
            lo += e + pl;
            pow *= 0.25;
        }
        let sum = hi + lo;
        let want = sum * z.powf(l + 0.5) * (p * z + 0.5 * q * z * z).exp();

        let c = |v: f64| C::new(v, 0.0);
        let ws =
            WavefunctionSeries::from_parts(c(p), c(q), c(l), a.iter().map(|&v| c(v)).collect());
        let got = evaluate_phi(&ws, c(z)).unwrap();
        let terms: f64 = a
            .iter()
            .enumerate()
            .map(|(k, v)| v.abs() * 0.25f64.powi(k as i32))
            .sum();
        let bound = 1e-14 * terms * z.powf(l + 0.5) * (p * z + 0.5 * q * z * z).exp();
        assert!(
            (got - c(want)).norm() <= bound.max(1e-300),
            "{got} vs {want}"
        );
        assert!(got.im.abs() <= f64::EPSILON * got.re.abs());
    }
}

#[test]
fn special_case_matches_retyped_formula() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..100 {
        let v1: f64 = rng.gen_range(0.01..0.45);
        let v2: f64 = rng.gen_range(0.1..5.0);
        let m0: f64 = rng.gen_range(0.1..5.0);
        let q_inv = 1.0;
        let sys = desk(v1, v2, m0, v2);
        for n in 0..6 {
            // ε = ∓ sqrt(m0² + 4Q²(m1 + m0)² / (2n + 1 + sqrt(1/4 − V1²Q²))² − 1/(4Q²))
            let q: f64 = 1.0 / q_inv;
            let b = 2.0 * n as f64 + 1.0 + (0.25 - v1 * v1 * q * q).sqrt();
            let r = m0 * m0 + 4.0 * q * q * (v2 + m0).powi(2) / (b * b) - 1.0 / (4.0 * q * q);
            let plus = special_case_energy(n, &sys, Branch::Particle)
                .unwrap()
                .energy;
            let minus = special_case_energy(n, &sys, Branch::Antiparticle)
                .unwrap()
                .energy;
            let root = C::new(r, 0.0).sqrt();
            assert!((plus + root).norm() <= 1e-13 * root.norm());
            assert_eq!(minus, -plus);
        }
    }
}

#[test]
fn single_precision_tracks_double() {
    let sys64 = desk(1.3, 2.1, 1.0, 0.2);
    let pot = PotentialSpec::<f32>::real(1.3, 2.1, 1.0).unwrap();
    let sys32 = MorseSystem::new(pot, MassModel::new(1.0f32, 0.2).unwrap(), 1.0).unwrap();
    for n in 0..10 {
        for b in Branch::BOTH {
            let e64 = pdm_energy(n, &sys64, b).energy;
            let e32 = pdm_energy(n, &sys32, b).energy;
            assert!(((e32.re as f64) - e64.re).abs() <= 1e-5 * e64.norm());
            let c64 = constant_mass_energy(n, &sys64, b).unwrap().energy;
            let c32 = constant_mass_energy(n, &sys32, b).unwrap().energy;
            assert!(((c32.re as f64) - c64.re).abs() <= 1e-5 * c64.norm());
            assert_eq!(
                pdm_energy(n, &sys32, Branch::Antiparticle).energy,
                -pdm_energy(n, &sys32, Branch::Particle).energy
            );
        }
        let e = pdm_energy(n, &sys32, Branch::Particle).energy;
        let rp = sys32.reduce(e, SignConvention::Consistent);
        let l = quantization_l(n, &rp).unwrap();
        let ws = build_series(&rp, l, n).unwrap();
        let e64 = pdm_energy(n, &sys64, Branch::Particle).energy;
        let rp64 = sys64.reduce(e64, SignConvention::Consistent);
        let ws64 = build_series(&rp64, quantization_l(n, &rp64).unwrap(), n).unwrap();
        for (a, b) in ws.coefficients.iter().zip(&ws64.coefficients) {
            let a = Complex::new(a.re as f64, a.im as f64);
            assert!((a - b).norm() <= 1e-3 * b.norm().max(1.0));
        }
    }
}
