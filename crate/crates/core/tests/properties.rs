mod common;

use proptest::prelude::*;
use trotmit::density::{
    apply_channel, noisy_expectation, run_noisy_trotter_observed, sample_estimator_with,
    state_distance_vs_ideal, DensityMatrix,
};
use trotmit::linalg::{herm_expm, kron, trace_norm, ComplexMatrix};
use trotmit::mitigation::{exponential_extrapolate, linear_extrapolate, richardson_coefficients};
use trotmit::noise::{
    boost_model, completeness_deviation, kraus_ops, NoiseModel, PauliNoiseChannel,
};
use trotmit::pauli::{
    build_paper_hamiltonian, exact_expectation, hamiltonian_matrix, PauliHamiltonian, PauliString,
};
use trotmit::trotter::{build_first_order_trotter, circuit_unitary};
use trotmit::C64;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const AXES: [char; 4] = ['I', 'X', 'Y', 'Z'];

/// Hamiltonians on 1..=3 qubits with weight-1 and weight-2 terms.
fn hamiltonian() -> impl Strategy<Value = PauliHamiltonian> {
    (1usize..=3).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n, 1usize..4, 0usize..4, -2.0f64..2.0), 1..=5).prop_map(
            move |specs| {
                let terms = specs
                    .into_iter()
                    .map(|(q1, q2, a1, a2, coeff)| {
                        let mut label = vec!['I'; n];
                        label[q1] = AXES[a1];
                        if q2 != q1 {
                            label[q2] = AXES[a2];
                        }
                        PauliString::parse(&label.into_iter().collect::<String>(), coeff).unwrap()
                    })
                    .collect();
                PauliHamiltonian::new(n, terms).unwrap()
            },
        )
    })
}

fn channel(max: f64) -> impl Strategy<Value = PauliNoiseChannel> {
    (0.0..max, 0.0..max, 0.0..max).prop_map(|(x, y, z)| PauliNoiseChannel::new(x, y, z).unwrap())
}

fn complex_matrix(dim: usize, range: f64) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec((-range..range, -range..range), dim * dim).prop_map(move |v| {
        ComplexMatrix::new(
            dim,
            dim,
            v.into_iter().map(|(r, i)| C64::new(r, i)).collect(),
        )
        .unwrap()
    })
}

fn hermitian(dim: usize) -> impl Strategy<Value = ComplexMatrix> {
    complex_matrix(dim, 1.0).prop_map(|g| (&g + &g.dagger()).scale_real(0.5))
}

fn density(dim: usize) -> impl Strategy<Value = DensityMatrix> {
    complex_matrix(dim, 1.0).prop_map(|g| {
        let m = &g * &g.dagger();
        let tr = m.trace().re;
        DensityMatrix::from_matrix(m.scale_real(1.0 / tr)).unwrap()
    })
}

fn int_matrix(rows: usize, cols: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec((-5i32..=5, -5i32..=5), rows * cols).prop_map(move |v| {
        ComplexMatrix::new(
            rows,
            cols,
            v.into_iter()
                .map(|(r, i)| C64::new(r as f64, i as f64))
                .collect(),
        )
        .unwrap()
    })
}

/// Strictly increasing nodes in `[1, 5]`, first node 1, neighbours at least `gap` apart.
fn nodes(k: usize, gap: f64) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(gap..(4.0 / (k.max(2) - 1) as f64), k - 1).prop_map(|steps| {
        let mut v = vec![1.0];
        for s in steps {
            v.push(v.last().unwrap() + s);
        }
        v
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kron_is_associative(a in int_matrix(2, 3), b in int_matrix(2, 2), c in int_matrix(1, 2)) {
        prop_assert_eq!(kron(&kron(&a, &b), &c), kron(&a, &kron(&b, &c)));
    }

    #[test]
    fn propagator_group_property(h in hermitian(4), s1 in -2.0f64..2.0, s2 in -2.0f64..2.0) {
        let lhs = herm_expm(&h, s1).unwrap().matmul(&herm_expm(&h, s2).unwrap()).unwrap();
        prop_assert!(lhs.max_abs_diff(&herm_expm(&h, s1 + s2).unwrap()) < 1e-9);
    }

    #[test]
    fn trace_norm_triangle(a in hermitian(4), b in hermitian(4)) {
        let sum = trace_norm(&(&a + &b)).unwrap();
        prop_assert!(sum <= trace_norm(&a).unwrap() + trace_norm(&b).unwrap() + 1e-9);
    }

    #[test]
    fn trace_norm_unitary_invariance(rho in density(4), sigma in density(4), h in hermitian(4), s in -3.0f64..3.0) {
        let u = herm_expm(&h, s).unwrap();
        let before = trace_norm(&(rho.matrix() - sigma.matrix())).unwrap();
        let r = rho.matrix().conjugate_by(&u).unwrap();
        let q = sigma.matrix().conjugate_by(&u).unwrap();
        prop_assert!((trace_norm(&(&r - &q)).unwrap() - before).abs() < 1e-9);
    }

    #[test]
    fn hamiltonian_matrix_is_linear(h in hamiltonian(), k in -4i32..4, sign in prop::bool::ANY, alpha in -3.0f64..3.0) {
        // Powers of two commute with rounding, so the identity is exact there.
        let pow2 = if sign { -(2f64.powi(k)) } else { 2f64.powi(k) };
        let base = hamiltonian_matrix(&h).unwrap();
        prop_assert_eq!(hamiltonian_matrix(&h.scaled(pow2)).unwrap(), base.scale_real(pow2));
        let general = hamiltonian_matrix(&h.scaled(alpha)).unwrap();
        prop_assert!(general.max_abs_diff(&base.scale_real(alpha)) < 1e-14 * (1.0 + alpha.abs()) * 10.0);
    }

    #[test]
    fn exact_expectation_bounded_and_lipschitz(h in hamiltonian(), t in 0.0f64..2.0, delta in 1e-6f64..1e-3, axis in 1usize..4) {
        let n = h.qubit_count();
        let a = PauliString::on(n, &[(0, trotmit::pauli::Pauli::from_char(AXES[axis]).unwrap())]).unwrap();
        let v0 = exact_expectation(&h, t, 0, &a).unwrap();
        let v1 = exact_expectation(&h, t + delta, 0, &a).unwrap();
        prop_assert!((-1.0 - 1e-12..=1.0 + 1e-12).contains(&v0));
        let h_norm = trotmit::linalg::spectral_norm(&hamiltonian_matrix(&h).unwrap()).unwrap();
        prop_assert!((v1 - v0).abs() <= 2.0 * h_norm * delta + 1e-12);
    }

    #[test]
    fn trotter_steps_compose(h in hamiltonian(), t in -1.5f64..1.5, n in 1usize..6) {
        let whole = circuit_unitary(&build_first_order_trotter(&h, t, n).unwrap()).unwrap();
        let one = circuit_unitary(&build_first_order_trotter(&h, t / n as f64, 1).unwrap()).unwrap();
        let mut power = ComplexMatrix::identity(h.dim());
        for _ in 0..n {
            power = one.matmul(&power).unwrap();
        }
        prop_assert!(whole.max_abs_diff(&power) < 1e-9);
    }

    #[test]
    fn reversed_circuit_inverts(h in hamiltonian(), t in -1.5f64..1.5, n in 1usize..4) {
        let c = build_first_order_trotter(&h, t, n).unwrap();
        let prod = circuit_unitary(&c.inverse()).unwrap().matmul(&circuit_unitary(&c).unwrap()).unwrap();
        prop_assert!(prod.max_abs_diff(&ComplexMatrix::identity(h.dim())) < 1e-9);
    }

    #[test]
    fn kraus_sets_are_complete(ch in channel(1.0 / 3.0), q1 in 0usize..3, q2 in 0usize..3) {
        prop_assert!(completeness_deviation(&kraus_ops(&ch, &[q1], 3).unwrap()) < 1e-12);
        if q1 != q2 {
            prop_assert!(completeness_deviation(&kraus_ops(&ch, &[q1, q2], 3).unwrap()) < 1e-12);
        }
    }

    #[test]
    fn channel_preserves_trace_and_hermiticity(rho in density(4), ch in channel(1.0 / 3.0), two in prop::bool::ANY) {
        let support: &[usize] = if two { &[0, 1] } else { &[1] };
        let out = apply_channel(&rho, &kraus_ops(&ch, support, 2).unwrap()).unwrap();
        prop_assert!((out.trace().re - 1.0).abs() < 1e-12);
        prop_assert!(out.trace().im.abs() < 1e-12);
        prop_assert!(out.matrix().hermitian_deviation() < 1e-12);
    }

    #[test]
    fn boost_composes_exactly(a in 0.0f64..40.0, b in 0.0f64..40.0) {
        let m = NoiseModel::reference();
        let twice = boost_model(&boost_model(&m, a).unwrap(), b).unwrap();
        let once = boost_model(&m, a * b).unwrap();
        prop_assert_eq!(twice.single(), once.single());
        prop_assert_eq!(twice.two_factor(), once.two_factor());
    }

    #[test]
    fn every_intermediate_state_is_physical(
        h in hamiltonian(), t in 0.0f64..2.0, n in 1usize..8,
        single in channel(0.05), two in channel(0.05), psi0 in 0usize..8,
    ) {
        let m = NoiseModel::new(single, two).unwrap();
        let c = build_first_order_trotter(&h, t, n).unwrap();
        let rho0 = DensityMatrix::basis_state(h.qubit_count(), psi0 % h.dim()).unwrap();
        let mut seen = 0;
        run_noisy_trotter_observed(&c, &m, &rho0, |_, rho| {
            let d = rho.diagnostics()?;
            assert!(d.trace_error < 1e-10 && d.hermitian_deviation < 1e-10 && d.min_eigenvalue >= -1e-8, "{d:?}");
            seen += 1;
            Ok(())
        }).unwrap();
        prop_assert_eq!(seen, n);
    }

    #[test]
    fn zero_noise_matches_unitary_path(h in hamiltonian(), t in -2.0f64..2.0, n in 1usize..10, axis in 1usize..4) {
        let c = build_first_order_trotter(&h, t, n).unwrap();
        let a = PauliString::on(h.qubit_count(), &[(0, trotmit::pauli::Pauli::from_char(AXES[axis]).unwrap())]).unwrap();
        let rho0 = DensityMatrix::basis_state(h.qubit_count(), 0).unwrap();
        let noisy = noisy_expectation(&c, &NoiseModel::noiseless(), &rho0, &a).unwrap();
        let psi = circuit_unitary(&c).unwrap().column(0);
        prop_assert!((noisy - a.expectation_in(&psi).re).abs() < 1e-9);
    }

    #[test]
    fn richardson_moments(a in (1usize..=5).prop_flat_map(|k| nodes(k, 0.05))) {
        let k = a.len();
        let g = richardson_coefficients(&a).unwrap();
        prop_assert!((g.iter().sum::<f64>() - 1.0).abs() < 1e-8);
        for j in 1..k {
            let m: f64 = g.iter().zip(&a).map(|(gi, ai)| gi * ai.powi(j as i32)).sum();
            prop_assert!(m.abs() < 1e-8, "moment {} = {}", j, m);
        }
    }

    #[test]
    fn linear_extrapolation_recovers_polynomials(
        a in (1usize..=5).prop_flat_map(|k| nodes(k, 0.25)),
        coeffs in prop::collection::vec(-1.0f64..1.0, 5),
    ) {
        let k = a.len();
        let poly = |x: f64| coeffs[..k].iter().rev().fold(0.0, |acc, c| acc * x + c);
        let values: Vec<f64> = a.iter().map(|&x| poly(x)).collect();
        prop_assert!((linear_extrapolate(&values, &a).unwrap() - coeffs[0]).abs() < 1e-10);
    }

    #[test]
    fn exponential_extrapolation_recovers_amplitude(amp in 1e-3f64..10.0, c in 0.0f64..5.0, r in 1.01f64..4.0, neg in prop::bool::ANY) {
        let amp = if neg { -amp } else { amp };
        let v = exponential_extrapolate(amp * (-c).exp(), amp * (-r * c).exp(), r).unwrap();
        prop_assert!(((v - amp) / amp).abs() < 1e-10);
    }
}

#[test]
fn noiseless_distance_decreases_with_steps() {
    let h = build_paper_hamiltonian(3.0, 2.0, 5).unwrap();
    let mut prev = f64::INFINITY;
    for n in (5..=200).step_by(5) {
        let d = state_distance_vs_ideal(&h, 0.5, n, &NoiseModel::noiseless(), 0).unwrap();
        assert!(d <= prev + 1e-12, "N={n}: {d} > {prev}");
        prev = d;
    }
}

#[test]
fn estimator_mean_within_four_standard_errors() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for (mean, shots) in [(0.5, 100u64), (-0.3, 7), (0.9, 1000), (0.0, 1)] {
        let trials = 10_000;
        let sum: f64 = (0..trials)
            .map(|_| sample_estimator_with(mean, shots, &mut rng).unwrap())
            .sum();
        let se = ((1.0 - mean * mean) / shots as f64 / trials as f64).sqrt();
        assert!(
            (sum / trials as f64 - mean).abs() < 4.0 * se,
            "mean {mean}, shots {shots}"
        );
    }
}
