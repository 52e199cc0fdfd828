use proptest::prelude::*;
use qcpower_core::channels::QubitChannel;
use qcpower_core::linalg::{kron, svd3_rotations, trace_norm, CMatrix, Mat3, C64};
use qcpower_core::measures::{output_state, quantum_correlation, quantum_correlation_bloch};
use qcpower_core::random;
use qcpower_core::states::{fidelity, DensityMatrix, QCState};
use qcpower_core::{KrausChannel, Vec3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn complex_matrix<const N: usize>(r: &mut ChaCha8Rng) -> CMatrix<N> {
    CMatrix::from_rows(core::array::from_fn(|_| {
        core::array::from_fn(|_| C64::new(r.random::<f64>() - 0.5, r.random::<f64>() - 0.5))
    }))
}

fn rotation(r: &mut ChaCha8Rng) -> Mat3 {
    KrausChannel::new(vec![random::unitary(r)]).unwrap().affine().unwrap().lambda
}

/// Entangling two-qubit unitary: local unitaries around a CNOT.
fn joint_unitary(r: &mut ChaCha8Rng) -> CMatrix<4> {
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    let cnot = CMatrix::from_rows([
        [one, zero, zero, zero],
        [zero, one, zero, zero],
        [zero, zero, zero, one],
        [zero, zero, one, zero],
    ]);
    let a = kron(&random::unitary(r), &random::unitary(r));
    let b = kron(&random::unitary(r), &random::unitary(r));
    a * cnot * b
}

fn mixed_two_qubit(r: &mut ChaCha8Rng) -> DensityMatrix<4> {
    let g = complex_matrix::<4>(r);
    let m = g * g.adjoint();
    let tr = m.trace().re;
    DensityMatrix::new(m.scale_real(1.0 / tr)).unwrap()
}

proptest! {
    #[test]
    fn trace_norm_is_unitarily_invariant(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = complex_matrix::<4>(&mut r);
        let (u, v) = (joint_unitary(&mut r), joint_unitary(&mut r));
        let lhs = trace_norm(&(u * a * v));
        prop_assert!((lhs - trace_norm(&a)).abs() < 1e-12);
    }

    #[test]
    fn kraus_and_affine_forms_agree(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = random::channel(&mut r);
        let a = k.affine().unwrap();
        let rho = DensityMatrix::from_bloch(random::ball_vector(&mut r)).unwrap();
        let lhs = k.apply(&rho).unwrap();
        let rhs = a.apply(&rho).unwrap();
        prop_assert!(lhs.matrix().max_abs_diff(rhs.matrix()) < 1e-13);
        let m = complex_matrix::<4>(&mut r);
        prop_assert!(k.apply_on_a(&m).max_abs_diff(&a.apply_on_a(&m)) < 1e-13);
    }

    #[test]
    fn fidelity_joint_unitary_invariance(seed in any::<u64>()) {
        let mut r = rng(seed);
        let rho = mixed_two_qubit(&mut r);
        let sigma = random::cc_state(&mut r).assemble();
        let u = joint_unitary(&mut r);
        let before = fidelity(&rho, &sigma);
        let after = fidelity(&rho.conjugate_by(&u), &sigma.conjugate_by(&u));
        prop_assert!((before - after).abs() < 1e-10);
    }

    #[test]
    fn fidelity_is_concave(seed in any::<u64>()) {
        let mut r = rng(seed);
        let rho = mixed_two_qubit(&mut r);
        let s1 = mixed_two_qubit(&mut r);
        let s2 = random::cc_state(&mut r).assemble();
        let lambda: f64 = r.random();
        let mixed = s1.mix(&s2, lambda);
        let bound = lambda * fidelity(&rho, &s1) + (1.0 - lambda) * fidelity(&rho, &s2);
        prop_assert!(fidelity(&rho, &mixed) >= bound - 1e-10);
    }

    #[test]
    fn unital_channels_do_not_increase_q(seed in any::<u64>()) {
        let mut r = rng(seed);
        let ch = random::unital_channel(&mut r);
        let q = random::qc_state(&mut r);
        let out = QCState { x0: ch.apply_operator(&q.x0), x1: ch.apply_operator(&q.x1) };
        prop_assert!(quantum_correlation(&out) <= quantum_correlation(&q) + 1e-10);
    }

    #[test]
    fn q_is_local_unitary_invariant(seed in any::<u64>()) {
        let mut r = rng(seed);
        let q = random::qc_state(&mut r);
        let u = random::unitary(&mut r);
        prop_assert!((quantum_correlation(&q.conjugate_by(&u)) - quantum_correlation(&q)).abs() < 1e-12);
    }

    #[test]
    fn commutator_and_bloch_forms_agree(seed in any::<u64>()) {
        let mut r = rng(seed);
        let q = random::qc_state(&mut r);
        let (p0, r0, p1, r1) = q.bloch_form();
        prop_assert!((quantum_correlation(&q) - quantum_correlation_bloch(p0, p1, r0, r1)).abs() < 1e-12);
    }

    #[test]
    fn cc_states_carry_no_q(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = random::cc_state(&mut r);
        let q = QCState::from_density(&c.assemble(), c.v_axis, &Default::default()).unwrap();
        prop_assert!(quantum_correlation(&q) < 1e-12);
        // commuting blocks
        let n = random::unit_vector(&mut r);
        let (a, b): (f64, f64) = (r.random(), r.random());
        let commuting = QCState::from_bloch(0.4, n * a, 0.6, n * (b - 0.5)).unwrap();
        prop_assert!(quantum_correlation(&commuting) < 1e-12);
    }

    #[test]
    fn semiclassical_and_unital_create_nothing(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = random::cc_state(&mut r);
        for ch in [random::semiclassical_channel(&mut r), random::unital_channel(&mut r).affine().unwrap()] {
            let out = output_state(&ch, &c);
            prop_assert!(quantum_correlation(&out) < 1e-10);
        }
    }
}

#[test]
fn svd_reconstructs_random_matrices() {
    let mut r = rng(11);
    for _ in 0..1000 {
        let m = Mat3(core::array::from_fn(|_| core::array::from_fn(|_| 2.0 * r.random::<f64>() - 1.0)));
        let svd = svd3_rotations(&m);
        assert!(svd.reconstruct().max_abs_diff(&m) < 1e-12);
        assert!((svd.s.det() - 1.0).abs() < 1e-12 && (svd.t.det() - 1.0).abs() < 1e-12);
        assert!((svd.s.transpose() * svd.s).max_abs_diff(&Mat3::IDENTITY) < 1e-12);
        assert!(svd.d[0] >= svd.d[1] && svd.d[1] >= svd.d[2].abs());
    }
}

#[test]
fn rotation_helper_is_proper() {
    let mut r = rng(12);
    let q = rotation(&mut r);
    assert!((q.det() - 1.0).abs() < 1e-12);
    let v = Vec3::new(0.3, -0.2, 0.9);
    assert!(((q * v).norm() - v.norm()).abs() < 1e-14);
}
