//! Correlating power against independent references: an elliptic-integral
//! closed form for the sphere average of `|M n|`, Monte Carlo, and
//! symmetry properties.

use qcpower_core::linalg::{hermitian_eigensystem, CMatrix, Mat3, C64};
use qcpower_core::power::{correlating_power, correlating_power_unchecked, SphereScheme};
use qcpower_core::{random, AffineChannel, KrausChannel, Tolerances, Vec3};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const QUAD: SphereScheme = SphereScheme::GaussProduct { order: 64 };

/// Complete elliptic integral of the second kind `E(m)` by the AGM.
fn elliptic_e(m: f64) -> f64 {
    if m == 1.0 {
        return 1.0;
    }
    let (mut a, mut b) = (1.0f64, (1.0 - m).sqrt());
    let mut sum = 0.5 * m;
    let mut pow = 0.5;
    for _ in 0..40 {
        let c = 0.5 * (a - b);
        let (an, bn) = (0.5 * (a + b), (a * b).sqrt());
        pow *= 2.0;
        sum += pow * c * c;
        a = an;
        b = bn;
        if c.abs() < 1e-17 {
            break;
        }
    }
    std::f64::consts::FRAC_PI_2 / a * (1.0 - sum)
}

/// `∫ dn 2|t × Λn|` for a rank ≤ 2 integrand: `√g₁ E(1 − g₂/g₁)` with
/// `g₁ ≥ g₂` the nonzero eigenvalues of `MᵀM`, `M = [t]× Λ`.
fn elliptic_power(ch: &AffineChannel) -> f64 {
    let m = Mat3::cross_matrix(ch.t) * ch.lambda;
    let g = m.transpose() * m;
    let c = CMatrix::<3>::from_rows(core::array::from_fn(|i| {
        core::array::from_fn(|j| C64::new(g.0[i][j], 0.0))
    }));
    let e = hermitian_eigensystem(&c, &Tolerances::DEFAULT).unwrap();
    let (g1, g2) = (e.values[2].max(0.0), e.values[1].max(0.0));
    if g1 == 0.0 {
        return 0.0;
    }
    g1.sqrt() * elliptic_e(1.0 - g2 / g1)
}

fn rotation(r: &mut ChaCha8Rng) -> Mat3 {
    KrausChannel::new(vec![random::unitary(r)]).unwrap().affine().unwrap().lambda
}

#[test]
fn elliptic_reference_values() {
    assert!((elliptic_e(0.0) - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
    assert!((elliptic_e(0.5) - 1.350643881047675).abs() < 1e-14);
}

#[test]
fn quadrature_matches_elliptic_closed_form() {
    let mut r = ChaCha8Rng::seed_from_u64(21);
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let ch = random::channel(&mut r).affine().unwrap();
        let p = correlating_power(&ch, QUAD).unwrap().value;
        worst = worst.max((p - elliptic_power(&ch)).abs());
    }
    assert!(worst < 1e-6, "worst deviation {worst:e}");
}

#[test]
fn monte_carlo_agrees_within_standard_error() {
    let mut r = ChaCha8Rng::seed_from_u64(22);
    for seed in 0..10 {
        let ch = random::channel(&mut r).affine().unwrap();
        let quad = correlating_power(&ch, QUAD).unwrap().value;
        let mc = correlating_power(&ch, SphereScheme::MonteCarlo { samples: 100_000, seed }).unwrap();
        assert!((mc.value - quad).abs() <= 4.0 * mc.estimated_error + 1e-12, "{} vs {quad}", mc.value);
    }
}

#[test]
fn scaling_and_rotation() {
    let mut r = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..20 {
        let ch = random::channel(&mut r).affine().unwrap();
        let p = correlating_power(&ch, QUAD).unwrap().value;
        let s = -0.7;
        let scaled_l = AffineChannel::new(ch.lambda.scale(s), ch.t).unwrap();
        let scaled_t = AffineChannel::new(ch.lambda, ch.t * s).unwrap();
        for scaled in [scaled_l, scaled_t] {
            let q = correlating_power_unchecked(&scaled, QUAD).unwrap().value;
            assert!((q - s.abs() * p).abs() < 1e-12);
        }
        let (r1, r2) = (rotation(&mut r), rotation(&mut r));
        let rotated = AffineChannel::new(r1 * ch.lambda * r2, r1 * ch.t).unwrap();
        let q = correlating_power(&rotated, QUAD).unwrap().value;
        assert!((q - p).abs() < 1e-9, "{q} vs {p}");
    }
}

#[test]
fn error_estimate_is_small_at_default_order() {
    let mut r = ChaCha8Rng::seed_from_u64(24);
    let ch = random::channel(&mut r).affine().unwrap();
    let p = correlating_power(&ch, QUAD).unwrap();
    assert!(p.estimated_error < 1e-6);
    let _ = Vec3::ZERO;
}
