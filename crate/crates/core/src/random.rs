//! Seeded generators for states and channels, used by tests and tooling.

use alloc::vec::Vec;

use rand::Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};

use crate::channels::{AffineChannel, KrausChannel};
use crate::linalg::{sqrt, CMatrix, Mat3, Vec3, C64};
use crate::power::uniform_sphere_point;
use crate::states::{CCState, PureQCState, QCState};

pub fn unit_vector(rng: &mut impl Rng) -> Vec3 {
    let (u, v): (f64, f64) = (rng.random(), rng.random());
    uniform_sphere_point(u, v)
}

/// Uniform in the closed unit ball.
pub fn ball_vector(rng: &mut impl Rng) -> Vec3 {
    let r = libm::cbrt(rng.random::<f64>());
    unit_vector(rng) * r
}

fn normal(rng: &mut impl Rng) -> f64 {
    StandardNormal.sample(rng)
}

fn complex_normal(rng: &mut impl Rng) -> C64 {
    C64::new(normal(rng), normal(rng))
}

/// Haar-random element of SU(2).
pub fn unitary(rng: &mut impl Rng) -> CMatrix<2> {
    let q: [f64; 4] = core::array::from_fn(|_| normal(rng));
    let norm = sqrt(q.iter().map(|x| x * x).sum::<f64>());
    let [a, b, c, d] = q.map(|x| x / norm);
    CMatrix::from_rows([
        [C64::new(a, b), C64::new(c, d)],
        [C64::new(-c, d), C64::new(a, -b)],
    ])
}

/// Uniform point of the probability simplex.
pub fn simplex<const K: usize>(rng: &mut impl Rng) -> [f64; K] {
    let e: [f64; K] = core::array::from_fn(|_| Exp1.sample(rng));
    let total: f64 = e.iter().sum();
    e.map(|x| x / total)
}

/// CPTP channel from a Gaussian isometry `C² → C^{2k}`, `k ∈ 1..=4`.
pub fn channel(rng: &mut impl Rng) -> KrausChannel {
    let k = rng.random_range(1..=4usize);
    channel_with_environment(rng, k)
}

pub fn channel_with_environment(rng: &mut impl Rng, k: usize) -> KrausChannel {
    let rows = 2 * k.max(1);
    let mut cols: [Vec<C64>; 2] = core::array::from_fn(|_| (0..rows).map(|_| complex_normal(rng)).collect());
    // Gram–Schmidt on the two columns
    let norm = |v: &[C64]| sqrt(v.iter().map(|z| z.norm_sqr()).sum::<f64>());
    let n0 = norm(&cols[0]);
    cols[0].iter_mut().for_each(|z| *z /= n0);
    let overlap: C64 = cols[0].iter().zip(&cols[1]).map(|(a, b)| a.conj() * b).sum();
    let first = cols[0].clone();
    cols[1].iter_mut().zip(&first).for_each(|(b, a)| *b -= overlap * a);
    let n1 = norm(&cols[1]);
    cols[1].iter_mut().for_each(|z| *z /= n1);

    let kraus = (0..rows / 2)
        .map(|m| {
            CMatrix::from_rows([
                [cols[0][2 * m], cols[1][2 * m]],
                [cols[0][2 * m + 1], cols[1][2 * m + 1]],
            ])
        })
        .collect();
    KrausChannel::new(kraus).expect("isometry blocks are finite")
}

/// Random mixture of up to four unitaries.
pub fn unital_channel(rng: &mut impl Rng) -> KrausChannel {
    let weights: [f64; 4] = simplex(rng);
    let count = rng.random_range(1..=4usize);
    let total: f64 = weights[..count].iter().sum();
    let kraus = weights[..count]
        .iter()
        .map(|w| unitary(rng).scale_real(sqrt(w / total)))
        .collect();
    KrausChannel::new(kraus).expect("unitaries are finite")
}

/// `Λ = b aᵀ`, `t = t b` with `|a| + |t| ≤ 1`.
pub fn semiclassical_channel(rng: &mut impl Rng) -> AffineChannel {
    let a_norm: f64 = rng.random();
    let t = (1.0 - a_norm) * (2.0 * rng.random::<f64>() - 1.0);
    let a = unit_vector(rng) * a_norm;
    let b = unit_vector(rng);
    AffineChannel::new(Mat3::outer(b, a), b * t).expect("finite")
}

pub fn qc_state(rng: &mut impl Rng) -> QCState {
    let p0: f64 = rng.random();
    QCState::from_bloch(p0, ball_vector(rng), 1.0 - p0, ball_vector(rng)).expect("valid by construction")
}

pub fn pure_qc_state(rng: &mut impl Rng) -> PureQCState {
    let p0: f64 = rng.random();
    PureQCState::new(p0, unit_vector(rng), 1.0 - p0, unit_vector(rng)).expect("valid by construction")
}

pub fn cc_state(rng: &mut impl Rng) -> CCState {
    let [a, b, c, d] = simplex::<4>(rng);
    CCState::new([[a, b], [c, d]], unit_vector(rng), unit_vector(rng)).expect("valid by construction")
}
