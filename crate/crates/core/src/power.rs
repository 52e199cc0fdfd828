//! Correlating power: the average of `2|t × Λn|` over input axes `n` on the
//! Bloch sphere, with the sphere measure normalized to total mass one.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::channels::AffineChannel;
use crate::linalg::{sqrt, svd3_rotations, Mat3, Vec3};
use crate::measures::created_correlation_max_state;
use crate::{Error, Result};

pub const DEFAULT_ORDER: usize = 64;
pub const DEFAULT_MC_SAMPLES: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SphereScheme {
    /// Gauss–Legendre in the polar angle × piecewise Gauss–Legendre in the
    /// azimuth (four quadrants).
    GaussProduct { order: usize },
    /// Uniform samples from a ChaCha8 stream seeded with `seed`.
    MonteCarlo { samples: usize, seed: u64 },
}

impl Default for SphereScheme {
    fn default() -> Self {
        SphereScheme::GaussProduct { order: DEFAULT_ORDER }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerResult {
    pub value: f64,
    pub scheme: SphereScheme,
    /// Standard error of the mean for Monte Carlo; `|P(order) − P(order/2)|`
    /// for quadrature.
    pub estimated_error: f64,
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = libm::cos(PI * (i as f64 + 0.75) / (n as f64 + 0.5));
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let k = k as f64;
                let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if n == 1 {
                p0 = 1.0;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes.push(x);
        weights.push(2.0 / ((1.0 - x * x) * dp * dp));
    }
    (nodes, weights)
}

/// Nodes and weights of a normalized product rule on the unit sphere.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereRule {
    pub nodes: Vec<Vec3>,
    pub weights: Vec<f64>,
}

impl SphereRule {
    pub fn integrate(&self, f: impl Fn(Vec3) -> f64) -> f64 {
        let terms: Vec<f64> = self.nodes.iter().zip(&self.weights).map(|(&n, &w)| w * f(n)).collect();
        pairwise_sum(&terms)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Same weights, nodes mapped through the rotation `r`.
    pub fn rotated(&self, r: &Mat3) -> SphereRule {
        SphereRule { nodes: self.nodes.iter().map(|&n| *r * n).collect(), weights: self.weights.clone() }
    }
}

/// `order` Gauss–Legendre nodes in θ ∈ [0, π] (weights carry sin θ) times
/// `order/2` Gauss–Legendre nodes in each azimuthal quadrant, so `2·order`
/// azimuths in total. Weights sum to one.
pub fn sphere_quadrature(order: usize) -> Result<SphereRule> {
    if order < 2 {
        return Err(Error::OrderTooSmall(order));
    }
    let (x, w) = gauss_legendre(order);
    let per_quadrant = order.div_ceil(2);
    let (y, v) = gauss_legendre(per_quadrant);

    let mut phis = Vec::with_capacity(4 * per_quadrant);
    for q in 0..4 {
        for j in 0..per_quadrant {
            phis.push((q as f64 * FRAC_PI_2 + (y[j] + 1.0) * FRAC_PI_4, v[j] * FRAC_PI_4));
        }
    }

    let mut nodes = Vec::with_capacity(order * phis.len());
    let mut weights = Vec::with_capacity(order * phis.len());
    for i in 0..order {
        let theta = (x[i] + 1.0) * FRAC_PI_2;
        let wt = w[i] * FRAC_PI_2 * libm::sin(theta);
        for &(phi, wp) in &phis {
            nodes.push(Vec3::from_spherical(theta, phi));
            weights.push(wt * wp);
        }
    }
    let total = pairwise_sum(&weights);
    for w in weights.iter_mut() {
        *w /= total;
    }
    Ok(SphereRule { nodes, weights })
}

/// Fixed-order pairwise summation.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= 16 {
        return xs.iter().sum();
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

/// Rotation whose columns are the right singular vectors of `[t]× Λ`:
/// the pole goes to the integrand's null direction and +x to its steepest
/// direction, which puts the `|·|` kinks on the rule's breakpoints.
fn integrand_frame(ch: &AffineChannel) -> Mat3 {
    svd3_rotations(&ch.correlation_matrix()).t.transpose()
}

fn quadrature_power(ch: &AffineChannel, order: usize) -> Result<f64> {
    let rule = sphere_quadrature(order)?.rotated(&integrand_frame(ch));
    Ok(rule.integrate(|n| created_correlation_max_state(ch, n)))
}

/// Uniform unit vector from two uniforms in `[0, 1)`.
pub fn uniform_sphere_point(u: f64, v: f64) -> Vec3 {
    let z = 2.0 * u - 1.0;
    let r = sqrt((1.0 - z * z).max(0.0));
    let phi = 2.0 * PI * v;
    Vec3::new(r * libm::cos(phi), r * libm::sin(phi), z)
}

fn monte_carlo_power(ch: &AffineChannel, samples: usize, seed: u64) -> Result<(f64, f64)> {
    if samples < 2 {
        return Err(Error::SamplesTooSmall(samples));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let values: Vec<f64> = (0..samples)
        .map(|_| {
            let (u, v): (f64, f64) = (rng.random(), rng.random());
            created_correlation_max_state(ch, uniform_sphere_point(u, v))
        })
        .collect();
    let n = samples as f64;
    let mean = pairwise_sum(&values) / n;
    let sq: Vec<f64> = values.iter().map(|x| (x - mean) * (x - mean)).collect();
    let var = pairwise_sum(&sq) / (n - 1.0);
    Ok((mean, sqrt(var / n)))
}

/// `P(ℰ) = ∫ dn 2|t × Λn|` under the normalized sphere measure.
pub fn correlating_power(ch: &AffineChannel, scheme: SphereScheme) -> Result<PowerResult> {
    ch.ensure_cptp()?;
    correlating_power_unchecked(ch, scheme)
}

/// [`correlating_power`] without the CPTP gate, for maps that are only
/// being integrated (scaling and rotation properties).
pub fn correlating_power_unchecked(ch: &AffineChannel, scheme: SphereScheme) -> Result<PowerResult> {
    match scheme {
        SphereScheme::GaussProduct { order } => {
            let value = quadrature_power(ch, order)?;
            let coarse = if order / 2 >= 2 { quadrature_power(ch, order / 2)? } else { value };
            Ok(PowerResult { value, scheme, estimated_error: (value - coarse).abs() })
        }
        SphereScheme::MonteCarlo { samples, seed } => {
            let (value, se) = monte_carlo_power(ch, samples, seed)?;
            Ok(PowerResult { value, scheme, estimated_error: se })
        }
    }
}

/// `πγ√(1−γ)/2` for amplitude damping.
pub fn power_ad_closed_form(gamma: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&gamma) {
        return Err(Error::GammaOutOfRange(gamma));
    }
    Ok(PI * gamma * sqrt(1.0 - gamma) / 2.0)
}

/// `½|m₀ × m₁|` for measure-and-prepare channels.
pub fn power_mp_closed_form(m0: Vec3, m1: Vec3) -> Result<f64> {
    for m in [m0, m1] {
        let norm = m.norm();
        if !m.is_finite() || (norm - 1.0).abs() > 1e-10 {
            return Err(Error::NonUnitVector { norm });
        }
    }
    Ok(0.5 * m0.cross(m1).norm())
}

/// `|t|·|a|·|b × c|` for the channel `Λr = (a·r)c`, `t = t·b`.
pub fn power_nsc_closed_form(a: Vec3, b: Vec3, c: Vec3, t: f64) -> f64 {
    t.abs() * a.norm() * b.cross(c).norm()
}

/// Power of the channel and of its canonical form `(Λ_D, Sᵀt)`.
pub fn power_invariance_check(ch: &AffineChannel, scheme: SphereScheme) -> Result<(f64, f64)> {
    let raw = correlating_power(ch, scheme)?.value;
    let canonical = correlating_power(&ch.canonical_form().channel(), scheme)?.value;
    Ok((raw, canonical))
}
