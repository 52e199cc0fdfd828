//! Correlation measures for quantum-classical and classically correlated
//! two-qubit states, and the correlation a channel creates on CC inputs.

use crate::channels::{canonical_form, AffineChannel, QubitChannel};
use crate::linalg::{sqrt, trace_norm, Vec3};
use crate::states::{CCState, QCState};
use crate::Result;

/// How a correlation value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// `4‖[X₀, X₁]‖₁` on the blocks.
    Commutator,
    /// `4 p₀ p₁ |r₀ × r₁|` on the Bloch form of the blocks.
    BlochCross,
    /// `2|t × Λn| · C(σ)` from the affine channel parameters.
    AffineFormula,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationReport {
    pub q_value: f64,
    /// Classical correlation, when the input is classically correlated.
    pub c_value: Option<f64>,
    pub method: Method,
}

/// `C(σ) = 4|p₀₀p₁₁ − p₀₁p₁₀|`.
pub fn classical_correlation(c: &CCState) -> f64 {
    let p = &c.p;
    4.0 * (p[0][0] * p[1][1] - p[0][1] * p[1][0]).abs()
}

/// `Q(ρ) = 4‖[X₀, X₁]‖₁`.
pub fn quantum_correlation(q: &QCState) -> f64 {
    4.0 * trace_norm(&q.x0.commutator(&q.x1))
}

/// `Q = 4 p₀ p₁ |r₀ × r₁|`.
pub fn quantum_correlation_bloch(p0: f64, p1: f64, r0: Vec3, r1: Vec3) -> f64 {
    4.0 * p0 * p1 * r0.cross(r1).norm()
}

pub fn report_qc(q: &QCState) -> CorrelationReport {
    CorrelationReport { q_value: quantum_correlation(q), c_value: None, method: Method::Commutator }
}

/// A CC state carries no quantum correlation; the value is still computed
/// from its blocks in its own B basis rather than asserted.
pub fn report_cc(c: &CCState) -> Result<CorrelationReport> {
    let tol = crate::Tolerances::DEFAULT;
    let q = QCState::from_density(&c.assemble(), c.v_axis, &tol)?;
    Ok(CorrelationReport {
        q_value: quantum_correlation(&q),
        c_value: Some(classical_correlation(c)),
        method: Method::Commutator,
    })
}

/// Blocks of `(ℰ ⊗ I)(σ)` with the B basis of `σ` relabelled as the
/// computational basis: `X_j = Σ_i p_ij ℰ(|u_i⟩⟨u_i|)`.
pub fn output_state(ch: &impl QubitChannel, c: &CCState) -> QCState {
    let e0 = ch.apply_operator(&c.a_projector(0));
    let e1 = ch.apply_operator(&c.a_projector(1));
    let block = |j: usize| e0.scale_real(c.p[0][j]) + e1.scale_real(c.p[1][j]);
    QCState { x0: block(0), x1: block(1) }
}

/// `Q((ℰ ⊗ I)σ) = 2|t × Λn| · C(σ)` with `n` the A-basis axis of `σ`.
pub fn created_correlation(ch: &AffineChannel, c: &CCState) -> Result<f64> {
    ch.ensure_cptp()?;
    Ok(created_correlation_max_state(ch, c.u_axis) * classical_correlation(c))
}

/// `2|t × Λn|`, the correlation created on the maximally correlated state
/// with A basis along `n`.
pub fn created_correlation_max_state(ch: &AffineChannel, n: Vec3) -> f64 {
    2.0 * ch.t.cross(ch.lambda * n).norm()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QMax {
    /// Numerical maximum of `2|t × Λn|` over unit `n`.
    pub value: f64,
    pub argmax: Vec3,
    /// `2|t| √(Σλ⁴ / Σλ²)` from the canonical diagonal, reported alongside;
    /// it is not a bound for every channel.
    pub formula_value: f64,
}

pub const QMAX_LATTICE_NODES: usize = 4096;
const GOLDEN_ITERATIONS: usize = 50;
const REFINE_PASSES: usize = 12;

/// Maximum created correlation over input axes: Fibonacci lattice scan
/// followed by alternating golden-section refinement in local tangent
/// coordinates around the best node.
pub fn q_max(ch: &AffineChannel) -> QMax {
    q_max_with(ch, QMAX_LATTICE_NODES)
}

pub fn q_max_with(ch: &AffineChannel, nodes: usize) -> QMax {
    let lambda = canonical_form(ch).lambda_d;
    let l2: f64 = lambda.iter().map(|x| x * x).sum();
    let l4: f64 = lambda.iter().map(|x| x * x * x * x).sum();
    let formula_value = if l2 > 0.0 { 2.0 * ch.t.norm() * sqrt(l4 / l2) } else { 0.0 };

    let f = |n: Vec3| created_correlation_max_state(ch, n);
    let mut best = Vec3::Z;
    let mut best_value = f64::NEG_INFINITY;
    for n in fibonacci_sphere(nodes.max(1)) {
        let v = f(n);
        if v > best_value {
            best_value = v;
            best = n;
        }
    }

    let spacing = sqrt(4.0 * core::f64::consts::PI / nodes.max(1) as f64);
    let mut h = 2.0 * spacing;
    for _ in 0..REFINE_PASSES {
        let before = best_value;
        let e1 = best.any_orthogonal();
        let e2 = best.cross(e1);
        for dir in [e1, e2] {
            let centre = best;
            let along = |s: f64| (centre + dir * s).normalized().unwrap_or(centre);
            let s = golden_max(|s| f(along(s)), -h, h, GOLDEN_ITERATIONS);
            let candidate = along(s);
            let v = f(candidate);
            if v > best_value {
                best_value = v;
                best = candidate;
            }
        }
        if best_value - before <= 1e-16 * best_value.max(1.0) {
            h *= 0.25;
        }
    }

    QMax { value: best_value.max(0.0), argmax: best, formula_value }
}

/// Golden-section search for a maximum of `f` on `[lo, hi]`.
pub(crate) fn golden_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, iters: usize) -> f64 {
    let inv_phi = 0.5 * (sqrt(5.0) - 1.0);
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..iters {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }
    let mid = 0.5 * (lo + hi);
    // the bracket may have collapsed onto an endpoint; keep the best seen
    [(mid, f(mid)), (x1, f1), (x2, f2), (0.0, f(0.0))]
        .into_iter()
        .fold((0.0, f64::NEG_INFINITY), |a, b| if b.1 > a.1 { b } else { a })
        .0
}

/// Fibonacci lattice of `n` nearly uniform unit vectors.
pub fn fibonacci_sphere(n: usize) -> impl Iterator<Item = Vec3> {
    let golden_angle = core::f64::consts::PI * (3.0 - sqrt(5.0));
    (0..n).map(move |i| {
        let z = 1.0 - (2.0 * i as f64 + 1.0) / n as f64;
        let r = sqrt((1.0 - z * z).max(0.0));
        let phi = golden_angle * i as f64;
        Vec3::new(r * libm::cos(phi), r * libm::sin(phi), z)
    })
}
