//! Nearest classically correlated state to a pure-block quantum-classical
//! state `p₀ |n₀⟩⟨n₀| ⊗ |0⟩⟨0| + p₁ |n₁⟩⟨n₁| ⊗ |1⟩⟨1|`, maximizing the
//! root fidelity `tr √(√ρ σ √ρ)`.

use alloc::vec::Vec;
use core::f64::consts::FRAC_PI_2;

use crate::linalg::{sqrt, Vec3};
use crate::measures::fibonacci_sphere;
use crate::states::{CCState, FidelityReference, PureQCState};
use crate::{Error, Result};

/// Which family the optimum belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseTag {
    /// `n₀·n₁ ≥ 0`: both blocks share one A state, `s₀ = s₁`.
    Aligned,
    /// `n₀·n₁ ≤ 0`: opposite A states, `s₀ = −s₁`.
    Anti,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NearestCCResult {
    pub s0: Vec3,
    pub s1: Vec3,
    /// Block weights of the optimum are `(1 ± ξ)/2`.
    pub xi: f64,
    pub f_max: f64,
    pub case_tag: CaseTag,
    /// Polar angle of `s₀` in the plane of `n₀, n₁`, measured from the
    /// bisector `(n₀ + n₁)` towards `(n₁ − n₀)`.
    pub theta: f64,
    /// Half the angle between `n₀` and `n₁`.
    pub alpha: f64,
    /// `1 − f_max`.
    pub q_geometric: f64,
}

impl NearestCCResult {
    /// The optimum as a classical-classical state (B basis `Z`).
    pub fn to_cc_state(&self) -> CCState {
        let q0 = (0.5 * (1.0 + self.xi)).clamp(0.0, 1.0);
        let q1 = 1.0 - q0;
        let p = match self.case_tag {
            CaseTag::Aligned => [[q0, q1], [0.0, 0.0]],
            CaseTag::Anti => [[q0, 0.0], [0.0, q1]],
        };
        CCState { p, u_axis: self.s0, v_axis: Vec3::Z }
    }
}

fn candidate(p0: f64, p1: f64, n0: Vec3, n1: Vec3, case: CaseTag) -> Option<(Vec3, Vec3, f64, f64)> {
    let sign = match case {
        CaseTag::Aligned => 1.0,
        CaseTag::Anti => -1.0,
    };
    let w = n0 * p0 + n1 * (sign * p1);
    let norm = w.norm();
    if norm == 0.0 {
        return None;
    }
    let s0 = w * (1.0 / norm);
    let s1 = s0 * sign;
    let xi = ((p0 - p1) / norm).clamp(-1.0, 1.0);
    let f = 0.5
        * (sqrt((p0 * (1.0 + xi) * (1.0 + n0.dot(s0))).max(0.0))
            + sqrt((p1 * (1.0 - xi) * (1.0 + n1.dot(s1))).max(0.0)));
    Some((s0, s1, xi, f.min(1.0)))
}

/// Frame of the `n₀, n₁` plane: bisector `z`, difference `x`, half angle.
fn planar_frame(n0: Vec3, n1: Vec3) -> (Vec3, Vec3, f64) {
    let sum = n0 + n1;
    let diff = n1 - n0;
    let alpha = libm::atan2(0.5 * diff.norm(), 0.5 * sum.norm());
    match (sum.normalized(), diff.normalized()) {
        (Some(z), Some(x)) => (z, x, alpha),
        (Some(z), None) => (z, z.any_orthogonal(), 0.0),
        (None, Some(x)) => (x.any_orthogonal(), x, FRAC_PI_2),
        (None, None) => (Vec3::Z, Vec3::X, 0.0),
    }
}

/// Closed-form nearest CC state.
pub fn nearest_cc(p0: f64, p1: f64, n0: Vec3, n1: Vec3) -> Result<NearestCCResult> {
    let state = PureQCState::new(p0, n0, p1, n1)?;
    nearest_cc_state(&state)
}

pub fn nearest_cc_state(state: &PureQCState) -> Result<NearestCCResult> {
    let PureQCState { p0, p1, n0, n1 } = *state;
    let c = n0.dot(n1);
    const ORTHOGONAL: f64 = 1e-15;
    let aligned = (c >= -ORTHOGONAL).then(|| candidate(p0, p1, n0, n1, CaseTag::Aligned)).flatten();
    let anti = (c <= ORTHOGONAL).then(|| candidate(p0, p1, n0, n1, CaseTag::Anti)).flatten();
    let (case_tag, (s0, s1, xi, f_max)) = match (aligned, anti) {
        (Some(a), Some(b)) if b.3 > a.3 => (CaseTag::Anti, b),
        (Some(a), _) => (CaseTag::Aligned, a),
        (None, Some(b)) => (CaseTag::Anti, b),
        (None, None) => return Err(Error::DegenerateInput),
    };
    let (z, x, alpha) = planar_frame(n0, n1);
    let theta = libm::atan2(x.dot(s0), z.dot(s0));
    Ok(NearestCCResult { s0, s1, xi, f_max, case_tag, theta, alpha, q_geometric: 1.0 - f_max })
}

/// `1 − F_max`.
pub fn geometric_measure(p0: f64, p1: f64, n0: Vec3, n1: Vec3) -> Result<f64> {
    Ok(nearest_cc(p0, p1, n0, n1)?.q_geometric)
}

/// Residuals of the two stationarity conditions in `(θ, ξ)` for a given
/// case. Both vanish at the optimum.
///
/// In the anti case `s₁ = −s₀` sits at angle `θ + π`, so the overlap with
/// `n₁` is `|sin((θ−α)/2)|` and its derivative carries the sign
/// `σ = sign(sin((θ−α)/2))`.
pub fn stationarity_residuals(theta: f64, xi: f64, p0: f64, p1: f64, alpha: f64, case: CaseTag) -> (f64, f64) {
    let a = sqrt(p0 / (1.0 + xi));
    let b = sqrt(p1 / (1.0 - xi));
    let c = sqrt(p0 * (1.0 + xi));
    let d = sqrt(p1 * (1.0 - xi));
    let plus = 0.5 * (theta + alpha);
    let minus = 0.5 * (theta - alpha);
    match case {
        CaseTag::Aligned => (
            a * libm::cos(plus) - b * libm::cos(minus),
            c * libm::sin(plus) + d * libm::sin(minus),
        ),
        CaseTag::Anti => {
            let sigma = libm::sin(minus).signum();
            (
                a * libm::cos(plus) - sigma * b * libm::sin(minus),
                c * libm::sin(plus) - sigma * d * libm::cos(minus),
            )
        }
    }
}

pub const DEFAULT_ORACLE_BUDGET: usize = 40_000;
pub const MIN_ORACLE_BUDGET: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleResult {
    pub cc_state: CCState,
    pub fidelity: f64,
    pub evaluations: usize,
    /// Refined starts that finished within `1e-12` of the best.
    pub tie_count: usize,
}

#[derive(Debug, Clone, Copy)]
struct Point {
    u: Vec3,
    v: Vec3,
    w: [f64; 4],
}

impl Point {
    fn state(&self) -> CCState {
        let sq = self.w.map(|x| x * x);
        let total: f64 = sq.iter().sum();
        let p = if total > 0.0 { sq.map(|x| x / total) } else { [0.25; 4] };
        CCState { p: [[p[0], p[1]], [p[2], p[3]]], u_axis: self.u, v_axis: self.v }
    }

    fn moved(&self, coord: usize, h: f64) -> Point {
        let mut out = *self;
        let tangent = |n: Vec3, k: usize| {
            let e1 = n.any_orthogonal();
            let e = if k == 0 { e1 } else { n.cross(e1) };
            (n + e * h).normalized().unwrap_or(n)
        };
        match coord {
            0 | 1 => out.u = tangent(self.u, coord),
            2 | 3 => out.v = tangent(self.v, coord - 2),
            k => out.w[k - 4] += h,
        }
        out
    }
}

struct Budgeted<'a> {
    reference: FidelityReference<4>,
    used: usize,
    limit: usize,
    _state: &'a PureQCState,
}

impl Budgeted<'_> {
    fn eval(&mut self, p: &Point) -> f64 {
        self.used += 1;
        let f = self.reference.fidelity(&p.state().assemble());
        if f.is_nan() {
            f64::NEG_INFINITY
        } else {
            f
        }
    }

    fn exhausted(&self) -> bool {
        self.used >= self.limit
    }
}

fn hemisphere(n: usize) -> Vec<Vec3> {
    fibonacci_sphere(2 * n).filter(|p| p.z >= 0.0).collect()
}

fn simplex_grid(divisions: usize) -> Vec<[f64; 4]> {
    let mut out = Vec::new();
    let d = divisions as f64;
    for a in 0..=divisions {
        for b in 0..=divisions - a {
            for c in 0..=divisions - a - b {
                let e = divisions - a - b - c;
                out.push([a as f64 / d, b as f64 / d, c as f64 / d, e as f64 / d].map(sqrt));
            }
        }
    }
    out
}

const STARTS: usize = 8;
const HALVINGS: usize = 40;

/// Brute-force maximization of the fidelity over all CC states: a grid over
/// (A axis, B axis, weights) using about half of `budget` fidelity
/// evaluations, then coordinate descent with step halving from the best
/// grid point of each of the leading weight vectors.
pub fn oracle_nearest_cc(state: &PureQCState, budget: usize) -> Result<OracleResult> {
    if budget < MIN_ORACLE_BUDGET {
        return Err(Error::BudgetTooSmall(budget));
    }
    let mut fid = Budgeted {
        reference: FidelityReference::new(&state.assemble()),
        used: 0,
        limit: budget,
        _state: state,
    };

    let weights = simplex_grid(4);
    let per_axis = sqrt((budget / 2) as f64 / weights.len() as f64) as usize;
    let dirs = hemisphere(per_axis.max(1));

    // best grid point for each weight vector, so the starts cover distinct
    // weight patterns rather than one basin
    let mut best_per_weight: Vec<(f64, Point)> = Vec::with_capacity(weights.len());
    for &w in &weights {
        let mut best = (f64::NEG_INFINITY, Point { u: dirs[0], v: dirs[0], w });
        for &u in &dirs {
            for &v in &dirs {
                let p = Point { u, v, w };
                let f = fid.eval(&p);
                if f > best.0 {
                    best = (f, p);
                }
            }
        }
        best_per_weight.push(best);
    }
    // stable sort keeps ties in grid order
    best_per_weight.sort_by(|a, b| b.0.total_cmp(&a.0));

    let starts: Vec<(f64, Point)> = best_per_weight.into_iter().take(STARTS).collect();
    let share = (budget - fid.used) / starts.len().max(1);
    let mut finals = Vec::with_capacity(starts.len());
    for (k, &(mut best, mut point)) in starts.iter().enumerate() {
        fid.limit = (fid.used + share).min(budget);
        if k + 1 == starts.len() {
            fid.limit = budget;
        }
        let mut h = 0.25;
        let mut halvings = 0;
        while halvings < HALVINGS && !fid.exhausted() {
            let mut improved = false;
            for coord in 0..8 {
                for step in [h, -h] {
                    if fid.exhausted() {
                        break;
                    }
                    let trial = point.moved(coord, step);
                    let f = fid.eval(&trial);
                    if f > best {
                        best = f;
                        point = trial;
                        improved = true;
                        break;
                    }
                }
            }
            if !improved {
                h *= 0.5;
                halvings += 1;
            }
        }
        finals.push((best, point));
    }

    let (fidelity, point) = finals
        .iter()
        .copied()
        .fold((f64::NEG_INFINITY, finals[0].1), |a, b| if b.0 > a.0 { b } else { a });
    let tie_count = finals.iter().filter(|f| (f.0 - fidelity).abs() <= 1e-12).count();
    Ok(OracleResult { cc_state: point.state(), fidelity, evaluations: fid.used, tie_count })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::fidelity;

    #[test]
    fn orthogonal_benchmark() {
        let r = nearest_cc(0.5, 0.5, Vec3::Z, Vec3::X).unwrap();
        assert!((r.f_max - 0.923879532511287).abs() < 1e-12);
        assert!((r.q_geometric - 0.076120467488713).abs() < 1e-12);
        assert_eq!(r.xi, 0.0);
    }

    #[test]
    fn closed_form_matches_generic_fidelity() {
        let n1 = Vec3::new(0.6, 0.0, -0.8);
        for (p0, m) in [(0.3, Vec3::Z), (0.8, Vec3::new(0.0, 0.6, 0.8)), (0.5, Vec3::Z)] {
            let state = PureQCState::new(p0, m, 1.0 - p0, n1).unwrap();
            let r = nearest_cc_state(&state).unwrap();
            let f = fidelity(&state.assemble(), &r.to_cc_state().assemble());
            assert!((f - r.f_max).abs() < 1e-10, "{f} vs {}", r.f_max);
        }
    }

    #[test]
    fn squared_fidelity_identity() {
        let (p0, p1) = (0.35, 0.65);
        let n0 = Vec3::new(0.0, 0.6, 0.8);
        for n1 in [Vec3::X, Vec3::new(0.0, -0.6, 0.8), Vec3::new(0.0, 0.6, -0.8)] {
            let r = nearest_cc(p0, p1, n0, n1).unwrap();
            let sign = if r.case_tag == CaseTag::Aligned { 1.0 } else { -1.0 };
            let expected = 0.5 * (1.0 + (n0 * p0 + n1 * (sign * p1)).norm());
            assert!((r.f_max * r.f_max - expected).abs() < 1e-14);
        }
    }

    #[test]
    fn pure_limits() {
        let r = nearest_cc(1.0, 0.0, Vec3::X, Vec3::Z).unwrap();
        assert!((r.f_max - 1.0).abs() < 1e-15);
        let same = nearest_cc(0.4, 0.6, Vec3::Y, Vec3::Y).unwrap();
        assert!((same.f_max - 1.0).abs() < 1e-15);
        assert_eq!(same.case_tag, CaseTag::Aligned);
        let opposite = nearest_cc(0.5, 0.5, Vec3::Y, -Vec3::Y).unwrap();
        assert!((opposite.f_max - 1.0).abs() < 1e-15);
        assert_eq!(opposite.case_tag, CaseTag::Anti);
    }

    #[test]
    fn rejects_invalid_input() {
        assert!(nearest_cc(0.5, 0.6, Vec3::Z, Vec3::X).is_err());
        assert!(nearest_cc(0.5, 0.5, Vec3::Z * 0.9, Vec3::X).is_err());
    }

    #[test]
    fn stationarity_at_optimum() {
        for (p0, n1) in [
            (0.3, Vec3::new(0.6, 0.0, 0.8)),
            (0.7, Vec3::new(0.8, 0.0, 0.6)),
            (0.3, Vec3::new(0.6, 0.0, -0.8)),
            (0.8, Vec3::new(0.28, 0.0, -0.96)),
        ] {
            let r = nearest_cc(p0, 1.0 - p0, Vec3::Z, n1).unwrap();
            let (a, b) = stationarity_residuals(r.theta, r.xi, p0, 1.0 - p0, r.alpha, r.case_tag);
            assert!(a.abs() < 1e-12 && b.abs() < 1e-12, "{:?}: {a} {b}", r.case_tag);
        }
    }

    #[test]
    fn angle_relations() {
        let r = nearest_cc(0.3, 0.7, Vec3::Z, Vec3::new(0.6, 0.0, 0.8)).unwrap();
        assert!((r.xi + libm::sin(r.theta) / libm::sin(r.alpha)).abs() < 1e-14);
        let r = nearest_cc(0.3, 0.7, Vec3::Z, Vec3::new(0.6, 0.0, -0.8)).unwrap();
        assert!((r.xi - libm::cos(r.theta) / libm::cos(r.alpha)).abs() < 1e-14);
    }

    #[test]
    fn oracle_budget() {
        let s = PureQCState::new(0.5, Vec3::Z, 0.5, Vec3::X).unwrap();
        assert!(matches!(oracle_nearest_cc(&s, 100), Err(Error::BudgetTooSmall(100))));
    }

    #[test]
    fn simplex_grid_size() {
        assert_eq!(simplex_grid(4).len(), 35);
    }
}
