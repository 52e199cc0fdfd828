use super::{sqrt, Mat3, Vec3};

/// `L = S · diag(d) · T` with `S`, `T` proper rotations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Svd3 {
    pub s: Mat3,
    /// Signed diagonal, descending in magnitude.
    pub d: [f64; 3],
    pub t: Mat3,
}

impl Svd3 {
    pub fn reconstruct(&self) -> Mat3 {
        self.s * Mat3::diag(self.d) * self.t
    }

    /// Right singular vectors (rows of `T`).
    pub fn right_vectors(&self) -> [Vec3; 3] {
        [self.t.row(0), self.t.row(1), self.t.row(2)]
    }

    /// Left singular vectors (columns of `S`).
    pub fn left_vectors(&self) -> [Vec3; 3] {
        [self.s.column(0), self.s.column(1), self.s.column(2)]
    }
}

const MAX_SWEEPS: usize = 60;

/// SVD of a real 3×3 matrix with both factors forced into SO(3).
///
/// One-sided (Hestenes) Jacobi on the columns of `L`. Each right singular
/// vector is sign-normalized so its first nonzero component is positive;
/// determinant fixes are then absorbed into the sign of the smallest
/// diagonal entry.
pub fn svd3_rotations(l: &Mat3) -> Svd3 {
    let mut a = *l;
    let mut v = Mat3::IDENTITY;

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..2 {
            for q in (p + 1)..3 {
                let cp = a.column(p);
                let cq = a.column(q);
                let alpha = cp.norm_sq();
                let beta = cq.norm_sq();
                let gamma = cp.dot(cq);
                if gamma.abs() <= 1e-15 * sqrt(alpha * beta) || gamma == 0.0 {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + sqrt(1.0 + zeta * zeta));
                let t = if zeta == 0.0 { 1.0 } else { t };
                let c = 1.0 / sqrt(1.0 + t * t);
                let s = c * t;
                for m in [&mut a, &mut v] {
                    for k in 0..3 {
                        let xp = m.0[k][p];
                        let xq = m.0[k][q];
                        m.0[k][p] = c * xp - s * xq;
                        m.0[k][q] = s * xp + c * xq;
                    }
                }
            }
        }
        if !rotated {
            break;
        }
    }

    // columns of A = L V are σ_k u_k
    let mut sigma: [f64; 3] = core::array::from_fn(|k| a.column(k).norm());
    let mut order = [0usize, 1, 2];
    order.sort_by(|&i, &j| sigma[j].total_cmp(&sigma[i]));
    sigma = order.map(|k| sigma[k]);
    let mut right: [Vec3; 3] = order.map(|k| v.column(k));
    let cols: [Vec3; 3] = order.map(|k| a.column(k));

    let scale = sigma[0];
    let floor = 1e-14 * scale.max(f64::MIN_POSITIVE);
    let mut left = [Vec3::ZERO; 3];
    let mut have = [false; 3];
    for k in 0..3 {
        if sigma[k] > floor {
            left[k] = cols[k] * (1.0 / sigma[k]);
            have[k] = true;
        }
    }
    complete_basis(&mut left, &have);

    for k in 0..3 {
        if first_nonzero_negative(right[k]) {
            right[k] = -right[k];
            left[k] = -left[k];
        }
    }

    let mut d = sigma;
    let mut t = Mat3([right[0].to_array(), right[1].to_array(), right[2].to_array()]);
    if t.det() < 0.0 {
        right[2] = -right[2];
        t = Mat3([right[0].to_array(), right[1].to_array(), right[2].to_array()]);
        d[2] = -d[2];
    }
    let mut s = Mat3::from_columns(left);
    if s.det() < 0.0 {
        left[2] = -left[2];
        s = Mat3::from_columns(left);
        d[2] = -d[2];
    }
    Svd3 { s, d, t }
}

fn first_nonzero_negative(v: Vec3) -> bool {
    for x in v.to_array() {
        if x.abs() > 1e-12 {
            return x < 0.0;
        }
    }
    false
}

/// Fill the missing left vectors of a rank-deficient matrix with an
/// orthonormal completion.
fn complete_basis(left: &mut [Vec3; 3], have: &[bool; 3]) {
    match have {
        [true, true, true] => {}
        [true, true, false] => left[2] = left[0].cross(left[1]),
        [true, false, false] => {
            left[1] = left[0].any_orthogonal();
            left[2] = left[0].cross(left[1]);
        }
        _ => *left = [Vec3::X, Vec3::Y, Vec3::Z],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{hermitian_eigensystem, CMatrix};
    use crate::Tolerances;

    fn is_rotation(m: &Mat3) -> bool {
        (*m * m.transpose()).max_abs_diff(&Mat3::IDENTITY) < 1e-12 && (m.det() - 1.0).abs() < 1e-12
    }

    fn singular_values_oracle(l: &Mat3) -> [f64; 3] {
        let g = l.transpose() * *l;
        let e = hermitian_eigensystem(&CMatrix::<3>::from_real(g.0), &Tolerances::DEFAULT).unwrap();
        [e.values[2], e.values[1], e.values[0]].map(|x| sqrt(x.max(0.0)))
    }

    #[test]
    fn identity() {
        let svd = svd3_rotations(&Mat3::IDENTITY);
        assert_eq!(svd.d, [1.0, 1.0, 1.0]);
        assert!(svd.s.max_abs_diff(&Mat3::IDENTITY) < 1e-15);
        assert!(svd.t.max_abs_diff(&Mat3::IDENTITY) < 1e-15);
    }

    #[test]
    fn amplitude_damping_block() {
        let g: f64 = 0.5;
        let l = Mat3::diag([sqrt(1.0 - g), sqrt(1.0 - g), 1.0 - g]);
        let svd = svd3_rotations(&l);
        let oracle = singular_values_oracle(&l);
        for k in 0..3 {
            assert!((svd.d[k].abs() - oracle[k]).abs() < 1e-12);
        }
        assert!((svd.d[0] - 0.5f64.sqrt()).abs() < 1e-14);
        assert!((svd.d[2].abs() - 0.5).abs() < 1e-14);
        assert!(is_rotation(&svd.s) && is_rotation(&svd.t));
        assert!(svd.reconstruct().max_abs_diff(&l) < 1e-14);
    }

    #[test]
    fn negative_determinant_goes_into_d() {
        let l = Mat3([[0.2, -0.5, 0.1], [0.7, 0.3, -0.2], [0.1, 0.4, 0.9]]).scale(1.0);
        let flipped = Mat3([[-0.2, 0.5, -0.1], [0.7, 0.3, -0.2], [0.1, 0.4, 0.9]]);
        for m in [l, flipped] {
            let svd = svd3_rotations(&m);
            assert!(is_rotation(&svd.s) && is_rotation(&svd.t));
            assert!(svd.reconstruct().max_abs_diff(&m) < 1e-12);
            let negatives = svd.d.iter().filter(|x| **x < 0.0).count();
            assert_eq!(negatives % 2 == 1, m.det() < 0.0);
        }
    }

    #[test]
    fn rank_deficient_and_zero() {
        let b = Vec3::new(0.6, 0.0, 0.8);
        let a = Vec3::new(0.1, -0.3, 0.2);
        for m in [Mat3::outer(b, a), Mat3::ZERO, Mat3::diag([1.0, 0.5, 0.0])] {
            let svd = svd3_rotations(&m);
            assert!(is_rotation(&svd.s) && is_rotation(&svd.t));
            assert!(svd.reconstruct().max_abs_diff(&m) < 1e-14);
        }
    }
}
