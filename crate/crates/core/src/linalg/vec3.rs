use core::ops::{Add, AddAssign, Index, Mul, Neg, Sub};

use super::sqrt;

/// Real 3-vector; Bloch coordinates in most of the crate.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3::new(0.0, 0.0, 0.0);
    pub const X: Vec3 = Vec3::new(1.0, 0.0, 0.0);
    pub const Y: Vec3 = Vec3::new(0.0, 1.0, 0.0);
    pub const Z: Vec3 = Vec3::new(0.0, 0.0, 1.0);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        Self::new(a[0], a[1], a[2])
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    /// Unit vector with polar angle `theta` from +z and azimuth `phi`.
    pub fn from_spherical(theta: f64, phi: f64) -> Self {
        let st = libm::sin(theta);
        Self::new(st * libm::cos(phi), st * libm::sin(phi), libm::cos(theta))
    }

    pub fn dot(self, o: Vec3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(self, o: Vec3) -> Vec3 {
        cross(self, o)
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        sqrt(self.norm_sq())
    }

    /// `None` for the zero vector.
    pub fn normalized(self) -> Option<Vec3> {
        let n = self.norm();
        (n > 0.0).then(|| self * (1.0 / n))
    }

    pub fn max_abs(self) -> f64 {
        self.x.abs().max(self.y.abs()).max(self.z.abs())
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Some unit vector orthogonal to `self` (which must be nonzero).
    pub fn any_orthogonal(self) -> Vec3 {
        // cross with the axis least aligned with self
        let a = [self.x.abs(), self.y.abs(), self.z.abs()];
        let axis = if a[0] <= a[1] && a[0] <= a[2] {
            Vec3::X
        } else if a[1] <= a[2] {
            Vec3::Y
        } else {
            Vec3::Z
        };
        self.cross(axis).normalized().unwrap_or(Vec3::X)
    }
}

/// Standard right-handed cross product.
pub fn cross(a: Vec3, b: Vec3) -> Vec3 {
    Vec3::new(
        a.y * b.z - a.z * b.y,
        a.z * b.x - a.x * b.z,
        a.x * b.y - a.y * b.x,
    )
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl AddAssign for Vec3 {
    fn add_assign(&mut self, o: Vec3) {
        *self = *self + o;
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Mul<Vec3> for f64 {
    type Output = Vec3;
    fn mul(self, v: Vec3) -> Vec3 {
        v * self
    }
}

impl Index<usize> for Vec3 {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        match i {
            0 => &self.x,
            1 => &self.y,
            2 => &self.z,
            _ => panic!("Vec3 index {i} out of range"),
        }
    }
}

/// Real 3×3 matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat3(pub [[f64; 3]; 3]);

impl Default for Mat3 {
    fn default() -> Self {
        Mat3::ZERO
    }
}

impl Mat3 {
    pub const ZERO: Mat3 = Mat3([[0.0; 3]; 3]);
    pub const IDENTITY: Mat3 = Mat3([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);

    pub fn diag(d: [f64; 3]) -> Mat3 {
        Mat3([[d[0], 0.0, 0.0], [0.0, d[1], 0.0], [0.0, 0.0, d[2]]])
    }

    /// `b aᵀ`, the rank-one map `r ↦ (a·r) b`.
    pub fn outer(b: Vec3, a: Vec3) -> Mat3 {
        Mat3(core::array::from_fn(|i| core::array::from_fn(|j| b[i] * a[j])))
    }

    /// Matrix with the given vectors as columns.
    pub fn from_columns(c: [Vec3; 3]) -> Mat3 {
        Mat3(core::array::from_fn(|i| core::array::from_fn(|j| c[j][i])))
    }

    /// Matrix of `v ↦ t × v`.
    pub fn cross_matrix(t: Vec3) -> Mat3 {
        Mat3([[0.0, -t.z, t.y], [t.z, 0.0, -t.x], [-t.y, t.x, 0.0]])
    }

    pub fn column(&self, j: usize) -> Vec3 {
        Vec3::new(self.0[0][j], self.0[1][j], self.0[2][j])
    }

    pub fn row(&self, i: usize) -> Vec3 {
        Vec3::from_array(self.0[i])
    }

    pub fn transpose(&self) -> Mat3 {
        Mat3(core::array::from_fn(|i| core::array::from_fn(|j| self.0[j][i])))
    }

    pub fn det(&self) -> f64 {
        self.row(0).dot(self.row(1).cross(self.row(2)))
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().map(|x| x.abs()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, o: &Mat3) -> f64 {
        (*self - *o).max_abs()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|x| x.is_finite())
    }

    pub fn scale(&self, s: f64) -> Mat3 {
        Mat3(self.0.map(|r| r.map(|x| x * s)))
    }
}

impl Mul<Vec3> for Mat3 {
    type Output = Vec3;
    fn mul(self, v: Vec3) -> Vec3 {
        Vec3::new(self.row(0).dot(v), self.row(1).dot(v), self.row(2).dot(v))
    }
}

impl Mul for Mat3 {
    type Output = Mat3;
    fn mul(self, o: Mat3) -> Mat3 {
        Mat3(core::array::from_fn(|i| {
            core::array::from_fn(|j| (0..3).map(|k| self.0[i][k] * o.0[k][j]).sum())
        }))
    }
}

impl Add for Mat3 {
    type Output = Mat3;
    fn add(self, o: Mat3) -> Mat3 {
        Mat3(core::array::from_fn(|i| core::array::from_fn(|j| self.0[i][j] + o.0[i][j])))
    }
}

impl Sub for Mat3 {
    type Output = Mat3;
    fn sub(self, o: Mat3) -> Mat3 {
        Mat3(core::array::from_fn(|i| core::array::from_fn(|j| self.0[i][j] - o.0[i][j])))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cross_basics() {
        assert_eq!(Vec3::X.cross(Vec3::Y), Vec3::Z);
        let a = Vec3::new(0.3, -1.2, 2.0);
        assert_eq!(a.cross(a), Vec3::ZERO);
    }

    #[test]
    fn lagrange_identity() {
        let a = Vec3::new(0.3, -1.2, 2.0);
        let b = Vec3::new(-0.7, 0.4, 1.1);
        let lhs = a.cross(b).norm_sq() + a.dot(b) * a.dot(b);
        assert!((lhs - a.norm_sq() * b.norm_sq()).abs() < 1e-12);
        let c = a.cross(b);
        assert!(c.dot(a).abs() < 1e-14 && c.dot(b).abs() < 1e-14);
        assert_eq!(b.cross(a), -c);
    }

    #[test]
    fn cross_matrix_matches_cross() {
        let t = Vec3::new(0.1, 0.2, -0.3);
        let v = Vec3::new(1.0, -2.0, 0.5);
        assert!((Mat3::cross_matrix(t) * v - t.cross(v)).max_abs() < 1e-15);
    }

    #[test]
    fn any_orthogonal_is_unit_and_orthogonal() {
        for v in [Vec3::X, Vec3::Z, Vec3::new(1.0, 1.0, 1e-9), Vec3::new(-3.0, 0.2, 0.1)] {
            let w = v.any_orthogonal();
            assert!((w.norm() - 1.0).abs() < 1e-14);
            assert!(w.dot(v).abs() < 1e-14);
        }
    }
}
