use core::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use super::Vec3;

pub type C64 = Complex64;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Dense complex `N×N` matrix stored row-major.
#[derive(Clone, Copy, PartialEq)]
pub struct CMatrix<const N: usize> {
    data: [[C64; N]; N],
}

impl<const N: usize> core::fmt::Debug for CMatrix<N> {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_list().entries(self.data.iter()).finish()
    }
}

impl<const N: usize> CMatrix<N> {
    pub const fn from_rows(data: [[C64; N]; N]) -> Self {
        Self { data }
    }

    pub fn from_real(rows: [[f64; N]; N]) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.data[i][j] = C64::new(rows[i][j], 0.0);
            }
        }
        m
    }

    pub const fn zeros() -> Self {
        Self { data: [[ZERO; N]; N] }
    }

    pub fn identity() -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            m.data[i][i] = ONE;
        }
        m
    }

    pub fn diag_real(d: [f64; N]) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            m.data[i][i] = C64::new(d[i], 0.0);
        }
        m
    }

    pub fn rows(&self) -> &[[C64; N]; N] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.data[i][j] = self.data[j][i].conj();
            }
        }
        m
    }

    pub fn trace(&self) -> C64 {
        (0..N).map(|i| self.data[i][i]).sum()
    }

    pub fn scale(&self, s: C64) -> Self {
        let mut m = *self;
        for row in m.data.iter_mut() {
            for x in row.iter_mut() {
                *x *= s;
            }
        }
        m
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(C64::new(s, 0.0))
    }

    pub fn commutator(&self, other: &Self) -> Self {
        *self * *other - *other * *self
    }

    /// `U M U†`.
    pub fn conjugate_by(&self, u: &Self) -> Self {
        *u * *self * u.adjoint()
    }

    pub fn max_abs(&self) -> f64 {
        self.data
            .iter()
            .flat_map(|r| r.iter())
            .map(|x| x.norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (*self - *other).max_abs()
    }

    pub fn frobenius_sq(&self) -> f64 {
        self.data
            .iter()
            .flat_map(|r| r.iter())
            .map(|x| x.norm_sqr())
            .sum()
    }

    pub fn is_finite(&self) -> bool {
        self.data
            .iter()
            .flat_map(|r| r.iter())
            .all(|x| x.re.is_finite() && x.im.is_finite())
    }

    /// Largest entry of `|M − M†|`.
    pub fn hermitian_residual(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    pub fn column(&self, j: usize) -> [C64; N] {
        core::array::from_fn(|i| self.data[i][j])
    }
}

impl<const N: usize> Index<(usize, usize)> for CMatrix<N> {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i][j]
    }
}

impl<const N: usize> IndexMut<(usize, usize)> for CMatrix<N> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i][j]
    }
}

impl<const N: usize> Add for CMatrix<N> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self += rhs;
        self
    }
}

impl<const N: usize> AddAssign for CMatrix<N> {
    fn add_assign(&mut self, rhs: Self) {
        for i in 0..N {
            for j in 0..N {
                self.data[i][j] += rhs.data[i][j];
            }
        }
    }
}

impl<const N: usize> Sub for CMatrix<N> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for i in 0..N {
            for j in 0..N {
                self.data[i][j] -= rhs.data[i][j];
            }
        }
        self
    }
}

impl<const N: usize> Neg for CMatrix<N> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale_real(-1.0)
    }
}

impl<const N: usize> Mul for CMatrix<N> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for k in 0..N {
                let a = self.data[i][k];
                if a == ZERO {
                    continue;
                }
                for j in 0..N {
                    m.data[i][j] += a * rhs.data[k][j];
                }
            }
        }
        m
    }
}

/// Kronecker product `a ⊗ b` of two qubit operators, `a` on the left
/// (index `2i + j`).
pub fn kron(a: &CMatrix<2>, b: &CMatrix<2>) -> CMatrix<4> {
    let mut m = CMatrix::<4>::zeros();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    m[(2 * i + k, 2 * j + l)] = a[(i, j)] * b[(k, l)];
                }
            }
        }
    }
    m
}

/// Pauli matrices and Bloch-vector helpers.
pub mod pauli {
    use super::*;

    pub fn x() -> CMatrix<2> {
        CMatrix::from_rows([[ZERO, ONE], [ONE, ZERO]])
    }

    pub fn y() -> CMatrix<2> {
        CMatrix::from_rows([[ZERO, C64::new(0.0, -1.0)], [C64::new(0.0, 1.0), ZERO]])
    }

    pub fn z() -> CMatrix<2> {
        CMatrix::from_rows([[ONE, ZERO], [ZERO, -ONE]])
    }

    /// σ₁, σ₂, σ₃ in order.
    pub fn all() -> [CMatrix<2>; 3] {
        [x(), y(), z()]
    }

    /// `c₀ I + c·σ` for complex coefficients.
    pub fn combination(c0: C64, c: [C64; 3]) -> CMatrix<2> {
        CMatrix::from_rows([
            [c0 + c[2], c[0] - C64::i() * c[1]],
            [c[0] + C64::i() * c[1], c0 - c[2]],
        ])
    }

    /// `s I + v·σ` for real coefficients.
    pub fn real_combination(s: f64, v: Vec3) -> CMatrix<2> {
        combination(
            C64::new(s, 0.0),
            [C64::new(v.x, 0.0), C64::new(v.y, 0.0), C64::new(v.z, 0.0)],
        )
    }

    /// Coefficients `(c₀, c)` with `m = c₀ I + c·σ`, i.e. `c₀ = tr(m)/2`,
    /// `c_k = tr(σ_k m)/2`.
    pub fn decompose(m: &CMatrix<2>) -> (C64, [C64; 3]) {
        let half = C64::new(0.5, 0.0);
        let c0 = (m[(0, 0)] + m[(1, 1)]) * half;
        let cx = (m[(0, 1)] + m[(1, 0)]) * half;
        let cy = (m[(1, 0)] - m[(0, 1)]) * half * C64::new(0.0, -1.0);
        let cz = (m[(0, 0)] - m[(1, 1)]) * half;
        (c0, [cx, cy, cz])
    }
}
