//! Small dense linear algebra: complex N×N matrices for N ≤ 4, a Hermitian
//! Jacobi eigensolver, trace norm, and real 3-vectors / 3×3 matrices with a
//! rotation-signed SVD.

mod complex;
mod eigen;
mod svd3;
mod vec3;

pub use complex::{kron, pauli, CMatrix, C64};
pub use eigen::{hermitian_eigensystem, psd_sqrt, trace_norm, HermitianEigen};
pub use svd3::{svd3_rotations, Svd3};
pub use vec3::{cross, Mat3, Vec3};

#[inline]
pub(crate) fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}
