use super::{sqrt, CMatrix, C64};
use crate::{Error, Result, Tolerances};

const MAX_SWEEPS: usize = 64;

/// Eigen-decomposition `M = V diag(λ) V†` of a Hermitian matrix.
#[derive(Debug, Clone, Copy)]
pub struct HermitianEigen<const N: usize> {
    /// Ascending.
    pub values: [f64; N],
    /// Column `k` is the eigenvector for `values[k]`.
    pub vectors: CMatrix<N>,
}

impl<const N: usize> HermitianEigen<N> {
    /// `V f(Λ) V†`.
    pub fn map_values(&self, f: impl Fn(f64) -> f64) -> CMatrix<N> {
        let v = &self.vectors;
        let fl: [f64; N] = core::array::from_fn(|k| f(self.values[k]));
        let mut out = CMatrix::<N>::zeros();
        for i in 0..N {
            for j in 0..N {
                let mut acc = C64::new(0.0, 0.0);
                for k in 0..N {
                    acc += v[(i, k)] * v[(j, k)].conj() * fl[k];
                }
                out[(i, j)] = acc;
            }
        }
        out
    }

    pub fn min_value(&self) -> f64 {
        self.values[0]
    }
}

/// Cyclic Jacobi eigensolver for Hermitian matrices of dimension ≤ 4.
///
/// Stops once the off-diagonal Frobenius mass falls below
/// `tol.jacobi · ‖M‖_F`.
pub fn hermitian_eigensystem<const N: usize>(
    m: &CMatrix<N>,
    tol: &Tolerances,
) -> Result<HermitianEigen<N>> {
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    let residual = m.hermitian_residual();
    if residual > tol.hermitian * m.max_abs().max(1.0) {
        return Err(Error::NonHermitian { residual });
    }
    // symmetrize so rounding noise in the input does not leak into the result
    let mut a = (*m + m.adjoint()).scale_real(0.5);
    let mut v = CMatrix::<N>::identity();
    let scale = a.frobenius_sq();
    let stop = tol.jacobi * tol.jacobi * scale;

    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..N)
            .flat_map(|i| (0..N).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].norm_sqr())
            .sum();
        if off <= stop {
            break;
        }
        for p in 0..N {
            for q in (p + 1)..N {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut values: [f64; N] = core::array::from_fn(|i| a[(i, i)].re);
    let mut order: [usize; N] = core::array::from_fn(|i| i);
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
    let sorted_values = order.map(|k| values[k]);
    let mut vectors = CMatrix::<N>::zeros();
    for (col, &k) in order.iter().enumerate() {
        for i in 0..N {
            vectors[(i, col)] = v[(i, k)];
        }
    }
    values = sorted_values;
    Ok(HermitianEigen { values, vectors })
}

/// One Jacobi rotation annihilating `a[p][q]`.
fn rotate<const N: usize>(a: &mut CMatrix<N>, v: &mut CMatrix<N>, p: usize, q: usize) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r == 0.0 {
        return;
    }
    let phase = apq / r;
    let tau = (a[(q, q)].re - a[(p, p)].re) / (2.0 * r);
    let t = if tau >= 0.0 {
        1.0 / (tau + sqrt(1.0 + tau * tau))
    } else {
        -1.0 / (-tau + sqrt(1.0 + tau * tau))
    };
    let c = 1.0 / sqrt(1.0 + t * t);
    let s = t * c;
    // J = [[c, s·e^{iφ}], [−s·e^{−iφ}, c]] on the (p, q) plane
    let jpq = phase * s;
    let jqp = -phase.conj() * s;

    // A ← A J (columns p, q)
    for k in 0..N {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * c + akq * jqp;
        a[(k, q)] = akp * jpq + akq * c;
    }
    // A ← J† A (rows p, q)
    for k in 0..N {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * c + aqk * jqp.conj();
        a[(q, k)] = apk * jpq.conj() + aqk * c;
    }
    a[(p, q)] = C64::new(0.0, 0.0);
    a[(q, p)] = C64::new(0.0, 0.0);
    a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
    // V ← V J
    for k in 0..N {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c + vkq * jqp;
        v[(k, q)] = vkp * jpq + vkq * c;
    }
}

/// Square root of a positive semidefinite Hermitian matrix. Eigenvalues down
/// to `tol.psd` are clamped to zero; anything more negative is rejected.
pub fn psd_sqrt<const N: usize>(m: &CMatrix<N>, tol: &Tolerances) -> Result<CMatrix<N>> {
    let eig = hermitian_eigensystem(m, tol)?;
    if eig.min_value() < tol.psd {
        return Err(Error::NotDensityMatrix("negative eigenvalue"));
    }
    Ok(eig.map_values(|x| sqrt(x.max(0.0))))
}

/// Trace norm `tr √(M†M)`, the sum of singular values.
///
/// Hermitian and anti-Hermitian inputs use `Σ|λ|` directly; everything else
/// goes through the eigenvalues of `M†M`.
pub fn trace_norm<const N: usize>(m: &CMatrix<N>) -> f64 {
    let tol = Tolerances::DEFAULT;
    let size = m.max_abs();
    if size == 0.0 {
        return 0.0;
    }
    let normal_band = 1e-14 * size;
    if m.hermitian_residual() <= normal_band {
        if let Ok(e) = hermitian_eigensystem(m, &tol) {
            return e.values.iter().map(|x| x.abs()).sum();
        }
    }
    let anti = *m + m.adjoint();
    if anti.max_abs() <= normal_band {
        let h = m.scale(C64::new(0.0, -1.0));
        if let Ok(e) = hermitian_eigensystem(&h, &tol) {
            return e.values.iter().map(|x| x.abs()).sum();
        }
    }
    let gram = m.adjoint() * *m;
    match hermitian_eigensystem(&gram, &tol) {
        Ok(e) => e.values.iter().map(|&x| sqrt(x.max(0.0))).sum(),
        Err(_) => f64::NAN,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{pauli, Vec3};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn sample_hermitian() -> CMatrix<4> {
        let mut m = CMatrix::<4>::zeros();
        let vals = [0.3, -1.1, 0.7, 2.0, 0.25, -0.4, 0.9, 0.05, 1.3, -0.6];
        let mut n = 0;
        for i in 0..4 {
            m[(i, i)] = c(vals[n], 0.0);
            n += 1;
        }
        for i in 0..4 {
            for j in (i + 1)..4 {
                let z = c(vals[n % 10], vals[(n + 3) % 10]);
                m[(i, j)] = z;
                m[(j, i)] = z.conj();
                n += 1;
            }
        }
        m
    }

    #[test]
    fn diagonal_input() {
        let e = hermitian_eigensystem(&CMatrix::<2>::diag_real([1.0, 2.0]), &Tolerances::DEFAULT)
            .unwrap();
        assert_eq!(e.values, [1.0, 2.0]);
        assert!(e.vectors.max_abs_diff(&CMatrix::identity()) < 1e-15);
    }

    #[test]
    fn pure_state_projector_spectrum() {
        let rho = pauli::real_combination(0.5, Vec3::X * 0.5);
        let e = hermitian_eigensystem(&rho, &Tolerances::DEFAULT).unwrap();
        assert!(e.values[0].abs() < 1e-15);
        assert!((e.values[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn reconstruction_and_orthonormality() {
        let h = sample_hermitian();
        let e = hermitian_eigensystem(&h, &Tolerances::DEFAULT).unwrap();
        assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
        assert!(e.map_values(|x| x).max_abs_diff(&h) < 1e-12);
        let gram = e.vectors.adjoint() * e.vectors;
        assert!(gram.max_abs_diff(&CMatrix::identity()) < 1e-12);
        for k in 0..4 {
            let col = e.vectors.column(k);
            for i in 0..4 {
                let hv: C64 = (0..4).map(|j| h[(i, j)] * col[j]).sum();
                assert!((hv - col[i] * e.values[k]).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = CMatrix::<2>::from_rows([[c(1.0, 0.0), c(1.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]]);
        assert!(matches!(
            hermitian_eigensystem(&m, &Tolerances::DEFAULT),
            Err(Error::NonHermitian { .. })
        ));
    }

    #[test]
    fn trace_norm_examples() {
        assert_eq!(trace_norm(&CMatrix::<2>::zeros()), 0.0);
        let n = Vec3::new(1.0, 2.0, -2.0) * (1.0 / 3.0);
        assert!((trace_norm(&pauli::real_combination(0.0, n)) - 2.0).abs() < 1e-14);
    }

    #[test]
    fn trace_norm_of_commutator_shape() {
        // (i/2)(r0 × r1)·σ, compared to singular values from the Gram matrix
        let r0 = Vec3::new(0.3, 0.1, -0.5);
        let r1 = Vec3::new(-0.2, 0.6, 0.1);
        let w = r0.cross(r1);
        let m = pauli::real_combination(0.0, w).scale(c(0.0, 0.5));
        let gram = m.adjoint() * m;
        let e = hermitian_eigensystem(&gram, &Tolerances::DEFAULT).unwrap();
        let oracle: f64 = e.values.iter().map(|x| sqrt(x.max(0.0))).sum();
        assert!((trace_norm(&m) - w.norm()).abs() < 1e-14);
        assert!((oracle - w.norm()).abs() < 1e-12);
    }

    #[test]
    fn psd_sqrt_squares_back() {
        let h = sample_hermitian();
        let p = h.adjoint() * h;
        let r = psd_sqrt(&p, &Tolerances::DEFAULT).unwrap();
        assert!((r * r).max_abs_diff(&p) < 1e-11);
    }
}
