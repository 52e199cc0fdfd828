//! Qubit and two-qubit states.
//!
//! Two-qubit operators use A-major ordering: `A ⊗ B` with the A factor on
//! the left (basis index `2a + b`). Party B is the classical side of a
//! quantum-classical state.

use crate::linalg::{
    hermitian_eigensystem, kron, pauli, sqrt, CMatrix, Vec3, C64,
};
use crate::{Error, Result, Tolerances};

/// Positive, unit-trace Hermitian matrix of dimension `N` (2 or 4).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix<const N: usize> {
    m: CMatrix<N>,
}

pub type QubitState = DensityMatrix<2>;
pub type TwoQubitState = DensityMatrix<4>;

impl<const N: usize> DensityMatrix<N> {
    pub fn new(m: CMatrix<N>) -> Result<Self> {
        Self::with_tolerances(m, &Tolerances::DEFAULT)
    }

    pub fn with_tolerances(m: CMatrix<N>, tol: &Tolerances) -> Result<Self> {
        let eig = hermitian_eigensystem(&m, tol)?;
        let tr = m.trace();
        if (tr.re - 1.0).abs() > tol.trace || tr.im.abs() > tol.trace {
            return Err(Error::NotDensityMatrix("trace differs from 1"));
        }
        if eig.min_value() < tol.psd {
            return Err(Error::NotDensityMatrix("negative eigenvalue"));
        }
        Ok(Self { m })
    }

    pub(crate) fn new_unchecked(m: CMatrix<N>) -> Self {
        Self { m }
    }

    pub fn matrix(&self) -> &CMatrix<N> {
        &self.m
    }

    /// `U ρ U†`.
    pub fn conjugate_by(&self, u: &CMatrix<N>) -> Self {
        Self { m: self.m.conjugate_by(u) }
    }

    /// Convex combination `λ ρ + (1 − λ) σ`.
    pub fn mix(&self, other: &Self, lambda: f64) -> Self {
        Self { m: self.m.scale_real(lambda) + other.m.scale_real(1.0 - lambda) }
    }
}

impl DensityMatrix<2> {
    /// `½(I + r·σ)`.
    pub fn from_bloch(r: Vec3) -> Result<Self> {
        if !r.is_finite() {
            return Err(Error::NonFinite);
        }
        let norm = r.norm();
        if norm > 1.0 + Tolerances::DEFAULT.bloch {
            return Err(Error::BlochNormExceeded { norm });
        }
        Ok(Self { m: pauli::real_combination(0.5, r * 0.5) })
    }

    /// `r_k = tr(ρ σ_k)`.
    pub fn bloch(&self) -> Vec3 {
        let (_, c) = pauli::decompose(&self.m);
        Vec3::new(2.0 * c[0].re, 2.0 * c[1].re, 2.0 * c[2].re)
    }
}

pub fn density_from_bloch(r: Vec3) -> Result<QubitState> {
    DensityMatrix::from_bloch(r)
}

pub fn bloch_from_density(rho: &QubitState) -> Vec3 {
    rho.bloch()
}

/// Projector `|n⟩⟨n| = ½(I + n·σ)` for a unit `n`.
pub fn projector(n: Vec3) -> CMatrix<2> {
    pauli::real_combination(0.5, n * 0.5)
}

fn basis_projector(j: usize) -> CMatrix<2> {
    if j == 0 {
        CMatrix::diag_real([1.0, 0.0])
    } else {
        CMatrix::diag_real([0.0, 1.0])
    }
}

/// Unitary taking `|v⟩ ↦ |0⟩` (and `|−v⟩ ↦ |1⟩` up to phase).
pub fn rotation_to_z(v: Vec3) -> CMatrix<2> {
    // rotate about axis v × z by the angle between v and z
    let cos = v.z.clamp(-1.0, 1.0);
    let axis = v.cross(Vec3::Z);
    let axis = axis.normalized().unwrap_or(Vec3::X);
    let half = libm::acos(cos) * 0.5;
    let (s, c) = (libm::sin(half), libm::cos(half));
    // exp(−i half axis·σ)
    pauli::combination(
        C64::new(c, 0.0),
        [C64::new(0.0, -s * axis.x), C64::new(0.0, -s * axis.y), C64::new(0.0, -s * axis.z)],
    )
}

/// `ρ = X₀ ⊗ |0⟩⟨0| + X₁ ⊗ |1⟩⟨1|` with positive `X₀`, `X₁` on party A.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QCState {
    pub x0: CMatrix<2>,
    pub x1: CMatrix<2>,
}

impl QCState {
    pub fn new(x0: CMatrix<2>, x1: CMatrix<2>) -> Result<Self> {
        let tol = Tolerances::DEFAULT;
        for x in [&x0, &x1] {
            let e = hermitian_eigensystem(x, &tol)?;
            if e.min_value() < tol.psd {
                return Err(Error::NotDensityMatrix("block is not positive"));
            }
        }
        let tr = (x0.trace() + x1.trace()).re;
        if (tr - 1.0).abs() > tol.trace {
            return Err(Error::NotDensityMatrix("block traces do not sum to 1"));
        }
        Ok(Self { x0, x1 })
    }

    /// `p₀ ½(I + r₀·σ) ⊗ |0⟩⟨0| + p₁ ½(I + r₁·σ) ⊗ |1⟩⟨1|`.
    pub fn from_bloch(p0: f64, r0: Vec3, p1: f64, r1: Vec3) -> Result<Self> {
        check_pair(p0, p1)?;
        let rho0 = DensityMatrix::from_bloch(r0)?;
        let rho1 = DensityMatrix::from_bloch(r1)?;
        Ok(Self { x0: rho0.matrix().scale_real(p0), x1: rho1.matrix().scale_real(p1) })
    }

    pub fn blocks(&self) -> [CMatrix<2>; 2] {
        [self.x0, self.x1]
    }

    /// Block weights `p_j = tr X_j` and Bloch vectors of `X_j / p_j`
    /// (zero vector for an empty block).
    pub fn bloch_form(&self) -> (f64, Vec3, f64, Vec3) {
        let split = |x: &CMatrix<2>| {
            let (c0, c) = pauli::decompose(x);
            let p = 2.0 * c0.re;
            let r = if p > 0.0 {
                Vec3::new(c[0].re, c[1].re, c[2].re) * (2.0 / p)
            } else {
                Vec3::ZERO
            };
            (p, r)
        };
        let (p0, r0) = split(&self.x0);
        let (p1, r1) = split(&self.x1);
        (p0, r0, p1, r1)
    }

    /// The 4×4 density matrix (A-major).
    pub fn assemble(&self) -> TwoQubitState {
        DensityMatrix::new_unchecked(
            kron(&self.x0, &basis_projector(0)) + kron(&self.x1, &basis_projector(1)),
        )
    }

    /// Reads the blocks of a two-qubit state that is quantum-classical with
    /// respect to the B basis `{|v⟩, |−v⟩}`. The B party is first rotated to
    /// the computational basis; coherences between the two blocks must vanish.
    pub fn from_density(rho: &TwoQubitState, v_axis: Vec3, tol: &Tolerances) -> Result<Self> {
        let u = kron(&CMatrix::identity(), &rotation_to_z(v_axis));
        let m = rho.matrix().conjugate_by(&u);
        let mut x0 = CMatrix::<2>::zeros();
        let mut x1 = CMatrix::<2>::zeros();
        let mut coherence = 0.0f64;
        for a in 0..2 {
            for b in 0..2 {
                x0[(a, b)] = m[(2 * a, 2 * b)];
                x1[(a, b)] = m[(2 * a + 1, 2 * b + 1)];
                coherence = coherence.max(m[(2 * a, 2 * b + 1)].norm());
                coherence = coherence.max(m[(2 * a + 1, 2 * b)].norm());
            }
        }
        if coherence > tol.classical_block {
            return Err(Error::NotQuantumClassical { residual: coherence });
        }
        Ok(Self { x0, x1 })
    }

    /// Same unitary applied to both blocks (a local unitary on A).
    pub fn conjugate_by(&self, u: &CMatrix<2>) -> Self {
        Self { x0: self.x0.conjugate_by(u), x1: self.x1.conjugate_by(u) }
    }
}

/// `p₀ |n₀⟩⟨n₀| ⊗ |0⟩⟨0| + p₁ |n₁⟩⟨n₁| ⊗ |1⟩⟨1|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PureQCState {
    pub p0: f64,
    pub p1: f64,
    pub n0: Vec3,
    pub n1: Vec3,
}

impl PureQCState {
    pub fn new(p0: f64, n0: Vec3, p1: f64, n1: Vec3) -> Result<Self> {
        check_pair(p0, p1)?;
        let tol = Tolerances::DEFAULT.bloch;
        for n in [n0, n1] {
            let norm = n.norm();
            if !n.is_finite() || (norm - 1.0).abs() > tol {
                return Err(Error::NonUnitVector { norm });
            }
        }
        Ok(Self { p0, p1, n0, n1 })
    }

    pub fn to_qc(&self) -> QCState {
        QCState {
            x0: projector(self.n0).scale_real(self.p0),
            x1: projector(self.n1).scale_real(self.p1),
        }
    }

    pub fn assemble(&self) -> TwoQubitState {
        self.to_qc().assemble()
    }
}

/// `Σ p_ij |u_i⟩⟨u_i| ⊗ |v_j⟩⟨v_j|` with `u_0 = u`, `u_1 = −u` on the
/// Bloch sphere (and likewise for `v`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CCState {
    /// `p[i][j]`: `i` indexes the A basis, `j` the B basis.
    pub p: [[f64; 2]; 2],
    pub u_axis: Vec3,
    pub v_axis: Vec3,
}

impl CCState {
    pub fn new(p: [[f64; 2]; 2], u_axis: Vec3, v_axis: Vec3) -> Result<Self> {
        let flat = [p[0][0], p[0][1], p[1][0], p[1][1]];
        if flat.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        if flat.iter().any(|&x| x < 0.0) {
            return Err(Error::InvalidProbabilities("negative entry"));
        }
        if (flat.iter().sum::<f64>() - 1.0).abs() > Tolerances::DEFAULT.trace {
            return Err(Error::InvalidProbabilities("entries do not sum to 1"));
        }
        for n in [u_axis, v_axis] {
            let norm = n.norm();
            if (norm - 1.0).abs() > Tolerances::DEFAULT.bloch {
                return Err(Error::NonUnitVector { norm });
            }
        }
        Ok(Self { p, u_axis, v_axis })
    }

    /// `½(|0⟩⟨0| ⊗ |0⟩⟨0| + |1⟩⟨1| ⊗ |1⟩⟨1|)` with the A basis along `n`.
    pub fn maximally_correlated(n: Vec3) -> Result<Self> {
        Self::new([[0.5, 0.0], [0.0, 0.5]], n, Vec3::Z)
    }

    pub fn a_projector(&self, i: usize) -> CMatrix<2> {
        projector(if i == 0 { self.u_axis } else { -self.u_axis })
    }

    pub fn b_projector(&self, j: usize) -> CMatrix<2> {
        projector(if j == 0 { self.v_axis } else { -self.v_axis })
    }

    pub fn assemble(&self) -> TwoQubitState {
        let mut m = CMatrix::<4>::zeros();
        for i in 0..2 {
            for j in 0..2 {
                m += kron(&self.a_projector(i), &self.b_projector(j)).scale_real(self.p[i][j]);
            }
        }
        DensityMatrix::new_unchecked(m)
    }
}

fn check_pair(p0: f64, p1: f64) -> Result<()> {
    if !p0.is_finite() || !p1.is_finite() {
        return Err(Error::NonFinite);
    }
    if p0 < 0.0 || p1 < 0.0 {
        return Err(Error::InvalidProbabilities("negative weight"));
    }
    if (p0 + p1 - 1.0).abs() > Tolerances::DEFAULT.trace {
        return Err(Error::InvalidProbabilities("weights do not sum to 1"));
    }
    Ok(())
}

/// Uhlmann root fidelity `tr √(√ρ σ √ρ)`.
pub fn fidelity<const N: usize>(rho: &DensityMatrix<N>, sigma: &DensityMatrix<N>) -> f64 {
    FidelityReference::new(rho).fidelity(sigma)
}

/// Eigenvalues below this multiple of the largest are treated as zero, so
/// rounding noise in a rank-deficient spectrum is not amplified by `√`.
const SPECTRAL_FLOOR: f64 = 1e-14;

/// Caches `√ρ` for repeated fidelity evaluations against one state.
#[derive(Debug, Clone, Copy)]
pub struct FidelityReference<const N: usize> {
    sqrt_rho: CMatrix<N>,
}

impl<const N: usize> FidelityReference<N> {
    pub fn new(rho: &DensityMatrix<N>) -> Self {
        let sqrt_rho = match hermitian_eigensystem(rho.matrix(), &Tolerances::DEFAULT) {
            Ok(eig) => {
                let floor = SPECTRAL_FLOOR * eig.values[N - 1].max(0.0);
                eig.map_values(|x| if x > floor { sqrt(x) } else { 0.0 })
            }
            // validated density matrices are Hermitian
            Err(_) => *rho.matrix(),
        };
        Self { sqrt_rho }
    }

    pub fn fidelity(&self, sigma: &DensityMatrix<N>) -> f64 {
        let a = self.sqrt_rho * *sigma.matrix() * self.sqrt_rho;
        let a = (a + a.adjoint()).scale_real(0.5);
        let eig = match hermitian_eigensystem(&a, &Tolerances::DEFAULT) {
            Ok(e) => e,
            Err(_) => return f64::NAN,
        };
        let floor = SPECTRAL_FLOOR * eig.values[N - 1].max(0.0);
        let total: f64 = eig.values.iter().filter(|&&x| x > floor).map(|&x| sqrt(x)).sum();
        total.clamp(0.0, 1.0)
    }
}

/// `|⟨m|n⟩| = √((1 + m·n)/2)` for pure qubit states with unit Bloch vectors.
pub fn pure_overlap(m: Vec3, n: Vec3) -> f64 {
    sqrt(((1.0 + m.dot(n)) * 0.5).max(0.0))
}
