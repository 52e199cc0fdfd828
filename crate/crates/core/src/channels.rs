//! Qubit channels in Kraus and affine (Bloch) form.

use alloc::vec::Vec;

use crate::linalg::{
    hermitian_eigensystem, kron, pauli, svd3_rotations, CMatrix, Mat3, Vec3, C64,
};
use crate::states::{QubitState, DensityMatrix};
use crate::{Error, Result, Tolerances};

/// Anything that acts linearly on qubit operators.
pub trait QubitChannel {
    /// Linear action on an arbitrary 2×2 operator.
    fn apply_operator(&self, x: &CMatrix<2>) -> CMatrix<2>;

    /// Action on a density matrix.
    fn apply(&self, rho: &QubitState) -> Result<QubitState>;

    /// `(ℰ ⊗ I)` on a two-qubit operator, A-major indexing `2a + b`.
    fn apply_on_a(&self, m: &CMatrix<4>) -> CMatrix<4> {
        let mut out = CMatrix::<4>::zeros();
        for b in 0..2 {
            for bp in 0..2 {
                let block = CMatrix::<2>::from_rows([
                    [m[(b, bp)], m[(b, 2 + bp)]],
                    [m[(2 + b, bp)], m[(2 + b, 2 + bp)]],
                ]);
                let image = self.apply_operator(&block);
                for a in 0..2 {
                    for ap in 0..2 {
                        out[(2 * a + b, 2 * ap + bp)] = image[(a, ap)];
                    }
                }
            }
        }
        out
    }
}

/// Outcome of a CPTP check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidityReport {
    /// `max |ΣK†K − I|` (zero for affine maps, which are trace preserving by
    /// construction).
    pub trace_residual: f64,
    /// Smallest eigenvalue of the Choi matrix `Σ_ij |i⟩⟨j| ⊗ ℰ(|i⟩⟨j|)`.
    pub min_choi_eigenvalue: f64,
    pub valid: bool,
}

impl ValidityReport {
    fn new(trace_residual: f64, min_choi_eigenvalue: f64, tol: &Tolerances) -> Self {
        let valid = trace_residual <= tol.trace_preserving && min_choi_eigenvalue >= tol.choi;
        Self { trace_residual, min_choi_eigenvalue, valid }
    }
}

fn unit_operator(i: usize, j: usize) -> CMatrix<2> {
    let mut m = CMatrix::<2>::zeros();
    m[(i, j)] = C64::new(1.0, 0.0);
    m
}

fn choi_matrix(ch: &impl QubitChannel) -> CMatrix<4> {
    let mut c = CMatrix::<4>::zeros();
    for i in 0..2 {
        for j in 0..2 {
            let e = unit_operator(i, j);
            c += kron(&e, &ch.apply_operator(&e));
        }
    }
    c
}

fn min_choi_eigenvalue(ch: &impl QubitChannel) -> f64 {
    let c = choi_matrix(ch);
    match hermitian_eigensystem(&c, &Tolerances::DEFAULT) {
        Ok(e) => e.min_value(),
        // a non-Hermitian Choi matrix means the map is not Hermiticity preserving
        Err(_) => f64::NEG_INFINITY,
    }
}

/// `ℰ(ρ) = Σ_k K_k ρ K_k†`.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausChannel {
    kraus: Vec<CMatrix<2>>,
}

impl KrausChannel {
    /// Accepts any finite, nonempty list; validity is checked separately by
    /// [`KrausChannel::validate_cptp`] or rejected by operations that need it.
    pub fn new(kraus: Vec<CMatrix<2>>) -> Result<Self> {
        if kraus.is_empty() {
            return Err(Error::InvalidChannel("empty Kraus list"));
        }
        if kraus.iter().any(|k| !k.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { kraus })
    }

    pub fn identity() -> Self {
        Self { kraus: alloc::vec![CMatrix::identity()] }
    }

    pub fn operators(&self) -> &[CMatrix<2>] {
        &self.kraus
    }

    /// `max |Σ K†K − I|`.
    pub fn trace_residual(&self) -> f64 {
        let sum = self
            .kraus
            .iter()
            .fold(CMatrix::<2>::zeros(), |acc, k| acc + k.adjoint() * *k);
        sum.max_abs_diff(&CMatrix::identity())
    }

    pub fn choi_matrix(&self) -> CMatrix<4> {
        choi_matrix(self)
    }

    pub fn validate_cptp(&self) -> ValidityReport {
        ValidityReport::new(self.trace_residual(), min_choi_eigenvalue(self), &Tolerances::DEFAULT)
    }

    fn ensure_trace_preserving(&self) -> Result<()> {
        let residual = self.trace_residual();
        if residual > Tolerances::DEFAULT.trace_preserving {
            return Err(Error::NotTracePreserving { residual });
        }
        Ok(())
    }

    /// `Λ_ij = ½ tr(σ_i ℰ(σ_j))`, `t_i = ½ tr(σ_i ℰ(I))`.
    pub fn affine(&self) -> Result<AffineChannel> {
        self.ensure_trace_preserving()?;
        let sig = pauli::all();
        let coeffs = |m: &CMatrix<2>| -> [f64; 3] {
            let (_, c) = pauli::decompose(m);
            [c[0].re, c[1].re, c[2].re]
        };
        let t = Vec3::from_array(coeffs(&self.apply_operator(&CMatrix::identity())));
        let mut lambda = Mat3::ZERO;
        for j in 0..3 {
            let col = coeffs(&self.apply_operator(&sig[j]));
            for i in 0..3 {
                lambda.0[i][j] = col[i];
            }
        }
        Ok(AffineChannel { lambda, t })
    }
}

impl QubitChannel for KrausChannel {
    fn apply_operator(&self, x: &CMatrix<2>) -> CMatrix<2> {
        self.kraus
            .iter()
            .fold(CMatrix::zeros(), |acc, k| acc + *k * *x * k.adjoint())
    }

    fn apply(&self, rho: &QubitState) -> Result<QubitState> {
        self.ensure_trace_preserving()
            .map_err(|_| Error::InvalidChannel("Kraus operators are not trace preserving"))?;
        DensityMatrix::new(self.apply_operator(rho.matrix()))
            .map_err(|_| Error::InvalidChannel("output is not a density matrix"))
    }
}

pub fn affine_from_kraus(k: &KrausChannel) -> Result<AffineChannel> {
    k.affine()
}

pub fn validate_cptp(k: &KrausChannel) -> ValidityReport {
    k.validate_cptp()
}

/// Bloch-ball action `r ↦ Λr + t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineChannel {
    pub lambda: Mat3,
    pub t: Vec3,
}

impl AffineChannel {
    pub fn new(lambda: Mat3, t: Vec3) -> Result<Self> {
        if !lambda.is_finite() || !t.is_finite() {
            return Err(Error::NonFinite);
        }
        Ok(Self { lambda, t })
    }

    pub fn identity() -> Self {
        Self { lambda: Mat3::IDENTITY, t: Vec3::ZERO }
    }

    pub fn map_bloch(&self, r: Vec3) -> Vec3 {
        self.lambda * r + self.t
    }

    pub fn choi_matrix(&self) -> CMatrix<4> {
        choi_matrix(self)
    }

    /// Trace preservation is structural, so only the Choi spectrum is checked.
    pub fn validate_cptp(&self) -> ValidityReport {
        ValidityReport::new(0.0, min_choi_eigenvalue(self), &Tolerances::DEFAULT)
    }

    pub fn ensure_cptp(&self) -> Result<()> {
        if self.validate_cptp().valid {
            Ok(())
        } else {
            Err(Error::InvalidChannel("Choi matrix is not positive semidefinite"))
        }
    }

    /// Largest `|Λr + t|` over the Bloch ball minus 1, for rank ≤ 1 `Λ`.
    /// `None` when `Λ` has rank above one.
    fn rank_one_excess(&self) -> Option<f64> {
        let svd = svd3_rotations(&self.lambda);
        if svd.d[1].abs() > 1e-14 * svd.d[0].abs().max(1.0) {
            return None;
        }
        let dir = svd.left_vectors()[0] * svd.d[0];
        let reach = (dir + self.t).norm().max((self.t - dir).norm());
        Some(reach - 1.0)
    }

    pub fn canonical_form(&self) -> CanonicalForm {
        canonical_form(self)
    }

    pub fn is_unital(&self, tol: f64) -> bool {
        is_unital(self, tol)
    }

    pub fn is_semiclassical(&self, tol: f64) -> bool {
        is_semiclassical(self, tol)
    }

    /// `M = [t]× Λ`, so the created correlation is `2|M n|`.
    pub fn correlation_matrix(&self) -> Mat3 {
        Mat3::cross_matrix(self.t) * self.lambda
    }
}

impl QubitChannel for AffineChannel {
    /// Linear extension: `c₀ I + c·σ ↦ c₀ (I + t·σ) + (Λc)·σ`.
    fn apply_operator(&self, x: &CMatrix<2>) -> CMatrix<2> {
        let (c0, c) = pauli::decompose(x);
        let l = &self.lambda.0;
        let t = self.t.to_array();
        let out: [C64; 3] = core::array::from_fn(|i| {
            c0 * t[i] + c[0] * l[i][0] + c[1] * l[i][1] + c[2] * l[i][2]
        });
        pauli::combination(c0, out)
    }

    fn apply(&self, rho: &QubitState) -> Result<QubitState> {
        let r = self.map_bloch(rho.bloch());
        DensityMatrix::from_bloch(r).map_err(|_| Error::InvalidChannel("image leaves the Bloch ball"))
    }
}

/// `Λ = S · diag(λ) · T` with proper rotations and `t_c = Sᵀ t`; the
/// canonical channel is `r ↦ diag(λ) r + t_c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CanonicalForm {
    pub s_rot: Mat3,
    pub t_rot: Mat3,
    pub lambda_d: [f64; 3],
    pub t_c: Vec3,
}

impl CanonicalForm {
    pub fn channel(&self) -> AffineChannel {
        AffineChannel { lambda: Mat3::diag(self.lambda_d), t: self.t_c }
    }

    pub fn reconstruct(&self) -> AffineChannel {
        AffineChannel {
            lambda: self.s_rot * Mat3::diag(self.lambda_d) * self.t_rot,
            t: self.s_rot * self.t_c,
        }
    }
}

pub fn canonical_form(a: &AffineChannel) -> CanonicalForm {
    let svd = svd3_rotations(&a.lambda);
    CanonicalForm {
        s_rot: svd.s,
        t_rot: svd.t,
        lambda_d: svd.d,
        t_c: svd.s.transpose() * a.t,
    }
}

/// `|t| ≤ tol`.
pub fn is_unital(a: &AffineChannel, tol: f64) -> bool {
    a.t.norm() <= tol
}

/// Semi-classical iff `Λ = b aᵀ` has rank ≤ 1 and `t` is zero, or parallel
/// to `b`, or `Λ` vanishes (a constant channel).
pub fn is_semiclassical(a: &AffineChannel, tol: f64) -> bool {
    let svd = svd3_rotations(&a.lambda);
    if svd.d[1].abs() > tol {
        return false;
    }
    let t_norm = a.t.norm();
    if t_norm <= tol || svd.d[0].abs() <= tol {
        return true;
    }
    let b = svd.left_vectors()[0];
    (a.t * (1.0 / t_norm)).cross(b).norm() <= Tolerances::DEFAULT.parallel
}

/// Kraus form `E₀ = diag(1, √(1−γ))`, `E₁ = √γ |0⟩⟨1|`.
pub fn amplitude_damping(gamma: f64) -> Result<KrausChannel> {
    if !(0.0..=1.0).contains(&gamma) {
        return Err(Error::GammaOutOfRange(gamma));
    }
    let e0 = CMatrix::diag_real([1.0, libm::sqrt(1.0 - gamma)]);
    let mut e1 = CMatrix::<2>::zeros();
    e1[(0, 1)] = C64::new(libm::sqrt(gamma), 0.0);
    KrausChannel::new(alloc::vec![e0, e1])
}

/// Measure in `{|a⟩, |−a⟩}`, prepare `|m₀⟩` or `|m₁⟩`:
/// `A₀ = |m₀⟩⟨a|`, `A₁ = |m₁⟩⟨−a|`.
pub fn measure_prepare(a: Vec3, m0: Vec3, m1: Vec3) -> Result<KrausChannel> {
    for v in [a, m0, m1] {
        let norm = v.norm();
        if !v.is_finite() || (norm - 1.0).abs() > 1e-10 {
            return Err(Error::NonUnitVector { norm });
        }
    }
    let k0 = ket_bra(bloch_ket(m0), bloch_ket(a));
    let k1 = ket_bra(bloch_ket(m1), bloch_ket(-a));
    KrausChannel::new(alloc::vec![k0, k1])
}

/// `Λr = (a·r) c`, `t = t·b`, after a positivity screen on the Bloch ball.
pub fn semiclassical_example(a: Vec3, b: Vec3, c: Vec3, t: f64) -> Result<AffineChannel> {
    if !a.is_finite() || !t.is_finite() {
        return Err(Error::NonFinite);
    }
    for v in [b, c] {
        let norm = v.norm();
        if !v.is_finite() || (norm - 1.0).abs() > 1e-10 {
            return Err(Error::NonUnitVector { norm });
        }
    }
    let ch = AffineChannel { lambda: Mat3::outer(c, a), t: b * t };
    let excess = ch.rank_one_excess().unwrap_or(f64::INFINITY);
    if excess > 1e-10 {
        return Err(Error::NotPositive { excess });
    }
    Ok(ch)
}

/// State vector with Bloch vector `n` (unit), fixed global phase.
pub fn bloch_ket(n: Vec3) -> [C64; 2] {
    let theta = libm::acos(n.z.clamp(-1.0, 1.0));
    let phi = libm::atan2(n.y, n.x);
    let (s, c) = (libm::sin(theta / 2.0), libm::cos(theta / 2.0));
    [C64::new(c, 0.0), C64::from_polar(s, phi)]
}

fn ket_bra(ket: [C64; 2], bra: [C64; 2]) -> CMatrix<2> {
    CMatrix::from_rows([
        [ket[0] * bra[0].conj(), ket[0] * bra[1].conj()],
        [ket[1] * bra[0].conj(), ket[1] * bra[1].conj()],
    ])
}
