//! Numerical tolerances shared by every module.

/// One record of all thresholds. [`Tolerances::DEFAULT`] is what the
/// library uses internally; callers that need a looser or stricter band can
/// pass their own where an operation accepts one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Max-entry asymmetry accepted as Hermitian.
    pub hermitian: f64,
    /// Trace-one check for density matrices.
    pub trace: f64,
    /// Most negative eigenvalue still accepted as positive semidefinite.
    pub psd: f64,
    /// Bloch vector norm slack above 1, and unit-vector slack.
    pub bloch: f64,
    /// Max-entry residual of ΣK†K − I.
    pub trace_preserving: f64,
    /// Most negative Choi eigenvalue still accepted as completely positive.
    pub choi: f64,
    /// Relative off-diagonal Frobenius mass at which Jacobi stops.
    pub jacobi: f64,
    /// |sin(angle)| below which two vectors count as parallel.
    pub parallel: f64,
    /// Coherence allowed between classical blocks of a QC state.
    pub classical_block: f64,
}

impl Tolerances {
    pub const DEFAULT: Tolerances = Tolerances {
        hermitian: 1e-12,
        trace: 1e-12,
        psd: -1e-10,
        bloch: 1e-12,
        trace_preserving: 1e-10,
        choi: -1e-10,
        jacobi: 1e-14,
        parallel: 1e-8,
        classical_block: 1e-10,
    };
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::DEFAULT
    }
}
