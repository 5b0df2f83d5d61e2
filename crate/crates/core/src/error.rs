use thiserror::Error;

/// Errors reported by the spin-algebra kernel and the device solvers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The input matrix fails the unitarity check `U†U = I`.
    #[error("matrix is not unitary (residual {residual:.3e}, tolerance {tol:.3e})")]
    NotUnitary { residual: f64, tol: f64 },

    /// The input matrix is unitary but its determinant is not 1.
    #[error("matrix is not special-unitary (|det - 1| = {residual:.3e})")]
    NotSpecialUnitary { residual: f64 },

    /// `log` of `-I` is ambiguous: every axis gives a valid logarithm.
    #[error("matrix logarithm branch is ambiguous at U = -I")]
    LogBranchAmbiguous,

    /// The loop phase factor is proportional to the identity, so no tilted
    /// basis is singled out.
    #[error("loop phase is spin-degenerate; tilted basis undefined")]
    DegenerateLoopPhase,

    /// Requested energy lies outside the open lead band `(-2t, 2t)`.
    #[error("energy {energy} outside the open band (-{band}, {band})")]
    OutsideBand { energy: f64, band: f64 },

    /// Ring leads propagate only for positive energy.
    #[error("energy {energy} is not propagating (require E > 0)")]
    NonPropagating { energy: f64 },

    /// The linear system for the Green's function or the junction matching
    /// could not be solved at this energy.
    #[error("matching system is numerically singular at E = {energy}")]
    SingularSystem { energy: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
