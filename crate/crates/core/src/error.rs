use matexp_linalg::LinalgError;
use thiserror::Error;

/// Errors from the closed-form pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An algebraic identity of the decomposition (N^2 = O, P^2 = P, ...)
    /// failed beyond the acceptable defect: the spectrum was classified inside
    /// the tolerance band. Loosening or tightening the classification
    /// tolerance usually resolves this.
    #[error(
        "degenerate decomposition: identity defect {residual:e} exceeds {bound:e}; \
         the spectrum sits on a case boundary (try a different --tol)"
    )]
    DegenerateDecomposition { residual: f64, bound: f64 },

    /// A closed-form denominator such as (l3-a)^2 - b^2 is too close to zero.
    #[error("division hazard: closed-form denominator {denom:e} below safe threshold")]
    DivisionHazard { denom: f64 },

    /// A scalar factor e^{lt} left the finite floating-point range.
    #[error("overflow evaluating the closed form at t = {t}")]
    Overflow { t: f64 },

    /// Operation requires a different spectral case.
    #[error("wrong spectral case: expected {expected}, got {got}")]
    WrongCase {
        expected: &'static str,
        got: &'static str,
    },

    /// No standard basis vector satisfied the probe condition. Impossible for
    /// a decomposition whose invariants hold; guards corrupted input.
    #[error("probe exhausted: no standard basis vector satisfies the required condition")]
    ProbeExhausted,

    /// The mode expansion disagreed with direct evaluation of e^{tA} x0.
    #[error("closed-form self check failed at t = {t}: relative error {err:e}")]
    SelfCheck { t: f64, err: f64 },

    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
