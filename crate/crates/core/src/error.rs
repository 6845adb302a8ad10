use thiserror::Error;

#[derive(Debug, Error)]
pub enum CoreError {
    #[error("input samples contain non-finite values")]
    NonFiniteInput,

    #[error("fields live on different grids")]
    GridMismatch,

    #[error("inverse transform left imaginary residue {residue:.3e} (limit {limit:.3e})")]
    ImaginaryResidue { residue: f64, limit: f64 },

    #[error("field is not divergence-free (relative divergence {relative:.3e})")]
    NotDivergenceFree { relative: f64 },

    #[error("diffeomorphism breakdown at t = {time}: min eta_x = {min_jacobian:.3e}")]
    DiffeoBreakdown { time: f64, min_jacobian: f64 },

    #[error("map is not invertible: eta_x <= 0")]
    NotInvertible,

    #[error("NaN detected at t = {time}; run aborted")]
    NanDetected { time: f64 },

    #[error("Jacobi window [0, {requested}] exceeds base trajectory end {available}")]
    WindowExceedsBase { requested: f64, available: f64 },

    #[error("{0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, CoreError>;
