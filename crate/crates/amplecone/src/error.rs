use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("Gram matrix is not symmetric at ({row},{col})")]
    NotSymmetric { row: usize, col: usize },

    #[error("Gram matrix is not square")]
    NotSquare,

    #[error("bilinear form is degenerate (zero determinant)")]
    Degenerate,

    #[error("diagonal entry {index} is odd; the lattice is not even")]
    OddDiagonal { index: usize },

    #[error("expected signature (1,{expected_neg}), found ({pos},{neg})")]
    WrongSignature {
        expected_neg: usize,
        pos: usize,
        neg: usize,
    },

    #[error("matrix is not negative definite")]
    NotNegativeDefinite,

    #[error("matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("vector is not in the positive cone (self-pairing {norm} <= 0)")]
    NotInPositiveCone { norm: String },

    #[error("vector lies on a wall: a (-2)-vector is orthogonal to it")]
    OnWall,

    #[error("no interior point found with sup-norm <= {bound}")]
    NoInteriorPoint { bound: u64 },

    #[error("vector has self-pairing {norm}, expected -2")]
    NormNotMinusTwo { norm: String },

    #[error("vector is not primitive isotropic")]
    NotPrimitiveIsotropic,

    #[error("points live in different models")]
    ModelMismatch,

    #[error("matrix does not preserve the Lorentzian form (residual {residual:.3e})")]
    NonLorentzian { residual: f64 },

    #[error("matrix does not preserve the upper sheet")]
    SheetReversing,

    #[error("reflection normal is not a unit vector")]
    NotUnitVector,

    #[error("point lies outside the model domain")]
    OutsideModel,

    #[error("blow-up chart is undefined at its center")]
    ChartUndefined,

    #[error("trace did not converge (residual {residual:.3e} after {steps} steps)")]
    NonConvergence { residual: f64, steps: usize },

    #[error("accepted walls pair negatively ({pairing}); chamber invariant violated")]
    NegativeWallPairing { pairing: String },

    #[error("boundary is not a sphere packing ({failures} crossing pairs)")]
    NotAPacking { failures: usize },

    #[error("no wall pair is tangent at the given isotropic class")]
    NoTangentPair,

    #[error("no elliptic fibration found up to height {height}")]
    NoEllipticFibration { height: u64 },

    #[error("degenerate cusp: the class is not on the boundary of the positive cone")]
    DegenerateCusp,

    #[error("rendering requires a 2-dimensional boundary, got {got}")]
    RenderDimension { got: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("internal error: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
