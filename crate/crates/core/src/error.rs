use thiserror::Error;

/// Errors produced by kernel construction, the vec-trick engine, the solver
/// and the evaluation harness.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{context}: expected length {expected}, got {got}")]
    LengthMismatch {
        context: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("{context}: id {id} out of range for table of size {size}")]
    IdOutOfRange {
        context: &'static str,
        id: usize,
        size: usize,
    },

    #[error("matrix values length {got} does not match {rows}x{cols}")]
    BadMatrixShape {
        rows: usize,
        cols: usize,
        got: usize,
    },

    #[error("feature matrices disagree on dimension: {left} vs {right}")]
    FeatureDimensionMismatch { left: usize, right: usize },

    #[error("unknown pairwise kernel `{0}`")]
    UnknownPairwiseKernel(String),

    #[error("unknown base kernel `{0}`")]
    UnknownBaseKernel(String),

    #[error("gaussian bandwidth must be positive, got {0}")]
    NonPositiveGamma(f64),

    #[error("non-binary entry {value} at row {row}, column {col}")]
    NonBinaryEntry { row: usize, col: usize, value: f64 },

    #[error("{0} kernel requires homogeneous samples and a single base kernel matrix")]
    HomogeneityViolation(&'static str),

    #[error("samples indexing a single object table are required when no target kernel is given")]
    MissingTargetKernel,

    #[error("a base kernel is required for feature side data")]
    MissingBaseKernel,

    #[error("labels are required for {0}")]
    MissingLabels(&'static str),

    #[error("degenerate validation labels")]
    DegenerateValidationLabels,

    #[error("single-class input: AUC needs both a positive and a negative")]
    SingleClassLabels,

    #[error("too few objects to split: {0}")]
    TooFewObjects(String),

    #[error("fold count must be at least 2, got {0}")]
    BadFoldCount(usize),

    #[error("setting 4 needs a perfect-square fold count, got {0}")]
    FoldCountNotSquare(usize),

    #[error("fold index {index} out of range for {folds} folds")]
    FoldIndexOutOfRange { index: usize, folds: usize },

    #[error("split fraction must lie strictly between 0 and 1, got {0}")]
    BadFraction(f64),

    #[error("patience must be at least 1")]
    BadPatience,

    #[error("synthetic grids need at least 2 drugs and 2 targets, got {0}x{1}")]
    GridTooSmall(usize, usize),

    #[error("invalid setting {0}, expected 1-4")]
    BadSetting(u8),

    #[error("invalid dataset: {0}")]
    InvalidDataset(String),
}

pub type Result<T> = std::result::Result<T, Error>;
