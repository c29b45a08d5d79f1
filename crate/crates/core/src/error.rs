use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{what} index {index} out of range 1..={bound}")]
    IndexOutOfRange { what: &'static str, index: usize, bound: usize },

    #[error("index list {0} is not strictly increasing")]
    NotCanonical(String),

    #[error("cannot parse polynomial \"{input}\" at byte {pos}: {msg}")]
    PolyParse { input: String, pos: usize, msg: String },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("model violates {invariant}: {witness}")]
    InvalidModel { invariant: &'static str, witness: String },

    #[error("connection table violates {constraint} at ({i}, {j}, {k})")]
    ConnectionConstraint { constraint: &'static str, i: usize, j: usize, k: usize },

    #[error("section violates the anchor condition: {0}")]
    ConstraintViolation(String),

    #[error("not a perturbation: (delta + d)^2 is nonzero on {0}")]
    NotAPerturbation(String),

    #[error("perturbation series did not terminate within {max_iter} steps on {witness}")]
    NonNilpotent { max_iter: usize, witness: String },

    #[error("closed form mismatch for {map}: {witness}")]
    ClosedFormMismatch { map: &'static str, witness: String },

    #[error("{0} is not closed")]
    NotClosed(String),

    #[error("operation requires a point chart (n = 0), got n = {0}")]
    NotPointCase(usize),

    #[error("degree {k} out of range 0..={max}")]
    KOutOfRange { k: usize, max: usize },

    #[error("model file: {0}")]
    ModelFile(String),
}
