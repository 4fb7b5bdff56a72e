use thiserror::Error;

/// Errors raised while building statements, proving, or decoding.
///
/// Verification failures are reported separately through [`VerifyError`]:
/// a rejected proof is an expected outcome, not a malfunction.
#[derive(Clone, Debug, Error, PartialEq)]
pub enum Error {
    #[error("attempted to invert zero")]
    ZeroInverse,
    #[error("invalid fixed-point parameters: {0}")]
    InvalidParams(String),
    #[error("value {0} is not a multiple of 2^-s")]
    NotRepresentable(f64),
    #[error("fixed-point magnitude overflow: {0}")]
    FixedPointOverflow(String),
    #[error("rounding precondition violated: |x| + 2^(s-1) must stay below (p-1)/2")]
    RoundingOutOfRange,
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("size {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("generator count must be at least one")]
    EmptyGeneratorSet,
    #[error("need {needed} generators but only {available} are available")]
    NotEnoughGenerators { needed: usize, available: usize },
    #[error("claimed inner product does not match the witness")]
    InnerProductMismatch,
    #[error("value at index {index} is outside [0, 2^{bits})")]
    ValueOutOfRange { index: usize, bits: u32 },
    #[error("unsupported range width {0} bits")]
    UnsupportedBitWidth(u32),
    #[error("layer {layer}: {reason}")]
    Layer { layer: usize, reason: String },
    #[error("decode error: {0}")]
    Decode(String),
}

/// Reasons a verifier rejects a proof.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum VerifyError {
    #[error("malformed proof: {0}")]
    Malformed(&'static str),
    #[error("inner-product argument final check failed")]
    InnerProduct,
    #[error("sum-check round {round} is inconsistent with the running claim")]
    SumcheckRound { round: usize },
    #[error("sum-check final evaluation does not match the opened values")]
    SumcheckFinal,
    #[error("equality sum-check claimed a nonzero sum")]
    NonZeroSum,
    #[error("{0} mismatch")]
    Mismatch(&'static str),
    #[error("not enough generators for this statement")]
    NotEnoughGenerators,
    #[error("transcript replay diverged at record {0}")]
    ReplayDiverged(usize),
    #[error("commitment chain broken at layer {layer}")]
    ChainBreak { layer: usize },
    #[error("{part} rejected: {source}")]
    Part {
        part: &'static str,
        #[source]
        source: Box<VerifyError>,
    },
    #[error("layer {layer} rejected: {source}")]
    Layer {
        layer: usize,
        #[source]
        source: Box<VerifyError>,
    },
}

impl VerifyError {
    /// Tags the error with the sub-proof that produced it.
    pub fn within(self, part: &'static str) -> Self {
        VerifyError::Part {
            part,
            source: Box::new(self),
        }
    }

    /// Name of the innermost tagged sub-proof, if any.
    pub fn part(&self) -> Option<&'static str> {
        match self {
            VerifyError::Part { part, source } => source.part().or(Some(part)),
            VerifyError::Layer { source, .. } => source.part(),
            _ => None,
        }
    }
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
