pub mod error;
pub mod field;
pub mod format;
pub mod group;
pub mod ipa;
pub mod layer;
pub mod matrix;
pub mod mle;
pub mod pipeline;
pub mod polycommit;
pub mod rangeproof;
pub mod sumcheck;
pub mod transcript;
pub mod wire;

pub use error::{Error, Result, VerifyError};
pub use field::{FieldElement, FixedPointParams};
pub use group::{GeneratorSet, GroupElement};
pub use ipa::IpaProof;
pub use layer::{LayerProof, MatmulDims, MatmulRoundProof, ReluProof};
pub use matrix::Matrix;
pub use mle::MleTable;
pub use pipeline::{InferenceProof, Layer as ModelLayer, ModelSpec};
pub use polycommit::OpeningProof;
pub use rangeproof::RangeProof;
pub use sumcheck::{RoundMessage, SumcheckProof};
pub use transcript::{Mode, Sender, Transcript};
