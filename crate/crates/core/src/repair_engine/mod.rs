//! Execution of trace-based repair: full-rank checks, helper transcripts,
//! bandwidth measurement, the repair solve and the query formulation.

mod bandwidth;
mod matrix;
mod query;
mod repair;
mod scheme;
mod transcript;

pub use bandwidth::{measure_bandwidth, BandwidthReport};
pub use matrix::{check_full_rank, repair_matrix, s_block, stacked_rank_check, vectors_independent, RepairMatrixS};
pub use query::{to_query_scheme, QueryScheme};
pub use repair::{all_transcripts, repair, repair_codeword};
pub use scheme::{Prediction, Relation, RepairScheme};
pub use transcript::{helper_plan, helper_transcript, HelperTranscript, TranscriptWire};
