//! Closed-form bandwidth evaluators, the cut-set bound and parameter sweeps.
//! Values are exact rationals in GF(q)-symbols; floats appear only when
//! rendering.

mod formulas;
mod sweep;
mod table;

pub use formulas::{msr_bound, multi_erasure_multi_coset_bandwidth};
pub use sweep::{
    best_per_ell, choose_one_coset, choose_two_coset, fmt6, sweep, to_csv, to_json, SweepConfig, CSV_HEADER,
    PER_ELL_LIMIT,
};
pub use table::{table_row, Bound, RowParams, SchemeKind, SchemePoint};
