//! Constructors of repair schemes: one coset (single and multiple
//! erasures), two cosets, and the multi-coset extension of an original
//! scheme.

mod common;
mod layout;
mod multi_coset;
mod multi_erasure;
mod one_coset;
mod spec;
mod two_coset;

pub use layout::{erasure_layout, layout_from_h, ErasureLayout};
pub use multi_coset::{extend_multi_coset, ye_barg_adapter, ExtensionMode, MultiCoset, OriginalSchemeAdapter};
pub use multi_erasure::{
    construct_iii, construct_iv, find_deltas_iii, iv_block_identities, solve_deltas_iv, target_iii, DeltaMethod,
    DeltaSolution,
};
pub use one_coset::{construct_i, construct_ii, construct_ii_with, naive, OneCoset, OneCosetParams, WChoice};
pub use spec::{SchemeFactory, SchemeSpec, MAX_FAILURE_SETS};
pub use two_coset::{construct_two_coset, TwoCoset, TwoCosetParams};
