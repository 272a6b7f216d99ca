//! Finite fields GF(q^ell) over a prime q, their subfield towers, traces,
//! bases and coset partitions.
//!
//! Elements are dense coefficient vectors packed into a `u64`, which limits
//! fields to at most 2^64 elements but needs no lookup tables.

pub(crate) mod factor;
mod field;
pub mod linalg;
mod packed;
pub(crate) mod poly;
mod subfield;
mod basis;
mod cosets;
mod subspace;

pub use basis::{dual_basis, rank_over, recombine, Basis, RankInfo};
pub use cosets::{coset_partition, same_coset, CosetPartition};
pub use field::{parse_field_spec, FieldCtx, FieldElem};
pub use linalg::Matrix;
pub use subfield::SubfieldHandle;
pub use subspace::{subspace_span, SubspaceHandle};

/// Build GF(q^ell), searching for a modulus when none is given.
pub fn build_field(q: u64, ell: usize, modulus: Option<&[u64]>) -> crate::Result<std::sync::Arc<FieldCtx>> {
    FieldCtx::new(q, ell, modulus)
}
