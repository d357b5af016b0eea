//! Cycle certification for QC matrices built from circulant permutations.
//!
//! A closed block walk of half-length `n` lifts to a `2n`-cycle of the
//! expanded Tanner graph exactly when the composed shift `b*` is 0 mod `P`
//! (a nonzero shift has no fixed point). The search enumerates walks with
//! distinct consecutive rows and columns, skipping empty blocks, and keeps
//! only those whose lift is a simple cycle.

mod oracle;
mod path;
mod search;

pub use oracle::girth_bfs_oracle;
pub use path::{
    alternating_shift, is_simple_cycle, walk_expanded, BlockPath, CertificateJson, CycleCertificate, TannerNode,
};
pub use search::{
    cycle_classes, find_cycle, girth, girth_with, min_p_search, min_p_search_with_jobs, spans_by_class, Girth,
    GirthOptions, SpanClass, MAX_HALF_LENGTH,
};
