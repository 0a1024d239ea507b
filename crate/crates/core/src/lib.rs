//! Discrete topological complexity of finite simplicial complexes.
//!
//! The crate computes, with machine-checkable certificates:
//!
//! * the categorical square `K²` of a complex ([`product`]),
//! * strong collapses and strong cores ([`collapse`]),
//! * contiguity classes of simplicial maps ([`maps`], [`reduction`]),
//! * the simplicial LS-category `scat(K)` and the discrete topological
//!   complexity `TC(K)`, together with edge-path motion plans
//!   ([`invariants`]),
//! * JSON certificates and an independent re-checker ([`certificate`]).
//!
//! ```
//! use dtc_core::{parse_complex, tc, DEFAULT_BUDGET};
//!
//! let k = parse_complex("a b\nb c\na c\n").unwrap();
//! let result = tc(&k, DEFAULT_BUDGET).unwrap();
//! assert_eq!(result.value, Some(2));
//! ```

pub mod bitset;
pub mod certificate;
pub mod collapse;
pub mod complex;
pub mod error;
pub mod invariants;
pub mod io;
pub mod maps;
pub mod product;
pub mod reduction;

pub use bitset::BitSet;
pub use collapse::{core, dominated_vertices, is_strongly_collapsible, CollapseSequence, CollapseStep};
pub use complex::{Complex, Simplex, VertexId};
pub use error::{Error, Result};
pub use invariants::{
    is_categorical, is_farber, motion_plan, scat, tc, AdmissibleKind, AdmissibleSet, InvariantResult,
    MotionPlan, Status,
};
pub use io::{parse_complex, serialize_complex};
pub use maps::{
    are_contiguous, compose, neighbors, same_contiguity_class, ContiguityWitness, Decision, SimplicialMap,
    DEFAULT_BUDGET,
};
pub use product::{categorical_square, preimage_subcomplex, square_map, Factor, ProductComplex};
