//! Finite biquandles represented as block matrices.
//!
//! - [`matrix`]: the biquandle value type, the axiom checker, obverse and
//!   flip, and structural predicates.
//! - [`search`]: constraint-propagating completion of partial matrices and
//!   exhaustive enumeration by order.
//! - [`presentation`]: finitely presented biquandles of virtual knots.
//! - [`hom`]: homomorphism listing and counting, isomorphisms, automorphism
//!   groups and classification up to isomorphism, flip and obverse.
//! - [`format`]: the `.biq` text format.

pub mod error;
pub mod format;
pub mod hom;
pub mod matrix;
pub mod presentation;
pub mod search;

pub use error::{Error, Result};
pub use matrix::{Axiom, Biquandle, BlockMatrix, OpKind, QuandleMatrix};
pub use search::{avail, biqfill, biqlist, biqlist_parallel, enumerate, ratezero, Fill, Pattern};
pub use hom::{
    baut, bhomcount, bhomlist, bisolist, breducelist, classify, identify_group, is_isomorphic,
    ClassEntry,
    Equivalence, GroupLabel, HomMap,
};
pub use presentation::{Presentation, PresentationVector, Relation};
