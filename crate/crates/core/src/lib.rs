//! Abstract composita of fields, modelled through the Galois correspondence.
//!
//! A field is a subgroup of an ambient permutation group, a compositum of
//! two fields is a double coset, and the tensor product of composita splits
//! along finer double cosets. The [`numberfield`] module realizes the same
//! objects as explicit number fields so that every combinatorial answer can
//! be checked against actual field arithmetic.

pub mod bimodule;
pub mod closure;
pub mod document;
pub mod error;
pub mod fixtures;
pub mod galois;
pub mod numberfield;
pub mod perm;

pub use bimodule::{fuse, FoldedCategory, FusionTable, Multiplicity, OneMorphism};
pub use closure::{BaseFieldResult, CompositumSystem, DEFAULT_MAX_COMPOSITA};
pub use error::{Error, Result};
pub use galois::{dual, make_compositum, Compositum, FieldNode, GaloisContext};
pub use perm::{Permutation, Subgroup, DEFAULT_MAX_GROUP_ORDER};
