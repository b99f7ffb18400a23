//! Facet counts of twinned chain polytopes.
//!
//! A pair of d-element posets `(P, Q)` determines a reflexive lattice
//! polytope, the convex hull of the antichain indicator vectors of `P`
//! together with the negated ones of `Q`. This crate counts its facets
//! through the maximal-chain description, cross-validates the count with an
//! exact-arithmetic convex-hull oracle, and exhaustively verifies the
//! `6^(d/2)` facet cap and its equality characterization at small d.

pub mod census;
pub mod chains;
mod error;
pub mod hull;
pub mod io;
mod linalg;
pub mod poset;
pub mod twinned;

pub use error::{Error, Result};
pub use poset::{Graph, Poset};
pub use twinned::{facet_count, FacetFamily, SignedChain};
