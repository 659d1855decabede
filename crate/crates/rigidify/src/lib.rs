//! Simplicial categories of finite truncated simplicial sets.
//!
//! The library computes, for a finite truncated simplicial set `X` and
//! vertices `x, y`, the hom-space `hom(x, y)` of the simplicial category
//! associated to `X`. Simplices of the hom-space are represented as
//! necklaces (wedges of standard simplices joined end to end) carrying a
//! map into `X` together with a flag of vertex subsets. On top of that
//! representation the crate provides:
//!
//! * horn and sphere filling in hom-spaces, with constructive fillers for
//!   inner 2-horns and for spheres in dimension 4 and up,
//! * coskeletality and quasi-category checks for finite simplicial sets,
//! * detection of whether a quasi-category is the nerve of a category,
//!   with explicit counterexample certificates when it is not,
//! * the free simplicial resolution of a category and an isomorphism
//!   check against the necklace construction,
//! * a homotopy coherent nerve for small simplicially enriched
//!   categories.

pub mod delta;
pub mod fixtures;
pub mod necklace;
pub mod resolution;
pub mod sset;
pub mod theorems;
