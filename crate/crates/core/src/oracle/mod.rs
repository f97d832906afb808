//! Exhaustive ground truth at desk scale: path enumeration, exact packing
//! and hitting numbers, certificate checking, comb recognition.

mod bitset;
mod comb;
mod enumerate;
mod packing;
mod spec;
mod verify;

pub use bitset::BitSet;
pub use comb::is_comb;
pub use enumerate::{count_paths, enumerate_paths, find_path_avoiding, Avoid};
pub use packing::{elements, max_disjoint, max_packing_of, min_hitting_of, min_hitting_set, HittingSet, Packing};
pub use spec::{Budget, Disjointness, Instance, Meter, PathKind, PathSpec};
pub use verify::{verify_certificate, Report};
