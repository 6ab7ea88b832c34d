//! Permutation groups: stabiliser chains, cosets, small-group utilities.

mod group;
mod perm;
mod slp;
pub mod small;
mod subgroup;
mod word;

pub use group::{orbit, Group, Level, Orbit, StabChain};
pub use perm::Perm;
pub use slp::{Line, Monoid, Slp, SlpMemo};
pub use subgroup::{right_transversal, Subgroup, Transversal};
pub use word::{Letter, Word};
