pub mod blocks;
pub mod chop;
pub mod cli;
pub mod error;
pub mod ffield;
pub mod fixtures;
pub mod green;
pub mod perm;
pub mod prng;
pub mod rep;
pub mod selftest;
pub mod structure;

pub use error::{Error, Result};
