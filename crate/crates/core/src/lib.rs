//! Exact arithmetic for quasisymmetric functions, `(P, ω)`-partition
//! enumerators of labeled posets and chromatic quasisymmetric functions of
//! digraphs, with an exhaustive verification harness over tree families.

pub mod digraph;
pub mod enumerate;
pub mod error;
pub mod guard;
pub mod io;
pub mod poset;
pub mod qsym;
pub mod verify;

pub use error::{Error, Result};
