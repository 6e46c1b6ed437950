//! Bollobás `(k,t)`-tuples: verification, the multinomial inequality, explicit
//! constructions, covers of the partite hypergraph `H_{k,t}(n)`, permutation
//! chain families and the closed-form bounds, all checked by exact arithmetic
//! on small instances.

pub mod acceptance;
pub mod arith;
pub mod bitset;
pub mod bounds;
pub mod chains;
pub mod constructions;
pub mod covering;
pub mod error;
pub mod family;
pub mod inequality;
pub mod io;
pub mod partitions;

pub use arith::ExactRational;
pub use bitset::BitSet;
pub use error::{Error, Guard, Result};
pub use family::{BollobasTuple, Counterexample, FamilySystem, IndexSequence, Surjection, Verdict};
