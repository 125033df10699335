//! Reversible and inverse-computing Turing machines over bitstrings, with a
//! finite laboratory for partial-function inverses.

pub mod bits;
pub mod fnlab;
pub mod machine;
pub mod corpus;
pub mod transform;
pub mod codec;
pub mod inversion;
pub mod reductions;
pub mod suites;
