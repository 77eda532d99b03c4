pub mod arith;
pub mod cli;
pub mod error;
pub mod lattice;
pub mod solutions;
pub mod stats;
pub mod variants;
