pub mod eval;
pub mod exec;
pub mod gen;
pub mod harness;
pub mod judgment;
pub mod programs;
pub mod prooftheory;
pub mod registry;
pub mod semantics;
pub mod syntax;
