//! Kernelizations, compressions and hardness reductions for graph problems
//! parameterized by vertex cover, twin-cover, neighborhood diversity and
//! modular-width, together with exact brute-force oracles that certify every
//! transformation on small instances.

pub mod bits;
pub mod cfa;
pub mod cnf;
pub mod compose;
pub mod error;
pub mod generate;
pub mod graph;
pub mod harness;
pub mod kernels;
pub mod ndcomp;
pub mod oracles;
pub mod params;
pub mod ppt;

pub use cnf::{CnfFormula, Lit};
pub use error::{Error, Result};
pub use graph::Graph;
