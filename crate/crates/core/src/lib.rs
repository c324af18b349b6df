pub mod cli;
pub mod detline;
pub mod error;
pub mod exact;
pub mod laurent;
pub mod index;
pub mod lattice;
pub mod random;
pub mod simplicial;
pub mod suites;

pub use error::{Error, Result};
