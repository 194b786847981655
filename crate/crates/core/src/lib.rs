pub mod cli;
pub mod error;
pub mod exactmath;
pub mod ideals;
pub mod kinvariants;
pub mod numberfield;
pub mod semigroupsets;
pub mod torsion;

pub use error::{Error, Result};
