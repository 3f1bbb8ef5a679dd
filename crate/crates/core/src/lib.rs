pub mod error;
pub mod rational;
pub mod rootcore;
pub mod weyl;
pub mod gradings;
pub mod linalg;
pub mod fixedpoints;
pub mod jordan;
pub mod grassflow;
pub mod cli;

pub use error::{Error, Result};
