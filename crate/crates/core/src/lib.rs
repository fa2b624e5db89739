pub mod asymptotic;
pub mod error;
pub mod hecke;
pub mod laurent;
pub mod sl2;
pub mod weyl;

pub use error::{Error, Result};
