//! Finite-dimensional coalgebras over exact fields: wedge products, wedge
//! power filtrations, coradicals and injectivity checks for coalgebra maps.

pub mod cli;
pub mod coalgebra;
pub mod coradical;
pub mod document;
pub mod error;
pub mod field;
pub mod linalg;
pub mod report;
pub mod sampling;
pub mod verify;
pub mod wedge;

pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use report::VerificationReport;
