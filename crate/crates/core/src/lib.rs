pub mod cli;
pub mod error;
pub mod kernels;
pub mod mcquad;
pub mod norms;
pub mod siegel;
pub mod specfun;

pub use error::{Error, Result};
