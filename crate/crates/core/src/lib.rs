pub mod certify;
pub mod error;
pub mod kernel;
pub mod ladder;
pub mod modular;
pub mod precision;
pub mod rational;

pub use error::{Error, Result};
pub use precision::{BigComplex, BigReal, PrecisionContext};
pub use rational::PosRational;
