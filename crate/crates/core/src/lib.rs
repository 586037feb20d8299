pub mod duality;
pub mod error;
pub mod forward;
pub mod geometry;
pub mod cli;
pub mod linalg;
pub mod nearfield;
pub mod oracles;
pub mod potentials;
pub mod quadrature;
pub mod specfun;
pub mod synth;

pub use error::{Error, Result};
