pub mod acceptance;
pub mod algebra;
pub mod cli;
pub mod combinat;
pub mod cutjoin;
pub mod error;
pub mod oracle;
pub mod structure;
pub mod toprec;
pub mod wavefunction;

pub use error::{Error, Result};
