pub mod braid;
pub mod cli;
pub mod error;
pub mod jones_eval;
pub mod oracle;
pub mod path_model;
pub mod sampler;
pub mod tolerances;
pub mod verify;

pub use braid::{BraidWord, Letter};
pub use error::{Error, Result};
