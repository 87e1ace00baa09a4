pub mod anchor;
pub mod cli;
pub mod error;
pub mod exactnum;
pub mod diffclosure;
pub mod nashfield;
pub mod regions;

pub use error::{Error, Result};
