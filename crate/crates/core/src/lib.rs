pub mod cli;
pub mod derimorph;
pub mod error;
pub mod exactness;
pub mod fincat;
pub mod linalg;
pub mod pointedops;
pub mod repder;

pub use error::{Error, Result};
