pub mod arithmetic;
pub mod characters;
pub mod classifier;
pub mod error;
pub mod gauss_numeric;
pub mod stickelberger;

pub use error::{Error, Result};
