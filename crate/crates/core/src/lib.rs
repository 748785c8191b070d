pub mod catalog;
pub mod error;
pub mod groebner;
pub mod orbit;
pub mod reproduce;
pub mod ring;

pub use error::{Error, Result};
