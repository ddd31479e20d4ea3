pub mod bott;
pub mod cli;
pub mod error;
pub mod field;
pub mod forms;
pub mod hodge;
pub mod linalg;
pub mod modp;
pub mod pfaffian;
pub mod schur;
pub mod weights;

#[cfg(test)]
mod testkit;

pub use error::{Error, Result};
