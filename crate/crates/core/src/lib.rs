//! Construction and analysis of quantum subsystem codes from classical
//! codes over finite fields.

pub mod bounds;
pub mod cli;
pub mod codespace;
pub mod construct;
pub mod distance;
pub mod error;
pub mod forms;
pub mod galois;
pub mod gauge;
pub mod linalg;
pub mod report;
pub mod reproduce;
pub mod simplex;

pub use error::{Error, Result};
