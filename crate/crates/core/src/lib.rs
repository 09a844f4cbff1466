//! Exact product measures for measures that need not be σ-finite.

pub mod cli;
pub mod error;
pub mod integration;
pub mod measures;
pub mod numerics;
pub mod oracle;
pub mod product;
pub mod sets;
pub mod sigma_engine;

pub use error::{Error, Result};
