//! Exact prolongation calculus for differential algebra.

pub mod atlas;
pub mod basefield;
pub mod cli;
pub mod dgroup;
pub mod error;
pub mod ideals;
pub mod linalg;
pub mod polyalg;
pub mod prolong;
pub mod series;

pub use error::{Error, Result};
