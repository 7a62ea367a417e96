//! Lusin-measurable curves `[0,1] → E` into locally convex spaces: exact
//! interval-union measure theory, seminorm models, Lusin certificates,
//! certified Lᵖ quadrature, and the constructive approximation theorems.

pub mod approx;
pub mod borel;
pub mod cli;
pub mod config;
pub mod curves;
pub mod error;
pub mod lcs;
pub mod lpnorm;
pub mod numeric;
pub mod report;

pub use error::{Error, Result};
