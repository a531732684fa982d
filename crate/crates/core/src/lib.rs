//! Twisted sectors of the inertia stack of `M_g`: enumeration, ages,
//! genus-0 characters and the assembled orbifold Poincaré polynomials.

pub mod admissible;
pub mod age;
pub mod algebra;
pub mod catalog;
pub mod error;
pub mod fieldcount;
pub mod genus0;
pub mod latex;
pub mod partition;
pub mod reference;
pub mod selftest;

pub use error::{Error, Result};
