//! F-purity, F-pure thresholds, splitting ideals and graded resolutions for
//! standard graded quotients `S/I` of polynomial rings over prime fields.

pub mod bertini;
pub mod cli;
pub mod error;
pub mod frobenius;
mod groebner;
pub mod ideal;
pub mod resolution;
pub mod ring;
pub mod verify;

pub use error::{Error, Result};
