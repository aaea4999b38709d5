//! Finite ring engine: construction, element certificates and
//! D-regularly nil clean witnesses.

pub mod classify;
pub mod drnc;
pub mod dsl;
pub mod element;
pub mod endo;
pub mod error;
pub mod ring;

pub use error::{Error, Result};
pub use ring::{Element, Limits, Ring, RingSpec};
