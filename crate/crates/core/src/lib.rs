//! Exact computation of convergence and convergence approach structures on
//! finite carriers, together with their hyperspace structures on closed sets.
//!
//! Everything here is `no_std` (with `alloc`) and uses exact rational
//! arithmetic extended by `∞`; there is no floating point.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod cap;
pub mod conv;
mod error;
pub mod fault;
pub mod frames;
pub mod hyper;
pub mod setcalc;
pub mod values;

pub use cap::{CapSpace, ClassReport, Completion, Tower};
pub use conv::hyper::{CarrierMode, HyperFilter};
pub use conv::ConvSpace;
pub use error::Error;
pub use frames::{DClosure, FrameFn};
pub use hyper::{HyperSpace, Structure};
pub use setcalc::{Carrier, Kernel, SelectorMap, SetFamily};
pub use values::Value;
