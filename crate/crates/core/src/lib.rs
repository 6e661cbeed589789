//! Exact computer algebra for rational maps between projective spaces over
//! prime fields: Gröbner bases, saturation, Hilbert data, inversion of
//! birational maps, smoothness tests, and the constructions and fixtures of
//! quadro-quadric Cremona transformations.
//!
//! The guide in `book/` walks through each layer.

pub mod algebra;
pub mod constructions;
pub mod error;
pub mod geometry;
pub mod ratmap;
pub mod verify;

pub use error::{Error, Result};

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/introduction.md")]
mod chapter0 {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/documents.md")]
mod chapter1 {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/ideals.md")]
mod chapter2 {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/maps.md")]
mod chapter3 {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/geometry.md")]
mod chapter4 {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/surfaces.md")]
mod chapter5 {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/lifting.md")]
mod chapter6 {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/verification.md")]
mod chapter7 {}

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
mod readme {}
