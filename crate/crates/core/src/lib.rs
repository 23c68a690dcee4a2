//! Polynomial system solving over finite chain rings, finite local rings and
//! finite principal ideal rings, with applications to MinRank and
//! rank-metric decoding.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod error;
pub mod extension;
pub mod groebner;
pub mod linalg;
pub mod localring;
pub mod minrank;
pub mod oracles;
pub mod polys;
pub mod rankdecode;
pub mod rings;
pub mod skew;
pub mod solve;

pub use error::{Error, Result};
pub use rings::{ChainRing, Elem, PirElem, PirRing, RingKind};
