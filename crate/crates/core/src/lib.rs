//! Exact-arithmetic toolkit for congruence primes between Hecke eigensystems.
//!
//! The layers, bottom up: exact integer/rational linear algebra ([`linalg`],
//! [`field`], [`poly`]), lattices with pairings ([`lattice`]), commuting
//! operator systems ([`hecke`]), congruence modules ([`congruence`]), and the
//! arithmetic front ends ([`modsym`], [`satake`], [`criticality`], [`io`]).

pub mod congruence;
pub mod criticality;
pub mod error;
pub mod field;
pub mod hecke;
pub mod io;
pub mod lattice;
pub mod linalg;
pub mod modsym;
pub mod poly;
pub mod satake;

pub use error::{Error, Result};

/// Version string recorded in every result record.
pub const TOOLKIT_VERSION: &str = env!("CARGO_PKG_VERSION");
