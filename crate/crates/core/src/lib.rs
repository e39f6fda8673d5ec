//! Exact classification of local reduction types of elliptic curves at
//! primes `p ≥ 5`, with checks of type restrictions imposed by torsion.

pub mod arith;
pub mod error;
pub mod families;
pub mod fixtures;
pub mod io;
pub mod local;
pub mod sweep;
pub mod theorems;
pub mod weierstrass;

pub use error::{Error, Result};
