//! Exact engine for the relative Chevalley-Eilenberg cohomology of current superalgebras
//! `g[A]`, `A = C[z+, z-] ⊗ Λ(θ1, θ2, θ3)`, sector by sector in the derivative multigrading.
//!
//! The crate is `no_std` (with `alloc`); enable `std` or `parallel` for thread fan-out.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod classes;
pub mod cochain;
pub mod error;
pub mod eval;
pub mod exactla;
pub mod field;
pub mod liealg;
pub mod schemes;
pub mod sector;
pub mod superpoly;
pub mod superspace;
pub mod trace;

pub use error::{RelcohError, Result};
pub use liealg::{build_algebra, LieAlgebraData, LieAlgebraSpec, Series};
pub use superspace::{charges, level, AMonomial, ChargeVector, MultiDegree};
