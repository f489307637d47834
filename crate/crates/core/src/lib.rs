//! Quantum indices of real rational plane curves.
//!
//! This crate computes the quantum index of a real rational curve given by a
//! parametrization three independent ways — as the lattice area of its index
//! diagram, as the numerically integrated logarithmic area divided by pi^2,
//! and through the logarithmic rotation number together with contributions of
//! solitary real points — and enumerates rational tropical curves matching
//! boundary-momenta constraints to produce Block-Gottsche refined counts.
//!
//! The crate is `no_std`-compatible (with `alloc`); enable the `libm` feature
//! when building without `std` to provide floating-point math.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

#[cfg(all(not(feature = "std"), not(feature = "libm")))]
compile_error!("building without `std` requires the `libm` feature");

pub mod curve;
pub mod lattice;
pub mod linalg;
pub mod lognum;
pub mod qpoly;
pub mod ratpoly;
pub mod rng;
pub mod sampling;
pub mod tropical;

mod fmath;

pub use lattice::{LatticePoint, LatticePolygon, Side};
pub use qpoly::HalfLaurent;
