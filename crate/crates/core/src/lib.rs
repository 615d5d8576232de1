//! Core engine for multi-level urban simulation: procedural environment
//! construction (region graphs, road networks, city blocks, parcels),
//! macroscopic population flow as density-seeking clouds, microscopic
//! marker-based crowd calibration, and SIR contagion dynamics.
//!
//! The crate is `no_std`-compatible (with `alloc`); enable the `libm`
//! feature instead of `std` for freestanding builds. All randomness is
//! injected through seeded generators, so every simulation is reproducible
//! bit-for-bit from its seed.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod contagion;
pub mod geometry;
pub mod macrosim;
mod math;
pub mod microsim;
pub mod parcels;
pub mod regions;
pub mod rng;
pub mod roads;
