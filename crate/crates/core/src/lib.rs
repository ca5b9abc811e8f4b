//! Exact combinatorics of cyclic actions on closed surfaces and of the
//! gluing conditions that assemble them into roots of twists about
//! multicurves.
//!
//! The crate is `no_std` and only needs `alloc`. Everything here is a pure
//! function over immutable values; parallel drivers live in the companion
//! `twistroot` crate.

#![no_std]

extern crate alloc;

pub mod angle;
pub mod arith;
pub mod bounds;
pub mod classify;
pub mod compat;
pub mod dataset;
pub mod enumerate;
pub mod spec;

pub use angle::TurnAngle;
pub use compat::{ClassRef, Mode, PairingWitness, Side, WitnessPair};
pub use dataset::{ConeClass, DataSet, InvalidDataSet, OrbitDistribution, PermutingDataSet, RawDataSet, Violation};
pub use enumerate::EnumQuery;
pub use spec::MulticurveSpec;
