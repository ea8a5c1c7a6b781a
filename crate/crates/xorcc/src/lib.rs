//! Exact computation and verification toolkit for partial XOR functions:
//! non-adaptive parity decision tree complexity and one-way communication
//! complexity from a single shift-set abstraction, covering-code protocol
//! constructions, hypercube isoperimetry checks, and sumset bounds.

pub mod boolfn;
pub mod codes;
pub mod cube;
pub mod error;
pub mod fileio;
pub mod gf2;
pub mod nadt;
pub mod owcc;
pub mod report;
pub mod shifts;
pub mod suite;
pub mod sumset;
