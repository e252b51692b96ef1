//! Synthesis and verification of code-surgery ancilla systems.
//!
//! The pipeline takes a stabilizer code and a logical Pauli operator, builds a
//! port graph whose edges pair anticommuting sites, grows it into an expander,
//! thickens and cellulates it, and assembles the deformed code in which the
//! logical operator is a product of stabilizers.

pub mod base;
pub mod code;
pub mod cycles;
pub mod deform;
pub mod error;
pub mod expander;
pub mod gf2;
pub mod graph;
pub mod lift;
pub mod par;
pub mod pipeline;

pub use error::{Error, Result};
