//! Synthesis, simulation and T-count accounting for a garbageless
//! conditional adder and the shift-and-add multiplier built from it.
//!
//! The pieces:
//!
//! * [`circuit`]: the gate-level IR ([`Circuit`], [`Gate`], [`RegisterMap`]).
//! * [`format`]: JSON netlist and OpenQASM 2.0 text.
//! * [`clifford_t`]: Toffoli expansion into a 7-T Clifford+T sequence.
//! * [`ctrl_add`], [`multiplier`]: the circuit builders and their oracles.
//! * [`bennett`]: compute/copy/uncompute garbage removal.
//! * [`simulate`]: bit-vector and statevector backends.
//! * [`verify`]: oracle comparison over exhaustive or sampled inputs.
//! * [`resources`]: gate census, cost models and comparison tables.
//!
//! ```
//! use qarith::{build_multiplier, clifford_t::expand_toffolis};
//!
//! let mult = build_multiplier(4).unwrap();
//! assert_eq!(mult.circuit.width(), 17);
//! assert_eq!(expand_toffolis(&mult.circuit).t_count(), 322);
//! ```

pub mod bennett;
pub mod circuit;
pub mod clifford_t;
pub mod ctrl_add;
mod error;
pub mod format;
pub mod multiplier;
pub mod resources;
pub mod simulate;
mod synthesis;
pub mod verify;

pub use bennett::bennett_wrap;
pub use circuit::{Circuit, Gate, GateKind, RegisterMap, Wire};
pub use ctrl_add::build_ctrl_add;
pub use error::{Error, Result};
pub use multiplier::build_multiplier;
pub use synthesis::{Block, Synthesis};
