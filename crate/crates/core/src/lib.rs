//! Modelling and analysis of IoT control architectures.
//!
//! The crate parses a small textual language describing the sensors,
//! actuators, devices and controllers of an IoT application, checks the
//! resulting model against seven invariant consistency rules, simulates the
//! sense-decision-control loop over device transition systems, and emits the
//! instance-level Event-B contexts for the generic analysis framework.

pub mod checker;
pub mod dsl;
pub mod eventb;
pub mod ident;
pub mod model;
pub mod rel;
pub mod semantics;

pub use ident::Identifier;
pub use model::{Diagnostic, RuleCode, Severity, SystemModel};
