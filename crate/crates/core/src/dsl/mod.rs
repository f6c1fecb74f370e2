//! The textual description language for IoT control systems.
//!
//! A program names the system, declares components per category, wires the
//! binding relations, and attaches rule blocks, protocol sets and device
//! behaviours. `parse_system` turns source text into a validated
//! [`SystemModel`]; `format_system` prints the canonical form.

mod format;
mod lex;
mod parse;

use std::fmt;

use crate::model::SystemModel;

pub use format::format_system;

/// Position of a token in the source text. Lines and columns are 1-based;
/// columns count characters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SourceSpan {
    pub line: usize,
    pub column: usize,
    pub length: usize,
}

impl SourceSpan {
    pub(crate) fn new(line: usize, column: usize, length: usize) -> Self {
        SourceSpan {
            line,
            column,
            length: length.max(1),
        }
    }
}

/// A syntax or resolution fault, located at the offending token.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub span: SourceSpan,
    pub expected: String,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}: expected {}, found {}",
            self.span.line, self.span.column, self.expected, self.found
        )
    }
}

impl std::error::Error for ParseError {}

/// Parses a program into a validated system model.
///
/// All lexical, syntactic and resolution faults found in one run are
/// returned together, each with an accurate span. Parsing is deterministic.
pub fn parse_system(text: &str) -> Result<SystemModel, Vec<ParseError>> {
    parse::parse(text)
}

/// Defaults applied to declarations the language keeps implicit: sensor
/// ranges, actuator order/signal sets, device behaviours and protocol sets.
pub mod defaults {
    use std::collections::BTreeSet;

    use crate::ident::Identifier;
    use crate::model::{Actuator, Controller, Device, DeviceBehaviour, Sensor};

    /// Protocol assumed for every element without a `PROTOCOLS` line.
    pub const DEFAULT_PROTOCOL: &str = "MQTT";

    /// Sensors without explicit ranges accept this inclusive value range.
    pub const SENSOR_RANGE: std::ops::RangeInclusive<i64> = 0..=100;

    fn id(s: &str) -> Identifier {
        Identifier::new(s).expect("static identifier")
    }

    pub fn protocols() -> BTreeSet<Identifier> {
        [id(DEFAULT_PROTOCOL)].into_iter().collect()
    }

    pub fn sensor(name: Identifier, category: Identifier) -> Sensor {
        Sensor {
            id: name,
            category,
            range: SENSOR_RANGE.collect(),
            value: *SENSOR_RANGE.start(),
            protocols: protocols(),
        }
    }

    /// Actuators accept the orders `on`/`off` and forward them as
    /// `on_signal`/`off_signal`, matching the default device behaviour.
    pub fn actuator(name: Identifier, category: Identifier) -> Actuator {
        Actuator {
            id: name,
            category,
            input_orders: [id("on"), id("off")].into_iter().collect(),
            output_signals: [id("on_signal"), id("off_signal")].into_iter().collect(),
            protocols: protocols(),
            signal_of_order: [
                (id("on"), id("on_signal")),
                (id("off"), id("off_signal")),
            ]
            .into_iter()
            .collect(),
        }
    }

    pub fn device(name: Identifier, category: Identifier) -> Device {
        let behaviour = DeviceBehaviour::on_off();
        let current_state = behaviour.initial.clone();
        Device {
            id: name,
            category,
            behaviour,
            current_state,
        }
    }

    pub fn controller(name: Identifier) -> Controller {
        Controller {
            id: name,
            protocols: protocols(),
        }
    }
}
