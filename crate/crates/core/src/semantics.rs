//! Execution of the sense-decision-control loop over a consistent model.
//!
//! A sensed value flows to every controller reading the sensor; the
//! controller's services compute an order; the order travels to the
//! actuators bound to the devices the sensor controls; the actuator's
//! signal drives the device transition system. Every step is recorded in a
//! replayable trace.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::checker::{check_all, CheckReport, CheckerConfig};
use crate::ident::Identifier;
use crate::model::{Service, SystemModel};
use crate::rel;

/// A value received from a sensor at a given tick.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SenseEvent {
    pub sensor: Identifier,
    pub value: i64,
    pub tick: u64,
}

/// An order sent by a controller to an actuator, attributed to the service
/// whose rules produced it and to the tick of the causing sense event.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderEvent {
    pub controller: Identifier,
    pub actuator: Identifier,
    pub order: Identifier,
    pub cause_tick: u64,
    pub via_service: Identifier,
}

/// A device moving between states on a stimulation signal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeviceTransition {
    pub device: Identifier,
    pub old_state: Identifier,
    pub signal: Identifier,
    pub new_state: Identifier,
}

/// An order the target actuator does not accept.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RejectedOrder {
    pub actuator: Identifier,
    pub order: Identifier,
}

/// A signal with no transition from the device's current state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StuckTransition {
    pub device: Identifier,
    pub state: Identifier,
    pub signal: Identifier,
}

/// Everything one sense event caused.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub sense: SenseEvent,
    pub orders: Vec<OrderEvent>,
    pub transitions: Vec<DeviceTransition>,
    pub rejected: Vec<RejectedOrder>,
    pub stuck: Vec<StuckTransition>,
}

/// The auditable record of a scenario run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Trace {
    pub steps: Vec<TraceStep>,
}

impl Trace {
    /// Line-oriented wire form, LF-terminated:
    /// `TICK n SENSE s v`, `ORDER c a ord via srv`,
    /// `TRANS d s1 -sig-> s2`, `REJECT a ord`, `STUCK d s sig`.
    pub fn to_wire(&self) -> String {
        let mut out = String::new();
        for step in &self.steps {
            out.push_str(&format!(
                "TICK {} SENSE {} {}\n",
                step.sense.tick, step.sense.sensor, step.sense.value
            ));
            for order in &step.orders {
                out.push_str(&format!(
                    "ORDER {} {} {} via {}\n",
                    order.controller, order.actuator, order.order, order.via_service
                ));
            }
            for transition in &step.transitions {
                out.push_str(&format!(
                    "TRANS {} {} -{}-> {}\n",
                    transition.device, transition.old_state, transition.signal, transition.new_state
                ));
            }
            for rejected in &step.rejected {
                out.push_str(&format!("REJECT {} {}\n", rejected.actuator, rejected.order));
            }
            for stuck in &step.stuck {
                out.push_str(&format!(
                    "STUCK {} {} {}\n",
                    stuck.device, stuck.state, stuck.signal
                ));
            }
        }
        out
    }
}

/// Mutable simulation state: the model, where every device currently is,
/// and how many events have been processed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimState {
    pub model: SystemModel,
    pub device_states: BTreeMap<Identifier, Identifier>,
    pub tick: u64,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("the model is not consistent for functioning ({} diagnostics); simulation refused", report.diagnostics.len())]
    Inconsistent { report: CheckReport },
    #[error("event {index}: {source}")]
    Event { index: usize, source: EventError },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EventError {
    #[error("sensor {sensor} is not declared")]
    UnknownSensor { sensor: Identifier },
    #[error("value {value} is outside the range of sensor {sensor}")]
    ValueOutOfRange { sensor: Identifier, value: i64 },
    #[error("tick {tick} does not increase over the previous tick {prev}")]
    TickNotIncreasing { tick: u64, prev: u64 },
}

/// First-match rule evaluation for one service.
///
/// Literal and range patterns take precedence over wildcard rules, so a
/// catch-all first rule does not shadow a later exact match; within each
/// tier the first matching rule wins. `None` means the service stays
/// silent for this value.
pub fn compute_order(service: &Service, value: i64) -> Option<Identifier> {
    let specific = service
        .rules
        .iter()
        .filter(|rule| rule.pattern.is_specific())
        .find(|rule| rule.pattern.matches(value));
    let fallback = || {
        service
            .rules
            .iter()
            .find(|rule| !rule.pattern.is_specific())
    };
    specific.or_else(fallback).map(|rule| rule.order.clone())
}

impl SimState {
    /// Starts a simulation. The model must pass every consistency rule;
    /// otherwise the check report is returned and no state is built.
    pub fn new(model: SystemModel) -> Result<SimState, SimError> {
        let report = check_all(&model, CheckerConfig::default());
        if !report.functioning_consistent {
            return Err(SimError::Inconsistent { report });
        }
        let device_states = model
            .phys
            .devices
            .values()
            .map(|device| (device.id.clone(), device.current_state.clone()))
            .collect();
        Ok(SimState {
            model,
            device_states,
            tick: 0,
        })
    }

    /// Reacts to one sensed value.
    ///
    /// For every controller reading the sensor, its services (in sorted
    /// order) are offered the value and the first order produced is sent to
    /// every actuator that is bound to a device the sensor controls and
    /// that the controller drives. Orders the actuator does not accept are
    /// recorded as rejected; accepted orders become signals, and missing
    /// transition entries leave the device state unchanged with a stuck
    /// note.
    pub fn step(&mut self, event: &SenseEvent) -> Result<TraceStep, EventError> {
        let sensor = self
            .model
            .sensor(&event.sensor)
            .ok_or_else(|| EventError::UnknownSensor {
                sensor: event.sensor.clone(),
            })?;
        if !sensor.range.contains(&event.value) {
            return Err(EventError::ValueOutOfRange {
                sensor: event.sensor.clone(),
                value: event.value,
            });
        }

        let mut step = TraceStep {
            sense: event.clone(),
            orders: Vec::new(),
            transitions: Vec::new(),
            rejected: Vec::new(),
            stuck: Vec::new(),
        };

        for controller in rel::image(&self.model.data_inputs, &event.sensor) {
            let decision = rel::image(&self.model.soft.service_dependency, &controller)
                .into_iter()
                .find_map(|service_id| {
                    let service = self.model.service(&service_id)?;
                    compute_order(service, event.value).map(|order| (order, service_id))
                });
            let Some((order, via_service)) = decision else {
                continue;
            };
            for device in rel::image(&self.model.control_dependency, &event.sensor) {
                for actuator in
                    rel::preimage(&self.model.phys.actuator_device_binding, &device)
                {
                    if !self
                        .model
                        .order_outputs
                        .contains(&(controller.clone(), actuator.clone()))
                    {
                        continue;
                    }
                    step.orders.push(OrderEvent {
                        controller: controller.clone(),
                        actuator: actuator.clone(),
                        order: order.clone(),
                        cause_tick: event.tick,
                        via_service: via_service.clone(),
                    });
                    self.actuate(&actuator, &order, &device, &mut step);
                }
            }
        }

        self.tick += 1;
        Ok(step)
    }

    fn actuate(
        &mut self,
        actuator_id: &Identifier,
        order: &Identifier,
        device_id: &Identifier,
        step: &mut TraceStep,
    ) {
        let Some(actuator) = self.model.actuator(actuator_id) else {
            return;
        };
        if !actuator.input_orders.contains(order) {
            step.rejected.push(RejectedOrder {
                actuator: actuator_id.clone(),
                order: order.clone(),
            });
            return;
        }
        let signal = actuator.signal_of_order[order].clone();
        let Some(device) = self.model.device(device_id) else {
            return;
        };
        let current = self
            .device_states
            .get(device_id)
            .cloned()
            .unwrap_or_else(|| device.behaviour.initial.clone());
        match device.behaviour.delta.get(&(current.clone(), signal.clone())) {
            Some(next) => {
                step.transitions.push(DeviceTransition {
                    device: device_id.clone(),
                    old_state: current,
                    signal,
                    new_state: next.clone(),
                });
                self.device_states.insert(device_id.clone(), next.clone());
            }
            None => step.stuck.push(StuckTransition {
                device: device_id.clone(),
                state: current,
                signal,
            }),
        }
    }
}

/// Folds a whole scenario into a trace. Events must carry strictly
/// increasing ticks; faults name the offending event index.
pub fn run_scenario(model: &SystemModel, events: &[SenseEvent]) -> Result<Trace, SimError> {
    let mut state = SimState::new(model.clone())?;
    let mut prev_tick: Option<u64> = None;
    let mut steps = Vec::with_capacity(events.len());
    for (index, event) in events.iter().enumerate() {
        if let Some(prev) = prev_tick {
            if event.tick <= prev {
                return Err(SimError::Event {
                    index,
                    source: EventError::TickNotIncreasing {
                        tick: event.tick,
                        prev,
                    },
                });
            }
        }
        prev_tick = Some(event.tick);
        let step = state
            .step(event)
            .map_err(|source| SimError::Event { index, source })?;
        steps.push(step);
    }
    Ok(Trace { steps })
}

/// Integrity of orders: every emitted order must be what the named service
/// computes for the causing sensed value, along a declared
/// controller-service dependency and a declared order link.
pub fn audit_order_integrity(trace: &Trace, model: &SystemModel) -> bool {
    trace.steps.iter().all(|step| {
        step.orders.iter().all(|order| {
            let on_output_edge = model
                .order_outputs
                .contains(&(order.controller.clone(), order.actuator.clone()));
            let declared_dependency = model
                .soft
                .service_dependency
                .contains(&(order.controller.clone(), order.via_service.clone()));
            let recomputed = model
                .service(&order.via_service)
                .and_then(|service| compute_order(service, step.sense.value));
            on_output_edge
                && declared_dependency
                && order.cause_tick == step.sense.tick
                && recomputed.as_ref() == Some(&order.order)
        })
    })
}

/// One parsed scenario line with its 1-based source line number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScenarioEvent {
    pub line: usize,
    pub event: SenseEvent,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ScenarioParseError {
    pub line: usize,
    pub message: String,
}

/// Parses a scenario file: one `tick sensorId value` triple per line.
/// Blank lines and `//` comments are skipped.
pub fn parse_scenario(text: &str) -> Result<Vec<ScenarioEvent>, ScenarioParseError> {
    let mut events = Vec::new();
    for (idx, raw_line) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw_line.split("//").next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        let [tick, sensor, value] = fields.as_slice() else {
            return Err(ScenarioParseError {
                line,
                message: format!(
                    "expected `tick sensorId value`, found {} field(s)",
                    fields.len()
                ),
            });
        };
        let tick: u64 = tick.parse().map_err(|_| ScenarioParseError {
            line,
            message: format!("tick {tick:?} is not a non-negative integer"),
        })?;
        let sensor = Identifier::new(*sensor).map_err(|e| ScenarioParseError {
            line,
            message: e.to_string(),
        })?;
        let value: i64 = value.parse().map_err(|_| ScenarioParseError {
            line,
            message: format!("value {value:?} is not an integer"),
        })?;
        events.push(ScenarioEvent {
            line,
            event: SenseEvent {
                sensor,
                value,
                tick,
            },
        });
    }
    Ok(events)
}
