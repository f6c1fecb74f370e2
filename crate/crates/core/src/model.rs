//! In-memory model of an IoT control system: the physical architecture,
//! the control software, and the relations wiring the two together.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::ident::{Identifier, InvalidIdentifier};
use crate::rel::Relation;

/// A sensor produces integer values within a declared finite range and talks
/// to controllers over one or more protocols.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sensor {
    pub id: Identifier,
    pub category: Identifier,
    pub range: BTreeSet<i64>,
    pub value: i64,
    pub protocols: BTreeSet<Identifier>,
}

impl Sensor {
    pub fn validate(&self) -> Result<(), ModelError> {
        if self.range.is_empty() {
            return Err(ModelError::EmptySensorRange {
                sensor: self.id.clone(),
            });
        }
        if !self.range.contains(&self.value) {
            return Err(ModelError::SensorValueOutOfRange {
                sensor: self.id.clone(),
                value: self.value,
            });
        }
        Ok(())
    }
}

/// An actuator accepts orders and forwards a signal to the device it is
/// bound to. The order-to-signal map makes the forwarding deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Actuator {
    pub id: Identifier,
    pub category: Identifier,
    pub input_orders: BTreeSet<Identifier>,
    pub output_signals: BTreeSet<Identifier>,
    pub protocols: BTreeSet<Identifier>,
    pub signal_of_order: BTreeMap<Identifier, Identifier>,
}

impl Actuator {
    pub fn validate(&self) -> Result<(), ModelError> {
        if self.input_orders.is_empty() {
            return Err(ModelError::NoInputOrders {
                actuator: self.id.clone(),
            });
        }
        if self.output_signals.is_empty() {
            return Err(ModelError::NoOutputSignals {
                actuator: self.id.clone(),
            });
        }
        for order in &self.input_orders {
            match self.signal_of_order.get(order) {
                None => {
                    return Err(ModelError::UnmappedOrder {
                        actuator: self.id.clone(),
                        order: order.clone(),
                    })
                }
                Some(signal) if !self.output_signals.contains(signal) => {
                    return Err(ModelError::ForeignSignal {
                        actuator: self.id.clone(),
                        signal: signal.clone(),
                    })
                }
                Some(_) => {}
            }
        }
        if let Some(order) = self
            .signal_of_order
            .keys()
            .find(|o| !self.input_orders.contains(*o))
        {
            return Err(ModelError::ForeignOrder {
                actuator: self.id.clone(),
                order: order.clone(),
            });
        }
        Ok(())
    }
}

/// A device behaviour is a labelled transition system: states, an initial
/// state, stimulation signals, and a (possibly partial) transition map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeviceBehaviour {
    pub states: BTreeSet<Identifier>,
    pub initial: Identifier,
    pub signals: BTreeSet<Identifier>,
    pub delta: BTreeMap<(Identifier, Identifier), Identifier>,
}

impl DeviceBehaviour {
    /// The two-state behaviour used when no explicit one is declared:
    /// `off`/`on` states driven by `on_signal`/`off_signal`, with a total
    /// transition map so no stimulation ever gets stuck.
    pub fn on_off() -> Self {
        let id = |s: &str| Identifier::new(s).unwrap();
        let (off, on) = (id("off"), id("on"));
        let (on_sig, off_sig) = (id("on_signal"), id("off_signal"));
        let mut delta = BTreeMap::new();
        delta.insert((off.clone(), on_sig.clone()), on.clone());
        delta.insert((on.clone(), off_sig.clone()), off.clone());
        delta.insert((on.clone(), on_sig.clone()), on.clone());
        delta.insert((off.clone(), off_sig.clone()), off.clone());
        DeviceBehaviour {
            states: [off.clone(), on].into_iter().collect(),
            initial: off,
            signals: [on_sig, off_sig].into_iter().collect(),
            delta,
        }
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        if !self.states.contains(&self.initial) {
            return Err(ModelError::InitialStateUnknown {
                state: self.initial.clone(),
            });
        }
        for ((state, signal), target) in &self.delta {
            if !self.states.contains(state)
                || !self.signals.contains(signal)
                || !self.states.contains(target)
            {
                return Err(ModelError::ForeignTransition {
                    state: state.clone(),
                    signal: signal.clone(),
                    target: target.clone(),
                });
            }
        }
        Ok(())
    }
}

/// A physical object under control, with its transition-system behaviour and
/// the state it currently occupies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Device {
    pub id: Identifier,
    pub category: Identifier,
    pub behaviour: DeviceBehaviour,
    pub current_state: Identifier,
}

impl Device {
    pub fn validate(&self) -> Result<(), ModelError> {
        self.behaviour.validate()?;
        if !self.behaviour.states.contains(&self.current_state) {
            return Err(ModelError::CurrentStateUnknown {
                device: self.id.clone(),
                state: self.current_state.clone(),
            });
        }
        Ok(())
    }
}

/// Pattern over sensed values on the left-hand side of a control rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValuePattern {
    Literal(i64),
    Range { lo: i64, hi: i64 },
    Wildcard,
}

impl ValuePattern {
    pub fn matches(&self, value: i64) -> bool {
        match self {
            ValuePattern::Literal(v) => *v == value,
            ValuePattern::Range { lo, hi } => (*lo..=*hi).contains(&value),
            ValuePattern::Wildcard => true,
        }
    }

    /// Literal and range patterns are specific; wildcards are the fallback.
    pub fn is_specific(&self) -> bool {
        !matches!(self, ValuePattern::Wildcard)
    }
}

/// One guarded command of a service: a value pattern mapped to an order.
/// The value kind records the sensed quantity named in the source text
/// (`Lightvalue`, `DoorValue`, ...) and is not interpreted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ControlRule {
    pub value_kind: Identifier,
    pub pattern: ValuePattern,
    pub order: Identifier,
}

impl ControlRule {
    pub fn validate(&self) -> Result<(), ModelError> {
        if let ValuePattern::Range { lo, hi } = self.pattern {
            if lo > hi {
                return Err(ModelError::InvertedRange { lo, hi });
            }
        }
        Ok(())
    }
}

/// A named, ordered list of control rules. An empty list is legal and
/// denotes a service that never produces orders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Service {
    pub id: Identifier,
    pub rules: Vec<ControlRule>,
}

/// A software unit that turns sensed values into orders via its services.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Controller {
    pub id: Identifier,
    pub protocols: BTreeSet<Identifier>,
}

/// The physical part: sensors, actuators, devices, and the two hardware
/// binding relations (device-to-sensor and actuator-to-device).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PhysicalModel {
    pub sensors: BTreeMap<Identifier, Sensor>,
    pub actuators: BTreeMap<Identifier, Actuator>,
    pub devices: BTreeMap<Identifier, Device>,
    pub device_sensor_binding: Relation,
    pub actuator_device_binding: Relation,
}

impl PhysicalModel {
    pub fn new(
        sensors: impl IntoIterator<Item = Sensor>,
        actuators: impl IntoIterator<Item = Actuator>,
        devices: impl IntoIterator<Item = Device>,
        device_sensor_binding: Relation,
        actuator_device_binding: Relation,
    ) -> Self {
        PhysicalModel {
            sensors: sensors.into_iter().map(|s| (s.id.clone(), s)).collect(),
            actuators: actuators.into_iter().map(|a| (a.id.clone(), a)).collect(),
            devices: devices.into_iter().map(|d| (d.id.clone(), d)).collect(),
            device_sensor_binding,
            actuator_device_binding,
        }
    }
}

/// The software part: controllers, services, and which controller depends
/// on which service.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SoftwareModel {
    pub controllers: BTreeMap<Identifier, Controller>,
    pub services: BTreeMap<Identifier, Service>,
    pub service_dependency: Relation,
}

impl SoftwareModel {
    pub fn new(
        controllers: impl IntoIterator<Item = Controller>,
        services: impl IntoIterator<Item = Service>,
        service_dependency: Relation,
    ) -> Self {
        SoftwareModel {
            controllers: controllers.into_iter().map(|c| (c.id.clone(), c)).collect(),
            services: services.into_iter().map(|s| (s.id.clone(), s)).collect(),
            service_dependency,
        }
    }
}

/// The complete system: physical part, software part, and the three
/// cross-cutting relations.
///
/// * `data_inputs` links sensors to the controllers that read them.
/// * `order_outputs` links controllers to the actuators they drive.
/// * `control_dependency` declares which sensors impact which devices.
///
/// Values of this type produced by [`SystemModel::build`] are referentially
/// intact: every relation endpoint names a declared element. Fields are
/// public so tests and advanced callers can assemble models directly; such
/// models bypass validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemModel {
    pub name: Identifier,
    pub phys: PhysicalModel,
    pub soft: SoftwareModel,
    pub data_inputs: Relation,
    pub order_outputs: Relation,
    pub control_dependency: Relation,
}

impl SystemModel {
    /// Assembles and validates a system model.
    ///
    /// All faults are collected before returning: element-level invariant
    /// violations, names declared in more than one namespace, and dangling
    /// relation endpoints each yield one `REF_INTEGRITY` diagnostic. A model
    /// is only returned when the diagnostic list would be empty.
    pub fn build(
        name: Identifier,
        phys: PhysicalModel,
        soft: SoftwareModel,
        data_inputs: Relation,
        order_outputs: Relation,
        control_dependency: Relation,
    ) -> Result<SystemModel, Vec<Diagnostic>> {
        let mut diags = Vec::new();

        for sensor in phys.sensors.values() {
            if let Err(e) = sensor.validate() {
                diags.push(Diagnostic::ref_integrity(vec![sensor.id.clone()], e.to_string()));
            }
        }
        for actuator in phys.actuators.values() {
            if let Err(e) = actuator.validate() {
                diags.push(Diagnostic::ref_integrity(vec![actuator.id.clone()], e.to_string()));
            }
        }
        for device in phys.devices.values() {
            if let Err(e) = device.validate() {
                diags.push(Diagnostic::ref_integrity(vec![device.id.clone()], e.to_string()));
            }
        }
        for service in soft.services.values() {
            for rule in &service.rules {
                if let Err(e) = rule.validate() {
                    diags.push(Diagnostic::ref_integrity(
                        vec![service.id.clone()],
                        format!("service {}: {e}", service.id),
                    ));
                }
            }
        }

        check_namespaces(&phys, &soft, &mut diags);

        let declared = Namespaces::collect(&phys, &soft);
        let mut check_rel = |rel: &Relation, label: &str, lkind: Kind, rkind: Kind| {
            for (left, right) in rel {
                for (id, kind) in [(left, lkind), (right, rkind)] {
                    if !declared.contains(kind, id) {
                        diags.push(Diagnostic::ref_integrity(
                            vec![id.clone()],
                            format!("{label} references undeclared {kind} {id}"),
                        ));
                    }
                }
            }
        };
        check_rel(
            &phys.device_sensor_binding,
            "DeviceSensor",
            Kind::Device,
            Kind::Sensor,
        );
        check_rel(
            &phys.actuator_device_binding,
            "ActuatorDevice",
            Kind::Actuator,
            Kind::Device,
        );
        check_rel(
            &soft.service_dependency,
            "Control-Service",
            Kind::Controller,
            Kind::Service,
        );
        check_rel(&data_inputs, "SCBinding", Kind::Sensor, Kind::Controller);
        check_rel(&order_outputs, "CABinding", Kind::Controller, Kind::Actuator);
        check_rel(
            &control_dependency,
            "SDDependency",
            Kind::Sensor,
            Kind::Device,
        );

        if diags.is_empty() {
            Ok(SystemModel {
                name,
                phys,
                soft,
                data_inputs,
                order_outputs,
                control_dependency,
            })
        } else {
            diags.sort();
            diags.dedup();
            Err(diags)
        }
    }

    pub fn sensor(&self, id: &Identifier) -> Option<&Sensor> {
        self.phys.sensors.get(id)
    }

    pub fn actuator(&self, id: &Identifier) -> Option<&Actuator> {
        self.phys.actuators.get(id)
    }

    pub fn device(&self, id: &Identifier) -> Option<&Device> {
        self.phys.devices.get(id)
    }

    pub fn controller(&self, id: &Identifier) -> Option<&Controller> {
        self.soft.controllers.get(id)
    }

    pub fn service(&self, id: &Identifier) -> Option<&Service> {
        self.soft.services.get(id)
    }
}

/// Element kinds, used to describe what a relation endpoint must name.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Sensor,
    Actuator,
    Device,
    Controller,
    Service,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Sensor => "sensor",
            Kind::Actuator => "actuator",
            Kind::Device => "device",
            Kind::Controller => "controller",
            Kind::Service => "service",
        })
    }
}

struct Namespaces<'m> {
    phys: &'m PhysicalModel,
    soft: &'m SoftwareModel,
}

impl<'m> Namespaces<'m> {
    fn collect(phys: &'m PhysicalModel, soft: &'m SoftwareModel) -> Self {
        Namespaces { phys, soft }
    }

    fn contains(&self, kind: Kind, id: &Identifier) -> bool {
        match kind {
            Kind::Sensor => self.phys.sensors.contains_key(id),
            Kind::Actuator => self.phys.actuators.contains_key(id),
            Kind::Device => self.phys.devices.contains_key(id),
            Kind::Controller => self.soft.controllers.contains_key(id),
            Kind::Service => self.soft.services.contains_key(id),
        }
    }
}

fn check_namespaces(phys: &PhysicalModel, soft: &SoftwareModel, diags: &mut Vec<Diagnostic>) {
    let mut seen: BTreeMap<&Identifier, Kind> = BTreeMap::new();
    let components = phys
        .sensors
        .keys()
        .map(|id| (id, Kind::Sensor))
        .chain(phys.actuators.keys().map(|id| (id, Kind::Actuator)))
        .chain(phys.devices.keys().map(|id| (id, Kind::Device)))
        .chain(soft.controllers.keys().map(|id| (id, Kind::Controller)))
        .chain(soft.services.keys().map(|id| (id, Kind::Service)));
    for (id, kind) in components {
        if let Some(prev) = seen.insert(id, kind) {
            diags.push(Diagnostic::ref_integrity(
                vec![id.clone()],
                format!("name {id} is declared both as a {prev} and as a {kind}"),
            ));
        }
    }

    let mut protocols: BTreeSet<&Identifier> = BTreeSet::new();
    protocols.extend(phys.sensors.values().flat_map(|s| &s.protocols));
    protocols.extend(phys.actuators.values().flat_map(|a| &a.protocols));
    protocols.extend(soft.controllers.values().flat_map(|c| &c.protocols));
    for protocol in protocols {
        if let Some(kind) = seen.get(protocol) {
            diags.push(Diagnostic::ref_integrity(
                vec![protocol.clone()],
                format!("name {protocol} is used both as a protocol and as a {kind}"),
            ));
        }
    }
}

/// Stable code identifying which consistency rule a diagnostic comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleCode {
    ConnectedHw,
    WellStructCtrl,
    WeakConsistent,
    ConsistBindings,
    CtrlDependency,
    SensorToActuator,
    CompComm,
    RefIntegrity,
}

impl RuleCode {
    pub fn as_str(self) -> &'static str {
        match self {
            RuleCode::ConnectedHw => "CONNECTED_HW",
            RuleCode::WellStructCtrl => "WELL_STRUCT_CTRL",
            RuleCode::WeakConsistent => "WEAK_CONSISTENT",
            RuleCode::ConsistBindings => "CONSIST_BINDINGS",
            RuleCode::CtrlDependency => "CTRL_DEPENDENCY",
            RuleCode::SensorToActuator => "SENSOR2ACTUATOR",
            RuleCode::CompComm => "COMP_COMM",
            RuleCode::RefIntegrity => "REF_INTEGRITY",
        }
    }
}

impl fmt::Display for RuleCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for RuleCode {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Severity {
    Error,
    Warning,
}

/// One reported rule violation: which rule, which elements, and a message
/// naming every subject.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Diagnostic {
    pub rule_code: RuleCode,
    pub subjects: Vec<Identifier>,
    pub message: String,
    pub severity: Severity,
}

impl Diagnostic {
    pub fn error(rule_code: RuleCode, subjects: Vec<Identifier>, message: impl Into<String>) -> Self {
        Diagnostic {
            rule_code,
            subjects,
            message: message.into(),
            severity: Severity::Error,
        }
    }

    pub fn warning(
        rule_code: RuleCode,
        subjects: Vec<Identifier>,
        message: impl Into<String>,
    ) -> Self {
        Diagnostic {
            rule_code,
            subjects,
            message: message.into(),
            severity: Severity::Warning,
        }
    }

    pub fn ref_integrity(subjects: Vec<Identifier>, message: impl Into<String>) -> Self {
        Diagnostic::error(RuleCode::RefIntegrity, subjects, message)
    }

    /// Line-oriented text form: `RULECODE subject1,subject2,... : message`.
    pub fn to_line(&self) -> String {
        let subjects = self
            .subjects
            .iter()
            .map(Identifier::as_str)
            .collect::<Vec<_>>()
            .join(",");
        if subjects.is_empty() {
            format!("{} : {}", self.rule_code, self.message)
        } else {
            format!("{} {} : {}", self.rule_code, subjects, self.message)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error(transparent)]
    InvalidIdentifier(#[from] InvalidIdentifier),
    #[error("sensor {sensor}: value {value} is outside its declared range")]
    SensorValueOutOfRange { sensor: Identifier, value: i64 },
    #[error("sensor {sensor}: range must not be empty")]
    EmptySensorRange { sensor: Identifier },
    #[error("actuator {actuator}: input order set must not be empty")]
    NoInputOrders { actuator: Identifier },
    #[error("actuator {actuator}: output signal set must not be empty")]
    NoOutputSignals { actuator: Identifier },
    #[error("actuator {actuator}: no signal is mapped for input order {order}")]
    UnmappedOrder { actuator: Identifier, order: Identifier },
    #[error("actuator {actuator}: mapped signal {signal} is not an output signal")]
    ForeignSignal { actuator: Identifier, signal: Identifier },
    #[error("actuator {actuator}: signal map mentions {order}, which is not an input order")]
    ForeignOrder { actuator: Identifier, order: Identifier },
    #[error("initial state {state} is not a declared state")]
    InitialStateUnknown { state: Identifier },
    #[error("transition ({state}, {signal}) -> {target} mentions an undeclared state or signal")]
    ForeignTransition {
        state: Identifier,
        signal: Identifier,
        target: Identifier,
    },
    #[error("device {device}: current state {state} is not a behaviour state")]
    CurrentStateUnknown { device: Identifier, state: Identifier },
    #[error("rule pattern range [{lo} .. {hi}] is inverted")]
    InvertedRange { lo: i64, hi: i64 },
}
