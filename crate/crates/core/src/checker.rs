//! The invariant consistency rules, checked as pure predicates over a
//! [`SystemModel`], plus the composite verdicts built from them.
//!
//! Each rule reports its violations as [`Diagnostic`] values; an empty list
//! means the rule holds. `check_all` combines the seven rules into a
//! [`CheckReport`] with the two composite verdicts: architectural
//! consistency (the hardware is connected at all) and consistency of
//! functioning (all rules hold).

use std::collections::BTreeSet;

use thiserror::Error;

use crate::ident::Identifier;
use crate::model::{Diagnostic, RuleCode, Severity, SystemModel};
use crate::rel::{self, Relation};

/// Knobs for the checker.
///
/// `strict_functional` additionally warns when a sensor reaches more than
/// one actuator along either leg of the binding diagram; the relations stay
/// legal (a sensor may feed several controllers), the warnings only surface
/// the ambiguity. `treat_warnings_as_errors` makes warnings count against
/// the verdicts.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CheckerConfig {
    pub strict_functional: bool,
    pub treat_warnings_as_errors: bool,
}

/// Outcome of running every rule: the collected diagnostics and the two
/// composite verdicts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub diagnostics: Vec<Diagnostic>,
    pub architecture_consistent: bool,
    pub functioning_consistent: bool,
}

impl CheckReport {
    /// Line-oriented text form, one `RULECODE subjects : message` per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for diag in &self.diagnostics {
            out.push_str(&diag.to_line());
            out.push('\n');
        }
        out
    }

    /// Structured form: one JSON record per line with fields
    /// `ruleCode`, `subjects`, `message`, `severity`.
    pub fn to_structured(&self) -> String {
        let mut out = String::new();
        for diag in &self.diagnostics {
            out.push_str(&serde_json::to_string(diag).expect("diagnostics serialize"));
            out.push('\n');
        }
        out
    }
}

fn ident(s: &str) -> Identifier {
    Identifier::new(s).expect("static identifier")
}

/// Connection of physical components: both hardware binding relations must
/// be non-empty. Individually unbound devices are surfaced as warnings.
pub fn check_connected_hw(sys: &SystemModel) -> Vec<Diagnostic> {
    let mut diags = Vec::new();
    if sys.phys.device_sensor_binding.is_empty() {
        diags.push(Diagnostic::error(
            RuleCode::ConnectedHw,
            vec![ident("DeviceSensor")],
            "DeviceSensor is empty: no device is bound to a sensor",
        ));
    }
    if sys.phys.actuator_device_binding.is_empty() {
        diags.push(Diagnostic::error(
            RuleCode::ConnectedHw,
            vec![ident("ActuatorDevice")],
            "ActuatorDevice is empty: no actuator is bound to a device",
        ));
    }
    let sensed = rel::dom(&sys.phys.device_sensor_binding);
    let actuated = rel::ran(&sys.phys.actuator_device_binding);
    for device in sys.phys.devices.keys() {
        if !sensed.contains(device) && !actuated.contains(device) {
            diags.push(Diagnostic::warning(
                RuleCode::ConnectedHw,
                vec![device.clone()],
                format!("device {device} is bound to no sensor and no actuator"),
            ));
        }
    }
    diags.sort();
    diags
}

/// Well-structuring of controllers: every controller reads at least one
/// sensor and drives at least one actuator.
pub fn check_well_struct_ctrl(sys: &SystemModel) -> Vec<Diagnostic> {
    let mut diags = Vec::new();
    for controller in sys.soft.controllers.keys() {
        let reads = rel::preimage(&sys.data_inputs, controller);
        let drives = rel::image(&sys.order_outputs, controller);
        let message = match (reads.is_empty(), drives.is_empty()) {
            (true, true) => format!("controller {controller} reads no sensor and drives no actuator"),
            (true, false) => format!("controller {controller} reads no sensor"),
            (false, true) => format!("controller {controller} drives no actuator"),
            (false, false) => continue,
        };
        diags.push(Diagnostic::error(
            RuleCode::WellStructCtrl,
            vec![controller.clone()],
            message,
        ));
    }
    diags.sort();
    diags
}

/// Weak consistency of interacting components: the sensors feeding
/// controllers and the actuators receiving orders must be declared in the
/// physical part. Holds by construction for built models; checked here so
/// hand-assembled models are covered too.
pub fn check_weak_consistent_cpnts(sys: &SystemModel) -> Vec<Diagnostic> {
    let mut diags = Vec::new();
    for sensor in rel::dom(&sys.data_inputs) {
        if !sys.phys.sensors.contains_key(&sensor) {
            diags.push(Diagnostic::error(
                RuleCode::WeakConsistent,
                vec![sensor.clone()],
                format!("SCBinding domain element {sensor} is not a declared sensor"),
            ));
        }
    }
    for actuator in rel::ran(&sys.order_outputs) {
        if !sys.phys.actuators.contains_key(&actuator) {
            diags.push(Diagnostic::error(
                RuleCode::WeakConsistent,
                vec![actuator.clone()],
                format!("CABinding range element {actuator} is not a declared actuator"),
            ));
        }
    }
    diags.sort();
    diags
}

fn controller_leg(sys: &SystemModel) -> Relation {
    rel::compose(&sys.data_inputs, &sys.order_outputs)
}

fn dependency_leg(sys: &SystemModel) -> Relation {
    rel::compose(
        &sys.control_dependency,
        &rel::inverse(&sys.phys.actuator_device_binding),
    )
}

fn path_not_justified(sensor: &Identifier, actuator: &Identifier) -> Diagnostic {
    Diagnostic::error(
        RuleCode::ConsistBindings,
        vec![sensor.clone(), actuator.clone()],
        format!("controller path {sensor} -> {actuator} is not justified by any control dependency"),
    )
}

fn dependency_not_realized(sensor: &Identifier, actuator: &Identifier) -> Diagnostic {
    Diagnostic::error(
        RuleCode::ConsistBindings,
        vec![sensor.clone(), actuator.clone()],
        format!("control dependency {sensor} -> {actuator} is not realized by any controller path"),
    )
}

/// Consistency of bindings: the sensor-to-actuator relation composed via
/// controllers must equal the one composed via controlled devices (the two
/// legs of the binding diagram).
pub fn check_consist_bindings(sys: &SystemModel, cfg: CheckerConfig) -> Vec<Diagnostic> {
    let left = controller_leg(sys);
    let right = dependency_leg(sys);
    let mut diags = Vec::new();
    for (sensor, actuator) in left.difference(&right) {
        diags.push(path_not_justified(sensor, actuator));
    }
    for (sensor, actuator) in right.difference(&left) {
        diags.push(dependency_not_realized(sensor, actuator));
    }
    if cfg.strict_functional {
        let sensors: BTreeSet<_> = rel::dom(&left).into_iter().chain(rel::dom(&right)).collect();
        for sensor in sensors {
            let mut reached = BTreeSet::new();
            let via_controllers = rel::image(&left, &sensor);
            let via_devices = rel::image(&right, &sensor);
            if via_controllers.len() > 1 {
                reached.extend(via_controllers);
            }
            if via_devices.len() > 1 {
                reached.extend(via_devices);
            }
            if !reached.is_empty() {
                let listed = reached
                    .iter()
                    .map(Identifier::as_str)
                    .collect::<Vec<_>>()
                    .join(", ");
                let mut subjects = vec![sensor.clone()];
                subjects.extend(reached.iter().cloned());
                diags.push(Diagnostic::warning(
                    RuleCode::ConsistBindings,
                    subjects,
                    format!("sensor {sensor} reaches multiple actuators: {listed}"),
                ));
            }
        }
    }
    diags.sort();
    diags
}

/// Consistency of control dependencies: a sensor impacting a device while
/// feeding a controller obliges that controller to drive every actuator
/// bound to the device.
pub fn check_ctrl_dependency(sys: &SystemModel) -> Vec<Diagnostic> {
    let mut diags = Vec::new();
    for (sensor, device) in &sys.control_dependency {
        for controller in rel::image(&sys.data_inputs, sensor) {
            for actuator in rel::preimage(&sys.phys.actuator_device_binding, device) {
                if !sys
                    .order_outputs
                    .contains(&(controller.clone(), actuator.clone()))
                {
                    diags.push(Diagnostic::error(
                        RuleCode::CtrlDependency,
                        vec![
                            sensor.clone(),
                            device.clone(),
                            controller.clone(),
                            actuator.clone(),
                        ],
                        format!(
                            "control dependency {sensor} -> {device} requires order link {controller} -> {actuator} in CABinding"
                        ),
                    ));
                }
            }
        }
    }
    diags.sort();
    diags
}

/// Well-connection of actuators and sensors: a controller that collects
/// sensor input must send orders somewhere, otherwise the input is unused.
pub fn check_sensor_to_actuator(sys: &SystemModel) -> Vec<Diagnostic> {
    let receiving = rel::ran(&sys.data_inputs);
    let sending = rel::dom(&sys.order_outputs);
    let mut diags = Vec::new();
    for controller in receiving.difference(&sending) {
        diags.push(Diagnostic::error(
            RuleCode::SensorToActuator,
            vec![controller.clone()],
            format!("controller {controller} collects sensor input but sends no orders"),
        ));
    }
    diags.sort();
    diags
}

fn protocol_set(protocols: &BTreeSet<Identifier>) -> String {
    let listed = protocols
        .iter()
        .map(Identifier::as_str)
        .collect::<Vec<_>>()
        .join(", ");
    format!("{{{listed}}}")
}

/// Compatibility of communication protocols along every sensor-controller
/// and controller-actuator link.
pub fn check_comp_comm(sys: &SystemModel) -> Vec<Diagnostic> {
    let mut diags = Vec::new();
    for (sensor, controller) in &sys.data_inputs {
        let (Some(s), Some(c)) = (sys.sensor(sensor), sys.controller(controller)) else {
            continue; // dangling endpoints are weak-consistency faults
        };
        if s.protocols.is_disjoint(&c.protocols) {
            diags.push(Diagnostic::error(
                RuleCode::CompComm,
                vec![sensor.clone(), controller.clone()],
                format!(
                    "sensor {sensor} and controller {controller} share no protocol ({} vs {})",
                    protocol_set(&s.protocols),
                    protocol_set(&c.protocols)
                ),
            ));
        }
    }
    for (controller, actuator) in &sys.order_outputs {
        let (Some(c), Some(a)) = (sys.controller(controller), sys.actuator(actuator)) else {
            continue;
        };
        if c.protocols.is_disjoint(&a.protocols) {
            diags.push(Diagnostic::error(
                RuleCode::CompComm,
                vec![controller.clone(), actuator.clone()],
                format!(
                    "controller {controller} and actuator {actuator} share no protocol ({} vs {})",
                    protocol_set(&c.protocols),
                    protocol_set(&a.protocols)
                ),
            ));
        }
    }
    diags.sort();
    diags
}

/// Runs every rule and derives the two composite verdicts.
///
/// Warnings do not affect the verdicts unless
/// `cfg.treat_warnings_as_errors` is set.
pub fn check_all(sys: &SystemModel, cfg: CheckerConfig) -> CheckReport {
    let mut diagnostics = Vec::new();
    diagnostics.extend(check_connected_hw(sys));
    diagnostics.extend(check_well_struct_ctrl(sys));
    diagnostics.extend(check_weak_consistent_cpnts(sys));
    diagnostics.extend(check_consist_bindings(sys, cfg));
    diagnostics.extend(check_ctrl_dependency(sys));
    diagnostics.extend(check_sensor_to_actuator(sys));
    diagnostics.extend(check_comp_comm(sys));
    diagnostics.sort();

    let counts = |d: &Diagnostic| d.severity == Severity::Error || cfg.treat_warnings_as_errors;
    let architecture_consistent = !diagnostics
        .iter()
        .any(|d| d.rule_code == RuleCode::ConnectedHw && counts(d));
    let functioning_consistent = architecture_consistent
        && !diagnostics
            .iter()
            .any(|d| d.rule_code != RuleCode::ConnectedHw && counts(d));
    CheckReport {
        diagnostics,
        architecture_consistent,
        functioning_consistent,
    }
}

/// Hard cap on model size accepted by [`oracle_consist_bindings`].
pub const ORACLE_COMPONENT_LIMIT: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("brute-force oracle invoked on a model with {size} components (limit {limit})")]
pub struct OracleLimitExceeded {
    pub size: usize,
    pub limit: usize,
}

/// Brute-force witness search deciding the binding diagram pair by pair.
///
/// For every sensor-actuator pair it enumerates all intermediate
/// controllers and devices directly, without relational composition, and
/// reports the same asymmetries as [`check_consist_bindings`]. This exists
/// as an independent test oracle and rejects models beyond desk scale.
pub fn oracle_consist_bindings(sys: &SystemModel) -> Result<Vec<Diagnostic>, OracleLimitExceeded> {
    let size = sys.phys.sensors.len()
        + sys.phys.actuators.len()
        + sys.phys.devices.len()
        + sys.soft.controllers.len();
    if size > ORACLE_COMPONENT_LIMIT {
        return Err(OracleLimitExceeded {
            size,
            limit: ORACLE_COMPONENT_LIMIT,
        });
    }
    let mut diags = Vec::new();
    for sensor in sys.phys.sensors.keys() {
        for actuator in sys.phys.actuators.keys() {
            let via_controller = sys.soft.controllers.keys().any(|controller| {
                sys.data_inputs
                    .contains(&(sensor.clone(), controller.clone()))
                    && sys
                        .order_outputs
                        .contains(&(controller.clone(), actuator.clone()))
            });
            let via_device = sys.phys.devices.keys().any(|device| {
                sys.control_dependency
                    .contains(&(sensor.clone(), device.clone()))
                    && sys
                        .phys
                        .actuator_device_binding
                        .contains(&(actuator.clone(), device.clone()))
            });
            match (via_controller, via_device) {
                (true, false) => diags.push(path_not_justified(sensor, actuator)),
                (false, true) => diags.push(dependency_not_realized(sensor, actuator)),
                _ => {}
            }
        }
    }
    diags.sort();
    Ok(diags)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_system;
    use crate::model::SystemModel;
    use crate::rel::Relation;

    const EXAMPLE_APP: &str = include_str!("../tests/fixtures/ExampleApp.iot");
    const REPAIRED_APP: &str = include_str!("../tests/fixtures/RepairedApp.iot");

    fn id(s: &str) -> Identifier {
        Identifier::new(s).unwrap()
    }

    fn pair(a: &str, b: &str) -> (Identifier, Identifier) {
        (id(a), id(b))
    }

    fn example_app() -> SystemModel {
        parse_system(EXAMPLE_APP).unwrap()
    }

    fn empty_model() -> SystemModel {
        parse_system("IOTSystem Empty").unwrap()
    }

    fn subjects_of(diags: &[Diagnostic]) -> Vec<Vec<&str>> {
        diags
            .iter()
            .map(|d| d.subjects.iter().map(Identifier::as_str).collect())
            .collect()
    }

    #[test]
    fn connected_hw_holds_on_example_app() {
        assert_eq!(check_connected_hw(&example_app()), vec![]);
    }

    #[test]
    fn connected_hw_reports_each_empty_binding() {
        let mut sys = example_app();
        sys.phys.device_sensor_binding = Relation::new();
        let diags = check_connected_hw(&sys);
        assert_eq!(subjects_of(&diags), vec![vec!["DeviceSensor"]]);
        assert_eq!(diags[0].severity, Severity::Error);

        let empty = empty_model();
        let diags = check_connected_hw(&empty);
        assert_eq!(diags.len(), 2);
        assert!(diags.iter().all(|d| d.rule_code == RuleCode::ConnectedHw));
    }

    #[test]
    fn connected_hw_warns_on_individually_unbound_devices() {
        let text = "IOTSystem M\nLIGHTSENSOR : s\nLIGHTACTUATOR : a\nLIGHT : d, spare\n\
                    DeviceSensor : (d, s)\nActuatorDevice : (a, d)\n";
        let sys = parse_system(text).unwrap();
        let diags = check_connected_hw(&sys);
        assert_eq!(subjects_of(&diags), vec![vec!["spare"]]);
        assert_eq!(diags[0].severity, Severity::Warning);
        // Warnings do not flip the verdicts by default.
        assert!(check_all(&sys, CheckerConfig::default()).architecture_consistent);
        let strict = CheckerConfig {
            treat_warnings_as_errors: true,
            ..CheckerConfig::default()
        };
        assert!(!check_all(&sys, strict).architecture_consistent);
    }

    #[test]
    fn well_struct_ctrl_flags_ctl2_until_repaired() {
        let diags = check_well_struct_ctrl(&example_app());
        assert_eq!(subjects_of(&diags), vec![vec!["ctl2"]]);
        assert!(diags[0].message.contains("drives no actuator"));

        let mut repaired = example_app();
        repaired.order_outputs.insert(pair("ctl2", "la"));
        assert_eq!(check_well_struct_ctrl(&repaired), vec![]);

        assert_eq!(check_well_struct_ctrl(&empty_model()), vec![]);
    }

    #[test]
    fn weak_consistency_holds_for_built_models_and_catches_ghosts() {
        assert_eq!(check_weak_consistent_cpnts(&example_app()), vec![]);

        let mut ghost = example_app();
        ghost.data_inputs.insert(pair("ghost", "ctl1"));
        let diags = check_weak_consistent_cpnts(&ghost);
        assert_eq!(subjects_of(&diags), vec![vec!["ghost"]]);

        assert_eq!(check_weak_consistent_cpnts(&empty_model()), vec![]);
    }

    #[test]
    fn consist_bindings_reports_both_asymmetric_pairs() {
        let diags = check_consist_bindings(&example_app(), CheckerConfig::default());
        assert_eq!(subjects_of(&diags), vec![vec!["ls1", "la"], vec!["ls2", "la"]]);
        assert!(diags[0].message.contains("not justified"));
        assert!(diags[1].message.contains("not realized"));
    }

    #[test]
    fn consist_bindings_accepts_the_repaired_relations() {
        let mut repaired = example_app();
        repaired.data_inputs = [pair("ls2", "ctl2")].into_iter().collect();
        repaired.order_outputs = [pair("ctl2", "la")].into_iter().collect();
        assert_eq!(
            check_consist_bindings(&repaired, CheckerConfig::default()),
            vec![]
        );

        assert_eq!(
            check_consist_bindings(&empty_model(), CheckerConfig::default()),
            vec![]
        );
    }

    #[test]
    fn strict_functional_warns_on_one_to_many_sensors() {
        let text = "IOTSystem M\nLIGHTSENSOR : s\nLIGHTACTUATOR : a1, a2\nLIGHT : d\n\
                    CONTROLLER : c\nSERVICE : sv\n\
                    DeviceSensor : (d, s)\nActuatorDevice : (a1, d), (a2, d)\n\
                    SCBinding : (s, c)\nCABinding : (c, a1), (c, a2)\nSDDependency : (s, d)\n\
                    Control-Service : (c, sv)\n";
        let sys = parse_system(text).unwrap();
        assert_eq!(check_consist_bindings(&sys, CheckerConfig::default()), vec![]);

        let strict = CheckerConfig {
            strict_functional: true,
            ..CheckerConfig::default()
        };
        let diags = check_consist_bindings(&sys, strict);
        assert_eq!(subjects_of(&diags), vec![vec!["s", "a1", "a2"]]);
        assert_eq!(diags[0].severity, Severity::Warning);
        // Still consistent unless warnings are promoted.
        assert!(check_all(&sys, strict).functioning_consistent);
    }

    #[test]
    fn ctrl_dependency_names_the_full_witness_chain() {
        let diags = check_ctrl_dependency(&example_app());
        assert_eq!(subjects_of(&diags), vec![vec!["ls2", "lvrl1", "ctl2", "la"]]);

        let mut repaired = example_app();
        repaired.order_outputs.insert(pair("ctl2", "la"));
        assert_eq!(check_ctrl_dependency(&repaired), vec![]);

        let mut no_deps = example_app();
        no_deps.control_dependency = Relation::new();
        assert_eq!(check_ctrl_dependency(&no_deps), vec![]);
    }

    #[test]
    fn sensor_to_actuator_flags_controllers_without_outputs() {
        let diags = check_sensor_to_actuator(&example_app());
        assert_eq!(subjects_of(&diags), vec![vec!["ctl2"]]);

        let mut repaired = example_app();
        repaired.order_outputs.insert(pair("ctl2", "la"));
        assert_eq!(check_sensor_to_actuator(&repaired), vec![]);

        let mut no_inputs = example_app();
        no_inputs.data_inputs = Relation::new();
        assert_eq!(check_sensor_to_actuator(&no_inputs), vec![]);
    }

    #[test]
    fn comp_comm_requires_shared_protocols() {
        assert_eq!(check_comp_comm(&example_app()), vec![]);

        let mut disjoint = example_app();
        disjoint.phys.sensors.get_mut(&id("ls1")).unwrap().protocols =
            [id("zigbee")].into_iter().collect();
        let diags = check_comp_comm(&disjoint);
        assert_eq!(subjects_of(&diags), vec![vec!["ls1", "ctl1"]]);
        assert!(diags[0].message.contains("{zigbee}"));
        assert!(diags[0].message.contains("{MQTT}"));

        let mut shared = example_app();
        shared.soft.controllers.get_mut(&id("ctl1")).unwrap().protocols =
            [id("MQTT"), id("zigbee")].into_iter().collect();
        shared.phys.actuators.get_mut(&id("la")).unwrap().protocols =
            [id("zigbee")].into_iter().collect();
        assert_eq!(check_comp_comm(&shared), vec![]);
    }

    #[test]
    fn check_all_on_example_app_matches_the_expected_report() {
        let report = check_all(&example_app(), CheckerConfig::default());
        assert!(report.architecture_consistent);
        assert!(!report.functioning_consistent);
        let expected: Vec<(RuleCode, Vec<&str>)> = vec![
            (RuleCode::WellStructCtrl, vec!["ctl2"]),
            (RuleCode::ConsistBindings, vec!["ls1", "la"]),
            (RuleCode::ConsistBindings, vec!["ls2", "la"]),
            (RuleCode::CtrlDependency, vec!["ls2", "lvrl1", "ctl2", "la"]),
            (RuleCode::SensorToActuator, vec!["ctl2"]),
        ];
        let actual: Vec<(RuleCode, Vec<&str>)> = report
            .diagnostics
            .iter()
            .map(|d| {
                (
                    d.rule_code,
                    d.subjects.iter().map(Identifier::as_str).collect(),
                )
            })
            .collect();
        assert_eq!(actual, expected);
    }

    #[test]
    fn check_all_passes_on_the_repaired_app() {
        let report = check_all(
            &parse_system(REPAIRED_APP).unwrap(),
            CheckerConfig::default(),
        );
        assert!(report.architecture_consistent);
        assert!(report.functioning_consistent);
        assert_eq!(report.diagnostics, vec![]);
    }

    #[test]
    fn check_all_fails_architecture_on_the_empty_model() {
        let report = check_all(&empty_model(), CheckerConfig::default());
        assert!(!report.architecture_consistent);
        assert!(!report.functioning_consistent);
    }

    #[test]
    fn report_renders_text_and_structured_forms() {
        let report = check_all(&example_app(), CheckerConfig::default());
        let text = report.to_text();
        assert!(text.contains("CTRL_DEPENDENCY ls2,lvrl1,ctl2,la : "));
        let structured = report.to_structured();
        let first = structured.lines().next().unwrap();
        let record: serde_json::Value = serde_json::from_str(first).unwrap();
        assert_eq!(record["ruleCode"], "WELL_STRUCT_CTRL");
        assert_eq!(record["subjects"][0], "ctl2");
        assert_eq!(record["severity"], "Error");
        assert!(record["message"].is_string());
    }

    #[test]
    fn oracle_matches_the_checker_on_example_app() {
        let sys = example_app();
        assert_eq!(
            oracle_consist_bindings(&sys).unwrap(),
            check_consist_bindings(&sys, CheckerConfig::default())
        );
        assert_eq!(oracle_consist_bindings(&empty_model()).unwrap(), vec![]);
    }

    #[test]
    fn oracle_rejects_models_beyond_the_size_guard() {
        let mut text = String::from("IOTSystem Big\nLIGHTSENSOR : ");
        let names: Vec<String> = (0..25).map(|i| format!("s{i}")).collect();
        text.push_str(&names.join(", "));
        text.push('\n');
        let sys = parse_system(&text).unwrap();
        let err = oracle_consist_bindings(&sys).unwrap_err();
        assert_eq!(err.size, 25);
        assert_eq!(err.limit, ORACLE_COMPONENT_LIMIT);
    }
}
