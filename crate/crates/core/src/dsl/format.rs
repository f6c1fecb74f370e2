//! Canonical printer for system models.
//!
//! Sections come out in the fixed grammar order, entries sorted by
//! identifier, rule blocks indented by two spaces. Defaults (the `MQTT`
//! protocol singleton and the two-state device behaviour) are left
//! implicit, so parsing the output reconstructs an equal model.

use std::collections::BTreeMap;
use std::fmt::Write;

use super::defaults;
use crate::ident::Identifier;
use crate::model::{DeviceBehaviour, SystemModel, ValuePattern};
use crate::rel::Relation;

/// Prints the canonical form of a model. `parse_system(format_system(m))`
/// reconstructs a model equal to `m` for every model expressible in the
/// language; fields without surface syntax (sensor ranges, actuator order
/// sets) normalize to their defaults.
pub fn format_system(sys: &SystemModel) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "IOTSystem {}", sys.name);

    let mut by_category: BTreeMap<&Identifier, Vec<&Identifier>> = BTreeMap::new();
    for sensor in sys.phys.sensors.values() {
        by_category.entry(&sensor.category).or_default().push(&sensor.id);
    }
    write_component_lines(&mut out, &by_category);

    by_category = BTreeMap::new();
    for actuator in sys.phys.actuators.values() {
        by_category
            .entry(&actuator.category)
            .or_default()
            .push(&actuator.id);
    }
    write_component_lines(&mut out, &by_category);

    by_category = BTreeMap::new();
    for device in sys.phys.devices.values() {
        by_category.entry(&device.category).or_default().push(&device.id);
    }
    write_component_lines(&mut out, &by_category);

    write_id_line(&mut out, "CONTROLLER", sys.soft.controllers.keys());
    write_id_line(&mut out, "SERVICE", sys.soft.services.keys());

    write_relation_line(&mut out, "DeviceSensor", &sys.phys.device_sensor_binding);
    write_relation_line(&mut out, "ActuatorDevice", &sys.phys.actuator_device_binding);
    write_relation_line(&mut out, "SCBinding", &sys.data_inputs);
    write_relation_line(&mut out, "CABinding", &sys.order_outputs);
    write_relation_line(&mut out, "SDDependency", &sys.control_dependency);
    write_relation_line(&mut out, "Control-Service", &sys.soft.service_dependency);

    for service in sys.soft.services.values() {
        if service.rules.is_empty() {
            continue;
        }
        let _ = writeln!(out, "{} : {{", service.id);
        for rule in &service.rules {
            let pattern = match &rule.pattern {
                ValuePattern::Literal(value) => value.to_string(),
                ValuePattern::Range { lo, hi } => format!("[{lo} .. {hi}]"),
                ValuePattern::Wildcard => "n".to_string(),
            };
            let _ = writeln!(
                out,
                "  {}({pattern}) --> Order({})",
                rule.value_kind, rule.order
            );
        }
        out.push_str("}\n");
    }

    let default_protocols = defaults::protocols();
    let mut protocol_lines: BTreeMap<&Identifier, String> = BTreeMap::new();
    for sensor in sys.phys.sensors.values() {
        if sensor.protocols != default_protocols {
            protocol_lines.insert(&sensor.id, id_list(sensor.protocols.iter()));
        }
    }
    for actuator in sys.phys.actuators.values() {
        if actuator.protocols != default_protocols {
            protocol_lines.insert(&actuator.id, id_list(actuator.protocols.iter()));
        }
    }
    for controller in sys.soft.controllers.values() {
        if controller.protocols != default_protocols {
            protocol_lines.insert(&controller.id, id_list(controller.protocols.iter()));
        }
    }
    for (element, protocols) in protocol_lines {
        let _ = writeln!(out, "PROTOCOLS {element} : {protocols}");
    }

    let default_behaviour = DeviceBehaviour::on_off();
    for device in sys.phys.devices.values() {
        if device.behaviour == default_behaviour {
            continue;
        }
        let _ = write!(out, "BEHAVIOUR {} : {}", device.id, device.behaviour.initial);
        for ((state, signal), target) in &device.behaviour.delta {
            let _ = write!(out, " ; ({state}, {signal}) -> {target}");
        }
        out.push('\n');
    }

    out
}

fn id_list<'a>(ids: impl Iterator<Item = &'a Identifier>) -> String {
    ids.map(Identifier::as_str).collect::<Vec<_>>().join(", ")
}

fn write_component_lines(out: &mut String, by_category: &BTreeMap<&Identifier, Vec<&Identifier>>) {
    for (category, ids) in by_category {
        let mut ids = ids.clone();
        ids.sort();
        let _ = writeln!(out, "{category} : {}", id_list(ids.into_iter()));
    }
}

fn write_id_line<'a>(out: &mut String, label: &str, ids: impl Iterator<Item = &'a Identifier>) {
    let listed = id_list(ids);
    if !listed.is_empty() {
        let _ = writeln!(out, "{label} : {listed}");
    }
}

fn write_relation_line(out: &mut String, label: &str, relation: &Relation) {
    if relation.is_empty() {
        return;
    }
    let pairs = relation
        .iter()
        .map(|(left, right)| format!("({left}, {right})"))
        .collect::<Vec<_>>()
        .join(", ");
    let _ = writeln!(out, "{label} : {pairs}");
}

#[cfg(test)]
mod tests {
    use crate::dsl::{format_system, parse_system};

    const EXAMPLE_APP: &str = include_str!("../../tests/fixtures/ExampleApp.iot");
    const HOME_AUTOMATION: &str = include_str!("../../tests/fixtures/HomeAutomation.iot");

    #[test]
    fn empty_model_formats_to_the_bare_header() {
        let sys = parse_system("IOTSystem Empty").unwrap();
        assert_eq!(format_system(&sys), "IOTSystem Empty\n");
    }

    #[test]
    fn declaration_order_is_canonicalized() {
        let reversed = "IOTSystem M\nLIGHTSENSOR : b\nLIGHTSENSOR : a\n";
        let sys = parse_system(reversed).unwrap();
        assert!(format_system(&sys).contains("LIGHTSENSOR : a, b\n"));
    }

    #[test]
    fn round_trip_reconstructs_the_model() {
        for text in [EXAMPLE_APP, HOME_AUTOMATION] {
            let first = parse_system(text).unwrap();
            let second = parse_system(&format_system(&first)).unwrap();
            assert_eq!(first, second);
        }
    }

    #[test]
    fn formatting_is_a_fixed_point() {
        let canonical = format_system(&parse_system(EXAMPLE_APP).unwrap());
        let again = format_system(&parse_system(&canonical).unwrap());
        assert_eq!(canonical, again);
    }

    #[test]
    fn non_default_protocols_and_behaviours_are_printed() {
        let sys = parse_system(HOME_AUTOMATION).unwrap();
        let text = format_system(&sys);
        assert!(text.contains("PROTOCOLS ms1 : MQTT, zigbee\n"));
        assert!(text.contains(
            "BEHAVIOUR door1 : closed ; (closed, open_signal) -> open ; (open, close_signal) -> closed\n"
        ));
        assert!(text.contains("MotionValue([1 .. 100]) --> Order(open)\n"));
    }
}
