//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

mod common;

use std::panic::{catch_unwind, resume_unwind, UnwindSafe};

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use common::*;
use iotarch::checker::{
    check_all, check_comp_comm, check_connected_hw, check_consist_bindings, check_ctrl_dependency,
    check_sensor_to_actuator, check_weak_consistent_cpnts, check_well_struct_ctrl,
    oracle_consist_bindings, CheckerConfig,
};
use iotarch::dsl::{format_system, parse_system};
use iotarch::eventb::emit_contexts;
use iotarch::model::{Diagnostic, RuleCode, Severity, SystemModel};
use iotarch::rel::Relation;
use iotarch::semantics::{audit_order_integrity, parse_scenario, run_scenario};
use iotarch::Identifier;

fn criterion(name: &str, body: impl FnOnce() + UnwindSafe) {
    let outcome = catch_unwind(body);
    match &outcome {
        Ok(()) => println!("acceptance {name}: PASS"),
        Err(_) => println!("acceptance {name}: FAIL"),
    }
    if let Err(cause) = outcome {
        resume_unwind(cause);
    }
}

fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    })
}

fn shape(diags: &[Diagnostic]) -> Vec<(RuleCode, Vec<&str>)> {
    diags
        .iter()
        .map(|d| {
            (
                d.rule_code,
                d.subjects.iter().map(Identifier::as_str).collect(),
            )
        })
        .collect()
}

/// The repair from criterion 2: ctl2 drives la via srv1, and ls1 gets a
/// matching control-dependency chain instead of losing its input edge.
fn repaired_by_edits() -> SystemModel {
    let mut sys = example_app();
    sys.order_outputs.insert(pair("ctl2", "la"));
    sys.soft.service_dependency.insert(pair("ctl2", "srv1"));
    sys.control_dependency.insert(pair("ls1", "lvrl1"));
    sys
}

#[test]
fn criterion_1_example_app_regression() {
    criterion("1 ExampleApp regression", || {
        let report = check_all(&example_app(), CheckerConfig::default());
        assert!(report.architecture_consistent, "architecture must hold");
        assert!(!report.functioning_consistent, "functioning must fail");
        assert_eq!(
            shape(&report.diagnostics),
            vec![
                (RuleCode::WellStructCtrl, vec!["ctl2"]),
                (RuleCode::ConsistBindings, vec!["ls1", "la"]),
                (RuleCode::ConsistBindings, vec!["ls2", "la"]),
                (RuleCode::CtrlDependency, vec!["ls2", "lvrl1", "ctl2", "la"]),
                (RuleCode::SensorToActuator, vec!["ctl2"]),
            ],
            "exactly the expected diagnostic multiset, zero false positives"
        );
    });
}

#[test]
fn criterion_2_repair_closure() {
    criterion("2 repair closure", || {
        let report = check_all(&repaired_by_edits(), CheckerConfig::default());
        assert_eq!(report.diagnostics, vec![]);
        assert!(report.architecture_consistent);
        assert!(report.functioning_consistent);

        // The RepairedApp fixture is that same repair written out.
        let mut edited = repaired_by_edits();
        edited.name = id("RepairedApp");
        assert_eq!(edited, repaired_app());
    });
}

#[test]
fn criterion_3_oracle_equivalence() {
    criterion("3 oracle equivalence (500 fuzz models)", || {
        runner(500)
            .run(&arb_model(), |sys| {
                let expected = oracle_consist_bindings(&sys).expect("within size guard");
                let actual = check_consist_bindings(&sys, CheckerConfig::default());
                prop_assert_eq!(actual, expected);
                Ok(())
            })
            .unwrap();
    });
}

#[test]
fn criterion_4_rule_unit_suite() {
    criterion("4 rule unit suite", || {
        let cfg = CheckerConfig::default();
        let app = example_app();
        let empty = parse_system(EMPTY_APP).unwrap();
        let mut repaired_outputs = example_app();
        repaired_outputs.order_outputs.insert(pair("ctl2", "la"));

        // Connection of hardware components.
        assert_eq!(check_connected_hw(&app), vec![]);
        let mut no_ds = example_app();
        no_ds.phys.device_sensor_binding = Relation::new();
        assert_eq!(
            shape(&check_connected_hw(&no_ds)),
            vec![(RuleCode::ConnectedHw, vec!["DeviceSensor"])]
        );
        assert_eq!(check_connected_hw(&empty).len(), 2);

        // Well-structuring of controllers.
        assert_eq!(
            shape(&check_well_struct_ctrl(&app)),
            vec![(RuleCode::WellStructCtrl, vec!["ctl2"])]
        );
        assert_eq!(check_well_struct_ctrl(&repaired_outputs), vec![]);
        assert_eq!(check_well_struct_ctrl(&empty), vec![]);

        // Weak consistency of interacting components.
        assert_eq!(check_weak_consistent_cpnts(&app), vec![]);
        let mut ghost = example_app();
        ghost.data_inputs.insert(pair("ghost", "ctl1"));
        assert_eq!(
            shape(&check_weak_consistent_cpnts(&ghost)),
            vec![(RuleCode::WeakConsistent, vec!["ghost"])]
        );
        assert_eq!(check_weak_consistent_cpnts(&empty), vec![]);

        // Consistency of bindings.
        assert_eq!(
            shape(&check_consist_bindings(&app, cfg)),
            vec![
                (RuleCode::ConsistBindings, vec!["ls1", "la"]),
                (RuleCode::ConsistBindings, vec!["ls2", "la"]),
            ]
        );
        let mut rebound = example_app();
        rebound.data_inputs = [pair("ls2", "ctl2")].into_iter().collect();
        rebound.order_outputs = [pair("ctl2", "la")].into_iter().collect();
        assert_eq!(check_consist_bindings(&rebound, cfg), vec![]);
        assert_eq!(check_consist_bindings(&empty, cfg), vec![]);

        // Consistency of control dependencies.
        assert_eq!(
            shape(&check_ctrl_dependency(&app)),
            vec![(RuleCode::CtrlDependency, vec!["ls2", "lvrl1", "ctl2", "la"])]
        );
        assert_eq!(check_ctrl_dependency(&repaired_outputs), vec![]);
        let mut no_deps = example_app();
        no_deps.control_dependency = Relation::new();
        assert_eq!(check_ctrl_dependency(&no_deps), vec![]);

        // Well-connection of sensors to actuators.
        assert_eq!(
            shape(&check_sensor_to_actuator(&app)),
            vec![(RuleCode::SensorToActuator, vec!["ctl2"])]
        );
        assert_eq!(check_sensor_to_actuator(&repaired_outputs), vec![]);
        let mut no_inputs = example_app();
        no_inputs.data_inputs = Relation::new();
        assert_eq!(check_sensor_to_actuator(&no_inputs), vec![]);

        // Protocol compatibility.
        assert_eq!(check_comp_comm(&app), vec![]);
        let mut disjoint = example_app();
        disjoint
            .phys
            .sensors
            .get_mut(&id("ls1"))
            .unwrap()
            .protocols = [id("zigbee")].into_iter().collect();
        assert_eq!(
            shape(&check_comp_comm(&disjoint)),
            vec![(RuleCode::CompComm, vec!["ls1", "ctl1"])]
        );
        let mut shared = example_app();
        shared
            .soft
            .controllers
            .get_mut(&id("ctl1"))
            .unwrap()
            .protocols = [id("MQTT"), id("zigbee")].into_iter().collect();
        shared
            .phys
            .actuators
            .get_mut(&id("la"))
            .unwrap()
            .protocols = [id("zigbee")].into_iter().collect();
        assert_eq!(check_comp_comm(&shared), vec![]);
        assert_eq!(check_comp_comm(&empty), vec![]);
    });
}

#[test]
fn criterion_5_semantics_soundness() {
    criterion("5 semantics soundness (200 fuzz runs)", || {
        runner(200)
            .run(&consistent_model_and_scenario(), |(model, events)| {
                let report = check_all(&model, CheckerConfig::default());
                prop_assert!(report.functioning_consistent, "generator must emit consistent models");
                let trace = run_scenario(&model, &events).expect("in-range scenario");
                prop_assert!(audit_order_integrity(&trace, &model));
                for step in &trace.steps {
                    for transition in &step.transitions {
                        let behaviour = &model.device(&transition.device).unwrap().behaviour;
                        let key = (transition.old_state.clone(), transition.signal.clone());
                        prop_assert_eq!(
                            behaviour.delta.get(&key),
                            Some(&transition.new_state),
                            "every transition must be a delta entry"
                        );
                        prop_assert!(behaviour.states.contains(&transition.new_state));
                    }
                }
                Ok(())
            })
            .unwrap();
    });
}

#[test]
fn criterion_6_react_on_sense_fixture() {
    criterion("6 reactOnSense fixture", || {
        let model = repaired_app();
        let events: Vec<_> = parse_scenario(LIGHTS_SCENARIO)
            .unwrap()
            .into_iter()
            .map(|entry| entry.event)
            .collect();
        assert_eq!(events.len(), 2);
        let trace = run_scenario(&model, &events).unwrap();

        assert_eq!(trace.steps.len(), 2);
        let first = &trace.steps[0];
        assert_eq!(shape_orders(first), vec![("ctl2", "la", "on", "srv1")]);
        assert_eq!(shape_transitions(first), vec![("lvrl1", "off", "on")]);
        let second = &trace.steps[1];
        assert_eq!(shape_orders(second), vec![("ctl2", "la", "off", "srv1")]);
        assert_eq!(shape_transitions(second), vec![("lvrl1", "on", "off")]);
    });
}

fn shape_orders(step: &iotarch::semantics::TraceStep) -> Vec<(&str, &str, &str, &str)> {
    step.orders
        .iter()
        .map(|o| {
            (
                o.controller.as_str(),
                o.actuator.as_str(),
                o.order.as_str(),
                o.via_service.as_str(),
            )
        })
        .collect()
}

fn shape_transitions(step: &iotarch::semantics::TraceStep) -> Vec<(&str, &str, &str)> {
    step.transitions
        .iter()
        .map(|t| {
            (
                t.device.as_str(),
                t.old_state.as_str(),
                t.new_state.as_str(),
            )
        })
        .collect()
}

#[test]
fn criterion_7_round_trip_and_determinism() {
    criterion("7 round-trip and determinism", || {
        for (name, text) in fixture_corpus() {
            let parsed = parse_system(text).unwrap_or_else(|e| panic!("{name}: {e:?}"));
            let reparsed = parse_system(&format_system(&parsed))
                .unwrap_or_else(|e| panic!("{name} canonical form: {e:?}"));
            assert_eq!(parsed, reparsed, "{name}: parse . format . parse = parse");

            assert_eq!(
                emit_contexts(&parsed),
                emit_contexts(&parsed),
                "{name}: emission must be byte-identical across runs"
            );
            assert_eq!(
                emit_contexts(&parsed),
                emit_contexts(&reparsed),
                "{name}: emission must survive the formatting round-trip"
            );
        }
    });
}

#[test]
fn criterion_8_output_monotonicity() {
    criterion("8 outO monotonicity", || {
        let with_choice = arb_model().prop_flat_map(|sys| {
            let controllers: Vec<_> = sys.soft.controllers.keys().cloned().collect();
            let actuators: Vec<_> = sys.phys.actuators.keys().cloned().collect();
            if controllers.is_empty() || actuators.is_empty() {
                return (Just(sys), Just(None)).boxed();
            }
            let edge = (
                prop::sample::select(controllers),
                prop::sample::select(actuators),
            )
                .prop_map(Some);
            (Just(sys), edge).boxed()
        });
        runner(300)
            .run(&with_choice, |(sys, edge)| {
                let Some((controller, actuator)) = edge else {
                    return Ok(());
                };
                let before_dep = check_ctrl_dependency(&sys);
                let before_s2a = check_sensor_to_actuator(&sys);
                let mut augmented = sys.clone();
                augmented.order_outputs.insert((controller, actuator));
                for diag in check_ctrl_dependency(&augmented) {
                    prop_assert!(
                        before_dep.contains(&diag),
                        "new CTRL_DEPENDENCY diagnostic appeared: {}",
                        diag.to_line()
                    );
                }
                for diag in check_sensor_to_actuator(&augmented) {
                    prop_assert!(
                        before_s2a.contains(&diag),
                        "new SENSOR2ACTUATOR diagnostic appeared: {}",
                        diag.to_line()
                    );
                }
                Ok(())
            })
            .unwrap();
    });
}

// Warnings and severities surfaced by the rule table stay exercised here so
// the acceptance binary is self-contained.
#[test]
fn rule_table_reports_only_errors_for_the_seven_rules() {
    let report = check_all(&example_app(), CheckerConfig::default());
    assert!(report
        .diagnostics
        .iter()
        .all(|d| d.severity == Severity::Error));
}
