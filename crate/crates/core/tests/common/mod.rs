//! Shared fixtures and fuzz generators for the integration suites.
#![allow(dead_code)]

use proptest::prelude::*;

use iotarch::dsl::{self, defaults};
use iotarch::ident::Identifier;
use iotarch::model::{ControlRule, Service, SystemModel, ValuePattern};
use iotarch::model::{PhysicalModel, SoftwareModel};
use iotarch::rel::Relation;
use iotarch::semantics::SenseEvent;

pub const EXAMPLE_APP: &str = include_str!("../fixtures/ExampleApp.iot");
pub const REPAIRED_APP: &str = include_str!("../fixtures/RepairedApp.iot");
pub const EMPTY_APP: &str = include_str!("../fixtures/Empty.iot");
pub const HOME_AUTOMATION: &str = include_str!("../fixtures/HomeAutomation.iot");
pub const LIGHTS_SCENARIO: &str = include_str!("../fixtures/lights.scn");

pub fn fixture_corpus() -> Vec<(&'static str, &'static str)> {
    vec![
        ("ExampleApp.iot", EXAMPLE_APP),
        ("RepairedApp.iot", REPAIRED_APP),
        ("Empty.iot", EMPTY_APP),
        ("HomeAutomation.iot", HOME_AUTOMATION),
    ]
}

pub fn id(s: &str) -> Identifier {
    Identifier::new(s).unwrap()
}

pub fn pair(a: &str, b: &str) -> (Identifier, Identifier) {
    (id(a), id(b))
}

pub fn example_app() -> SystemModel {
    dsl::parse_system(EXAMPLE_APP).unwrap()
}

pub fn repaired_app() -> SystemModel {
    dsl::parse_system(REPAIRED_APP).unwrap()
}

fn subset<T: Clone + std::fmt::Debug + 'static>(items: Vec<T>) -> impl Strategy<Value = Vec<T>> {
    let len = items.len();
    prop::sample::subsequence(items, 0..=len)
}

fn arb_pattern() -> impl Strategy<Value = ValuePattern> {
    prop_oneof![
        (0..=10i64).prop_map(ValuePattern::Literal),
        (0..=10i64, 0..=10i64).prop_map(|(a, b)| ValuePattern::Range {
            lo: a.min(b),
            hi: a.max(b),
        }),
        Just(ValuePattern::Wildcard),
    ]
}

fn arb_rules() -> impl Strategy<Value = Vec<ControlRule>> {
    prop::collection::vec(
        (
            arb_pattern(),
            prop::sample::select(vec!["on", "off", "open"]),
            prop::sample::select(vec!["Lightvalue", "DoorValue"]),
        )
            .prop_map(|(pattern, order, kind)| ControlRule {
                value_kind: id(kind),
                pattern,
                order: id(order),
            }),
        0..4,
    )
}

fn cross(lefts: &[String], rights: &[String]) -> Vec<(String, String)> {
    let mut pairs = Vec::new();
    for left in lefts {
        for right in rights {
            pairs.push((left.clone(), right.clone()));
        }
    }
    pairs
}

fn to_relation(pairs: Vec<(String, String)>) -> Relation {
    pairs
        .into_iter()
        .map(|(a, b)| (id(&a), id(&b)))
        .collect()
}

/// Arbitrary referentially intact models with carriers of size <= 5.
/// Relations are free-form, so most generated models violate one or more
/// consistency rules; that is the point.
pub fn arb_model() -> impl Strategy<Value = SystemModel> {
    let counts = (0usize..=5, 0usize..=5, 0usize..=5, 0usize..=5, 0usize..=5);
    counts.prop_flat_map(|(ns, na, nd, nc, nv)| {
        let sensors: Vec<String> = (0..ns).map(|i| format!("s{i}")).collect();
        let actuators: Vec<String> = (0..na).map(|i| format!("a{i}")).collect();
        let devices: Vec<String> = (0..nd).map(|i| format!("d{i}")).collect();
        let controllers: Vec<String> = (0..nc).map(|i| format!("c{i}")).collect();
        let services: Vec<String> = (0..nv).map(|i| format!("v{i}")).collect();
        (
            subset(cross(&devices, &sensors)),
            subset(cross(&actuators, &devices)),
            subset(cross(&sensors, &controllers)),
            subset(cross(&controllers, &actuators)),
            subset(cross(&sensors, &devices)),
            subset(cross(&controllers, &services)),
            prop::collection::vec(arb_rules(), nv),
            any::<bool>(),
        )
            .prop_map(
                move |(ds, ad, sc, ca, sd, cs, rules, zigbee_first_sensor)| {
                    let mut sensor_elems: Vec<_> = sensors
                        .iter()
                        .map(|s| defaults::sensor(id(s), id("LIGHTSENSOR")))
                        .collect();
                    if zigbee_first_sensor {
                        if let Some(first) = sensor_elems.first_mut() {
                            first.protocols = [id("zigbee")].into_iter().collect();
                        }
                    }
                    let actuator_elems = actuators
                        .iter()
                        .map(|a| defaults::actuator(id(a), id("LIGHTACTUATOR")));
                    let device_elems = devices.iter().map(|d| defaults::device(id(d), id("LIGHT")));
                    let controller_elems = controllers.iter().map(|c| defaults::controller(id(c)));
                    let service_elems = services
                        .iter()
                        .zip(rules)
                        .map(|(v, rules)| Service { id: id(v), rules });
                    SystemModel::build(
                        id("Fuzz"),
                        PhysicalModel::new(
                            sensor_elems,
                            actuator_elems,
                            device_elems,
                            to_relation(ds),
                            to_relation(ad),
                        ),
                        SoftwareModel::new(controller_elems, service_elems, to_relation(cs)),
                        to_relation(sc),
                        to_relation(ca),
                        to_relation(sd),
                    )
                    .expect("generated models reference only declared elements")
                },
            )
    })
}

/// Models that are consistent by construction: disjoint
/// sensor-controller-device-actuator chains, one service per controller.
pub fn consistent_model() -> impl Strategy<Value = SystemModel> {
    (1usize..=4).prop_flat_map(|n| {
        prop::collection::vec(arb_rules(), n).prop_map(move |rules_per_chain| {
            let mut sensors = Vec::new();
            let mut actuators = Vec::new();
            let mut devices = Vec::new();
            let mut controllers = Vec::new();
            let mut services = Vec::new();
            let mut ds = Relation::new();
            let mut ad = Relation::new();
            let mut sc = Relation::new();
            let mut ca = Relation::new();
            let mut sd = Relation::new();
            let mut cs = Relation::new();
            for (i, rules) in rules_per_chain.into_iter().enumerate() {
                let (s, c, d, a, v) = (
                    format!("s{i}"),
                    format!("c{i}"),
                    format!("d{i}"),
                    format!("a{i}"),
                    format!("v{i}"),
                );
                sensors.push(defaults::sensor(id(&s), id("LIGHTSENSOR")));
                controllers.push(defaults::controller(id(&c)));
                devices.push(defaults::device(id(&d), id("LIGHT")));
                actuators.push(defaults::actuator(id(&a), id("LIGHTACTUATOR")));
                services.push(Service { id: id(&v), rules });
                ds.insert(pair(&d, &s));
                ad.insert(pair(&a, &d));
                sc.insert(pair(&s, &c));
                ca.insert(pair(&c, &a));
                sd.insert(pair(&s, &d));
                cs.insert(pair(&c, &v));
            }
            SystemModel::build(
                id("Chains"),
                PhysicalModel::new(sensors, actuators, devices, ds, ad),
                SoftwareModel::new(controllers, services, cs),
                sc,
                ca,
                sd,
            )
            .expect("chain models reference only declared elements")
        })
    })
}

/// In-range scenarios over the sensors of a model, ticks strictly increasing.
pub fn scenario_for(model: &SystemModel) -> BoxedStrategy<Vec<SenseEvent>> {
    let sensors: Vec<Identifier> = model.phys.sensors.keys().cloned().collect();
    if sensors.is_empty() {
        return Just(Vec::new()).boxed();
    }
    prop::collection::vec(
        (prop::sample::select(sensors), 0..=100i64, 1..=3u64),
        0..=8,
    )
    .prop_map(|picks| {
        let mut tick = 0;
        picks
            .into_iter()
            .map(|(sensor, value, gap)| {
                tick += gap;
                SenseEvent {
                    sensor,
                    value,
                    tick,
                }
            })
            .collect()
    })
    .boxed()
}

pub fn consistent_model_and_scenario() -> impl Strategy<Value = (SystemModel, Vec<SenseEvent>)> {
    consistent_model().prop_flat_map(|model| {
        let scenario = scenario_for(&model);
        (Just(model), scenario)
    })
}
