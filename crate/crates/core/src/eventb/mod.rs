//! Generation of the instance-level Event-B contexts.
//!
//! The generic layer (contexts whose names end in 0) is fixed for every
//! application and shipped as static reference text. For a concrete model
//! this module generates the three instantiation contexts: the physical
//! architecture, the software architecture, and their interconnection.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use crate::ident::Identifier;
use crate::model::SystemModel;
use crate::rel::Relation;

/// One generated context: its name, the generic context it extends, and the
/// full source text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmittedContext {
    pub name: String,
    pub extends: String,
    pub text: String,
}

impl EmittedContext {
    pub fn file_name(&self) -> String {
        format!("{}.ctx.txt", self.name)
    }
}

/// The static generic layer bundled with every emission, as
/// `(file name, content)` pairs.
pub fn generic_layer() -> &'static [(&'static str, &'static str)] {
    &[
        ("HWCtx0.ctx.txt", include_str!("generic/HWCtx0.ctx.txt")),
        ("SWCtx0.ctx.txt", include_str!("generic/SWCtx0.ctx.txt")),
        (
            "HW_ArchiCtx0.ctx.txt",
            include_str!("generic/HW_ArchiCtx0.ctx.txt"),
        ),
        (
            "SW_ArchiCtx0.ctx.txt",
            include_str!("generic/SW_ArchiCtx0.ctx.txt"),
        ),
        (
            "HWSW_Archi0.ctx.txt",
            include_str!("generic/HWSW_Archi0.ctx.txt"),
        ),
        (
            "IoTArchiCheck0.mch.txt",
            include_str!("generic/IoTArchiCheck0.mch.txt"),
        ),
    ]
}

/// Emits the three instance contexts for a referentially intact model.
///
/// Constants are sorted; axiom labels are `axm1..axmN` in emission order;
/// relations are written as maplet set extensions, `∅` when empty. Equal
/// models produce byte-identical texts.
pub fn emit_contexts(sys: &SystemModel) -> Vec<EmittedContext> {
    vec![hw_instance(sys), sw_instance(sys), hwsw_instance(sys)]
}

/// Writes the three instance contexts plus the generic layer into `dir`,
/// returning the paths written.
pub fn write_to_dir(sys: &SystemModel, dir: &Path) -> io::Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    for context in emit_contexts(sys) {
        let path = dir.join(context.file_name());
        fs::write(&path, &context.text)?;
        written.push(path);
    }
    for (name, text) in generic_layer() {
        let path = dir.join(name);
        fs::write(&path, text)?;
        written.push(path);
    }
    Ok(written)
}

struct ContextBuilder {
    name: &'static str,
    extends: &'static str,
    constants: Vec<String>,
    axioms: Vec<String>,
}

impl ContextBuilder {
    fn new(name: &'static str, extends: &'static str) -> Self {
        ContextBuilder {
            name,
            extends,
            constants: Vec::new(),
            axioms: Vec::new(),
        }
    }

    fn finish(self) -> EmittedContext {
        let mut text = format!("CONTEXT {}\nEXTENDS {}\n", self.name, self.extends);
        if !self.constants.is_empty() {
            text.push_str("CONSTANTS\n");
            for constant in &self.constants {
                text.push_str("  ");
                text.push_str(constant);
                text.push('\n');
            }
        }
        if !self.axioms.is_empty() {
            text.push_str("AXIOMS\n");
            for (i, axiom) in self.axioms.iter().enumerate() {
                text.push_str(&format!("  axm{}: {axiom}\n", i + 1));
            }
        }
        text.push_str("END\n");
        EmittedContext {
            name: self.name.to_string(),
            extends: self.extends.to_string(),
            text,
        }
    }
}

fn carrier(category: &Identifier) -> String {
    category.as_str().to_uppercase()
}

fn maplet_set(relation: &Relation) -> String {
    if relation.is_empty() {
        return "∅".to_string();
    }
    let maplets = relation
        .iter()
        .map(|(left, right)| format!("{left} ↦ {right}"))
        .collect::<Vec<_>>()
        .join(", ");
    format!("{{{maplets}}}")
}

fn hw_instance(sys: &SystemModel) -> EmittedContext {
    let mut builder = ContextBuilder::new("HW_ArchiCtx1", "HW_ArchiCtx0");
    let mut members: Vec<(String, String)> = Vec::new();
    for sensor in sys.phys.sensors.values() {
        members.push((sensor.id.to_string(), carrier(&sensor.category)));
    }
    for actuator in sys.phys.actuators.values() {
        members.push((actuator.id.to_string(), carrier(&actuator.category)));
    }
    for device in sys.phys.devices.values() {
        members.push((device.id.to_string(), carrier(&device.category)));
    }
    members.sort();
    for (constant, set) in &members {
        builder.constants.push(constant.clone());
        builder.axioms.push(format!("{constant} ∈ {set}"));
    }
    builder
        .axioms
        .push(format!("bindingDS = {}", maplet_set(&sys.phys.device_sensor_binding)));
    builder.axioms.push(format!(
        "bindingAD = {}",
        maplet_set(&sys.phys.actuator_device_binding)
    ));
    builder.finish()
}

fn sw_instance(sys: &SystemModel) -> EmittedContext {
    let mut builder = ContextBuilder::new("SW_ArchiCtx1", "SW_ArchiCtx0");
    let mut members: Vec<(String, &'static str)> = Vec::new();
    for controller in sys.soft.controllers.keys() {
        members.push((controller.to_string(), "CONTROLLER"));
    }
    for service in sys.soft.services.keys() {
        members.push((service.to_string(), "SERVICE"));
    }
    members.sort();
    for (constant, set) in &members {
        builder.constants.push(constant.clone());
        builder.axioms.push(format!("{constant} ∈ {set}"));
    }
    builder.axioms.push(format!(
        "servDepend = {}",
        maplet_set(&sys.soft.service_dependency)
    ));
    builder.finish()
}

fn hwsw_instance(sys: &SystemModel) -> EmittedContext {
    let mut builder = ContextBuilder::new("HWSW_Archi1", "HWSW_Archi0");
    builder
        .axioms
        .push(format!("inD = {}", maplet_set(&sys.data_inputs)));
    builder
        .axioms
        .push(format!("outO = {}", maplet_set(&sys.order_outputs)));
    builder
        .axioms
        .push(format!("CtrlDepend = {}", maplet_set(&sys.control_dependency)));
    builder.finish()
}
