//! Recursive-descent parser and name resolution.
//!
//! Parsing runs in two passes. The first pass is purely syntactic and
//! collects raw sections; it recovers at line boundaries so several faults
//! are reported in one run. The second pass resolves identifiers against
//! the declared namespaces, applies defaults, and assembles the model.

use std::collections::{BTreeMap, BTreeSet};

use super::lex::{lex, Token, TokenKind};
use super::{defaults, ParseError, SourceSpan};
use crate::ident::Identifier;
use crate::model::{
    ControlRule, DeviceBehaviour, Kind, PhysicalModel, Service, SoftwareModel, SystemModel,
    ValuePattern,
};
use crate::rel::Relation;

#[derive(Debug, Clone)]
struct Spanned {
    text: String,
    span: SourceSpan,
}

impl Spanned {
    fn from_token(token: &Token) -> Self {
        Spanned {
            text: token.text.clone(),
            span: token.span(),
        }
    }

    fn ident(&self) -> Identifier {
        Identifier::new(&self.text).expect("lexer produces valid identifiers")
    }
}

/// Which relation a section label fills. `AutoHardware` covers the
/// `ADBinding`/`DSBinding` spellings, whose pairs are classified by the
/// namespaces of their components.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum RelLabel {
    AutoHardware,
    DeviceSensor,
    ActuatorDevice,
    SensorController,
    ControllerActuator,
    SensorDevice,
    ControllerService,
}

#[derive(Debug)]
struct RawRelation {
    label: RelLabel,
    pairs: Vec<(Spanned, Spanned)>,
}

#[derive(Debug)]
struct RawRule {
    value_kind: Spanned,
    pattern: ValuePattern,
    order: Spanned,
}

#[derive(Debug)]
struct RawProgram {
    name: Option<Spanned>,
    components: Vec<(Spanned, Vec<Spanned>)>,
    relations: Vec<RawRelation>,
    blocks: Vec<(Spanned, Vec<RawRule>)>,
    protocols: Vec<(Spanned, Vec<Spanned>)>,
    behaviours: Vec<(Spanned, Spanned, Vec<(Spanned, Spanned, Spanned)>)>,
}

pub(crate) fn parse(text: &str) -> Result<SystemModel, Vec<ParseError>> {
    let (tokens, lex_errors) = lex(text);
    if !lex_errors.is_empty() {
        return Err(lex_errors);
    }
    let mut parser = Parser {
        tokens: &tokens,
        pos: 0,
        errors: Vec::new(),
    };
    let raw = parser.parse_program();
    if !parser.errors.is_empty() {
        return Err(parser.errors);
    }
    resolve(raw)
}

struct Parser<'t> {
    tokens: &'t [Token],
    pos: usize,
    errors: Vec<ParseError>,
}

impl<'t> Parser<'t> {
    fn peek(&self) -> Option<&'t Token> {
        self.tokens.get(self.pos)
    }

    fn bump(&mut self) -> Option<&'t Token> {
        let token = self.tokens.get(self.pos);
        if token.is_some() {
            self.pos += 1;
        }
        token
    }

    fn eof_span(&self) -> SourceSpan {
        match self.tokens.last() {
            Some(token) => SourceSpan::new(token.line, token.column, 1),
            None => SourceSpan::new(1, 1, 1),
        }
    }

    fn error(&mut self, span: SourceSpan, expected: impl Into<String>, found: impl Into<String>) {
        self.errors.push(ParseError {
            span,
            expected: expected.into(),
            found: found.into(),
        });
    }

    fn error_here(&mut self, expected: impl Into<String>) {
        match self.peek() {
            Some(token) => {
                let span = token.span();
                let found = token.display().to_string();
                self.error(span, expected, found);
            }
            None => {
                let span = self.eof_span();
                self.error(span, expected, "end of input");
            }
        }
    }

    /// Consumes a token of the given kind or records an error. On error the
    /// cursor is left in place for the caller's recovery.
    fn expect(&mut self, kind: TokenKind, expected: &str) -> Option<&'t Token> {
        match self.peek() {
            Some(token) if token.kind == kind => self.bump(),
            _ => {
                self.error_here(expected);
                None
            }
        }
    }

    fn expect_ident(&mut self, expected: &str) -> Option<Spanned> {
        match self.peek() {
            Some(token) if token.kind == TokenKind::Ident => {
                let spanned = Spanned::from_token(token);
                self.bump();
                Some(spanned)
            }
            _ => {
                self.error_here(expected);
                None
            }
        }
    }

    fn skip_newlines(&mut self) {
        while self.peek().is_some_and(|t| t.kind == TokenKind::Newline) {
            self.bump();
        }
    }

    fn skip_to_newline(&mut self) {
        while let Some(token) = self.peek() {
            if token.kind == TokenKind::Newline {
                return;
            }
            self.bump();
        }
    }

    /// Requires the current line to be finished; on junk, reports it and
    /// skips the rest of the line.
    fn end_of_line(&mut self) {
        match self.peek() {
            None => {}
            Some(token) if token.kind == TokenKind::Newline => {
                self.bump();
            }
            Some(_) => {
                self.error_here("end of line");
                self.skip_to_newline();
            }
        }
    }

    fn parse_program(&mut self) -> RawProgram {
        let mut raw = RawProgram {
            name: None,
            components: Vec::new(),
            relations: Vec::new(),
            blocks: Vec::new(),
            protocols: Vec::new(),
            behaviours: Vec::new(),
        };

        self.skip_newlines();
        match self.peek() {
            Some(token) if token.kind == TokenKind::Ident && token.text == "IOTSystem" => {
                self.bump();
                raw.name = self.expect_ident("a system name");
                self.end_of_line();
            }
            _ => {
                self.error_here("IOTSystem header");
                self.skip_to_newline();
            }
        }

        loop {
            self.skip_newlines();
            if self.peek().is_none() {
                break;
            }
            self.parse_section(&mut raw);
        }
        raw
    }

    fn parse_section(&mut self, raw: &mut RawProgram) {
        let Some(token) = self.peek() else { return };
        if token.kind != TokenKind::Ident {
            self.error_here("a section");
            self.skip_to_newline();
            return;
        }

        let label = token.text.as_str();
        let rel_label = match label {
            "ADBinding" | "DSBinding" => Some(RelLabel::AutoHardware),
            "DeviceSensor" => Some(RelLabel::DeviceSensor),
            "ActuatorDevice" => Some(RelLabel::ActuatorDevice),
            "SCBinding" => Some(RelLabel::SensorController),
            "CABinding" => Some(RelLabel::ControllerActuator),
            "SDDependency" | "SDDependeny" => Some(RelLabel::SensorDevice),
            _ => None,
        };
        if let Some(rel_label) = rel_label {
            self.bump();
            self.parse_relation_line(raw, rel_label);
            return;
        }

        match label {
            "IOTSystem" => {
                self.error_here("a single IOTSystem header");
                self.skip_to_newline();
            }
            "PROTOCOLS" => {
                self.bump();
                self.parse_protocols_line(raw);
            }
            "BEHAVIOUR" => {
                self.bump();
                self.parse_behaviour_line(raw);
            }
            "Control" if self.tokens.get(self.pos + 1).is_some_and(|t| t.kind == TokenKind::Hyphen) => {
                self.bump(); // Control
                self.bump(); // -
                match self.peek() {
                    Some(t) if t.kind == TokenKind::Ident && t.text == "Service" => {
                        self.bump();
                        self.parse_relation_line(raw, RelLabel::ControllerService);
                    }
                    _ => {
                        self.error_here("Service after Control-");
                        self.skip_to_newline();
                    }
                }
            }
            _ if is_category_token(label) => {
                let category = Spanned::from_token(token);
                self.bump();
                self.parse_components_line(raw, category);
            }
            _ => {
                let service = Spanned::from_token(token);
                self.bump();
                self.parse_rule_block(raw, service);
            }
        }
    }

    fn parse_relation_line(&mut self, raw: &mut RawProgram, label: RelLabel) {
        if self.expect(TokenKind::Colon, ":").is_none() {
            self.skip_to_newline();
            return;
        }
        let Some(pairs) = self.parse_pair_list() else {
            self.skip_to_newline();
            return;
        };
        raw.relations.push(RawRelation { label, pairs });
        self.end_of_line();
    }

    fn parse_pair_list(&mut self) -> Option<Vec<(Spanned, Spanned)>> {
        let mut pairs = vec![self.parse_pair()?];
        while self.peek().is_some_and(|t| t.kind == TokenKind::Comma) {
            self.bump();
            pairs.push(self.parse_pair()?);
        }
        Some(pairs)
    }

    fn parse_pair(&mut self) -> Option<(Spanned, Spanned)> {
        self.expect(TokenKind::LParen, "(")?;
        let left = self.expect_ident("an identifier")?;
        self.expect(TokenKind::Comma, ",")?;
        let right = self.expect_ident("an identifier")?;
        self.expect(TokenKind::RParen, ")")?;
        Some((left, right))
    }

    fn parse_components_line(&mut self, raw: &mut RawProgram, category: Spanned) {
        if self.expect(TokenKind::Colon, ":").is_none() {
            self.skip_to_newline();
            return;
        }
        let Some(ids) = self.parse_ident_list() else {
            self.skip_to_newline();
            return;
        };
        raw.components.push((category, ids));
        self.end_of_line();
    }

    fn parse_ident_list(&mut self) -> Option<Vec<Spanned>> {
        let mut ids = vec![self.expect_ident("an identifier")?];
        while self.peek().is_some_and(|t| t.kind == TokenKind::Comma) {
            self.bump();
            ids.push(self.expect_ident("an identifier")?);
        }
        Some(ids)
    }

    fn parse_protocols_line(&mut self, raw: &mut RawProgram) {
        let Some(element) = self.expect_ident("an element name") else {
            self.skip_to_newline();
            return;
        };
        if self.expect(TokenKind::Colon, ":").is_none() {
            self.skip_to_newline();
            return;
        }
        let Some(protocols) = self.parse_ident_list() else {
            self.skip_to_newline();
            return;
        };
        raw.protocols.push((element, protocols));
        self.end_of_line();
    }

    fn parse_behaviour_line(&mut self, raw: &mut RawProgram) {
        let Some(device) = self.expect_ident("a device name") else {
            self.skip_to_newline();
            return;
        };
        if self.expect(TokenKind::Colon, ":").is_none() {
            self.skip_to_newline();
            return;
        }
        let Some(initial) = self.expect_ident("an initial state") else {
            self.skip_to_newline();
            return;
        };
        let mut transitions = Vec::new();
        while self.peek().is_some_and(|t| t.kind == TokenKind::Semicolon) {
            self.bump();
            let Some(transition) = self.parse_transition() else {
                self.skip_to_newline();
                return;
            };
            transitions.push(transition);
        }
        raw.behaviours.push((device, initial, transitions));
        self.end_of_line();
    }

    fn parse_transition(&mut self) -> Option<(Spanned, Spanned, Spanned)> {
        self.expect(TokenKind::LParen, "(")?;
        let state = self.expect_ident("a state")?;
        self.expect(TokenKind::Comma, ",")?;
        let signal = self.expect_ident("a signal")?;
        self.expect(TokenKind::RParen, ")")?;
        self.expect(TokenKind::MapsTo, "->")?;
        let target = self.expect_ident("a target state")?;
        Some((state, signal, target))
    }

    fn parse_rule_block(&mut self, raw: &mut RawProgram, service: Spanned) {
        if self.expect(TokenKind::Colon, ":").is_none() {
            self.skip_to_newline();
            return;
        }
        if self.expect(TokenKind::LBrace, "{").is_none() {
            self.skip_to_newline();
            return;
        }
        let mut rules = Vec::new();
        loop {
            self.skip_newlines();
            match self.peek() {
                None => {
                    self.error_here("}");
                    break;
                }
                Some(token) if token.kind == TokenKind::RBrace => {
                    self.bump();
                    break;
                }
                Some(_) => match self.parse_rule() {
                    Some(rule) => rules.push(rule),
                    None => {
                        self.skip_to_newline();
                    }
                },
            }
        }
        raw.blocks.push((service, rules));
        self.end_of_line();
    }

    fn parse_rule(&mut self) -> Option<RawRule> {
        let value_kind = self.expect_ident("a value kind")?;
        self.expect(TokenKind::LParen, "(")?;
        let pattern = self.parse_pattern()?;
        self.expect(TokenKind::RParen, ")")?;
        self.expect(TokenKind::Arrow, "-->")?;
        match self.peek() {
            Some(token) if token.kind == TokenKind::Ident && token.text == "Order" => {
                self.bump();
            }
            _ => {
                self.error_here("Order");
                return None;
            }
        }
        self.expect(TokenKind::LParen, "(")?;
        let order = self.expect_ident("an order name")?;
        self.expect(TokenKind::RParen, ")")?;
        Some(RawRule {
            value_kind,
            pattern,
            order,
        })
    }

    fn parse_pattern(&mut self) -> Option<ValuePattern> {
        match self.peek() {
            Some(token) => match token.kind {
                TokenKind::Int(value) => {
                    self.bump();
                    Some(ValuePattern::Literal(value))
                }
                TokenKind::Ident => {
                    self.bump();
                    Some(ValuePattern::Wildcard)
                }
                TokenKind::LBracket => {
                    let open_span = token.span();
                    self.bump();
                    let lo = self.expect_int("a lower bound")?;
                    self.expect(TokenKind::DotDot, "..")?;
                    let hi = self.expect_int("an upper bound")?;
                    self.expect(TokenKind::RBracket, "]")?;
                    if lo > hi {
                        self.error(
                            open_span,
                            "a range with lower bound <= upper bound",
                            format!("[{lo} .. {hi}]"),
                        );
                        return None;
                    }
                    Some(ValuePattern::Range { lo, hi })
                }
                _ => {
                    self.error_here("an integer, a wildcard name, or [lo .. hi]");
                    None
                }
            },
            None => {
                self.error_here("an integer, a wildcard name, or [lo .. hi]");
                None
            }
        }
    }

    fn expect_int(&mut self, expected: &str) -> Option<i64> {
        match self.peek() {
            Some(token) => {
                if let TokenKind::Int(value) = token.kind {
                    self.bump();
                    Some(value)
                } else {
                    self.error_here(expected);
                    None
                }
            }
            None => {
                self.error_here(expected);
                None
            }
        }
    }
}

/// All-caps tokens introduce component declarations.
fn is_category_token(text: &str) -> bool {
    let mut chars = text.chars();
    chars.clone().next().is_some_and(|c| c.is_ascii_uppercase())
        && chars.all(|c| c.is_ascii_uppercase() || c.is_ascii_digit() || c == '_')
}

fn component_kind(category: &str) -> Kind {
    if category.ends_with("SENSOR") {
        Kind::Sensor
    } else if category.ends_with("ACTUATOR") {
        Kind::Actuator
    } else if category == "CONTROLLER" {
        Kind::Controller
    } else if category == "SERVICE" {
        Kind::Service
    } else {
        Kind::Device
    }
}

struct Declarations {
    kinds: BTreeMap<String, (Kind, Identifier, SourceSpan)>,
}

impl Declarations {
    fn kind_of(&self, name: &str) -> Option<Kind> {
        self.kinds.get(name).map(|(kind, _, _)| *kind)
    }

    fn span_of(&self, name: &str) -> Option<SourceSpan> {
        self.kinds.get(name).map(|(_, _, span)| *span)
    }
}

fn resolve(raw: RawProgram) -> Result<SystemModel, Vec<ParseError>> {
    let mut errors = Vec::new();
    let name = match &raw.name {
        Some(spanned) => spanned.ident(),
        None => Identifier::new("unnamed").unwrap(),
    };

    // Declaration pass: every component name, with duplicates rejected
    // across all namespaces.
    let mut decls = Declarations {
        kinds: BTreeMap::new(),
    };
    for (category, ids) in &raw.components {
        let kind = component_kind(&category.text);
        for id in ids {
            if let Some((prev, _, _)) = decls.kinds.get(&id.text) {
                errors.push(ParseError {
                    span: id.span,
                    expected: format!("a fresh name ({} is already a {prev})", id.text),
                    found: id.text.clone(),
                });
            } else {
                decls
                    .kinds
                    .insert(id.text.clone(), (kind, category.ident(), id.span));
            }
        }
    }

    let expect_kind = |spanned: &Spanned, kind: Kind, errors: &mut Vec<ParseError>| -> bool {
        match decls.kind_of(&spanned.text) {
            Some(found) if found == kind => true,
            _ => {
                errors.push(ParseError {
                    span: spanned.span,
                    expected: format!("a declared {kind}"),
                    found: spanned.text.clone(),
                });
                false
            }
        }
    };

    // Relation pass.
    let mut device_sensor = Relation::new();
    let mut actuator_device = Relation::new();
    let mut data_inputs = Relation::new();
    let mut order_outputs = Relation::new();
    let mut control_dependency = Relation::new();
    let mut service_dependency = Relation::new();
    for relation in &raw.relations {
        for (left, right) in &relation.pairs {
            match relation.label {
                RelLabel::AutoHardware => match decls.kind_of(&left.text) {
                    Some(Kind::Device) => {
                        if expect_kind(right, Kind::Sensor, &mut errors) {
                            device_sensor.insert((left.ident(), right.ident()));
                        }
                    }
                    Some(Kind::Actuator) => {
                        if expect_kind(right, Kind::Device, &mut errors) {
                            actuator_device.insert((left.ident(), right.ident()));
                        }
                    }
                    _ => errors.push(ParseError {
                        span: left.span,
                        expected: "a declared device or actuator".to_string(),
                        found: left.text.clone(),
                    }),
                },
                RelLabel::DeviceSensor => {
                    if expect_kind(left, Kind::Device, &mut errors)
                        & expect_kind(right, Kind::Sensor, &mut errors)
                    {
                        device_sensor.insert((left.ident(), right.ident()));
                    }
                }
                RelLabel::ActuatorDevice => {
                    if expect_kind(left, Kind::Actuator, &mut errors)
                        & expect_kind(right, Kind::Device, &mut errors)
                    {
                        actuator_device.insert((left.ident(), right.ident()));
                    }
                }
                RelLabel::SensorController => {
                    if expect_kind(left, Kind::Sensor, &mut errors)
                        & expect_kind(right, Kind::Controller, &mut errors)
                    {
                        data_inputs.insert((left.ident(), right.ident()));
                    }
                }
                RelLabel::ControllerActuator => {
                    if expect_kind(left, Kind::Controller, &mut errors)
                        & expect_kind(right, Kind::Actuator, &mut errors)
                    {
                        order_outputs.insert((left.ident(), right.ident()));
                    }
                }
                RelLabel::SensorDevice => {
                    if expect_kind(left, Kind::Sensor, &mut errors)
                        & expect_kind(right, Kind::Device, &mut errors)
                    {
                        control_dependency.insert((left.ident(), right.ident()));
                    }
                }
                RelLabel::ControllerService => {
                    if expect_kind(left, Kind::Controller, &mut errors)
                        & expect_kind(right, Kind::Service, &mut errors)
                    {
                        service_dependency.insert((left.ident(), right.ident()));
                    }
                }
            }
        }
    }

    // Rule blocks.
    let mut rules_by_service: BTreeMap<String, Vec<ControlRule>> = BTreeMap::new();
    for (service, rules) in &raw.blocks {
        if !expect_kind(service, Kind::Service, &mut errors) {
            continue;
        }
        if rules_by_service.contains_key(&service.text) {
            errors.push(ParseError {
                span: service.span,
                expected: format!("a single rule block for service {}", service.text),
                found: service.text.clone(),
            });
            continue;
        }
        let rules = rules
            .iter()
            .map(|rule| ControlRule {
                value_kind: rule.value_kind.ident(),
                pattern: rule.pattern.clone(),
                order: rule.order.ident(),
            })
            .collect();
        rules_by_service.insert(service.text.clone(), rules);
    }

    // Protocol overrides.
    let mut protocols_by_element: BTreeMap<String, BTreeSet<Identifier>> = BTreeMap::new();
    for (element, protocols) in &raw.protocols {
        match decls.kind_of(&element.text) {
            Some(Kind::Sensor | Kind::Actuator | Kind::Controller) => {}
            _ => {
                errors.push(ParseError {
                    span: element.span,
                    expected: "a declared sensor, actuator, or controller".to_string(),
                    found: element.text.clone(),
                });
                continue;
            }
        }
        if protocols_by_element.contains_key(&element.text) {
            errors.push(ParseError {
                span: element.span,
                expected: format!("a single PROTOCOLS line for {}", element.text),
                found: element.text.clone(),
            });
            continue;
        }
        for protocol in protocols {
            if let Some(kind) = decls.kind_of(&protocol.text) {
                errors.push(ParseError {
                    span: protocol.span,
                    expected: format!("a protocol name ({} is a {kind})", protocol.text),
                    found: protocol.text.clone(),
                });
            }
        }
        protocols_by_element.insert(
            element.text.clone(),
            protocols.iter().map(Spanned::ident).collect(),
        );
    }

    // Behaviour overrides.
    let mut behaviour_by_device: BTreeMap<String, DeviceBehaviour> = BTreeMap::new();
    for (device, initial, transitions) in &raw.behaviours {
        if !expect_kind(device, Kind::Device, &mut errors) {
            continue;
        }
        if behaviour_by_device.contains_key(&device.text) {
            errors.push(ParseError {
                span: device.span,
                expected: format!("a single BEHAVIOUR line for {}", device.text),
                found: device.text.clone(),
            });
            continue;
        }
        let mut states: BTreeSet<Identifier> = [initial.ident()].into_iter().collect();
        let mut signals: BTreeSet<Identifier> = BTreeSet::new();
        let mut delta = BTreeMap::new();
        for (state, signal, target) in transitions {
            states.insert(state.ident());
            states.insert(target.ident());
            signals.insert(signal.ident());
            if delta
                .insert((state.ident(), signal.ident()), target.ident())
                .is_some()
            {
                errors.push(ParseError {
                    span: state.span,
                    expected: format!(
                        "a single transition for ({}, {})",
                        state.text, signal.text
                    ),
                    found: state.text.clone(),
                });
            }
        }
        behaviour_by_device.insert(
            device.text.clone(),
            DeviceBehaviour {
                states,
                initial: initial.ident(),
                signals,
                delta,
            },
        );
    }

    // The default protocol joins the protocol namespace as soon as any
    // element falls back to it; it must then not collide with a component.
    let any_default_protocols = decls.kinds.iter().any(|(name, (kind, _, _))| {
        matches!(kind, Kind::Sensor | Kind::Actuator | Kind::Controller)
            && !protocols_by_element.contains_key(name)
    });
    if any_default_protocols {
        if let (Some(kind), Some(span)) = (
            decls.kind_of(defaults::DEFAULT_PROTOCOL),
            decls.span_of(defaults::DEFAULT_PROTOCOL),
        ) {
            errors.push(ParseError {
                span,
                expected: format!(
                    "a {kind} name distinct from the default protocol {}",
                    defaults::DEFAULT_PROTOCOL
                ),
                found: defaults::DEFAULT_PROTOCOL.to_string(),
            });
        }
    }

    if !errors.is_empty() {
        return Err(errors);
    }

    // Assembly with defaults.
    let mut sensors = Vec::new();
    let mut actuators = Vec::new();
    let mut devices = Vec::new();
    let mut controllers = Vec::new();
    let mut services = Vec::new();
    for (element, (kind, category, _)) in &decls.kinds {
        let id = Identifier::new(element).expect("declared names are valid identifiers");
        match kind {
            Kind::Sensor => {
                let mut sensor = defaults::sensor(id, category.clone());
                if let Some(protocols) = protocols_by_element.get(element) {
                    sensor.protocols = protocols.clone();
                }
                sensors.push(sensor);
            }
            Kind::Actuator => {
                let mut actuator = defaults::actuator(id, category.clone());
                if let Some(protocols) = protocols_by_element.get(element) {
                    actuator.protocols = protocols.clone();
                }
                actuators.push(actuator);
            }
            Kind::Device => {
                let mut device = defaults::device(id, category.clone());
                if let Some(behaviour) = behaviour_by_device.get(element) {
                    device.behaviour = behaviour.clone();
                    device.current_state = behaviour.initial.clone();
                }
                devices.push(device);
            }
            Kind::Controller => {
                let mut controller = defaults::controller(id);
                if let Some(protocols) = protocols_by_element.get(element) {
                    controller.protocols = protocols.clone();
                }
                controllers.push(controller);
            }
            Kind::Service => {
                let rules = rules_by_service.remove(element).unwrap_or_default();
                services.push(Service { id, rules });
            }
        }
    }

    let phys = PhysicalModel::new(sensors, actuators, devices, device_sensor, actuator_device);
    let soft = SoftwareModel::new(controllers, services, service_dependency);
    SystemModel::build(
        name,
        phys,
        soft,
        data_inputs,
        order_outputs,
        control_dependency,
    )
    .map_err(|diags| {
        // The passes above pre-validate everything the builder rejects;
        // anything that still surfaces is mapped to the closest span.
        diags
            .into_iter()
            .map(|diag| {
                let span = diag
                    .subjects
                    .first()
                    .and_then(|subject| decls.span_of(subject.as_str()))
                    .or_else(|| raw.name.as_ref().map(|n| n.span))
                    .unwrap_or_else(|| SourceSpan::new(1, 1, 1));
                let found = diag
                    .subjects
                    .first()
                    .map(|s| s.as_str().to_string())
                    .unwrap_or_else(|| "model".to_string());
                ParseError {
                    span,
                    expected: diag.message,
                    found,
                }
            })
            .collect()
    })
}
