//! Command-line front end: check, simulate, emit-eventb, fmt.

use std::io::IsTerminal;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::{env, fs};

use clap::{Parser, Subcommand, ValueEnum};

use iotarch::checker::{check_all, CheckReport, CheckerConfig};
use iotarch::dsl::{self, ParseError};
use iotarch::model::Severity;
use iotarch::semantics::{self, SimError};
use iotarch::{eventb, SystemModel};

/// Process exit status: 0 consistent/success, 1 diagnostics reported,
/// 2 parse or usage error.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ExitStatus {
    Success,
    Diagnostics,
    Failure,
}

impl ExitStatus {
    fn code(self) -> u8 {
        match self {
            ExitStatus::Success => 0,
            ExitStatus::Diagnostics => 1,
            ExitStatus::Failure => 2,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "iotarch",
    version,
    about = "Consistency checking, simulation and Event-B emission for IoT control architectures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a model and run every consistency rule.
    Check {
        /// Model file (.iot)
        path: PathBuf,
        /// Warn when a sensor reaches more than one actuator
        #[arg(long)]
        strict_functional: bool,
        /// Report format
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
    },
    /// Run a scenario against a consistent model and print the trace.
    Simulate {
        /// Model file (.iot)
        path: PathBuf,
        /// Scenario file: one `tick sensorId value` per line
        scenario: PathBuf,
    },
    /// Generate the Event-B instance contexts plus the generic layer.
    #[command(name = "emit-eventb")]
    EmitEventb {
        /// Model file (.iot)
        path: PathBuf,
        /// Target directory for the generated files
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Print or rewrite the canonical form of a model file.
    Fmt {
        /// Model file (.iot)
        path: PathBuf,
        /// Rewrite the file instead of printing
        #[arg(long, conflicts_with = "check")]
        in_place: bool,
        /// Exit 1 when the file is not canonical
        #[arg(long)]
        check: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Text,
    Structured,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let status = match cli.command {
        Command::Check {
            path,
            strict_functional,
            format,
        } => cmd_check(&path, strict_functional, format),
        Command::Simulate { path, scenario } => cmd_simulate(&path, &scenario),
        Command::EmitEventb { path, out } => cmd_emit(&path, &out),
        Command::Fmt {
            path,
            in_place,
            check,
        } => cmd_fmt(&path, in_place, check),
    };
    ExitCode::from(status.code())
}

fn color_enabled() -> bool {
    match env::var("IOTARCH_COLOR").as_deref() {
        Ok("0") => false,
        Ok("1") => true,
        _ => std::io::stdout().is_terminal(),
    }
}

fn read_file(path: &Path) -> Result<String, ExitStatus> {
    fs::read_to_string(path).map_err(|e| {
        eprintln!("iotarch: cannot read {}: {e}", path.display());
        ExitStatus::Failure
    })
}

fn parse_model(path: &Path) -> Result<SystemModel, ExitStatus> {
    let text = read_file(path)?;
    dsl::parse_system(&text).map_err(|errors| {
        report_parse_errors(path, &errors);
        ExitStatus::Failure
    })
}

fn report_parse_errors(path: &Path, errors: &[ParseError]) {
    for error in errors {
        eprintln!(
            "{}:{}:{}: expected {}, found {}",
            path.display(),
            error.span.line,
            error.span.column,
            error.expected,
            error.found
        );
    }
}

fn print_report(report: &CheckReport, format: ReportFormat) {
    match format {
        ReportFormat::Structured => print!("{}", report.to_structured()),
        ReportFormat::Text => {
            let color = color_enabled();
            for diag in &report.diagnostics {
                if color {
                    let paint = match diag.severity {
                        Severity::Error => "\x1b[31m",
                        Severity::Warning => "\x1b[33m",
                    };
                    println!("{paint}{}\x1b[0m", diag.to_line());
                } else {
                    println!("{}", diag.to_line());
                }
            }
        }
    }
}

fn cmd_check(path: &Path, strict_functional: bool, format: ReportFormat) -> ExitStatus {
    let model = match parse_model(path) {
        Ok(model) => model,
        Err(status) => return status,
    };
    let cfg = CheckerConfig {
        strict_functional,
        ..CheckerConfig::default()
    };
    let report = check_all(&model, cfg);
    print_report(&report, format);
    if report.functioning_consistent {
        ExitStatus::Success
    } else {
        ExitStatus::Diagnostics
    }
}

fn cmd_simulate(path: &Path, scenario_path: &Path) -> ExitStatus {
    let model = match parse_model(path) {
        Ok(model) => model,
        Err(status) => return status,
    };
    let report = check_all(&model, CheckerConfig::default());
    if !report.functioning_consistent {
        print_report(&report, ReportFormat::Text);
        eprintln!("iotarch: model is not consistent for functioning; simulation refused");
        return ExitStatus::Diagnostics;
    }

    let scenario_text = match read_file(scenario_path) {
        Ok(text) => text,
        Err(status) => return status,
    };
    let scenario = match semantics::parse_scenario(&scenario_text) {
        Ok(scenario) => scenario,
        Err(error) => {
            eprintln!("{}:{}", scenario_path.display(), error);
            return ExitStatus::Failure;
        }
    };
    let events: Vec<_> = scenario.iter().map(|entry| entry.event.clone()).collect();
    match semantics::run_scenario(&model, &events) {
        Ok(trace) => {
            print!("{}", trace.to_wire());
            ExitStatus::Success
        }
        Err(SimError::Event { index, source }) => {
            let line = scenario.get(index).map_or(0, |entry| entry.line);
            eprintln!("{}:{line}: {source}", scenario_path.display());
            ExitStatus::Diagnostics
        }
        Err(error @ SimError::Inconsistent { .. }) => {
            eprintln!("iotarch: {error}");
            ExitStatus::Diagnostics
        }
    }
}

fn cmd_emit(path: &Path, out: &Path) -> ExitStatus {
    let model = match parse_model(path) {
        Ok(model) => model,
        Err(status) => return status,
    };
    match eventb::write_to_dir(&model, out) {
        Ok(written) => {
            for file in written {
                println!("wrote {}", file.display());
            }
            ExitStatus::Success
        }
        Err(e) => {
            eprintln!("iotarch: cannot write to {}: {e}", out.display());
            ExitStatus::Failure
        }
    }
}

fn cmd_fmt(path: &Path, in_place: bool, check: bool) -> ExitStatus {
    let text = match read_file(path) {
        Ok(text) => text,
        Err(status) => return status,
    };
    let model = match dsl::parse_system(&text) {
        Ok(model) => model,
        Err(errors) => {
            report_parse_errors(path, &errors);
            return ExitStatus::Failure;
        }
    };
    let canonical = dsl::format_system(&model);
    if check {
        if text == canonical {
            ExitStatus::Success
        } else {
            eprintln!("{}: not in canonical form", path.display());
            ExitStatus::Diagnostics
        }
    } else if in_place {
        match fs::write(path, canonical) {
            Ok(()) => ExitStatus::Success,
            Err(e) => {
                eprintln!("iotarch: cannot write {}: {e}", path.display());
                ExitStatus::Failure
            }
        }
    } else {
        print!("{canonical}");
        ExitStatus::Success
    }
}
