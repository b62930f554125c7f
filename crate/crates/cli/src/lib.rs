//! Front end for `steinhom`: instance files in, reports out.

pub mod commands;
pub mod corpus;
pub mod instance;
pub mod report;
pub mod verify;

use clap::{Parser, ValueEnum};
use steinhom::ep::UnitsPresentation;
use steinhom::{Error, Ring};

use crate::instance::{parse_file, read_source};
use crate::report::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Bf,
    Homology,
    Hochschild,
    Cyclic,
    Ktheory,
    Verify,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug, Parser)]
#[command(name = "steinhom", version, about = "Homology and K-theory of Steinberg and Exel-Pardo algebras")]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    /// Instance file, a bundled instance name, or a suite name for `verify`.
    pub file: String,
    #[arg(long)]
    pub ring: Option<Ring>,
    /// Chain complexes are built in degrees `0..=N`; homology is reported below `N`.
    #[arg(long)]
    pub window: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub weight: Option<i64>,
    /// Presentation of the unit group of the coefficient ring.
    #[arg(long)]
    pub units: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

pub const DEFAULT_WINDOW: usize = 4;

/// Settings after merging flags with the instance options.
#[derive(Clone, Debug)]
pub struct Ctx {
    pub ring: Ring,
    pub window: usize,
    pub weight: Option<i64>,
    pub units: Option<UnitsPresentation>,
}

impl Cli {
    pub fn echo(&self) -> String {
        let mut s = format!("steinhom {} {}", self.command.to_possible_value().expect("named").get_name(), self.file);
        if let Some(r) = self.ring {
            s += &format!(" --ring {r}");
        }
        if let Some(w) = self.window {
            s += &format!(" --window {w}");
        }
        if let Some(m) = self.weight {
            s += &format!(" --weight {m}");
        }
        if let Some(u) = &self.units {
            s += &format!(" --units {u}");
        }
        if self.format == Format::Json {
            s += " --format json";
        }
        s
    }
}

fn error_report(echo: String, instance: &str, e: &Error) -> Report {
    let mut r = Report::new(echo, instance);
    match e {
        Error::Refused { reason, witness } => r.refuse(reason.clone(), witness.clone()),
        other => r.fail(other.to_string()),
    }
    r
}

/// Runs one invocation. Every outcome, including bad input, becomes a report.
pub fn run(cli: &Cli) -> Report {
    let echo = cli.echo();
    if cli.command == Command::Verify {
        return verify::run_suite(&cli.file, echo, cli.window);
    }
    let loaded = (|| {
        let file = parse_file(&read_source(&cli.file)?)?;
        let ring = match (cli.ring, &file.options.ring) {
            (Some(r), _) => r,
            (None, Some(s)) => s.parse()?,
            (None, None) => Ring::Z,
        };
        let inst = file.load(ring)?;
        let units = match &cli.units {
            Some(path) => Some(UnitsPresentation::from_json(&read_source(path)?)?),
            None => inst.options.units.clone(),
        };
        let window = cli.window.or(inst.options.window).unwrap_or(DEFAULT_WINDOW);
        if window == 0 {
            return Err(Error::invalid("window must be at least 1"));
        }
        let ctx = Ctx { ring, window, weight: cli.weight.or(inst.options.weight), units };
        Ok((inst, ctx))
    })();
    let (inst, ctx) = match loaded {
        Ok(x) => x,
        Err(e) => return error_report(echo, &cli.file, &e),
    };
    let label = format!("{} ({})", inst.name, inst.kind.as_str());
    let mut report = Report::new(echo.clone(), label.clone());
    if cli.command != Command::Bf {
        report.assume(format!("coefficients in {}", ctx.ring));
    }
    let outcome = match cli.command {
        Command::Bf => commands::bf(&inst, &ctx, &mut report),
        Command::Homology => commands::homology(&inst, &ctx, &mut report),
        Command::Hochschild => commands::hochschild(&inst, &ctx, &mut report),
        Command::Cyclic => commands::cyclic(&inst, &ctx, &mut report),
        Command::Ktheory => commands::ktheory(&inst, &ctx, &mut report),
        Command::Verify => unreachable!("handled above"),
    };
    match outcome {
        Ok(()) => report,
        Err(e) => {
            let mut r = error_report(echo, &label, &e);
            r.assumptions = report.assumptions;
            r
        }
    }
}

pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json(),
    }
}
