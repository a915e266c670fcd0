//! Command-line front end.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use weyl_equidist_core::{build_root_datum, char_mu_m, freudenthal, Weight};

use crate::error::{CliError, CliResult};
use crate::output::{self, Format};
use crate::parallel::{run_equidist_parallel, threads_from_env};
use crate::report::{action_report, datum_report};
use crate::scenario::{builtin_scenarios, LatticeSpec, Scenario};
use crate::verify::verify_all;

#[derive(Debug, Parser)]
#[command(
    name = "weyl-equidist",
    version,
    about = "Characters of V_{4m rho} and their equi-distribution over H"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Positive roots, 2rho, Weyl group order and pi_1 of a root datum.
    Datum(ReportArgs),
    /// Order of Gamma, coinvariants, ellipticity and H.
    Action {
        #[command(flatten)]
        args: ReportArgs,
        /// Skip H (allows non-elliptic actions).
        #[arg(long)]
        no_h: bool,
    },
    /// Exact S-values and growth diagnostics for m in [m_min, m_max].
    Equidist {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
    },
    /// Invariant checks on a scenario, or on the builtin suite when none is given.
    Verify {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dump Char V_{4m rho}, or the character of a given highest weight, as JSON.
    Char {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[arg(long, default_value_t = 1, conflicts_with = "highest_weight")]
        m: u32,
        /// Comma-separated coordinates of a dominant weight.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        highest_weight: Option<Vec<i64>>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Default, Args)]
pub struct ScenarioArgs {
    /// Scenario JSON file; the other flags override its fields.
    #[arg(long)]
    pub scenario: Option<PathBuf>,
    /// Cartan type such as A2, B3 or A1xT1.
    #[arg(long = "type")]
    pub cartan_type: Option<String>,
    /// `root`, `weight`, or a JSON list of generators.
    #[arg(long)]
    pub lattice: Option<String>,
    /// JSON list of matrices, inline or as @file.
    #[arg(long)]
    pub galois: Option<String>,
    #[arg(long)]
    pub m_min: Option<u32>,
    #[arg(long)]
    pub m_max: Option<u32>,
}

#[derive(Debug, Clone, Args)]
pub struct ReportArgs {
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl ScenarioArgs {
    fn is_empty(&self) -> bool {
        self.scenario.is_none() && self.cartan_type.is_none()
    }

    pub fn resolve(&self) -> CliResult<Scenario> {
        let mut s = match &self.scenario {
            Some(p) => Scenario::load(p)?,
            None => Scenario {
                name: String::new(),
                cartan_type: self.cartan_type.clone().ok_or_else(|| {
                    CliError::Parse("either --scenario or --type is required".into())
                })?,
                lattice: LatticeSpec::default(),
                galois_generators: Vec::new(),
                m_min: 1,
                m_max: 1,
            },
        };
        if let Some(t) = &self.cartan_type {
            s.cartan_type = t.clone();
        }
        if let Some(l) = &self.lattice {
            s.lattice = match l.trim_start().starts_with('[') {
                true => LatticeSpec::Custom(parse_json(l, "--lattice")?),
                false => LatticeSpec::Named(l.clone()),
            };
        }
        if let Some(g) = &self.galois {
            s.galois_generators = match g.strip_prefix('@') {
                Some(path) => {
                    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
                    parse_json(&text, "--galois")?
                }
                None => parse_json(g, "--galois")?,
            };
        }
        if let Some(m) = self.m_min {
            s.m_min = m;
        }
        if let Some(m) = self.m_max {
            s.m_max = m;
        }
        if self.m_min.is_some() && self.m_max.is_none() && s.m_max < s.m_min {
            s.m_max = s.m_min;
        }
        if s.m_min > s.m_max {
            return Err(CliError::Parse(format!(
                "m_min ({}) exceeds m_max ({})",
                s.m_min, s.m_max
            )));
        }
        Ok(s)
    }
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str, flag: &str) -> CliResult<T> {
    serde_json::from_str(text).map_err(|e| CliError::Parse(format!("{flag}: {e}")))
}

fn emit(out: Option<&Path>, bytes: &[u8], stdout: &mut dyn Write) -> CliResult<()> {
    match out {
        Some(p) => output::write_file_atomic(p, bytes),
        None => stdout
            .write_all(bytes)
            .map_err(|e| CliError::io("<stdout>", e)),
    }
}

fn json_bytes<T: serde::Serialize>(v: &T) -> CliResult<Vec<u8>> {
    let mut b = serde_json::to_vec_pretty(v).map_err(|e| CliError::Parse(e.to_string()))?;
    b.push(b'\n');
    Ok(b)
}

fn render<T: serde::Serialize>(
    v: &T,
    text: impl FnOnce() -> String,
    format: Format,
) -> CliResult<Vec<u8>> {
    match format {
        Format::Json => json_bytes(v),
        Format::Text | Format::Csv => Ok(text().into_bytes()),
    }
}

pub fn execute(cli: Cli, stdout: &mut dyn Write) -> CliResult<()> {
    match cli.command {
        Command::Datum(a) => {
            let s = a.scenario.resolve()?;
            let r = datum_report(&s.name, &s.datum()?);
            emit(
                a.out.as_deref(),
                &render(&r, || r.to_text(), a.format)?,
                stdout,
            )
        }
        Command::Action { args: a, no_h } => {
            let s = a.scenario.resolve()?;
            let r = action_report(&s.name, &s.action()?, !no_h)?;
            emit(
                a.out.as_deref(),
                &render(&r, || r.to_text(), a.format)?,
                stdout,
            )
        }
        Command::Equidist {
            scenario,
            format,
            out,
        } => {
            let s = scenario.resolve()?;
            let rep = run_equidist_parallel(&s.action()?, s.m_range(), threads_from_env()?)?;
            let files = output::equidist_files(&s.name, &rep, format)?;
            for p in output::write_files_atomic(&out, &files)? {
                writeln!(stdout, "{}", p.display()).map_err(|e| CliError::io("<stdout>", e))?;
            }
            Ok(())
        }
        Command::Verify {
            scenario,
            format,
            out,
        } => {
            let scenarios = match scenario.is_empty() {
                true => builtin_scenarios(),
                false => vec![scenario.resolve()?],
            };
            let rep = verify_all(&scenarios, threads_from_env()?)?;
            emit(
                out.as_deref(),
                &render(&rep, || rep.to_text(), format)?,
                stdout,
            )?;
            match rep.passed {
                true => Ok(()),
                false => Err(CliError::Verify(
                    rep.failures()
                        .iter()
                        .map(|c| format!("{}: {}", c.scenario, c.check))
                        .collect(),
                )),
            }
        }
        Command::Char {
            scenario,
            m,
            highest_weight,
            out,
        } => {
            let s = scenario.resolve()?;
            let rd = build_root_datum(&s.cartan()?, &s.lattice.to_choice()?)?;
            let ch = match highest_weight {
                Some(w) => freudenthal(&rd, &Weight(w))?,
                None => char_mu_m(&rd, m),
            };
            emit(out.as_deref(), &output::char_json(&ch)?, stdout)
        }
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(cli, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            if let CliError::Verify(list) = &e {
                for f in list {
                    let _ = writeln!(stderr, "  failed: {f}");
                }
            }
            e.exit_code()
        }
    }
}
