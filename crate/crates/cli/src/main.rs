use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use turnenc::analysis::{census_chains, census_turns, render_table, verify_all};
use turnenc::chain::{decode_chain, export_xyz, ChainBitstring};
use turnenc::encoder::{encode, qubit_budget, TurnEncoding};
use turnenc::lattice::{Builtin, LatticeSpec};
use turnenc::scalar::parse_rational;
use turnenc::{Coord, Error};

#[derive(Parser)]
#[command(
    name = "turnenc",
    version,
    about = "Encode lattice turns as multilinear qubit polynomials"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the displacement polynomials, bit layout and coefficient vectors.
    Encode {
        #[command(flatten)]
        common: Common,
    },
    /// Decode a chain bitstring into bead coordinates.
    Decode {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        beads: usize,
        #[arg(long)]
        bits: String,
    },
    /// Enumerate every turn state, and every chain when `--beads` is given.
    Enumerate {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        beads: Option<usize>,
    },
    /// Qubits needed for a chain.
    Budget {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        beads: usize,
    },
    /// Check the built-in lattices against their reference values.
    Verify {
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Common {
    /// `builtin:fcc`, `builtin:cubic-diag` or a JSON spec file.
    #[arg(long)]
    lattice: String,
    /// Bond scale `p/q`.
    #[arg(long, allow_hyphen_values = true)]
    d: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Poly,
    Xyz,
}

impl Format {
    fn name(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Poly => "poly",
            Format::Xyz => "xyz",
        }
    }
}

enum Failure {
    Usage(String),
    Lib(Error),
    Io(String),
    VerifyFailed,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Io(_) => 1,
            Failure::VerifyFailed => 1,
            Failure::Lib(e) => match e {
                Error::Parse(_) | Error::InvalidArgument(_) => 2,
                Error::InvalidSpec(_) => 3,
                Error::Format { .. } => 4,
                Error::ResourceLimit { .. } => 5,
                _ => 1,
            },
        }
    }
}

fn require(format: Format, allowed: &[Format], command: &str) -> Result<(), Failure> {
    if allowed.contains(&format) {
        return Ok(());
    }
    let names: Vec<&str> = allowed.iter().map(|f| f.name()).collect();
    Err(Failure::Usage(format!(
        "{command} does not support --format {}; use {}",
        format.name(),
        names.join(" or ")
    )))
}

fn load_lattice(common: &Common) -> Result<LatticeSpec, Failure> {
    let d = common
        .d
        .as_deref()
        .map(|t| parse_rational(t).map_err(|e| Failure::Usage(format!("--d: {e}"))))
        .transpose()?;
    if let Some(name) = common.lattice.strip_prefix("builtin:") {
        let builtin = Builtin::from_name(name)
            .ok_or_else(|| Failure::Usage(format!("unknown built-in lattice {name:?}; use fcc or cubic-diag")))?;
        return Ok(builtin.spec(&d.unwrap_or_else(|| turnenc::scalar::rational(1, 1)))?);
    }
    let text = fs::read_to_string(&common.lattice)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", common.lattice)))?;
    LatticeSpec::from_json_str(&text, d.as_ref())
        .map_err(|e| match e {
            Error::Parse(msg) => Error::Parse(format!("{}: {msg}", common.lattice)),
            other => other,
        })
        .map_err(Failure::from)
}

fn to_json(value: &impl serde::Serialize) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serializable output");
    text.push('\n');
    text
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Io(e.to_string())),
    }
}

fn encoded(common: &Common) -> Result<TurnEncoding, Failure> {
    Ok(encode(&load_lattice(common)?)?)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Encode { common } => {
            require(common.format, &[Format::Json, Format::Poly], "encode")?;
            let enc = encoded(&common)?;
            let text = match common.format {
                Format::Poly => enc.summary_lines().iter().map(|l| format!("{l}\n")).collect(),
                _ => to_json(&enc),
            };
            emit(common.out.as_ref(), &text)
        }
        Command::Decode { common, beads, bits } => {
            require(common.format, &[Format::Json, Format::Xyz], "decode")?;
            let enc = encoded(&common)?;
            if beads < 2 {
                return Err(Error::InvalidArgument(format!("--beads must be at least 2, got {beads}")).into());
            }
            let parsed = ChainBitstring::parse(&bits, enc.width(), beads - 1)?;
            let conf = decode_chain(&enc, &parsed, Coord::origin())?;
            let text = if common.format == Format::Xyz && conf.valid {
                export_xyz(&conf)?
            } else {
                if common.format == Format::Xyz {
                    eprintln!("turnenc: conformation is invalid; writing JSON instead of XYZ");
                }
                to_json(&conf)
            };
            emit(common.out.as_ref(), &text)
        }
        Command::Enumerate { common, beads } => {
            require(common.format, &[Format::Json], "enumerate")?;
            let enc = encoded(&common)?;
            let mut report = json!({
                "lattice": enc.lattice().name(),
                "turns": census_turns(&enc)?,
            });
            if let Some(m) = beads {
                report["chains"] = serde_json::to_value(census_chains(&enc, m)?).expect("serializable census");
            }
            emit(common.out.as_ref(), &to_json(&report))
        }
        Command::Budget { common, beads } => {
            require(common.format, &[Format::Json], "budget")?;
            let spec = load_lattice(&common)?;
            let budget = qubit_budget(&spec, beads)?;
            let report: Value = json!({
                "lattice": spec.name(),
                "per_turn": budget.per_turn,
                "beads": budget.beads,
                "turns": budget.turns(),
                "total": budget.total(),
            });
            emit(common.out.as_ref(), &to_json(&report))
        }
        Command::Verify { format, out } => {
            require(format, &[Format::Json], "verify")?;
            let reports = verify_all()?;
            eprint!("{}", render_table(&reports));
            let passed = reports.iter().all(|r| r.passed);
            emit(out.as_ref(), &to_json(&json!({ "passed": passed, "reports": reports })))?;
            if passed {
                Ok(())
            } else {
                Err(Failure::VerifyFailed)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            match &failure {
                Failure::Usage(msg) | Failure::Io(msg) => eprintln!("turnenc: {msg}"),
                Failure::Lib(Error::InvalidSpec(violations)) => {
                    eprintln!("turnenc: invalid lattice spec");
                    for v in violations {
                        eprintln!("  - {v}");
                    }
                }
                Failure::Lib(e) => eprintln!("turnenc: {e}"),
                Failure::VerifyFailed => eprintln!("turnenc: verification failed"),
            }
            ExitCode::from(failure.code())
        }
    }
}
