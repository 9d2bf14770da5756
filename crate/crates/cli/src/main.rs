use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use bicrossed::config::{self, Config, ConfigError};
use bicrossed::report::{self, Command, Report};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "bicrossed",
    version,
    about = "Exact bicrossed-product Hopf algebras: axioms, simple comodules, fusion rules"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// Bundled preset, e.g. h_z_z2, h_z_z2n:3, z_poly_zp:3, drinfeld:S3, twisted_klein.
    #[arg(long, global = true)]
    preset: Option<String>,

    /// Ball radius in F; defaults to the config's `radius`.
    #[arg(long, global = true)]
    radius: Option<u32>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct Source {
    /// Config file (TOML). Either this or --preset.
    config: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Matched pair, cocycle conditions and every Hopf axiom on the ball.
    Verify(Source),
    /// Simple comodules over the orbits meeting the ball, with dimension audit.
    Simples(Source),
    /// Irreducible character of the simple `<f>,<chi-index>`.
    Character {
        #[arg(allow_hyphen_values = true)]
        f: String,
        chi_index: usize,
        #[command(flatten)]
        source: Source,
    },
    /// Decomposes the product of two simples, given as `f,i`.
    Fuse {
        #[arg(allow_hyphen_values = true)]
        left: String,
        #[arg(allow_hyphen_values = true)]
        right: String,
        #[command(flatten)]
        source: Source,
    },
    /// Dual of a simple `f,i`.
    Dual {
        #[arg(allow_hyphen_values = true)]
        id: String,
        #[command(flatten)]
        source: Source,
    },
    /// Frobenius–Schur indicators of the simples over the ball.
    Indicators(Source),
    /// All products of simples over the ball, duals, indicators, based-ring checks.
    FusionTable(Source),
    /// Unitarity of the cocycles and the compact quantum group structure.
    CqgCheck(Source),
}

impl Cmd {
    fn name(&self) -> &'static str {
        match self {
            Cmd::Verify(_) => "verify",
            Cmd::Simples(_) => "simples",
            Cmd::Character { .. } => "character",
            Cmd::Fuse { .. } => "fuse",
            Cmd::Dual { .. } => "dual",
            Cmd::Indicators(_) => "indicators",
            Cmd::FusionTable(_) => "fusion-table",
            Cmd::CqgCheck(_) => "cqg-check",
        }
    }

    fn source(&self) -> &Source {
        match self {
            Cmd::Verify(s)
            | Cmd::Simples(s)
            | Cmd::Indicators(s)
            | Cmd::FusionTable(s)
            | Cmd::CqgCheck(s) => s,
            Cmd::Character { source, .. } | Cmd::Fuse { source, .. } | Cmd::Dual { source, .. } => {
                source
            }
        }
    }
}

fn load(cli: &Cli) -> Result<Config, ConfigError> {
    let arg_error = |message: String| ConfigError::Semantic {
        field: "arguments".into(),
        message,
    };
    match (&cli.preset, &cli.command.source().config) {
        (Some(p), None) => config::load_preset(p),
        (None, Some(path)) => config::parse_config_file(path),
        (Some(_), Some(_)) => Err(arg_error(
            "give either a config path or --preset, not both".into(),
        )),
        (None, None) => Err(arg_error("a config path or --preset is required".into())),
    }
}

fn command(cli: &Cli, cfg: &Config) -> Result<Command, String> {
    let id = |s: &str| report::parse_simple_id(cfg, s);
    Ok(match &cli.command {
        Cmd::Verify(_) => Command::Verify,
        Cmd::Simples(_) => Command::Simples,
        Cmd::Character { f, chi_index, .. } => Command::Character(id(&format!("{f},{chi_index}"))?),
        Cmd::Fuse { left, right, .. } => Command::Fuse(id(left)?, id(right)?),
        Cmd::Dual { id: d, .. } => Command::Dual(id(d)?),
        Cmd::Indicators(_) => Command::Indicators,
        Cmd::FusionTable(_) => Command::FusionTable,
        Cmd::CqgCheck(_) => Command::CqgCheck,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = cli.command.name();
    let report = match load(&cli) {
        Err(e) => Report::invalid_config(name, &e),
        Ok(cfg) => match command(&cli, &cfg) {
            Ok(cmd) => report::run(&cmd, &cfg, cli.radius),
            Err(message) => Report::invalid_config(
                name,
                &ConfigError::Semantic {
                    field: "arguments".into(),
                    message,
                },
            ),
        },
    };
    let out = match cli.format {
        Format::Json => report.to_json() + "\n",
        Format::Text => report.to_text(),
    };
    // a closed pipe (e.g. `| head`) is not an error of the computation
    let _ = std::io::stdout().lock().write_all(out.as_bytes());
    ExitCode::from(report.exit_code() as u8)
}
