//! `stabwall`: exact stability-wall computations for one-dimensional classes
//! on P^3. See the repository README for the full surface.

use clap::{Args, Parser, Subcommand};
use stabwall_cli::config::{self, Config};
use stabwall_cli::jobs::{
    self, build_params, parse_class_flag, parse_dimvec_flag, parse_rational_flag,
    parse_window_flag, Command as JobCommand, JobSpec, Preset,
};
use stabwall_cli::{CliError, OutputFormat, EXIT_INPUT, EXIT_INTERNAL};
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "stabwall",
    about = "Stability walls, chambers, and quiver-stability certificates for one-dimensional classes on P^3",
    version
)]
struct Cli {
    /// Optional key=value config file; explicit flags win.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Args, Default)]
struct OutputArgs {
    /// Write a JSON report here.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Write a CSV sample table here.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Write an SVG drawing here.
    #[arg(long)]
    svg: Option<PathBuf>,
}

impl OutputArgs {
    fn outputs(&self) -> Vec<(PathBuf, OutputFormat)> {
        let mut out = Vec::new();
        if let Some(p) = &self.json {
            out.push((p.clone(), OutputFormat::Json));
        }
        if let Some(p) = &self.csv {
            out.push((p.clone(), OutputFormat::Csv));
        }
        if let Some(p) = &self.svg {
            out.push((p.clone(), OutputFormat::Svg));
        }
        out
    }
}

#[derive(Subcommand)]
enum CliCommand {
    /// Hilbert polynomial of a K-class.
    Hilbert {
        /// K-class as four comma-separated rationals, e.g. 0,0,3,-5
        #[arg(long, allow_hyphen_values = true)]
        v: Option<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Central charge and slope of a class under a stability family.
    Charge {
        /// euler | tilt1 | tilt2 | doubletilt | tu-plane
        #[arg(long)]
        family: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        t: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        u: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        #[arg(long = "alpha-sq", allow_hyphen_values = true)]
        alpha_sq: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        beta: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        s: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        v: Option<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Numerical wall of a one-dimensional class defined by an actor class.
    Wall {
        /// Parent class (ch0 = ch1 = 0, ch2 > 0), e.g. 0,0,3,-5
        #[arg(long, allow_hyphen_values = true)]
        v: Option<String>,
        /// Actor class, e.g. 1,0,0,0
        #[arg(long, allow_hyphen_values = true)]
        a: Option<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Candidate-subvector wall scan for a dimension vector.
    Scan {
        /// Parent dimension vector a3,a2,a1,a0, e.g. 1,6,9,4
        #[arg(long)]
        parent: Option<String>,
        /// Heart index n of A_n.
        #[arg(long)]
        heart: Option<String>,
        /// Window lo,hi meaning (lo, hi], e.g. 0,1
        #[arg(long, allow_hyphen_values = true)]
        window: Option<String>,
        /// Require candidates to contain this dimension vector (a3,a2,a1,a0).
        #[arg(long)]
        contains: Option<String>,
        /// JSON file with an array of subvectors restricting the scan.
        #[arg(long)]
        subs: Option<PathBuf>,
        /// Also report stable sub-intervals.
        #[arg(long)]
        stable: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Quiver-region membership of a (t, u) point.
    Region {
        #[arg(long, allow_hyphen_values = true)]
        t: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        u: Option<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Derived dual of a class and/or reversal of a dimension vector.
    Dual {
        #[arg(long, allow_hyphen_values = true)]
        v: Option<String>,
        #[arg(long)]
        dimvec: Option<String>,
        /// Heart index for --dimvec (default 1).
        #[arg(long)]
        heart: Option<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// King theta-stability check of 2x3 linear form matrices.
    Kronecker {
        #[command(subcommand)]
        action: KroneckerAction,
    },
    /// Reproductions of the wall diagrams.
    Figure {
        /// cubic | dual-cubic | quartic | quiver
        #[arg(long)]
        preset: Option<String>,
        /// SVG output path.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum KroneckerAction {
    /// Check matrices from a JSON file (one matrix object or an array).
    Check {
        file: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn main() {
    let cli = Cli::parse();
    configure_threads();
    let config = match &cli.config {
        Some(path) => match config::load(path) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("input error: {}", e);
                std::process::exit(EXIT_INPUT);
            }
        },
        None => Config::new(),
    };
    match build_job(cli.command, &config).and_then(|job| jobs::run(&job)) {
        Ok(stdout) => {
            print!("{}", stdout);
        }
        Err(CliError::Input(m)) => {
            eprintln!("input error: {}", m);
            std::process::exit(EXIT_INPUT);
        }
        Err(CliError::Internal(m)) => {
            eprintln!("internal error: {}", m);
            std::process::exit(EXIT_INTERNAL);
        }
    }
}

/// STABWALL_THREADS caps the rayon pool used by the scans.
fn configure_threads() {
    if let Ok(raw) = std::env::var("STABWALL_THREADS") {
        if let Ok(n) = raw.parse::<usize>() {
            if n >= 1 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
}

fn require(flag: Option<String>, config: &Config, key: &str) -> Result<String, CliError> {
    let mut slot = flag;
    config::fill(&mut slot, config, key);
    slot.ok_or_else(|| CliError::Input(format!("{}: missing required flag", key)))
}

fn optional(flag: Option<String>, config: &Config, key: &str) -> Option<String> {
    let mut slot = flag;
    config::fill(&mut slot, config, key);
    slot
}

fn build_job(command: CliCommand, config: &Config) -> Result<JobSpec, CliError> {
    match command {
        CliCommand::Hilbert { v, output } => {
            let v = parse_class_flag(&require(v, config, "v")?, "v")?;
            Ok(JobSpec { command: JobCommand::Hilbert { v }, outputs: output.outputs() })
        }
        CliCommand::Charge { family, t, u, alpha, alpha_sq, beta, s, v, output } => {
            let family = require(family, config, "family")?;
            let t = optional(t, config, "t");
            let u = optional(u, config, "u");
            let alpha = optional(alpha, config, "alpha");
            let alpha_sq = optional(alpha_sq, config, "alpha-sq");
            let beta = optional(beta, config, "beta");
            let s = optional(s, config, "s");
            let params = build_params(
                &family,
                t.as_deref(),
                u.as_deref(),
                alpha.as_deref(),
                alpha_sq.as_deref(),
                beta.as_deref(),
                s.as_deref(),
            )?;
            let v = parse_class_flag(&require(v, config, "v")?, "v")?;
            Ok(JobSpec { command: JobCommand::Charge { params, v }, outputs: output.outputs() })
        }
        CliCommand::Wall { v, a, output } => {
            let v = parse_class_flag(&require(v, config, "v")?, "v")?;
            let a = parse_class_flag(&require(a, config, "a")?, "a")?;
            Ok(JobSpec { command: JobCommand::Wall { v, a }, outputs: output.outputs() })
        }
        CliCommand::Scan { parent, heart, window, contains, subs, stable, output } => {
            let heart: i64 = require(heart, config, "heart")?
                .parse()
                .map_err(|_| CliError::Input("heart: expected an integer".into()))?;
            let parent = parse_dimvec_flag(&require(parent, config, "parent")?, heart, "parent")?;
            let window = parse_window_flag(&require(window, config, "window")?, "window")?;
            let contains = match optional(contains, config, "contains") {
                Some(raw) => Some(parse_dimvec_flag(&raw, heart, "contains")?),
                None => None,
            };
            let subs = match subs {
                Some(path) => Some(load_subs(&path, heart)?),
                None => None,
            };
            Ok(JobSpec {
                command: JobCommand::Scan { parent, window, contains, subs, stable },
                outputs: output.outputs(),
            })
        }
        CliCommand::Region { t, u, output } => {
            let t = parse_rational_flag(&require(t, config, "t")?, "t")?;
            let u = parse_rational_flag(&require(u, config, "u")?, "u")?;
            Ok(JobSpec { command: JobCommand::Region { t, u }, outputs: output.outputs() })
        }
        CliCommand::Dual { v, dimvec, heart, output } => {
            let v = match optional(v, config, "v") {
                Some(raw) => Some(parse_class_flag(&raw, "v")?),
                None => None,
            };
            let heart: i64 = optional(heart, config, "heart")
                .unwrap_or_else(|| "1".to_string())
                .parse()
                .map_err(|_| CliError::Input("heart: expected an integer".into()))?;
            let dimvec = match optional(dimvec, config, "dimvec") {
                Some(raw) => Some(parse_dimvec_flag(&raw, heart, "dimvec")?),
                None => None,
            };
            Ok(JobSpec { command: JobCommand::Dual { v, dimvec }, outputs: output.outputs() })
        }
        CliCommand::Kronecker { action } => match action {
            KroneckerAction::Check { file, output } => {
                let text = std::fs::read_to_string(&file)
                    .map_err(|e| CliError::Input(format!("{}: {}", file.display(), e)))?;
                let matrices = parse_matrices(&text)
                    .map_err(|e| CliError::Input(format!("{}: {}", file.display(), e)))?;
                Ok(JobSpec {
                    command: JobCommand::Kronecker {
                        matrices,
                        source: file.display().to_string(),
                    },
                    outputs: output.outputs(),
                })
            }
        },
        CliCommand::Figure { preset, out } => {
            let preset = Preset::parse(&require(preset, config, "preset")?)?;
            let mut out_flag = out.map(|p| p.display().to_string());
            config::fill(&mut out_flag, config, "out");
            let path = out_flag
                .ok_or_else(|| CliError::Input("out: missing required flag".into()))?;
            let outputs = vec![(PathBuf::from(path), OutputFormat::Svg)];
            Ok(JobSpec { command: JobCommand::Figure { preset }, outputs })
        }
    }
}

fn parse_matrices(text: &str) -> Result<Vec<stabwall::kronecker::FormMatrix>, String> {
    // accept a single object or an array
    match serde_json::from_str::<Vec<stabwall::kronecker::FormMatrix>>(text) {
        Ok(list) => Ok(list),
        Err(_) => serde_json::from_str::<stabwall::kronecker::FormMatrix>(text)
            .map(|m| vec![m])
            .map_err(|e| e.to_string()),
    }
}

fn load_subs(path: &PathBuf, heart: i64) -> Result<Vec<stabwall::DimVector>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("subs {}: {}", path.display(), e)))?;
    let raw: Vec<[u32; 4]> = serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("subs {}: {}", path.display(), e)))?;
    Ok(raw
        .into_iter()
        .map(|entries| stabwall::DimVector::new(heart, entries))
        .collect())
}
