use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use phasekit::config::{ConfigPatch, ExperimentConfig, OutputFormat};
use phasekit::experiments::run_experiment;
use phasekit::json::{arcs_to_pairs, parse_arcs, parse_family};
use phasekit::report::write_reports;
use phasekit::RunError;

#[derive(Parser)]
#[command(
    name = "phasekit",
    version,
    about = "Reproducible experiments on covariant phase observables"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build one effect operator; export its spectrum and entries
    Effect(RunArgs),
    /// Closed-form single-pair spectra against the dense eigensolver
    Spectrum(RunArgs),
    /// Shift-covariance residuals across the family panel
    Covariance(RunArgs),
    /// Commutator norms, commutant estimates, and the witness search
    Commute(RunArgs),
    /// Number-phase infima: probe values, random states, mixture floors
    Complementarity(RunArgs),
    /// Phase densities and moment coefficients against closed forms
    Density(RunArgs),
    /// Minimum phase variance of geometric states
    Variance(RunArgs),
    /// Number-phase uncertainty products of coherent states
    Uncertainty(RunArgs),
    /// Effect norms along a dimension ladder
    #[command(name = "norm-scan")]
    NormScan(RunArgs),
    /// Number head mass against phase concentration for geometric states
    #[command(name = "value-scan")]
    ValueScan(RunArgs),
    /// Structure flags of one family at a fixed dimension
    Structure(RunArgs),
}

impl Cmd {
    fn split(&self) -> (&'static str, &RunArgs) {
        match self {
            Cmd::Effect(a) => ("effect", a),
            Cmd::Spectrum(a) => ("spectrum", a),
            Cmd::Covariance(a) => ("covariance", a),
            Cmd::Commute(a) => ("commute", a),
            Cmd::Complementarity(a) => ("complementarity", a),
            Cmd::Density(a) => ("density", a),
            Cmd::Variance(a) => ("variance", a),
            Cmd::Uncertainty(a) => ("uncertainty", a),
            Cmd::NormScan(a) => ("norm-scan", a),
            Cmd::ValueScan(a) => ("value-scan", a),
            Cmd::Structure(a) => ("structure", a),
        }
    }
}

#[derive(Args)]
struct RunArgs {
    /// Family name (canonical, trivial, ground_state) or JSON descriptor
    #[arg(long)]
    family: Option<String>,
    /// Arc set: JSON array of [a, b) endpoint pairs in radians
    #[arg(long)]
    arcs: Option<String>,
    /// Truncation dimension (floor or cap, depending on the experiment)
    #[arg(long)]
    dim: Option<usize>,
    /// Density grid size
    #[arg(long)]
    grid: Option<usize>,
    /// Output directory (defaults to the current directory)
    #[arg(long)]
    out: Option<String>,
    /// Seed for every random draw in the run
    #[arg(long)]
    seed: Option<u64>,
    /// Table format
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
    /// JSON config file; values in the file override flags
    #[arg(long)]
    config: Option<PathBuf>,
    /// Dimension ladder for scans, comma separated
    #[arg(long, value_delimiter = ',')]
    dims: Option<Vec<usize>>,
    /// Geometric amplitudes, comma separated
    #[arg(long, value_delimiter = ',')]
    rs: Option<Vec<f64>>,
    /// Coherent amplitudes, comma separated
    #[arg(long, value_delimiter = ',')]
    zs: Option<Vec<f64>>,
    /// Number head cutoff for value scans
    #[arg(long)]
    p: Option<usize>,
    /// Half width of the phase concentration window
    #[arg(long)]
    delta: Option<f64>,
    /// Mixture weights, comma separated
    #[arg(long, value_delimiter = ',')]
    epsilons: Option<Vec<f64>>,
    /// Random trial count
    #[arg(long)]
    trials: Option<usize>,
    /// Headline verdict tolerance
    #[arg(long)]
    tol: Option<f64>,
    /// Evaluation block for commutant estimates
    #[arg(long)]
    d_eval: Option<usize>,
    /// Construction dimension for commutant estimates and state batteries
    #[arg(long)]
    d_big: Option<usize>,
}

impl RunArgs {
    fn to_patch(&self) -> Result<ConfigPatch, RunError> {
        let family = self.family.as_deref().map(parse_family).transpose()?;
        let arcs = self
            .arcs
            .as_deref()
            .map(parse_arcs)
            .transpose()?
            .map(|set| arcs_to_pairs(&set));
        Ok(ConfigPatch {
            experiment: None,
            family,
            arcs,
            dim: self.dim,
            grid: self.grid,
            dims: self.dims.clone(),
            rs: self.rs.clone(),
            zs: self.zs.clone(),
            p: self.p,
            delta: self.delta,
            epsilons: self.epsilons.clone(),
            trials: self.trials,
            tol: self.tol,
            d_eval: self.d_eval,
            d_big: self.d_big,
            seed: self.seed,
            format: self.format,
            out: self.out.clone(),
        })
    }
}

fn main() {
    std::process::exit(real_main());
}

fn real_main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    0
                }
                _ => {
                    eprint!("{e}");
                    3
                }
            };
        }
    };
    match execute(&cli) {
        Ok(all_pass) => {
            if all_pass {
                0
            } else {
                2
            }
        }
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    }
}

fn execute(cli: &Cli) -> Result<bool, RunError> {
    let (name, args) = cli.cmd.split();
    let flags = args.to_patch()?;
    let file_patch = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| RunError::Config(format!("config file {}: {e}", path.display())))?;
            Some(
                serde_json::from_str::<ConfigPatch>(&text)
                    .map_err(|e| RunError::Config(format!("config file {}: {e}", path.display())))?,
            )
        }
        None => None,
    };
    let cfg = ExperimentConfig::resolve(name, &flags, file_patch.as_ref())?;
    let out_dir = PathBuf::from(cfg.out.clone().unwrap_or_else(|| ".".to_string()));

    let start = Instant::now();
    let output = run_experiment(&cfg)?;
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    let files = write_reports(&cfg, &output, &out_dir, wall_ms)?;

    let mut stdout = std::io::stdout().lock();
    for verdict in &output.verdicts {
        let _ = writeln!(stdout, "{}", verdict.line());
    }
    for file in &files {
        let _ = writeln!(stdout, "wrote {}", file.display());
    }
    Ok(output.all_pass())
}
