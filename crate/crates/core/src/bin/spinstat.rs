use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use spinstat::campaign::{render_table, run_campaign, CampaignConfig, CampaignReport, Format, Mode};
use spinstat::error::{Error, Result};

#[derive(Parser)]
#[command(name = "spinstat", version, about = "Spin-statistics verification campaigns")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Planar verdicts over λ × σ × θ.
    #[command(name = "verify-2d")]
    Verify2d(CampaignArgs),
    /// Sector verdicts over λ × σ × s.
    #[command(name = "verify-3d")]
    Verify3d(CampaignArgs),
    /// Condition triples of the planar and sector conditions.
    LemmaTables(CampaignArgs),
    /// Two-particle bound-state classification up to l_max.
    BoundStates(CampaignArgs),
    /// Exchange phases of n particles for rational κ.
    BraidPhases(CampaignArgs),
    /// Spectral against transported rotations on random cone states.
    FlowCrosscheck(CampaignArgs),
    /// Project a saved report onto CSV columns.
    RenderTable {
        #[arg(long)]
        report: PathBuf,
        #[arg(long, value_delimiter = ',')]
        columns: Option<Vec<String>>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct CampaignArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "json")]
    format: Format,
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    tolerance_spectral: Option<f64>,
    #[arg(long)]
    tolerance_flow: Option<f64>,
    /// Table columns for `--format csv`.
    #[arg(long, value_delimiter = ',')]
    columns: Option<Vec<String>>,
    #[arg(long, hide = true)]
    mutate_condition: Option<usize>,
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn campaign(mode: Mode, args: CampaignArgs) -> Result<i32> {
    let mut config = match &args.config {
        Some(path) => CampaignConfig::from_json(&fs::read_to_string(path)?)?,
        None => CampaignConfig::default(),
    };
    match config.mode {
        Some(m) if m != mode => {
            return Err(Error::Config(format!("config is for {m}, not {mode}")));
        }
        _ => config.mode = Some(mode),
    }
    config.workers = args.workers.or(config.workers);
    config.seed = args.seed.or(config.seed);
    config.tolerance_spectral = args.tolerance_spectral.or(config.tolerance_spectral);
    config.tolerance_flow = args.tolerance_flow.or(config.tolerance_flow);
    config.mutate_condition = args.mutate_condition;

    let report = run_campaign(&config)?;
    let text = match args.format {
        Format::Json => report.to_json()?,
        Format::Csv => render_table(&report, args.columns.as_deref())?,
    };
    emit(args.out.as_ref(), &text)?;
    let s = &report.summary;
    eprintln!(
        "{mode}: {} items, {} passed, {} failed ({} errors)",
        s.items, s.passed, s.failed, s.errors
    );
    Ok(report.exit_code())
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Verify2d(a) => campaign(Mode::Verify2d, a),
        Command::Verify3d(a) => campaign(Mode::Verify3d, a),
        Command::LemmaTables(a) => campaign(Mode::LemmaTables, a),
        Command::BoundStates(a) => campaign(Mode::BoundStates, a),
        Command::BraidPhases(a) => campaign(Mode::BraidPhases, a),
        Command::FlowCrosscheck(a) => campaign(Mode::FlowCrosscheck, a),
        Command::RenderTable { report, columns, out } => {
            let report = CampaignReport::from_json(&fs::read_to_string(report)?)?;
            emit(out.as_ref(), &render_table(&report, columns.as_deref())?)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
