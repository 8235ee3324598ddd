//! `rissim` — deterministic link-budget simulator for surface-assisted
//! mmWave indoor links.
//!
//! Exit codes: 0 success, 2 configuration error (bad flags, unreadable or
//! invalid config file, unknown/missing keys), 1 runtime error (model
//! range violations and the like).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ris_cli::config::{parse_config_file, ConfigError};
use ris_cli::figures::{
    hris_total_count, run_fig3, run_fig4, run_fig5, run_fig6, run_fig7, run_fig8, run_sweep,
    RunError,
};
use ris_cli::params::Params;
use ris_cli::table::{Cell, Table};
use ris_core::channel::{inh_gain_db, link_gains, uma_los_gain_db, ChannelSet};
use ris_core::optimize::{
    aris_count_bounds, brute_force_optimal_aris, hris_snr_given_active, lemma1_optimal_aris,
    optimal_pris_count, optimal_pris_snr, optimal_pris_snr_continuous,
};
use ris_core::ris::{align_phases, snr_closed_form, snr_vector_form, RisKind, RisScenario};
use ris_core::units::PowerLevel;

#[derive(Parser)]
#[command(
    name = "rissim",
    version,
    about = "Link-budget simulator and optimizer for surface-assisted mmWave indoor links"
)]
struct Cli {
    /// Key = value configuration file; defaults apply for missing keys.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Write the result here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Output encoding.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Seed for channel-phase synthesis (overrides the config key).
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print path-loss gains and link distances for the configured geometry.
    ChannelGain,
    /// Evaluate each configured scenario at one operating point, with a
    /// cross-check of the closed form against the cascade evaluation.
    Snr,
    /// Closed-form optimizers with brute-force cross-checks.
    Optimize {
        #[command(subcommand)]
        target: OptimizeTarget,
    },
    /// Sweep over d_st, p_dbw or n_active; requires the axis_* keys.
    Sweep,
    /// Re-run a packaged experiment and emit its data table.
    Reproduce {
        #[arg(value_enum)]
        figure: Figure,
    },
}

#[derive(Subcommand)]
enum OptimizeTarget {
    /// Passive element count from the budget.
    Pris,
    /// Active element count from the closed-form trade-off.
    Aris,
    /// Hybrid operating point for the configured active segment.
    Hris,
}

#[derive(Clone, Copy, ValueEnum)]
enum Figure {
    Fig3,
    Fig4,
    Fig5,
    Fig6,
    Fig7,
    Fig8,
}

enum CliError {
    Config(String),
    Runtime(String),
}

impl From<ConfigError> for CliError {
    fn from(e: ConfigError) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<ris_core::Error> for CliError {
    fn from(e: ris_core::Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}

impl From<RunError> for CliError {
    fn from(e: RunError) -> Self {
        match e {
            RunError::Config(c) => CliError::Config(c.to_string()),
            RunError::Model(m) => CliError::Runtime(m.to_string()),
        }
    }
}

fn load_params(cli: &Cli) -> Result<Params, CliError> {
    let mut params = match &cli.config {
        Some(path) => Params::from_pairs(&parse_config_file(path)?)?,
        None => Params::default(),
    };
    if let Some(seed) = cli.seed {
        params.seed = seed;
    }
    Ok(params)
}

fn channel_gain_table(params: &Params) -> Result<Table, CliError> {
    let path = params.path_params()?;
    let geom = params.geometry(params.d_st_m)?;
    let gains = link_gains(
        &path,
        &geom,
        &PowerLevel::from_dbw(params.p_dbw)?,
        &PowerLevel::from_dbm(params.noise_dbm)?,
    )?;
    let indoor = ris_core::channel::PathLossParams::new(params.f_c_ghz, 0.0, 0.0)?;
    let terminal = ris_core::channel::PathLossParams::new(params.f_c_ghz, params.g_r_dbi, 0.0)?;
    let mut t = Table::new(
        [
            "d_st_m",
            "d_st_prime_m",
            "d_tr_m",
            "d_rd_m",
            "uma_los_gain_db",
            "inh_tr_gain_db",
            "inh_rd_gain_db",
            "beta_st",
            "beta_tr",
            "beta_rd",
            "p_w",
            "noise_w",
        ]
        .iter()
        .map(|s| s.to_string())
        .collect(),
    );
    t.push_row(vec![
        Cell::Float(geom.d_st),
        Cell::Float(geom.d_st_prime),
        Cell::Float(geom.d_tr),
        Cell::Float(geom.d_rd),
        Cell::Float(uma_los_gain_db(&path, &geom)?),
        Cell::Float(inh_gain_db(&indoor, geom.d_tr)?),
        Cell::Float(inh_gain_db(&terminal, geom.d_rd)?),
        Cell::Float(gains.beta_st),
        Cell::Float(gains.beta_tr),
        Cell::Float(gains.beta_rd),
        Cell::Float(gains.p),
        Cell::Float(gains.delta_sq),
    ]);
    Ok(t)
}

fn snr_table(params: &Params) -> Result<Table, CliError> {
    let gains = params.gains(params.d_st_m, params.p_watts()?)?;
    let budget = params.total_budget(params.budgets_dbm[0], params.beta_max_sq_db)?;
    let mut t = Table::new(
        ["scenario", "n_elements", "n_active", "beta", "snr_closed", "snr_vector", "rate_bpshz"]
            .iter()
            .map(|s| s.to_string())
            .collect(),
    );
    for kind in &params.scenarios {
        let scenario = match kind {
            RisKind::Pris => RisScenario::pris(params.n_t, optimal_pris_count(&budget)?),
            RisKind::Aris => {
                let report = lemma1_optimal_aris(&gains, &budget, params.n_t)?;
                RisScenario::aris(params.n_t, report.best_count, report.best_beta)?
            }
            RisKind::Hris => {
                let n_h = match params.n_h {
                    Some(n) => n,
                    None => hris_total_count(params, params.budgets_dbm[0])?,
                };
                let op = hris_snr_given_active(&gains, &budget, params.n_t, n_h, params.n_ha)?;
                RisScenario::hris(params.n_t, n_h, params.n_ha, op.beta)?
            }
        };
        let closed = snr_closed_form(&scenario, &gains);
        let channels =
            ChannelSet::synthesize(params.n_t, scenario.refl_count(), &gains, params.seed)?;
        let phases = align_phases(&channels.h_tr, &channels.h_st, &channels.h_rd)?;
        let vector = snr_vector_form(&scenario, &phases, &channels, &gains)?;
        t.push_row(vec![
            Cell::Str(kind.to_string()),
            Cell::Int(scenario.refl_count() as u64),
            Cell::Int(scenario.active_count() as u64),
            Cell::Float(scenario.beta()),
            Cell::Float(closed),
            Cell::Float(vector),
            Cell::Float((1.0 + closed).log2()),
        ]);
    }
    Ok(t)
}

fn optimize_table(params: &Params, target: &OptimizeTarget) -> Result<Table, CliError> {
    let gains = params.gains(params.d_st_m, params.p_watts()?)?;
    let budget_dbm = params.budgets_dbm[0];
    let budget = params.total_budget(budget_dbm, params.beta_max_sq_db)?;
    let table = match target {
        OptimizeTarget::Pris => {
            let count = optimal_pris_count(&budget)?;
            let snr = optimal_pris_snr(&gains, &budget, params.n_t)?;
            let snr_cont = optimal_pris_snr_continuous(&gains, &budget, params.n_t)?;
            let mut t = Table::new(
                ["budget_dbm", "n_p_optimal", "snr", "snr_continuous", "rate_bpshz"]
                    .iter()
                    .map(|s| s.to_string())
                    .collect(),
            );
            t.push_row(vec![
                Cell::Float(budget_dbm),
                Cell::Int(count as u64),
                Cell::Float(snr),
                Cell::Float(snr_cont),
                Cell::Float((1.0 + snr).log2()),
            ]);
            t
        }
        OptimizeTarget::Aris => {
            let (n_a1, n_a2) = aris_count_bounds(&gains, &budget)?;
            let report = lemma1_optimal_aris(&gains, &budget, params.n_t)?;
            let brute = brute_force_optimal_aris(&gains, &budget, params.n_t)?;
            let mut t = Table::new(
                [
                    "budget_dbm",
                    "n_a1",
                    "n_a2",
                    "best_count",
                    "best_beta",
                    "branch",
                    "best_snr",
                    "rate_bpshz",
                    "brute_force_count",
                    "brute_force_snr",
                ]
                .iter()
                .map(|s| s.to_string())
                .collect(),
            );
            t.push_row(vec![
                Cell::Float(budget_dbm),
                Cell::Float(n_a1),
                Cell::Float(n_a2),
                Cell::Int(report.best_count as u64),
                Cell::Float(report.best_beta),
                Cell::Str(report.branch.to_string()),
                Cell::Float(report.best_snr),
                Cell::Float((1.0 + report.best_snr).log2()),
                Cell::Int(brute.best_count as u64),
                Cell::Float(brute.best_snr),
            ]);
            t
        }
        OptimizeTarget::Hris => {
            let n_h = match params.n_h {
                Some(n) => n,
                None => hris_total_count(params, budget_dbm)?,
            };
            let op = hris_snr_given_active(&gains, &budget, params.n_t, n_h, params.n_ha)?;
            let mut t = Table::new(
                ["budget_dbm", "n_h", "n_ha", "beta", "branch", "snr", "rate_bpshz"]
                    .iter()
                    .map(|s| s.to_string())
                    .collect(),
            );
            t.push_row(vec![
                Cell::Float(budget_dbm),
                Cell::Int(n_h as u64),
                Cell::Int(params.n_ha as u64),
                Cell::Float(op.beta),
                Cell::Str(op.branch.to_string()),
                Cell::Float(op.snr),
                Cell::Float((1.0 + op.snr).log2()),
            ]);
            t
        }
    };
    Ok(table)
}

fn emit(table: &Table, cli: &Cli) -> Result<(), CliError> {
    let text = match cli.format {
        Format::Csv => table.to_csv_string(),
        Format::Json => table.to_json_string(),
    };
    match &cli.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Runtime(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let params = load_params(cli)?;
    // Validated here so every scenario consumer can index into it.
    if params.budgets_dbm.is_empty() {
        return Err(CliError::Config("budgets_dbm must not be empty".into()));
    }
    let table = match &cli.command {
        Command::ChannelGain => channel_gain_table(&params)?,
        Command::Snr => snr_table(&params)?,
        Command::Optimize { target } => optimize_table(&params, target)?,
        Command::Sweep => run_sweep(&params)?,
        Command::Reproduce { figure } => match figure {
            Figure::Fig3 => run_fig3(&params)?,
            Figure::Fig4 => run_fig4(&params)?,
            Figure::Fig5 => run_fig5(&params)?,
            Figure::Fig6 => run_fig6(&params)?,
            Figure::Fig7 => run_fig7(&params)?,
            Figure::Fig8 => run_fig8(&params)?,
        },
    };
    emit(&table, cli)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Config(msg)) => {
            eprintln!("rissim: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Runtime(msg)) => {
            eprintln!("rissim: {msg}");
            ExitCode::from(1)
        }
    }
}
