//! Packaged experiments and the generic sweep engine.
//!
//! Each runner produces a [`Table`] whose first column is the axis
//! variable followed by one column group per scenario series. The
//! packaged axis defaults are 10-30 m in 1 m steps for distance sweeps,
//! 0-30 dBW in 1 dB steps for transmit-power sweeps, and every feasible
//! count for the active-element sweep; `axis_start`/`axis_stop`/
//! `axis_step` override them.

use crate::config::ConfigError;
use crate::engine::{hris_fill_count, PointContext, ScenarioRecord, RECORD_FIELDS};
use crate::params::{AxisVar, Params};
use crate::table::{Cell, Table};
use ris_core::ris::RisKind;
use ris_core::units::PowerLevel;

/// Runner failures: bad axis configuration maps to exit 2, model errors
/// during evaluation map to exit 1.
#[derive(Debug)]
pub enum RunError {
    Config(ConfigError),
    Model(ris_core::Error),
}

impl std::fmt::Display for RunError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RunError::Config(e) => write!(f, "{e}"),
            RunError::Model(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for RunError {}

impl From<ConfigError> for RunError {
    fn from(e: ConfigError) -> Self {
        RunError::Config(e)
    }
}

impl From<ris_core::Error> for RunError {
    fn from(e: ris_core::Error) -> Self {
        RunError::Model(e)
    }
}

type RunResult<T> = Result<T, RunError>;

/// Inclusive numeric range with a positive step.
pub fn axis_range(start: f64, stop: f64, step: f64) -> Result<Vec<f64>, ConfigError> {
    if !(start.is_finite() && stop.is_finite() && step.is_finite()) || step <= 0.0 || stop < start {
        return Err(ConfigError(format!(
            "invalid axis range: start {start}, stop {stop}, step {step}"
        )));
    }
    let n = ((stop - start) / step + 1e-9).floor() as usize;
    Ok((0..=n).map(|i| start + i as f64 * step).collect())
}

fn configured_axis(params: &Params, default: (f64, f64, f64)) -> Result<Vec<f64>, ConfigError> {
    match (params.axis_start, params.axis_stop, params.axis_step) {
        (Some(a), Some(b), Some(s)) => axis_range(a, b, s),
        (None, None, None) => axis_range(default.0, default.1, default.2),
        _ => Err(ConfigError(
            "axis override needs all of axis_start, axis_stop, axis_step".into(),
        )),
    }
}

fn require_axis_key(params: &Params) -> Result<(f64, f64, f64), ConfigError> {
    let a = params.axis_start.ok_or(ConfigError("missing required config key `axis_start`".into()))?;
    let b = params.axis_stop.ok_or(ConfigError("missing required config key `axis_stop`".into()))?;
    let s = params.axis_step.ok_or(ConfigError("missing required config key `axis_step`".into()))?;
    Ok((a, b, s))
}

fn dbm_label(dbm: f64) -> String {
    if dbm == dbm.floor() {
        format!("{}dbm", dbm as i64)
    } else {
        format!("{}dbm", dbm)
    }
}

fn db_label(db: f64) -> String {
    if db == db.floor() {
        format!("{}db", db as i64)
    } else {
        format!("{}db", db)
    }
}

fn series_header(axis_name: &str, labels: &[String]) -> Vec<String> {
    let mut header = vec![axis_name.to_string()];
    for label in labels {
        for field in RECORD_FIELDS {
            header.push(format!("{label}_{field}"));
        }
    }
    header
}

fn record_cells(rec: &ScenarioRecord) -> Vec<Cell> {
    vec![
        Cell::Float(rec.snr),
        Cell::Float(rec.rate_bpshz),
        Cell::Float(rec.total_power_w),
        Cell::Float(rec.ee_bpshz_per_w),
        Cell::Float(rec.pi),
        Cell::Float(rec.beta),
        Cell::Int(rec.n_elements as u64),
        Cell::Int(rec.n_active as u64),
        Cell::Str(rec.branch.clone()),
    ]
}

/// Outdoor channel gain versus distance.
pub fn run_fig3(params: &Params) -> RunResult<Table> {
    let axis = configured_axis(params, (10.0, 30.0, 1.0))?;
    let path = params.path_params()?;
    let mut table = Table::new(vec!["d_st_m".into(), "uma_los_gain_db".into()]);
    for &d in &axis {
        let geom = params.geometry(d)?;
        let gain = ris_core::channel::uma_los_gain_db(&path, &geom)?;
        table.push_row(vec![Cell::Float(d), Cell::Float(gain)]);
    }
    Ok(table)
}

/// Scenario records for all configured budgets at one operating point.
fn budget_series(
    params: &Params,
    ctx: &PointContext<'_>,
) -> RunResult<Vec<ScenarioRecord>> {
    let mut records = Vec::new();
    for &budget_dbm in &params.budgets_dbm {
        let budget = params.total_budget(budget_dbm, params.beta_max_sq_db)?;
        for kind in &params.scenarios {
            let label = format!("{kind}_{}", dbm_label(budget_dbm));
            records.push(match kind {
                RisKind::Pris => ctx.eval_pris(label, &budget, None)?,
                RisKind::Aris => ctx.eval_aris(label, &budget, None)?,
                RisKind::Hris => ctx.eval_hris(label, &budget, params.n_ha, None)?,
            });
        }
    }
    Ok(records)
}

fn budget_series_labels(params: &Params) -> Vec<String> {
    let mut labels = Vec::new();
    for &budget_dbm in &params.budgets_dbm {
        for kind in &params.scenarios {
            labels.push(format!("{kind}_{}", dbm_label(budget_dbm)));
        }
    }
    labels
}

/// Achievable rates (and the rest of the metric stack) versus distance,
/// with element counts derived from the budgets.
pub fn run_fig4(params: &Params) -> RunResult<Table> {
    let axis = configured_axis(params, (10.0, 30.0, 1.0))?;
    let p_watts = params.p_watts()?;
    let mut table = Table::new(series_header("d_st_m", &budget_series_labels(params)));
    for &d in &axis {
        let ctx = PointContext { params, gains: params.gains(d, p_watts)? };
        let mut row = vec![Cell::Float(d)];
        for rec in budget_series(params, &ctx)? {
            row.extend(record_cells(&rec));
        }
        table.push_row(row);
    }
    Ok(table)
}

/// Rates versus transmit power at fixed element counts, with the
/// amplification budgets handed over directly.
pub fn run_fig5(params: &Params) -> RunResult<Table> {
    let axis = configured_axis(params, (0.0, 30.0, 1.0))?;
    let n_p = params.n_p.unwrap_or(1000);
    let n_a = params.n_a.unwrap_or(256);
    let n_h = params.n_h.unwrap_or(1000);

    let mut labels = Vec::new();
    if params.scenarios.contains(&RisKind::Pris) {
        labels.push("pris".to_string());
    }
    if params.scenarios.contains(&RisKind::Aris) {
        for &pa in &params.p_a_dbm {
            labels.push(format!("aris_pa{}", dbm_label(pa)));
        }
    }
    if params.scenarios.contains(&RisKind::Hris) {
        for &ph in &params.p_h_dbm {
            labels.push(format!("hris_ph{}", dbm_label(ph)));
        }
    }

    let mut table = Table::new(series_header("p_dbw", &labels));
    for &p_dbw in &axis {
        let p_watts = PowerLevel::from_dbw(p_dbw)?.watts();
        let ctx = PointContext { params, gains: params.gains(params.d_st_m, p_watts)? };
        let mut row = vec![Cell::Float(p_dbw)];
        if params.scenarios.contains(&RisKind::Pris) {
            let budget = params.direct_budget(0.0)?;
            row.extend(record_cells(&ctx.eval_pris("pris".into(), &budget, Some(n_p))?));
        }
        if params.scenarios.contains(&RisKind::Aris) {
            for &pa in &params.p_a_dbm {
                let budget = params.direct_budget(pa)?;
                let label = format!("aris_pa{}", dbm_label(pa));
                row.extend(record_cells(&ctx.eval_aris(label, &budget, Some(n_a))?));
            }
        }
        if params.scenarios.contains(&RisKind::Hris) {
            for &ph in &params.p_h_dbm {
                let budget = params.direct_budget(ph)?;
                let label = format!("hris_ph{}", dbm_label(ph));
                row.extend(record_cells(&ctx.eval_hris(label, &budget, params.n_ha, Some(n_h))?));
            }
        }
        table.push_row(row);
    }
    Ok(table)
}

/// Rates versus the number of active elements under the first configured
/// budget, for every configured amplitude cap, with the passive surface
/// as a constant reference.
pub fn run_fig6(params: &Params) -> RunResult<Table> {
    let budget_dbm = params.budgets_dbm[0];
    let p_watts = params.p_watts()?;
    let gains = params.gains(params.d_st_m, p_watts)?;
    let ctx = PointContext { params, gains };

    let reference_budget = params.total_budget(budget_dbm, params.beta_max_sq_db)?;
    let n_max =
        (reference_budget.budget_watts / (reference_budget.p_e + reference_budget.p_dc)).floor();
    let axis = configured_axis(params, (1.0, n_max, 1.0))?;

    let mut labels = Vec::new();
    for &bm in &params.beta_max_sq_db_list {
        if params.scenarios.contains(&RisKind::Aris) {
            labels.push(format!("aris_bmax{}", db_label(bm)));
        }
        if params.scenarios.contains(&RisKind::Hris) {
            labels.push(format!("hris_bmax{}", db_label(bm)));
        }
    }
    if params.scenarios.contains(&RisKind::Pris) {
        labels.push("pris".to_string());
    }

    let mut table = Table::new(series_header("n_active", &labels));
    for &n in &axis {
        let n_active = n.round() as usize;
        let mut row = vec![Cell::Float(n)];
        for &bm in &params.beta_max_sq_db_list {
            let budget = params.total_budget(budget_dbm, bm)?;
            if params.scenarios.contains(&RisKind::Aris) {
                let label = format!("aris_bmax{}", db_label(bm));
                row.extend(record_cells(&ctx.eval_aris(label, &budget, Some(n_active))?));
            }
            if params.scenarios.contains(&RisKind::Hris) {
                let label = format!("hris_bmax{}", db_label(bm));
                row.extend(record_cells(&ctx.eval_hris(label, &budget, n_active, None)?));
            }
        }
        if params.scenarios.contains(&RisKind::Pris) {
            row.extend(record_cells(&ctx.eval_pris("pris".into(), &reference_budget, None)?));
        }
        table.push_row(row);
    }
    Ok(table)
}

fn power_axis_table(params: &Params) -> RunResult<Table> {
    let axis = configured_axis(params, (0.0, 30.0, 1.0))?;
    let mut table = Table::new(series_header("p_dbw", &budget_series_labels(params)));
    for &p_dbw in &axis {
        let p_watts = PowerLevel::from_dbw(p_dbw)?.watts();
        let ctx = PointContext { params, gains: params.gains(params.d_st_m, p_watts)? };
        let mut row = vec![Cell::Float(p_dbw)];
        for rec in budget_series(params, &ctx)? {
            row.extend(record_cells(&rec));
        }
        table.push_row(row);
    }
    Ok(table)
}

/// Energy efficiency versus transmit power for all budgets and scenarios.
pub fn run_fig7(params: &Params) -> RunResult<Table> {
    power_axis_table(params)
}

/// Performance index versus transmit power; same sweep as the energy
/// efficiency experiment, read through the `_pi` columns.
pub fn run_fig8(params: &Params) -> RunResult<Table> {
    power_axis_table(params)
}

/// Custom sweep over one axis variable; requires the `axis_*` keys.
pub fn run_sweep(params: &Params) -> RunResult<Table> {
    let axis_var = params
        .axis_var
        .ok_or(ConfigError("missing required config key `axis_var`".into()))?;
    require_axis_key(params)?;
    match axis_var {
        AxisVar::DSt => run_fig4(params),
        AxisVar::PDbw => power_axis_table(params),
        AxisVar::NActive => run_fig6(params),
    }
}

/// Hybrid fill count exposed for reports: total elements for a fixed
/// active segment under a total budget.
pub fn hris_total_count(params: &Params, budget_dbm: f64) -> RunResult<usize> {
    let budget = params.total_budget(budget_dbm, params.beta_max_sq_db)?;
    let gains = params.gains(params.d_st_m, params.p_watts()?)?;
    Ok(hris_fill_count(&gains, &budget, params.n_ha)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axis_range_is_inclusive() {
        assert_eq!(axis_range(10.0, 30.0, 1.0).unwrap().len(), 21);
        assert_eq!(axis_range(0.0, 30.0, 1.0).unwrap().len(), 31);
        let r = axis_range(1.0, 240.0, 1.0).unwrap();
        assert_eq!(r.len(), 240);
        assert_eq!(*r.last().unwrap(), 240.0);
        assert!(axis_range(10.0, 5.0, 1.0).is_err());
        assert!(axis_range(0.0, 10.0, 0.0).is_err());
    }

    #[test]
    fn fig3_has_pinned_header_and_monotone_column() {
        let t = run_fig3(&Params::default()).unwrap();
        assert_eq!(t.header, vec!["d_st_m", "uma_los_gain_db"]);
        let mut last = f64::INFINITY;
        for row in &t.rows {
            let Cell::Float(g) = row[1] else { panic!("gain must be a float") };
            assert!(g < last);
            last = g;
        }
    }

    #[test]
    fn fig4_emits_six_series_with_axis() {
        let t = run_fig4(&Params::default()).unwrap();
        assert_eq!(t.header.len(), 1 + 6 * RECORD_FIELDS.len());
        assert_eq!(t.rows.len(), 21);
        assert!(t.column("pris_20dbm_rate_bpshz").is_some());
        assert!(t.column("hris_15dbm_n_active").is_some());
    }

    #[test]
    fn fig5_emits_direct_budget_series() {
        let t = run_fig5(&Params::default()).unwrap();
        assert!(t.column("aris_pa20dbm_rate_bpshz").is_some());
        assert!(t.column("hris_ph0dbm_rate_bpshz").is_some());
        assert_eq!(t.rows.len(), 31);
    }

    #[test]
    fn fig6_covers_feasible_counts() {
        let t = run_fig6(&Params::default()).unwrap();
        assert_eq!(t.rows.len(), 240);
        assert!(t.column("aris_bmax40db_rate_bpshz").is_some());
        assert!(t.column("hris_bmax50db_rate_bpshz").is_some());
        assert!(t.column("pris_rate_bpshz").is_some());
    }

    #[test]
    fn sweep_requires_axis_keys() {
        let err = run_sweep(&Params::default()).unwrap_err();
        match err {
            RunError::Config(e) => assert!(e.0.contains("axis_var")),
            RunError::Model(_) => panic!("expected a config error"),
        }
    }

    #[test]
    fn emitted_rows_satisfy_metric_identities() {
        // rate = log2(1 + snr) and ee = rate / total_power on every row
        // of every figure table that carries the full record.
        for table in [
            run_fig4(&Params::default()).unwrap(),
            run_fig5(&Params::default()).unwrap(),
            run_fig6(&Params::default()).unwrap(),
            run_fig7(&Params::default()).unwrap(),
        ] {
            let labels: Vec<String> = table
                .header
                .iter()
                .filter(|h| h.ends_with("_snr"))
                .map(|h| h.trim_end_matches("_snr").to_string())
                .collect();
            assert!(!labels.is_empty());
            for row in &table.rows {
                for label in &labels {
                    let get = |field: &str| -> f64 {
                        let idx = table.column(&format!("{label}_{field}")).unwrap();
                        match row[idx] {
                            Cell::Float(x) => x,
                            Cell::Int(n) => n as f64,
                            Cell::Str(_) => panic!("numeric column expected"),
                        }
                    };
                    let snr = get("snr");
                    let rate = get("rate_bpshz");
                    let total = get("total_power_w");
                    let ee = get("ee_bpshz_per_w");
                    assert!(snr.is_finite() && rate.is_finite() && total.is_finite());
                    assert!((rate - (1.0 + snr).log2()).abs() <= 1e-12 * rate.max(1.0));
                    assert!((ee - rate / total).abs() <= 1e-12 * (rate / total).max(1e-30));
                }
            }
        }
    }
}
