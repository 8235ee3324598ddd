//! Experiment parameters with documented defaults.
//!
//! Every key of the config file maps to one field here; the defaults are
//! the standard simulation setup (28 GHz carrier, 5 dBi base-station
//! gain, 400 transmission elements, 20 dBW transmit power, -94 dBm noise,
//! 20/15 dBm surface budgets, `P_e` = -10 dBm, `P_DC` = -5 dBm,
//! amplifier efficiency 0.5, `beta_max^2` = 40 dB, 20 active hybrid
//! elements). See the README parameter dictionary for the full key list.

use crate::config::ConfigError;
use ris_core::geometry::ScenarioGeometry;
use ris_core::ris::{PowerBudget, RisKind};
use ris_core::units::PowerLevel;
use ris_core::{LinkGains, PathLossParams};

/// Sweepable axis variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxisVar {
    DSt,
    PDbw,
    NActive,
}

impl AxisVar {
    pub fn parse(s: &str) -> Result<Self, ConfigError> {
        match s {
            "d_st" => Ok(AxisVar::DSt),
            "p_dbw" => Ok(AxisVar::PDbw),
            "n_active" => Ok(AxisVar::NActive),
            other => Err(ConfigError(format!(
                "axis_var must be one of d_st, p_dbw, n_active; got `{other}`"
            ))),
        }
    }

    pub fn column_name(&self) -> &'static str {
        match self {
            AxisVar::DSt => "d_st_m",
            AxisVar::PDbw => "p_dbw",
            AxisVar::NActive => "n_active",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Params {
    pub f_c_ghz: f64,
    pub g_t_dbi: f64,
    pub g_r_dbi: f64,
    pub h_bs_m: f64,
    pub h_ut_m: f64,
    pub d_st_m: f64,
    pub p_dbw: f64,
    pub noise_dbm: f64,
    /// Reported for traceability only; it enters the numbers through the
    /// configured noise power.
    pub bandwidth_mhz: f64,
    pub n_t: usize,
    pub n_ha: usize,
    /// Fixed passive count for direct-budget experiments.
    pub n_p: Option<usize>,
    /// Fixed active count for direct-budget experiments.
    pub n_a: Option<usize>,
    /// Fixed hybrid total count for direct-budget experiments.
    pub n_h: Option<usize>,
    pub beta_max_sq_db: f64,
    pub v: f64,
    pub p_e_dbm: f64,
    pub p_dc_dbm: f64,
    pub budgets_dbm: Vec<f64>,
    pub p_a_dbm: Vec<f64>,
    pub p_h_dbm: Vec<f64>,
    pub beta_max_sq_db_list: Vec<f64>,
    pub lambda_pi: f64,
    pub p_s_dbm: f64,
    pub p_d_dbm: f64,
    pub axis_var: Option<AxisVar>,
    pub axis_start: Option<f64>,
    pub axis_stop: Option<f64>,
    pub axis_step: Option<f64>,
    pub scenarios: Vec<RisKind>,
    pub seed: u64,
}

impl Default for Params {
    fn default() -> Self {
        Self {
            f_c_ghz: 28.0,
            g_t_dbi: 5.0,
            g_r_dbi: 0.0,
            h_bs_m: 25.0,
            h_ut_m: 19.5,
            d_st_m: 12.0,
            p_dbw: 20.0,
            noise_dbm: -94.0,
            bandwidth_mhz: 10.0,
            n_t: 400,
            n_ha: 20,
            n_p: None,
            n_a: None,
            n_h: None,
            beta_max_sq_db: 40.0,
            v: 0.5,
            p_e_dbm: -10.0,
            p_dc_dbm: -5.0,
            budgets_dbm: vec![20.0, 15.0],
            p_a_dbm: vec![20.0, 10.0, 0.0],
            p_h_dbm: vec![10.0, 0.0],
            beta_max_sq_db_list: vec![40.0, 50.0],
            lambda_pi: 0.5,
            p_s_dbm: 20.0,
            p_d_dbm: 20.0,
            axis_var: None,
            axis_start: None,
            axis_stop: None,
            axis_step: None,
            scenarios: vec![RisKind::Pris, RisKind::Aris, RisKind::Hris],
            seed: 0,
        }
    }
}

fn parse_f64(key: &str, value: &str) -> Result<f64, ConfigError> {
    value
        .parse()
        .map_err(|_| ConfigError(format!("key `{key}`: expected a number, got `{value}`")))
}

fn parse_usize(key: &str, value: &str) -> Result<usize, ConfigError> {
    value
        .parse()
        .map_err(|_| ConfigError(format!("key `{key}`: expected a count, got `{value}`")))
}

fn parse_f64_list(key: &str, value: &str) -> Result<Vec<f64>, ConfigError> {
    let items: Result<Vec<f64>, _> = value.split(',').map(|s| parse_f64(key, s.trim())).collect();
    let items = items?;
    if items.is_empty() {
        return Err(ConfigError(format!("key `{key}`: list must not be empty")));
    }
    Ok(items)
}

fn parse_scenarios(value: &str) -> Result<Vec<RisKind>, ConfigError> {
    let mut kinds = Vec::new();
    for item in value.split(',') {
        kinds.push(match item.trim() {
            "pris" => RisKind::Pris,
            "aris" => RisKind::Aris,
            "hris" => RisKind::Hris,
            other => {
                return Err(ConfigError(format!(
                    "key `scenarios`: expected pris/aris/hris, got `{other}`"
                )))
            }
        });
    }
    if kinds.is_empty() {
        return Err(ConfigError("key `scenarios`: list must not be empty".into()));
    }
    Ok(kinds)
}

impl Params {
    /// Apply one config assignment. Unknown keys are rejected.
    pub fn apply(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        match key {
            "f_c_ghz" => self.f_c_ghz = parse_f64(key, value)?,
            "g_t_dbi" => self.g_t_dbi = parse_f64(key, value)?,
            "g_r_dbi" => self.g_r_dbi = parse_f64(key, value)?,
            "h_bs_m" => self.h_bs_m = parse_f64(key, value)?,
            "h_ut_m" => self.h_ut_m = parse_f64(key, value)?,
            "d_st_m" => self.d_st_m = parse_f64(key, value)?,
            "p_dbw" => self.p_dbw = parse_f64(key, value)?,
            "noise_dbm" => self.noise_dbm = parse_f64(key, value)?,
            "bandwidth_mhz" => self.bandwidth_mhz = parse_f64(key, value)?,
            "n_t" => self.n_t = parse_usize(key, value)?,
            "n_ha" => self.n_ha = parse_usize(key, value)?,
            "n_p" => self.n_p = Some(parse_usize(key, value)?),
            "n_a" => self.n_a = Some(parse_usize(key, value)?),
            "n_h" => self.n_h = Some(parse_usize(key, value)?),
            "beta_max_sq_db" => self.beta_max_sq_db = parse_f64(key, value)?,
            "v" => self.v = parse_f64(key, value)?,
            "p_e_dbm" => self.p_e_dbm = parse_f64(key, value)?,
            "p_dc_dbm" => self.p_dc_dbm = parse_f64(key, value)?,
            "budgets_dbm" => self.budgets_dbm = parse_f64_list(key, value)?,
            "p_a_dbm" => self.p_a_dbm = parse_f64_list(key, value)?,
            "p_h_dbm" => self.p_h_dbm = parse_f64_list(key, value)?,
            "beta_max_sq_db_list" => self.beta_max_sq_db_list = parse_f64_list(key, value)?,
            "lambda_pi" => self.lambda_pi = parse_f64(key, value)?,
            "p_s_dbm" => self.p_s_dbm = parse_f64(key, value)?,
            "p_d_dbm" => self.p_d_dbm = parse_f64(key, value)?,
            "axis_var" => self.axis_var = Some(AxisVar::parse(value)?),
            "axis_start" => self.axis_start = Some(parse_f64(key, value)?),
            "axis_stop" => self.axis_stop = Some(parse_f64(key, value)?),
            "axis_step" => self.axis_step = Some(parse_f64(key, value)?),
            "scenarios" => self.scenarios = parse_scenarios(value)?,
            "seed" => {
                self.seed = value.parse().map_err(|_| {
                    ConfigError(format!("key `seed`: expected an integer, got `{value}`"))
                })?
            }
            unknown => return Err(ConfigError(format!("unknown config key `{unknown}`"))),
        }
        Ok(())
    }

    pub fn from_pairs(pairs: &[(String, String)]) -> Result<Self, ConfigError> {
        let mut params = Self::default();
        for (key, value) in pairs {
            params.apply(key, value)?;
        }
        Ok(params)
    }

    // ---- derived quantities -------------------------------------------

    pub fn path_params(&self) -> ris_core::Result<PathLossParams> {
        PathLossParams::new(self.f_c_ghz, self.g_t_dbi, self.g_r_dbi)
    }

    pub fn geometry(&self, d_st: f64) -> ris_core::Result<ScenarioGeometry> {
        ScenarioGeometry::with_heights(d_st, self.h_bs_m, self.h_ut_m)
    }

    /// Link gains at a given horizontal distance and transmit power.
    pub fn gains(&self, d_st: f64, p_watts: f64) -> ris_core::Result<LinkGains> {
        ris_core::channel::link_gains(
            &self.path_params()?,
            &self.geometry(d_st)?,
            &PowerLevel::from_watts(p_watts)?,
            &PowerLevel::from_dbm(self.noise_dbm)?,
        )
    }

    pub fn p_watts(&self) -> ris_core::Result<f64> {
        Ok(PowerLevel::from_dbw(self.p_dbw)?.watts())
    }

    pub fn p_e_watts(&self) -> ris_core::Result<f64> {
        Ok(PowerLevel::from_dbm(self.p_e_dbm)?.watts())
    }

    pub fn p_dc_watts(&self) -> ris_core::Result<f64> {
        Ok(PowerLevel::from_dbm(self.p_dc_dbm)?.watts())
    }

    pub fn p_s_watts(&self) -> ris_core::Result<f64> {
        Ok(PowerLevel::from_dbm(self.p_s_dbm)?.watts())
    }

    pub fn p_d_watts(&self) -> ris_core::Result<f64> {
        Ok(PowerLevel::from_dbm(self.p_d_dbm)?.watts())
    }

    /// Total-budget description for a budget given in dBm.
    pub fn total_budget(&self, budget_dbm: f64, beta_max_sq_db: f64) -> ris_core::Result<PowerBudget> {
        PowerBudget::total(
            PowerLevel::from_dbm(budget_dbm)?.watts(),
            self.p_e_watts()?,
            self.p_dc_watts()?,
            self.v,
            PowerBudget::beta_max_from_sq_db(beta_max_sq_db)?,
        )
    }

    /// Direct amplification budget for a value given in dBm.
    pub fn direct_budget(&self, amp_dbm: f64) -> ris_core::Result<PowerBudget> {
        PowerBudget::direct_amplification(
            PowerLevel::from_dbm(amp_dbm)?.watts(),
            self.p_e_watts()?,
            self.p_dc_watts()?,
            self.v,
            PowerBudget::beta_max_from_sq_db(self.beta_max_sq_db)?,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_match_standard_setup() {
        let p = Params::default();
        assert_eq!(p.n_t, 400);
        assert_eq!(p.n_ha, 20);
        assert_eq!(p.budgets_dbm, vec![20.0, 15.0]);
        assert_eq!(p.p_watts().unwrap(), 100.0);
        assert_eq!(p.p_e_watts().unwrap(), 1e-4);
    }

    #[test]
    fn unknown_key_rejected() {
        let mut p = Params::default();
        let err = p.apply("nt", "400").unwrap_err();
        assert!(err.0.contains("nt"));
    }

    #[test]
    fn lists_parse() {
        let mut p = Params::default();
        p.apply("budgets_dbm", "20, 15, 10").unwrap();
        assert_eq!(p.budgets_dbm, vec![20.0, 15.0, 10.0]);
        p.apply("scenarios", "pris, hris").unwrap();
        assert_eq!(p.scenarios, vec![RisKind::Pris, RisKind::Hris]);
    }

    #[test]
    fn axis_var_parses() {
        assert_eq!(AxisVar::parse("d_st").unwrap(), AxisVar::DSt);
        assert_eq!(AxisVar::parse("p_dbw").unwrap(), AxisVar::PDbw);
        assert_eq!(AxisVar::parse("n_active").unwrap(), AxisVar::NActive);
        assert!(AxisVar::parse("power").is_err());
    }
}
