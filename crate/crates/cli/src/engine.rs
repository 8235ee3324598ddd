//! Per-point evaluation of one assisted scenario into a flat record.
//!
//! Element counts come from the budget unless pinned by the experiment:
//! the passive surface buys `floor(P / P_e)` elements, the active surface
//! count is optimized in closed form, and the hybrid surface reserves its
//! fixed active segment at full amplification before buying passive
//! elements with the remainder (so a hybrid surface never falls below the
//! equally-budgeted active surface; with no passive money left it
//! degenerates to it exactly).

use crate::params::Params;
use ris_core::metrics::{total_power, LinkResult};
use ris_core::optimize::{hris_snr_given_active, lemma1_optimal_aris, optimal_pris_count, BetaBranch};
use ris_core::ris::{
    incident_power_per_element, ris_power, select_beta, snr_closed_form, BudgetMode, PowerBudget,
    RisScenario,
};
use ris_core::{Error, LinkGains, Result};

/// One scenario evaluated at one axis point.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioRecord {
    pub label: String,
    pub snr: f64,
    pub rate_bpshz: f64,
    pub total_power_w: f64,
    pub ee_bpshz_per_w: f64,
    pub pi: f64,
    pub beta: f64,
    /// Total reflective element count.
    pub n_elements: usize,
    /// Amplifying element count (0 for a passive surface).
    pub n_active: usize,
    pub branch: String,
}

/// Column suffixes of a [`ScenarioRecord`], in emission order.
pub const RECORD_FIELDS: [&str; 9] = [
    "snr",
    "rate_bpshz",
    "total_power_w",
    "ee_bpshz_per_w",
    "pi",
    "beta",
    "n_elements",
    "n_active",
    "branch",
];

fn branch_name(branch: BetaBranch) -> &'static str {
    match branch {
        BetaBranch::SqrtBudget => "sqrt_budget",
        BetaBranch::BetaMax => "beta_max",
    }
}

/// Hybrid element fill under a total budget: reserve `n_ha` active
/// elements amplifying at `beta_max`, then spend the remaining budget on
/// passive elements. Returns the total count `n_h`.
pub fn hris_fill_count(gains: &LinkGains, budget: &PowerBudget, n_ha: usize) -> Result<usize> {
    if budget.mode != BudgetMode::TotalBudget {
        return Err(Error::InvalidArgument(
            "hybrid element fill requires a total power budget".into(),
        ));
    }
    let active_hardware = n_ha as f64 * (budget.p_e + budget.p_dc);
    if budget.budget_watts < active_hardware {
        return Err(Error::BudgetExhausted(format!(
            "active hardware {active_hardware} W exceeds budget {} W",
            budget.budget_watts
        )));
    }
    let amplification_at_cap = budget.beta_max * budget.beta_max * n_ha as f64
        * incident_power_per_element(gains)
        / budget.v;
    let remaining = budget.budget_watts - active_hardware - amplification_at_cap;
    if remaining <= 0.0 || budget.p_e <= 0.0 {
        // Full amplification is unaffordable: no passive segment, the
        // budget rule then picks the sqrt-branch amplitude.
        return Ok(n_ha);
    }
    Ok(n_ha + (remaining / budget.p_e).floor() as usize)
}

/// Evaluation context for one axis point: gains plus the metric inputs.
pub struct PointContext<'a> {
    pub params: &'a Params,
    pub gains: LinkGains,
}

impl PointContext<'_> {
    fn finish(
        &self,
        label: String,
        scenario: &RisScenario,
        budget: &PowerBudget,
        snr: f64,
        beta: f64,
        branch: &str,
    ) -> Result<ScenarioRecord> {
        let consumed = ris_power(scenario, &self.gains, budget, beta);
        // Under a total budget the surface is accounted at its configured
        // budget so equal budgets compare at equal total power.
        let p_ris = match budget.mode {
            BudgetMode::TotalBudget => budget.budget_watts,
            BudgetMode::DirectAmplification => consumed,
        };
        let sys = total_power(
            self.gains.p,
            budget,
            scenario.n_t(),
            self.params.p_s_watts()?,
            self.params.p_d_watts()?,
            p_ris,
        )?;
        let lr = LinkResult::from_snr(snr, &sys, self.params.lambda_pi)?;
        Ok(ScenarioRecord {
            label,
            snr: lr.snr,
            rate_bpshz: lr.rate_bpshz,
            total_power_w: lr.total_power_w,
            ee_bpshz_per_w: lr.ee_bpshz_per_w,
            pi: lr.pi,
            beta,
            n_elements: scenario.refl_count(),
            n_active: scenario.active_count(),
            branch: branch.to_string(),
        })
    }

    /// Passive surface; count from the budget unless pinned.
    pub fn eval_pris(
        &self,
        label: String,
        budget: &PowerBudget,
        fixed_count: Option<usize>,
    ) -> Result<ScenarioRecord> {
        let n_p = match fixed_count {
            Some(n) => n,
            None => optimal_pris_count(budget)?,
        };
        let scenario = RisScenario::pris(self.params.n_t, n_p);
        let snr = snr_closed_form(&scenario, &self.gains);
        self.finish(label, &scenario, budget, snr, 1.0, "passive")
    }

    /// Active surface; count optimized in closed form unless pinned.
    pub fn eval_aris(
        &self,
        label: String,
        budget: &PowerBudget,
        fixed_count: Option<usize>,
    ) -> Result<ScenarioRecord> {
        match fixed_count {
            Some(n_a) => {
                let scenario = RisScenario::aris(self.params.n_t, n_a, 1.0)?;
                let beta = select_beta(&scenario, &self.gains, budget)?;
                let branch =
                    if beta < budget.beta_max { BetaBranch::SqrtBudget } else { BetaBranch::BetaMax };
                let scenario = scenario.with_beta(beta);
                let snr = snr_closed_form(&scenario, &self.gains);
                self.finish(label, &scenario, budget, snr, beta, branch_name(branch))
            }
            None => {
                let report = lemma1_optimal_aris(&self.gains, budget, self.params.n_t)?;
                let scenario =
                    RisScenario::aris(self.params.n_t, report.best_count, report.best_beta)?;
                self.finish(
                    label,
                    &scenario,
                    budget,
                    report.best_snr,
                    report.best_beta,
                    branch_name(report.branch),
                )
            }
        }
    }

    /// Hybrid surface with a fixed active segment; total count from the
    /// amplification-first fill unless pinned.
    pub fn eval_hris(
        &self,
        label: String,
        budget: &PowerBudget,
        n_ha: usize,
        fixed_total: Option<usize>,
    ) -> Result<ScenarioRecord> {
        let n_h = match fixed_total {
            Some(n) => n,
            None => hris_fill_count(&self.gains, budget, n_ha)?,
        };
        let op = hris_snr_given_active(&self.gains, budget, self.params.n_t, n_h, n_ha)?;
        let scenario = RisScenario::hris(self.params.n_t, n_h, n_ha, op.beta)?;
        let branch = if n_ha == 0 { "passive" } else { branch_name(op.branch) };
        self.finish(label, &scenario, budget, op.snr, op.beta, branch)
    }
}
