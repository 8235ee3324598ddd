//! Closed-form element-count optimizers and their brute-force oracles.
//!
//! For the passive surface the budget buys as many elements as the
//! circuit power allows and the SNR is quadratic in the count. For the
//! active surface there is a trade-off: each extra element costs hardware
//! power that is no longer available for amplification. The continuous
//! optimum is the larger of two bounds,
//!
//! * `n_a1` — the stationary point of the sqrt-budget branch, and
//! * `n_a2` — the count at which the budget constraint starts binding
//!   before the amplitude cap,
//!
//! and the integer optimum is its floor or ceiling. [`brute_force_optimal_aris`]
//! re-derives the optimum by exhaustive enumeration and is kept
//! independent of the candidate construction so the two routes check each
//! other.

use crate::error::{Error, Result};
use crate::channel::LinkGains;
use crate::ris::{
    amplification_budget, incident_power_per_element, select_beta, snr_closed_form, BudgetMode,
    PowerBudget, RisScenario,
};

/// Which constraint fixed the amplification amplitude.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BetaBranch {
    /// The power budget bound: `beta = sqrt(P_amp / (N * P_in))`.
    SqrtBudget,
    /// The hardware amplitude cap: `beta = beta_max`.
    BetaMax,
}

impl std::fmt::Display for BetaBranch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BetaBranch::SqrtBudget => write!(f, "sqrt_budget"),
            BetaBranch::BetaMax => write!(f, "beta_max"),
        }
    }
}

/// Outcome of an element-count optimization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimumReport {
    pub best_count: usize,
    pub best_beta: f64,
    /// Linear SNR at the optimum.
    pub best_snr: f64,
    pub branch: BetaBranch,
    pub candidates_evaluated: usize,
}

/// Operating point of a hybrid surface with a fixed active count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HrisOperatingPoint {
    pub snr: f64,
    pub beta: f64,
    pub branch: BetaBranch,
}

fn require_total_mode(budget: &PowerBudget, what: &str) -> Result<()> {
    if budget.mode != BudgetMode::TotalBudget {
        return Err(Error::InvalidArgument(format!(
            "{what} requires a total power budget"
        )));
    }
    Ok(())
}

/// Largest passive element count the budget can power: `floor(P / P_e)`.
pub fn optimal_pris_count(budget: &PowerBudget) -> Result<usize> {
    require_total_mode(budget, "passive count optimization")?;
    if budget.p_e <= 0.0 {
        return Err(Error::InvalidArgument("P_e must be positive".into()));
    }
    Ok((budget.budget_watts / budget.p_e).floor() as usize)
}

/// Continuous-budget form of the optimal passive SNR:
/// `p * P^2 * N_t^2 * cascade / (P_e^2 * delta_sq)`.
pub fn optimal_pris_snr_continuous(
    gains: &LinkGains,
    budget: &PowerBudget,
    n_t: usize,
) -> Result<f64> {
    require_total_mode(budget, "passive count optimization")?;
    if budget.p_e <= 0.0 {
        return Err(Error::InvalidArgument("P_e must be positive".into()));
    }
    let n_t = n_t as f64;
    let p_budget = budget.budget_watts;
    Ok(gains.p * p_budget * p_budget * n_t * n_t * gains.cascade()
        / (budget.p_e * budget.p_e * gains.delta_sq))
}

/// Integer-count form of the optimal passive SNR.
pub fn optimal_pris_snr(gains: &LinkGains, budget: &PowerBudget, n_t: usize) -> Result<f64> {
    let n_p = optimal_pris_count(budget)?;
    Ok(snr_closed_form(&RisScenario::pris(n_t, n_p), gains))
}

/// Continuous count bounds `(n_a1, n_a2)` of the active-surface trade-off.
///
/// With `x = p*beta_tr*beta_st + delta_sq` and
/// `z = x + v*beta_rd*P`:
///
/// ```text
/// n_a1 = (z - sqrt(z*x)) / (v*beta_rd*(P_e+P_DC))
/// n_a2 = P*v / (beta_max^2*x + (P_e+P_DC)*v)
/// ```
///
/// `n_a1` is evaluated in the rationalized form
/// `z*P / ((z + sqrt(z*x)) * (P_e+P_DC))`, which is algebraically equal
/// and avoids the cancellation in `z - sqrt(z*x)` when the budget term is
/// small.
pub fn aris_count_bounds(gains: &LinkGains, budget: &PowerBudget) -> Result<(f64, f64)> {
    require_total_mode(budget, "active count optimization")?;
    let per_element = budget.p_e + budget.p_dc;
    if per_element <= 0.0 {
        return Err(Error::InvalidArgument("P_e + P_DC must be positive".into()));
    }
    let x = incident_power_per_element(gains);
    let p_budget = budget.budget_watts;
    let z = x + budget.v * gains.beta_rd * p_budget;
    let n_a1 = z * p_budget / ((z + (z * x).sqrt()) * per_element);
    let n_a2 = p_budget * budget.v
        / (budget.beta_max * budget.beta_max * x + per_element * budget.v);
    Ok((n_a1, n_a2))
}

/// SNR of the sqrt-budget branch at a (possibly fractional) active count.
pub fn aris_snr_sqrt_branch(
    gains: &LinkGains,
    budget: &PowerBudget,
    n_t: usize,
    n_a: f64,
) -> Result<f64> {
    require_total_mode(budget, "branch evaluation")?;
    let p_amp = (budget.budget_watts - n_a * (budget.p_e + budget.p_dc)) * budget.v;
    if p_amp < 0.0 {
        return Err(Error::BudgetExhausted(format!(
            "no amplification power left at n_a = {n_a}"
        )));
    }
    let n_t = n_t as f64;
    let x = incident_power_per_element(gains);
    let num = gains.p * n_t * n_t * n_a * gains.cascade() * p_amp;
    let den = (p_amp * gains.beta_rd + x) * gains.delta_sq;
    Ok(num / den)
}

/// SNR of the amplitude-cap branch at a (possibly fractional) active count.
pub fn aris_snr_betamax_branch(gains: &LinkGains, budget: &PowerBudget, n_t: usize, n_a: f64) -> f64 {
    let n_t = n_t as f64;
    let bm_sq = budget.beta_max * budget.beta_max;
    let num = gains.p * bm_sq * n_t * n_t * n_a * n_a * gains.cascade();
    let den = (gains.beta_rd * bm_sq * n_a + 1.0) * gains.delta_sq;
    num / den
}

fn aris_operating_point(
    gains: &LinkGains,
    budget: &PowerBudget,
    n_t: usize,
    n_a: usize,
) -> Result<(f64, f64, BetaBranch)> {
    let scenario = RisScenario::aris(n_t, n_a, 1.0)?;
    let beta = select_beta(&scenario, gains, budget)?;
    let branch = if beta < budget.beta_max { BetaBranch::SqrtBudget } else { BetaBranch::BetaMax };
    let snr = snr_closed_form(&scenario.with_beta(beta), gains);
    Ok((snr, beta, branch))
}

/// Optimal active element count from the closed-form candidate set
/// `{floor(n_a*), ceil(n_a*)}` with `n_a* = max(n_a1, n_a2)`, clamped to
/// the hardware-feasible range. Ties go to the smaller count.
pub fn lemma1_optimal_aris(
    gains: &LinkGains,
    budget: &PowerBudget,
    n_t: usize,
) -> Result<OptimumReport> {
    let (n_a1, n_a2) = aris_count_bounds(gains, budget)?;
    let n_max = (budget.budget_watts / (budget.p_e + budget.p_dc)).floor() as usize;
    if n_max == 0 {
        return Err(Error::BudgetExhausted(
            "budget cannot power a single active element".into(),
        ));
    }
    let n_star = n_a1.max(n_a2);
    let clamp = |n: f64| -> usize { (n.max(1.0).min(n_max as f64)) as usize };
    let mut candidates = vec![clamp(n_star.floor()), clamp(n_star.ceil())];
    candidates.dedup();

    let mut best: Option<OptimumReport> = None;
    for &n_a in &candidates {
        let (snr, beta, branch) = aris_operating_point(gains, budget, n_t, n_a)?;
        let better = match &best {
            None => true,
            Some(b) => snr > b.best_snr,
        };
        if better {
            best = Some(OptimumReport {
                best_count: n_a,
                best_beta: beta,
                best_snr: snr,
                branch,
                candidates_evaluated: candidates.len(),
            });
        }
    }
    Ok(best.expect("candidate set is non-empty"))
}

/// Exhaustive integer search over every hardware-feasible active count.
///
/// Self-contained on purpose: the per-count amplitude and SNR are spelled
/// out here rather than shared with the closed-form path, so this is an
/// independent check of [`lemma1_optimal_aris`]. Ties go to the smaller
/// count.
pub fn brute_force_optimal_aris(
    gains: &LinkGains,
    budget: &PowerBudget,
    n_t: usize,
) -> Result<OptimumReport> {
    require_total_mode(budget, "active count optimization")?;
    let per_element = budget.p_e + budget.p_dc;
    if per_element <= 0.0 {
        return Err(Error::InvalidArgument("P_e + P_DC must be positive".into()));
    }
    let n_max = (budget.budget_watts / per_element).floor() as usize;
    if n_max == 0 {
        return Err(Error::BudgetExhausted(
            "budget cannot power a single active element".into(),
        ));
    }
    let x = gains.p * gains.beta_tr * gains.beta_st + gains.delta_sq;
    let n_t_sq = (n_t as f64) * (n_t as f64);
    let mut best: Option<OptimumReport> = None;
    for n_a in 1..=n_max {
        let n = n_a as f64;
        let p_amp = (budget.budget_watts - n * per_element) * budget.v;
        let beta = (p_amp / (n * x)).sqrt().min(budget.beta_max);
        let snr = gains.p * beta * beta * n_t_sq * n * n * gains.cascade()
            / ((beta * beta * gains.beta_rd * n + 1.0) * gains.delta_sq);
        let better = match &best {
            None => true,
            Some(b) => snr > b.best_snr,
        };
        if better {
            best = Some(OptimumReport {
                best_count: n_a,
                best_beta: beta,
                best_snr: snr,
                branch: if beta < budget.beta_max {
                    BetaBranch::SqrtBudget
                } else {
                    BetaBranch::BetaMax
                },
                candidates_evaluated: n_max,
            });
        }
    }
    Ok(best.expect("n_max >= 1"))
}

/// SNR of a hybrid surface for a given split, with the amplitude picked
/// by the budget rule. `n_ha = 0` degenerates to a purely passive surface.
pub fn hris_snr_given_active(
    gains: &LinkGains,
    budget: &PowerBudget,
    n_t: usize,
    n_h: usize,
    n_ha: usize,
) -> Result<HrisOperatingPoint> {
    let scenario = RisScenario::hris(n_t, n_h, n_ha, 1.0)?;
    if n_ha == 0 {
        // No amplifiers: still charge the hardware check in total mode.
        amplification_budget(&scenario, budget)?;
        let snr = snr_closed_form(&scenario, gains);
        return Ok(HrisOperatingPoint { snr, beta: 1.0, branch: BetaBranch::BetaMax });
    }
    let beta = select_beta(&scenario, gains, budget)?;
    let branch = if beta < budget.beta_max { BetaBranch::SqrtBudget } else { BetaBranch::BetaMax };
    let snr = snr_closed_form(&scenario.with_beta(beta), gains);
    Ok(HrisOperatingPoint { snr, beta, branch })
}
