//! Rate, total system power, energy efficiency and the performance index.

use crate::error::{Error, Result};
use crate::ris::PowerBudget;

/// Spectral rate for a linear SNR: `log2(1 + snr)`, bit/s/Hz.
pub fn achievable_rate(snr: f64) -> Result<f64> {
    if !snr.is_finite() || snr < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "SNR must be finite and >= 0, got {snr}"
        )));
    }
    Ok((1.0 + snr).log2())
}

/// Per-subsystem breakdown of the total system power, watts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemPower {
    /// Transmit-chain drain `p / v`.
    pub p_tx_drain: f64,
    /// Base-station hardware power.
    pub p_s: f64,
    /// Terminal hardware power.
    pub p_d: f64,
    /// Transmission-surface circuit power `N_t * P_e`.
    pub p_tris: f64,
    /// Reflective-surface power.
    pub p_ris: f64,
    pub total: f64,
}

/// Total system power: `p/v + P_s + P_d + N_t*P_e + P_ris`.
///
/// Under a total budget the reflective surface is accounted at its full
/// configured budget (scenarios with equal budgets then compare at equal
/// total power); pass the consumed power instead when only an
/// amplification budget is configured.
pub fn total_power(
    p_watts: f64,
    budget: &PowerBudget,
    n_t: usize,
    p_s: f64,
    p_d: f64,
    ris_power: f64,
) -> Result<SystemPower> {
    for (name, v) in [("p", p_watts), ("p_s", p_s), ("p_d", p_d), ("ris_power", ris_power)] {
        if !v.is_finite() || v < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "{name} must be finite and >= 0, got {v}"
            )));
        }
    }
    let p_tx_drain = p_watts / budget.v;
    let p_tris = n_t as f64 * budget.p_e;
    Ok(SystemPower {
        p_tx_drain,
        p_s,
        p_d,
        p_tris,
        p_ris: ris_power,
        total: p_tx_drain + p_s + p_d + p_tris + ris_power,
    })
}

/// Rate per watt.
pub fn energy_efficiency(rate: f64, total_power: f64) -> Result<f64> {
    if !total_power.is_finite() || total_power <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "total power must be positive, got {total_power}"
        )));
    }
    if !rate.is_finite() || rate < 0.0 {
        return Err(Error::InvalidArgument(format!("rate must be >= 0, got {rate}")));
    }
    Ok(rate / total_power)
}

/// Tunable rate/efficiency compromise: `R^lambda + (R/P_total)^(1-lambda)`.
///
/// `0^0` follows the IEEE convention and evaluates to 1, so the endpoints
/// `lambda = 0` and `lambda = 1` reduce to `1 + R/P` and `R + 1`.
pub fn performance_index(rate: f64, total_power: f64, lambda: f64) -> Result<f64> {
    if !total_power.is_finite() || total_power <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "total power must be positive, got {total_power}"
        )));
    }
    if !rate.is_finite() || rate < 0.0 {
        return Err(Error::InvalidArgument(format!("rate must be >= 0, got {rate}")));
    }
    if !lambda.is_finite() || !(0.0..=1.0).contains(&lambda) {
        return Err(Error::InvalidArgument(format!(
            "lambda must lie in [0, 1], got {lambda}"
        )));
    }
    Ok(rate.powf(lambda) + (rate / total_power).powf(1.0 - lambda))
}

/// The full metric stack for one operating point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkResult {
    pub snr: f64,
    pub rate_bpshz: f64,
    pub total_power_w: f64,
    pub ee_bpshz_per_w: f64,
    pub pi: f64,
}

impl LinkResult {
    pub fn from_snr(snr: f64, power: &SystemPower, lambda: f64) -> Result<Self> {
        let rate = achievable_rate(snr)?;
        Ok(Self {
            snr,
            rate_bpshz: rate,
            total_power_w: power.total,
            ee_bpshz_per_w: energy_efficiency(rate, power.total)?,
            pi: performance_index(rate, power.total, lambda)?,
        })
    }
}
