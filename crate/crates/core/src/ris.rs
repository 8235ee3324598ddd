//! Surface configuration, SNR evaluation and power models.
//!
//! Phase alignment conjugates the per-element channel phases so that all
//! cascade terms add coherently; after alignment the SNR depends only on
//! amplitudes, which is what the closed forms exploit. Both routes are
//! exposed: [`snr_vector_form`] evaluates the full cascade expression for
//! an arbitrary phase configuration, [`snr_closed_form`] evaluates the
//! aligned, uniform-amplitude result directly. With aligned phases and
//! uniform amplitudes the two agree to machine precision.
//!
//! In the amplified scenarios the noise re-radiated by the active elements
//! appears in the SNR denominator as the squared norm of the amplified
//! receive row, so the closed forms carry `beta^2 * N_active * beta_rd + 1`.

use num_complex::Complex64;

use crate::channel::{ChannelSet, LinkGains, RankOneChannel};
use crate::error::{Error, Result};
use crate::units::db_to_linear;

/// Tolerance for the unit-modulus invariant on phase coefficients.
pub const UNIT_MODULUS_TOL: f64 = 1e-12;

/// Which reflective surface a scenario uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RisKind {
    Pris,
    Aris,
    Hris,
}

impl std::fmt::Display for RisKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RisKind::Pris => write!(f, "pris"),
            RisKind::Aris => write!(f, "aris"),
            RisKind::Hris => write!(f, "hris"),
        }
    }
}

/// Element counts and amplification amplitude for one assisted scenario.
///
/// In the hybrid layout the active segment occupies the first `n_ha`
/// entries of every reflective-side vector; the remaining `n_h - n_ha`
/// entries are the passive segment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RisScenario {
    Pris { n_t: usize, n_p: usize },
    Aris { n_t: usize, n_a: usize, beta: f64 },
    Hris { n_t: usize, n_h: usize, n_ha: usize, beta: f64 },
}

impl RisScenario {
    pub fn pris(n_t: usize, n_p: usize) -> Self {
        RisScenario::Pris { n_t, n_p }
    }

    pub fn aris(n_t: usize, n_a: usize, beta: f64) -> Result<Self> {
        if !beta.is_finite() || beta < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "amplification amplitude must be >= 0, got {beta}"
            )));
        }
        Ok(RisScenario::Aris { n_t, n_a, beta })
    }

    pub fn hris(n_t: usize, n_h: usize, n_ha: usize, beta: f64) -> Result<Self> {
        if n_ha > n_h {
            return Err(Error::InvalidArgument(format!(
                "active count {n_ha} exceeds total count {n_h}"
            )));
        }
        if !beta.is_finite() || beta < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "amplification amplitude must be >= 0, got {beta}"
            )));
        }
        Ok(RisScenario::Hris { n_t, n_h, n_ha, beta })
    }

    pub fn kind(&self) -> RisKind {
        match self {
            RisScenario::Pris { .. } => RisKind::Pris,
            RisScenario::Aris { .. } => RisKind::Aris,
            RisScenario::Hris { .. } => RisKind::Hris,
        }
    }

    pub fn n_t(&self) -> usize {
        match *self {
            RisScenario::Pris { n_t, .. }
            | RisScenario::Aris { n_t, .. }
            | RisScenario::Hris { n_t, .. } => n_t,
        }
    }

    /// Total number of reflective elements.
    pub fn refl_count(&self) -> usize {
        match *self {
            RisScenario::Pris { n_p, .. } => n_p,
            RisScenario::Aris { n_a, .. } => n_a,
            RisScenario::Hris { n_h, .. } => n_h,
        }
    }

    /// Number of amplifying elements.
    pub fn active_count(&self) -> usize {
        match *self {
            RisScenario::Pris { .. } => 0,
            RisScenario::Aris { n_a, .. } => n_a,
            RisScenario::Hris { n_ha, .. } => n_ha,
        }
    }

    /// Amplification amplitude; a purely passive surface reflects at unit
    /// amplitude.
    pub fn beta(&self) -> f64 {
        match *self {
            RisScenario::Pris { .. } => 1.0,
            RisScenario::Aris { beta, .. } | RisScenario::Hris { beta, .. } => beta,
        }
    }

    /// Copy with a different amplification amplitude (identity for PRIS).
    pub fn with_beta(&self, beta: f64) -> Self {
        match *self {
            RisScenario::Pris { .. } => *self,
            RisScenario::Aris { n_t, n_a, .. } => RisScenario::Aris { n_t, n_a, beta },
            RisScenario::Hris { n_t, n_h, n_ha, .. } => RisScenario::Hris { n_t, n_h, n_ha, beta },
        }
    }
}

/// How the configured budget value is interpreted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BudgetMode {
    /// The value is the total surface budget; amplification power is what
    /// remains after per-element hardware costs.
    TotalBudget,
    /// The value is the amplification power budget itself; hardware costs
    /// are not charged against it.
    DirectAmplification,
}

/// Power-budget parameters of the reflective surface.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerBudget {
    /// Budget value in watts; meaning depends on `mode`.
    pub budget_watts: f64,
    /// Phase-shifter circuit power per element, watts.
    pub p_e: f64,
    /// DC bias power per active element, watts.
    pub p_dc: f64,
    /// Power-amplifier efficiency, in (0, 1].
    pub v: f64,
    /// Maximum amplification amplitude (`beta_max^2` is the power gain).
    pub beta_max: f64,
    pub mode: BudgetMode,
}

impl PowerBudget {
    fn validated(self) -> Result<Self> {
        if !self.budget_watts.is_finite() || self.budget_watts < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "budget must be >= 0, got {} W",
                self.budget_watts
            )));
        }
        if !self.p_e.is_finite() || self.p_e < 0.0 || !self.p_dc.is_finite() || self.p_dc < 0.0 {
            return Err(Error::InvalidArgument(
                "per-element powers must be finite and >= 0".into(),
            ));
        }
        if !self.v.is_finite() || self.v <= 0.0 || self.v > 1.0 {
            return Err(Error::InvalidArgument(format!(
                "amplifier efficiency must lie in (0, 1], got {}",
                self.v
            )));
        }
        if self.beta_max.is_nan() || self.beta_max < 1.0 {
            return Err(Error::InvalidArgument(format!(
                "beta_max must be >= 1, got {}",
                self.beta_max
            )));
        }
        Ok(self)
    }

    pub fn total(budget_watts: f64, p_e: f64, p_dc: f64, v: f64, beta_max: f64) -> Result<Self> {
        Self { budget_watts, p_e, p_dc, v, beta_max, mode: BudgetMode::TotalBudget }.validated()
    }

    pub fn direct_amplification(
        amplification_watts: f64,
        p_e: f64,
        p_dc: f64,
        v: f64,
        beta_max: f64,
    ) -> Result<Self> {
        Self {
            budget_watts: amplification_watts,
            p_e,
            p_dc,
            v,
            beta_max,
            mode: BudgetMode::DirectAmplification,
        }
        .validated()
    }

    /// Amplitude cap from a dB-valued power gain: `beta_max = sqrt(10^(x/10))`.
    pub fn beta_max_from_sq_db(beta_max_sq_db: f64) -> Result<f64> {
        Ok(db_to_linear(beta_max_sq_db)?.sqrt())
    }
}

/// Unit-modulus coefficient vectors for the transmission surface and the
/// reflective surface. For a hybrid surface the first `n_ha` entries of
/// `phi_refl` drive the active segment.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseConfig {
    pub phi_t: Vec<Complex64>,
    pub phi_refl: Vec<Complex64>,
}

impl PhaseConfig {
    pub fn new(phi_t: Vec<Complex64>, phi_refl: Vec<Complex64>) -> Result<Self> {
        for (i, w) in phi_t.iter().chain(phi_refl.iter()).enumerate() {
            if (w.norm() - 1.0).abs() > UNIT_MODULUS_TOL {
                return Err(Error::InvalidArgument(format!(
                    "coefficient {i} is not unit-modulus: |{w}| = {}",
                    w.norm()
                )));
            }
        }
        Ok(Self { phi_t, phi_refl })
    }
}

fn conj_unit(z: Complex64, index: usize) -> Result<Complex64> {
    let norm = z.norm();
    if norm == 0.0 {
        return Err(Error::DegenerateChannel(index));
    }
    Ok((z / norm).conj())
}

/// Align both coefficient vectors against the given channels.
///
/// Element `i` of the transmission surface takes the conjugate of the
/// phase of `g_tx[i] * h_st[i]`; element `j` of the reflective surface
/// takes the conjugate of the phase of `h_rd[j] * g_rx[j]`. All cascade
/// terms then combine coherently at the terminal.
pub fn align_phases(
    h_tr: &RankOneChannel,
    h_st: &[Complex64],
    h_rd: &[Complex64],
) -> Result<PhaseConfig> {
    if h_st.len() != h_tr.n_tx() {
        return Err(Error::InvalidArgument(format!(
            "h_st length {} does not match channel n_tx {}",
            h_st.len(),
            h_tr.n_tx()
        )));
    }
    if h_rd.len() != h_tr.n_rx() {
        return Err(Error::InvalidArgument(format!(
            "h_rd length {} does not match channel n_rx {}",
            h_rd.len(),
            h_tr.n_rx()
        )));
    }
    let phi_t = h_tr
        .g_tx
        .iter()
        .zip(h_st)
        .enumerate()
        .map(|(i, (g, h))| conj_unit(g * h, i))
        .collect::<Result<Vec<_>>>()?;
    let phi_refl = h_rd
        .iter()
        .zip(&h_tr.g_rx)
        .enumerate()
        .map(|(j, (h, g))| conj_unit(h * g, j))
        .collect::<Result<Vec<_>>>()?;
    Ok(PhaseConfig { phi_t, phi_refl })
}

fn check_dims(scenario: &RisScenario, phases: &PhaseConfig, channels: &ChannelSet) -> Result<()> {
    let n_t = scenario.n_t();
    let n_refl = scenario.refl_count();
    if channels.h_st.len() != n_t
        || channels.h_tr.n_tx() != n_t
        || phases.phi_t.len() != n_t
        || channels.h_rd.len() != n_refl
        || channels.h_tr.n_rx() != n_refl
        || phases.phi_refl.len() != n_refl
    {
        return Err(Error::InvalidArgument(format!(
            "dimension mismatch: scenario wants {} x {}, got h_st {}, phi_t {}, channel {} x {}, h_rd {}, phi_refl {}",
            n_refl,
            n_t,
            channels.h_st.len(),
            phases.phi_t.len(),
            channels.h_tr.n_rx(),
            channels.h_tr.n_tx(),
            channels.h_rd.len(),
            phases.phi_refl.len(),
        )));
    }
    Ok(())
}

/// SNR of the full cascade expression for an arbitrary phase
/// configuration (linear, not dB).
///
/// The rank-one structure of the middle matrix lets the double sum factor
/// into a transmit-side and a receive-side single sum; the evaluation is
/// algebraically identical to forming the full matrix product.
pub fn snr_vector_form(
    scenario: &RisScenario,
    phases: &PhaseConfig,
    channels: &ChannelSet,
    gains: &LinkGains,
) -> Result<f64> {
    check_dims(scenario, phases, channels)?;
    let tx_sum: Complex64 = channels
        .h_tr
        .g_tx
        .iter()
        .zip(&phases.phi_t)
        .zip(&channels.h_st)
        .map(|((g, phi), h)| g * phi * h)
        .sum();
    let refl_term = |j: usize| channels.h_rd[j] * phases.phi_refl[j] * channels.h_tr.g_rx[j];

    match *scenario {
        RisScenario::Pris { n_p, .. } => {
            let rx_sum: Complex64 = (0..n_p).map(refl_term).sum();
            let amp = channels.h_tr.q * rx_sum * tx_sum;
            Ok(gains.p * amp.norm_sqr() / gains.delta_sq)
        }
        RisScenario::Aris { n_a, beta, .. } => {
            let rx_sum: Complex64 = (0..n_a).map(refl_term).sum();
            let amp = channels.h_tr.q * rx_sum * tx_sum * beta;
            let amplified_noise: f64 = (0..n_a)
                .map(|j| (channels.h_rd[j] * phases.phi_refl[j] * beta).norm_sqr())
                .sum();
            Ok(gains.p * amp.norm_sqr() / ((amplified_noise + 1.0) * gains.delta_sq))
        }
        RisScenario::Hris { n_h, n_ha, beta, .. } => {
            let active_sum: Complex64 = (0..n_ha).map(refl_term).sum();
            let passive_sum: Complex64 = (n_ha..n_h).map(refl_term).sum();
            let amp = channels.h_tr.q * tx_sum * (active_sum * beta + passive_sum);
            let amplified_noise: f64 = (0..n_ha)
                .map(|j| (channels.h_rd[j] * phases.phi_refl[j] * beta).norm_sqr())
                .sum();
            Ok(gains.p * amp.norm_sqr() / ((amplified_noise + 1.0) * gains.delta_sq))
        }
    }
}

/// Aligned-phase SNR under the uniform-amplitude convention (linear).
pub fn snr_closed_form(scenario: &RisScenario, gains: &LinkGains) -> f64 {
    let n_t = scenario.n_t() as f64;
    let cascade = gains.cascade();
    match *scenario {
        RisScenario::Pris { n_p, .. } => {
            let n_p = n_p as f64;
            gains.p * n_t * n_t * n_p * n_p * cascade / gains.delta_sq
        }
        RisScenario::Aris { n_a, beta, .. } => {
            let n_a = n_a as f64;
            let num = gains.p * beta * beta * n_t * n_t * n_a * n_a * cascade;
            let den = (beta * beta * gains.beta_rd * n_a + 1.0) * gains.delta_sq;
            num / den
        }
        RisScenario::Hris { n_h, n_ha, beta, .. } => {
            let coherent = n_h as f64 + n_ha as f64 * (beta - 1.0);
            let num = gains.p * n_t * n_t * cascade * coherent * coherent;
            let den = (beta * beta * n_ha as f64 * gains.beta_rd + 1.0) * gains.delta_sq;
            num / den
        }
    }
}

/// Per-element incident power under the uniform-amplitude convention:
/// `p * beta_tr * beta_st + delta_sq`.
pub fn incident_power_per_element(gains: &LinkGains) -> f64 {
    gains.p * gains.beta_tr * gains.beta_st + gains.delta_sq
}

/// Amplification power available to the active elements, in watts.
///
/// In total-budget mode this is the efficiency-scaled remainder after
/// per-element hardware costs; a negative remainder is a
/// [`Error::BudgetExhausted`]. In direct mode the budget value is
/// returned as-is.
pub fn amplification_budget(scenario: &RisScenario, budget: &PowerBudget) -> Result<f64> {
    match budget.mode {
        BudgetMode::DirectAmplification => Ok(budget.budget_watts),
        BudgetMode::TotalBudget => {
            let hardware = match *scenario {
                RisScenario::Pris { n_p, .. } => n_p as f64 * budget.p_e,
                RisScenario::Aris { n_a, .. } => n_a as f64 * (budget.p_e + budget.p_dc),
                RisScenario::Hris { n_h, n_ha, .. } => {
                    n_h as f64 * budget.p_e + n_ha as f64 * budget.p_dc
                }
            };
            let remaining = (budget.budget_watts - hardware) * budget.v;
            if remaining < 0.0 {
                return Err(Error::BudgetExhausted(format!(
                    "hardware cost {hardware} W exceeds budget {} W",
                    budget.budget_watts
                )));
            }
            Ok(remaining)
        }
    }
}

/// Largest feasible amplification amplitude for the scenario:
/// `min(sqrt(P_amp / (N_active * (p*beta_tr*beta_st + delta_sq))), beta_max)`.
pub fn select_beta(scenario: &RisScenario, gains: &LinkGains, budget: &PowerBudget) -> Result<f64> {
    let n_active = scenario.active_count();
    if n_active == 0 {
        return Err(Error::InvalidArgument(
            "beta selection requires at least one active element".into(),
        ));
    }
    let p_amp = amplification_budget(scenario, budget)?;
    let unconstrained = (p_amp / (n_active as f64 * incident_power_per_element(gains))).sqrt();
    Ok(unconstrained.min(budget.beta_max))
}

/// Power drawn by the reflective surface at amplification amplitude `beta`.
///
/// Passive elements cost `P_e` each; active elements add the DC bias and
/// the amplifier drain `beta^2 * P_in / v` with the uniform-amplitude
/// incident power.
pub fn ris_power(
    scenario: &RisScenario,
    gains: &LinkGains,
    budget: &PowerBudget,
    beta: f64,
) -> f64 {
    let amp_drain = |n_active: usize| {
        beta * beta * n_active as f64 * incident_power_per_element(gains) / budget.v
    };
    match *scenario {
        RisScenario::Pris { n_p, .. } => n_p as f64 * budget.p_e,
        RisScenario::Aris { n_a, .. } => n_a as f64 * (budget.p_e + budget.p_dc) + amp_drain(n_a),
        RisScenario::Hris { n_h, n_ha, .. } => {
            n_h as f64 * budget.p_e + n_ha as f64 * budget.p_dc + amp_drain(n_ha)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{synthesize_rank_one, uniform_amplitude_vector, ChannelSet};
    use approx::assert_relative_eq;
    use num_complex::Complex64;
    use std::f64::consts::PI;

    fn gains() -> LinkGains {
        // Gains at the standard 12 m operating point.
        LinkGains::new(
            2.1897466563635583e-8,
            5.4991173947374566e-8,
            1.2148176652212236e-7,
            100.0,
            3.981071705534969e-13,
        )
        .unwrap()
    }

    fn budget_40db(total_w: f64) -> PowerBudget {
        PowerBudget::total(total_w, 1e-4, 3.1622776601683794e-4, 0.5, 100.0).unwrap()
    }

    #[test]
    fn align_real_positive_channels_is_identity() {
        let ch = RankOneChannel {
            q: Complex64::new(0.5, 0.0),
            g_rx: vec![Complex64::new(1.0, 0.0); 3],
            g_tx: vec![Complex64::new(1.0, 0.0); 2],
        };
        let h_st = vec![Complex64::new(0.3, 0.0); 2];
        let h_rd = vec![Complex64::new(0.7, 0.0); 3];
        let cfg = align_phases(&ch, &h_st, &h_rd).unwrap();
        for w in cfg.phi_t.iter().chain(cfg.phi_refl.iter()) {
            assert_relative_eq!(w.re, 1.0, max_relative = 1e-12);
            assert!(w.im.abs() < 1e-12);
        }
    }

    #[test]
    fn align_conjugates_phase_sum() {
        // h_st = e^{j pi/3}, g_tx = e^{j pi/6} -> phi = e^{-j pi/2}.
        let ch = RankOneChannel {
            q: Complex64::new(1.0, 0.0),
            g_rx: vec![Complex64::from_polar(1.0, 0.0)],
            g_tx: vec![Complex64::from_polar(1.0, PI / 6.0)],
        };
        let h_st = vec![Complex64::from_polar(0.2, PI / 3.0)];
        let h_rd = vec![Complex64::from_polar(0.4, 0.0)];
        let cfg = align_phases(&ch, &h_st, &h_rd).unwrap();
        let expect = Complex64::from_polar(1.0, -PI / 2.0);
        assert!((cfg.phi_t[0] - expect).norm() < 1e-12);
    }

    #[test]
    fn align_rejects_zero_entries() {
        let ch = synthesize_rank_one(2, 2, 1.0, 1).unwrap();
        let h_st = vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
        let h_rd = vec![Complex64::new(1.0, 0.0); 2];
        assert_eq!(align_phases(&ch, &h_st, &h_rd), Err(Error::DegenerateChannel(0)));
    }

    #[test]
    fn align_rejects_mismatched_lengths() {
        let ch = synthesize_rank_one(2, 2, 1.0, 1).unwrap();
        let h = vec![Complex64::new(1.0, 0.0); 3];
        assert!(align_phases(&ch, &h, &h).is_err());
    }

    #[test]
    fn aris_zero_beta_gives_zero_snr() {
        let g = gains();
        let sc = RisScenario::aris(4, 3, 0.0).unwrap();
        let ch = ChannelSet::synthesize(4, 3, &g, 9).unwrap();
        let phases = align_phases(&ch.h_tr, &ch.h_st, &ch.h_rd).unwrap();
        let snr = snr_vector_form(&sc, &phases, &ch, &g).unwrap();
        assert_eq!(snr, 0.0);
        assert_eq!(snr_closed_form(&sc, &g), 0.0);
    }

    #[test]
    fn single_element_product_formula() {
        let g = gains();
        let sc = RisScenario::pris(1, 1);
        assert_relative_eq!(
            snr_closed_form(&sc, &g),
            g.p * g.cascade() / g.delta_sq,
            max_relative = 1e-15
        );
    }

    #[test]
    fn vector_form_matches_closed_form_when_aligned() {
        let g = gains();
        for (kind, seed) in [(0, 1u64), (1, 2), (2, 3)] {
            let (n_t, n_refl) = (40, 25);
            let sc = match kind {
                0 => RisScenario::pris(n_t, n_refl),
                1 => RisScenario::aris(n_t, n_refl, 10.0).unwrap(),
                _ => RisScenario::hris(n_t, n_refl, 7, 10.0).unwrap(),
            };
            let ch = ChannelSet::synthesize(n_t, n_refl, &g, seed).unwrap();
            let phases = align_phases(&ch.h_tr, &ch.h_st, &ch.h_rd).unwrap();
            let v = snr_vector_form(&sc, &phases, &ch, &g).unwrap();
            let c = snr_closed_form(&sc, &g);
            assert_relative_eq!(v, c, max_relative = 1e-9);
        }
    }

    #[test]
    fn hris_closed_form_reduces_to_pris_and_aris() {
        let g = gains();
        let all_passive = RisScenario::hris(400, 120, 0, 37.0).unwrap();
        let pris = RisScenario::pris(400, 120);
        assert_relative_eq!(
            snr_closed_form(&all_passive, &g),
            snr_closed_form(&pris, &g),
            max_relative = 1e-15
        );
        let all_active = RisScenario::hris(400, 120, 120, 37.0).unwrap();
        let aris = RisScenario::aris(400, 120, 37.0).unwrap();
        assert_relative_eq!(
            snr_closed_form(&all_active, &g),
            snr_closed_form(&aris, &g),
            max_relative = 1e-15
        );
    }

    #[test]
    fn aris_snr_saturates_for_large_beta() {
        let g = gains();
        let n_a = 64;
        let sc = RisScenario::aris(400, n_a, 1e6).unwrap();
        let limit = g.p * (400f64 * 400.0) * n_a as f64 * g.beta_tr * g.beta_st / g.delta_sq;
        assert_relative_eq!(snr_closed_form(&sc, &g), limit, max_relative = 1e-6);
    }

    #[test]
    fn aris_snr_monotone_in_beta() {
        let g = gains();
        let mut last = 0.0;
        for i in 1..=60 {
            let beta = 10f64.powf(-1.0 + i as f64 * 0.1);
            let sc = RisScenario::aris(16, 8, beta).unwrap();
            let snr = snr_closed_form(&sc, &g);
            assert!(snr > last, "SNR not increasing at beta = {beta}");
            last = snr;
        }
    }

    #[test]
    fn select_beta_clamps_at_beta_max() {
        let g = gains();
        let sc = RisScenario::aris(400, 16, 1.0).unwrap();
        // Huge budget: the cap binds.
        let b = budget_40db(1e6);
        assert_eq!(select_beta(&sc, &g, &b).unwrap(), 100.0);
    }

    #[test]
    fn select_beta_equality_point_gives_unity() {
        let g = gains();
        let n_a = 16;
        let x = incident_power_per_element(&g);
        // Amplification budget equal to N_a * x: sqrt of 1.
        let b = PowerBudget::direct_amplification(
            n_a as f64 * x,
            1e-4,
            3.1622776601683794e-4,
            0.5,
            100.0,
        )
        .unwrap();
        let sc = RisScenario::aris(400, n_a, 1.0).unwrap();
        assert_relative_eq!(select_beta(&sc, &g, &b).unwrap(), 1.0, max_relative = 1e-12);
    }

    #[test]
    fn select_beta_direct_mode_regression() {
        // Amplification budget handed over directly, terminal-scale power.
        let g = LinkGains::new(
            2.1897466563635583e-8,
            5.4991173947374566e-8,
            1.2148176652212236e-7,
            0.1,
            3.981071705534969e-13,
        )
        .unwrap();
        let sc = RisScenario::aris(400, 256, 1.0).unwrap();
        let unclamped = PowerBudget::direct_amplification(
            0.1,
            1e-4,
            3.1622776601683794e-4,
            0.5,
            f64::INFINITY,
        )
        .unwrap();
        assert_relative_eq!(
            select_beta(&sc, &g, &unclamped).unwrap(),
            31319.46581071924,
            max_relative = 1e-9
        );
        let clamped =
            PowerBudget::direct_amplification(0.1, 1e-4, 3.1622776601683794e-4, 0.5, 100.0)
                .unwrap();
        assert_eq!(select_beta(&sc, &g, &clamped).unwrap(), 100.0);
    }

    #[test]
    fn select_beta_exhausted_budget() {
        let g = gains();
        let sc = RisScenario::aris(400, 1000, 1.0).unwrap();
        let b = budget_40db(0.1); // 1000 active elements cost ~0.42 W of hardware
        assert!(matches!(select_beta(&sc, &g, &b), Err(Error::BudgetExhausted(_))));
    }

    #[test]
    fn pris_power_is_element_count_times_circuit_power() {
        let g = gains();
        let b = budget_40db(0.1);
        let sc = RisScenario::pris(400, 1000);
        assert_relative_eq!(ris_power(&sc, &g, &b, 1.0), 0.1, max_relative = 1e-12);
    }

    #[test]
    fn aris_power_meets_budget_at_sqrt_branch() {
        let g = gains();
        // beta_max = inf so the sqrt branch is always the binding one.
        let b = PowerBudget::total(0.1, 1e-4, 3.1622776601683794e-4, 0.5, f64::INFINITY).unwrap();
        let sc = RisScenario::aris(400, 120, 1.0).unwrap();
        let beta = select_beta(&sc, &g, &b).unwrap();
        assert_relative_eq!(ris_power(&sc, &g, &b, beta), 0.1, max_relative = 1e-12);
    }

    #[test]
    fn zero_beta_power_is_hardware_only() {
        let g = gains();
        let b = budget_40db(0.1);
        let sc = RisScenario::aris(400, 50, 0.0).unwrap();
        assert_relative_eq!(
            ris_power(&sc, &g, &b, 0.0),
            50.0 * (1e-4 + 3.1622776601683794e-4),
            max_relative = 1e-12
        );
    }

    #[test]
    fn scenario_validation() {
        assert!(RisScenario::hris(4, 3, 5, 1.0).is_err());
        assert!(RisScenario::aris(4, 3, -1.0).is_err());
        assert!(RisScenario::aris(4, 3, f64::NAN).is_err());
        assert_eq!(RisScenario::pris(4, 3).beta(), 1.0);
    }

    #[test]
    fn budget_validation() {
        assert!(PowerBudget::total(-1.0, 1e-4, 1e-4, 0.5, 100.0).is_err());
        assert!(PowerBudget::total(0.1, 1e-4, 1e-4, 0.0, 100.0).is_err());
        assert!(PowerBudget::total(0.1, 1e-4, 1e-4, 1.5, 100.0).is_err());
        assert!(PowerBudget::total(0.1, 1e-4, 1e-4, 0.5, 0.5).is_err());
        assert_relative_eq!(
            PowerBudget::beta_max_from_sq_db(40.0).unwrap(),
            100.0,
            max_relative = 1e-12
        );
    }

    #[test]
    fn phase_config_rejects_non_unit_entries() {
        let bad = vec![Complex64::new(0.5, 0.0)];
        assert!(PhaseConfig::new(bad, vec![]).is_err());
    }

    #[test]
    fn vector_form_rejects_dimension_mismatch() {
        let g = gains();
        let ch = ChannelSet::synthesize(4, 3, &g, 1).unwrap();
        let phases = align_phases(&ch.h_tr, &ch.h_st, &ch.h_rd).unwrap();
        let wrong = RisScenario::pris(4, 5);
        assert!(snr_vector_form(&wrong, &phases, &ch, &g).is_err());
    }

    #[test]
    fn uniform_amplitude_vector_properties() {
        let v = uniform_amplitude_vector(32, 0.25, 17).unwrap();
        assert_eq!(v.len(), 32);
        for z in &v {
            assert!((z.norm() - 0.25).abs() < 1e-12);
        }
        assert_eq!(v, uniform_amplitude_vector(32, 0.25, 17).unwrap());
    }
}
