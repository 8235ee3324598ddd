//! Path-loss models and LOS channel synthesis.
//!
//! The outdoor base-station-to-window link uses the 3GPP Urban Macro LOS
//! model; both indoor hops use the 3GPP InH Office model. Carrier
//! frequency enters the closed forms in GHz. Shadow fading is fixed to
//! zero so every run is deterministic.
//!
//! The window-to-reflector matrix is a far-field LOS channel and is
//! synthesized directly in rank-one form `q * g_rx * g_tx^T` with
//! seed-deterministic phases. Only amplitudes survive phase alignment,
//! so any phase realization yields the same aligned SNR; tests rely on
//! this.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::geometry::ScenarioGeometry;
use crate::units::{db_to_linear, PowerLevel};

/// Propagation constant used for breakpoint distances and wavelengths.
pub const SPEED_OF_LIGHT_M_PER_S: f64 = 3.0e8;

/// Carrier wavelength in meters for a frequency in GHz.
pub fn wavelength_m(f_c_ghz: f64) -> f64 {
    SPEED_OF_LIGHT_M_PER_S / (f_c_ghz * 1e9)
}

/// Inputs shared by both path-loss models.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathLossParams {
    /// Carrier frequency, GHz.
    pub f_c_ghz: f64,
    /// Base-station antenna gain, dBi. Applied once, on the outdoor link.
    pub g_t_dbi: f64,
    /// Terminal antenna gain, dBi. Applied on the last indoor hop.
    pub g_r_dbi: f64,
    /// InH shadow-fading sigma, dB. Must be 0 in this deterministic build.
    pub shadow_sigma_inh_db: f64,
    /// UMa LOS shadow-fading sigma, dB. Must be 0 in this deterministic build.
    pub shadow_sigma_uma_db: f64,
}

impl PathLossParams {
    pub fn new(f_c_ghz: f64, g_t_dbi: f64, g_r_dbi: f64) -> Result<Self> {
        if !f_c_ghz.is_finite() || f_c_ghz <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "carrier frequency must be positive, got {f_c_ghz} GHz"
            )));
        }
        if !(g_t_dbi.is_finite() && g_r_dbi.is_finite()) {
            return Err(Error::InvalidArgument("non-finite antenna gain".into()));
        }
        Ok(Self {
            f_c_ghz,
            g_t_dbi,
            g_r_dbi,
            shadow_sigma_inh_db: 0.0,
            shadow_sigma_uma_db: 0.0,
        })
    }

    /// 28 GHz carrier, 5 dBi base-station gain, 0 dBi omnidirectional terminal.
    pub fn standard() -> Self {
        Self::new(28.0, 5.0, 0.0).expect("standard parameters are valid")
    }

    fn with_gain(&self, g_dbi: f64) -> Self {
        Self { g_t_dbi: g_dbi, ..*self }
    }
}

/// 3GPP InH Office channel gain in dB at distance `d` meters:
/// `G_t - 32.4 - 17.3 log10(d) - 20 log10(f_c)`.
pub fn inh_gain_db(params: &PathLossParams, d: f64) -> Result<f64> {
    if !d.is_finite() || d <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "InH distance must be positive, got {d} m"
        )));
    }
    Ok(params.g_t_dbi
        - 32.4
        - 17.3 * d.log10()
        - 20.0 * params.f_c_ghz.log10()
        - params.shadow_sigma_inh_db)
}

/// Breakpoint distance for the UMa LOS model, with the standard 1 m
/// environment-height correction on both ends.
pub fn uma_breakpoint_m(params: &PathLossParams, h_bs: f64, h_ut: f64) -> f64 {
    4.0 * (h_bs - 1.0) * (h_ut - 1.0) * (params.f_c_ghz * 1e9) / SPEED_OF_LIGHT_M_PER_S
}

/// 3GPP UMa LOS channel gain in dB for the outdoor link of `geom`.
///
/// Valid for 10 m <= d_st <= 5 km. Below the breakpoint the slope is
/// 22 dB/decade over the slant distance; above it the slope steepens to
/// 40 dB/decade with the usual breakpoint correction term.
pub fn uma_los_gain_db(params: &PathLossParams, geom: &ScenarioGeometry) -> Result<f64> {
    if geom.d_st < 10.0 || geom.d_st > 5000.0 {
        return Err(Error::OutOfModelRange(format!(
            "UMa LOS model is valid for 10 m <= d_st <= 5000 m, got {} m",
            geom.d_st
        )));
    }
    let d_bp = uma_breakpoint_m(params, geom.h_bs, geom.h_ut);
    let fc_term = 20.0 * params.f_c_ghz.log10();
    let pl = if geom.d_st <= d_bp {
        28.0 + 22.0 * geom.d_st_prime.log10() + fc_term
    } else {
        let dh = geom.h_bs - geom.h_ut;
        28.0 + 40.0 * geom.d_st_prime.log10() + fc_term - 9.0 * (d_bp * d_bp + dh * dh).log10()
    };
    Ok(params.g_t_dbi - pl - params.shadow_sigma_uma_db)
}

/// Linear power gains of the three cascade hops plus transmit and noise
/// power. `|h| = sqrt(beta)` is the uniform per-element amplitude used by
/// all closed forms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkGains {
    /// Base station -> transmission surface, linear power gain.
    pub beta_st: f64,
    /// Transmission surface -> reflective surface, linear power gain.
    pub beta_tr: f64,
    /// Reflective surface -> terminal, linear power gain.
    pub beta_rd: f64,
    /// Transmit power, watts.
    pub p: f64,
    /// Noise power, watts.
    pub delta_sq: f64,
}

impl LinkGains {
    pub fn new(beta_st: f64, beta_tr: f64, beta_rd: f64, p: f64, delta_sq: f64) -> Result<Self> {
        for (name, beta) in [("beta_st", beta_st), ("beta_tr", beta_tr), ("beta_rd", beta_rd)] {
            if !beta.is_finite() || beta <= 0.0 || beta >= 1.0 {
                return Err(Error::InvalidArgument(format!(
                    "{name} must lie in (0, 1), got {beta}"
                )));
            }
        }
        if !p.is_finite() || p < 0.0 {
            return Err(Error::InvalidArgument(format!("p must be >= 0, got {p}")));
        }
        if !delta_sq.is_finite() || delta_sq <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "delta_sq must be > 0, got {delta_sq}"
            )));
        }
        Ok(Self { beta_st, beta_tr, beta_rd, p, delta_sq })
    }

    /// Product of the three hop gains.
    pub fn cascade(&self) -> f64 {
        self.beta_st * self.beta_tr * self.beta_rd
    }
}

/// Derive all link gains from the geometry. The base-station gain enters
/// once on the outdoor link; the window-to-reflector hop is taken lossless
/// at 0 dBi on both ends; the last hop uses the terminal gain.
pub fn link_gains(
    params: &PathLossParams,
    geom: &ScenarioGeometry,
    p: &PowerLevel,
    noise: &PowerLevel,
) -> Result<LinkGains> {
    let beta_st = db_to_linear(uma_los_gain_db(params, geom)?)?;
    let beta_tr = db_to_linear(inh_gain_db(&params.with_gain(0.0), geom.d_tr)?)?;
    let beta_rd = db_to_linear(inh_gain_db(&params.with_gain(params.g_r_dbi), geom.d_rd)?)?;
    LinkGains::new(beta_st, beta_tr, beta_rd, p.watts(), noise.watts())
}

/// Far-field LOS channel matrix in factored form `q * g_rx * g_tx^T`.
/// Every entry of the implied matrix has magnitude `|q|`.
#[derive(Debug, Clone, PartialEq)]
pub struct RankOneChannel {
    /// Complex path gain shared by all entries.
    pub q: Complex64,
    /// Unit-modulus receive-side phase vector, length `n_rx`.
    pub g_rx: Vec<Complex64>,
    /// Unit-modulus transmit-side phase vector, length `n_tx`.
    pub g_tx: Vec<Complex64>,
}

impl RankOneChannel {
    pub fn n_rx(&self) -> usize {
        self.g_rx.len()
    }

    pub fn n_tx(&self) -> usize {
        self.g_tx.len()
    }

    /// Entry (i, j) of the implied matrix.
    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.q * self.g_rx[i] * self.g_tx[j]
    }

    /// Per-entry magnitude of the implied matrix.
    pub fn amplitude(&self) -> f64 {
        self.q.norm()
    }
}

fn unit_phases(n: usize, rng: &mut ChaCha8Rng) -> Vec<Complex64> {
    (0..n)
        .map(|_| Complex64::from_polar(1.0, rng.random_range(0.0..TAU)))
        .collect()
}

/// Synthesize a rank-one channel with per-entry magnitude `amplitude` and
/// seed-deterministic phases. Identical seeds give identical channels.
pub fn synthesize_rank_one(
    n_rx: usize,
    n_tx: usize,
    amplitude: f64,
    seed: u64,
) -> Result<RankOneChannel> {
    if n_rx == 0 || n_tx == 0 {
        return Err(Error::InvalidArgument(format!(
            "element counts must be >= 1, got {n_rx} x {n_tx}"
        )));
    }
    if !amplitude.is_finite() || amplitude <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "amplitude must be positive, got {amplitude}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = Complex64::from_polar(amplitude, rng.random_range(0.0..TAU));
    let g_rx = unit_phases(n_rx, &mut rng);
    let g_tx = unit_phases(n_tx, &mut rng);
    Ok(RankOneChannel { q, g_rx, g_tx })
}

/// A complex vector with common entry magnitude and seed-deterministic phases.
pub fn uniform_amplitude_vector(n: usize, amplitude: f64, seed: u64) -> Result<Vec<Complex64>> {
    if n == 0 {
        return Err(Error::InvalidArgument("vector length must be >= 1".into()));
    }
    if !amplitude.is_finite() || amplitude <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "amplitude must be positive, got {amplitude}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(unit_phases(n, &mut rng).into_iter().map(|w| w * amplitude).collect())
}

/// The three channels of one cascade: incident vector at the window,
/// rank-one window-to-reflector matrix, reflector-to-terminal vector.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelSet {
    pub h_st: Vec<Complex64>,
    pub h_tr: RankOneChannel,
    pub h_rd: Vec<Complex64>,
}

impl ChannelSet {
    /// Synthesize all three channels with the uniform amplitudes implied by
    /// `gains` (`sqrt(beta)` per entry). The three draws use seeds
    /// `seed`, `seed+1`, `seed+2`.
    pub fn synthesize(n_t: usize, n_refl: usize, gains: &LinkGains, seed: u64) -> Result<Self> {
        Ok(Self {
            h_st: uniform_amplitude_vector(n_t, gains.beta_st.sqrt(), seed)?,
            h_tr: synthesize_rank_one(n_refl, n_t, gains.beta_tr.sqrt(), seed.wrapping_add(1))?,
            h_rd: uniform_amplitude_vector(n_refl, gains.beta_rd.sqrt(), seed.wrapping_add(2))?,
        })
    }
}

/// Result of the far-field rank-one validity check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FarFieldCheck {
    /// Whether the separation dominates the aperture term by at least 10x.
    pub holds: bool,
    /// `d_tr / (sqrt(n_rx) * l^2 / lambda)`.
    pub ratio: f64,
    /// The aperture term `sqrt(n_rx) * l^2 / lambda`, meters.
    pub threshold_m: f64,
}

/// Check the far-field condition `d_tr >> sqrt(n_rx) * l^2 / lambda`,
/// operationalized as a factor-10 margin. `l` is the element spacing in
/// meters and `lambda` the carrier wavelength in meters.
pub fn farfield_holds(d_tr: f64, n_rx: usize, l: f64, lambda: f64) -> Result<FarFieldCheck> {
    if !(d_tr.is_finite() && l.is_finite() && lambda.is_finite())
        || d_tr <= 0.0
        || l <= 0.0
        || lambda <= 0.0
        || n_rx == 0
    {
        return Err(Error::InvalidArgument(
            "far-field check requires positive d_tr, n_rx, l and lambda".into(),
        ));
    }
    let threshold_m = (n_rx as f64).sqrt() * l * l / lambda;
    let ratio = d_tr / threshold_m;
    Ok(FarFieldCheck { holds: ratio >= 10.0, ratio, threshold_m })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::build_table1_geometry;
    use approx::assert_relative_eq;

    fn params() -> PathLossParams {
        PathLossParams::standard()
    }

    #[test]
    fn inh_gain_reference_points() {
        // log10(1) = 0 removes the distance term.
        let g1 = inh_gain_db(&params(), 1.0).unwrap();
        assert_relative_eq!(g1, 5.0 - 32.4 - 20.0 * 28f64.log10(), max_relative = 1e-12);
        assert_relative_eq!(g1, -56.34316062684438, max_relative = 1e-12);

        let g2 = inh_gain_db(&params(), 4.4721).unwrap();
        assert_relative_eq!(g2, -67.59700968384242, max_relative = 1e-12);

        let g3 = inh_gain_db(&PathLossParams::new(28.0, 0.0, 0.0).unwrap(), 2.8284).unwrap();
        assert_relative_eq!(g3, -69.15481696113909, max_relative = 1e-12);
    }

    #[test]
    fn inh_rejects_nonpositive_distance() {
        assert!(inh_gain_db(&params(), 0.0).is_err());
        assert!(inh_gain_db(&params(), -3.0).is_err());
    }

    #[test]
    fn uma_gain_reference_points() {
        let g10 = uma_los_gain_db(&params(), &build_table1_geometry(10.0).unwrap()).unwrap();
        assert_relative_eq!(g10, -75.20571567853158, max_relative = 1e-12);
        assert!((g10 + 75.0).abs() < 0.5, "expected about -75 dB, got {g10}");

        let g20 = uma_los_gain_db(&params(), &build_table1_geometry(20.0).unwrap()).unwrap();
        let pl1 = 28.0 + 22.0 * (400f64 + 30.25).sqrt().log10() + 20.0 * 28f64.log10();
        assert_relative_eq!(g20, 5.0 - pl1, max_relative = 1e-12);
        assert_relative_eq!(g20, -80.91409029583997, max_relative = 1e-12);
    }

    #[test]
    fn uma_breakpoint_is_beyond_valid_range_at_28ghz() {
        let d_bp = uma_breakpoint_m(&params(), 25.0, 19.5);
        assert_relative_eq!(d_bp, 165_760.0, max_relative = 1e-12);
        assert!(d_bp > 5000.0);
    }

    #[test]
    fn uma_steep_branch_below_1ghz() {
        // At 0.7 GHz the breakpoint falls inside the valid range, so the
        // 40 dB/decade branch is reachable.
        let p = PathLossParams::new(0.7, 5.0, 0.0).unwrap();
        let d_bp = uma_breakpoint_m(&p, 25.0, 19.5);
        assert_relative_eq!(d_bp, 4144.0, max_relative = 1e-12);

        let g = uma_los_gain_db(&p, &build_table1_geometry(4500.0).unwrap()).unwrap();
        assert_relative_eq!(g, -100.91691200010504, max_relative = 1e-12);

        // The two slopes agree at the breakpoint.
        let lo = uma_los_gain_db(&p, &build_table1_geometry(d_bp - 1e-6).unwrap()).unwrap();
        let hi = uma_los_gain_db(&p, &build_table1_geometry(d_bp + 1e-6).unwrap()).unwrap();
        assert!((lo - hi).abs() < 1e-6, "discontinuity at breakpoint: {lo} vs {hi}");
    }

    #[test]
    fn uma_range_limits() {
        let geom = ScenarioGeometry::with_heights(6000.0, 25.0, 19.5).unwrap();
        assert!(matches!(
            uma_los_gain_db(&params(), &geom),
            Err(Error::OutOfModelRange(_))
        ));
    }

    #[test]
    fn path_loss_strictly_decreasing_in_distance() {
        let mut last_inh = inh_gain_db(&params(), 1.0).unwrap();
        let mut last_uma =
            uma_los_gain_db(&params(), &build_table1_geometry(10.0).unwrap()).unwrap();
        for i in 1..=100 {
            let d = 1.0 + i as f64;
            let g = inh_gain_db(&params(), d).unwrap();
            assert!(g < last_inh);
            last_inh = g;
            let u =
                uma_los_gain_db(&params(), &build_table1_geometry(10.0 + 40.0 * i as f64).unwrap())
                    .unwrap();
            assert!(u < last_uma);
            last_uma = u;
        }
    }

    #[test]
    fn link_gains_reference_values() {
        let geom = build_table1_geometry(10.0).unwrap();
        let p = PowerLevel::from_dbw(20.0).unwrap();
        let noise = PowerLevel::from_dbm(-94.0).unwrap();
        let g = link_gains(&params(), &geom, &p, &noise).unwrap();
        assert_relative_eq!(g.beta_st, 10f64.powf(-7.520571567853158), max_relative = 1e-12);
        assert_relative_eq!(g.beta_tr, 10f64.powf(-7.259707008933782), max_relative = 1e-12);
        assert_relative_eq!(g.beta_rd, 1.2148176652212236e-7, max_relative = 1e-12);
        assert_relative_eq!(g.delta_sq, 3.981071705534969e-13, max_relative = 1e-12);
        assert_relative_eq!(g.p, 100.0, max_relative = 1e-12);
        assert!(g.beta_st > 0.0 && g.beta_st < 1.0);
        assert!(g.beta_tr > 0.0 && g.beta_tr < 1.0);
        assert!(g.beta_rd > 0.0 && g.beta_rd < 1.0);
    }

    #[test]
    fn link_gains_scale_consistent_in_power() {
        let geom = build_table1_geometry(12.0).unwrap();
        let noise = PowerLevel::from_dbm(-94.0).unwrap();
        let a = link_gains(&params(), &geom, &PowerLevel::from_watts(1.0).unwrap(), &noise)
            .unwrap();
        let b = link_gains(&params(), &geom, &PowerLevel::from_watts(2.0).unwrap(), &noise)
            .unwrap();
        assert_eq!(a.beta_st, b.beta_st);
        assert_eq!(a.beta_tr, b.beta_tr);
        assert_eq!(a.beta_rd, b.beta_rd);
        assert_relative_eq!(b.p, 2.0 * a.p, max_relative = 1e-15);
    }

    #[test]
    fn rank_one_scalar_case() {
        let ch = synthesize_rank_one(1, 1, 1.0, 3).unwrap();
        assert_relative_eq!(ch.entry(0, 0).norm(), 1.0, max_relative = 1e-12);
    }

    #[test]
    fn rank_one_singular_values() {
        // The outer product of unit-modulus vectors has singular values
        // (amplitude * sqrt(n_rx * n_tx), 0, ...).
        let ch = synthesize_rank_one(3, 2, 1.0, 11).unwrap();
        let m = nalgebra::DMatrix::from_fn(3, 2, |i, j| ch.entry(i, j));
        let svd = m.svd(false, false);
        let mut sv: Vec<f64> = svd.singular_values.iter().copied().collect();
        sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
        assert_relative_eq!(sv[0], 6f64.sqrt(), max_relative = 1e-12);
        assert!(sv[1] < 1e-10 * sv[0], "second singular value too large: {}", sv[1]);
    }

    #[test]
    fn rank_one_determinism() {
        let a = synthesize_rank_one(16, 8, 0.5, 99).unwrap();
        let b = synthesize_rank_one(16, 8, 0.5, 99).unwrap();
        assert_eq!(a, b);
        let c = synthesize_rank_one(16, 8, 0.5, 100).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn rank_one_rejects_degenerate_inputs() {
        assert!(synthesize_rank_one(0, 4, 1.0, 0).is_err());
        assert!(synthesize_rank_one(4, 0, 1.0, 0).is_err());
        assert!(synthesize_rank_one(4, 4, 0.0, 0).is_err());
        assert!(synthesize_rank_one(4, 4, -1.0, 0).is_err());
    }

    #[test]
    fn unit_modulus_invariant() {
        let ch = synthesize_rank_one(64, 32, 2.5, 5).unwrap();
        for g in ch.g_rx.iter().chain(ch.g_tx.iter()) {
            assert!((g.norm() - 1.0).abs() < 1e-12);
        }
        assert_relative_eq!(ch.amplitude(), 2.5, max_relative = 1e-12);
    }

    #[test]
    fn farfield_reference_case() {
        // 1000 elements at half-wavelength spacing, desk-scale separation.
        let chk = farfield_holds(4.4721, 1000, 0.005357, 0.0107).unwrap();
        assert!(chk.holds);
        assert_relative_eq!(chk.threshold_m, 0.08481243166030036, max_relative = 1e-12);
        assert_relative_eq!(chk.ratio, 52.72929819902021, max_relative = 1e-12);
    }

    #[test]
    fn farfield_boundary() {
        let thr = (1000f64).sqrt() * 0.005357 * 0.005357 / 0.0107;
        let at = farfield_holds(10.0 * thr, 1000, 0.005357, 0.0107).unwrap();
        assert!(at.holds);
        assert_relative_eq!(at.ratio, 10.0, max_relative = 1e-12);
        let below = farfield_holds(thr / 2.0, 1000, 0.005357, 0.0107).unwrap();
        assert!(!below.holds);
    }

    #[test]
    fn wavelength_at_28ghz() {
        assert_relative_eq!(wavelength_m(28.0), 3.0e8 / 28e9, max_relative = 1e-15);
    }
}
