//! Deployment geometry for the indoor enhancement scenario.
//!
//! The base station sits outdoors at height `h_bs`; the transmission
//! surface is mounted on the window at height `h_ut`, a horizontal
//! distance `d_st` from the base station. The reflective surface and the
//! user terminal sit indoors at the same height, at fixed offsets from
//! the window:
//!
//! ```text
//! transmission surface  (d_st,     0, h_ut)
//! reflective surface    (d_st + 2, 4, h_ut)
//! user terminal         (d_st + 4, 2, h_ut)
//! ```
//!
//! The slant distance to the window is `d_st' = sqrt(d_st^2 + (h_bs - h_ut)^2)`;
//! the indoor links are horizontal.

use crate::error::{Error, Result};

/// Standard base-station height, meters.
pub const DEFAULT_H_BS_M: f64 = 25.0;
/// Standard window / terminal height, meters.
pub const DEFAULT_H_UT_M: f64 = 19.5;

/// Minimum horizontal distance supported by the outdoor macro model.
pub const MIN_D_ST_M: f64 = 10.0;

/// A point in 3-D Cartesian coordinates, meters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point3 {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        if !(x.is_finite() && y.is_finite() && z.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "non-finite coordinates ({x}, {y}, {z})"
            )));
        }
        Ok(Self { x, y, z })
    }

    pub fn distance(&self, other: &Point3) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        let dz = self.z - other.z;
        (dx * dx + dy * dy + dz * dz).sqrt()
    }
}

/// Positions and derived link distances for one deployment.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioGeometry {
    /// Horizontal base-station-to-window distance, meters.
    pub d_st: f64,
    /// Base-station height, meters.
    pub h_bs: f64,
    /// Window / indoor height, meters.
    pub h_ut: f64,
    pub pos_tris: Point3,
    pub pos_rris: Point3,
    pub pos_ue: Point3,
    /// Slant base-station-to-window distance, meters.
    pub d_st_prime: f64,
    /// Window-to-reflective-surface distance, meters.
    pub d_tr: f64,
    /// Reflective-surface-to-terminal distance, meters.
    pub d_rd: f64,
}

impl ScenarioGeometry {
    /// Build the geometry with explicit heights.
    pub fn with_heights(d_st: f64, h_bs: f64, h_ut: f64) -> Result<Self> {
        if !d_st.is_finite() || d_st < MIN_D_ST_M {
            return Err(Error::OutOfModelRange(format!(
                "d_st must be at least {MIN_D_ST_M} m, got {d_st}"
            )));
        }
        if !(h_bs.is_finite() && h_ut.is_finite()) {
            return Err(Error::InvalidArgument("non-finite height".into()));
        }
        let pos_tris = Point3::new(d_st, 0.0, h_ut)?;
        let pos_rris = Point3::new(d_st + 2.0, 4.0, h_ut)?;
        let pos_ue = Point3::new(d_st + 4.0, 2.0, h_ut)?;
        let dh = h_bs - h_ut;
        Ok(Self {
            d_st,
            h_bs,
            h_ut,
            pos_tris,
            pos_rris,
            pos_ue,
            d_st_prime: (d_st * d_st + dh * dh).sqrt(),
            d_tr: pos_tris.distance(&pos_rris),
            d_rd: pos_rris.distance(&pos_ue),
        })
    }
}

/// Build the standard geometry (`h_bs` = 25 m, `h_ut` = 19.5 m) for a
/// given horizontal distance.
pub fn build_table1_geometry(d_st: f64) -> Result<ScenarioGeometry> {
    ScenarioGeometry::with_heights(d_st, DEFAULT_H_BS_M, DEFAULT_H_UT_M)
}
