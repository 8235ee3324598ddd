//! Unit-safe power and gain conversions.
//!
//! The canonical internal power unit is watts; dB, dBm and dBW appear only
//! at the configuration boundary. Conversions follow the usual power
//! conventions: `x dB -> 10^(x/10)`, `x dBm -> 10^((x-30)/10) W`,
//! `x dBW -> 10^(x/10) W`.

use crate::error::{Error, Result};

/// Convert a dB-valued power ratio to linear.
pub fn db_to_linear(db: f64) -> Result<f64> {
    if !db.is_finite() {
        return Err(Error::InvalidArgument(format!("non-finite dB value: {db}")));
    }
    Ok(10f64.powf(db / 10.0))
}

/// Convert a linear power ratio (> 0) to dB.
pub fn linear_to_db(ratio: f64) -> Result<f64> {
    if !ratio.is_finite() || ratio <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "linear ratio must be finite and positive, got {ratio}"
        )));
    }
    Ok(10.0 * ratio.log10())
}

/// Convert a dBm-valued power to watts.
pub fn dbm_to_watts(dbm: f64) -> Result<PowerLevel> {
    if !dbm.is_finite() {
        return Err(Error::InvalidArgument(format!("non-finite dBm value: {dbm}")));
    }
    PowerLevel::from_watts(10f64.powf((dbm - 30.0) / 10.0))
}

/// A dimensionless ratio in decibels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Decibel(f64);

impl Decibel {
    pub fn new(value: f64) -> Result<Self> {
        if !value.is_finite() {
            return Err(Error::InvalidArgument(format!("non-finite dB value: {value}")));
        }
        Ok(Self(value))
    }

    pub fn from_linear(ratio: f64) -> Result<Self> {
        Ok(Self(linear_to_db(ratio)?))
    }

    pub fn value(&self) -> f64 {
        self.0
    }

    pub fn linear(&self) -> f64 {
        10f64.powf(self.0 / 10.0)
    }
}

/// A non-negative power, stored in watts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLevel {
    watts: f64,
}

impl PowerLevel {
    pub fn from_watts(watts: f64) -> Result<Self> {
        if !watts.is_finite() || watts < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "power must be finite and non-negative, got {watts} W"
            )));
        }
        Ok(Self { watts })
    }

    /// 0 dBm is 1 mW.
    pub fn from_dbm(dbm: f64) -> Result<Self> {
        dbm_to_watts(dbm)
    }

    /// 0 dBW is 1 W.
    pub fn from_dbw(dbw: f64) -> Result<Self> {
        if !dbw.is_finite() {
            return Err(Error::InvalidArgument(format!("non-finite dBW value: {dbw}")));
        }
        Self::from_watts(10f64.powf(dbw / 10.0))
    }

    pub fn watts(&self) -> f64 {
        self.watts
    }

    pub fn dbm(&self) -> f64 {
        10.0 * (self.watts * 1e3).log10()
    }

    pub fn dbw(&self) -> f64 {
        10.0 * self.watts.log10()
    }
}
