//! Deterministic link-budget models and closed-form SNR optimizers for
//! mmWave indoor signal enhancement through a glass-mounted transmission
//! surface plus an indoor reflective surface (passive, active or hybrid).
//!
//! The crate is split along the data flow:
//!
//! * [`units`] — dB/dBm/dBW conversions; everything downstream works in
//!   linear watts.
//! * [`geometry`] — the fixed indoor deployment geometry and link distances.
//! * [`channel`] — 3GPP UMa-LOS / InH-Office path-loss models, per-link
//!   linear gains, and rank-one LOS channel synthesis.
//! * [`ris`] — phase alignment, vector-form and closed-form SNR, amplifier
//!   selection and surface power models.
//! * [`optimize`] — closed-form element-count optimizers plus brute-force
//!   integer oracles.
//! * [`metrics`] — rate, total system power, energy efficiency and the
//!   performance index.
//!
//! All operations are pure functions over immutable inputs; seeded channel
//! synthesis is deterministic and reentrant.

pub mod channel;
pub mod error;
pub mod geometry;
pub mod metrics;
pub mod optimize;
pub mod ris;
pub mod units;

pub use channel::{ChannelSet, LinkGains, PathLossParams, RankOneChannel};
pub use error::{Error, Result};
pub use geometry::{Point3, ScenarioGeometry};
pub use metrics::{LinkResult, SystemPower};
pub use optimize::{BetaBranch, HrisOperatingPoint, OptimumReport};
pub use ris::{BudgetMode, PhaseConfig, PowerBudget, RisKind, RisScenario};
pub use units::{Decibel, PowerLevel};
