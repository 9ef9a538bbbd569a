//! Diversity-multiplexing tradeoff of the MIMO half-duplex relay channel.
//!
//! - [`exponents`], [`ptp`], [`region`]: exponent algebra and DMT primitives.
//! - [`solvers`]: numerical and closed-form DMT curves.
//! - [`channel`]: Monte Carlo outage simulation over Rayleigh fading.

pub mod channel;
pub mod config;
pub mod error;
pub mod exponents;
pub mod ptp;
pub mod region;
pub mod solvers;

pub use config::AntennaConfig;
pub use error::{DmtError, Result};
pub use exponents::{
    exponent_e, objective_f, phi_map, rate_exponent, support_contains, ExponentTriple, LevelTriple,
};
pub use ptp::{fd_dmt, ptp_dmt};
pub use region::{b_interval, region_r, Interval};
