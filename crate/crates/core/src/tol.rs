//! Numerical tolerances shared by every module.
//!
//! Sign decisions (admissibility, homeomorphism, genericity, stability) use
//! [`EPS_SIGN`]; residual checks on linear solves use [`EPS_LIN`].

use serde::{Deserialize, Serialize};

/// Band used for every sign decision on determinants and first components.
pub const EPS_SIGN: f64 = 1e-9;

/// Residual tolerance for linear-algebra identities.
pub const EPS_LIN: f64 = 1e-12;

/// Relative closure tolerance for regenerated cycle orbits.
pub const EPS_CLOSURE: f64 = 1e-9;

/// Tolerance set threaded through the higher-level operations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    pub sign: f64,
    pub lin: f64,
    pub closure: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            sign: EPS_SIGN,
            lin: EPS_LIN,
            closure: EPS_CLOSURE,
        }
    }
}
