use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerances shared by every exact operation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TolerancePolicy {
    /// Chain closure, degeneracy and boundary band.
    pub tau_geom: f64,
    /// Relative symmetric-difference area below which two sets are equal.
    pub tau_set: f64,
    /// Equality of medial radii.
    pub tau_radius: f64,
}

impl Default for TolerancePolicy {
    fn default() -> Self {
        TolerancePolicy { tau_geom: 1e-9, tau_set: 1e-7, tau_radius: 1e-9 }
    }
}

impl TolerancePolicy {
    pub fn new(tau_geom: f64, tau_set: f64, tau_radius: f64) -> Result<Self> {
        let t = TolerancePolicy { tau_geom, tau_set, tau_radius };
        t.check()?;
        Ok(t)
    }

    pub fn check(&self) -> Result<()> {
        for (name, v) in [("tau_geom", self.tau_geom), ("tau_set", self.tau_set), ("tau_radius", self.tau_radius)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::BadParameter(format!("{name} must be a positive finite number, got {v}")));
            }
        }
        Ok(())
    }
}
