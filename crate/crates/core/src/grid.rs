use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Uniform time grid in natural units (`hbar = k_B = 1`); `t_j = j * dt`.
///
/// Noise increments are attached to grid steps, so a grid fixes both the
/// integration step of the coefficient flows and the label space of the
/// discretized quantum Brownian motion (singular equal-time correlations
/// `delta(t - t')` become `delta_{jk} / dt`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimeGrid {
    dt: f64,
    n_steps: usize,
}

impl TimeGrid {
    pub fn new(dt: f64, n_steps: usize) -> Result<Self> {
        if !dt.is_finite() || dt <= 0.0 {
            return Err(Error::invalid_parameter(format!("dt must be positive, got {dt}")));
        }
        if n_steps == 0 {
            return Err(Error::invalid_parameter("n_steps must be at least 1"));
        }
        Ok(TimeGrid { dt, n_steps })
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn n_steps(&self) -> usize {
        self.n_steps
    }

    /// Time of grid node `step` (`0 ..= n_steps`).
    pub fn time(&self, step: usize) -> f64 {
        step as f64 * self.dt
    }

    pub fn total_time(&self) -> f64 {
        self.time(self.n_steps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_parameters() {
        assert!(TimeGrid::new(0.0, 10).is_err());
        assert!(TimeGrid::new(-1e-3, 10).is_err());
        assert!(TimeGrid::new(f64::NAN, 10).is_err());
        assert!(TimeGrid::new(1e-3, 0).is_err());
    }

    #[test]
    fn node_times() {
        let g = TimeGrid::new(0.25, 4).unwrap();
        assert_eq!(g.time(0), 0.0);
        assert_eq!(g.time(3), 0.75);
        assert_eq!(g.total_time(), 1.0);
    }
}
