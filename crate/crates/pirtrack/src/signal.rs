//! Uniformly sampled scalar time series shared by the simulation and
//! estimation stages.

use crate::error::{Error, Result};

/// A uniformly sampled scalar signal (sensor output voltage or recovered
/// differential heat flux), tagged with its sample rate and start time.
#[derive(Debug, Clone, PartialEq)]
pub struct SignalTrace {
    pub samples: Vec<f64>,
    pub sample_rate: f64,
    pub t0: f64,
}

impl SignalTrace {
    pub fn new(samples: Vec<f64>, sample_rate: f64, t0: f64) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::InvalidInput("trace has no samples".into()));
        }
        if !(sample_rate > 0.0) {
            return Err(Error::InvalidInput(format!(
                "sample rate must be positive, got {sample_rate}"
            )));
        }
        Ok(Self {
            samples,
            sample_rate,
            t0,
        })
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Sample spacing in seconds.
    pub fn dt(&self) -> f64 {
        1.0 / self.sample_rate
    }

    /// Duration covered by the trace, counting one full interval per sample.
    pub fn duration(&self) -> f64 {
        self.samples.len() as f64 / self.sample_rate
    }

    /// Timestamp of sample `i`.
    pub fn time_at(&self, i: usize) -> f64 {
        self.t0 + i as f64 / self.sample_rate
    }

    /// An all-zero trace with the same timing.
    pub fn zeros_like(&self) -> Self {
        Self {
            samples: vec![0.0; self.samples.len()],
            sample_rate: self.sample_rate,
            t0: self.t0,
        }
    }

    pub fn mean(&self) -> f64 {
        self.samples.iter().sum::<f64>() / self.samples.len() as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty_and_bad_rate() {
        assert!(SignalTrace::new(vec![], 100.0, 0.0).is_err());
        assert!(SignalTrace::new(vec![1.0], 0.0, 0.0).is_err());
        assert!(SignalTrace::new(vec![1.0], -5.0, 0.0).is_err());
    }

    #[test]
    fn timing_accessors() {
        let t = SignalTrace::new(vec![0.0; 200], 100.0, 1.5).unwrap();
        assert_eq!(t.dt(), 0.01);
        assert_eq!(t.duration(), 2.0);
        assert_eq!(t.time_at(0), 1.5);
        assert!((t.time_at(199) - 3.49).abs() < 1e-12);
    }
}
