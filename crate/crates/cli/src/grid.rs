//! `--x` lists and `--x-range start:stop:step` specs.

use std::str::FromStr;

use crate::CliError;

/// An inclusive range; `stop` is kept when it lies within half a step of the
/// last generated point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RangeSpec {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl FromStr for RangeSpec {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || CliError::Usage(format!("invalid range '{s}', expected start:stop:step"));
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(bad());
        }
        let num = |p: &str| p.trim().parse::<f64>().map_err(|_| bad());
        let spec = RangeSpec {
            start: num(parts[0])?,
            stop: num(parts[1])?,
            step: num(parts[2])?,
        };
        if !(spec.start.is_finite() && spec.stop.is_finite()) {
            return Err(bad());
        }
        if !(spec.step > 0.0 && spec.step.is_finite()) {
            return Err(CliError::Usage(format!("range step must be positive, got {}", spec.step)));
        }
        if spec.stop < spec.start {
            return Err(CliError::Usage(format!("range stop {} is below start {}", spec.stop, spec.start)));
        }
        Ok(spec)
    }
}

impl RangeSpec {
    /// Points start + i·step, computed by multiplication so errors do not accumulate.
    pub fn points(&self) -> Vec<f64> {
        let span = (self.stop - self.start) / self.step;
        let count = (span + 0.5).floor() as usize + 1;
        (0..count)
            .map(|i| {
                let x = self.start + i as f64 * self.step;
                // snap values like 0.30000000000000004 back to the decimal grid
                let snapped = (x * 1e12).round() / 1e12;
                if (snapped - x).abs() < 1e-12 * x.abs().max(1.0) {
                    snapped
                } else {
                    x
                }
            })
            .collect()
    }
}

/// Grid from explicit points followed by range points.
pub fn build_grid(xs: &[f64], ranges: &[RangeSpec]) -> Vec<f64> {
    let mut out = xs.to_vec();
    for r in ranges {
        out.extend(r.points());
    }
    out
}
