//! Picking a solver from structural statistics.

use serde::Serialize;
use thiserror::Error;

use crate::instance::Instance;
use crate::order::{dlo, height, width};
use crate::outerplanar::is_outerplanar;

/// Instances this small are always within reach of the exhaustive search.
pub const ORACLE_FALLBACK_N: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Outerplanar,
    Width,
    Dlo,
    Oracle,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::Outerplanar => "outerplanar",
            Strategy::Width => "width",
            Strategy::Dlo => "dlo",
            Strategy::Oracle => "oracle",
        }
    }
}

impl std::str::FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "outerplanar" => Ok(Strategy::Outerplanar),
            "width" => Ok(Strategy::Width),
            "dlo" => Ok(Strategy::Dlo),
            "oracle" => Ok(Strategy::Oracle),
            _ => Err(format!("unknown algorithm `{s}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InstanceStats {
    pub n: usize,
    pub m: usize,
    pub width: usize,
    pub height: usize,
    pub dlo: usize,
    pub outerplanar: bool,
}

impl InstanceStats {
    pub fn of(instance: &Instance) -> Self {
        let order = instance.order();
        Self {
            n: instance.n(),
            m: instance.graph().m(),
            width: width(order),
            height: height(order),
            dlo: dlo(order),
            outerplanar: is_outerplanar(instance.graph()),
        }
    }

    /// `k · min(n^k, 2^n)` for the chain-tuple program.
    pub fn width_estimate(&self) -> f64 {
        let (n, k) = (self.n as f64, self.width as f64);
        k * n.powf(k).min(2f64.powf(n))
    }

    /// `(d + 1) · 2^d · n` for the distance-to-linear-order program.
    pub fn dlo_estimate(&self) -> f64 {
        let d = self.dlo as f64;
        (d + 1.0) * 2f64.powf(d) * self.n as f64
    }

    /// `2 n²` interval states.
    pub fn outerplanar_estimate(&self) -> f64 {
        2.0 * (self.n as f64).powi(2)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SelectError {
    #[error(
        "no strategy fits the budget of {budget} states (width needs ~{width:.3e}, dlo ~{dlo:.3e}) and n = {n} is too large for exhaustive search"
    )]
    NoFeasibleStrategy {
        n: usize,
        budget: usize,
        width: f64,
        dlo: f64,
    },
}

pub fn select_algorithm(instance: &Instance, budget: usize) -> Result<Strategy, SelectError> {
    select_for_stats(&InstanceStats::of(instance), budget)
}

pub fn select_for_stats(stats: &InstanceStats, budget: usize) -> Result<Strategy, SelectError> {
    let budget_f = budget as f64;
    if stats.outerplanar && stats.outerplanar_estimate() <= budget_f {
        return Ok(Strategy::Outerplanar);
    }
    let (w, d) = (stats.width_estimate(), stats.dlo_estimate());
    let best = if w <= d {
        (Strategy::Width, w)
    } else {
        (Strategy::Dlo, d)
    };
    if best.1 <= budget_f {
        return Ok(best.0);
    }
    if stats.n <= ORACLE_FALLBACK_N {
        return Ok(Strategy::Oracle);
    }
    Err(SelectError::NoFeasibleStrategy {
        n: stats.n,
        budget,
        width: w,
        dlo: d,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dp::DEFAULT_STATE_BUDGET;

    fn stats(n: usize, width: usize, dlo: usize, outerplanar: bool) -> InstanceStats {
        InstanceStats {
            n,
            m: 0,
            width,
            height: n - dlo,
            dlo,
            outerplanar,
        }
    }

    #[test]
    fn examples() {
        assert_eq!(
            select_for_stats(&stats(50, 20, 30, true), DEFAULT_STATE_BUDGET),
            Ok(Strategy::Outerplanar)
        );
        let s = stats(1000, 2, 900, false);
        assert_eq!(s.width_estimate(), 2.0e6);
        assert_eq!(
            select_for_stats(&s, DEFAULT_STATE_BUDGET),
            Ok(Strategy::Width)
        );
        let s = stats(100_000, 5, 4, false);
        assert_eq!(s.dlo_estimate(), 8.0e6);
        assert_eq!(
            select_for_stats(&s, DEFAULT_STATE_BUDGET),
            Ok(Strategy::Dlo)
        );
    }

    #[test]
    fn fallbacks() {
        assert_eq!(
            select_for_stats(&stats(12, 6, 6, false), 10),
            Ok(Strategy::Oracle)
        );
        assert!(matches!(
            select_for_stats(&stats(60, 30, 30, false), DEFAULT_STATE_BUDGET),
            Err(SelectError::NoFeasibleStrategy { .. })
        ));
    }
}
