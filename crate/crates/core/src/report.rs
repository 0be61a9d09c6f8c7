//! One-call solving with algorithm selection and a serializable report.

use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::cost::Cost;
use crate::dp::SolveError;
use crate::instance::{verify_solution, Instance, OrderedHamPath, VerifyError};
use crate::oracle::{solve_bruteforce, DEFAULT_CAP};
use crate::outerplanar::{solve_outerplanar, OuterplanarError};
use crate::select::{select_for_stats, InstanceStats, SelectError, Strategy};
use crate::width::{solve_width_dp_with, WidthConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Feasible,
    Infeasible,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveReport {
    pub status: Status,
    #[serde(skip)]
    pub cost: Option<Cost>,
    pub cost_num: Option<i64>,
    pub cost_den: Option<i64>,
    pub path: Option<Vec<usize>>,
    pub algorithm: Strategy,
    pub stats: InstanceStats,
    pub millis: u128,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DispatchError {
    #[error(transparent)]
    Select(#[from] SelectError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Outerplanar(#[from] OuterplanarError),
    #[error("solver returned an invalid path: {0}")]
    Invalid(#[from] VerifyError),
    #[error("solver reported a cost that differs from its path's cost")]
    CostMismatch,
}

/// Solves `instance` with `algorithm`, or an automatically selected one.
pub fn solve(
    instance: &Instance,
    algorithm: Option<Strategy>,
    budget: usize,
) -> Result<SolveReport, DispatchError> {
    let started = Instant::now();
    let stats = InstanceStats::of(instance);
    let strategy = match algorithm {
        Some(s) => s,
        None => select_for_stats(&stats, budget)?,
    };
    let path = run(instance, strategy, budget)?;
    if let Some(p) = &path {
        let checked = verify_solution(instance, &p.sequence)?;
        if checked.cost != p.cost {
            return Err(DispatchError::CostMismatch);
        }
    }
    Ok(SolveReport {
        status: if path.is_some() {
            Status::Feasible
        } else {
            Status::Infeasible
        },
        cost: path.as_ref().map(|p| p.cost),
        cost_num: path.as_ref().map(|p| *p.cost.numer()),
        cost_den: path.as_ref().map(|p| *p.cost.denom()),
        path: path.map(|p| p.sequence),
        algorithm: strategy,
        stats,
        millis: started.elapsed().as_millis(),
    })
}

fn run(
    instance: &Instance,
    strategy: Strategy,
    budget: usize,
) -> Result<Option<OrderedHamPath>, DispatchError> {
    Ok(match strategy {
        Strategy::Outerplanar => solve_outerplanar(instance)?,
        Strategy::Width => {
            let cfg = WidthConfig {
                budget,
                ..WidthConfig::default()
            };
            solve_width_dp_with(instance, &cfg)?.path
        }
        Strategy::Dlo => crate::dlo::solve_dlo_dp_with(instance, budget)?.path,
        Strategy::Oracle => solve_bruteforce(instance, DEFAULT_CAP)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dp::DEFAULT_STATE_BUDGET;
    use crate::testutil::small_instance;

    #[test]
    fn all_strategies_agree() {
        for seed in 0..100 {
            let inst = small_instance(seed, 8);
            let auto = solve(&inst, None, DEFAULT_STATE_BUDGET).unwrap();
            for s in [Strategy::Width, Strategy::Dlo, Strategy::Oracle] {
                let r = solve(&inst, Some(s), DEFAULT_STATE_BUDGET).unwrap();
                assert_eq!(
                    (r.status, r.cost, &r.path),
                    (auto.status, auto.cost, &auto.path)
                );
            }
        }
    }

    #[test]
    fn json_field_names() {
        let inst = small_instance(1, 5);
        let r = solve(&inst, Some(Strategy::Oracle), DEFAULT_STATE_BUDGET).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
        assert_eq!(
            keys,
            [
                "algorithm",
                "cost_den",
                "cost_num",
                "millis",
                "path",
                "stats",
                "status"
            ]
        );
    }
}
