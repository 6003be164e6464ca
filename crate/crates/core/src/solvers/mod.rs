//! The five placement heuristics and the shared 1-center subroutine.
//!
//! Every solver is a pure function of `(instance, config)`. Randomness comes
//! from a single generator seeded with [`SolverConfig::seed`] and is consumed
//! only at Greedy tie-breaks (and therefore inside Backtrack), at MacQueen's
//! initial placement, and at the optional random 2-Approx start.
//!
//! All objective comparisons are strict `<` on raw values: a move is an
//! improvement only if it decreases `D`.

mod backtrack;
mod dragoon;
mod farthest;
mod greedy;
mod macqueen;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::instance::{DistanceMatrix, Instance, Solution};
use crate::{Error, Result, Scalar};

pub use backtrack::solve_backtrack;
pub use dragoon::{solve_dragoon, STAGE_PLACEMENT};
pub use farthest::solve_two_approx;
pub use greedy::solve_greedy;
pub use macqueen::{solve_macqueen, solve_macqueen_from};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolverKind {
    Dragoon,
    TwoApprox,
    #[serde(rename = "macqueen")]
    MacQueen,
    Greedy,
    Backtrack,
}

impl SolverKind {
    pub const ALL: [SolverKind; 5] = [
        SolverKind::Dragoon,
        SolverKind::TwoApprox,
        SolverKind::MacQueen,
        SolverKind::Greedy,
        SolverKind::Backtrack,
    ];

    /// Stable lowercase name used on the command line and in CSV files.
    pub fn name(self) -> &'static str {
        match self {
            SolverKind::Dragoon => "dragoon",
            SolverKind::TwoApprox => "two-approx",
            SolverKind::MacQueen => "macqueen",
            SolverKind::Greedy => "greedy",
            SolverKind::Backtrack => "backtrack",
        }
    }

    /// Identifier of the random stream a solver draws from when campaigns
    /// derive per-instance seeds. Backtrack's only randomness is its Greedy
    /// phase, so it shares Greedy's stream; this keeps `D_backtrack <=
    /// D_greedy` true record by record.
    pub fn seed_stream(self) -> u64 {
        match self {
            SolverKind::Dragoon => 1,
            SolverKind::TwoApprox => 2,
            SolverKind::MacQueen => 3,
            SolverKind::Greedy | SolverKind::Backtrack => 4,
        }
    }
}

impl fmt::Display for SolverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SolverKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm: String = s
            .chars()
            .filter(|c| !matches!(c, '-' | '_' | ' '))
            .flat_map(char::to_lowercase)
            .collect();
        match norm.as_str() {
            "dragoon" => Ok(SolverKind::Dragoon),
            "twoapprox" | "2approx" => Ok(SolverKind::TwoApprox),
            "macqueen" => Ok(SolverKind::MacQueen),
            "greedy" => Ok(SolverKind::Greedy),
            "backtrack" => Ok(SolverKind::Backtrack),
            _ => Err(Error::InvalidConfig(format!("unknown solver `{s}`"))),
        }
    }
}

pub const DEFAULT_BACKTRACK_MAX_STEPS: usize = 1000;
pub const DEFAULT_MACQUEEN_MAX_ITERS: usize = 500;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub kind: SolverKind,
    pub seed: u64,
    /// Cap on accepted Backtrack relocations.
    pub backtrack_max_steps: usize,
    /// Cap on MacQueen assign/reposition rounds.
    pub macqueen_max_iters: usize,
    /// Start 2-Approx from a seeded random customer instead of the 1-center.
    pub two_approx_random_start: bool,
}

impl SolverConfig {
    pub fn new(kind: SolverKind) -> Self {
        Self {
            kind,
            seed: 0,
            backtrack_max_steps: DEFAULT_BACKTRACK_MAX_STEPS,
            macqueen_max_iters: DEFAULT_MACQUEEN_MAX_ITERS,
            two_approx_random_start: false,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_kind(mut self, kind: SolverKind) -> Self {
        self.kind = kind;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.backtrack_max_steps == 0 {
            return Err(Error::InvalidConfig(
                "backtrack_max_steps must be >= 1".into(),
            ));
        }
        if self.macqueen_max_iters == 0 {
            return Err(Error::InvalidConfig(
                "macqueen_max_iters must be >= 1".into(),
            ));
        }
        Ok(())
    }
}

/// Objective values recorded while a solver runs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveTrace<T> {
    /// `(label, D)` in the order recorded.
    pub stage_objectives: Vec<(String, T)>,
    /// Improvement passes (sweeps or MacQueen rounds).
    pub iterations: usize,
    /// Accepted relocations in local-improvement phases.
    pub accepted_moves: usize,
}

impl<T> Default for SolveTrace<T> {
    fn default() -> Self {
        Self {
            stage_objectives: Vec::new(),
            iterations: 0,
            accepted_moves: 0,
        }
    }
}

impl<T: Scalar> SolveTrace<T> {
    pub(crate) fn record(&mut self, label: impl Into<String>, d: T) {
        self.stage_objectives.push((label.into(), d));
    }

    /// Recorded objectives starting at the first label equal to `label`.
    pub fn objectives_from(&self, label: &str) -> Vec<T> {
        self.stage_objectives
            .iter()
            .skip_while(|(l, _)| l != label)
            .map(|&(_, d)| d)
            .collect()
    }

    pub fn objective_at(&self, label: &str) -> Option<T> {
        self.stage_objectives
            .iter()
            .find(|(l, _)| l == label)
            .map(|&(_, d)| d)
    }

    /// True if recorded objectives never increase.
    pub fn is_non_increasing(&self) -> bool {
        self.stage_objectives.windows(2).all(|w| w[1].1 <= w[0].1)
    }
}

/// Runs the solver selected by `cfg.kind`.
pub fn solve<T: Scalar>(
    inst: &Instance<T>,
    cfg: &SolverConfig,
) -> Result<(Solution<T>, SolveTrace<T>)> {
    cfg.validate()?;
    match cfg.kind {
        SolverKind::Dragoon => solve_dragoon(inst, cfg),
        SolverKind::TwoApprox => solve_two_approx(inst, cfg),
        SolverKind::MacQueen => solve_macqueen(inst, cfg),
        SolverKind::Greedy => solve_greedy(inst, cfg),
        SolverKind::Backtrack => solve_backtrack(inst, cfg),
    }
}

/// Customer index minimizing the maximum distance to all customers.
/// Ties resolve to the lowest index.
pub fn one_center<T: Scalar>(inst: &Instance<T>) -> usize {
    one_center_in(&inst.distance_matrix())
}

pub(crate) fn one_center_in<T: Scalar>(dm: &DistanceMatrix<T>) -> usize {
    let mut best = (0, T::infinity());
    for c in 0..dm.len() {
        let radius = dm.row(c).iter().copied().fold(T::zero(), T::max);
        if radius < best.1 {
            best = (c, radius);
        }
    }
    best.0
}

/// Per-customer distance to the nearest center other than `centers[slot]`.
/// Infinite when `slot` is the only center.
pub(crate) fn nearest_excluding<T: Scalar>(
    dm: &DistanceMatrix<T>,
    centers: &[usize],
    slot: usize,
) -> Vec<T> {
    (0..dm.len())
        .map(|v| {
            let row = dm.row(v);
            centers
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != slot)
                .map(|(_, &s)| row[s])
                .fold(T::infinity(), |a, b| if b < a { b } else { a })
        })
        .collect()
}

pub(crate) fn membership(n: usize, centers: &[usize]) -> Vec<bool> {
    let mut used = vec![false; n];
    for &c in centers {
        used[c] = true;
    }
    used
}
