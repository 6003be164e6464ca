//! Greedy placement: add centers one at a time, each at the customer that
//! yields the smallest objective given the centers already placed.

use rand::Rng as _;

use super::{SolveTrace, SolverConfig};
use crate::instance::{DistanceMatrix, Instance, Solution};
use crate::seed::{self, Rng};
use crate::{Result, Scalar};

pub fn solve_greedy<T: Scalar>(
    inst: &Instance<T>,
    cfg: &SolverConfig,
) -> Result<(Solution<T>, SolveTrace<T>)> {
    let dm = inst.distance_matrix();
    let mut rng = seed::rng(cfg.seed);
    let mut trace = SolveTrace::default();
    let centers = greedy_centers(&dm, inst.k(), &mut rng, &mut trace);
    Ok((Solution::new(inst, centers)?, trace))
}

/// Centers in placement order. Equal-objective candidates are chosen
/// uniformly at random from `rng`.
pub(super) fn greedy_centers<T: Scalar>(
    dm: &DistanceMatrix<T>,
    k: usize,
    rng: &mut Rng,
    trace: &mut SolveTrace<T>,
) -> Vec<usize> {
    let n = dm.len();
    let mut centers = Vec::with_capacity(k);
    let mut used = vec![false; n];
    let mut nearest = vec![T::infinity(); n];
    let mut ties = Vec::new();
    for step in 0..k {
        let mut best = T::infinity();
        ties.clear();
        for c in (0..n).filter(|&c| !used[c]) {
            let d = dm.objective_with_above(&nearest, c, best);
            if d < best {
                best = d;
                ties.clear();
                ties.push(c);
            } else if d == best {
                ties.push(c);
            }
        }
        let pick = if ties.len() > 1 {
            ties[rng.random_range(0..ties.len())]
        } else {
            ties[0]
        };
        centers.push(pick);
        used[pick] = true;
        for (v, slot) in nearest.iter_mut().enumerate() {
            let d = dm.get(v, pick);
            if d < *slot {
                *slot = d;
            }
        }
        trace.record(format!("place {}", step + 1), best);
    }
    centers
}
