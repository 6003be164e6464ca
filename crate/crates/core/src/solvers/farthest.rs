//! Farthest-point placement (2-Approx) and the loop Dragoon reuses.

use rand::Rng as _;

use super::{one_center_in, SolveTrace, SolverConfig};
use crate::instance::{DistanceMatrix, Instance, Solution};
use crate::{seed, Result, Scalar};

/// Farthest customer not already a center; ties to the lowest index.
fn farthest_unused<T: Scalar>(nearest: &[T], used: &[bool]) -> Option<usize> {
    let mut best: Option<(usize, T)> = None;
    for (v, &d) in nearest.iter().enumerate() {
        if used[v] {
            continue;
        }
        match best {
            Some((_, bd)) if d <= bd => {}
            _ => best = Some((v, d)),
        }
    }
    best.map(|(v, _)| v)
}

/// Seeds the placement with `first` and adds farthest customers until
/// `k` centers exist.
pub(super) fn farthest_point_placement<T: Scalar>(
    dm: &DistanceMatrix<T>,
    first: usize,
    k: usize,
) -> Vec<usize> {
    let n = dm.len();
    let mut centers = Vec::with_capacity(k);
    let mut used = vec![false; n];
    let mut nearest = vec![T::infinity(); n];
    let mut next = Some(first);
    while centers.len() < k {
        let c = next.expect("k <= n leaves an unused customer");
        centers.push(c);
        used[c] = true;
        for (v, slot) in nearest.iter_mut().enumerate() {
            let d = dm.get(v, c);
            if d < *slot {
                *slot = d;
            }
        }
        next = farthest_unused(&nearest, &used);
    }
    centers
}

/// Farthest customer from a single reference node.
pub(super) fn farthest_from<T: Scalar>(dm: &DistanceMatrix<T>, origin: usize) -> usize {
    let none = vec![false; dm.len()];
    farthest_unused(dm.row(origin), &none).expect("instance is non-empty")
}

/// Farthest-point heuristic. The first center is the 1-center node, or a
/// seeded random customer when `two_approx_random_start` is set.
pub fn solve_two_approx<T: Scalar>(
    inst: &Instance<T>,
    cfg: &SolverConfig,
) -> Result<(Solution<T>, SolveTrace<T>)> {
    let dm = inst.distance_matrix();
    let first = if cfg.two_approx_random_start {
        seed::rng(cfg.seed).random_range(0..inst.len())
    } else {
        one_center_in(&dm)
    };
    let centers = farthest_point_placement(&dm, first, inst.k());
    let solution = Solution::new(inst, centers)?;
    let mut trace = SolveTrace::default();
    trace.record("placement", solution.objective());
    Ok((solution, trace))
}
