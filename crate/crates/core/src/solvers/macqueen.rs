//! MacQueen: k-means style repositioning restricted to customer nodes.
//!
//! Each round assigns customers to their nearest center, moves every center
//! to the centroid of its customers, and snaps that centroid to the nearest
//! customer node not held by another center. A center with no customers
//! stays put. The loop ends when the center index set stops changing or the
//! round cap is reached.

use rand::seq::index;

use super::{SolveTrace, SolverConfig};
use crate::geometry::{centroid, distance, Point};
use crate::instance::{nearest_of, Instance, Solution};
use crate::{seed, Result, Scalar};

/// Runs from `k` distinct customers drawn uniformly with `cfg.seed`.
pub fn solve_macqueen<T: Scalar>(
    inst: &Instance<T>,
    cfg: &SolverConfig,
) -> Result<(Solution<T>, SolveTrace<T>)> {
    let mut rng = seed::rng(cfg.seed);
    let init = index::sample(&mut rng, inst.len(), inst.k()).into_vec();
    solve_macqueen_from(inst, init, cfg.macqueen_max_iters)
}

/// Runs from an explicit initial center list.
pub fn solve_macqueen_from<T: Scalar>(
    inst: &Instance<T>,
    init: Vec<usize>,
    max_iters: usize,
) -> Result<(Solution<T>, SolveTrace<T>)> {
    // validates distinctness and count
    let start = Solution::new(inst, init.clone())?;
    let pts = inst.customers();
    let n = inst.len();

    let mut centers = init;
    let mut trace = SolveTrace::default();
    trace.record("initial", start.objective());

    while trace.iterations < max_iters {
        let mut members: Vec<Vec<Point<T>>> = vec![Vec::new(); centers.len()];
        for v in pts {
            let (owner, _) = nearest_of(&centers, |s| distance(v, &pts[s]));
            let slot = centers.iter().position(|&c| c == owner).unwrap();
            members[slot].push(*v);
        }

        let mut held = vec![false; n];
        for &c in &centers {
            held[c] = true;
        }
        let mut next = centers.clone();
        for (slot, group) in members.into_iter().enumerate() {
            let Some(target) = centroid(group) else {
                continue;
            };
            held[next[slot]] = false;
            let snapped = nearest_free_node(pts, &held, target);
            held[snapped] = true;
            next[slot] = snapped;
        }

        trace.iterations += 1;
        let mut before = centers.clone();
        let mut after = next.clone();
        before.sort_unstable();
        after.sort_unstable();
        centers = next;
        trace.record(
            format!("round {}", trace.iterations),
            crate::instance::evaluate_objective(inst, &centers)?,
        );
        if before == after {
            break;
        }
    }

    Ok((Solution::new(inst, centers)?, trace))
}

/// Nearest customer not marked in `held`; ties to the lowest index.
fn nearest_free_node<T: Scalar>(pts: &[Point<T>], held: &[bool], target: Point<T>) -> usize {
    let mut best = (usize::MAX, T::infinity());
    for (i, p) in pts.iter().enumerate() {
        if held[i] {
            continue;
        }
        let d = distance(p, &target);
        if d < best.1 {
            best = (i, d);
        }
    }
    best.0
}
