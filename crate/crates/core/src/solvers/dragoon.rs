//! Dragoon: virtual 1-center start, farthest-point placement, then local
//! relocation of single centers.
//!
//! Stage 3 relocates one center at a time. Candidate nodes are scanned in
//! increasing distance from the center being moved (ties by index) and the
//! first node that strictly lowers `D` is taken. Sweeps over all centers
//! repeat until one completes without a move.

use super::farthest::{farthest_from, farthest_point_placement};
use super::{membership, nearest_excluding, one_center_in, SolveTrace, SolverConfig};
use crate::instance::{DistanceMatrix, Instance, Solution};
use crate::{Result, Scalar};

pub const STAGE_PLACEMENT: &str = "placement";

pub fn solve_dragoon<T: Scalar>(
    inst: &Instance<T>,
    _cfg: &SolverConfig,
) -> Result<(Solution<T>, SolveTrace<T>)> {
    let dm = inst.distance_matrix();
    let mut trace = SolveTrace::default();

    // stage 1: the virtual center only steers the first real placement
    let virtual_center = one_center_in(&dm);

    // stage 2
    let first = farthest_from(&dm, virtual_center);
    let mut centers = farthest_point_placement(&dm, first, inst.k());
    let mut objective = dm.objective(&centers);
    trace.record(STAGE_PLACEMENT, objective);

    // stage 3
    loop {
        let moved = sweep(&dm, &mut centers, &mut objective);
        trace.iterations += 1;
        trace.accepted_moves += moved;
        trace.record(format!("sweep {}", trace.iterations), objective);
        if moved == 0 {
            break;
        }
    }

    let solution = Solution::new(inst, centers)?;
    debug_assert!(solution.objective() == objective);
    Ok((solution, trace))
}

/// One pass over all centers; returns the number of accepted moves.
fn sweep<T: Scalar>(dm: &DistanceMatrix<T>, centers: &mut [usize], objective: &mut T) -> usize {
    let n = dm.len();
    let mut moves = 0;
    for slot in 0..centers.len() {
        let current = centers[slot];
        let used = membership(n, centers);
        let others = nearest_excluding(dm, centers, slot);
        let row = dm.row(current);
        let mut candidates: Vec<usize> = (0..n).filter(|&v| !used[v]).collect();
        candidates.sort_by(|&a, &b| row[a].partial_cmp(&row[b]).unwrap().then(a.cmp(&b)));
        for c in candidates {
            let d = dm.objective_with(&others, c, *objective);
            if d < *objective {
                centers[slot] = c;
                *objective = d;
                moves += 1;
                break;
            }
        }
    }
    moves
}
