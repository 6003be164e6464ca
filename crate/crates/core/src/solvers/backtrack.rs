//! Backtrack: start from Greedy, then repeatedly relocate single centers to
//! the best unused customer while that strictly improves `D`.

use super::greedy::greedy_centers;
use super::{membership, nearest_excluding, SolveTrace, SolverConfig};
use crate::instance::{Instance, Solution};
use crate::{seed, Result, Scalar};

pub const STAGE_GREEDY: &str = "greedy";

/// Sweeps end when a full pass finds no improvement or after
/// `cfg.backtrack_max_steps` accepted relocations.
pub fn solve_backtrack<T: Scalar>(
    inst: &Instance<T>,
    cfg: &SolverConfig,
) -> Result<(Solution<T>, SolveTrace<T>)> {
    let dm = inst.distance_matrix();
    let n = inst.len();
    let mut rng = seed::rng(cfg.seed);
    let mut greedy_trace = SolveTrace::default();
    let mut centers = greedy_centers(&dm, inst.k(), &mut rng, &mut greedy_trace);
    let mut objective = dm.objective(&centers);

    let mut trace = SolveTrace::default();
    trace.record(STAGE_GREEDY, objective);

    'search: loop {
        let mut improved = false;
        for slot in 0..centers.len() {
            if trace.accepted_moves >= cfg.backtrack_max_steps {
                break 'search;
            }
            let used = membership(n, &centers);
            let others = nearest_excluding(&dm, &centers, slot);
            let mut best = (objective, None);
            for c in (0..n).filter(|&c| !used[c]) {
                let d = dm.objective_with(&others, c, best.0);
                if d < best.0 {
                    best = (d, Some(c));
                }
            }
            if let (d, Some(c)) = best {
                centers[slot] = c;
                objective = d;
                trace.accepted_moves += 1;
                improved = true;
            }
        }
        trace.iterations += 1;
        trace.record(format!("sweep {}", trace.iterations), objective);
        if !improved {
            break;
        }
    }
    if trace.stage_objectives.last().map(|&(_, d)| d) != Some(objective) {
        // step cap hit mid-sweep
        trace.record("capped", objective);
    }

    let solution = Solution::new(inst, centers)?;
    debug_assert!(solution.objective() == objective);
    Ok((solution, trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::solve_exact;
    use crate::geometry::Point;
    use crate::solvers::solve_greedy;
    use crate::SolverKind;

    fn line(xs: &[f64], k: usize) -> Instance<f64> {
        Instance::new(xs.iter().map(|&x| Point::new(x, 0.0)).collect(), k).unwrap()
    }

    fn cfg(seed: u64) -> SolverConfig {
        SolverConfig::new(SolverKind::Backtrack).with_seed(seed)
    }

    #[test]
    fn k_equals_n_makes_no_moves() {
        let (s, t) = solve_backtrack(&line(&[0.0, 4.0, 9.0], 3), &cfg(1)).unwrap();
        assert_eq!(s.objective(), 0.0);
        assert_eq!(t.accepted_moves, 0);
    }

    #[test]
    fn four_point_line_reaches_optimum() {
        let inst = line(&[0.0, 10.0, 11.0, 21.0], 2);
        let opt = solve_exact(&inst).unwrap().objective();
        assert_eq!(opt, 10.0);
        for seed in 0..8 {
            let (s, _) = solve_backtrack(&inst, &cfg(seed)).unwrap();
            assert!(s.objective() <= 10.0);
            assert_eq!(s.objective(), opt);
        }
    }

    #[test]
    fn never_worse_than_greedy_with_same_seed() {
        let xs = [
            0.0, 1.0, 2.0, 3.0, 50.0, 97.0, 98.0, 99.0, 100.0, 60.0, 33.0, 71.0,
        ];
        for k in 1..5 {
            let inst = line(&xs, k);
            for seed in 0..10 {
                let g = solve_greedy(&inst, &cfg(seed).with_kind(SolverKind::Greedy)).unwrap();
                let (b, t) = solve_backtrack(&inst, &cfg(seed)).unwrap();
                assert!(b.objective() <= g.0.objective());
                assert_eq!(t.objective_at(STAGE_GREEDY), Some(g.0.objective()));
                assert!(t.is_non_increasing());
            }
        }
    }

    #[test]
    fn step_cap_limits_moves() {
        let xs: Vec<f64> = (0..30).map(|i| ((i * 37) % 101) as f64).collect();
        let inst = line(&xs, 4);
        let mut c = cfg(3);
        c.backtrack_max_steps = 1;
        let (_, t) = solve_backtrack(&inst, &c).unwrap();
        assert!(t.accepted_moves <= 1);
    }
}
