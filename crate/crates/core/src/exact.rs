//! Exhaustive search over all k-subsets of customers.

use crate::instance::{Instance, Solution};
use crate::{Error, Result, Scalar};

/// Default limit on the number of enumerated subsets.
pub const DEFAULT_SUBSET_CAP: u128 = 5_000_000;

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Optimal solution using the default subset cap.
pub fn solve_exact<T: Scalar>(inst: &Instance<T>) -> Result<Solution<T>> {
    solve_exact_with_cap(inst, DEFAULT_SUBSET_CAP)
}

/// Optimal solution over all `C(n, k)` center sets. Co-optimal sets resolve
/// to the lexicographically smallest index set.
pub fn solve_exact_with_cap<T: Scalar>(inst: &Instance<T>, cap: u128) -> Result<Solution<T>> {
    let n = inst.len();
    let k = inst.k();
    let subsets = binomial(n, k);
    if subsets > cap {
        return Err(Error::TooLargeForExact { subsets, cap });
    }
    let dm = inst.distance_matrix();

    let mut combo: Vec<usize> = (0..k).collect();
    let mut best_set = combo.clone();
    let mut best = T::infinity();
    loop {
        // objective with early exit once it cannot beat `best`
        let mut worst = T::zero();
        for v in 0..n {
            let row = dm.row(v);
            let mut nearest = T::infinity();
            for &s in &combo {
                if row[s] < nearest {
                    nearest = row[s];
                }
            }
            if nearest > worst {
                worst = nearest;
                if worst >= best {
                    break;
                }
            }
        }
        if worst < best {
            best = worst;
            best_set.copy_from_slice(&combo);
        }
        if !next_combination(&mut combo, n) {
            break;
        }
    }
    Solution::new(inst, best_set)
}

/// Advances `combo` to the next k-combination of `0..n` in lexicographic
/// order. Returns false after the last one.
fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if combo[i] < n - k + i {
            combo[i] += 1;
            for j in (i + 1)..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
