//! Problem and solution types and the k-center objective.
//!
//! For a fixed center set `S` the objective is
//! `D(S) = max over customers v of min over s in S of d(v, s)`;
//! solvers search for the `S` that minimizes it. Centers always sit on
//! customer locations and are referenced by customer index.

use serde::{Deserialize, Serialize};

use crate::geometry::{distance, Point};
use crate::{Error, Result, Scalar};

/// An ordered customer set and the number of centers to place.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Instance<T> {
    customers: Vec<Point<T>>,
    k: usize,
}

impl<T: Scalar> Instance<T> {
    /// Validates and builds an instance. Duplicate coordinates are allowed.
    pub fn new(customers: Vec<Point<T>>, k: usize) -> Result<Self> {
        if customers.is_empty() {
            return Err(Error::NoCustomers);
        }
        if k == 0 || k > customers.len() {
            return Err(Error::InvalidK {
                k,
                customers: customers.len(),
            });
        }
        if let Some(index) = customers.iter().position(|p| !p.is_finite()) {
            return Err(Error::NonFiniteCoordinate { index });
        }
        Ok(Self { customers, k })
    }

    pub fn customers(&self) -> &[Point<T>] {
        &self.customers
    }

    pub fn customer(&self, index: usize) -> Point<T> {
        self.customers[index]
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of customers.
    pub fn len(&self) -> usize {
        self.customers.len()
    }

    /// Always false for a validated instance.
    pub fn is_empty(&self) -> bool {
        self.customers.is_empty()
    }

    /// Same customers, different center count.
    pub fn with_k(&self, k: usize) -> Result<Self> {
        Self::new(self.customers.clone(), k)
    }

    /// Checks that `centers` is a non-empty set of distinct, valid indices.
    pub fn validate_centers(&self, centers: &[usize]) -> Result<()> {
        if centers.is_empty() {
            return Err(Error::NoCenters);
        }
        let mut seen = vec![false; self.len()];
        for &c in centers {
            if c >= self.len() {
                return Err(Error::CenterOutOfRange {
                    index: c,
                    customers: self.len(),
                });
            }
            if seen[c] {
                return Err(Error::DuplicateCenter(c));
            }
            seen[c] = true;
        }
        Ok(())
    }

    pub fn distance_matrix(&self) -> DistanceMatrix<T> {
        DistanceMatrix::new(&self.customers)
    }
}

/// A set of `k` center indices and its objective value.
///
/// Centers are stored sorted ascending, so the position of a center and
/// its customer index order the same way.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Solution<T> {
    centers: Vec<usize>,
    objective: T,
}

impl<T: Scalar> Solution<T> {
    /// Builds a solution for `inst`, requiring exactly `k` distinct centers.
    pub fn new(inst: &Instance<T>, mut centers: Vec<usize>) -> Result<Self> {
        inst.validate_centers(&centers)?;
        if centers.len() != inst.k() {
            return Err(Error::InvalidConfig(format!(
                "solution has {} centers but k = {}",
                centers.len(),
                inst.k()
            )));
        }
        centers.sort_unstable();
        let objective = evaluate_objective(inst, &centers)?;
        Ok(Self { centers, objective })
    }

    pub fn centers(&self) -> &[usize] {
        &self.centers
    }

    /// The objective value `D`.
    pub fn objective(&self) -> T {
        self.objective
    }

    pub fn center_points(&self, inst: &Instance<T>) -> Vec<Point<T>> {
        self.centers.iter().map(|&c| inst.customer(c)).collect()
    }
}

/// Nearest center and distance for every customer.
#[derive(Debug, Clone, PartialEq)]
pub struct Assignment<T> {
    /// Customer index of the nearest center.
    pub owner: Vec<usize>,
    pub dist: Vec<T>,
}

impl<T: Scalar> Assignment<T> {
    /// Largest customer-to-center distance, i.e. the objective.
    pub fn max_distance(&self) -> T {
        self.dist.iter().copied().fold(T::zero(), T::max)
    }

    /// Customers owned by the center with customer index `center`.
    pub fn members(&self, center: usize) -> impl Iterator<Item = usize> + '_ {
        self.owner
            .iter()
            .enumerate()
            .filter(move |&(_, &o)| o == center)
            .map(|(i, _)| i)
    }
}

/// `max_v min_{s in centers} d(v, s)`.
pub fn evaluate_objective<T: Scalar>(inst: &Instance<T>, centers: &[usize]) -> Result<T> {
    if centers.is_empty() {
        return Err(Error::NoCenters);
    }
    check_range(inst, centers)?;
    let pts = inst.customers();
    let mut worst = T::zero();
    for v in pts {
        let mut nearest = T::infinity();
        for &s in centers {
            let d = distance(v, &pts[s]);
            if d < nearest {
                nearest = d;
            }
        }
        if nearest > worst {
            worst = nearest;
        }
    }
    Ok(worst)
}

/// Assigns every customer to its nearest center. Equidistant centers
/// resolve to the lowest customer index.
pub fn assign<T: Scalar>(inst: &Instance<T>, centers: &[usize]) -> Result<Assignment<T>> {
    if centers.is_empty() {
        return Err(Error::NoCenters);
    }
    check_range(inst, centers)?;
    let pts = inst.customers();
    let mut owner = Vec::with_capacity(pts.len());
    let mut dist = Vec::with_capacity(pts.len());
    for v in pts {
        let (o, d) = nearest_of(centers, |s| distance(v, &pts[s]));
        owner.push(o);
        dist.push(d);
    }
    Ok(Assignment { owner, dist })
}

/// Nearest center by `dist_to`, ties toward the lowest index.
pub(crate) fn nearest_of<T: Scalar>(
    centers: &[usize],
    mut dist_to: impl FnMut(usize) -> T,
) -> (usize, T) {
    let mut best = (usize::MAX, T::infinity());
    for &s in centers {
        let d = dist_to(s);
        if d < best.1 || (d == best.1 && s < best.0) {
            best = (s, d);
        }
    }
    best
}

fn check_range<T: Scalar>(inst: &Instance<T>, centers: &[usize]) -> Result<()> {
    match centers.iter().find(|&&c| c >= inst.len()) {
        Some(&index) => Err(Error::CenterOutOfRange {
            index,
            customers: inst.len(),
        }),
        None => Ok(()),
    }
}

/// Dense pairwise distances. Entries are computed with [`distance`], so
/// objectives derived from the matrix equal [`evaluate_objective`] exactly.
#[derive(Debug, Clone)]
pub struct DistanceMatrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Scalar> DistanceMatrix<T> {
    pub fn new(points: &[Point<T>]) -> Self {
        let n = points.len();
        let mut data = vec![T::zero(); n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let d = distance(&points[i], &points[j]);
                data[i * n + j] = d;
                data[j * n + i] = d;
            }
        }
        Self { n, data }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    /// Objective of `centers`; `T::infinity()` for an empty set.
    pub fn objective(&self, centers: &[usize]) -> T {
        if centers.is_empty() {
            return T::infinity();
        }
        let mut worst = T::zero();
        for v in 0..self.n {
            let row = self.row(v);
            let nearest =
                centers
                    .iter()
                    .map(|&s| row[s])
                    .fold(T::infinity(), |a, b| if b < a { b } else { a });
            if nearest > worst {
                worst = nearest;
            }
        }
        worst
    }

    /// Distance from every customer to its nearest center in `centers`.
    pub fn nearest_distances(&self, centers: &[usize]) -> Vec<T> {
        (0..self.n)
            .map(|v| {
                let row = self.row(v);
                centers
                    .iter()
                    .map(|&s| row[s])
                    .fold(T::infinity(), |a, b| if b < a { b } else { a })
            })
            .collect()
    }

    /// Objective after adding `candidate` to a set whose nearest distances
    /// are `base`. Returns early with a value `>= bound` once the running
    /// maximum reaches `bound`.
    #[inline]
    pub(crate) fn objective_with(&self, base: &[T], candidate: usize, bound: T) -> T {
        let row = self.row(candidate);
        let mut worst = T::zero();
        for (v, &b) in base.iter().enumerate() {
            let d = if row[v] < b { row[v] } else { b };
            if d > worst {
                worst = d;
                if worst >= bound {
                    return worst;
                }
            }
        }
        worst
    }

    /// Like [`objective_with`](Self::objective_with) but exits only once the
    /// running maximum exceeds `bound`, so a result equal to `bound` is exact.
    #[inline]
    pub(crate) fn objective_with_above(&self, base: &[T], candidate: usize, bound: T) -> T {
        let row = self.row(candidate);
        let mut worst = T::zero();
        for (v, &b) in base.iter().enumerate() {
            let d = if row[v] < b { row[v] } else { b };
            if d > worst {
                worst = d;
                if worst > bound {
                    return worst;
                }
            }
        }
        worst
    }
}
