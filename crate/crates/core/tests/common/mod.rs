#![allow(dead_code)]

use kcenter::geometry::Point;
use kcenter::Instance;

pub fn instance(coords: &[(f64, f64)], k: usize) -> Instance {
    Instance::new(coords.iter().map(|&(x, y)| Point::new(x, y)).collect(), k).unwrap()
}

pub const P8: [(f64, f64); 8] = [
    (60.68, 76.82),
    (26.13, 15.33),
    (71.61, 86.14),
    (33.63, 23.43),
    (67.62, 89.73),
    (12.8, 5.44),
    (35.95, 30.15),
    (60.07, 18.49),
];

pub const P9: [(f64, f64); 9] = [
    (3.57, 32.84),
    (23.76, 30.31),
    (41.59, 21.3),
    (96.9, 62.06),
    (72.79, 37.57),
    (93.12, 83.64),
    (24.91, 70.87),
    (94.06, 57.07),
    (37.17, 37.83),
];

pub const P10: [(f64, f64); 10] = [
    (70.02, 97.04),
    (90.82, 33.61),
    (54.16, 94.56),
    (25.08, 36.08),
    (76.92, 72.4),
    (42.67, 5.01),
    (76.4, 91.16),
    (88.7, 74.06),
    (86.71, 76.83),
    (26.51, 62.31),
];

pub const P12: [(f64, f64); 12] = [
    (83.06, 53.39),
    (93.08, 68.46),
    (81.5, 66.42),
    (37.74, 33.07),
    (95.45, 69.69),
    (40.71, 9.94),
    (41.59, 71.49),
    (33.28, 87.52),
    (12.03, 60.23),
    (68.22, 6.67),
    (65.9, 66.83),
    (71.16, 72.42),
];

pub const P25: [(f64, f64); 25] = [
    (45.43, 62.07),
    (61.75, 9.08),
    (85.52, 31.62),
    (43.95, 37.72),
    (8.22, 22.47),
    (49.32, 97.76),
    (68.97, 18.88),
    (28.72, 6.22),
    (87.95, 55.45),
    (95.87, 5.59),
    (44.59, 75.49),
    (78.99, 67.2),
    (80.73, 37.65),
    (88.6, 10.18),
    (69.37, 0.76),
    (70.74, 17.05),
    (32.46, 91.32),
    (40.81, 90.53),
    (59.61, 7.89),
    (59.46, 42.63),
    (90.29, 8.36),
    (99.04, 41.44),
    (47.5, 63.72),
    (30.07, 78.23),
    (41.59, 54.21),
];

/// Exhaustive k-center search written independently of the library:
/// recursive subset generation, `hypot` distances, first-found optimum in
/// lexicographic order.
pub fn brute_force(points: &[(f64, f64)], k: usize) -> (Vec<usize>, f64) {
    fn objective(points: &[(f64, f64)], set: &[usize]) -> f64 {
        points
            .iter()
            .map(|&(x, y)| {
                set.iter()
                    .map(|&s| (x - points[s].0).hypot(y - points[s].1))
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max)
    }
    fn rec(
        points: &[(f64, f64)],
        k: usize,
        start: usize,
        cur: &mut Vec<usize>,
        best: &mut Option<(Vec<usize>, f64)>,
    ) {
        if cur.len() == k {
            let d = objective(points, cur);
            if best.as_ref().is_none_or(|(_, b)| d < *b) {
                *best = Some((cur.clone(), d));
            }
            return;
        }
        for i in start..points.len() {
            cur.push(i);
            rec(points, k, i + 1, cur, best);
            cur.pop();
        }
    }
    let mut best = None;
    rec(points, k, 0, &mut Vec::new(), &mut best);
    best.unwrap()
}

pub fn coords(inst: &Instance) -> Vec<(f64, f64)> {
    inst.customers().iter().map(|p| (p.x, p.y)).collect()
}

pub fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0)
}
