use serde::{Deserialize, Serialize};

use crate::Scalar;

/// A location in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point<T> {
    pub x: T,
    pub y: T,
}

impl<T: Scalar> Point<T> {
    pub fn new(x: T, y: T) -> Self {
        Self { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Euclidean distance.
    #[inline]
    pub fn distance(&self, other: &Self) -> T {
        distance(self, other)
    }

    pub fn translate(&self, dx: T, dy: T) -> Self {
        Self::new(self.x + dx, self.y + dy)
    }
}

/// Euclidean distance between two points.
///
/// Symmetric bit-for-bit: `distance(a, b) == distance(b, a)`.
#[inline]
pub fn distance<T: Scalar>(a: &Point<T>, b: &Point<T>) -> T {
    let dx = a.x - b.x;
    let dy = a.y - b.y;
    (dx * dx + dy * dy).sqrt()
}

/// Arithmetic mean of a non-empty set of points.
pub fn centroid<T: Scalar>(points: impl IntoIterator<Item = Point<T>>) -> Option<Point<T>> {
    let mut count = 0usize;
    let mut sx = T::zero();
    let mut sy = T::zero();
    for p in points {
        sx = sx + p.x;
        sy = sy + p.y;
        count += 1;
    }
    if count == 0 {
        return None;
    }
    let n = T::from_count(count);
    Some(Point::new(sx / n, sy / n))
}
