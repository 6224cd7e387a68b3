use alloc::vec::Vec;
use num_traits::{Signed, Zero};

use super::Point;

/// Convex hull in counter-clockwise order (monotone chain).
///
/// Collinear boundary points are dropped. Degenerate inputs give one or two
/// points.
pub fn convex_hull(points: &[Point]) -> Vec<Point> {
    let mut pts: Vec<Point> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let turn = |o: &Point, a: &Point, b: &Point| (a - o).cross(&(b - o));
    let mut lower: Vec<Point> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && !turn(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive() {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Point> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && !turn(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive() {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Closed containment in a hull produced by [`convex_hull`].
pub fn point_in_hull(hull: &[Point], p: &Point) -> bool {
    match hull.len() {
        0 => false,
        1 => &hull[0] == p,
        2 => {
            let (a, b) = (&hull[0], &hull[1]);
            let ab = b - a;
            let ap = p - a;
            ab.cross(&ap).is_zero() && !ap.dot(&ab).is_negative() && !(p - b).dot(&ab).is_positive()
        }
        n => (0..n).all(|i| {
            let a = &hull[i];
            let b = &hull[(i + 1) % n];
            !(b - a).cross(&(p - a)).is_negative()
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn square_with_interior_and_edge_points() {
        let pts = vec![
            Point::from_ints(0, 0),
            Point::from_ints(2, 0),
            Point::from_ints(2, 2),
            Point::from_ints(0, 2),
            Point::from_ints(1, 1),
            Point::from_ints(1, 0),
        ];
        let h = convex_hull(&pts);
        assert_eq!(h.len(), 4);
        assert!(point_in_hull(&h, &Point::from_ints(1, 0)));
        assert!(point_in_hull(&h, &Point::from_ints(1, 1)));
        assert!(!point_in_hull(&h, &Point::from_ints(3, 1)));
    }

    #[test]
    fn segment_hull() {
        let h = convex_hull(&[Point::from_ints(0, 0), Point::from_ints(2, 2), Point::from_ints(1, 1)]);
        assert_eq!(h.len(), 2);
        assert!(point_in_hull(&h, &Point::from_ints(1, 1)));
        assert!(!point_in_hull(&h, &Point::from_ints(3, 3)));
    }
}
