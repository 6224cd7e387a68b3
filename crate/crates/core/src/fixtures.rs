//! Small named instances shared by tests, examples and the CLI.

use alloc::vec;

use crate::geom::{int, rat, HalfPlane, Point};
use crate::polar::{Committee, System};

/// `x > 1`, `-3x/5 + 4y/5 > 1`, `-3x/5 - 4y/5 > 1`: three unit normals at
/// 120-ish degree spacing, every pair consistent, all three not.
pub fn t1() -> System {
    System::new(vec![
        HalfPlane::new(Point::new(int(1), int(0)), int(1)),
        HalfPlane::new(Point::new(rat(-3, 5), rat(4, 5)), int(1)),
        HalfPlane::new(Point::new(rat(-3, 5), rat(-4, 5)), int(1)),
    ])
    .expect("valid")
}

/// A hand-checkable three-member committee of [`t1`].
pub fn t1_committee() -> Committee {
    Committee::from_points(vec![
        Point::new(rat(11, 10), rat(21, 10)),
        Point::new(rat(11, 10), rat(-21, 10)),
        Point::new(int(-2), int(0)),
    ])
}

/// `(c, h) > 1` for five rational unit normals near the vertices of a
/// regular pentagon (half-angle tangents 0, 8/11, 3, -3, -8/11).
pub fn p5() -> System {
    let u = |x: i64, y: i64, d: i64| HalfPlane::new(Point::new(rat(x, d), rat(y, d)), int(1));
    System::new(vec![
        u(1, 0, 1),
        u(57, 176, 185),
        u(-4, 3, 5),
        u(-4, -3, 5),
        u(57, -176, 185),
    ])
    .expect("valid")
}
