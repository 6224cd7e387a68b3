//! Exact planar primitives over big rationals.
//!
//! Every predicate here is decided exactly; there is no epsilon anywhere.
//! Points that sit "just off" a vertex are represented symbolically by
//! [`PerturbedPoint`] and only turned into coordinates by [`materialize`].

mod arrangement;
mod feasibility;
mod hull;

pub use arrangement::cell_samples;
pub use feasibility::{feasible, Constraint};
pub use hull::{convex_hull, point_in_hull};

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar used throughout.
pub type Rational = BigRational;

/// `n / d` as a rational. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Integer as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(int(x), int(y))
    }

    pub fn origin() -> Self {
        Point::new(Rational::zero(), Rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn dot(&self, o: &Point) -> Rational {
        &self.x * &o.x + &self.y * &o.y
    }

    /// z-component of the 3-D cross product.
    pub fn cross(&self, o: &Point) -> Rational {
        &self.x * &o.y - &self.y * &o.x
    }

    pub fn norm2(&self) -> Rational {
        self.dot(self)
    }

    pub fn scale(&self, t: &Rational) -> Point {
        Point::new(&self.x * t, &self.y * t)
    }

    /// Counter-clockwise quarter turn.
    pub fn rot90(&self) -> Point {
        Point::new(-&self.y, self.x.clone())
    }

    /// Clockwise quarter turn.
    pub fn rot270(&self) -> Point {
        Point::new(self.y.clone(), -&self.x)
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Add for &Point {
    type Output = Point;
    fn add(self, o: &Point) -> Point {
        Point::new(&self.x + &o.x, &self.y + &o.y)
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        &self + &o
    }
}

impl Sub for &Point {
    type Output = Point;
    fn sub(self, o: &Point) -> Point {
        Point::new(&self.x - &o.x, &self.y - &o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        &self - &o
    }
}

impl Neg for &Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-&self.x, -&self.y)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        -&self
    }
}

impl Mul<&Rational> for &Point {
    type Output = Point;
    fn mul(self, t: &Rational) -> Point {
        self.scale(t)
    }
}

/// A nonzero vector, used for ray directions and perturbations.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Direction(Point);

impl Direction {
    pub fn new(v: Point) -> Option<Self> {
        if v.is_zero() {
            None
        } else {
            Some(Direction(v))
        }
    }

    pub fn vector(&self) -> &Point {
        &self.0
    }

    pub fn into_vector(self) -> Point {
        self.0
    }

    pub fn reversed(&self) -> Direction {
        Direction(-&self.0)
    }

    /// Same ray direction, i.e. positively proportional.
    pub fn same_as(&self, o: &Direction) -> bool {
        self.0.cross(&o.0).is_zero() && self.0.dot(&o.0).is_positive()
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Position of a point relative to a half-plane.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Sign {
    Inside,
    Boundary,
    Outside,
}

impl Sign {
    fn of(v: &Rational) -> Sign {
        if v.is_positive() {
            Sign::Inside
        } else if v.is_zero() {
            Sign::Boundary
        } else {
            Sign::Outside
        }
    }
}

/// The line `(n, x) = b`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Line {
    pub n: Point,
    pub b: Rational,
}

impl Line {
    /// Foot of the perpendicular from the origin; a canonical point on the line.
    pub fn base(&self) -> Point {
        self.n.scale(&(&self.b / self.n.norm2()))
    }

    /// Direction of the line, the normal turned a quarter counter-clockwise.
    pub fn dir(&self) -> Point {
        self.n.rot90()
    }

    pub fn at(&self, t: &Rational) -> Point {
        &self.base() + &self.dir().scale(t)
    }

    /// Parameter of a point known to lie on the line.
    pub fn param(&self, p: &Point) -> Rational {
        let d = self.dir();
        (p - &self.base()).dot(&d) / d.norm2()
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.n.dot(p) == self.b
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum LineRelation {
    Point(Point),
    Parallel,
    Identical,
}

pub fn line_intersect(l1: &Line, l2: &Line) -> LineRelation {
    let det = l1.n.cross(&l2.n);
    if det.is_zero() {
        // Parallel normals: same line iff (n1, b1) and (n2, b2) are proportional.
        let same = if l1.n.x.is_zero() {
            &l1.b * &l2.n.y == &l2.b * &l1.n.y
        } else {
            &l1.b * &l2.n.x == &l2.b * &l1.n.x
        };
        return if same { LineRelation::Identical } else { LineRelation::Parallel };
    }
    let x = (&l1.b * &l2.n.y - &l2.b * &l1.n.y) / &det;
    let y = (&l1.n.x * &l2.b - &l2.n.x * &l1.b) / &det;
    LineRelation::Point(Point::new(x, y))
}

/// The inequality `(c, x) > b` (or `>=` when `strict` is false).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct HalfPlane {
    pub c: Point,
    pub b: Rational,
    pub strict: bool,
}

impl HalfPlane {
    pub fn new(c: Point, b: Rational) -> Self {
        HalfPlane { c, b, strict: true }
    }

    pub fn from_ints(c1: i64, c2: i64, b: i64) -> Self {
        HalfPlane::new(Point::from_ints(c1, c2), int(b))
    }

    pub fn slack(&self, p: &Point) -> Rational {
        self.c.dot(p) - &self.b
    }

    pub fn side_of(&self, p: &Point) -> Sign {
        Sign::of(&self.slack(p))
    }

    /// Side of `vertex + eps * dir` for every sufficiently small `eps > 0`.
    pub fn side_of_perturbed(&self, p: &PerturbedPoint) -> Sign {
        match self.side_of(&p.vertex) {
            Sign::Boundary => Sign::of(&self.c.dot(p.dir.vector())),
            s => s,
        }
    }

    pub fn contains(&self, p: &Point) -> bool {
        let s = self.slack(p);
        s.is_positive() || (!self.strict && s.is_zero())
    }

    pub fn contains_perturbed(&self, p: &PerturbedPoint) -> bool {
        match self.side_of_perturbed(p) {
            Sign::Inside => true,
            Sign::Boundary => !self.strict,
            Sign::Outside => false,
        }
    }

    pub fn border(&self) -> Line {
        Line { n: self.c.clone(), b: self.b.clone() }
    }

    /// The open complement `(c, x) < b`, written as `(-c, x) > -b`.
    pub fn reversed_open(&self) -> HalfPlane {
        HalfPlane { c: -&self.c, b: -&self.b, strict: true }
    }

    /// Same half-plane up to a positive factor (strictness ignored).
    pub fn same_halfplane(&self, o: &HalfPlane) -> bool {
        if !self.c.cross(&o.c).is_zero() || !self.c.dot(&o.c).is_positive() {
            return false;
        }
        // c' = k c with k > 0, so compare b' against k b.
        let k = if self.c.x.is_zero() { &o.c.y / &self.c.y } else { &o.c.x / &self.c.x };
        o.b == &self.b * &k
    }

    pub fn parallel_to(&self, o: &HalfPlane) -> bool {
        self.c.cross(&o.c).is_zero()
    }
}

impl fmt::Display for HalfPlane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = if self.strict { ">" } else { ">=" };
        write!(f, "{}*x + {}*y {} {}", self.c.x, self.c.y, op, self.b)
    }
}

/// `vertex + eps * dir` for an infinitesimal `eps > 0`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PerturbedPoint {
    pub vertex: Point,
    pub dir: Direction,
}

impl PerturbedPoint {
    pub fn new(vertex: Point, dir: Direction) -> Self {
        PerturbedPoint { vertex, dir }
    }
}

impl fmt::Display for PerturbedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + eps*{}", self.vertex, self.dir)
    }
}

/// Subset of a line: the intersection of open half-planes with it, and the
/// single points that closed constraints can leave behind.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum LineSet {
    Empty,
    Point(Point),
    /// Open ray from `vertex` (excluded) in direction `dir`.
    Ray { vertex: Point, dir: Direction },
    /// Open segment; endpoints are distinct.
    Segment(Point, Point),
    FullLine,
}

/// Interval endpoint on a line parameter: value and whether it is included.
type End = Option<(Rational, bool)>;

impl LineSet {
    fn to_interval(&self, l: &Line) -> Option<(End, End)> {
        match self {
            LineSet::Empty => None,
            LineSet::Point(p) => {
                let t = l.param(p);
                Some((Some((t.clone(), true)), Some((t, true))))
            }
            LineSet::Ray { vertex, dir } => {
                let t = l.param(vertex);
                if dir.vector().dot(&l.dir()).is_positive() {
                    Some((Some((t, false)), None))
                } else {
                    Some((None, Some((t, false))))
                }
            }
            LineSet::Segment(a, b) => {
                let (ta, tb) = (l.param(a), l.param(b));
                let (lo, hi) = if ta < tb { (ta, tb) } else { (tb, ta) };
                Some((Some((lo, false)), Some((hi, false))))
            }
            LineSet::FullLine => Some((None, None)),
        }
    }

    fn from_interval(lo: End, hi: End, l: &Line) -> LineSet {
        let d = Direction(l.dir());
        match (lo, hi) {
            (None, None) => LineSet::FullLine,
            (Some((t, _)), None) => LineSet::Ray { vertex: l.at(&t), dir: d },
            (None, Some((t, _))) => LineSet::Ray { vertex: l.at(&t), dir: d.reversed() },
            (Some((a, ac)), Some((b, bc))) => match a.cmp(&b) {
                Ordering::Less => LineSet::Segment(l.at(&a), l.at(&b)),
                Ordering::Equal if ac && bc => LineSet::Point(l.at(&a)),
                _ => LineSet::Empty,
            },
        }
    }

    /// Intersection of two subsets of the same line `l`.
    pub fn intersect(&self, other: &LineSet, l: &Line) -> LineSet {
        let (Some((alo, ahi)), Some((blo, bhi))) = (self.to_interval(l), other.to_interval(l)) else {
            return LineSet::Empty;
        };
        let lo = match (alo, blo) {
            (None, x) | (x, None) => x,
            (Some((a, ac)), Some((b, bc))) => Some(match a.cmp(&b) {
                Ordering::Greater => (a, ac),
                Ordering::Less => (b, bc),
                Ordering::Equal => (a, ac && bc),
            }),
        };
        let hi = match (ahi, bhi) {
            (None, x) | (x, None) => x,
            (Some((a, ac)), Some((b, bc))) => Some(match a.cmp(&b) {
                Ordering::Less => (a, ac),
                Ordering::Greater => (b, bc),
                Ordering::Equal => (a, ac && bc),
            }),
        };
        LineSet::from_interval(lo, hi, l)
    }

    /// Set equality on `l`, independent of how rays and segments are written.
    pub fn same_set(&self, other: &LineSet, l: &Line) -> bool {
        self.to_interval(l) == other.to_interval(l)
    }

    pub fn is_ray(&self) -> bool {
        matches!(self, LineSet::Ray { .. })
    }
}

/// The open part of `hp` on `l`; strictness is not consulted.
pub fn halfplane_cap_line(hp: &HalfPlane, l: &Line) -> LineSet {
    let d = l.dir();
    let cd = hp.c.dot(&d);
    if cd.is_zero() {
        return if hp.slack(&l.base()).is_positive() { LineSet::FullLine } else { LineSet::Empty };
    }
    let vertex = match line_intersect(&hp.border(), l) {
        LineRelation::Point(p) => p,
        _ => unreachable!("non-parallel lines meet in a point"),
    };
    let dir = if cd.is_positive() { d } else { -d };
    LineSet::Ray { vertex, dir: Direction(dir) }
}

/// A concrete point that lies on the same side as `p` of every half-plane
/// in `sys`.
///
/// Uses `eps = 1/2 * min |slack(vertex)| / max(1, |(c, dir)|)` over the
/// half-planes whose border misses the vertex, and `eps = 1` when there are
/// none. Any `eps` below that bound keeps every nonzero slack on its sign,
/// while the zero slacks take the sign of `(c, dir)`.
pub fn materialize(p: &PerturbedPoint, sys: &[HalfPlane]) -> Point {
    let mut eps: Option<Rational> = None;
    for hp in sys {
        let s = hp.slack(&p.vertex);
        if s.is_zero() {
            continue;
        }
        let cd = hp.c.dot(p.dir.vector()).abs();
        let denom = if cd > Rational::one() { cd } else { Rational::one() };
        let cand = s.abs() / denom / int(2);
        eps = Some(match eps {
            Some(e) if e <= cand => e,
            _ => cand,
        });
    }
    let eps = eps.unwrap_or_else(Rational::one);
    &p.vertex + &p.dir.vector().scale(&eps)
}

/// Total order on nonzero vectors by polar angle in `[0, 2pi)`.
pub fn angle_cmp(a: &Point, b: &Point) -> Ordering {
    let half = |v: &Point| v.y.is_negative() || (v.y.is_zero() && v.x.is_negative());
    match (half(a), half(b)) {
        (false, true) => Ordering::Less,
        (true, false) => Ordering::Greater,
        _ => {
            let c = a.cross(b);
            if c.is_positive() {
                Ordering::Less
            } else if c.is_negative() {
                Ordering::Greater
            } else {
                Ordering::Equal
            }
        }
    }
}

/// Order by counter-clockwise angle measured from `reference`, in `[0, 2pi)`.
pub fn angle_cmp_from(reference: &Point, a: &Point, b: &Point) -> Ordering {
    // Rotate into the frame where `reference` points along +x.
    let to = |v: &Point| Point::new(reference.dot(v), reference.cross(v));
    angle_cmp(&to(a), &to(b))
}

/// Rank of the vectors `{c}` (0, 1 or 2).
pub fn normal_rank<'a, I: IntoIterator<Item = &'a Point>>(normals: I) -> usize {
    let mut first: Option<&Point> = None;
    for c in normals {
        if c.is_zero() {
            continue;
        }
        match first {
            None => first = Some(c),
            Some(f) => {
                if !f.cross(c).is_zero() {
                    return 2;
                }
            }
        }
    }
    usize::from(first.is_some())
}

/// Indices `j` with `hps[j]` containing the point.
pub fn satisfied_set(hps: &[HalfPlane], p: &Point) -> Vec<usize> {
    (0..hps.len()).filter(|&j| hps[j].contains(p)).collect()
}
