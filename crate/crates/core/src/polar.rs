//! Systems, committees, and the point-system picture of a system.
//!
//! With respect to an origin `z` off every border, inequality `j` becomes the
//! point `z + c_j / (b_j - (c_j, z))`. It is colored black when `z` violates
//! the inequality and red when `z` satisfies it; `z` itself is adjoined as a
//! red point. A member `x != z` of a committee becomes the open half-plane
//! `P = {x' : (x - z, x' - z) > 1}`, whose closure misses `z`, and `x`
//! satisfies inequality `j` exactly when `P` votes for point `j`.

use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::geom::{self, convex_hull, feasible, point_in_hull, Constraint, HalfPlane, Point, Rational};

pub type Inequality = HalfPlane;

/// Ordered, validated list of inequalities.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct System {
    ineqs: Vec<HalfPlane>,
}

impl System {
    /// Rejects empty input, zero normals and identical inequalities
    /// (positively proportional `(c, b)`).
    pub fn new(ineqs: Vec<HalfPlane>) -> Result<Self> {
        if ineqs.is_empty() {
            return Err(Error::EmptySystem);
        }
        for (j, h) in ineqs.iter().enumerate() {
            if h.c.is_zero() {
                return Err(Error::ZeroNormal(j));
            }
        }
        for i in 0..ineqs.len() {
            for j in i + 1..ineqs.len() {
                if ineqs[i].same_halfplane(&ineqs[j]) {
                    return Err(Error::DuplicateInequality(i, j));
                }
            }
        }
        Ok(System { ineqs })
    }

    pub fn ineqs(&self) -> &[HalfPlane] {
        &self.ineqs
    }

    pub fn len(&self) -> usize {
        self.ineqs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ineqs.is_empty()
    }

    pub fn get(&self, j: usize) -> &HalfPlane {
        &self.ineqs[j]
    }

    pub fn subsystem(&self, idx: &[usize]) -> Vec<HalfPlane> {
        idx.iter().map(|&j| self.ineqs[j].clone()).collect()
    }

    pub fn is_consistent(&self) -> bool {
        let cons: Vec<Constraint> = self.ineqs.iter().map(Constraint::from).collect();
        feasible(&cons)
    }

    pub fn subset_consistent(&self, idx: &[usize]) -> bool {
        let cons: Vec<Constraint> = idx.iter().map(|&j| Constraint::from(&self.ineqs[j])).collect();
        feasible(&cons)
    }

    pub fn satisfied_by(&self, p: &Point) -> Vec<usize> {
        geom::satisfied_set(&self.ineqs, p)
    }

    /// First pair without a common solution, if any.
    pub fn inconsistent_pair(&self) -> Option<(usize, usize)> {
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                if !self.subset_consistent(&[i, j]) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// The same system in coordinates `h' = h - z`.
    pub fn translated(&self, z: &Point) -> System {
        let ineqs = self
            .ineqs
            .iter()
            .map(|h| HalfPlane { c: h.c.clone(), b: &h.b - h.c.dot(z), strict: h.strict })
            .collect();
        System { ineqs }
    }
}

/// Finite multiset of points, kept in first-insertion order.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Committee {
    members: Vec<(Point, usize)>,
}

impl Committee {
    pub fn new(members: Vec<(Point, usize)>) -> Self {
        let mut out: Vec<(Point, usize)> = Vec::new();
        for (p, k) in members {
            if k == 0 {
                continue;
            }
            match out.iter_mut().find(|(q, _)| *q == p) {
                Some((_, m)) => *m += k,
                None => out.push((p, k)),
            }
        }
        Committee { members: out }
    }

    pub fn from_points(points: Vec<Point>) -> Self {
        Committee::new(points.into_iter().map(|p| (p, 1)).collect())
    }

    pub fn members(&self) -> &[(Point, usize)] {
        &self.members
    }

    /// Total number of members counting multiplicity.
    pub fn size(&self) -> usize {
        self.members.iter().map(|(_, k)| k).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Per-inequality count of members satisfying it, with multiplicity.
    pub fn votes(&self, sys: &System) -> Vec<usize> {
        sys.ineqs()
            .iter()
            .map(|h| self.members.iter().filter(|(p, _)| h.contains(p)).map(|(_, k)| k).sum())
            .collect()
    }

    pub fn is_committee_of(&self, sys: &System) -> bool {
        let q = self.size();
        q > 0 && self.votes(sys).iter().all(|&v| 2 * v > q)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Color {
    Red,
    Black,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Source {
    Inequality(usize),
    Origin,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ColoredPoint {
    pub pos: Point,
    pub color: Color,
    pub source: Source,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ColoredPointSystem {
    pub origin: Point,
    /// Black points.
    pub a: Vec<ColoredPoint>,
    /// Red points; the last entry is the origin.
    pub b: Vec<ColoredPoint>,
}

impl ColoredPointSystem {
    pub fn points(&self) -> impl Iterator<Item = &ColoredPoint> {
        self.a.iter().chain(self.b.iter())
    }
}

/// Inversion in the unit circle, `c / |c|^2`.
pub fn polar_point(c: &Point) -> Result<Point> {
    if c.is_zero() {
        return Err(Error::ZeroPoint);
    }
    Ok(c.scale(&(Rational::one() / c.norm2())))
}

/// The image of inequality `j` with respect to `z`; `None` when `z` is on its border.
pub fn image_point(h: &HalfPlane, z: &Point) -> Option<Point> {
    let d = &h.b - h.c.dot(z);
    if d.is_zero() {
        None
    } else {
        Some(z + &h.c.scale(&(Rational::one() / d)))
    }
}

pub fn point_system_of(sys: &System, z: &Point) -> Result<ColoredPointSystem> {
    let mut a = Vec::new();
    let mut b = Vec::new();
    for (j, h) in sys.ineqs().iter().enumerate() {
        let pos = image_point(h, z).ok_or(Error::OriginOnBoundary(j))?;
        // (c, z) < b means z violates the inequality: black.
        let color = if h.slack(z).is_negative() { Color::Black } else { Color::Red };
        let cp = ColoredPoint { pos, color, source: Source::Inequality(j) };
        match color {
            Color::Black => a.push(cp),
            Color::Red => b.push(cp),
        }
    }
    b.push(ColoredPoint { pos: z.clone(), color: Color::Red, source: Source::Origin });
    Ok(ColoredPointSystem { origin: z.clone(), a, b })
}

/// Whether the open half-plane `p` votes for `d`.
pub fn votes_for(p: &HalfPlane, d: &ColoredPoint, z: &Point) -> Result<bool> {
    if !p.slack(z).is_negative() {
        return Err(Error::OriginInClosure);
    }
    let s = p.slack(&d.pos);
    Ok(match d.color {
        Color::Black => s.is_positive(),
        Color::Red => s.is_negative(),
    })
}

pub fn check_solution(sys: &System, x0: &Point) -> bool {
    sys.ineqs().iter().all(|h| h.contains(x0))
}

/// Solution test through the point system: `x0` solves `sys` iff the
/// half-plane of `x0` holds every black point and no red point (closed or
/// open according to each inequality's strictness).
pub fn check_solution_polar(sys: &System, x0: &Point, z: &Point) -> Result<bool> {
    let ps = point_system_of(sys, z)?;
    if x0 == z {
        return Ok(ps.a.is_empty());
    }
    let g = x0 - z;
    let value = |pos: &Point| g.dot(&(pos - z));
    for d in ps.points() {
        let Source::Inequality(j) = d.source else { continue };
        let v = value(&d.pos);
        let strict = sys.get(j).strict;
        let ok = match d.color {
            Color::Black => v > Rational::one() || (!strict && v.is_one()),
            Color::Red => v < Rational::one() || (!strict && v.is_one()),
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Half-plane committee of the point system, with the origin it refers to.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HalfPlaneCommittee {
    pub origin: Point,
    pub members: Vec<(HalfPlane, usize)>,
}

impl HalfPlaneCommittee {
    pub fn size(&self) -> usize {
        self.members.iter().map(|(_, k)| k).sum()
    }
}

/// The half-plane `{x : (g - z, x - z) > 1}`, stored as `(g - z, x) > 1 + (g - z, z)`.
pub fn member_halfplane(g: &Point, z: &Point) -> Option<HalfPlane> {
    let c = g - z;
    if c.is_zero() {
        return None;
    }
    let b = Rational::one() + c.dot(z);
    Some(HalfPlane::new(c, b))
}

pub fn committee_to_halfplanes(k: &Committee, z: &Point) -> Result<HalfPlaneCommittee> {
    let mut members = Vec::new();
    for (i, (g, mult)) in k.members().iter().enumerate() {
        let hp = member_halfplane(g, z).ok_or(Error::MemberEqualsOrigin(i))?;
        members.push((hp, *mult));
    }
    Ok(HalfPlaneCommittee { origin: z.clone(), members })
}

/// Inverse of [`member_halfplane`] for any open half-plane whose closure misses `z`.
pub fn halfplane_member(p: &HalfPlane, z: &Point) -> Result<Point> {
    let d = &p.b - p.c.dot(z);
    if !d.is_positive() {
        return Err(Error::OriginInClosure);
    }
    Ok(z + &p.c.scale(&(Rational::one() / d)))
}

pub fn halfplanes_to_committee(k: &HalfPlaneCommittee) -> Result<Committee> {
    let mut members = Vec::new();
    for (p, mult) in &k.members {
        members.push((halfplane_member(p, &k.origin)?, *mult));
    }
    Ok(Committee::new(members))
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PointVotes {
    /// Votes received by each black point, in `ps.a` order.
    pub a: Vec<usize>,
    /// Votes received by each red point, in `ps.b` order (origin last).
    pub b: Vec<usize>,
    pub is_committee: bool,
}

pub fn verify_point_committee(ps: &ColoredPointSystem, k: &HalfPlaneCommittee) -> Result<PointVotes> {
    let q = k.size();
    let count = |d: &ColoredPoint| -> Result<usize> {
        let mut n = 0;
        for (p, mult) in &k.members {
            if votes_for(p, d, &ps.origin)? {
                n += mult;
            }
        }
        Ok(n)
    };
    let a = ps.a.iter().map(count).collect::<Result<Vec<_>>>()?;
    let b = ps.b.iter().map(count).collect::<Result<Vec<_>>>()?;
    let is_committee = q > 0 && a.iter().chain(b.iter()).all(|&v| 2 * v > q);
    Ok(PointVotes { a, b, is_committee })
}

/// The inequality system whose committees are the committees of affine
/// functions `x -> (g, x - z) - 1` separating `a` from `b` together with `z`.
pub fn separation_to_system(a: &[Point], b: &[Point], z: &Point) -> Result<System> {
    let mut ineqs = Vec::new();
    for p in a {
        ineqs.push(HalfPlane::new(p - z, Rational::one()));
    }
    for p in b {
        ineqs.push(HalfPlane::new(-(p - z), -Rational::one()));
    }
    System::new(ineqs)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Prop14Report {
    /// Black points inside the closed hull of the red points (origin included).
    pub a_in_conv_b: bool,
    /// Red points inside the closed hull of the black points and the origin.
    pub b_in_conv_a_origin: bool,
}

pub fn check_prop14(ps: &ColoredPointSystem) -> Prop14Report {
    let reds: Vec<Point> = ps.b.iter().map(|d| d.pos.clone()).collect();
    let hull_b = convex_hull(&reds);
    let a_in_conv_b = ps.a.iter().all(|d| point_in_hull(&hull_b, &d.pos));
    let mut blacks: Vec<Point> = ps.a.iter().map(|d| d.pos.clone()).collect();
    blacks.push(ps.origin.clone());
    let hull_a = convex_hull(&blacks);
    let b_in_conv_a_origin = ps.b.iter().all(|d| point_in_hull(&hull_a, &d.pos));
    Prop14Report { a_in_conv_b, b_in_conv_a_origin }
}
