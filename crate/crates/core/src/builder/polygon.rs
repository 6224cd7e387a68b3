//! Minimal committees for systems whose borders cut out a convex polygon.
//!
//! Around an interior point `z`, every half-plane missing `z` gets a
//! parallel companion containing `z` that shaves one corner (or part of an
//! unbounded end) off the polygon. Walking the sides of the resulting
//! polygon, each corner where a side missing `z` meets a side containing it
//! yields one member, and repeated members collapse.

use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::geom::{angle_cmp, cell_samples, int, line_intersect, materialize, HalfPlane, LineRelation, PerturbedPoint, Point, Rational, Sign, Direction};
use crate::mcs::{edge_into, homogeneous_mcs_enumeration};
use crate::polar::{Committee, System};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolygonPlan {
    pub original_m: usize,
    pub z: Point,
    /// The original inequalities followed by one companion per inequality missing `z`.
    pub augmented: System,
    pub k1: usize,
    /// Vertices of the final polygon, counter-clockwise.
    pub vertices: Vec<Point>,
    /// `sides[i]` is the inequality whose border runs from `vertices[i]` to `vertices[i + 1]`.
    pub sides: Vec<usize>,
    /// Qualified neighbor pairs `(D1, D2)` with `z` outside `D1` and inside `D2`.
    pub pairs: Vec<(usize, usize)>,
    /// One vertex per pair, with the half-plane `E` that cuts it out.
    pub raw_l: Vec<(Point, usize)>,
    pub dedup_l: Vec<Point>,
    pub committee: Committee,
    pub p: usize,
    pub q0: usize,
}

impl PolygonPlan {
    pub fn q(&self) -> usize {
        self.committee.size()
    }
}

/// Half-planes whose closure is the polygon around `z`.
fn inward(hs: &[HalfPlane], z: &Point) -> Vec<HalfPlane> {
    hs.iter().map(|h| if h.contains(z) { h.clone() } else { h.reversed_open() }).collect()
}

fn vertices_of(cons: &[HalfPlane]) -> Result<Vec<Point>> {
    let mut out: Vec<Point> = Vec::new();
    for i in 0..cons.len() {
        for j in i + 1..cons.len() {
            match line_intersect(&cons[i].border(), &cons[j].border()) {
                LineRelation::Point(p) => {
                    if cons.iter().all(|h| !h.slack(&p).is_negative()) && !out.contains(&p) {
                        out.push(p);
                    }
                }
                LineRelation::Parallel => {}
                LineRelation::Identical => {
                    return Err(Error::Degenerate(format!("borders {} and {} coincide", i + 1, j + 1)));
                }
            }
        }
    }
    Ok(out)
}

/// Recession direction of the closed region with `(c, d) < 0`, if any.
fn descent_direction(cons: &[HalfPlane], c: &Point) -> Option<Point> {
    cons.iter()
        .flat_map(|h| [h.c.rot90(), h.c.rot270(), h.c.clone(), -&h.c])
        .chain(core::iter::once(-c))
        .find(|d| c.dot(d).is_negative() && cons.iter().all(|h| !h.c.dot(d).is_negative()))
}

/// Every border carries a side of the open polygon around `z`.
fn all_sides(hs: &[HalfPlane], z: &Point) -> bool {
    let inw = inward(hs, z);
    (0..inw.len()).all(|j| {
        let mut cons: Vec<HalfPlane> = inw.clone();
        cons[j] = inw[j].reversed_open();
        System::new(cons).map(|s| s.is_consistent()).unwrap_or(false)
    })
}

fn bounded(hs: &[HalfPlane], z: &Point) -> bool {
    let inw = inward(hs, z);
    !inw.iter()
        .flat_map(|h| [h.c.rot90(), h.c.rot270()])
        .any(|d| inw.iter().all(|h| !h.c.dot(&d).is_negative()))
}

fn check_normals(sys: &System) -> Result<()> {
    let hs = sys.ineqs();
    for i in 0..hs.len() {
        for j in i + 1..hs.len() {
            if hs[i].c.cross(&hs[j].c).is_zero() && hs[i].c.dot(&hs[j].c).is_positive() {
                return Err(Error::NotAPolygon(format!("normals of {} and {} point the same way", i + 1, j + 1)));
            }
        }
    }
    Ok(())
}

/// Interior point of the cell all `m` borders bound, preferring a bounded cell.
fn find_interior(sys: &System) -> Result<Point> {
    let hs = sys.ineqs();
    let mut fallback = None;
    let mut seen: Vec<Vec<Sign>> = Vec::new();
    for s in cell_samples(hs) {
        let signs: Vec<Sign> = hs.iter().map(|h| h.side_of_perturbed(&s)).collect();
        if seen.contains(&signs) {
            continue;
        }
        seen.push(signs);
        let p = materialize(&s, hs);
        if !all_sides(hs, &p) {
            continue;
        }
        if bounded(hs, &p) {
            return Ok(p);
        }
        fallback.get_or_insert(p);
    }
    fallback.ok_or_else(|| Error::NotAPolygon("no cell has every border as a side".into()))
}

/// The augmented system around an automatically chosen interior point.
pub fn augment_polygon_system(sys: &System) -> Result<PolygonPlan> {
    check_normals(sys)?;
    let z = find_interior(sys)?;
    augment_polygon_system_at(sys, &z)
}

pub fn augment_polygon_system_at(sys: &System, z: &Point) -> Result<PolygonPlan> {
    check_normals(sys)?;
    let hs = sys.ineqs();
    if let Some(j) = hs.iter().position(|h| h.slack(z).is_zero()) {
        return Err(Error::OriginOnBoundary(j));
    }
    if !all_sides(hs, z) {
        return Err(Error::NotAPolygon(format!("some border carries no side of the polygon around {z}")));
    }
    let missing: Vec<usize> = (0..hs.len()).filter(|&j| !hs[j].contains(z)).collect();
    if missing.len() < 2 {
        return Err(if sys.is_consistent() {
            Error::ConsistentSystem
        } else {
            Error::NotAPolygon("fewer than two half-planes miss the interior point".into())
        });
    }
    let mut all: Vec<HalfPlane> = hs.to_vec();
    let mut cons = inward(hs, z);
    for &j in &missing {
        let c = &hs[j].c;
        let values: Vec<Rational> = vertices_of(&cons)?.iter().map(|v| c.dot(&(v - z))).collect();
        let lowest = values.iter().min().cloned().unwrap_or_else(Rational::zero).min(Rational::zero());
        let depth = if descent_direction(&cons, c).is_some() {
            lowest - Rational::one()
        } else {
            let mut sorted = values.clone();
            sorted.sort();
            if sorted.len() < 2 || sorted[0] == sorted[1] {
                return Err(Error::Degenerate(format!("no unique corner to cut for inequality {}", j + 1)));
            }
            (&sorted[0] + sorted[1].clone().min(Rational::zero())) / int(2)
        };
        let h = HalfPlane { c: c.clone(), b: c.dot(z) + depth, strict: true };
        all.push(h.clone());
        cons.push(h);
    }
    let augmented = System::new(all)?;
    let (vertices, sides) = polygon_of(&augmented, z)?;
    let expected = hs.len() + missing.len();
    if sides.len() != expected || vertices.len() != expected {
        return Err(Error::Degenerate(format!("augmented polygon has {} sides, expected {expected}", sides.len())));
    }
    Ok(PolygonPlan {
        original_m: hs.len(),
        z: z.clone(),
        augmented,
        k1: missing.len(),
        vertices,
        sides,
        pairs: Vec::new(),
        raw_l: Vec::new(),
        dedup_l: Vec::new(),
        committee: Committee::default(),
        p: 0,
        q0: 0,
    })
}

/// Vertices counter-clockwise around `z` and the border carrying each side.
fn polygon_of(sys: &System, z: &Point) -> Result<(Vec<Point>, Vec<usize>)> {
    let cons = inward(sys.ineqs(), z);
    if !bounded(sys.ineqs(), z) {
        return Err(Error::NotAPolygon("augmented polygon is unbounded".into()));
    }
    let mut vs = vertices_of(&cons)?;
    vs.sort_by(|a, b| angle_cmp(&(a - z), &(b - z)));
    let n = vs.len();
    let mut sides = Vec::with_capacity(n);
    for i in 0..n {
        let (a, b) = (&vs[i], &vs[(i + 1) % n]);
        let on: Vec<usize> = (0..cons.len()).filter(|&k| cons[k].slack(a).is_zero() && cons[k].slack(b).is_zero()).collect();
        match on.as_slice() {
            [k] => sides.push(*k),
            _ => return Err(Error::Degenerate(format!("side from {a} to {b} lies on {} borders", on.len()))),
        }
    }
    Ok((vs, sides))
}

/// The corner member for the pair `(d1, d2)`: walk the border of `d1` into
/// `d2`, take the last crossing of a half-plane opening that way, and step
/// just inside the cone it forms with `d1`.
fn corner(hs: &[HalfPlane], d1: usize, d2: usize) -> Result<(Point, usize, PerturbedPoint)> {
    let u = edge_into(&hs[d1], &hs[d2]);
    let mut best: Option<(Point, Vec<usize>)> = None;
    for (k, h) in hs.iter().enumerate() {
        if k == d1 || !h.c.dot(&u).is_positive() {
            continue;
        }
        let LineRelation::Point(v) = line_intersect(&hs[d1].border(), &h.border()) else { continue };
        match &mut best {
            None => best = Some((v, alloc::vec![k])),
            Some((bv, ks)) => match v.dot(&u).cmp(&bv.dot(&u)) {
                Ordering::Greater => best = Some((v, alloc::vec![k])),
                Ordering::Equal => ks.push(k),
                Ordering::Less => {}
            },
        }
    }
    let (h, ties) = best.expect("d2 opens along u");
    let mut e = ties[0];
    let mut w = edge_into(&hs[e], &hs[d1]);
    for &k in &ties[1..] {
        if hs[k].c.dot(&w).is_negative() {
            e = k;
            w = edge_into(&hs[k], &hs[d1]);
        }
    }
    let pp = PerturbedPoint::new(h.clone(), Direction::new(&u + &w).expect("cone edges are not opposite"));
    for (k, d) in hs.iter().enumerate() {
        if d.contains(&h) && d.side_of_perturbed(&pp) != Sign::Inside {
            return Err(Error::Degenerate(format!("corner member at {h} leaves inequality {}", k + 1)));
        }
    }
    Ok((h, e, pp))
}

pub fn polygon_minimal_committee(sys: &System) -> Result<(Committee, PolygonPlan)> {
    let plan = augment_polygon_system(sys)?;
    finish(sys, plan)
}

pub fn polygon_minimal_committee_at(sys: &System, z: &Point) -> Result<(Committee, PolygonPlan)> {
    let plan = augment_polygon_system_at(sys, z)?;
    finish(sys, plan)
}

fn finish(sys: &System, mut plan: PolygonPlan) -> Result<(Committee, PolygonPlan)> {
    let hs = plan.augmented.ineqs().to_vec();
    let z = plan.z.clone();
    let n = plan.sides.len();
    let mut pairs = Vec::new();
    for i in 0..n {
        let (a, b) = (plan.sides[(i + n - 1) % n], plan.sides[i]);
        match (hs[a].contains(&z), hs[b].contains(&z)) {
            (false, true) => pairs.push((a, b)),
            (true, false) => pairs.push((b, a)),
            _ => {}
        }
    }
    let mut raw_l = Vec::new();
    let mut dedup_l: Vec<Point> = Vec::new();
    let mut members = Vec::new();
    for &(d1, d2) in &pairs {
        let (h, e, pp) = corner(&hs, d1, d2)?;
        if !dedup_l.contains(&h) {
            dedup_l.push(h.clone());
            members.push(materialize(&pp, &hs));
        }
        raw_l.push((h, e));
    }
    let violated: Vec<Point> = (0..plan.original_m).filter(|&j| !hs[j].contains(&z)).map(|j| hs[j].c.clone()).collect();
    let q0 = homogeneous_mcs_enumeration(&violated)?.len();
    let committee = Committee::from_points(members);
    let p = pairs.len();
    if committee.size() + q0 != p {
        return Err(Error::Internal(format!("{} corner members from {p} pairs, but {q0} sets violated at {z}", committee.size())));
    }
    if !committee.is_committee_of(sys) {
        return Err(Error::Internal(format!("{} corner members do not form a committee", committee.size())));
    }
    plan.pairs = pairs;
    plan.raw_l = raw_l;
    plan.dedup_l = dedup_l;
    plan.committee = committee.clone();
    plan.p = p;
    plan.q0 = q0;
    Ok((committee, plan))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{p5, t1};

    #[test]
    fn t1_hexagon() {
        let plan = augment_polygon_system(&t1()).unwrap();
        assert_eq!(plan.augmented.len(), 6);
        assert_eq!(plan.vertices.len(), 6);
        let (k, plan) = polygon_minimal_committee(&t1()).unwrap();
        assert_eq!((plan.p, plan.q0, k.size()), (6, 3, 3));
    }

    #[test]
    fn p5_decagon() {
        let (k, plan) = polygon_minimal_committee(&p5()).unwrap();
        assert_eq!(plan.augmented.len(), 10);
        assert_eq!((plan.p, plan.q0, k.size()), (10, 5, 5));
    }

    #[test]
    fn same_direction_rejected() {
        let sys = System::new(alloc::vec![
            HalfPlane::from_ints(1, 0, 1),
            HalfPlane::from_ints(2, 0, 6),
            HalfPlane::from_ints(0, 1, 1),
        ])
        .unwrap();
        assert!(matches!(augment_polygon_system(&sys), Err(Error::NotAPolygon(_))));
    }
}
