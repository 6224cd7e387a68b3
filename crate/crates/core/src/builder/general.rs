//! The general construction for systems in general position.
//!
//! Work happens in the point system around `z`. Step 1 collects the marked
//! MCSs. Step 2 takes one member per MCS of the subsystem violated at `z`
//! (a homogeneous problem once `z` is the origin). Those members already
//! carry every black point, and the red points they miss are then mopped up
//! in rounds. Each round splits the black points by the line through `z` and
//! an undecided red point, encloses the red points that share its sector in
//! a narrow angle, and adds two half-planes. Each of these votes for one side
//! of the black points and for every red point behind a side of the angle.
//! Red points voted against by both get a second pair from their own
//! enclosing angle.

use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::{One, Signed, Zero};

use super::GeneralPositionSystem;
use crate::error::{Error, Result};
use crate::geom::{angle_cmp_from, materialize, Point, Rational};
use crate::mcs::{all_marked_mcs, extend_to_mcs, homogeneous_mcs_enumeration, MarkedMcs, Witness};
use crate::polar::{Committee, System};

/// Which members decide a red point's exclusion after a round.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum ExclusionRule {
    /// Majority of the 2 or 4 half-planes added in the round.
    #[default]
    RoundOnly,
    /// Majority of every half-plane collected so far.
    Cumulative,
}

/// Which red points can trigger the second pair of a round.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum SecondRoundScope {
    /// Only red points still undecided.
    #[default]
    Remaining,
    /// Every red point of the system.
    AllRed,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct BuildOptions {
    pub exclusion: ExclusionRule,
    pub second_round: SecondRoundScope,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Step3Round {
    /// Red point (inequality index) the split line passes through.
    pub pivot: usize,
    /// Black points left / right of the line through `z` and the pivot.
    pub a1: Vec<usize>,
    pub a2: Vec<usize>,
    /// Undecided red points sharing the pivot's sector.
    pub b1: Vec<usize>,
    /// Sides of the enclosing angle, as vectors from `z`.
    pub alpha: (Point, Point),
    /// Red points voted against by both first members; empty without a second pair.
    pub b2: Vec<usize>,
    pub gamma: Option<(Point, Point)>,
    /// Seed subsystems, one per added member.
    pub subsystems: Vec<Vec<usize>>,
    pub members: Vec<Point>,
    pub excluded: Vec<usize>,
    /// Every point of the point system got at least half of the round's votes.
    pub sound: bool,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BuildTrace {
    pub origin: Point,
    pub options: BuildOptions,
    pub marked: Vec<MarkedMcs>,
    /// MCSs of the subsystem violated at `z`.
    pub step2_sets: Vec<Vec<usize>>,
    pub k0: Vec<Point>,
    /// Red points not carried by the Step 2 members.
    pub b_prime: Vec<usize>,
    pub rounds: Vec<Step3Round>,
}

pub fn build_committee(gps: &GeneralPositionSystem, z: &Point) -> Result<(Committee, BuildTrace)> {
    build_committee_with(gps, z, BuildOptions::default())
}

struct Ctx<'a> {
    sys: &'a System,
    z: &'a Point,
    /// Image point minus `z`, per inequality.
    v: Vec<Point>,
    black: Vec<usize>,
    red: Vec<usize>,
}

impl Ctx<'_> {
    /// Member solving an MCS that contains the black points strictly on the
    /// positive side of `n` and the red points on its closed negative side.
    fn member_for(&self, n: &Point, group: &[usize], reds: &[usize]) -> Result<(Vec<usize>, Point)> {
        let mut t = Rational::one();
        for &a in group {
            let s = n.dot(&self.v[a]);
            let need = Rational::one() / s + Rational::one();
            if need > t {
                t = need;
            }
        }
        let seed = self.z + &n.scale(&t);
        let mut sub: Vec<usize> = group.iter().chain(reds.iter()).copied().collect();
        sub.sort_unstable();
        let m = extend_to_mcs(self.sys, &sub, &seed)?;
        let p = m.witness.to_point(self.sys.ineqs());
        if &p == self.z {
            return Err(Error::Degenerate("round member coincides with the origin".into()));
        }
        Ok((sub, p))
    }

    fn votes_for(&self, member: &Point, j: usize) -> bool {
        self.sys.get(j).contains(member)
    }

    /// Two members for the angle with sides `s1` (clockwise end) and `s2`.
    fn pair_for(&self, s1: &Point, s2: &Point) -> Result<[(Vec<usize>, Point); 2]> {
        let left = s2.rot90();
        let right = s1.rot270();
        let g1: Vec<usize> = self.black.iter().copied().filter(|&a| left.dot(&self.v[a]).is_positive()).collect();
        let r1: Vec<usize> = self.red.iter().copied().filter(|&b| !left.dot(&self.v[b]).is_positive()).collect();
        let g2: Vec<usize> = self.black.iter().copied().filter(|&a| right.dot(&self.v[a]).is_positive()).collect();
        let r2: Vec<usize> = self.red.iter().copied().filter(|&b| !right.dot(&self.v[b]).is_positive()).collect();
        Ok([self.member_for(&left, &g1, &r1)?, self.member_for(&right, &g2, &r2)?])
    }
}

/// Angle sides enclosing `pts` (all within an open half-turn counter-clockwise of `reference`).
fn enclosing(ctx: &Ctx<'_>, reference: &Point, pts: &[usize]) -> (Point, Point) {
    let cmp = |a: &&usize, b: &&usize| angle_cmp_from(reference, &ctx.v[**a], &ctx.v[**b]);
    let lo = pts.iter().min_by(cmp).expect("nonempty");
    let hi = pts.iter().max_by(cmp).expect("nonempty");
    (ctx.v[*lo].clone(), ctx.v[*hi].clone())
}

pub fn build_committee_with(gps: &GeneralPositionSystem, z: &Point, opts: BuildOptions) -> Result<(Committee, BuildTrace)> {
    let sys = gps.system();
    let hs = sys.ineqs();
    let mut v = Vec::with_capacity(hs.len());
    let (mut black, mut red) = (Vec::new(), Vec::new());
    for (j, h) in hs.iter().enumerate() {
        let d = &h.b - h.c.dot(z);
        if d.is_zero() {
            return Err(Error::OriginOnBoundary(j));
        }
        v.push(h.c.scale(&(Rational::one() / &d)));
        if d.is_positive() {
            black.push(j);
        } else {
            red.push(j);
        }
    }
    if black.is_empty() || sys.is_consistent() {
        return Err(Error::ConsistentSystem);
    }

    // Step 1.
    let marked = all_marked_mcs(sys)?;
    let marked_pts: Vec<Point> = marked.iter().map(|m| materialize(&m.witness, hs)).collect();

    // Step 2: with z as origin the violated subsystem reads (c, h') > b' with
    // b' > 0, and its MCSs are those of (c, h') > 0.
    let normals: Vec<Point> = black.iter().map(|&j| hs[j].c.clone()).collect();
    let homo = homogeneous_mcs_enumeration(&normals)?;
    let mut step2_sets = Vec::new();
    let mut k0 = Vec::new();
    for set in &homo {
        let idx: Vec<usize> = set.indices.iter().map(|&k| black[k]).collect();
        let containing = marked.iter().enumerate().filter(|(_, m)| idx.iter().all(|j| m.members.contains(j))).min_by(|a, b| a.1.pair.cmp(&b.1.pair));
        let member = match containing {
            Some((s, _)) => marked_pts[s].clone(),
            None => {
                let Witness::Direction(d) = &set.witness else { unreachable!("homogeneous witnesses are directions") };
                let d = d.vector();
                let mut t = Rational::one();
                for &j in &idx {
                    let need = (&hs[j].b - hs[j].c.dot(z)) / hs[j].c.dot(d) + Rational::one();
                    if need > t {
                        t = need;
                    }
                }
                let seed = z + &d.scale(&t);
                extend_to_mcs(sys, &idx, &seed)?.witness.to_point(hs)
            }
        };
        step2_sets.push(idx);
        k0.push(member);
    }
    let q0 = k0.len();
    let k0c = Committee::from_points(k0.clone());
    let votes = k0c.votes(sys);
    let mut b_prime = Vec::new();
    for (j, &n) in votes.iter().enumerate() {
        if 2 * n <= q0 {
            if black.contains(&j) {
                return Err(Error::Internal(format!("step 2 members miss a majority on violated inequality {}", j + 1)));
            }
            b_prime.push(j);
        }
    }

    let ctx = Ctx { sys, z, v, black, red };
    let mut all_members: Vec<Point> = k0.clone();
    let mut remaining = b_prime.clone();
    let mut rounds: Vec<Step3Round> = Vec::new();
    while !remaining.is_empty() {
        let round = step3_round(&ctx, &remaining, &all_members, opts)?;
        if round.excluded.is_empty() {
            return Err(Error::NoCommitteeDetected { rounds: rounds.len(), remaining });
        }
        remaining.retain(|j| !round.excluded.contains(j));
        all_members.extend(round.members.iter().cloned());
        rounds.push(round);
    }

    let committee = Committee::from_points(all_members);
    if !committee.is_committee_of(sys) {
        return Err(Error::Internal(format!("constructed collection of {} members is not a committee", committee.size())));
    }
    let trace = BuildTrace { origin: z.clone(), options: opts, marked, step2_sets, k0, b_prime, rounds };
    Ok((committee, trace))
}

fn step3_round(ctx: &Ctx<'_>, remaining: &[usize], so_far: &[Point], opts: BuildOptions) -> Result<Step3Round> {
    let pivot = remaining[0];
    let vb = &ctx.v[pivot];
    let mut a1 = Vec::new();
    let mut a2 = Vec::new();
    for &a in &ctx.black {
        let c = vb.cross(&ctx.v[a]);
        if c.is_positive() {
            a1.push(a);
        } else if c.is_negative() {
            a2.push(a);
        } else {
            return Err(Error::NotGeneralPosition(format!("points of inequalities {} and {} are collinear with the origin", pivot + 1, a + 1)));
        }
    }
    // Sector around the pivot bounded by the nearest lines through z and a black point.
    let rays: Vec<Point> = ctx.black.iter().flat_map(|&a| [ctx.v[a].clone(), -&ctx.v[a]]).collect();
    let by_angle = |p: &&Point, q: &&Point| angle_cmp_from(vb, p, q);
    let ccw_end = rays.iter().min_by(by_angle).expect("black points exist").clone();
    let cw_end = rays.iter().max_by(by_angle).expect("black points exist").clone();
    let b1: Vec<usize> = remaining
        .iter()
        .copied()
        .filter(|&b| {
            let w = &ctx.v[b];
            angle_cmp_from(vb, w, &ccw_end) != Ordering::Greater || angle_cmp_from(vb, w, &cw_end) != Ordering::Less
        })
        .collect();
    let alpha = enclosing(ctx, &cw_end, &b1);
    let first = ctx.pair_for(&alpha.0, &alpha.1)?;
    let mut subsystems: Vec<Vec<usize>> = first.iter().map(|(s, _)| s.clone()).collect();
    let mut members: Vec<Point> = first.iter().map(|(_, p)| p.clone()).collect();

    let scope: &[usize] = match opts.second_round {
        SecondRoundScope::Remaining => remaining,
        SecondRoundScope::AllRed => &ctx.red,
    };
    let b2: Vec<usize> = scope.iter().copied().filter(|&b| members.iter().all(|p| !ctx.votes_for(p, b))).collect();
    let mut gamma = None;
    if !b2.is_empty() {
        // Every such point lies in the first member's half-plane, within a
        // half-turn counter-clockwise of its normal turned clockwise.
        let g = &members[0] - ctx.z;
        let g_sides = enclosing(ctx, &g.rot270(), &b2);
        let second = ctx.pair_for(&g_sides.0, &g_sides.1)?;
        subsystems.extend(second.iter().map(|(s, _)| s.clone()));
        members.extend(second.iter().map(|(_, p)| p.clone()));
        gamma = Some(g_sides);
    }

    let k = members.len();
    let pool: Vec<&Point> = match opts.exclusion {
        ExclusionRule::RoundOnly => members.iter().collect(),
        ExclusionRule::Cumulative => so_far.iter().chain(members.iter()).collect(),
    };
    let excluded: Vec<usize> = remaining
        .iter()
        .copied()
        .filter(|&b| 2 * pool.iter().filter(|p| ctx.votes_for(p, b)).count() > pool.len())
        .collect();
    // The origin always gets every vote, so only inequality points matter.
    let sound = (0..ctx.sys.len()).all(|j| 2 * members.iter().filter(|p| ctx.votes_for(p, j)).count() >= k);
    Ok(Step3Round { pivot, a1, a2, b1, alpha, b2, gamma, subsystems, members, excluded, sound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{p5, t1};
    use crate::geom::HalfPlane;

    #[test]
    fn t1_at_origin_stops_after_step2() {
        let gps = GeneralPositionSystem::new(t1()).unwrap();
        let (k, tr) = build_committee(&gps, &Point::origin()).unwrap();
        assert_eq!(k.size(), 3);
        assert!(tr.b_prime.is_empty() && tr.rounds.is_empty());
        assert!(k.is_committee_of(&t1()));
    }

    #[test]
    fn p5_at_origin() {
        let gps = GeneralPositionSystem::new(p5()).unwrap();
        let (k, _) = build_committee(&gps, &Point::origin()).unwrap();
        assert_eq!(k.size(), 5);
    }

    #[test]
    fn consistent_rejected() {
        let sys = System::new(alloc::vec![
            HalfPlane::from_ints(1, 0, 1),
            HalfPlane::from_ints(0, 1, 1),
            HalfPlane::from_ints(1, 1, 5),
        ])
        .unwrap();
        let gps = GeneralPositionSystem::new(sys).unwrap();
        assert_eq!(build_committee(&gps, &Point::origin()).unwrap_err(), Error::ConsistentSystem);
    }
}
