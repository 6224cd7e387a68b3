use alloc::vec::Vec;

use super::{build_committee, GeneralPositionSystem};
use crate::error::{Error, Result};
use crate::geom::{materialize, Direction, Point};
use crate::mcs::{canonical_rays, edge_into, find_marked_mcs, MarkedMcs, ProcedureTrace};
use crate::polar::{Committee, System};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ThreeTrace {
    /// The three sweeps, in the order they were run.
    pub sweeps: Vec<(MarkedMcs, ProcedureTrace)>,
    pub candidates: Vec<Point>,
    pub votes: Vec<usize>,
}

/// Three sweeps: one from border 1, then one from each half-plane of the
/// determining pair found, walking away from the other half-plane. The
/// three witnesses form a committee exactly when a three-member committee
/// exists.
///
/// `Ok(None)` also covers systems with a pair of disjoint half-planes,
/// which have no committee at all.
pub fn three_committee(sys: &System) -> Result<(Option<Committee>, Option<ThreeTrace>)> {
    if sys.inconsistent_pair().is_some() {
        return Ok((None, None));
    }
    if sys.is_consistent() {
        return Err(Error::ConsistentSystem);
    }
    let hs = sys.ineqs();
    let ray0 = canonical_rays(sys, 0)?.remove(0);
    let first = find_marked_mcs(sys, 0, &ray0.dir)?;
    let (e, e2) = first.1.last_pair();
    let back = |on: usize, other: usize| Direction::new(-edge_into(&hs[on], &hs[other])).expect("nonzero");
    let second = find_marked_mcs(sys, e, &back(e, e2))?;
    let third = find_marked_mcs(sys, e2, &back(e2, e))?;
    let sweeps = alloc::vec![first, second, third];
    let candidates: Vec<Point> = sweeps.iter().map(|(m, _)| materialize(&m.witness, hs)).collect();
    let k = Committee::from_points(candidates.clone());
    let votes = k.votes(sys);
    let ok = votes.iter().all(|&v| v >= 2);
    let trace = ThreeTrace { sweeps, candidates, votes };
    Ok((ok.then_some(k), Some(trace)))
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CriterionOutcome {
    pub holds: bool,
    /// A 5-subsystem with no consistent 4-subsystem, when the criterion fails.
    pub witness: Option<Vec<usize>>,
}

fn has_consistent_four(sys: &System, five: &[usize]) -> bool {
    (0..5).any(|skip| {
        let four: Vec<usize> = five.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &j)| j).collect();
        sys.subset_consistent(&four)
    })
}

fn combinations(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) -> bool {
    if k > n {
        return true;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if !f(&idx) {
            return false;
        }
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else { return true };
        idx[i] += 1;
        for t in i + 1..k {
            idx[t] = idx[t - 1] + 1;
        }
    }
}

/// Every 5-subsystem contains a consistent 4-subsystem. Vacuous below five.
pub fn three_committee_criterion(sys: &System) -> CriterionOutcome {
    let mut witness = None;
    let holds = combinations(sys.len(), 5, |five| {
        let ok = has_consistent_four(sys, five);
        if !ok {
            witness = Some(five.to_vec());
        }
        ok
    });
    CriterionOutcome { holds, witness }
}

/// The criterion restricted to 5-subsystems holding both inequalities
/// outside `j0`, an MCS of cardinality `m - 2`.
pub fn corollary41_check(sys: &System, j0: &[usize]) -> Result<CriterionOutcome> {
    let m = sys.len();
    let mut j0 = j0.to_vec();
    j0.sort_unstable();
    j0.dedup();
    if let Some(&bad) = j0.iter().find(|&&j| j >= m) {
        return Err(Error::IndexOutOfRange(bad));
    }
    if m < 2 || j0.len() != m - 2 {
        return Err(Error::WrongCardinality { expected: m.saturating_sub(2), got: j0.len() });
    }
    let out: Vec<usize> = (0..m).filter(|j| !j0.contains(j)).collect();
    let maximal = sys.subset_consistent(&j0)
        && out.iter().all(|&o| {
            let mut s = j0.clone();
            s.push(o);
            !sys.subset_consistent(&s)
        });
    if !maximal {
        return Err(Error::WrongCardinality { expected: m - 2, got: j0.len() });
    }
    let mut witness = None;
    let holds = combinations(j0.len(), 3, |three| {
        let mut five: Vec<usize> = three.iter().map(|&i| j0[i]).chain(out.iter().copied()).collect();
        five.sort_unstable();
        let ok = has_consistent_four(sys, &five);
        if !ok {
            witness = Some(five);
        }
        ok
    });
    Ok(CriterionOutcome { holds, witness })
}

/// When a three-member committee exists and the inequalities violated at
/// `z` are inconsistent, the general construction returns three members.
/// `true` when the antecedent fails.
pub fn prop43_check(gps: &GeneralPositionSystem, z: &Point) -> Result<bool> {
    let sys = gps.system();
    if three_committee(sys)?.0.is_none() {
        return Ok(true);
    }
    let violated: Vec<usize> = (0..sys.len()).filter(|&j| !sys.get(j).contains(z)).collect();
    if sys.subset_consistent(&violated) {
        return Ok(true);
    }
    let (k, _) = build_committee(gps, z)?;
    Ok(k.size() == 3)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{p5, t1};
    use crate::geom::HalfPlane;

    #[test]
    fn t1_has_three() {
        let (k, tr) = three_committee(&t1()).unwrap();
        let k = k.unwrap();
        assert_eq!(k.size(), 3);
        assert_eq!(tr.unwrap().votes, alloc::vec![2, 2, 2]);
        assert!(three_committee_criterion(&t1()).holds);
    }

    #[test]
    fn p5_has_none() {
        assert!(three_committee(&p5()).unwrap().0.is_none());
        let c = three_committee_criterion(&p5());
        assert!(!c.holds);
        assert_eq!(c.witness, Some(alloc::vec![0, 1, 2, 3, 4]));
        let r = corollary41_check(&p5(), &[0, 1, 2]).unwrap();
        assert!(!r.holds);
        assert!(matches!(corollary41_check(&p5(), &[0, 1]), Err(Error::WrongCardinality { .. })));
    }

    #[test]
    fn general_construction_gives_three_examples() {
        let o = Point::origin();
        assert!(prop43_check(&GeneralPositionSystem::new(t1()).unwrap(), &o).unwrap());
        assert!(prop43_check(&GeneralPositionSystem::new(p5()).unwrap(), &o).unwrap());
    }

    #[test]
    fn disjoint_pair_has_no_committee() {
        let sys = System::new(alloc::vec![HalfPlane::from_ints(1, 0, 1), HalfPlane::from_ints(-1, 0, 1)]).unwrap();
        assert_eq!(three_committee(&sys).unwrap(), (None, None));
    }
}
