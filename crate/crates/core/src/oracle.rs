//! Brute-force ground truth over the arrangement of border lines.
//!
//! Membership of a point in strict half-planes depends only on the open
//! cell of the arrangement it lies in, up to points on borders. A committee
//! member on a border can be pushed off it without losing any strict
//! inequality it satisfies, so committees made of open-cell representatives
//! exist whenever any committee does. Replacing a member by one satisfying
//! a superset never breaks a committee, so only cells with maximal
//! satisfied-sets (the MCS cells) need to be searched.
//!
//! All of this assumes strict inequalities; non-strict ones are evaluated
//! correctly but lower-dimensional solution sets are not searched.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::geom::{cell_samples, materialize, Point, Sign};
use crate::polar::{Committee, System};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cell {
    /// `Inside` or `Outside` per inequality.
    pub sign_vector: Vec<Sign>,
    pub witness: Point,
}

impl Cell {
    pub fn satisfied(&self) -> Vec<usize> {
        (0..self.sign_vector.len()).filter(|&j| self.sign_vector[j] == Sign::Inside).collect()
    }
}

/// Every open cell of the arrangement, once each, in discovery order.
pub fn arrangement_cells(sys: &System) -> Vec<Cell> {
    let hs = sys.ineqs();
    let mut cells: Vec<Cell> = Vec::new();
    for s in cell_samples(hs) {
        let signs: Vec<Sign> = hs.iter().map(|h| h.side_of_perturbed(&s)).collect();
        debug_assert!(!signs.contains(&Sign::Boundary));
        if cells.iter().any(|c| c.sign_vector == signs) {
            continue;
        }
        let witness = materialize(&s, hs);
        cells.push(Cell { sign_vector: signs, witness });
    }
    cells
}

fn maximal_cells(sys: &System) -> Vec<(Vec<usize>, Point)> {
    let cells = arrangement_cells(sys);
    let sets: Vec<(Vec<usize>, Point)> = cells.iter().map(|c| (c.satisfied(), c.witness.clone())).collect();
    let mut out: Vec<(Vec<usize>, Point)> = Vec::new();
    for (s, w) in &sets {
        let dominated = sets.iter().any(|(t, _)| t.len() > s.len() && s.iter().all(|j| t.contains(j)));
        if !dominated && !out.iter().any(|(t, _)| t == s) {
            out.push((s.clone(), w.clone()));
        }
    }
    out.sort();
    out
}

/// Index sets of all MCSs, sorted.
pub fn brute_mcs(sys: &System) -> Vec<Vec<usize>> {
    maximal_cells(sys).into_iter().map(|(s, _)| s).collect()
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OracleReport {
    pub all_mcs: Vec<Vec<usize>>,
    pub min_committee_size: Option<usize>,
    pub witness_committee: Option<Committee>,
    /// Votes per inequality for the witness committee (empty without one).
    pub vote_table: Vec<usize>,
    /// Set when no committee of size at most `q_max` exists.
    pub q_max_too_small: bool,
}

struct Search<'a> {
    sets: &'a [Vec<usize>],
    /// `cover[i][j]`: some set at position `>= i` contains `j`.
    cover: Vec<Vec<bool>>,
    need: usize,
    counts: Vec<usize>,
    picks: Vec<usize>,
}

impl Search<'_> {
    fn go(&mut self, from: usize, left: usize) -> bool {
        let mut worst = 0;
        for (j, &c) in self.counts.iter().enumerate() {
            let d = self.need.saturating_sub(c);
            if d > 0 && (from >= self.sets.len() || !self.cover[from][j]) {
                return false;
            }
            worst = worst.max(d);
        }
        if worst == 0 {
            // Remaining slots can take any set; the first one keeps the multiset lexicographically least.
            for _ in 0..left {
                self.picks.push(0);
            }
            return true;
        }
        if worst > left {
            return false;
        }
        for i in from..self.sets.len() {
            for &j in &self.sets[i] {
                self.counts[j] += 1;
            }
            self.picks.push(i);
            if self.go(i, left - 1) {
                return true;
            }
            self.picks.pop();
            for &j in &self.sets[i] {
                self.counts[j] -= 1;
            }
        }
        false
    }
}

/// Smallest odd committee (size at most `q_max`) built from MCS cells.
///
/// Even sizes are never needed: dropping any member of an even committee of
/// size `q` leaves every count above `q/2 - 1`, i.e. at least `(q-1)/2 + 1`.
pub fn brute_min_committee(sys: &System, q_max: usize) -> OracleReport {
    let cells = maximal_cells(sys);
    let sets: Vec<Vec<usize>> = cells.iter().map(|(s, _)| s.clone()).collect();
    let m = sys.len();
    let mut cover = alloc::vec![alloc::vec![false; m]; sets.len() + 1];
    for i in (0..sets.len()).rev() {
        cover[i] = cover[i + 1].clone();
        for &j in &sets[i] {
            cover[i][j] = true;
        }
    }
    let mut q = 1;
    while q <= q_max {
        let mut s = Search { sets: &sets, cover: cover.clone(), need: q / 2 + 1, counts: alloc::vec![0; m], picks: Vec::new() };
        if s.go(0, q) {
            let mut picks = s.picks;
            picks.sort_unstable();
            let k = Committee::new(picks.iter().map(|&i| (cells[i].1.clone(), 1)).collect());
            let vote_table = k.votes(sys);
            return OracleReport {
                all_mcs: sets,
                min_committee_size: Some(q),
                witness_committee: Some(k),
                vote_table,
                q_max_too_small: false,
            };
        }
        q += 2;
    }
    OracleReport { all_mcs: sets, min_committee_size: None, witness_committee: None, vote_table: Vec::new(), q_max_too_small: true }
}

/// Exact vote counts and the majority test.
pub fn verify_committee(sys: &System, k: &Committee) -> Result<(bool, Vec<usize>)> {
    if k.is_empty() {
        return Err(Error::EmptyCommittee);
    }
    let votes = k.votes(sys);
    let q = k.size();
    Ok((votes.iter().all(|&v| 2 * v > q), votes))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{p5, t1, t1_committee};
    use crate::geom::{rat, HalfPlane};
    use alloc::vec;

    #[test]
    fn cell_counts() {
        let one = System::new(vec![HalfPlane::from_ints(1, 0, 1)]).unwrap();
        assert_eq!(arrangement_cells(&one).len(), 2);
        assert_eq!(arrangement_cells(&t1()).len(), 7);
        assert_eq!(arrangement_cells(&p5()).len(), 16);
    }

    #[test]
    fn mcs_lists() {
        assert_eq!(brute_mcs(&t1()), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        let sys = System::new(vec![HalfPlane::from_ints(1, 0, 1), HalfPlane::from_ints(0, 1, 1)]).unwrap();
        assert_eq!(brute_mcs(&sys), vec![vec![0, 1]]);
        let p = brute_mcs(&p5());
        assert_eq!(p, vec![vec![0, 1, 2], vec![0, 1, 4], vec![0, 3, 4], vec![1, 2, 3], vec![2, 3, 4]]);
    }

    #[test]
    fn minimal_sizes() {
        assert_eq!(brute_min_committee(&t1(), 9).min_committee_size, Some(3));
        assert_eq!(brute_min_committee(&p5(), 9).min_committee_size, Some(5));
        let r = brute_min_committee(&p5(), 3);
        assert!(r.q_max_too_small && r.min_committee_size.is_none());
        let sys = System::new(vec![HalfPlane::from_ints(1, 0, 1), HalfPlane::from_ints(0, 1, 1)]).unwrap();
        assert_eq!(brute_min_committee(&sys, 9).min_committee_size, Some(1));
    }

    #[test]
    fn verification() {
        assert_eq!(verify_committee(&t1(), &t1_committee()).unwrap(), (true, vec![2, 2, 2]));
        let single = Committee::from_points(vec![Point::new(rat(11, 10), rat(21, 10))]);
        assert!(!verify_committee(&t1(), &single).unwrap().0);
        let sys = System::new(vec![HalfPlane::from_ints(1, 0, 1)]).unwrap();
        assert_eq!(verify_committee(&sys, &Committee::from_points(vec![Point::from_ints(2, 0)])).unwrap(), (true, vec![1]));
        assert_eq!(verify_committee(&sys, &Committee::default()), Err(Error::EmptyCommittee));
    }
}
