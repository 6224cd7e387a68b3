use alloc::vec::Vec;

use num_traits::Signed;

use super::{McsSet, Witness};
use crate::error::{Error, Result};
use crate::geom::{angle_cmp, Direction, Point};

/// Homogeneous system `(c_j, h) > 0` over the given normals, with the MCS
/// list of [`homogeneous_mcs_enumeration`].
pub type HomogeneousMcs = McsSet;

/// All MCSs of `(c_j, h) > 0`, by a circular sweep over the directions
/// where some `(c_j, h)` vanishes. Each set carries a witness direction
/// strictly inside its arc. Sorted by index set.
pub fn homogeneous_mcs_enumeration(normals: &[Point]) -> Result<Vec<McsSet>> {
    if normals.is_empty() {
        return Err(Error::EmptyInput);
    }
    if let Some(j) = normals.iter().position(Point::is_zero) {
        return Err(Error::ZeroNormal(j));
    }
    let mut dirs: Vec<Point> = normals.iter().flat_map(|c| [c.rot90(), c.rot270()]).collect();
    dirs.sort_by(angle_cmp);
    dirs.dedup_by(|a, b| angle_cmp(a, b).is_eq());
    let n = dirs.len();
    let mut sets: Vec<(Vec<usize>, Point)> = Vec::new();
    for i in 0..n {
        let (u, v) = (&dirs[i], &dirs[(i + 1) % n]);
        let cr = u.cross(v);
        // The direction set is symmetric, so arcs never exceed a half turn.
        let w = if cr.is_positive() { u + v } else { u.rot90() };
        let set: Vec<usize> = (0..normals.len()).filter(|&j| normals[j].dot(&w).is_positive()).collect();
        sets.push((set, w));
    }
    let mut out: Vec<McsSet> = Vec::new();
    for (i, (s, w)) in sets.iter().enumerate() {
        let dominated = sets.iter().enumerate().any(|(k, (t, _))| {
            k != i && s.iter().all(|j| t.contains(j)) && (t.len() > s.len() || (t == s && k < i))
        });
        if !dominated {
            out.push(McsSet { indices: s.clone(), witness: Witness::Direction(Direction::new(w.clone()).expect("nonzero")) });
        }
    }
    out.sort_by(|a, b| a.indices.cmp(&b.indices));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{p5, t1};
    use alloc::vec;

    fn normals(sys: &crate::polar::System) -> Vec<Point> {
        sys.ineqs().iter().map(|h| h.c.clone()).collect()
    }

    #[test]
    fn t1_normals() {
        let out = homogeneous_mcs_enumeration(&normals(&t1())).unwrap();
        let sets: Vec<Vec<usize>> = out.iter().map(|m| m.indices.clone()).collect();
        assert_eq!(sets, vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
    }

    #[test]
    fn consistent_pair() {
        let out = homogeneous_mcs_enumeration(&[Point::from_ints(1, 0), Point::from_ints(0, 1)]).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].indices, vec![0, 1]);
        assert_eq!(out[0].witness, Witness::Direction(Direction::new(Point::from_ints(1, 1)).unwrap()));
    }

    #[test]
    fn p5_adjacent_triples() {
        let out = homogeneous_mcs_enumeration(&normals(&p5())).unwrap();
        assert_eq!(out.len(), 5);
        assert!(out.iter().all(|m| m.indices.len() == 3));
        assert_eq!(homogeneous_mcs_enumeration(&[]), Err(Error::EmptyInput));
    }
}
