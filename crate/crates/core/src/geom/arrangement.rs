use alloc::vec::Vec;

use super::{int, line_intersect, Direction, HalfPlane, LineRelation, PerturbedPoint, Rational};

/// One symbolic sample point per side of every edge of the line arrangement
/// of the borders.
///
/// Every open 2-cell of the arrangement is adjacent to at least one edge, so
/// every cell is hit. Samples sit at edge midpoints (or one unit beyond the
/// outermost crossing) nudged off the line along its normal; they lie on no
/// border of a non-parallel line, so each sample has a definite side for
/// every half-plane. Empty input returns no samples.
pub fn cell_samples(hps: &[HalfPlane]) -> Vec<PerturbedPoint> {
    let mut out = Vec::new();
    for (i, hp) in hps.iter().enumerate() {
        let line = hp.border();
        let mut ts: Vec<Rational> = Vec::new();
        for (j, other) in hps.iter().enumerate() {
            if i == j {
                continue;
            }
            if let LineRelation::Point(p) = line_intersect(&line, &other.border()) {
                ts.push(line.param(&p));
            }
        }
        ts.sort();
        ts.dedup();
        let mut params = Vec::new();
        match (ts.first(), ts.last()) {
            (Some(first), Some(last)) => {
                params.push(first - int(1));
                for w in ts.windows(2) {
                    params.push((&w[0] + &w[1]) / int(2));
                }
                params.push(last + int(1));
            }
            _ => params.push(int(0)),
        }
        let up = Direction::new(hp.c.clone()).expect("nonzero normal");
        for t in &params {
            let p = line.at(t);
            out.push(PerturbedPoint::new(p.clone(), up.clone()));
            out.push(PerturbedPoint::new(p, up.reversed()));
        }
    }
    out
}
