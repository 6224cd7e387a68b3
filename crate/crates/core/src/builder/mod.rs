//! Committee constructions: the general angular-split algorithm, the
//! three-member test, and the minimal construction for systems whose
//! borders cut out a convex polygon.

mod general;
mod polygon;
mod three;

pub use general::{build_committee, build_committee_with, BuildOptions, BuildTrace, ExclusionRule, SecondRoundScope, Step3Round};
pub use polygon::{augment_polygon_system, augment_polygon_system_at, polygon_minimal_committee, polygon_minimal_committee_at, PolygonPlan};
pub use three::{corollary41_check, prop43_check, three_committee, three_committee_criterion, CriterionOutcome, ThreeTrace};

use alloc::format;

use crate::error::{Error, Result};
use crate::geom::{line_intersect, LineRelation, Point};
use crate::polar::System;

/// A system with at least three inequalities, every two borders meeting in
/// a point and no three borders concurrent. Checked eagerly.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GeneralPositionSystem {
    sys: System,
}

impl GeneralPositionSystem {
    pub fn new(sys: System) -> Result<Self> {
        let hs = sys.ineqs();
        if hs.len() < 3 {
            return Err(Error::NotGeneralPosition(format!("needs at least 3 inequalities, got {}", hs.len())));
        }
        let mut points: alloc::vec::Vec<(Point, usize, usize)> = alloc::vec::Vec::new();
        for i in 0..hs.len() {
            for j in i + 1..hs.len() {
                match line_intersect(&hs[i].border(), &hs[j].border()) {
                    LineRelation::Point(p) => points.push((p, i, j)),
                    _ => return Err(Error::NotGeneralPosition(format!("borders {} and {} are parallel", i + 1, j + 1))),
                }
            }
        }
        points.sort();
        for w in points.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::NotGeneralPosition(format!(
                    "borders {}, {} and {} pass through {}",
                    w[0].1 + 1,
                    w[0].2 + 1,
                    if w[1].1 == w[0].1 || w[1].1 == w[0].2 { w[1].2 + 1 } else { w[1].1 + 1 },
                    w[0].0
                )));
            }
        }
        Ok(GeneralPositionSystem { sys })
    }

    pub fn system(&self) -> &System {
        &self.sys
    }

    pub fn into_system(self) -> System {
        self.sys
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{p5, t1};
    use crate::geom::HalfPlane;
    use alloc::vec;

    #[test]
    fn certificate() {
        assert!(GeneralPositionSystem::new(t1()).is_ok());
        assert!(GeneralPositionSystem::new(p5()).is_ok());
        let conc = System::new(vec![
            HalfPlane::from_ints(1, 0, 0),
            HalfPlane::from_ints(0, 1, 0),
            HalfPlane::from_ints(1, 1, 0),
        ])
        .unwrap();
        assert!(matches!(GeneralPositionSystem::new(conc), Err(Error::NotGeneralPosition(_))));
    }
}
