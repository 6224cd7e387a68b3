//! Exact committee solutions of planar systems of strict linear inequalities.
//!
//! A *committee* of an inconsistent system is a multiset of points such that
//! every inequality holds at more than half of them. This crate finds
//! maximal consistent subsystems through a sweep along border lines,
//! constructs committees (a general algorithm, a three-member test, and a
//! minimal construction for systems bordering a convex polygon), and ships an
//! independent brute-force oracle over the line arrangement for checking all
//! of it. Arithmetic is exact big-rational throughout.
//!
//! Indices are 0-based in the API. Error messages render them 1-based.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod builder;
pub mod error;
pub mod fixtures;
pub mod geom;
pub mod mcs;
pub mod oracle;
pub mod polar;

pub use error::{Error, Result};
pub use geom::{HalfPlane, Point, Rational};
pub use polar::{Committee, System};
