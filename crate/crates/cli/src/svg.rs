//! Deterministic SVG pictures of a system and its overlays.
//!
//! Everything is computed in exact rationals and printed with 12
//! significant digits at the very end. The y axis points up.

use std::fmt::Write as _;

use committee_core::geom::{line_intersect, rat, Line, LineRelation, Point, Rational};
use committee_core::polar::{Color, ColoredPointSystem};
use committee_core::{Committee, System};
use num_traits::Signed;

use crate::instance::decimal;

#[derive(Clone, Debug, Default)]
pub struct Overlays<'a> {
    pub points: Option<&'a ColoredPointSystem>,
    pub committee: Option<&'a Committee>,
    /// Polygon outline, vertices in order.
    pub polygon: Option<&'a [Point]>,
    /// Polylines, e.g. sweep vertices.
    pub traces: Vec<Vec<Point>>,
}

struct Frame {
    lo: Point,
    hi: Point,
}

impl Frame {
    fn around(pts: &[Point]) -> Frame {
        let mut lo = Point::from_ints(-1, -1);
        let mut hi = Point::from_ints(1, 1);
        for p in pts {
            lo = Point::new(lo.x.clone().min(p.x.clone()), lo.y.clone().min(p.y.clone()));
            hi = Point::new(hi.x.clone().max(p.x.clone()), hi.y.clone().max(p.y.clone()));
        }
        let w = (&hi.x - &lo.x).max(&hi.y - &lo.y);
        let pad = (&w / rat(10, 1)).max(rat(1, 2));
        Frame { lo: Point::new(&lo.x - &pad, &lo.y - &pad), hi: Point::new(&hi.x + &pad, &hi.y + &pad) }
    }

    fn size(&self) -> Rational {
        (&self.hi.x - &self.lo.x).max(&self.hi.y - &self.lo.y)
    }

    fn inside(&self, p: &Point) -> bool {
        p.x >= self.lo.x && p.x <= self.hi.x && p.y >= self.lo.y && p.y <= self.hi.y
    }

    /// The part of `l` inside the frame, if any.
    fn clip(&self, l: &Line) -> Option<(Point, Point)> {
        let edges = [
            Line { n: Point::from_ints(1, 0), b: self.lo.x.clone() },
            Line { n: Point::from_ints(1, 0), b: self.hi.x.clone() },
            Line { n: Point::from_ints(0, 1), b: self.lo.y.clone() },
            Line { n: Point::from_ints(0, 1), b: self.hi.y.clone() },
        ];
        let mut hits: Vec<(Rational, Point)> = edges
            .iter()
            .filter_map(|e| match line_intersect(l, e) {
                LineRelation::Point(p) if self.inside(&p) => Some((l.param(&p), p)),
                _ => None,
            })
            .collect();
        hits.sort_by(|a, b| a.0.cmp(&b.0));
        let (first, last) = (hits.first()?, hits.last()?);
        (first.0 < last.0).then(|| (first.1.clone(), last.1.clone()))
    }
}

fn num(r: &Rational) -> String {
    decimal(r, 12)
}

fn xy(p: &Point) -> String {
    format!("{},{}", num(&p.x), num(&-&p.y))
}

/// Four-pointed star with outer radius `r`.
fn star(c: &Point, r: &Rational) -> String {
    let i = r / rat(3, 1);
    let pts = [
        Point::new(c.x.clone(), &c.y + r),
        Point::new(&c.x + &i, &c.y + &i),
        Point::new(&c.x + r, c.y.clone()),
        Point::new(&c.x + &i, &c.y - &i),
        Point::new(c.x.clone(), &c.y - r),
        Point::new(&c.x - &i, &c.y - &i),
        Point::new(&c.x - r, c.y.clone()),
        Point::new(&c.x - &i, &c.y + &i),
    ];
    pts.iter().map(xy).collect::<Vec<_>>().join(" ")
}

pub fn plot_svg(sys: &System, ov: &Overlays<'_>) -> String {
    let hs = sys.ineqs();
    let mut pts: Vec<Point> = Vec::new();
    for i in 0..hs.len() {
        for j in i + 1..hs.len() {
            if let LineRelation::Point(p) = line_intersect(&hs[i].border(), &hs[j].border()) {
                pts.push(p);
            }
        }
        // A line with no crossings still shows up near its closest point.
        pts.push(hs[i].border().base());
    }
    if let Some(ps) = ov.points {
        pts.extend(ps.points().map(|d| d.pos.clone()));
    }
    if let Some(k) = ov.committee {
        pts.extend(k.members().iter().map(|(p, _)| p.clone()));
    }
    if let Some(poly) = ov.polygon {
        pts.extend(poly.iter().cloned());
    }
    for t in &ov.traces {
        pts.extend(t.iter().cloned());
    }
    let f = Frame::around(&pts);
    let size = f.size();
    let stroke = &size / rat(400, 1);
    let dot = &size / rat(120, 1);

    let mut s = String::new();
    let w = &f.hi.x - &f.lo.x;
    let h = &f.hi.y - &f.lo.y;
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{} {} {} {}">"#,
        num(&f.lo.x),
        num(&-&f.hi.y),
        num(&w),
        num(&h)
    );
    let _ = writeln!(s, r##"<rect x="{}" y="{}" width="{}" height="{}" fill="#ffffff"/>"##, num(&f.lo.x), num(&-&f.hi.y), num(&w), num(&h));
    if let Some(poly) = ov.polygon {
        let list: Vec<String> = poly.iter().map(xy).collect();
        let _ = writeln!(s, r##"<polygon class="polygon" points="{}" fill="#e8f4ec" stroke="#2a7a4a" stroke-width="{}"/>"##, list.join(" "), num(&(&stroke * rat(2, 1))));
    }
    let _ = writeln!(s, r#"<g class="borders">"#);
    for (j, hp) in hs.iter().enumerate() {
        if let Some((a, b)) = f.clip(&hp.border()) {
            let _ = writeln!(
                s,
                r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#555555" stroke-width="{}"><title>{}</title></line>"##,
                num(&a.x),
                num(&-&a.y),
                num(&b.x),
                num(&-&b.y),
                num(&stroke),
                j + 1
            );
        }
    }
    let _ = writeln!(s, "</g>");
    for t in &ov.traces {
        let list: Vec<String> = t.iter().map(xy).collect();
        let _ = writeln!(s, r##"<polyline class="trace" points="{}" fill="none" stroke="#3366cc" stroke-width="{}"/>"##, list.join(" "), num(&stroke));
    }
    if let Some(ps) = ov.points {
        for d in ps.points() {
            let p = &d.pos;
            match d.color {
                Color::Black => {
                    let _ = writeln!(s, r##"<circle class="black" cx="{}" cy="{}" r="{}" fill="#000000"/>"##, num(&p.x), num(&-&p.y), num(&dot));
                }
                Color::Red => {
                    let (x0, x1) = (&p.x - &dot, &p.x + &dot);
                    let (y0, y1) = (-&p.y - &dot, -&p.y + &dot);
                    let _ = writeln!(
                        s,
                        r##"<path class="red" d="M{} {} L{} {} M{} {} L{} {}" stroke="#cc2222" stroke-width="{}"/>"##,
                        num(&x0),
                        num(&y0),
                        num(&x1),
                        num(&y1),
                        num(&x0),
                        num(&y1),
                        num(&x1),
                        num(&y0),
                        num(&stroke)
                    );
                }
            }
        }
    }
    if let Some(k) = ov.committee {
        let r = &dot * rat(2, 1);
        for (p, n) in k.members() {
            let _ = writeln!(s, r##"<polygon class="member" points="{}" fill="#e0a000"><title>x{n}</title></polygon>"##, star(p, &r));
        }
    }
    let _ = writeln!(s, "</svg>");
    debug_assert!(!stroke.is_negative());
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use committee_core::fixtures::{t1, t1_committee};

    #[test]
    fn deterministic_and_complete() {
        let k = t1_committee();
        let ov = Overlays { committee: Some(&k), ..Default::default() };
        let a = plot_svg(&t1(), &ov);
        assert_eq!(a, plot_svg(&t1(), &ov));
        assert_eq!(a.matches("<line ").count(), 3);
        assert_eq!(a.matches(r#"class="member""#).count(), 3);
        let bare = plot_svg(&t1(), &Overlays::default());
        assert_eq!(bare.matches(r#"class="member""#).count(), 0);
    }
}
