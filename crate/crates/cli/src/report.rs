//! Run reports: what was computed, with exact rationals, as JSON or text.
//! Indices in reports are 1-based.

use std::fmt::Write as _;

use committee_core::geom::Point;
use committee_core::mcs::MarkedMcs;
use committee_core::{Committee, System};
use serde::Serialize;
use serde_json::Value;

#[derive(Serialize, Clone, Debug, PartialEq)]
pub struct Member {
    pub x: String,
    pub y: String,
    pub multiplicity: usize,
}

#[derive(Serialize, Clone, Debug, PartialEq)]
pub struct MarkedEntry {
    pub members: Vec<usize>,
    pub pair: (usize, usize),
    pub witness_vertex: (String, String),
    pub witness_dir: (String, String),
}

#[derive(Serialize, Clone, Debug, PartialEq)]
pub struct OracleCheck {
    pub min_committee_size: Option<usize>,
    pub q_max: usize,
    pub agrees: bool,
}

#[derive(Serialize, Clone, Debug, PartialEq, Default)]
pub struct RunReport {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub instance: Option<String>,
    pub m: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub committee: Option<Vec<Member>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub votes: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verified: Option<bool>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub marked: Vec<MarkedEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleCheck>,
    /// Command-specific details.
    #[serde(skip_serializing_if = "Value::is_null")]
    pub details: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<f64>,
}

pub fn point_pair(p: &Point) -> (String, String) {
    (p.x.to_string(), p.y.to_string())
}

pub fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|j| j + 1).collect()
}

impl RunReport {
    pub fn new(command: &str, name: Option<&str>, sys: &System) -> Self {
        RunReport { command: command.into(), instance: name.map(String::from), m: sys.len(), ..Default::default() }
    }

    pub fn with_committee(mut self, k: &Committee, sys: &System) -> Self {
        let votes = k.votes(sys);
        self.verified = Some(votes.iter().all(|&v| 2 * v > k.size()));
        self.committee = Some(
            k.members()
                .iter()
                .map(|(p, n)| Member { x: p.x.to_string(), y: p.y.to_string(), multiplicity: *n })
                .collect(),
        );
        self.votes = votes;
        self
    }

    pub fn with_marked(mut self, marked: &[MarkedMcs]) -> Self {
        self.marked = marked
            .iter()
            .map(|t| MarkedEntry {
                members: one_based(&t.members),
                pair: (t.pair.0 + 1, t.pair.1 + 1),
                witness_vertex: point_pair(&t.witness.vertex),
                witness_dir: point_pair(t.witness.dir.vector()),
            })
            .collect();
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = write!(s, "{}", self.command);
        if let Some(n) = &self.instance {
            let _ = write!(s, " [{n}]");
        }
        let _ = writeln!(s, ", m = {}", self.m);
        if let Some(k) = &self.committee {
            let q: usize = k.iter().map(|m| m.multiplicity).sum();
            let _ = writeln!(s, "committee of {q}:");
            for m in k {
                let mult = if m.multiplicity > 1 { format!(" x{}", m.multiplicity) } else { String::new() };
                let _ = writeln!(s, "  ({}, {}){mult}", m.x, m.y);
            }
        }
        if !self.votes.is_empty() {
            let _ = writeln!(s, "votes per inequality:");
            for (j, v) in self.votes.iter().enumerate() {
                let _ = writeln!(s, "  {:>3}: {v}", j + 1);
            }
        }
        if let Some(v) = self.verified {
            let _ = writeln!(s, "verified: {v}");
        }
        if !self.marked.is_empty() {
            let _ = writeln!(s, "marked MCSs: {}", self.marked.len());
            for t in &self.marked {
                let set: Vec<String> = t.members.iter().map(|j| j.to_string()).collect();
                let _ = writeln!(
                    s,
                    "  {{{}}} pair ({}, {}) at ({}, {}) + eps*({}, {})",
                    set.join(","),
                    t.pair.0,
                    t.pair.1,
                    t.witness_vertex.0,
                    t.witness_vertex.1,
                    t.witness_dir.0,
                    t.witness_dir.1
                );
            }
        }
        if let Some(o) = &self.oracle {
            let size = o.min_committee_size.map_or_else(|| format!("none up to {}", o.q_max), |q| q.to_string());
            let _ = writeln!(s, "oracle minimum: {size} (agrees: {})", o.agrees);
        }
        if !self.details.is_null() {
            let _ = writeln!(s, "{}", serde_json::to_string_pretty(&self.details).expect("details serialize"));
        }
        if let Some(t) = self.timings_ms {
            let _ = writeln!(s, "time: {t:.3} ms");
        }
        s
    }
}
