//! The `committee` command line.
//!
//! Exit codes: 0 success, 1 a negative answer (no committee of the asked
//! kind, or an inconsistent system where a consistent one is needed),
//! 2 bad input, 3 an internal invariant failed.

use std::fs;
use std::io::{Read as _, Write as _};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use committee_core::builder::{
    build_committee_with, three_committee, three_committee_criterion, polygon_minimal_committee, polygon_minimal_committee_at, BuildOptions,
    ExclusionRule, GeneralPositionSystem, SecondRoundScope,
};
use committee_core::geom::{Direction, Point};
use committee_core::mcs::{all_marked_mcs, canonical_rays, extend_to_mcs, find_marked_mcs, solve_consistent, Witness};
use committee_core::oracle::{arrangement_cells, brute_mcs, brute_min_committee, verify_committee};
use committee_core::polar::point_system_of;
use committee_core::{Committee, Error, System};
use serde_json::{json, Value};

use crate::generators::{gen_example2, gen_random, gen_regular_qgon, GenError, Profile};
use crate::instance::{parse_instance, parse_point, parse_rational, render_json, render_text, Instance, InstanceError};
use crate::report::{one_based, point_pair, OracleCheck, RunReport};
use crate::svg::{plot_svg, Overlays};

#[derive(Parser, Debug)]
#[command(name = "committee", version, about = "Committee solutions of planar systems of strict linear inequalities")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Report wall-clock time of the computation.
    #[arg(long, global = true)]
    pub timings: bool,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Args, Debug, Clone)]
pub struct InputArgs {
    /// Instance file (JSON or text); `-` reads stdin.
    #[arg(long)]
    pub input: PathBuf,
}

#[derive(Args, Debug, Clone)]
pub struct OracleArgs {
    /// Compare with the brute-force oracle.
    #[arg(long)]
    pub oracle_check: bool,
    /// Largest committee size the oracle searches.
    #[arg(long, default_value_t = 9)]
    pub q_max: usize,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Solve a consistent system.
    Solve(InputArgs),
    #[command(subcommand)]
    Mcs(McsCmd),
    #[command(subcommand)]
    Committee(CommitteeCmd),
    #[command(subcommand)]
    Oracle(OracleCmd),
    #[command(subcommand)]
    Gen(GenCmd),
    /// Draw the system and optional overlays as SVG.
    Plot {
        #[command(flatten)]
        input: InputArgs,
        /// Origin for the colored point system.
        #[arg(long)]
        origin: Option<String>,
        /// Committee to draw (a report or a list of points).
        #[arg(long)]
        committee: Option<PathBuf>,
        /// Draw the augmented polygon of the minimal construction.
        #[arg(long)]
        polygon: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum McsCmd {
    /// One sweep: the marked MCS reached from a border.
    Marked {
        #[command(flatten)]
        input: InputArgs,
        /// Starting inequality (1-based).
        #[arg(long, default_value_t = 1)]
        start: usize,
        /// Direction along the starting border, `x,y`; defaults to the first canonical ray.
        #[arg(long)]
        ray: Option<String>,
    },
    /// Every marked MCS.
    All {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Grow a consistent subsystem to an MCS.
    Extend {
        #[command(flatten)]
        input: InputArgs,
        /// Comma-separated 1-based indices.
        #[arg(long)]
        subset: String,
        /// A point solving the subset, `x,y`.
        #[arg(long)]
        point: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum CommitteeCmd {
    /// The general construction around an origin.
    Build {
        #[command(flatten)]
        input: InputArgs,
        /// Origin `x,y`; defaults to the instance origin, then to (0, 0).
        #[arg(long)]
        origin: Option<String>,
        /// Count every member so far when excluding red points.
        #[arg(long)]
        cumulative: bool,
        /// Let every red point trigger the second pair of a round.
        #[arg(long)]
        all_red: bool,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// A three-member committee, or the 5-subsystem ruling it out.
    Three {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// The minimal construction for borders of a convex polygon.
    Polygon {
        #[command(flatten)]
        input: InputArgs,
        /// Interior point `x,y`; found automatically when omitted.
        #[arg(long)]
        origin: Option<String>,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Check a committee against a system.
    Verify {
        #[command(flatten)]
        input: InputArgs,
        /// A committee report, or lines `x y [multiplicity]`.
        #[arg(long)]
        committee: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
pub enum OracleCmd {
    Cells(InputArgs),
    Mcs(InputArgs),
    MinCommittee {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, default_value_t = 9)]
        q_max: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum GenCmd {
    /// Rational near-regular q-gon, `(c, h) > 1`.
    Qgon {
        #[arg(long)]
        q: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Three-arc instance with three marked MCSs.
    Example2 {
        #[arg(long)]
        q: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    Random {
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum)]
        profile: Profile,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 9)]
        q_max: usize,
    },
}

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub msg: String,
}

impl CliError {
    fn input(msg: impl Into<String>) -> Self {
        CliError { code: 2, msg: msg.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Inconsistent | Error::ConsistentSystem | Error::NoCommitteeDetected { .. } => 1,
            Error::Internal(_) | Error::Degenerate(_) => 3,
            _ => 2,
        };
        let msg = if code == 3 { format!("{e}\ntrace: {e:?}") } else { e.to_string() };
        CliError { code, msg }
    }
}

impl From<InstanceError> for CliError {
    fn from(e: InstanceError) -> Self {
        match e {
            InstanceError::System(e) => e.into(),
            other => CliError::input(other.to_string()),
        }
    }
}

impl From<GenError> for CliError {
    fn from(e: GenError) -> Self {
        let code = match e {
            GenError::BadArgument(_) => 2,
            GenError::GenerationTimeout(_) => 1,
            GenError::CheckFailed(_) => 3,
        };
        CliError { code, msg: e.to_string() }
    }
}

type CliResult<T> = Result<T, CliError>;

fn read_text(path: &PathBuf) -> CliResult<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::input(format!("stdin: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

fn load(args: &InputArgs) -> CliResult<Instance> {
    Ok(parse_instance(&read_text(&args.input)?)?)
}

fn point_arg(s: &str) -> CliResult<Point> {
    parse_point(s).map_err(CliError::input)
}

fn origin_of(arg: &Option<String>, inst: &Instance) -> CliResult<Point> {
    match arg {
        Some(s) => point_arg(s),
        None => Ok(inst.origin.clone().unwrap_or_else(Point::origin)),
    }
}

/// Committee from a report JSON (`committee` field) or from text lines.
pub fn parse_committee(text: &str) -> CliResult<Committee> {
    let bad = |m: String| CliError::input(format!("committee: {m}"));
    if text.trim_start().starts_with('{') || text.trim_start().starts_with('[') {
        let v: Value = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
        let list = v.get("committee").unwrap_or(&v).as_array().ok_or_else(|| bad("no member list".into()))?.clone();
        let mut members = Vec::new();
        for m in list {
            let get = |k: &str| -> CliResult<String> {
                match m.get(k) {
                    Some(Value::String(s)) => Ok(s.clone()),
                    Some(Value::Number(n)) => Ok(n.to_string()),
                    _ => Err(bad(format!("member without `{k}`"))),
                }
            };
            let x = parse_rational(&get("x")?).map_err(bad)?;
            let y = parse_rational(&get("y")?).map_err(bad)?;
            let n = m.get("multiplicity").and_then(Value::as_u64).unwrap_or(1) as usize;
            members.push((Point::new(x, y), n));
        }
        return Ok(Committee::new(members));
    }
    let mut members = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let t: Vec<&str> = body.split_whitespace().collect();
        if !(2..=3).contains(&t.len()) {
            return Err(bad(format!("line {}: expected `x y [multiplicity]`", i + 1)));
        }
        let x = parse_rational(t[0]).map_err(bad)?;
        let y = parse_rational(t[1]).map_err(bad)?;
        let n = match t.get(2) {
            Some(s) => s.parse().map_err(|_| bad(format!("line {}: bad multiplicity", i + 1)))?,
            None => 1,
        };
        members.push((Point::new(x, y), n));
    }
    Ok(Committee::new(members))
}

fn oracle_check(sys: &System, q_max: usize, agrees: impl FnOnce(Option<usize>) -> bool) -> OracleCheck {
    let min = brute_min_committee(sys, q_max).min_committee_size;
    OracleCheck { min_committee_size: min, q_max, agrees: agrees(min) }
}

enum Output {
    Report(Box<RunReport>),
    Raw(String),
}

fn run_cmd(cli: &Cli) -> CliResult<(Output, u8)> {
    let t0 = Instant::now();
    let (out, code) = dispatch(&cli.cmd, cli.format)?;
    let out = match out {
        Output::Report(mut r) => {
            if cli.timings {
                r.timings_ms = Some(t0.elapsed().as_secs_f64() * 1e3);
            }
            Output::Report(r)
        }
        raw => raw,
    };
    Ok((out, code))
}

fn dispatch(cmd: &Cmd, format: Format) -> CliResult<(Output, u8)> {
    let rep = |r: RunReport| Output::Report(Box::new(r));
    match cmd {
        Cmd::Solve(a) => {
            let inst = load(a)?;
            let p = solve_consistent(&inst.system)?;
            let mut r = RunReport::new("solve", inst.name.as_deref(), &inst.system);
            r.details = json!({ "solution": point_pair(&p) });
            r.verified = Some(inst.system.ineqs().iter().all(|h| h.contains(&p)));
            Ok((rep(r), 0))
        }
        Cmd::Mcs(McsCmd::Marked { input, start, ray }) => {
            let inst = load(input)?;
            let s = start.checked_sub(1).ok_or_else(|| CliError::input("--start is 1-based"))?;
            let dir = match ray {
                Some(d) => Direction::new(point_arg(d)?).ok_or_else(|| CliError::input("--ray must be nonzero"))?,
                None => canonical_rays(&inst.system, s)?.remove(0).dir,
            };
            let (m, tr) = find_marked_mcs(&inst.system, s, &dir)?;
            let mut r = RunReport::new("mcs marked", inst.name.as_deref(), &inst.system).with_marked(std::slice::from_ref(&m));
            r.details = json!({
                "halfplanes": one_based(&tr.halfplanes),
                "vertices": tr.vertices.iter().map(point_pair).collect::<Vec<_>>(),
                "k0": tr.k0,
            });
            Ok((rep(r), 0))
        }
        Cmd::Mcs(McsCmd::All { input, oracle }) => {
            let inst = load(input)?;
            let marked = all_marked_mcs(&inst.system)?;
            let mut r = RunReport::new("mcs all", inst.name.as_deref(), &inst.system).with_marked(&marked);
            let mut code = 0;
            if oracle.oracle_check {
                let all = brute_mcs(&inst.system);
                let ok = marked.iter().all(|t| all.contains(&t.members));
                r.oracle = Some(oracle_check(&inst.system, oracle.q_max, |_| ok));
                r.details = json!({ "oracle_mcs": all.iter().map(|s| one_based(s)).collect::<Vec<_>>() });
                if !ok {
                    code = 3;
                }
            }
            Ok((rep(r), code))
        }
        Cmd::Mcs(McsCmd::Extend { input, subset, point }) => {
            let inst = load(input)?;
            let idx = parse_indices(subset)?;
            let m = extend_to_mcs(&inst.system, &idx, &point_arg(point)?)?;
            let w = m.witness.to_point(inst.system.ineqs());
            let mut r = RunReport::new("mcs extend", inst.name.as_deref(), &inst.system);
            let kind = match m.witness {
                Witness::Point(_) => "point",
                Witness::Perturbed(_) => "perturbed",
                Witness::Direction(_) => "direction",
            };
            r.details = json!({ "mcs": one_based(&m.indices), "witness": point_pair(&w), "witness_kind": kind });
            Ok((rep(r), 0))
        }
        Cmd::Committee(CommitteeCmd::Build { input, origin, cumulative, all_red, oracle }) => {
            let inst = load(input)?;
            let z = origin_of(origin, &inst)?;
            let opts = BuildOptions {
                exclusion: if *cumulative { ExclusionRule::Cumulative } else { ExclusionRule::RoundOnly },
                second_round: if *all_red { SecondRoundScope::AllRed } else { SecondRoundScope::Remaining },
            };
            let gps = GeneralPositionSystem::new(inst.system.clone())?;
            let (k, tr) = build_committee_with(&gps, &z, opts)?;
            let mut r = RunReport::new("committee build", inst.name.as_deref(), &inst.system).with_committee(&k, &inst.system);
            r.details = json!({
                "origin": point_pair(&z),
                "marked": tr.marked.len(),
                "step2_sets": tr.step2_sets.iter().map(|s| one_based(s)).collect::<Vec<_>>(),
                "uncovered_red": one_based(&tr.b_prime),
                "rounds": tr.rounds.iter().map(|rd| json!({
                    "pivot": rd.pivot + 1,
                    "members": rd.members.len(),
                    "excluded": one_based(&rd.excluded),
                    "second_pair": rd.gamma.is_some(),
                    "sound": rd.sound,
                })).collect::<Vec<_>>(),
                "exclusion": format!("{:?}", opts.exclusion),
                "second_round_scope": format!("{:?}", opts.second_round),
            });
            if oracle.oracle_check {
                let size = k.size();
                r.oracle = Some(oracle_check(&inst.system, oracle.q_max, |m| m.is_some_and(|m| m <= size)));
            }
            Ok((rep(r), 0))
        }
        Cmd::Committee(CommitteeCmd::Three { input, oracle }) => {
            let inst = load(input)?;
            let (k, tr) = three_committee(&inst.system)?;
            let crit = three_committee_criterion(&inst.system);
            let mut r = RunReport::new("committee three", inst.name.as_deref(), &inst.system);
            let found = k.is_some();
            if let Some(k) = &k {
                r = r.with_committee(k, &inst.system);
            } else if let Some(tr) = &tr {
                r.votes = tr.votes.clone();
            }
            r.details = json!({
                "criterion": crit.holds,
                "witness_5_subsystem": crit.witness.as_deref().map(one_based),
            });
            if oracle.oracle_check {
                r.oracle = Some(oracle_check(&inst.system, oracle.q_max, |m| m.is_some_and(|m| m <= 3) == found));
            }
            if found != crit.holds && tr.is_some() {
                return Err(CliError { code: 3, msg: format!("three-member search and criterion disagree: {}", r.to_text()) });
            }
            if !found {
                let why = match &crit.witness {
                    Some(w) => format!("no three-member committee: 5-subsystem {:?} has no consistent 4-subsystem", one_based(w)),
                    None => "no committee: some two inequalities have disjoint solution sets".to_string(),
                };
                return Ok((rep_with_note(r, &why), 1));
            }
            Ok((rep(r), 0))
        }
        Cmd::Committee(CommitteeCmd::Polygon { input, origin, oracle }) => {
            let inst = load(input)?;
            let (k, plan) = match origin {
                Some(o) => polygon_minimal_committee_at(&inst.system, &point_arg(o)?)?,
                None => polygon_minimal_committee(&inst.system)?,
            };
            let mut r = RunReport::new("committee polygon", inst.name.as_deref(), &inst.system).with_committee(&k, &inst.system);
            r.details = json!({
                "origin": point_pair(&plan.z),
                "k1": plan.k1,
                "augmented_m": plan.augmented.len(),
                "p": plan.p,
                "q0": plan.q0,
                "pairs": plan.pairs.iter().map(|(a, b)| (a + 1, b + 1)).collect::<Vec<_>>(),
                "polygon": plan.vertices.iter().map(point_pair).collect::<Vec<_>>(),
            });
            if oracle.oracle_check {
                let size = k.size();
                r.oracle = Some(oracle_check(&inst.system, oracle.q_max, |m| m == Some(size)));
            }
            Ok((rep(r), 0))
        }
        Cmd::Committee(CommitteeCmd::Verify { input, committee }) => {
            let inst = load(input)?;
            let k = parse_committee(&read_text(committee)?)?;
            let (ok, _) = verify_committee(&inst.system, &k)?;
            let r = RunReport::new("committee verify", inst.name.as_deref(), &inst.system).with_committee(&k, &inst.system);
            Ok((rep(r), if ok { 0 } else { 1 }))
        }
        Cmd::Oracle(OracleCmd::Cells(a)) => {
            let inst = load(a)?;
            let cells = arrangement_cells(&inst.system);
            let mut r = RunReport::new("oracle cells", inst.name.as_deref(), &inst.system);
            r.details = json!({
                "count": cells.len(),
                "cells": cells.iter().map(|c| json!({ "satisfied": one_based(&c.satisfied()), "witness": point_pair(&c.witness) })).collect::<Vec<_>>(),
            });
            Ok((rep(r), 0))
        }
        Cmd::Oracle(OracleCmd::Mcs(a)) => {
            let inst = load(a)?;
            let all = brute_mcs(&inst.system);
            let mut r = RunReport::new("oracle mcs", inst.name.as_deref(), &inst.system);
            r.details = json!({ "mcs": all.iter().map(|s| one_based(s)).collect::<Vec<_>>() });
            Ok((rep(r), 0))
        }
        Cmd::Oracle(OracleCmd::MinCommittee { input, q_max }) => {
            let inst = load(input)?;
            let rep_o = brute_min_committee(&inst.system, *q_max);
            let mut r = RunReport::new("oracle min-committee", inst.name.as_deref(), &inst.system);
            r.details = json!({ "min_committee_size": rep_o.min_committee_size, "q_max": q_max });
            match &rep_o.witness_committee {
                Some(k) => {
                    r = r.with_committee(k, &inst.system);
                    Ok((rep(r), 0))
                }
                None => Ok((rep_with_note(r, &format!("no committee with at most {q_max} members")), 1)),
            }
        }
        Cmd::Gen(g) => {
            let inst = match g {
                GenCmd::Qgon { q, seed } => gen_regular_qgon(*q, *seed)?,
                GenCmd::Example2 { q, seed } => gen_example2(*q, *seed)?,
                GenCmd::Random { m, profile, seed, q_max } => gen_random(*m, *profile, *seed, *q_max)?,
            };
            let text = match format {
                Format::Json => render_json(&inst),
                Format::Text => render_text(&inst),
            };
            Ok((Output::Raw(text), 0))
        }
        Cmd::Plot { input, origin, committee, polygon } => {
            let inst = load(input)?;
            let ps = match origin {
                Some(o) => Some(point_system_of(&inst.system, &point_arg(o)?)?),
                None => None,
            };
            let k = match committee {
                Some(p) => Some(parse_committee(&read_text(p)?)?),
                None => None,
            };
            let plan = if *polygon { Some(polygon_minimal_committee(&inst.system)?.1) } else { None };
            let k = k.or_else(|| plan.as_ref().map(|p| p.committee.clone()));
            let ov = Overlays {
                points: ps.as_ref(),
                committee: k.as_ref(),
                polygon: plan.as_ref().map(|p| p.vertices.as_slice()),
                traces: Vec::new(),
            };
            Ok((Output::Raw(plot_svg(&inst.system, &ov)), 0))
        }
    }
}

fn rep_with_note(mut r: RunReport, note: &str) -> Output {
    if let Value::Object(m) = &mut r.details {
        m.insert("note".into(), Value::String(note.into()));
    } else {
        r.details = json!({ "note": note });
    }
    Output::Report(Box::new(r))
}

fn parse_indices(s: &str) -> CliResult<Vec<usize>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| match t.trim().parse::<usize>() {
            Ok(k) if k >= 1 => Ok(k - 1),
            _ => Err(CliError::input(format!("bad index `{t}` (indices are 1-based)"))),
        })
        .collect()
}

/// Run with parsed arguments and return the exit code.
pub fn run(cli: Cli) -> ExitCode {
    match run_cmd(&cli) {
        Ok((out, code)) => {
            let text = match out {
                Output::Report(r) => match cli.format {
                    Format::Json => r.to_json(),
                    Format::Text => r.to_text(),
                },
                Output::Raw(s) => s,
            };
            let written = match &cli.out {
                Some(p) => fs::write(p, text.as_bytes()).map_err(|e| format!("{}: {e}", p.display())),
                None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string()),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {}", e.msg);
            ExitCode::from(e.code)
        }
    }
}
