//! Substitutions as maps of the cube.

use std::fmt::Write as _;

use clap::{Args, Subcommand};
use mvdyn::dynamics::{
    average_truth_value, box_hitting_search, empirical_statistics, homeomorphism_from_vertex_map, orbit,
    reachability_substitution, rotation_homeomorphism, tsujii_differential, validate_homeomorphism, HomeoReport,
    InducedMap, OrbitStatus, PwlMap, StatsReport,
};
use mvdyn::pwl::{CellComplex, JsonVertex};
use mvdyn::rational::{Point, RatPair};
use mvdyn::Substitution;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::output::{domain, point, point_text, rat, usage, CliError, Report};
use crate::{parse, Globals};

fn induced(spec: &str) -> Result<InducedMap, CliError> {
    InducedMap::new(&parse::substitution(spec)?).map_err(domain)
}

fn subst_json(s: &Substitution) -> Value {
    Value::Array(s.images().iter().map(|f| json!(f.to_string())).collect())
}

fn subst_text(s: &Substitution) -> String {
    s.images().iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

#[derive(Args)]
pub struct OrbitArgs {
    /// Substitution: tent, tent:N, flip, rotation, odometer:N, identity:N,
    /// or component formulas separated by `;`.
    #[arg(long)]
    subst: String,
    /// Rational starting point, e.g. `1/5` or `1/3,2/7`.
    #[arg(long)]
    start: String,
    #[arg(long, default_value_t = 1000)]
    max: usize,
}

pub fn orbit_cmd(a: &OrbitArgs) -> Result<Report, CliError> {
    let s = induced(&a.subst)?;
    let p = parse::rational_point(&a.start)?;
    let o = orbit(&s, &p, a.max).map_err(domain)?;
    let (period, preperiod) = match o.status {
        OrbitStatus::CycleEntered { preperiod, period } => (json!(period), json!(preperiod)),
        OrbitStatus::Truncated { .. } => (Value::Null, Value::Null),
    };
    let mut text = String::new();
    for q in &o.points {
        writeln!(text, "{}", point_text(q)).unwrap();
    }
    match o.status {
        OrbitStatus::CycleEntered { preperiod, period } => {
            writeln!(text, "preperiod {preperiod}, period {period}").unwrap()
        }
        OrbitStatus::Truncated { max_steps } => writeln!(text, "no cycle within {max_steps} steps").unwrap(),
    }
    let mut csv = String::from("step,point\n");
    for (i, q) in o.points.iter().enumerate() {
        writeln!(csv, "{i},\"{}\"", point_text(q)).unwrap();
    }
    Ok(Report::new(
        json!({
            "start": point(&o.start),
            "period": period,
            "preperiod": preperiod,
            "points": o.points.iter().map(|q| point(q)).collect::<Vec<_>>(),
            "denominators": o.denominators.iter().map(|d| json!(d.to_string())).collect::<Vec<_>>(),
        }),
        text,
    )
    .with_csv(csv))
}

#[derive(Subcommand)]
pub enum SubstCmd {
    /// Apply a substitution to a formula.
    Apply {
        #[arg(long)]
        subst: String,
        formula: String,
    },
    /// The composite `x_i ↦ σ(τ(x_i))`.
    Compose {
        /// σ, applied last.
        #[arg(long)]
        outer: String,
        /// τ, applied first.
        #[arg(long)]
        inner: String,
    },
    /// A substitution sending `p` to `q`; needs den(q) to divide den(p).
    Reach {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
}

pub fn subst_cmd(c: &SubstCmd) -> Result<Report, CliError> {
    match c {
        SubstCmd::Apply { subst, formula } => {
            let s = parse::substitution(subst)?;
            let f = parse::formula(formula)?;
            let s = s.extend(f.arity());
            let img = s.apply(&f).map_err(domain)?;
            Ok(Report::new(json!({ "formula": img.to_string() }), img.to_string()))
        }
        SubstCmd::Compose { outer, inner } => {
            let c = Substitution::compose(&parse::substitution(outer)?, &parse::substitution(inner)?).map_err(domain)?;
            Ok(Report::new(json!({ "components": subst_json(&c) }), subst_text(&c)))
        }
        SubstCmd::Reach { from, to } => {
            let p = parse::rational_point(from)?;
            let q = parse::rational_point(to)?;
            let s = reachability_substitution(&p, &q).map_err(domain)?;
            let img = InducedMap::formulas_only(&s).eval(&p).map_err(domain)?;
            Ok(Report::new(
                json!({ "components": subst_json(&s), "image": point(&img) }),
                subst_text(&s),
            ))
        }
    }
}

#[derive(Deserialize)]
struct VertexMapJson {
    dim: usize,
    vertices: Vec<JsonVertex>,
    cells: Vec<Vec<usize>>,
    targets: Vec<JsonVertex>,
}

fn vertex(v: &JsonVertex) -> Point {
    match v {
        JsonVertex::Point(p) => p.iter().map(|r| r.0.clone()).collect(),
        JsonVertex::Scalar(r) => vec![r.0.clone()],
    }
}

fn homeo_report(r: &HomeoReport) -> Value {
    json!({
        "dets": r.dets.iter().map(|d| json!(d.to_string())).collect::<Vec<_>>(),
        "common_det": r.common_det.as_ref().map(|d| d.to_string()),
        "image_tiles": r.image_tiles,
        "image_measure": rat(&r.image_measure),
        "invertible": r.invertible,
        "measure_preserving": r.measure_preserving,
    })
}

fn homeo_text(r: &HomeoReport) -> String {
    let det = r.common_det.as_ref().map_or("mixed".to_string(), ToString::to_string);
    format!(
        "det {det}\nimage measure {}\ninvertible {}\nmeasure preserving {}",
        r.image_measure, r.invertible, r.measure_preserving
    )
}

fn map_json(m: &PwlMap) -> Value {
    let cx = &m.complex;
    json!({
        "dim": cx.dim(),
        "vertices": cx.vertices().iter().map(|p| p.iter().cloned().map(RatPair).collect::<Vec<_>>()).collect::<Vec<_>>(),
        "cells": cx.cells(),
        "maps": m.maps.iter().map(|a| json!({
            "a": a.a.iter().map(|row| row.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "b": a.b.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    })
}

fn built(sigma: &Substitution, map: &PwlMap, validate: bool) -> Result<Report, CliError> {
    let mut j = json!({ "components": subst_json(sigma), "map": map_json(map) });
    let mut text = subst_text(sigma);
    if validate {
        let r = validate_homeomorphism(map).map_err(domain)?;
        j["report"] = homeo_report(&r);
        text = format!("{text}\n{}", homeo_text(&r));
    }
    Ok(Report::new(j, text))
}

#[derive(Subcommand)]
pub enum HomeoCmd {
    /// Build the map affine on each cell from vertex images.
    ///
    /// Input JSON: {"dim", "vertices", "cells", "targets"}, with rationals
    /// as [numerator, denominator] string pairs and one target per vertex.
    Build {
        #[arg(long)]
        json: String,
        #[arg(long)]
        validate: bool,
    },
    /// Determinants, image measure and invertibility of an induced map.
    Validate {
        #[arg(long)]
        subst: String,
    },
    /// The rotation homeomorphism of the square.
    Rotation {
        #[arg(long)]
        validate: bool,
    },
}

pub fn homeo_cmd(c: &HomeoCmd) -> Result<Report, CliError> {
    match c {
        HomeoCmd::Build { json, validate } => {
            let input: VertexMapJson = serde_json::from_str(&parse::read_input(json)?).map_err(usage)?;
            let cx = CellComplex::new(input.dim, input.vertices.iter().map(vertex).collect(), input.cells)
                .map_err(domain)?;
            let targets: Vec<Point> = input.targets.iter().map(vertex).collect();
            let (sigma, map) = homeomorphism_from_vertex_map(cx, &targets).map_err(domain)?;
            built(&sigma, &map, *validate)
        }
        HomeoCmd::Validate { subst } => {
            let s = induced(subst)?;
            let map = s.pwl().ok_or_else(|| CliError::Domain("no exact piecewise form above two variables".into()))?;
            let r = validate_homeomorphism(map).map_err(domain)?;
            Ok(Report::new(homeo_report(&r), homeo_text(&r)))
        }
        HomeoCmd::Rotation { validate } => {
            let (sigma, map) = rotation_homeomorphism().map_err(domain)?;
            built(&sigma, &map, *validate)
        }
    }
}

#[derive(Args)]
pub struct DiffArgs {
    #[arg(long)]
    subst: String,
    #[arg(long)]
    at: String,
    /// Direction vector; may start with `-`.
    #[arg(long, allow_hyphen_values = true)]
    dir: String,
}

pub fn diff_cmd(a: &DiffArgs) -> Result<Report, CliError> {
    let s = induced(&a.subst)?;
    let map = s.pwl().ok_or_else(|| CliError::Domain("no exact piecewise form above two variables".into()))?;
    let p = parse::rational_point(&a.at)?;
    let v = parse::rational_point(&a.dir)?;
    let d = tsujii_differential(map, &p, &v).map_err(domain)?;
    Ok(Report::new(json!({ "at": point(&p), "dir": point(&v), "differential": point(&d) }), point_text(&d)))
}

#[derive(Args)]
pub struct BoxhitArgs {
    /// First map, iterated h times.
    #[arg(long)]
    q: String,
    /// Second map, iterated k times.
    #[arg(long)]
    r: String,
    /// Source box, e.g. `0..1/8`.
    #[arg(long)]
    a: String,
    /// Target box.
    #[arg(long)]
    b: String,
    #[arg(long, default_value_t = 12)]
    h_max: usize,
    #[arg(long, default_value_t = 12)]
    k_max: usize,
    /// Grid denominator for candidate points; a prime works best.
    #[arg(long, default_value_t = 97)]
    grid: u64,
}

pub fn boxhit_cmd(a: &BoxhitArgs) -> Result<Report, CliError> {
    let (q, r) = (induced(&a.q)?, induced(&a.r)?);
    let (ba, bb) = (parse::rational_box(&a.a)?, parse::rational_box(&a.b)?);
    Ok(match box_hitting_search(&q, &r, &ba, &bb, a.h_max, a.k_max, a.grid).map_err(domain)? {
        Some(hit) => Report::new(
            json!({ "found": true, "h": hit.h, "k": hit.k, "witness": point(&hit.witness), "image": point(&hit.image) }),
            format!("h={} k={} witness {} image {}", hit.h, hit.k, point_text(&hit.witness), point_text(&hit.image)),
        ),
        None => Report::new(json!({ "found": false }), "NotFound"),
    })
}

#[derive(Args)]
pub struct StatsArgs {
    #[arg(long)]
    subst: String,
    /// Floating-point start, e.g. `0.1234567` or `0.3,0.7`.
    #[arg(long)]
    start: String,
    #[arg(long, default_value_t = 1_000_000)]
    iterations: usize,
    /// Boxes per axis.
    #[arg(long, default_value_t = 16)]
    boxes: usize,
    /// Uniform perturbation added to each iterate.
    #[arg(long, default_value_t = 1e-9)]
    jitter: f64,
    /// Independent runs with seeds seed, seed+1, ...; counts are pooled.
    #[arg(long, default_value_t = 1)]
    runs: usize,
}

/// Runs are split over `threads` workers and pooled in run order, so the
/// result does not depend on the thread count.
fn pooled_statistics(s: &InducedMap, a: &StatsArgs, start: &[f64], g: &Globals) -> Result<StatsReport, CliError> {
    let seeds: Vec<u64> = (0..a.runs.max(1) as u64).map(|i| g.seed.wrapping_add(i)).collect();
    let chunk = seeds.len().div_ceil(g.threads.max(1));
    let results: Vec<_> = std::thread::scope(|scope| {
        let handles: Vec<_> = seeds
            .chunks(chunk)
            .map(|part| {
                scope.spawn(move || {
                    part.iter()
                        .map(|&seed| empirical_statistics(s, start, a.iterations, a.boxes, a.jitter, seed))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    });
    let mut reports = results.into_iter().collect::<Result<Vec<_>, _>>().map_err(domain)?.into_iter();
    let mut total = reports.next().expect("at least one run");
    for r in reports {
        for (c, x) in total.counts.iter_mut().zip(r.counts) {
            *c += x;
        }
    }
    let n: u64 = total.counts.iter().sum();
    total.frequencies = total.counts.iter().map(|&c| c as f64 / n as f64).collect();
    total.max_discrepancy = total.frequencies.iter().map(|f| (f - total.box_volume).abs()).fold(0.0, f64::max);
    Ok(total)
}

pub fn stats_cmd(a: &StatsArgs, g: &Globals) -> Result<Report, CliError> {
    let s = induced(&a.subst)?;
    let start = parse::float_point(&a.start)?;
    let r = pooled_statistics(&s, a, &start, g)?;
    let mut csv = String::from("box,count,frequency,volume\n");
    for (i, (c, f)) in r.counts.iter().zip(&r.frequencies).enumerate() {
        writeln!(csv, "{i},{c},{f},{}", r.box_volume).unwrap();
    }
    Ok(Report::new(
        json!({
            "boxes_per_axis": r.boxes_per_axis,
            "box_volume": r.box_volume,
            "counts": r.counts,
            "frequencies": r.frequencies,
            "max_discrepancy": r.max_discrepancy,
            "seed": g.seed,
            "runs": a.runs.max(1),
        }),
        format!("max discrepancy {}", r.max_discrepancy),
    )
    .with_csv(csv))
}

#[derive(Args)]
pub struct AvgArgs {
    #[arg(long)]
    subst: String,
    /// Number of iterations k; values for j = 0..=k are reported.
    #[arg(long, default_value_t = 4)]
    k: usize,
    /// Box carrying the uniform measure.
    #[arg(long = "box")]
    region: String,
    formula: String,
}

pub fn avg_cmd(a: &AvgArgs, g: &Globals) -> Result<Report, CliError> {
    let sigma = parse::substitution(&a.subst)?;
    let r = parse::formula(&a.formula)?;
    let bx = parse::rational_box(&a.region)?;
    let cap = g.cap.unwrap_or(200_000) as usize;
    let rep = average_truth_value(&r, &sigma, a.k, &bx, cap).map_err(domain)?;
    let mut csv = String::from("k,value\n");
    let mut text = String::new();
    for (j, v) in rep.values.iter().enumerate() {
        writeln!(csv, "{j},{v}").unwrap();
        writeln!(text, "{j} {v}").unwrap();
    }
    writeln!(text, "lebesgue {}", rep.lebesgue).unwrap();
    Ok(Report::new(
        json!({ "values": rep.values.iter().map(rat).collect::<Vec<_>>(), "lebesgue": rat(&rep.lebesgue) }),
        text,
    )
    .with_csv(csv))
}
