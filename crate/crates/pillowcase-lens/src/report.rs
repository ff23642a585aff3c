//! JSON and CSV output.

use pillowcase::char_variety::ChartPoint;
use pillowcase::intersect::{Flag, IntersectionPoint, IntersectionReport};
use pillowcase::lagrangians::PerturbationConfig;
use serde::Serialize;

use crate::RunConfig;

/// Bumped whenever a field changes meaning or disappears.
pub const SCHEMA_VERSION: u32 = 1;

pub fn flag_name(f: Flag) -> &'static str {
    match f {
        Flag::DoublePointHit => "double-point-hit",
        Flag::NonTransversePoint => "non-transverse-point",
    }
}

#[derive(Debug, Serialize)]
struct JsonReport<'a> {
    schema: u32,
    word: &'a str,
    family: Option<&'static str>,
    p: Option<u32>,
    epsilon: f64,
    grid: usize,
    seed: u64,
    seeds_tried: usize,
    no_convergence: usize,
    count: usize,
    flags: Vec<&'static str>,
    points: Vec<JsonPoint>,
}

#[derive(Debug, Serialize)]
struct JsonPoint {
    chart: &'static str,
    alpha: Option<f64>,
    beta: Option<f64>,
    gamma: Option<f64>,
    ahat: Option<[f64; 3]>,
    bhat: Option<[f64; 3]>,
    chi: f64,
    psi: f64,
    phi: f64,
    theta: f64,
    residual: f64,
    transverse: &'static str,
    singular_ratio: f64,
    near_double_point: bool,
}

/// One CSV row. Fields of the other chart are left empty.
#[derive(Debug, Serialize)]
struct CsvPoint {
    chart: &'static str,
    alpha: Option<f64>,
    beta: Option<f64>,
    gamma: Option<f64>,
    ahat_x: Option<f64>,
    ahat_y: Option<f64>,
    ahat_z: Option<f64>,
    bhat_x: Option<f64>,
    bhat_y: Option<f64>,
    bhat_z: Option<f64>,
    chi: f64,
    psi: f64,
    phi: f64,
    theta: f64,
    residual: f64,
    transverse: &'static str,
}

struct ChartFields {
    name: &'static str,
    abg: Option<[f64; 3]>,
    ahat: Option<[f64; 3]>,
    bhat: Option<[f64; 3]>,
}

fn chart_fields(c: &ChartPoint) -> ChartFields {
    match *c {
        ChartPoint::P3 { alpha, beta, gamma } => {
            ChartFields { name: "P3", abg: Some([alpha, beta, gamma]), ahat: None, bhat: None }
        }
        ChartPoint::P4 { a_hat, .. } => {
            ChartFields { name: "P4", abg: None, ahat: Some(a_hat.to_array()), bhat: c.b_hat().map(|b| b.to_array()) }
        }
    }
}

fn json_point(p: &IntersectionPoint) -> JsonPoint {
    let f = chart_fields(&p.chart);
    JsonPoint {
        chart: f.name,
        alpha: f.abg.map(|v| v[0]),
        beta: f.abg.map(|v| v[1]),
        gamma: f.abg.map(|v| v[2]),
        ahat: f.ahat,
        bhat: f.bhat,
        chi: p.disk.chi,
        psi: p.disk.psi,
        phi: p.sphere.phi,
        theta: p.sphere.theta,
        residual: p.residual,
        transverse: p.transverse.as_str(),
        singular_ratio: p.singular_ratio,
        near_double_point: p.near_double_point,
    }
}

pub fn json(cfg: &RunConfig, rep: &IntersectionReport) -> String {
    let doc = JsonReport {
        schema: SCHEMA_VERSION,
        word: &cfg.word,
        family: cfg.family.map(|f| f.name()),
        p: cfg.p,
        epsilon: cfg.epsilon,
        grid: cfg.grid,
        seed: cfg.seed,
        seeds_tried: rep.provenance.seeds_tried,
        no_convergence: rep.provenance.no_convergence,
        count: rep.count,
        flags: rep.flags.iter().map(|f| flag_name(*f)).collect(),
        points: rep.points.iter().map(json_point).collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
    s.push('\n');
    s
}

pub fn points_csv(rep: &IntersectionReport) -> Result<Vec<u8>, String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for p in &rep.points {
        let f = chart_fields(&p.chart);
        let at = |v: Option<[f64; 3]>, i: usize| v.map(|v| v[i]);
        w.serialize(CsvPoint {
            chart: f.name,
            alpha: at(f.abg, 0),
            beta: at(f.abg, 1),
            gamma: at(f.abg, 2),
            ahat_x: at(f.ahat, 0),
            ahat_y: at(f.ahat, 1),
            ahat_z: at(f.ahat, 2),
            bhat_x: at(f.bhat, 0),
            bhat_y: at(f.bhat, 1),
            bhat_z: at(f.bhat, 2),
            chi: p.disk.chi,
            psi: p.disk.psi,
            phi: p.sphere.phi,
            theta: p.sphere.theta,
            residual: p.residual,
            transverse: p.transverse.as_str(),
        })
        .map_err(|e| e.to_string())?;
    }
    if rep.points.is_empty() {
        // header only, so consumers still see the columns
        w.write_record([
            "chart",
            "alpha",
            "beta",
            "gamma",
            "ahat_x",
            "ahat_y",
            "ahat_z",
            "bhat_x",
            "bhat_y",
            "bhat_z",
            "chi",
            "psi",
            "phi",
            "theta",
            "residual",
            "transverse",
        ])
        .map_err(|e| e.to_string())?;
    }
    w.into_inner().map_err(|e| e.to_string())
}

#[derive(Debug, Serialize)]
struct CurveRow {
    curve: &'static str,
    alpha: f64,
    beta: f64,
}

/// Sampled pillowcase curves of the plot command.
pub fn curves(pert: PerturbationConfig, samples: usize) -> Vec<(&'static str, Vec<(f64, f64)>)> {
    use std::f64::consts::{PI, TAU};
    let n = samples.max(2);
    let phis = (0..n).map(move |k| PI * k as f64 / (n - 1) as f64);
    let upper = phis.clone().map(|phi| ((phi + PI / 2.0).rem_euclid(TAU), pert.nu(phi))).collect();
    let lower = phis.clone().map(|phi| ((phi - PI / 2.0).rem_euclid(TAU), pert.nu(phi))).collect();
    let disk = (0..n).map(|k| (PI * k as f64 / (n - 1) as f64, 0.0)).collect();
    vec![("ls_theta_0", upper), ("ls_theta_pi", lower), ("ld", disk)]
}

pub fn curves_csv(pert: PerturbationConfig) -> Result<Vec<u8>, String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for (name, pts) in curves(pert, 201) {
        for (alpha, beta) in pts {
            w.serialize(CurveRow { curve: name, alpha, beta }).map_err(|e| e.to_string())?;
        }
    }
    w.into_inner().map_err(|e| e.to_string())
}
