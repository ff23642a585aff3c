//! Intersections of the sphere Lagrangian `L_s` with `L₂ = L_d·f` for a
//! mapping class `f`.
//!
//! Both surfaces are sampled on a grid and compared through their trace
//! profiles. Every close pair seeds a Levenberg–Marquardt solve of the nine
//! trace equations in the unknowns `(χ, ψ, φ, θ)`. Converged solutions are
//! put in canonical coordinates and deduplicated by trace distance.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use nalgebra::{DMatrix, Matrix4, SMatrix, Vector4};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::char_variety::{self, trace_profile, ChartPoint, RepTuple, TraceProfile};
use crate::lagrangians::{
    disk_rep, monotonicity_check, sphere_rep, sphere_traces, sphere_traces_with_jacobian, DiskCoord,
    PerturbationConfig, SphereCoord,
};
use crate::mcg::{act, parse_word, McgWord};

/// Chart-space radius around the double point of `L_s`.
pub const DOUBLE_POINT_RADIUS: f64 = 1e-3;

/// Distance in `φ` from the poles below which no transversality verdict is
/// given.
pub const POLE_MARGIN: f64 = 1e-3;

/// `σ_min/σ_max` of the trace Jacobian below which a point is not transverse.
pub const TRANSVERSE_THRESHOLD: f64 = 1e-6;

const NRES: usize = 9;
type Jac = SMatrix<f64, NRES, 4>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum IntersectError {
    #[error("perturbation epsilon = {epsilon} fails the monotonicity check")]
    PerturbationTooLarge { epsilon: f64 },
    #[error("no convergence from seed (residual {residual:e})")]
    NoConvergence { residual: f64 },
    #[error("invalid problem: {0}")]
    InvalidProblem(String),
}

/// A starting point for the refinement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Start {
    pub disk: DiskCoord,
    pub sphere: SphereCoord,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntersectionProblem {
    pub word: McgWord,
    pub perturbation: PerturbationConfig,
    /// Grid points per coordinate, at least 64.
    pub grid: usize,
    /// Max trace residual for a converged solution.
    pub newton_tol: f64,
    /// Deduplication radius in trace distance.
    pub match_tol: f64,
    pub seed: u64,
    /// Random starts in addition to the grid seeds.
    pub random_starts: usize,
    /// Extra starts, e.g. from a known family.
    pub hints: Vec<Start>,
}

impl IntersectionProblem {
    pub fn new(word: McgWord, perturbation: PerturbationConfig) -> Self {
        IntersectionProblem {
            word,
            perturbation,
            grid: 128,
            newton_tol: 1e-10,
            match_tol: 1e-9,
            seed: 0,
            random_starts: 32,
            hints: Vec::new(),
        }
    }

    pub fn for_family(family: Family, p: u32, perturbation: PerturbationConfig) -> Self {
        let mut prob = IntersectionProblem::new(family.word(p), perturbation);
        prob.hints = family.hints(p, perturbation.epsilon);
        prob
    }

    fn validate(&self) -> Result<(), IntersectError> {
        if self.grid < 64 {
            return Err(IntersectError::InvalidProblem(format!("grid {} is below 64", self.grid)));
        }
        if !(self.match_tol > self.newton_tol && self.newton_tol > 0.0) {
            return Err(IntersectError::InvalidProblem("need 0 < newton_tol < match_tol".to_string()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// `Ta^p`, the unknot in L(p,1).
    UnknotLens,
    /// `a1^-1 Ta^p`, the simple knot in L(p,1).
    SimpleLens,
    /// `s b1 a1^-1`, the trefoil in S³.
    Trefoil,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::UnknotLens => "unknot-lens",
            Family::SimpleLens => "simple-lens",
            Family::Trefoil => "trefoil",
        }
    }

    pub fn from_name(s: &str) -> Option<Family> {
        [Family::UnknotLens, Family::SimpleLens, Family::Trefoil].into_iter().find(|f| f.name() == s)
    }

    pub fn word(self, p: u32) -> McgWord {
        let text = match self {
            Family::UnknotLens => format!("Ta^{p}"),
            Family::SimpleLens => format!("a1^-1 Ta^{p}"),
            Family::Trefoil => "s b1 a1^-1".to_string(),
        };
        parse_word(&text).expect("family words parse")
    }

    /// Starts at the analytically known sites.
    pub fn hints(self, p: u32, epsilon: f64) -> Vec<Start> {
        match self {
            Family::SimpleLens => simple_knot_predicted_sites(p, epsilon)
                .into_iter()
                .flat_map(|(disk, phi)| {
                    [0.0, FRAC_PI_2, PI, 3.0 * FRAC_PI_2]
                        .map(|theta| Start { disk, sphere: SphereCoord::new(phi, theta) })
                })
                .collect(),
            Family::UnknotLens | Family::Trefoil => Vec::new(),
        }
    }
}

/// The `p` sites `χ = (n+½)π/p`, `ψ = (-1)^{n+1}(π/2 - ε)` with `φ = π/2`.
pub fn simple_knot_predicted_sites(p: u32, epsilon: f64) -> Vec<(DiskCoord, f64)> {
    (0..p)
        .map(|n| {
            let chi = (n as f64 + 0.5) * PI / p as f64;
            let sign = if n % 2 == 0 { -1.0 } else { 1.0 };
            (DiskCoord::new(chi, sign * (FRAC_PI_2 - epsilon)), FRAC_PI_2)
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Transversality {
    Yes,
    No,
    Indeterminate,
}

impl Transversality {
    pub fn as_str(self) -> &'static str {
        match self {
            Transversality::Yes => "yes",
            Transversality::No => "no",
            Transversality::Indeterminate => "indeterminate",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntersectionPoint {
    pub disk: DiskCoord,
    pub sphere: SphereCoord,
    pub chart: ChartPoint,
    /// Max trace difference between the two constituent tuples.
    pub residual: f64,
    pub transverse: Transversality,
    /// `σ_min/σ_max` of the 9×4 trace Jacobian.
    pub singular_ratio: f64,
    pub near_double_point: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Flag {
    DoublePointHit,
    NonTransversePoint,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Provenance {
    pub word: String,
    pub epsilon: f64,
    pub grid: usize,
    pub seed: u64,
    pub seeds_tried: usize,
    /// Seeds whose refinement did not reach `newton_tol`.
    pub no_convergence: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntersectionReport {
    pub points: Vec<IntersectionPoint>,
    pub count: usize,
    pub flags: Vec<Flag>,
    pub provenance: Provenance,
}

impl IntersectionReport {
    pub fn has_flag(&self, f: Flag) -> bool {
        self.flags.contains(&f)
    }
}

/// `L₂` point over `d`.
pub fn l2_rep(d: DiskCoord, word: &McgWord) -> RepTuple {
    act(&disk_rep(d), word)
}

/// Trace distance between `L_d(d)·f` and `L_s(s)`.
pub fn objective(d: DiskCoord, s: SphereCoord, prob: &IntersectionProblem) -> f64 {
    trace_profile(&l2_rep(d, &prob.word)).distance(&sphere_traces(s, prob.perturbation))
}

struct System<'a> {
    word: &'a McgWord,
    pert: PerturbationConfig,
}

impl System<'_> {
    fn disk_profile(&self, chi: f64, psi: f64) -> TraceProfile {
        trace_profile(&l2_rep(DiskCoord::new(chi, psi), self.word))
    }

    fn residual(&self, x: &Vector4<f64>) -> [f64; NRES] {
        let l2 = self.disk_profile(x[0], x[1]);
        let ls = sphere_traces(SphereCoord::new(x[2], x[3]), self.pert);
        std::array::from_fn(|i| l2.0[i] - ls.0[i])
    }

    fn jacobian(&self, x: &Vector4<f64>) -> Jac {
        const H: f64 = 1e-6;
        let mut j = Jac::zeros();
        for k in 0..2 {
            let mut xp = *x;
            let mut xm = *x;
            xp[k] += H;
            xm[k] -= H;
            let p = self.disk_profile(xp[0], xp[1]);
            let m = self.disk_profile(xm[0], xm[1]);
            for i in 0..NRES {
                j[(i, k)] = (p.0[i] - m.0[i]) / (2.0 * H);
            }
        }
        let (_, d) = sphere_traces_with_jacobian(SphereCoord::new(x[2], x[3]), self.pert);
        for i in 0..NRES {
            j[(i, 2)] = -d[i][0];
            j[(i, 3)] = -d[i][1];
        }
        j
    }

    /// Levenberg–Marquardt from `x0`. Returns the final point and its max
    /// residual.
    fn refine(&self, x0: Vector4<f64>) -> (Vector4<f64>, f64) {
        let norm2 = |r: &[f64; NRES]| r.iter().map(|v| v * v).sum::<f64>();
        let mut x = x0;
        let mut r = self.residual(&x);
        let mut cost = norm2(&r);
        let mut lambda = 1e-3;
        for _ in 0..200 {
            if r.iter().all(|v| v.abs() < 1e-14) {
                break;
            }
            let j = self.jacobian(&x);
            let jtj: Matrix4<f64> = j.transpose() * j;
            let g: Vector4<f64> = j.transpose() * SMatrix::<f64, NRES, 1>::from_row_slice(&r);
            let mut improved = false;
            let mut step = 0.0;
            while lambda < 1e12 {
                let mut a = jtj;
                for k in 0..4 {
                    a[(k, k)] += lambda * jtj[(k, k)].max(1e-9);
                }
                let Some(delta) = a.lu().solve(&(-g)) else {
                    lambda *= 4.0;
                    continue;
                };
                let xn = x + delta;
                let rn = self.residual(&xn);
                let cn = norm2(&rn);
                if cn < cost {
                    x = xn;
                    r = rn;
                    cost = cn;
                    lambda = (lambda / 3.0).max(1e-15);
                    improved = true;
                    step = delta.amax();
                    break;
                }
                lambda *= 4.0;
            }
            if !improved || step < 1e-16 {
                break;
            }
        }
        (x, r.iter().fold(0.0_f64, |m, v| m.max(v.abs())))
    }
}

fn double_point_profile(pert: PerturbationConfig) -> TraceProfile {
    sphere_traces(SphereCoord::new(0.0, 0.0), pert)
}

fn near_double_point(chart: &ChartPoint, profile: &TraceProfile, pert: PerturbationConfig) -> bool {
    let dp = ChartPoint::P3 { alpha: FRAC_PI_2, beta: 0.0, gamma: 0.0 };
    chart.distance(&dp) < DOUBLE_POINT_RADIUS || profile.distance(&double_point_profile(pert)) < DOUBLE_POINT_RADIUS
}

fn verdict(ratio: f64, sphere: SphereCoord, near_dp: bool) -> Transversality {
    if near_dp || sphere.phi < POLE_MARGIN || PI - sphere.phi < POLE_MARGIN {
        return Transversality::Indeterminate;
    }
    if ratio > 10.0 * TRANSVERSE_THRESHOLD {
        Transversality::Yes
    } else if ratio >= TRANSVERSE_THRESHOLD {
        Transversality::Indeterminate
    } else {
        Transversality::No
    }
}

fn singular_ratio(j: &Jac) -> f64 {
    let m = DMatrix::from_fn(NRES, 4, |i, k| j[(i, k)]);
    let sv = m.svd(false, false).singular_values;
    let smax = sv.max();
    if smax == 0.0 {
        0.0
    } else {
        sv.min() / smax
    }
}

/// Transversality verdict of a solved point.
pub fn transversality(pt: &IntersectionPoint, prob: &IntersectionProblem) -> Transversality {
    let sys = System { word: &prob.word, pert: prob.perturbation };
    let x = Vector4::new(pt.disk.chi, pt.disk.psi, pt.sphere.phi, pt.sphere.theta);
    verdict(singular_ratio(&sys.jacobian(&x)), pt.sphere, pt.near_double_point)
}

/// Grid seeds whose nearest `L_s` sample lies within `tau`.
fn grid_seeds(sys: &System<'_>, n: usize, tau: f64) -> Vec<Start> {
    let step = |lo: f64, span: f64, i: usize, m: usize| lo + span * i as f64 / m as f64;
    let sphere: Vec<(SphereCoord, TraceProfile)> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            (0..n).map(move |j| {
                let c = SphereCoord::new(step(0.0, PI, i, n - 1), step(0.0, TAU, j, n));
                (c, sphere_traces(c, sys.pert))
            })
        })
        .collect();
    let mut order: Vec<usize> = (0..sphere.len()).collect();
    order.sort_by(|&a, &b| sphere[a].1 .0[0].total_cmp(&sphere[b].1 .0[0]));
    let keys: Vec<f64> = order.iter().map(|&k| sphere[k].1 .0[0]).collect();

    (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let sphere = &sphere;
            let order = &order;
            let keys = &keys;
            (0..n).filter_map(move |j| {
                let d = DiskCoord::new(step(0.0, PI, i, n - 1), step(-FRAC_PI_2, PI, j, n - 1));
                let prof = sys.disk_profile(d.chi, d.psi);
                let x = prof.0[0];
                let lo = keys.partition_point(|&k| k < x - tau);
                let hi = keys.partition_point(|&k| k <= x + tau);
                let mut best = (tau, usize::MAX);
                for &k in &order[lo..hi] {
                    let dist = prof.distance(&sphere[k].1);
                    if dist < best.0 {
                        best = (dist, k);
                    }
                }
                (best.1 != usize::MAX).then(|| Start { disk: d, sphere: sphere[best.1].0 })
            })
        })
        .collect()
}

/// Seed-acceptance radius in trace distance for a grid of `n` points per
/// coordinate.
pub fn seed_radius(n: usize) -> f64 {
    (0.3 * 64.0 / n as f64).max(0.1)
}

pub fn solve(prob: &IntersectionProblem) -> Result<IntersectionReport, IntersectError> {
    prob.validate()?;
    if !monotonicity_check(prob.perturbation) {
        return Err(IntersectError::PerturbationTooLarge { epsilon: prob.perturbation.epsilon });
    }
    let sys = System { word: &prob.word, pert: prob.perturbation };
    let mut starts = grid_seeds(&sys, prob.grid, seed_radius(prob.grid));
    starts.extend(prob.hints.iter().copied());
    let mut rng = ChaCha8Rng::seed_from_u64(prob.seed);
    for _ in 0..prob.random_starts {
        starts.push(Start {
            disk: DiskCoord::new(rng.gen_range(0.0..PI), rng.gen_range(-FRAC_PI_2..FRAC_PI_2)),
            sphere: SphereCoord::new(rng.gen_range(0.0..PI), rng.gen_range(0.0..TAU)),
        });
    }

    let refined: Vec<(Vector4<f64>, f64)> = starts
        .par_iter()
        .map(|s| sys.refine(Vector4::new(s.disk.chi, s.disk.psi, s.sphere.phi, s.sphere.theta)))
        .collect();

    let mut no_convergence = 0;
    let mut clusters: Vec<(DiskCoord, SphereCoord, TraceProfile, f64)> = Vec::new();
    for (x, res) in refined {
        if !(res < prob.newton_tol) {
            no_convergence += 1;
            continue;
        }
        let d = DiskCoord::new(x[0], x[1]).canonical();
        let s = SphereCoord::new(x[2], x[3]).canonical();
        let prof = sphere_traces(s, prob.perturbation);
        match clusters.iter_mut().find(|c| c.2.distance(&prof) < prob.match_tol) {
            Some(c) if res < c.3 => *c = (d, s, prof, res),
            Some(_) => {}
            None => clusters.push((d, s, prof, res)),
        }
    }

    let mut points: Vec<IntersectionPoint> = clusters
        .into_iter()
        .map(|(d, s, prof, _)| {
            let rho = sphere_rep(s, prob.perturbation);
            let chart =
                char_variety::to_chart(&rho).unwrap_or_else(|_| crate::lagrangians::sphere_chart(s, prob.perturbation));
            let residual = objective(d, s, prob);
            let near_dp = near_double_point(&chart, &prof, prob.perturbation);
            let x = Vector4::new(d.chi, d.psi, s.phi, s.theta);
            let ratio = singular_ratio(&sys.jacobian(&x));
            IntersectionPoint {
                disk: d,
                sphere: s,
                chart,
                residual,
                transverse: verdict(ratio, s, near_dp),
                singular_ratio: ratio,
                near_double_point: near_dp,
            }
        })
        .collect();
    points.sort_by(|a, b| {
        (a.disk.chi, a.disk.psi, a.sphere.phi, a.sphere.theta)
            .partial_cmp(&(b.disk.chi, b.disk.psi, b.sphere.phi, b.sphere.theta))
            .unwrap()
    });

    let mut flags = Vec::new();
    if points.iter().any(|p| p.near_double_point) {
        flags.push(Flag::DoublePointHit);
    }
    if points.iter().any(|p| !p.near_double_point && p.transverse != Transversality::Yes) {
        flags.push(Flag::NonTransversePoint);
    }
    Ok(IntersectionReport {
        count: points.len(),
        points,
        flags,
        provenance: Provenance {
            word: prob.word.to_string(),
            epsilon: prob.perturbation.epsilon,
            grid: prob.grid,
            seed: prob.seed,
            seeds_tried: starts.len(),
            no_convergence,
        },
    })
}
