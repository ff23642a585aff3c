//! Verification suites behind `pillowcase-lens verify`.

use std::collections::BTreeSet;
use std::f64::consts::{PI, TAU};

use pillowcase::char_variety::{trace_profile, TraceFn};
use pillowcase::cohomology::{epsilon_bound, h1_dim, standard};
use pillowcase::lagrangians::{
    monotonicity_check, sphere_chart_jacobian, sphere_rep, sphere_traces, PerturbationConfig, Shape, SphereCoord,
};
use pillowcase::mcg::{birman_checks, verify_relations};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const MCG_SAMPLES: usize = 200;
pub const TRACE_SAMPLES: usize = 10_000;
pub const JACOBIAN_SAMPLES: usize = 1_000;
pub const COHOMOLOGY_SAMPLES: usize = 40;

const TRACE_TOL: f64 = 1e-10;
const JACOBIAN_STEP: f64 = 1e-6;
const JACOBIAN_RTOL: f64 = 1e-6;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub lines: Vec<String>,
    pub failures: Vec<String>,
}

impl SuiteResult {
    fn new(name: &'static str) -> Self {
        SuiteResult { name, ..Default::default() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn mcg_suite(seed: u64) -> SuiteResult {
    let mut r = SuiteResult::new("mcg");
    for (label, res) in
        [("relations", verify_relations(MCG_SAMPLES, seed)), ("birman", birman_checks(MCG_SAMPLES, seed))]
    {
        match res {
            Ok(rep) => {
                for (name, resid) in &rep.entries {
                    r.lines.push(format!("mcg {label}: {name}: max residual {resid:.2e}"));
                }
                r.lines.push(format!(
                    "mcg {label}: {} checks on {} samples, max residual {:.2e}",
                    rep.entries.len(),
                    rep.samples,
                    rep.max_residual()
                ));
            }
            Err(v) => r.failures.push(format!("{label}: relation {} residual {:.2e}", v.relation, v.residual)),
        }
    }
    r
}

fn random_sphere(rng: &mut ChaCha8Rng) -> SphereCoord {
    SphereCoord::new(rng.gen_range(0.0..PI), rng.gen_range(0.0..TAU))
}

pub fn traces_suite(seed: u64) -> SuiteResult {
    let mut r = SuiteResult::new("traces");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for eps in [0.05, 0.1, 0.2] {
        let p = PerturbationConfig::new(eps, Shape::Sine).expect("epsilon in range");
        let mut worst = 0.0f64;
        for _ in 0..TRACE_SAMPLES {
            let c = random_sphere(&mut rng);
            worst = worst.max(sphere_traces(c, p).distance(&trace_profile(&sphere_rep(c, p))));
        }
        r.lines.push(format!("traces eps={eps}: closed forms vs matrices, max error {worst:.2e}"));
        if !(worst < TRACE_TOL) {
            r.failures.push(format!("closed-form traces at eps={eps} off by {worst:.2e}"));
        }

        let mut worst_rel = 0.0f64;
        for _ in 0..JACOBIAN_SAMPLES {
            let c = random_sphere(&mut rng);
            for f in TraceFn::ALL {
                let (dphi, dtheta) = sphere_chart_jacobian(c, p, f);
                let h = JACOBIAN_STEP;
                let fd = |a: SphereCoord, b: SphereCoord| {
                    (f.eval(&sphere_rep(a, p)) - f.eval(&sphere_rep(b, p))) / (2.0 * h)
                };
                let fphi = fd(SphereCoord::new(c.phi + h, c.theta), SphereCoord::new(c.phi - h, c.theta));
                let ftheta = fd(SphereCoord::new(c.phi, c.theta + h), SphereCoord::new(c.phi, c.theta - h));
                worst_rel = worst_rel
                    .max((dphi - fphi).abs() / dphi.abs().max(1.0))
                    .max((dtheta - ftheta).abs() / dtheta.abs().max(1.0));
            }
        }
        r.lines.push(format!("traces eps={eps}: jacobian vs finite differences, max relative error {worst_rel:.2e}"));
        if !(worst_rel < JACOBIAN_RTOL) {
            r.failures.push(format!("trace jacobian at eps={eps} off by {worst_rel:.2e}"));
        }

        let pole = sphere_traces(SphereCoord::new(PI, 1.0), p).distance(&sphere_traces(SphereCoord::new(0.0, 0.0), p));
        if !(pole < TRACE_TOL) {
            r.failures.push(format!("poles of L_s differ by {pole:.2e} at eps={eps}"));
        }
        if !monotonicity_check(p) {
            r.failures.push(format!("tr(A)/tr(Aa) ratio not monotone at eps={eps}"));
        }
    }
    r.lines.push("traces: both poles map to the double point; ratio monotone for every epsilon".to_string());
    r
}

/// Generic sample of `(φ, θ)` away from the poles and the `P₃` seams.
fn generic_sphere(rng: &mut ChaCha8Rng) -> SphereCoord {
    loop {
        let c = SphereCoord::new(rng.gen_range(0.1..PI - 0.1), rng.gen_range(0.0..TAU));
        if c.theta.sin().abs() > 0.1 {
            return c;
        }
    }
}

pub fn cohomology_suite(seed: u64) -> SuiteResult {
    let mut r = SuiteResult::new("cohomology");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let eps = 0.1;
    let (natural, torus) = (standard::natural_pi(), standard::torus());
    let mut dims = (BTreeSet::new(), BTreeSet::new());
    let mut bounds = (BTreeSet::new(), BTreeSet::new());
    let mut errors = Vec::new();
    for _ in 0..COHOMOLOGY_SAMPLES {
        let c = generic_sphere(&mut rng);
        let res = (|| {
            dims.0.insert(h1_dim(&natural, &standard::natural_pi_point(c, eps), eps)?);
            dims.1.insert(h1_dim(&torus, &standard::torus_point(c, eps), eps)?);
            bounds.0.insert(epsilon_bound(&natural, |e| standard::natural_pi_point(c, e))?);
            bounds.1.insert(epsilon_bound(&torus, |e| standard::torus_point(c, e))?);
            Ok::<(), pillowcase::cohomology::CohomologyError>(())
        })();
        if let Err(e) = res {
            errors.push(format!("({:.4}, {:.4}): {e}", c.phi, c.theta));
        }
    }
    let show = |s: &BTreeSet<usize>| s.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("/");
    r.lines.push(format!(
        "H1 dims: {}, {}; bounds: {}, {}",
        show(&dims.0),
        show(&dims.1),
        show(&bounds.0),
        show(&bounds.1)
    ));
    let expect = |s: &BTreeSet<usize>, v: usize| s.len() == 1 && s.contains(&v);
    if !(expect(&dims.0, 2) && expect(&dims.1, 4)) {
        r.failures.push(format!("H1 dims {} and {}, expected 2 and 4", show(&dims.0), show(&dims.1)));
    }
    if !(expect(&bounds.0, 5) && expect(&bounds.1, 7)) {
        r.failures.push(format!("epsilon bounds {} and {}, expected 5 and 7", show(&bounds.0), show(&bounds.1)));
    }
    r.failures.extend(errors);
    r
}
