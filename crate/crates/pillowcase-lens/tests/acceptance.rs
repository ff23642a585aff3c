//! Acceptance criteria, one PASS/FAIL line each.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::process::{Command, ExitCode};
use std::time::Instant;

use num_complex::Complex64 as C;
use pillowcase::char_variety::{random_su2, random_unit, trace_profile, ChartPoint, RepTuple, TraceFn};
use pillowcase::cohomology::{coboundary_dim, h1_dim, standard, z1_dim, EpsilonExpansion};
use pillowcase::intersect::{simple_knot_predicted_sites, solve, Family, IntersectionProblem, Transversality};
use pillowcase::lagrangians::{
    sphere_chart, sphere_chart_jacobian, sphere_rep, sphere_traces, PerturbationConfig, Shape, SphereCoord,
};
use pillowcase::mcg::{birman_checks, verify_relations};
use pillowcase::su2::Su2Element;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Outcome = Result<String, String>;

fn pert(eps: f64) -> PerturbationConfig {
    PerturbationConfig::new(eps, Shape::Sine).unwrap()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn count_cli(args: &[&str]) -> Result<(i32, Value), String> {
    let dir = std::env::temp_dir().join(format!("pillowcase-acceptance-{}", std::process::id()));
    let out = Command::new(env!("CARGO_BIN_EXE_pillowcase-lens"))
        .arg("count")
        .args(args)
        .args(["--format", "json", "--out"])
        .arg(&dir)
        .output()
        .map_err(|e| e.to_string())?;
    let code = out.status.code().ok_or("killed by signal")?;
    let text = std::fs::read_to_string(dir.join("report.json")).map_err(|e| format!("exit {code}: {e}"))?;
    let _ = std::fs::remove_dir_all(&dir);
    Ok((code, serde_json::from_str(&text).map_err(|e| e.to_string())?))
}

fn all_transverse(r: &Value) -> bool {
    r["points"]
        .as_array()
        .is_some_and(|ps| ps.iter().all(|p| p["transverse"] == "yes" && p["near_double_point"] == false))
}

fn trefoil() -> Outcome {
    let start = Instant::now();
    let (code, r) = count_cli(&["--word", "s b1 a1^-1", "--epsilon", "0.1"])?;
    let secs = start.elapsed().as_secs_f64();
    if code != 0 || r["count"] != 3 || !all_transverse(&r) || secs >= 30.0 {
        return Err(format!("exit {code}, count {}, {secs:.1}s", r["count"]));
    }
    Ok(format!("3 transverse points in {secs:.2}s"))
}

fn unknot_family() -> Outcome {
    let mut seen = Vec::new();
    for p in 1..=8u32 {
        let (code, r) = count_cli(&["--family", "unknot-lens", "--p", &p.to_string()])?;
        let ok = if p % 4 == 0 {
            code == 2 && r["flags"].as_array().is_some_and(|f| f.iter().any(|x| x == "double-point-hit"))
        } else {
            code == 0 && r["count"] == p && all_transverse(&r)
        };
        if !ok {
            return Err(format!("p = {p}: exit {code}, count {}, flags {}", r["count"], r["flags"]));
        }
        seen.push(if p % 4 == 0 { "flag".to_string() } else { r["count"].to_string() });
    }
    Ok(format!("p = 1..8 gives {}", seen.join(" ")))
}

fn simple_family() -> Outcome {
    let mut worst: f64 = 0.0;
    for p in 0..=6 {
        let rep =
            solve(&IntersectionProblem::for_family(Family::SimpleLens, p, pert(0.1))).map_err(|e| e.to_string())?;
        let sites = simple_knot_predicted_sites(p, 0.1);
        if rep.count != p as usize || sites.len() != rep.count {
            return Err(format!("p = {p}: count {}", rep.count));
        }
        for (d, phi) in sites {
            let d = d.canonical();
            let hit = rep
                .points
                .iter()
                .map(|pt| (pt.disk.chi - d.chi).abs().max((pt.disk.psi - d.psi).abs()).max((pt.sphere.phi - phi).abs()))
                .fold(f64::INFINITY, f64::min);
            worst = worst.max(hit);
        }
        if rep.points.iter().any(|pt| pt.transverse != Transversality::Yes) {
            return Err(format!("p = {p}: non-transverse point"));
        }
    }
    if worst < 1e-6 {
        Ok(format!("counts 0..6 match, max site error {worst:.1e}"))
    } else {
        Err(format!("max site error {worst:.1e}"))
    }
}

fn cohomology_dims() -> Outcome {
    let mut r = rng(41);
    let (disk, natural, torus) = (standard::disk(), standard::natural_pi(), standard::torus());
    let eps = 0.1;
    let err = |e: pillowcase::cohomology::CohomologyError| e.to_string();
    for _ in 0..200 {
        let rho = vec![random_su2(&mut r), {
            let v = random_unit(&mut r);
            Su2Element::from_raw(0.0, v.x, v.y, v.z)
        }];
        if coboundary_dim(&rho) == 3 && h1_dim(&disk, &rho, eps).map_err(err)? != 2 {
            return Err("disk H1 differs from 2".into());
        }
        let c = SphereCoord::new(r.gen_range(0.05..PI - 0.05), r.gen_range(0.0..TAU));
        let nat = EpsilonExpansion::new(&natural, |e| standard::natural_pi_point(c, e)).map_err(err)?;
        let tor = EpsilonExpansion::new(&torus, |e| standard::torus_point(c, e)).map_err(err)?;
        let h_nat = h1_dim(&natural, &standard::natural_pi_point(c, eps), eps).map_err(err)?;
        let h_tor = h1_dim(&torus, &standard::torus_point(c, eps), eps).map_err(err)?;
        if (nat.bound(), tor.bound(), h_nat, h_tor) != (5, 7, 2, 4) {
            return Err(format!("at {c:?}: bounds {}, {}; H1 {h_nat}, {h_tor}", nat.bound(), tor.bound()));
        }
    }
    Ok("H1 2 on the disk variety, 2 and 4 over L_s; bounds 5 and 7 at 200 points".into())
}

fn integer_table() -> Outcome {
    let rho = standard::integer_point();
    let mut z = Vec::new();
    let mut b = Vec::new();
    for which in 1..=3 {
        let pres = standard::integer_example(which);
        z.push(z1_dim(&pres, &rho, 0.1).map_err(|e| e.to_string())?);
        b.push(EpsilonExpansion::new(&pres, |_| standard::integer_point()).map_err(|e| e.to_string())?.bound());
    }
    if z == [2, 3, 2] && b == [2, 3, 3] {
        Ok(format!("Z1 {z:?}, bound {b:?}"))
    } else {
        Err(format!("Z1 {z:?}, bound {b:?}"))
    }
}

fn mcg_relations() -> Outcome {
    let rel = verify_relations(100, 61).map_err(|v| format!("{}: {:.1e}", v.relation, v.residual))?;
    let bir = birman_checks(100, 62).map_err(|v| format!("{}: {:.1e}", v.relation, v.residual))?;
    let worst = rel.max_residual().max(bir.max_residual());
    if worst < 1e-9 {
        Ok(format!(
            "{} relations and {} push/forget identities, max residual {worst:.1e}",
            rel.entries.len(),
            bir.entries.len()
        ))
    } else {
        Err(format!("max residual {worst:.1e}"))
    }
}

type M2 = [[C; 2]; 2];

fn matrix(g: Su2Element) -> M2 {
    [[C::new(g.c0, g.cz), C::new(g.cy, g.cx)], [C::new(-g.cy, g.cx), C::new(g.c0, -g.cz)]]
}

fn mat_tr(ms: &[Su2Element]) -> f64 {
    let mut acc = matrix(Su2Element::ONE);
    for &g in ms {
        let m = matrix(g);
        let mut out = [[C::new(0.0, 0.0); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] = acc[i][0] * m[0][j] + acc[i][1] * m[1][j];
            }
        }
        acc = out;
    }
    (acc[0][0] + acc[1][1]).re
}

fn matrix_traces(rho: &RepTuple) -> [f64; 9] {
    let (aa, bb, a, b) = (rho.A, rho.B, rho.a, rho.b);
    [
        mat_tr(&[aa]),
        mat_tr(&[bb]),
        mat_tr(&[aa, a]),
        mat_tr(&[bb, a]),
        mat_tr(&[aa, b]),
        mat_tr(&[bb, b]),
        mat_tr(&[aa, bb]),
        mat_tr(&[aa, bb, a]),
        mat_tr(&[aa, bb, aa.inverse(), bb.inverse()]) / 2.0,
    ]
}

fn trace_consistency() -> Outcome {
    let mut r = rng(71);
    let mut worst: f64 = 0.0;
    for eps in [0.05, 0.1, 0.2] {
        for _ in 0..10_000 {
            let c = SphereCoord::new(r.gen_range(0.0..PI), r.gen_range(0.0..TAU));
            let closed = sphere_traces(c, pert(eps));
            let m = matrix_traces(&sphere_rep(c, pert(eps)));
            for f in TraceFn::ALL {
                worst = worst.max((closed.get(f) - m[f.index()]).abs());
            }
        }
    }
    if worst < 1e-10 {
        Ok(format!("max error {worst:.1e} over 3 x 10^4 points"))
    } else {
        Err(format!("max error {worst:.1e}"))
    }
}

fn double_point() -> Outcome {
    let target = ChartPoint::P3 { alpha: FRAC_PI_2, beta: 0.0, gamma: 0.0 };
    for eps in [0.05, 0.1, 0.2] {
        for theta in [0.0, 1.0, PI, 4.0] {
            for phi in [0.0, PI] {
                let got = sphere_chart(SphereCoord::new(phi, theta), pert(eps));
                if got != target {
                    return Err(format!("({phi}, {theta}) at {eps}: {got:?}"));
                }
            }
        }
    }
    let mut r = rng(81);
    let p = pert(0.1);
    let mut closest = f64::INFINITY;
    for _ in 0..2000 {
        let c1 = SphereCoord::new(r.gen_range(0.01..PI - 0.01), r.gen_range(0.0..TAU));
        let c2 = if r.gen_bool(0.5) {
            SphereCoord::new(r.gen_range(0.01..PI - 0.01), r.gen_range(0.0..TAU))
        } else {
            SphereCoord::new(c1.phi, c1.theta + 0.01)
        };
        closest = closest.min(trace_profile(&sphere_rep(c1, p)).distance(&trace_profile(&sphere_rep(c2, p))));
    }
    if closest > 1e-6 {
        Ok(format!("both poles give (pi/2, 0, 0); 2000 distinct pairs separated by >= {closest:.1e}"))
    } else {
        Err(format!("distinct points at trace distance {closest:.1e}"))
    }
}

fn jacobian() -> Outcome {
    let mut r = rng(91);
    let p = pert(0.1);
    let h = 1e-6;
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let c = SphereCoord::new(r.gen_range(0.05..PI - 0.05), r.gen_range(0.0..TAU));
        for f in TraceFn::ALL {
            let tr = |phi: f64, theta: f64| f.eval(&sphere_rep(SphereCoord::new(phi, theta), p));
            let fd = [
                (tr(c.phi + h, c.theta) - tr(c.phi - h, c.theta)) / (2.0 * h),
                (tr(c.phi, c.theta + h) - tr(c.phi, c.theta - h)) / (2.0 * h),
            ];
            let (dphi, dtheta) = sphere_chart_jacobian(c, p, f);
            for (a, b) in [(dphi, fd[0]), (dtheta, fd[1])] {
                worst = worst.max((a - b).abs() / a.abs().max(1.0));
            }
        }
    }
    if worst < 1e-6 {
        Ok(format!("max relative error {worst:.1e}"))
    } else {
        Err(format!("max relative error {worst:.1e}"))
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("trefoil count", trefoil),
        ("unknot family", unknot_family),
        ("simple-knot family", simple_family),
        ("cohomology dimensions", cohomology_dims),
        ("integer example table", integer_table),
        ("mapping class relations", mcg_relations),
        ("trace formula consistency", trace_consistency),
        ("double point and injectivity", double_point),
        ("jacobian validation", jacobian),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
