mod common;

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use common::*;
use pillowcase::char_variety::{distance, mu, to_chart_p3, to_chart_p4, ChartPoint, RepTuple, TraceFn};
use pillowcase::lagrangians::{
    disk_rep, monotonicity_check, nu, sphere_chart, sphere_chart_jacobian, sphere_rep, sphere_rep_eps, sphere_traces,
    sphere_traces_with_jacobian, DiskCoord, PerturbationConfig, PerturbationError, Shape, SphereCoord,
};
use pillowcase::su2::Su2Element;
use proptest::prelude::*;
use rand::Rng;

fn pert(eps: f64) -> PerturbationConfig {
    PerturbationConfig::sine(eps).unwrap()
}

/// Trace formulas on `L_s` written out term by term, in the order of
/// `TraceFn::ALL` minus `tr Bb` and `tr ABa`.
fn reference_traces(phi: f64, theta: f64, eps: f64) -> [(TraceFn, f64); 7] {
    let nu = eps * phi.sin();
    let d2 = nu.cos().powi(2) + nu.sin().powi(2) * theta.sin().powi(2);
    let d = d2.sqrt();
    [
        (TraceFn::A, -2.0 * nu.cos() * theta.cos() * phi.sin() / d),
        (TraceFn::B, 2.0 * nu.cos()),
        (TraceFn::Aa, 2.0 * (phi + nu).sin() * theta.sin() / d),
        (TraceFn::Ba, 0.0),
        (TraceFn::Ab, -2.0 * (phi - nu).sin() * theta.sin() / d),
        (TraceFn::AB, -2.0 * nu.cos() * theta.cos() * (phi + nu).sin() / d),
        (TraceFn::Mu, (nu.cos().powi(2) - nu.sin().powi(2) * theta.sin().powi(2)) / d2),
    ]
}

/// `â`, `b̂` on `L_s` off the seams, both branches.
fn reference_chart(phi: f64, theta: f64, eps: f64) -> ([f64; 3], [f64; 3]) {
    let nu = eps * phi.sin();
    let d2 = nu.cos().powi(2) + nu.sin().powi(2) * theta.sin().powi(2);
    let bx = (nu.cos().powi(2) * theta.cos().powi(2) * (phi + nu).sin() + theta.sin().powi(2) * (phi - nu).sin()) / d2;
    let by = (nu.cos().powi(2) * theta.cos().powi(2) * (phi + nu).cos() + theta.sin().powi(2) * (phi - nu).cos()) / d2;
    let bz = -0.5 * (2.0 * nu).sin() * (2.0 * theta).sin() / d2;
    let a = [-(phi + nu).sin(), -(phi + nu).cos(), 0.0];
    if theta < PI {
        (a, [bx, by, bz])
    } else {
        ([-a[0], -a[1], 0.0], [-bx, -by, bz])
    }
}

fn matrix_traces(rho: &RepTuple) -> [f64; 9] {
    let [ma, mb, sa, sb] = [rho.A, rho.B, rho.a, rho.b].map(matrix);
    let tr = |ms: &[M2]| trace(&mat_product(ms)).re;
    [
        tr(&[ma]),
        tr(&[mb]),
        tr(&[ma, sa]),
        tr(&[mb, sa]),
        tr(&[ma, sb]),
        tr(&[mb, sb]),
        tr(&[ma, mb]),
        tr(&[ma, mb, sa]),
        0.5 * tr(&[ma, mb, adjoint_matrix(&ma), adjoint_matrix(&mb)]),
    ]
}

fn vec_close(u: [f64; 3], v: [f64; 3], tol: f64) -> bool {
    u.iter().zip(v.iter()).all(|(x, y)| (x - y).abs() < tol)
}

#[test]
fn disk_examples() {
    let rho = disk_rep(DiskCoord::new(FRAC_PI_2, 0.0));
    assert!(rho.A.dist(Su2Element::I_SIGMA_Z) < 1e-15);
    assert!(rho.a.dist(Su2Element::I_SIGMA_X) < 1e-15);
    assert_eq!(rho.B, Su2Element::ONE);
    assert!(rho.b.dist(-Su2Element::I_SIGMA_X) < 1e-15);
    assert_eq!(mu(&rho), 1.0);
}

#[test]
fn sphere_trace_examples() {
    let p = pert(0.1);
    let t = sphere_traces(SphereCoord::new(FRAC_PI_2, FRAC_PI_2), p);
    assert!((t.get(TraceFn::Aa) - 2.0 * (FRAC_PI_2 + 0.1).sin()).abs() < 1e-14);
    for phi in [0.2, 1.3, 2.9] {
        let seam = sphere_traces(SphereCoord::new(phi, 0.0), p);
        assert_eq!(seam.get(TraceFn::Aa), 0.0);
        assert!((seam.get(TraceFn::Mu) - 1.0).abs() < 1e-15);
        let rho = sphere_rep(SphereCoord::new(phi, 2.0), p);
        assert!((rho.B.trace() - 2.0 * (0.1 * phi.sin()).cos()).abs() < 1e-14);
        assert!(rho.B.mul(rho.a).trace().abs() < 1e-14);
    }
}

#[test]
fn poles_are_the_double_point() {
    let p = pert(0.1);
    let dp = ChartPoint::P3 { alpha: FRAC_PI_2, beta: 0.0, gamma: 0.0 };
    for theta in [0.0, 0.7, PI, 4.0] {
        assert_eq!(sphere_chart(SphereCoord::new(0.0, theta), p), dp);
        assert_eq!(sphere_chart(SphereCoord::new(PI, theta), p), dp);
    }
    for phi in [0.0, PI] {
        let rho = sphere_rep(SphereCoord::new(phi, 1.1), p);
        assert!(rho.B.dist(Su2Element::ONE) < 1e-15);
        assert!(to_chart_p3(&rho).unwrap().distance(&dp) < 1e-12);
    }
}

#[test]
fn seam_chart_examples() {
    let p = pert(0.1);
    let nu = 0.1 * 0.4f64.sin();
    let up = sphere_chart(SphereCoord::new(0.4, 0.0), p);
    assert!(up.distance(&ChartPoint::P3 { alpha: 0.4 + FRAC_PI_2, beta: nu, gamma: 0.0 }) < 1e-15);
    let down = sphere_chart(SphereCoord::new(0.4, PI), p);
    assert!(down.distance(&ChartPoint::P3 { alpha: 0.4 - FRAC_PI_2, beta: nu, gamma: 0.0 }) < 1e-15);
    for c in [SphereCoord::new(0.4, 0.0), SphereCoord::new(0.4, PI)] {
        let direct = to_chart_p3(&sphere_rep(c, p)).unwrap();
        assert!(direct.distance(&sphere_chart(c, p)) < 1e-12);
    }
}

#[test]
fn equator_chart_example() {
    let p = pert(0.1);
    for phi in [0.3f64, 1.5, 2.7] {
        let nu = 0.1 * phi.sin();
        let pt = sphere_chart(SphereCoord::new(phi, FRAC_PI_2), p);
        let (ChartPoint::P4 { a_hat, .. }, Some(b)) = (pt, pt.b_hat()) else { panic!("{pt:?}") };
        assert!(vec_close(a_hat.to_array(), [-(phi + nu).sin(), -(phi + nu).cos(), 0.0], 1e-14));
        assert!(vec_close(b.to_array(), [(phi - nu).sin(), (phi - nu).cos(), 0.0], 1e-14));
    }
}

#[test]
fn reference_traces_match_matrices() {
    let mut r = rng(1);
    for eps in [0.05, 0.1, 0.2] {
        let p = pert(eps);
        for _ in 0..10_000 {
            let (phi, theta) = (r.gen_range(0.0..PI), r.gen_range(0.0..TAU));
            let c = SphereCoord::new(phi, theta);
            let oracle = matrix_traces(&sphere_rep(c, p));
            let closed = sphere_traces(c, p);
            for (f, v) in reference_traces(phi, theta, eps) {
                assert!((oracle[f.index()] - v).abs() < 1e-10, "{} at {c:?}", f.name());
            }
            for f in TraceFn::ALL {
                assert!((oracle[f.index()] - closed.get(f)).abs() < 1e-10, "{} at {c:?}", f.name());
            }
        }
    }
}

#[test]
fn sphere_chart_matches_reference_and_normal_form() {
    let mut r = rng(2);
    for _ in 0..2000 {
        let eps = r.gen_range(0.01..0.3);
        let (phi, theta) = (r.gen_range(0.01..PI - 0.01), r.gen_range(0.0..TAU));
        if (theta.sin()).abs() < 1e-3 {
            continue;
        }
        let c = SphereCoord::new(phi, theta);
        let p = pert(eps);
        let pt = sphere_chart(c, p);
        let (a, b) = reference_chart(phi, theta, eps);
        let ChartPoint::P4 { a_hat, .. } = pt else { panic!("{pt:?}") };
        assert!(vec_close(a_hat.to_array(), a, 1e-12));
        assert!(vec_close(pt.b_hat().unwrap().to_array(), b, 1e-12));
        // too close to P3 for the normal form to be well conditioned
        let rho = sphere_rep(c, p);
        if mu(&rho) > 1.0 - 1e-6 {
            continue;
        }
        assert!(to_chart_p4(&rho).unwrap().distance(&pt) < 1e-8, "{c:?}");
    }
}

#[test]
fn jacobian_matches_finite_differences() {
    let mut r = rng(3);
    let h = 1e-6;
    for _ in 0..1000 {
        let eps = r.gen_range(0.01..0.3);
        let p = pert(eps);
        let c = SphereCoord::new(r.gen_range(0.0..PI), r.gen_range(0.0..TAU));
        let (vals, jac) = sphere_traces_with_jacobian(c, p);
        for f in TraceFn::ALL {
            let tr = |phi: f64, theta: f64| f.eval(&sphere_rep(SphereCoord::new(phi, theta), p));
            let fd_phi = (tr(c.phi + h, c.theta) - tr(c.phi - h, c.theta)) / (2.0 * h);
            let fd_theta = (tr(c.phi, c.theta + h) - tr(c.phi, c.theta - h)) / (2.0 * h);
            let (dphi, dtheta) = sphere_chart_jacobian(c, p, f);
            assert!((dphi - fd_phi).abs() <= 1e-6 * dphi.abs().max(1.0), "{} d/dphi at {c:?}", f.name());
            assert!((dtheta - fd_theta).abs() <= 1e-6 * dtheta.abs().max(1.0), "{} d/dtheta at {c:?}", f.name());
            assert_eq!(jac[f.index()], [dphi, dtheta]);
            assert_eq!(vals.get(f), sphere_traces(c, p).get(f));
        }
    }
}

#[test]
fn jacobian_examples() {
    let p = pert(0.1);
    for (phi, theta) in [(0.4, 1.0), (FRAC_PI_2, 2.0), (2.2, 5.0)] {
        let c = SphereCoord::new(phi, theta);
        let (dphi, _) = sphere_chart_jacobian(c, p, TraceFn::B);
        let nu = 0.1 * phi.sin();
        assert!((dphi - (-2.0 * nu.sin() * 0.1 * phi.cos())).abs() < 1e-14);
        assert_eq!(sphere_chart_jacobian(c, p, TraceFn::Ba), (0.0, 0.0));
    }
    let (dphi, _) = sphere_chart_jacobian(SphereCoord::new(FRAC_PI_2, 1.0), p, TraceFn::B);
    assert!(dphi.abs() < 1e-16);
}

#[test]
fn sphere_rep_relations() {
    let mut r = rng(4);
    for _ in 0..2000 {
        let eps = r.gen_range(0.01..0.45);
        let shape = if r.gen_bool(0.5) { Shape::Sine } else { Shape::AlgebraicArcsine };
        let c = SphereCoord::new(r.gen_range(0.0..PI), r.gen_range(0.0..TAU));
        let rho = sphere_rep_eps(c, eps, shape);
        let (h, w) = (rho.h.unwrap(), rho.w.unwrap());
        assert!(rho.invariant_residual() < 1e-10);
        assert!(h.c0.abs() < 1e-12);
        assert_eq!(w, Su2Element::MINUS_ONE);
        assert!(rho.b.dist(-(h * rho.a.inverse() * h.inverse())) < 1e-12);
        assert!((h * w * rho.a * rho.B).dist(rho.a * rho.B * h) < 1e-12);

        // perturbation condition: λ = h⁻¹A and μ = B share an axis, with
        // angle(μ) = ε f(angle(λ))
        let lam = h.inverse() * rho.A;
        let (vl, vm) = (lam.log(), rho.B.log());
        assert!(vl.cross(vm).norm() < 1e-12);
        assert!(vl.dot(vm) >= -1e-15);
        let want = nu(eps, shape, vl.norm());
        assert!((vm.norm() - want).abs() < 1e-10, "{c:?}");
    }
}

#[test]
fn off_seam_points_are_separated() {
    let mut r = rng(5);
    let p = pert(0.1);
    let draw = |r: &mut rand_chacha::ChaCha8Rng| loop {
        let c = SphereCoord::new(r.gen_range(0.0..PI), r.gen_range(0.0..TAU));
        if c.theta.sin().abs() > 1e-6 && c.phi.sin() > 1e-6 {
            return c;
        }
    };
    for _ in 0..1000 {
        let (x, y) = (draw(&mut r), draw(&mut r));
        let d = distance(&sphere_rep(x, p), &sphere_rep(y, p));
        assert!(d > 0.0, "{x:?} and {y:?} collide");
        assert!(sphere_chart(x, p).distance(&sphere_chart(y, p)) > 0.0);
    }
}

#[test]
fn monotonicity_examples() {
    assert!(monotonicity_check(pert(0.1)));
    assert!(monotonicity_check(pert(0.45)));
    let off = PerturbationConfig { epsilon: 0.0, shape: Shape::Sine };
    assert!(!monotonicity_check(off));

    // F(φ) = sin(φ+ν)/sin(φ-ν) decreases from (1+ε)/(1-ε) to (1-ε)/(1+ε)
    let f = |phi: f64| (phi + 0.1 * phi.sin()).sin() / (phi - 0.1 * phi.sin()).sin();
    assert!((f(1e-6) - 1.1 / 0.9).abs() < 1e-6);
    assert!((f(PI - 1e-6) - 0.9 / 1.1).abs() < 1e-6);
}

#[test]
fn perturbation_guardrail() {
    assert_eq!(PerturbationConfig::default(), pert(0.1));
    assert!(matches!(PerturbationConfig::sine(0.5), Err(PerturbationError::OutOfRange(_))));
    assert!(PerturbationConfig::sine(0.0).is_err());
    assert!(PerturbationConfig::sine(-0.1).is_err());
    assert!(PerturbationConfig::new(f64::NAN, Shape::AlgebraicArcsine).is_err());
    let q = PerturbationConfig::new(0.3, Shape::AlgebraicArcsine).unwrap();
    assert!((q.nu(1.0) - (0.3 * 1.0f64.sin()).asin()).abs() < 1e-15);
}

#[test]
fn canonical_coordinates() {
    let c = SphereCoord::new(PI, 2.0).canonical();
    assert_eq!((c.phi, c.theta), (PI, 0.0));
    let c = SphereCoord::new(-0.5, 1.0).canonical();
    assert!((c.phi - 0.5).abs() < 1e-15 && (c.theta - (1.0 + PI)).abs() < 1e-15);
    let d = DiskCoord::new(0.0, 0.0).canonical();
    assert_eq!((d.chi, d.psi), (0.0, 0.0));
}

proptest! {
    #[test]
    fn disk_lies_in_p3_on_the_beta_zero_edge(chi in 0.01f64..3.13, psi in -1.56f64..1.56) {
        let rho = disk_rep(DiskCoord::new(chi, psi));
        prop_assert!(rho.invariant_residual() < 1e-12);
        prop_assert_eq!(mu(&rho), 1.0);
        let want = ChartPoint::P3 { alpha: chi, beta: 0.0, gamma: psi };
        prop_assert!(to_chart_p3(&rho).unwrap().distance(&want) < 1e-12);
    }

    #[test]
    fn canonical_disk_coords_keep_the_point(chi in -7.0f64..7.0, psi in -7.0f64..7.0) {
        let d = DiskCoord::new(chi, psi);
        let c = d.canonical();
        prop_assert!((0.0..=PI).contains(&c.chi));
        prop_assert!(c.psi.abs() <= FRAC_PI_2 + 1e-12);
        prop_assert!(distance(&disk_rep(d), &disk_rep(c)) < 1e-12);
    }

    #[test]
    fn canonical_sphere_coords_keep_the_point(phi in -3.1f64..3.1, theta in -7.0f64..7.0) {
        let s = SphereCoord::new(phi, theta);
        let c = s.canonical();
        let p = pert(0.1);
        prop_assert!((0.0..=PI).contains(&c.phi));
        prop_assert!((0.0..TAU).contains(&c.theta));
        prop_assert!(sphere_traces(s, p).distance(&sphere_traces(c, p)) < 1e-12);
    }
}
