//! The disk Lagrangian `L_d(χ, ψ)` and the perturbed sphere Lagrangian
//! `L_s(φ, θ)` in R(T²,2).

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use thiserror::Error;

use crate::char_variety::{ChartPoint, RepTuple, TraceFn, TraceProfile};
use crate::jet::Jet;
use crate::su2::{Su2Element, UnitVector3};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskCoord {
    pub chi: f64,
    pub psi: f64,
}

impl DiskCoord {
    pub fn new(chi: f64, psi: f64) -> Self {
        DiskCoord { chi, psi }
    }

    /// Canonical representative of the same conjugacy class of
    /// `disk_rep`, with `χ ∈ [0, π]` and `ψ ∈ [-π/2, π/2]`.
    ///
    /// Uses `ψ ~ π - ψ` (conjugation by iσz) and `(χ, ψ) ~ (-χ, -ψ)`
    /// (conjugation by iσx).
    pub fn canonical(self) -> DiskCoord {
        let mut psi = wrap(self.psi);
        if psi > FRAC_PI_2 {
            psi = PI - psi;
        } else if psi < -FRAC_PI_2 {
            psi = -PI - psi;
        }
        let mut chi = wrap(self.chi);
        if chi < 0.0 {
            chi = -chi;
            psi = -psi;
        }
        DiskCoord { chi, psi }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereCoord {
    pub phi: f64,
    pub theta: f64,
}

impl SphereCoord {
    pub fn new(phi: f64, theta: f64) -> Self {
        SphereCoord { phi, theta }
    }

    /// Same point of `L_s` with `φ ∈ [0, π]`, `θ ∈ [0, 2π)`; poles get
    /// `θ = 0`. Angles within `1e-9` of a seam are snapped onto it.
    pub fn canonical(self) -> SphereCoord {
        const SNAP: f64 = 1e-9;
        let mut phi = wrap(self.phi);
        let mut theta = self.theta;
        if phi < 0.0 {
            phi = -phi;
            theta += PI;
        }
        let mut theta = theta.rem_euclid(TAU);
        for seam in [0.0, PI, TAU] {
            if (theta - seam).abs() < SNAP {
                theta = seam;
            }
        }
        if theta >= TAU {
            theta = 0.0;
        }
        if phi < SNAP || PI - phi < SNAP {
            phi = if phi < SNAP { 0.0 } else { PI };
            theta = 0.0;
        }
        SphereCoord { phi, theta }
    }

    /// Cartesian coordinates `(sin φ cos θ, sin φ sin θ, cos φ)`.
    pub fn cartesian(self) -> [f64; 3] {
        let (sp, cp) = self.phi.sin_cos();
        [sp * self.theta.cos(), sp * self.theta.sin(), cp]
    }
}

fn wrap(x: f64) -> f64 {
    crate::char_variety::wrap_pi(x)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Shape {
    /// `ν = ε sin φ`.
    Sine,
    /// `ν = sin⁻¹(ε sin φ)`, the shape that makes the perturbation
    /// condition algebraic.
    AlgebraicArcsine,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerturbationConfig {
    pub epsilon: f64,
    pub shape: Shape,
}

/// Largest perturbation accepted.
pub const EPSILON_MAX: f64 = 0.5;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PerturbationError {
    #[error("epsilon must lie in (0, {EPSILON_MAX}), got {0}")]
    OutOfRange(f64),
}

impl Default for PerturbationConfig {
    fn default() -> Self {
        PerturbationConfig { epsilon: 0.1, shape: Shape::Sine }
    }
}

impl PerturbationConfig {
    pub fn new(epsilon: f64, shape: Shape) -> Result<Self, PerturbationError> {
        if !(epsilon > 0.0 && epsilon < EPSILON_MAX) {
            return Err(PerturbationError::OutOfRange(epsilon));
        }
        Ok(PerturbationConfig { epsilon, shape })
    }

    pub fn sine(epsilon: f64) -> Result<Self, PerturbationError> {
        PerturbationConfig::new(epsilon, Shape::Sine)
    }

    /// `ν(φ) = ε f(φ)`.
    pub fn nu(&self, phi: f64) -> f64 {
        nu(self.epsilon, self.shape, phi)
    }
}

/// `ν(φ)` for any real `ε`, including the negative values used when
/// differentiating in `ε`.
pub fn nu(epsilon: f64, shape: Shape, phi: f64) -> f64 {
    match shape {
        Shape::Sine => epsilon * phi.sin(),
        Shape::AlgebraicArcsine => (epsilon * phi.sin()).asin(),
    }
}

pub fn disk_rep(c: DiskCoord) -> RepTuple {
    let a = Su2Element::new(0.0, c.psi.cos(), 0.0, c.psi.sin());
    RepTuple::new(Su2Element::exp(UnitVector3::Z, c.chi), Su2Element::ONE, a, a.inverse())
}

pub fn sphere_rep(c: SphereCoord, p: PerturbationConfig) -> RepTuple {
    sphere_rep_eps(c, p.epsilon, p.shape)
}

/// [`sphere_rep`] without the range check on `ε`.
pub fn sphere_rep_eps(c: SphereCoord, epsilon: f64, shape: Shape) -> RepTuple {
    let (phi, theta) = (c.phi, c.theta);
    let nu = nu(epsilon, shape, phi);
    let (sn, cn) = nu.sin_cos();
    let (st, ct) = theta.sin_cos();
    let d = (cn * cn + sn * sn * st * st).sqrt();
    let h = Su2Element::new(0.0, cn / d, 0.0, -sn * st / d);
    let r = UnitVector3 { x: ct, y: st, z: 0.0 };
    let a = Su2Element::I_SIGMA_Z;
    let big_a = h.mul(Su2Element::exp(r, phi));
    let big_b = Su2Element::exp(r, nu);
    let b = -h.conjugate(a.inverse());
    let mut rho = RepTuple::new(big_a, big_b, a, b);
    rho.h = Some(h);
    rho.w = Some(Su2Element::MINUS_ONE);
    rho
}

fn nu_jet(phi: Jet, epsilon: f64, shape: Shape) -> Jet {
    let s = phi.sin().scale(epsilon);
    match shape {
        Shape::Sine => s,
        Shape::AlgebraicArcsine => s.asin(),
    }
}

/// Closed-form trace functions on `L_s` as jets in `(φ, θ)`.
fn sphere_trace_jets(c: SphereCoord, p: PerturbationConfig) -> [Jet; 9] {
    let phi = Jet::variable(c.phi, 0);
    let theta = Jet::variable(c.theta, 1);
    let nu = nu_jet(phi, p.epsilon, p.shape);
    let (sn, cn) = (nu.sin(), nu.cos());
    let (st, ct) = (theta.sin(), theta.cos());
    let d2 = cn.square() + sn.square() * st.square();
    let d = d2.sqrt();
    let two = Jet::constant(2.0);
    let tr_a = -(two * cn * ct * phi.sin()) / d;
    let tr_b = two * cn;
    let tr_aa = two * (phi + nu).sin() * st / d;
    let tr_ba = Jet::constant(0.0);
    let tr_ab = -(two * (phi - nu).sin() * st) / d;
    let tr_bb = Jet::constant(4.0) * sn.square() * cn * st * ct / d2;
    let tr_ab_big = -(two * cn * ct * (phi + nu).sin()) / d;
    let tr_aba = two * st * (phi + nu + nu).sin() / d;
    let mu = (cn.square() - sn.square() * st.square()) / d2;
    [tr_a, tr_b, tr_aa, tr_ba, tr_ab, tr_bb, tr_ab_big, tr_aba, mu]
}

/// Trace functions of `L_s(φ, θ)` from their closed forms.
pub fn sphere_traces(c: SphereCoord, p: PerturbationConfig) -> TraceProfile {
    TraceProfile(sphere_trace_jets(c, p).map(|j| j.v))
}

/// `(∂/∂φ, ∂/∂θ)` of a trace function along `L_s`.
pub fn sphere_chart_jacobian(c: SphereCoord, p: PerturbationConfig, f: TraceFn) -> (f64, f64) {
    let j = sphere_trace_jets(c, p)[f.index()];
    (j.d[0], j.d[1])
}

/// Values and `(φ, θ)` partials of every trace function.
pub fn sphere_traces_with_jacobian(c: SphereCoord, p: PerturbationConfig) -> (TraceProfile, [[f64; 2]; 9]) {
    let jets = sphere_trace_jets(c, p);
    (TraceProfile(jets.map(|j| j.v)), jets.map(|j| j.d))
}

/// Chart point of `L_s(φ, θ)` from the closed forms. The seams `θ ∈ {0, π}`
/// and the poles go to P3; both poles hit the double point `(π/2, 0, 0)`.
pub fn sphere_chart(c: SphereCoord, p: PerturbationConfig) -> ChartPoint {
    let phi = c.phi;
    if phi.sin() == 0.0 || phi == 0.0 || phi == PI {
        return ChartPoint::P3 { alpha: FRAC_PI_2, beta: 0.0, gamma: 0.0 };
    }
    let theta = c.theta.rem_euclid(TAU);
    let nu = p.nu(phi);
    if theta == 0.0 {
        return ChartPoint::p3(phi + FRAC_PI_2, nu, 0.0);
    }
    if theta == PI {
        return ChartPoint::p3(phi - FRAC_PI_2, nu, 0.0);
    }
    let s = if theta < PI { 1.0 } else { -1.0 };
    let (sn, cn) = nu.sin_cos();
    let (st, ct) = theta.sin_cos();
    let d2 = cn * cn + sn * sn * st * st;
    let (spn, cpn) = (phi + nu).sin_cos();
    let (smn, cmn) = (phi - nu).sin_cos();
    let c2 = cn * cn * ct * ct;
    let s2 = st * st;
    let a_hat = UnitVector3::new(-s * spn, -s * cpn, 0.0).unwrap();
    let b_hat = UnitVector3::new(
        s * (c2 * spn + s2 * smn) / d2,
        s * (c2 * cpn + s2 * cmn) / d2,
        -0.5 * (2.0 * nu).sin() * (2.0 * theta).sin() / d2,
    )
    .unwrap();
    ChartPoint::P4 { a_hat, neg_b_hat: b_hat.neg() }
}

/// Number of grid points used by [`monotonicity_check`].
pub const MONOTONICITY_GRID: usize = 10_000;

/// Checks that `F(φ) = sin(φ + ν)/sin(φ - ν)` is strictly monotone on
/// `(0, π)`, which makes `φ` recoverable from `-tr(Aa)/tr(Ab)`.
///
/// `F` runs from `(1+ε)/(1-ε)` down to `(1-ε)/(1+ε)`, so for a working
/// perturbation it is strictly decreasing. Returns false if two neighbouring
/// grid values are equal or the direction changes.
pub fn monotonicity_check(p: PerturbationConfig) -> bool {
    let n = MONOTONICITY_GRID;
    let f = |phi: f64| {
        let nu = p.nu(phi);
        (phi + nu).sin() / (phi - nu).sin()
    };
    let grid: Vec<f64> = (0..n).map(|k| PI * (k as f64 + 0.5) / n as f64).map(f).collect();
    if grid.iter().any(|v| !v.is_finite()) {
        return false;
    }
    let diffs: Vec<f64> = grid.windows(2).map(|w| w[1] - w[0]).collect();
    diffs.iter().all(|&d| d < 0.0) || diffs.iter().all(|&d| d > 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::char_variety::trace_profile;

    #[test]
    fn closed_forms_match_matrices() {
        let p = PerturbationConfig::default();
        for &(phi, theta) in &[(0.3, 0.4), (1.2, 2.9), (2.8, 4.4), (1.0, 6.0)] {
            let c = SphereCoord::new(phi, theta);
            let d = trace_profile(&sphere_rep(c, p)).distance(&sphere_traces(c, p));
            assert!(d < 1e-12, "{d}");
        }
    }

    #[test]
    fn canonical_disk_is_conjugate() {
        let c = DiskCoord::new(-2.0, 2.5);
        let k = c.canonical();
        assert!((0.0..=PI).contains(&k.chi));
        assert!(k.psi.abs() <= FRAC_PI_2);
        let d = crate::char_variety::distance(&disk_rep(c), &disk_rep(k));
        assert!(d < 1e-14);
    }
}
