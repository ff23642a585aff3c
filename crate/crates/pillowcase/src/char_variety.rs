//! The character variety R(T²,2) of the twice-punctured torus.
//!
//! Points are conjugacy classes of tuples `(A, B, a, b)` with `a`, `b`
//! traceless and `[A,B]ab = 1`. The μ-map `½ tr[A,B]` splits the space into
//! the open piece `P4 = μ⁻¹([-1,1))` and the closed piece `P3 = μ⁻¹(1)`.
//! Each piece has an analytic normal form; see [`to_chart_p3`] and
//! [`to_chart_p4`].

use std::f64::consts::{PI, TAU};

use rand::Rng;
use thiserror::Error;

use crate::su2::{Su2Element, UnitVector3};

/// `|μ - 1|` below this puts a point in P3.
pub const TOL_CHART: f64 = 1e-8;

/// Relation and tracelessness residual allowed for a constructed tuple.
pub const RELATION_TOL: f64 = 1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ChartError {
    #[error("point is not in P3 (mu = {mu})")]
    NotInP3 { mu: f64 },
    #[error("point is not in P4 (mu = {mu})")]
    NotInP4 { mu: f64 },
    #[error("normal form not reached: {0}")]
    NormalizationFailure(String),
    #[error("chart pair lies on the diagonal")]
    OnDiagonal,
}

#[allow(non_snake_case)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RepTuple {
    pub A: Su2Element,
    pub B: Su2Element,
    pub a: Su2Element,
    pub b: Su2Element,
    /// Extra generators of the solid-torus group when the tuple comes from
    /// the perturbed sphere Lagrangian.
    pub h: Option<Su2Element>,
    pub w: Option<Su2Element>,
}

#[allow(non_snake_case)]
impl RepTuple {
    /// Builds a tuple; debug builds assert the defining relations.
    pub fn new(A: Su2Element, B: Su2Element, a: Su2Element, b: Su2Element) -> Self {
        let rho = RepTuple::unchecked(A, B, a, b);
        debug_assert!(
            rho.invariant_residual() < RELATION_TOL,
            "tuple violates [A,B]ab = 1 or tracelessness: {}",
            rho.invariant_residual()
        );
        rho
    }

    /// Builds a tuple without checking anything. Used for substitution
    /// experiments on tuples that are not points of R(T²,2).
    pub fn unchecked(A: Su2Element, B: Su2Element, a: Su2Element, b: Su2Element) -> Self {
        RepTuple { A, B, a, b, h: None, w: None }
    }

    /// Samples a random point: `A`, `B` Haar-uniform, `a` uniform on the
    /// circle of traceless elements with `[A,B]a` traceless, and
    /// `b = ([A,B] a)⁻¹`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let A = random_su2(rng);
        let B = random_su2(rng);
        let c = A.commutator(B).vector();
        let a = loop {
            let u = random_unit(rng).as_vector();
            let perp = match UnitVector3::from_vector(c) {
                Some(n) if c.norm() > 1e-12 => u - n.as_vector().scale(u.dot(n.as_vector())),
                _ => u,
            };
            if let Some(r) = UnitVector3::from_vector(perp).filter(|_| perp.norm() > 1e-3) {
                break Su2Element::pure(r);
            }
        };
        let b = A.commutator(B).mul(a).inverse();
        RepTuple::new(A, B, a, b)
    }

    /// Max of `|[A,B]ab - 1|` and the two trace defects.
    pub fn relation_residual(&self) -> f64 {
        self.A.commutator(self.B).mul(self.a).mul(self.b).dist(Su2Element::ONE)
    }

    pub fn invariant_residual(&self) -> f64 {
        self.relation_residual().max(self.a.c0.abs()).max(self.b.c0.abs())
    }

    /// `g ρ g⁻¹`, applied to every slot.
    pub fn conjugate(&self, g: Su2Element) -> RepTuple {
        RepTuple {
            A: g.conjugate(self.A),
            B: g.conjugate(self.B),
            a: g.conjugate(self.a),
            b: g.conjugate(self.b),
            h: self.h.map(|h| g.conjugate(h)),
            w: self.w.map(|w| g.conjugate(w)),
        }
    }

    /// Drops `h` and `w`.
    pub fn core(&self) -> RepTuple {
        RepTuple::unchecked(self.A, self.B, self.a, self.b)
    }
}

pub fn random_su2<R: Rng + ?Sized>(rng: &mut R) -> Su2Element {
    loop {
        let c: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        let n2: f64 = c.iter().map(|x| x * x).sum();
        if n2 > 1e-4 && n2 <= 1.0 {
            return Su2Element::from_array(c);
        }
    }
}

pub fn random_unit<R: Rng + ?Sized>(rng: &mut R) -> UnitVector3 {
    loop {
        let c: [f64; 3] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        let n2: f64 = c.iter().map(|x| x * x).sum();
        if n2 > 1e-4 && n2 <= 1.0 {
            return UnitVector3::new(c[0], c[1], c[2]).unwrap();
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Chart {
    P3,
    P4,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ChartPoint {
    /// `A = e^{iασz}`, `B = e^{iβσz}`, `a = iσx cos γ + iσz sin γ`, `b = a⁻¹`.
    P3 { alpha: f64, beta: f64, gamma: f64 },
    /// The pair `(â, -b̂)`, a point of S²×S² off the diagonal.
    P4 { a_hat: UnitVector3, neg_b_hat: UnitVector3 },
}

impl ChartPoint {
    pub fn chart(&self) -> Chart {
        match self {
            ChartPoint::P3 { .. } => Chart::P3,
            ChartPoint::P4 { .. } => Chart::P4,
        }
    }

    /// Normalizes P3 coordinates to the fundamental domain; P4 points pass
    /// through.
    pub fn p3(alpha: f64, beta: f64, gamma: f64) -> ChartPoint {
        let (alpha, beta, gamma) = normalize_p3(alpha, beta, gamma);
        ChartPoint::P3 { alpha, beta, gamma }
    }

    pub fn b_hat(&self) -> Option<UnitVector3> {
        match self {
            ChartPoint::P4 { neg_b_hat, .. } => Some(neg_b_hat.neg()),
            ChartPoint::P3 { .. } => None,
        }
    }

    /// Coordinate distance. P3 points are compared after normalization, and
    /// points in different charts are infinitely far apart.
    pub fn distance(&self, other: &ChartPoint) -> f64 {
        match (self, other) {
            (ChartPoint::P3 { alpha, beta, gamma }, ChartPoint::P3 { alpha: a2, beta: b2, gamma: g2 }) => {
                let (x1, y1, z1) = normalize_p3(*alpha, *beta, *gamma);
                let (x2, y2, z2) = normalize_p3(*a2, *b2, *g2);
                let da = (x1 - x2).abs();
                let da = da.min(TAU - da);
                da.max((y1 - y2).abs()).max((z1 - z2).abs())
            }
            (ChartPoint::P4 { a_hat, neg_b_hat }, ChartPoint::P4 { a_hat: a2, neg_b_hat: n2 }) => {
                let d1 = (a_hat.as_vector() - a2.as_vector()).norm();
                let d2 = (neg_b_hat.as_vector() - n2.as_vector()).norm();
                d1.max(d2)
            }
            _ => f64::INFINITY,
        }
    }
}

/// Wraps `x` into `(-π, π]`.
pub(crate) fn wrap_pi(x: f64) -> f64 {
    let y = x.rem_euclid(TAU);
    if y > PI {
        y - TAU
    } else {
        y
    }
}

/// Brings `(α, β, γ)` into the fundamental domain `α ∈ [0,2π)`, `β ∈ [0,π]`,
/// `γ ∈ [-π/2, π/2]`, using `(α,β,γ) ~ (α+2π,β,γ) ~ (α,β+2π,γ) ~ (-α,-β,-γ)`
/// together with `γ ~ π - γ` (conjugation by iσz). On the edges β ∈ {0, π}
/// the extra symmetry puts α in `[0, π]`; at the four corners γ is 0.
pub fn normalize_p3(alpha: f64, beta: f64, gamma: f64) -> (f64, f64, f64) {
    const EDGE: f64 = 1e-12;
    let (mut alpha, mut beta, mut gamma) = (alpha, wrap_pi(beta), gamma);
    if beta < 0.0 {
        alpha = -alpha;
        beta = -beta;
        gamma = -gamma;
    }
    alpha = alpha.rem_euclid(TAU);
    if alpha >= TAU - EDGE {
        alpha = 0.0;
    }
    gamma = wrap_pi(gamma);
    if gamma > PI / 2.0 + EDGE {
        gamma = PI - gamma;
    } else if gamma < -PI / 2.0 - EDGE {
        gamma = -PI - gamma;
    }
    let on_edge = beta < EDGE || (PI - beta) < EDGE;
    if on_edge {
        beta = if beta < EDGE { 0.0 } else { PI };
        if alpha > PI + EDGE {
            alpha = TAU - alpha;
            gamma = -gamma;
        }
        let corner = alpha < EDGE || (alpha - PI).abs() < EDGE;
        if corner {
            alpha = if alpha < EDGE { 0.0 } else { PI };
            gamma = 0.0;
        }
    }
    (alpha, beta, gamma)
}

pub fn mu(rho: &RepTuple) -> f64 {
    0.5 * rho.A.commutator(rho.B).trace()
}

pub fn classify(rho: &RepTuple) -> Chart {
    if (mu(rho) - 1.0).abs() < TOL_CHART {
        Chart::P3
    } else {
        Chart::P4
    }
}

/// Chart point in whichever piece `rho` lies.
pub fn to_chart(rho: &RepTuple) -> Result<ChartPoint, ChartError> {
    match classify(rho) {
        Chart::P3 => to_chart_p3(rho),
        Chart::P4 => to_chart_p4(rho),
    }
}

/// The normal form with coordinates `(α, β, γ)`.
pub fn p3_normal_form(alpha: f64, beta: f64, gamma: f64) -> RepTuple {
    let a = Su2Element::new(0.0, gamma.cos(), 0.0, gamma.sin());
    RepTuple::new(Su2Element::exp(UnitVector3::Z, alpha), Su2Element::exp(UnitVector3::Z, beta), a, a.inverse())
}

/// P3 coordinates. `A` and `B` commute, so both lie on a common axis; that
/// axis is rotated to `+z`, then `a` is rotated about `z` into the xz-plane.
pub fn to_chart_p3(rho: &RepTuple) -> Result<ChartPoint, ChartError> {
    let m = mu(rho);
    if (m - 1.0).abs() >= TOL_CHART {
        return Err(ChartError::NotInP3 { mu: m });
    }
    let va = rho.A.vector();
    let vb = rho.B.vector();
    let axis = if va.norm() >= vb.norm() { va } else { vb };
    let g1 = match UnitVector3::from_vector(axis) {
        Some(u) if axis.norm() > 1e-14 => Su2Element::rotation_taking(u, UnitVector3::Z),
        // both central: a pillowcase point, only a matters up to conjugation
        _ => Su2Element::ONE,
    };
    let big_a = g1.conjugate(rho.A);
    let big_b = g1.conjugate(rho.B);
    let off_axis = big_a.cx.hypot(big_a.cy).max(big_b.cx.hypot(big_b.cy));
    if off_axis > 1e-6 {
        return Err(ChartError::NormalizationFailure(format!("A and B are not coaxial (off-axis part {off_axis:e})")));
    }
    let alpha = big_a.cz.atan2(big_a.c0);
    let beta = big_b.cz.atan2(big_b.c0);
    let a = g1.conjugate(rho.a);
    // rotating about z keeps A, B and moves a's xy-part onto +x
    let gamma = a.cz.atan2(a.cx.hypot(a.cy));
    Ok(ChartPoint::p3(alpha, beta, gamma))
}

/// P4 coordinates `(â, -b̂)` read off the unique normal form in which `B` has
/// positive iσz part only and `A` has zero iσy part and positive iσx part.
pub fn to_chart_p4(rho: &RepTuple) -> Result<ChartPoint, ChartError> {
    let m = mu(rho);
    if (m - 1.0).abs() < TOL_CHART {
        return Err(ChartError::NotInP4 { mu: m });
    }
    let g = p4_normalizer(rho)?;
    let a = g.conjugate(rho.a);
    let b = g.conjugate(rho.b);
    let a_hat = UnitVector3::from_vector(a.vector())
        .ok_or_else(|| ChartError::NormalizationFailure("a has no vector part".into()))?;
    let b_hat = UnitVector3::from_vector(b.vector())
        .ok_or_else(|| ChartError::NormalizationFailure("b has no vector part".into()))?;
    Ok(ChartPoint::P4 { a_hat, neg_b_hat: b_hat.neg() })
}

/// The element conjugating `rho` into the P4 normal form.
pub(crate) fn p4_normalizer(rho: &RepTuple) -> Result<Su2Element, ChartError> {
    let vb = rho.B.vector();
    if vb.norm() < 1e-12 {
        return Err(ChartError::NormalizationFailure("B is central".into()));
    }
    let u = UnitVector3::from_vector(vb).unwrap();
    let g1 = Su2Element::rotation_taking(u, UnitVector3::Z);
    let a1 = g1.conjugate(rho.A);
    let rxy = a1.cx.hypot(a1.cy);
    if rxy < 1e-12 {
        return Err(ChartError::NormalizationFailure("A is coaxial with B".into()));
    }
    let dir = UnitVector3::new(a1.cx, a1.cy, 0.0).unwrap();
    let g2 = Su2Element::rotation_taking(dir, UnitVector3::X);
    Ok(g2.mul(g1))
}

/// Inverse of [`to_chart_p4`], up to conjugation.
pub fn from_chart_p4(pt: &ChartPoint) -> Result<RepTuple, ChartError> {
    let ChartPoint::P4 { a_hat, neg_b_hat } = *pt else {
        return Err(ChartError::NormalizationFailure("expected a P4 chart point".into()));
    };
    let b_hat = neg_b_hat.neg();
    let a = Su2Element::pure(a_hat);
    let b = Su2Element::pure(b_hat);
    let t = -a_hat.dot(b_hat);
    if t >= 1.0 - 1e-12 {
        return Err(ChartError::OnDiagonal);
    }
    if t <= -1.0 + 1e-12 {
        return Ok(RepTuple::new(Su2Element::I_SIGMA_X, Su2Element::I_SIGMA_Z, a, b));
    }
    // [A,B] = (ab)⁻¹ = t + i sqrt(1-t²) v̂·σ
    let ab = a.mul(b);
    let vhat = ab.vector().scale(-1.0 / ab.vector().norm());
    let z = vhat.z.clamp(-1.0, 1.0);
    let cot_beta = -z * ((1.0 + t) / (1.0 - t)).sqrt();
    let beta = 1.0_f64.atan2(cot_beta);
    let alpha = vhat.x.atan2(vhat.y) - beta;
    let c2b = (2.0 * beta).cos();
    let r = ((t - c2b) / (1.0 - c2b)).max(0.0).sqrt();
    let sx = ((1.0 - t) / (1.0 - c2b)).min(1.0).sqrt();
    let big_a = Su2Element::new(r * alpha.cos(), sx, 0.0, r * alpha.sin());
    let big_b = Su2Element::exp(UnitVector3::Z, beta);
    let rho = RepTuple::unchecked(big_a, big_b, a, b);
    if rho.relation_residual() > 1e-8 {
        return Err(ChartError::NormalizationFailure(format!("reconstruction residual {:e}", rho.relation_residual())));
    }
    Ok(rho)
}

/// The conjugation-invariant trace functions used to identify points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TraceFn {
    A,
    B,
    Aa,
    Ba,
    Ab,
    Bb,
    AB,
    ABa,
    /// `½ tr[A,B]`.
    Mu,
}

impl TraceFn {
    pub const ALL: [TraceFn; 9] = [
        TraceFn::A,
        TraceFn::B,
        TraceFn::Aa,
        TraceFn::Ba,
        TraceFn::Ab,
        TraceFn::Bb,
        TraceFn::AB,
        TraceFn::ABa,
        TraceFn::Mu,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            TraceFn::A => "tr A",
            TraceFn::B => "tr B",
            TraceFn::Aa => "tr Aa",
            TraceFn::Ba => "tr Ba",
            TraceFn::Ab => "tr Ab",
            TraceFn::Bb => "tr Bb",
            TraceFn::AB => "tr AB",
            TraceFn::ABa => "tr ABa",
            TraceFn::Mu => "mu",
        }
    }

    pub fn eval(self, rho: &RepTuple) -> f64 {
        let (big_a, big_b, a, b) = (rho.A, rho.B, rho.a, rho.b);
        match self {
            TraceFn::A => big_a.trace(),
            TraceFn::B => big_b.trace(),
            TraceFn::Aa => big_a.mul(a).trace(),
            TraceFn::Ba => big_b.mul(a).trace(),
            TraceFn::Ab => big_a.mul(b).trace(),
            TraceFn::Bb => big_b.mul(b).trace(),
            TraceFn::AB => big_a.mul(big_b).trace(),
            TraceFn::ABa => big_a.mul(big_b).mul(a).trace(),
            TraceFn::Mu => mu(rho),
        }
    }
}

/// Values of every [`TraceFn`], indexed by [`TraceFn::index`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceProfile(pub [f64; 9]);

impl TraceProfile {
    pub fn get(&self, f: TraceFn) -> f64 {
        self.0[f.index()]
    }

    /// Max absolute difference.
    pub fn distance(&self, other: &TraceProfile) -> f64 {
        self.0.iter().zip(other.0.iter()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
    }
}

pub fn trace_profile(rho: &RepTuple) -> TraceProfile {
    TraceProfile(TraceFn::ALL.map(|f| f.eval(rho)))
}

pub fn distance(r1: &RepTuple, r2: &RepTuple) -> f64 {
    trace_profile(r1).distance(&trace_profile(r2))
}

/// Lie-algebra vector part of a traceless element.
pub fn hat(g: Su2Element) -> Option<UnitVector3> {
    UnitVector3::from_vector(g.vector())
}
