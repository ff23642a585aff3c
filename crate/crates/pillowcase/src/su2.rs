//! SU(2) as unit quaternions.
//!
//! An element is stored by its coefficients in the basis `{1, iσx, iσy, iσz}`,
//! so `g = c0 + i(cx σx + cy σy + cz σz)` and `tr g = 2 c0`. With this basis
//! the product of two pure elements is
//!
//! ```text
//! (0, u)(0, v) = (-u·v, -u×v)
//! ```
//!
//! which gives `(iσx)(iσz) = iσy`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Coefficient of an SU(2) element is treated as zero below this.
pub const TRACELESS_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }
}

/// Lie algebra element `x iσx + y iσy + z iσz` of su(2).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Su2Vector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Su2Vector {
    pub const ZERO: Su2Vector = Su2Vector { x: 0.0, y: 0.0, z: 0.0 };

    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Su2Vector { x, y, z }
    }

    pub fn from_array(v: [f64; 3]) -> Self {
        Su2Vector::new(v[0], v[1], v[2])
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn basis(axis: Axis) -> Self {
        let mut v = [0.0; 3];
        v[axis.index()] = 1.0;
        Su2Vector::from_array(v)
    }

    pub fn dot(self, o: Su2Vector) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(self, o: Su2Vector) -> Su2Vector {
        Su2Vector::new(self.y * o.z - self.z * o.y, self.z * o.x - self.x * o.z, self.x * o.y - self.y * o.x)
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn scale(self, s: f64) -> Su2Vector {
        Su2Vector::new(s * self.x, s * self.y, s * self.z)
    }

    /// Lie bracket `[u, v] = uv - vu`, which in this basis is `-2 u×v`.
    pub fn bracket(self, o: Su2Vector) -> Su2Vector {
        self.cross(o).scale(-2.0)
    }

    pub fn get(self, axis: Axis) -> f64 {
        self.to_array()[axis.index()]
    }
}

impl Add for Su2Vector {
    type Output = Su2Vector;
    fn add(self, o: Su2Vector) -> Su2Vector {
        Su2Vector::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Su2Vector {
    type Output = Su2Vector;
    fn sub(self, o: Su2Vector) -> Su2Vector {
        Su2Vector::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Su2Vector {
    type Output = Su2Vector;
    fn neg(self) -> Su2Vector {
        self.scale(-1.0)
    }
}

/// A point of S².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitVector3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl UnitVector3 {
    pub const X: UnitVector3 = UnitVector3 { x: 1.0, y: 0.0, z: 0.0 };
    pub const Y: UnitVector3 = UnitVector3 { x: 0.0, y: 1.0, z: 0.0 };
    pub const Z: UnitVector3 = UnitVector3 { x: 0.0, y: 0.0, z: 1.0 };

    /// Normalizes `(x, y, z)`. Returns `None` for the zero vector.
    pub fn new(x: f64, y: f64, z: f64) -> Option<Self> {
        let n = (x * x + y * y + z * z).sqrt();
        if n < 1e-300 || !n.is_finite() {
            return None;
        }
        Some(UnitVector3 { x: x / n, y: y / n, z: z / n })
    }

    pub fn from_vector(v: Su2Vector) -> Option<Self> {
        UnitVector3::new(v.x, v.y, v.z)
    }

    pub fn as_vector(self) -> Su2Vector {
        Su2Vector::new(self.x, self.y, self.z)
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn dot(self, o: UnitVector3) -> f64 {
        self.as_vector().dot(o.as_vector())
    }

    pub fn neg(self) -> UnitVector3 {
        UnitVector3 { x: -self.x, y: -self.y, z: -self.z }
    }
}

/// Unit quaternion `c0 + cx iσx + cy iσy + cz iσz`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Su2Element {
    pub c0: f64,
    pub cx: f64,
    pub cy: f64,
    pub cz: f64,
}

impl Default for Su2Element {
    fn default() -> Self {
        Su2Element::ONE
    }
}

impl Su2Element {
    pub const ONE: Su2Element = Su2Element { c0: 1.0, cx: 0.0, cy: 0.0, cz: 0.0 };
    pub const MINUS_ONE: Su2Element = Su2Element { c0: -1.0, cx: 0.0, cy: 0.0, cz: 0.0 };
    pub const I_SIGMA_X: Su2Element = Su2Element { c0: 0.0, cx: 1.0, cy: 0.0, cz: 0.0 };
    pub const I_SIGMA_Y: Su2Element = Su2Element { c0: 0.0, cx: 0.0, cy: 1.0, cz: 0.0 };
    pub const I_SIGMA_Z: Su2Element = Su2Element { c0: 0.0, cx: 0.0, cy: 0.0, cz: 1.0 };

    /// Builds an element from raw coefficients and renormalizes.
    pub fn new(c0: f64, cx: f64, cy: f64, cz: f64) -> Self {
        Su2Element { c0, cx, cy, cz }.normalized()
    }

    /// Raw coefficients, no normalization.
    pub const fn from_raw(c0: f64, cx: f64, cy: f64, cz: f64) -> Self {
        Su2Element { c0, cx, cy, cz }
    }

    pub fn from_array(c: [f64; 4]) -> Self {
        Su2Element::new(c[0], c[1], c[2], c[3])
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.c0, self.cx, self.cy, self.cz]
    }

    /// The traceless element `i r̂·σ`.
    pub fn pure(r: UnitVector3) -> Self {
        Su2Element::from_raw(0.0, r.x, r.y, r.z)
    }

    pub fn vector(self) -> Su2Vector {
        Su2Vector::new(self.cx, self.cy, self.cz)
    }

    pub fn norm(self) -> f64 {
        (self.c0 * self.c0 + self.cx * self.cx + self.cy * self.cy + self.cz * self.cz).sqrt()
    }

    pub fn normalized(self) -> Self {
        let n = self.norm();
        if n == 0.0 || !n.is_finite() {
            return Su2Element::ONE;
        }
        Su2Element::from_raw(self.c0 / n, self.cx / n, self.cy / n, self.cz / n)
    }

    /// Quaternion product, renormalized.
    pub fn mul(self, h: Su2Element) -> Su2Element {
        self.mul_raw(h).normalized()
    }

    pub(crate) fn mul_raw(self, h: Su2Element) -> Su2Element {
        let (a0, a) = (self.c0, self.vector());
        let (b0, b) = (h.c0, h.vector());
        let v = b.scale(a0) + a.scale(b0) - a.cross(b);
        Su2Element::from_raw(a0 * b0 - a.dot(b), v.x, v.y, v.z)
    }

    pub fn inverse(self) -> Su2Element {
        Su2Element::from_raw(self.c0, -self.cx, -self.cy, -self.cz)
    }

    /// `cos t + sin t (v·iσ)`.
    pub fn exp(v: UnitVector3, angle: f64) -> Su2Element {
        let (s, c) = angle.sin_cos();
        Su2Element::from_raw(c, s * v.x, s * v.y, s * v.z)
    }

    /// Exponential of an arbitrary Lie algebra element.
    pub fn exp_algebra(v: Su2Vector) -> Su2Element {
        let t = v.norm();
        if t < 1e-300 {
            return Su2Element::ONE;
        }
        let s = t.sin() / t;
        Su2Element::from_raw(t.cos(), s * v.x, s * v.y, s * v.z)
    }

    /// Principal logarithm: the `v` with `exp_algebra(v) = self` and `|v| ≤ π`.
    pub fn log(self) -> Su2Vector {
        let vn = self.vector().norm();
        if vn < 1e-300 {
            return Su2Vector::ZERO;
        }
        let t = vn.atan2(self.c0);
        self.vector().scale(t / vn)
    }

    pub fn commutator(self, h: Su2Element) -> Su2Element {
        self.mul(h).mul(self.inverse()).mul(h.inverse())
    }

    /// `g x g⁻¹`.
    pub fn conjugate(self, x: Su2Element) -> Su2Element {
        self.mul(x).mul(self.inverse())
    }

    /// `Ad_g v`, the rotation of `v` by `g`.
    pub fn adjoint(self, v: Su2Vector) -> Su2Vector {
        let p = Su2Element::from_raw(0.0, v.x, v.y, v.z);
        self.mul_raw(p).mul_raw(self.inverse()).vector()
    }

    pub fn trace(self) -> f64 {
        2.0 * self.c0
    }

    /// `tr(g σ_i) = 2i c_i`; returns the real number `2 c_i`.
    pub fn trace_pair(self, axis: Axis) -> f64 {
        2.0 * self.vector().get(axis)
    }

    pub fn is_traceless(self) -> bool {
        self.c0.abs() <= TRACELESS_TOL
    }

    /// Max coefficient difference.
    pub fn dist(self, h: Su2Element) -> f64 {
        self.to_array().iter().zip(h.to_array()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }

    /// An element `g` with `Ad_g u = v`.
    pub fn rotation_taking(u: UnitVector3, v: UnitVector3) -> Su2Element {
        let c = u.dot(v);
        let ax = u.as_vector().cross(v.as_vector());
        let g = Su2Element::from_raw(1.0 + c, -ax.x, -ax.y, -ax.z);
        if g.norm() > 1e-8 {
            return g.normalized();
        }
        // antipodal: half turn about any axis perpendicular to u
        let helper = if u.x.abs() < 0.9 { UnitVector3::X } else { UnitVector3::Y };
        let n = u.as_vector().cross(helper.as_vector());
        Su2Element::from_raw(0.0, n.x, n.y, n.z).normalized()
    }
}

impl Mul for Su2Element {
    type Output = Su2Element;
    fn mul(self, h: Su2Element) -> Su2Element {
        Su2Element::mul(self, h)
    }
}

impl Neg for Su2Element {
    type Output = Su2Element;
    fn neg(self) -> Su2Element {
        Su2Element::from_raw(-self.c0, -self.cx, -self.cy, -self.cz)
    }
}

impl fmt::Display for Su2Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.6} + {:.6} iσx + {:.6} iσy + {:.6} iσz", self.c0, self.cx, self.cy, self.cz)
    }
}

pub fn mul(g: Su2Element, h: Su2Element) -> Su2Element {
    g.mul(h)
}

pub fn exp(v: UnitVector3, angle: f64) -> Su2Element {
    Su2Element::exp(v, angle)
}

pub fn commutator(g: Su2Element, h: Su2Element) -> Su2Element {
    g.commutator(h)
}

pub fn conjugate(g: Su2Element, x: Su2Element) -> Su2Element {
    g.conjugate(x)
}

pub fn adjoint(g: Su2Element, v: Su2Vector) -> Su2Vector {
    g.adjoint(v)
}

pub fn trace_pair(g: Su2Element, axis: Axis) -> f64 {
    g.trace_pair(axis)
}
