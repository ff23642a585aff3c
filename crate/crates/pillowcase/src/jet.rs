//! First-order jets in two variables, for exact partial derivatives of
//! closed-form expressions.

use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Jet {
    pub v: f64,
    pub d: [f64; 2],
}

impl Jet {
    pub fn constant(v: f64) -> Jet {
        Jet { v, d: [0.0, 0.0] }
    }

    pub fn variable(v: f64, slot: usize) -> Jet {
        let mut d = [0.0, 0.0];
        d[slot] = 1.0;
        Jet { v, d }
    }

    fn chain(self, v: f64, dv: f64) -> Jet {
        Jet { v, d: [dv * self.d[0], dv * self.d[1]] }
    }

    pub fn sin(self) -> Jet {
        self.chain(self.v.sin(), self.v.cos())
    }

    pub fn cos(self) -> Jet {
        self.chain(self.v.cos(), -self.v.sin())
    }

    pub fn sqrt(self) -> Jet {
        let s = self.v.sqrt();
        self.chain(s, 0.5 / s)
    }

    pub fn asin(self) -> Jet {
        self.chain(self.v.asin(), 1.0 / (1.0 - self.v * self.v).sqrt())
    }

    pub fn square(self) -> Jet {
        self * self
    }

    pub fn scale(self, s: f64) -> Jet {
        Jet { v: s * self.v, d: [s * self.d[0], s * self.d[1]] }
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, o: Jet) -> Jet {
        Jet { v: self.v + o.v, d: [self.d[0] + o.d[0], self.d[1] + o.d[1]] }
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, o: Jet) -> Jet {
        Jet { v: self.v - o.v, d: [self.d[0] - o.d[0], self.d[1] - o.d[1]] }
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, o: Jet) -> Jet {
        Jet { v: self.v * o.v, d: [self.d[0] * o.v + self.v * o.d[0], self.d[1] * o.v + self.v * o.d[1]] }
    }
}

impl Div for Jet {
    type Output = Jet;
    fn div(self, o: Jet) -> Jet {
        let inv = 1.0 / o.v;
        let q = self.v * inv;
        Jet { v: q, d: [(self.d[0] - q * o.d[0]) * inv, (self.d[1] - q * o.d[1]) * inv] }
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(-1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quotient_rule() {
        let x = Jet::variable(0.7, 0);
        let y = Jet::variable(1.3, 1);
        let f = x.sin() / (x * y).sqrt();
        let h = 1e-6;
        let g = |x: f64, y: f64| x.sin() / (x * y).sqrt();
        let fx = (g(0.7 + h, 1.3) - g(0.7 - h, 1.3)) / (2.0 * h);
        let fy = (g(0.7, 1.3 + h) - g(0.7, 1.3 - h)) / (2.0 * h);
        assert!((f.d[0] - fx).abs() < 1e-8);
        assert!((f.d[1] - fy).abs() < 1e-8);
    }
}
