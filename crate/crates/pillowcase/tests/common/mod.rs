//! Shared test helpers: an independent 2×2 complex matrix model of SU(2)
//! and proptest strategies.
#![allow(dead_code)]

use num_complex::Complex64 as C;
use pillowcase::char_variety::RepTuple;
use pillowcase::su2::{Su2Element, Su2Vector, UnitVector3};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type M2 = [[C; 2]; 2];

pub fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

pub fn sigma(i: usize) -> M2 {
    let (o, z) = (c(1.0, 0.0), c(0.0, 0.0));
    match i {
        0 => [[z, o], [o, z]],
        1 => [[z, c(0.0, -1.0)], [c(0.0, 1.0), z]],
        _ => [[o, z], [z, -o]],
    }
}

pub fn identity() -> M2 {
    [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]]
}

/// `c0 I + i(cx σx + cy σy + cz σz)` assembled from the Pauli matrices.
pub fn matrix(g: Su2Element) -> M2 {
    let coeffs = [g.cx, g.cy, g.cz];
    let mut m = identity();
    for r in 0..2 {
        for s in 0..2 {
            m[r][s] *= g.c0;
        }
    }
    for (k, &ck) in coeffs.iter().enumerate() {
        let p = sigma(k);
        for r in 0..2 {
            for s in 0..2 {
                m[r][s] += c(0.0, ck) * p[r][s];
            }
        }
    }
    m
}

pub fn mat_mul(x: &M2, y: &M2) -> M2 {
    let mut m = [[c(0.0, 0.0); 2]; 2];
    for r in 0..2 {
        for s in 0..2 {
            m[r][s] = x[r][0] * y[0][s] + x[r][1] * y[1][s];
        }
    }
    m
}

pub fn adjoint_matrix(x: &M2) -> M2 {
    [[x[0][0].conj(), x[1][0].conj()], [x[0][1].conj(), x[1][1].conj()]]
}

pub fn trace(x: &M2) -> C {
    x[0][0] + x[1][1]
}

pub fn mat_dist(x: &M2, y: &M2) -> f64 {
    let mut d: f64 = 0.0;
    for r in 0..2 {
        for s in 0..2 {
            d = d.max((x[r][s] - y[r][s]).norm());
        }
    }
    d
}

/// Matrix trace of a word in matrices.
pub fn mat_product(ms: &[M2]) -> M2 {
    ms.iter().fold(identity(), |acc, m| mat_mul(&acc, m))
}

pub fn su2() -> impl Strategy<Value = Su2Element> {
    prop::array::uniform4(-1.0f64..1.0).prop_filter_map("nonzero", |c| {
        let n2: f64 = c.iter().map(|x| x * x).sum();
        (n2 > 1e-3).then(|| Su2Element::from_array(c))
    })
}

pub fn su2_vector() -> impl Strategy<Value = Su2Vector> {
    prop::array::uniform3(-2.0f64..2.0).prop_map(Su2Vector::from_array)
}

pub fn unit() -> impl Strategy<Value = UnitVector3> {
    prop::array::uniform3(-1.0f64..1.0).prop_filter_map("nonzero", |c| {
        let n2: f64 = c.iter().map(|x| x * x).sum();
        (n2 > 1e-3).then(|| UnitVector3::new(c[0], c[1], c[2]).unwrap())
    })
}

/// Random points of R(T²,2), drawn through the library's own sampler.
pub fn rep_tuple() -> impl Strategy<Value = RepTuple> {
    any::<u64>().prop_map(|seed| RepTuple::random(&mut ChaCha8Rng::seed_from_u64(seed)))
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
