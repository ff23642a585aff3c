//! The mapping class group MCG₂(T²) and the surface braid group B₂(T²),
//! acting on the right on R(T²,2).
//!
//! Words are read left to right and applied in that order:
//! `ρ·(fg) = (ρ·f)·g`.

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::char_variety::{distance, RepTuple};
use crate::su2::Su2Element;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    Ta,
    Tb,
    TA,
    TB,
    /// ω, the involution `(A, B) ↦ (A⁻¹, B⁻¹)` on the torus.
    Omega,
    /// `s = Ta Tb⁻¹ Ta`.
    S,
    Alpha1,
    Beta1,
    Alpha2,
    Beta2,
    /// σ, the half twist exchanging the two punctures.
    Sigma,
}

impl Generator {
    pub const ALL: [Generator; 11] = [
        Generator::Ta,
        Generator::Tb,
        Generator::TA,
        Generator::TB,
        Generator::Omega,
        Generator::S,
        Generator::Alpha1,
        Generator::Beta1,
        Generator::Alpha2,
        Generator::Beta2,
        Generator::Sigma,
    ];

    pub fn token(self) -> &'static str {
        match self {
            Generator::Ta => "Ta",
            Generator::Tb => "Tb",
            Generator::TA => "TA",
            Generator::TB => "TB",
            Generator::Omega => "w",
            Generator::S => "s",
            Generator::Alpha1 => "a1",
            Generator::Beta1 => "b1",
            Generator::Alpha2 => "a2",
            Generator::Beta2 => "b2",
            Generator::Sigma => "sg",
        }
    }

    pub fn from_token(tok: &str) -> Option<Generator> {
        Generator::ALL.into_iter().find(|g| g.token() == tok)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct McgGen {
    pub gen: Generator,
    pub exp: i32,
}

impl McgGen {
    pub fn new(gen: Generator, exp: i32) -> Self {
        McgGen { gen, exp }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct McgWord(pub Vec<McgGen>);

impl McgWord {
    pub fn empty() -> Self {
        McgWord(Vec::new())
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn then(mut self, other: &McgWord) -> McgWord {
        self.0.extend_from_slice(&other.0);
        self
    }

    pub fn inverse(&self) -> McgWord {
        McgWord(self.0.iter().rev().map(|g| McgGen::new(g.gen, -g.exp)).collect())
    }

    pub fn pow(&self, n: u32) -> McgWord {
        let mut out = McgWord::empty();
        for _ in 0..n {
            out = out.then(self);
        }
        out
    }
}

impl fmt::Display for McgWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|g| match g.exp {
                1 => g.gen.token().to_string(),
                e => format!("{}^{}", g.gen.token(), e),
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
#[error("parse error at byte {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

/// Parses whitespace-separated tokens `Ta Tb TA TB w s a1 b1 a2 b2 sg`, each
/// with an optional exponent `^n`, `^+n` or `^-n`.
pub fn parse_word(text: &str) -> Result<McgWord, ParseError> {
    let mut out = Vec::new();
    let mut pos = 0;
    for tok in text.split_inclusive(char::is_whitespace) {
        let start = pos;
        pos += tok.len();
        let tok = tok.trim_end();
        if tok.is_empty() {
            continue;
        }
        let (name, exp) = match tok.split_once('^') {
            Some((name, e)) => {
                let exp = e.parse::<i32>().map_err(|_| ParseError {
                    position: start + name.len() + 1,
                    message: format!("bad exponent {e:?}"),
                })?;
                (name, exp)
            }
            None => (tok, 1),
        };
        let gen = Generator::from_token(name)
            .ok_or_else(|| ParseError { position: start, message: format!("unknown generator {name:?}") })?;
        if exp != 0 {
            out.push(McgGen::new(gen, exp));
        }
    }
    Ok(McgWord(out))
}

impl FromStr for McgWord {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_word(s)
    }
}

fn inv(g: Su2Element) -> Su2Element {
    g.inverse()
}

fn prod(xs: &[Su2Element]) -> Su2Element {
    xs.iter().fold(Su2Element::ONE, |acc, &x| acc.mul(x))
}

/// Applies one generator or its inverse. `h`, `w` are dropped.
#[allow(non_snake_case)]
pub fn act_letter(rho: &RepTuple, gen: Generator, inverse: bool) -> RepTuple {
    let (A, B, a, b) = (rho.A, rho.B, rho.a, rho.b);
    let t = |A, B, a, b| RepTuple::unchecked(A, B, a, b);
    match (gen, inverse) {
        (Generator::Ta, false) => t(A, B.mul(A), a, b),
        (Generator::Ta, true) => t(A, B.mul(inv(A)), a, b),
        (Generator::Tb, false) => t(A.mul(B), B, a, b),
        (Generator::Tb, true) => t(A.mul(inv(B)), B, a, b),
        (Generator::TA, false) => t(A, prod(&[a, A, B]), a, prod(&[A, a, b, inv(a), inv(A)])),
        (Generator::TA, true) => t(A, prod(&[inv(A), inv(a), B]), a, prod(&[inv(a), inv(A), b, A, a])),
        (Generator::TB, false) => t(prod(&[inv(a), B, A]), B, a, prod(&[inv(a), B, b, inv(B), a])),
        (Generator::TB, true) => t(prod(&[inv(B), a, A]), B, a, prod(&[inv(B), a, b, inv(a), B])),
        (Generator::Omega, _) => t(inv(A), inv(B), prod(&[inv(B), inv(A), b, A, B]), prod(&[inv(A), inv(B), a, B, A])),
        (Generator::S, false) => {
            let r = act_letter(rho, Generator::Ta, false);
            let r = act_letter(&r, Generator::Tb, true);
            act_letter(&r, Generator::Ta, false)
        }
        (Generator::S, true) => {
            let r = act_letter(rho, Generator::Ta, true);
            let r = act_letter(&r, Generator::Tb, false);
            act_letter(&r, Generator::Ta, true)
        }
        (Generator::Alpha1, false) => {
            t(A, inv(a).mul(B), prod(&[A, a, inv(A)]), prod(&[A, inv(a), inv(A), b, A, a, inv(A)]))
        }
        (Generator::Alpha1, true) => t(A, prod(&[inv(A), a, A, B]), prod(&[inv(A), a, A]), prod(&[a, b, inv(a)])),
        (Generator::Beta1, false) => t(a.mul(A), B, prod(&[B, a, inv(B)]), prod(&[a, b, inv(a)])),
        (Generator::Beta1, true) => {
            let a1 = prod(&[inv(B), a, B]);
            t(inv(a1).mul(A), B, a1, prod(&[inv(a1), b, a1]))
        }
        (Generator::Alpha2, false) => t(A, prod(&[a, inv(b), inv(a), B]), a, prod(&[A, a, b, inv(a), inv(A)])),
        (Generator::Alpha2, true) => t(A, prod(&[inv(A), b, A, B]), a, prod(&[inv(a), inv(A), b, A, a])),
        (Generator::Beta2, false) => t(b.mul(A), B, a, prod(&[inv(a), B, b, inv(B), a])),
        (Generator::Beta2, true) => {
            let b1 = prod(&[inv(B), a, b, inv(a), B]);
            t(inv(b1).mul(A), B, a, b1)
        }
        (Generator::Sigma, false) => t(A, B, b, prod(&[inv(b), a, b])),
        (Generator::Sigma, true) => t(A, B, prod(&[a, b, inv(a)]), a),
    }
}

/// `ρ·w`, applying letters left to right.
pub fn act(rho: &RepTuple, w: &McgWord) -> RepTuple {
    let mut out = rho.core();
    for g in &w.0 {
        for _ in 0..g.exp.unsigned_abs() {
            out = act_letter(&out, g.gen, g.exp < 0);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct Relation {
    pub name: &'static str,
    pub lhs: McgWord,
    pub rhs: McgWord,
}

impl Relation {
    fn new(name: &'static str, lhs: &str, rhs: &str) -> Self {
        Relation {
            name,
            lhs: parse_word(lhs).expect("built-in relation"),
            rhs: parse_word(rhs).expect("built-in relation"),
        }
    }
}

/// Defining relations of MCG₂(T²) and B₂(T²).
pub fn relations() -> Vec<Relation> {
    vec![
        Relation::new("Ta Tb^-1 Ta = Tb^-1 Ta Tb^-1", "Ta Tb^-1 Ta", "Tb^-1 Ta Tb^-1"),
        Relation::new("TA Tb^-1 TA = Tb^-1 TA Tb^-1", "TA Tb^-1 TA", "Tb^-1 TA Tb^-1"),
        Relation::new("Ta TA = TA Ta", "Ta TA", "TA Ta"),
        Relation::new("(Tb^-1 Ta TA)^4 = 1", "Tb^-1 Ta TA Tb^-1 Ta TA Tb^-1 Ta TA Tb^-1 Ta TA", ""),
        Relation::new("TB = Ta TA^-1 Tb TA Ta^-1", "TB", "Ta TA^-1 Tb TA Ta^-1"),
        Relation::new("w^2 = 1", "w w", ""),
        Relation::new("a2 = sg^-1 a1 sg^-1", "a2", "sg^-1 a1 sg^-1"),
        Relation::new("b2 = sg b1 sg", "b2", "sg b1 sg"),
        Relation::new("a1 a2 = a2 a1", "a1 a2", "a2 a1"),
        Relation::new("b1 b2 = b2 b1", "b1 b2", "b2 b1"),
        Relation::new("b1^-1 a1^-1 b1 a1 = sg^2", "b1^-1 a1^-1 b1 a1", "sg^2"),
        Relation::new("b1^-1 a2 b1 a2^-1 = sg^2", "b1^-1 a2 b1 a2^-1", "sg^2"),
    ]
}

/// Push-map images of the braid generators, the σ² consistency check, and
/// the commuting pair coming from π₁ of the homeomorphism group.
pub fn birman_relations() -> Vec<Relation> {
    vec![
        Relation::new("delta(a1) = Ta TA^-1", "a1", "Ta TA^-1"),
        Relation::new("delta(a2) = TA Ta^-1", "a2", "TA Ta^-1"),
        Relation::new("delta(b1) = Tb TB^-1", "b1", "Tb TB^-1"),
        Relation::new("delta(b2) = TB Tb^-1", "b2", "TB Tb^-1"),
        Relation::new("delta(sg) = s^2 w", "sg", "s s w"),
        Relation::new("delta(sg)^2 = sg^2", "s s w s s w", "sg sg"),
        Relation::new("a1 a2 commutes with b1 b2", "a1 a2 b1 b2", "b1 b2 a1 a2"),
    ]
}

/// Images under the forgetful map g, checked on tuples `(A, B, 1, 1)` with
/// commuting `A`, `B`: the puncture loops are filled in.
pub fn forgetful_relations() -> Vec<Relation> {
    vec![
        Relation::new("g(w) = s^2", "w", "s s"),
        Relation::new("g(TA) = Ta", "TA", "Ta"),
        Relation::new("g(TB) = Tb", "TB", "Tb"),
        Relation::new("g(a1) = 1", "a1", ""),
        Relation::new("g(b1) = 1", "b1", ""),
        Relation::new("g(a2) = 1", "a2", ""),
        Relation::new("g(b2) = 1", "b2", ""),
        Relation::new("g(sg) = 1", "sg", ""),
    ]
}

/// Residual threshold for every relation check.
pub const RELATION_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct RelationReport {
    pub samples: usize,
    /// `(relation name, max residual)` in the order checked.
    pub entries: Vec<(String, f64)>,
}

impl RelationReport {
    pub fn max_residual(&self) -> f64 {
        self.entries.iter().map(|e| e.1).fold(0.0, f64::max)
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
#[error("relation {relation} fails with residual {residual:e} at {tuple:?}")]
pub struct RelationViolation {
    pub relation: String,
    pub residual: f64,
    pub tuple: RepTuple,
}

fn check(rels: &[Relation], tuples: &[RepTuple]) -> Result<RelationReport, RelationViolation> {
    let mut entries = Vec::with_capacity(rels.len());
    for rel in rels {
        let (worst, at) =
            tuples.par_iter().map(|rho| (distance(&act(rho, &rel.lhs), &act(rho, &rel.rhs)), *rho)).reduce(
                || (0.0, RepTuple::unchecked(Su2Element::ONE, Su2Element::ONE, Su2Element::ONE, Su2Element::ONE)),
                |x, y| if y.0 > x.0 { y } else { x },
            );
        if !(worst < RELATION_TOL) {
            return Err(RelationViolation { relation: rel.name.to_string(), residual: worst, tuple: at });
        }
        entries.push((rel.name.to_string(), worst));
    }
    Ok(RelationReport { samples: tuples.len(), entries })
}

pub fn random_tuples(samples: usize, seed: u64) -> Vec<RepTuple> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples).map(|_| RepTuple::random(&mut rng)).collect()
}

/// Checks every relation of [`relations`] on `samples` random tuples.
pub fn verify_relations(samples: usize, seed: u64) -> Result<RelationReport, RelationViolation> {
    check(&relations(), &random_tuples(samples, seed))
}

/// Checks the push-map relations on random tuples and the forgetful-map
/// relations on random abelian tuples `(A, B, 1, 1)`.
pub fn birman_checks(samples: usize, seed: u64) -> Result<RelationReport, RelationViolation> {
    let mut report = check(&birman_relations(), &random_tuples(samples, seed))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9);
    let abelian: Vec<RepTuple> = (0..samples)
        .map(|_| {
            let axis = crate::char_variety::random_unit(&mut rng);
            let x: f64 = rand::Rng::gen_range(&mut rng, -3.0..3.0);
            let y: f64 = rand::Rng::gen_range(&mut rng, -3.0..3.0);
            RepTuple::unchecked(Su2Element::exp(axis, x), Su2Element::exp(axis, y), Su2Element::ONE, Su2Element::ONE)
        })
        .collect();
    let g = check(&forgetful_relations(), &abelian)?;
    report.entries.extend(g.entries);
    Ok(report)
}
