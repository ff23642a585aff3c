//! Constrained group cohomology `H¹_c(Γ; Ad ρ)` for finitely presented
//! groups with scalar constraints, as finite-dimensional linear algebra.
//!
//! A cochain is `η ∈ 𝔤ⁿ`, one Lie algebra vector per generator, and moves the
//! basepoint by `ρ_t(s_k) = e^{t η_k} ρ(s_k)`. The linearized map `c` stacks
//! the right-trivialized derivatives of the relation words (3 rows each) on
//! top of the derivatives of the constraints (1 row each).

use std::fmt;

use nalgebra::{DMatrix, Matrix3};
use thiserror::Error;

use crate::lagrangians::{self, DiskCoord, Shape, SphereCoord};
use crate::su2::{Axis, Su2Element, Su2Vector};

/// Singular values below `RANK_RTOL · σ_max` count as zero.
pub const RANK_RTOL: f64 = 1e-7;

/// Relations and constraints must hold to this at a basepoint.
pub const BASEPOINT_TOL: f64 = 1e-8;

/// Step of the Richardson difference used for `c₁`.
pub const EPSILON_STEP: f64 = 1e-3;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CohomologyError {
    #[error("basepoint violates {what} by {residual:e}")]
    InvalidBasepoint { what: String, residual: f64 },
    #[error("expected {expected} generator images, got {got}")]
    WrongArity { expected: usize, got: usize },
    #[error("presentation parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

/// A word in the free group on the generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GroupWord(pub Vec<Letter>);

impl GroupWord {
    pub fn eval(&self, rho: &[Su2Element]) -> Su2Element {
        self.0.iter().fold(Su2Element::ONE, |acc, l| {
            let g = rho[l.gen];
            acc.mul(if l.inverse { g.inverse() } else { g })
        })
    }

    /// `M` with `(dρ_t(w)/dt) ρ(w)⁻¹ = M η`, a 3 × 3n matrix.
    pub fn differential(&self, rho: &[Su2Element]) -> DMatrix<f64> {
        let n = rho.len();
        let mut m = DMatrix::zeros(3, 3 * n);
        let mut prefix = Su2Element::ONE;
        for l in &self.0 {
            let g = rho[l.gen];
            if l.inverse {
                prefix = prefix.mul(g.inverse());
                let ad = adjoint_matrix(prefix);
                let mut block = m.view_mut((0, 3 * l.gen), (3, 3));
                block -= ad;
            } else {
                let ad = adjoint_matrix(prefix);
                let mut block = m.view_mut((0, 3 * l.gen), (3, 3));
                block += ad;
                prefix = prefix.mul(g);
            }
        }
        m
    }
}

/// Matrix of `Ad_g` on `(x, y, z)` coordinates.
pub fn adjoint_matrix(g: Su2Element) -> Matrix3<f64> {
    let cols = Axis::ALL.map(|ax| g.adjoint(Su2Vector::basis(ax)));
    Matrix3::from_fn(|i, j| cols[j].to_array()[i])
}

/// `ρ(word) = ±1`.
#[derive(Debug, Clone, PartialEq)]
pub struct RelationWord {
    pub word: GroupWord,
    pub negative: bool,
}

impl RelationWord {
    fn target(&self) -> Su2Element {
        if self.negative {
            Su2Element::MINUS_ONE
        } else {
            Su2Element::ONE
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Atom {
    /// `tr ρ(w)`.
    Trace(GroupWord),
    /// `tr(ρ(w)σ_i)` as the real number `2 c_i`.
    TracePair(GroupWord, Axis),
}

impl Atom {
    fn word(&self) -> &GroupWord {
        match self {
            Atom::Trace(w) | Atom::TracePair(w, _) => w,
        }
    }

    fn value(&self, rho: &[Su2Element]) -> f64 {
        match self {
            Atom::Trace(w) => w.eval(rho).trace(),
            Atom::TracePair(w, ax) => w.eval(rho).trace_pair(*ax),
        }
    }

    /// Row vector `d atom` on `𝔤ⁿ`.
    fn differential(&self, rho: &[Su2Element]) -> DMatrix<f64> {
        let w = self.word();
        let g = w.eval(rho);
        let m = w.differential(rho);
        let gv = g.vector();
        match self {
            // tr((0,v) g) = -2 v·g_vec
            Atom::Trace(_) => {
                let row = nalgebra::RowVector3::new(gv.x, gv.y, gv.z) * -2.0;
                DMatrix::from_row_slice(1, 3, row.as_slice()) * m
            }
            // vec((0,v) g) = g0 v + g_vec × v
            Atom::TracePair(_, ax) => {
                let cross = Matrix3::new(0.0, -gv.z, gv.y, gv.z, 0.0, -gv.x, -gv.y, gv.x, 0.0);
                let l = (Matrix3::identity() * g.c0 + cross) * 2.0;
                let row = l.row(ax.index()).into_owned();
                DMatrix::from_row_slice(1, 3, row.transpose().as_slice()) * m
            }
        }
    }
}

/// `coeff · ε^eps_power · Π atomᵖ`.
#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub coeff: f64,
    pub eps_power: u32,
    pub factors: Vec<(Atom, u32)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConstraintKind {
    Trace,
    TracePair,
    /// `ε tr(ρ(λ)σ_i) - tr(ρ(μ)σ_i)`.
    PerturbationDifference,
    Polynomial,
}

/// A scalar constraint `Σ terms = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub terms: Vec<Term>,
}

impl Constraint {
    pub fn trace(w: GroupWord) -> Self {
        Constraint { terms: vec![Term { coeff: 1.0, eps_power: 0, factors: vec![(Atom::Trace(w), 1)] }] }
    }

    pub fn trace_pair(w: GroupWord, axis: Axis) -> Self {
        Constraint { terms: vec![Term { coeff: 1.0, eps_power: 0, factors: vec![(Atom::TracePair(w, axis), 1)] }] }
    }

    pub fn perturbation_difference(lambda: GroupWord, mu: GroupWord, axis: Axis) -> Self {
        Constraint {
            terms: vec![
                Term { coeff: 1.0, eps_power: 1, factors: vec![(Atom::TracePair(lambda, axis), 1)] },
                Term { coeff: -1.0, eps_power: 0, factors: vec![(Atom::TracePair(mu, axis), 1)] },
            ],
        }
    }

    pub fn kind(&self) -> ConstraintKind {
        let simple = |t: &Term| t.factors.len() == 1 && t.factors[0].1 == 1;
        match self.terms.as_slice() {
            [t] if simple(t) && t.eps_power == 0 => match t.factors[0].0 {
                Atom::Trace(_) => ConstraintKind::Trace,
                Atom::TracePair(..) => ConstraintKind::TracePair,
            },
            [t1, t2]
                if simple(t1)
                    && simple(t2)
                    && t1.eps_power == 1
                    && t2.eps_power == 0
                    && matches!(
                        (&t1.factors[0].0, &t2.factors[0].0),
                        (Atom::TracePair(_, x), Atom::TracePair(_, y)) if x == y
                    ) =>
            {
                ConstraintKind::PerturbationDifference
            }
            _ => ConstraintKind::Polynomial,
        }
    }

    pub fn value(&self, rho: &[Su2Element], eps: f64) -> f64 {
        self.terms
            .iter()
            .map(|t| {
                t.factors
                    .iter()
                    .fold(t.coeff * eps.powi(t.eps_power as i32), |acc, (a, p)| acc * a.value(rho).powi(*p as i32))
            })
            .sum()
    }

    fn differential(&self, rho: &[Su2Element], eps: f64) -> DMatrix<f64> {
        let mut row = DMatrix::zeros(1, 3 * rho.len());
        for t in &self.terms {
            let scale = t.coeff * eps.powi(t.eps_power as i32);
            if scale == 0.0 {
                continue;
            }
            let values: Vec<f64> = t.factors.iter().map(|(a, _)| a.value(rho)).collect();
            for (l, (atom, p)) in t.factors.iter().enumerate() {
                let mut c = scale * (*p as f64) * values[l].powi(*p as i32 - 1);
                for (m, (_, q)) in t.factors.iter().enumerate() {
                    if m != l {
                        c *= values[m].powi(*q as i32);
                    }
                }
                if c != 0.0 {
                    row += atom.differential(rho) * c;
                }
            }
        }
        row
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ConstrainedPresentation {
    pub generators: Vec<String>,
    pub relations: Vec<RelationWord>,
    pub constraints: Vec<Constraint>,
}

impl ConstrainedPresentation {
    pub fn n(&self) -> usize {
        self.generators.len()
    }

    /// Looks up generator names in a word such as `"h a B h^-1"`.
    pub fn word(&self, text: &str) -> Result<GroupWord, CohomologyError> {
        parse_group_word(&self.generators, text, 1, 1)
    }

    /// Max violation of relations and constraints at `rho`.
    pub fn check_basepoint(&self, rho: &[Su2Element], eps: f64) -> Result<(), CohomologyError> {
        if rho.len() != self.n() {
            return Err(CohomologyError::WrongArity { expected: self.n(), got: rho.len() });
        }
        for (i, r) in self.relations.iter().enumerate() {
            let res = r.word.eval(rho).dist(r.target());
            if !(res < BASEPOINT_TOL) {
                return Err(CohomologyError::InvalidBasepoint { what: format!("relation {i}"), residual: res });
            }
        }
        for (i, c) in self.constraints.iter().enumerate() {
            let res = c.value(rho, eps).abs();
            if !(res < BASEPOINT_TOL) {
                return Err(CohomologyError::InvalidBasepoint { what: format!("constraint {i}"), residual: res });
            }
        }
        Ok(())
    }
}

/// The map `c : 𝔤ⁿ → 𝔤ᵐ ⊕ ℝ^q`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearizedMap {
    pub matrix: DMatrix<f64>,
    pub relation_rows: usize,
    pub constraint_rows: usize,
}

impl LinearizedMap {
    pub fn rank(&self) -> usize {
        rank(&self.matrix)
    }

    /// `dim Z¹_c`.
    pub fn nullity(&self) -> usize {
        self.matrix.ncols() - self.rank()
    }
}

pub fn linearize(
    pres: &ConstrainedPresentation,
    rho: &[Su2Element],
    eps: f64,
) -> Result<LinearizedMap, CohomologyError> {
    pres.check_basepoint(rho, eps)?;
    Ok(linearize_unchecked(pres, rho, eps))
}

fn linearize_unchecked(pres: &ConstrainedPresentation, rho: &[Su2Element], eps: f64) -> LinearizedMap {
    let n = pres.n();
    let m = pres.relations.len();
    let q = pres.constraints.len();
    let mut mat = DMatrix::zeros(3 * m + q, 3 * n);
    for (i, r) in pres.relations.iter().enumerate() {
        mat.view_mut((3 * i, 0), (3, 3 * n)).copy_from(&r.word.differential(rho));
    }
    for (i, c) in pres.constraints.iter().enumerate() {
        mat.view_mut((3 * m + i, 0), (1, 3 * n)).copy_from(&c.differential(rho, eps));
    }
    LinearizedMap { matrix: mat, relation_rows: 3 * m, constraint_rows: q }
}

/// Numerical rank with threshold `RANK_RTOL · σ_max`.
pub fn rank(m: &DMatrix<f64>) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    let sv = m.clone().svd(false, false).singular_values;
    let smax = sv.max();
    if smax == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > RANK_RTOL * smax).count()
}

/// Orthonormal basis of the kernel, as columns.
pub fn kernel(m: &DMatrix<f64>) -> DMatrix<f64> {
    let n = m.ncols();
    if m.nrows() == 0 {
        return DMatrix::identity(n, n);
    }
    // pad so that the SVD returns a full set of right singular vectors
    let mut padded = DMatrix::zeros(m.nrows().max(n), n);
    padded.view_mut((0, 0), (m.nrows(), n)).copy_from(m);
    let svd = padded.svd(false, true);
    let vt = svd.v_t.expect("requested V");
    let smax = svd.singular_values.max();
    let cols: Vec<_> = svd
        .singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| smax == 0.0 || s <= RANK_RTOL * smax)
        .map(|(i, _)| vt.row(i).transpose())
        .collect();
    if cols.is_empty() {
        DMatrix::zeros(n, 0)
    } else {
        DMatrix::from_columns(&cols)
    }
}

/// Coboundary map `u ↦ (u - Ad_{ρ(s_k)} u)_k`, a 3n × 3 matrix.
pub fn coboundaries(rho: &[Su2Element]) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(3 * rho.len(), 3);
    for (k, &g) in rho.iter().enumerate() {
        let block = Matrix3::identity() - adjoint_matrix(g);
        m.view_mut((3 * k, 0), (3, 3)).copy_from(&block);
    }
    m
}

/// `dim B¹_c`.
pub fn coboundary_dim(rho: &[Su2Element]) -> usize {
    rank(&coboundaries(rho))
}

/// `dim Z¹_c`.
pub fn z1_dim(pres: &ConstrainedPresentation, rho: &[Su2Element], eps: f64) -> Result<usize, CohomologyError> {
    Ok(linearize(pres, rho, eps)?.nullity())
}

/// `dim H¹_c = dim Z¹_c - dim B¹_c`.
pub fn h1_dim(pres: &ConstrainedPresentation, rho: &[Su2Element], eps: f64) -> Result<usize, CohomologyError> {
    Ok(z1_dim(pres, rho, eps)? - coboundary_dim(rho))
}

/// `c_ε = c₀ + ε c₁ + O(ε²)` along a family of basepoints.
#[derive(Debug, Clone, PartialEq)]
pub struct EpsilonExpansion {
    pub c0: DMatrix<f64>,
    pub c1: DMatrix<f64>,
}

impl EpsilonExpansion {
    /// `c₁` comes from a five-point central difference in `ε`, so the family
    /// must be defined for small negative `ε` too.
    pub fn new<F>(pres: &ConstrainedPresentation, family: F) -> Result<Self, CohomologyError>
    where
        F: Fn(f64) -> Vec<Su2Element>,
    {
        let c = |e: f64| linearize(pres, &family(e), e).map(|l| l.matrix);
        let c0 = c(0.0)?;
        let d = EPSILON_STEP;
        let c1 = ((c(d)? - c(-d)?) * 8.0 - (c(2.0 * d)? - c(-2.0 * d)?)) / (12.0 * d);
        Ok(EpsilonExpansion { c0, c1 })
    }

    /// `dim(ker c₀ ∩ ker c₁) + dim(c₁(ker c₀) ∩ im c₀)`.
    pub fn bound(&self) -> usize {
        let n = self.c0.ncols();
        let mut stacked = DMatrix::zeros(self.c0.nrows() + self.c1.nrows(), n);
        stacked.view_mut((0, 0), (self.c0.nrows(), n)).copy_from(&self.c0);
        stacked.view_mut((self.c0.nrows(), 0), (self.c1.nrows(), n)).copy_from(&self.c1);
        let common_kernel = n - rank(&stacked);
        let k = kernel(&self.c0);
        let c1k = &self.c1 * &k;
        let mut joined = DMatrix::zeros(self.c0.nrows(), c1k.ncols() + n);
        joined.view_mut((0, 0), (self.c0.nrows(), c1k.ncols())).copy_from(&c1k);
        joined.view_mut((0, c1k.ncols()), (self.c0.nrows(), n)).copy_from(&self.c0);
        let rc0 = rank(&self.c0);
        let intersection = rank(&c1k) + rc0 - rank(&joined);
        common_kernel + intersection
    }

    /// `dim ker c₀`.
    pub fn z1_dim_at_zero(&self) -> usize {
        self.c0.ncols() - rank(&self.c0)
    }
}

/// Middle term of `dim Z¹_c(ε) ≤ bound ≤ dim Z¹_c(0)` for small `ε ≠ 0`.
pub fn epsilon_bound<F>(pres: &ConstrainedPresentation, family: F) -> Result<usize, CohomologyError>
where
    F: Fn(f64) -> Vec<Su2Element>,
{
    Ok(EpsilonExpansion::new(pres, family)?.bound())
}

fn parse_group_word(gens: &[String], text: &str, line: usize, col0: usize) -> Result<GroupWord, CohomologyError> {
    let mut out = Vec::new();
    let mut offset = 0;
    for tok in text.split_inclusive(char::is_whitespace) {
        let col = col0 + offset;
        offset += tok.len();
        let tok = tok.trim();
        if tok.is_empty() {
            continue;
        }
        let err = |message: String| CohomologyError::Parse { line, column: col, message };
        let (name, exp) = match tok.split_once('^') {
            Some((n, e)) => (n, e.parse::<i32>().map_err(|_| err(format!("bad exponent {e:?}")))?),
            None => (tok, 1),
        };
        let gen = gens.iter().position(|g| g == name).ok_or_else(|| err(format!("unknown generator {name:?}")))?;
        for _ in 0..exp.unsigned_abs() {
            out.push(Letter { gen, inverse: exp < 0 });
        }
    }
    Ok(GroupWord(out))
}

/// Parses the text format:
///
/// ```text
/// # comment
/// generators: a A B h
/// relation: h a B h^-1 B^-1 a^-1 = -1
/// constraint: tr(a)
/// constraint: eps*pair_x(h^-1 A) - pair_x(B)
/// constraint: eps*tr(x)^2 + eps^2*tr(x)
/// ```
///
/// A relation ends in `= 1` or `= -1` (default `1`). A constraint is a sum
/// of products of numbers, `eps` or `eps^k`, and atoms `tr(w)`,
/// `pair_x(w)`, `pair_y(w)`, `pair_z(w)`, each atom optionally raised to a
/// power `^k`. The constraint is the equation `expression = 0`.
pub fn parse_presentation(text: &str) -> Result<ConstrainedPresentation, CohomologyError> {
    let mut pres = ConstrainedPresentation::default();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let err = |column: usize, message: &str| CohomologyError::Parse { line, column, message: message.to_string() };
        let (key, rest) = content.split_once(':').ok_or_else(|| err(1, "expected `key: value`"))?;
        let col = key.len() + 2;
        match key.trim() {
            "generators" => {
                pres.generators = rest.split_whitespace().map(str::to_string).collect();
            }
            "relation" => {
                let (w, rhs) = match rest.split_once('=') {
                    Some((w, r)) => (w, r.trim()),
                    None => (rest, "1"),
                };
                let negative = match rhs {
                    "1" | "+1" => false,
                    "-1" => true,
                    _ => return Err(err(col + w.len() + 1, "relation must equal 1 or -1")),
                };
                let word = parse_group_word(&pres.generators, w, line, col)?;
                pres.relations.push(RelationWord { word, negative });
            }
            "constraint" => {
                let mut p = ExprParser { src: rest, pos: 0, line, col0: col, gens: &pres.generators };
                let c = p.expression()?;
                pres.constraints.push(c);
            }
            other => return Err(err(1, &format!("unknown key {other:?}"))),
        }
    }
    Ok(pres)
}

struct ExprParser<'a> {
    src: &'a str,
    pos: usize,
    line: usize,
    col0: usize,
    gens: &'a [String],
}

impl ExprParser<'_> {
    fn err(&self, message: impl Into<String>) -> CohomologyError {
        CohomologyError::Parse { line: self.line, column: self.col0 + self.pos, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += self.src[self.pos..].chars().next().unwrap().len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn exponent(&mut self) -> Result<u32, CohomologyError> {
        if !self.eat("^") {
            return Ok(1);
        }
        self.skip_ws();
        let digits: String = self.src[self.pos..].chars().take_while(char::is_ascii_digit).collect();
        if digits.is_empty() {
            return Err(self.err("expected a nonnegative integer exponent"));
        }
        self.pos += digits.len();
        Ok(digits.parse().unwrap())
    }

    fn expression(&mut self) -> Result<Constraint, CohomologyError> {
        let mut terms = Vec::new();
        let mut sign = if self.eat("-") { -1.0 } else { 1.0 };
        loop {
            let mut t = self.term()?;
            t.coeff *= sign;
            terms.push(t);
            match self.peek() {
                None => break,
                Some('+') => {
                    self.pos += 1;
                    sign = 1.0;
                }
                Some('-') => {
                    self.pos += 1;
                    sign = -1.0;
                }
                Some(c) => return Err(self.err(format!("unexpected {c:?}"))),
            }
        }
        Ok(Constraint { terms })
    }

    fn term(&mut self) -> Result<Term, CohomologyError> {
        let mut t = Term { coeff: 1.0, eps_power: 0, factors: Vec::new() };
        loop {
            self.factor(&mut t)?;
            if !self.eat("*") {
                return Ok(t);
            }
        }
    }

    fn factor(&mut self, t: &mut Term) -> Result<(), CohomologyError> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        if rest.starts_with(|c: char| c.is_ascii_digit() || c == '.') {
            let num: String = rest.chars().take_while(|c| c.is_ascii_digit() || *c == '.' || *c == 'e').collect();
            t.coeff *= num.parse::<f64>().map_err(|_| self.err(format!("bad number {num:?}")))?;
            self.pos += num.len();
            return Ok(());
        }
        for (name, axis) in
            [("pair_x", Some(Axis::X)), ("pair_y", Some(Axis::Y)), ("pair_z", Some(Axis::Z)), ("tr", None)]
        {
            if rest.starts_with(name) {
                self.pos += name.len();
                if !self.eat("(") {
                    return Err(self.err("expected `(`"));
                }
                let start = self.pos;
                let close = self.src[start..].find(')').ok_or_else(|| self.err("missing `)`"))?;
                let word = parse_group_word(self.gens, &self.src[start..start + close], self.line, self.col0 + start)?;
                self.pos = start + close + 1;
                let p = self.exponent()?;
                let atom = match axis {
                    Some(ax) => Atom::TracePair(word, ax),
                    None => Atom::Trace(word),
                };
                t.factors.push((atom, p));
                return Ok(());
            }
        }
        if rest.starts_with("eps") {
            self.pos += 3;
            t.eps_power += self.exponent()?;
            return Ok(());
        }
        Err(self.err("expected a number, `eps`, `tr(...)` or `pair_*(...)`"))
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.0.iter().map(|l| if l.inverse { format!("s{}^-1", l.gen) } else { format!("s{}", l.gen) }).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Presentations and basepoint families of the solid-torus and torus
/// character varieties.
pub mod standard {
    use super::*;

    fn build(text: &str) -> ConstrainedPresentation {
        parse_presentation(text).expect("built-in presentation")
    }

    /// Solid torus with one arc: free on `A, a`, `a` traceless.
    pub fn disk() -> ConstrainedPresentation {
        build("generators: A a\nconstraint: tr(a)\n")
    }

    /// Images `[A, a]` of the disk Lagrangian point.
    pub fn disk_point(c: DiskCoord) -> Vec<Su2Element> {
        let rho = lagrangians::disk_rep(c);
        vec![rho.A, rho.a]
    }

    /// The perturbed solid torus: generators `a, A, B, h`, the holonomy
    /// relation with `w = -1`, tracelessness of `a`, `b = -h a⁻¹ h⁻¹` and
    /// `h`, and the perturbation condition on `λ = h⁻¹A`, `μ = B`.
    pub fn natural_pi() -> ConstrainedPresentation {
        build(
            "generators: a A B h\n\
             relation: h a B h^-1 B^-1 a^-1 = -1\n\
             constraint: tr(a)\n\
             constraint: tr(h a^-1 h^-1)\n\
             constraint: tr(h)\n\
             constraint: eps*pair_x(h^-1 A) - pair_x(B)\n\
             constraint: eps*pair_y(h^-1 A) - pair_y(B)\n\
             constraint: eps*pair_z(h^-1 A) - pair_z(B)\n",
        )
    }

    /// Images `[a, A, B, h]` over `L_s(φ, θ)` with the arcsine shape.
    pub fn natural_pi_point(c: SphereCoord, eps: f64) -> Vec<Su2Element> {
        let rho = lagrangians::sphere_rep_eps(c, eps, Shape::AlgebraicArcsine);
        vec![rho.a, rho.A, rho.B, rho.h.expect("sphere tuples carry h")]
    }

    /// R(T²,2) with `b` eliminated: free on `a, A, B`, with `a` and
    /// `b⁻¹ = [A,B]a` traceless.
    pub fn torus() -> ConstrainedPresentation {
        build("generators: a A B\nconstraint: tr(a)\nconstraint: tr(A B A^-1 B^-1 a)\n")
    }

    /// Images `[a, A, B]` of `L_s(φ, θ)` with the arcsine shape.
    pub fn torus_point(c: SphereCoord, eps: f64) -> Vec<Su2Element> {
        let rho = lagrangians::sphere_rep_eps(c, eps, Shape::AlgebraicArcsine);
        vec![rho.a, rho.A, rho.B]
    }

    /// `Γ = ℤ` with one of three constraints:
    /// `1: ε tr x`, `2: ε (tr x)²`, `3: ε (tr x)² + ε² tr x`.
    pub fn integer_example(which: u32) -> ConstrainedPresentation {
        let c = match which {
            1 => "eps*tr(x)",
            2 => "eps*tr(x)^2",
            3 => "eps*tr(x)^2 + eps^2*tr(x)",
            _ => panic!("integer_example takes 1, 2 or 3"),
        };
        build(&format!("generators: x\nconstraint: {c}\n"))
    }

    /// The basepoint `x ↦ iσz` of the `ℤ` example.
    pub fn integer_point() -> Vec<Su2Element> {
        vec![Su2Element::I_SIGMA_Z]
    }
}
