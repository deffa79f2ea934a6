//! Formal Fourier expansions of Hermitian modular forms and the bracket on
//! their coefficients.
//!
//! Coefficients of the bracket are `Σ_{h₁+h₂=h} c₁(h₁) c₂(h₂) Q(h₁, h₂)` with
//! no `(2πi)^{nv}` factor, so rational input stays rational.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::json;
use thiserror::Error;

use crate::exactalg::{format_rational, parse_rational, AlgError, MultiPoly, QuadFieldElement, Rational, VarId};
use crate::generators::q_generators;
use crate::solver::{assemble_bracket, solve_coefficients, BracketCoefficients, Normalization};
use crate::verify::{Sampler, VerificationReport, VerifyError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FourierError {
    #[error("invalid series file: {0}")]
    Schema(String),
    #[error("index is not Hermitian: {0}")]
    NotHermitian(String),
    #[error("index is not positive semidefinite: {0}")]
    NotPsd(String),
    #[error("size mismatch ({0} vs {1})")]
    SizeMismatch(usize, usize),
    #[error("field mismatch (d={0} vs d={1})")]
    FieldMismatch(u64, u64),
    #[error("weight mismatch (expected {expected}, found {found})")]
    WeightMismatch { expected: i64, found: i64 },
    #[error("series weight missing and no default given")]
    MissingWeight,
    #[error("evaluation is not real: {0}")]
    NonReal(String),
    #[error(transparent)]
    Alg(#[from] AlgError),
}

type QMatrix = Vec<Vec<QuadFieldElement>>;

/// Hermitian `n×n` matrix over `Q(√−d)`, ordered by trace then entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HermitianIndex {
    n: usize,
    d: u64,
    entries: QMatrix,
}

impl HermitianIndex {
    pub fn new(d: u64, entries: QMatrix) -> Result<Self, FourierError> {
        let n = entries.len();
        if n == 0 {
            return Err(FourierError::Schema("empty index matrix".into()));
        }
        for row in &entries {
            if row.len() != n {
                return Err(FourierError::SizeMismatch(row.len(), n));
            }
            if let Some(x) = row.iter().find(|x| x.d != d) {
                return Err(FourierError::FieldMismatch(x.d, d));
            }
        }
        let h = Self { n, d, entries };
        for i in 0..n {
            for j in 0..n {
                if h.entries[i][j] != h.entries[j][i].conj() {
                    return Err(FourierError::NotHermitian(h.to_string()));
                }
            }
        }
        Ok(h)
    }

    pub fn from_rationals(d: u64, rows: &[Vec<Rational>]) -> Result<Self, FourierError> {
        Self::new(
            d,
            rows.iter().map(|r| r.iter().map(|x| QuadFieldElement::from_rational(x.clone(), d)).collect()).collect(),
        )
    }

    /// The `1×1` index `(m)`.
    pub fn scalar(m: Rational, d: u64) -> Self {
        Self { n: 1, d, entries: vec![vec![QuadFieldElement::from_rational(m, d)]] }
    }

    pub fn zero(n: usize, d: u64) -> Self {
        Self { n, d, entries: vec![vec![QuadFieldElement::zero(d); n]; n] }
    }

    pub fn identity(n: usize, d: u64) -> Self {
        let mut h = Self::zero(n, d);
        for i in 0..n {
            h.entries[i][i] = QuadFieldElement::one(d);
        }
        h
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn entries(&self) -> &QMatrix {
        &self.entries
    }

    pub fn trace(&self) -> Rational {
        (0..self.n).fold(Rational::zero(), |acc, i| acc + &self.entries[i][i].re)
    }

    pub fn add(&self, other: &Self) -> Self {
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        Self { n: self.n, d: self.d, entries }
    }

    fn principal_minor(&self, idx: &[usize]) -> Rational {
        let sub: QMatrix = idx.iter().map(|&i| idx.iter().map(|&j| self.entries[i][j].clone()).collect()).collect();
        let det = quad_det(sub, self.d);
        debug_assert!(det.is_real());
        det.re
    }

    /// Every principal minor is nonnegative.
    pub fn is_psd(&self) -> bool {
        (1u32..1 << self.n).all(|mask| {
            let idx: Vec<usize> = (0..self.n).filter(|i| mask & (1 << i) != 0).collect();
            !self.principal_minor(&idx).is_negative()
        })
    }

    /// Every leading principal minor is positive.
    pub fn is_positive_definite(&self) -> bool {
        (1..=self.n).all(|k| self.principal_minor(&(0..k).collect::<Vec<_>>()).is_positive())
    }
}

impl Ord for HermitianIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.n, self.d)
            .cmp(&(other.n, other.d))
            .then_with(|| self.trace().cmp(&other.trace()))
            .then_with(|| self.entries.cmp(&other.entries))
    }
}

impl PartialOrd for HermitianIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for HermitianIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> =
            self.entries.iter().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")).collect();
        write!(f, "[[{}]]", rows.join("], ["))
    }
}

/// Determinant by Gaussian elimination over `Q(√−d)`.
fn quad_det(mut m: QMatrix, d: u64) -> QuadFieldElement {
    let n = m.len();
    let mut det = QuadFieldElement::one(d);
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return QuadFieldElement::zero(d);
        };
        if p != c {
            m.swap(p, c);
            det = -&det;
        }
        let pivot = m[c][c].clone();
        det = &det * &pivot;
        let inv = pivot.inv().expect("nonzero pivot");
        for r in c + 1..n {
            let f = &m[r][c] * &inv;
            if f.is_zero() {
                continue;
            }
            let (top, rest) = m.split_at_mut(r);
            for (x, p) in rest[0].iter_mut().zip(&top[c]).skip(c) {
                *x = &*x - &(&f * p);
            }
        }
    }
    det
}

fn quad_mul(a: &QMatrix, b: &QMatrix, d: u64) -> QMatrix {
    let n = a.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).fold(QuadFieldElement::zero(d), |acc, k| acc + &a[i][k] * &b[k][j])).collect())
        .collect()
}

fn conj_transpose(a: &QMatrix) -> QMatrix {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| a[j][i].conj()).collect()).collect()
}

/// Window of indices for which a series lists every nonzero coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Truncation {
    /// The stored support is the entire support.
    Complete,
    /// Every index with trace at most the bound is accounted for.
    TraceAtMost(Rational),
}

impl Truncation {
    pub fn contains(&self, h: &HermitianIndex) -> bool {
        match self {
            Truncation::Complete => true,
            Truncation::TraceAtMost(b) => h.trace() <= *b,
        }
    }

    fn meet(&self, other: &Self) -> Self {
        match (self, other) {
            (Truncation::Complete, t) | (t, Truncation::Complete) => t.clone(),
            (Truncation::TraceAtMost(a), Truncation::TraceAtMost(b)) => Truncation::TraceAtMost(a.min(b).clone()),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FourierSeries {
    pub n: usize,
    pub d: u64,
    pub weight: i64,
    pub level: Option<String>,
    pub truncation: Truncation,
    entries: BTreeMap<HermitianIndex, QuadFieldElement>,
}

/// Metadata used when a series file leaves it out.
#[derive(Clone, Copy, Debug, Default)]
pub struct SeriesDefaults {
    pub weight: Option<i64>,
    pub d: Option<u64>,
}

#[derive(Serialize, Deserialize)]
struct WireQuad {
    re: String,
    co: String,
}

#[derive(Serialize, Deserialize)]
struct WireEntry {
    h: Vec<Vec<WireQuad>>,
    c: WireQuad,
}

#[derive(Serialize, Deserialize)]
struct WireSeries {
    n: usize,
    d: Option<u64>,
    weight: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    level: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    trace_max: Option<String>,
    entries: Vec<WireEntry>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct WireShorthand {
    q_expansion: Vec<String>,
    #[serde(default)]
    n: Option<usize>,
    #[serde(default)]
    d: Option<u64>,
    #[serde(default)]
    weight: Option<i64>,
    #[serde(default)]
    level: Option<String>,
}

fn to_wire(x: &QuadFieldElement) -> WireQuad {
    WireQuad { re: format_rational(&x.re), co: format_rational(&x.co) }
}

fn from_wire(w: &WireQuad, d: u64) -> Result<QuadFieldElement, FourierError> {
    Ok(QuadFieldElement::new(parse_rational(&w.re)?, parse_rational(&w.co)?, d))
}

impl FourierSeries {
    pub fn new(n: usize, d: u64, weight: i64, truncation: Truncation) -> Self {
        Self { n, d, weight, level: None, truncation, entries: BTreeMap::new() }
    }

    /// Adds `c` at `h`. Indices must be PSD and of matching shape.
    pub fn insert(&mut self, h: HermitianIndex, c: QuadFieldElement) -> Result<(), FourierError> {
        if h.n != self.n {
            return Err(FourierError::SizeMismatch(h.n, self.n));
        }
        if h.d != self.d || c.d != self.d {
            return Err(FourierError::FieldMismatch(h.d.max(c.d), self.d));
        }
        if !h.is_psd() {
            return Err(FourierError::NotPsd(h.to_string()));
        }
        let slot = self.entries.entry(h).or_insert_with(|| QuadFieldElement::zero(c.d));
        *slot = &*slot + &c;
        if slot.is_zero() {
            self.entries.retain(|_, v| !v.is_zero());
        }
        Ok(())
    }

    /// `n = 1` series `Σ_m c_m q^m` from its first coefficients.
    pub fn from_q_expansion(coeffs: &[Rational], d: u64, weight: i64) -> Self {
        let bound = Rational::from_integer((coeffs.len() as i64 - 1).into());
        let mut s = Self::new(1, d, weight, Truncation::TraceAtMost(bound));
        for (m, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                s.entries.insert(
                    HermitianIndex::scalar(Rational::from_integer((m as i64).into()), d),
                    QuadFieldElement::from_rational(c.clone(), d),
                );
            }
        }
        s
    }

    pub fn get(&self, h: &HermitianIndex) -> QuadFieldElement {
        self.entries.get(h).cloned().unwrap_or_else(|| QuadFieldElement::zero(self.d))
    }

    pub fn entries(&self) -> impl Iterator<Item = (&HermitianIndex, &QuadFieldElement)> {
        self.entries.iter()
    }

    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// For `n = 1`: the rational coefficients of `q^0, …, q^bound`.
    pub fn q_coefficients(&self) -> Option<Vec<Rational>> {
        let Truncation::TraceAtMost(b) = &self.truncation else {
            return None;
        };
        if self.n != 1 || !b.is_integer() || b.is_negative() {
            return None;
        }
        let top = b.to_integer().try_into().ok()?;
        (0..=top)
            .map(|m: u64| {
                let c = self.get(&HermitianIndex::scalar(Rational::from_integer(m.into()), self.d));
                c.is_real().then_some(c.re)
            })
            .collect()
    }

    pub fn to_json_string(&self) -> String {
        let wire = WireSeries {
            n: self.n,
            d: Some(self.d),
            weight: Some(self.weight),
            level: self.level.clone(),
            trace_max: match &self.truncation {
                Truncation::Complete => None,
                Truncation::TraceAtMost(b) => Some(format_rational(b)),
            },
            entries: self
                .entries
                .iter()
                .map(|(h, c)| WireEntry {
                    h: h.entries.iter().map(|r| r.iter().map(to_wire).collect()).collect(),
                    c: to_wire(c),
                })
                .collect(),
        };
        serde_json::to_string(&wire).expect("plain data serializes")
    }

    pub fn from_json_str(s: &str, defaults: SeriesDefaults) -> Result<Self, FourierError> {
        let value: serde_json::Value = serde_json::from_str(s).map_err(|e| FourierError::Schema(e.to_string()))?;
        let schema = |e: serde_json::Error| FourierError::Schema(e.to_string());
        if value.get("q_expansion").is_some() {
            let w: WireShorthand = serde_json::from_value(value).map_err(schema)?;
            if w.n.is_some_and(|n| n != 1) {
                return Err(FourierError::Schema("q_expansion requires n = 1".into()));
            }
            let weight = w.weight.or(defaults.weight).ok_or(FourierError::MissingWeight)?;
            let d = w.d.or(defaults.d).unwrap_or(1);
            let coeffs = w.q_expansion.iter().map(|c| parse_rational(c)).collect::<Result<Vec<_>, _>>()?;
            if coeffs.is_empty() {
                return Err(FourierError::Schema("empty q_expansion".into()));
            }
            let mut out = Self::from_q_expansion(&coeffs, d, weight);
            out.level = w.level;
            return Ok(out);
        }
        let w: WireSeries = serde_json::from_value(value).map_err(schema)?;
        let weight = w.weight.or(defaults.weight).ok_or(FourierError::MissingWeight)?;
        let d = w.d.or(defaults.d).unwrap_or(1);
        let truncation = match &w.trace_max {
            None => Truncation::Complete,
            Some(b) => Truncation::TraceAtMost(parse_rational(b)?),
        };
        let mut out = Self::new(w.n, d, weight, truncation);
        out.level = w.level;
        for e in &w.entries {
            let rows = e
                .h
                .iter()
                .map(|r| r.iter().map(|x| from_wire(x, d)).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()?;
            out.insert(HermitianIndex::new(d, rows)?, from_wire(&e.c, d)?)?;
        }
        Ok(out)
    }
}

/// `Q(h₁, h₂)` with `w[s,t] ↦ h₁[s,t]`, `z[s,t] ↦ h₂[s,t]`; the value must be real.
pub fn evaluate_q_at(
    q: &MultiPoly,
    h1: &HermitianIndex,
    h2: &HermitianIndex,
) -> Result<QuadFieldElement, FourierError> {
    if h1.n != h2.n {
        return Err(FourierError::SizeMismatch(h1.n, h2.n));
    }
    if h1.d != h2.d {
        return Err(FourierError::FieldMismatch(h1.d, h2.d));
    }
    let mut point = HashMap::new();
    for s in 0..h1.n {
        for t in 0..h1.n {
            point.insert(VarId::w(s + 1, t + 1), h1.entries[s][t].clone());
            point.insert(VarId::z(s + 1, t + 1), h2.entries[s][t].clone());
        }
    }
    let val = q.evaluate(&point, h1.d)?;
    if !val.is_real() {
        return Err(FourierError::NonReal(val.to_string()));
    }
    Ok(val)
}

/// Bracket of two expansions. Output indices outside the common window are
/// dropped rather than reported with partial sums.
pub fn apply_bracket(
    f1: &FourierSeries,
    f2: &FourierSeries,
    bc: &BracketCoefficients,
) -> Result<FourierSeries, FourierError> {
    if f1.n != f2.n || f1.n != bc.n {
        return Err(FourierError::SizeMismatch(f1.n, if f1.n != f2.n { f2.n } else { bc.n }));
    }
    if f1.d != f2.d {
        return Err(FourierError::FieldMismatch(f1.d, f2.d));
    }
    if f1.weight != bc.k1 {
        return Err(FourierError::WeightMismatch { expected: bc.k1, found: f1.weight });
    }
    if f2.weight != bc.k2 {
        return Err(FourierError::WeightMismatch { expected: bc.k2, found: f2.weight });
    }
    let gens = q_generators(bc.n).map_err(|e| FourierError::Schema(e.to_string()))?;
    let q = assemble_bracket(bc, &gens).map_err(|e| FourierError::Schema(e.to_string()))?;

    let truncation = f1.truncation.meet(&f2.truncation);
    let mut out = FourierSeries::new(f1.n, f1.d, f1.weight + f2.weight + 2 * bc.v as i64, truncation);
    out.level = f1.level.clone().or_else(|| f2.level.clone());
    for (h1, c1) in &f1.entries {
        for (h2, c2) in &f2.entries {
            let h = h1.add(h2);
            if !out.truncation.contains(&h) {
                continue;
            }
            let weight = evaluate_q_at(&q, h1, h2)?;
            if weight.is_zero() {
                continue;
            }
            let term = &(c1 * c2) * &weight;
            let slot = out.entries.entry(h).or_insert_with(|| QuadFieldElement::zero(f1.d));
            *slot = &*slot + &term;
        }
    }
    out.entries.retain(|_, c| !c.is_zero());
    Ok(out)
}

/// Nonzero coefficients sit only at positive definite indices.
pub fn is_cusp_supported(f: &FourierSeries) -> bool {
    f.entries.keys().all(HermitianIndex::is_positive_definite)
}

fn random_gaussian_matrix(rng: &mut Sampler, n: usize, d: u64) -> QMatrix {
    (0..n).map(|_| (0..n).map(|_| QuadFieldElement::new(rng.rational(), rng.rational(), d)).collect()).collect()
}

/// Random PSD pair `h_i = P M_i* M_i P`, where `P` projects away from a
/// random vector `w`; both then annihilate `w`.
pub fn common_kernel_pair(rng: &mut Sampler, n: usize, d: u64) -> (HermitianIndex, HermitianIndex) {
    let w: Vec<QuadFieldElement> = loop {
        let w: Vec<_> = (0..n).map(|_| QuadFieldElement::new(rng.rational(), rng.rational(), d)).collect();
        if w.iter().any(|x| !x.is_zero()) {
            break w;
        }
    };
    let norm = w.iter().fold(Rational::zero(), |acc, x| acc + x.norm());
    let scale = QuadFieldElement::from_rational(Rational::one() / norm, d);
    let proj: QMatrix = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let id = if i == j { QuadFieldElement::one(d) } else { QuadFieldElement::zero(d) };
                    id - &(&w[i] * &w[j].conj()) * &scale
                })
                .collect()
        })
        .collect();
    let mut make = || {
        let m = random_gaussian_matrix(rng, n, d);
        let gram = quad_mul(&conj_transpose(&m), &m, d);
        let h = quad_mul(&quad_mul(&proj, &gram, d), &proj, d);
        HermitianIndex::new(d, h).expect("P M* M P is Hermitian")
    };
    let h1 = make();
    let h2 = make();
    (h1, h2)
}

/// Bracket evaluated on common-kernel PSD pairs over `Q(i)` is exactly zero.
/// The first trial uses `h₁ = 0`.
pub fn check_cusp_vanishing(
    n: usize,
    v: u32,
    k1: i64,
    k2: i64,
    trials: usize,
    seed: u64,
) -> Result<VerificationReport, VerifyError> {
    if v == 0 {
        return Err(VerifyError::DegreeZero);
    }
    let bc = solve_coefficients(n, v, k1, k2, Normalization::Integral)?;
    let q = assemble_bracket(&bc, &q_generators(n)?)?;
    let d = 1;
    let mut rng = Sampler::new(seed);
    let mut witness = None;
    for trial in 0..trials {
        let (mut h1, h2) = common_kernel_pair(&mut rng, n, d);
        if trial == 0 {
            h1 = HermitianIndex::zero(n, d);
        }
        let ok = h1.is_psd() && h2.is_psd();
        let val = evaluate_q_at(&q, &h1, &h2);
        match val {
            Ok(x) if ok && x.is_zero() => {}
            other => {
                let shown = match other {
                    Ok(x) => x.to_string(),
                    Err(e) => e.to_string(),
                };
                witness = Some(json!({"trial": trial, "h1": h1.to_string(), "h2": h2.to_string(), "value": shown}));
                break;
            }
        }
    }
    Ok(VerificationReport::new("cusp_vanishing").n(n).v(v).weights(k1, k2).seed(seed).outcome(witness))
}

/// Root-of-unity divisibility required of `v` for the field `Q(√−d)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct WeightCondition {
    pub d: u64,
    pub v: u32,
    pub required_divisor: u32,
    pub satisfied: bool,
}

/// `|μ|/2` for imaginary quadratic `Q(√−d)`, `d` square-free.
pub fn weight_condition(d: u64, v: u32) -> WeightCondition {
    let required_divisor = match d {
        1 => 2,
        3 => 3,
        _ => 1,
    };
    WeightCondition { d, v, required_divisor, satisfied: v.is_multiple_of(required_divisor) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{rat, rat_frac};

    fn real(rows: &[&[i64]]) -> HermitianIndex {
        let rows: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect();
        HermitianIndex::from_rationals(1, &rows).unwrap()
    }

    fn bracket_poly(n: usize, v: u32, k1: i64, k2: i64, norm: Normalization) -> MultiPoly {
        let bc = solve_coefficients(n, v, k1, k2, norm).unwrap();
        assemble_bracket(&bc, &q_generators(n).unwrap()).unwrap()
    }

    #[test]
    fn hermitian_validation() {
        let i = QuadFieldElement::new(rat(0), rat(1), 1);
        let one = QuadFieldElement::one(1);
        let ok = HermitianIndex::new(1, vec![vec![one.clone(), i.clone()], vec![i.conj(), one.clone()]]);
        assert!(ok.is_ok());
        let bad = HermitianIndex::new(1, vec![vec![one.clone(), i.clone()], vec![i.clone(), one.clone()]]);
        assert!(matches!(bad, Err(FourierError::NotHermitian(_))));
        let nonreal_diag = HermitianIndex::new(1, vec![vec![i]]);
        assert!(nonreal_diag.is_err());
    }

    #[test]
    fn psd_tests() {
        assert!(real(&[&[1, 0], &[0, 0]]).is_psd());
        assert!(!real(&[&[1, 0], &[0, 0]]).is_positive_definite());
        assert!(real(&[&[2, 1], &[1, 2]]).is_positive_definite());
        assert!(!real(&[&[1, 2], &[2, 1]]).is_psd());
        // leading minors alone would miss this one
        assert!(!real(&[&[0, 0], &[0, -1]]).is_psd());
        let i = QuadFieldElement::new(rat(0), rat(1), 1);
        let one = QuadFieldElement::one(1);
        let h = HermitianIndex::new(1, vec![vec![one.clone(), i.clone()], vec![i.conj(), one]]).unwrap();
        assert!(h.is_psd() && !h.is_positive_definite());
    }

    #[test]
    fn evaluate_examples() {
        let g = q_generators(2).unwrap();
        let id = HermitianIndex::identity(2, 1);
        assert_eq!(evaluate_q_at(&g.polys[0], &id, &real(&[&[3, 1], &[1, 5]])).unwrap(), QuadFieldElement::one(1));

        let q = bracket_poly(1, 1, 4, 6, Normalization::Unit);
        for (m1, m2) in [(0, 1), (2, 3), (5, 0)] {
            let val = evaluate_q_at(&q, &HermitianIndex::scalar(rat(m1), 1), &HermitianIndex::scalar(rat(m2), 1));
            assert_eq!(val.unwrap().re, rat(m2) - rat_frac(3, 2) * rat(m1));
        }
        assert!(evaluate_q_at(&q, &HermitianIndex::identity(2, 1), &HermitianIndex::identity(1, 1)).is_err());
    }

    #[test]
    fn common_kernel_examples() {
        let q = bracket_poly(2, 1, 2, 2, Normalization::Integral);
        let zero = evaluate_q_at(&q, &real(&[&[1, 0], &[0, 0]]), &real(&[&[2, 0], &[0, 0]])).unwrap();
        assert!(zero.is_zero());
        let zero = evaluate_q_at(&q, &HermitianIndex::zero(2, 1), &real(&[&[1, 1], &[1, 1]])).unwrap();
        assert!(zero.is_zero());
        let mut rng = Sampler::new(3);
        let (h1, h2) = common_kernel_pair(&mut rng, 3, 1);
        assert!(h1.is_psd() && h2.is_psd() && !h1.add(&h2).is_positive_definite());
    }

    #[test]
    fn cusp_vanishing_passes() {
        assert!(check_cusp_vanishing(2, 2, 2, 2, 20, 0).unwrap().passed());
        assert!(check_cusp_vanishing(2, 0, 2, 2, 1, 0).is_err());
    }

    #[test]
    fn apply_v0_is_product() {
        let a = FourierSeries::from_q_expansion(&[rat(1), rat(2), rat(3)], 1, 4);
        let b = FourierSeries::from_q_expansion(&[rat(1), rat(-1), rat(0), rat(5)], 1, 6);
        let bc = solve_coefficients(1, 0, 4, 6, Normalization::Integral).unwrap();
        let out = apply_bracket(&a, &b, &bc).unwrap();
        assert_eq!(out.weight, 10);
        assert_eq!(out.truncation, Truncation::TraceAtMost(rat(2)));
        assert_eq!(out.q_coefficients().unwrap(), vec![rat(1), rat(1), rat(1)]);
    }

    #[test]
    fn apply_zero_and_mismatch() {
        let a = FourierSeries::from_q_expansion(&[rat(1), rat(2)], 1, 4);
        let zero = FourierSeries::new(1, 1, 6, Truncation::Complete);
        let bc = solve_coefficients(1, 1, 4, 6, Normalization::Unit).unwrap();
        assert!(apply_bracket(&a, &zero, &bc).unwrap().is_zero());
        let wrong = FourierSeries::new(1, 1, 8, Truncation::Complete);
        assert_eq!(apply_bracket(&a, &wrong, &bc), Err(FourierError::WeightMismatch { expected: 6, found: 8 }));
    }

    #[test]
    fn apply_first_terms_e4_e6() {
        let e4 = FourierSeries::from_q_expansion(&[rat(1), rat(240), rat(2160)], 1, 4);
        let e6 = FourierSeries::from_q_expansion(&[rat(1), rat(-504), rat(-16632)], 1, 6);
        let bc = solve_coefficients(1, 1, 4, 6, Normalization::Unit).unwrap();
        let out = apply_bracket(&e4, &e6, &bc).unwrap();
        assert_eq!(out.q_coefficients().unwrap(), vec![rat(0), rat(-864), rat(20736)]);
        assert!(is_cusp_supported(&out));
    }

    #[test]
    fn cusp_support() {
        let mut s = FourierSeries::new(2, 1, 4, Truncation::Complete);
        s.insert(HermitianIndex::identity(2, 1), QuadFieldElement::one(1)).unwrap();
        assert!(is_cusp_supported(&s));
        s.insert(HermitianIndex::zero(2, 1), QuadFieldElement::one(1)).unwrap();
        assert!(!is_cusp_supported(&s));
        assert!(matches!(s.insert(real(&[&[1, 2], &[2, 1]]), QuadFieldElement::one(1)), Err(FourierError::NotPsd(_))));
    }

    #[test]
    fn json_round_trip() {
        let i = QuadFieldElement::new(rat(0), rat_frac(1, 2), 1);
        let one = QuadFieldElement::one(1);
        let mut s = FourierSeries::new(2, 1, 4, Truncation::TraceAtMost(rat(3)));
        s.level = Some("gamma0(1)".into());
        s.insert(
            HermitianIndex::new(1, vec![vec![one.clone(), i.clone()], vec![i.conj(), one.clone()]]).unwrap(),
            QuadFieldElement::new(rat(7), rat(-1), 1),
        )
        .unwrap();
        s.insert(HermitianIndex::zero(2, 1), one).unwrap();
        let text = s.to_json_string();
        let back = FourierSeries::from_json_str(&text, SeriesDefaults::default()).unwrap();
        assert_eq!(back, s);
        assert_eq!(back.to_json_string(), text);
    }

    #[test]
    fn json_shorthand() {
        let s = FourierSeries::from_json_str(
            r#"{"q_expansion":["1","240","2160"]}"#,
            SeriesDefaults { weight: Some(4), d: None },
        )
        .unwrap();
        assert_eq!(s.weight, 4);
        assert_eq!(s.d, 1);
        assert_eq!(s.q_coefficients().unwrap(), vec![rat(1), rat(240), rat(2160)]);
        assert_eq!(
            FourierSeries::from_json_str(r#"{"q_expansion":["1"]}"#, SeriesDefaults::default()),
            Err(FourierError::MissingWeight)
        );
        let full = r#"{"n":1,"d":1,"weight":4,"entries":[{"h":[[{"re":"1","co":"0"}]],"c":{"re":"240","co":"0"}}]}"#;
        let s = FourierSeries::from_json_str(full, SeriesDefaults::default()).unwrap();
        assert_eq!(s.truncation, Truncation::Complete);
        assert_eq!(s.to_json_string(), full);
        let neg = r#"{"n":1,"d":1,"weight":4,"entries":[{"h":[[{"re":"-1","co":"0"}]],"c":{"re":"1","co":"0"}}]}"#;
        assert!(matches!(FourierSeries::from_json_str(neg, SeriesDefaults::default()), Err(FourierError::NotPsd(_))));
    }

    #[test]
    fn weight_condition_examples() {
        assert!(weight_condition(1, 2).satisfied);
        let c = weight_condition(3, 2);
        assert_eq!((c.required_divisor, c.satisfied), (3, false));
        assert!((1..6).all(|v| weight_condition(2, v).satisfied));
    }
}
