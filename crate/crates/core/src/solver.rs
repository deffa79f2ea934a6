//! Coefficients `C(α)` of the bracket polynomial `Σ_α C(α) Π_j Q_j^{α_j}`,
//! determined from `C(0,…,0,v)` by a linear recurrence solved in increasing
//! lexicographic order of `α`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactalg::{binomial, format_rational, parse_rational, MultiPoly, Rational};
use crate::generators::QGeneratorSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolverError {
    #[error("weight below matrix size (k1={k1} < n={n})")]
    WeightBelowMatrixSize { k1: i64, n: usize },
    #[error("weights must be positive (k1={k1}, k2={k2})")]
    NonPositiveWeight { k1: i64, k2: i64 },
    #[error("matrix size must be at least 1")]
    EmptySize,
    #[error("generator set is for n={gens} but coefficients are for n={coeffs}")]
    SizeMismatch { coeffs: usize, gens: usize },
    #[error("zero pivot at alpha={0}")]
    ZeroPivot(IndexTuple),
    #[error("malformed coefficient data: {0}")]
    Malformed(String),
}

/// Exponent vector `(α_0, …, α_n)`. The derived `Ord` is the lexicographic
/// order used by the recurrence: compare at the first differing position.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IndexTuple(pub Vec<u32>);

impl IndexTuple {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `(0, …, 0, v)`, the normalizing index.
    pub fn top(n: usize, v: u32) -> Self {
        let mut a = vec![0; n + 1];
        a[n] = v;
        IndexTuple(a)
    }

    /// All tuples of length `n+1` summing to `v`, in increasing lex order.
    pub fn enumerate(n: usize, v: u32) -> Vec<IndexTuple> {
        fn rec(pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<IndexTuple>) {
            if pos + 1 == cur.len() {
                cur[pos] = left;
                out.push(IndexTuple(cur.clone()));
                return;
            }
            for x in 0..=left {
                cur[pos] = x;
                rec(pos + 1, left - x, cur, out);
            }
        }
        let mut out = Vec::new();
        rec(0, v, &mut vec![0; n + 1], &mut out);
        out
    }
}

impl fmt::Display for IndexTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Normalization {
    /// `C(0, …, 0, v) = 1`.
    Unit,
    /// Cleared denominators, content 1, `C(0, …, 0, v) > 0`.
    #[default]
    Integral,
}

impl FromStr for Normalization {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "unit" => Ok(Normalization::Unit),
            "integral" => Ok(Normalization::Integral),
            other => Err(format!("unknown normalization {other:?}")),
        }
    }
}

impl fmt::Display for Normalization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Normalization::Unit => "unit",
            Normalization::Integral => "integral",
        })
    }
}

/// Solved coefficients for fixed `(n, v, k₁, k₂)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketCoefficients {
    pub n: usize,
    pub v: u32,
    pub k1: i64,
    pub k2: i64,
    pub normalization: Normalization,
    pub coeffs: BTreeMap<IndexTuple, Rational>,
}

#[derive(Serialize, Deserialize)]
struct CoefficientEntry {
    alpha: Vec<u32>,
    value: String,
}

#[derive(Serialize, Deserialize)]
struct CoefficientsFile {
    n: usize,
    v: u32,
    k1: i64,
    k2: i64,
    normalization: Normalization,
    coefficients: Vec<CoefficientEntry>,
}

impl BracketCoefficients {
    pub fn get(&self, alpha: &IndexTuple) -> Rational {
        self.coeffs.get(alpha).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn top(&self) -> Rational {
        self.get(&IndexTuple::top(self.n, self.v))
    }

    pub fn renormalize(&self, normalization: Normalization) -> BracketCoefficients {
        let coeffs = match normalization {
            Normalization::Unit => {
                let top = self.top();
                self.coeffs.iter().map(|(a, c)| (a.clone(), c / &top)).collect()
            }
            Normalization::Integral => {
                let lcm = self.coeffs.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
                let ints: Vec<BigInt> =
                    self.coeffs.values().map(|c| (c * Rational::from_integer(lcm.clone())).to_integer()).collect();
                let mut content = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
                if self.top().is_negative() {
                    content = -content;
                }
                self.coeffs.keys().zip(ints).map(|(a, x)| (a.clone(), Rational::from_integer(x / &content))).collect()
            }
        };
        BracketCoefficients { coeffs, normalization, ..self.clone() }
    }

    /// Canonical JSON, ordered by increasing lex index.
    pub fn to_json_value(&self) -> serde_json::Value {
        let file = CoefficientsFile {
            n: self.n,
            v: self.v,
            k1: self.k1,
            k2: self.k2,
            normalization: self.normalization,
            coefficients: self
                .coeffs
                .iter()
                .map(|(a, c)| CoefficientEntry { alpha: a.0.clone(), value: format_rational(c) })
                .collect(),
        };
        serde_json::to_value(file).expect("plain data serializes")
    }

    pub fn to_json_string(&self) -> String {
        self.to_json_value().to_string()
    }

    pub fn from_json_str(s: &str) -> Result<BracketCoefficients, SolverError> {
        let file: CoefficientsFile = serde_json::from_str(s).map_err(|e| SolverError::Malformed(e.to_string()))?;
        let mut coeffs = BTreeMap::new();
        for e in file.coefficients {
            if e.alpha.len() != file.n + 1 || e.alpha.iter().sum::<u32>() != file.v {
                return Err(SolverError::Malformed(format!("index {:?} does not fit n, v", e.alpha)));
            }
            let c = parse_rational(&e.value).map_err(|e| SolverError::Malformed(e.to_string()))?;
            coeffs.insert(IndexTuple(e.alpha), c);
        }
        Ok(BracketCoefficients {
            n: file.n,
            v: file.v,
            k1: file.k1,
            k2: file.k2,
            normalization: file.normalization,
            coeffs,
        })
    }

    /// Plain-text table, one `alpha value` pair per line.
    pub fn to_text(&self) -> String {
        let mut s =
            format!("n={} v={} k1={} k2={} normalization={}\n", self.n, self.v, self.k1, self.k2, self.normalization);
        for (a, c) in &self.coeffs {
            s.push_str(&format!("{a} {}\n", format_rational(c)));
        }
        s
    }
}

fn shifted(alpha: &[i64], adds: &[usize], subs: &[usize]) -> Vec<i64> {
    let mut out = alpha.to_vec();
    for &j in adds {
        out[j] += 1;
    }
    for &j in subs {
        out[j] -= 1;
    }
    out
}

/// `α(m,ℓ,ℓ') = α − 1_m + 1_ℓ + 1_ℓ' − 1_{ℓ+ℓ'−m}`.
pub fn adjusted_index(alpha: &[i64], m: usize, l: usize, lp: usize) -> Vec<i64> {
    shifted(alpha, &[l, lp], &[m, l + lp - m])
}

/// `α̃(m,ℓ,ℓ') = α − 1_m + 1_ℓ + 1_ℓ' − 1_{ℓ+ℓ'−m−1}`.
pub fn adjusted_index_tilde(alpha: &[i64], m: usize, l: usize, lp: usize) -> Vec<i64> {
    shifted(alpha, &[l, lp], &[m, l + lp - m - 1])
}

/// One linear relation `0 = Σ coefficient · C(index)` in terms of signed
/// index vectors; entries with a negative component stand for `C = 0`.
#[derive(Clone, Debug, Default)]
pub struct Relation {
    pub terms: Vec<(Vec<i64>, Rational)>,
}

impl Relation {
    fn push(&mut self, idx: Vec<i64>, c: Rational) {
        if !c.is_zero() {
            self.terms.push((idx, c));
        }
    }

    /// Evaluates the right-hand side for a given coefficient table.
    pub fn evaluate(&self, c: impl Fn(&IndexTuple) -> Rational) -> Rational {
        self.terms
            .iter()
            .filter_map(|(idx, coef)| to_tuple(idx).map(|t| coef * c(&t)))
            .fold(Rational::zero(), |a, b| a + b)
    }
}

fn to_tuple(idx: &[i64]) -> Option<IndexTuple> {
    idx.iter().map(|&x| u32::try_from(x).ok()).collect::<Option<Vec<_>>>().map(IndexTuple)
}

fn r(x: i64) -> Rational {
    Rational::from_integer(x.into())
}

/// Least `m` with `α_m > 0`.
pub fn pivot_position(alpha: &IndexTuple) -> Option<usize> {
    alpha.0.iter().position(|&x| x > 0)
}

/// The relation attached to `α ≠ (0,…,0,v)`, with `m` the least index such
/// that `α_m > 0`. Built group by group, without simplification.
pub fn recurrence_relation(alpha: &IndexTuple, k1: i64, k2: i64) -> Option<Relation> {
    let n = alpha.0.len() - 1;
    let m = pivot_position(alpha)?;
    if m >= n {
        return None;
    }
    let a: Vec<i64> = alpha.0.iter().map(|&x| x as i64).collect();
    let delta = |p: usize, q: usize| i64::from(p == q);
    let mut rel = Relation::default();

    // C(α) α_m (k₁ + 1 − n + m)
    rel.push(a.clone(), r(a[m] * (k1 + 1 - n as i64 + m as i64)));

    // C(α − 1_m + 1_{m+1}) (α − 1_m + 1_{m+1})_{m+1} (k₂ − m)
    let b = shifted(&a, &[m + 1], &[m]);
    rel.push(b.clone(), r(b[m + 1] * (k2 - m as i64)));

    // C(α) α_m (α_m − 1)
    rel.push(a.clone(), r(a[m] * (a[m] - 1)));

    for l in m + 1..=n {
        for lp in l..=n {
            // + C(α̃) α̃_ℓ (α̃_ℓ' − δ) (2 − δ)   over ℓ + ℓ' − m − 1 ≤ n
            if l + lp - m - 1 <= n {
                let t = adjusted_index_tilde(&a, m, l, lp);
                let c = t[l] * (t[lp] - delta(l, lp)) * (2 - delta(l, lp));
                rel.push(t, r(c));
            }
            // − C(α(m,ℓ,ℓ')) α_ℓ (α_ℓ' − δ) (2 − δ)   over ℓ + ℓ' − m ≤ n
            if l + lp - m <= n {
                let t = adjusted_index(&a, m, l, lp);
                let c = t[l] * (t[lp] - delta(l, lp)) * (2 - delta(l, lp));
                rel.push(t, r(-c));
            }
        }
    }
    Some(rel)
}

fn check_params(n: usize, k1: i64, k2: i64) -> Result<(), SolverError> {
    if n == 0 {
        return Err(SolverError::EmptySize);
    }
    if k1 < 1 || k2 < 1 {
        return Err(SolverError::NonPositiveWeight { k1, k2 });
    }
    if k1 < n as i64 {
        return Err(SolverError::WeightBelowMatrixSize { k1, n });
    }
    Ok(())
}

/// Solves the recurrence for all `α` with `|α| = v`.
///
/// Requires `k₁ ≥ n`, which keeps every pivot `α_m (k₁ + α_m − n + m)`
/// positive.
pub fn solve_coefficients(
    n: usize,
    v: u32,
    k1: i64,
    k2: i64,
    normalization: Normalization,
) -> Result<BracketCoefficients, SolverError> {
    check_params(n, k1, k2)?;
    let top = IndexTuple::top(n, v);
    let mut coeffs: BTreeMap<IndexTuple, Rational> = BTreeMap::new();
    for alpha in IndexTuple::enumerate(n, v) {
        if alpha == top {
            coeffs.insert(alpha, Rational::one());
            continue;
        }
        let rel = recurrence_relation(&alpha, k1, k2).expect("alpha differs from the top index");
        let own: Vec<i64> = alpha.0.iter().map(|&x| x as i64).collect();
        let mut pivot = Rational::zero();
        let mut rest = Rational::zero();
        for (idx, c) in &rel.terms {
            if *idx == own {
                pivot += c;
            } else if let Some(t) = to_tuple(idx) {
                debug_assert!(t < alpha, "relation refers forward: {t} >= {alpha}");
                rest += c * coeffs.get(&t).cloned().unwrap_or_else(Rational::zero);
            }
        }
        if pivot.is_zero() {
            return Err(SolverError::ZeroPivot(alpha));
        }
        coeffs.insert(alpha, -rest / pivot);
    }
    let unit = BracketCoefficients { n, v, k1, k2, normalization: Normalization::Unit, coeffs };
    Ok(match normalization {
        Normalization::Unit => unit,
        Normalization::Integral => unit.renormalize(Normalization::Integral),
    })
}

/// `Σ_α C(α) Π_j Q_j^{α_j}`, fully expanded in the entries of `W` and `Z`.
pub fn assemble_bracket(bc: &BracketCoefficients, gens: &QGeneratorSet) -> Result<MultiPoly, SolverError> {
    if gens.n != bc.n {
        return Err(SolverError::SizeMismatch { coeffs: bc.n, gens: gens.n });
    }
    let mut powers: HashMap<(usize, u32), MultiPoly> = HashMap::new();
    let mut out = MultiPoly::zero();
    for (alpha, c) in &bc.coeffs {
        if c.is_zero() {
            continue;
        }
        let mut term = MultiPoly::constant(c.clone());
        for (j, &e) in alpha.0.iter().enumerate() {
            if e > 0 {
                let p = powers.entry((j, e)).or_insert_with(|| gens.polys[j].pow(e));
                term = &term * p;
            }
        }
        out = &out + &term;
    }
    Ok(out)
}

/// Classical brackets: `(−1)^r C(k₁+v−1, s) C(k₂+v−1, r)` over `r + s = v`,
/// scaled so that the `(0, v)` entry is 1. Keys are `(r, s)`.
pub fn classical_rc_coefficients(k1: i64, k2: i64, v: u32) -> BTreeMap<(u32, u32), Rational> {
    let b = |top: i64, k: u32| Rational::from_integer(binomial(top.max(0) as u64, k as u64));
    let raw: BTreeMap<(u32, u32), Rational> = (0..=v)
        .map(|r_| {
            let s = v - r_;
            let sign = if r_ % 2 == 0 { Rational::one() } else { -Rational::one() };
            ((r_, s), sign * b(k1 + v as i64 - 1, s) * b(k2 + v as i64 - 1, r_))
        })
        .collect();
    let top = raw[&(0, v)].clone();
    raw.into_iter().map(|(k, c)| (k, c / &top)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{rat, rat_frac};
    use crate::generators::q_generators;
    use crate::laplacian::{laplace_total, OperatorContext};

    fn t(a: &[u32]) -> IndexTuple {
        IndexTuple(a.to_vec())
    }

    #[test]
    fn enumeration_order_and_count() {
        let all = IndexTuple::enumerate(2, 2);
        assert_eq!(all.len(), 6);
        assert_eq!(all[0], IndexTuple::top(2, 2));
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(IndexTuple::enumerate(3, 0), vec![t(&[0, 0, 0, 0])]);
        assert_eq!(IndexTuple::enumerate(3, 3).len(), 20);
    }

    #[test]
    fn lex_order_matches_first_difference() {
        assert!(t(&[1, 0, 0]) > t(&[0, 2, 1]));
        assert!(t(&[0, 1, 1]) > t(&[0, 0, 2]));
    }

    #[test]
    fn n1_examples() {
        let bc = solve_coefficients(1, 1, 4, 6, Normalization::Unit).unwrap();
        assert_eq!(bc.get(&t(&[0, 1])), rat(1));
        assert_eq!(bc.get(&t(&[1, 0])), rat_frac(-3, 2));

        let bc = solve_coefficients(1, 2, 4, 6, Normalization::Unit).unwrap();
        assert_eq!(bc.get(&t(&[0, 2])), rat(1));
        assert_eq!(bc.get(&t(&[1, 1])), rat_frac(-7, 2));
        assert_eq!(bc.get(&t(&[2, 0])), rat_frac(21, 10));

        let bc = bc.renormalize(Normalization::Integral);
        let vals: Vec<Rational> = bc.coeffs.values().cloned().collect();
        assert_eq!(vals, vec![rat(10), rat(-35), rat(21)]);
    }

    #[test]
    fn v0_is_trivial_product() {
        let bc = solve_coefficients(2, 0, 2, 2, Normalization::Integral).unwrap();
        assert_eq!(bc.coeffs.len(), 1);
        assert_eq!(bc.get(&t(&[0, 0, 0])), rat(1));
        let g = q_generators(2).unwrap();
        assert_eq!(assemble_bracket(&bc, &g).unwrap(), MultiPoly::one());
    }

    #[test]
    fn weight_below_size_rejected() {
        assert_eq!(
            solve_coefficients(2, 1, 1, 5, Normalization::Integral),
            Err(SolverError::WeightBelowMatrixSize { k1: 1, n: 2 })
        );
        assert!(solve_coefficients(0, 1, 1, 1, Normalization::Unit).is_err());
        assert!(solve_coefficients(1, 1, 1, 0, Normalization::Unit).is_err());
    }

    #[test]
    fn solved_values_satisfy_every_relation() {
        for (n, v, k1, k2) in [(1, 4, 3, 5), (2, 3, 2, 3), (3, 2, 4, 3)] {
            let bc = solve_coefficients(n, v, k1, k2, Normalization::Unit).unwrap();
            for alpha in IndexTuple::enumerate(n, v) {
                if let Some(rel) = recurrence_relation(&alpha, k1, k2) {
                    assert!(rel.evaluate(|b| bc.get(b)).is_zero(), "{alpha}");
                }
            }
        }
    }

    #[test]
    fn assembled_bracket_examples() {
        let bc = solve_coefficients(1, 1, 4, 6, Normalization::Unit).unwrap();
        let p = assemble_bracket(&bc, &q_generators(1).unwrap()).unwrap();
        assert_eq!(p, "z[1,1] - 3/2*w[1,1]".parse().unwrap());
        assert!(assemble_bracket(&bc, &q_generators(2).unwrap()).is_err());
    }

    #[test]
    fn bracket_is_harmonic_small_grid() {
        for (n, v, k1, k2) in [(1, 3, 2, 5), (2, 1, 2, 2), (2, 2, 3, 2)] {
            let bc = solve_coefficients(n, v, k1, k2, Normalization::Integral).unwrap();
            let p = assemble_bracket(&bc, &q_generators(n).unwrap()).unwrap();
            assert_eq!(p.total_degree(), Some(n as u32 * v));
            let ctx = OperatorContext::new(n, k1, k2).unwrap();
            assert!(laplace_total(&p, &ctx).is_zero(), "n={n} v={v}");
        }
    }

    #[test]
    fn classical_examples() {
        let c = classical_rc_coefficients(4, 6, 1);
        assert_eq!(c[&(0, 1)], rat(1));
        assert_eq!(c[&(1, 0)], rat_frac(-3, 2));
        let c = classical_rc_coefficients(5, 5, 3);
        for r_ in 0..=3 {
            assert_eq!(c[&(r_, 3 - r_)], -c[&(3 - r_, r_)].clone());
        }
        let c = classical_rc_coefficients(4, 6, 0);
        assert_eq!(c.len(), 1);
        assert_eq!(c[&(0, 0)], rat(1));
    }

    #[test]
    fn json_round_trip() {
        let bc = solve_coefficients(2, 2, 2, 3, Normalization::Integral).unwrap();
        let s = bc.to_json_string();
        assert!(
            s.starts_with(r#"{"n":2,"v":2,"k1":2,"k2":3,"normalization":"integral","coefficients":[{"alpha":[0,0,2]"#)
        );
        assert_eq!(BracketCoefficients::from_json_str(&s).unwrap(), bc);
        assert!(BracketCoefficients::from_json_str(
            r#"{"n":1,"v":1,"k1":1,"k2":1,"normalization":"unit","coefficients":[{"alpha":[2,0],"value":"1"}]}"#
        )
        .is_err());
    }
}
