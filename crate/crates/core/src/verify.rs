//! Brute-force and randomized oracles for the constructed objects.
//!
//! Every randomized check is driven by a seeded ChaCha stream, so a failing
//! `(check, parameters, seed)` triple reproduces exactly.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::exactalg::{
    binomial, det_bareiss, format_rational, rank_bareiss, Family, Monomial, MultiPoly, Rational, VarId,
};
use crate::generators::{det_poly, generic_matrix, q_generators, q_minor, GenError, MinorSpec, QGeneratorSet};
use crate::laplacian::{
    associated_polynomial, delta_st, l_op, laplace_total, pairing, OperatorContext, OperatorError, Side,
};
use crate::solver::{
    assemble_bracket, classical_rc_coefficients, solve_coefficients, BracketCoefficients, IndexTuple, Normalization,
    SolverError,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("association requires k1, k2 >= n (n={n}, k1={k1}, k2={k2})")]
    WeightBelowSize { n: usize, k1: i64, k2: i64 },
    #[error("check requires degree v >= 1")]
    DegreeZero,
    #[error("symbolic check limited to n <= {max} (got n={n})")]
    TooLarge { n: usize, max: usize },
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Generators(#[from] GenError),
    #[error(transparent)]
    Operator(#[from] OperatorError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Outcome of one check. A failing report always carries a witness.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub check: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub v: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k1: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k2: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub info: Option<serde_json::Value>,
}

impl VerificationReport {
    pub fn new(check: &str) -> Self {
        Self {
            check: check.to_string(),
            n: None,
            v: None,
            k1: None,
            k2: None,
            seed: None,
            status: Status::Pass,
            witness: None,
            info: None,
        }
    }

    pub fn n(mut self, n: usize) -> Self {
        self.n = Some(n);
        self
    }

    pub fn v(mut self, v: u32) -> Self {
        self.v = Some(v);
        self
    }

    pub fn weights(mut self, k1: i64, k2: i64) -> Self {
        self.k1 = Some(k1);
        self.k2 = Some(k2);
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    /// Passes unless `witness` is given.
    pub fn outcome(mut self, witness: Option<serde_json::Value>) -> Self {
        self.status = if witness.is_some() { Status::Fail } else { Status::Pass };
        self.witness = witness;
        self
    }

    /// Attaches informational data without changing the status.
    pub fn with_info(mut self, info: serde_json::Value) -> Self {
        self.info = Some(info);
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }
}

/// Seeded source of small-height rationals and matrices.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// Numerator in `[-20, 20]`, denominator in `[1, 5]`.
    pub fn rational(&mut self) -> Rational {
        let num: i64 = self.rng.gen_range(-20..=20);
        let den: i64 = self.rng.gen_range(1..=5);
        Rational::new(num.into(), den.into())
    }

    pub fn small_int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn matrix(&mut self, rows: usize, cols: usize) -> Vec<Vec<Rational>> {
        (0..rows).map(|_| (0..cols).map(|_| self.rational()).collect()).collect()
    }

    /// Random invertible square matrix (singular draws are resampled).
    pub fn invertible(&mut self, n: usize) -> Vec<Vec<Rational>> {
        loop {
            let m = self.matrix(n, n);
            if !det_bareiss(&m).is_zero() {
                return m;
            }
        }
    }
}

pub fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| (0..cols).map(|j| (0..inner).fold(Rational::zero(), |acc, k| acc + &row[k] * &b[k][j])).collect())
        .collect()
}

pub fn transpose(a: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols).map(|j| a.iter().map(|row| row[j].clone()).collect()).collect()
}

/// Point assigning `W ↦ w`, `Z ↦ z` entrywise.
pub fn wz_point(w: &[Vec<Rational>], z: &[Vec<Rational>]) -> HashMap<VarId, Rational> {
    let mut pt = HashMap::new();
    for (s, (wr, zr)) in w.iter().zip(z).enumerate() {
        for (t, (a, b)) in wr.iter().zip(zr).enumerate() {
            pt.insert(VarId::w(s + 1, t + 1), a.clone());
            pt.insert(VarId::z(s + 1, t + 1), b.clone());
        }
    }
    pt
}

fn leading_terms(p: &MultiPoly, limit: usize) -> String {
    let head: Vec<(Monomial, Rational)> = p.terms().take(limit).map(|(m, c)| (m.clone(), c.clone())).collect();
    let mut s = MultiPoly::from_terms(head).to_string();
    if p.num_terms() > limit {
        s.push_str(" + ...");
    }
    s
}

fn nonzero_witness(label: serde_json::Value, p: &MultiPoly) -> serde_json::Value {
    json!({"at": label, "terms": p.num_terms(), "leading": leading_terms(p, 4)})
}

fn require_association(n: usize, k1: i64, k2: i64) -> Result<(usize, usize), VerifyError> {
    if k1 < n as i64 || k2 < n as i64 {
        return Err(VerifyError::WeightBelowSize { n, k1, k2 });
    }
    Ok((k1 as usize, k2 as usize))
}

/// Substitutes `W = X₁ᵗY₁`, `Z = X₂ᵗY₂` and applies every `Δ_{s,t}`.
pub fn check_pluriharmonic(q: &MultiPoly, n: usize, k1: i64, k2: i64) -> Result<VerificationReport, VerifyError> {
    let (c1, c2) = require_association(n, k1, k2)?;
    let p = associated_polynomial(q, n, c1, c2);
    let mut witness = None;
    'outer: for s in 1..=n {
        for t in 1..=n {
            let d = delta_st(&p, s, t, c1 + c2);
            if !d.is_zero() {
                witness = Some(nonzero_witness(json!([s, t]), &d));
                break 'outer;
            }
        }
    }
    Ok(VerificationReport::new("pluriharmonic").n(n).weights(k1, k2).outcome(witness))
}

/// `Σ_s Δ_{s,s} P = 0` after the same substitution.
pub fn check_harmonic(q: &MultiPoly, n: usize, k1: i64, k2: i64) -> Result<VerificationReport, VerifyError> {
    let (c1, c2) = require_association(n, k1, k2)?;
    let p = associated_polynomial(q, n, c1, c2);
    let total = (1..=n).fold(MultiPoly::zero(), |acc, s| &acc + &delta_st(&p, s, s, c1 + c2));
    let witness = (!total.is_zero()).then(|| nonzero_witness(json!("sum"), &total));
    Ok(VerificationReport::new("harmonic").n(n).weights(k1, k2).outcome(witness))
}

/// `Σ_i (L_{i,i} + L'_{i,i}) Q = 0` directly in `W, Z` coordinates.
pub fn check_laplace_vanishes(q: &MultiPoly, ctx: &OperatorContext) -> VerificationReport {
    let lap = laplace_total(q, ctx);
    let witness = (!lap.is_zero()).then(|| nonzero_witness(json!("laplace_total"), &lap));
    VerificationReport::new("laplace_total").n(ctx.n).weights(ctx.k1, ctx.k2).outcome(witness)
}

/// `Δ_{i,j} Q(X₁ᵗY₁, X₂ᵗY₂) = ((L_{i,j} + L'_{i,j}) Q)(X₁ᵗY₁, X₂ᵗY₂)` for all `i, j`.
pub fn check_bridge_identity(q: &MultiPoly, n: usize, k1: i64, k2: i64) -> Result<VerificationReport, VerifyError> {
    let ctx = OperatorContext::new(n, k1, k2)?;
    let (c1, c2) = (k1 as usize, k2 as usize);
    let p = associated_polynomial(q, n, c1, c2);
    let mut witness = None;
    'outer: for i in 1..=n {
        for j in 1..=n {
            let lhs = delta_st(&p, i, j, c1 + c2);
            let pulled = &l_op(q, i, j, &ctx, Side::W) + &l_op(q, i, j, &ctx, Side::Z);
            let rhs = associated_polynomial(&pulled, n, c1, c2);
            if lhs != rhs {
                witness = Some(nonzero_witness(json!([i, j]), &(&lhs - &rhs)));
                break 'outer;
            }
        }
    }
    Ok(VerificationReport::new("bridge_identity").n(n).weights(k1, k2).outcome(witness))
}

/// Randomized `Q(A W₀ ᵗB, A Z₀ ᵗB) = det(A)^v det(B)^v Q(W₀, Z₀)`.
pub fn check_homogeneity(q: &MultiPoly, n: usize, v: u32, trials: usize, seed: u64) -> VerificationReport {
    let mut rng = Sampler::new(seed);
    let mut witness = None;
    for trial in 0..trials {
        let a = rng.invertible(n);
        let b = rng.invertible(n);
        let w0 = rng.matrix(n, n);
        let z0 = rng.matrix(n, n);
        let bt = transpose(&b);
        let aw = mat_mul(&mat_mul(&a, &w0), &bt);
        let az = mat_mul(&mat_mul(&a, &z0), &bt);
        let lhs = q.evaluate_rational(&wz_point(&aw, &az)).expect("all W, Z entries assigned");
        let base = q.evaluate_rational(&wz_point(&w0, &z0)).expect("all W, Z entries assigned");
        let scale = (det_bareiss(&a) * det_bareiss(&b)).pow(v as i32);
        if lhs != &scale * &base {
            witness = Some(json!({
                "trial": trial,
                "lhs": format_rational(&lhs),
                "rhs": format_rational(&(&scale * &base)),
            }));
            break;
        }
    }
    VerificationReport::new("homogeneity").n(n).v(v).seed(seed).outcome(witness)
}

/// Symbolic homogeneity with generic `A = (x[i,j])`, `B = (y[i,j])`.
pub fn check_homogeneity_symbolic(q: &MultiPoly, n: usize, v: u32) -> Result<VerificationReport, VerifyError> {
    if n > 2 {
        return Err(VerifyError::TooLarge { n, max: 2 });
    }
    let a = |i, s| MultiPoly::var(VarId::x(i, s));
    let b = |j, t| MultiPoly::var(VarId::y(j, t));
    let mut map = HashMap::new();
    for i in 1..=n {
        for j in 1..=n {
            for fam in [Family::W, Family::Z] {
                let mut e = MultiPoly::zero();
                for s in 1..=n {
                    for t in 1..=n {
                        let f = MultiPoly::var(VarId::new(fam, s, t));
                        e = &e + &(&(&a(i, s) * &f) * &b(j, t));
                    }
                }
                map.insert(VarId::new(fam, i, j), e);
            }
        }
    }
    let lhs = q.substitute(&map);
    let dets = &det_poly(&generic_matrix(Family::X, n)) * &det_poly(&generic_matrix(Family::Y, n));
    let rhs = &dets.pow(v) * q;
    let diff = &lhs - &rhs;
    let witness = (!diff.is_zero()).then(|| nonzero_witness(json!("lhs-rhs"), &diff));
    Ok(VerificationReport::new("homogeneity_symbolic").n(n).v(v).outcome(witness))
}

fn generator_values(gens: &QGeneratorSet, pt: &HashMap<VarId, Rational>) -> Vec<Rational> {
    gens.polys.iter().map(|q| q.evaluate_rational(pt).expect("generators only use W, Z")).collect()
}

/// Linear independence of all `C(n+v, v)` degree-`v` products of the
/// generators, certified by an evaluation matrix of full column rank.
pub fn dimension_basis(n: usize, v: u32, seed: u64) -> Result<VerificationReport, VerifyError> {
    let gens = q_generators(n)?;
    let products = IndexTuple::enumerate(n, v);
    let expected = binomial((n as u64) + v as u64, v as u64);
    let count = products.len();
    let mut rng = Sampler::new(seed);
    let rows: Vec<Vec<Rational>> = (0..count + 2)
        .map(|_| {
            let vals = generator_values(&gens, &wz_point(&rng.matrix(n, n), &rng.matrix(n, n)));
            products
                .iter()
                .map(|alpha| alpha.0.iter().zip(&vals).fold(Rational::one(), |acc, (&e, x)| acc * x.pow(e as i32)))
                .collect()
        })
        .collect();
    let rank = rank_bareiss(&rows);
    let ok = rank == count && num_bigint::BigInt::from(count) == expected;
    let info = json!({"products": count, "expected": expected.to_string(), "rank": rank});
    let report = VerificationReport::new("dimension_basis").n(n).v(v).seed(seed);
    Ok(report.with_info(info.clone()).outcome((!ok).then_some(info)))
}

/// The sums `Σ_i Q_a^{[i;i]}` for `a = 0..n−1`.
pub fn minor_sums(n: usize) -> Result<Vec<MultiPoly>, VerifyError> {
    (0..n as i64)
        .map(|a| (1..=n).try_fold(MultiPoly::zero(), |acc, i| Ok(&acc + &q_minor(n, a, &MinorSpec::single(i, i))?)))
        .collect()
}

/// Rank certificate that `Σ_i Q_a^{[i;i]}` (`0 ≤ a < n`) are linearly
/// independent over the rationals. This is weaker than independence over
/// the generator ring.
pub fn check_minor_sums_independent(n: usize, seed: u64) -> Result<VerificationReport, VerifyError> {
    let sums = minor_sums(n)?;
    let mut rng = Sampler::new(seed);
    let rows: Vec<Vec<Rational>> = (0..n + 2)
        .map(|_| {
            let pt = wz_point(&rng.matrix(n, n), &rng.matrix(n, n));
            sums.iter().map(|p| p.evaluate_rational(&pt).expect("W, Z assigned")).collect()
        })
        .collect();
    let rank = rank_bareiss(&rows);
    let info = json!({"polys": n, "rank": rank});
    let report = VerificationReport::new("minor_sums_independent").n(n).seed(seed);
    Ok(report.with_info(info.clone()).outcome((rank != n).then_some(info)))
}

/// Dimension of the solution space of `laplace_total(Σ C(α) Q^α) = 0`,
/// computed from the full monomial coefficient system. Also reports whether
/// the recurrence solution lies in that kernel.
pub fn kernel_dimension(n: usize, v: u32, k1: i64, k2: i64) -> Result<(usize, bool), VerifyError> {
    let ctx = OperatorContext::new(n, k1, k2)?;
    let gens = q_generators(n)?;
    let alphas = IndexTuple::enumerate(n, v);
    let images: Vec<MultiPoly> = alphas
        .iter()
        .map(|alpha| {
            let prod = alpha.0.iter().enumerate().fold(MultiPoly::one(), |acc, (j, &e)| &acc * &gens.polys[j].pow(e));
            laplace_total(&prod, &ctx)
        })
        .collect();
    let mut monomials: BTreeMap<Monomial, usize> = BTreeMap::new();
    for img in &images {
        for (m, _) in img.terms() {
            let next = monomials.len();
            monomials.entry(m.clone()).or_insert(next);
        }
    }
    let rows: Vec<Vec<Rational>> =
        monomials.keys().map(|m| images.iter().map(|img| img.coefficient(m)).collect()).collect();
    let rank = rank_bareiss(&rows);
    let kernel = alphas.len() - rank;

    let bc = solve_coefficients(n, v, k1, k2, Normalization::Unit)?;
    let in_kernel = monomials.keys().all(|m| {
        alphas
            .iter()
            .zip(&images)
            .fold(Rational::zero(), |acc, (a, img)| acc + bc.get(a) * img.coefficient(m))
            .is_zero()
    });
    Ok((kernel, in_kernel))
}

pub fn check_uniqueness(n: usize, v: u32, k1: i64, k2: i64) -> Result<VerificationReport, VerifyError> {
    let (kernel, in_kernel) = kernel_dimension(n, v, k1, k2)?;
    let info = json!({"kernel_dim": kernel, "solver_in_kernel": in_kernel});
    let report = VerificationReport::new("uniqueness").n(n).v(v).weights(k1, k2);
    let ok = kernel == 1 && in_kernel;
    Ok(report.with_info(info.clone()).outcome((!ok).then_some(info)))
}

/// `n = 1`: recurrence output equals the classical bracket coefficients with
/// `(α₀, α₁) = (r, s)`.
pub fn check_classical_agreement(v: u32, k1: i64, k2: i64) -> Result<VerificationReport, VerifyError> {
    let bc = solve_coefficients(1, v, k1, k2, Normalization::Unit)?;
    let classical = classical_rc_coefficients(k1, k2, v);
    let mismatch = classical.iter().find(|((r, s), c)| bc.get(&IndexTuple(vec![*r, *s])) != **c);
    let witness = mismatch.map(|((r, s), c)| {
        json!({
            "r": r, "s": s,
            "classical": format_rational(c),
            "solver": format_rational(&bc.get(&IndexTuple(vec![*r, *s]))),
        })
    });
    Ok(VerificationReport::new("classical_agreement").n(1).v(v).weights(k1, k2).outcome(witness))
}

/// Integral normalization: integers, content 1, positive top coefficient.
pub fn check_integrality(bc: &BracketCoefficients) -> VerificationReport {
    let integral = bc.renormalize(Normalization::Integral);
    let ints: Vec<num_bigint::BigInt> = integral.coeffs.values().map(|c| c.numer().clone()).collect();
    let all_int = integral.coeffs.values().all(|c| c.is_integer());
    let content = ints.iter().fold(num_bigint::BigInt::zero(), |acc, x| num_integer::Integer::gcd(&acc, x));
    let ok = all_int && content.is_one() && integral.top() > Rational::zero();
    let witness = (!ok).then(|| json!({"content": content.to_string(), "all_integer": all_int}));
    VerificationReport::new("integrality").n(bc.n).v(bc.v).weights(bc.k1, bc.k2).outcome(witness)
}

fn gen_or_zero(gens: &QGeneratorSet, a: i64) -> MultiPoly {
    usize::try_from(a).ok().and_then(|a| gens.polys.get(a).cloned()).unwrap_or_default()
}

/// `L^{(k₁)}_{i,i} Q_a = (k₁+1−n+a) Q_a^{[i;i]}` for `a < n` and
/// `L'^{(k₂)}_{i,i} Q_a = (k₂+1−a) Q_{a−1}^{[i;i]}` for `a ≥ 1`, every `i`.
pub fn check_generator_operator_identities(n: usize, k1: i64, k2: i64) -> Result<VerificationReport, VerifyError> {
    let ctx = OperatorContext::new(n, k1, k2)?;
    let gens = q_generators(n)?;
    let mut witness = None;
    'outer: for i in 1..=n {
        let spec = MinorSpec::single(i, i);
        for a in 0..=n {
            if a < n {
                let lhs = l_op(&gens.polys[a], i, i, &ctx, Side::W);
                let rhs =
                    q_minor(n, a as i64, &spec)?.scale(&Rational::from_integer((k1 + 1 - n as i64 + a as i64).into()));
                if lhs != rhs {
                    witness = Some(json!({"identity": "L_W", "i": i, "a": a}));
                    break 'outer;
                }
            }
            if a >= 1 {
                let lhs = l_op(&gens.polys[a], i, i, &ctx, Side::Z);
                let rhs = q_minor(n, a as i64 - 1, &spec)?.scale(&Rational::from_integer((k2 + 1 - a as i64).into()));
                if lhs != rhs {
                    witness = Some(json!({"identity": "L_Z", "i": i, "a": a}));
                    break 'outer;
                }
            }
        }
    }
    Ok(VerificationReport::new("generator_operator_identities").n(n).weights(k1, k2).outcome(witness))
}

/// The pairing recursions, for all `0 ≤ a, b ≤ n` and every `i`, with
/// out-of-range generators and minors read as zero:
///
/// `(Q_a,Q_b)_W = 2 Q_a Q_b^{[i;i]} − 2 Q_{a−1}^{[i;i]} Q_{b+1} + (Q_{a−1},Q_{b+1})_W`
/// `(Q_a,Q_b)_Z = 2 Q_{a−1}^{[i;i]} Q_b − 2 Q_{a−1} Q_b^{[i;i]} + (Q_{a−1},Q_{b+1})_Z`
pub fn check_pairing_recursions(n: usize) -> Result<VerificationReport, VerifyError> {
    let gens = q_generators(n)?;
    let two = Rational::from_integer(2.into());
    let mut witness = None;
    'outer: for i in 1..=n {
        let spec = MinorSpec::single(i, i);
        let minor = |a: i64| q_minor(n, a, &spec);
        for a in 0..=n as i64 {
            for b in 0..=n as i64 {
                let qa = gen_or_zero(&gens, a);
                let qb = gen_or_zero(&gens, b);
                let qam = gen_or_zero(&gens, a - 1);
                let qbp = gen_or_zero(&gens, b + 1);

                let lhs_w = pairing(&qa, &qb, i, Side::W, n);
                let head_w = (&(&qa * &minor(b)?) - &(&minor(a - 1)? * &qbp)).scale(&two);
                let rhs_w = &head_w + &pairing(&qam, &qbp, i, Side::W, n);
                if lhs_w != rhs_w {
                    witness = Some(json!({"identity": "pairing_W", "i": i, "a": a, "b": b}));
                    break 'outer;
                }

                let lhs_z = pairing(&qa, &qb, i, Side::Z, n);
                let head_z = (&(&minor(a - 1)? * &qb) - &(&qam * &minor(b)?)).scale(&two);
                let rhs_z = &head_z + &pairing(&qam, &qbp, i, Side::Z, n);
                if lhs_z != rhs_z {
                    witness = Some(json!({"identity": "pairing_Z", "i": i, "a": a, "b": b}));
                    break 'outer;
                }
            }
        }
    }
    Ok(VerificationReport::new("pairing_recursions").n(n).outcome(witness))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Suite {
    #[default]
    Fast,
    Full,
}

impl std::str::FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "fast" => Ok(Suite::Fast),
            "full" => Ok(Suite::Full),
            other => Err(format!("unknown suite {other:?}")),
        }
    }
}

/// Runs the selected suite against the solved bracket for `(n, v, k₁, k₂)`.
/// Reports come back sorted by check name.
pub fn run_suite(
    n: usize,
    v: u32,
    k1: i64,
    k2: i64,
    seed: u64,
    suite: Suite,
) -> Result<Vec<VerificationReport>, VerifyError> {
    require_association(n, k1, k2)?;
    let ctx = OperatorContext::new(n, k1, k2)?;
    let bc = solve_coefficients(n, v, k1, k2, Normalization::Integral)?;
    let gens = q_generators(n)?;
    let q = assemble_bracket(&bc, &gens)?;

    let mut reports = vec![
        check_laplace_vanishes(&q, &ctx).v(v),
        check_integrality(&bc),
        check_homogeneity(&q, n, v, if suite == Suite::Full { 100 } else { 20 }, seed),
    ];
    if n == 1 {
        reports.push(check_classical_agreement(v, k1, k2)?);
    }
    if suite == Suite::Full {
        reports.push(check_pluriharmonic(&q, n, k1, k2)?.v(v));
        reports.push(check_harmonic(&q, n, k1, k2)?.v(v));
        reports.push(check_bridge_identity(&q, n, k1, k2)?.v(v));
        if n <= 2 && v <= 2 {
            reports.push(check_homogeneity_symbolic(&q, n, v)?);
        }
        reports.push(dimension_basis(n, v, seed)?);
        if n <= 2 && v <= 3 {
            reports.push(check_uniqueness(n, v, k1, k2)?);
        }
        reports.push(check_minor_sums_independent(n, seed)?);
        if n <= 3 {
            reports.push(check_generator_operator_identities(n, k1, k2)?);
        }
        if n <= 2 {
            reports.push(check_pairing_recursions(n)?);
        }
        if v >= 1 {
            reports.push(crate::fourier::check_cusp_vanishing(n, v, k1, k2, 100, seed)?);
        }
    }
    reports.sort_by(|a, b| a.check.cmp(&b.check));
    Ok(reports)
}
