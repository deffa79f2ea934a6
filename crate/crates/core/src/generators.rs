//! The generators `Q_0, …, Q_n`, defined as the λ-coefficients of
//! `det(W + λZ)`, and the analogous coefficients of its minors.

use std::collections::HashMap;

use thiserror::Error;

use crate::exactalg::{Family, MultiPoly, VarId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("malformed minor: {0}")]
    MalformedMinor(String),
    #[error("matrix size must be at least 1")]
    EmptySize,
}

/// `[Q_0, …, Q_n]` for a fixed matrix size `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QGeneratorSet {
    pub n: usize,
    pub polys: Vec<MultiPoly>,
}

impl QGeneratorSet {
    pub fn get(&self, a: usize) -> &MultiPoly {
        &self.polys[a]
    }
}

/// Rows and columns deleted from an `n×n` matrix, 1-based and sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct MinorSpec {
    pub rows_removed: Vec<usize>,
    pub cols_removed: Vec<usize>,
}

impl MinorSpec {
    pub fn new(rows_removed: Vec<usize>, cols_removed: Vec<usize>) -> Self {
        Self { rows_removed, cols_removed }
    }

    /// Deletes row `i` and column `j`.
    pub fn single(i: usize, j: usize) -> Self {
        Self { rows_removed: vec![i], cols_removed: vec![j] }
    }

    pub fn len(&self) -> usize {
        self.rows_removed.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows_removed.is_empty()
    }

    fn validate(&self, n: usize) -> Result<(), GenError> {
        if self.rows_removed.len() != self.cols_removed.len() {
            return Err(GenError::MalformedMinor(format!(
                "{} rows but {} columns removed",
                self.rows_removed.len(),
                self.cols_removed.len()
            )));
        }
        for (name, set) in [("row", &self.rows_removed), ("column", &self.cols_removed)] {
            if set.iter().any(|&i| i == 0 || i > n) {
                return Err(GenError::MalformedMinor(format!("{name} index outside 1..={n}")));
            }
            if set.windows(2).any(|w| w[0] >= w[1]) {
                return Err(GenError::MalformedMinor(format!("{name} indices not strictly increasing")));
            }
        }
        Ok(())
    }
}

/// Commutative ring operations needed by the cofactor expansion.
trait DetRing: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn is_zero(&self) -> bool;
}

impl DetRing for MultiPoly {
    fn zero() -> Self {
        MultiPoly::zero()
    }
    fn one() -> Self {
        MultiPoly::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn is_zero(&self) -> bool {
        MultiPoly::is_zero(self)
    }
}

/// Polynomial in the formal parameter λ with `MultiPoly` coefficients,
/// stored densely by power. λ never becomes a variable of its own.
#[derive(Clone, Debug, PartialEq, Eq)]
struct LambdaPoly(Vec<MultiPoly>);

impl LambdaPoly {
    fn trim(mut self) -> Self {
        while self.0.last().is_some_and(MultiPoly::is_zero) {
            self.0.pop();
        }
        self
    }
}

impl DetRing for LambdaPoly {
    fn zero() -> Self {
        LambdaPoly(Vec::new())
    }
    fn one() -> Self {
        LambdaPoly(vec![MultiPoly::one()])
    }
    fn add(&self, other: &Self) -> Self {
        let len = self.0.len().max(other.0.len());
        let zero = MultiPoly::zero();
        LambdaPoly((0..len).map(|i| self.0.get(i).unwrap_or(&zero) + other.0.get(i).unwrap_or(&zero)).collect()).trim()
    }
    fn sub(&self, other: &Self) -> Self {
        let len = self.0.len().max(other.0.len());
        let zero = MultiPoly::zero();
        LambdaPoly((0..len).map(|i| self.0.get(i).unwrap_or(&zero) - other.0.get(i).unwrap_or(&zero)).collect()).trim()
    }
    fn mul(&self, other: &Self) -> Self {
        if self.0.is_empty() || other.0.is_empty() {
            return Self::zero();
        }
        let mut out = vec![MultiPoly::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        LambdaPoly(out).trim()
    }
    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}

/// Laplace expansion along successive rows, memoized on the set of columns
/// still available.
fn det_generic<T: DetRing>(m: &[Vec<T>]) -> T {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "square matrix required");
    assert!(n < 32, "matrix too large for cofactor expansion");
    let mut memo: HashMap<u32, T> = HashMap::new();
    let full = if n == 0 { 0 } else { (1u32 << n) - 1 };
    det_rec(m, full, &mut memo)
}

fn det_rec<T: DetRing>(m: &[Vec<T>], cols: u32, memo: &mut HashMap<u32, T>) -> T {
    if cols == 0 {
        return T::one();
    }
    if let Some(v) = memo.get(&cols) {
        return v.clone();
    }
    let n = m.len();
    let row = n - cols.count_ones() as usize;
    let mut acc = T::zero();
    let mut position = 0;
    for c in 0..n {
        if cols & (1 << c) == 0 {
            continue;
        }
        let entry = &m[row][c];
        if !entry.is_zero() {
            let sub = det_rec(m, cols & !(1 << c), memo);
            let prod = entry.mul(&sub);
            acc = if position % 2 == 0 { acc.add(&prod) } else { acc.sub(&prod) };
        }
        position += 1;
    }
    memo.insert(cols, acc.clone());
    acc
}

/// Symbolic determinant of a square matrix of polynomials.
pub fn det_poly(m: &[Vec<MultiPoly>]) -> MultiPoly {
    det_generic(m)
}

/// The generic `n×n` matrix `(f[s,t])` of a variable family.
pub fn generic_matrix(family: Family, n: usize) -> Vec<Vec<MultiPoly>> {
    (1..=n).map(|s| (1..=n).map(|t| MultiPoly::var(VarId::new(family, s, t))).collect()).collect()
}

/// λ-coefficients of `det((W + λZ)^[rows;cols])`, padded to length `n − ℓ + 1`.
pub fn lambda_minor_coefficients(n: usize, spec: &MinorSpec) -> Result<Vec<MultiPoly>, GenError> {
    if n == 0 {
        return Err(GenError::EmptySize);
    }
    spec.validate(n)?;
    let rows: Vec<usize> = (1..=n).filter(|r| !spec.rows_removed.contains(r)).collect();
    let cols: Vec<usize> = (1..=n).filter(|c| !spec.cols_removed.contains(c)).collect();
    let m: Vec<Vec<LambdaPoly>> = rows
        .iter()
        .map(|&s| {
            cols.iter()
                .map(|&t| LambdaPoly(vec![MultiPoly::var(VarId::w(s, t)), MultiPoly::var(VarId::z(s, t))]))
                .collect()
        })
        .collect();
    let mut coeffs = det_generic(&m).0;
    coeffs.resize(rows.len() + 1, MultiPoly::zero());
    Ok(coeffs)
}

/// `Q_0, …, Q_n` from `det(W + λZ) = Σ_a Q_a λ^a`.
pub fn q_generators(n: usize) -> Result<QGeneratorSet, GenError> {
    let polys = lambda_minor_coefficients(n, &MinorSpec::default())?;
    Ok(QGeneratorSet { n, polys })
}

/// Coefficient of `λ^a` in the determinant of the reduced matrix; zero when
/// `a < 0` or `a > n − ℓ`.
pub fn q_minor(n: usize, a: i64, spec: &MinorSpec) -> Result<MultiPoly, GenError> {
    let coeffs = lambda_minor_coefficients(n, spec)?;
    Ok(usize::try_from(a).ok().and_then(|a| coeffs.get(a).cloned()).unwrap_or_default())
}

/// Swaps the `W` and `Z` families, leaving other variables untouched.
pub fn swap_w_z(p: &MultiPoly) -> MultiPoly {
    p.map_vars(|v| match v.family {
        Family::W => VarId { family: Family::Z, ..v },
        Family::Z => VarId { family: Family::W, ..v },
        _ => v,
    })
}
