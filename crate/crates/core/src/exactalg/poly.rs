use std::collections::hash_map::Entry;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{AlgError, QuadFieldElement, Rational};

/// Matrix families the variables are drawn from. `W`, `Z` are `n×n`;
/// `X`, `Y` are `n×k`. The derived order is the canonical family order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    W,
    Z,
    X,
    Y,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::W => 'w',
            Family::Z => 'z',
            Family::X => 'x',
            Family::Y => 'y',
        }
    }

    pub fn from_letter(c: char) -> Option<Family> {
        match c {
            'w' | 'W' => Some(Family::W),
            'z' | 'Z' => Some(Family::Z),
            'x' | 'X' => Some(Family::X),
            'y' | 'Y' => Some(Family::Y),
            _ => None,
        }
    }
}

/// A matrix-entry variable `f[row,col]`, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId {
    pub family: Family,
    pub row: u16,
    pub col: u16,
}

impl VarId {
    pub fn new(family: Family, row: usize, col: usize) -> Self {
        debug_assert!(row >= 1 && col >= 1);
        Self { family, row: row as u16, col: col as u16 }
    }

    pub fn w(row: usize, col: usize) -> Self {
        Self::new(Family::W, row, col)
    }

    pub fn z(row: usize, col: usize) -> Self {
        Self::new(Family::Z, row, col)
    }

    pub fn x(row: usize, col: usize) -> Self {
        Self::new(Family::X, row, col)
    }

    pub fn y(row: usize, col: usize) -> Self {
        Self::new(Family::Y, row, col)
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{},{}]", self.family.letter(), self.row, self.col)
    }
}

/// Sparse exponent vector: `(variable, exponent)` pairs sorted by variable,
/// exponents strictly positive.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(Vec<(VarId, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: VarId) -> Self {
        Monomial(vec![(v, 1)])
    }

    /// Builds a monomial from arbitrary pairs, merging repeats and dropping
    /// zero exponents.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (VarId, u32)>) -> Self {
        let mut acc: BTreeMap<VarId, u32> = BTreeMap::new();
        for (v, e) in pairs {
            *acc.entry(v).or_insert(0) += e;
        }
        Monomial(acc.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn pairs(&self) -> &[(VarId, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn family_degree(&self, family: Family) -> u32 {
        self.0.iter().filter(|(v, _)| v.family == family).map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: VarId) -> u32 {
        match self.0.binary_search_by(|(w, _)| w.cmp(&v)) {
            Ok(i) => self.0[i].1,
            Err(_) => 0,
        }
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// Lowers the exponent of `v` by one; `None` if `v` is absent.
    fn drop_one(&self, v: VarId) -> Option<(u32, Monomial)> {
        let i = self.0.binary_search_by(|(w, _)| w.cmp(&v)).ok()?;
        let e = self.0[i].1;
        let mut out = self.0.clone();
        if e == 1 {
            out.remove(i);
        } else {
            out[i].1 = e - 1;
        }
        Some((e, Monomial(out)))
    }
}

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms live in a `BTreeMap`, so iteration (and therefore every rendering)
/// follows the canonical monomial order. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

pub fn poly_arith(a: &MultiPoly, b: &MultiPoly, op: ArithOp) -> MultiPoly {
    match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
    }
}

impl MultiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn var(v: VarId) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::var(v), Rational::one());
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Adds `c·m` in place, pruning the term if it cancels.
    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// The value if the polynomial is constant (including zero).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn variables(&self) -> BTreeSet<VarId> {
        self.terms.keys().flat_map(|m| m.pairs().iter().map(|&(v, _)| v)).collect()
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly { terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative with respect to `v`.
    pub fn derivative(&self, v: VarId) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            if let Some((e, rest)) = m.drop_one(v) {
                out.add_term(rest, c * Rational::from_integer(e.into()));
            }
        }
        out
    }

    /// Simultaneous substitution; variables absent from `map` stay as they are.
    pub fn substitute(&self, map: &HashMap<VarId, MultiPoly>) -> MultiPoly {
        let mut powers: HashMap<(VarId, u32), MultiPoly> = HashMap::new();
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let mut term = MultiPoly::constant(c.clone());
            let mut kept = Vec::new();
            for &(v, e) in m.pairs() {
                match map.get(&v) {
                    Some(image) => {
                        let pw = powers.entry((v, e)).or_insert_with(|| image.pow(e));
                        term = &term * pw;
                    }
                    None => kept.push((v, e)),
                }
                if term.is_zero() {
                    break;
                }
            }
            if term.is_zero() {
                continue;
            }
            if !kept.is_empty() {
                let rest = Monomial::from_pairs(kept);
                term = term.mul_monomial(&rest);
            }
            for (tm, tc) in term.terms {
                out.add_term(tm, tc);
            }
        }
        out
    }

    /// Applies `f` to every variable, e.g. to swap the `W` and `Z` families.
    pub fn map_vars(&self, f: impl Fn(VarId) -> VarId) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let nm = Monomial::from_pairs(m.pairs().iter().map(|&(v, e)| (f(v), e)));
            out.add_term(nm, c.clone());
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial) -> MultiPoly {
        MultiPoly { terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect() }
    }

    /// Exact value in `Q(√−d)`; every variable must be assigned.
    pub fn evaluate(&self, point: &HashMap<VarId, QuadFieldElement>, d: u64) -> Result<QuadFieldElement, AlgError> {
        if let Some(bad) = point.values().find(|x| x.d != d) {
            return Err(AlgError::FieldMismatch(bad.d, d));
        }
        self.eval_with(
            |v| point.get(&v).cloned(),
            || QuadFieldElement::one(d),
            |c| QuadFieldElement::from_rational(c.clone(), d),
        )
    }

    pub fn evaluate_rational(&self, point: &HashMap<VarId, Rational>) -> Result<Rational, AlgError> {
        self.eval_with(|v| point.get(&v).cloned(), Rational::one, |c| c.clone())
    }

    fn eval_with<T>(
        &self,
        lookup: impl Fn(VarId) -> Option<T>,
        one: impl Fn() -> T,
        coef: impl Fn(&Rational) -> T,
    ) -> Result<T, AlgError>
    where
        T: Clone,
        for<'a> &'a T: Add<&'a T, Output = T> + Mul<&'a T, Output = T>,
    {
        let mut cache: HashMap<(VarId, u32), T> = HashMap::new();
        let mut total: Option<T> = None;
        for (m, c) in &self.terms {
            let mut acc = coef(c);
            for &(v, e) in m.pairs() {
                let power = match cache.entry((v, e)) {
                    Entry::Occupied(slot) => slot.into_mut(),
                    Entry::Vacant(slot) => {
                        let base = lookup(v).ok_or(AlgError::Unassigned(v))?;
                        let mut p = one();
                        for _ in 0..e {
                            p = &p * &base;
                        }
                        slot.insert(p)
                    }
                };
                acc = &acc * &*power;
            }
            total = Some(match total {
                None => acc,
                Some(t) => &t + &acc,
            });
        }
        Ok(match total {
            Some(t) => t,
            None => {
                let o = one();
                &o * &coef(&Rational::zero())
            }
        })
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        if self.is_zero() || rhs.is_zero() {
            return MultiPoly::zero();
        }
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                *acc.entry(ma.mul(mb)).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        MultiPoly { terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: MultiPoly) -> MultiPoly {
        &self + &rhs
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        &self - &rhs
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl From<Rational> for MultiPoly {
    fn from(c: Rational) -> Self {
        MultiPoly::constant(c)
    }
}

impl From<VarId> for MultiPoly {
    fn from(v: VarId) -> Self {
        MultiPoly::var(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{rat, rat_frac};

    fn w11() -> MultiPoly {
        MultiPoly::var(VarId::w(1, 1))
    }
    fn z11() -> MultiPoly {
        MultiPoly::var(VarId::z(1, 1))
    }

    #[test]
    fn arith_examples() {
        let s = poly_arith(&w11(), &z11(), ArithOp::Add);
        assert_eq!(s.num_terms(), 2);
        assert!(poly_arith(&w11(), &MultiPoly::zero(), ArithOp::Mul).is_zero());
        let p = poly_arith(&(&w11() + &z11()), &(&w11() - &z11()), ArithOp::Mul);
        assert_eq!(p, &w11().pow(2) - &z11().pow(2));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(w11().pow(3).derivative(VarId::w(1, 1)), w11().pow(2).scale(&rat(3)));
        assert!(z11().derivative(VarId::w(1, 1)).is_zero());
        let w12 = MultiPoly::var(VarId::w(1, 2));
        assert_eq!((&w11() * &w12).derivative(VarId::w(1, 2)), w11());
    }

    #[test]
    fn substitute_examples() {
        let mut map = HashMap::new();
        map.insert(VarId::w(1, 1), &MultiPoly::var(VarId::x(1, 1)) * &MultiPoly::var(VarId::y(1, 1)));
        assert_eq!(w11().substitute(&map), &MultiPoly::var(VarId::x(1, 1)) * &MultiPoly::var(VarId::y(1, 1)));

        let mut map = HashMap::new();
        map.insert(VarId::w(1, 1), MultiPoly::constant(rat(2)));
        map.insert(VarId::z(1, 1), MultiPoly::constant(rat(3)));
        assert_eq!((&w11() * &z11()).substitute(&map), MultiPoly::constant(rat(6)));

        // unmapped variables survive, mapped ones are replaced simultaneously
        let mut swap = HashMap::new();
        swap.insert(VarId::w(1, 1), z11());
        swap.insert(VarId::z(1, 1), w11());
        let p = &w11().pow(2) * &MultiPoly::var(VarId::x(1, 1));
        assert_eq!(p.substitute(&swap), &z11().pow(2) * &MultiPoly::var(VarId::x(1, 1)));
    }

    #[test]
    fn evaluate_examples() {
        let mut pt = HashMap::new();
        pt.insert(VarId::w(1, 1), QuadFieldElement::from_rational(rat(1), 1));
        pt.insert(VarId::z(1, 1), QuadFieldElement::from_rational(rat(2), 1));
        assert_eq!((&w11() + &z11()).evaluate(&pt, 1).unwrap().re, rat(3));

        let mut pt = HashMap::new();
        pt.insert(VarId::w(1, 1), QuadFieldElement::new(rat(0), rat(1), 1));
        assert_eq!(w11().pow(2).evaluate(&pt, 1).unwrap(), QuadFieldElement::from_rational(rat(-1), 1));

        let err = (&w11() + &z11()).evaluate(&pt, 1).unwrap_err();
        assert_eq!(err, AlgError::Unassigned(VarId::z(1, 1)));
        assert!(MultiPoly::zero().evaluate(&HashMap::new(), 2).unwrap().is_zero());
    }

    #[test]
    fn rational_evaluation() {
        let p = &w11().scale(&rat_frac(1, 2)) + &MultiPoly::constant(rat(1));
        let mut pt = HashMap::new();
        pt.insert(VarId::w(1, 1), rat(4));
        assert_eq!(p.evaluate_rational(&pt).unwrap(), rat(3));
    }

    #[test]
    fn no_zero_terms_stored() {
        let p = &(&w11() + &z11()) - &z11();
        assert_eq!(p, w11());
        assert_eq!(p.num_terms(), 1);
    }
}
