//! Second-order operators: the mixed Laplacians `Δ_{s,t}` on `(X, Y)`
//! polynomials and their pull-backs `L^{(k₁)}_{i,j}`, `L'^{(k₂)}_{i,j}` to
//! polynomials in the entries of `W = X₁ᵗY₁`, `Z = X₂ᵗY₂`.
//!
//! Everything is written directly in `w[s,t]` / `z[s,t]` coordinates; the
//! transpose convention of the matrix of derivatives only matters when
//! a polynomial is applied to Fourier expansions.

use std::collections::HashMap;

use thiserror::Error;

use crate::exactalg::{Family, MultiPoly, Rational, VarId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OperatorError {
    #[error("matrix size must be at least 1")]
    EmptySize,
    #[error("weights must be positive (k1={k1}, k2={k2})")]
    NonPositiveWeight { k1: i64, k2: i64 },
}

/// Which of the two `n×n` matrix variables an operator acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    W,
    Z,
}

impl Side {
    pub fn family(self) -> Family {
        match self {
            Side::W => Family::W,
            Side::Z => Family::Z,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OperatorContext {
    pub n: usize,
    pub k1: i64,
    pub k2: i64,
}

impl OperatorContext {
    pub fn new(n: usize, k1: i64, k2: i64) -> Result<Self, OperatorError> {
        if n == 0 {
            return Err(OperatorError::EmptySize);
        }
        if k1 < 1 || k2 < 1 {
            return Err(OperatorError::NonPositiveWeight { k1, k2 });
        }
        Ok(Self { n, k1, k2 })
    }

    pub fn k(&self) -> i64 {
        self.k1 + self.k2
    }

    fn weight(&self, side: Side) -> i64 {
        match side {
            Side::W => self.k1,
            Side::Z => self.k2,
        }
    }
}

/// `Δ_{s,t} = Σ_{u=1}^{k} ∂²/∂x[s,u]∂y[t,u]`.
pub fn delta_st(p: &MultiPoly, s: usize, t: usize, k: usize) -> MultiPoly {
    let mut out = MultiPoly::zero();
    for u in 1..=k {
        let dy = p.derivative(VarId::y(t, u));
        if !dy.is_zero() {
            out = &out + &dy.derivative(VarId::x(s, u));
        }
    }
    out
}

/// `L_{i,j} = k ∂/∂f[i,j] + Σ_{s,t} f[s,t] ∂²/∂f[s,j]∂f[i,t]` with
/// `(f, k) = (w, k₁)` or `(z, k₂)`.
pub fn l_op(q: &MultiPoly, i: usize, j: usize, ctx: &OperatorContext, side: Side) -> MultiPoly {
    let fam = side.family();
    let var = |s, t| VarId::new(fam, s, t);
    let mut out = q.derivative(var(i, j)).scale(&Rational::from_integer(ctx.weight(side).into()));
    for t in 1..=ctx.n {
        let d_it = q.derivative(var(i, t));
        if d_it.is_zero() {
            continue;
        }
        for s in 1..=ctx.n {
            let second = d_it.derivative(var(s, j));
            if !second.is_zero() {
                out = &out + &(&MultiPoly::var(var(s, t)) * &second);
            }
        }
    }
    out
}

/// `(Q, Q')_{i,f} = Σ_{s,t} f[s,t] (∂_{f[s,i]}Q · ∂_{f[i,t]}Q' + ∂_{f[i,t]}Q · ∂_{f[s,i]}Q')`.
pub fn pairing(qa: &MultiPoly, qb: &MultiPoly, i: usize, side: Side, n: usize) -> MultiPoly {
    let fam = side.family();
    let var = |s, t| VarId::new(fam, s, t);
    let a_col: Vec<MultiPoly> = (1..=n).map(|s| qa.derivative(var(s, i))).collect();
    let a_row: Vec<MultiPoly> = (1..=n).map(|t| qa.derivative(var(i, t))).collect();
    let b_col: Vec<MultiPoly> = (1..=n).map(|s| qb.derivative(var(s, i))).collect();
    let b_row: Vec<MultiPoly> = (1..=n).map(|t| qb.derivative(var(i, t))).collect();
    let mut out = MultiPoly::zero();
    for s in 0..n {
        for t in 0..n {
            let inner = &(&a_col[s] * &b_row[t]) + &(&a_row[t] * &b_col[s]);
            if !inner.is_zero() {
                out = &out + &(&MultiPoly::var(var(s + 1, t + 1)) * &inner);
            }
        }
    }
    out
}

/// `Σ_i (L^{(k₁)}_{i,i} + L'^{(k₂)}_{i,i}) Q`, the pulled-back Laplacian.
pub fn laplace_total(q: &MultiPoly, ctx: &OperatorContext) -> MultiPoly {
    let mut out = MultiPoly::zero();
    for i in 1..=ctx.n {
        out = &out + &l_op(q, i, i, ctx, Side::W);
        out = &out + &l_op(q, i, i, ctx, Side::Z);
    }
    out
}

/// Substitution map `w[i,j] ↦ Σ_{u≤k₁} x[i,u]y[j,u]`,
/// `z[i,j] ↦ Σ_{k₁<u≤k₁+k₂} x[i,u]y[j,u]`.
pub fn association_map(n: usize, k1: usize, k2: usize) -> HashMap<VarId, MultiPoly> {
    let block = |i: usize, j: usize, cols: std::ops::RangeInclusive<usize>| {
        cols.fold(MultiPoly::zero(), |acc, u| {
            &acc + &(&MultiPoly::var(VarId::x(i, u)) * &MultiPoly::var(VarId::y(j, u)))
        })
    };
    let mut map = HashMap::new();
    for i in 1..=n {
        for j in 1..=n {
            map.insert(VarId::w(i, j), block(i, j, 1..=k1));
            map.insert(VarId::z(i, j), block(i, j, k1 + 1..=k1 + k2));
        }
    }
    map
}

/// `P(X, Y) = Q(X₁ᵗY₁, X₂ᵗY₂)` with `X₁, Y₁` of width `k₁` and `X₂, Y₂` of
/// width `k₂`.
pub fn associated_polynomial(q: &MultiPoly, n: usize, k1: usize, k2: usize) -> MultiPoly {
    q.substitute(&association_map(n, k1, k2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;
    use crate::generators::{q_generators, q_minor, MinorSpec};

    fn x(s: usize, u: usize) -> MultiPoly {
        MultiPoly::var(VarId::x(s, u))
    }
    fn y(s: usize, u: usize) -> MultiPoly {
        MultiPoly::var(VarId::y(s, u))
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta_st(&(&x(1, 1) * &y(1, 1)), 1, 1, 1), MultiPoly::one());
        let p = &x(1, 1) * &y(2, 1);
        assert!(delta_st(&p, 1, 1, 1).is_zero());
        assert_eq!(delta_st(&p, 1, 2, 1), MultiPoly::one());
    }

    #[test]
    fn delta_on_associated_q1() {
        // Q₁ alone is not pluriharmonic: Δ₁₁ P = k₁ z₂₂ + k₂ w₂₂ after substitution.
        let g = q_generators(2).unwrap();
        let p = associated_polynomial(&g.polys[1], 2, 2, 2);
        let expect = associated_polynomial(&"2*w[2,2] + 2*z[2,2]".parse().unwrap(), 2, 2, 2);
        assert_eq!(delta_st(&p, 1, 1, 4), expect);
        let expect = associated_polynomial(&"-2*w[2,1] - 2*z[2,1]".parse().unwrap(), 2, 2, 2);
        assert_eq!(delta_st(&p, 1, 2, 4), expect);
    }

    #[test]
    fn delta_kills_associated_v1_bracket() {
        use crate::solver::{assemble_bracket, solve_coefficients, Normalization};
        let bc = solve_coefficients(2, 1, 2, 2, Normalization::Integral).unwrap();
        let q = assemble_bracket(&bc, &q_generators(2).unwrap()).unwrap();
        let p = associated_polynomial(&q, 2, 2, 2);
        for s in 1..=2 {
            for t in 1..=2 {
                assert!(delta_st(&p, s, t, 4).is_zero());
            }
        }
    }

    #[test]
    fn l_op_examples() {
        let ctx = OperatorContext::new(1, 4, 6).unwrap();
        let g = q_generators(1).unwrap();
        assert_eq!(l_op(&g.polys[0], 1, 1, &ctx, Side::W), MultiPoly::constant(rat(4)));

        for n in 1..=3 {
            let ctx = OperatorContext::new(n, 5, 7).unwrap();
            let g = q_generators(n).unwrap();
            for i in 1..=n {
                assert!(l_op(&g.polys[n], i, i, &ctx, Side::W).is_zero());
                assert!(l_op(&g.polys[0], i, i, &ctx, Side::Z).is_zero());
            }
        }
    }

    #[test]
    fn l_op_on_generators_n2() {
        let k1 = 3;
        let ctx = OperatorContext::new(2, k1, 4).unwrap();
        let g = q_generators(2).unwrap();
        for i in 1..=2 {
            for a in 0..2 {
                let lhs = l_op(&g.polys[a], i, i, &ctx, Side::W);
                let minor = q_minor(2, a as i64, &MinorSpec::single(i, i)).unwrap();
                assert_eq!(lhs, minor.scale(&rat(k1 - 1 + a as i64)));
            }
        }
    }

    #[test]
    fn pairing_examples() {
        for n in 1..=3 {
            let g = q_generators(n).unwrap();
            assert!(pairing(&g.polys[0], &g.polys[0], 1, Side::Z, n).is_zero());
        }
        let g = q_generators(1).unwrap();
        assert_eq!(pairing(&g.polys[0], &g.polys[0], 1, Side::W, 1), MultiPoly::var(VarId::w(1, 1)).scale(&rat(2)));
    }

    #[test]
    fn laplace_total_examples() {
        let ctx = OperatorContext::new(1, 4, 6).unwrap();
        let g = q_generators(1).unwrap();
        let sum = &g.polys[0] + &g.polys[1];
        assert_eq!(laplace_total(&sum, &ctx), MultiPoly::constant(rat(10)));
        assert_eq!(laplace_total(&g.polys[0].pow(2), &ctx), MultiPoly::var(VarId::w(1, 1)).scale(&rat(10)));
    }

    #[test]
    fn context_validation() {
        assert_eq!(OperatorContext::new(0, 1, 1), Err(OperatorError::EmptySize));
        assert!(OperatorContext::new(1, 0, 1).is_err());
        assert_eq!(OperatorContext::new(2, 3, 4).unwrap().k(), 7);
    }
}
