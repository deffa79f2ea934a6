//! Canonical text rendering (`3/2*w[1,1]^2*z[2,1]`) and the JSON term-list
//! form of polynomials. Both are byte-stable and parse back to the same value.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{format_rational, parse_rational, AlgError, Family, Monomial, MultiPoly, Rational, VarId};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonVar {
    pub f: String,
    pub r: usize,
    pub c: usize,
    pub e: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonTerm {
    pub vars: Vec<JsonVar>,
    pub coef: String,
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (v, e)) in self.pairs().iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "{v}")?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            if m.is_one() {
                f.write_str(&format_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", format_rational(&mag))?;
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    src: &'a str,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Self { src, chars: src.chars().filter(|c| !c.is_whitespace()).collect(), pos: 0 }
    }

    fn err(&self, what: &str) -> AlgError {
        AlgError::BadPolynomial(format!("{what} at offset {} in {:?}", self.pos, self.src))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<BigInt, AlgError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().expect("ascii digits"))
    }

    fn usize_digits(&mut self) -> Result<usize, AlgError> {
        let n = self.digits()?;
        usize::try_from(n).map_err(|_| self.err("index too large"))
    }

    fn factor(&mut self) -> Result<MultiPoly, AlgError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num = self.digits()?;
                let den = if self.eat('/') { self.digits()? } else { BigInt::one() };
                if den.is_zero() {
                    return Err(self.err("zero denominator"));
                }
                Ok(MultiPoly::constant(Rational::new(num, den)))
            }
            Some(c) => {
                let family = Family::from_letter(c).ok_or_else(|| self.err("unknown variable family"))?;
                self.pos += 1;
                if !self.eat('[') {
                    return Err(self.err("expected '['"));
                }
                let r = self.usize_digits()?;
                if !self.eat(',') {
                    return Err(self.err("expected ','"));
                }
                let col = self.usize_digits()?;
                if !self.eat(']') {
                    return Err(self.err("expected ']'"));
                }
                if r == 0 || col == 0 || r > u16::MAX as usize || col > u16::MAX as usize {
                    return Err(self.err("index out of range"));
                }
                let e = if self.eat('^') {
                    u32::try_from(self.digits()?).map_err(|_| self.err("exponent too large"))?
                } else {
                    1
                };
                Ok(MultiPoly::from_terms([(Monomial::from_pairs([(VarId::new(family, r, col), e)]), Rational::one())]))
            }
            None => Err(self.err("unexpected end")),
        }
    }

    fn term(&mut self) -> Result<MultiPoly, AlgError> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn poly(&mut self) -> Result<MultiPoly, AlgError> {
        let mut acc = MultiPoly::zero();
        let mut sign = if self.eat('-') {
            -1
        } else {
            self.eat('+');
            1
        };
        loop {
            let t = self.term()?;
            acc = if sign < 0 { &acc - &t } else { &acc + &t };
            if self.eat('+') {
                sign = 1;
            } else if self.eat('-') {
                sign = -1;
            } else {
                break;
            }
        }
        if self.pos != self.chars.len() {
            return Err(self.err("trailing input"));
        }
        Ok(acc)
    }
}

impl FromStr for MultiPoly {
    type Err = AlgError;
    fn from_str(s: &str) -> Result<Self, AlgError> {
        Parser::new(s).poly()
    }
}

impl MultiPoly {
    pub fn to_json_terms(&self) -> Vec<JsonTerm> {
        self.terms()
            .map(|(m, c)| JsonTerm {
                vars: m
                    .pairs()
                    .iter()
                    .map(|&(v, e)| JsonVar {
                        f: v.family.letter().to_string(),
                        r: v.row as usize,
                        c: v.col as usize,
                        e,
                    })
                    .collect(),
                coef: format_rational(c),
            })
            .collect()
    }

    pub fn from_json_terms(terms: &[JsonTerm]) -> Result<MultiPoly, AlgError> {
        let mut out = MultiPoly::zero();
        for t in terms {
            let mut pairs = Vec::with_capacity(t.vars.len());
            for v in &t.vars {
                let mut chars = v.f.chars();
                let family = match (chars.next().and_then(Family::from_letter), chars.next()) {
                    (Some(f), None) => f,
                    _ => return Err(AlgError::BadPolynomial(format!("unknown family {:?}", v.f))),
                };
                if v.r == 0 || v.c == 0 {
                    return Err(AlgError::BadPolynomial("indices are 1-based".into()));
                }
                pairs.push((VarId::new(family, v.r, v.c), v.e));
            }
            out.add_term(Monomial::from_pairs(pairs), parse_rational(&t.coef)?);
        }
        Ok(out)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json_terms()).expect("plain data serializes")
    }

    pub fn from_json_str(s: &str) -> Result<MultiPoly, AlgError> {
        let terms: Vec<JsonTerm> = serde_json::from_str(s).map_err(|e| AlgError::BadPolynomial(e.to_string()))?;
        Self::from_json_terms(&terms)
    }
}
