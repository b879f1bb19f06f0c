//! Integer Laurent polynomials in one variable `q`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// Exponent -> coefficient, with no zero coefficients stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(coeff: i64, exp: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff);
        p
    }

    /// Builds from `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms<I: IntoIterator<Item = (i64, i64)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Coefficients listed from exponent `min_exp` upward.
    pub fn from_coeffs(min_exp: i64, coeffs: &[i64]) -> Self {
        Self::from_terms(coeffs.iter().enumerate().map(|(i, &c)| (min_exp + i as i64, c)))
    }

    pub fn add_term(&mut self, exp: i64, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry(exp).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.terms.remove(&exp);
        }
    }

    pub fn coeff(&self, exp: i64) -> i64 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self { terms: self.terms.iter().map(|(&e, &c)| (e + k, c)).collect() }
    }

    /// Substitutes `q -> q^-1`.
    pub fn invert_variable(&self) -> Self {
        Self { terms: self.terms.iter().map(|(&e, &c)| (-e, c)).collect() }
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.invert_variable()
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Sum of the coefficients.
    pub fn at_one(&self) -> i64 {
        self.terms.values().sum()
    }

    /// Exact evaluation at a nonzero rational (or any rational when all
    /// exponents are non-negative).
    pub fn evaluate(&self, at: &BigRational) -> BigRational {
        let mut total = BigRational::zero();
        for (&e, &c) in &self.terms {
            let base = if e < 0 { at.recip() } else { at.clone() };
            let mut power = BigRational::one();
            for _ in 0..e.unsigned_abs() {
                power *= &base;
            }
            total += power * BigRational::from_integer(BigInt::from(c));
        }
        total
    }
}

/// Exact evaluation of `p` at `at`.
pub fn evaluate(p: &LaurentPoly, at: &BigRational) -> BigRational {
    p.evaluate(at)
}

impl fmt::Display for LaurentPoly {
    /// Ascending exponent order: `c_min q^min + ... + c_max q^max`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&e, &c)) in self.terms.iter().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            if i == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.unsigned_abs();
            match e {
                0 => write!(f, "{a}")?,
                _ => {
                    if a != 1 {
                        write!(f, "{a}")?;
                    }
                    if e == 1 {
                        write!(f, "q")?;
                    } else {
                        write!(f, "q^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for LaurentPoly {
    type Err = String;

    /// Parses sums like `q^-1 - 1 + q`, `3*q^2`, `-2q^(-3)`.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err("empty polynomial".into());
        }
        let mut terms = Vec::new();
        let mut start = 0;
        let bytes = compact.as_bytes();
        for i in 1..=bytes.len() {
            let boundary = i == bytes.len() || ((bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' && bytes[i - 1] != b'(');
            if boundary {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        let mut out = LaurentPoly::zero();
        for term in terms {
            let (negative, body) = match term.as_bytes()[0] {
                b'-' => (true, &term[1..]),
                b'+' => (false, &term[1..]),
                _ => (false, term),
            };
            let bad = || format!("cannot parse term {term:?}");
            let (coeff, exp) = match body.find('q') {
                None => (body.parse::<i64>().map_err(|_| bad())?, 0),
                Some(at) => {
                    let c = body[..at].trim_end_matches('*');
                    let c = if c.is_empty() { 1 } else { c.parse::<i64>().map_err(|_| bad())? };
                    let rest = &body[at + 1..];
                    let e = if rest.is_empty() {
                        1
                    } else {
                        let e = rest.strip_prefix('^').ok_or_else(bad)?;
                        let e = e.strip_prefix('(').and_then(|e| e.strip_suffix(')')).unwrap_or(e);
                        e.parse::<i64>().map_err(|_| bad())?
                    };
                    (c, e)
                }
            };
            out.add_term(exp, if negative { -coeff } else { coeff });
        }
        Ok(out)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c);
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(&e, &c)| (e, -c)).collect() }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
