use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::exact::{FieldCtx, Scalar};

/// A Laurent polynomial in `k[t, t^-1]`.
///
/// Terms are kept in a sorted map from exponent to coefficient; zero
/// coefficients are never stored, so the empty map is the zero polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    ctx: FieldCtx,
    terms: BTreeMap<i64, Scalar>,
}

impl LaurentPoly {
    pub fn zero(ctx: FieldCtx) -> Self {
        LaurentPoly { ctx, terms: BTreeMap::new() }
    }

    pub fn one(ctx: FieldCtx) -> Self {
        Self::monomial(ctx.one(), 0)
    }

    pub fn constant(c: Scalar) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * t^exp`.
    pub fn monomial(c: Scalar, exp: i64) -> Self {
        let ctx = c.ctx();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly { ctx, terms }
    }

    /// `t^exp`.
    pub fn t_pow(ctx: FieldCtx, exp: i64) -> Self {
        Self::monomial(ctx.one(), exp)
    }

    /// Sums the given `(exponent, coefficient)` pairs; repeated exponents add.
    pub fn from_terms(ctx: FieldCtx, terms: impl IntoIterator<Item = (i64, Scalar)>) -> Result<Self> {
        let mut out = LaurentPoly::zero(ctx);
        for (e, c) in terms {
            if c.ctx() != ctx {
                return Err(Error::FieldMismatch);
            }
            out.add_term(e, &c);
        }
        Ok(out)
    }

    pub fn from_i64_terms(ctx: FieldCtx, terms: &[(i64, i64)]) -> Self {
        Self::from_terms(ctx, terms.iter().map(|&(e, c)| (e, ctx.from_i64(c))))
            .expect("integer coefficients live in ctx")
    }

    fn add_term(&mut self, e: i64, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.get(&e) {
            Some(old) => old + c,
            None => c.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&e);
        } else {
            self.terms.insert(e, sum);
        }
    }

    pub fn ctx(&self) -> FieldCtx {
        self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(Scalar::is_one)
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Scalar)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, exp: i64) -> Scalar {
        self.terms.get(&exp).cloned().unwrap_or_else(|| self.ctx.zero())
    }

    /// Least exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Result<i64> {
        self.terms.keys().next().copied().ok_or(Error::ZeroElement)
    }

    /// Largest exponent with a nonzero coefficient.
    pub fn degree(&self) -> Result<i64> {
        self.terms.keys().next_back().copied().ok_or(Error::ZeroElement)
    }

    pub fn leading_coeff(&self) -> Result<Scalar> {
        self.terms.values().next().cloned().ok_or(Error::ZeroElement)
    }

    /// `Some((c, e))` when the polynomial is `c * t^e` with `c ≠ 0`.
    pub fn as_monomial(&self) -> Option<(Scalar, i64)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, c)| (c.clone(), *e))
        } else {
            None
        }
    }

    pub fn checked_add(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        if self.ctx != other.ctx {
            return Err(Error::FieldMismatch);
        }
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        if self.ctx != other.ctx {
            return Err(Error::FieldMismatch);
        }
        let mut out = LaurentPoly::zero(self.ctx);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1 + e2, &(c1 * c2));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> LaurentPoly {
        let mut out = LaurentPoly::zero(self.ctx);
        for (e, x) in &self.terms {
            out.add_term(*e, &(x * c));
        }
        out
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i64) -> LaurentPoly {
        LaurentPoly {
            ctx: self.ctx,
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> LaurentPoly {
        let mut acc = LaurentPoly::one(self.ctx);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }
}

impl fmt::Display for LaurentPoly {
    /// Ascending exponents in the input grammar, e.g. `3*t^-2 + 1 + 2*t^1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| if *e == 0 { c.to_string() } else { format!("{c}*t^{e}") })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        self.checked_add(rhs).expect("LaurentPoly::add")
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        self.checked_sub(rhs).expect("LaurentPoly::sub")
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        self.checked_mul(rhs).expect("LaurentPoly::mul")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&-self.ctx.one())
    }
}
