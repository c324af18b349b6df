use std::fmt;

use crate::error::{Error, Result};
use crate::exact::{FieldCtx, Scalar};
use crate::laurent::poly::LaurentPoly;

/// A nonzero Laurent series `t^v * (c_0 + c_1 t + ... + c_{N-1} t^{N-1} + O(t^N))`.
///
/// `coeffs[0]` is nonzero, so `valuation` is the true valuation. When
/// `exact` is set the series is a Laurent polynomial and every coefficient
/// past the stored ones is zero; otherwise reading past the stored
/// coefficients is an [`Error::InsufficientPrecision`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruncSeries {
    ctx: FieldCtx,
    valuation: i64,
    coeffs: Vec<Scalar>,
    exact: bool,
}

impl TruncSeries {
    pub fn new(ctx: FieldCtx, valuation: i64, coeffs: Vec<Scalar>, exact: bool) -> Result<Self> {
        if coeffs.iter().any(|c| c.ctx() != ctx) {
            return Err(Error::FieldMismatch);
        }
        match coeffs.first() {
            None => Err(Error::ZeroElement),
            Some(c) if c.is_zero() => Err(Error::ZeroElement),
            Some(_) => {
                let mut s = TruncSeries { ctx, valuation, coeffs, exact };
                if exact {
                    while s.coeffs.last().is_some_and(Scalar::is_zero) {
                        s.coeffs.pop();
                    }
                }
                Ok(s)
            }
        }
    }

    /// The exact series of a nonzero Laurent polynomial.
    pub fn from_poly(f: &LaurentPoly) -> Result<Self> {
        let v = f.valuation()?;
        let d = f.degree()?;
        let coeffs = (v..=d).map(|e| f.coeff(e)).collect();
        TruncSeries::new(f.ctx(), v, coeffs, true)
    }

    pub fn ctx(&self) -> FieldCtx {
        self.ctx
    }

    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    /// Number of known coefficients starting at the valuation.
    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn leading_coeff(&self) -> &Scalar {
        &self.coeffs[0]
    }

    /// Exclusive upper bound on known exponents; `None` when exact.
    pub fn known_until(&self) -> Option<i64> {
        (!self.exact).then(|| self.valuation + self.coeffs.len() as i64)
    }

    /// Coefficient of `t^exp`.
    pub fn coeff(&self, exp: i64) -> Result<Scalar> {
        if exp < self.valuation {
            return Ok(self.ctx.zero());
        }
        let i = (exp - self.valuation) as usize;
        match self.coeffs.get(i) {
            Some(c) => Ok(c.clone()),
            None if self.exact => Ok(self.ctx.zero()),
            None => Err(Error::InsufficientPrecision { required: i + 1, available: self.coeffs.len() }),
        }
    }

    pub fn is_one(&self) -> bool {
        self.exact && self.valuation == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// The known part as a Laurent polynomial.
    pub fn truncation(&self) -> LaurentPoly {
        LaurentPoly::from_terms(
            self.ctx,
            self.coeffs.iter().enumerate().map(|(i, c)| (self.valuation + i as i64, c.clone())),
        )
        .expect("coefficients share the series field")
    }

    /// Converts back to a Laurent polynomial when the series is exact.
    pub fn as_poly(&self) -> Option<LaurentPoly> {
        self.exact.then(|| self.truncation())
    }

    /// Product; the relative precision is the smaller one among the
    /// inexact factors, and exact times exact stays exact.
    pub fn mul(&self, other: &TruncSeries) -> Result<TruncSeries> {
        if self.ctx != other.ctx {
            return Err(Error::FieldMismatch);
        }
        let exact = self.exact && other.exact;
        let len = match (self.exact, other.exact) {
            (true, true) => self.coeffs.len() + other.coeffs.len() - 1,
            (true, false) => other.coeffs.len(),
            (false, true) => self.coeffs.len(),
            (false, false) => self.coeffs.len().min(other.coeffs.len()),
        };
        let mut coeffs = vec![self.ctx.zero(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        TruncSeries::new(self.ctx, self.valuation + other.valuation, coeffs, exact)
    }

    /// Multiplicative inverse with `precision` coefficients. Monomials invert
    /// exactly; otherwise the result is inexact and needs `precision` known
    /// coefficients of `self`.
    pub fn inverse(&self, precision: usize) -> Result<TruncSeries> {
        let inv0 = self.coeffs[0].inv()?;
        if self.exact && self.coeffs.len() == 1 {
            return TruncSeries::new(self.ctx, -self.valuation, vec![inv0], true);
        }
        if precision == 0 {
            return Err(Error::InsufficientPrecision { required: 1, available: 0 });
        }
        if !self.exact && self.coeffs.len() < precision {
            return Err(Error::InsufficientPrecision {
                required: precision,
                available: self.coeffs.len(),
            });
        }
        let a = |i: usize| self.coeffs.get(i).cloned().unwrap_or_else(|| self.ctx.zero());
        let mut b: Vec<Scalar> = Vec::with_capacity(precision);
        b.push(inv0.clone());
        for j in 1..precision {
            let mut acc = self.ctx.zero();
            for i in 1..=j {
                let ai = a(i);
                if !ai.is_zero() {
                    acc = &acc + &(&ai * &b[j - i]);
                }
            }
            b.push(-(&acc * &inv0));
        }
        TruncSeries::new(self.ctx, -self.valuation, b, false)
    }

    /// Integer power; negative exponents go through [`TruncSeries::inverse`]
    /// with the given precision.
    pub fn pow(&self, n: i64, precision: usize) -> Result<TruncSeries> {
        let base = if n < 0 { self.inverse(precision)? } else { self.clone() };
        let mut acc = TruncSeries::new(self.ctx, 0, vec![self.ctx.one()], true)?;
        for _ in 0..n.unsigned_abs() {
            acc = acc.mul(&base)?;
        }
        Ok(acc)
    }
}

/// Inverts a nonzero Laurent polynomial to `precision` coefficients:
/// the result `g` has valuation `-v(f)` and `f·g ≡ 1` through relative
/// order `precision`. Unit monomials invert exactly.
pub fn invert_series(f: &LaurentPoly, precision: usize) -> Result<TruncSeries> {
    TruncSeries::from_poly(f)?.inverse(precision)
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.truncation())?;
        if let Some(k) = self.known_until() {
            write!(f, " + O(t^{k})")?;
        }
        Ok(())
    }
}
