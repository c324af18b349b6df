//! Base fields and their elements.
//!
//! Two kinds of field are supported: the rationals, with arbitrary
//! precision reduced fractions, and prime fields `F_p` with residues stored
//! in `[0, p)`. A [`Scalar`] always remembers its field; combining scalars
//! from different fields is an error, never a coercion.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Kind {
    Rationals,
    Prime(u64),
}

/// The base field `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldCtx {
    kind: Kind,
}

impl FieldCtx {
    pub fn rationals() -> Self {
        FieldCtx { kind: Kind::Rationals }
    }

    /// The prime field with `p` elements. Rejects composite moduli and
    /// moduli above `u32::MAX` (residue products must fit in `u64`).
    pub fn prime(p: u64) -> Result<Self> {
        if p > u32::MAX as u64 {
            return Err(Error::InvalidField(format!("modulus {p} is too large")));
        }
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        Ok(FieldCtx { kind: Kind::Prime(p) })
    }

    pub fn is_rationals(&self) -> bool {
        matches!(self.kind, Kind::Rationals)
    }

    /// `Some(p)` for `F_p`, `None` for the rationals.
    pub fn modulus(&self) -> Option<u64> {
        match self.kind {
            Kind::Rationals => None,
            Kind::Prime(p) => Some(p),
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        let value = match self.kind {
            Kind::Rationals => Value::Rational(BigRational::from_integer(BigInt::from(n))),
            Kind::Prime(p) => Value::Residue(n.rem_euclid(p as i64) as u64),
        };
        Scalar { ctx: *self, value }
    }

    /// The class of `num / den`. Fails if `den` vanishes in the field.
    pub fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        match self.kind {
            Kind::Rationals => {
                if den.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Ok(Scalar {
                    ctx: *self,
                    value: Value::Rational(BigRational::new(num.clone(), den.clone())),
                })
            }
            Kind::Prime(p) => {
                let n = reduce_bigint(num, p);
                let d = reduce_bigint(den, p);
                if d == 0 {
                    return Err(Error::DivisionByZero);
                }
                let v = mul_mod(n, inv_mod(d, p), p);
                Ok(Scalar { ctx: *self, value: Value::Residue(v) })
            }
        }
    }

    /// Every element of a prime field, in residue order. Empty for the
    /// rationals.
    pub fn elements(&self) -> Vec<Scalar> {
        match self.kind {
            Kind::Rationals => Vec::new(),
            Kind::Prime(p) => (0..p)
                .map(|r| Scalar { ctx: *self, value: Value::Residue(r) })
                .collect(),
        }
    }
}

impl fmt::Display for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            Kind::Rationals => write!(f, "Q"),
            Kind::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for FieldCtx {
    type Err = Error;

    /// Accepts `Q`, `Fp:<p>` and the short form `F<p>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Q" || s == "q" {
            return Ok(FieldCtx::rationals());
        }
        let digits = s
            .strip_prefix("Fp:")
            .or_else(|| s.strip_prefix("F"))
            .ok_or_else(|| Error::InvalidField(format!("unrecognised field '{s}'")))?;
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::InvalidField(format!("bad modulus in '{s}'")))?;
        FieldCtx::prime(p)
    }
}

/// Deterministic trial-division primality test (moduli are at most 32 bits).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 {
        return false;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn reduce_bigint(n: &BigInt, p: u64) -> u64 {
    let r = n % BigInt::from(p);
    let r = if r.is_negative() { r + BigInt::from(p) } else { r };
    r.to_u64().expect("residue fits in u64")
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Value {
    Rational(BigRational),
    Residue(u64),
}

/// An element of a [`FieldCtx`].
///
/// The `std::ops` operators panic on mixed fields; the `checked_*` methods
/// report [`Error::FieldMismatch`] instead. Library code validates fields at
/// its public boundaries and then uses the operators.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar {
    ctx: FieldCtx,
    value: Value,
}

impl Scalar {
    pub fn ctx(&self) -> FieldCtx {
        self.ctx
    }

    pub fn is_zero(&self) -> bool {
        match &self.value {
            Value::Rational(q) => q.is_zero(),
            Value::Residue(r) => *r == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.value {
            Value::Rational(q) => q.is_one(),
            Value::Residue(r) => *r == 1,
        }
    }

    /// The rational value, for scalars over `Q`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.value {
            Value::Rational(q) => Some(q),
            Value::Residue(_) => None,
        }
    }

    /// The residue in `[0, p)`, for scalars over `F_p`.
    pub fn residue(&self) -> Option<u64> {
        match &self.value {
            Value::Rational(_) => None,
            Value::Residue(r) => Some(*r),
        }
    }

    fn check(&self, other: &Scalar) -> Result<()> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        let value = match (&self.value, &other.value) {
            (Value::Rational(a), Value::Rational(b)) => Value::Rational(a + b),
            (Value::Residue(a), Value::Residue(b)) => {
                let p = self.ctx.modulus().unwrap();
                Value::Residue((a + b) % p)
            }
            _ => unreachable!("context equality implies matching representations"),
        };
        Ok(Scalar { ctx: self.ctx, value })
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        let value = match (&self.value, &other.value) {
            (Value::Rational(a), Value::Rational(b)) => Value::Rational(a * b),
            (Value::Residue(a), Value::Residue(b)) => {
                Value::Residue(mul_mod(*a, *b, self.ctx.modulus().unwrap()))
            }
            _ => unreachable!("context equality implies matching representations"),
        };
        Ok(Scalar { ctx: self.ctx, value })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        self.checked_mul(&other.inv()?)
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let value = match &self.value {
            Value::Rational(q) => Value::Rational(q.recip()),
            Value::Residue(r) => Value::Residue(inv_mod(*r, self.ctx.modulus().unwrap())),
        };
        Ok(Scalar { ctx: self.ctx, value })
    }

    fn neg_ref(&self) -> Scalar {
        let value = match &self.value {
            Value::Rational(q) => Value::Rational(-q),
            Value::Residue(r) => {
                let p = self.ctx.modulus().unwrap();
                Value::Residue((p - r) % p)
            }
        };
        Scalar { ctx: self.ctx, value }
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn pow(&self, exp: i64) -> Result<Scalar> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = self.ctx.one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        Ok(acc)
    }

    /// `(-1)^n` in this scalar's field.
    pub fn sign(ctx: FieldCtx, n: i64) -> Scalar {
        if n.rem_euclid(2) == 0 {
            ctx.one()
        } else {
            -ctx.one()
        }
    }
}

impl fmt::Display for Scalar {
    /// Rationals print as `a` or `a/b`, residues as their integer in `[0, p)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            Value::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Value::Residue(r) => write!(f, "{r}"),
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<'a> $trait<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                self.$checked(rhs).expect(concat!("Scalar::", stringify!($method)))
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}
