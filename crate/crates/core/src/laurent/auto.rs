use std::fmt;

use crate::error::{Error, Result};
use crate::exact::FieldCtx;
use crate::laurent::matrix::LaurentMatrix;
use crate::laurent::poly::LaurentPoly;
use crate::laurent::series::TruncSeries;

/// An automorphism of `k((t))^n` with a finite description.
///
/// `MultBy` multiplies `k((t))` by a unit series. `GLn` acts on
/// `k((t))^n` by a matrix over `k[t, t^-1]` whose determinant is a
/// monomial `c·t^m`, so its inverse is again such a matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Automorphism {
    MultBy(TruncSeries),
    GLn(LaurentMatrix),
}

impl Automorphism {
    pub fn mult_by(f: TruncSeries) -> Self {
        Automorphism::MultBy(f)
    }

    /// Multiplication by a nonzero Laurent polynomial (an exact series).
    pub fn mult_by_poly(f: &LaurentPoly) -> Result<Self> {
        Ok(Automorphism::MultBy(TruncSeries::from_poly(f)?))
    }

    pub fn gl(m: LaurentMatrix) -> Result<Self> {
        let det = m.det();
        if det.as_monomial().is_none() {
            return Err(Error::NotInvertibleInLaurentRing(det.to_string()));
        }
        Ok(Automorphism::GLn(m))
    }

    pub fn identity(ctx: FieldCtx, rank: usize) -> Self {
        if rank == 1 {
            Automorphism::MultBy(TruncSeries::from_poly(&LaurentPoly::one(ctx)).expect("one is nonzero"))
        } else {
            Automorphism::GLn(LaurentMatrix::identity(ctx, rank))
        }
    }

    pub fn ctx(&self) -> FieldCtx {
        match self {
            Automorphism::MultBy(f) => f.ctx(),
            Automorphism::GLn(m) => m.ctx(),
        }
    }

    /// Rank of the Tate space the automorphism acts on.
    pub fn rank(&self) -> usize {
        match self {
            Automorphism::MultBy(_) => 1,
            Automorphism::GLn(m) => m.n(),
        }
    }

    /// Only exact data can be recognised as the identity.
    pub fn is_identity(&self) -> bool {
        match self {
            Automorphism::MultBy(f) => f.is_one(),
            Automorphism::GLn(m) => m.is_identity(),
        }
    }

    /// Valuation of the determinant (of `f` itself for `MultBy`).
    pub fn det_valuation(&self) -> i64 {
        match self {
            Automorphism::MultBy(f) => f.valuation(),
            Automorphism::GLn(m) => m.det().valuation().expect("determinant is a monomial"),
        }
    }

    /// A rank-1 `GLn` or exact `MultBy` as a Laurent polynomial.
    fn as_rank_one_poly(&self) -> Option<LaurentPoly> {
        match self {
            Automorphism::MultBy(f) => f.as_poly(),
            Automorphism::GLn(m) if m.n() == 1 => Some(m.get(0, 0).clone()),
            Automorphism::GLn(_) => None,
        }
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &Automorphism) -> Result<Automorphism> {
        if self.ctx() != other.ctx() {
            return Err(Error::FieldMismatch);
        }
        if self.rank() != other.rank() {
            return Err(Error::SpaceMismatch);
        }
        match (self, other) {
            (Automorphism::MultBy(f), Automorphism::MultBy(g)) => Ok(Automorphism::MultBy(f.mul(g)?)),
            (Automorphism::GLn(a), Automorphism::GLn(b)) => Ok(Automorphism::GLn(a.mul(b)?)),
            (Automorphism::MultBy(f), g) | (g, Automorphism::MultBy(f)) => {
                let g = g.as_rank_one_poly().expect("rank-one matrix");
                Ok(Automorphism::MultBy(f.mul(&TruncSeries::from_poly(&g)?)?))
            }
        }
    }

    /// Inverse; series are inverted to `precision` coefficients unless
    /// they are monomials.
    pub fn inverse(&self, precision: usize) -> Result<Automorphism> {
        match self {
            Automorphism::MultBy(f) => Ok(Automorphism::MultBy(f.inverse(precision)?)),
            Automorphism::GLn(m) => Ok(Automorphism::GLn(m.gl_inverse()?)),
        }
    }
}

impl fmt::Display for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Automorphism::MultBy(s) => write!(f, "mult({s})"),
            Automorphism::GLn(m) => write!(f, "gl({m})"),
        }
    }
}
