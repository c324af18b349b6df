//! Finite-dimensional subspaces of `k^d` in canonical echelon form.

use crate::error::{Error, Result};
use crate::exact::field::{FieldCtx, Scalar};
use crate::exact::matrix::Matrix;

/// A subspace of `k^d`, stored as the reduced row echelon form of any
/// spanning set. Two subspaces are equal iff their stored bases are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    /// The span of `rows` inside `k^ambient_dim`.
    pub fn from_spanning(ctx: FieldCtx, ambient_dim: usize, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let m = Matrix::from_rows(ctx, ambient_dim, rows)?;
        Ok(Subspace::from_matrix(&m))
    }

    pub fn from_matrix(m: &Matrix) -> Self {
        let (r, pivots) = m.rref();
        let keep = pivots.len();
        let rows: Vec<Vec<Scalar>> = (0..keep).map(|i| r.row(i).to_vec()).collect();
        let basis = Matrix::from_rows(m.ctx(), m.cols(), rows).expect("rows have the ambient width");
        Subspace { basis, pivots }
    }

    pub fn zero(ctx: FieldCtx, ambient_dim: usize) -> Self {
        Subspace { basis: Matrix::zeros(ctx, 0, ambient_dim), pivots: Vec::new() }
    }

    pub fn whole(ctx: FieldCtx, ambient_dim: usize) -> Self {
        Subspace {
            basis: Matrix::identity(ctx, ambient_dim),
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// Span of the standard basis vectors with the given indices.
    pub fn coordinate(ctx: FieldCtx, ambient_dim: usize, indices: &[usize]) -> Self {
        let rows = indices
            .iter()
            .map(|&i| {
                let mut v = vec![ctx.zero(); ambient_dim];
                v[i] = ctx.one();
                v
            })
            .collect();
        Subspace::from_spanning(ctx, ambient_dim, rows).expect("standard vectors fit the ambient space")
    }

    pub fn ctx(&self) -> FieldCtx {
        self.basis.ctx()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn compatible(&self, other: &Subspace) -> Result<()> {
        if self.ctx() != other.ctx() {
            return Err(Error::FieldMismatch);
        }
        if self.ambient_dim() != other.ambient_dim() {
            return Err(Error::AmbientMismatch {
                left: self.ambient_dim(),
                right: other.ambient_dim(),
            });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.compatible(other)?;
        Ok(Subspace::from_matrix(&self.basis.vstack(&other.basis)?))
    }

    /// Intersection, from the kernel of the stacked bases: pairs `(x, y)`
    /// with `x·A = y·B` give the common vectors `x·A`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.compatible(other)?;
        let ctx = self.ctx();
        let (da, db) = (self.dim(), other.dim());
        if da == 0 || db == 0 {
            return Ok(Subspace::zero(ctx, self.ambient_dim()));
        }
        let neg_b = Matrix::from_rows(
            ctx,
            self.ambient_dim(),
            other.basis.row_vecs().into_iter().map(|r| r.into_iter().map(|x| -x).collect()).collect(),
        )?;
        let relations = self.basis.vstack(&neg_b)?.transpose();
        let rows = relations
            .kernel()
            .into_iter()
            .map(|coeffs| self.combine(&coeffs[..da]))
            .collect();
        Subspace::from_spanning(ctx, self.ambient_dim(), rows)
    }

    /// `true` iff `other ⊆ self`.
    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.compatible(other)?;
        Ok((0..other.dim()).all(|r| self.contains_vector_unchecked(other.basis.row(r))))
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> Result<bool> {
        if v.len() != self.ambient_dim() {
            return Err(Error::AmbientMismatch { left: self.ambient_dim(), right: v.len() });
        }
        if v.iter().any(|x| x.ctx() != self.ctx()) {
            return Err(Error::FieldMismatch);
        }
        Ok(self.contains_vector_unchecked(v))
    }

    fn contains_vector_unchecked(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Linear combination of the basis rows.
    pub fn combine(&self, coeffs: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.ctx().zero(); self.ambient_dim()];
        for (i, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, x) in self.basis.row(i).iter().enumerate() {
                if !x.is_zero() {
                    out[j] = &out[j] + &(c * x);
                }
            }
        }
        out
    }

    /// Subtracts the unique combination of basis rows that clears the pivot
    /// columns of `v`. The result is zero iff `v` lies in the subspace.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            let factor = out[p].clone();
            if factor.is_zero() {
                continue;
            }
            for (j, x) in self.basis.row(i).iter().enumerate() {
                if !x.is_zero() {
                    out[j] = &out[j] - &(&factor * x);
                }
            }
        }
        out
    }

    /// Coordinates of `v` in the echelon basis; `None` if `v` is outside.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        if !self.contains_vector_unchecked(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }
}

/// `dim(sup) - dim(sub)`, provided `sub ⊆ sup`.
pub fn quotient_dim(sub: &Subspace, sup: &Subspace) -> Result<usize> {
    if !sup.contains(sub)? {
        return Err(Error::NotContained);
    }
    Ok(sup.dim() - sub.dim())
}

/// The canonical basis of `sup / sub`.
///
/// Representatives are the echelon basis of `sup ∩ {x : x_j = 0 for every
/// pivot column j of sub}`, a complement of `sub` inside `sup` that depends
/// only on the two subspaces. Rows are ordered by increasing pivot column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientBasis {
    sub: Subspace,
    complement: Subspace,
}

impl QuotientBasis {
    pub fn new(sub: &Subspace, sup: &Subspace) -> Result<Self> {
        if !sup.contains(sub)? {
            return Err(Error::NotContained);
        }
        let ctx = sup.ctx();
        let reduced: Vec<Vec<Scalar>> =
            (0..sup.dim()).map(|r| sub.reduce(sup.basis().row(r))).collect();
        let complement = Subspace::from_spanning(ctx, sup.ambient_dim(), reduced)?;
        debug_assert_eq!(complement.dim() + sub.dim(), sup.dim());
        Ok(QuotientBasis { sub: sub.clone(), complement })
    }

    pub fn dim(&self) -> usize {
        self.complement.dim()
    }

    /// Coset representatives, ordered by pivot column.
    pub fn vectors(&self) -> Vec<Vec<Scalar>> {
        self.complement.basis().row_vecs()
    }

    pub fn pivots(&self) -> &[usize] {
        self.complement.pivots()
    }

    /// Coordinates of the class of `v` (a vector of `sup`) in this basis.
    pub fn coords(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        let reduced = self.sub.reduce(v);
        self.complement.coordinates(&reduced).ok_or(Error::NotContained)
    }
}
