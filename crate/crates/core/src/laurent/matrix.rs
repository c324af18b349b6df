use std::fmt;

use crate::error::{Error, Result};
use crate::exact::FieldCtx;
use crate::laurent::poly::LaurentPoly;

/// A square matrix over `k[t, t^-1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentMatrix {
    ctx: FieldCtx,
    n: usize,
    entries: Vec<LaurentPoly>,
}

impl LaurentMatrix {
    pub fn new(ctx: FieldCtx, n: usize, entries: Vec<LaurentPoly>) -> Result<Self> {
        if n == 0 {
            return Err(Error::ShapeMismatch("Laurent matrices need n >= 1".into()));
        }
        if entries.len() != n * n {
            return Err(Error::ShapeMismatch(format!("{} entries for a {n}x{n} matrix", entries.len())));
        }
        if entries.iter().any(|e| e.ctx() != ctx) {
            return Err(Error::FieldMismatch);
        }
        Ok(LaurentMatrix { ctx, n, entries })
    }

    pub fn from_rows(ctx: FieldCtx, rows: Vec<Vec<LaurentPoly>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::ShapeMismatch("Laurent matrix rows must form a square".into()));
        }
        LaurentMatrix::new(ctx, n, rows.into_iter().flatten().collect())
    }

    pub fn identity(ctx: FieldCtx, n: usize) -> Self {
        let entries = (0..n * n)
            .map(|i| if i / n == i % n { LaurentPoly::one(ctx) } else { LaurentPoly::zero(ctx) })
            .collect();
        LaurentMatrix { ctx, n, entries }
    }

    pub fn diagonal(diag: Vec<LaurentPoly>) -> Result<Self> {
        let n = diag.len();
        let ctx = diag.first().ok_or_else(|| Error::ShapeMismatch("empty diagonal".into()))?.ctx();
        let mut m = LaurentMatrix::identity(ctx, n);
        for (i, d) in diag.into_iter().enumerate() {
            if d.ctx() != ctx {
                return Err(Error::FieldMismatch);
            }
            m.entries[i * n + i] = d;
        }
        Ok(m)
    }

    pub fn ctx(&self) -> FieldCtx {
        self.ctx
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> &LaurentPoly {
        &self.entries[r * self.n + c]
    }

    pub fn is_identity(&self) -> bool {
        *self == LaurentMatrix::identity(self.ctx, self.n)
    }

    /// Least exponent appearing in any entry; `None` for the zero matrix.
    pub fn min_exponent(&self) -> Option<i64> {
        self.entries.iter().filter_map(|e| e.valuation().ok()).min()
    }

    pub fn mul(&self, other: &LaurentMatrix) -> Result<LaurentMatrix> {
        if self.ctx != other.ctx {
            return Err(Error::FieldMismatch);
        }
        if self.n != other.n {
            return Err(Error::ShapeMismatch(format!("cannot multiply sizes {} and {}", self.n, other.n)));
        }
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                let mut acc = LaurentPoly::zero(self.ctx);
                for k in 0..n {
                    acc = &acc + &(self.get(r, k) * other.get(k, c));
                }
                entries.push(acc);
            }
        }
        Ok(LaurentMatrix { ctx: self.ctx, n, entries })
    }

    /// `self · v` for a column of Laurent polynomials.
    pub fn apply(&self, v: &[LaurentPoly]) -> Vec<LaurentPoly> {
        (0..self.n)
            .map(|r| {
                let mut acc = LaurentPoly::zero(self.ctx);
                for (k, x) in v.iter().enumerate() {
                    acc = &acc + &(self.get(r, k) * x);
                }
                acc
            })
            .collect()
    }

    fn minor(&self, skip_r: usize, skip_c: usize) -> LaurentMatrix {
        let n = self.n - 1;
        let mut entries = Vec::with_capacity(n * n);
        for r in (0..self.n).filter(|&r| r != skip_r) {
            for c in (0..self.n).filter(|&c| c != skip_c) {
                entries.push(self.get(r, c).clone());
            }
        }
        LaurentMatrix { ctx: self.ctx, n, entries }
    }

    /// Determinant by cofactor expansion along the first row.
    pub fn det(&self) -> LaurentPoly {
        match self.n {
            1 => self.entries[0].clone(),
            2 => &(self.get(0, 0) * self.get(1, 1)) - &(self.get(0, 1) * self.get(1, 0)),
            n => {
                let mut acc = LaurentPoly::zero(self.ctx);
                for c in 0..n {
                    let a = self.get(0, c);
                    if a.is_zero() {
                        continue;
                    }
                    let term = a * &self.minor(0, c).det();
                    acc = if c % 2 == 0 { &acc + &term } else { &acc - &term };
                }
                acc
            }
        }
    }

    /// Transposed cofactor matrix, so that `m · adj(m) = det(m) · I`.
    pub fn adjugate(&self) -> LaurentMatrix {
        let n = self.n;
        if n == 1 {
            return LaurentMatrix::identity(self.ctx, 1);
        }
        let mut entries = vec![LaurentPoly::zero(self.ctx); n * n];
        for r in 0..n {
            for c in 0..n {
                let cof = self.minor(r, c).det();
                entries[c * n + r] = if (r + c) % 2 == 0 { cof } else { -&cof };
            }
        }
        LaurentMatrix { ctx: self.ctx, n, entries }
    }

    /// Inverse over `k[t, t^-1]`; requires the determinant to be `c·t^m`.
    pub fn gl_inverse(&self) -> Result<LaurentMatrix> {
        let det = self.det();
        let (c, m) = det
            .as_monomial()
            .ok_or_else(|| Error::NotInvertibleInLaurentRing(det.to_string()))?;
        let unit_inv = LaurentPoly::monomial(c.inv()?, -m);
        let adj = self.adjugate();
        Ok(LaurentMatrix {
            ctx: self.ctx,
            n: self.n,
            entries: adj.entries.iter().map(|e| e * &unit_inv).collect(),
        })
    }
}

/// Free-function form of [`LaurentMatrix::det`].
pub fn det_laurent(m: &LaurentMatrix) -> LaurentPoly {
    m.det()
}

/// Free-function form of [`LaurentMatrix::gl_inverse`].
pub fn gl_inverse(m: &LaurentMatrix) -> Result<LaurentMatrix> {
    m.gl_inverse()
}

impl fmt::Display for LaurentMatrix {
    /// Rows separated by `;`, entries by `,` (the CLI matrix grammar).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.n)
            .map(|r| (0..self.n).map(|c| self.get(r, c).to_string()).collect::<Vec<_>>().join(", "))
            .collect();
        write!(f, "{}", rows.join("; "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(ctx: FieldCtx, terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_i64_terms(ctx, terms)
    }

    #[test]
    fn diagonal_inverse() {
        let q = FieldCtx::rationals();
        let m = LaurentMatrix::diagonal(vec![lp(q, &[(1, 1)]), lp(q, &[(2, 1)])]).unwrap();
        assert_eq!(m.det(), lp(q, &[(3, 1)]));
        let inv = m.gl_inverse().unwrap();
        assert_eq!(inv, LaurentMatrix::diagonal(vec![lp(q, &[(-1, 1)]), lp(q, &[(-2, 1)])]).unwrap());
    }

    #[test]
    fn unipotent_inverse() {
        let q = FieldCtx::rationals();
        let m = LaurentMatrix::from_rows(q, vec![vec![lp(q, &[(0, 1)]), lp(q, &[(0, 1)])], vec![lp(q, &[]), lp(q, &[(0, 1)])]]).unwrap();
        assert!(m.det().is_one());
        let expected =
            LaurentMatrix::from_rows(q, vec![vec![lp(q, &[(0, 1)]), lp(q, &[(0, -1)])], vec![lp(q, &[]), lp(q, &[(0, 1)])]]).unwrap();
        assert_eq!(m.gl_inverse().unwrap(), expected);
    }

    #[test]
    fn mixed_powers_inverse() {
        let q = FieldCtx::rationals();
        let m = LaurentMatrix::from_rows(q, vec![vec![lp(q, &[(0, 1)]), lp(q, &[(1, 1)])], vec![lp(q, &[(-1, 1)]), lp(q, &[(0, 2)])]]).unwrap();
        assert!(m.det().is_one());
        let expected =
            LaurentMatrix::from_rows(q, vec![vec![lp(q, &[(0, 2)]), lp(q, &[(1, -1)])], vec![lp(q, &[(-1, -1)]), lp(q, &[(0, 1)])]]).unwrap();
        let inv = m.gl_inverse().unwrap();
        assert_eq!(inv, expected);
        assert!(m.mul(&inv).unwrap().is_identity());
        assert!(inv.mul(&m).unwrap().is_identity());
    }

    #[test]
    fn non_unit_determinant_is_rejected() {
        let q = FieldCtx::rationals();
        let m = LaurentMatrix::diagonal(vec![lp(q, &[(0, 1), (1, 1)]), lp(q, &[(0, 1)])]).unwrap();
        assert!(matches!(m.gl_inverse(), Err(Error::NotInvertibleInLaurentRing(_))));
    }

    #[test]
    fn three_by_three_adjugate() {
        let f5 = FieldCtx::prime(5).unwrap();
        let m = LaurentMatrix::from_rows(
            f5,
            vec![
                vec![lp(f5, &[(0, 1)]), lp(f5, &[(1, 2)]), lp(f5, &[])],
                vec![lp(f5, &[]), lp(f5, &[(-1, 1)]), lp(f5, &[(0, 3)])],
                vec![lp(f5, &[]), lp(f5, &[]), lp(f5, &[(2, 4)])],
            ],
        )
        .unwrap();
        assert_eq!(m.det(), lp(f5, &[(1, 4)]));
        assert!(m.mul(&m.gl_inverse().unwrap()).unwrap().is_identity());
    }
}
