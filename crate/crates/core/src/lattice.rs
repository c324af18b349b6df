//! Lattices in `V = k((t))^n`.
//!
//! A lattice `L` with `t^a O^n ⊆ L ⊆ t^-b O^n` (where `O = k[[t]]`) is
//! determined by its image `W` in the finite-dimensional window
//! `t^-b O^n / t^a O^n`. The window has one coordinate per monomial slot
//! `t^e e_i` with `-b <= e < a`, ordered by exponent and then by
//! coordinate. Bounds are kept tight, so equal lattices have identical
//! representations.

use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{FieldCtx, QuotientBasis, Scalar, Subspace};
use crate::laurent::{Automorphism, LaurentPoly};

/// `k((t))^n` over a fixed field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TateSpace {
    ctx: FieldCtx,
    rank: usize,
}

impl TateSpace {
    pub fn new(ctx: FieldCtx, rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::ShapeMismatch("a Tate space needs rank >= 1".into()));
        }
        Ok(TateSpace { ctx, rank })
    }

    pub fn ctx(&self) -> FieldCtx {
        self.ctx
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
}

/// The window `t^-b O^n / t^a O^n` with its monomial coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    pub space: TateSpace,
    pub a: i64,
    pub b: i64,
}

impl Window {
    pub fn dim(&self) -> usize {
        self.space.rank * (self.a + self.b).max(0) as usize
    }

    /// Coordinate of `t^e e_i`.
    pub fn slot(&self, e: i64, i: usize) -> usize {
        (e + self.b) as usize * self.space.rank + i
    }

    /// The class of a vector of Laurent polynomials. Terms at or above
    /// `t^a` are dropped; terms below `t^-b` are an error.
    pub fn to_vector(&self, v: &[LaurentPoly]) -> Result<Vec<Scalar>> {
        if v.len() != self.space.rank {
            return Err(Error::SpaceMismatch);
        }
        let mut out = vec![self.space.ctx.zero(); self.dim()];
        for (i, p) in v.iter().enumerate() {
            for (e, c) in p.terms() {
                if e < -self.b {
                    return Err(Error::NotContained);
                }
                if e < self.a {
                    out[self.slot(e, i)] = c.clone();
                }
            }
        }
        Ok(out)
    }

    /// The canonical lift of a window vector (exponents in `[-b, a)`).
    pub fn lift(&self, v: &[Scalar]) -> Vec<LaurentPoly> {
        let n = self.space.rank;
        let ctx = self.space.ctx;
        (0..n)
            .map(|i| {
                let terms = (-self.b..self.a).map(|e| (e, v[self.slot(e, i)].clone()));
                LaurentPoly::from_terms(ctx, terms).expect("window entries share the field")
            })
            .collect()
    }

    fn units(&self, from: i64) -> Vec<Vec<Scalar>> {
        let ctx = self.space.ctx;
        let mut out = Vec::new();
        for e in from.max(-self.b)..self.a {
            for i in 0..self.space.rank {
                let mut v = vec![ctx.zero(); self.dim()];
                v[self.slot(e, i)] = ctx.one();
                out.push(v);
            }
        }
        out
    }
}

/// A lattice of a [`TateSpace`], in normalized form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Lattice {
    space: TateSpace,
    a: i64,
    b: i64,
    w: Subspace,
}

impl Lattice {
    /// The lattice `W + t^a O^n` for `W` a subspace of the window
    /// `t^-b O^n / t^a O^n`; bounds are tightened afterwards.
    pub fn from_window(space: TateSpace, a: i64, b: i64, w: Subspace) -> Result<Self> {
        let window = Window { space, a, b };
        if a + b < 0 {
            return Err(Error::ShapeMismatch(format!("window bounds a={a}, b={b} are inverted")));
        }
        if w.ambient_dim() != window.dim() {
            return Err(Error::AmbientMismatch { left: window.dim(), right: w.ambient_dim() });
        }
        if w.ctx() != space.ctx {
            return Err(Error::FieldMismatch);
        }
        Ok(Lattice { space, a, b, w }.normalized())
    }

    /// The lattice spanned by `t^a O^n` and the given vectors, which must
    /// lie in `t^-b O^n`.
    pub fn from_generators(space: TateSpace, a: i64, b: i64, gens: &[Vec<LaurentPoly>]) -> Result<Self> {
        let window = Window { space, a, b };
        let rows = gens.iter().map(|g| window.to_vector(g)).collect::<Result<Vec<_>>>()?;
        Lattice::from_window(space, a, b, Subspace::from_spanning(space.ctx, window.dim(), rows)?)
    }

    fn normalized(mut self) -> Self {
        let n = self.space.rank;
        loop {
            let mut changed = false;
            // Lowest block unused: L ⊆ t^{-b+1} O^n.
            if self.a + self.b > 0 && self.w.basis().row_vecs().iter().all(|r| r[..n].iter().all(Scalar::is_zero)) {
                let rows = self.w.basis().row_vecs().into_iter().map(|r| r[n..].to_vec()).collect();
                self.b -= 1;
                self.w = Subspace::from_spanning(self.space.ctx, self.window().dim(), rows).expect("shrunk rows fit");
                changed = true;
            }
            // Top block fully contained: t^{a-1} O^n ⊆ L.
            if self.a + self.b > 0 {
                let top = self.window().units(self.a - 1);
                if top.iter().all(|u| self.w.contains_vector(u).expect("same window")) {
                    let keep = self.window().dim() - n;
                    let rows = self
                        .w
                        .basis()
                        .row_vecs()
                        .into_iter()
                        .filter(|r| r[..keep].iter().any(|x| !x.is_zero()))
                        .map(|r| r[..keep].to_vec())
                        .collect();
                    self.a -= 1;
                    self.w = Subspace::from_spanning(self.space.ctx, keep, rows).expect("shrunk rows fit");
                    changed = true;
                }
            }
            if !changed {
                return self;
            }
        }
    }

    pub fn space(&self) -> TateSpace {
        self.space
    }

    pub fn ctx(&self) -> FieldCtx {
        self.space.ctx
    }

    /// Least `a` with `t^a O^n ⊆ L`.
    pub fn a(&self) -> i64 {
        self.a
    }

    /// Least `b` with `L ⊆ t^-b O^n`.
    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn window(&self) -> Window {
        Window { space: self.space, a: self.a, b: self.b }
    }

    /// The image of `L` in its own window.
    pub fn subspace(&self) -> &Subspace {
        &self.w
    }

    /// Representatives of `L / t^a O^n` as vectors of Laurent polynomials.
    pub fn generators(&self) -> Vec<Vec<LaurentPoly>> {
        let window = self.window();
        self.w.basis().row_vecs().iter().map(|r| window.lift(r)).collect()
    }

    /// The image of `L` in the larger window with bounds `a' >= a`, `b' >= b`.
    pub fn embed(&self, a: i64, b: i64) -> Subspace {
        assert!(a >= self.a && b >= self.b, "window must enclose the lattice");
        let target = Window { space: self.space, a, b };
        let shift = (b - self.b) as usize * self.space.rank;
        let ctx = self.space.ctx;
        let mut rows: Vec<Vec<Scalar>> = self
            .w
            .basis()
            .row_vecs()
            .into_iter()
            .map(|r| {
                let mut v = vec![ctx.zero(); target.dim()];
                for (j, x) in r.into_iter().enumerate() {
                    v[j + shift] = x;
                }
                v
            })
            .collect();
        rows.extend(target.units(self.a));
        Subspace::from_spanning(ctx, target.dim(), rows).expect("embedded rows fit")
    }

    pub fn contains_vector(&self, v: &[LaurentPoly]) -> Result<bool> {
        if v.len() != self.space.rank || v.iter().any(|p| p.ctx() != self.ctx()) {
            return Err(Error::SpaceMismatch);
        }
        let low = v.iter().filter_map(|p| p.valuation().ok()).min().unwrap_or(0);
        let b = self.b.max(-low);
        let s = self.embed(self.a, b);
        let window = Window { space: self.space, a: self.a, b };
        s.contains_vector(&window.to_vector(v)?)
    }

    fn check_space(&self, other: &Lattice) -> Result<()> {
        if self.space == other.space {
            Ok(())
        } else {
            Err(Error::SpaceMismatch)
        }
    }

    pub fn leq(&self, other: &Lattice) -> Result<bool> {
        let cw = common_window(&[self, other])?;
        cw.subspaces[1].contains(&cw.subspaces[0])
    }

    pub fn join(&self, other: &Lattice) -> Result<Lattice> {
        let cw = common_window(&[self, other])?;
        let w = cw.subspaces[0].sum(&cw.subspaces[1])?;
        Lattice::from_window(self.space, cw.window.a, cw.window.b, w)
    }

    pub fn meet(&self, other: &Lattice) -> Result<Lattice> {
        let cw = common_window(&[self, other])?;
        let w = cw.subspaces[0].intersect(&cw.subspaces[1])?;
        Lattice::from_window(self.space, cw.window.a, cw.window.b, w)
    }

    /// `g · L`.
    pub fn act(&self, g: &Automorphism) -> Result<Lattice> {
        if g.ctx() != self.ctx() || g.rank() != self.space.rank {
            return Err(Error::SpaceMismatch);
        }
        match g {
            Automorphism::MultBy(f) => {
                let size = (self.a + self.b) as usize;
                if !f.is_exact() && f.precision() < size {
                    return Err(Error::InsufficientPrecision { required: size, available: f.precision() });
                }
                let v = f.valuation();
                let (a, b) = (self.a + v, self.b - v);
                let target = Window { space: self.space, a, b };
                let f_poly = truncate_above(&f.truncation(), v + size as i64);
                let rows = self
                    .generators()
                    .iter()
                    .map(|gen| target.to_vector(&[truncate_above(&(&gen[0] * &f_poly), a)]))
                    .collect::<Result<Vec<_>>>()?;
                Lattice::from_window(self.space, a, b, Subspace::from_spanning(self.ctx(), target.dim(), rows)?)
            }
            Automorphism::GLn(m) => {
                let inv = m.gl_inverse()?;
                let mg = m.min_exponent().expect("invertible matrix is nonzero");
                let mi = inv.min_exponent().expect("invertible matrix is nonzero");
                let (a, b) = (self.a - mi, self.b - mg);
                let target = Window { space: self.space, a, b };
                let mut gens = self.generators();
                for e in self.a..(self.a - mi - mg) {
                    for i in 0..self.space.rank {
                        let mut v = vec![LaurentPoly::zero(self.ctx()); self.space.rank];
                        v[i] = LaurentPoly::t_pow(self.ctx(), e);
                        gens.push(v);
                    }
                }
                let rows = gens.iter().map(|v| target.to_vector(&m.apply(v))).collect::<Result<Vec<_>>>()?;
                Lattice::from_window(self.space, a, b, Subspace::from_spanning(self.ctx(), target.dim(), rows)?)
            }
        }
    }

    /// `{"rank", "a", "b", "basis"}` with basis rows over the window slots.
    pub fn to_json(&self) -> Value {
        let basis: Vec<Value> = self
            .w
            .basis()
            .row_vecs()
            .iter()
            .map(|r| Value::Array(r.iter().map(scalar_json).collect()))
            .collect();
        json!({ "rank": self.space.rank, "a": self.a, "b": self.b, "basis": basis })
    }
}

/// Rationals as `"a/b"` strings, residues as integers.
pub fn scalar_json(s: &Scalar) -> Value {
    match s.residue() {
        Some(r) => json!(r),
        None => json!(s.to_string()),
    }
}

/// `g · v` with every term at or above `t^bound` dropped.
pub fn apply_truncated(g: &Automorphism, v: &[LaurentPoly], bound: i64) -> Result<Vec<LaurentPoly>> {
    if v.len() != g.rank() {
        return Err(Error::SpaceMismatch);
    }
    match g {
        Automorphism::MultBy(f) => {
            let Ok(low) = v[0].valuation() else {
                return Ok(vec![LaurentPoly::zero(g.ctx())]);
            };
            if let Some(known) = f.known_until() {
                if bound - low > known {
                    return Err(Error::InsufficientPrecision {
                        required: (bound - low - f.valuation()) as usize,
                        available: f.precision(),
                    });
                }
            }
            Ok(vec![truncate_above(&(&v[0] * &f.truncation()), bound)])
        }
        Automorphism::GLn(m) => Ok(m.apply(v).iter().map(|p| truncate_above(p, bound)).collect()),
    }
}

fn truncate_above(p: &LaurentPoly, bound: i64) -> LaurentPoly {
    LaurentPoly::from_terms(p.ctx(), p.terms().filter(|(e, _)| *e < bound).map(|(e, c)| (e, c.clone())))
        .expect("same field")
}

/// `⊕ t^{shift_i} O`.
pub fn std_lattice(space: TateSpace, shifts: &[i64]) -> Result<Lattice> {
    if shifts.len() != space.rank {
        return Err(Error::ShapeMismatch(format!("{} shifts for rank {}", shifts.len(), space.rank)));
    }
    let a = *shifts.iter().max().expect("rank >= 1");
    let b = -*shifts.iter().min().expect("rank >= 1");
    let window = Window { space, a, b };
    let mut rows = Vec::new();
    for (i, &s) in shifts.iter().enumerate() {
        for e in s..a {
            let mut v = vec![space.ctx.zero(); window.dim()];
            v[window.slot(e, i)] = space.ctx.one();
            rows.push(v);
        }
    }
    Lattice::from_window(space, a, b, Subspace::from_spanning(space.ctx, window.dim(), rows)?)
}

/// Several lattices embedded in one window that encloses all of them.
#[derive(Debug, Clone)]
pub struct CommonWindow {
    pub window: Window,
    pub subspaces: Vec<Subspace>,
}

pub fn common_window(lattices: &[&Lattice]) -> Result<CommonWindow> {
    let first = lattices.first().ok_or(Error::SpaceMismatch)?;
    for l in lattices {
        first.check_space(l)?;
    }
    let a = lattices.iter().map(|l| l.a).max().expect("nonempty");
    let b = lattices.iter().map(|l| l.b).max().expect("nonempty");
    Ok(CommonWindow {
        window: Window { space: first.space, a, b },
        subspaces: lattices.iter().map(|l| l.embed(a, b)).collect(),
    })
}

/// `M / L` for nested lattices `L ⊆ M`.
#[derive(Debug, Clone)]
pub struct LatticeQuotient {
    pub dim: usize,
    /// Coset representatives in increasing monomial order.
    pub basis: Vec<Vec<LaurentPoly>>,
}

pub fn quotient(l: &Lattice, m: &Lattice) -> Result<LatticeQuotient> {
    let cw = common_window(&[l, m])?;
    let qb = QuotientBasis::new(&cw.subspaces[0], &cw.subspaces[1]).map_err(|e| match e {
        Error::NotContained => Error::NotNested,
        other => other,
    })?;
    Ok(LatticeQuotient { dim: qb.dim(), basis: qb.vectors().iter().map(|v| cw.window.lift(v)).collect() })
}

/// `dim(M / L)` for `L ⊆ M`.
pub fn quotient_dim(l: &Lattice, m: &Lattice) -> Result<usize> {
    Ok(quotient(l, m)?.dim)
}

/// A weakly increasing sequence of lattices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeChain {
    space: TateSpace,
    lattices: Vec<Lattice>,
}

impl LatticeChain {
    pub fn new(space: TateSpace, lattices: Vec<Lattice>) -> Result<Self> {
        for l in &lattices {
            if l.space != space {
                return Err(Error::SpaceMismatch);
            }
        }
        for pair in lattices.windows(2) {
            if !pair[0].leq(&pair[1])? {
                return Err(Error::NotNested);
            }
        }
        Ok(LatticeChain { space, lattices })
    }

    pub fn space(&self) -> TateSpace {
        self.space
    }

    pub fn lattices(&self) -> &[Lattice] {
        &self.lattices
    }

    /// `dim(L_{j+1} / L_j)` for consecutive members.
    pub fn quotient_dims(&self) -> Vec<usize> {
        self.lattices
            .windows(2)
            .map(|p| quotient_dim(&p[0], &p[1]).expect("chain is nested"))
            .collect()
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self
            .generators()
            .iter()
            .map(|g| format!("({})", g.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")))
            .collect();
        write!(f, "span{{{}}} + t^{}O^{}", gens.join(", "), self.a, self.space.rank)
    }
}
