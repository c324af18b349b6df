//! Determinant lines of pairs of lattices and the central extension they
//! define.
//!
//! For lattices `F1, F2` with `N = F1 ∩ F2` the line `(F1 | F2)` is
//! `det(F1/N)^∨ ⊗ det(F2/N)`. Each quotient `F/N` has the canonical basis
//! of [`QuotientBasis`], and its top wedge is taken with the vectors in
//! decreasing monomial order, so that the monomials of a nested flag wedge
//! together in the same order as the flag. Every isomorphism between lines
//! is then a scalar.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exact::{Matrix, QuotientBasis, Scalar, Subspace};
use crate::laurent::{Automorphism, LaurentPoly, TruncSeries};
use crate::lattice::{apply_truncated, common_window, quotient_dim, std_lattice, Lattice, Window};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Ungraded,
    Graded,
}

impl Mode {
    pub fn is_graded(self) -> bool {
        self == Mode::Graded
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Ungraded => "ungraded",
            Mode::Graded => "graded",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ungraded" => Ok(Mode::Ungraded),
            "graded" => Ok(Mode::Graded),
            _ => Err(Error::Parse(format!("unknown mode '{s}'"))),
        }
    }
}

/// `(-1)^{mn}`, the sign of the symmetry `L ⊗ M ≅ M ⊗ L` for lines of
/// grades `m` and `n`.
pub fn koszul_sign(ctx: crate::exact::FieldCtx, m: i64, n: i64) -> Scalar {
    Scalar::sign(ctx, m * n)
}

/// The line `(lower | upper)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GradedLine {
    pub grade: i64,
    pub lower: Lattice,
    pub upper: Lattice,
}

impl GradedLine {
    /// The canonical basis `ε(N, lower)^∨ ⊗ ε(N, upper)`, as the two
    /// ordered lists of wedge factors.
    pub fn basis(&self) -> Result<(Vec<Vec<LaurentPoly>>, Vec<Vec<LaurentPoly>>)> {
        let n = self.lower.meet(&self.upper)?;
        let cw = common_window(&[&n, &self.lower, &self.upper])?;
        let side = |s: &Subspace| -> Result<Vec<Vec<LaurentPoly>>> {
            Ok(wedge_vectors(&QuotientBasis::new(&cw.subspaces[0], s)?).iter().map(|v| cw.window.lift(v)).collect())
        };
        Ok((side(&cw.subspaces[1])?, side(&cw.subspaces[2])?))
    }
}

/// An isomorphism from a tensor product of lines to a line, as the scalar
/// it has in the canonical bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineIso {
    pub source: Vec<GradedLine>,
    pub target: GradedLine,
    pub scalar: Scalar,
}

pub fn rel_det(f1: &Lattice, f2: &Lattice) -> Result<GradedLine> {
    let n = f1.meet(f2)?;
    let grade = quotient_dim(&n, f2)? as i64 - quotient_dim(&n, f1)? as i64;
    Ok(GradedLine { grade, lower: f1.clone(), upper: f2.clone() })
}

fn wedge_vectors(q: &QuotientBasis) -> Vec<Vec<Scalar>> {
    let mut v = q.vectors();
    v.reverse();
    v
}

fn wedge_coords(q: &QuotientBasis, v: &[Scalar]) -> Result<Vec<Scalar>> {
    let mut c = q.coords(v)?;
    c.reverse();
    Ok(c)
}

/// The scalar `s` with `ε(M, N) ∧ ε(N, F) = s · ε(M, F)` for `M ⊆ N ⊆ F`,
/// all in one window.
fn nested_scalar(m: &Subspace, n: &Subspace, f: &Subspace) -> Result<Scalar> {
    let ctx = m.ctx();
    let target = QuotientBasis::new(m, f)?;
    let mut rows = Vec::new();
    for v in wedge_vectors(&QuotientBasis::new(m, n)?).into_iter().chain(wedge_vectors(&QuotientBasis::new(n, f)?)) {
        rows.push(wedge_coords(&target, &v)?);
    }
    Matrix::from_rows(ctx, target.dim(), rows)?.det()
}

/// Scalar comparing the canonical basis of `(Fi | Fj)` with the one
/// obtained through `M ⊆ Fi ∩ Fj`.
fn pair_scalar(m: &Subspace, fi: &Subspace, fj: &Subspace, mode: Mode) -> Result<Scalar> {
    let n = fi.intersect(fj)?;
    let mut c = nested_scalar(m, &n, fj)?.checked_div(&nested_scalar(m, &n, fi)?)?;
    if mode.is_graded() {
        let di = (fi.dim() - n.dim()) as i64;
        let dj = (fj.dim() - n.dim()) as i64;
        c = &c * &koszul_sign(m.ctx(), di, dj);
    }
    Ok(c)
}

/// The scalar of `ω(F1|F2|F3) : (F1|F2) ⊗ (F2|F3) → (F1|F3)`.
pub fn omega(f1: &Lattice, f2: &Lattice, f3: &Lattice, mode: Mode) -> Result<Scalar> {
    let cw = common_window(&[f1, f2, f3])?;
    let [s1, s2, s3] = [&cw.subspaces[0], &cw.subspaces[1], &cw.subspaces[2]];
    let m = s1.intersect(s2)?.intersect(s3)?;
    let c12 = pair_scalar(&m, s1, s2, mode)?;
    let c23 = pair_scalar(&m, s2, s3, mode)?;
    let c13 = pair_scalar(&m, s1, s3, mode)?;
    (&c12 * &c23).checked_div(&c13)
}

pub fn omega_iso(f1: &Lattice, f2: &Lattice, f3: &Lattice, mode: Mode) -> Result<LineIso> {
    Ok(LineIso {
        source: vec![rel_det(f1, f2)?, rel_det(f2, f3)?],
        target: rel_det(f1, f3)?,
        scalar: omega(f1, f2, f3, mode)?,
    })
}

/// Both ways of composing `(F1|F2) ⊗ (F2|F3) ⊗ (F3|F4) → (F1|F4)` agree.
pub fn cocycle_check(f1: &Lattice, f2: &Lattice, f3: &Lattice, f4: &Lattice, mode: Mode) -> Result<bool> {
    let left = &omega(f1, f2, f3, mode)? * &omega(f1, f3, f4, mode)?;
    let right = &omega(f2, f3, f4, mode)? * &omega(f1, f2, f4, mode)?;
    Ok(left == right)
}

/// An integer-valued function on lattices with `f(L') = f(L) + dim(L'/L)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionTheory {
    pub base: Lattice,
    pub value_at_base: i64,
}

impl DimensionTheory {
    pub fn new(base: Lattice, value_at_base: i64) -> Self {
        DimensionTheory { base, value_at_base }
    }

    pub fn eval(&self, l: &Lattice) -> Result<i64> {
        let n = l.meet(&self.base)?;
        Ok(self.value_at_base + quotient_dim(&n, l)? as i64 - quotient_dim(&n, &self.base)? as i64)
    }

    /// The torsor action of `Z`.
    pub fn shifted(&self, k: i64) -> Self {
        DimensionTheory { base: self.base.clone(), value_at_base: self.value_at_base + k }
    }
}

pub fn dim_theory_eval(d: &DimensionTheory, l: &Lattice) -> Result<i64> {
    d.eval(l)
}

/// `Δ(L) = (base | L)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeterminantTheory {
    pub base: Lattice,
}

impl DeterminantTheory {
    pub fn new(base: Lattice) -> Self {
        DeterminantTheory { base }
    }

    pub fn eval(&self, l: &Lattice) -> Result<GradedLine> {
        rel_det(&self.base, l)
    }

    /// For `L ⊆ L' ⊆ L''`, going from `Δ(L)` to `Δ(L'')` through `Δ(L')`
    /// agrees with going directly, with `det(L''/L) ≅ det(L'/L) ⊗ det(L''/L')`.
    pub fn coherence(&self, l: &Lattice, l1: &Lattice, l2: &Lattice, mode: Mode) -> Result<bool> {
        if !l.leq(l1)? || !l1.leq(l2)? {
            return Err(Error::NotNested);
        }
        let b = &self.base;
        let via_middle = &omega(b, l, l1, mode)? * &omega(b, l1, l2, mode)?;
        let direct = &omega(b, l, l2, mode)? * &flag_scalar(l, l1, l2)?;
        Ok(via_middle == direct)
    }
}

pub fn det_theory_eval(d: &DeterminantTheory, l: &Lattice) -> Result<GradedLine> {
    d.eval(l)
}

pub fn det_theory_coherence(d: &DeterminantTheory, l: &Lattice, l1: &Lattice, l2: &Lattice, mode: Mode) -> Result<bool> {
    d.coherence(l, l1, l2, mode)
}

/// The wedge comparison for a flag `L ⊆ L' ⊆ L''`.
fn flag_scalar(l: &Lattice, l1: &Lattice, l2: &Lattice) -> Result<Scalar> {
    let cw = common_window(&[l, l1, l2])?;
    nested_scalar(&cw.subspaces[0], &cw.subspaces[1], &cw.subspaces[2])
}

/// `g_* : (F1 | F2) → (gF1 | gF2)` in canonical bases.
pub fn translation_scalar(g: &Automorphism, f1: &Lattice, f2: &Lattice) -> Result<Scalar> {
    let n = f1.meet(f2)?;
    let (gn, gf1, gf2) = (n.act(g)?, f1.act(g)?, f2.act(g)?);
    let src = common_window(&[&n, f1, f2])?;
    let dst = common_window(&[&gn, &gf1, &gf2])?;
    let alpha = |k: usize| -> Result<Scalar> {
        let from = QuotientBasis::new(&src.subspaces[0], &src.subspaces[k])?;
        let to = QuotientBasis::new(&dst.subspaces[0], &dst.subspaces[k])?;
        let rows = wedge_vectors(&from)
            .iter()
            .map(|v| {
                let image = apply_truncated(g, &src.window.lift(v), dst.window.a)?;
                wedge_coords(&to, &dst.window.to_vector(&image)?)
            })
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(g.ctx(), to.dim(), rows)?.det()
    };
    alpha(2)?.checked_div(&alpha(1)?)
}

/// An element of the central extension of automorphisms by `k^×`: an
/// automorphism `g` with the vector `z · ε` of the line `(gL0 | L0)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtElement {
    pub g: Automorphism,
    pub z: Scalar,
    pub mode: Mode,
    pub base: Lattice,
}

impl ExtElement {
    /// `(g, 1)` over the standard lattice.
    pub fn lift(g: Automorphism, mode: Mode) -> Result<Self> {
        let space = crate::lattice::TateSpace::new(g.ctx(), g.rank())?;
        let base = std_lattice(space, &vec![0; g.rank()])?;
        Ok(ExtElement { z: g.ctx().one(), g, mode, base })
    }

    pub fn with_base(g: Automorphism, z: Scalar, mode: Mode, base: Lattice) -> Result<Self> {
        if z.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if g.ctx() != base.ctx() || g.rank() != base.space().rank() || z.ctx() != g.ctx() {
            return Err(Error::SpaceMismatch);
        }
        Ok(ExtElement { g, z, mode, base })
    }

    /// Grade of `(gL0 | L0)`.
    pub fn grade(&self) -> Result<i64> {
        Ok(rel_det(&self.base.act(&self.g)?, &self.base)?.grade)
    }
}

/// The factor `c(g, h)` with `(g, z)(h, w) = (gh, z w c(g, h))`.
fn ext_cocycle(g: &Automorphism, h: &Automorphism, base: &Lattice, mode: Mode) -> Result<Scalar> {
    let hl = base.act(h)?;
    let gl = base.act(g)?;
    let ghl = hl.act(g)?;
    let mut c = &translation_scalar(g, &hl, base)? * &omega(&ghl, &gl, base, mode)?;
    if mode.is_graded() {
        let gr_g = rel_det(&gl, base)?.grade;
        let gr_h = rel_det(&hl, base)?.grade;
        c = &c * &koszul_sign(base.ctx(), gr_g, gr_h);
    }
    Ok(c)
}

pub fn ext_mul(x: &ExtElement, y: &ExtElement) -> Result<ExtElement> {
    if x.mode != y.mode {
        return Err(Error::ModeMismatch);
    }
    if x.base != y.base {
        return Err(Error::SpaceMismatch);
    }
    let c = ext_cocycle(&x.g, &y.g, &x.base, x.mode)?;
    Ok(ExtElement { g: x.g.compose(&y.g)?, z: &(&x.z * &y.z) * &c, mode: x.mode, base: x.base.clone() })
}

/// Inverse; a non-monomial series is inverted to `precision` coefficients.
pub fn ext_inverse(x: &ExtElement, precision: usize) -> Result<ExtElement> {
    let ginv = x.g.inverse(precision)?;
    let c = ext_cocycle(&x.g, &ginv, &x.base, x.mode)?;
    Ok(ExtElement { g: ginv, z: (&x.z * &c).inv()?, mode: x.mode, base: x.base.clone() })
}

/// The scalar `x̃ ỹ x̃⁻¹ ỹ⁻¹` for lifts of multiplication automorphisms.
/// In graded mode it is the super-commutator, carrying the extra sign
/// `(-1)^{gr x · gr y}`.
pub fn commutator(f: &Automorphism, g: &Automorphism, mode: Mode, precision: usize) -> Result<Scalar> {
    commutator_at(f, g, mode, precision, None)
}

/// [`commutator`] with lifts anchored at `base` instead of the standard lattice.
pub fn commutator_at(f: &Automorphism, g: &Automorphism, mode: Mode, precision: usize, base: Option<&Lattice>) -> Result<Scalar> {
    for a in [f, g] {
        if !matches!(a, Automorphism::MultBy(_)) {
            return Err(Error::NotMultiplicationAutomorphism);
        }
    }
    let lift = |a: &Automorphism| match base {
        None => ExtElement::lift(a.clone(), mode),
        Some(b) => ExtElement::with_base(a.clone(), a.ctx().one(), mode, b.clone()),
    };
    let x = lift(f)?;
    let y = lift(g)?;
    let xy = ext_mul(&x, &y)?;
    let xyx = ext_mul(&xy, &ext_inverse(&x, precision)?)?;
    let out = ext_mul(&xyx, &ext_inverse(&y, precision)?)?;
    let mut z = out.z;
    if mode.is_graded() {
        z = &z * &koszul_sign(f.ctx(), x.grade()?, y.grade()?);
    }
    Ok(z)
}

/// `(f^{v(g)} / g^{v(f)})(0)`, evaluated with series arithmetic.
pub fn commutator_closed_form(f: &LaurentPoly, g: &LaurentPoly) -> Result<Scalar> {
    if f.ctx() != g.ctx() {
        return Err(Error::FieldMismatch);
    }
    let sf = TruncSeries::from_poly(f)?;
    let sg = TruncSeries::from_poly(g)?;
    let num = sf.pow(sg.valuation(), 1)?;
    let den = sg.pow(sf.valuation(), 1)?;
    num.mul(&den.inverse(1)?)?.coeff(0)
}

/// `(-1)^{v(f) v(g)} (f^{v(g)} / g^{v(f)})(0)`.
pub fn tame_symbol(f: &LaurentPoly, g: &LaurentPoly) -> Result<Scalar> {
    let sign = koszul_sign(f.ctx(), f.valuation()?, g.valuation()?);
    Ok(&sign * &commutator_closed_form(f, g)?)
}

/// The window in which a triple of lattices is compared; exposed for tests
/// that recompute scalars by hand.
pub fn triple_window(f1: &Lattice, f2: &Lattice, f3: &Lattice) -> Result<(Window, Vec<Subspace>)> {
    let cw = common_window(&[f1, f2, f3])?;
    Ok((cw.window, cw.subspaces))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::FieldCtx;
    use crate::lattice::TateSpace;

    fn q() -> FieldCtx {
        FieldCtx::rationals()
    }

    fn o(ctx: FieldCtx, s: i64) -> Lattice {
        std_lattice(TateSpace::new(ctx, 1).unwrap(), &[s]).unwrap()
    }

    fn mult(p: LaurentPoly) -> Automorphism {
        Automorphism::mult_by_poly(&p).unwrap()
    }

    #[test]
    fn relative_lines() {
        let l = rel_det(&o(q(), 0), &o(q(), -2)).unwrap();
        assert_eq!(l.grade, 2);
        let (dual, primal) = l.basis().unwrap();
        assert!(dual.is_empty());
        assert_eq!(primal, vec![vec![LaurentPoly::t_pow(q(), -1)], vec![LaurentPoly::t_pow(q(), -2)]]);
        assert_eq!(rel_det(&o(q(), 3), &o(q(), 3)).unwrap().grade, 0);
        assert_eq!(rel_det(&o(q(), -1), &o(q(), 0)).unwrap().grade, -1);
    }

    #[test]
    fn nested_omega_is_one() {
        for mode in [Mode::Ungraded, Mode::Graded] {
            assert!(omega(&o(q(), 0), &o(q(), -1), &o(q(), -2), mode).unwrap().is_one());
            assert!(omega(&o(q(), 2), &o(q(), 2), &o(q(), 2), mode).unwrap().is_one());
            assert!(cocycle_check(&o(q(), 3), &o(q(), 1), &o(q(), 0), &o(q(), -2), mode).unwrap());
        }
    }

    #[test]
    fn skew_middle_lattice() {
        let space = TateSpace::new(q(), 1).unwrap();
        let skew = Lattice::from_generators(space, 1, 1, &[vec![LaurentPoly::from_i64_terms(q(), &[(-1, 1), (0, 1)])]]).unwrap();
        // ε(tO, L) = t^-1 + 1 and ε(L, t^-1O) = 1 against ε(tO, t^-1O) = 1 ∧ t^-1.
        let expected = Matrix::from_i64_rows(q(), &[&[1, 1], &[1, 0]]).det().unwrap();
        assert_eq!(omega(&o(q(), 1), &skew, &o(q(), -1), Mode::Ungraded).unwrap(), expected);
    }

    #[test]
    fn torsors() {
        let d = DimensionTheory::new(o(q(), 0), 0);
        assert_eq!(d.eval(&o(q(), 0)).unwrap(), 0);
        assert_eq!(d.eval(&o(q(), 3)).unwrap(), -3);
        assert_eq!(d.shifted(4).eval(&o(q(), -1)).unwrap(), 5);
        let delta = DeterminantTheory::new(o(q(), 0));
        assert_eq!(delta.eval(&o(q(), 0)).unwrap().grade, 0);
        assert!(delta.coherence(&o(q(), 2), &o(q(), 1), &o(q(), -1), Mode::Graded).unwrap());
        assert_eq!(delta.coherence(&o(q(), 1), &o(q(), 2), &o(q(), 0), Mode::Ungraded), Err(Error::NotNested));
    }

    #[test]
    fn extension_products() {
        let t = mult(LaurentPoly::t_pow(q(), 1));
        let x = ExtElement::lift(t.clone(), Mode::Ungraded).unwrap();
        let e = ExtElement::lift(Automorphism::identity(q(), 1), Mode::Ungraded).unwrap();
        assert_eq!(ext_mul(&e, &x).unwrap(), x);
        let xx = ext_mul(&x, &x).unwrap();
        assert_eq!(xx.g, mult(LaurentPoly::t_pow(q(), 2)));
        assert!(xx.z.is_one());
        let inv = ext_inverse(&x, 4).unwrap();
        let one = ext_mul(&x, &inv).unwrap();
        assert!(one.g.is_identity() && one.z.is_one());
        let graded = ExtElement::lift(t, Mode::Graded).unwrap();
        assert_eq!(ext_mul(&x, &graded).unwrap_err(), Error::ModeMismatch);
    }

    #[test]
    fn commutator_examples() {
        let t = LaurentPoly::t_pow(q(), 1);
        let two = LaurentPoly::constant(q().from_i64(2));
        let half = q().from_i64(2).inv().unwrap();
        assert_eq!(commutator(&mult(t.clone()), &mult(two.clone()), Mode::Ungraded, 8).unwrap(), half);
        assert_eq!(commutator_closed_form(&t, &two).unwrap(), half);
        assert_eq!(commutator(&mult(t.clone()), &mult(t.clone()), Mode::Ungraded, 8).unwrap(), q().one());
        assert_eq!(commutator(&mult(t.clone()), &mult(t.clone()), Mode::Graded, 8).unwrap(), -q().one());

        let f5 = FieldCtx::prime(5).unwrap();
        let t5 = LaurentPoly::t_pow(f5, 1);
        let one_minus_t = LaurentPoly::from_i64_terms(f5, &[(0, 1), (1, -1)]);
        assert!(commutator(&mult(t5), &mult(one_minus_t), Mode::Ungraded, 8).unwrap().is_one());
    }

    #[test]
    fn tame_examples() {
        let t = LaurentPoly::t_pow(q(), 1);
        assert_eq!(tame_symbol(&t, &t).unwrap(), -q().one());
        let c = LaurentPoly::constant(q().from_i64(3));
        let d = LaurentPoly::constant(q().from_i64(7));
        assert!(tame_symbol(&c, &d).unwrap().is_one());
        assert!(tame_symbol(&t, &LaurentPoly::from_i64_terms(q(), &[(0, 1), (1, -1)])).unwrap().is_one());
        assert_eq!(tame_symbol(&LaurentPoly::zero(q()), &t), Err(Error::ZeroElement));
    }

    #[test]
    fn commutator_needs_multiplications() {
        let m = crate::laurent::LaurentMatrix::identity(q(), 2);
        let g = Automorphism::gl(m).unwrap();
        assert_eq!(commutator(&g, &g, Mode::Ungraded, 4), Err(Error::NotMultiplicationAutomorphism));
    }
}
