//! Seeded generators for the property suites.
//!
//! Every suite draws from a [`ChaCha8Rng`] seeded with the user's seed, so
//! runs are reproducible across platforms.

use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exact::{FieldCtx, Scalar, Subspace};
use crate::laurent::{invert_series, Automorphism, LaurentMatrix, LaurentPoly};
use crate::lattice::{Lattice, TateSpace, Window};
use crate::simplicial::{AdmissibleDiagram, FinPoset};

pub type SuiteRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SuiteRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small scalars: numerators in `[-5, 5]` and denominators in `[1, 3]` over
/// `Q`, uniform residues over `F_p`.
pub fn scalar<R: Rng>(rng: &mut R, ctx: FieldCtx) -> Scalar {
    match ctx.modulus() {
        Some(p) => ctx.from_i64(rng.gen_range(0..p) as i64),
        None => ctx
            .from_fraction(&BigInt::from(rng.gen_range(-5..=5)), &BigInt::from(rng.gen_range(1..=3)))
            .expect("nonzero denominator"),
    }
}

pub fn nonzero_scalar<R: Rng>(rng: &mut R, ctx: FieldCtx) -> Scalar {
    loop {
        let s = scalar(rng, ctx);
        if !s.is_zero() {
            return s;
        }
    }
}

/// A Laurent polynomial of valuation exactly `v` with up to `extra` further terms.
pub fn unit_poly<R: Rng>(rng: &mut R, ctx: FieldCtx, v: i64, extra: usize) -> LaurentPoly {
    let mut terms = vec![(v, nonzero_scalar(rng, ctx))];
    for k in 1..=rng.gen_range(0..=extra) {
        terms.push((v + k as i64, scalar(rng, ctx)));
    }
    LaurentPoly::from_terms(ctx, terms).expect("same field")
}

/// Multiplication by a random unit with valuation in `[lo, hi]`. About a
/// third of the time the unit is the inverse of a polynomial, a genuinely
/// infinite series known to `precision` coefficients.
pub fn mult_auto<R: Rng>(rng: &mut R, ctx: FieldCtx, lo: i64, hi: i64, precision: usize) -> Automorphism {
    let v = rng.gen_range(lo..=hi);
    if rng.gen_range(0..3) == 0 {
        let p = unit_poly(rng, ctx, -v, 2);
        Automorphism::mult_by(invert_series(&p, precision).expect("nonzero"))
    } else {
        Automorphism::mult_by_poly(&unit_poly(rng, ctx, v, 2)).expect("nonzero")
    }
}

/// A `2x2` matrix with monomial determinant: a product of elementary
/// matrices with monomial entries and one diagonal matrix of monomials.
pub fn gl2<R: Rng>(rng: &mut R, ctx: FieldCtx) -> LaurentMatrix {
    let mono = |rng: &mut R, lo: i64, hi: i64| LaurentPoly::monomial(nonzero_scalar(rng, ctx), rng.gen_range(lo..=hi));
    let d0 = mono(rng, -1, 1);
    let d1 = mono(rng, -1, 1);
    let mut m = LaurentMatrix::diagonal(vec![d0, d1]).expect("two entries");
    for _ in 0..rng.gen_range(0..=2) {
        let zero = LaurentPoly::zero(ctx);
        let one = LaurentPoly::one(ctx);
        let x = mono(rng, -1, 1);
        let rows = if rng.gen_bool(0.5) {
            vec![vec![one.clone(), x], vec![zero, one]]
        } else {
            vec![vec![one.clone(), zero], vec![x, one]]
        };
        let e = LaurentMatrix::from_rows(ctx, rows).expect("square");
        m = if rng.gen_bool(0.5) { m.mul(&e) } else { e.mul(&m) }.expect("same size");
    }
    m
}

pub fn gl2_auto<R: Rng>(rng: &mut R, ctx: FieldCtx) -> Automorphism {
    Automorphism::gl(gl2(rng, ctx)).expect("monomial determinant")
}

/// A random automorphism of `space`: multiplications in rank 1, `gl2`
/// in rank 2.
pub fn auto_for<R: Rng>(rng: &mut R, space: TateSpace, precision: usize) -> Automorphism {
    if space.rank() == 1 {
        mult_auto(rng, space.ctx(), -2, 2, precision)
    } else {
        gl2_auto(rng, space.ctx())
    }
}

/// A subspace of `k^d` spanned by up to `d` random sparse vectors.
pub fn subspace<R: Rng>(rng: &mut R, ctx: FieldCtx, d: usize) -> Subspace {
    let count = rng.gen_range(0..=d);
    let rows = (0..count)
        .map(|_| {
            (0..d)
                .map(|_| if rng.gen_bool(0.5) { ctx.zero() } else { scalar(rng, ctx) })
                .collect()
        })
        .collect();
    Subspace::from_spanning(ctx, d, rows).expect("rows of width d")
}

/// A lattice with `t^a O^n ⊆ L ⊆ t^-b O^n` where `-bound <= -b <= a <= bound`.
pub fn lattice<R: Rng>(rng: &mut R, space: TateSpace, bound: i64) -> Lattice {
    let lo = rng.gen_range(-bound..=bound);
    let hi = rng.gen_range(lo..=bound);
    let window = Window { space, a: hi, b: -lo };
    let w = subspace(rng, space.ctx(), window.dim());
    Lattice::from_window(space, hi, -lo, w).expect("window matches")
}

/// A lattice containing `l`.
pub fn lattice_above<R: Rng>(rng: &mut R, l: &Lattice, bound: i64) -> Lattice {
    l.join(&lattice(rng, l.space(), bound)).expect("same space")
}

/// A lattice contained in `l`.
pub fn lattice_below<R: Rng>(rng: &mut R, l: &Lattice, bound: i64) -> Lattice {
    l.meet(&lattice(rng, l.space(), bound)).expect("same space")
}

/// A poset on `1..=max_len` elements in which the last element is final.
/// Relations only go from lower to higher indices.
pub fn filtered_poset<R: Rng>(rng: &mut R, max_len: usize) -> FinPoset {
    let n = rng.gen_range(1..=max_len);
    let mut pairs = Vec::new();
    for j in 0..n {
        for i in 0..j {
            if j == n - 1 || rng.gen_bool(0.35) {
                pairs.push((i, j));
            }
        }
    }
    let labels = (0..n).map(|i| format!("p{i}")).collect();
    FinPoset::from_relations(labels, &pairs).expect("relations respect index order")
}

/// An arbitrary poset on `0..=max_len` elements, without a final element
/// in general.
pub fn poset<R: Rng>(rng: &mut R, max_len: usize) -> FinPoset {
    let n = rng.gen_range(0..=max_len);
    let mut pairs = Vec::new();
    for j in 0..n {
        for i in 0..j {
            if rng.gen_bool(0.4) {
                pairs.push((i, j));
            }
        }
    }
    let labels = (0..n).map(|i| format!("p{i}")).collect();
    FinPoset::from_relations(labels, &pairs).expect("relations respect index order")
}

/// An admissible tree of a filtered poset: every non-final element points
/// to a randomly chosen strictly larger one, so all paths end at the top.
pub fn upward_tree<R: Rng>(rng: &mut R, p: &FinPoset) -> Vec<(usize, usize)> {
    let top = p.top().expect("filtered poset");
    (0..p.len())
        .filter(|&x| x != top)
        .map(|x| {
            let above: Vec<usize> = (0..p.len()).filter(|&y| p.lt(x, y)).collect();
            (x, above[rng.gen_range(0..above.len())])
        })
        .collect()
}

/// `count` base points drawn from the minimal elements, repeats allowed.
pub fn base_points<R: Rng>(rng: &mut R, p: &FinPoset, count: usize) -> Vec<usize> {
    let minimal = p.minimal();
    (0..count).map(|_| minimal[rng.gen_range(0..minimal.len())]).collect()
}

/// Each `F(x)` is the sum of the `F(y)` below it plus a random subspace.
pub fn diagram<R: Rng>(rng: &mut R, p: &FinPoset, ctx: FieldCtx, d: usize) -> AdmissibleDiagram {
    let mut spaces: Vec<Option<Subspace>> = vec![None; p.len()];
    for x in p.linear_extension() {
        let mut f = if rng.gen_bool(0.5) { subspace(rng, ctx, d) } else { Subspace::zero(ctx, d) };
        for y in (0..p.len()).filter(|&y| p.lt(y, x)) {
            f = f.sum(spaces[y].as_ref().expect("lower elements come first")).expect("same ambient");
        }
        spaces[x] = Some(f);
    }
    AdmissibleDiagram::new(p.clone(), spaces.into_iter().map(|s| s.expect("all assigned")).collect())
        .expect("monotone by construction")
}
