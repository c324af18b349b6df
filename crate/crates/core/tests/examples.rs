//! Worked examples for every module, with hand-derived expected values.

use tate::detline::*;
use tate::exact::{quotient_dim as sub_qdim, FieldCtx, Matrix, Scalar, Subspace};
use tate::index::*;
use tate::laurent::*;
use tate::lattice::{quotient, quotient_dim, std_lattice, Lattice, TateSpace};
use tate::simplicial::*;
use tate::Error;

fn q() -> FieldCtx {
    FieldCtx::rationals()
}

fn fp(p: u64) -> FieldCtx {
    FieldCtx::prime(p).unwrap()
}

fn poly(ctx: FieldCtx, s: &str) -> LaurentPoly {
    parse_laurent(ctx, s).unwrap()
}

fn space(rank: usize) -> TateSpace {
    TateSpace::new(q(), rank).unwrap()
}

fn o(shift: i64) -> Lattice {
    std_lattice(space(1), &[shift]).unwrap()
}

fn mult(ctx: FieldCtx, s: &str) -> Automorphism {
    Automorphism::mult_by_poly(&poly(ctx, s)).unwrap()
}

/// `span{t^-1 + 1} + tO`.
fn skew() -> Lattice {
    Lattice::from_generators(space(1), 1, 1, &[vec![poly(q(), "t^-1+1")]]).unwrap()
}

fn frac(n: i64, d: i64) -> Scalar {
    q().from_i64(n).checked_div(&q().from_i64(d)).unwrap()
}

#[test]
fn row_reduction() {
    let id = Matrix::identity(q(), 2);
    assert_eq!(id.rref(), (id.clone(), vec![0, 1]));
    let swap = Matrix::from_i64_rows(q(), &[&[0, 1], &[1, 0]]);
    assert_eq!(swap.rref(), (id, vec![0, 1]));
    let m = Matrix::from_i64_rows(fp(5), &[&[1, 2], &[2, 4]]);
    assert_eq!(m.rref(), (Matrix::from_i64_rows(fp(5), &[&[1, 2], &[0, 0]]), vec![0]));
}

#[test]
fn determinants() {
    assert!(Matrix::identity(q(), 3).det().unwrap().is_one());
    assert_eq!(Matrix::from_i64_rows(q(), &[&[0, 1], &[1, 0]]).det().unwrap(), q().from_i64(-1));
    // 2*1 - 1*1
    assert_eq!(Matrix::from_i64_rows(q(), &[&[2, 1], &[1, 1]]).det().unwrap(), q().one());
}

#[test]
fn subspace_examples() {
    let e = |i| Subspace::coordinate(q(), 3, &[i]);
    assert_eq!(e(0).sum(&e(1)).unwrap(), Subspace::coordinate(q(), 3, &[0, 1]));
    let f2 = fp(2);
    let diag = Subspace::from_spanning(f2, 2, vec![vec![f2.one(), f2.one()]]).unwrap();
    let first = Subspace::coordinate(f2, 2, &[0]);
    // Of the four vectors of F_2^2 only 0 lies in both lines.
    let common = [[0i64, 0], [0, 1], [1, 0], [1, 1]]
        .iter()
        .filter(|v| {
            let v: Vec<Scalar> = v.iter().map(|&x| f2.from_i64(x)).collect();
            diag.contains_vector(&v).unwrap() && first.contains_vector(&v).unwrap()
        })
        .count();
    assert_eq!(common, 1);
    assert_eq!(diag.intersect(&first).unwrap(), Subspace::zero(f2, 2));
    let whole = Subspace::whole(q(), 3);
    assert!(whole.contains(&e(2)).unwrap());
    assert!(whole.contains(&Subspace::zero(q(), 3)).unwrap());
}

#[test]
fn quotient_dims() {
    let s = Subspace::coordinate(q(), 3, &[0, 2]);
    assert_eq!(sub_qdim(&s, &s).unwrap(), 0);
    assert_eq!(sub_qdim(&Subspace::zero(q(), 3), &Subspace::whole(q(), 3)).unwrap(), 3);
    let v = |x: &[i64]| x.iter().map(|&a| q().from_i64(a)).collect::<Vec<_>>();
    let big = Subspace::from_spanning(q(), 3, vec![v(&[1, 0, 0]), v(&[1, 1, 0])]).unwrap();
    assert_eq!(sub_qdim(&Subspace::coordinate(q(), 3, &[0]), &big).unwrap(), 1);
}

#[test]
fn laurent_arithmetic() {
    assert_eq!(&poly(q(), "1+t") * &poly(q(), "1-t"), poly(q(), "1-t^2"));
    assert!((&poly(q(), "t^-1") * &poly(q(), "t")).is_one());
    let f5 = fp(5);
    let sum = &poly(f5, "1+2*t") + &poly(f5, "3*t^-2");
    assert_eq!(sum, LaurentPoly::from_i64_terms(f5, &[(-2, 3), (0, 1), (1, 2)]));
    assert_eq!(sum.to_string(), "3*t^-2 + 1 + 2*t^1");
    assert_eq!(poly(q(), "t").valuation().unwrap(), 1);
    assert_eq!(poly(q(), "3*t^-2+t^5").valuation().unwrap(), -2);
    assert_eq!(poly(q(), "1-t").valuation().unwrap(), 0);
}

#[test]
fn series_inversion() {
    let g = invert_series(&poly(q(), "1-t"), 4).unwrap();
    assert_eq!(g.truncation(), poly(q(), "1+t+t^2+t^3"));
    assert!(!g.is_exact());
    assert_eq!(g.coeff(4).unwrap_err(), Error::InsufficientPrecision { required: 5, available: 4 });
    let m = invert_series(&poly(q(), "t^2"), 1).unwrap();
    assert!(m.is_exact());
    assert_eq!(m.truncation(), poly(q(), "t^-2"));
    // 2 c0 = 1 and 2 c1 + c0 = 0.
    let h = invert_series(&poly(q(), "2+t"), 2).unwrap();
    assert_eq!(h.coeff(0).unwrap(), frac(1, 2));
    assert_eq!(h.coeff(1).unwrap(), frac(-1, 4));
}

#[test]
fn laurent_matrices() {
    let d = parse_matrix(q(), "t,0;0,t^2").unwrap();
    assert_eq!(det_laurent(&d), poly(q(), "t^3"));
    assert_eq!(gl_inverse(&d).unwrap(), parse_matrix(q(), "t^-1,0;0,t^-2").unwrap());
    let u = parse_matrix(q(), "1,1;0,1").unwrap();
    assert!(det_laurent(&u).is_one());
    assert_eq!(gl_inverse(&u).unwrap(), parse_matrix(q(), "1,-1;0,1").unwrap());
    // adjugate of [[a, b], [c, d]] is [[d, -b], [-c, a]]; det = 2 - t t^-1 = 1
    let m = parse_matrix(q(), "1,t;t^-1,2").unwrap();
    assert!(det_laurent(&m).is_one());
    assert_eq!(gl_inverse(&m).unwrap(), parse_matrix(q(), "2,-t;-t^-1,1").unwrap());
    assert!(matches!(Automorphism::gl(parse_matrix(q(), "1+t,0;0,1").unwrap()), Err(Error::NotInvertibleInLaurentRing(_))));
}

#[test]
fn standard_lattices() {
    let l = o(0);
    assert_eq!((l.a(), l.b()), (0, 0));
    assert!(l.contains_vector(&[poly(q(), "1+t^7")]).unwrap());
    assert!(!l.contains_vector(&[poly(q(), "t^-1")]).unwrap());
    let l3 = o(3);
    assert!(l3.contains_vector(&[poly(q(), "t^3")]).unwrap() && !l3.contains_vector(&[poly(q(), "t^2")]).unwrap());
    let l2 = std_lattice(space(2), &[1, -1]).unwrap();
    let zero = LaurentPoly::zero(q());
    assert!(l2.contains_vector(&[poly(q(), "t"), poly(q(), "t^-1")]).unwrap());
    assert!(!l2.contains_vector(&[poly(q(), "1"), zero.clone()]).unwrap());
    assert!(l2.contains_vector(&[zero, poly(q(), "t^-1")]).unwrap());
}

#[test]
fn lattice_order() {
    assert!(o(0).leq(&o(0)).unwrap());
    assert!(o(1).leq(&o(0)).unwrap());
    // 1 is not in span{t^-1 + 1} + tO, and t^-1 + 1 is not in O.
    assert!(!o(0).leq(&skew()).unwrap());
    assert!(!skew().leq(&o(0)).unwrap());
    assert_eq!(o(0).join(&o(-2)).unwrap(), o(-2));
    assert_eq!(o(0).meet(&o(-2)).unwrap(), o(0));
    assert_eq!(o(0).join(&skew()).unwrap(), o(-1));
    assert_eq!(o(0).meet(&skew()).unwrap(), o(1));
}

#[test]
fn lattice_quotients() {
    let qt = quotient(&o(0), &o(-2)).unwrap();
    assert_eq!(qt.dim, 2);
    assert_eq!(qt.basis, vec![vec![poly(q(), "t^-2")], vec![poly(q(), "t^-1")]]);
    assert_eq!(quotient_dim(&skew(), &skew()).unwrap(), 0);
    let sp = space(2);
    assert_eq!(quotient_dim(&std_lattice(sp, &[1, 1]).unwrap(), &std_lattice(sp, &[0, 0]).unwrap()).unwrap(), 2);
    assert_eq!(quotient(&o(-2), &o(0)).unwrap_err(), Error::NotNested);
}

#[test]
fn actions() {
    assert_eq!(o(0).act(&mult(q(), "t")).unwrap(), o(1));
    assert_eq!(skew().act(&Automorphism::identity(q(), 1)).unwrap(), skew());
    let d = Automorphism::gl(parse_matrix(q(), "t,0;0,t^-1").unwrap()).unwrap();
    assert_eq!(std_lattice(space(2), &[0, 0]).unwrap().act(&d).unwrap(), std_lattice(space(2), &[1, -1]).unwrap());
}

#[test]
fn index_values() {
    assert_eq!(index0(&Automorphism::identity(q(), 1), space(1)).unwrap().value, 0);
    for n in -4..=4 {
        let f = LaurentPoly::t_pow(q(), n);
        assert_eq!(index0(&Automorphism::mult_by_poly(&f).unwrap(), space(1)).unwrap().value, n);
    }
    // Oracle: dim(N/gL) - dim(N/L) counted by hand for the standard lattice.
    let exps = [2i64, -3, 1];
    let sp = TateSpace::new(q(), 3).unwrap();
    let diag = LaurentMatrix::diagonal(exps.iter().map(|&e| LaurentPoly::t_pow(q(), e)).collect()).unwrap();
    let by_hand: i64 = exps.iter().map(|&e| e.max(0)).sum::<i64>() - exps.iter().map(|&e| (-e).max(0)).sum::<i64>();
    assert_eq!(index0(&Automorphism::gl(diag).unwrap(), sp).unwrap().value, by_hand);
}

#[test]
fn explicit_index() {
    let id = Automorphism::identity(q(), 1);
    assert_eq!(index0_with(&id, &o(0), &o(0)).unwrap().value, 0);
    assert_eq!(index0_with(&mult(q(), "t^-1"), &o(0), &o(-1)).unwrap().value, -1);
    // dim(t^-3O/tO) - dim(t^-3O/O) = 4 - 3
    assert_eq!(index0_with(&mult(q(), "t"), &o(0), &o(-3)).unwrap().value, 1);
    assert_eq!(euler0(&id, &skew(), &skew()).unwrap().value, 0);
    assert_eq!(euler0(&mult(q(), "t"), &o(0), &o(1)).unwrap().value, 1);
    assert_eq!(euler0(&mult(q(), "t^-2"), &o(0), &o(0)).unwrap().value, -2);
}

#[test]
fn families() {
    let id = Automorphism::identity(q(), 1);
    let chain = AutChain::new(space(1), vec![id]).unwrap();
    assert_eq!(build_family(&chain).unwrap_err(), Error::DegenerateChain);
    let long = AutChain::new(space(1), vec![mult(q(), "t"); 5]).unwrap();
    assert_eq!(build_family(&long).unwrap_err(), Error::ChainTooLong { len: 5, cap: DEFAULT_CHAIN_CAP });

    let chain = AutChain::new(space(1), vec![mult(q(), "t"), mult(q(), "t^-1")]).unwrap();
    let fam = build_family(&chain).unwrap();
    assert!(verify_family(&fam).all_pass());
    let loop_edge = index_simplex(&fam, &[0, 1]).unwrap();
    assert_eq!(loop_edge.vertex_dims, vec![1, 0]);
    assert_eq!(loop_edge.edge_indices, vec![1]);
    // The composite over the face {0, 2} is the identity.
    assert_eq!(index_simplex(&fam, &[0, 2]).unwrap().edge_indices, vec![0]);

    // A lattice below its neighbours breaks monotonicity.
    let mut broken = fam.clone();
    broken.replace(0b011, 0b11, o(5)).unwrap();
    assert!(verify_family(&broken).failed("hyp_c"));
    // Forgetting the translate by g_1 on the vertex {0} of the edge.
    let mut broken = fam.clone();
    broken.replace(0b011, 0b01, o(0)).unwrap();
    let report = verify_family(&broken);
    assert!(report.failed("face_d_m") && report.failed("hyp_b"));
}

#[test]
fn additivity_examples() {
    let t = mult(q(), "t");
    assert!(check_additivity(&t, &t, space(1)).unwrap());
    assert_eq!(index0(&t.compose(&t).unwrap(), space(1)).unwrap().value, 2);
    let ti = mult(q(), "t^-1");
    assert_eq!(index0(&t.compose(&ti).unwrap(), space(1)).unwrap().value, 0);
}

#[test]
fn relative_determinants() {
    let line = rel_det(&o(0), &o(-2)).unwrap();
    assert_eq!(line.grade, 2);
    let (lower, upper) = line.basis().unwrap();
    assert!(lower.is_empty());
    // Wedge factors in descending exponent order; see the notes in the README.
    assert_eq!(upper, vec![vec![poly(q(), "t^-1")], vec![poly(q(), "t^-2")]]);
    let trivial = rel_det(&skew(), &skew()).unwrap();
    assert_eq!(trivial.grade, 0);
    assert_eq!(trivial.basis().unwrap(), (vec![], vec![]));
    assert_eq!(rel_det(&o(-1), &o(0)).unwrap().grade, -1);
}

#[test]
fn omega_examples() {
    for mode in [Mode::Ungraded, Mode::Graded] {
        assert!(omega(&o(0), &o(-1), &o(-2), mode).unwrap().is_one());
        assert!(omega(&skew(), &skew(), &skew(), mode).unwrap().is_one());
        assert!(cocycle_check(&o(0), &o(-1), &o(-2), &o(-3), mode).unwrap());
        assert!(cocycle_check(&skew(), &skew(), &skew(), &skew(), mode).unwrap());
    }
    // In t^-1O/tO with basis (1, t^-1): ε(tO, L') = t^-1 + 1 = (1, 1),
    // ε(L', t^-1O) = 1 = (1, 0); the change of basis has determinant -1.
    let oracle = Matrix::from_i64_rows(q(), &[&[1, 1], &[1, 0]]).det().unwrap();
    assert_eq!(omega(&o(1), &skew(), &o(-1), Mode::Ungraded).unwrap(), oracle);
}

#[test]
fn theories() {
    let d = DimensionTheory::new(o(0), 0);
    assert_eq!(d.eval(&o(0)).unwrap(), 0);
    for n in -3..=3 {
        assert_eq!(dim_theory_eval(&d, &o(n)).unwrap(), -n);
    }
    assert_eq!(d.shifted(4).eval(&o(2)).unwrap(), 2);
    let delta = DeterminantTheory::new(skew());
    assert_eq!(det_theory_eval(&delta, &skew()).unwrap().grade, 0);
    let base = DeterminantTheory::new(o(0));
    for mode in [Mode::Ungraded, Mode::Graded] {
        assert!(det_theory_coherence(&base, &o(2), &o(0), &o(-1), mode).unwrap());
    }
}

#[test]
fn extension_products() {
    let t = mult(q(), "t");
    let e = ExtElement::lift(Automorphism::identity(q(), 1), Mode::Ungraded).unwrap();
    let y = ExtElement::lift(mult(q(), "2+t"), Mode::Ungraded).unwrap();
    let ey = ext_mul(&e, &y).unwrap();
    assert_eq!((ey.g, ey.z), (y.g.clone(), y.z.clone()));
    let x = ExtElement::lift(t.clone(), Mode::Ungraded).unwrap();
    let xx = ext_mul(&x, &x).unwrap();
    assert_eq!(xx.g, mult(q(), "t^2"));
    assert!(xx.z.is_one());
    let inv = ext_inverse(&x, 8).unwrap();
    let unit = ext_mul(&x, &inv).unwrap();
    assert!(unit.g.is_identity() && unit.z.is_one());
    let loop_scalar = ext_mul(&x, &ExtElement::lift(mult(q(), "t^-1"), Mode::Ungraded).unwrap()).unwrap().z;
    assert!((&loop_scalar * &inv.z).is_one());
}

#[test]
fn commutators_and_symbols() {
    let c = commutator(&mult(q(), "t"), &mult(q(), "2"), Mode::Ungraded, 16).unwrap();
    assert_eq!(c, frac(1, 2));
    let f = mult(q(), "3*t^2+t^3");
    assert!(commutator(&f, &f, Mode::Ungraded, 16).unwrap().is_one());
    assert!(commutator(&f, &f, Mode::Graded, 16).unwrap().is_one());
    let odd = mult(q(), "3*t+t^2");
    assert_eq!(commutator(&odd, &odd, Mode::Graded, 16).unwrap(), q().from_i64(-1));
    let f5 = fp(5);
    let c5 = commutator(&mult(f5, "t"), &mult(f5, "1-t"), Mode::Ungraded, 16).unwrap();
    assert!(c5.is_one());
    assert_eq!(c5, commutator_closed_form(&poly(f5, "t"), &poly(f5, "1-t")).unwrap());
    assert_eq!(tame_symbol(&poly(q(), "t"), &poly(q(), "t")).unwrap(), q().from_i64(-1));
    assert!(tame_symbol(&poly(q(), "3"), &poly(q(), "-1/2")).unwrap().is_one());
    assert!(tame_symbol(&poly(q(), "t"), &poly(q(), "1-t")).unwrap().is_one());
}

#[test]
fn nerves_and_subdivision() {
    let point = nerve(&ordinal(0), 4);
    assert!((0..=4).all(|n| point.count(n) == 1));
    assert!((1..=4).all(|n| point.nondegenerate(n).is_empty()));
    let sd1 = sd_ordinal(1);
    assert_eq!(sd1.labels(), &["{0}", "{1}", "{0,1}"]);
    let x = nerve(&sd1, 3);
    // Two edges {0} → {0,1} ← {1} meeting at their ends.
    assert_eq!(x.nondegenerate(0).len(), 3);
    let edges = x.nondegenerate(1);
    assert_eq!(edges.len(), 2);
    let ends: Vec<(usize, usize)> = edges.iter().map(|&e| (x.face(1, 1, e), x.face(1, 0, e))).collect();
    assert_eq!(ends[0].1, ends[1].1);
    assert_ne!(ends[0].0, ends[1].0);
    assert!(x.nondegenerate(2).is_empty());
    assert_eq!(sd_ordinal(0).len(), 1);
    let sd2 = sd_ordinal(2);
    assert_eq!(sd2.len(), 7);
    // Under inclusion {0,1,2} is the only maximal element; the three singletons are minimal.
    assert_eq!(sd2.maximal().len(), 1);
    assert_eq!(sd2.minimal().len(), 3);
}

#[test]
fn ex_families() {
    let p = FinPoset::from_relations(vec!["a".into(), "b".into(), "c".into()], &[(0, 2)]).unwrap();
    let zero: Vec<Vec<usize>> = (0..3).map(|x| vec![x]).collect();
    assert_eq!(ex_poset(&p, 0), zero);
    // Brute force over all triples (x0, x1, x01) of the two-element chain.
    let chain = ordinal(1);
    let mut count = 0;
    for x0 in 0..2 {
        for x1 in 0..2 {
            for x01 in 0..2 {
                count += (chain.leq(x0, x01) && chain.leq(x1, x01)) as usize;
            }
        }
    }
    assert_eq!(ex_poset(&chain, 1).len(), count);
    assert_eq!(count, 5);
}

#[test]
fn admissibility() {
    let labels = |n: usize| (0..n).map(|i| format!("v{i}")).collect::<Vec<_>>();
    let left = FinPoset::from_relations(labels(4), &[(0, 2), (1, 2), (2, 3)]).unwrap();
    assert!(is_admissible_tree(&gamma(&left), &[(0, 2), (1, 2), (2, 3)]));
    let right = FinPoset::from_relations(labels(4), &[(0, 3), (1, 2), (2, 3)]).unwrap();
    assert!(!is_admissible_tree(&gamma(&right), &[(0, 3), (1, 2), (1, 3)]));
    for p in [&left, &right] {
        assert!(is_admissible_tree(&gamma(p), &star_tree(p).unwrap()));
    }
    assert!(is_admissible_tree(&OrientedGraph::new(1, vec![]).unwrap(), &[]));
    // Not spanning, and not a subset of the edges.
    assert!(!is_admissible_tree(&gamma(&left), &[(0, 2), (2, 3)]));
    assert!(!is_admissible_tree(&gamma(&left), &[(0, 2), (1, 2), (3, 2)]));
}

#[test]
fn interval_posets() {
    let b0 = b_interval(0);
    assert_eq!((b0.poset.len(), b0.base_points.clone()), (1, vec![0]));
    let b1 = b_interval(1);
    assert_eq!((b1.poset.len(), b1.base_points.len()), (3, 2));
    let b2 = b_interval(2);
    assert_eq!(b2.poset.len(), 6);
    let sizes: Vec<usize> = (0..6).map(|x| (0..6).filter(|&y| b2.poset.leq(y, x)).count()).collect();
    // singletons, doubletons, tripleton by the number of intervals below
    assert_eq!(sizes, vec![1, 1, 1, 3, 3, 6]);
}

#[test]
fn k0_examples() {
    let b = b_interval(2);
    let w = Subspace::coordinate(q(), 3, &[1]);
    let constant = AdmissibleDiagram::new(b.poset.clone(), vec![w; 6]).unwrap();
    let frame = FramedPoset::star(b.poset.clone(), b.base_points.clone()).unwrap();
    let dec = k0_decompose(&constant, &frame).unwrap();
    assert_eq!(dec.d0, 1);
    assert!(dec.edge_dims.values().all(|&d| d == 0));

    let chain = AdmissibleDiagram::new(ordinal(2), coordinate_flag(q(), 2, &[0, 1, 2])).unwrap();
    let frame_chain = FramedPoset::new(ordinal(2), vec![0], vec![(0, 1), (1, 2)]).unwrap();
    let dec = k0_decompose(&chain, &frame_chain).unwrap();
    assert_eq!((dec.d0, dec.edge_dims.values().copied().collect::<Vec<_>>()), (0, vec![1, 1]));

    // Flag 0 ⊆ <e0> ⊆ F_2^3 with X_j at [i, j].
    let f2 = fp(2);
    let flag = diagram_from_flag(&coordinate_flag(f2, 3, &[0, 1, 3])).unwrap();
    let dec = k0_decompose(&flag, &frame).unwrap();
    let dims: Vec<i64> = flag.dims().iter().map(|&d| d as i64).collect();
    for (x, &d) in dims.iter().enumerate() {
        // Star tree: dim F(x) = d0 + e(x0 → top) - e(x → top).
        let to_top = |y: usize| if y == 5 { 0 } else { dec.edge_dims[&(y, 5)] };
        assert_eq!(dec.d0 + to_top(0) - to_top(x), d);
    }
    assert_eq!(k0_reconstruct(&dec, &frame), dims);
    assert_eq!(preindex_k0(&flag, &b.base_points), vec![1, 2]);

    let same = AdmissibleDiagram::new(ordinal(1), coordinate_flag(q(), 2, &[1, 1])).unwrap();
    assert_eq!(preindex_k0(&same, &[0, 1]), vec![0]);
}
