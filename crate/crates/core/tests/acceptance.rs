//! The twelve acceptance criteria. Prints one line per criterion and exits
//! nonzero if any of them fails.

use std::process::Command;
use std::time::{Duration, Instant};

use rand::Rng;

use tate::detline::*;
use tate::exact::FieldCtx;
use tate::index::*;
use tate::laurent::*;
use tate::lattice::{quotient_dim, std_lattice, Lattice, TateSpace};
use tate::random::{self, rng_from_seed, SuiteRng};
use tate::simplicial::*;
use tate::Result;

fn q() -> FieldCtx {
    FieldCtx::rationals()
}

fn fp(p: u64) -> FieldCtx {
    FieldCtx::prime(p).unwrap()
}

fn series_valuation(g: &Automorphism) -> i64 {
    match g {
        Automorphism::MultBy(s) => s.valuation(),
        Automorphism::GLn(m) => det_laurent(m).valuation().unwrap(),
    }
}

fn nonidentity(rng: &mut SuiteRng, space: TateSpace) -> Automorphism {
    loop {
        let g = random::auto_for(rng, space, 16);
        if !g.is_identity() {
            return g;
        }
    }
}

fn winding_number() -> Result<bool> {
    let mut rng = rng_from_seed(1);
    for ctx in [q(), fp(5)] {
        let space = TateSpace::new(ctx, 1)?;
        for _ in 0..50 {
            let f = random::mult_auto(&mut rng, ctx, -5, 5, 16);
            if index0(&f, space)?.value != series_valuation(&f) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn choice_independence() -> Result<bool> {
    let mut rng = rng_from_seed(2);
    for i in 0..20 {
        let ctx = if i % 2 == 0 { q() } else { fp(5) };
        let space = TateSpace::new(ctx, 1 + i % 2)?;
        let g = random::auto_for(&mut rng, space, 16);
        let mut seen = Vec::new();
        for _ in 0..10 {
            let l = random::lattice(&mut rng, space, 3);
            let n = l.join(&l.act(&g)?)?.join(&random::lattice(&mut rng, space, 3))?;
            seen.push(index0_with(&g, &l, &n)?);
        }
        if seen.iter().any(|v| *v != seen[0]) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn euler_equals_index() -> Result<bool> {
    let mut rng = rng_from_seed(3);
    for i in 0..100 {
        let ctx = [q(), fp(3), fp(5)][i % 3];
        let space = TateSpace::new(ctx, 1 + i % 2)?;
        let g = random::auto_for(&mut rng, space, 16);
        let l = random::lattice(&mut rng, space, 3);
        let n = l.meet(&l.act(&g)?)?.meet(&random::lattice(&mut rng, space, 3))?;
        if euler0(&g, &l, &n)? != index0(&g, space)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn additivity() -> Result<bool> {
    let mut rng = rng_from_seed(4);
    let f3 = fp(3);
    for i in 0..200 {
        let space = TateSpace::new(f3, 1 + i % 2)?;
        let g = random::auto_for(&mut rng, space, 16);
        let h = random::auto_for(&mut rng, space, 16);
        if !check_additivity(&g, &h, space)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn families() -> Result<bool> {
    for seed in 0..30 {
        let mut rng = rng_from_seed(500 + seed);
        let ctx = if seed % 2 == 0 { q() } else { fp(3) };
        let space = TateSpace::new(ctx, 1 + (seed as usize / 2) % 2)?;
        for len in 1..=3 {
            let autos: Vec<Automorphism> = (0..len).map(|_| nonidentity(&mut rng, space)).collect();
            let fam = build_family(&AutChain::new(space, autos)?)?;
            if !verify_family(&fam).all_pass() {
                return Ok(false);
            }
            let full = (1u32 << (len + 1)) - 1;
            // Shrink L_{01} of the top face below L_{0}.
            let mut low = fam.clone();
            let tiny = fam.get(full, 0b11).expect("edge entry").meet(&std_lattice(space, &vec![8; space.rank()])?)?;
            low.replace(full, 0b11, tiny)?;
            // The last vertex of the top face without its translate.
            let mut untranslated = fam.clone();
            let last = 1u32 << len;
            let before = fam.get(full & !last, 1 << (len - 1)).expect("face entry").clone();
            let changed = fam.get(full, 1 << (len - 1)) != Some(&before);
            untranslated.replace(full, 1 << (len - 1), before)?;
            let caught_c = verify_family(&low).failed("hyp_c");
            let caught_b = !changed || verify_family(&untranslated).failed("face_d_m");
            if !caught_c || !caught_b {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn cocycle() -> Result<bool> {
    let mut rng = rng_from_seed(6);
    for ctx in [fp(5), q()] {
        let space = TateSpace::new(ctx, 1)?;
        for _ in 0..100 {
            let ls: Vec<Lattice> = (0..4).map(|_| random::lattice(&mut rng, space, 3)).collect();
            for mode in [Mode::Ungraded, Mode::Graded] {
                if !cocycle_check(&ls[0], &ls[1], &ls[2], &ls[3], mode)? {
                    return Ok(false);
                }
            }
            let mut shifts: Vec<i64> = (0..3).map(|_| rng.gen_range(-3..=3)).collect();
            shifts.sort_unstable_by(|a, b| b.cmp(a));
            let nested = shifts.iter().map(|&s| std_lattice(space, &[s])).collect::<Result<Vec<_>>>()?;
            for mode in [Mode::Ungraded, Mode::Graded] {
                if !omega(&nested[0], &nested[1], &nested[2], mode)?.is_one() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

fn commutator_formula() -> Result<bool> {
    let mut rng = rng_from_seed(7);
    let mult = |f: &LaurentPoly| Automorphism::mult_by_poly(f);
    for i in 0..100 {
        let ctx = if i % 2 == 0 { q() } else { fp(5) };
        let (vf, vg) = (rng.gen_range(-3..=3), rng.gen_range(-3..=3));
        let f = random::unit_poly(&mut rng, ctx, vf, 3);
        let g = random::unit_poly(&mut rng, ctx, vg, 3);
        let ungraded = commutator(&mult(&f)?, &mult(&g)?, Mode::Ungraded, 16)?;
        let graded = commutator(&mult(&f)?, &mult(&g)?, Mode::Graded, 16)?;
        if ungraded != commutator_closed_form(&f, &g)?
            || graded.checked_div(&ungraded)? != tate::exact::Scalar::sign(ctx, vf * vg)
        {
            return Ok(false);
        }
    }
    for i in 0..50 {
        let ctx = if i % 2 == 0 { q() } else { fp(5) };
        let mut unit = || {
            let v = rng.gen_range(-3..=3);
            random::unit_poly(&mut rng, ctx, v, 2)
        };
        let (f, g, h) = (unit(), unit(), unit());
        let c = |a: &LaurentPoly, b: &LaurentPoly| commutator(&mult(a)?, &mult(b)?, Mode::Ungraded, 16);
        let left = c(&(&f * &g), &h)? == &c(&f, &h)? * &c(&g, &h)?;
        let right = c(&f, &(&g * &h))? == &c(&f, &g)? * &c(&f, &h)?;
        if !left || !right {
            return Ok(false);
        }
    }
    Ok(true)
}

fn dimension_torsor() -> Result<bool> {
    let mut rng = rng_from_seed(8);
    let space = TateSpace::new(q(), 2)?;
    let d = DimensionTheory::new(random::lattice(&mut rng, space, 3), 4);
    let other = DimensionTheory::new(random::lattice(&mut rng, space, 3), -1);
    for _ in 0..100 {
        let l0 = random::lattice(&mut rng, space, 3);
        let l1 = random::lattice_above(&mut rng, &l0, 3);
        for theory in [&d, &other] {
            if theory.eval(&l1)? != theory.eval(&l0)? + quotient_dim(&l0, &l1)? as i64 {
                return Ok(false);
            }
        }
    }
    let diffs = (0..20)
        .map(|_| {
            let l = random::lattice(&mut rng, space, 3);
            Ok(d.eval(&l)? - other.eval(&l)?)
        })
        .collect::<Result<Vec<i64>>>()?;
    Ok(diffs.iter().all(|&x| x == diffs[0]))
}

fn det_coherence() -> Result<bool> {
    let mut rng = rng_from_seed(9);
    for i in 0..50 {
        let space = TateSpace::new(fp(3), 1 + i % 2)?;
        let theory = DeterminantTheory::new(random::lattice(&mut rng, space, 3));
        let l = random::lattice(&mut rng, space, 3);
        let l1 = random::lattice_above(&mut rng, &l, 3);
        let l2 = random::lattice_above(&mut rng, &l1, 3);
        for mode in [Mode::Ungraded, Mode::Graded] {
            if !det_theory_coherence(&theory, &l, &l1, &l2, mode)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// One poset from each isomorphism class on `n` elements.
fn posets_up_to_iso(n: usize) -> Vec<FinPoset> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).collect();
    let perms = permutations(n);
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if mask & (1 << k) != 0 {
                leq[i][j] = true;
            }
        }
        let labels = (0..n).map(|i| i.to_string()).collect();
        let Ok(p) = FinPoset::new(labels, leq.clone()) else { continue };
        let canonical = perms
            .iter()
            .map(|s| (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| leq[s[i]][s[j]]).collect::<Vec<_>>())
            .min()
            .expect("at least one permutation");
        if seen.insert(canonical) {
            out.push(p);
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    permutations(n - 1)
        .into_iter()
        .flat_map(|p| {
            (0..n).map(move |k| {
                let mut q = p.clone();
                q.insert(k, n - 1);
                q
            })
        })
        .collect()
}

fn ex_sd_agreement() -> Result<bool> {
    let counts: Vec<usize> = (1..=4).map(|n| posets_up_to_iso(n).len()).collect();
    if counts != [1, 2, 5, 16] {
        return Ok(false);
    }
    for n in 1..=4 {
        for p in posets_up_to_iso(n) {
            for k in 0..=2 {
                let mut ex = ex_poset(&p, k);
                ex.sort();
                if ex != poset_maps(&sd_ordinal(k), &p) {
                    return Ok(false);
                }
            }
        }
    }
    // Nerve of sd([1]): three vertices, two edges sharing their target, nothing higher.
    let x = nerve(&sd_ordinal(1), 3);
    let edges = x.nondegenerate(1);
    let targets: Vec<usize> = edges.iter().map(|&e| x.face(1, 0, e)).collect();
    let sources: Vec<usize> = edges.iter().map(|&e| x.face(1, 1, e)).collect();
    Ok(x.audit().is_empty()
        && x.nondegenerate(0).len() == 3
        && edges.len() == 2
        && targets[0] == targets[1]
        && sources[0] != sources[1]
        && x.nondegenerate(2).is_empty()
        && x.nondegenerate(3).is_empty())
}

fn k0_decomposition() -> Result<bool> {
    let mut rng = rng_from_seed(11);
    let b = b_interval(2);
    let star = FramedPoset::star(b.poset.clone(), b.base_points.clone())?;
    for i in 0..100 {
        let ctx = [fp(2), fp(3), q()][i % 3];
        let f = random::diagram(&mut rng, &b.poset, ctx, 3);
        let dims: Vec<i64> = f.dims().iter().map(|&d| d as i64).collect();
        let via = |x, y| preindex_via_tree(&f, &star, x, y);
        let pre = preindex_k0(&f, &b.base_points);
        let ok = k0_reconstruct(&k0_decompose(&f, &star)?, &star) == dims
            && via(0, 1)? + via(1, 2)? == via(0, 2)?
            && pre == vec![via(0, 1)?, via(1, 2)?];
        if !ok {
            return Ok(false);
        }
    }
    for i in 0..100 {
        let ctx = [fp(2), fp(3), q()][i % 3];
        let p = random::filtered_poset(&mut rng, 6);
        let f = random::diagram(&mut rng, &p, ctx, 4);
        let bases = random::base_points(&mut rng, &p, 3);
        let dims: Vec<i64> = f.dims().iter().map(|&d| d as i64).collect();
        for tree in [star_tree(&p)?, random::upward_tree(&mut rng, &p)] {
            let frame = FramedPoset::new(p.clone(), bases.clone(), tree)?;
            let via = |x, y| preindex_via_tree(&f, &frame, x, y);
            let ok = k0_reconstruct(&k0_decompose(&f, &frame)?, &frame) == dims
                && via(bases[0], bases[1])? + via(bases[1], bases[2])? == via(bases[0], bases[2])?;
            if !ok {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn determinism() -> Result<bool> {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_tate"))
            .args(["verify", "--suite", "all", "--seed", "7", "--json"])
            .output()
            .expect("the tate binary runs")
    };
    let (a, b) = (run(), run());
    Ok(a.status.code() == Some(0) && b.status.code() == Some(0) && a.stdout == b.stdout && !a.stdout.is_empty())
}

type Criterion = (&'static str, fn() -> Result<bool>, Duration);

fn main() {
    let secs = Duration::from_secs;
    let criteria: [Criterion; 12] = [
        ("1 winding number", winding_number, secs(5)),
        ("2 choice independence", choice_independence, secs(30)),
        ("3 euler characteristic equals index", euler_equals_index, secs(30)),
        ("4 additivity over F_3", additivity, secs(60)),
        ("5 lattice families and fault detection", families, secs(120)),
        ("6 omega cocycle and nested normalization", cocycle, secs(60)),
        ("7 commutator formula", commutator_formula, secs(120)),
        ("8 dimension torsor", dimension_torsor, secs(600)),
        ("9 determinant theory coherence", det_coherence, secs(600)),
        ("10 Ex and sd agreement", ex_sd_agreement, secs(600)),
        ("11 K0 decomposition and pre-index", k0_decomposition, secs(600)),
        ("12 deterministic verify", determinism, secs(600)),
    ];
    let mut failed = 0;
    for (name, check, limit) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let (ok, note) = match result {
            Ok(true) if elapsed <= limit => (true, String::new()),
            Ok(true) => (false, format!(" (over the {}s limit)", limit.as_secs())),
            Ok(false) => (false, String::new()),
            Err(e) => (false, format!(" ({e})")),
        };
        failed += !ok as usize;
        println!("{} criterion {name} [{:.2}s]{note}", if ok { "PASS" } else { "FAIL" }, elapsed.as_secs_f64());
    }
    println!("acceptance: {} passed, {failed} failed", 12 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
