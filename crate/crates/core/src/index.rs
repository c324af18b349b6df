//! The index of an automorphism at the level of `K_0(k) = Z`, and the
//! inductive families of lattices attached to chains of automorphisms.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::laurent::Automorphism;
use crate::lattice::{quotient_dim, std_lattice, Lattice, TateSpace};
use crate::simplicial::{codegeneracy_mask as codegeneracy, coface_mask as coface};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexValue {
    pub value: i64,
}

impl fmt::Display for IndexValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

fn check_acts(g: &Automorphism, space: TateSpace) -> Result<()> {
    if g.ctx() != space.ctx() || g.rank() != space.rank() {
        return Err(Error::SpaceMismatch);
    }
    Ok(())
}

fn standard(space: TateSpace) -> Lattice {
    std_lattice(space, &vec![0; space.rank()]).expect("shift count equals rank")
}

fn nested_dim(l: &Lattice, m: &Lattice) -> Result<i64> {
    Ok(quotient_dim(l, m)? as i64)
}

/// `dim(N/gL) - dim(N/L)` for `L` the standard lattice and `N = L + gL`.
pub fn index0(g: &Automorphism, space: TateSpace) -> Result<IndexValue> {
    check_acts(g, space)?;
    let l = standard(space);
    let gl = l.act(g)?;
    let n = l.join(&gl)?;
    Ok(IndexValue { value: nested_dim(&gl, &n)? - nested_dim(&l, &n)? })
}

/// `dim(N/gL) - dim(N/L)` for any `N` containing both `L` and `gL`.
pub fn index0_with(g: &Automorphism, l: &Lattice, n: &Lattice) -> Result<IndexValue> {
    check_acts(g, l.space())?;
    let gl = l.act(g)?;
    if !l.leq(n)? || !gl.leq(n)? {
        return Err(Error::NotNested);
    }
    Ok(IndexValue { value: nested_dim(&gl, n)? - nested_dim(l, n)? })
}

/// `dim(L/N) - dim(gL/N)` for `N` contained in both `L` and `gL`.
pub fn euler0(g: &Automorphism, l: &Lattice, n: &Lattice) -> Result<IndexValue> {
    check_acts(g, l.space())?;
    let gl = l.act(g)?;
    if !n.leq(l)? || !n.leq(&gl)? {
        return Err(Error::NotNested);
    }
    Ok(IndexValue { value: nested_dim(n, l)? - nested_dim(n, &gl)? })
}

/// Whether `index0(g ∘ h) = index0(g) + index0(h)`.
pub fn check_additivity(g: &Automorphism, h: &Automorphism, space: TateSpace) -> Result<bool> {
    let gh = g.compose(h)?;
    Ok(index0(&gh, space)?.value == index0(g, space)?.value + index0(h, space)?.value)
}

/// A chain `V_0 -g_1-> V_1 -> ... -g_k-> V_k` with every `V_i = V`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutChain {
    space: TateSpace,
    autos: Vec<Automorphism>,
}

impl AutChain {
    pub fn new(space: TateSpace, autos: Vec<Automorphism>) -> Result<Self> {
        for g in &autos {
            check_acts(g, space)?;
        }
        Ok(AutChain { space, autos })
    }

    pub fn space(&self) -> TateSpace {
        self.space
    }

    pub fn autos(&self) -> &[Automorphism] {
        &self.autos
    }

    pub fn len(&self) -> usize {
        self.autos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.autos.is_empty()
    }
}

pub const DEFAULT_CHAIN_CAP: usize = 4;

/// Bitmask helpers for subsets of `[m] = {0, ..., m}`.
fn members(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask & (1 << i) != 0).collect()
}

fn nonempty_subsets(m: usize) -> impl Iterator<Item = u32> {
    1..(1u32 << (m + 1))
}

fn full(m: usize) -> u32 {
    (1u32 << (m + 1)) - 1
}

fn without(face: u32, vertex: usize) -> u32 {
    face & !(1 << vertex)
}

fn describe(face: u32) -> String {
    format!("{:?}", members(face))
}

/// The lattices `L_{m,I}` for every face of a chain of automorphisms.
///
/// A face is a set `S` of vertices of the chain; the automorphisms of the
/// face are the composites of the `g_i` between consecutive vertices of
/// `S`. Entries are keyed by `(S, I)` with `I` a nonempty subset of the
/// face's local vertices `{0, ..., |S| - 1}`, both as bitmasks.
#[derive(Debug, Clone)]
pub struct LatticeFamily {
    chain: AutChain,
    entries: BTreeMap<(u32, u32), Lattice>,
}

impl LatticeFamily {
    pub fn chain(&self) -> &AutChain {
        &self.chain
    }

    pub fn get(&self, face: u32, local: u32) -> Option<&Lattice> {
        self.entries.get(&(face, local))
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(u32, u32), &Lattice)> {
        self.entries.iter()
    }

    /// Overwrites one entry; used to check that verification notices faults.
    pub fn replace(&mut self, face: u32, local: u32, lattice: Lattice) -> Result<()> {
        match self.entries.get_mut(&(face, local)) {
            Some(slot) => {
                *slot = lattice;
                Ok(())
            }
            None => Err(Error::UnknownFace(format!("{} / {}", describe(face), describe(local)))),
        }
    }

    /// The automorphisms `h_1, ..., h_m` between consecutive vertices of `face`.
    pub fn face_autos(&self, face: u32) -> Result<Vec<Automorphism>> {
        face_autos(&self.chain, face)
    }

    fn entry(&self, face: u32, local: u32) -> &Lattice {
        &self.entries[&(face, local)]
    }
}

fn face_autos(chain: &AutChain, face: u32) -> Result<Vec<Automorphism>> {
    let verts = members(face);
    let mut out = Vec::new();
    for pair in verts.windows(2) {
        let mut h = chain.autos[pair[0]].clone();
        for g in &chain.autos[pair[0] + 1..pair[1]] {
            h = g.compose(&h)?;
        }
        out.push(h);
    }
    Ok(out)
}

pub fn build_family(chain: &AutChain) -> Result<LatticeFamily> {
    build_family_with_cap(chain, DEFAULT_CHAIN_CAP)
}

pub fn build_family_with_cap(chain: &AutChain, cap: usize) -> Result<LatticeFamily> {
    if chain.len() > cap {
        return Err(Error::ChainTooLong { len: chain.len(), cap });
    }
    if chain.autos.iter().any(Automorphism::is_identity) {
        return Err(Error::DegenerateChain);
    }
    let k = chain.len();
    let mut faces: Vec<u32> = nonempty_subsets(k).collect();
    faces.sort_by_key(|f| (f.count_ones(), *f));
    let mut fam = LatticeFamily { chain: chain.clone(), entries: BTreeMap::new() };
    let base = standard(chain.space);
    for face in faces {
        let verts = members(face);
        let m = verts.len() - 1;
        if m == 0 {
            fam.entries.insert((face, 1), base.clone());
            continue;
        }
        let hs = fam.face_autos(face)?;
        if let Some(j) = hs.iter().position(Automorphism::is_identity) {
            // h_{j+1} = id: the face is the degeneracy s_j of the face without vertex j+1.
            let smaller = without(face, verts[j + 1]);
            for local in nonempty_subsets(m) {
                let l = fam.entry(smaller, codegeneracy(local, j)).clone();
                fam.entries.insert((face, local), l);
            }
            continue;
        }
        let mut top: Option<Lattice> = None;
        for local in nonempty_subsets(m).filter(|&l| l != full(m)) {
            let i = (0..=m).find(|i| local & (1 << i) == 0).expect("proper subset");
            let l = if i < m {
                fam.entry(without(face, verts[i]), codegeneracy(local, i)).clone()
            } else {
                fam.entry(without(face, verts[m]), codegeneracy(local, m - 1)).act(&hs[m - 1])?
            };
            top = Some(match top {
                None => l.clone(),
                Some(t) => t.join(&l)?,
            });
            fam.entries.insert((face, local), l);
        }
        fam.entries.insert((face, full(m)), top.expect("m >= 1 gives proper subsets"));
    }
    Ok(fam)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum CheckStatus {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckEntry {
    pub check: String,
    pub simplex: String,
    pub status: CheckStatus,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FamilyReport {
    pub entries: Vec<CheckEntry>,
}

impl FamilyReport {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.status == CheckStatus::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckEntry> {
        self.entries.iter().filter(|e| e.status == CheckStatus::Fail)
    }

    pub fn failed(&self, check: &str) -> bool {
        self.failures().any(|e| e.check == check)
    }

    fn record(&mut self, check: &str, face: u32, ok: bool, detail: String) {
        self.entries.push(CheckEntry {
            check: check.to_string(),
            simplex: describe(face),
            status: if ok { CheckStatus::Pass } else { CheckStatus::Fail },
            detail,
        });
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.entries
                .iter()
                .map(|e| {
                    json!({
                        "check": e.check,
                        "simplex": e.simplex,
                        "status": if e.status == CheckStatus::Pass { "pass" } else { "fail" },
                        "detail": e.detail,
                    })
                })
                .collect(),
        )
    }
}

/// Re-derives every relation the family must satisfy from its stored
/// entries and reports each one.
pub fn verify_family(f: &LatticeFamily) -> FamilyReport {
    let mut report = FamilyReport::default();
    let k = f.chain.len();
    for face in nonempty_subsets(k) {
        if let Err(e) = verify_face(f, face, &mut report) {
            report.record("evaluation", face, false, e.to_string());
        }
    }
    report
}

fn verify_face(f: &LatticeFamily, face: u32, report: &mut FamilyReport) -> Result<()> {
    let verts = members(face);
    let m = verts.len() - 1;
    for local in nonempty_subsets(m) {
        let l = f.entry(face, local);
        let again = Lattice::from_window(l.space(), l.a(), l.b(), l.subspace().clone())?;
        report.record("normalized", face, &again == l, describe(local));
    }
    if m == 0 {
        let ok = f.entry(face, 1) == &standard(f.chain.space);
        report.record("base_lattice", face, ok, "L_{0,[0]} is the standard lattice".into());
        return Ok(());
    }
    let hs = f.face_autos(face)?;
    let degenerate: Vec<usize> = (0..m).filter(|&j| hs[j].is_identity()).collect();

    // (c): monotone in I, checked on covering pairs.
    for local in nonempty_subsets(m) {
        for extra in 0..=m {
            if local & (1 << extra) != 0 {
                continue;
            }
            let bigger = local | (1 << extra);
            let ok = f.entry(face, local).leq(f.entry(face, bigger))?;
            report.record("hyp_c", face, ok, format!("{} <= {}", describe(local), describe(bigger)));
        }
    }

    // Degenerate faces are pulled back along every codegeneracy that applies.
    for &j in &degenerate {
        let smaller = without(face, verts[j + 1]);
        let ok = nonempty_subsets(m).all(|local| f.entry(face, local) == f.entry(smaller, codegeneracy(local, j)));
        report.record("degeneracy", face, ok, format!("s_{j}"));
    }
    if !degenerate.is_empty() {
        return Ok(());
    }

    // (a), (b) and well-definedness: every i outside I yields the same lattice.
    for local in nonempty_subsets(m).filter(|&l| l != full(m)) {
        let stored = f.entry(face, local);
        let mut candidates = Vec::new();
        for i in (0..=m).filter(|i| local & (1 << i) == 0) {
            if i < m {
                let c = f.entry(without(face, verts[i]), codegeneracy(local, i));
                report.record("hyp_a", face, c == stored, format!("i={i}, I={}", describe(local)));
                candidates.push(c.clone());
            } else {
                let c = f.entry(without(face, verts[m]), codegeneracy(local, m - 1)).act(&hs[m - 1])?;
                report.record("hyp_b", face, &c == stored, format!("I={}", describe(local)));
                candidates.push(c);
            }
        }
        let ok = candidates.windows(2).all(|p| p[0] == p[1]);
        report.record("well_defined", face, ok, format!("I={}", describe(local)));
    }

    // Face identities: d_i of the family is the family of d_i.
    for i in 0..=m {
        let smaller = without(face, verts[i]);
        let mut ok = true;
        for j in nonempty_subsets(m - 1) {
            let upper = f.entry(face, coface(j, i));
            let lower = f.entry(smaller, j);
            ok &= if i < m { upper == lower } else { upper == &lower.act(&hs[m - 1])? };
        }
        let check = if i < m { "face_d_i" } else { "face_d_m" };
        report.record(check, face, ok, format!("d_{i}"));
    }
    Ok(())
}

/// Quotient dimensions of the simplex attached to a face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplexIndex {
    /// `dim(L_[m] / L_{j})` for each vertex `j`.
    pub vertex_dims: Vec<usize>,
    /// `vertex_dims[j-1] - vertex_dims[j]`; for an edge this is the index
    /// of the automorphism along it.
    pub edge_indices: Vec<i64>,
}

pub fn index_simplex(f: &LatticeFamily, face: &[usize]) -> Result<SimplexIndex> {
    let mask = face.iter().try_fold(0u32, |acc, &v| {
        if v > f.chain.len() || acc & (1 << v) != 0 {
            Err(Error::UnknownFace(format!("{face:?}")))
        } else {
            Ok(acc | (1 << v))
        }
    })?;
    if mask == 0 {
        return Err(Error::UnknownFace(format!("{face:?}")));
    }
    let m = face.len() - 1;
    let top = f.entry(mask, full(m));
    let vertex_dims = (0..=m).map(|j| quotient_dim(f.entry(mask, 1 << j), top)).collect::<Result<Vec<_>>>()?;
    let edge_indices = vertex_dims.windows(2).map(|p| p[0] as i64 - p[1] as i64).collect();
    Ok(SimplexIndex { vertex_dims, edge_indices })
}
