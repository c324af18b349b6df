//! Finite posets, simplicial sets, subdivision and `Ex` on poset nerves,
//! oriented graphs with admissible trees, and dimension bookkeeping for
//! subspace-valued poset diagrams.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::Write as _;
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::exact::{quotient_dim, FieldCtx, Scalar, Subspace};

/// Image of a subset of `[m-1]` under the coface `d^i` (skip `i`).
pub fn coface_mask(mask: u32, i: usize) -> u32 {
    let low = mask & ((1 << i) - 1);
    low | ((mask & !((1 << i) - 1)) << 1)
}

/// Image of a subset of `[m]` under the codegeneracy `s^i` (merge `i`, `i+1`).
pub fn codegeneracy_mask(mask: u32, i: usize) -> u32 {
    let low = mask & ((1 << (i + 1)) - 1);
    low | ((mask >> 1) & !((1 << i) - 1))
}

fn subset_label(mask: u32) -> String {
    let items: Vec<String> = (0..32).filter(|i| mask & (1 << i) != 0).map(|i| i.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

/// A finite partially ordered set given by its full relation table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinPoset {
    labels: Vec<String>,
    leq: Vec<Vec<bool>>,
}

impl FinPoset {
    pub fn new(labels: Vec<String>, leq: Vec<Vec<bool>>) -> Result<Self> {
        let n = labels.len();
        if leq.len() != n || leq.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidPoset("relation table has the wrong shape".into()));
        }
        for x in 0..n {
            if !leq[x][x] {
                return Err(Error::InvalidPoset(format!("{} is not <= itself", labels[x])));
            }
            for y in 0..n {
                if x != y && leq[x][y] && leq[y][x] {
                    return Err(Error::InvalidPoset(format!("{} and {} are <= each other", labels[x], labels[y])));
                }
                for z in 0..n {
                    if leq[x][y] && leq[y][z] && !leq[x][z] {
                        return Err(Error::InvalidPoset(format!("transitivity fails at {}, {}, {}", labels[x], labels[y], labels[z])));
                    }
                }
            }
        }
        Ok(FinPoset { labels, leq })
    }

    /// The order generated by the given pairs `x <= y`.
    pub fn from_relations(labels: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        let mut leq = vec![vec![false; n]; n];
        for (x, row) in leq.iter_mut().enumerate() {
            row[x] = true;
        }
        for &(x, y) in pairs {
            if x >= n || y >= n {
                return Err(Error::InvalidPoset(format!("pair ({x}, {y}) out of range")));
            }
            leq[x][y] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if leq[i][k] && leq[k][j] {
                        leq[i][j] = true;
                    }
                }
            }
        }
        FinPoset::new(labels, leq)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x][y]
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq[x][y]
    }

    pub fn minimal(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| (0..self.len()).all(|y| !self.lt(y, x))).collect()
    }

    pub fn maximal(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| (0..self.len()).all(|y| !self.lt(x, y))).collect()
    }

    /// The final element, if there is one.
    pub fn top(&self) -> Option<usize> {
        (0..self.len()).find(|&m| (0..self.len()).all(|x| self.leq(x, m)))
    }

    /// A finite poset is filtered exactly when it has a final element.
    pub fn is_filtered(&self) -> bool {
        self.top().is_some()
    }

    /// A listing of the elements in which `x < y` puts `x` first.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&x| (0..self.len()).filter(|&y| self.lt(y, x)).count());
        order
    }
}

/// `[n] = {0 < 1 < ... < n}`.
pub fn ordinal(n: usize) -> FinPoset {
    let labels = (0..=n).map(|i| i.to_string()).collect();
    let leq = (0..=n).map(|x| (0..=n).map(|y| x <= y).collect()).collect();
    FinPoset::new(labels, leq).expect("a chain is a poset")
}

/// Nonempty subsets of `[n]` under inclusion; element `k` is the subset
/// with bitmask `k + 1`.
pub fn sd_ordinal(n: usize) -> FinPoset {
    let count = (1usize << (n + 1)) - 1;
    let labels = (1..=count as u32).map(subset_label).collect();
    let leq = (1..=count as u32).map(|x| (1..=count as u32).map(|y| x & y == x).collect()).collect();
    FinPoset::new(labels, leq).expect("inclusion is a partial order")
}

/// A finite poset with an ordered tuple of minimal base points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasedPoset {
    pub poset: FinPoset,
    pub base_points: Vec<usize>,
}

/// Nonempty intervals `[i, j]` of `[k]` under inclusion, based at the
/// singletons. Elements are listed by length, then by left end.
pub fn b_interval(k: usize) -> BasedPoset {
    let mut intervals = Vec::new();
    for len in 1..=k + 1 {
        for i in 0..=(k + 1 - len) {
            intervals.push((i, i + len - 1));
        }
    }
    let labels = intervals.iter().map(|(i, j)| format!("[{i},{j}]")).collect();
    let leq = intervals
        .iter()
        .map(|&(i, j)| intervals.iter().map(|&(a, b)| a <= i && j <= b).collect())
        .collect();
    let poset = FinPoset::new(labels, leq).expect("inclusion is a partial order");
    BasedPoset { poset, base_points: (0..=k).collect() }
}

/// The interval `[i, j]` of [`b_interval`]`(k)` as an element index.
pub fn b_interval_index(k: usize, i: usize, j: usize) -> usize {
    let len = j - i + 1;
    let before: usize = (1..len).map(|l| k + 2 - l).sum();
    before + i
}

/// A simplicial set with finitely many simplices in each level up to a cap.
///
/// `faces[n][i][x]` is `d_i` of simplex `x` in level `n` (for `n >= 1`)
/// and `degeneracies[n][i][x]` is `s_i x` in level `n + 1` (for `n < cap`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinSimplicialSet {
    cap: usize,
    counts: Vec<usize>,
    faces: Vec<Vec<Vec<usize>>>,
    degeneracies: Vec<Vec<Vec<usize>>>,
}

impl FinSimplicialSet {
    /// Tabulates a simplicial set whose level `n` simplices are `levels[n]`.
    pub fn from_maps<T, F, S>(levels: Vec<Vec<T>>, face: F, degeneracy: S) -> Result<Self>
    where
        T: Clone + Eq + Hash,
        F: Fn(&T, usize) -> T,
        S: Fn(&T, usize) -> T,
    {
        if levels.is_empty() {
            return Err(Error::InvalidDiagram("a simplicial set needs level 0".into()));
        }
        let cap = levels.len() - 1;
        let index: Vec<HashMap<&T, usize>> =
            levels.iter().map(|l| l.iter().enumerate().map(|(k, x)| (x, k)).collect()).collect();
        let lookup = |level: usize, x: &T| {
            index[level]
                .get(x)
                .copied()
                .ok_or_else(|| Error::InvalidDiagram(format!("a map leaves level {level}")))
        };
        let mut faces = vec![Vec::new()];
        for n in 1..=cap {
            let per_i = (0..=n)
                .map(|i| levels[n].iter().map(|x| lookup(n - 1, &face(x, i))).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            faces.push(per_i);
        }
        let mut degeneracies = Vec::new();
        for n in 0..cap {
            let per_i = (0..=n)
                .map(|i| levels[n].iter().map(|x| lookup(n + 1, &degeneracy(x, i))).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            degeneracies.push(per_i);
        }
        Ok(FinSimplicialSet { cap, counts: levels.iter().map(Vec::len).collect(), faces, degeneracies })
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn count(&self, n: usize) -> usize {
        self.counts[n]
    }

    pub fn face(&self, n: usize, i: usize, x: usize) -> usize {
        self.faces[n][i][x]
    }

    pub fn degeneracy(&self, n: usize, i: usize, x: usize) -> usize {
        self.degeneracies[n][i][x]
    }

    /// Simplices of level `n` that are not degeneracies of level `n - 1`.
    pub fn nondegenerate(&self, n: usize) -> Vec<usize> {
        let mut degenerate = vec![false; self.counts[n]];
        if n > 0 {
            for per_i in &self.degeneracies[n - 1] {
                for &y in per_i {
                    degenerate[y] = true;
                }
            }
        }
        (0..self.counts[n]).filter(|&x| !degenerate[x]).collect()
    }

    /// Every simplicial identity that fails, as a readable description.
    pub fn audit(&self) -> Vec<String> {
        let mut bad = Vec::new();
        for n in 2..=self.cap {
            for j in 0..=n {
                for i in 0..j {
                    for x in 0..self.counts[n] {
                        if self.face(n - 1, i, self.face(n, j, x)) != self.face(n - 1, j - 1, self.face(n, i, x)) {
                            bad.push(format!("d_{i} d_{j} = d_{} d_{i} at level {n}, simplex {x}", j - 1));
                        }
                    }
                }
            }
        }
        for n in 0..self.cap.saturating_sub(1) {
            for j in 0..=n {
                for i in 0..=j {
                    for x in 0..self.counts[n] {
                        if self.degeneracy(n + 1, i, self.degeneracy(n, j, x))
                            != self.degeneracy(n + 1, j + 1, self.degeneracy(n, i, x))
                        {
                            bad.push(format!("s_{i} s_{j} = s_{} s_{i} at level {n}, simplex {x}", j + 1));
                        }
                    }
                }
            }
        }
        for n in 0..self.cap {
            for j in 0..=n {
                for i in 0..=n + 1 {
                    for x in 0..self.counts[n] {
                        let lhs = self.face(n + 1, i, self.degeneracy(n, j, x));
                        let rhs = if i == j || i == j + 1 {
                            Some(x)
                        } else if n == 0 {
                            None
                        } else if i < j {
                            Some(self.degeneracy(n - 1, j - 1, self.face(n, i, x)))
                        } else {
                            Some(self.degeneracy(n - 1, j, self.face(n, i - 1, x)))
                        };
                        if rhs.is_some_and(|r| r != lhs) {
                            bad.push(format!("d_{i} s_{j} at level {n}, simplex {x}"));
                        }
                    }
                }
            }
        }
        bad
    }
}

fn monotone_chains(p: &FinPoset, length: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (0..p.len()).map(|x| vec![x]).collect();
    for _ in 1..length {
        out = out
            .into_iter()
            .flat_map(|c| {
                let last = *c.last().expect("nonempty chain");
                (0..p.len()).filter(move |&y| p.leq(last, y)).map(move |y| {
                    let mut d = c.clone();
                    d.push(y);
                    d
                })
            })
            .collect();
    }
    out
}

/// The nerve of `p` up to level `cap`: weakly increasing chains.
pub fn nerve(p: &FinPoset, cap: usize) -> FinSimplicialSet {
    let levels = (0..=cap).map(|n| monotone_chains(p, n + 1)).collect();
    FinSimplicialSet::from_maps(
        levels,
        |c: &Vec<usize>, i| {
            let mut d = c.clone();
            d.remove(i);
            d
        },
        |c: &Vec<usize>, i| {
            let mut d = c.clone();
            d.insert(i, c[i]);
            d
        },
    )
    .expect("chains are closed under faces and degeneracies")
}

/// Families `(x_I)` over nonempty `I ⊆ [n]`, weakly increasing in `I`;
/// `x_I` sits at position `mask(I) - 1`.
pub fn ex_poset(p: &FinPoset, n: usize) -> Vec<Vec<usize>> {
    let count = (1usize << (n + 1)) - 1;
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(count);
    extend_family(p, count, &mut current, &mut out);
    out
}

fn extend_family(p: &FinPoset, count: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if current.len() == count {
        out.push(current.clone());
        return;
    }
    let mask = current.len() as u32 + 1;
    for x in 0..p.len() {
        // Subsets of `mask` missing one element are earlier in mask order.
        let fits = (0..32)
            .filter(|b| mask & (1 << b) != 0)
            .map(|b| mask & !(1 << b))
            .filter(|&sub| sub != 0)
            .all(|sub| p.leq(current[sub as usize - 1], x));
        if fits {
            current.push(x);
            extend_family(p, count, current, out);
            current.pop();
        }
    }
}

/// Face `d_i` of an `Ex` family: `J ↦ x_{d^i(J)}`.
pub fn ex_face(family: &[usize], i: usize) -> Vec<usize> {
    let n = level_of(family);
    (1..(1u32 << n)).map(|j| family[coface_mask(j, i) as usize - 1]).collect()
}

/// Degeneracy `s_i` of an `Ex` family: `J ↦ x_{s^i(J)}`.
pub fn ex_degeneracy(family: &[usize], i: usize) -> Vec<usize> {
    let n = level_of(family);
    (1..(1u32 << (n + 2))).map(|j| family[codegeneracy_mask(j, i) as usize - 1]).collect()
}

fn level_of(family: &[usize]) -> usize {
    (family.len() + 1).trailing_zeros() as usize - 1
}

/// `Ex` of the nerve of `p`, up to level `cap`.
pub fn ex_nerve(p: &FinPoset, cap: usize) -> Result<FinSimplicialSet> {
    let levels = (0..=cap).map(|n| ex_poset(p, n)).collect();
    FinSimplicialSet::from_maps(levels, |x: &Vec<usize>, i| ex_face(x, i), |x: &Vec<usize>, i| ex_degeneracy(x, i))
}

/// All order-preserving maps `src → dst`, by exhaustive enumeration.
pub fn poset_maps(src: &FinPoset, dst: &FinPoset) -> Vec<Vec<usize>> {
    let n = src.len();
    let mut out = Vec::new();
    let total = dst.len().pow(n as u32);
    for code in 0..total {
        let mut f = Vec::with_capacity(n);
        let mut c = code;
        for _ in 0..n {
            f.push(c % dst.len());
            c /= dst.len();
        }
        let monotone = (0..n).all(|x| (0..n).all(|y| !src.leq(x, y) || dst.leq(f[x], f[y])));
        if monotone {
            out.push(f);
        }
    }
    out.sort();
    out
}

/// A directed graph on `0..vertices`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedGraph {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

impl OrientedGraph {
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if edges.iter().any(|&(x, y)| x >= vertices || y >= vertices) {
            return Err(Error::InvalidDiagram("edge endpoint out of range".into()));
        }
        Ok(OrientedGraph { vertices, edges })
    }

    /// DOT source; edges in `tree` are drawn bold.
    pub fn to_dot(&self, labels: &[String], tree: &[(usize, usize)]) -> String {
        let mut s = String::from("digraph G {\n");
        for (v, label) in labels.iter().enumerate().take(self.vertices) {
            let _ = writeln!(s, "  v{v} [label=\"{label}\"];");
        }
        for &(x, y) in &self.edges {
            let style = if tree.contains(&(x, y)) { " [style=bold]" } else { "" };
            let _ = writeln!(s, "  v{x} -> v{y}{style};");
        }
        s.push_str("}\n");
        s
    }
}

/// `Γ(I)`: an edge `x → y` for every `x < y`.
pub fn gamma(p: &FinPoset) -> OrientedGraph {
    let n = p.len();
    let edges = (0..n).flat_map(|x| (0..n).filter(move |&y| p.lt(x, y)).map(move |y| (x, y))).collect();
    OrientedGraph { vertices: n, edges }
}

fn reachable(vertices: usize, tree: &[(usize, usize)], from: usize) -> Vec<bool> {
    let mut seen = vec![false; vertices];
    let mut queue = VecDeque::from([from]);
    seen[from] = true;
    while let Some(x) = queue.pop_front() {
        for &(a, b) in tree {
            if a == x && !seen[b] {
                seen[b] = true;
                queue.push_back(b);
            }
        }
    }
    seen
}

fn is_spanning_tree(vertices: usize, tree: &[(usize, usize)]) -> bool {
    if vertices == 0 || tree.len() != vertices - 1 {
        return vertices == 0 && tree.is_empty();
    }
    let mut parent: Vec<usize> = (0..vertices).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    for &(a, b) in tree {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            return false;
        }
        parent[ra] = rb;
    }
    true
}

/// `tree` is a maximal tree of `g` in which any two vertices have a common
/// vertex reachable from both along oriented tree paths.
pub fn is_admissible_tree(g: &OrientedGraph, tree: &[(usize, usize)]) -> bool {
    if tree.iter().any(|e| !g.edges.contains(e)) || !is_spanning_tree(g.vertices, tree) {
        return false;
    }
    let reach: Vec<Vec<bool>> = (0..g.vertices).map(|x| reachable(g.vertices, tree, x)).collect();
    (0..g.vertices).all(|x| (0..g.vertices).all(|y| (0..g.vertices).any(|z| reach[x][z] && reach[y][z])))
}

/// The edges `x → max` for every non-maximal `x`.
pub fn star_tree(p: &FinPoset) -> Result<Vec<(usize, usize)>> {
    let m = p.top().ok_or_else(|| Error::InvalidPoset("no final element".into()))?;
    Ok((0..p.len()).filter(|&x| x != m).map(|x| (x, m)).collect())
}

/// A based filtered poset together with an admissible tree of `Γ(I)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FramedPoset {
    pub poset: FinPoset,
    pub base_points: Vec<usize>,
    pub tree_edges: Vec<(usize, usize)>,
}

impl FramedPoset {
    pub fn new(poset: FinPoset, base_points: Vec<usize>, tree_edges: Vec<(usize, usize)>) -> Result<Self> {
        if !poset.is_filtered() {
            return Err(Error::InvalidPoset("a framed poset needs a final element".into()));
        }
        let minimal = poset.minimal();
        if base_points.is_empty() || base_points.iter().any(|b| !minimal.contains(b)) {
            return Err(Error::InvalidPoset("base points must be minimal elements".into()));
        }
        if !is_admissible_tree(&gamma(&poset), &tree_edges) {
            return Err(Error::InvalidPoset("tree is not an admissible maximal tree".into()));
        }
        Ok(FramedPoset { poset, base_points, tree_edges })
    }

    /// Framing by the star tree at the final element.
    pub fn star(poset: FinPoset, base_points: Vec<usize>) -> Result<Self> {
        let tree = star_tree(&poset)?;
        FramedPoset::new(poset, base_points, tree)
    }

    /// The tree path from `x0` to `x` as `(edge, forward)` steps.
    fn path_from_base(&self, x: usize) -> Vec<((usize, usize), bool)> {
        let n = self.poset.len();
        let start = self.base_points[0];
        let mut prev: Vec<Option<((usize, usize), bool, usize)>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &(a, b) in &self.tree_edges {
                let step = if a == v { Some((b, true)) } else if b == v { Some((a, false)) } else { None };
                if let Some((w, forward)) = step {
                    if !seen[w] {
                        seen[w] = true;
                        prev[w] = Some(((a, b), forward, v));
                        queue.push_back(w);
                    }
                }
            }
        }
        let mut path = Vec::new();
        let mut v = x;
        while let Some((e, forward, p)) = prev[v] {
            path.push((e, forward));
            v = p;
        }
        path.reverse();
        path
    }
}

/// A functor from a poset to subspaces of `k^d` under inclusion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibleDiagram {
    pub poset: FinPoset,
    pub spaces: Vec<Subspace>,
}

impl AdmissibleDiagram {
    pub fn new(poset: FinPoset, spaces: Vec<Subspace>) -> Result<Self> {
        if spaces.len() != poset.len() {
            return Err(Error::InvalidDiagram("one subspace per element is required".into()));
        }
        for x in 0..poset.len() {
            for y in 0..poset.len() {
                if poset.leq(x, y) && !spaces[y].contains(&spaces[x])? {
                    return Err(Error::InvalidDiagram(format!(
                        "F({}) is not contained in F({})",
                        poset.labels()[x],
                        poset.labels()[y]
                    )));
                }
            }
        }
        Ok(AdmissibleDiagram { poset, spaces })
    }

    pub fn dims(&self) -> Vec<usize> {
        self.spaces.iter().map(Subspace::dim).collect()
    }
}

/// `[i, j] ↦ X_j` on `B[k]` for a flag `X_0 ⊆ X_1 ⊆ ... ⊆ X_k`.
pub fn diagram_from_flag(flag: &[Subspace]) -> Result<AdmissibleDiagram> {
    let k = flag.len().checked_sub(1).ok_or_else(|| Error::InvalidDiagram("empty flag".into()))?;
    let b = b_interval(k);
    let mut spaces = vec![flag[0].clone(); b.poset.len()];
    for i in 0..=k {
        for j in i..=k {
            spaces[b_interval_index(k, i, j)] = flag[j].clone();
        }
    }
    AdmissibleDiagram::new(b.poset, spaces)
}

/// `dim F(x_0)` and `dim F(y')/F(y)` for each tree edge `y → y'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct K0Decomposition {
    pub d0: i64,
    pub edge_dims: BTreeMap<(usize, usize), i64>,
}

pub fn k0_decompose(f: &AdmissibleDiagram, frame: &FramedPoset) -> Result<K0Decomposition> {
    if f.poset != frame.poset {
        return Err(Error::FrameMismatch);
    }
    let d0 = f.spaces[frame.base_points[0]].dim() as i64;
    let edge_dims = frame
        .tree_edges
        .iter()
        .map(|&(y, y1)| Ok(((y, y1), quotient_dim(&f.spaces[y], &f.spaces[y1])? as i64)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    Ok(K0Decomposition { d0, edge_dims })
}

/// `dim F(x)` for every `x`, recovered from `d0` by walking the tree from
/// `x_0`, adding edge dimensions along edges and subtracting against them.
pub fn k0_reconstruct(dec: &K0Decomposition, frame: &FramedPoset) -> Vec<i64> {
    (0..frame.poset.len())
        .map(|x| {
            frame
                .path_from_base(x)
                .into_iter()
                .fold(dec.d0, |acc, (e, forward)| if forward { acc + dec.edge_dims[&e] } else { acc - dec.edge_dims[&e] })
        })
        .collect()
}

/// `(dim F(x_1) - dim F(x_0), ..., dim F(x_k) - dim F(x_{k-1}))`.
pub fn preindex_k0(f: &AdmissibleDiagram, base_points: &[usize]) -> Vec<i64> {
    base_points.windows(2).map(|p| f.spaces[p[1]].dim() as i64 - f.spaces[p[0]].dim() as i64).collect()
}

/// The pre-index between two base points computed through the tree
/// decomposition rather than from the dimensions directly.
pub fn preindex_via_tree(f: &AdmissibleDiagram, frame: &FramedPoset, from: usize, to: usize) -> Result<i64> {
    let dims = k0_reconstruct(&k0_decompose(f, frame)?, frame);
    Ok(dims[to] - dims[from])
}

/// Subspaces of `k^d` spanned by the listed standard vectors.
pub fn coordinate_flag(ctx: FieldCtx, d: usize, sizes: &[usize]) -> Vec<Subspace> {
    sizes.iter().map(|&s| Subspace::coordinate(ctx, d, &(0..s).collect::<Vec<_>>())).collect()
}

/// Scalars of `k^d` for tests and generators.
pub fn vector(ctx: FieldCtx, entries: &[i64]) -> Vec<Scalar> {
    entries.iter().map(|&x| ctx.from_i64(x)).collect()
}
