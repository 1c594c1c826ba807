//! Matchings: augmenting paths, Hall violators, the Dulmage–Mendelsohn
//! merge, perfect internal matchings and (internal) extendability.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Bipartition, Graph};
use crate::verdict::{Exhausted, Steps, Verdict};

/// A set of pairwise disjoint edges of some host graph, as sorted edge ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Matching {
    edges: Vec<usize>,
}

impl Matching {
    pub fn empty() -> Matching {
        Matching { edges: Vec::new() }
    }

    /// Validates disjointness against `g`.
    pub fn new(g: &Graph, mut edges: Vec<usize>) -> Result<Matching> {
        edges.sort_unstable();
        edges.dedup();
        let m = Matching { edges };
        if m.is_valid_for(g) {
            Ok(m)
        } else {
            Err(Error::InvalidParameter("edges do not form a matching".into()))
        }
    }

    fn from_sorted_unchecked(edges: Vec<usize>) -> Matching {
        Matching { edges }
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: usize) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    pub fn is_superset_of(&self, other: &Matching) -> bool {
        other.edges.iter().all(|&e| self.contains(e))
    }

    /// `covered[v]` iff `v ∈ V(M)`.
    pub fn covered(&self, g: &Graph) -> Vec<bool> {
        let mut c = vec![false; g.n()];
        for &e in &self.edges {
            let (u, v) = g.edge(e);
            c[u] = true;
            c[v] = true;
        }
        c
    }

    pub fn is_valid_for(&self, g: &Graph) -> bool {
        let mut c = vec![false; g.n()];
        self.edges.iter().all(|&e| {
            if e >= g.m() {
                return false;
            }
            let (u, v) = g.edge(e);
            !std::mem::replace(&mut c[u], true) && !std::mem::replace(&mut c[v], true)
        })
    }

    pub fn union(&self, other: &Matching) -> Matching {
        let mut e = self.edges.clone();
        e.extend_from_slice(&other.edges);
        e.sort_unstable();
        e.dedup();
        Matching { edges: e }
    }
}

/// `X` on one side with `|N(X)| < |X| + surplus`, neighbourhoods taken in
/// `g` minus `removed`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HallViolator {
    pub side_subset: Vec<usize>,
    pub neighborhood: Vec<usize>,
    pub surplus: usize,
    pub removed: Vec<usize>,
}

impl HallViolator {
    fn build(g: &Graph, mut x: Vec<usize>, alive: &[bool], surplus: usize) -> HallViolator {
        x.sort_unstable();
        let neighborhood = neighbourhood(g, &x, alive);
        let removed = (0..g.n()).filter(|&v| !alive[v]).collect();
        HallViolator {
            side_subset: x,
            neighborhood,
            surplus,
            removed,
        }
    }

    /// Re-checks the inequality and the one-sidedness.
    pub fn verify(&self, g: &Graph, b: &Bipartition) -> bool {
        let mut alive = vec![true; g.n()];
        for &v in &self.removed {
            if v >= g.n() {
                return false;
            }
            alive[v] = false;
        }
        let Some(&first) = self.side_subset.first() else {
            return false;
        };
        let side = b.in_a(first);
        self.side_subset
            .iter()
            .all(|&v| v < g.n() && alive[v] && b.in_a(v) == side)
            && neighbourhood(g, &self.side_subset, &alive) == self.neighborhood
            && self.neighborhood.len() < self.side_subset.len() + self.surplus
    }
}

fn neighbourhood(g: &Graph, x: &[usize], alive: &[bool]) -> Vec<usize> {
    let mut mark = vec![false; g.n()];
    for &v in x {
        for &w in g.neighbors(v) {
            if alive[w] {
                mark[w] = true;
            }
        }
    }
    (0..g.n()).filter(|&v| mark[v]).collect()
}

/// A matching leaving only leaves uncovered.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InternalMatching {
    pub matching: Matching,
    pub uncovered: Vec<usize>,
}

impl InternalMatching {
    fn new(g: &Graph, matching: Matching) -> InternalMatching {
        let c = matching.covered(g);
        let uncovered = (0..g.n()).filter(|&v| !c[v]).collect();
        InternalMatching { matching, uncovered }
    }

    pub fn verify(&self, g: &Graph) -> bool {
        if !self.matching.is_valid_for(g) {
            return false;
        }
        let c = self.matching.covered(g);
        let expected: Vec<usize> = (0..g.n()).filter(|&v| !c[v]).collect();
        expected == self.uncovered && self.uncovered.iter().all(|&v| g.degree(v) == 1)
    }
}

// ---------------------------------------------------------------------------
// augmenting paths

/// Grows a matching from each of `sources`, in order, inside the subgraph
/// induced by `alive`. Sources that cannot be matched produce their
/// alternating tree's source-side vertex set.
struct Augmenter<'g> {
    g: &'g Graph,
    alive: Vec<bool>,
    mate: Vec<Option<usize>>,
}

impl<'g> Augmenter<'g> {
    fn new(g: &'g Graph, alive: Vec<bool>) -> Self {
        Augmenter {
            g,
            alive,
            mate: vec![None; g.n()],
        }
    }

    /// BFS for an augmenting path from the free vertex `s`, smallest ids first.
    /// Returns the visited source-side vertices on failure.
    fn augment(&mut self, s: usize) -> std::result::Result<(), Vec<usize>> {
        let n = self.g.n();
        let mut prev = vec![usize::MAX; n]; // other-side vertex -> source-side predecessor
        let mut visited_src = vec![s];
        let mut seen_src = vec![false; n];
        seen_src[s] = true;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &y in self.g.neighbors(x) {
                if !self.alive[y] || prev[y] != usize::MAX || Some(y) == self.mate[x] {
                    continue;
                }
                prev[y] = x;
                match self.mate[y] {
                    None => {
                        // flip the path ending at y
                        let mut y = y;
                        loop {
                            let x = prev[y];
                            let next = self.mate[x];
                            self.mate[x] = Some(y);
                            self.mate[y] = Some(x);
                            match next {
                                Some(ny) if x != s => y = ny,
                                _ => break,
                            }
                        }
                        return Ok(());
                    }
                    Some(x2) => {
                        if !seen_src[x2] {
                            seen_src[x2] = true;
                            visited_src.push(x2);
                            queue.push_back(x2);
                        }
                    }
                }
            }
        }
        Err(visited_src)
    }

    fn matching(&self) -> Matching {
        let mut edges: Vec<usize> = (0..self.g.n())
            .filter_map(|v| match self.mate[v] {
                Some(w) if v < w => self.g.edge_id(v, w),
                _ => None,
            })
            .collect();
        edges.sort_unstable();
        Matching::from_sorted_unchecked(edges)
    }
}

/// Maximum-cardinality matching of a bipartite graph.
pub fn max_matching_bipartite(g: &Graph, b: &Bipartition) -> Matching {
    let mut aug = Augmenter::new(g, vec![true; g.n()]);
    for &a in &b.side_a {
        let _ = aug.augment(a);
    }
    aug.matching()
}

/// A matching covering every vertex of `targets` (all on one side), or a
/// Hall violator `X ⊆ targets` with `|N(X)| < |X|`.
pub fn saturating_matching(
    g: &Graph,
    b: &Bipartition,
    targets: &[usize],
) -> std::result::Result<Matching, HallViolator> {
    saturating_in(g, b, targets, vec![true; g.n()])
}

fn saturating_in(
    g: &Graph,
    b: &Bipartition,
    targets: &[usize],
    alive: Vec<bool>,
) -> std::result::Result<Matching, HallViolator> {
    if let Some(&t0) = targets.first() {
        assert!(
            targets.iter().all(|&t| b.in_a(t) == b.in_a(t0)),
            "targets must lie on one side"
        );
    }
    let mut aug = Augmenter::new(g, alive);
    let mut sorted = targets.to_vec();
    sorted.sort_unstable();
    for &t in &sorted {
        if let Err(x) = aug.augment(t) {
            let v = HallViolator::build(g, x, &aug.alive, 0);
            debug_assert!(v.verify(g, b));
            return Err(v);
        }
    }
    Ok(aug.matching())
}

/// Dulmage–Mendelsohn merge: a matching inside `ma ∪ mb` covering
/// `(A ∩ V(ma)) ∪ (B ∩ V(mb))`.
pub fn dm_merge(g: &Graph, b: &Bipartition, ma: &Matching, mb: &Matching) -> Matching {
    let n = g.n();
    // up to one edge from each matching per vertex
    let mut via_a = vec![None; n];
    let mut via_b = vec![None; n];
    for &e in ma.edges() {
        let (u, v) = g.edge(e);
        via_a[u] = Some(e);
        via_a[v] = Some(e);
    }
    for &e in mb.edges() {
        let (u, v) = g.edge(e);
        via_b[u] = Some(e);
        via_b[v] = Some(e);
    }
    let other = |e: usize, v: usize| {
        let (x, y) = g.edge(e);
        if x == v {
            y
        } else {
            x
        }
    };
    let required = |v: usize| {
        if b.in_a(v) {
            via_a[v].is_some()
        } else {
            via_b[v].is_some()
        }
    };
    let union_degree = |v: usize| match (via_a[v], via_b[v]) {
        (Some(x), Some(y)) if x == y => 1,
        (x, y) => x.is_some() as usize + y.is_some() as usize,
    };

    let mut done = vec![false; n];
    let mut chosen = Vec::new();
    // walk a path or cycle from `start`, returning (vertices, edges)
    let walk = |start: usize, done: &mut Vec<bool>| -> (Vec<usize>, Vec<usize>) {
        let mut verts = vec![start];
        let mut edges: Vec<usize> = Vec::new();
        done[start] = true;
        let mut cur = start;
        loop {
            let next_edge = [via_a[cur], via_b[cur]]
                .into_iter()
                .flatten()
                .find(|e| edges.last() != Some(e));
            let Some(e) = next_edge else { break };
            let w = other(e, cur);
            edges.push(e);
            if w == start || done[w] {
                break;
            }
            done[w] = true;
            verts.push(w);
            cur = w;
        }
        (verts, edges)
    };

    // paths first, starting at their endpoints
    for v in 0..n {
        if done[v] || union_degree(v) != 1 {
            continue;
        }
        let (verts, edges) = walk(v, &mut done);
        if verts.len() % 2 == 0 {
            chosen.extend(edges.iter().step_by(2));
        } else if !required(verts[0]) {
            chosen.extend(edges.iter().skip(1).step_by(2));
        } else {
            debug_assert!(!required(*verts.last().expect("endpoint")));
            chosen.extend(edges.iter().step_by(2));
        }
    }
    // what remains are alternating cycles: keep their ma edges
    for v in 0..n {
        if done[v] || union_degree(v) == 0 {
            continue;
        }
        let (_, edges) = walk(v, &mut done);
        chosen.extend(edges.into_iter().filter(|&e| ma.contains(e)));
    }
    chosen.sort_unstable();
    chosen.dedup();
    let merged = Matching::from_sorted_unchecked(chosen);
    debug_assert!(merged.is_valid_for(g));
    merged
}

/// A matching covering `u` in a bipartite graph, or a Hall violator.
pub fn matching_covering(g: &Graph, b: &Bipartition, u: &[usize]) -> std::result::Result<Matching, HallViolator> {
    covering_in(g, b, u, vec![true; g.n()])
}

fn covering_in(
    g: &Graph,
    b: &Bipartition,
    u: &[usize],
    alive: Vec<bool>,
) -> std::result::Result<Matching, HallViolator> {
    let ua: Vec<usize> = u.iter().copied().filter(|&v| b.in_a(v)).collect();
    let ub: Vec<usize> = u.iter().copied().filter(|&v| !b.in_a(v)).collect();
    let ma = saturating_in(g, b, &ua, alive.clone())?;
    let mb = saturating_in(g, b, &ub, alive)?;
    Ok(dm_merge(g, b, &ma, &mb))
}

/// Why a matching does not extend.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ExtensionFailure {
    /// Bipartite case: no matching of `g - V(M)` saturates this set.
    Hall { violator: HallViolator },
    /// General case: exhaustive search over matchings of `g - V(M)`
    /// found none covering the vertices that must be covered.
    Exhaustive { nodes: u64 },
}

fn alive_outside(g: &Graph, m: &Matching) -> Vec<bool> {
    m.covered(g).into_iter().map(|c| !c).collect()
}

fn is_leaf_adjacent(g: &Graph, v: usize) -> bool {
    g.neighbors(v).iter().any(|&w| g.degree(w) == 1)
}

/// Vertices of `g - V(M)` that a perfect internal extension must cover with
/// non-leaf edges: degree at least 2 in `g`, no leaf neighbour.
fn internal_targets(g: &Graph, alive: &[bool]) -> Vec<usize> {
    (0..g.n())
        .filter(|&v| alive[v] && g.degree(v) > 1 && !is_leaf_adjacent(g, v))
        .collect()
}

/// Covers the still uncovered non-leaves with their leaf edges.
fn cover_leaf_adjacent(g: &Graph, m: &Matching) -> Matching {
    let mut covered = m.covered(g);
    let mut edges = m.edges().to_vec();
    for v in 0..g.n() {
        if covered[v] || g.degree(v) < 2 {
            continue;
        }
        let leaf = g
            .neighbors(v)
            .iter()
            .copied()
            .find(|&w| g.degree(w) == 1 && !covered[w])
            .expect("an uncovered non-leaf here always has a free leaf");
        covered[v] = true;
        covered[leaf] = true;
        edges.push(g.edge_id(v, leaf).expect("edge"));
    }
    edges.sort_unstable();
    Matching::from_sorted_unchecked(edges)
}

/// Extends `m` to a perfect internal matching of the bipartite graph `g`.
///
/// Internal vertices of `g - V(M)` are saturated from each side and merged;
/// leaf-adjacent vertices left over are then matched to their leaves.
pub fn extend_to_perfect_internal(
    g: &Graph,
    b: &Bipartition,
    m: &Matching,
) -> Verdict<InternalMatching, ExtensionFailure> {
    let alive = alive_outside(g, m);
    let targets = internal_targets(g, &alive);
    match covering_in(g, b, &targets, alive) {
        Ok(rest) => {
            let full = cover_leaf_adjacent(g, &m.union(&rest));
            let im = InternalMatching::new(g, full);
            assert!(im.verify(g) && im.matching.is_superset_of(m));
            Verdict::Yes(im)
        }
        Err(violator) => Verdict::No(ExtensionFailure::Hall { violator }),
    }
}

/// Same contract for arbitrary graphs, by exhaustive branching.
pub fn extend_to_perfect_internal_general(
    g: &Graph,
    m: &Matching,
    budget: u64,
) -> Verdict<InternalMatching, ExtensionFailure> {
    let alive = alive_outside(g, m);
    let must: Vec<bool> = {
        let t = internal_targets(g, &alive);
        let mut v = vec![false; g.n()];
        for x in t {
            v[x] = true;
        }
        v
    };
    let mut steps = Steps::new(budget);
    match cover_search(g, alive, &must, &mut steps) {
        Ok(Some(rest)) => {
            let full = cover_leaf_adjacent(g, &m.union(&rest));
            let im = InternalMatching::new(g, full);
            assert!(im.verify(g) && im.matching.is_superset_of(m));
            Verdict::Yes(im)
        }
        Ok(None) => Verdict::No(ExtensionFailure::Exhaustive { nodes: steps.used() }),
        Err(_) => Verdict::Unknown(Exhausted { budget }),
    }
}

/// Dispatches on bipartiteness.
pub fn extend_internal(g: &Graph, m: &Matching, budget: u64) -> Verdict<InternalMatching, ExtensionFailure> {
    match g.bipartition() {
        Ok(b) => extend_to_perfect_internal(g, &b, m),
        Err(_) => extend_to_perfect_internal_general(g, m, budget),
    }
}

/// Branches on the smallest uncovered `must` vertex.
fn cover_search(g: &Graph, mut alive: Vec<bool>, must: &[bool], steps: &mut Steps) -> Result<Option<Matching>> {
    let mut chosen = Vec::new();
    if cover_rec(g, &mut alive, must, &mut chosen, steps)? {
        chosen.sort_unstable();
        Ok(Some(Matching::from_sorted_unchecked(chosen)))
    } else {
        Ok(None)
    }
}

fn cover_rec(g: &Graph, alive: &mut [bool], must: &[bool], chosen: &mut Vec<usize>, steps: &mut Steps) -> Result<bool> {
    steps.tick()?;
    let Some(u) = (0..g.n()).find(|&v| must[v] && alive[v]) else {
        return Ok(true);
    };
    alive[u] = false;
    for (i, &w) in g.neighbors(u).iter().enumerate() {
        if !alive[w] {
            continue;
        }
        alive[w] = false;
        chosen.push(g.incident(u)[i]);
        if cover_rec(g, alive, must, chosen, steps)? {
            return Ok(true);
        }
        chosen.pop();
        alive[w] = true;
    }
    alive[u] = true;
    Ok(false)
}

/// A perfect matching of `g - V(m)` (bipartite or not), as an extension of `m`.
pub fn extend_to_perfect(g: &Graph, m: &Matching, budget: u64) -> Verdict<Matching, ExtensionFailure> {
    let alive = alive_outside(g, m);
    let all: Vec<usize> = (0..g.n()).filter(|&v| alive[v]).collect();
    match g.bipartition() {
        Ok(b) => match covering_in(g, &b, &all, alive) {
            Ok(rest) => Verdict::Yes(m.union(&rest)),
            Err(violator) => Verdict::No(ExtensionFailure::Hall { violator }),
        },
        Err(_) => {
            let mut steps = Steps::new(budget);
            match cover_search(g, alive.clone(), &alive, &mut steps) {
                Ok(Some(rest)) => Verdict::Yes(m.union(&rest)),
                Ok(None) => Verdict::No(ExtensionFailure::Exhaustive { nodes: steps.used() }),
                Err(_) => Verdict::Unknown(Exhausted { budget }),
            }
        }
    }
}

/// All `k`-matchings (k ∈ {1, 2}) in lexicographic order of edge ids.
pub fn k_matchings(g: &Graph, k: usize) -> Result<Vec<Matching>> {
    match k {
        1 => Ok((0..g.m()).map(|e| Matching::from_sorted_unchecked(vec![e])).collect()),
        2 => {
            let mut out = Vec::new();
            for e in 0..g.m() {
                let (a, b) = g.edge(e);
                for f in e + 1..g.m() {
                    let (c, d) = g.edge(f);
                    if a != c && a != d && b != c && b != d {
                        out.push(Matching::from_sorted_unchecked(vec![e, f]));
                    }
                }
            }
            Ok(out)
        }
        other => Err(Error::UnsupportedK(other)),
    }
}

/// Negative witness for (internal) extendability.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ExtendabilityFailure {
    NoKMatching,
    NotExtendable {
        matching: Matching,
        failure: ExtensionFailure,
    },
}

/// Positive witness: an extension for every k-matching, in enumeration order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Extensions<T> {
    pub k_matchings: Vec<Matching>,
    pub extensions: Vec<T>,
}

/// Connected, has a `k`-matching, and every `k`-matching extends to a
/// perfect internal matching. The reported failing matching is the
/// lexicographically smallest.
pub fn is_k_internally_extendable(
    g: &Graph,
    k: usize,
    budget: u64,
) -> Result<Verdict<Extensions<InternalMatching>, ExtendabilityFailure>> {
    g.require_connected()?;
    let ms = k_matchings(g, k)?;
    if ms.is_empty() {
        return Ok(Verdict::No(ExtendabilityFailure::NoKMatching));
    }
    let bip = g.bipartition().ok();
    let mut extensions = Vec::with_capacity(ms.len());
    for m in &ms {
        let r = match &bip {
            Some(b) => extend_to_perfect_internal(g, b, m),
            None => extend_to_perfect_internal_general(g, m, budget),
        };
        match r {
            Verdict::Yes(im) => extensions.push(im),
            Verdict::No(failure) => {
                return Ok(Verdict::No(ExtendabilityFailure::NotExtendable {
                    matching: m.clone(),
                    failure,
                }))
            }
            Verdict::Unknown(x) => return Ok(Verdict::Unknown(x)),
        }
    }
    Ok(Verdict::Yes(Extensions {
        k_matchings: ms,
        extensions,
    }))
}

/// Connected, at least `2k` vertices, has a `k`-matching, and every
/// `k`-matching extends to a perfect matching.
pub fn is_k_extendable(
    g: &Graph,
    k: usize,
    budget: u64,
) -> Result<Verdict<Extensions<Matching>, ExtendabilityFailure>> {
    if k != 1 && k != 2 {
        return Err(Error::UnsupportedK(k));
    }
    g.require_connected()?;
    if g.n() < 2 * k {
        return Err(Error::TooFewVertices {
            n: g.n(),
            required: 2 * k,
        });
    }
    let ms = k_matchings(g, k)?;
    if ms.is_empty() {
        return Ok(Verdict::No(ExtendabilityFailure::NoKMatching));
    }
    let mut extensions = Vec::with_capacity(ms.len());
    for m in &ms {
        match extend_to_perfect(g, m, budget) {
            Verdict::Yes(pm) => extensions.push(pm),
            Verdict::No(failure) => {
                return Ok(Verdict::No(ExtendabilityFailure::NotExtendable {
                    matching: m.clone(),
                    failure,
                }))
            }
            Verdict::Unknown(x) => return Ok(Verdict::Unknown(x)),
        }
    }
    Ok(Verdict::Yes(Extensions {
        k_matchings: ms,
        extensions,
    }))
}

/// Largest side handled by the brute-force Plummer check.
pub const PLUMMER_SIDE_LIMIT: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PlummerFailure {
    Unbalanced { side_a: usize, side_b: usize },
    Violator { violator: HallViolator },
}

/// `|A| = |B|` and `|N(X)| ≥ |X| + k` for all nonempty `X ⊆ A` with
/// `|X| ≤ |A| - k`. Subsets are scanned in increasing bitmask order.
pub fn plummer_condition(g: &Graph, b: &Bipartition, k: usize) -> Result<Verdict<(), PlummerFailure>> {
    let (na, nb) = (b.side_a.len(), b.side_b.len());
    if na > PLUMMER_SIDE_LIMIT {
        return Err(Error::TooLarge {
            what: "bipartition side",
            size: na,
            limit: PLUMMER_SIDE_LIMIT,
        });
    }
    if na != nb {
        return Ok(Verdict::No(PlummerFailure::Unbalanced { side_a: na, side_b: nb }));
    }
    // neighbourhoods as bitmasks over B
    let pos_b: std::collections::HashMap<usize, usize> = b.side_b.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let nbr: Vec<u32> = b
        .side_a
        .iter()
        .map(|&a| g.neighbors(a).iter().fold(0u32, |acc, w| acc | 1 << pos_b[w]))
        .collect();
    for mask in 1u32..(1u32 << na) {
        let size = mask.count_ones() as usize;
        if size + k > na {
            continue;
        }
        let mut nx = 0u32;
        for (i, &nm) in nbr.iter().enumerate() {
            if mask & (1 << i) != 0 {
                nx |= nm;
            }
        }
        if (nx.count_ones() as usize) < size + k {
            let x = (0..na).filter(|&i| mask & (1 << i) != 0).map(|i| b.side_a[i]).collect();
            let violator = HallViolator::build(g, x, &vec![true; g.n()], k);
            debug_assert!(violator.verify(g, b));
            return Ok(Verdict::No(PlummerFailure::Violator { violator }));
        }
    }
    Ok(Verdict::Yes(()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{generate, Family};

    fn gen(s: &str) -> Graph {
        generate(&s.parse::<Family>().unwrap()).unwrap()
    }

    fn edges_of(g: &Graph, pairs: &[(&str, &str)]) -> Matching {
        let ids = pairs
            .iter()
            .map(|(a, b)| g.edge_id(g.vertex(a).unwrap(), g.vertex(b).unwrap()).unwrap())
            .collect();
        Matching::new(g, ids).unwrap()
    }

    /// Every matching of `g`, by brute force over edge subsets.
    fn all_matchings(g: &Graph) -> Vec<Matching> {
        assert!(g.m() <= 16);
        (0u32..1 << g.m())
            .filter_map(|mask| {
                let e = (0..g.m()).filter(|&i| mask & (1 << i) != 0).collect();
                Matching::new(g, e).ok()
            })
            .collect()
    }

    fn brute_internal_extension(g: &Graph, m: &Matching) -> bool {
        all_matchings(g).into_iter().any(|x| {
            x.is_superset_of(m) && {
                let c = x.covered(g);
                (0..g.n()).all(|v| c[v] || g.degree(v) == 1)
            }
        })
    }

    #[test]
    fn max_matching_sizes() {
        for (s, size) in [("cycle(6)", 3), ("complete_bipartite(4,3)", 3), ("path(5)", 2)] {
            let g = gen(s);
            let b = g.bipartition().unwrap();
            let m = max_matching_bipartite(&g, &b);
            assert!(m.is_valid_for(&g));
            assert_eq!(m.len(), size, "{s}");
        }
    }

    #[test]
    fn saturating_examples() {
        let g = gen("complete_bipartite(2,3)");
        let b = g.bipartition().unwrap();
        let small = if b.side_a.len() == 2 { &b.side_a } else { &b.side_b };
        let big = if b.side_a.len() == 3 { &b.side_a } else { &b.side_b };
        assert_eq!(saturating_matching(&g, &b, small).unwrap().len(), 2);
        let v = saturating_matching(&g, &b, big).unwrap_err();
        assert!(v.verify(&g, &b));
        assert_eq!((v.side_subset.len(), v.neighborhood.len()), (3, 2));

        let p4 = gen("path(4)");
        let b = p4.bipartition().unwrap();
        // b and c sit on different sides: cover them via the merge
        let m = matching_covering(&p4, &b, &[1, 2]).unwrap();
        let c = m.covered(&p4);
        assert!(c[1] && c[2]);
    }

    #[test]
    fn dm_merge_examples() {
        // a1 - b1 - a2 - b2
        let g = Graph::new(
            vec!["a1".into(), "b1".into(), "a2".into(), "b2".into()],
            [(0, 1), (1, 2), (2, 3)],
        )
        .unwrap();
        let b = g.bipartition().unwrap();
        let ma = edges_of(&g, &[("a2", "b1")]);
        let mb = edges_of(&g, &[("a2", "b2")]);
        assert_eq!(dm_merge(&g, &b, &ma, &mb), mb);
        assert_eq!(dm_merge(&g, &b, &ma, &ma), ma);
        let e1 = edges_of(&g, &[("a1", "b1")]);
        let e2 = edges_of(&g, &[("a2", "b2")]);
        assert_eq!(dm_merge(&g, &b, &e1, &e2), e1.union(&e2));
    }

    #[test]
    fn covering_examples() {
        let c6 = gen("cycle(6)");
        let b = c6.bipartition().unwrap();
        assert_eq!(
            matching_covering(&c6, &b, &(0..6).collect::<Vec<_>>()).unwrap().len(),
            3
        );

        let p5 = gen("path(5)");
        let b = p5.bipartition().unwrap();
        let m = matching_covering(&p5, &b, &[1, 2, 3]).unwrap();
        let c = m.covered(&p5);
        assert!(c[1] && c[2] && c[3]);

        let star = gen("star(3)");
        let b = star.bipartition().unwrap();
        let v = matching_covering(&star, &b, &[1, 2]).unwrap_err();
        assert!(v.verify(&star, &b));
    }

    #[test]
    fn extension_examples() {
        let p4 = gen("path(4)");
        let b = p4.bipartition().unwrap();
        let m = edges_of(&p4, &[("1", "2"), ("3", "4")]);
        assert_eq!(extend_to_perfect_internal(&p4, &b, &m).yes().unwrap().matching, m);

        let p5 = gen("path(5)");
        let b = p5.bipartition().unwrap();
        let m = edges_of(&p5, &[("1", "2"), ("4", "5")]);
        match extend_to_perfect_internal(&p5, &b, &m) {
            Verdict::No(ExtensionFailure::Hall { violator }) => {
                assert!(violator.verify(&p5, &b));
                assert_eq!(violator.side_subset, vec![2]);
            }
            other => panic!("{other:?}"),
        }

        let c6 = gen("cycle(6)");
        let b = c6.bipartition().unwrap();
        let m = edges_of(&c6, &[("1", "2"), ("4", "5")]);
        assert!(extend_to_perfect_internal(&c6, &b, &m).is_no());
        assert!(extend_to_perfect_internal_general(&c6, &m, 10_000).is_no());
    }

    #[test]
    fn extension_agrees_with_brute_force() {
        for s in [
            "path(6)",
            "cycle(6)",
            "kmn_plus(2,3)",
            "star(4)",
            "complete_bipartite(3,3)",
        ] {
            let g = gen(s);
            let b = g.bipartition().unwrap();
            for m in all_matchings(&g) {
                let fast = extend_to_perfect_internal(&g, &b, &m);
                let slow = extend_to_perfect_internal_general(&g, &m, 1_000_000);
                let truth = brute_internal_extension(&g, &m);
                assert_eq!(fast.is_yes(), truth, "{s} {m:?}");
                assert_eq!(slow.is_yes(), truth, "{s} {m:?}");
                if let Verdict::No(ExtensionFailure::Hall { violator }) = &fast {
                    assert!(violator.verify(&g, &b));
                }
            }
        }
        // non-bipartite hosts use the search
        let p = gen("petersen");
        for m in k_matchings(&p, 2).unwrap().iter().take(20) {
            let r = extend_internal(&p, m, 1_000_000);
            if let Verdict::Yes(im) = r {
                assert!(im.verify(&p) && im.matching.is_superset_of(m));
            }
        }
    }

    #[test]
    fn internal_extendability_examples() {
        let tree = Graph::from_edges(7, [(0, 1), (1, 2), (1, 3), (3, 4), (4, 5), (4, 6)]).unwrap();
        assert!(is_k_internally_extendable(&tree, 1, 1000).unwrap().is_yes());
        assert!(is_k_internally_extendable(&gen("cycle(4)"), 2, 1000).unwrap().is_yes());
        let c6 = gen("cycle(6)");
        match is_k_internally_extendable(&c6, 2, 1000).unwrap() {
            Verdict::No(ExtendabilityFailure::NotExtendable { matching, .. }) => {
                assert_eq!(matching, edges_of(&c6, &[("1", "2"), ("4", "5")]));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            is_k_internally_extendable(&gen("star(3)"), 2, 1000).unwrap(),
            Verdict::No(ExtendabilityFailure::NoKMatching)
        ));
        assert_eq!(
            is_k_internally_extendable(&gen("disjoint_union(path(2),path(2))"), 1, 10).unwrap_err(),
            Error::Disconnected
        );
    }

    #[test]
    fn extendability_examples() {
        let c6 = gen("cycle(6)");
        assert!(is_k_extendable(&c6, 1, 1000).unwrap().is_yes());
        assert!(is_k_extendable(&c6, 2, 1000).unwrap().is_no());
        let k33 = gen("complete_bipartite(3,3)");
        assert!(is_k_extendable(&k33, 2, 1000).unwrap().is_yes());
        assert!(matches!(
            is_k_extendable(&gen("path(3)"), 2, 1000),
            Err(Error::TooFewVertices { .. })
        ));
    }

    #[test]
    fn plummer_examples() {
        let c6 = gen("cycle(6)");
        let b = c6.bipartition().unwrap();
        assert!(plummer_condition(&c6, &b, 1).unwrap().is_yes());
        match plummer_condition(&c6, &b, 2).unwrap() {
            Verdict::No(PlummerFailure::Violator { violator }) => {
                assert!(violator.verify(&c6, &b));
                assert_eq!(violator.side_subset.len(), 1);
                assert_eq!(violator.neighborhood.len(), 2);
            }
            other => panic!("{other:?}"),
        }
        let k43 = gen("complete_bipartite(4,3)");
        let b = k43.bipartition().unwrap();
        for k in 1..=2 {
            assert!(matches!(
                plummer_condition(&k43, &b, k).unwrap(),
                Verdict::No(PlummerFailure::Unbalanced { .. })
            ));
        }
    }
}
