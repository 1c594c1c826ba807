//! Recognizers for P5-constrained, equistarable bipartite graphs and forests,
//! the triangle condition, general partitionability, and a harness that
//! compares the properties of a triangle-free graph with those of the
//! complement of its line graph.

use rayon::prelude::*;

use crate::cliques::{enumerate_maximal_cliques, enumerate_maximal_stable_sets};
use crate::error::{Error, Result};
use crate::exact::{
    decide_equi_exact, stable_system, star_system, strong_check, verify_weighting, DecideOptions, SetSystem,
    DEFAULT_EXHAUSTIVE_LIMIT, DEFAULT_STRONG_LIMIT,
};
use crate::graph::Graph;
use crate::matching::{
    extend_to_perfect_internal, is_k_internally_extendable, k_matchings, ExtendabilityFailure, ExtensionFailure,
    Extensions, HallViolator, InternalMatching, Matching,
};
use crate::transforms::co_line;
use crate::verdict::{Answer, Exhausted, Verdict, DEFAULT_STEP_BUDGET};

// ---------------------------------------------------------------------------
// P5-constrained

/// A path `v1 v2 v3 v4 v5` (not necessarily induced) whose middle vertex has
/// degree 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct P5Path {
    pub vertices: [usize; 5],
}

impl P5Path {
    pub fn verify(&self, g: &Graph) -> bool {
        let p = self.vertices;
        let mut sorted = p;
        sorted.sort_unstable();
        p.iter().all(|&v| v < g.n())
            && sorted.windows(2).all(|w| w[0] != w[1])
            && p.windows(2).all(|w| g.has_edge(w[0], w[1]))
            && g.degree(p[2]) == 2
    }
}

/// Degree-2 vertices examined on a positive answer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct P5Checked {
    pub degree_two: Vec<usize>,
}

impl P5Checked {
    pub fn verify(&self, g: &Graph) -> bool {
        let twos: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) == 2).collect();
        twos == self.degree_two && is_p5_constrained(g).is_yes()
    }
}

/// Up to two neighbours of `x` outside `skip`.
fn two_others(g: &Graph, x: usize, skip: [usize; 2]) -> Vec<usize> {
    g.neighbors(x)
        .iter()
        .copied()
        .filter(|w| !skip.contains(w))
        .take(2)
        .collect()
}

/// Yes iff no 5-vertex path has a middle vertex of degree 2.
///
/// The reported path uses the smallest offending middle vertex.
pub fn is_p5_constrained(g: &Graph) -> Verdict<P5Checked, P5Path> {
    let mut degree_two = Vec::new();
    for v in 0..g.n() {
        if g.degree(v) != 2 {
            continue;
        }
        degree_two.push(v);
        let (x, y) = (g.neighbors(v)[0], g.neighbors(v)[1]);
        let left = two_others(g, x, [v, y]);
        let right = two_others(g, y, [v, x]);
        for &a in &left {
            if let Some(&b) = right.iter().find(|&&b| b != a) {
                return Verdict::No(P5Path {
                    vertices: [a, x, v, y, b],
                });
            }
        }
    }
    Verdict::Yes(P5Checked { degree_two })
}

// ---------------------------------------------------------------------------
// components: star or 2-internally extendable

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComponentTag {
    /// `K_{1,n}`; `center` is a component vertex adjacent to all others.
    Star {
        center: usize,
    },
    TwoInternallyExtendable(Extensions<InternalMatching>),
    Neither(ExtendabilityFailure),
    Unknown(Exhausted),
}

impl ComponentTag {
    pub fn name(&self) -> &'static str {
        match self {
            ComponentTag::Star { .. } => "star",
            ComponentTag::TwoInternallyExtendable(_) => "two_internally_extendable",
            ComponentTag::Neither(_) => "neither",
            ComponentTag::Unknown(_) => "unknown",
        }
    }
}

/// One component: its vertices in `g`, the induced graph, and its tag.
/// Matchings inside the tag use edge ids of `graph`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentEntry {
    pub vertices: Vec<usize>,
    pub graph: Graph,
    pub tag: ComponentTag,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentClassification {
    pub components: Vec<ComponentEntry>,
}

impl ComponentClassification {
    /// Every component is a star or 2-internally extendable.
    pub fn answer(&self) -> Answer {
        let mut out = Answer::Yes;
        for c in &self.components {
            match c.tag {
                ComponentTag::Neither(_) => return Answer::No,
                ComponentTag::Unknown(_) => out = Answer::Unknown,
                _ => {}
            }
        }
        out
    }

    /// Re-checks every tag against `g`. Exhaustive-search failures in
    /// non-bipartite components are re-run with `budget`.
    pub fn verify(&self, g: &Graph, budget: u64) -> bool {
        let comps = g.components();
        if comps.vertices.len() != self.components.len() {
            return false;
        }
        self.components.iter().zip(&comps.vertices).all(|(c, vs)| {
            if &c.vertices != vs || g.induced(vs).0 != c.graph {
                return false;
            }
            let h = &c.graph;
            match &c.tag {
                ComponentTag::Star { center } => {
                    *center < h.n() && h.n() >= 2 && h.m() == h.n() - 1 && h.degree(*center) == h.n() - 1
                }
                ComponentTag::TwoInternallyExtendable(x) => {
                    k_matchings(h, 2).is_ok_and(|ms| ms == x.k_matchings)
                        && !x.k_matchings.is_empty()
                        && x.extensions.len() == x.k_matchings.len()
                        && x.k_matchings
                            .iter()
                            .zip(&x.extensions)
                            .all(|(m, im)| im.verify(h) && im.matching.is_superset_of(m))
                }
                ComponentTag::Neither(ExtendabilityFailure::NoKMatching) => {
                    !is_star(h) && k_matchings(h, 2).is_ok_and(|ms| ms.is_empty())
                }
                ComponentTag::Neither(ExtendabilityFailure::NotExtendable { matching, failure }) => {
                    matching.len() == 2
                        && matching.is_valid_for(h)
                        && match failure {
                            ExtensionFailure::Hall { violator } => h.bipartition().is_ok_and(|b| {
                                violator.verify(h, &b) && violator.removed == covered_vertices(h, matching)
                            }),
                            ExtensionFailure::Exhaustive { .. } => {
                                crate::matching::extend_internal(h, matching, budget).is_no()
                            }
                        }
                }
                ComponentTag::Unknown(_) => true,
            }
        })
    }
}

fn covered_vertices(g: &Graph, m: &Matching) -> Vec<usize> {
    let c = m.covered(g);
    (0..g.n()).filter(|&v| c[v]).collect()
}

fn star_center(h: &Graph) -> Option<usize> {
    if h.n() < 2 || h.m() != h.n() - 1 {
        return None;
    }
    (0..h.n()).find(|&v| h.degree(v) == h.n() - 1)
}

fn is_star(h: &Graph) -> bool {
    star_center(h).is_some()
}

/// Tags each component as a star, 2-internally extendable, or neither.
///
/// `budget` bounds the exhaustive search used for non-bipartite components.
pub fn component_classification(g: &Graph, budget: u64) -> Result<ComponentClassification> {
    g.require_no_isolated()?;
    let comps = g.components();
    let components = comps
        .vertices
        .into_iter()
        .map(|vs| {
            let (h, _) = g.induced(&vs);
            let tag = match star_center(&h) {
                Some(center) => ComponentTag::Star { center },
                None => match is_k_internally_extendable(&h, 2, budget)? {
                    Verdict::Yes(x) => ComponentTag::TwoInternallyExtendable(x),
                    Verdict::No(f) => ComponentTag::Neither(f),
                    Verdict::Unknown(x) => ComponentTag::Unknown(x),
                },
            };
            Ok(ComponentEntry {
                vertices: vs,
                graph: h,
                tag,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ComponentClassification { components })
}

// ---------------------------------------------------------------------------
// equistarable bipartite graphs and forests

/// A 2-matching of `g` with no extension to a perfect internal matching.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FailingTwoMatching {
    pub matching: Matching,
    pub violator: HallViolator,
}

impl FailingTwoMatching {
    pub fn verify(&self, g: &Graph) -> bool {
        self.matching.len() == 2
            && self.matching.is_valid_for(g)
            && self.violator.removed == covered_vertices(g, &self.matching)
            && g.bipartition().is_ok_and(|b| self.violator.verify(g, &b))
    }
}

/// Equistarability of a bipartite graph: every 2-matching extends to a
/// perfect internal matching. The positive witness is the component
/// classification; the negative one is the first failing 2-matching in
/// lexicographic order of edge ids.
pub fn recognize_equistarable_bipartite(g: &Graph) -> Result<Verdict<ComponentClassification, FailingTwoMatching>> {
    let b = g.bipartition().map_err(|_| Error::NotBipartite)?;
    g.require_no_isolated()?;
    for m in k_matchings(g, 2)? {
        if let Verdict::No(ExtensionFailure::Hall { violator }) = extend_to_perfect_internal(g, &b, &m) {
            return Ok(Verdict::No(FailingTwoMatching { matching: m, violator }));
        }
    }
    let c = component_classification(g, DEFAULT_STEP_BUDGET)?;
    assert_eq!(
        c.answer(),
        Answer::Yes,
        "every 2-matching extends but some component is neither a star nor 2-internally extendable"
    );
    Ok(Verdict::Yes(c))
}

/// Each degree-2 vertex paired with a leaf neighbour.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeafNeighbours {
    pub pairs: Vec<(usize, usize)>,
}

impl LeafNeighbours {
    pub fn verify(&self, g: &Graph) -> bool {
        let twos: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) == 2).collect();
        twos.len() == self.pairs.len()
            && twos
                .iter()
                .zip(&self.pairs)
                .all(|(&v, &(w, leaf))| v == w && g.has_edge(v, leaf) && g.degree(leaf) == 1)
    }
}

/// Equistarability of a forest in linear time: every degree-2 vertex has a
/// leaf neighbour.
pub fn recognize_equistarable_forest(g: &Graph) -> Result<Verdict<LeafNeighbours, P5Path>> {
    if !g.is_forest() {
        return Err(Error::Cyclic);
    }
    g.require_no_isolated()?;
    let mut pairs = Vec::new();
    for v in 0..g.n() {
        if g.degree(v) != 2 {
            continue;
        }
        let (x, y) = (g.neighbors(v)[0], g.neighbors(v)[1]);
        if g.degree(x) == 1 {
            pairs.push((v, x));
        } else if g.degree(y) == 1 {
            pairs.push((v, y));
        } else {
            // no triangles or 4-cycles, so the two ends are distinct
            let a = *g.neighbors(x).iter().find(|&&w| w != v).expect("degree at least 2");
            let b = *g.neighbors(y).iter().find(|&&w| w != v).expect("degree at least 2");
            return Ok(Verdict::No(P5Path {
                vertices: [a, x, v, y, b],
            }));
        }
    }
    Ok(Verdict::Yes(LeafNeighbours { pairs }))
}

// ---------------------------------------------------------------------------
// triangle condition and general partition

fn adjacency_bits(g: &Graph) -> Vec<Vec<bool>> {
    let mut adj = vec![vec![false; g.n()]; g.n()];
    for &(u, v) in g.edges() {
        adj[u][v] = true;
        adj[v][u] = true;
    }
    adj
}

fn is_stable(adj: &[Vec<bool>], s: &[usize]) -> bool {
    s.iter()
        .enumerate()
        .all(|(i, &a)| s[i + 1..].iter().all(|&b| !adj[a][b]))
}

fn is_clique(adj: &[Vec<bool>], c: &[usize]) -> bool {
    c.iter()
        .enumerate()
        .all(|(i, &a)| c[i + 1..].iter().all(|&b| a != b && adj[a][b]))
}

/// Every vertex outside `s` has a neighbour in `s`.
fn dominates(adj: &[Vec<bool>], s: &[usize], n: usize) -> bool {
    (0..n).all(|v| s.contains(&v) || s.iter().any(|&w| adj[v][w]))
}

/// A maximal stable set `S` and an edge `uv` missing `S` with no vertex of
/// `S` adjacent to both ends.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleFailure {
    pub stable_set: Vec<usize>,
    pub edge: (usize, usize),
}

impl TriangleFailure {
    pub fn verify(&self, g: &Graph) -> bool {
        let adj = adjacency_bits(g);
        let s = &self.stable_set;
        let (u, v) = self.edge;
        s.iter().all(|&x| x < g.n())
            && u < g.n()
            && v < g.n()
            && is_stable(&adj, s)
            && dominates(&adj, s, g.n())
            && adj[u][v]
            && !s.contains(&u)
            && !s.contains(&v)
            && !s.iter().any(|&x| adj[x][u] && adj[x][v])
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleChecked {
    pub stable_sets: usize,
}

impl TriangleChecked {
    /// Re-runs the check pair by pair, without the bitset shortcut.
    pub fn verify(&self, g: &Graph, budget: u64) -> bool {
        let Ok(sets) = enumerate_maximal_stable_sets(g, budget) else {
            return false;
        };
        sets.len() == self.stable_sets
            && sets.iter().all(|s| {
                g.edges().iter().all(|&(u, v)| {
                    s.contains(&u) || s.contains(&v) || s.iter().any(|&x| g.has_edge(x, u) && g.has_edge(x, v))
                })
            })
    }
}

/// For every maximal stable set `S` and edge `uv` disjoint from it, some
/// `s ∈ S` forms a triangle with `uv`. Budget exhaustion gives `Unknown`.
pub fn triangle_condition(g: &Graph, budget: u64) -> Result<Verdict<TriangleChecked, TriangleFailure>> {
    let sets = match enumerate_maximal_stable_sets(g, budget) {
        Err(Error::BudgetExhausted(b)) => return Ok(Verdict::Unknown(Exhausted { budget: b })),
        r => r?,
    };
    let adj = adjacency_bits(g);
    let mut inside = vec![false; g.n()];
    for s in &sets {
        for &x in s {
            inside[x] = true;
        }
        for &(u, v) in g.edges() {
            if inside[u] || inside[v] {
                continue;
            }
            if !s.iter().any(|&x| adj[x][u] && adj[x][v]) {
                return Ok(Verdict::No(TriangleFailure {
                    stable_set: s.clone(),
                    edge: (u, v),
                }));
            }
        }
        for &x in s {
            inside[x] = false;
        }
    }
    Ok(Verdict::Yes(TriangleChecked {
        stable_sets: sets.len(),
    }))
}

/// Each edge mapped to a strong clique (one meeting every maximal stable
/// set) containing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrongCliqueMap {
    /// Distinct strong cliques used, sorted.
    pub cliques: Vec<Vec<usize>>,
    /// `clique_of_edge[e]` indexes `cliques`.
    pub clique_of_edge: Vec<usize>,
}

/// True when no maximal stable set avoids `c`. Checked without listing the
/// maximal stable sets of `g`: one avoiding `c` exists iff some maximal
/// stable set of `g - c` dominates `c`.
fn is_strong_clique(g: &Graph, adj: &[Vec<bool>], c: &[usize], budget: u64) -> Result<bool> {
    let rest: Vec<usize> = (0..g.n()).filter(|v| !c.contains(v)).collect();
    let (h, ids) = g.induced(&rest);
    for s in enumerate_maximal_stable_sets(&h, budget)? {
        let s: Vec<usize> = s.iter().map(|&i| ids[i]).collect();
        if c.iter().all(|&x| s.iter().any(|&w| adj[x][w])) {
            return Ok(false);
        }
    }
    Ok(true)
}

impl StrongCliqueMap {
    pub fn verify(&self, g: &Graph, budget: u64) -> bool {
        let adj = adjacency_bits(g);
        self.clique_of_edge.len() == g.m()
            && self.clique_of_edge.iter().enumerate().all(|(e, &i)| {
                let (u, v) = g.edge(e);
                self.cliques.get(i).is_some_and(|c| c.contains(&u) && c.contains(&v))
            })
            && self.cliques.iter().all(|c| {
                c.iter().all(|&x| x < g.n())
                    && is_clique(&adj, c)
                    && is_strong_clique(g, &adj, c, budget).unwrap_or(false)
            })
    }
}

/// An edge none of whose maximal cliques is strong; each such clique is
/// listed with a maximal stable set avoiding it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NoStrongClique {
    pub edge: usize,
    pub misses: Vec<(Vec<usize>, Vec<usize>)>,
}

impl NoStrongClique {
    /// The listed cliques must be exactly the maximal cliques through the
    /// edge, recomputed from the common neighbourhood of its ends.
    pub fn verify(&self, g: &Graph, budget: u64) -> bool {
        if self.edge >= g.m() {
            return false;
        }
        let adj = adjacency_bits(g);
        let (u, v) = g.edge(self.edge);
        let common: Vec<usize> = (0..g.n()).filter(|&w| adj[u][w] && adj[v][w]).collect();
        let (h, ids) = g.induced(&common);
        let Ok(inner) = enumerate_maximal_cliques(&h, budget) else {
            return false;
        };
        let mut through: Vec<Vec<usize>> = inner
            .into_iter()
            .map(|c| {
                let mut k: Vec<usize> = c.iter().map(|&i| ids[i]).chain([u, v]).collect();
                k.sort_unstable();
                k
            })
            .collect();
        through.sort();
        let mut listed: Vec<Vec<usize>> = self.misses.iter().map(|(c, _)| c.clone()).collect();
        listed.sort();
        listed == through
            && self.misses.iter().all(|(c, s)| {
                s.iter().all(|&x| x < g.n())
                    && is_stable(&adj, s)
                    && dominates(&adj, s, g.n())
                    && !s.iter().any(|x| c.contains(x))
            })
    }
}

/// Every edge lies in a strong clique. Maximal cliques through each edge are
/// tried in lexicographic order; the first strong one is used.
pub fn general_partition(g: &Graph, budget: u64) -> Result<Verdict<StrongCliqueMap, NoStrongClique>> {
    Verdict::from_result(general_partition_inner(g, budget))
}

fn general_partition_inner(g: &Graph, budget: u64) -> Result<Verdict<StrongCliqueMap, NoStrongClique>> {
    let cliques = enumerate_maximal_cliques(g, budget)?;
    let stables = enumerate_maximal_stable_sets(g, budget)?;
    let mut member = vec![vec![false; g.n()]; stables.len()];
    for (i, s) in stables.iter().enumerate() {
        for &x in s {
            member[i][x] = true;
        }
    }
    let missed_by = |c: &[usize]| (0..stables.len()).find(|&i| !c.iter().any(|&x| member[i][x]));
    let strong: Vec<Option<usize>> = cliques.iter().map(|c| missed_by(c)).collect();

    let mut used: Vec<usize> = Vec::new();
    let mut choice = Vec::with_capacity(g.m());
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let through: Vec<usize> = (0..cliques.len())
            .filter(|&i| cliques[i].contains(&u) && cliques[i].contains(&v))
            .collect();
        match through.iter().find(|&&i| strong[i].is_none()) {
            Some(&i) => {
                choice.push(i);
                used.push(i);
            }
            None => {
                let misses = through
                    .iter()
                    .map(|&i| (cliques[i].clone(), stables[strong[i].expect("not strong")].clone()))
                    .collect();
                return Ok(Verdict::No(NoStrongClique { edge: e, misses }));
            }
        }
    }
    used.sort_unstable();
    used.dedup();
    let clique_of_edge = choice
        .iter()
        .map(|i| used.binary_search(i).expect("recorded"))
        .collect();
    Ok(Verdict::Yes(StrongCliqueMap {
        cliques: used.iter().map(|&i| cliques[i].clone()).collect(),
        clique_of_edge,
    }))
}

// ---------------------------------------------------------------------------
// cross-check harness

/// Limits for [`crosscheck_table1`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CrosscheckOptions {
    /// Step budget for enumerations and exhaustive matching search.
    pub budget: u64,
    /// Row 2 is evaluated only when `g` has at most this many edges.
    pub strong_limit: usize,
    pub exhaustive_limit: usize,
    pub seed: u64,
}

impl Default for CrosscheckOptions {
    fn default() -> Self {
        CrosscheckOptions {
            budget: DEFAULT_STEP_BUDGET,
            strong_limit: DEFAULT_STRONG_LIMIT,
            exhaustive_limit: DEFAULT_EXHAUSTIVE_LIMIT,
            seed: 0,
        }
    }
}

/// Property of `g` (left) and of the complement of its line graph (right).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    pub left_property: &'static str,
    pub right_property: &'static str,
    pub left: Answer,
    pub right: Answer,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table1Report {
    pub rows: Vec<Row>,
    /// Broken equivalences, broken implications and rejected witnesses.
    /// Always empty unless something is wrong.
    pub violations: Vec<String>,
    pub witnesses_checked: usize,
}

pub const ROW_PROPERTIES: [(&str, &str); 4] = [
    (
        "every component a star or 2-internally extendable",
        "general partitionable",
    ),
    ("strongly equistarable", "strongly equistable"),
    ("equistarable", "equistable"),
    ("P5-constrained", "triangle condition"),
];

/// Answer plus whether its witness re-validated (`None`: nothing to check).
type Evaluated = (Answer, Option<bool>);

fn settle<Y, N>(
    r: Result<Verdict<Y, N>>,
    check_yes: impl FnOnce(&Y) -> Option<bool>,
    check_no: impl FnOnce(&N) -> Option<bool>,
) -> Result<Evaluated> {
    match r {
        Ok(Verdict::Yes(y)) => Ok((Answer::Yes, check_yes(&y))),
        Ok(Verdict::No(n)) => Ok((Answer::No, check_no(&n))),
        Ok(Verdict::Unknown(_)) | Err(Error::BudgetExhausted(_)) | Err(Error::TooLarge { .. }) => {
            Ok((Answer::Unknown, None))
        }
        Err(e) => Err(e),
    }
}

fn equi(s: &SetSystem, o: &CrosscheckOptions) -> Result<Evaluated> {
    let opts = DecideOptions {
        seed: o.seed,
        exhaustive_limit: o.exhaustive_limit,
    };
    settle(
        decide_equi_exact(s, &opts),
        |w| Some(verify_weighting(s, w, o.exhaustive_limit).is_ok_and(|v| v.is_yes())),
        |r| Some(r.verify(s)),
    )
}

fn strong(s: &SetSystem, o: &CrosscheckOptions) -> Result<Evaluated> {
    settle(
        strong_check(s, o.strong_limit),
        |y| Some(y.verify(s)),
        |r| Some(r.verify(s)),
    )
}

/// Evaluates the four rows on a triangle-free graph without isolated
/// vertices, checks each row's two answers agree, checks the downward
/// implications on each side, and re-validates every witness.
///
/// Sub-verdicts run in parallel; the report does not depend on their order.
pub fn crosscheck_table1(g: &Graph, o: &CrosscheckOptions) -> Result<Table1Report> {
    if g.m() == 0 {
        return Err(Error::Edgeless);
    }
    g.require_no_isolated()?;
    g.require_triangle_free()?;
    let lg = co_line(g)?.graph;
    let stars = star_system(g)?;
    let stables = stable_system(&lg, o.budget)?;

    let job = |k: usize| -> Result<Evaluated> {
        match k {
            0 => {
                let c = component_classification(g, o.budget)?;
                let a = c.answer();
                let ok = (a != Answer::Unknown).then(|| c.verify(g, o.budget));
                Ok((a, ok))
            }
            1 => settle(
                general_partition(&lg, o.budget),
                |m| Some(m.verify(&lg, o.budget)),
                |n| Some(n.verify(&lg, o.budget)),
            ),
            2 => strong(&stars, o),
            3 => strong(&stables, o),
            4 => equi(&stars, o),
            5 => equi(&stables, o),
            6 => settle(Ok(is_p5_constrained(g)), |y| Some(y.verify(g)), |p| Some(p.verify(g))),
            _ => settle(
                triangle_condition(&lg, o.budget),
                |y| Some(y.verify(&lg, o.budget)),
                |t| Some(t.verify(&lg)),
            ),
        }
    };
    let evaluated = (0..8usize).into_par_iter().map(job).collect::<Result<Vec<_>>>()?;

    let mut violations = Vec::new();
    let mut witnesses_checked = 0;
    let mut rows = Vec::new();
    for (i, (lp, rp)) in ROW_PROPERTIES.iter().enumerate() {
        let (left, lok) = evaluated[2 * i];
        let (right, rok) = evaluated[2 * i + 1];
        for (ok, side) in [(lok, lp), (rok, rp)] {
            match ok {
                Some(true) => witnesses_checked += 1,
                Some(false) => violations.push(format!("row {}: witness for `{side}` rejected", i + 1)),
                None => {}
            }
        }
        if left != Answer::Unknown && right != Answer::Unknown && left != right {
            violations.push(format!("row {}: `{lp}` is {left} but `{rp}` is {right}", i + 1));
        }
        rows.push(Row {
            left_property: lp,
            right_property: rp,
            left,
            right,
        });
    }
    for side in 0..2 {
        let answers: Vec<Answer> = (0..4).map(|i| evaluated[2 * i + side].0).collect();
        for i in 0..4 {
            for j in i + 1..4 {
                if answers[i] == Answer::Yes && answers[j] == Answer::No {
                    let names = |k: usize| {
                        if side == 0 {
                            ROW_PROPERTIES[k].0
                        } else {
                            ROW_PROPERTIES[k].1
                        }
                    };
                    violations.push(format!("`{}` holds but `{}` fails", names(i), names(j)));
                }
            }
        }
    }
    Ok(Table1Report {
        rows,
        violations,
        witnesses_checked,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{generate, Family};
    use crate::graph::parse_edge_list;

    fn gen(f: Family) -> Graph {
        generate(&f).unwrap()
    }

    #[test]
    fn p5_examples() {
        let p5 = gen(Family::Path(5));
        match is_p5_constrained(&p5) {
            Verdict::No(p) => {
                assert_eq!(p.vertices, [0, 1, 2, 3, 4]);
                assert!(p.verify(&p5));
            }
            v => panic!("{v:?}"),
        }
        assert!(is_p5_constrained(&gen(Family::Petersen)).is_yes());
        assert!(is_p5_constrained(&gen(Family::CompleteBipartite(4, 3))).is_yes());
        assert!(is_p5_constrained(&gen(Family::Path(4))).is_yes());
        // the two outer neighbours coincide: C4
        assert!(is_p5_constrained(&gen(Family::Cycle(4))).is_yes());
        assert!(is_p5_constrained(&gen(Family::Cycle(5))).is_no());
    }

    #[test]
    fn bipartite_examples() {
        let k43 = gen(Family::CompleteBipartite(4, 3));
        let v = recognize_equistarable_bipartite(&k43).unwrap();
        assert!(v.no().unwrap().verify(&k43));
        let c4 = gen(Family::Cycle(4));
        let v = recognize_equistarable_bipartite(&c4).unwrap();
        assert!(v.yes().unwrap().verify(&c4, 1000));
        let kp = gen(Family::KmnPlus(2, 3));
        assert!(recognize_equistarable_bipartite(&kp).unwrap().is_no());
        assert_eq!(
            recognize_equistarable_bipartite(&gen(Family::Cycle(5))),
            Err(Error::NotBipartite)
        );
        let iso = parse_edge_list("v 1\nv 2\nv 3\n1 2\n").unwrap();
        assert!(matches!(
            recognize_equistarable_bipartite(&iso),
            Err(Error::IsolatedVertex(_))
        ));
    }

    fn spider(legs: usize, len: usize) -> Graph {
        let mut text = String::new();
        for l in 0..legs {
            let mut prev = "c".to_string();
            for i in 0..len {
                let cur = format!("l{l}_{i}");
                text.push_str(&format!("{prev} {cur}\n"));
                prev = cur;
            }
        }
        parse_edge_list(&text).unwrap()
    }

    #[test]
    fn forest_examples() {
        assert!(recognize_equistarable_forest(&gen(Family::Path(4))).unwrap().is_yes());
        let p5 = gen(Family::Path(5));
        assert!(recognize_equistarable_forest(&p5).unwrap().no().unwrap().verify(&p5));
        let s2 = spider(3, 2);
        let v = recognize_equistarable_forest(&s2).unwrap();
        assert!(v.yes().unwrap().verify(&s2));
        let s3 = spider(3, 3);
        assert!(recognize_equistarable_forest(&s3).unwrap().is_no());
        assert!(recognize_equistarable_bipartite(&s3).unwrap().is_no());
        assert_eq!(
            recognize_equistarable_forest(&gen(Family::Cycle(4))),
            Err(Error::Cyclic)
        );
    }

    #[test]
    fn classification_examples() {
        let g = gen(Family::DisjointUnion(
            Box::new(Family::Star(5)),
            Box::new(Family::Cycle(4)),
        ));
        let c = component_classification(&g, 1000).unwrap();
        let names: Vec<&str> = c.components.iter().map(|e| e.tag.name()).collect();
        assert_eq!(names, ["star", "two_internally_extendable"]);
        assert!(c.verify(&g, 1000));

        let c6 = gen(Family::Cycle(6));
        let c = component_classification(&c6, 1000).unwrap();
        match &c.components[0].tag {
            ComponentTag::Neither(ExtendabilityFailure::NotExtendable { matching, .. }) => {
                let h = &c.components[0].graph;
                let labels: Vec<String> = matching.edges().iter().map(|&e| h.edge_label(e)).collect();
                assert_eq!(labels, ["1-2", "4-5"]);
            }
            t => panic!("{t:?}"),
        }
        assert!(c.verify(&c6, 1000));

        let k2 = gen(Family::Path(2));
        let c = component_classification(&k2, 1000).unwrap();
        assert_eq!(c.components[0].tag.name(), "star");
    }

    #[test]
    fn triangle_condition_examples() {
        assert!(triangle_condition(&gen(Family::Complete(3)), 1000).unwrap().is_yes());
        let cl = co_line(&gen(Family::Path(5))).unwrap().graph;
        let v = triangle_condition(&cl, 1000).unwrap();
        assert!(v.no().unwrap().verify(&cl));
        let cl = co_line(&gen(Family::CompleteBipartite(4, 3))).unwrap().graph;
        assert!(triangle_condition(&cl, 100_000).unwrap().is_yes());
    }

    #[test]
    fn general_partition_examples() {
        let k3 = gen(Family::Complete(3));
        let v = general_partition(&k3, 1000).unwrap();
        let m = v.yes().unwrap();
        assert_eq!(m.cliques, vec![vec![0, 1, 2]]);
        assert!(m.verify(&k3, 1000));
        let cl = co_line(&gen(Family::Cycle(6))).unwrap().graph;
        let v = general_partition(&cl, 10_000).unwrap();
        assert!(v.no().unwrap().verify(&cl, 10_000));
        let cl = co_line(&gen(Family::Cycle(4))).unwrap().graph;
        let v = general_partition(&cl, 10_000).unwrap();
        assert!(v.yes().unwrap().verify(&cl, 10_000));
        assert!(general_partition(&gen(Family::Petersen), 3).unwrap().answer() == Answer::Unknown);
    }

    fn answers(r: &Table1Report) -> Vec<(Answer, Answer)> {
        r.rows.iter().map(|x| (x.left, x.right)).collect()
    }

    #[test]
    fn crosscheck_examples() {
        use Answer::*;
        let o = CrosscheckOptions::default();
        let r = crosscheck_table1(&gen(Family::Path(5)), &o).unwrap();
        assert_eq!(answers(&r), vec![(No, No); 4]);
        assert!(r.violations.is_empty(), "{:?}", r.violations);
        let r = crosscheck_table1(&gen(Family::CompleteBipartite(3, 3)), &o).unwrap();
        assert_eq!(answers(&r), vec![(Yes, Yes); 4]);
        assert!(r.violations.is_empty(), "{:?}", r.violations);
        assert!(matches!(
            crosscheck_table1(&gen(Family::Complete(3)), &o),
            Err(Error::TriangleFound(_))
        ));
    }
}
