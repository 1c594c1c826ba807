//! Graph operators: line graph, complement, complement of the line graph,
//! tensor product, disjoint union, and a small isomorphism tester.

use std::collections::HashSet;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::verdict::{Steps, Verdict};

/// A line graph (or its complement) that remembers which source edge each
/// vertex stands for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledLineGraph {
    pub graph: Graph,
    /// Vertex `i` of `graph` is source edge `i`, with these endpoints.
    pub edge_of_vertex: Vec<(usize, usize)>,
}

/// `L(g)`: vertices are the edges of `g`, adjacent when they share an endpoint.
pub fn line_graph(g: &Graph) -> LabeledLineGraph {
    let labels = (0..g.m()).map(|e| g.edge_label(e)).collect();
    let mut edges = Vec::new();
    for v in 0..g.n() {
        let inc = g.incident(v);
        for (i, &e) in inc.iter().enumerate() {
            for &f in &inc[i + 1..] {
                edges.push((e, f));
            }
        }
    }
    LabeledLineGraph {
        graph: Graph::new(labels, edges).expect("line graph"),
        edge_of_vertex: g.edges().to_vec(),
    }
}

pub fn complement(g: &Graph) -> Graph {
    let n = g.n();
    let mut edges = Vec::new();
    for u in 0..n {
        let nb = g.neighbors(u);
        for v in u + 1..n {
            if nb.binary_search(&v).is_err() {
                edges.push((u, v));
            }
        }
    }
    Graph::new(g.labels().to_vec(), edges).expect("complement")
}

/// Complement of the line graph, keeping the edge map.
///
/// Two vertices are adjacent exactly when the source edges are disjoint.
pub fn co_line(g: &Graph) -> Result<LabeledLineGraph> {
    if g.m() == 0 {
        return Err(Error::Edgeless);
    }
    let lg = line_graph(g);
    Ok(LabeledLineGraph {
        graph: complement(&lg.graph),
        edge_of_vertex: lg.edge_of_vertex,
    })
}

/// `g × h`: `(u1,v1) ~ (u2,v2)` iff `u1u2 ∈ E(g)` and `v1v2 ∈ E(h)`.
///
/// Vertex `(i, j)` gets id `i * h.n() + j` and label `"gi:hj"`.
pub fn tensor_product(g: &Graph, h: &Graph) -> Graph {
    let hn = h.n();
    let labels = (0..g.n())
        .flat_map(|i| (0..hn).map(move |j| (i, j)))
        .map(|(i, j)| format!("{}:{}", g.label(i), h.label(j)))
        .collect();
    let mut edges = Vec::new();
    for &(a, b) in g.edges() {
        for &(c, d) in h.edges() {
            edges.push((a * hn + c, b * hn + d));
            edges.push((a * hn + d, b * hn + c));
        }
    }
    Graph::new(labels, edges).expect("tensor product")
}

/// Side-by-side copies; on label collisions the copies are prefixed
/// `1.` and `2.`.
pub fn disjoint_union(g: &Graph, h: &Graph) -> Graph {
    let clash = {
        let mine: HashSet<&str> = g.labels().iter().map(String::as_str).collect();
        h.labels().iter().any(|l| mine.contains(l.as_str()))
    };
    let labels: Vec<String> = if clash {
        g.labels()
            .iter()
            .map(|l| format!("1.{l}"))
            .chain(h.labels().iter().map(|l| format!("2.{l}")))
            .collect()
    } else {
        g.labels().iter().chain(h.labels()).cloned().collect()
    };
    let off = g.n();
    let edges = g
        .edges()
        .iter()
        .copied()
        .chain(h.edges().iter().map(|&(u, v)| (u + off, v + off)));
    Graph::new(labels, edges).expect("disjoint union")
}

/// Why two graphs were found non-isomorphic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum NonIsomorphism {
    OrderOrSize,
    InvariantMismatch,
    SearchExhausted,
}

/// Backtracking isomorphism test. A returned mapping `map` sends vertex `v`
/// of `g` to `map[v]` in `h` and has been checked edge by edge.
pub fn is_isomorphic(g: &Graph, h: &Graph, budget: u64) -> Verdict<Vec<usize>, NonIsomorphism> {
    if g.n() != h.n() || g.m() != h.m() {
        return Verdict::No(NonIsomorphism::OrderOrSize);
    }
    let (mut a, mut b) = (invariants(g), invariants(h));
    a.sort();
    b.sort();
    if a != b {
        return Verdict::No(NonIsomorphism::InvariantMismatch);
    }
    match search_isomorphism(g, h, budget) {
        Ok(Some(map)) => {
            assert!(verify_isomorphism(g, h, &map), "isomorphism failed verification");
            Verdict::Yes(map)
        }
        Ok(None) => Verdict::No(NonIsomorphism::SearchExhausted),
        Err(_) => Verdict::Unknown(crate::verdict::Exhausted { budget }),
    }
}

/// `map` is a bijection preserving adjacency and non-adjacency.
pub fn verify_isomorphism(g: &Graph, h: &Graph, map: &[usize]) -> bool {
    if g.n() != h.n() || g.m() != h.m() || map.len() != g.n() {
        return false;
    }
    let mut used = vec![false; h.n()];
    for &w in map {
        if w >= h.n() || used[w] {
            return false;
        }
        used[w] = true;
    }
    // equal edge counts plus injective edge image gives both directions
    g.edges().iter().all(|&(u, v)| h.has_edge(map[u], map[v]))
}

/// Degree plus sorted neighbour degrees.
fn invariants(g: &Graph) -> Vec<(usize, Vec<usize>)> {
    (0..g.n())
        .map(|v| {
            let mut nd: Vec<usize> = g.neighbors(v).iter().map(|&w| g.degree(w)).collect();
            nd.sort_unstable();
            (g.degree(v), nd)
        })
        .collect()
}

fn search_isomorphism(g: &Graph, h: &Graph, budget: u64) -> Result<Option<Vec<usize>>> {
    let n = g.n();
    if n != h.n() || g.m() != h.m() {
        return Ok(None);
    }
    let ig = invariants(g);
    let ih = invariants(h);
    let bits = |x: &Graph| -> Vec<FixedBitSet> {
        (0..n)
            .map(|v| {
                let mut s = FixedBitSet::with_capacity(n);
                for &w in x.neighbors(v) {
                    s.insert(w);
                }
                s
            })
            .collect()
    };
    let (ag, ah) = (bits(g), bits(h));

    // vertex order: rarest invariant class first, then most mapped neighbours
    let class_size = |inv: &(usize, Vec<usize>)| ih.iter().filter(|x| *x == inv).count();
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    while order.len() < n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let linked = order.iter().filter(|&&u| ag[v].contains(u)).count();
                (linked, std::cmp::Reverse(class_size(&ig[v])), std::cmp::Reverse(v))
            })
            .expect("unplaced vertex");
        placed[next] = true;
        order.push(next);
    }

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut steps = Steps::new(budget);
    let ctx = IsoCtx {
        order: &order,
        ig: &ig,
        ih: &ih,
        ag: &ag,
        ah: &ah,
    };
    if ctx.extend(0, &mut map, &mut used, &mut steps)? {
        Ok(Some(map))
    } else {
        Ok(None)
    }
}

struct IsoCtx<'a> {
    order: &'a [usize],
    ig: &'a [(usize, Vec<usize>)],
    ih: &'a [(usize, Vec<usize>)],
    ag: &'a [FixedBitSet],
    ah: &'a [FixedBitSet],
}

impl IsoCtx<'_> {
    fn extend(&self, depth: usize, map: &mut [usize], used: &mut [bool], steps: &mut Steps) -> Result<bool> {
        if depth == self.order.len() {
            return Ok(true);
        }
        steps.tick()?;
        let v = self.order[depth];
        for w in 0..map.len() {
            if used[w] || self.ih[w] != self.ig[v] {
                continue;
            }
            let consistent = self.order[..depth]
                .iter()
                .all(|&u| self.ag[v].contains(u) == self.ah[w].contains(map[u]));
            if !consistent {
                continue;
            }
            map[v] = w;
            used[w] = true;
            if self.extend(depth + 1, map, used, steps)? {
                return Ok(true);
            }
            used[w] = false;
            map[v] = usize::MAX;
        }
        Ok(false)
    }
}
