//! Simple undirected graphs with stable vertex and edge ids.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};

/// A finite simple undirected graph.
///
/// Vertices are `0..n`, each with an external string label. Edges are stored
/// once as `(u, v)` with `u < v`, sorted; edge ids are positions in that
/// order and never change for a given value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    edges: Vec<(usize, usize)>,
    // neighbours of v are adjacency[offsets[v]..offsets[v + 1]], sorted;
    // incident holds the matching edge ids
    offsets: Vec<usize>,
    adjacency: Vec<usize>,
    incident: Vec<usize>,
}

impl Graph {
    /// Builds a graph from labels and an edge list over label indices.
    ///
    /// Duplicate edges collapse; self-loops and duplicate labels are rejected.
    pub fn new<I>(labels: Vec<String>, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let n = labels.len();
        let mut index = HashMap::with_capacity(n);
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::InvalidParameter(format!("duplicate vertex label `{l}`")));
            }
        }
        let mut list = Vec::new();
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { id: x, n });
                }
            }
            if u == v {
                return Err(Error::LoopEdge(u));
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        list.dedup();

        let mut offsets = vec![0usize; n + 1];
        for &(u, v) in &list {
            offsets[u + 1] += 1;
            offsets[v + 1] += 1;
        }
        for v in 0..n {
            offsets[v + 1] += offsets[v];
        }
        let mut fill = offsets.clone();
        let mut slots = vec![(0usize, 0usize); 2 * list.len()];
        for (e, &(u, v)) in list.iter().enumerate() {
            slots[fill[u]] = (v, e);
            fill[u] += 1;
            slots[fill[v]] = (u, e);
            fill[v] += 1;
        }
        for v in 0..n {
            slots[offsets[v]..offsets[v + 1]].sort_unstable();
        }
        let (adjacency, incident) = slots.into_iter().unzip();
        Ok(Graph {
            labels,
            index,
            edges: list,
            offsets,
            adjacency,
            incident,
        })
    }

    /// Graph on `0..n` labelled by the decimal vertex id.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Graph::new((0..n).map(|i| i.to_string()).collect(), edges)
    }

    pub fn edgeless(n: usize) -> Graph {
        Graph::from_edges(n, std::iter::empty()).expect("edgeless graph")
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Edge ids incident with `v`, parallel to [`Graph::neighbors`].
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incident[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        if u >= self.n() || v >= self.n() {
            return None;
        }
        self.neighbors(u).binary_search(&v).ok().map(|i| self.incident(u)[i])
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_id(u, v).is_some()
    }

    /// `"u-v"` in external labels.
    pub fn edge_label(&self, e: usize) -> String {
        let (u, v) = self.edges[e];
        format!("{}-{}", self.labels[u], self.labels[v])
    }

    /// Resolves `"u-v"` (either orientation) to an edge id.
    pub fn edge_by_label(&self, name: &str) -> Option<usize> {
        // labels may themselves contain '-', so try every split point
        name.match_indices('-').find_map(|(i, _)| {
            let u = self.vertex(&name[..i])?;
            let v = self.vertex(&name[i + 1..])?;
            self.edge_id(u, v)
        })
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn isolated_vertex(&self) -> Option<usize> {
        (0..self.n()).find(|&v| self.degree(v) == 0)
    }

    pub fn require_no_isolated(&self) -> Result<()> {
        match self.isolated_vertex() {
            Some(v) => Err(Error::IsolatedVertex(self.labels[v].clone())),
            None => Ok(()),
        }
    }

    pub fn is_connected(&self) -> bool {
        self.n() == 0 || self.component_count() == 1
    }

    pub fn require_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::Disconnected)
        }
    }

    /// Connected components, labelled in BFS order from the smallest
    /// unvisited vertex.
    pub fn components(&self) -> ComponentDecomposition {
        let n = self.n();
        let mut component_of = vec![usize::MAX; n];
        let mut vertices = Vec::new();
        let mut queue = VecDeque::new();
        for s in 0..n {
            if component_of[s] != usize::MAX {
                continue;
            }
            let c = vertices.len();
            let mut members = vec![s];
            component_of[s] = c;
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                for &w in self.neighbors(u) {
                    if component_of[w] == usize::MAX {
                        component_of[w] = c;
                        members.push(w);
                        queue.push_back(w);
                    }
                }
            }
            members.sort_unstable();
            vertices.push(members);
        }
        let mut edges = vec![Vec::new(); vertices.len()];
        for (e, &(u, _)) in self.edges.iter().enumerate() {
            edges[component_of[u]].push(e);
        }
        ComponentDecomposition {
            component_of,
            vertices,
            edges,
        }
    }

    /// Two-colours the graph, or returns an odd closed walk.
    ///
    /// In each component the side holding the smallest vertex id is `A`.
    pub fn bipartition(&self) -> std::result::Result<Bipartition, OddCycle> {
        let n = self.n();
        let mut colour: Vec<Option<bool>> = vec![None; n];
        let mut parent = vec![usize::MAX; n];
        let mut depth = vec![0usize; n];
        let mut queue = VecDeque::new();
        for s in 0..n {
            if colour[s].is_some() {
                continue;
            }
            colour[s] = Some(true);
            queue.push_back(s);
            while let Some(u) = queue.pop_front() {
                let cu = colour[u].expect("coloured");
                for &w in self.neighbors(u) {
                    match colour[w] {
                        None => {
                            colour[w] = Some(!cu);
                            parent[w] = u;
                            depth[w] = depth[u] + 1;
                            queue.push_back(w);
                        }
                        Some(cw) if cw == cu => {
                            return Err(OddCycle::from_tree(u, w, &parent, &depth));
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        let in_a: Vec<bool> = colour.into_iter().map(|c| c.expect("coloured")).collect();
        Ok(Bipartition::from_sides(in_a))
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_ok()
    }

    /// A triangle `[a, b, c]` with `a < b < c`, if any.
    pub fn find_triangle(&self) -> Option<[usize; 3]> {
        for &(u, v) in &self.edges {
            let (nu, nv) = (self.neighbors(u), self.neighbors(v));
            let (mut i, mut j) = (0, 0);
            while i < nu.len() && j < nv.len() {
                match nu[i].cmp(&nv[j]) {
                    std::cmp::Ordering::Less => i += 1,
                    std::cmp::Ordering::Greater => j += 1,
                    std::cmp::Ordering::Equal => {
                        let mut t = [u, v, nu[i]];
                        t.sort_unstable();
                        return Some(t);
                    }
                }
            }
        }
        None
    }

    pub fn is_triangle_free(&self) -> bool {
        self.find_triangle().is_none()
    }

    pub fn require_triangle_free(&self) -> Result<()> {
        match self.find_triangle() {
            Some(t) => Err(Error::TriangleFound(t.map(|v| self.labels[v].clone()))),
            None => Ok(()),
        }
    }

    /// Number of connected components, by depth-first search in `O(n + m)`.
    pub fn component_count(&self) -> usize {
        let mut seen = vec![false; self.n()];
        let mut stack = Vec::new();
        let mut count = 0;
        for s in 0..self.n() {
            if seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            stack.push(s);
            while let Some(u) = stack.pop() {
                for &w in self.neighbors(u) {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        count
    }

    /// `m == n - c` characterises forests.
    pub fn is_forest(&self) -> bool {
        self.m() + self.component_count() == self.n()
    }

    /// Subgraph induced by `vertices`, together with the new-to-old vertex map.
    pub fn induced(&self, vertices: &[usize]) -> (Graph, Vec<usize>) {
        let mut keep: Vec<usize> = vertices.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let mut new_id = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            new_id[v] = i;
        }
        let labels = keep.iter().map(|&v| self.labels[v].clone()).collect();
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| new_id[u] != usize::MAX && new_id[v] != usize::MAX)
            .map(|&(u, v)| (new_id[u], new_id[v]));
        (Graph::new(labels, edges).expect("induced subgraph"), keep)
    }

    /// Same graph with vertex `v` moved to position `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n());
        let mut labels = vec![String::new(); self.n()];
        for (v, &p) in perm.iter().enumerate() {
            labels[p] = self.labels[v].clone();
        }
        let edges = self.edges.iter().map(|&(u, v)| (perm[u], perm[v]));
        Graph::new(labels, edges).expect("permutation")
    }

    pub fn with_labels(&self, labels: Vec<String>) -> Result<Graph> {
        if labels.len() != self.n() {
            return Err(Error::InvalidParameter("label count mismatch".into()));
        }
        Graph::new(labels, self.edges.iter().copied())
    }

    /// Renders the graph in the edge-list format.
    ///
    /// Lines are ordered so that re-parsing reproduces the same vertex ids:
    /// each vertex is introduced, in id order, either by an edge to a
    /// smaller neighbour or by a `v <label>` line.
    pub fn to_edge_list(&self) -> String {
        let n = self.n();
        let mut out = String::new();
        let mut emitted = vec![false; n];
        let mut seen = vec![false; n];
        let smaller = |k: usize| -> &[usize] {
            let a = self.neighbors(k);
            &a[..a.partition_point(|&w| w < k)]
        };
        let emit_group = |k: usize, out: &mut String, seen: &mut Vec<bool>| {
            for &u in smaller(k) {
                let _ = writeln!(out, "{} {}", self.labels[u], self.labels[k]);
                seen[u] = true;
            }
            seen[k] = true;
        };
        for k in 0..n {
            if !seen[k] && smaller(k).is_empty() {
                if k + 1 < n && smaller(k + 1) == [k] {
                    emit_group(k + 1, &mut out, &mut seen);
                    emitted[k + 1] = true;
                } else {
                    let _ = writeln!(out, "v {}", self.labels[k]);
                    seen[k] = true;
                }
            }
            if !emitted[k] {
                emit_group(k, &mut out, &mut seen);
                emitted[k] = true;
            }
        }
        out
    }
}

/// Parses the edge-list format.
///
/// One edge per line as two whitespace-separated labels; `#` starts a
/// comment line; `v <label>` declares a vertex. Vertices are numbered in
/// order of first appearance.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut labels: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut edges = Vec::new();
    let mut intern = |s: &str, labels: &mut Vec<String>| -> usize {
        *index.entry(s.to_string()).or_insert_with(|| {
            labels.push(s.to_string());
            labels.len() - 1
        })
    };
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let lineno = i + 1;
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(Error::Malformed {
                line: lineno,
                text: raw.to_string(),
            });
        }
        if tokens[0] == "v" {
            intern(tokens[1], &mut labels);
            continue;
        }
        if tokens[0] == tokens[1] {
            return Err(Error::SelfLoop {
                line: lineno,
                label: tokens[0].to_string(),
            });
        }
        let u = intern(tokens[0], &mut labels);
        let v = intern(tokens[1], &mut labels);
        edges.push((u, v));
    }
    Graph::new(labels, edges)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentDecomposition {
    pub component_of: Vec<usize>,
    /// Sorted vertex ids per component.
    pub vertices: Vec<Vec<usize>>,
    /// Edge ids per component, ascending.
    pub edges: Vec<Vec<usize>>,
}

impl ComponentDecomposition {
    pub fn count(&self) -> usize {
        self.vertices.len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.vertices.iter().map(Vec::len).collect()
    }
}

/// A proper two-colouring `{A, B}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Bipartition {
    pub side_a: Vec<usize>,
    pub side_b: Vec<usize>,
    #[serde(skip)]
    in_a: Vec<bool>,
}

impl Bipartition {
    pub fn from_sides(in_a: Vec<bool>) -> Bipartition {
        let side_a = (0..in_a.len()).filter(|&v| in_a[v]).collect();
        let side_b = (0..in_a.len()).filter(|&v| !in_a[v]).collect();
        Bipartition { side_a, side_b, in_a }
    }

    pub fn in_a(&self, v: usize) -> bool {
        self.in_a[v]
    }

    /// True when the sides partition `V(g)` and every edge crosses.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        self.in_a.len() == g.n()
            && self.side_a.len() + self.side_b.len() == g.n()
            && g.edges().iter().all(|&(u, v)| self.in_a[u] != self.in_a[v])
    }
}

/// An odd closed walk `w0 w1 ... w(k-1) w0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OddCycle {
    pub walk: Vec<usize>,
}

impl OddCycle {
    fn from_tree(u: usize, w: usize, parent: &[usize], depth: &[usize]) -> OddCycle {
        let (mut a, mut b) = (u, w);
        let mut left = vec![a];
        let mut right = vec![b];
        while depth[a] > depth[b] {
            a = parent[a];
            left.push(a);
        }
        while depth[b] > depth[a] {
            b = parent[b];
            right.push(b);
        }
        while a != b {
            a = parent[a];
            b = parent[b];
            left.push(a);
            right.push(b);
        }
        right.pop();
        right.reverse();
        left.extend(right);
        OddCycle { walk: left }
    }

    pub fn len(&self) -> usize {
        self.walk.len()
    }

    pub fn is_empty(&self) -> bool {
        self.walk.is_empty()
    }

    pub fn verify(&self, g: &Graph) -> bool {
        let k = self.walk.len();
        k % 2 == 1 && (0..k).all(|i| g.has_edge(self.walk[i], self.walk[(i + 1) % k]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn parses_path() {
        let g = parse_edge_list("1 2\n2 3").unwrap();
        assert_eq!((g.n(), g.m()), (3, 2));
        assert_eq!(g.labels(), ["1", "2", "3"]);
    }

    #[test]
    fn parse_dedups_and_skips_comments() {
        let g = parse_edge_list("a b\nb a\n# comment").unwrap();
        assert_eq!((g.n(), g.m()), (2, 1));
    }

    #[test]
    fn parse_rejects_loop_and_garbage() {
        assert_eq!(
            parse_edge_list("x x"),
            Err(Error::SelfLoop {
                line: 1,
                label: "x".into()
            })
        );
        assert!(matches!(
            parse_edge_list("a b\n\na b c"),
            Err(Error::Malformed { line: 3, .. })
        ));
    }

    #[test]
    fn parse_isolated_declaration() {
        let g = parse_edge_list("v z\na b").unwrap();
        assert_eq!(g.labels(), ["z", "a", "b"]);
        assert_eq!(g.isolated_vertex(), Some(0));
    }

    #[test]
    fn components_basic() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(g.components().sizes(), vec![2, 2]);
        assert_eq!(cycle(6).components().count(), 1);
        assert_eq!(Graph::edgeless(3).components().count(), 3);
    }

    #[test]
    fn bipartition_examples() {
        let b = cycle(4).bipartition().unwrap();
        assert_eq!(b.side_a, vec![0, 2]);
        assert_eq!(b.side_b, vec![1, 3]);
        let c5 = cycle(5);
        let odd = c5.bipartition().unwrap_err();
        assert_eq!(odd.len(), 5);
        assert!(odd.verify(&c5));
        let k23 = Graph::from_edges(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap();
        let b = k23.bipartition().unwrap();
        assert_eq!((b.side_a.len(), b.side_b.len()), (2, 3));
        assert!(b.is_valid_for(&k23));
    }

    #[test]
    fn triangles() {
        assert!(cycle(5).is_triangle_free());
        assert_eq!(cycle(3).find_triangle(), Some([0, 1, 2]));
    }

    #[test]
    fn edge_labels_round_trip() {
        let g = parse_edge_list("a-1 b\nb c").unwrap();
        assert_eq!(g.edge_by_label("a-1-b"), Some(0));
        assert_eq!(g.edge_by_label("b-a-1"), Some(0));
        assert_eq!(g.edge_by_label("c-b"), Some(1));
        assert_eq!(g.edge_by_label("a-1-c"), None);
    }

    #[test]
    fn edge_list_round_trip_keeps_ids() {
        let g = Graph::from_edges(6, [(0, 3), (1, 2), (4, 5), (2, 5)]).unwrap();
        let h = parse_edge_list(&g.to_edge_list()).unwrap();
        assert_eq!(g, h);
        let c5 = cycle(5);
        assert_eq!(c5.to_edge_list().lines().count(), 5);
        let with_isolated = Graph::from_edges(3, [(0, 2)]).unwrap();
        assert_eq!(parse_edge_list(&with_isolated.to_edge_list()).unwrap(), with_isolated);
    }

    #[test]
    fn forests() {
        assert!(Graph::from_edges(4, [(0, 1), (1, 2), (1, 3)]).unwrap().is_forest());
        assert!(!cycle(4).is_forest());
    }
}
