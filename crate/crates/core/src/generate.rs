//! Named graph families and the gallery descriptor syntax.
//!
//! Every generator numbers vertices so that each vertex after the first of a
//! component has a smaller neighbour; the edge-list writer then needs no
//! vertex declarations for connected gallery graphs.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::transforms::disjoint_union;

/// A gallery descriptor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    Path(usize),
    Cycle(usize),
    /// `K_{1,n}`.
    Star(usize),
    Complete(usize),
    CompleteBipartite(usize, usize),
    /// `K_{m,n}` plus a private leaf on each vertex of the `n`-side.
    KmnPlus(usize, usize),
    Petersen,
    Circulant(usize, Vec<usize>),
    /// The 9-vertex graph `H`: equistarable, not strongly equistarable.
    GraphH,
    DisjointUnion(Box<Family>, Box<Family>),
}

fn numbered(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

/// Builds the graph named by `family`.
pub fn generate(family: &Family) -> Result<Graph> {
    use Family::*;
    let bad = |msg: &str| Err(Error::InvalidParameter(format!("{family}: {msg}")));
    match family {
        Path(n) => {
            if *n == 0 {
                return bad("need at least one vertex");
            }
            Graph::new(numbered(*n), (1..*n).map(|i| (i - 1, i)))
        }
        Cycle(n) => {
            if *n < 3 {
                return bad("need at least three vertices");
            }
            Graph::new(numbered(*n), (0..*n).map(|i| (i, (i + 1) % n)))
        }
        Star(n) => {
            if *n == 0 {
                return bad("need at least one leaf");
            }
            let labels = (0..=*n).map(|i| i.to_string()).collect();
            Graph::new(labels, (1..=*n).map(|i| (0, i)))
        }
        Complete(n) => {
            if *n == 0 {
                return bad("need at least one vertex");
            }
            let edges = (0..*n).flat_map(|u| (u + 1..*n).map(move |v| (u, v)));
            Graph::new(numbered(*n), edges)
        }
        CompleteBipartite(m, n) => {
            if *m == 0 || *n == 0 {
                return bad("both sides must be nonempty");
            }
            let (labels, a, b) = bipartite_layout(*m, *n);
            let edges = a.iter().flat_map(|&x| b.iter().map(move |&y| (x, y)));
            Graph::new(labels, edges.collect::<Vec<_>>())
        }
        KmnPlus(m, n) => {
            if *m == 0 || *n == 0 {
                return bad("both sides must be nonempty");
            }
            let (mut labels, a, b) = bipartite_layout(*m, *n);
            let mut edges: Vec<(usize, usize)> = a.iter().flat_map(|&x| b.iter().map(move |&y| (x, y))).collect();
            for (j, &y) in b.iter().enumerate() {
                labels.push(format!("l{}", j + 1));
                edges.push((y, labels.len() - 1));
            }
            Graph::new(labels, edges)
        }
        Petersen => {
            let mut edges = Vec::new();
            for i in 0..5 {
                edges.push((i, (i + 1) % 5));
                edges.push((i, i + 5));
                edges.push((5 + i, 5 + (i + 2) % 5));
            }
            Graph::new(numbered(10), edges)
        }
        Circulant(n, offsets) => {
            if *n < 3 {
                return bad("need at least three vertices");
            }
            let mut seen = vec![false; n / 2 + 1];
            for &s in offsets {
                if s == 0 || s > n / 2 {
                    return bad("offsets must lie in 1..=n/2");
                }
                if std::mem::replace(&mut seen[s], true) {
                    return bad("duplicated offset");
                }
            }
            let edges = (0..*n).flat_map(|i| offsets.iter().map(move |&s| (i, (i + s) % n)));
            Graph::new(numbered(*n), edges.collect::<Vec<_>>())
        }
        GraphH => graph_h(),
        DisjointUnion(a, b) => Ok(disjoint_union(&generate(a)?, &generate(b)?)),
    }
}

/// Labels `a1, b1..bn, a2..am`; returns labels and the ids of each side.
fn bipartite_layout(m: usize, n: usize) -> (Vec<String>, Vec<usize>, Vec<usize>) {
    let mut labels = vec!["a1".to_string()];
    labels.extend((1..=n).map(|j| format!("b{j}")));
    labels.extend((2..=m).map(|i| format!("a{i}")));
    let a = std::iter::once(0).chain(n + 1..n + m).collect();
    let b = (1..=n).collect();
    (labels, a, b)
}

/// The graph `H`: 9 vertices, 14 edges.
///
/// `P = {1..5}` and `Q = {6..9}` span a bipartite graph; the two extra edges
/// `e = 1-2` and `f = 3-4` lie inside `P`. Giving `+1/2` to the vertices of
/// `P` and `-1/2` to those of `Q` combines the stars into `{e, f}`, so every
/// unit weighting gives `{e, f}` total 1/2.
fn graph_h() -> Result<Graph> {
    const ORDER: [&str; 9] = ["1", "2", "7", "9", "6", "8", "3", "4", "5"];
    const EDGES: [(&str, &str); 14] = [
        ("1", "2"),
        ("3", "4"),
        ("1", "7"),
        ("1", "9"),
        ("2", "6"),
        ("2", "8"),
        ("3", "8"),
        ("3", "9"),
        ("4", "6"),
        ("4", "7"),
        ("5", "6"),
        ("5", "7"),
        ("5", "8"),
        ("5", "9"),
    ];
    let id = |l: &str| ORDER.iter().position(|x| *x == l).expect("known label");
    Graph::new(
        ORDER.iter().map(|l| l.to_string()).collect(),
        EDGES.iter().map(|&(u, v)| (id(u), id(v))),
    )
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Family::*;
        match self {
            Path(n) => write!(f, "path({n})"),
            Cycle(n) => write!(f, "cycle({n})"),
            Star(n) => write!(f, "star({n})"),
            Complete(n) => write!(f, "complete({n})"),
            CompleteBipartite(m, n) => write!(f, "complete_bipartite({m},{n})"),
            KmnPlus(m, n) => write!(f, "kmn_plus({m},{n})"),
            Petersen => f.write_str("petersen"),
            Circulant(n, s) => {
                let s: Vec<String> = s.iter().map(usize::to_string).collect();
                write!(f, "circulant({n},{{{}}})", s.join(","))
            }
            GraphH => f.write_str("graph_H"),
            DisjointUnion(a, b) => write!(f, "disjoint_union({a},{b})"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    /// Parses descriptors such as `cycle(6)`, `kmn_plus(2,3)`,
    /// `circulant(11,{1,3})` or `disjoint_union(graph_H,graph_H)`.
    fn from_str(s: &str) -> Result<Family> {
        let bad = || Error::BadDescriptor(s.to_string());
        let s_trim: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let (name, args) = match s_trim.find('(') {
            Some(i) => {
                if !s_trim.ends_with(')') {
                    return Err(bad());
                }
                (
                    &s_trim[..i],
                    split_args(&s_trim[i + 1..s_trim.len() - 1]).ok_or_else(bad)?,
                )
            }
            None => (s_trim.as_str(), Vec::new()),
        };
        let ints = |k: usize| -> Result<Vec<usize>> {
            if args.len() != k {
                return Err(bad());
            }
            args.iter().map(|a| a.parse::<usize>().map_err(|_| bad())).collect()
        };
        Ok(match name {
            "path" => Family::Path(ints(1)?[0]),
            "cycle" => Family::Cycle(ints(1)?[0]),
            "star" => Family::Star(ints(1)?[0]),
            "complete" => Family::Complete(ints(1)?[0]),
            "complete_bipartite" => {
                let v = ints(2)?;
                Family::CompleteBipartite(v[0], v[1])
            }
            "kmn_plus" => {
                let v = ints(2)?;
                Family::KmnPlus(v[0], v[1])
            }
            "petersen" if args.is_empty() => Family::Petersen,
            "graph_H" | "H" if args.is_empty() => Family::GraphH,
            "circulant" => {
                let (first, rest) = args.split_first().ok_or_else(bad)?;
                let n = first.parse().map_err(|_| bad())?;
                let offs: Vec<&str> = match rest {
                    [one] if one.starts_with('{') && one.ends_with('}') => one[1..one.len() - 1].split(',').collect(),
                    _ => rest.iter().map(String::as_str).collect(),
                };
                let offs = offs
                    .iter()
                    .map(|o| o.parse::<usize>().map_err(|_| bad()))
                    .collect::<Result<Vec<_>>>()?;
                if offs.is_empty() {
                    return Err(bad());
                }
                Family::Circulant(n, offs)
            }
            "disjoint_union" => match args.as_slice() {
                [a, b] => Family::DisjointUnion(Box::new(a.parse()?), Box::new(b.parse()?)),
                _ => return Err(bad()),
            },
            _ => return Err(bad()),
        })
    }
}

/// Splits on top-level commas (outside parentheses and braces).
fn split_args(s: &str) -> Option<Vec<String>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in s.chars() {
        match c {
            '(' | '{' => depth += 1,
            ')' | '}' => depth -= 1,
            ',' if depth == 0 => {
                out.push(std::mem::take(&mut cur));
                continue;
            }
            _ => {}
        }
        if depth < 0 {
            return None;
        }
        cur.push(c);
    }
    if depth != 0 {
        return None;
    }
    if !cur.is_empty() || !out.is_empty() {
        out.push(cur);
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::parse_edge_list;

    fn g(s: &str) -> Graph {
        generate(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn sizes() {
        let k43 = g("complete_bipartite(4,3)");
        assert_eq!((k43.n(), k43.m()), (7, 12));
        let kp = g("kmn_plus(2,3)");
        assert_eq!((kp.n(), kp.m()), (8, 9));
        let p = g("petersen");
        assert_eq!((p.n(), p.m()), (10, 15));
        assert!((0..10).all(|v| p.degree(v) == 3));
        assert!(p.is_triangle_free());
        // no 4-cycles either: girth 5
        for u in 0..10 {
            for v in u + 1..10 {
                let common = p.neighbors(u).iter().filter(|w| p.neighbors(v).contains(w)).count();
                assert!(common <= 1);
            }
        }
        let c = g("circulant(11,{1,3})");
        assert_eq!((c.n(), c.m()), (11, 22));
        assert!(c.is_triangle_free());
    }

    #[test]
    fn descriptor_round_trip() {
        for s in [
            "path(4)",
            "cycle(6)",
            "star(3)",
            "complete(4)",
            "complete_bipartite(4,3)",
            "kmn_plus(2,3)",
            "petersen",
            "circulant(11,{1,3})",
            "graph_H",
            "disjoint_union(cycle(4),disjoint_union(path(2),petersen))",
        ] {
            let f: Family = s.parse().unwrap();
            assert_eq!(f.to_string(), s);
        }
        assert_eq!(
            "circulant(11,1,3)".parse::<Family>().unwrap().to_string(),
            "circulant(11,{1,3})"
        );
    }

    #[test]
    fn rejects_bad_descriptors() {
        for s in ["cycle", "cycle(x)", "cycle(4", "blob(3)", "petersen(2)", "circulant(8)"] {
            assert!(s.parse::<Family>().is_err(), "{s}");
        }
        for s in [
            "cycle(2)",
            "circulant(8,{1,1})",
            "circulant(8,{5})",
            "complete_bipartite(0,3)",
        ] {
            assert!(generate(&s.parse().unwrap()).is_err(), "{s}");
        }
    }

    #[test]
    fn gallery_edge_lists_round_trip() {
        for s in [
            "cycle(5)",
            "kmn_plus(2,3)",
            "petersen",
            "graph_H",
            "complete_bipartite(3,4)",
        ] {
            let graph = g(s);
            let text = graph.to_edge_list();
            assert_eq!(text.lines().count(), graph.m(), "{s}");
            assert_eq!(parse_edge_list(&text).unwrap(), graph);
        }
        let u = g("disjoint_union(cycle(4),cycle(4))");
        assert_eq!(parse_edge_list(&u.to_edge_list()).unwrap(), u);
    }
}
