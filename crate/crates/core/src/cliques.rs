//! Maximal clique and maximal stable set enumeration (Bron–Kerbosch with
//! pivoting).

use fixedbitset::FixedBitSet;

use crate::error::Result;
use crate::graph::Graph;
use crate::verdict::Steps;

/// All maximal cliques of `g`, each sorted, listed in lexicographic order.
///
/// Fails with [`crate::Error::BudgetExhausted`] after `budget` recursive calls.
pub fn enumerate_maximal_cliques(g: &Graph, budget: u64) -> Result<Vec<Vec<usize>>> {
    let n = g.n();
    let adj: Vec<FixedBitSet> = (0..n)
        .map(|v| {
            let mut s = FixedBitSet::with_capacity(n);
            for &w in g.neighbors(v) {
                s.insert(w);
            }
            s
        })
        .collect();
    bron_kerbosch(&adj, budget)
}

/// All maximal stable sets of `g`: the maximal cliques of its complement.
pub fn enumerate_maximal_stable_sets(g: &Graph, budget: u64) -> Result<Vec<Vec<usize>>> {
    let n = g.n();
    let adj: Vec<FixedBitSet> = (0..n)
        .map(|v| {
            let mut s = FixedBitSet::with_capacity(n);
            s.insert_range(..);
            s.set(v, false);
            for &w in g.neighbors(v) {
                s.set(w, false);
            }
            s
        })
        .collect();
    bron_kerbosch(&adj, budget)
}

fn bron_kerbosch(adj: &[FixedBitSet], budget: u64) -> Result<Vec<Vec<usize>>> {
    let n = adj.len();
    let mut out = Vec::new();
    if n == 0 {
        // the empty set is the unique maximal clique of the empty graph
        out.push(Vec::new());
        return Ok(out);
    }
    let mut p = FixedBitSet::with_capacity(n);
    p.insert_range(..);
    let x = FixedBitSet::with_capacity(n);
    let mut r = Vec::new();
    let mut steps = Steps::new(budget);
    expand(adj, &mut r, p, x, &mut out, &mut steps)?;
    for c in out.iter_mut() {
        c.sort_unstable();
    }
    out.sort();
    Ok(out)
}

fn expand(
    adj: &[FixedBitSet],
    r: &mut Vec<usize>,
    mut p: FixedBitSet,
    mut x: FixedBitSet,
    out: &mut Vec<Vec<usize>>,
    steps: &mut Steps,
) -> Result<()> {
    steps.tick()?;
    if p.is_clear() {
        if x.is_clear() {
            out.push(r.clone());
        }
        return Ok(());
    }
    // pivot: vertex of P ∪ X with the most neighbours in P, smallest id on ties
    let mut pivot = usize::MAX;
    let mut best = 0usize;
    for u in p.ones().chain(x.ones()) {
        let c = adj[u].intersection_count(&p);
        if pivot == usize::MAX || c > best || (c == best && u < pivot) {
            pivot = u;
            best = c;
        }
    }
    let mut candidates = p.clone();
    candidates.difference_with(&adj[pivot]);
    for v in candidates.ones() {
        r.push(v);
        let mut np = p.clone();
        np.intersect_with(&adj[v]);
        let mut nx = x.clone();
        nx.intersect_with(&adj[v]);
        expand(adj, r, np, nx, out, steps)?;
        r.pop();
        p.set(v, false);
        x.insert(v);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    /// Brute force over all vertex subsets.
    fn brute_maximal_stable(g: &Graph) -> Vec<Vec<usize>> {
        let n = g.n();
        let stable = |mask: u32| {
            g.edges()
                .iter()
                .all(|&(u, v)| mask & (1 << u) == 0 || mask & (1 << v) == 0)
        };
        let mut out = Vec::new();
        for mask in 0u32..(1 << n) {
            if !stable(mask) {
                continue;
            }
            if (0..n).any(|v| mask & (1 << v) == 0 && stable(mask | (1 << v))) {
                continue;
            }
            out.push((0..n).filter(|&v| mask & (1 << v) != 0).collect::<Vec<_>>());
        }
        out.sort();
        out
    }

    #[test]
    fn k3() {
        let k3 = cycle(3);
        assert_eq!(
            enumerate_maximal_stable_sets(&k3, 1000).unwrap(),
            vec![vec![0], vec![1], vec![2]]
        );
        assert_eq!(enumerate_maximal_cliques(&k3, 1000).unwrap(), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn c5_has_five_stable_pairs() {
        let c5 = cycle(5);
        let got = enumerate_maximal_stable_sets(&c5, 1000).unwrap();
        assert_eq!(got, brute_maximal_stable(&c5));
        assert_eq!(got.len(), 5);
        assert!(got.iter().all(|s| s.len() == 2));
    }

    #[test]
    fn c4_cliques_are_edges() {
        let got = enumerate_maximal_cliques(&cycle(4), 1000).unwrap();
        assert_eq!(got, vec![vec![0, 1], vec![0, 3], vec![1, 2], vec![2, 3]]);
    }

    #[test]
    fn budget_exhaustion() {
        assert_eq!(
            enumerate_maximal_stable_sets(&cycle(9), 3),
            Err(Error::BudgetExhausted(3))
        );
    }

    #[test]
    fn edgeless_graph_single_stable_set() {
        assert_eq!(
            enumerate_maximal_stable_sets(&Graph::edgeless(2), 100).unwrap(),
            vec![vec![0, 1]]
        );
    }

    use proptest::prelude::*;

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (1usize..=10).prop_flat_map(|n| {
            proptest::collection::vec(proptest::bool::ANY, n * (n - 1) / 2).prop_map(move |bits| {
                let mut edges = Vec::new();
                let mut k = 0;
                for u in 0..n {
                    for v in u + 1..n {
                        if bits[k] {
                            edges.push((u, v));
                        }
                        k += 1;
                    }
                }
                Graph::from_edges(n, edges).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn stable_sets_match_brute_force(g in arb_graph()) {
            let got = enumerate_maximal_stable_sets(&g, 1_000_000).unwrap();
            prop_assert_eq!(&got, &brute_maximal_stable(&g));
            for v in 0..g.n() {
                prop_assert!(got.iter().any(|s| s.contains(&v)));
            }
        }
    }
}
