//! Helpers shared by the integration tests.

#![allow(dead_code)]

use equilab_core::matching::{
    is_k_extendable, plummer_condition, ExtendabilityFailure, ExtensionFailure, PlummerFailure,
};
use equilab_core::{Answer, Graph, Verdict, DEFAULT_STEP_BUDGET};

/// Counts checked witnesses and collects anything that went wrong.
#[derive(Default)]
pub struct Tally {
    pub witnesses: usize,
    pub problems: Vec<String>,
}

impl Tally {
    pub fn witness(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if ok {
            self.witnesses += 1;
        } else {
            self.problems.push(format!("witness rejected: {}", what()));
        }
    }

    pub fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.problems.push(what());
        }
    }
}

/// Independent perfect-matching test by exhaustive branching on the
/// smallest uncovered vertex.
pub fn has_perfect_matching(g: &Graph, alive: &[bool]) -> bool {
    fn go(g: &Graph, alive: &mut [bool]) -> bool {
        let Some(v) = (0..g.n()).find(|&v| alive[v]) else {
            return true;
        };
        alive[v] = false;
        for &w in g.neighbors(v) {
            if alive[w] {
                alive[w] = false;
                if go(g, alive) {
                    alive[v] = true;
                    alive[w] = true;
                    return true;
                }
                alive[w] = true;
            }
        }
        alive[v] = true;
        false
    }
    go(g, &mut alive.to_vec())
}

/// Compares `is_k_extendable` with the Plummer condition for k = 1, 2 and
/// re-checks both sides' witnesses. Returns the number of comparisons.
pub fn plummer_agrees(g: &Graph, t: &mut Tally) -> usize {
    let b = g.bipartition().expect("bipartite input");
    let mut compared = 0;
    for k in 1..=2usize {
        if g.n() < 2 * k {
            continue;
        }
        let ext = is_k_extendable(g, k, DEFAULT_STEP_BUDGET).expect("connected input");
        let pl = plummer_condition(g, &b, k).expect("side within limit");
        compared += 1;
        match &ext {
            Verdict::Yes(x) => {
                let ok = x.k_matchings.len() == x.extensions.len()
                    && x.k_matchings
                        .iter()
                        .zip(&x.extensions)
                        .all(|(m, pm)| pm.is_valid_for(g) && pm.is_superset_of(m) && 2 * pm.len() == g.n());
                t.witness(ok, || format!("k={k} extensions of {}", g.to_edge_list()));
            }
            Verdict::No(ExtendabilityFailure::NoKMatching) => {
                t.witness(!has_k_matching(g, k), || format!("k={k} no k-matching"));
            }
            Verdict::No(ExtendabilityFailure::NotExtendable { matching, failure }) => {
                let ok = matching.len() == k
                    && matching.is_valid_for(g)
                    && match failure {
                        ExtensionFailure::Hall { violator } => violator.verify(g, &b),
                        ExtensionFailure::Exhaustive { .. } => false,
                    };
                t.witness(ok, || format!("k={k} failing matching in {}", g.to_edge_list()));
            }
            Verdict::Unknown(_) => t.problems.push(format!("k={k} extendability unknown")),
        }
        match &pl {
            Verdict::No(PlummerFailure::Violator { violator }) => {
                t.witness(violator.verify(g, &b), || format!("k={k} Plummer violator"));
            }
            Verdict::No(PlummerFailure::Unbalanced { side_a, side_b }) => {
                t.witness(side_a != side_b && side_a + side_b == g.n(), || {
                    "unbalanced sides".into()
                });
            }
            _ => {}
        }
        t.expect(ext.answer() == pl.answer() && ext.answer() != Answer::Unknown, || {
            format!(
                "k={k}: extendable {} but Plummer {} on\n{}",
                ext.answer(),
                pl.answer(),
                g.to_edge_list()
            )
        });
    }
    compared
}

/// Brute force over single edges and edge pairs.
pub fn has_k_matching(g: &Graph, k: usize) -> bool {
    let e = g.edges();
    match k {
        1 => !e.is_empty(),
        2 => e
            .iter()
            .enumerate()
            .any(|(i, &(a, b))| e[i + 1..].iter().any(|&(c, d)| a != c && a != d && b != c && b != d)),
        _ => unimplemented!("k is 1 or 2"),
    }
}
