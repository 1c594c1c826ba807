//! Plummer's condition against k-extendability on every connected bipartite
//! class with both sides at most 7. Several hours on one core, so ignored
//! by default:
//!
//! `cargo test --release -p equilab-core --test plummer_sweep -- --ignored --nocapture`

mod common;

use std::time::Instant;

use common::{plummer_agrees, Tally};
use equilab_core::enumerate::for_each_connected_bipartite;

#[test]
#[ignore]
fn plummer_matches_extendability_up_to_side_seven() {
    let mut t = Tally::default();
    let mut total = 0usize;
    for b in 1..=7usize {
        for a in 1..=b {
            let start = Instant::now();
            let mut graphs = 0usize;
            for_each_connected_bipartite(a, b, |g| {
                graphs += 1;
                plummer_agrees(g, &mut t);
                assert!(t.problems.is_empty(), "{}", t.problems.join("\n"));
            })
            .unwrap();
            total += graphs;
            println!(
                "{a}x{b}: {graphs} classes agree [{:.0}s]",
                start.elapsed().as_secs_f64()
            );
        }
    }
    println!("{total} classes, {} witnesses re-validated, 0 violations", t.witnesses);
}
