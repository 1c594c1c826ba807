//! Generation of small graph classes up to isomorphism, and seeded random
//! samples.
//!
//! General graphs are deduplicated by a canonical form computed with colour
//! refinement and individualisation. Bipartite graphs are built as
//! bicoloured adjacency matrices, which only need column permutations.

use std::collections::HashSet;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest graph handled by [`canonical_form`].
pub const CANONICAL_LIMIT: usize = 32;

fn adjacency_masks(g: &Graph) -> Vec<u32> {
    let mut adj = vec![0u32; g.n()];
    for &(u, v) in g.edges() {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    adj
}

/// Splits colour classes by the multiset of neighbour colours until stable.
/// Colours are ranks, so the result depends only on the coloured graph.
fn refine(adj: &[u32], colour: &mut [usize]) {
    let n = adj.len();
    loop {
        let before = colour.iter().copied().max().map_or(0, |c| c + 1);
        let mut sig: Vec<(usize, Vec<usize>, usize)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = (0..n).filter(|&w| adj[v] >> w & 1 == 1).map(|w| colour[w]).collect();
                nb.sort_unstable();
                (colour[v], nb, v)
            })
            .collect();
        sig.sort();
        let mut rank = 0;
        for i in 0..n {
            if i > 0 && (sig[i].0, &sig[i].1) != (sig[i - 1].0, &sig[i - 1].1) {
                rank += 1;
            }
            colour[sig[i].2] = rank;
        }
        if rank + 1 == before || n == 0 {
            return;
        }
    }
}

fn search(adj: &[u32], colour: Vec<usize>, best: &mut Option<Vec<u32>>) {
    let n = adj.len();
    let mut size = vec![0usize; n];
    for &c in &colour {
        size[c] += 1;
    }
    let Some(cell) = (0..n).find(|&c| size[c] > 1) else {
        let mut form = vec![0u32; n];
        for v in 0..n {
            for w in 0..n {
                if adj[v] >> w & 1 == 1 {
                    form[colour[v]] |= 1 << colour[w];
                }
            }
        }
        if best.as_ref().is_none_or(|b| form > *b) {
            *best = Some(form);
        }
        return;
    };
    let members: Vec<usize> = (0..n).filter(|&v| colour[v] == cell).collect();
    // twins are interchangeable by an automorphism: one branch suffices
    let twins = members.iter().enumerate().all(|(i, &u)| {
        members[i + 1..]
            .iter()
            .all(|&v| adj[u] & !(1 << v) == adj[v] & !(1 << u))
    });
    let branches = if twins { &members[..1] } else { &members[..] };
    for &v in branches {
        let mut c: Vec<usize> = colour.iter().map(|&x| if x > cell { x + 1 } else { x }).collect();
        for &u in &members {
            if u != v {
                c[u] = cell + 1;
            }
        }
        refine(adj, &mut c);
        search(adj, c, best);
    }
}

/// Adjacency rows of a canonical relabelling: isomorphic graphs, and only
/// those, get equal forms.
pub fn canonical_form(g: &Graph) -> Result<Vec<u32>> {
    if g.n() > CANONICAL_LIMIT {
        return Err(Error::TooLarge {
            what: "vertex count",
            size: g.n(),
            limit: CANONICAL_LIMIT,
        });
    }
    let adj = adjacency_masks(g);
    let mut colour = vec![0; g.n()];
    refine(&adj, &mut colour);
    let mut best = None;
    search(&adj, colour, &mut best);
    Ok(best.unwrap_or_default())
}

fn from_masks(rows: &[u32]) -> Graph {
    let n = rows.len();
    let edges = (0..n).flat_map(|v| (v + 1..n).filter(move |&w| rows[v] >> w & 1 == 1).map(move |w| (v, w)));
    Graph::from_edges(n, edges).expect("valid masks")
}

/// Grows classes one vertex at a time: the new vertex joins a nonempty
/// subset of the old vertices accepted by `allowed`. Every connected graph
/// has a vertex whose removal leaves it connected, so connected classes on
/// `n` vertices all arise from connected classes on `n - 1`.
fn grow(max_n: usize, allowed: impl Fn(&[u32], u32) -> bool) -> Result<Vec<Vec<Graph>>> {
    if max_n > CANONICAL_LIMIT {
        return Err(Error::TooLarge {
            what: "vertex count",
            size: max_n,
            limit: CANONICAL_LIMIT,
        });
    }
    let mut levels = vec![Vec::new(), vec![Graph::from_edges(1, []).expect("K1")]];
    for n in 2..=max_n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for g in &levels[n - 1] {
            let adj = adjacency_masks(g);
            for s in 1u32..1 << (n - 1) {
                if !allowed(&adj, s) {
                    continue;
                }
                let mut rows = adj.clone();
                for (v, r) in rows.iter_mut().enumerate() {
                    if s >> v & 1 == 1 {
                        *r |= 1 << (n - 1);
                    }
                }
                rows.push(s);
                let h = from_masks(&rows);
                let form = canonical_form(&h)?;
                if seen.insert(form.clone()) {
                    next.push((form, h));
                }
            }
        }
        next.sort_by(|a, b| b.0.cmp(&a.0));
        levels.push(next.into_iter().map(|(f, _)| from_masks(&f)).collect());
    }
    Ok(levels)
}

fn stable(adj: &[u32], s: u32) -> bool {
    (0..adj.len()).all(|v| s >> v & 1 == 0 || adj[v] & s == 0)
}

/// One graph per isomorphism class of connected triangle-free graphs on
/// `1..=max_n` vertices, ordered by vertex count.
pub fn connected_triangle_free(max_n: usize) -> Result<Vec<Graph>> {
    Ok(grow(max_n, stable)?.into_iter().flatten().collect())
}

/// One graph per isomorphism class of trees on `1..=max_n` vertices.
pub fn trees(max_n: usize) -> Result<Vec<Graph>> {
    Ok(grow(max_n, |_, s| s.count_ones() == 1)?.into_iter().flatten().collect())
}

/// One graph per isomorphism class of forests without isolated vertices on
/// `2..=max_n` vertices: multisets of trees with at least two vertices.
pub fn forests(max_n: usize) -> Result<Vec<Graph>> {
    let ts: Vec<Graph> = trees(max_n)?.into_iter().filter(|t| t.n() >= 2).collect();
    let mut out = Vec::new();
    let mut pick = Vec::new();
    forests_rec(&ts, 0, max_n, &mut pick, &mut out);
    out.sort_by_key(|g: &Graph| g.n());
    Ok(out)
}

fn forests_rec(ts: &[Graph], from: usize, room: usize, pick: &mut Vec<usize>, out: &mut Vec<Graph>) {
    if !pick.is_empty() {
        let mut labels = Vec::new();
        let mut edges = Vec::new();
        for &i in pick.iter() {
            let base = labels.len();
            labels.extend((0..ts[i].n()).map(|v| (base + v + 1).to_string()));
            edges.extend(ts[i].edges().iter().map(|&(u, v)| (base + u, base + v)));
        }
        out.push(Graph::new(labels, edges).expect("forest"));
    }
    for i in from..ts.len() {
        if ts[i].n() <= room {
            pick.push(i);
            forests_rec(ts, i, room - ts[i].n(), pick, out);
            pick.pop();
        }
    }
}

// ---------------------------------------------------------------------------
// bipartite graphs as bicoloured matrices

/// Largest side for [`connected_bipartite`].
pub const BICOLOURED_SIDE_LIMIT: usize = 8;

/// Rows are bitmasks over `b` columns, column 0 the most significant bit.
/// The form is the lexicographic maximum, over column permutations that
/// keep columns ordered by non-increasing degree, of the rows sorted in
/// decreasing order.
fn bicoloured_form(rows: &[u32], b: usize) -> Vec<u32> {
    let mut deg: Vec<(usize, usize)> = (0..b)
        .map(|j| (rows.iter().filter(|&&r| r >> (b - 1 - j) & 1 == 1).count(), j))
        .collect();
    deg.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)));
    // groups of equal degree, in target order
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (i, &(d, j)) in deg.iter().enumerate() {
        if i > 0 && deg[i - 1].0 == d {
            groups.last_mut().expect("group").push(j);
        } else {
            groups.push(vec![j]);
        }
    }
    let mut best: Vec<u32> = Vec::new();
    let mut order = Vec::with_capacity(b);
    place(rows, b, &groups, 0, &mut order, &mut best);
    best
}

fn place(rows: &[u32], b: usize, groups: &[Vec<usize>], g: usize, order: &mut Vec<usize>, best: &mut Vec<u32>) {
    if g == groups.len() {
        let mut mapped: Vec<u32> = rows
            .iter()
            .map(|&r| {
                order
                    .iter()
                    .enumerate()
                    .fold(0u32, |acc, (pos, &j)| acc | ((r >> (b - 1 - j) & 1) << (b - 1 - pos)))
            })
            .collect();
        mapped.sort_unstable_by(|x, y| y.cmp(x));
        if mapped > *best {
            *best = mapped;
        }
        return;
    }
    let mut items = groups[g].clone();
    permute(&mut items, 0, &mut |p| {
        let len = order.len();
        order.extend_from_slice(p);
        place(rows, b, groups, g + 1, order, best);
        order.truncate(len);
    });
}

fn permute(items: &mut Vec<usize>, k: usize, visit: &mut dyn FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, visit);
        items.swap(k, i);
    }
}

fn transpose(rows: &[u32], b: usize) -> Vec<u32> {
    let a = rows.len();
    (0..b)
        .map(|j| (0..a).fold(0u32, |acc, i| acc | ((rows[i] >> (b - 1 - j) & 1) << (a - 1 - i))))
        .collect()
}

fn bicoloured_connected(rows: &[u32], b: usize) -> bool {
    let a = rows.len();
    let (mut seen_r, mut seen_c) = (1u32, rows[0]);
    loop {
        let nr = (0..a).fold(seen_r, |acc, i| if rows[i] & seen_c != 0 { acc | 1 << i } else { acc });
        let nc = (0..a).fold(seen_c, |acc, i| if nr >> i & 1 == 1 { acc | rows[i] } else { acc });
        if (nr, nc) == (seen_r, seen_c) {
            break;
        }
        (seen_r, seen_c) = (nr, nc);
    }
    seen_r == (1 << a) - 1 && seen_c == (1 << b) - 1
}

/// Matrices with rows and columns both in non-increasing lexicographic
/// order; every bicoloured class has such a representative.
fn doubly_sorted(a: usize, b: usize, rows: &mut Vec<u32>, undecided: u32, visit: &mut dyn FnMut(&[u32])) {
    if rows.len() == a {
        visit(rows);
        return;
    }
    let prev = rows.last().copied().unwrap_or((1 << b) - 1);
    for r in (1..=prev).rev() {
        let mut und = undecided;
        let mut ok = true;
        for j in 0..b.saturating_sub(1) {
            if undecided >> j & 1 == 1 {
                let (x, y) = (r >> (b - 1 - j) & 1, r >> (b - 2 - j) & 1);
                if x < y {
                    ok = false;
                    break;
                }
                if x > y {
                    und &= !(1 << j);
                }
            }
        }
        if ok {
            rows.push(r);
            doubly_sorted(a, b, rows, und, visit);
            rows.pop();
        }
    }
}

fn pack(form: &[u32], b: usize) -> u64 {
    form.iter().fold(0u64, |acc, &r| acc << b | u64::from(r))
}

/// Calls `visit` once per connected bipartite class with sides of sizes
/// exactly `a ≤ b`, passing its canonical matrix.
fn bicoloured_classes_with(a: usize, b: usize, visit: &mut dyn FnMut(&[u32])) {
    let mut seen = HashSet::new();
    let mut each = |rows: &[u32]| {
        if !bicoloured_connected(rows, b) {
            return;
        }
        let mut form = bicoloured_form(rows, b);
        if a == b {
            form = form.max(bicoloured_form(&transpose(rows, b), a));
        }
        if seen.insert(pack(&form, b)) {
            visit(&form);
        }
    };
    doubly_sorted(a, b, &mut Vec::new(), (1u32 << b.saturating_sub(1)) - 1, &mut each);
}

/// Connected bipartite classes with sides of sizes exactly `a ≤ b`, as
/// canonical matrices.
fn bicoloured_classes(a: usize, b: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    bicoloured_classes_with(a, b, &mut |form| out.push(form.to_vec()));
    out.sort_unstable_by(|x, y| y.cmp(x));
    out
}

fn bicoloured_graph(rows: &[u32], b: usize) -> Graph {
    let a = rows.len();
    let edges = (0..a).flat_map(|i| {
        (0..b)
            .filter(move |&j| rows[i] >> (b - 1 - j) & 1 == 1)
            .map(move |j| (i, a + j))
    });
    Graph::from_edges(a + b, edges).expect("bipartite")
}

/// One graph per isomorphism class of connected bipartite graphs with
/// `2..=max_n` vertices and both sides of size at most `max_side`.
/// Vertices `0..a` form the smaller side.
pub fn connected_bipartite(max_n: usize, max_side: usize) -> Result<Vec<Graph>> {
    if max_side > BICOLOURED_SIDE_LIMIT {
        return Err(Error::TooLarge {
            what: "side size",
            size: max_side,
            limit: BICOLOURED_SIDE_LIMIT,
        });
    }
    let mut out = Vec::new();
    for n in 2..=max_n {
        for a in 1..=n / 2 {
            let b = n - a;
            if b > max_side {
                continue;
            }
            out.extend(bicoloured_classes(a, b).iter().map(|rows| bicoloured_graph(rows, b)));
        }
    }
    Ok(out)
}

/// Streams one graph per isomorphism class of connected bipartite graphs
/// with sides of sizes exactly `a` and `b`, without holding the classes in
/// memory beyond a set of 64-bit keys. Order is unspecified but fixed.
pub fn for_each_connected_bipartite(a: usize, b: usize, mut visit: impl FnMut(&Graph)) -> Result<()> {
    let (a, b) = (a.min(b), a.max(b));
    if b > BICOLOURED_SIDE_LIMIT {
        return Err(Error::TooLarge {
            what: "side size",
            size: b,
            limit: BICOLOURED_SIDE_LIMIT,
        });
    }
    if a == 0 {
        return Ok(());
    }
    bicoloured_classes_with(a, b, &mut |form| visit(&bicoloured_graph(form, b)));
    Ok(())
}

// ---------------------------------------------------------------------------
// random samples

/// Seeded generator used by every sampler here.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random bipartite graph with sides `a` and `b`, each cross pair an edge
/// with probability `p`. Vertices `0..a` form the first side.
pub fn random_bipartite(a: usize, b: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let mut edges = Vec::new();
    for i in 0..a {
        for j in 0..b {
            if rng.gen_bool(p) {
                edges.push((i, a + j));
            }
        }
    }
    Graph::from_edges(a + b, edges).expect("bipartite")
}

/// Connected triangle-free graph on `n ≥ 2` vertices: edges are offered in
/// random order and kept when they close no triangle, up to `target` edges;
/// retried until connected.
pub fn random_triangle_free(n: usize, target: usize, rng: &mut ChaCha8Rng) -> Graph {
    assert!(n >= 2, "need two vertices");
    loop {
        let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        for i in (1..pairs.len()).rev() {
            pairs.swap(i, rng.gen_range(0..=i));
        }
        let mut adj = vec![0u64; n];
        let mut edges = Vec::new();
        for (u, v) in pairs {
            if edges.len() == target {
                break;
            }
            if adj[u] & adj[v] == 0 {
                adj[u] |= 1 << v;
                adj[v] |= 1 << u;
                edges.push((u, v));
            }
        }
        let g = Graph::from_edges(n, edges).expect("simple");
        if g.is_connected() {
            return g;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{generate, Family};
    use crate::transforms::is_isomorphic;

    #[test]
    fn canonical_form_is_label_invariant() {
        let g = generate(&Family::Petersen).unwrap();
        let perm: Vec<usize> = (0..10).map(|v| (v * 3 + 1) % 10).collect();
        assert_eq!(canonical_form(&g).unwrap(), canonical_form(&g.permuted(&perm)).unwrap());
        let c6 = generate(&Family::Cycle(6)).unwrap();
        let k33 = generate(&Family::CompleteBipartite(3, 3)).unwrap();
        assert_ne!(canonical_form(&c6).unwrap(), canonical_form(&k33).unwrap());
    }

    #[test]
    fn bicoloured_form_is_invariant() {
        let rows = [0b1100, 0b0110, 0b0011];
        let f = bicoloured_form(&rows, 4);
        // permute columns (reverse) and rows
        let rev = |r: u32| (0..4).fold(0, |acc, j| acc | ((r >> j & 1) << (3 - j)));
        let other: Vec<u32> = [rows[2], rows[0], rows[1]].iter().map(|&r| rev(r)).collect();
        assert_eq!(bicoloured_form(&other, 4), f);
    }

    #[test]
    fn classes_are_pairwise_non_isomorphic() {
        let gs = connected_triangle_free(6).unwrap();
        for (i, g) in gs.iter().enumerate() {
            for h in &gs[i + 1..] {
                if g.n() == h.n() && g.m() == h.m() {
                    assert!(is_isomorphic(g, h, 1_000_000).is_no());
                }
            }
        }
    }

    fn counts(gs: &[Graph], max_n: usize) -> Vec<usize> {
        (1..=max_n).map(|n| gs.iter().filter(|g| g.n() == n).count()).collect()
    }

    // reference counts taken from an independent catalogue of all graphs
    // on at most seven vertices
    #[test]
    fn class_counts() {
        assert_eq!(counts(&connected_triangle_free(7).unwrap(), 7), [1, 1, 1, 3, 6, 19, 59]);
        assert_eq!(counts(&connected_bipartite(7, 7).unwrap(), 7), [0, 1, 1, 3, 5, 17, 44]);
        assert_eq!(counts(&trees(7).unwrap(), 7), [1, 1, 1, 2, 3, 6, 11]);
        assert_eq!(counts(&forests(7).unwrap(), 7), [0, 1, 1, 3, 4, 10, 17]);
    }

    #[test]
    fn bipartite_classes_are_connected_and_bipartite() {
        for g in connected_bipartite(7, 7).unwrap() {
            assert!(g.is_connected() && g.is_bipartite());
        }
    }

    #[test]
    fn samplers_are_deterministic() {
        let a = random_triangle_free(12, 20, &mut rng(5));
        let b = random_triangle_free(12, 20, &mut rng(5));
        assert_eq!(a, b);
        assert!(a.is_triangle_free() && a.is_connected());
        let g = random_bipartite(4, 5, 0.5, &mut rng(1));
        assert!(g.is_bipartite());
    }
}
