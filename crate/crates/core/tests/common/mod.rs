//! Brute-force oracles shared by the integration suites. None of these use
//! the BFS path counts of the library.
#![allow(dead_code)]

use meg_core::gen::{self, SeededRng};
use meg_core::{Edge, Graph, SetCoverInstance, Vertex};
use rand::Rng;

/// All shortest `x`–`y` paths, found by enumerating walks of increasing
/// length until one reaches `y`.
pub fn shortest_paths(g: &Graph, x: Vertex, y: Vertex) -> Vec<Vec<Vertex>> {
    if x == y {
        return vec![vec![x]];
    }
    for len in 1..g.vertex_count() {
        let mut found = Vec::new();
        let mut walk = vec![x];
        extend_walks(g, y, len, &mut walk, &mut found);
        if !found.is_empty() {
            return found;
        }
    }
    Vec::new()
}

fn extend_walks(g: &Graph, y: Vertex, len: usize, walk: &mut Vec<Vertex>, out: &mut Vec<Vec<Vertex>>) {
    let last = *walk.last().unwrap();
    if walk.len() == len + 1 {
        if last == y {
            out.push(walk.clone());
        }
        return;
    }
    for &w in g.neighbors(last) {
        walk.push(w);
        extend_walks(g, y, len, walk, out);
        walk.pop();
    }
}

pub fn path_uses(path: &[Vertex], e: Edge) -> bool {
    path.windows(2).any(|w| Edge::new(w[0], w[1]) == e)
}

/// `{x, y}` monitors `e` by definition: every shortest path traverses it.
pub fn monitors_by_enumeration(g: &Graph, x: Vertex, y: Vertex, e: Edge) -> bool {
    let paths = shortest_paths(g, x, y);
    !paths.is_empty() && paths.iter().all(|p| path_uses(p, e))
}

/// `table[x][y][edge index]` by enumeration.
pub fn monitor_table(g: &Graph) -> Vec<Vec<Vec<bool>>> {
    let n = g.vertex_count();
    let mut t = vec![vec![vec![false; g.edge_count()]; n]; n];
    for x in 0..n {
        for y in x + 1..n {
            let paths = shortest_paths(g, x, y);
            for (idx, &e) in g.edges().iter().enumerate() {
                let m = paths.iter().all(|p| path_uses(p, e));
                t[x][y][idx] = m;
                t[y][x][idx] = m;
            }
        }
    }
    t
}

pub fn is_meg_by_table(t: &[Vec<Vec<bool>>], m: usize, set: &[Vertex]) -> bool {
    (0..m).all(|idx| {
        set.iter()
            .enumerate()
            .any(|(a, &x)| set[a + 1..].iter().any(|&y| t[x][y][idx]))
    })
}

/// Minimum MEG-set size over all `2^n` subsets, and the lexicographically
/// least minimum set.
pub fn min_meg_by_enumeration(g: &Graph) -> (usize, Vec<Vertex>) {
    let n = g.vertex_count();
    let t = monitor_table(g);
    let mut best: Option<Vec<Vertex>> = None;
    for mask in 0u32..(1 << n) {
        let set: Vec<Vertex> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        if best.as_ref().is_some_and(|b| b.len() < set.len()) {
            continue;
        }
        if is_meg_by_table(&t, g.edge_count(), &set) {
            match &best {
                Some(b) if b.len() == set.len() && *b <= set => {}
                _ => best = Some(set),
            }
        }
    }
    let best = best.expect("V(G) is a MEG-set");
    (best.len(), best)
}

/// Minimum cover size over all `2^h` subcollections.
pub fn min_cover_by_enumeration(inst: &SetCoverInstance) -> usize {
    let h = inst.h();
    (0u32..(1 << h))
        .filter(|mask| {
            (0..inst.eta()).all(|i| (0..h).any(|j| mask >> j & 1 == 1 && inst.contains(j, i)))
        })
        .map(|mask| mask.count_ones() as usize)
        .min()
        .expect("full collection covers")
}

pub fn leaves(g: &Graph) -> Vec<Vertex> {
    (0..g.vertex_count()).filter(|&v| g.degree(v) == 1).collect()
}

pub fn path_graph(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    Graph::new(n, &edges).unwrap()
}

pub fn cycle_graph(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).map(|v| (v, (v + 1) % n)).collect();
    Graph::new(n, &edges).unwrap()
}

pub fn star_graph(q: usize) -> Graph {
    let edges: Vec<_> = (1..=q).map(|v| (0, v)).collect();
    Graph::new(q + 1, &edges).unwrap()
}

/// Random connected graph on `n` vertices with an edge density drawn from
/// `[0.25, 0.6]`.
pub fn random_connected(n: usize, rng: &mut SeededRng) -> Graph {
    let p = rng.gen_range(0.25..0.6);
    gen::connected_gnp(n, p, 100_000, rng).expect("dense enough to connect").0
}

/// Random connected graph with at least one degree-1 vertex: a connected
/// core plus one to three pendant vertices.
pub fn random_with_leaf(n: usize, rng: &mut SeededRng) -> Graph {
    let pendants = rng.gen_range(1..=3.min(n - 2));
    let core = random_connected(n - pendants, rng);
    let mut edges: Vec<(Vertex, Vertex)> = core.edges().iter().map(|e| (e.u, e.v)).collect();
    for p in n - pendants..n {
        edges.push((rng.gen_range(0..p), p));
    }
    let g = Graph::new(n, &edges).unwrap();
    assert!(!leaves(&g).is_empty());
    g
}

/// Normalized instance with distinct sets and `2 <= eta, h <= max`.
pub fn random_normalized(max: usize, rng: &mut SeededRng) -> SetCoverInstance {
    loop {
        let eta = rng.gen_range(2..=max);
        let h = rng.gen_range(2..=max);
        if let Some(inst) = gen::random_normalized_instance(eta, h, 10_000, rng) {
            return inst;
        }
    }
}
