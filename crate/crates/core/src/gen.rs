//! Seeded random instance generators.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, Vertex};
use crate::setcover::SetCoverInstance;

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Erdős–Rényi `G(n, p)` graph, one draw.
pub fn gnp<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, &edges).expect("generated edges are simple")
}

/// Draws `G(n, p)` until the sample is connected. Returns the graph and the
/// number of draws; `None` after `max_tries` disconnected draws.
pub fn connected_gnp<R: Rng>(n: usize, p: f64, max_tries: usize, rng: &mut R) -> Option<(Graph, usize)> {
    (1..=max_tries).find_map(|t| {
        let g = gnp(n, p, rng);
        g.is_connected().then_some((g, t))
    })
}

/// Uniform random recursive tree with shuffled labels.
pub fn random_tree<R: Rng>(n: usize, rng: &mut R) -> Graph {
    let mut labels: Vec<Vertex> = (0..n).collect();
    labels.shuffle(rng);
    let edges: Vec<(Vertex, Vertex)> = (1..n)
        .map(|v| (labels[rng.gen_range(0..v)], labels[v]))
        .collect();
    Graph::new(n, &edges).expect("tree edges are simple")
}

/// Each item joins each set with probability 1/2; uncovered items are
/// then dropped into a uniformly chosen set.
pub fn random_cover_instance<R: Rng>(eta: usize, h: usize, rng: &mut R) -> SetCoverInstance {
    assert!(h > 0 || eta == 0, "items need at least one set");
    let mut sets = vec![Vec::new(); h];
    for set in sets.iter_mut() {
        set.extend((0..eta).filter(|_| rng.gen_bool(0.5)));
    }
    for i in 0..eta {
        if !sets.iter().any(|s| s.contains(&i)) {
            sets[rng.gen_range(0..h)].push(i);
        }
    }
    SetCoverInstance::new(eta, sets).expect("every item is placed")
}

/// Whether an instance with `eta` items and `h` distinct sets of size >= 2
/// can exist.
pub fn normalized_shape_exists(eta: usize, h: usize) -> bool {
    if eta < 2 || h < 2 {
        return false;
    }
    // Subsets of size >= 2: 2^eta - eta - 1.
    eta >= 6 || (1usize << eta) - eta - 1 >= h
}

/// Rejection-samples an instance with distinct sets, every set of size
/// >= 2 and every item in >= 2 sets. `None` if the shape is impossible or
/// `max_tries` samples all fail.
pub fn random_normalized_instance<R: Rng>(
    eta: usize,
    h: usize,
    max_tries: usize,
    rng: &mut R,
) -> Option<SetCoverInstance> {
    if !normalized_shape_exists(eta, h) {
        return None;
    }
    (0..max_tries).find_map(|_| {
        let inst = random_cover_instance(eta, h, rng);
        (inst.is_normalized() && inst.has_distinct_sets()).then_some(inst)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_streams_repeat() {
        let a = connected_gnp(8, 0.4, 1000, &mut rng(7)).unwrap();
        let b = connected_gnp(8, 0.4, 1000, &mut rng(7)).unwrap();
        assert_eq!(a, b);
        assert!(a.0.is_connected());
    }

    #[test]
    fn trees_are_trees() {
        let mut r = rng(1);
        for n in 1..12 {
            let t = random_tree(n, &mut r);
            assert_eq!(t.edge_count(), n - 1);
            assert!(t.is_connected());
        }
    }

    #[test]
    fn normalized_instances() {
        let mut r = rng(3);
        let inst = random_normalized_instance(4, 5, 10_000, &mut r).unwrap();
        assert!(inst.is_normalized() && inst.has_distinct_sets());
        assert!(random_normalized_instance(2, 2, 100, &mut r).is_none());
        assert!(normalized_shape_exists(3, 4));
        assert!(!normalized_shape_exists(3, 5));
    }
}
