use std::collections::VecDeque;

use crate::coloring::graph::BipartiteGraph;

/// A set of vertex-disjoint edges, stored as `(left, right)` pairs sorted by left vertex.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Matching {
    pub pairs: Vec<(usize, usize)>,
}

impl Matching {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn is_valid_in(&self, graph: &BipartiteGraph) -> bool {
        let mut left = vec![false; graph.left_count()];
        let mut right = vec![false; graph.right_count()];
        self.pairs.iter().all(|&(u, v)| {
            let edge = graph.left_neighbors(u).iter().any(|&(w, _)| w == v);
            let fresh = !left[u] && !right[v];
            left[u] = true;
            right[v] = true;
            edge && fresh
        })
    }
}

const FREE: usize = usize::MAX;

/// Maximum-cardinality matching by Hopcroft-Karp.
///
/// Augmenting paths are explored in adjacency order, which is sorted by
/// vertex id, so the result is a function of the graph alone.
pub fn max_matching(graph: &BipartiteGraph) -> Matching {
    let n = graph.left_count();
    let mut mate_left = vec![FREE; n];
    let mut mate_right = vec![FREE; graph.right_count()];
    let mut dist = vec![0usize; n];

    loop {
        // Layer the left side from the free vertices.
        let mut queue = VecDeque::new();
        for u in 0..n {
            if mate_left[u] == FREE {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = usize::MAX;
            }
        }
        let mut reachable_free = false;
        while let Some(u) = queue.pop_front() {
            for &(v, _) in graph.left_neighbors(u) {
                let w = mate_right[v];
                if w == FREE {
                    reachable_free = true;
                } else if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        if !reachable_free {
            break;
        }
        let mut augmented = false;
        for u in 0..n {
            if mate_left[u] == FREE && augment(graph, u, &mut mate_left, &mut mate_right, &mut dist) {
                augmented = true;
            }
        }
        if !augmented {
            break;
        }
    }

    Matching {
        pairs: mate_left
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != FREE)
            .map(|(u, &v)| (u, v))
            .collect(),
    }
}

fn augment(
    graph: &BipartiteGraph,
    u: usize,
    mate_left: &mut [usize],
    mate_right: &mut [usize],
    dist: &mut [usize],
) -> bool {
    for &(v, _) in graph.left_neighbors(u) {
        let w = mate_right[v];
        let ok = w == FREE
            || (dist[w] == dist[u].wrapping_add(1)
                && augment(graph, w, mate_left, mate_right, dist));
        if ok {
            mate_left[u] = v;
            mate_right[v] = u;
            return true;
        }
    }
    dist[u] = usize::MAX;
    false
}
