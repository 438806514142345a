use crate::coloring::graph::BipartiteGraph;

/// Colour of every edge, indexed like [`BipartiteGraph::edges`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeColoring {
    pub colors: Vec<usize>,
    pub color_count: usize,
}

impl EdgeColoring {
    /// No two edges sharing a vertex have the same colour.
    pub fn is_proper(&self, graph: &BipartiteGraph) -> bool {
        let mut left = vec![Vec::new(); graph.left_count()];
        let mut right = vec![Vec::new(); graph.right_count()];
        for (&(u, v), &c) in graph.edges().iter().zip(&self.colors) {
            if c >= self.color_count || left[u].contains(&c) || right[v].contains(&c) {
                return false;
            }
            left[u].push(c);
            right[v].push(c);
        }
        self.colors.len() == graph.edge_count()
    }

    /// Edge ids of one colour class.
    pub fn class(&self, color: usize) -> Vec<usize> {
        self.colors
            .iter()
            .enumerate()
            .filter(|(_, &c)| c == color)
            .map(|(e, _)| e)
            .collect()
    }
}

const NONE: usize = usize::MAX;

/// Proper edge colouring with exactly `Δ` colours (König's theorem).
///
/// Edges are coloured in id order. When the smallest colour `a` free at the
/// left end is busy at the right end, the `a`/`b` alternating path leaving
/// the right end is swapped, where `b` is free at the right end; in a
/// bipartite graph that path never returns to the left end.
pub fn konig_edge_coloring(graph: &BipartiteGraph) -> EdgeColoring {
    let delta = graph.max_degree();
    // at_left[u][c] / at_right[v][c]: edge of colour c at the vertex.
    let mut at_left = vec![vec![NONE; delta]; graph.left_count()];
    let mut at_right = vec![vec![NONE; delta]; graph.right_count()];
    let mut colors = vec![NONE; graph.edge_count()];
    let edges = graph.edges();

    for (e, &(u, v)) in edges.iter().enumerate() {
        let a = free_color(&at_left[u]);
        if at_right[v][a] != NONE {
            let b = free_color(&at_right[v]);
            // Walk v -a- w -b- x -a- ... and collect the path.
            let mut path = Vec::new();
            let mut on_right = true;
            let mut vertex = v;
            let mut want = a;
            loop {
                let next = if on_right {
                    at_right[vertex][want]
                } else {
                    at_left[vertex][want]
                };
                if next == NONE {
                    break;
                }
                path.push(next);
                let (l, r) = edges[next];
                vertex = if on_right { l } else { r };
                on_right = !on_right;
                want = if want == a { b } else { a };
            }
            for &p in &path {
                let (l, r) = edges[p];
                at_left[l][colors[p]] = NONE;
                at_right[r][colors[p]] = NONE;
            }
            for &p in &path {
                let (l, r) = edges[p];
                let c = if colors[p] == a { b } else { a };
                colors[p] = c;
                at_left[l][c] = p;
                at_right[r][c] = p;
            }
            debug_assert_eq!(at_left[u][a], NONE);
        }
        colors[e] = a;
        at_left[u][a] = e;
        at_right[v][a] = e;
    }

    EdgeColoring {
        colors,
        color_count: delta,
    }
}

fn free_color(slots: &[usize]) -> usize {
    slots
        .iter()
        .position(|&e| e == NONE)
        .expect("vertex degree never exceeds the maximum degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge() {
        let g = BipartiteGraph::new(1, 1, vec![(0, 0)]).unwrap();
        let c = konig_edge_coloring(&g);
        assert_eq!(c.color_count, 1);
        assert_eq!(c.colors, vec![0]);
    }

    #[test]
    fn even_cycle_needs_path_swap() {
        // 6-cycle ordered so the greedy choice conflicts.
        let g = BipartiteGraph::new(3, 3, vec![(0, 0), (1, 1), (0, 1), (1, 2), (2, 2), (2, 0)])
            .unwrap();
        let c = konig_edge_coloring(&g);
        assert_eq!(c.color_count, 2);
        assert!(c.is_proper(&g));
    }

    #[test]
    fn complete_four_by_four() {
        let edges = (0..4).flat_map(|u| (0..4).map(move |v| (u, v))).collect();
        let g = BipartiteGraph::new(4, 4, edges).unwrap();
        let c = konig_edge_coloring(&g);
        assert_eq!(c.color_count, 4);
        assert!(c.is_proper(&g));
        for color in 0..4 {
            assert_eq!(c.class(color).len(), 4);
        }
    }
}
