use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::model::{Instance, Problem};

/// Simple bipartite graph with vertices `0..left` and `0..right` on each side.
///
/// Adjacency lists are kept sorted by neighbour id so every algorithm
/// working on the graph is deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    left: usize,
    right: usize,
    edges: Vec<(usize, usize)>,
    left_adj: Vec<Vec<(usize, usize)>>,
    right_adj: Vec<Vec<(usize, usize)>>,
}

impl BipartiteGraph {
    pub fn new(left: usize, right: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut left_adj = vec![Vec::new(); left];
        let mut right_adj = vec![Vec::new(); right];
        for (e, &(u, v)) in edges.iter().enumerate() {
            if u >= left || v >= right {
                return Err(Error::Graph(format!("edge ({u}, {v}) leaves the vertex range")));
            }
            if left_adj[u].iter().any(|&(w, _)| w == v) {
                return Err(Error::Graph(format!("parallel edge ({u}, {v})")));
            }
            left_adj[u].push((v, e));
            right_adj[v].push((u, e));
        }
        for adj in left_adj.iter_mut().chain(right_adj.iter_mut()) {
            adj.sort_unstable();
        }
        Ok(BipartiteGraph {
            left,
            right,
            edges,
            left_adj,
            right_adj,
        })
    }

    pub fn left_count(&self) -> usize {
        self.left
    }

    pub fn right_count(&self) -> usize {
        self.right
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// `(right neighbour, edge id)` pairs of a left vertex.
    pub fn left_neighbors(&self, u: usize) -> &[(usize, usize)] {
        &self.left_adj[u]
    }

    /// `(left neighbour, edge id)` pairs of a right vertex.
    pub fn right_neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.right_adj[v]
    }

    pub fn left_degree(&self, u: usize) -> usize {
        self.left_adj[u].len()
    }

    pub fn right_degree(&self, v: usize) -> usize {
        self.right_adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.left_adj
            .iter()
            .chain(self.right_adj.iter())
            .map(Vec::len)
            .max()
            .unwrap_or(0)
    }

    /// One `L<u> R<v>` line per edge.
    pub fn edge_list(&self) -> String {
        let mut out = String::new();
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "L{u} R{v}");
        }
        out
    }
}

/// `G(S)`: teams of `S` on the left, the problems they announced on the right.
#[derive(Debug, Clone)]
pub struct PortfolioGraph {
    pub graph: BipartiteGraph,
    /// Team index of each left vertex.
    pub teams: Vec<usize>,
    /// Problem of each right vertex, ascending.
    pub problems: Vec<Problem>,
}

impl PortfolioGraph {
    pub fn problem_degree(&self, p: Problem) -> usize {
        self.problems
            .binary_search(&p)
            .map(|v| self.graph.right_degree(v))
            .unwrap_or(0)
    }

    /// Edge list with team ids and problem labels, one `team problem` per line.
    pub fn edge_list(&self, instance: &Instance) -> String {
        let mut out = String::new();
        for &(u, v) in self.graph.edges() {
            let _ = writeln!(out, "{} p{}", instance.team(self.teams[u]).id, self.problems[v]);
        }
        out
    }
}

/// Builds the team-problem graph of a team subset.
pub fn portfolio_graph(instance: &Instance, teams: &[usize]) -> PortfolioGraph {
    let mut problems: Vec<Problem> = teams
        .iter()
        .flat_map(|&t| instance.portfolio(t).iter().copied())
        .collect();
    problems.sort_unstable();
    problems.dedup();
    let edges = teams
        .iter()
        .enumerate()
        .flat_map(|(u, &t)| {
            let problems = &problems;
            instance
                .portfolio(t)
                .iter()
                .map(move |p| (u, problems.binary_search(p).expect("problem listed")))
        })
        .collect();
    let graph = BipartiteGraph::new(teams.len(), problems.len(), edges)
        .expect("portfolio graphs have no parallel edges");
    PortfolioGraph {
        graph,
        teams: teams.to_vec(),
        problems,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::parse_instance;

    #[test]
    fn single_team_is_a_star() {
        let inst =
            parse_instance("teams=3 problems=9 rooms=3\na s 1 2 3\nb t 4 5 6\nc u 7 8 9\n").unwrap();
        let g = portfolio_graph(&inst, &[1]);
        assert_eq!(g.graph.edge_count(), 3);
        assert_eq!(g.graph.left_degree(0), 3);
        assert_eq!(g.graph.max_degree(), 3);
        assert_eq!(g.edge_list(&inst), "b p4\nb p5\nb p6\n");
    }

    #[test]
    fn rejects_parallel_edges() {
        assert!(BipartiteGraph::new(2, 2, vec![(0, 1), (0, 1)]).is_err());
        assert!(BipartiteGraph::new(2, 2, vec![(0, 2)]).is_err());
    }
}
