//! Undirected weighted graphs shared by the reductions, the k-way partition
//! solver and the instance parsers.

use crate::error::{Error, Result};
use std::collections::HashSet;

/// Simple undirected graph with real edge weights.
///
/// Edges are stored once with `u < v`; self-loops and duplicate pairs are
/// rejected at construction. The edge list is kept sorted so iteration
/// order (and thus floating-point accumulation) is deterministic.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    n: usize,
    edges: Vec<(usize, usize, f64)>,
}

impl WeightedGraph {
    pub fn new(n: usize, edges: Vec<(usize, usize, f64)>) -> Result<Self> {
        let mut normalized: Vec<(usize, usize, f64)> = Vec::with_capacity(edges.len());
        let mut seen: HashSet<(usize, usize)> = HashSet::with_capacity(edges.len());
        for (u, v, w) in edges {
            if u == v {
                return Err(Error::InvalidConfig(format!("self-loop at node {u}")));
            }
            if u >= n || v >= n {
                return Err(Error::InvalidConfig(format!(
                    "edge ({u},{v}) out of range for n={n}"
                )));
            }
            let key = (u.min(v), u.max(v));
            if !seen.insert(key) {
                return Err(Error::InvalidConfig(format!(
                    "duplicate edge ({},{})",
                    key.0, key.1
                )));
            }
            normalized.push((key.0, key.1, w));
        }
        normalized.sort_by_key(|&(u, v, _)| (u, v));
        Ok(WeightedGraph {
            n,
            edges: normalized,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize, f64)] {
        &self.edges
    }

    pub fn degree_of(&self, node: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(u, v, _)| u == node || v == node)
            .count()
    }

    /// Neighbor lists with weights, for per-node gradient accumulation.
    pub fn adjacency(&self) -> Vec<Vec<(usize, f64)>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v, w) in &self.edges {
            adj[u].push((v, w));
            adj[v].push((u, w));
        }
        adj
    }

    pub fn total_weight(&self) -> f64 {
        self.edges.iter().map(|&(_, _, w)| w).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_and_sorts_edges() {
        let g = WeightedGraph::new(3, vec![(2, 1, 1.0), (1, 0, 2.0)]).unwrap();
        assert_eq!(g.edges(), &[(0, 1, 2.0), (1, 2, 1.0)]);
    }

    #[test]
    fn rejects_self_loops_duplicates_and_range() {
        assert!(WeightedGraph::new(2, vec![(0, 0, 1.0)]).is_err());
        assert!(WeightedGraph::new(2, vec![(0, 1, 1.0), (1, 0, 2.0)]).is_err());
        assert!(WeightedGraph::new(2, vec![(0, 2, 1.0)]).is_err());
    }

    #[test]
    fn adjacency_is_symmetric() {
        let g = WeightedGraph::new(3, vec![(0, 1, 1.0), (1, 2, -2.0)]).unwrap();
        let adj = g.adjacency();
        assert_eq!(adj[0], vec![(1, 1.0)]);
        assert_eq!(adj[1], vec![(0, 1.0), (2, -2.0)]);
        assert_eq!(g.degree_of(1), 2);
    }
}
