//! Undirected edge-weighted graphs.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weight: f64,
}

/// An undirected graph on vertices `0..n` with strictly positive edge weights.
///
/// Parallel edges and self-loops are kept in the edge list; they never affect
/// shortest-path distances.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    /// `adj[v]` holds `(neighbor, edge index)` pairs.
    adj: Vec<Vec<(usize, usize)>>,
}

impl Graph {
    pub fn new(n: usize, edges: Vec<Edge>) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            if e.u >= n {
                return Err(Error::UnknownId(e.u));
            }
            if e.v >= n {
                return Err(Error::UnknownId(e.v));
            }
            if !e.weight.is_finite() || e.weight <= 0.0 {
                return Err(Error::NonPositiveWeight {
                    line: i + 1,
                    weight: e.weight,
                });
            }
            adj[e.u].push((e.v, i));
            if e.u != e.v {
                adj[e.v].push((e.u, i));
            }
        }
        Ok(Graph { n, edges, adj })
    }

    /// Builds a graph with unit weights from an edge list.
    pub fn unweighted(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let edges = edges
            .into_iter()
            .map(|(u, v)| Edge { u, v, weight: 1.0 })
            .collect();
        Graph::new(n, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, index: usize) -> Edge {
        self.edges[index]
    }

    /// `(neighbor, edge index)` pairs incident to `v`.
    pub fn incident(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Connected-component label per vertex and the number of components.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let mut label = vec![usize::MAX; self.n];
        let mut count = 0;
        let mut stack = Vec::new();
        for start in 0..self.n {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = count;
            stack.push(start);
            while let Some(v) = stack.pop() {
                for &(w, _) in &self.adj[v] {
                    if label[w] == usize::MAX {
                        label[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.components().1 == 1
    }

    /// Single-source shortest-path lengths; unreachable vertices get `f64::INFINITY`.
    pub fn dijkstra(&self, source: usize) -> Vec<f64> {
        let mut dist = vec![f64::INFINITY; self.n];
        let mut heap = BinaryHeap::new();
        dist[source] = 0.0;
        heap.push(HeapEntry {
            dist: 0.0,
            vertex: source,
        });
        while let Some(HeapEntry { dist: d, vertex: v }) = heap.pop() {
            if d > dist[v] {
                continue;
            }
            for &(w, e) in &self.adj[v] {
                let nd = d + self.edges[e].weight;
                if nd < dist[w] {
                    dist[w] = nd;
                    heap.push(HeapEntry { dist: nd, vertex: w });
                }
            }
        }
        dist
    }

    /// Breadth-first hop distances from `source`, restricted to `allowed` vertices
    /// and to edges accepted by `edge_ok`.
    pub fn bfs_levels(
        &self,
        source: usize,
        allowed: &[bool],
        edge_ok: impl Fn(usize) -> bool,
    ) -> Vec<usize> {
        let mut level = vec![usize::MAX; self.n];
        let mut queue = std::collections::VecDeque::new();
        level[source] = 0;
        queue.push_back(source);
        while let Some(v) = queue.pop_front() {
            for &(w, e) in &self.adj[v] {
                if allowed[w] && level[w] == usize::MAX && edge_ok(e) {
                    level[w] = level[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        level
    }
}

#[derive(Debug, Clone, Copy)]
struct HeapEntry {
    dist: f64,
    vertex: usize,
}

impl PartialEq for HeapEntry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for HeapEntry {}

impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HeapEntry {
    // Min-heap on distance, then vertex id.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.vertex.cmp(&self.vertex))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dijkstra_on_path() {
        let g = Graph::new(
            3,
            vec![
                Edge { u: 0, v: 1, weight: 1.0 },
                Edge { u: 1, v: 2, weight: 2.0 },
            ],
        )
        .unwrap();
        assert_eq!(g.dijkstra(0), vec![0.0, 1.0, 3.0]);
        assert_eq!(g.dijkstra(2), vec![3.0, 2.0, 0.0]);
    }

    #[test]
    fn shortcut_is_taken() {
        let g = Graph::new(
            3,
            vec![
                Edge { u: 0, v: 1, weight: 5.0 },
                Edge { u: 0, v: 2, weight: 1.0 },
                Edge { u: 2, v: 1, weight: 1.0 },
            ],
        )
        .unwrap();
        assert_eq!(g.dijkstra(0)[1], 2.0);
    }

    #[test]
    fn rejects_bad_weights_and_ids() {
        let bad = Graph::new(2, vec![Edge { u: 0, v: 1, weight: 0.0 }]);
        assert!(matches!(bad, Err(Error::NonPositiveWeight { .. })));
        let bad = Graph::new(2, vec![Edge { u: 0, v: 2, weight: 1.0 }]);
        assert!(matches!(bad, Err(Error::UnknownId(2))));
    }

    #[test]
    fn components_are_counted() {
        let g = Graph::unweighted(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(g.components().1, 2);
        assert!(!g.is_connected());
    }
}
