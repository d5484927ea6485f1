//! Graph Voronoi partitions and their contractions.
//!
//! Every vertex belongs to the cell of its nearest center; distance ties go
//! to the center with the lowest id.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::instance::{Instance, Solution};
use crate::metric::DistanceOracle;

#[derive(Debug, Clone, PartialEq)]
pub struct VoronoiPartition {
    centers: Vec<usize>,
    cell_of: Vec<usize>,
    dist: Vec<f64>,
}

impl VoronoiPartition {
    /// Centers in ascending id order (also their priority order).
    pub fn centers(&self) -> &[usize] {
        &self.centers
    }

    pub fn vertex_count(&self) -> usize {
        self.cell_of.len()
    }

    pub fn center_of(&self, v: usize) -> usize {
        self.cell_of[v]
    }

    pub fn cell_of(&self) -> &[usize] {
        &self.cell_of
    }

    /// Distance from `v` to its center.
    pub fn distance(&self, v: usize) -> f64 {
        self.dist[v]
    }

    /// Cells in center order, members ascending.
    pub fn cells(&self) -> Vec<Vec<usize>> {
        let mut cells = vec![Vec::new(); self.centers.len()];
        for (v, c) in self.cell_of.iter().enumerate() {
            cells[self.centers.binary_search(c).expect("center")].push(v);
        }
        cells
    }

    /// Whether every cell induces a connected subgraph of `graph`.
    pub fn cells_connected(&self, graph: &Graph) -> bool {
        let n = graph.vertex_count();
        let mut seen = vec![false; n];
        let mut stack = Vec::new();
        for &c in &self.centers {
            seen[c] = true;
            stack.push(c);
            while let Some(v) = stack.pop() {
                for &(w, _) in graph.incident(v) {
                    if !seen[w] && self.cell_of[w] == c {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        seen.into_iter().all(|x| x)
    }

    /// One `vertex center distance` line per vertex.
    pub fn to_text(&self) -> String {
        let mut out = String::from("# vertex center distance\n");
        for v in 0..self.cell_of.len() {
            writeln!(out, "{} {} {:?}", v, self.cell_of[v], self.dist[v]).unwrap();
        }
        out
    }
}

pub fn voronoi_partition(
    instance: &Instance,
    oracle: &DistanceOracle,
    s: &Solution,
) -> Result<VoronoiPartition> {
    let graph = instance.graph()?;
    partition_graph(graph, oracle, s)
}

pub fn partition_graph(
    graph: &Graph,
    oracle: &DistanceOracle,
    s: &Solution,
) -> Result<VoronoiPartition> {
    let n = graph.vertex_count();
    if oracle.len() != n {
        return Err(Error::PartitionMismatch(format!(
            "oracle covers {} elements, graph has {n} vertices",
            oracle.len()
        )));
    }
    if let Some(&bad) = s.iter().find(|&&c| c >= n) {
        return Err(Error::UnknownId(bad));
    }
    let mut cell_of = Vec::with_capacity(n);
    let mut dist = Vec::with_capacity(n);
    for u in 0..n {
        let (mut best, mut best_d) = (usize::MAX, f64::INFINITY);
        for &c in s {
            let d = oracle.dist(u, c);
            if d < best_d {
                best = c;
                best_d = d;
            }
        }
        cell_of.push(best);
        dist.push(best_d);
    }
    Ok(VoronoiPartition {
        centers: s.centers().to_vec(),
        cell_of,
        dist,
    })
}

/// `G` with every cell contracted to a single vertex, made simple.
#[derive(Debug, Clone, PartialEq)]
pub struct ContractedGraph {
    centers: Vec<usize>,
    hat: Vec<usize>,
    edges: Vec<(usize, usize)>,
}

impl ContractedGraph {
    /// Quotient vertex `i` stands for the cell of `centers()[i]`.
    pub fn centers(&self) -> &[usize] {
        &self.centers
    }

    pub fn vertex_count(&self) -> usize {
        self.centers.len()
    }

    /// Quotient vertex of an original vertex.
    pub fn hat(&self, v: usize) -> usize {
        self.hat[v]
    }

    pub fn hat_map(&self) -> &[usize] {
        &self.hat
    }

    /// Quotient vertex of a center, if it is one.
    pub fn vertex_of_center(&self, center: usize) -> Option<usize> {
        self.centers.binary_search(&center).ok()
    }

    /// Sorted `(a, b)` pairs with `a < b`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// The quotient as a unit-weight graph.
    pub fn to_graph(&self) -> Graph {
        let edges = self
            .edges
            .iter()
            .map(|&(u, v)| Edge { u, v, weight: 1.0 })
            .collect();
        Graph::new(self.centers.len(), edges).expect("quotient edges are in range")
    }

    /// Edge-list dump with unit weights; comments map quotient ids to centers.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, c) in self.centers.iter().enumerate() {
            writeln!(out, "# {i} = cell of {c}").unwrap();
        }
        for &(u, v) in &self.edges {
            writeln!(out, "{u} {v} 1.0").unwrap();
        }
        out
    }
}

pub fn contract(graph: &Graph, part: &VoronoiPartition) -> Result<ContractedGraph> {
    if part.vertex_count() != graph.vertex_count() {
        return Err(Error::PartitionMismatch(format!(
            "partition covers {} vertices, graph has {}",
            part.vertex_count(),
            graph.vertex_count()
        )));
    }
    let hat: Vec<usize> = part
        .cell_of
        .iter()
        .map(|c| part.centers.binary_search(c).expect("assigned to a center"))
        .collect();
    let mut edges: Vec<(usize, usize)> = graph
        .edges()
        .iter()
        .filter_map(|e| {
            let (a, b) = (hat[e.u], hat[e.v]);
            (a != b).then(|| (a.min(b), a.max(b)))
        })
        .collect();
    edges.sort_unstable();
    edges.dedup();
    Ok(ContractedGraph {
        centers: part.centers.clone(),
        hat,
        edges,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{generate_grid, Space, WeightModel};

    fn path3() -> Instance {
        let edges = vec![
            Edge {
                u: 0,
                v: 1,
                weight: 1.0,
            },
            Edge {
                u: 1,
                v: 2,
                weight: 1.0,
            },
        ];
        Instance::new(Space::Graph(Graph::new(3, edges).unwrap())).unwrap()
    }

    #[test]
    fn tie_goes_to_lower_id() {
        let inst = path3();
        let o = DistanceOracle::new(&inst);
        let part = voronoi_partition(&inst, &o, &Solution::new(vec![2, 0]).unwrap()).unwrap();
        assert_eq!(part.cells(), vec![vec![0, 1], vec![2]]);
        let q = contract(inst.graph().unwrap(), &part).unwrap();
        assert_eq!(q.vertex_count(), 2);
        assert_eq!(q.edges(), &[(0, 1)]);
    }

    #[test]
    fn singleton_cells_give_the_graph_back() {
        let inst = generate_grid(3, 3, WeightModel::Unit).unwrap();
        let o = DistanceOracle::new(&inst);
        let all = Solution::new((0..9).collect()).unwrap();
        let part = voronoi_partition(&inst, &o, &all).unwrap();
        assert!(part.cells().iter().all(|c| c.len() == 1));
        let q = contract(inst.graph().unwrap(), &part).unwrap();
        assert_eq!(q.edges().len(), 12);
    }

    #[test]
    fn opposite_corners() {
        let inst = generate_grid(4, 4, WeightModel::Unit).unwrap();
        let o = DistanceOracle::new(&inst);
        let part = voronoi_partition(&inst, &o, &Solution::new(vec![0, 15]).unwrap()).unwrap();
        assert_eq!(part.cells().iter().map(Vec::len).sum::<usize>(), 16);
        assert!(part.cells_connected(inst.graph().unwrap()));
    }

    #[test]
    fn euclidean_is_rejected() {
        let inst = crate::instance::generate_random_euclidean(5, 2, 1).unwrap();
        let o = DistanceOracle::new(&inst);
        let s = Solution::new(vec![0]).unwrap();
        assert!(matches!(
            voronoi_partition(&inst, &o, &s),
            Err(Error::NotAGraph)
        ));
    }

    #[test]
    fn size_mismatch_is_reported() {
        let inst = path3();
        let o = DistanceOracle::new(&inst);
        let part = voronoi_partition(&inst, &o, &Solution::new(vec![0]).unwrap()).unwrap();
        let grid = generate_grid(2, 2, WeightModel::Unit).unwrap();
        assert!(contract(grid.graph().unwrap(), &part).is_err());
    }
}
