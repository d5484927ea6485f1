use super::{DivisionStats, GraphRDivision, Region};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::instance::Instance;

pub fn graph_r_division(instance: &Instance, r: usize) -> Result<GraphRDivision> {
    divide_graph(instance.graph()?, r)
}

/// Weak r-division of an arbitrary graph by recursive BFS-level separators.
///
/// Pieces are edge sets, so every edge lands in exactly one region; vertices
/// on a separator level are shared by the two sides.
pub fn divide_graph(graph: &Graph, r: usize) -> Result<GraphRDivision> {
    if r < 2 {
        return Err(Error::InvalidParameter(format!("r must be at least 2, got {r}")));
    }
    let n = graph.vertex_count();
    let mut splitter = Splitter {
        graph,
        r,
        in_piece: vec![false; graph.edge_count()],
        allowed: vec![false; n],
        out: Vec::new(),
    };
    let all: Vec<usize> = (0..graph.edge_count()).collect();
    if !all.is_empty() {
        splitter.split(all);
    }
    let mut regions: Vec<Region> = splitter
        .out
        .into_iter()
        .map(|edges| Region::from_edges(graph, edges))
        .collect();
    for v in 0..n {
        if graph.degree(v) == 0 {
            regions.push(Region {
                vertices: vec![v],
                edges: Vec::new(),
                boundary: Vec::new(),
            });
        }
    }
    Ok(GraphRDivision { r, n, regions })
}

struct Splitter<'a> {
    graph: &'a Graph,
    r: usize,
    in_piece: Vec<bool>,
    allowed: Vec<bool>,
    out: Vec<Vec<usize>>,
}

impl Splitter<'_> {
    fn vertices(&self, piece: &[usize]) -> Vec<usize> {
        let mut vs: Vec<usize> = piece
            .iter()
            .flat_map(|&e| {
                let e = self.graph.edge(e);
                [e.u, e.v]
            })
            .collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    fn levels(&self, source: usize) -> Vec<usize> {
        self.graph
            .bfs_levels(source, &self.allowed, |e| self.in_piece[e])
    }

    fn split(&mut self, piece: Vec<usize>) {
        let verts = self.vertices(&piece);
        if verts.len() <= self.r {
            self.out.push(piece);
            return;
        }
        for &e in &piece {
            self.in_piece[e] = true;
        }
        for &v in &verts {
            self.allowed[v] = true;
        }
        let first = self.levels(verts[0]);
        let parts = if verts.iter().any(|&v| first[v] == usize::MAX) {
            self.components(&piece, &verts)
        } else {
            let far = *verts
                .iter()
                .max_by_key(|&&v| (first[v], std::cmp::Reverse(v)))
                .expect("nonempty");
            let level = self.levels(far);
            self.level_split(&piece, &verts, &level)
        };
        for &e in &piece {
            self.in_piece[e] = false;
        }
        for &v in &verts {
            self.allowed[v] = false;
        }
        for part in parts {
            self.split(part);
        }
    }

    fn components(&self, piece: &[usize], verts: &[usize]) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.graph.vertex_count()];
        let mut count = 0;
        for &v in verts {
            if comp[v] == usize::MAX {
                let lv = self.levels(v);
                for &w in verts {
                    if lv[w] != usize::MAX {
                        comp[w] = count;
                    }
                }
                count += 1;
            }
        }
        let mut parts = vec![Vec::new(); count];
        for &e in piece {
            parts[comp[self.graph.edge(e).u]].push(e);
        }
        parts
    }

    fn level_split(&self, piece: &[usize], verts: &[usize], level: &[usize]) -> Vec<Vec<usize>> {
        let max = verts.iter().map(|&v| level[v]).max().unwrap_or(0);
        if max < 2 {
            let (a, b) = piece.split_at(piece.len() / 2);
            return vec![a.to_vec(), b.to_vec()];
        }
        let mut per_level = vec![0usize; max + 1];
        for &v in verts {
            per_level[level[v]] += 1;
        }
        let total = verts.len();
        let mut best = (usize::MAX, usize::MAX, 0);
        let mut below = 0;
        for l in 1..max {
            below += per_level[l - 1];
            let side_a = below + per_level[l];
            let side_b = total - below;
            let key = (side_a.max(side_b), per_level[l], l);
            if key < best {
                best = key;
            }
        }
        let cut = best.2;
        let (a, b): (Vec<usize>, Vec<usize>) = piece.iter().partition(|&&e| {
            let e = self.graph.edge(e);
            level[e.u].min(level[e.v]) < cut
        });
        vec![a, b]
    }
}

impl GraphRDivision {
    pub fn stats(&self) -> DivisionStats {
        let boundary_total: usize = self.regions.iter().map(|r| r.boundary.len()).sum();
        DivisionStats::new(
            self.regions.len(),
            self.regions.iter().map(|r| r.vertices.len()).max().unwrap_or(0),
            boundary_total,
            self.r,
            self.n,
            0.5,
        )
    }

    /// Checks that every edge lies in exactly one region, every vertex in some
    /// region, region sizes are at most `r`, and boundaries match `graph`.
    pub fn audit(&self, graph: &Graph) -> std::result::Result<(), String> {
        if self.n != graph.vertex_count() {
            return Err(format!(
                "division has {} vertices, graph has {}",
                self.n,
                graph.vertex_count()
            ));
        }
        let mut edge_hits = vec![0usize; graph.edge_count()];
        let mut covered = vec![false; self.n];
        for (i, region) in self.regions.iter().enumerate() {
            if region.vertices.len() > self.r {
                return Err(format!(
                    "region {i} has {} vertices, r = {}",
                    region.vertices.len(),
                    self.r
                ));
            }
            for &e in &region.edges {
                edge_hits[e] += 1;
                let ed = graph.edge(e);
                if region.vertices.binary_search(&ed.u).is_err()
                    || region.vertices.binary_search(&ed.v).is_err()
                {
                    return Err(format!("region {i} holds edge {e} without its endpoints"));
                }
            }
            for &v in &region.vertices {
                covered[v] = true;
            }
            let expect = Region::from_edges(graph, region.edges.clone());
            if !region.edges.is_empty() && expect.boundary != region.boundary {
                return Err(format!("region {i} has a wrong boundary"));
            }
        }
        if let Some(e) = edge_hits.iter().position(|&h| h != 1) {
            return Err(format!("edge {e} lies in {} regions", edge_hits[e]));
        }
        if let Some(v) = covered.iter().position(|&c| !c) {
            return Err(format!("vertex {v} lies in no region"));
        }
        Ok(())
    }
}
