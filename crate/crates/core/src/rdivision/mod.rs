//! Weak r-divisions of graphs and point sets, with checks that region
//! boundaries separate nearby elements from far ones.

mod euclidean;
mod graph;
mod verify;

use std::fmt::Write as _;

pub use euclidean::{euclidean_r_division, EuclideanRDivision, EuclideanRegion, MAX_DENSIFICATIONS};
pub use graph::{divide_graph, graph_r_division};
pub use verify::{verify_euclidean_separation, verify_graph_separation, SeparationReport, Witness};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Measured constants of a division.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DivisionStats {
    pub regions: usize,
    pub max_size: usize,
    pub boundary_total: usize,
    /// `regions * r / n`
    pub c1: f64,
    /// `boundary_total * r^exponent / n`
    pub c2: f64,
}

impl DivisionStats {
    fn new(
        regions: usize,
        max_size: usize,
        boundary_total: usize,
        r: usize,
        n: usize,
        exponent: f64,
    ) -> Self {
        let n = n.max(1) as f64;
        DivisionStats {
            regions,
            max_size,
            boundary_total,
            c1: regions as f64 * r as f64 / n,
            c2: boundary_total as f64 * (r as f64).powf(exponent) / n,
        }
    }
}

/// An edge-induced piece of a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region {
    /// Sorted vertex ids.
    pub vertices: Vec<usize>,
    /// Sorted edge indices.
    pub edges: Vec<usize>,
    /// Vertices with an incident edge outside the region.
    pub boundary: Vec<usize>,
}

impl Region {
    fn from_edges(graph: &Graph, mut edges: Vec<usize>) -> Region {
        edges.sort_unstable();
        let mut deg = std::collections::BTreeMap::new();
        for &e in &edges {
            let ed = graph.edge(e);
            *deg.entry(ed.u).or_insert(0usize) += 1;
            *deg.entry(ed.v).or_insert(0usize) += 1;
        }
        let vertices = deg.keys().copied().collect();
        let boundary = deg
            .iter()
            .filter(|&(&v, &d)| graph.degree(v) > d)
            .map(|(&v, _)| v)
            .collect();
        Region {
            vertices,
            edges,
            boundary,
        }
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn is_boundary(&self, v: usize) -> bool {
        self.boundary.binary_search(&v).is_ok()
    }

    /// In the region and not on its boundary.
    pub fn is_internal(&self, v: usize) -> bool {
        self.contains(v) && !self.is_boundary(v)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GraphRDivision {
    pub r: usize,
    /// Vertex count of the divided graph.
    pub n: usize,
    pub regions: Vec<Region>,
}

impl GraphRDivision {
    /// Dump: a `r=` / `n=` header, then one block per region.
    pub fn to_text(&self) -> String {
        let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
        let mut out = format!("r={}\nn={}\n", self.r, self.n);
        for (i, reg) in self.regions.iter().enumerate() {
            writeln!(out, "region {i}").unwrap();
            writeln!(out, "members {}", join(&reg.vertices)).unwrap();
            writeln!(out, "boundary {}", join(&reg.boundary)).unwrap();
            writeln!(out, "edges {}", join(&reg.edges)).unwrap();
        }
        out
    }

    pub fn from_text(text: &str) -> Result<GraphRDivision> {
        let err = |line: usize, message: &str| Error::Parse {
            line,
            message: message.to_string(),
        };
        let mut r = None;
        let mut n = None;
        let mut regions: Vec<Region> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let ids = |rest: &str| -> Result<Vec<usize>> {
                rest.split_whitespace()
                    .map(|t| t.parse().map_err(|_| err(line_no, "bad id")))
                    .collect()
            };
            if let Some(v) = line.strip_prefix("r=") {
                r = Some(v.trim().parse().map_err(|_| err(line_no, "bad r"))?);
            } else if let Some(v) = line.strip_prefix("n=") {
                n = Some(v.trim().parse().map_err(|_| err(line_no, "bad n"))?);
            } else if line.starts_with("region") {
                regions.push(Region {
                    vertices: Vec::new(),
                    edges: Vec::new(),
                    boundary: Vec::new(),
                });
            } else {
                let (key, rest) = line.split_once(' ').unwrap_or((line, ""));
                let reg = regions
                    .last_mut()
                    .ok_or_else(|| err(line_no, "list before any region"))?;
                match key {
                    "members" => reg.vertices = ids(rest)?,
                    "boundary" => reg.boundary = ids(rest)?,
                    "edges" => reg.edges = ids(rest)?,
                    _ => return Err(err(line_no, "unknown division line")),
                }
            }
        }
        Ok(GraphRDivision {
            r: r.ok_or_else(|| err(0, "missing r="))?,
            n: n.ok_or_else(|| err(0, "missing n="))?,
            regions,
        })
    }
}
