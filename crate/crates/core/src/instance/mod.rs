//! Problem instances, solutions, their text formats, and instance generators.

mod format;
mod generate;

pub use format::{
    load_instance, load_solution, parse_instance, parse_solution, save_instance, save_solution,
    solution_to_text, Format,
};
pub use generate::{
    generate_grid, generate_random_euclidean, generate_tightness, TightnessInstance, WeightModel,
};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Points of `R^d`, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    dim: usize,
    coords: Vec<f64>,
}

impl PointSet {
    pub fn new(dim: usize, coords: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInstance("dimension must be positive".into()));
        }
        if !coords.len().is_multiple_of(dim) {
            return Err(Error::InvalidInstance(format!(
                "{} coordinates do not split into points of dimension {dim}",
                coords.len()
            )));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidInstance("non-finite coordinate".into()));
        }
        Ok(PointSet { dim, coords })
    }

    pub fn from_points(dim: usize, points: &[Vec<f64>]) -> Result<Self> {
        let mut coords = Vec::with_capacity(points.len() * dim);
        for (i, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(Error::DimensionMismatch {
                    line: i + 1,
                    expected: dim,
                    found: p.len(),
                });
            }
            coords.extend_from_slice(p);
        }
        PointSet::new(dim, coords)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn distance(&self, a: usize, b: usize) -> f64 {
        crate::geometry::euclid(self.point(a), self.point(b))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Space {
    Graph(Graph),
    Euclidean(PointSet),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InstanceKind {
    GraphMetric,
    Euclidean,
}

/// A clustering or facility-location instance.
///
/// Clients are an ordered list of element ids; repeating an id models client
/// multiplicity. Candidates are kept sorted and deduplicated.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    space: Space,
    clients: Vec<usize>,
    candidates: Vec<usize>,
    p: u32,
    opening_cost: Option<f64>,
    k: Option<usize>,
}

impl Instance {
    /// Instance where every element is both a client and a candidate, with `p = 1`.
    pub fn new(space: Space) -> Result<Self> {
        let n = match &space {
            Space::Graph(g) => g.vertex_count(),
            Space::Euclidean(ps) => ps.len(),
        };
        Instance::with_roles(space, (0..n).collect(), (0..n).collect(), 1)
    }

    pub fn with_roles(
        space: Space,
        clients: Vec<usize>,
        mut candidates: Vec<usize>,
        p: u32,
    ) -> Result<Self> {
        let n = match &space {
            Space::Graph(g) => {
                if g.vertex_count() == 0 {
                    return Err(Error::InvalidInstance("graph has no vertices".into()));
                }
                let (_, components) = g.components();
                if components != 1 {
                    return Err(Error::Disconnected { components });
                }
                g.vertex_count()
            }
            Space::Euclidean(ps) => {
                if ps.is_empty() {
                    return Err(Error::InvalidInstance("point set is empty".into()));
                }
                ps.len()
            }
        };
        if p == 0 {
            return Err(Error::InvalidInstance("exponent p must be at least 1".into()));
        }
        if clients.is_empty() {
            return Err(Error::InvalidInstance("no clients".into()));
        }
        if let Some(&bad) = clients.iter().chain(&candidates).find(|&&id| id >= n) {
            return Err(Error::UnknownId(bad));
        }
        candidates.sort_unstable();
        candidates.dedup();
        if candidates.is_empty() {
            return Err(Error::InvalidInstance("no candidate centers".into()));
        }
        Ok(Instance {
            space,
            clients,
            candidates,
            p,
            opening_cost: None,
            k: None,
        })
    }

    pub fn with_p(mut self, p: u32) -> Result<Self> {
        if p == 0 {
            return Err(Error::InvalidInstance("exponent p must be at least 1".into()));
        }
        self.p = p;
        Ok(self)
    }

    pub fn with_opening_cost(mut self, f: f64) -> Result<Self> {
        if !f.is_finite() || f < 0.0 {
            return Err(Error::InvalidInstance(format!("opening cost {f} is not a nonnegative number")));
        }
        self.opening_cost = Some(f);
        Ok(self)
    }

    pub fn without_opening_cost(mut self) -> Self {
        self.opening_cost = None;
        self
    }

    pub fn with_k(mut self, k: usize) -> Result<Self> {
        if k == 0 || k > self.candidates.len() {
            return Err(Error::InvalidInstance(format!(
                "k = {k} outside 1..={}",
                self.candidates.len()
            )));
        }
        self.k = Some(k);
        Ok(self)
    }

    pub fn kind(&self) -> InstanceKind {
        match self.space {
            Space::Graph(_) => InstanceKind::GraphMetric,
            Space::Euclidean(_) => InstanceKind::Euclidean,
        }
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn graph(&self) -> Result<&Graph> {
        match &self.space {
            Space::Graph(g) => Ok(g),
            Space::Euclidean(_) => Err(Error::NotAGraph),
        }
    }

    pub fn points(&self) -> Result<&PointSet> {
        match &self.space {
            Space::Euclidean(ps) => Ok(ps),
            Space::Graph(_) => Err(Error::NotEuclidean),
        }
    }

    /// Number of metric elements (vertices or points).
    pub fn element_count(&self) -> usize {
        match &self.space {
            Space::Graph(g) => g.vertex_count(),
            Space::Euclidean(ps) => ps.len(),
        }
    }

    pub fn clients(&self) -> &[usize] {
        &self.clients
    }

    pub fn candidates(&self) -> &[usize] {
        &self.candidates
    }

    pub fn is_candidate(&self, id: usize) -> bool {
        self.candidates.binary_search(&id).is_ok()
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn opening_cost(&self) -> Option<f64> {
        self.opening_cost
    }

    pub fn k(&self) -> Option<usize> {
        self.k
    }

    /// Checks that `s` only opens candidates.
    pub fn check_solution(&self, s: &Solution) -> Result<()> {
        if let Some(&bad) = s.iter().find(|&&c| !self.is_candidate(c)) {
            return Err(Error::InvalidSolution(format!("center {bad} is not a candidate")));
        }
        Ok(())
    }
}

/// A nonempty set of open centers, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Solution(Vec<usize>);

impl Solution {
    pub fn new(mut centers: Vec<usize>) -> Result<Self> {
        centers.sort_unstable();
        centers.dedup();
        if centers.is_empty() {
            return Err(Error::EmptySolution);
        }
        Ok(Solution(centers))
    }

    pub fn centers(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, id: usize) -> bool {
        self.0.binary_search(&id).is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, usize> {
        self.0.iter()
    }

    /// `|self \ other| + |other \ self|`.
    pub fn symmetric_difference_len(&self, other: &Solution) -> usize {
        let (mut i, mut j, mut shared) = (0, 0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    shared += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        self.0.len() + other.0.len() - 2 * shared
    }

    pub fn union(&self, other: &Solution) -> Solution {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        v.sort_unstable();
        v.dedup();
        Solution(v)
    }
}

impl<'a> IntoIterator for &'a Solution {
    type Item = &'a usize;
    type IntoIter = std::slice::Iter<'a, usize>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}
