//! Distances and clustering costs.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::instance::{Instance, PointSet, Solution, Space};

/// Graphs with at most this many vertices get a full distance table.
pub const DEFAULT_TABLE_THRESHOLD: usize = 4096;

#[derive(Debug)]
enum Backend {
    Table(Vec<f64>),
    OnDemand {
        graph: Graph,
        rows: Vec<OnceLock<Vec<f64>>>,
    },
    Euclidean(PointSet),
}

/// Symmetric distance oracle over the elements of an instance.
///
/// Graph distances between `a` and `b` are always read from the shortest-path
/// tree of `min(a, b)`, so `dist(a, b) == dist(b, a)` holds bit for bit.
#[derive(Debug)]
pub struct DistanceOracle {
    n: usize,
    backend: Backend,
}

impl DistanceOracle {
    pub fn new(instance: &Instance) -> Self {
        Self::with_threshold(instance, DEFAULT_TABLE_THRESHOLD)
    }

    pub fn with_threshold(instance: &Instance, table_threshold: usize) -> Self {
        match instance.space() {
            Space::Graph(g) => Self::for_graph(g, table_threshold),
            Space::Euclidean(ps) => DistanceOracle {
                n: ps.len(),
                backend: Backend::Euclidean(ps.clone()),
            },
        }
    }

    pub fn for_graph(graph: &Graph, table_threshold: usize) -> Self {
        let n = graph.vertex_count();
        let backend = if n <= table_threshold {
            let mut table = vec![0.0; n * n];
            for a in 0..n {
                let row = graph.dijkstra(a);
                for b in a + 1..n {
                    table[a * n + b] = row[b];
                    table[b * n + a] = row[b];
                }
            }
            Backend::Table(table)
        } else {
            Backend::OnDemand {
                graph: graph.clone(),
                rows: (0..n).map(|_| OnceLock::new()).collect(),
            }
        };
        DistanceOracle { n, backend }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn is_precomputed(&self) -> bool {
        matches!(self.backend, Backend::Table(_))
    }

    /// Distance between two elements. Panics on out-of-range ids; see
    /// [`DistanceOracle::try_dist`].
    pub fn dist(&self, a: usize, b: usize) -> f64 {
        assert!(a < self.n && b < self.n, "element id out of range");
        if a == b {
            return 0.0;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        match &self.backend {
            Backend::Table(t) => t[lo * self.n + hi],
            Backend::OnDemand { graph, rows } => rows[lo].get_or_init(|| graph.dijkstra(lo))[hi],
            Backend::Euclidean(ps) => ps.distance(lo, hi),
        }
    }

    pub fn try_dist(&self, a: usize, b: usize) -> Result<f64> {
        for id in [a, b] {
            if id >= self.n {
                return Err(Error::UnknownId(id));
            }
        }
        Ok(self.dist(a, b))
    }

    pub fn dist_p(&self, a: usize, b: usize, p: u32) -> f64 {
        pow(self.dist(a, b), p)
    }
}

pub fn pow(x: f64, p: u32) -> f64 {
    match p {
        1 => x,
        2 => x * x,
        _ => x.powi(p as i32),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Assignment {
    pub client: usize,
    pub center: usize,
    /// `dist(client, center)^p`.
    pub cost: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CostBreakdown {
    pub total: f64,
    pub service: f64,
    /// `|S| * f` for facility location, otherwise 0.
    pub opening: f64,
    /// One entry per client, in instance order.
    pub per_client: Vec<Assignment>,
}

/// Nearest center of `s` to `client`, ties to the lowest id.
pub fn nearest(oracle: &DistanceOracle, client: usize, s: &Solution) -> (usize, f64) {
    let mut best = (usize::MAX, f64::INFINITY);
    for &c in s {
        let d = oracle.dist(client, c);
        if d < best.1 {
            best = (c, d);
        }
    }
    best
}

/// Cost of `s`. The opening term is charged iff the instance carries an
/// opening cost.
pub fn cost(instance: &Instance, oracle: &DistanceOracle, s: &Solution) -> Result<CostBreakdown> {
    if s.is_empty() {
        return Err(Error::EmptySolution);
    }
    if let Some(&bad) = s.iter().find(|&&c| c >= oracle.len()) {
        return Err(Error::UnknownId(bad));
    }
    let p = instance.p();
    let per_client: Vec<Assignment> = instance
        .clients()
        .iter()
        .map(|&client| {
            let (center, d) = nearest(oracle, client, s);
            Assignment {
                client,
                center,
                cost: pow(d, p),
            }
        })
        .collect();
    let service = per_client.iter().map(|a| a.cost).sum::<f64>();
    let opening = instance.opening_cost().map_or(0.0, |f| s.len() as f64 * f);
    Ok(CostBreakdown {
        total: service + opening,
        service,
        opening,
        per_client,
    })
}

/// Total cost only.
pub fn total_cost(instance: &Instance, oracle: &DistanceOracle, s: &Solution) -> Result<f64> {
    cost(instance, oracle, s).map(|c| c.total)
}

/// Dense `clients × candidates` matrix of `dist^p`, in instance order.
#[derive(Debug, Clone)]
pub struct ServiceMatrix {
    candidates: Vec<usize>,
    rows: usize,
    values: Vec<f64>,
}

impl ServiceMatrix {
    pub fn new(instance: &Instance, oracle: &DistanceOracle) -> Self {
        let candidates = instance.candidates().to_vec();
        let p = instance.p();
        let mut values = Vec::with_capacity(instance.clients().len() * candidates.len());
        for &c in instance.clients() {
            values.extend(candidates.iter().map(|&f| oracle.dist_p(c, f, p)));
        }
        ServiceMatrix {
            rows: instance.clients().len(),
            candidates,
            values,
        }
    }

    pub fn clients(&self) -> usize {
        self.rows
    }

    pub fn candidates(&self) -> &[usize] {
        &self.candidates
    }

    /// Candidate index of element `id`, if it is a candidate.
    pub fn index_of(&self, id: usize) -> Option<usize> {
        self.candidates.binary_search(&id).ok()
    }

    /// Row of client `i` (position in the instance's client list).
    pub fn row(&self, i: usize) -> &[f64] {
        let m = self.candidates.len();
        &self.values[i * m..(i + 1) * m]
    }

    pub fn get(&self, client: usize, candidate: usize) -> f64 {
        self.values[client * self.candidates.len() + candidate]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerTriangleReport {
    /// `dist(a, b)^p`
    pub lhs: f64,
    /// `(1 + eps1)^p * (dist(a, c)^p + dist(c, b)^p / eps1^p)`
    pub bound1: f64,
    /// `2^p * (dist(a, c)^p + dist(c, b)^p)`
    pub bound2: f64,
    pub holds: bool,
}

/// Relaxed triangle inequality for `p`-th powers through the midpoint `c`.
pub fn check_power_triangle(
    oracle: &DistanceOracle,
    a: usize,
    b: usize,
    c: usize,
    p: u32,
    eps1: f64,
) -> Result<PowerTriangleReport> {
    if !(eps1 > 0.0 && eps1 < 0.5) {
        return Err(Error::InvalidParameter(format!(
            "eps1 must lie in (0, 1/2), got {eps1}"
        )));
    }
    if p == 0 {
        return Err(Error::InvalidParameter("p must be at least 1".into()));
    }
    let lhs = pow(oracle.try_dist(a, b)?, p);
    let ac = pow(oracle.try_dist(a, c)?, p);
    let cb = pow(oracle.try_dist(c, b)?, p);
    let bound1 = pow(1.0 + eps1, p) * (ac + cb / pow(eps1, p));
    let bound2 = pow(2.0, p) * (ac + cb);
    // Rounding slack only; the inequalities are exact on metric inputs.
    let fits = |bound: f64| lhs <= bound * (1.0 + 1e-12) + 1e-12;
    Ok(PowerTriangleReport {
        lhs,
        bound1,
        bound2,
        holds: fits(bound1) && fits(bound2),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;
    use crate::instance::{generate_grid, WeightModel};

    fn path(weights: &[f64]) -> Instance {
        let edges = weights
            .iter()
            .enumerate()
            .map(|(i, &weight)| Edge {
                u: i,
                v: i + 1,
                weight,
            })
            .collect();
        Instance::new(Space::Graph(Graph::new(weights.len() + 1, edges).unwrap())).unwrap()
    }

    #[test]
    fn path_distance() {
        let inst = path(&[1.0, 2.0]);
        let o = DistanceOracle::new(&inst);
        assert_eq!(o.dist(0, 2), 3.0);
        assert_eq!(o.dist(2, 0), 3.0);
        assert_eq!(o.dist(1, 1), 0.0);
        assert!(matches!(o.try_dist(0, 3), Err(Error::UnknownId(3))));
    }

    #[test]
    fn euclidean_distance() {
        let ps = PointSet::new(2, vec![0.0, 0.0, 3.0, 4.0]).unwrap();
        let inst = Instance::new(Space::Euclidean(ps)).unwrap();
        assert_eq!(DistanceOracle::new(&inst).dist(0, 1), 5.0);
    }

    #[test]
    fn path_costs() {
        let inst = path(&[1.0, 1.0]);
        let o = DistanceOracle::new(&inst);
        let s = Solution::new(vec![1]).unwrap();
        assert_eq!(total_cost(&inst, &o, &s).unwrap(), 2.0);
        let p2 = inst.clone().with_p(2).unwrap();
        assert_eq!(total_cost(&p2, &o, &s).unwrap(), 2.0);
        let ufl = inst.with_opening_cost(2.0).unwrap();
        let c = cost(&ufl, &o, &s).unwrap();
        assert_eq!((c.total, c.service, c.opening), (4.0, 2.0, 2.0));
    }

    #[test]
    fn assignment_ties_go_to_lowest_id() {
        let inst = path(&[1.0, 1.0]);
        let o = DistanceOracle::new(&inst);
        let c = cost(&inst, &o, &Solution::new(vec![2, 0]).unwrap()).unwrap();
        assert_eq!(c.per_client[1].center, 0);
    }

    #[test]
    fn table_and_on_demand_agree() {
        let inst = generate_grid(6, 6, WeightModel::Random { seed: 11 }).unwrap();
        let table = DistanceOracle::new(&inst);
        let lazy = DistanceOracle::with_threshold(&inst, 0);
        assert!(table.is_precomputed() && !lazy.is_precomputed());
        for a in 0..36 {
            for b in 0..36 {
                assert_eq!(table.dist(a, b).to_bits(), lazy.dist(a, b).to_bits());
            }
        }
    }

    #[test]
    fn power_triangle_on_a_line() {
        let ps = PointSet::new(1, vec![0.0, 1.0, 3.0]).unwrap();
        let inst = Instance::new(Space::Euclidean(ps)).unwrap();
        let o = DistanceOracle::new(&inst);
        let r = check_power_triangle(&o, 0, 2, 1, 2, 0.49).unwrap();
        assert_eq!(r.lhs, 9.0);
        assert_eq!(r.bound2, 20.0);
        assert!(r.holds);
        assert!(check_power_triangle(&o, 0, 0, 2, 3, 0.1).unwrap().holds);
        assert!(check_power_triangle(&o, 0, 1, 2, 1, 0.5).is_err());
    }

    #[test]
    fn service_matrix_layout() {
        let inst = Instance::with_roles(path(&[1.0, 2.0]).space().clone(), vec![0, 2], vec![1, 2], 2)
            .unwrap();
        let o = DistanceOracle::new(&inst);
        let m = ServiceMatrix::new(&inst, &o);
        assert_eq!(m.row(0), &[1.0, 9.0]);
        assert_eq!(m.get(1, 0), 4.0);
        assert_eq!(m.index_of(2), Some(1));
    }
}
