use super::{EuclideanRDivision, GraphRDivision};
use crate::error::{Error, Result};
use crate::geometry::euclid;
use crate::instance::PointSet;
use crate::metric::DistanceOracle;
use crate::voronoi::ContractedGraph;

/// A boundary element `witness` with `dist(c, witness) <= dist(c, v)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub query: usize,
    pub region: usize,
    /// Center id (graphs) or separator point index (point sets).
    pub witness: usize,
    pub dist: f64,
    pub bound: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SeparationReport {
    pub queries: usize,
    /// Queries for which no region needed a witness.
    pub vacuous: usize,
    pub witnesses: Vec<Witness>,
    /// `(query, region)` pairs without a witness.
    pub failures: Vec<(usize, usize)>,
}

impl SeparationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks, for every query `(c, v)` with `v` a contraction center and every
/// region where one of the contracted images of `c`, `v` is a vertex and the
/// other is not internal, that some center on the region boundary is at
/// least as close to `c` as `v` is.
pub fn verify_graph_separation(
    division: &GraphRDivision,
    contraction: &ContractedGraph,
    oracle: &DistanceOracle,
    queries: &[(usize, usize)],
) -> Result<SeparationReport> {
    if division.n != contraction.vertex_count() {
        return Err(Error::PartitionMismatch(format!(
            "division over {} vertices, contraction has {}",
            division.n,
            contraction.vertex_count()
        )));
    }
    let n = contraction.hat_map().len();
    let mut report = SeparationReport {
        queries: queries.len(),
        ..Default::default()
    };
    for (q, &(c, v)) in queries.iter().enumerate() {
        if c >= n || v >= n {
            return Err(Error::MalformedQuery(c, v, "id out of range".into()));
        }
        if contraction.vertex_of_center(v).is_none() {
            return Err(Error::MalformedQuery(c, v, "v is not a center".into()));
        }
        let (hc, hv) = (contraction.hat(c), contraction.hat(v));
        let bound = oracle.dist(c, v);
        let mut needed = false;
        for (i, reg) in division.regions.iter().enumerate() {
            let applies = (reg.contains(hc) && !reg.is_internal(hv))
                || (reg.contains(hv) && !reg.is_internal(hc));
            if !applies {
                continue;
            }
            needed = true;
            let best = reg
                .boundary
                .iter()
                .map(|&b| {
                    let x = contraction.centers()[b];
                    (oracle.dist(c, x), x)
                })
                .min_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
            match best {
                Some((d, x)) if d <= bound => report.witnesses.push(Witness {
                    query: q,
                    region: i,
                    witness: x,
                    dist: d,
                    bound,
                }),
                _ => report.failures.push((q, i)),
            }
        }
        if !needed {
            report.vacuous += 1;
        }
    }
    Ok(report)
}

/// Checks, for every query `(c, v)` of input points in different regions,
/// that a separator point of `c`'s region is at least as close to `c` as `v`.
pub fn verify_euclidean_separation(
    division: &EuclideanRDivision,
    points: &PointSet,
    queries: &[(usize, usize)],
) -> Result<SeparationReport> {
    let n = points.len();
    let mut report = SeparationReport {
        queries: queries.len(),
        ..Default::default()
    };
    for (q, &(c, v)) in queries.iter().enumerate() {
        if c >= n || v >= n {
            return Err(Error::MalformedQuery(c, v, "id out of range".into()));
        }
        let rc = division.region_of(c);
        if rc == division.region_of(v) {
            report.vacuous += 1;
            continue;
        }
        let bound = euclid(points.point(c), points.point(v));
        let best = division.regions[rc]
            .z
            .iter()
            .map(|&z| (euclid(points.point(c), &division.z[z]), z))
            .min_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        match best {
            Some((d, z)) if d <= bound => report.witnesses.push(Witness {
                query: q,
                region: rc,
                witness: z,
                dist: d,
                bound,
            }),
            _ => report.failures.push((q, rc)),
        }
    }
    Ok(report)
}
