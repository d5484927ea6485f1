use std::collections::BTreeSet;
use std::fmt::Write as _;

use super::DivisionStats;
use crate::error::{Error, Result};
use crate::geometry::{euclid, voronoi_adjacency};
use crate::instance::{Instance, PointSet};

/// Extra insertion rounds allowed per split before giving up.
pub const MAX_DENSIFICATIONS: usize = 8;

#[derive(Debug, Clone, PartialEq)]
pub struct EuclideanRegion {
    /// Input point ids owned by this region.
    pub points: Vec<usize>,
    /// Indices into [`EuclideanRDivision::z`] of the separator points
    /// adjacent to the owned points.
    pub z: Vec<usize>,
}

impl EuclideanRegion {
    pub fn size(&self) -> usize {
        self.points.len() + self.z.len()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EuclideanRDivision {
    pub r: usize,
    pub dim: usize,
    /// Added boundary points.
    pub z: Vec<Vec<f64>>,
    pub regions: Vec<EuclideanRegion>,
    /// Insertion rounds beyond the first, summed over all splits.
    pub densifications: usize,
    region_of: Vec<usize>,
}

pub fn euclidean_r_division(instance: &Instance, r: usize) -> Result<EuclideanRDivision> {
    divide_points(instance.points()?, r)
}

struct Sphere {
    center: Vec<f64>,
    radius: f64,
}

struct State<'a> {
    points: &'a PointSet,
    z: Vec<Vec<f64>>,
    parts: Vec<Vec<usize>>,
    part_of: Vec<usize>,
}

impl State<'_> {
    fn n(&self) -> usize {
        self.points.len()
    }

    fn site(&self, i: usize) -> &[f64] {
        if i < self.n() {
            self.points.point(i)
        } else {
            &self.z[i - self.n()]
        }
    }

    fn adjacency(&self) -> Result<Vec<(usize, usize)>> {
        let dim = self.points.dim();
        let mut coords = Vec::with_capacity((self.n() + self.z.len()) * dim);
        for i in 0..self.n() + self.z.len() {
            coords.extend_from_slice(self.site(i));
        }
        voronoi_adjacency(dim, &coords)
    }

    fn reindex(&mut self) {
        for (p, part) in self.parts.iter().enumerate() {
            for &c in part {
                self.part_of[c] = p;
            }
        }
    }

    /// Separator points adjacent to each part.
    fn region_z(&self, adj: &[(usize, usize)]) -> Vec<BTreeSet<usize>> {
        let n = self.n();
        let mut out = vec![BTreeSet::new(); self.parts.len()];
        for &(a, b) in adj {
            if a < n && b >= n {
                out[self.part_of[a]].insert(b - n);
            }
        }
        out
    }

    fn crossing(&self, adj: &[(usize, usize)]) -> Vec<(usize, usize)> {
        let n = self.n();
        adj.iter()
            .copied()
            .filter(|&(a, b)| b < n && self.part_of[a] != self.part_of[b])
            .collect()
    }
}

fn divide_points(points: &PointSet, r: usize) -> Result<EuclideanRDivision> {
    if r < 2 {
        return Err(Error::InvalidParameter(format!("r must be at least 2, got {r}")));
    }
    let n = points.len();
    let mut st = State {
        points,
        z: Vec::new(),
        parts: vec![(0..n).collect()],
        part_of: vec![0; n],
    };
    let mut densifications = 0;
    let mut adj = st.adjacency()?;
    loop {
        let zs = st.region_z(&adj);
        let oversize: Vec<usize> = (0..st.parts.len())
            .filter(|&p| st.parts[p].len() + zs[p].len() > r)
            .collect();
        if oversize.is_empty() {
            break;
        }
        // Split every oversize part; remember which sphere separated each pair of children.
        let mut spheres: Vec<(usize, usize, Sphere)> = Vec::new();
        let mut next_parts = Vec::with_capacity(st.parts.len() + oversize.len());
        for (p, part) in st.parts.iter().enumerate() {
            if oversize.binary_search(&p).is_err() {
                next_parts.push(part.clone());
                continue;
            }
            let region: Vec<&[f64]> = part
                .iter()
                .map(|&c| points.point(c))
                .chain(zs[p].iter().map(|&z| st.z[z].as_slice()))
                .collect();
            let Some(sphere) = choose_sphere(points, part, &region) else {
                return Err(Error::SeparatorFailed {
                    densifications,
                    reason: format!(
                        "part of {} coincident points has {} region points, r = {r}",
                        part.len(),
                        part.len() + zs[p].len()
                    ),
                });
            };
            let (inside, outside): (Vec<usize>, Vec<usize>) = part
                .iter()
                .partition(|&&c| euclid(points.point(c), &sphere.center) < sphere.radius);
            let a = next_parts.len();
            next_parts.push(inside);
            next_parts.push(outside);
            spheres.push((a, a + 1, sphere));
        }
        st.parts = next_parts;
        st.reindex();

        let mut round = 0;
        loop {
            adj = st.adjacency()?;
            let crossing = st.crossing(&adj);
            if crossing.is_empty() {
                break;
            }
            if round > MAX_DENSIFICATIONS {
                return Err(Error::SeparatorFailed {
                    densifications,
                    reason: format!(
                        "{} adjacent pairs still cross parts after {round} insertion rounds",
                        crossing.len()
                    ),
                });
            }
            if round > 0 {
                densifications += 1;
            }
            let mut fresh: Vec<Vec<f64>> = Vec::new();
            for (a, b) in crossing {
                let (pa, pb) = (st.part_of[a], st.part_of[b]);
                let sphere = spheres
                    .iter()
                    .find(|(x, y, _)| (*x, *y) == (pa.min(pb), pa.max(pb)))
                    .map(|(_, _, s)| s);
                let z = cut_point(points.point(a), points.point(b), sphere);
                if round > 0 {
                    // The cut point alone can round onto the wrong side of the
                    // segment; a pair of points straddling it always blocks.
                    fresh.extend(straddle(points.point(a), points.point(b), &z));
                }
                fresh.push(z);
            }
            fresh.sort_by(|x, y| {
                x.iter()
                    .zip(y)
                    .map(|(u, v)| u.total_cmp(v))
                    .find(|o| o.is_ne())
                    .unwrap_or(std::cmp::Ordering::Equal)
            });
            fresh.dedup();
            st.z.extend(fresh);
            round += 1;
        }
    }

    let zs = st.region_z(&adj);
    let regions = st
        .parts
        .iter()
        .zip(zs)
        .map(|(part, z)| EuclideanRegion {
            points: part.clone(),
            z: z.into_iter().collect(),
        })
        .collect();
    Ok(EuclideanRDivision {
        r,
        dim: points.dim(),
        z: st.z,
        regions,
        densifications,
        region_of: st.part_of,
    })
}

/// Point where segment `ab` crosses `sphere`, or its midpoint when the sphere
/// does not separate the endpoints cleanly.
fn cut_point(a: &[f64], b: &[f64], sphere: Option<&Sphere>) -> Vec<f64> {
    let at = |t: f64| a.iter().zip(b).map(|(x, y)| x + t * (y - x)).collect::<Vec<f64>>();
    let Some(s) = sphere else {
        return at(0.5);
    };
    // |a + t(b - a) - c|^2 = rho^2
    let d: Vec<f64> = b.iter().zip(a).map(|(x, y)| x - y).collect();
    let f: Vec<f64> = a.iter().zip(&s.center).map(|(x, y)| x - y).collect();
    let qa: f64 = d.iter().map(|x| x * x).sum();
    let qb: f64 = 2.0 * d.iter().zip(&f).map(|(x, y)| x * y).sum::<f64>();
    let qc: f64 = f.iter().map(|x| x * x).sum::<f64>() - s.radius * s.radius;
    let disc = qb * qb - 4.0 * qa * qc;
    if qa == 0.0 || disc < 0.0 {
        return at(0.5);
    }
    let sq = disc.sqrt();
    let t = [(-qb - sq) / (2.0 * qa), (-qb + sq) / (2.0 * qa)]
        .into_iter()
        .find(|t| *t > 1e-9 && *t < 1.0 - 1e-9)
        .unwrap_or(0.5);
    at(t)
}

/// Points just off segment `ab` around `z`, on both sides of it in every
/// direction orthogonal to the segment.
fn straddle(a: &[f64], b: &[f64], z: &[f64]) -> Vec<Vec<f64>> {
    let dim = a.len();
    let d: Vec<f64> = b.iter().zip(a).map(|(x, y)| x - y).collect();
    let len2: f64 = d.iter().map(|x| x * x).sum();
    let eta = 1e-7 * len2.sqrt();
    let mut out = Vec::new();
    for k in 0..dim {
        // e_k with its component along the segment removed
        let mut u: Vec<f64> = (0..dim).map(|j| if j == k { 1.0 } else { 0.0 }).collect();
        let proj = d[k] / len2;
        for (uj, dj) in u.iter_mut().zip(&d) {
            *uj -= proj * dj;
        }
        let norm = u.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm < 1e-6 {
            continue;
        }
        for sign in [1.0, -1.0] {
            out.push(z.iter().zip(&u).map(|(x, y)| x + sign * eta * y / norm).collect());
        }
    }
    out
}

/// Sphere splitting `part` into two nonempty sides, balanced over `region`
/// when possible. `None` when all points of `part` coincide.
fn choose_sphere(points: &PointSet, part: &[usize], region: &[&[f64]]) -> Option<Sphere> {
    let dim = points.dim();
    let owned: Vec<&[f64]> = part.iter().map(|&c| points.point(c)).collect();
    if owned.iter().all(|p| *p == owned[0]) {
        return None;
    }
    let median: Vec<f64> = (0..dim)
        .map(|k| {
            let mut xs: Vec<f64> = region.iter().map(|p| p[k]).collect();
            xs.sort_by(f64::total_cmp);
            xs[(xs.len() - 1) / 2]
        })
        .collect();
    let splits = |center: &[f64], radius: f64| {
        let inside = owned.iter().filter(|p| euclid(p, center) < radius).count();
        inside > 0 && inside < owned.len()
    };
    for (center, sample) in [
        (median.clone(), region),
        (median, owned.as_slice()),
        (owned[0].to_vec(), owned.as_slice()),
    ] {
        if let Some(radius) = gap_radius(&center, sample, true) {
            if splits(&center, radius) {
                return Some(Sphere { center, radius });
            }
        }
        if let Some(radius) = gap_radius(&center, &owned, false) {
            if splits(&center, radius) {
                return Some(Sphere { center, radius });
            }
        }
    }
    None
}

/// Midpoint of the widest gap between consecutive distances from `center`,
/// restricted to the middle half of the sorted list when `windowed`.
fn gap_radius(center: &[f64], pts: &[&[f64]], windowed: bool) -> Option<f64> {
    let mut ds: Vec<f64> = pts.iter().map(|p| euclid(p, center)).collect();
    ds.sort_by(f64::total_cmp);
    let len = ds.len();
    let (lo, hi) = if windowed {
        (len / 4, (3 * len / 4).max(len / 4 + 1).min(len - 1))
    } else {
        (0, len - 1)
    };
    (lo..hi)
        .filter(|&i| ds[i + 1] > ds[i])
        .max_by(|&i, &j| (ds[i + 1] - ds[i]).total_cmp(&(ds[j + 1] - ds[j])).then(j.cmp(&i)))
        .map(|i| 0.5 * (ds[i] + ds[i + 1]))
}

impl EuclideanRDivision {
    /// Region owning input point `c`.
    pub fn region_of(&self, c: usize) -> usize {
        self.region_of[c]
    }

    pub fn stats(&self) -> DivisionStats {
        let boundary_total = self.regions.iter().map(|r| r.z.len()).sum();
        DivisionStats::new(
            self.regions.len(),
            self.regions.iter().map(EuclideanRegion::size).max().unwrap_or(0),
            boundary_total,
            self.r,
            self.region_of.len(),
            1.0 / self.dim as f64,
        )
    }

    /// Checks that the owned points partition the input, region sizes are at
    /// most `r`, and, in the Voronoi diagram of input and separator points,
    /// every neighbour of an owned point is owned by the same region or is a
    /// separator point of that region.
    pub fn audit(&self, points: &PointSet) -> std::result::Result<(), String> {
        let n = points.len();
        if self.region_of.len() != n {
            return Err(format!("division covers {} points, input has {n}", self.region_of.len()));
        }
        let mut seen = vec![0usize; n];
        for (i, reg) in self.regions.iter().enumerate() {
            if reg.size() > self.r {
                return Err(format!("region {i} has {} points, r = {}", reg.size(), self.r));
            }
            for &c in &reg.points {
                seen[c] += 1;
                if self.region_of[c] != i {
                    return Err(format!("point {c} indexed to the wrong region"));
                }
            }
        }
        if let Some(c) = seen.iter().position(|&s| s != 1) {
            return Err(format!("point {c} is owned by {} regions", seen[c]));
        }
        let mut coords = Vec::with_capacity((n + self.z.len()) * self.dim);
        for c in 0..n {
            coords.extend_from_slice(points.point(c));
        }
        for z in &self.z {
            coords.extend_from_slice(z);
        }
        let adj = voronoi_adjacency(self.dim, &coords).map_err(|e| e.to_string())?;
        for (a, b) in adj {
            if a >= n {
                continue;
            }
            let ra = self.region_of[a];
            if b < n {
                if self.region_of[b] != ra {
                    return Err(format!("points {a} and {b} are adjacent across regions"));
                }
            } else if self.regions[ra].z.binary_search(&(b - n)).is_err() {
                return Err(format!(
                    "point {a} is adjacent to separator point {} outside its region",
                    b - n
                ));
            }
        }
        Ok(())
    }

    /// Separator points as CSV rows, then one block per region.
    pub fn to_text(&self) -> String {
        let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
        let mut out = format!("r={}\nd={}\n", self.r, self.dim);
        for (i, z) in self.z.iter().enumerate() {
            let row: Vec<String> = z.iter().map(|x| format!("{x:?}")).collect();
            writeln!(out, "z {i} {}", row.join(",")).unwrap();
        }
        for (i, reg) in self.regions.iter().enumerate() {
            writeln!(out, "region {i}").unwrap();
            writeln!(out, "members {}", join(&reg.points)).unwrap();
            writeln!(out, "boundary {}", join(&reg.z)).unwrap();
        }
        out
    }
}
