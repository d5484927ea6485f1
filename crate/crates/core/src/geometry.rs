//! Vector helpers and Voronoi adjacency of point sets.
//!
//! Two sites are *adjacent* when their closed Voronoi cells intersect, i.e.
//! some ball with both on its boundary has no site in its interior. In one
//! and two dimensions this is computed exactly (sorted order; Delaunay with
//! cocircular groups); above that it is sampled.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use robust::{incircle, orient2d, Coord};
use spade::handles::{FixedFaceHandle, InnerTag};
use spade::{DelaunayTriangulation, HasPosition, Point2, Triangulation};

use crate::error::{Error, Result};

pub fn euclid(a: &[f64], b: &[f64]) -> f64 {
    sq_dist(a, b).sqrt()
}

pub fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Rays tried per candidate pair in the sampled (d >= 3) test.
const BISECTOR_SAMPLES: usize = 24;
/// Nearest neighbours considered per site in the sampled test.
const SAMPLED_NEIGHBOURS: usize = 24;

/// Sorted `(i, j)` pairs, `i < j`, of adjacent points. `coords` is row-major
/// with `dim` values per point. Coincident points are adjacent to each other
/// and share their neighbours.
pub fn voronoi_adjacency(dim: usize, coords: &[f64]) -> Result<Vec<(usize, usize)>> {
    let n = coords.len() / dim;
    let point = |i: usize| &coords[i * dim..(i + 1) * dim];
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        point(a)
            .iter()
            .zip(point(b))
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.cmp(&b))
    });
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for &i in &order {
        match groups.last_mut() {
            Some(g) if point(g[0]) == point(i) => g.push(i),
            _ => groups.push(vec![i]),
        }
    }
    let sites: Vec<&[f64]> = groups.iter().map(|g| point(g[0])).collect();
    let site_pairs = match dim {
        1 => line_adjacency(&sites.iter().map(|p| p[0]).collect::<Vec<_>>()),
        2 => plane_adjacency(&sites)?,
        _ => sampled_adjacency(&sites),
    };
    let mut pairs = Vec::new();
    let mut push = |a: usize, b: usize| pairs.push((a.min(b), a.max(b)));
    for g in &groups {
        for (x, &a) in g.iter().enumerate() {
            for &b in &g[x + 1..] {
                push(a, b);
            }
        }
    }
    for (s, t) in site_pairs {
        for &a in &groups[s] {
            for &b in &groups[t] {
                push(a, b);
            }
        }
    }
    pairs.sort_unstable();
    pairs.dedup();
    Ok(pairs)
}

/// Consecutive sites along a line.
fn line_adjacency(xs: &[f64]) -> Vec<(usize, usize)> {
    let mut idx: Vec<usize> = (0..xs.len()).collect();
    idx.sort_by(|&a, &b| xs[a].total_cmp(&xs[b]).then(a.cmp(&b)));
    idx.windows(2).map(|w| (w[0], w[1])).collect()
}

#[derive(Clone, Copy)]
struct Site {
    x: f64,
    y: f64,
    id: usize,
}

impl HasPosition for Site {
    type Scalar = f64;
    fn position(&self) -> Point2<f64> {
        Point2::new(self.x, self.y)
    }
}

fn coord(p: Point2<f64>) -> Coord<f64> {
    Coord { x: p.x, y: p.y }
}

fn plane_adjacency(sites: &[&[f64]]) -> Result<Vec<(usize, usize)>> {
    if sites.len() < 2 {
        return Ok(Vec::new());
    }
    let c = |i: usize| Coord {
        x: sites[i][0],
        y: sites[i][1],
    };
    if (2..sites.len()).all(|i| orient2d(c(0), c(1), c(i)) == 0.0) {
        // All collinear: order along the line through the first two sites.
        let (dx, dy) = (sites[1][0] - sites[0][0], sites[1][1] - sites[0][1]);
        let ts: Vec<f64> = sites
            .iter()
            .map(|p| (p[0] - sites[0][0]) * dx + (p[1] - sites[0][1]) * dy)
            .collect();
        return Ok(line_adjacency(&ts));
    }

    let mut tri: DelaunayTriangulation<Site> = DelaunayTriangulation::new();
    for (id, p) in sites.iter().enumerate() {
        tri.insert(Site {
            x: p[0],
            y: p[1],
            id,
        })
        .map_err(|e| Error::InvalidParameter(format!("point {:?} rejected: {e:?}", p)))?;
    }
    let mut pairs: Vec<(usize, usize)> = tri
        .undirected_edges()
        .map(|e| {
            let [a, b] = e.vertices();
            (a.data().id, b.data().id)
        })
        .collect();

    // Faces sharing a circumcircle form one cocircular polygon whose sites
    // are pairwise adjacent (their cells meet at the circle's center).
    let faces: Vec<FixedFaceHandle<InnerTag>> = tri.fixed_inner_faces().collect();
    let mut parent: Vec<usize> = (0..tri.num_all_faces()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut merged = false;
    for &f in &faces {
        let face = tri.face(f);
        let [p, q, r] = face.positions();
        for e in face.adjacent_edges() {
            let Some(other) = e.rev().face().as_inner() else {
                continue;
            };
            let Some(opp) = e.rev().opposite_vertex() else {
                continue;
            };
            if incircle(coord(p), coord(q), coord(r), coord(opp.position())) == 0.0 {
                let (a, b) = (find(&mut parent, f.index()), find(&mut parent, other.fix().index()));
                if a != b {
                    parent[a] = b;
                    merged = true;
                }
            }
        }
    }
    if merged {
        let mut members: std::collections::HashMap<usize, Vec<usize>> = Default::default();
        for &f in &faces {
            let root = find(&mut parent, f.index());
            members
                .entry(root)
                .or_default()
                .extend(tri.face(f).vertices().iter().map(|v| v.data().id));
        }
        for mut vs in members.into_values() {
            vs.sort_unstable();
            vs.dedup();
            if vs.len() > 3 {
                for (x, &a) in vs.iter().enumerate() {
                    for &b in &vs[x + 1..] {
                        pairs.push((a, b));
                    }
                }
            }
        }
    }
    for p in &mut pairs {
        *p = (p.0.min(p.1), p.0.max(p.1));
    }
    pairs.sort_unstable();
    pairs.dedup();
    Ok(pairs)
}

/// Candidate pairs from nearest neighbours, accepted when some sampled ray in
/// the bisector hyperplane through the midpoint meets the common cell facet.
fn sampled_adjacency(sites: &[&[f64]]) -> Vec<(usize, usize)> {
    let n = sites.len();
    let dim = sites.first().map_or(0, |p| p.len());
    let k = SAMPLED_NEIGHBOURS.min(n.saturating_sub(1));
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut pairs = Vec::new();
    for a in 0..n {
        let mut near: Vec<usize> = (0..n).filter(|&b| b != a).collect();
        near.sort_by(|&x, &y| sq_dist(sites[a], sites[x]).total_cmp(&sq_dist(sites[a], sites[y])));
        for &b in near.iter().take(k) {
            if a < b && facet_hit(sites, a, b, dim, &mut rng) {
                pairs.push((a, b));
            }
        }
    }
    pairs.sort_unstable();
    pairs.dedup();
    pairs
}

fn facet_hit(sites: &[&[f64]], a: usize, b: usize, dim: usize, rng: &mut ChaCha8Rng) -> bool {
    let (pa, pb) = (sites[a], sites[b]);
    let mid: Vec<f64> = pa.iter().zip(pb).map(|(x, y)| 0.5 * (x + y)).collect();
    let normal: Vec<f64> = pb.iter().zip(pa).map(|(x, y)| x - y).collect();
    let nn: f64 = normal.iter().map(|x| x * x).sum();
    for sample in 0..=BISECTOR_SAMPLES {
        // Direction inside the bisector hyperplane; the zero ray tests the midpoint.
        let mut dir = vec![0.0; dim];
        if sample > 0 {
            for d in dir.iter_mut() {
                *d = rng.random::<f64>() - 0.5;
            }
            let dot: f64 = dir.iter().zip(&normal).map(|(x, y)| x * y).sum();
            for (d, nv) in dir.iter_mut().zip(&normal) {
                *d -= dot / nn * nv;
            }
        }
        // x(t) = mid + t dir is at least as close to a as to c iff
        // 2 x.(c - a) <= |c|^2 - |a|^2, i.e. alpha + beta t >= 0.
        let (mut lo, mut hi) = (f64::NEG_INFINITY, f64::INFINITY);
        let na: f64 = pa.iter().map(|x| x * x).sum();
        for (c, pc) in sites.iter().enumerate() {
            if c == a || c == b {
                continue;
            }
            let nc: f64 = pc.iter().map(|x| x * x).sum();
            let toward = |v: &[f64]| -> f64 {
                v.iter().zip(pc.iter().zip(pa)).map(|(m, (x, y))| m * (x - y)).sum()
            };
            let alpha = nc - na - 2.0 * toward(&mid);
            let beta = -2.0 * toward(&dir);
            if beta == 0.0 {
                if alpha < 0.0 {
                    lo = f64::INFINITY;
                    hi = f64::NEG_INFINITY;
                    break;
                }
            } else if beta > 0.0 {
                lo = lo.max(-alpha / beta);
            } else {
                hi = hi.min(-alpha / beta);
            }
            if lo > hi {
                break;
            }
        }
        if lo <= hi {
            return true;
        }
    }
    false
}
