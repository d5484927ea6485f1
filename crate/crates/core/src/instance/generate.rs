use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Instance, PointSet, Solution, Space};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightModel {
    Unit,
    /// Integer weights drawn uniformly from 1..=9.
    Random { seed: u64 },
}

/// `w × h` grid; vertex `(x, y)` has id `y * w + x`.
pub fn generate_grid(w: usize, h: usize, weights: WeightModel) -> Result<Instance> {
    if w == 0 || h == 0 {
        return Err(Error::InvalidParameter(format!(
            "grid dimensions must be positive, got {w}x{h}"
        )));
    }
    let mut rng = match weights {
        WeightModel::Unit => None,
        WeightModel::Random { seed } => Some(ChaCha8Rng::seed_from_u64(seed)),
    };
    let mut weight = || match rng.as_mut() {
        None => 1.0,
        Some(r) => r.random_range(1..=9u32) as f64,
    };
    let mut edges = Vec::with_capacity(2 * w * h);
    for y in 0..h {
        for x in 0..w {
            let v = y * w + x;
            if x + 1 < w {
                edges.push(Edge {
                    u: v,
                    v: v + 1,
                    weight: weight(),
                });
            }
            if y + 1 < h {
                edges.push(Edge {
                    u: v,
                    v: v + w,
                    weight: weight(),
                });
            }
        }
    }
    Instance::new(Space::Graph(Graph::new(w * h, edges)?))
}

/// `n` points drawn uniformly from the unit cube `[0, 1)^d`.
pub fn generate_random_euclidean(n: usize, d: usize, seed: u64) -> Result<Instance> {
    if n == 0 || d == 0 {
        return Err(Error::InvalidParameter(format!(
            "need n >= 1 and d >= 1, got n={n} d={d}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coords = (0..n * d).map(|_| rng.random::<f64>()).collect();
    Instance::new(Space::Euclidean(PointSet::new(d, coords)?))
}

#[derive(Debug, Clone)]
pub struct TightnessInstance {
    pub instance: Instance,
    /// Locally optimal for swaps touching at most `swap_size` centers.
    pub planted: Solution,
    pub optimum: Solution,
    pub swap_size: usize,
}

/// Locality-gap family for k-median.
///
/// Centers `l_0..l_m` (ids `0..m`) and `o_0..o_m` (ids `m..2m`); one client
/// `c_ij` (id `2m + i*m + j`) for every pair, joined to `l_i` with weight
/// `alpha` and to `o_j` with weight 1. The optimum `{o}` costs `m^2`, the
/// planted solution `{l}` costs `alpha * m^2`.
///
/// Swapping `t` of the `l` centers for `t` of the `o` centers saves
/// `(alpha - 1) * t * m` and costs `2 * t * (m - t)`, so `{l}` is a local
/// optimum whenever `alpha <= 3 - 2t/m` for all `t <= s/2`.
pub fn generate_tightness(m: usize, eps_neighborhood: f64) -> Result<TightnessInstance> {
    if !(eps_neighborhood > 0.0 && eps_neighborhood <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "eps_neighborhood must lie in (0, 1], got {eps_neighborhood}"
        )));
    }
    let s = (1.0 / eps_neighborhood).ceil() as usize;
    let q = s / 2;
    let min_m = s.max(4 * q + 1);
    if m < min_m {
        return Err(Error::InvalidParameter(format!(
            "m too small: m={m}, need m >= {min_m} for swap size {s}"
        )));
    }
    let alpha = 3.0 - (2.0 * q as f64 + 0.25) / m as f64;
    let n = 2 * m + m * m;
    let mut edges = Vec::with_capacity(2 * m * m);
    for i in 0..m {
        for j in 0..m {
            let c = 2 * m + i * m + j;
            edges.push(Edge {
                u: i,
                v: c,
                weight: alpha,
            });
            edges.push(Edge {
                u: m + j,
                v: c,
                weight: 1.0,
            });
        }
    }
    let graph = Graph::new(n, edges)?;
    let instance =
        Instance::with_roles(Space::Graph(graph), (2 * m..n).collect(), (0..2 * m).collect(), 1)?
            .with_k(m)?;
    Ok(TightnessInstance {
        instance,
        planted: Solution::new((0..m).collect())?,
        optimum: Solution::new((m..2 * m).collect())?,
        swap_size: s,
    })
}
