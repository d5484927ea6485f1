use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::instance::{Instance, Solution};
use crate::localsearch::{find_improvement, Mode};
use crate::metric::{cost, nearest, pow, DistanceOracle};
use crate::oracle::k_subsets;
use crate::rdivision::{divide_graph, DivisionStats};
use crate::voronoi::{contract, partition_graph};

/// Largest neighborhood the certifier will scan when re-verifying `L`.
pub const VERIFY_BUDGET: u128 = 5_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct RegionRecord {
    pub region: usize,
    /// `|V_i|`, facilities of `L ∪ G` whose cell is a vertex of the region.
    pub facilities: usize,
    /// `|B_i|`
    pub boundary: usize,
    /// `|G'_i|`
    pub global_part: usize,
    /// `|L_i|`
    pub local_part: usize,
    /// `|M^i △ L|`
    pub symmetric_difference: usize,
    /// `cost(M^i)`, infinite when `M^i` is empty.
    pub mixed_cost: f64,
    /// `cost(M^i) - cost(L) + cost(L)/n`
    pub slack: f64,
    /// Clients where `M^i` serves worse than the per-client bound allows.
    pub client_violations: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CertifierReport {
    pub epsilon: f64,
    pub r: usize,
    pub facilities: usize,
    pub regions: Vec<RegionRecord>,
    pub stats: DivisionStats,
    pub cost_local: f64,
    pub cost_global: f64,
    pub global_size: usize,
    /// `|G'|`
    pub augmented_global: usize,
    pub sum_global_parts: usize,
    pub sum_boundary: usize,
    pub max_symmetric_difference: usize,
    /// `Some(true)` when no improving move exists within
    /// `max_symmetric_difference`, `None` when the scan was too large to run.
    pub locally_optimal: Option<bool>,
    pub ratio: f64,
    /// `(1 - c2 eps - c1 eps^2)^-1 (1 + c2 eps)`, infinite if the
    /// denominator is not positive.
    pub bound: f64,
}

impl CertifierReport {
    pub fn symmetric_differences_ok(&self) -> bool {
        self.regions.iter().all(|r| r.symmetric_difference <= self.r)
    }

    /// Every region has nonnegative slack, up to rounding.
    pub fn slack_ok(&self) -> bool {
        let tol = 1e-9 * self.cost_local.abs().max(1.0);
        self.regions.iter().all(|r| r.slack >= -tol)
    }

    pub fn client_bounds_ok(&self) -> bool {
        self.regions.iter().all(|r| r.client_violations == 0)
    }

    /// `sum |G'_i| <= |G| + sum |B_i|`
    pub fn size_chain_ok(&self) -> bool {
        self.sum_global_parts <= self.global_size + self.sum_boundary
    }

    /// The checks that must hold on every run, plus slack when `L` was
    /// verified locally optimal.
    pub fn passed(&self) -> bool {
        let base = self.symmetric_differences_ok() && self.client_bounds_ok() && self.size_chain_ok();
        match self.locally_optimal {
            Some(true) => base && self.slack_ok(),
            _ => base,
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "epsilon={}", self.epsilon).unwrap();
        writeln!(out, "r={}", self.r).unwrap();
        writeln!(out, "facilities={}", self.facilities).unwrap();
        writeln!(out, "regions={}", self.regions.len()).unwrap();
        writeln!(out, "c1={:?}", self.stats.c1).unwrap();
        writeln!(out, "c2={:?}", self.stats.c2).unwrap();
        for r in &self.regions {
            writeln!(
                out,
                "region={} facilities={} boundary={} global_part={} local_part={} symdiff={} mixed_cost={:?} slack={:?} client_violations={}",
                r.region,
                r.facilities,
                r.boundary,
                r.global_part,
                r.local_part,
                r.symmetric_difference,
                r.mixed_cost,
                r.slack,
                r.client_violations
            )
            .unwrap();
        }
        writeln!(out, "global_size={}", self.global_size).unwrap();
        writeln!(out, "augmented_global={}", self.augmented_global).unwrap();
        writeln!(out, "sum_global_parts={}", self.sum_global_parts).unwrap();
        writeln!(out, "sum_boundary={}", self.sum_boundary).unwrap();
        writeln!(out, "max_symdiff={}", self.max_symmetric_difference).unwrap();
        let lo = match self.locally_optimal {
            Some(true) => "yes",
            Some(false) => "no",
            None => "skipped",
        };
        writeln!(out, "locally_optimal={lo}").unwrap();
        writeln!(out, "cost_local={:?}", self.cost_local).unwrap();
        writeln!(out, "cost_global={:?}", self.cost_global).unwrap();
        writeln!(out, "ratio={:?}", self.ratio).unwrap();
        writeln!(out, "bound={:?}", self.bound).unwrap();
        writeln!(out, "certify={}", if self.passed() { "PASS" } else { "FAIL" }).unwrap();
        out
    }
}

/// Builds the mixed solutions `M^i = (L \ L_i) ∪ G'_i` over an r-division of
/// the Voronoi contraction of `L ∪ G` and evaluates them.
pub fn certify_ufl(
    instance: &Instance,
    oracle: &DistanceOracle,
    local: &Solution,
    global: &Solution,
    epsilon: f64,
) -> Result<CertifierReport> {
    if !(epsilon > 0.0 && epsilon <= std::f64::consts::FRAC_1_SQRT_2) {
        return Err(Error::InvalidParameter(format!(
            "epsilon must lie in (0, 1/sqrt 2] so that r >= 2, got {epsilon}"
        )));
    }
    let graph = instance.graph()?;
    let opening = instance
        .opening_cost()
        .ok_or_else(|| Error::InvalidInstance("facility location needs an opening cost f".into()))?;
    instance.check_solution(local)?;
    instance.check_solution(global)?;
    let p = instance.p();
    let clients = instance.clients();
    let n = clients.len();

    let f_all = local.union(global);
    let r = (1.0 / (epsilon * epsilon) - 1e-9).ceil() as usize;
    let part = partition_graph(graph, oracle, &f_all)?;
    let quotient = contract(graph, &part)?;
    let division = divide_graph(&quotient.to_graph(), r)?;
    let centers = quotient.centers();

    let v_sets: Vec<Vec<usize>> = division
        .regions
        .iter()
        .map(|reg| reg.vertices.iter().map(|&q| centers[q]).collect())
        .collect();
    let b_sets: Vec<Vec<usize>> = division
        .regions
        .iter()
        .map(|reg| reg.boundary.iter().map(|&q| centers[q]).collect())
        .collect();
    let mut g_aug: Vec<usize> = global.centers().to_vec();
    g_aug.extend(b_sets.iter().flatten().copied());
    let g_aug = Solution::new(g_aug)?;

    let cost_local = cost(instance, oracle, local)?.total;
    let cost_global = cost(instance, oracle, global)?.total;
    let l_service: Vec<f64> = cost(instance, oracle, local)?.per_client.iter().map(|a| a.cost).collect();
    let g_service: Vec<f64> = cost(instance, oracle, &g_aug)?.per_client.iter().map(|a| a.cost).collect();

    let mut regions = Vec::with_capacity(division.regions.len());
    let mut mixed_sets = Vec::with_capacity(division.regions.len());
    for (i, reg) in division.regions.iter().enumerate() {
        let vi = &v_sets[i];
        let g_part: Vec<usize> = g_aug.iter().copied().filter(|x| vi.contains(x)).collect();
        let l_part = local.iter().filter(|x| vi.contains(x)).count();
        let mut mixed: Vec<usize> = local.iter().copied().filter(|x| !vi.contains(x)).collect();
        mixed.extend(&g_part);
        let (symmetric_difference, mixed_cost, client_violations) = match Solution::new(mixed) {
            Ok(m) => {
                let sd = m.symmetric_difference_len(local);
                let mut violations = 0;
                let mut service = 0.0;
                for (j, &c) in clients.iter().enumerate() {
                    let mc = pow(nearest(oracle, c, &m).1, p);
                    service += mc;
                    let internal = reg.is_internal(quotient.hat(c));
                    let allowed = if internal { g_service[j] } else { l_service[j] };
                    if mc > allowed * (1.0 + 1e-12) + 1e-12 {
                        violations += 1;
                    }
                }
                (sd, service + opening * m.len() as f64, violations)
            }
            Err(_) => (local.len(), f64::INFINITY, 0),
        };
        mixed_sets.push(symmetric_difference);
        regions.push(RegionRecord {
            region: i,
            facilities: vi.len(),
            boundary: b_sets[i].len(),
            global_part: g_part.len(),
            local_part: l_part,
            symmetric_difference,
            mixed_cost,
            slack: mixed_cost - cost_local + cost_local / n as f64,
            client_violations,
        });
    }

    let max_symmetric_difference = mixed_sets.iter().copied().max().unwrap_or(0);
    let m = instance.candidates().len();
    let locally_optimal = if max_symmetric_difference == 0 {
        Some(true)
    } else if k_subsets(m, max_symmetric_difference) <= VERIFY_BUDGET {
        Some(find_improvement(instance, oracle, local, Mode::Ufl, max_symmetric_difference, 1.0)?.is_none())
    } else {
        None
    };

    let stats = division.stats();
    let denom = 1.0 - stats.c2 * epsilon - stats.c1 * epsilon * epsilon;
    let bound = if denom > 0.0 {
        (1.0 + stats.c2 * epsilon) / denom
    } else {
        f64::INFINITY
    };
    Ok(CertifierReport {
        epsilon,
        r,
        facilities: f_all.len(),
        stats,
        cost_local,
        cost_global,
        global_size: global.len(),
        augmented_global: g_aug.len(),
        sum_global_parts: regions.iter().map(|r| r.global_part).sum(),
        sum_boundary: regions.iter().map(|r| r.boundary).sum(),
        max_symmetric_difference,
        locally_optimal,
        ratio: cost_local / cost_global,
        bound,
        regions,
    })
}
