use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::instance::{Instance, Solution};
use crate::metric::{cost, DistanceOracle};

/// `eps1` used when evaluating the two reassignment inequalities.
pub const REASSIGN_EPS1: f64 = 0.25;

/// Both sides of one reassignment inequality.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InequalityCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

impl InequalityCheck {
    fn new(lhs: f64, rhs: f64) -> Self {
        InequalityCheck {
            lhs,
            rhs,
            holds: lhs <= rhs * (1.0 + 1e-12) + 1e-12,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IsolatedRegion {
    pub f0: usize,
    /// Local centers whose clients mostly go to `f0`, ascending.
    pub l0: Vec<usize>,
    /// `|V_L(L0) ∩ V_G(f0)|`
    pub shared: usize,
    /// `|V_G(f0)|`
    pub g_cell: usize,
    /// Global-to-local reassignment: clients of `f0` outside `V_L(L0)` sent
    /// to the center of `L0` closest to `f0`.
    pub global_to_local: InequalityCheck,
    /// Local-to-global reassignment: clients of `L0` outside `V_G(f0)` sent to `f0`.
    pub local_to_global: InequalityCheck,
}

/// Client-level comparison of a local solution `L` with a global one `G`.
///
/// Cells hold positions in the instance's client list, so repeated clients
/// count with multiplicity.
#[derive(Debug, Clone, PartialEq)]
pub struct IsolationReport {
    pub epsilon: f64,
    pub local: Solution,
    pub global: Solution,
    /// Serving local center per client.
    pub local_center: Vec<usize>,
    /// Serving global center per client.
    pub global_center: Vec<usize>,
    /// `dist^p` to the serving local center.
    pub local_cost: Vec<f64>,
    /// `dist^p` to the serving global center.
    pub global_cost: Vec<f64>,
    pub regions: Vec<IsolatedRegion>,
    /// `(f, l)` pairs where each serves at least `1 - eps` of the other's clients.
    pub one_one_pairs: Vec<(usize, usize)>,
    /// Global centers in no 1-1 pair.
    pub k_bar: usize,
    pub good: Vec<bool>,
}

impl IsolationReport {
    pub fn local_cell(&self, l: usize) -> Vec<usize> {
        cell(&self.local_center, l)
    }

    pub fn global_cell(&self, f: usize) -> Vec<usize> {
        cell(&self.global_center, f)
    }

    /// Global centers heading an isolated region.
    pub fn isolated_global(&self) -> Vec<usize> {
        self.regions.iter().map(|r| r.f0).collect()
    }

    pub fn is_isolated_local(&self, l: usize) -> bool {
        self.regions.iter().any(|r| r.l0.contains(&l))
    }

    /// No local center lies in two isolated regions.
    pub fn local_sides_disjoint(&self) -> bool {
        let mut all: Vec<usize> = self.regions.iter().flat_map(|r| r.l0.iter().copied()).collect();
        let n = all.len();
        all.sort_unstable();
        all.dedup();
        all.len() == n
    }

    pub fn reassignments_hold(&self) -> bool {
        self.regions
            .iter()
            .all(|r| r.global_to_local.holds && r.local_to_global.holds)
    }

    pub fn to_text(&self) -> String {
        let ids = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        let mut out = String::new();
        writeln!(out, "epsilon={}", self.epsilon).unwrap();
        writeln!(out, "isolated_regions={}", self.regions.len()).unwrap();
        writeln!(out, "one_one_pairs={}", self.one_one_pairs.len()).unwrap();
        writeln!(out, "k_bar={}", self.k_bar).unwrap();
        writeln!(out, "good_clients={}", self.good.iter().filter(|&&g| g).count()).unwrap();
        writeln!(out, "bad_clients={}", self.good.iter().filter(|&&g| !g).count()).unwrap();
        for (i, r) in self.regions.iter().enumerate() {
            writeln!(
                out,
                "region={i} f0={} l0={} shared={} g_cell={} globtoloc_lhs={:?} globtoloc_rhs={:?} loctoglob_lhs={:?} loctoglob_rhs={:?}",
                r.f0,
                ids(&r.l0),
                r.shared,
                r.g_cell,
                r.global_to_local.lhs,
                r.global_to_local.rhs,
                r.local_to_global.lhs,
                r.local_to_global.rhs
            )
            .unwrap();
        }
        for &(f, l) in &self.one_one_pairs {
            writeln!(out, "one_one f={f} l={l}").unwrap();
        }
        out
    }
}

fn cell(centers: &[usize], c: usize) -> Vec<usize> {
    centers
        .iter()
        .enumerate()
        .filter(|&(_, &x)| x == c)
        .map(|(i, _)| i)
        .collect()
}

pub(crate) fn check_epsilon(epsilon: f64) -> Result<()> {
    if !(epsilon > 0.0 && epsilon < 0.5) {
        return Err(Error::InvalidParameter(format!(
            "epsilon must lie in (0, 1/2), got {epsilon}"
        )));
    }
    Ok(())
}

pub fn detect_isolation(
    instance: &Instance,
    oracle: &DistanceOracle,
    local: &Solution,
    global: &Solution,
    epsilon: f64,
) -> Result<IsolationReport> {
    check_epsilon(epsilon)?;
    instance.check_solution(local)?;
    instance.check_solution(global)?;
    let p = instance.p();
    let lc = cost(instance, oracle, local)?.per_client;
    let gc = cost(instance, oracle, global)?.per_client;
    let local_center: Vec<usize> = lc.iter().map(|a| a.center).collect();
    let global_center: Vec<usize> = gc.iter().map(|a| a.center).collect();
    let local_cost: Vec<f64> = lc.iter().map(|a| a.cost).collect();
    let global_cost: Vec<f64> = gc.iter().map(|a| a.cost).collect();
    let nc = local_center.len();

    let l_size = |l: usize| local_center.iter().filter(|&&x| x == l).count();
    let g_size = |f: usize| global_center.iter().filter(|&&x| x == f).count();
    let overlap = |l: usize, f: usize| {
        (0..nc)
            .filter(|&i| local_center[i] == l && global_center[i] == f)
            .count()
    };
    let keep = 1.0 - epsilon;

    let mut regions = Vec::new();
    let mut one_one_pairs = Vec::new();
    for &f0 in global {
        let gs = g_size(f0);
        // Centers without clients are never isolated.
        let l0: Vec<usize> = local
            .iter()
            .copied()
            .filter(|&l| {
                let ls = l_size(l);
                ls > 0 && overlap(l, f0) as f64 >= keep * ls as f64
            })
            .collect();
        for &l in &l0 {
            if overlap(l, f0) as f64 >= keep * gs as f64 {
                one_one_pairs.push((f0, l));
            }
        }
        if l0.is_empty() {
            continue;
        }
        let in_l0 = |i: usize| l0.contains(&local_center[i]);
        let shared = (0..nc).filter(|&i| in_l0(i) && global_center[i] == f0).count();
        if (shared as f64) < keep * gs as f64 {
            continue;
        }

        let e1 = REASSIGN_EPS1;
        let pf = p as f64;
        let tail = 2f64.powf(pf) * (1.0 + e1).powf(pf) * e1.powf(-pf) * epsilon / (1.0 - epsilon)
            * (0..nc)
                .filter(|&i| global_center[i] == f0)
                .map(|i| global_cost[i] + local_cost[i])
                .sum::<f64>();
        let target = *l0
            .iter()
            .min_by(|&&a, &&b| oracle.dist(a, f0).total_cmp(&oracle.dist(b, f0)).then(a.cmp(&b)))
            .expect("nonempty");
        let clients = instance.clients();
        let g_only: Vec<usize> = (0..nc).filter(|&i| global_center[i] == f0 && !in_l0(i)).collect();
        let l_only: Vec<usize> = (0..nc).filter(|&i| in_l0(i) && global_center[i] != f0).collect();
        let global_to_local = InequalityCheck::new(
            g_only.iter().map(|&i| oracle.dist_p(clients[i], target, p)).sum(),
            (1.0 + e1).powf(pf) * g_only.iter().map(|&i| global_cost[i]).sum::<f64>() + tail,
        );
        let local_to_global = InequalityCheck::new(
            l_only.iter().map(|&i| oracle.dist_p(clients[i], f0, p)).sum(),
            (1.0 + e1).powf(pf) * l_only.iter().map(|&i| local_cost[i]).sum::<f64>() + tail,
        );
        regions.push(IsolatedRegion {
            f0,
            l0,
            shared,
            g_cell: gs,
            global_to_local,
            local_to_global,
        });
    }

    let mut in_pair: Vec<usize> = one_one_pairs.iter().map(|&(f, _)| f).collect();
    in_pair.sort_unstable();
    in_pair.dedup();
    let k_bar = global.len() - in_pair.len();

    let isolated_g: Vec<usize> = regions.iter().map(|r| r.f0).collect();
    let good = (0..nc)
        .map(|i| {
            let (l, f) = (local_center[i], global_center[i]);
            let in_region = regions.iter().any(|r| r.f0 == f && r.l0.contains(&l));
            let both_free = !isolated_g.contains(&f) && !regions.iter().any(|r| r.l0.contains(&l));
            in_region || both_free
        })
        .collect();

    Ok(IsolationReport {
        epsilon,
        local: local.clone(),
        global: global.clone(),
        local_center,
        global_center,
        local_cost,
        global_cost,
        regions,
        one_one_pairs,
        k_bar,
        good,
    })
}
