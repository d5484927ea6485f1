use std::fmt::Write as _;

use super::isolation::{check_epsilon, detect_isolation, IsolationReport};
use crate::error::{Error, Result};
use crate::instance::{Instance, Solution};
use crate::metric::{cost, nearest, DistanceOracle};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    /// Nothing to delete: every global center is isolated.
    Vacuous,
    Fail(Vec<String>),
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        !matches!(self, Verdict::Fail(_))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DeletionResult {
    pub isolation: IsolationReport,
    /// Nonisolated global centers.
    pub candidates: Vec<usize>,
    /// `(f, phi(f))` for every nonisolated `f`.
    pub arcs: Vec<(usize, usize)>,
    /// Color of every global center, in solution order.
    pub colors: Vec<u8>,
    /// Largest color class among the candidates.
    pub class: Vec<usize>,
    pub parts: Vec<Vec<usize>>,
    pub deleted: Vec<usize>,
    pub cost_global: f64,
    pub cost_local: f64,
    /// True cost of `G \ S0`.
    pub cost_after: f64,
    /// Cost of `G` with every client of a deleted `f` moved to `phi(f)`.
    pub cost_surrogate: f64,
    /// Cost of `G` with clients of deleted centers spread over `psi(l, f)`.
    pub cost_fractional: f64,
    pub bound: f64,
    pub verdict: Verdict,
}

impl DeletionResult {
    pub fn to_text(&self) -> String {
        let ids = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        let mut out = String::new();
        writeln!(out, "k_bar={}", self.isolation.k_bar).unwrap();
        writeln!(out, "candidates={}", ids(&self.candidates)).unwrap();
        writeln!(out, "class={}", ids(&self.class)).unwrap();
        writeln!(out, "parts={}", self.parts.len()).unwrap();
        writeln!(out, "deleted={}", ids(&self.deleted)).unwrap();
        writeln!(out, "cost_global={:?}", self.cost_global).unwrap();
        writeln!(out, "cost_local={:?}", self.cost_local).unwrap();
        writeln!(out, "cost_after={:?}", self.cost_after).unwrap();
        writeln!(out, "cost_surrogate={:?}", self.cost_surrogate).unwrap();
        writeln!(out, "cost_fractional={:?}", self.cost_fractional).unwrap();
        writeln!(out, "bound={:?}", self.bound).unwrap();
        match &self.verdict {
            Verdict::Pass => writeln!(out, "deletion=PASS").unwrap(),
            Verdict::Vacuous => writeln!(out, "deletion=PASS vacuous").unwrap(),
            Verdict::Fail(why) => writeln!(out, "deletion=FAIL {}", why.join("; ")).unwrap(),
        }
        out
    }
}

/// Proper coloring with colors 0..3 of a functional graph. `next[i]` is the
/// out-neighbor of `i`; `None` marks a sink. Self-loops are not allowed.
pub fn three_color(next: &[Option<usize>]) -> Vec<u8> {
    let n = next.len();
    let mut color: Vec<Option<u8>> = vec![None; n];
    // 0 = unseen, 1 = on the current walk, 2 = done
    let mut state = vec![0u8; n];
    for start in 0..n {
        if state[start] != 0 {
            continue;
        }
        let mut walk = Vec::new();
        let mut v = start;
        let mut cycle_at = None;
        loop {
            if state[v] == 1 {
                cycle_at = walk.iter().position(|&x| x == v);
                break;
            }
            if state[v] == 2 {
                break;
            }
            state[v] = 1;
            walk.push(v);
            match next[v] {
                Some(w) => v = w,
                None => break,
            }
        }
        let tree_len = match cycle_at {
            Some(pos) => {
                let mut cyc = walk[pos..].to_vec();
                let m = cyc.iter().enumerate().min_by_key(|&(_, &x)| x).unwrap().0;
                cyc.rotate_left(m);
                let len = cyc.len();
                for (i, &x) in cyc.iter().enumerate() {
                    color[x] = Some((i % 3) as u8);
                }
                if len % 3 == 1 {
                    color[cyc[len - 1]] = Some(1);
                }
                pos
            }
            None => walk.len(),
        };
        for &x in walk[..tree_len].iter().rev() {
            color[x] = Some(match next[x] {
                Some(w) if color[w] == Some(0) => 1,
                _ => 0,
            });
        }
        for &x in &walk {
            state[x] = 2;
        }
    }
    color.into_iter().map(|c| c.expect("every vertex colored")).collect()
}

/// Splits `items` into `parts` near-equal nonempty chunks, in order.
fn split_even(items: &[usize], parts: usize) -> Vec<Vec<usize>> {
    let (q, r) = (items.len() / parts, items.len() % parts);
    let mut out = Vec::with_capacity(parts);
    let mut at = 0;
    for i in 0..parts {
        let len = q + usize::from(i < r);
        out.push(items[at..at + len].to_vec());
        at += len;
    }
    out
}

fn service_without(
    instance: &Instance,
    oracle: &DistanceOracle,
    global: &Solution,
    removed: &[usize],
) -> Result<f64> {
    let rest: Vec<usize> = global.iter().copied().filter(|c| !removed.contains(c)).collect();
    Ok(cost(instance, oracle, &Solution::new(rest)?)?.service)
}

/// Deletes a set of global centers whose removal costs little compared to
/// `cost(G)` and `cost(L)`, and checks the guarantees on the result.
pub fn delete_centers(
    instance: &Instance,
    oracle: &DistanceOracle,
    local: &Solution,
    global: &Solution,
    epsilon: f64,
) -> Result<DeletionResult> {
    check_epsilon(epsilon)?;
    if global.len() < 2 {
        return Err(Error::InvalidParameter(
            "deletion needs at least two global centers".into(),
        ));
    }
    let iso = detect_isolation(instance, oracle, local, global, epsilon)?;
    let p = instance.p();
    let isolated = iso.isolated_global();
    let g = global.centers();
    let candidates: Vec<usize> = g.iter().copied().filter(|f| !isolated.contains(f)).collect();

    let phi = |f: usize| -> usize {
        let others = Solution::new(g.iter().copied().filter(|&x| x != f).collect()).expect("|G| >= 2");
        nearest(oracle, f, &others).0
    };
    let pos = |f: usize| g.binary_search(&f).expect("global center");
    let arcs: Vec<(usize, usize)> = candidates.iter().map(|&f| (f, phi(f))).collect();
    let mut next = vec![None; g.len()];
    for &(f, t) in &arcs {
        next[pos(f)] = Some(pos(t));
    }
    let colors = three_color(&next);

    let mut class = Vec::new();
    for c in 0..3u8 {
        let members: Vec<usize> = candidates.iter().copied().filter(|&f| colors[pos(f)] == c).collect();
        if members.len() > class.len() {
            class = members;
        }
    }

    let cost_global = cost(instance, oracle, global)?.service;
    let cost_local = cost(instance, oracle, local)?.service;
    let scale = 2f64.powi(3 * p as i32 + 1) * epsilon;
    let bound = (1.0 + scale) * cost_global + scale * cost_local;

    let clients = instance.clients();
    if class.is_empty() {
        return Ok(DeletionResult {
            isolation: iso,
            candidates,
            arcs,
            colors,
            class,
            parts: Vec::new(),
            deleted: Vec::new(),
            cost_global,
            cost_local,
            cost_after: cost_global,
            cost_surrogate: cost_global,
            cost_fractional: cost_global,
            bound,
            verdict: Verdict::Vacuous,
        });
    }

    let wanted = (1.0 / epsilon.powi(3) - 1e-9).ceil() as usize;
    let parts = split_even(&class, wanted.min(class.len()));
    let mut best: Option<(f64, usize)> = None;
    for (i, part) in parts.iter().enumerate() {
        let c = service_without(instance, oracle, global, part)?;
        if best.is_none_or(|(b, _)| c < b) {
            best = Some((c, i));
        }
    }
    let (cost_after, which) = best.expect("at least one part");
    let deleted = parts[which].clone();

    let cost_surrogate: f64 = (0..clients.len())
        .map(|i| {
            let f = iso.global_center[i];
            if deleted.contains(&f) {
                oracle.dist_p(clients[i], phi(f), p)
            } else {
                iso.global_cost[i]
            }
        })
        .sum();
    let cost_fractional = fractional_cost(instance, oracle, &iso, &deleted, epsilon);

    let mut why = Vec::new();
    let need = epsilon.powi(3) * iso.k_bar as f64 / 6.0;
    if (deleted.len() as f64) < need {
        why.push(format!("deleted {} < {need}", deleted.len()));
    }
    if cost_after > bound * (1.0 + 1e-12) {
        why.push(format!("cost {cost_after} exceeds bound {bound}"));
    }
    for &(f, t) in &arcs {
        if colors[pos(f)] == colors[pos(t)] {
            why.push(format!("arc {f}->{t} is monochromatic"));
        }
        if deleted.contains(&f) && deleted.contains(&t) {
            why.push(format!("phi({f}) = {t} was deleted too"));
        }
    }
    if cost_after > cost_surrogate * (1.0 + 1e-12) + 1e-12 {
        why.push(format!("true cost {cost_after} exceeds surrogate {cost_surrogate}"));
    }
    let verdict = if why.is_empty() { Verdict::Pass } else { Verdict::Fail(why) };

    Ok(DeletionResult {
        isolation: iso,
        candidates,
        arcs,
        colors,
        class,
        parts,
        deleted,
        cost_global,
        cost_local,
        cost_after,
        cost_surrogate,
        cost_fractional,
        bound,
        verdict,
    })
}

/// Cost of `G` where the clients of each deleted `f` are split over the
/// local centers `l` sharing few clients with `f`, each share going to the
/// global center other than `f` closest to `l`. Shares hold at most
/// `overlap / epsilon` clients; leftovers from rounding go to the last share.
fn fractional_cost(
    instance: &Instance,
    oracle: &DistanceOracle,
    iso: &IsolationReport,
    deleted: &[usize],
    epsilon: f64,
) -> f64 {
    let p = instance.p();
    let clients = instance.clients();
    let mut total: f64 = (0..clients.len())
        .filter(|&i| !deleted.contains(&iso.global_center[i]))
        .map(|i| iso.global_cost[i])
        .sum();
    for &f in deleted {
        let cell = iso.global_cell(f);
        if cell.is_empty() {
            continue;
        }
        let others = Solution::new(iso.global.iter().copied().filter(|&x| x != f).collect())
            .expect("|G| >= 2");
        let mut shares: Vec<(usize, usize)> = Vec::new();
        for &l in &iso.local {
            let ls = iso.local_cell(l).len();
            let ov = cell.iter().filter(|&&i| iso.local_center[i] == l).count();
            if ov >= 1 && (ov as f64) < (1.0 - epsilon) * ls as f64 {
                let psi = nearest(oracle, l, &others).0;
                shares.push((psi, (ov as f64 / epsilon).floor() as usize));
            }
        }
        if shares.is_empty() {
            // No admissible share: fall back to the nearest remaining center.
            let psi = nearest(oracle, f, &others).0;
            shares.push((psi, cell.len()));
        }
        let mut it = cell.iter();
        let last = shares.len() - 1;
        for (j, &(psi, cap)) in shares.iter().enumerate() {
            let take = if j == last { usize::MAX } else { cap };
            for &i in it.by_ref().take(take) {
                total += oracle.dist_p(clients[i], psi, p);
            }
        }
    }
    total
}
