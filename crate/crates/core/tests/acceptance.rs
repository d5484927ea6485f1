//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use swapshop::analysis::{certify_ufl, delete_centers};
use swapshop::instance::{generate_grid, generate_random_euclidean, generate_tightness, WeightModel};
use swapshop::localsearch::{find_improvement, local_search_with, Init, Mode, SearchConfig, SearchTrace};
use swapshop::metric::check_power_triangle;
use swapshop::oracle::{exact_k_clustering_with, exact_ufl_with, k_subsets, DEFAULT_BUDGET};
use swapshop::rdivision::{
    divide_graph, euclidean_r_division, verify_euclidean_separation, verify_graph_separation,
};
use swapshop::voronoi::{contract, voronoi_partition};
use swapshop::{DistanceOracle, Instance, Solution, Space};

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

/// Runs recorded for the iteration-bound check.
#[derive(Default)]
struct Runs {
    /// `(iterations, bound)`; `None` when the final cost is 0.
    records: Vec<(usize, Option<f64>)>,
}

impl Runs {
    fn push(&mut self, t: &SearchTrace, epsilon: f64, clients: usize) {
        self.records.push((t.steps.len(), t.iteration_bound(epsilon, clients)));
    }
}

fn random_subset(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Vec<usize> {
    let mut v = sample(rng, n, k).into_vec();
    v.sort_unstable();
    v
}

fn oracle_equivalence(runs: &mut Runs) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut checked = 0;
    let mut worst: f64 = 0.0;
    let mut failures = Vec::new();
    for i in 0..240 {
        let p = 1 + (i % 2) as u32;
        let k = 1 + (i / 2) % 3;
        let space = if i % 4 < 2 {
            let w = rng.random_range(2..5);
            let h = rng.random_range(2..5);
            generate_grid(w, h, WeightModel::Random { seed: rng.random() }).unwrap().space().clone()
        } else {
            let n = rng.random_range(6..20);
            let d = rng.random_range(1..4);
            generate_random_euclidean(n, d, rng.random()).unwrap().space().clone()
        };
        let n = match &space {
            Space::Graph(g) => g.vertex_count(),
            Space::Euclidean(pts) => pts.len(),
        };
        let m = rng.random_range(k.max(2)..=8.min(n));
        let candidates = random_subset(&mut rng, n, m);
        let inst = Instance::with_roles(space, (0..n).collect(), candidates, p).unwrap();
        let oracle = DistanceOracle::new(&inst);
        let mode = Mode::KClustering { k };
        let cfg = SearchConfig::new(mode, 2 * k, 1e-6);
        let t = local_search_with(&inst, &oracle, &cfg).unwrap();
        runs.push(&t, 1e-6, n);
        let best = exact_k_clustering_with(&inst, &oracle, k, DEFAULT_BUDGET).unwrap();
        let rel = (t.cost - best.cost).abs() / best.cost.max(f64::MIN_POSITIVE);
        worst = worst.max(if best.cost == 0.0 && t.cost == 0.0 { 0.0 } else { rel });
        if rel > 1e-9 && !(best.cost == 0.0 && t.cost == 0.0) {
            failures.push(i);
        }
        checked += 1;
    }
    outcome(
        failures.is_empty(),
        format!("instances={checked} max_rel_err={worst:e} mismatches={failures:?}"),
    )
}

fn locality_gap(runs: &mut Runs) -> Outcome {
    let mut ratios = Vec::new();
    let mut notes = Vec::new();
    let mut ok = true;
    for m in [6, 8, 10] {
        let t = generate_tightness(m, 0.5).unwrap();
        let inst = &t.instance;
        let o = DistanceOracle::new(inst);
        let mode = Mode::KClustering { k: m };
        let stuck = find_improvement(inst, &o, &t.planted, mode, t.swap_size, 1e-9).unwrap().is_none();
        let cfg = SearchConfig::new(mode, t.swap_size, 1e-6).with_init(Init::Provided(t.planted.clone()));
        let run = local_search_with(inst, &o, &cfg).unwrap();
        runs.push(&run, 1e-6, inst.clients().len());
        let best = exact_k_clustering_with(inst, &o, m, DEFAULT_BUDGET).unwrap();
        let ratio = run.cost / best.cost;
        ok &= stuck && run.solution == t.planted;
        notes.push(format!("m={m}:ratio={ratio:.4}:local_opt={stuck}"));
        ratios.push(ratio);
    }
    ok &= ratios[0] >= 2.5 && ratios.windows(2).all(|w| w[1] > w[0]);
    outcome(ok, notes.join(" "))
}

fn ptas_trend(runs: &mut Runs) -> Outcome {
    let k = 5;
    let mut sums = [0.0f64; 3];
    let count = 10;
    for seed in 0..count {
        let inst = generate_grid(8, 8, WeightModel::Random { seed }).unwrap();
        let o = DistanceOracle::new(&inst);
        let best = exact_k_clustering_with(&inst, &o, k, DEFAULT_BUDGET).unwrap().cost;
        for (j, s) in [1, 2, 3].into_iter().enumerate() {
            let cfg = SearchConfig::new(Mode::KClustering { k }, s, 0.01).with_init(Init::SeededRandom(seed));
            let t = local_search_with(&inst, &o, &cfg).unwrap();
            runs.push(&t, 0.01, inst.clients().len());
            sums[j] += t.cost / best;
        }
    }
    let mean: Vec<f64> = sums.iter().map(|s| s / count as f64).collect();
    let tol = 1e-12;
    let ok = mean[1] <= mean[0] + tol && mean[2] <= mean[1] + tol && mean[2] <= 1.10;
    outcome(
        ok,
        format!("mean_ratio s1={:.4} s2={:.4} s3={:.4}", mean[0], mean[1], mean[2]),
    )
}

fn iteration_bound(runs: &Runs) -> Outcome {
    let bad = runs
        .records
        .iter()
        .filter(|(it, b)| b.is_some_and(|b| *it as f64 > b + 1e-9))
        .count();
    outcome(bad == 0, format!("runs={} violations={bad}", runs.records.len()))
}

fn rdivision_properties() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for (side, r) in [(4usize, 4usize), (8, 9), (12, 16), (16, 16), (16, 36)] {
        let inst = generate_grid(side, side, WeightModel::Random { seed: side as u64 }).unwrap();
        let graph = inst.graph().unwrap();
        let div = divide_graph(graph, r).unwrap();
        let direct = div.audit(graph);

        let n = side * side;
        let centers = Solution::new(random_subset(&mut rng, n, (n / 4).max(2))).unwrap();
        let o = DistanceOracle::new(&inst);
        let part = voronoi_partition(&inst, &o, &centers).unwrap();
        let q = contract(graph, &part).unwrap();
        let qdiv = divide_graph(&q.to_graph(), r).unwrap();
        let qaudit = qdiv.audit(&q.to_graph());
        let queries: Vec<(usize, usize)> = (0..100)
            .map(|_| (rng.random_range(0..n), centers.centers()[rng.random_range(0..centers.len())]))
            .collect();
        let sep = verify_graph_separation(&qdiv, &q, &o, &queries).unwrap();
        let pass = direct.is_ok() && qaudit.is_ok() && sep.passed() && part.cells_connected(graph);
        let st = div.stats();
        notes.push(format!("grid{side}x{side}/r{r}:c1={:.2},c2={:.2}{}", st.c1, st.c2, if pass { "" } else { ":FAIL" }));
        if let Err(e) = direct.and(qaudit) {
            notes.push(e);
        }
        ok &= pass;
    }
    for (n, r) in [(100usize, 16usize), (250, 25), (500, 16), (500, 49)] {
        let inst = generate_random_euclidean(n, 2, n as u64 + r as u64).unwrap();
        let pts = inst.points().unwrap();
        let pass = match euclidean_r_division(&inst, r) {
            Ok(div) => {
                let audit = div.audit(pts);
                let queries: Vec<(usize, usize)> =
                    (0..100).map(|_| (rng.random_range(0..n), rng.random_range(0..n))).collect();
                let sep = verify_euclidean_separation(&div, pts, &queries).unwrap();
                let st = div.stats();
                notes.push(format!("points{n}/r{r}:c1={:.2},c2={:.2}", st.c1, st.c2));
                if let Err(e) = &audit {
                    notes.push(e.clone());
                }
                audit.is_ok() && sep.passed()
            }
            Err(e) => {
                notes.push(format!("points{n}/r{r}:{e}"));
                false
            }
        };
        ok &= pass;
    }
    outcome(ok, notes.join(" "))
}

fn deletion_corpus() -> Outcome {
    let mut pairs = 0;
    let mut failures = Vec::new();
    let mut vacuous = 0;
    let shapes = [(6usize, 6usize, 4usize), (7, 7, 4), (8, 8, 4), (10, 10, 3), (9, 9, 3)];
    for seed in 0..10u64 {
        let (w, h, k) = shapes[seed as usize % shapes.len()];
        let base = generate_grid(w, h, WeightModel::Random { seed }).unwrap();
        for p in [1u32, 2] {
            let inst = base.clone().with_p(p).unwrap();
            let o = DistanceOracle::new(&inst);
            let g = exact_k_clustering_with(&inst, &o, k, DEFAULT_BUDGET).unwrap().solution;
            let cfg = SearchConfig::new(Mode::KClustering { k }, 2, 0.01).with_init(Init::SeededRandom(seed + 100));
            let l = local_search_with(&inst, &o, &cfg).unwrap().solution;
            for eps in [0.2, 0.3, 0.4] {
                let res = delete_centers(&inst, &o, &l, &g, eps).unwrap();
                pairs += 1;
                let sound = res.cost_after <= res.cost_surrogate * (1.0 + 1e-12) + 1e-12;
                if res.deleted.is_empty() {
                    vacuous += 1;
                }
                if !res.verdict.is_pass() || !sound {
                    failures.push(format!("seed{seed}/p{p}/eps{eps}"));
                }
            }
        }
    }
    // Larger k, where the exact oracle is out of reach: G from a wider
    // neighborhood than L, from a different start.
    for seed in 0..10u64 {
        let k = 6 + 2 * (seed as usize % 2);
        let base = generate_grid(10, 10, WeightModel::Random { seed: 50 + seed }).unwrap();
        for p in [1u32, 2] {
            let inst = base.clone().with_p(p).unwrap();
            let o = DistanceOracle::new(&inst);
            let mode = Mode::KClustering { k };
            let g = local_search_with(&inst, &o, &SearchConfig::new(mode, 3, 0.01).with_init(Init::SeededRandom(seed)))
                .unwrap()
                .solution;
            let l = local_search_with(&inst, &o, &SearchConfig::new(mode, 2, 0.01).with_init(Init::SeededRandom(seed + 7)))
                .unwrap()
                .solution;
            for eps in [0.2, 0.3, 0.4] {
                let res = delete_centers(&inst, &o, &l, &g, eps).unwrap();
                pairs += 1;
                let sound = res.cost_after <= res.cost_surrogate * (1.0 + 1e-12) + 1e-12;
                if res.deleted.is_empty() {
                    vacuous += 1;
                }
                if !res.verdict.is_pass() || !sound {
                    failures.push(format!("k{k}/seed{seed}/p{p}/eps{eps}"));
                }
            }
        }
    }
    outcome(
        pairs >= 50 && failures.is_empty(),
        format!("pairs={pairs} vacuous={vacuous} failures={failures:?}"),
    )
}

fn certifier_runs() -> Outcome {
    let shapes = [(4, 4), (4, 5), (5, 5), (5, 6), (6, 6), (6, 7), (7, 7), (7, 8), (8, 8), (8, 8)];
    let mut notes = Vec::new();
    let mut ok = true;
    let mut verified = 0;
    for (i, &(w, h)) in shapes.iter().enumerate() {
        let weights = if i == shapes.len() - 1 { WeightModel::Random { seed: 1 } } else { WeightModel::Unit };
        let inst = generate_grid(w, h, weights).unwrap().with_opening_cost(3.0).unwrap();
        let o = DistanceOracle::new(&inst);
        let l = local_search_with(&inst, &o, &SearchConfig::new(Mode::Ufl, 4, 0.01)).unwrap().solution;
        let m = inst.candidates().len();
        let g = if k_subsets(m, m) <= DEFAULT_BUDGET {
            exact_ufl_with(&inst, &o, DEFAULT_BUDGET).unwrap().solution
        } else {
            let cfg = SearchConfig::new(Mode::Ufl, 4, 0.01).with_init(Init::SeededRandom(i as u64));
            local_search_with(&inst, &o, &cfg).unwrap().solution
        };
        let rep = certify_ufl(&inst, &o, &l, &g, 0.5).unwrap();
        let lo = rep.locally_optimal == Some(true);
        verified += usize::from(lo);
        let pass = rep.symmetric_differences_ok()
            && rep.client_bounds_ok()
            && rep.size_chain_ok()
            && (!lo || rep.slack_ok());
        ok &= pass;
        notes.push(format!(
            "{w}x{h}:symdiff={}/{}:verified={lo}:ratio={:.3}{}",
            rep.max_symmetric_difference,
            rep.r,
            rep.ratio,
            if pass { "" } else { ":FAIL" }
        ));
    }
    notes.push(format!("verified={verified}/{}", shapes.len()));
    outcome(ok, notes.join(" "))
}

fn metric_properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let grid = generate_grid(10, 10, WeightModel::Random { seed: 8 }).unwrap();
    let pts = generate_random_euclidean(200, 3, 8).unwrap();
    let spaces = [(&grid, DistanceOracle::new(&grid)), (&pts, DistanceOracle::new(&pts))];
    let mut triples = 0;
    let mut bad = 0;
    for t in 0..10_000 {
        let (inst, o) = &spaces[t % 2];
        let n = inst.element_count();
        let (a, b, c) = (rng.random_range(0..n), rng.random_range(0..n), rng.random_range(0..n));
        triples += 1;
        for p in [1, 2, 3] {
            for eps1 in [0.1, 0.25, 0.49] {
                if !check_power_triangle(o, a, b, c, p, eps1).unwrap().holds {
                    bad += 1;
                }
            }
        }
    }
    let mut disconnected = 0;
    for i in 0..100 {
        let w = rng.random_range(2..12);
        let h = rng.random_range(2..12);
        let inst = generate_grid(w, h, WeightModel::Random { seed: i }).unwrap();
        let k = rng.random_range(1..=(w * h).min(10));
        let s = Solution::new(random_subset(&mut rng, w * h, k)).unwrap();
        let o = DistanceOracle::new(&inst);
        let part = voronoi_partition(&inst, &o, &s).unwrap();
        if !part.cells_connected(inst.graph().unwrap()) {
            disconnected += 1;
        }
    }
    outcome(
        bad == 0 && disconnected == 0,
        format!("triples={triples} violations={bad} grids=100 disconnected={disconnected}"),
    )
}

fn report(id: usize, name: &str, limit: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let out = f();
    let took = start.elapsed();
    let in_time = took <= limit;
    let ok = out.ok && in_time;
    println!(
        "criterion {id} {name}: {} ({}; {:.1}s of {}s)",
        if ok { "PASS" } else { "FAIL" },
        out.detail,
        took.as_secs_f64(),
        limit.as_secs()
    );
    ok
}

fn main() -> ExitCode {
    let mut runs = Runs::default();
    let mut all = true;
    all &= report(1, "oracle-equivalence", Duration::from_secs(60), || oracle_equivalence(&mut runs));
    all &= report(2, "locality-gap", Duration::from_secs(60), || locality_gap(&mut runs));
    all &= report(3, "ptas-trend", Duration::from_secs(600), || ptas_trend(&mut runs));
    all &= report(4, "iteration-bound", Duration::from_secs(60), || iteration_bound(&runs));
    all &= report(5, "r-division", Duration::from_secs(120), rdivision_properties);
    all &= report(6, "center-deletion", Duration::from_secs(120), deletion_corpus);
    all &= report(7, "ufl-certifier", Duration::from_secs(300), certifier_runs);
    all &= report(8, "metric", Duration::from_secs(60), metric_properties);
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
