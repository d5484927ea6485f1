use std::time::Instant;

use anyhow::{bail, Context, Result};
use swapshop::instance::{load_instance, load_solution, save_solution, Format};
use swapshop::localsearch::{local_search_with, Init, Mode, SearchConfig};
use swapshop::oracle::{exact_k_clustering_with, exact_ufl_with, DEFAULT_BUDGET};
use swapshop::{DistanceOracle, Error, Instance};

use crate::{digest, ids, ModeArg, Outcome, SolveArgs};

pub fn budget() -> Result<u128> {
    match std::env::var("SWAPSHOP_BUDGET") {
        Ok(v) => v
            .trim()
            .parse()
            .with_context(|| format!("SWAPSHOP_BUDGET is not an integer: {v:?}")),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn prepare(args: &SolveArgs) -> Result<(Instance, Mode)> {
    let inst = load_instance(&args.instance, Format::from_path(&args.instance))
        .with_context(|| format!("loading {}", args.instance.display()))?;
    let p = match (args.p, args.mode) {
        (Some(p), _) => p,
        (None, ModeArg::Kmed) => 1,
        (None, ModeArg::Kmeans) => 2,
        (None, ModeArg::Ufl) => inst.p(),
    };
    let mut inst = inst.with_p(p)?;
    if let Some(f) = args.f {
        inst = inst.with_opening_cost(f)?;
    }
    let mode = match args.mode {
        ModeArg::Ufl => {
            if inst.opening_cost().is_none() {
                bail!("ufl mode needs an opening cost: pass --f or set f= in the instance");
            }
            Mode::Ufl
        }
        _ => {
            let Some(k) = args.k.or(inst.k()) else {
                bail!("k-clustering needs --k or k= in the instance");
            };
            Mode::KClustering { k }
        }
    };
    Ok((inst, mode))
}

pub fn run(args: &SolveArgs) -> Result<Outcome> {
    let start = Instant::now();
    let (inst, mode) = prepare(args)?;
    let budget = budget()?;
    if let Some(t) = args.threads {
        if t == 0 {
            bail!("--threads must be positive");
        }
        // Only fails if a pool already exists, which is harmless here.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    let init = match (&args.init, args.seed) {
        (Some(path), _) => Init::Provided(
            load_solution(path).with_context(|| format!("loading {}", path.display()))?,
        ),
        (None, Some(seed)) => Init::SeededRandom(seed),
        (None, None) => Init::LowestIds,
    };
    let init_name = match &init {
        Init::Provided(_) => "file".to_string(),
        Init::SeededRandom(seed) => format!("random:{seed}"),
        Init::LowestIds => "lowest".to_string(),
    };
    let config = SearchConfig::new(mode, args.s, args.epsilon)
        .with_init(init)
        .with_parallel(args.threads.is_some_and(|t| t > 1));
    let oracle = DistanceOracle::new(&inst);
    let trace = local_search_with(&inst, &oracle, &config)?;
    let n = inst.clients().len();

    println!("instance_digest={}", digest(&inst));
    match mode {
        Mode::KClustering { k } => println!("mode={}\nk={k}", mode_name(args.mode)),
        Mode::Ufl => println!("mode=ufl\nf={:?}", inst.opening_cost().unwrap()),
    }
    println!("p={}", inst.p());
    println!("s={}", args.s);
    println!("epsilon={}", args.epsilon);
    println!("init={init_name}");
    println!("initial_cost={:?}", trace.initial_cost);
    println!("final_cost={:?}", trace.cost);
    println!("iterations={}", trace.steps.len());
    println!("termination={:?}", trace.termination);
    println!("evaluated={}", trace.evaluated);
    if let Some(b) = trace.iteration_bound(args.epsilon, n) {
        println!("iteration_bound={b:?}");
    }
    println!("solution={}", ids(&trace.solution));

    if args.oracle {
        let res = match mode {
            Mode::KClustering { k } => exact_k_clustering_with(&inst, &oracle, k, budget),
            Mode::Ufl => exact_ufl_with(&inst, &oracle, budget),
        };
        match res {
            Ok(best) => {
                println!("oracle_cost={:?}", best.cost);
                println!("oracle_solution={}", ids(&best.solution));
                let ratio = if best.cost > 0.0 {
                    trace.cost / best.cost
                } else if trace.cost == 0.0 {
                    1.0
                } else {
                    f64::INFINITY
                };
                println!("ratio={ratio:?}");
            }
            Err(e @ Error::BudgetExceeded { .. }) => {
                eprintln!("warning: oracle skipped: {e}");
                println!("oracle=skipped");
            }
            Err(e) => return Err(e.into()),
        }
    }
    if let Some(path) = &args.out {
        save_solution(path, &trace.solution)?;
    }
    if let Some(path) = &args.trace {
        std::fs::write(path, trace.to_text()).with_context(|| format!("writing {}", path.display()))?;
    }
    println!("elapsed_ms={}", start.elapsed().as_millis());
    Ok(Outcome::Pass)
}

fn mode_name(m: ModeArg) -> &'static str {
    match m {
        ModeArg::Kmed => "kmed",
        ModeArg::Kmeans => "kmeans",
        ModeArg::Ufl => "ufl",
    }
}
