use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use swapshop::instance::{
    generate_grid, generate_random_euclidean, generate_tightness, save_instance, save_solution,
    Format, WeightModel,
};

use crate::{Family, GenerateArgs, Outcome};

/// Positional values are matched to `names` in order; `key=value` pairs by name.
fn parse_params(raw: &[String], names: &[&str]) -> Result<HashMap<String, String>> {
    let mut out = HashMap::new();
    let mut next = 0;
    for item in raw {
        let (key, value) = match item.split_once('=') {
            Some((k, v)) => (k.trim().to_string(), v.trim().to_string()),
            None => {
                let Some(name) = names.get(next) else {
                    bail!("too many positional parameters at {item:?}");
                };
                next += 1;
                (name.to_string(), item.clone())
            }
        };
        if !names.contains(&key.as_str()) {
            bail!("unknown parameter {key:?}, expected one of {}", names.join(", "));
        }
        out.insert(key, value);
    }
    Ok(out)
}

fn get<T: FromStr>(params: &HashMap<String, String>, key: &str) -> Result<Option<T>> {
    params
        .get(key)
        .map(|v| v.parse::<T>().map_err(|_| anyhow!("bad value for {key}: {v:?}")))
        .transpose()
}

fn need<T: FromStr>(params: &HashMap<String, String>, key: &str) -> Result<T> {
    get(params, key)?.ok_or_else(|| anyhow!("missing parameter {key}"))
}

fn sibling(out: &Path, suffix: &str) -> PathBuf {
    let stem = out.file_stem().and_then(|s| s.to_str()).unwrap_or("instance");
    out.with_file_name(format!("{stem}.{suffix}"))
}

pub fn run(args: &GenerateArgs) -> Result<Outcome> {
    match args.family {
        Family::Grid => {
            let p = parse_params(&args.params, &["w", "h", "weights"])?;
            let weights = match p.get("weights").map(String::as_str) {
                None | Some("unit") => WeightModel::Unit,
                Some("random") => WeightModel::Random { seed: args.seed },
                Some(other) => bail!("weights must be unit or random, got {other:?}"),
            };
            let inst = generate_grid(need(&p, "w")?, need(&p, "h")?, weights)?;
            save_instance(&args.out, &inst)?;
            let g = inst.graph()?;
            println!("vertices={}", g.vertex_count());
            println!("edges={}", g.edge_count());
        }
        Family::RandomEuclid => {
            let p = parse_params(&args.params, &["n", "d"])?;
            if Format::from_path(&args.out) != Format::PointsCsv {
                bail!("point sets are written as CSV; give --out a .csv path");
            }
            let inst = generate_random_euclidean(need(&p, "n")?, need(&p, "d")?, args.seed)?;
            save_instance(&args.out, &inst)?;
            println!("points={}", inst.element_count());
        }
        Family::Tightness => {
            let p = parse_params(&args.params, &["m", "eps"])?;
            let eps = get(&p, "eps")?.unwrap_or(0.5);
            let t = generate_tightness(need(&p, "m")?, eps)?;
            save_instance(&args.out, &t.instance)?;
            let planted = sibling(&args.out, "planted.sol");
            let optimum = sibling(&args.out, "optimum.sol");
            save_solution(&planted, &t.planted)
                .with_context(|| format!("writing {}", planted.display()))?;
            save_solution(&optimum, &t.optimum)
                .with_context(|| format!("writing {}", optimum.display()))?;
            println!("vertices={}", t.instance.element_count());
            println!("swap_size={}", t.swap_size);
            println!("planted={}", planted.display());
            println!("optimum={}", optimum.display());
        }
    }
    println!("out={}", args.out.display());
    Ok(Outcome::Pass)
}
