use anyhow::{Context, Result};
use swapshop::analysis::{certify_ufl, delete_centers, detect_isolation};
use swapshop::instance::{load_instance, load_solution, Format};
use swapshop::DistanceOracle;

use crate::{digest, CertifyArgs, CheckArg, Outcome};

pub fn run(args: &CertifyArgs) -> Result<Outcome> {
    let mut inst = load_instance(&args.instance, Format::from_path(&args.instance))
        .with_context(|| format!("loading {}", args.instance.display()))?;
    if let Some(p) = args.p {
        inst = inst.with_p(p)?;
    }
    if let Some(f) = args.f {
        inst = inst.with_opening_cost(f)?;
    }
    let local = load_solution(&args.local).with_context(|| format!("loading {}", args.local.display()))?;
    let global =
        load_solution(&args.global).with_context(|| format!("loading {}", args.global.display()))?;
    let oracle = DistanceOracle::new(&inst);
    println!("instance_digest={}", digest(&inst));

    let wants = |c: CheckArg| args.check == c || args.check == CheckArg::All;
    let mut failures = Vec::new();
    if wants(CheckArg::Isolation) {
        let rep = detect_isolation(&inst, &oracle, &local, &global, args.epsilon)?;
        print!("{}", rep.to_text());
        let ok = rep.local_sides_disjoint() && rep.reassignments_hold();
        println!("check=isolation {}", verdict(ok));
        if !ok {
            failures.push("isolation");
        }
    }
    if wants(CheckArg::Deletion) {
        let res = delete_centers(&inst, &oracle, &local, &global, args.epsilon)?;
        print!("{}", res.to_text());
        let ok = res.verdict.is_pass();
        println!("check=deletion {}", verdict(ok));
        if !ok {
            failures.push("deletion");
        }
    }
    if wants(CheckArg::UflChain) {
        let rep = certify_ufl(&inst, &oracle, &local, &global, args.epsilon)?;
        print!("{}", rep.to_text());
        let ok = rep.passed();
        println!("check=ufl-chain {}", verdict(ok));
        if !ok {
            failures.push("ufl-chain");
        }
    }
    Ok(match failures.first() {
        None => Outcome::Pass,
        Some(first) => Outcome::Fail((*first).to_string()),
    })
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}
