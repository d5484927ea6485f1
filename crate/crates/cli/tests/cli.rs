use std::path::Path;
use std::process::{Command, Output};

fn swapshop(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_swapshop"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn value(out: &str, key: &str) -> String {
    out.lines()
        .find_map(|l| l.strip_prefix(&format!("{key}=")))
        .unwrap_or_else(|| panic!("no {key}= in\n{out}"))
        .to_string()
}

fn write_path3(dir: &Path) {
    std::fs::write(dir.join("path3.txt"), "0 1 1\n1 2 1\n").unwrap();
}

#[test]
fn kmed_on_path_matches_oracle() {
    let dir = tempfile::tempdir().unwrap();
    write_path3(dir.path());
    let o = swapshop(
        &["solve", "--instance", "path3.txt", "--mode", "kmed", "--k", "1", "--s", "2", "--epsilon", "0.01", "--oracle"],
        dir.path(),
    );
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(value(&out, "ratio"), "1.0");
    assert_eq!(value(&out, "solution"), "1");
}

#[test]
fn ufl_on_path_costs_twelve() {
    let dir = tempfile::tempdir().unwrap();
    write_path3(dir.path());
    let o = swapshop(
        &["solve", "--instance", "path3.txt", "--mode", "ufl", "--f", "10", "--s", "2", "--epsilon", "0.01", "--out", "best.sol", "--trace", "trace.txt"],
        dir.path(),
    );
    assert!(o.status.success());
    assert_eq!(value(&stdout(&o), "final_cost"), "12.0");
    let sol = std::fs::read_to_string(dir.path().join("best.sol")).unwrap();
    assert_eq!(sol.trim(), "1");
    assert!(dir.path().join("trace.txt").exists());
}

#[test]
fn reports_are_stable_apart_from_timing() {
    let dir = tempfile::tempdir().unwrap();
    swapshop(&["generate", "--family", "grid", "--params", "5", "5", "--out", "g.txt"], dir.path());
    let run = || {
        let o = swapshop(
            &["solve", "--instance", "g.txt", "--mode", "kmeans", "--k", "3", "--s", "2", "--epsilon", "0.01", "--seed", "4"],
            dir.path(),
        );
        assert!(o.status.success());
        stdout(&o)
            .lines()
            .filter(|l| !l.starts_with("elapsed_ms="))
            .collect::<Vec<_>>()
            .join("\n")
    };
    let first = run();
    assert_eq!(first, run());
    assert_eq!(value(&first, "p"), "2");
    assert_eq!(value(&first, "init"), "random:4");
}

#[test]
fn tightness_planted_ratio() {
    let dir = tempfile::tempdir().unwrap();
    let g = swapshop(&["generate", "--family", "tightness", "--params", "m=5", "--out", "t.txt"], dir.path());
    assert!(g.status.success());
    for f in ["t.txt", "t.planted.sol", "t.optimum.sol"] {
        assert!(dir.path().join(f).exists(), "{f} missing");
    }
    let o = swapshop(
        &["solve", "--instance", "t.txt", "--mode", "kmed", "--s", "2", "--epsilon", "0.01", "--init", "t.planted.sol", "--oracle"],
        dir.path(),
    );
    assert!(o.status.success());
    let ratio: f64 = value(&stdout(&o), "ratio").parse().unwrap();
    assert!(ratio >= 2.5, "ratio {ratio}");
}

#[test]
fn generate_grid_and_points() {
    let dir = tempfile::tempdir().unwrap();
    let o = swapshop(&["generate", "--family", "grid", "--params", "4", "4", "--out", "g.txt"], dir.path());
    assert!(o.status.success());
    let text = std::fs::read_to_string(dir.path().join("g.txt")).unwrap();
    assert_eq!(text.lines().filter(|l| !l.contains('=') && !l.starts_with('#')).count(), 24);
    assert_eq!(value(&stdout(&o), "vertices"), "16");

    let o = swapshop(
        &["generate", "--family", "random-euclid", "--params", "n=50", "d=2", "--seed", "7", "--out", "r.csv"],
        dir.path(),
    );
    assert!(o.status.success());
    let text = std::fs::read_to_string(dir.path().join("r.csv")).unwrap();
    assert_eq!(text.lines().filter(|l| l.contains(',')).count(), 50);
    let again = swapshop(
        &["generate", "--family", "random-euclid", "--params", "n=50", "d=2", "--seed", "7", "--out", "s.csv"],
        dir.path(),
    );
    assert!(again.status.success());
    assert_eq!(text, std::fs::read_to_string(dir.path().join("s.csv")).unwrap());
}

#[test]
fn certify_checks() {
    let dir = tempfile::tempdir().unwrap();
    swapshop(&["generate", "--family", "grid", "--params", "4", "4", "--out", "g.txt"], dir.path());
    std::fs::write(dir.path().join("l.sol"), "5\n10\n").unwrap();
    let o = swapshop(
        &["certify", "--instance", "g.txt", "--local", "l.sol", "--global", "l.sol", "--epsilon", "0.4", "--check", "ufl-chain", "--f", "3"],
        dir.path(),
    );
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("certify=PASS"));

    // L splits the grid left/right, G top/bottom: nothing is isolated.
    std::fs::write(dir.path().join("a.sol"), "4\n7\n").unwrap();
    std::fs::write(dir.path().join("b.sol"), "1\n13\n").unwrap();
    let o = swapshop(
        &["certify", "--instance", "g.txt", "--local", "a.sol", "--global", "b.sol", "--epsilon", "0.3", "--check", "isolation"],
        dir.path(),
    );
    assert!(o.status.success());
    assert_eq!(value(&stdout(&o), "k_bar"), "2");

    let o = swapshop(
        &["certify", "--instance", "g.txt", "--local", "a.sol", "--global", "b.sol", "--epsilon", "0.3", "--check", "deletion"],
        dir.path(),
    );
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("check=deletion PASS"));
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let o = swapshop(&["solve", "--instance", "missing.txt", "--mode", "kmed", "--k", "1", "--s", "2", "--epsilon", "0.1"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    let o = swapshop(&["solve", "--mode", "kmed"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    write_path3(dir.path());
    let o = swapshop(&["solve", "--instance", "path3.txt", "--mode", "kmed", "--s", "2", "--epsilon", "0.1"], dir.path());
    assert_eq!(o.status.code(), Some(2), "k is required");
    let o = swapshop(&["generate", "--family", "grid", "--params", "w=0", "h=3", "--out", "x.txt"], dir.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn oracle_budget_is_a_warning() {
    let dir = tempfile::tempdir().unwrap();
    swapshop(&["generate", "--family", "grid", "--params", "4", "4", "--out", "g.txt"], dir.path());
    let o = Command::new(env!("CARGO_BIN_EXE_swapshop"))
        .args(["solve", "--instance", "g.txt", "--mode", "kmed", "--k", "3", "--s", "2", "--epsilon", "0.1", "--oracle"])
        .env("SWAPSHOP_BUDGET", "10")
        .current_dir(dir.path())
        .output()
        .unwrap();
    assert!(o.status.success());
    assert_eq!(value(&stdout(&o), "oracle"), "skipped");
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
}
