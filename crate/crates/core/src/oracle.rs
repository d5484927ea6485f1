//! Exhaustive solvers used as ground truth on small instances.

use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::instance::{Instance, Solution};
use crate::metric::{DistanceOracle, ServiceMatrix};

pub const DEFAULT_BUDGET: u128 = 10_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    /// Lex-least among the optimal center sets.
    pub solution: Solution,
    pub cost: f64,
    /// Center sets whose cost was computed.
    pub enumerated: u64,
    pub elapsed: Duration,
}

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1u128, |acc, i| {
        acc.saturating_mul(n - i) / (i + 1)
    })
}

/// Number of nonempty center sets of size at most `k` out of `m`.
pub fn k_subsets(m: usize, k: usize) -> u128 {
    (1..=k.min(m) as u128).fold(0u128, |acc, j| acc.saturating_add(binomial(m as u128, j)))
}

struct Search<'a> {
    matrix: &'a ServiceMatrix,
    max_size: usize,
    opening: f64,
    prune_on_opening: bool,
    /// `mins[d]` holds per-client service costs for the current set of size `d`.
    mins: Vec<Vec<f64>>,
    stack: Vec<usize>,
    best: Option<(Vec<usize>, f64)>,
    enumerated: u64,
}

impl Search<'_> {
    fn run(&mut self) {
        self.descend(0);
    }

    fn descend(&mut self, from: usize) {
        let m = self.matrix.candidates().len();
        let depth = self.stack.len();
        for c in from..m {
            let opening = self.opening * (depth + 1) as f64;
            if self.prune_on_opening {
                if let Some((_, best)) = &self.best {
                    if opening >= *best {
                        // Every later set at this depth or below opens at least as much.
                        return;
                    }
                }
            }
            let (lower, upper) = self.mins.split_at_mut(depth + 1);
            let prev = &lower[depth];
            let cur = &mut upper[0];
            let mut service = 0.0;
            for (i, slot) in cur.iter_mut().enumerate() {
                let v = self.matrix.get(i, c);
                *slot = if depth == 0 || v < prev[i] { v } else { prev[i] };
                service += *slot;
            }
            let total = service + opening;
            self.stack.push(c);
            self.enumerated += 1;
            if self.best.as_ref().is_none_or(|(_, b)| total < *b) {
                self.best = Some((self.stack.clone(), total));
            }
            if depth + 1 < self.max_size {
                self.descend(c + 1);
            }
            self.stack.pop();
        }
    }
}

fn solve(
    instance: &Instance,
    oracle: &DistanceOracle,
    max_size: usize,
    opening: f64,
    prune: bool,
) -> Result<OracleResult> {
    let start = Instant::now();
    let matrix = ServiceMatrix::new(instance, oracle);
    let mut search = Search {
        matrix: &matrix,
        max_size,
        opening,
        prune_on_opening: prune,
        mins: vec![vec![0.0; matrix.clients()]; max_size + 1],
        stack: Vec::with_capacity(max_size),
        best: None,
        enumerated: 0,
    };
    search.run();
    let (set, cost) = search.best.expect("at least one candidate");
    let solution = Solution::new(set.into_iter().map(|i| matrix.candidates()[i]).collect())?;
    Ok(OracleResult {
        solution,
        cost,
        enumerated: search.enumerated,
        elapsed: start.elapsed(),
    })
}

/// Best set of at most `k` centers, ignoring any opening cost.
pub fn exact_k_clustering(instance: &Instance, k: usize) -> Result<OracleResult> {
    exact_k_clustering_with(instance, &DistanceOracle::new(instance), k, DEFAULT_BUDGET)
}

pub fn exact_k_clustering_with(
    instance: &Instance,
    oracle: &DistanceOracle,
    k: usize,
    budget: u128,
) -> Result<OracleResult> {
    let m = instance.candidates().len();
    if k == 0 || k > m {
        return Err(Error::InvalidParameter(format!(
            "k = {k} is infeasible with {m} candidates"
        )));
    }
    let needed = k_subsets(m, k);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    solve(instance, oracle, k, 0.0, false)
}

/// Best nonempty set of centers including the opening cost.
pub fn exact_ufl(instance: &Instance) -> Result<OracleResult> {
    exact_ufl_with(instance, &DistanceOracle::new(instance), DEFAULT_BUDGET)
}

pub fn exact_ufl_with(
    instance: &Instance,
    oracle: &DistanceOracle,
    budget: u128,
) -> Result<OracleResult> {
    let f = instance.opening_cost().ok_or_else(|| {
        Error::InvalidParameter("facility location needs an opening cost f".into())
    })?;
    let m = instance.candidates().len();
    let needed = if m >= 127 {
        u128::MAX
    } else {
        (1u128 << m) - 1
    };
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    solve(instance, oracle, m, f, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Edge, Graph};
    use crate::instance::{generate_grid, Space, WeightModel};

    fn path3() -> Instance {
        let e = |u, v| Edge { u, v, weight: 1.0 };
        Instance::new(Space::Graph(Graph::new(3, vec![e(0, 1), e(1, 2)]).unwrap())).unwrap()
    }

    #[test]
    fn path_k_median() {
        let r = exact_k_clustering(&path3(), 1).unwrap();
        assert_eq!((r.solution.centers(), r.cost), (&[1][..], 2.0));
        let r = exact_k_clustering(&path3(), 2).unwrap();
        assert_eq!((r.solution.centers(), r.cost), (&[0, 1][..], 1.0));
        assert_eq!(r.enumerated, 6);
    }

    #[test]
    fn small_grid_k_means() {
        let inst = generate_grid(2, 2, WeightModel::Unit).unwrap().with_p(2).unwrap();
        let r = exact_k_clustering(&inst, 1).unwrap();
        assert_eq!((r.solution.centers(), r.cost), (&[0][..], 6.0));
    }

    #[test]
    fn path_ufl() {
        let at = |f: f64| exact_ufl(&path3().with_opening_cost(f).unwrap()).unwrap();
        let r = at(10.0);
        assert_eq!((r.solution.centers(), r.cost), (&[1][..], 12.0));
        let r = at(0.1);
        assert_eq!(r.solution.centers(), &[0, 1, 2]);
        assert!((r.cost - 0.3).abs() < 1e-12);
        // f = 1: {1} costs 3, two centers cost 3 as well; {0,1} is lex-least of those.
        let r = at(1.0);
        assert_eq!((r.solution.centers(), r.cost), (&[0, 1][..], 3.0));
    }

    #[test]
    fn budget_is_enforced() {
        let inst = generate_grid(6, 6, WeightModel::Unit).unwrap();
        let err = exact_k_clustering_with(&inst, &DistanceOracle::new(&inst), 5, 1000).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { needed, .. } if needed == k_subsets(36, 5)));
        assert!(exact_ufl(&inst.with_opening_cost(1.0).unwrap()).is_err());
    }

    #[test]
    fn subset_counts() {
        assert_eq!(k_subsets(20, 10), 616_665);
        assert_eq!(k_subsets(3, 5), 7);
    }
}
