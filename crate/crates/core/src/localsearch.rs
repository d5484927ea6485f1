//! Swap-neighborhood local search for k-clustering and uniform facility
//! location.
//!
//! A move replaces the current solution `S` by any `S'` with
//! `|S \ S'| + |S' \ S| <= s`, and is accepted when
//! `cost(S') <= (1 - eps/n) * cost(S)` with `n` the number of clients. Moves
//! are scanned in canonical order and the first qualifying one is taken, so
//! runs are reproducible whether or not evaluation is parallel.

use std::fmt::Write as _;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::instance::{Instance, Solution};
use crate::metric::{DistanceOracle, ServiceMatrix};

/// Exponent used by [`suggest_s`] outside the facility-location `p = 1` case.
pub const C_DEFAULT: u32 = 4;

/// Moves evaluated per parallel batch.
const BATCH: usize = 2048;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// At most `k` centers, no opening cost.
    KClustering { k: usize },
    /// Any number of centers, each charged the instance's opening cost.
    Ufl,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Init {
    /// The `k` lowest candidate ids, or the single lowest for facility location.
    LowestIds,
    SeededRandom(u64),
    Provided(Solution),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchConfig {
    pub mode: Mode,
    pub s: usize,
    pub epsilon: f64,
    pub init: Init,
    pub max_iterations: Option<usize>,
    /// Evaluate batches of moves on the rayon pool. Results do not change.
    pub parallel: bool,
}

impl SearchConfig {
    pub fn new(mode: Mode, s: usize, epsilon: f64) -> Self {
        SearchConfig {
            mode,
            s,
            epsilon,
            init: Init::LowestIds,
            max_iterations: None,
            parallel: false,
        }
    }

    pub fn with_init(mut self, init: Init) -> Self {
        self.init = init;
        self
    }

    pub fn with_max_iterations(mut self, cap: usize) -> Self {
        self.max_iterations = Some(cap);
        self
    }

    pub fn with_parallel(mut self, parallel: bool) -> Self {
        self.parallel = parallel;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Setting {
    Graph,
    Euclidean,
    Ufl,
}

/// Swap size suggested for a target accuracy `epsilon`: `ceil(1/eps^2)` for
/// facility location with `p = 1`, `ceil(1/eps^C_DEFAULT)` otherwise.
pub fn suggest_s(epsilon: f64, p: u32, setting: Setting) -> usize {
    let c = if setting == Setting::Ufl && p == 1 {
        2
    } else {
        C_DEFAULT
    };
    ((1.0 / epsilon.powi(c as i32)) - 1e-9).ceil().max(1.0) as usize
}

/// A move: drop `removed` from the solution, then add `added`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Swap {
    pub removed: Vec<usize>,
    pub added: Vec<usize>,
}

impl Swap {
    pub fn size(&self) -> usize {
        self.removed.len() + self.added.len()
    }

    pub fn apply(&self, s: &Solution) -> Result<Solution> {
        let mut ids: Vec<usize> = s
            .iter()
            .copied()
            .filter(|c| !self.removed.contains(c))
            .collect();
        ids.extend_from_slice(&self.added);
        Solution::new(ids)
    }
}

/// Enumerates every feasible `S'` within symmetric difference `s` of the
/// current set, in canonical order: by swap size, then removed set (lex),
/// then added set (lex).
#[derive(Debug, Clone)]
pub struct SwapEnumerator {
    members: Vec<usize>,
    outside: Vec<usize>,
    cap: Option<usize>,
    max_size: usize,
    removed_sets: Vec<Vec<usize>>,
    size: usize,
    removed_pos: usize,
    comb: Option<Vec<usize>>,
}

impl SwapEnumerator {
    /// `current` and `universe` must be sorted; `current` must be nonempty.
    /// `cap` bounds `|S'|` (k-clustering).
    pub fn new(current: &[usize], universe: &[usize], cap: Option<usize>, s: usize) -> Self {
        let members = current.to_vec();
        let outside: Vec<usize> = universe
            .iter()
            .copied()
            .filter(|u| members.binary_search(u).is_err())
            .collect();
        let mut removed_sets = Vec::new();
        let mut prefix = Vec::new();
        preorder(&members, 0, s, &mut prefix, &mut removed_sets);
        SwapEnumerator {
            members,
            outside,
            cap,
            max_size: s,
            removed_sets,
            size: 1,
            removed_pos: 0,
            comb: None,
        }
    }

    fn feasible(&self, removed: usize, added: usize) -> bool {
        let new_len = self.members.len() - removed + added;
        added <= self.outside.len() && new_len >= 1 && self.cap.is_none_or(|k| new_len <= k)
    }
}

fn preorder(
    items: &[usize],
    from: usize,
    max: usize,
    prefix: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    out.push(prefix.clone());
    if prefix.len() == max {
        return;
    }
    for i in from..items.len() {
        prefix.push(items[i]);
        preorder(items, i + 1, max, prefix, out);
        prefix.pop();
    }
}

/// Advances `comb` to the next lex combination of `0..n`; false when exhausted.
fn next_combination(comb: &mut [usize], n: usize) -> bool {
    let b = comb.len();
    for i in (0..b).rev() {
        if comb[i] < n - b + i {
            comb[i] += 1;
            for j in i + 1..b {
                comb[j] = comb[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

impl Iterator for SwapEnumerator {
    type Item = Swap;

    fn next(&mut self) -> Option<Swap> {
        loop {
            if self.size > self.max_size {
                return None;
            }
            if self.removed_pos >= self.removed_sets.len() {
                self.size += 1;
                self.removed_pos = 0;
                self.comb = None;
                continue;
            }
            let a = self.removed_sets[self.removed_pos].len();
            if a > self.size || !self.feasible(a, self.size - a) {
                self.removed_pos += 1;
                continue;
            }
            let b = self.size - a;
            let advanced = match self.comb.as_mut() {
                None => {
                    self.comb = Some((0..b).collect());
                    true
                }
                Some(c) => next_combination(c, self.outside.len()),
            };
            if !advanced {
                self.removed_pos += 1;
                self.comb = None;
                continue;
            }
            let comb = self.comb.as_ref().expect("set above");
            let swap = Swap {
                removed: self.removed_sets[self.removed_pos].clone(),
                added: comb.iter().map(|&i| self.outside[i]).collect(),
            };
            if b == 0 {
                // The empty combination has no successor.
                self.removed_pos += 1;
                self.comb = None;
            }
            return Some(swap);
        }
    }
}

/// Public form of the move stream for a solution over the instance candidates.
pub fn enumerate_swaps(
    s: &Solution,
    candidates: &[usize],
    mode: Mode,
    swap_size: usize,
) -> SwapEnumerator {
    let cap = match mode {
        Mode::KClustering { k } => Some(k),
        Mode::Ufl => None,
    };
    let mut universe = candidates.to_vec();
    universe.sort_unstable();
    universe.dedup();
    SwapEnumerator::new(s.centers(), &universe, cap, swap_size)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    LocalOptimum,
    IterationCap,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Step {
    pub swap: Swap,
    pub cost_before: f64,
    pub cost_after: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchTrace {
    pub initial: Solution,
    pub initial_cost: f64,
    pub steps: Vec<Step>,
    pub solution: Solution,
    pub cost: f64,
    pub termination: Termination,
    /// Moves whose cost was evaluated, over all scans.
    pub evaluated: u64,
}

impl SearchTrace {
    /// Whether every step decreased the cost by the factor `1 - eps/n`.
    pub fn decrease_holds(&self, epsilon: f64, clients: usize) -> bool {
        let factor = 1.0 - epsilon / clients as f64;
        self.steps
            .iter()
            .all(|st| st.cost_after <= factor * st.cost_before && st.cost_after < st.cost_before)
    }

    /// `ln(c0/cf) / -ln(1 - eps/n) + 1`, or `None` when the final cost is 0.
    pub fn iteration_bound(&self, epsilon: f64, clients: usize) -> Option<f64> {
        (self.cost > 0.0).then(|| {
            (self.initial_cost / self.cost).ln() / -(1.0 - epsilon / clients as f64).ln() + 1.0
        })
    }

    /// One line per step: `index removed added cost_before cost_after`, with
    /// id lists comma-separated and `-` for an empty list.
    pub fn to_text(&self) -> String {
        let ids = |v: &[usize]| {
            if v.is_empty() {
                "-".to_string()
            } else {
                v.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
            }
        };
        let mut out = String::from("# iter removed added cost_before cost_after\n");
        for (i, st) in self.steps.iter().enumerate() {
            writeln!(
                out,
                "{} {} {} {:?} {:?}",
                i + 1,
                ids(&st.swap.removed),
                ids(&st.swap.added),
                st.cost_before,
                st.cost_after
            )
            .unwrap();
        }
        out
    }
}

/// Current solution in candidate-index space with per-client center orders.
struct State<'a> {
    matrix: &'a ServiceMatrix,
    opening: f64,
    centers: Vec<usize>,
    /// For each client, the current centers sorted by service cost.
    order: Vec<Vec<u32>>,
    cost: f64,
}

impl<'a> State<'a> {
    fn new(matrix: &'a ServiceMatrix, opening: f64, centers: Vec<usize>) -> Self {
        let mut st = State {
            matrix,
            opening,
            centers,
            order: Vec::new(),
            cost: 0.0,
        };
        st.rebuild();
        st
    }

    fn rebuild(&mut self) {
        let m = self.matrix;
        self.order = (0..m.clients())
            .map(|i| {
                let row = m.row(i);
                let mut o: Vec<u32> = self.centers.iter().map(|&c| c as u32).collect();
                o.sort_by(|&a, &b| row[a as usize].total_cmp(&row[b as usize]).then(a.cmp(&b)));
                o
            })
            .collect();
        let service: f64 = (0..m.clients())
            .map(|i| m.get(i, self.order[i][0] as usize))
            .sum();
        self.cost = service + self.opening * self.centers.len() as f64;
    }

    /// Cost after `swap`, or `None` as soon as it provably exceeds `limit`.
    fn evaluate(&self, swap: &Swap, limit: f64) -> Option<f64> {
        let new_len = self.centers.len() - swap.removed.len() + swap.added.len();
        let opening = self.opening * new_len as f64;
        let mut service = 0.0;
        for (i, order) in self.order.iter().enumerate() {
            let row = self.matrix.row(i);
            let mut best = order
                .iter()
                .find(|&&c| !swap.removed.contains(&(c as usize)))
                .map_or(f64::INFINITY, |&c| row[c as usize]);
            for &a in &swap.added {
                if row[a] < best {
                    best = row[a];
                }
            }
            service += best;
            if service + opening > limit {
                return None;
            }
        }
        Some(service + opening)
    }

    fn apply(&mut self, swap: &Swap) {
        self.centers.retain(|c| !swap.removed.contains(c));
        self.centers.extend_from_slice(&swap.added);
        self.centers.sort_unstable();
        self.rebuild();
    }
}

/// Outcome of one scan of the neighborhood.
struct Scan {
    found: Option<(Swap, f64)>,
    evaluated: u64,
}

fn scan(state: &State, cap: Option<usize>, swap_size: usize, factor: f64, parallel: bool) -> Scan {
    let universe: Vec<usize> = (0..state.matrix.candidates().len()).collect();
    let limit = factor * state.cost;
    let qualifies = |v: f64| v <= limit && v < state.cost;
    let mut moves = SwapEnumerator::new(&state.centers, &universe, cap, swap_size);
    let mut evaluated = 0u64;
    if !parallel {
        for swap in moves {
            evaluated += 1;
            if let Some(v) = state.evaluate(&swap, limit) {
                if qualifies(v) {
                    return Scan {
                        found: Some((swap, v)),
                        evaluated,
                    };
                }
            }
        }
        return Scan {
            found: None,
            evaluated,
        };
    }
    loop {
        let batch: Vec<Swap> = moves.by_ref().take(BATCH).collect();
        if batch.is_empty() {
            return Scan {
                found: None,
                evaluated,
            };
        }
        let values: Vec<Option<f64>> = batch
            .par_iter()
            .map(|sw| state.evaluate(sw, limit).filter(|&v| qualifies(v)))
            .collect();
        if let Some(pos) = values.iter().position(Option::is_some) {
            evaluated += pos as u64 + 1;
            let v = values[pos].expect("position of a Some");
            return Scan {
                found: Some((batch[pos].clone(), v)),
                evaluated,
            };
        }
        evaluated += batch.len() as u64;
    }
}

fn to_indices(matrix: &ServiceMatrix, s: &Solution) -> Result<Vec<usize>> {
    s.iter()
        .map(|&c| {
            matrix.index_of(c).ok_or_else(|| {
                Error::InvalidSolution(format!("center {c} is not a candidate"))
            })
        })
        .collect()
}

fn to_ids(matrix: &ServiceMatrix, swap: &Swap) -> Swap {
    let ids = |v: &[usize]| v.iter().map(|&i| matrix.candidates()[i]).collect();
    Swap {
        removed: ids(&swap.removed),
        added: ids(&swap.added),
    }
}

fn opening_for(instance: &Instance, mode: Mode) -> Result<f64> {
    match mode {
        Mode::KClustering { .. } => Ok(0.0),
        Mode::Ufl => instance.opening_cost().ok_or_else(|| {
            Error::InvalidParameter("facility location needs an opening cost f".into())
        }),
    }
}

fn initial_solution(instance: &Instance, config: &SearchConfig) -> Result<Solution> {
    let cands = instance.candidates();
    let sol = match (&config.init, config.mode) {
        (Init::Provided(s), _) => s.clone(),
        (Init::LowestIds, Mode::KClustering { k }) => Solution::new(cands[..k].to_vec())?,
        (Init::LowestIds, Mode::Ufl) => Solution::new(vec![cands[0]])?,
        (Init::SeededRandom(seed), mode) => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let amount = match mode {
                Mode::KClustering { k } => k,
                Mode::Ufl => rng.random_range(1..=cands.len()),
            };
            let picked = sample(&mut rng, cands.len(), amount);
            Solution::new(picked.into_iter().map(|i| cands[i]).collect())?
        }
    };
    instance.check_solution(&sol)?;
    if let Mode::KClustering { k } = config.mode {
        if sol.len() > k {
            return Err(Error::InvalidSolution(format!(
                "initial solution has {} centers, k = {k}",
                sol.len()
            )));
        }
    }
    Ok(sol)
}

fn validate(instance: &Instance, config: &SearchConfig) -> Result<()> {
    if config.s == 0 {
        return Err(Error::InvalidParameter("swap size s must be at least 1".into()));
    }
    if !(config.epsilon > 0.0 && config.epsilon < 0.5) {
        return Err(Error::InvalidParameter(format!(
            "epsilon must lie in (0, 1/2), got {}",
            config.epsilon
        )));
    }
    if let Mode::KClustering { k } = config.mode {
        if k == 0 || k > instance.candidates().len() {
            return Err(Error::InvalidParameter(format!(
                "k = {k} is infeasible with {} candidates",
                instance.candidates().len()
            )));
        }
    }
    Ok(())
}

/// Runs local search from the configured start.
pub fn local_search(instance: &Instance, config: &SearchConfig) -> Result<SearchTrace> {
    let oracle = DistanceOracle::new(instance);
    local_search_with(instance, &oracle, config)
}

/// Same as [`local_search`] with a caller-provided distance oracle.
pub fn local_search_with(
    instance: &Instance,
    oracle: &DistanceOracle,
    config: &SearchConfig,
) -> Result<SearchTrace> {
    validate(instance, config)?;
    let opening = opening_for(instance, config.mode)?;
    let initial = initial_solution(instance, config)?;
    let matrix = ServiceMatrix::new(instance, oracle);
    let mut state = State::new(&matrix, opening, to_indices(&matrix, &initial)?);
    let cap = match config.mode {
        Mode::KClustering { k } => Some(k),
        Mode::Ufl => None,
    };
    let factor = 1.0 - config.epsilon / instance.clients().len() as f64;
    let initial_cost = state.cost;
    let mut steps = Vec::new();
    let mut evaluated = 0;
    let termination = loop {
        if config.max_iterations.is_some_and(|cap| steps.len() >= cap) {
            break Termination::IterationCap;
        }
        let res = scan(&state, cap, config.s, factor, config.parallel);
        evaluated += res.evaluated;
        let Some((swap, value)) = res.found else {
            break Termination::LocalOptimum;
        };
        let before = state.cost;
        state.apply(&swap);
        debug_assert_eq!(state.cost, value);
        steps.push(Step {
            swap: to_ids(&matrix, &swap),
            cost_before: before,
            cost_after: state.cost,
        });
    };
    let solution = Solution::new(state.centers.iter().map(|&i| matrix.candidates()[i]).collect())?;
    Ok(SearchTrace {
        initial,
        initial_cost,
        steps,
        solution,
        cost: state.cost,
        termination,
        evaluated,
    })
}

/// First move (canonical order) within `swap_size` that lowers the cost to at
/// most `(1 - epsilon/n) * cost(s)`, or `None` if `s` is locally optimal.
/// `epsilon` may be anywhere in `(0, 1]` here.
pub fn find_improvement(
    instance: &Instance,
    oracle: &DistanceOracle,
    s: &Solution,
    mode: Mode,
    swap_size: usize,
    epsilon: f64,
) -> Result<Option<(Swap, f64)>> {
    if !(epsilon > 0.0 && epsilon <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "epsilon must lie in (0, 1], got {epsilon}"
        )));
    }
    instance.check_solution(s)?;
    let opening = opening_for(instance, mode)?;
    let matrix = ServiceMatrix::new(instance, oracle);
    let state = State::new(&matrix, opening, to_indices(&matrix, s)?);
    let cap = match mode {
        Mode::KClustering { k } => Some(k),
        Mode::Ufl => None,
    };
    let factor = 1.0 - epsilon / instance.clients().len() as f64;
    let res = scan(&state, cap, swap_size, factor, false);
    Ok(res.found.map(|(sw, v)| (to_ids(&matrix, &sw), v)))
}

/// Cost of `s` under `mode`, computed exactly as the search does.
pub fn mode_cost(
    instance: &Instance,
    oracle: &DistanceOracle,
    s: &Solution,
    mode: Mode,
) -> Result<f64> {
    let opening = opening_for(instance, mode)?;
    let matrix = ServiceMatrix::new(instance, oracle);
    Ok(State::new(&matrix, opening, to_indices(&matrix, s)?).cost)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Edge, Graph};
    use crate::instance::{generate_grid, PointSet, Space, WeightModel};

    fn path3() -> Instance {
        let e = |u, v| Edge { u, v, weight: 1.0 };
        Instance::new(Space::Graph(Graph::new(3, vec![e(0, 1), e(1, 2)]).unwrap())).unwrap()
    }

    fn sets(it: SwapEnumerator, base: &[usize]) -> Vec<Vec<usize>> {
        let s = Solution::new(base.to_vec()).unwrap();
        it.map(|sw| sw.apply(&s).unwrap().centers().to_vec()).collect()
    }

    #[test]
    fn k_mode_single_center_moves() {
        let s = Solution::new(vec![0]).unwrap();
        let got = sets(
            enumerate_swaps(&s, &[0, 1, 2], Mode::KClustering { k: 1 }, 2),
            &[0],
        );
        assert_eq!(got, vec![vec![1], vec![2]]);
    }

    #[test]
    fn ufl_moves_never_empty_the_solution() {
        let s = Solution::new(vec![0]).unwrap();
        let got = sets(enumerate_swaps(&s, &[0, 1, 2], Mode::Ufl, 1), &[0]);
        assert_eq!(got, vec![vec![0, 1], vec![0, 2]]);
        let got = sets(enumerate_swaps(&s, &[0, 1, 2], Mode::Ufl, 2), &[0]);
        assert_eq!(
            got,
            vec![vec![0, 1], vec![0, 2], vec![0, 1, 2], vec![1], vec![2]]
        );
    }

    #[test]
    fn canonical_order_within_a_size() {
        let s = Solution::new(vec![1, 3]).unwrap();
        let moves: Vec<Swap> = enumerate_swaps(&s, &[0, 1, 2, 3], Mode::Ufl, 2).collect();
        let keys: Vec<(usize, Vec<usize>, Vec<usize>)> = moves
            .iter()
            .map(|m| (m.size(), m.removed.clone(), m.added.clone()))
            .collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn suggested_swap_sizes() {
        assert_eq!(suggest_s(0.5, 1, Setting::Ufl), 4);
        assert_eq!(suggest_s(0.5, 2, Setting::Graph), 16);
        assert_eq!(suggest_s(0.25, 1, Setting::Ufl), 16);
        assert_eq!(suggest_s(0.1, 1, Setting::Ufl), 100);
    }

    #[test]
    fn path_k_median() {
        let inst = path3();
        let start = Init::Provided(Solution::new(vec![0]).unwrap());
        // A size-1 move cannot keep exactly one center.
        let cfg = SearchConfig::new(Mode::KClustering { k: 1 }, 1, 0.01).with_init(start.clone());
        assert_eq!(local_search(&inst, &cfg).unwrap().solution.centers(), &[0]);
        let cfg = SearchConfig::new(Mode::KClustering { k: 1 }, 2, 0.01).with_init(start);
        let t = local_search(&inst, &cfg).unwrap();
        assert_eq!(t.solution.centers(), &[1]);
        assert_eq!(t.cost, 2.0);
        assert_eq!(t.termination, Termination::LocalOptimum);
    }

    #[test]
    fn euclidean_k_means() {
        let ps = PointSet::new(2, vec![0.0, 0.0, 1.0, 0.0, 10.0, 0.0]).unwrap();
        let inst = Instance::new(Space::Euclidean(ps)).unwrap().with_p(2).unwrap();
        let t = local_search(&inst, &SearchConfig::new(Mode::KClustering { k: 2 }, 2, 0.01)).unwrap();
        assert_eq!(t.cost, 1.0);
        assert!(t.solution.contains(2));
    }

    #[test]
    fn path_ufl() {
        let inst = path3().with_opening_cost(10.0).unwrap();
        let t = local_search(&inst, &SearchConfig::new(Mode::Ufl, 2, 0.01)).unwrap();
        assert_eq!(t.solution.centers(), &[1]);
        assert_eq!(t.cost, 12.0);
        assert!(local_search(&path3(), &SearchConfig::new(Mode::Ufl, 2, 0.01)).is_err());
    }

    #[test]
    fn parallel_scan_matches_sequential() {
        let inst = generate_grid(6, 6, WeightModel::Random { seed: 5 }).unwrap();
        let cfg = SearchConfig::new(Mode::KClustering { k: 4 }, 2, 0.01).with_init(Init::SeededRandom(9));
        let a = local_search(&inst, &cfg).unwrap();
        let b = local_search(&inst, &cfg.clone().with_parallel(true)).unwrap();
        assert_eq!(a, b);
        assert!(a.decrease_holds(0.01, 36));
    }

    #[test]
    fn bad_configs() {
        let inst = path3();
        assert!(local_search(&inst, &SearchConfig::new(Mode::KClustering { k: 4 }, 1, 0.1)).is_err());
        assert!(local_search(&inst, &SearchConfig::new(Mode::KClustering { k: 1 }, 0, 0.1)).is_err());
        assert!(local_search(&inst, &SearchConfig::new(Mode::KClustering { k: 1 }, 1, 0.5)).is_err());
    }

    #[test]
    fn iteration_cap() {
        let inst = generate_grid(5, 5, WeightModel::Unit).unwrap();
        let cfg = SearchConfig::new(Mode::KClustering { k: 3 }, 2, 0.01).with_max_iterations(1);
        let t = local_search(&inst, &cfg).unwrap();
        assert_eq!(t.steps.len(), 1);
        assert_eq!(t.termination, Termination::IterationCap);
    }
}
