use std::collections::HashSet;

use crate::error::{Error, Result};

/// Groups of part indices produced by [`balanced_coarsen`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coarsening {
    pub groups: Vec<Vec<usize>>,
    /// `ceil(2 / eps^5)`, the allowed number of parts per group.
    pub max_group: usize,
}

impl Coarsening {
    pub fn largest_group(&self) -> usize {
        self.groups.iter().map(Vec::len).max().unwrap_or(0)
    }
}

/// Groups the parts of a partition so that every group meets `A` at least
/// as often as `B`. Parts must hold between `1/(2 eps^2)` and `1/eps^2`
/// elements and `|A| >= |B|`.
pub fn balanced_coarsen(
    parts: &[Vec<usize>],
    a: &[usize],
    b: &[usize],
    epsilon: f64,
) -> Result<Coarsening> {
    if !(epsilon > 0.0 && epsilon < 0.5) {
        return Err(Error::InvalidParameter(format!(
            "epsilon must lie in (0, 1/2), got {epsilon}"
        )));
    }
    let a: HashSet<usize> = a.iter().copied().collect();
    let b: HashSet<usize> = b.iter().copied().collect();
    if a.len() < b.len() {
        return Err(Error::CoarseningFailed(format!("|A| = {} < |B| = {}", a.len(), b.len())));
    }
    let lo = 1.0 / (2.0 * epsilon * epsilon);
    let hi = 1.0 / (epsilon * epsilon);
    for (i, part) in parts.iter().enumerate() {
        let n = part.len() as f64;
        if n < lo - 1e-9 || n > hi + 1e-9 {
            return Err(Error::CoarseningFailed(format!(
                "part {i} has {} elements, outside [{lo:.3}, {hi:.3}]",
                part.len()
            )));
        }
    }
    let max_group = (2.0 / epsilon.powi(5) - 1e-9).ceil() as usize;

    let surplus: Vec<i64> = parts
        .iter()
        .map(|part| {
            part.iter().filter(|x| a.contains(x)).count() as i64
                - part.iter().filter(|x| b.contains(x)).count() as i64
        })
        .collect();
    let mut order: Vec<usize> = (0..parts.len()).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(surplus[i]), i));

    // Positive parts, best first; deficient parts, worst first.
    let mut donors: std::collections::VecDeque<usize> =
        order.iter().copied().filter(|&i| surplus[i] > 0).collect();
    let mut groups: Vec<(Vec<usize>, i64)> = Vec::new();
    for &i in order.iter().rev().filter(|&&i| surplus[i] < 0) {
        let mut group = (vec![i], surplus[i]);
        while group.1 < 0 {
            let Some(d) = donors.pop_front() else { break };
            group.0.push(d);
            group.1 += surplus[d];
        }
        groups.push(group);
    }
    for i in donors.into_iter().chain(order.iter().copied().filter(|&i| surplus[i] == 0)) {
        groups.push((vec![i], surplus[i]));
    }

    // Donors ran out: fold each deficient group into a group with surplus.
    while let Some(neg) = groups.iter().position(|g| g.1 < 0) {
        let (members, s) = groups.swap_remove(neg);
        let Some(pos) = groups
            .iter()
            .enumerate()
            .filter(|(_, g)| g.1 > 0)
            .max_by_key(|&(j, g)| (g.1, std::cmp::Reverse(j)))
            .map(|(j, _)| j)
        else {
            return Err(Error::CoarseningFailed("no group left with a surplus".into()));
        };
        groups[pos].0.extend(members);
        groups[pos].1 += s;
    }

    let mut groups: Vec<Vec<usize>> = groups
        .into_iter()
        .map(|(mut g, _)| {
            g.sort_unstable();
            g
        })
        .collect();
    groups.sort();
    let out = Coarsening { groups, max_group };
    if out.largest_group() > max_group {
        return Err(Error::CoarseningFailed(format!(
            "a group needs {} parts, limit {max_group}",
            out.largest_group()
        )));
    }
    Ok(out)
}
