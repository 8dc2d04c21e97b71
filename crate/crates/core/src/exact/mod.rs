//! Optimal solvers.
//!
//! Both solvers search over states `(order, progress)` where `progress` is the
//! number of meetings already supported. After every crossing the progress is
//! pushed as far as the new order allows; crossings that do not advance it are
//! still explored since some optimal solutions need them.

mod bfs;
mod iddfs;
pub mod rank;

use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::interval::order_vertices;
use crate::model::{CharId, Meeting, Permutation, Solution, StorylineInstance};

pub use bfs::{solve_bfs, solve_bfs_with_budget, DEFAULT_STATE_BUDGET};
pub use iddfs::{solve_iddfs, solve_iddfs_with, IddfsOptions};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolverStats {
    /// Crossings in the returned solution.
    pub beta: usize,
    pub nodes_expanded: u64,
    /// Sum of meeting sizes.
    pub mu: usize,
    pub wall_time_ms: f64,
}

impl SolverStats {
    pub(crate) fn new(beta: usize, nodes_expanded: u64, inst: &StorylineInstance, elapsed: Duration) -> Self {
        SolverStats {
            beta,
            nodes_expanded,
            mu: inst.total_size(),
            wall_time_ms: elapsed.as_secs_f64() * 1e3,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Solved {
    pub solution: Solution,
    pub stats: SolverStats,
}

/// Largest `l2 >= l` such that meetings `l+1..=l2` (1-based) are all supported by `pi`.
pub fn fit_prefix(pi: &Permutation, inst: &StorylineInstance, l: usize) -> usize {
    assert!(l <= inst.n());
    reach_table(pi.as_slice(), &inst.meetings)[l] as usize
}

/// `table[l]` = fit prefix from progress `l`: per-meeting fit flags, then
/// forward pointers filled by one backward scan.
pub(crate) fn reach_table(order: &[CharId], meetings: &[Meeting]) -> Vec<u16> {
    let n = meetings.len();
    let mut pos = vec![0usize; order.len() + 1];
    for (p, &id) in order.iter().enumerate() {
        pos[id as usize] = p;
    }
    let fits = |m: &Meeting| {
        let (mut lo, mut hi) = (usize::MAX, 0);
        for &id in m.members() {
            let p = pos[id as usize];
            lo = lo.min(p);
            hi = hi.max(p);
        }
        hi - lo + 1 == m.len()
    };
    let mut table = vec![0u16; n + 1];
    table[n] = n as u16;
    for i in (0..n).rev() {
        table[i] = if fits(&meetings[i]) { table[i + 1] } else { i as u16 };
    }
    table
}

/// `bound[l]` = fewest crossing-free runs covering meetings `l+1..=n`.
///
/// A state at progress `l < n` whose order does not fit meeting `l+1` needs at
/// least `bound[l]` more crossings: each run after it needs its own order.
pub(crate) fn segment_bounds(inst: &StorylineInstance) -> Vec<usize> {
    let n = inst.n();
    let vertices: Vec<CharId> = (1..=inst.k as CharId).collect();
    let free = |from: usize, to: usize| {
        let edges: Vec<&[CharId]> = inst.meetings[from..to].iter().map(|m| m.members()).collect();
        order_vertices(&vertices, &edges).is_some()
    };
    let mut reach = vec![n; n];
    let mut j = 0;
    for (l, r) in reach.iter_mut().enumerate() {
        j = j.max(l + 1);
        while j < n && free(l, j + 1) {
            j += 1;
        }
        *r = j;
    }
    let mut bound = vec![0; n + 1];
    for l in (0..n).rev() {
        bound[l] = 1 + bound[reach[l]];
    }
    bound
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fixture() -> StorylineInstance {
        StorylineInstance::from_lists(
            8,
            &[&[6, 3], &[7, 2], &[1, 5], &[5, 6], &[6, 3], &[3, 4], &[4, 8], &[8, 7]],
        )
        .unwrap()
    }

    #[test]
    fn prefix_examples() {
        let inst = fixture();
        let sigma = Permutation::new(vec![1, 5, 6, 3, 4, 8, 7, 2]).unwrap();
        assert_eq!(fit_prefix(&sigma, &inst, 0), 8);
        assert_eq!(fit_prefix(&Permutation::identity(8), &inst, 0), 0);
        assert_eq!(fit_prefix(&Permutation::identity(8), &inst, 3), 4);
        assert_eq!(fit_prefix(&Permutation::identity(8), &inst, 4), 4);
        assert_eq!(fit_prefix(&sigma, &inst, 8), 8);
    }

    #[test]
    fn segments() {
        let inst = StorylineInstance::from_lists(3, &[&[1, 2], &[2, 3], &[1, 3], &[1, 2]]).unwrap();
        assert_eq!(segment_bounds(&inst), vec![2, 2, 1, 1, 0]);
    }
}
