use std::sync::atomic::{AtomicU64, Ordering};
use std::time::Instant;

use rayon::prelude::*;

use super::rank::{factorial, Ranker, MAX_RANK_K};
use super::{segment_bounds, Solved, SolverStats};
use crate::error::{Error, Result};
use crate::fitcheck::FitTracker;
use crate::model::{enumerate_block_crossings, BlockCrossing, Meeting, Permutation, Solution, StorylineInstance};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IddfsOptions {
    /// Largest depth bound to try.
    pub budget: Option<usize>,
    /// Prune with the crossing-free run count of the remaining meetings.
    pub run_bound: bool,
    /// Refuse free-start search above this many start permutations.
    pub max_starts: u128,
}

impl Default for IddfsOptions {
    fn default() -> Self {
        IddfsOptions { budget: None, run_bound: true, max_starts: factorial(10) }
    }
}

/// Minimum-crossing solution by iterative deepening over all starts (or one).
///
/// Among optimal solutions the first in (start, crossing sequence)
/// lexicographic order is returned.
pub fn solve_iddfs(inst: &StorylineInstance, fixed_start: Option<&Permutation>, budget: Option<usize>) -> Result<Solved> {
    solve_iddfs_with(inst, fixed_start, &IddfsOptions { budget, ..IddfsOptions::default() })
}

pub fn solve_iddfs_with(inst: &StorylineInstance, fixed_start: Option<&Permutation>, opts: &IddfsOptions) -> Result<Solved> {
    let timer = Instant::now();
    let k = inst.k;
    let n = inst.n();
    if let Some(p) = fixed_start {
        if p.len() != k {
            return Err(Error::InvalidPermutation(format!("start has length {}, k = {k}", p.len())));
        }
    }
    if n == 0 {
        let start = fixed_start.cloned().unwrap_or_else(|| Permutation::identity(k));
        return Ok(Solved { solution: Solution::crossing_free(start, 0), stats: SolverStats::new(0, 0, inst, timer.elapsed()) });
    }
    if fixed_start.is_none() && (k > MAX_RANK_K || factorial(k) > opts.max_starts) {
        return Err(Error::StateLimit { states: factorial(k), limit: opts.max_starts });
    }
    let crossings = enumerate_block_crossings(k)?;
    let bound = if opts.run_bound {
        segment_bounds(inst)
    } else {
        let mut b = vec![1; n + 1];
        b[n] = 0;
        b
    };
    let search = Search { meetings: &inst.meetings, crossings: &crossings, bound: &bound, nodes: AtomicU64::new(0) };

    let starts: Vec<Permutation> = match fixed_start {
        Some(p) => vec![p.clone()],
        None => {
            let ranker = Ranker::new(k);
            (0..ranker.count()).map(|r| Permutation::from_vec_unchecked(ranker.unrank(r))).collect()
        }
    };
    // With a free start, crossings before the first meeting are never needed:
    // the order they produce could have been the start instead.
    let roots: Vec<(usize, FitTracker, usize)> = starts
        .iter()
        .enumerate()
        .filter_map(|(i, p)| {
            let mut t = FitTracker::new(p);
            let l = t.advance(&inst.meetings, 0);
            (fixed_start.is_some() || l > 0).then_some((i, t, l))
        })
        .collect();

    let mut depth = 0;
    loop {
        if opts.budget.is_some_and(|b| depth > b) {
            return Err(Error::BudgetExhausted { budget: opts.budget.unwrap() });
        }
        let found = roots.par_iter().find_map_first(|(i, root, l)| {
            search.nodes.fetch_add(1, Ordering::Relaxed);
            if *l == n {
                return Some((*i, Vec::new()));
            }
            if depth < bound[*l] {
                return None;
            }
            let mut stack = vec![root.clone(); depth + 1];
            let mut path = Vec::with_capacity(depth);
            search.dfs(&mut stack, 0, *l, depth, None, &mut path).then_some((*i, path))
        });
        if let Some((i, path)) = found {
            let mut blocks = vec![Vec::new(); n];
            for (l, bc) in path {
                blocks[l].push(bc);
            }
            let solution = Solution { start: starts[i].clone(), blocks };
            let nodes = search.nodes.load(Ordering::Relaxed);
            return Ok(Solved { stats: SolverStats::new(depth, nodes, inst, timer.elapsed()), solution });
        }
        depth += 1;
    }
}

struct Search<'a> {
    meetings: &'a [Meeting],
    crossings: &'a [BlockCrossing],
    bound: &'a [usize],
    nodes: AtomicU64,
}

impl Search<'_> {
    /// `stack[d]` holds the tracker for the current node; its tracked meeting
    /// is `meetings[l]`, which it does not fit.
    fn dfs(
        &self,
        stack: &mut [FitTracker],
        d: usize,
        l: usize,
        left: usize,
        prev: Option<(BlockCrossing, bool)>,
        path: &mut Vec<(usize, BlockCrossing)>,
    ) -> bool {
        self.nodes.fetch_add(1, Ordering::Relaxed);
        let n = self.meetings.len();
        for &bc in self.crossings {
            // Two crossings in a row without progress compose to at most one
            // crossing, so repeating or undoing the last one is dominated.
            if let Some((p, false)) = prev {
                if bc == p || bc == p.inverse() {
                    continue;
                }
            }
            let l2 = {
                let (head, tail) = stack.split_at_mut(d + 1);
                let child = &mut tail[0];
                child.clone_from(&head[d]);
                let fits = child.block_move(bc).expect("tracker has a meeting and crossing is valid");
                if fits {
                    child.advance(self.meetings, l + 1)
                } else {
                    l
                }
            };
            if l2 == n {
                path.push((l, bc));
                return true;
            }
            if left - 1 < self.bound[l2] {
                continue;
            }
            path.push((l, bc));
            if self.dfs(stack, d + 1, l2, left - 1, Some((bc, l2 > l)), path) {
                return true;
            }
            path.pop();
        }
        false
    }
}
