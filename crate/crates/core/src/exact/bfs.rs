use std::time::Instant;

use super::rank::{factorial, Ranker, MAX_RANK_K};
use super::{reach_table, Solved, SolverStats};
use crate::error::{Error, Result};
use crate::model::{enumerate_block_crossings, CharId, Permutation, Solution, StorylineInstance};

/// Default cap on `k! * (n + 1)`.
pub const DEFAULT_STATE_BUDGET: u128 = 200_000_000;

pub fn solve_bfs(inst: &StorylineInstance, fixed_start: Option<&Permutation>) -> Result<Solved> {
    solve_bfs_with_budget(inst, fixed_start, DEFAULT_STATE_BUDGET)
}

struct Node {
    rank: u32,
    progress: u16,
    parent: u32,
    crossing: u16,
}

const ROOT: u32 = u32::MAX;

/// Breadth-first search over `(order, progress)` states.
///
/// Arcs always push progress as far as the new order allows. A state is
/// skipped when the same order was already reached, at no greater distance,
/// with at least as much progress: the fit prefix is monotone in progress, so
/// nothing reachable from it is lost. A frontier node is still expanded when
/// the better entry for its order lies one layer deeper.
pub fn solve_bfs_with_budget(inst: &StorylineInstance, fixed_start: Option<&Permutation>, state_budget: u128) -> Result<Solved> {
    let timer = Instant::now();
    let k = inst.k;
    let n = inst.n();
    let states = factorial(k).saturating_mul(n as u128 + 1);
    if states > state_budget || k > MAX_RANK_K || n >= u16::MAX as usize {
        return Err(Error::StateLimit { states, limit: state_budget });
    }
    if let Some(p) = fixed_start {
        if p.len() != k {
            return Err(Error::InvalidPermutation(format!("start has length {}, k = {k}", p.len())));
        }
    }
    if n == 0 {
        let start = fixed_start.cloned().unwrap_or_else(|| Permutation::identity(k));
        return Ok(Solved { solution: Solution::crossing_free(start, 0), stats: SolverStats::new(0, 0, inst, timer.elapsed()) });
    }

    let ranker = Ranker::new(k);
    let perms = ranker.count() as usize;
    let crossings = enumerate_block_crossings(k)?;
    let mut rows: Vec<Option<Box<[u16]>>> = vec![None; perms];
    let mut best: Vec<i32> = vec![-1; perms];
    // Depth at which `best` was reached; only equal or shallower entries dominate.
    let mut best_at: Vec<u32> = vec![0; perms];
    let mut nodes: Vec<Node> = Vec::new();
    let row_of = |rows: &mut Vec<Option<Box<[u16]>>>, r: usize, order: &[CharId]| -> u16 {
        rows[r].get_or_insert_with(|| reach_table(order, &inst.meetings).into_boxed_slice())[0]
    };

    let mut order = Vec::with_capacity(k);
    let start_ranks: Vec<u64> = match fixed_start {
        Some(p) => vec![ranker.rank(p.as_slice())],
        None => (0..ranker.count()).collect(),
    };
    let mut frontier: Vec<u32> = Vec::new();
    for r in start_ranks {
        ranker.unrank_into(r, &mut order);
        let l0 = row_of(&mut rows, r as usize, &order);
        best[r as usize] = l0 as i32;
        let idx = nodes.len() as u32;
        nodes.push(Node { rank: r as u32, progress: l0, parent: ROOT, crossing: 0 });
        if l0 as usize == n {
            return Ok(finish(inst, &ranker, &crossings, &nodes, idx, 0, timer));
        }
        // A free start at progress 0 only leads to orders that are starts themselves.
        if fixed_start.is_some() || l0 > 0 {
            frontier.push(idx);
        }
    }

    let mut expanded = 0u64;
    let mut depth = 0usize;
    let mut next_order = Vec::with_capacity(k);
    while !frontier.is_empty() {
        depth += 1;
        let mut next = Vec::new();
        for &idx in &frontier {
            expanded += 1;
            let (rank, l) = (nodes[idx as usize].rank, nodes[idx as usize].progress as usize);
            if (best[rank as usize] as usize) > l && best_at[rank as usize] < depth as u32 {
                continue;
            }
            ranker.unrank_into(rank as u64, &mut order);
            for (ci, bc) in crossings.iter().enumerate() {
                next_order.clear();
                next_order.extend_from_slice(&order);
                bc.apply_to_slice(&mut next_order);
                let r2 = ranker.rank(&next_order) as usize;
                let row = rows[r2].get_or_insert_with(|| reach_table(&next_order, &inst.meetings).into_boxed_slice());
                let l2 = row[l];
                if (l2 as i32) <= best[r2] {
                    continue;
                }
                best[r2] = l2 as i32;
                best_at[r2] = depth as u32;
                let child = nodes.len() as u32;
                nodes.push(Node { rank: r2 as u32, progress: l2, parent: idx, crossing: ci as u16 });
                if l2 as usize == n {
                    return Ok(finish(inst, &ranker, &crossings, &nodes, child, expanded, timer));
                }
                next.push(child);
            }
        }
        frontier = next;
    }
    Err(Error::Contract(format!("search exhausted after depth {depth} without reaching the last meeting")))
}

fn finish(
    inst: &StorylineInstance,
    ranker: &Ranker,
    crossings: &[crate::model::BlockCrossing],
    nodes: &[Node],
    goal: u32,
    expanded: u64,
    timer: Instant,
) -> Solved {
    let mut steps = Vec::new();
    let mut cur = goal;
    while nodes[cur as usize].parent != ROOT {
        let node = &nodes[cur as usize];
        let parent = &nodes[node.parent as usize];
        steps.push((parent.progress as usize, crossings[node.crossing as usize]));
        cur = node.parent;
    }
    steps.reverse();
    let mut blocks = vec![Vec::new(); inst.n()];
    for (l, bc) in steps {
        blocks[l].push(bc);
    }
    let start = Permutation::from_vec_unchecked(ranker.unrank(nodes[cur as usize].rank as u64));
    let solution = Solution { start, blocks };
    let beta = solution.cost();
    Solved { solution, stats: SolverStats::new(beta, expanded, inst, timer.elapsed()) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::solve_iddfs;
    use crate::model::validate_solution;

    fn fixture() -> StorylineInstance {
        StorylineInstance::from_lists(
            8,
            &[&[6, 3], &[7, 2], &[1, 5], &[5, 6], &[6, 3], &[3, 4], &[4, 8], &[8, 7]],
        )
        .unwrap()
    }

    #[test]
    fn fixture_free_and_fixed() {
        let inst = fixture();
        let fixed = solve_bfs(&inst, Some(&Permutation::identity(8))).unwrap();
        assert_eq!(fixed.stats.beta, 2);
        assert_eq!(validate_solution(&inst, &fixed.solution).unwrap(), 2);
        let free = solve_bfs(&inst, None).unwrap();
        assert!(free.stats.beta <= 2);
        assert_eq!(validate_solution(&inst, &free.solution).unwrap(), free.stats.beta);
        assert_eq!(solve_iddfs(&inst, None, None).unwrap().stats.beta, free.stats.beta);
    }

    #[test]
    fn crossing_free_instance() {
        let inst = StorylineInstance::from_lists(4, &[&[1, 2], &[2, 3], &[3, 4]]).unwrap();
        let s = solve_bfs(&inst, None).unwrap();
        assert_eq!(s.stats.beta, 0);
    }

    #[test]
    fn state_guard() {
        let inst = fixture();
        let err = solve_bfs_with_budget(&inst, None, 1000).unwrap_err();
        assert_eq!(err, Error::StateLimit { states: 40320 * 9, limit: 1000 });
    }
}
