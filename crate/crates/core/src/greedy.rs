//! Greedy heuristic for instances whose meetings all have two characters.
//!
//! Each step first consumes every meeting the current order already fits.
//! For the next meeting it tries the `k + 1` crossings that make the two
//! characters adjacent in a useful way and keeps the one after which the
//! longest run of upcoming meetings fits.

use std::collections::BTreeSet;
use std::ops::Range;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::rank::Ranker;
use crate::fitcheck::FitTracker;
use crate::interval::paths_order;
use crate::model::{BlockCrossing, CharId, Meeting, Permutation, Solution, StorylineInstance};

pub const BEST_GREEDY_MAX_K: usize = 9;

/// Crossings that bring the two members of `m` together, in tie-break order.
///
/// With members at positions `x < y` these are `(z, x, y-1)` for `z = 1..=x`,
/// `(x, z, y)` for `z = x..y`, and `(x+1, y-1, z)` for `z = y..=k`. For an
/// already adjacent pair only the valid triples are kept.
pub fn relevant_crossings(pi: &Permutation, m: &Meeting) -> Result<Vec<BlockCrossing>> {
    if m.len() != 2 {
        return Err(Error::MeetingSize { expected: 2, got: m.len() });
    }
    Ok(relevant_for_order(pi.as_slice(), m))
}

fn relevant_for_order(order: &[CharId], m: &Meeting) -> Vec<BlockCrossing> {
    let k = order.len();
    let (u, v) = (m.members()[0], m.members()[1]);
    let pu = order.iter().position(|&c| c == u).expect("member in order") + 1;
    let pv = order.iter().position(|&c| c == v).expect("member in order") + 1;
    let (x, y) = (pu.min(pv), pu.max(pv));
    let triples = (1..=x)
        .map(|z| (z, x, y - 1))
        .chain((x..y).map(|z| (x, z, y)))
        .chain((y..=k).map(|z| (x + 1, y - 1, z)));
    triples
        .filter(|&(a, b, c)| 1 <= a && a <= b && b < c && c <= k)
        .map(|(a, b, c)| BlockCrossing { a, b, c })
        .collect()
}

fn require_pairs(inst: &StorylineInstance) -> Result<()> {
    match inst.meetings.iter().find(|m| m.len() != 2) {
        Some(m) => Err(Error::MeetingSize { expected: 2, got: m.len() }),
        None => Ok(()),
    }
}

/// Greedy solution from a given start; at most one crossing per meeting.
pub fn greedy(inst: &StorylineInstance, start: &Permutation) -> Result<Solution> {
    require_pairs(inst)?;
    if start.len() != inst.k {
        return Err(Error::InvalidPermutation(format!("start has length {}, k = {}", start.len(), inst.k)));
    }
    let meetings = &inst.meetings;
    let n = meetings.len();
    let mut blocks = vec![Vec::new(); n];
    let mut tracker = FitTracker::new(start);
    let mut l = tracker.advance(meetings, 0);
    while l < n {
        let mut best: Option<(usize, BlockCrossing, FitTracker)> = None;
        for bc in relevant_for_order(tracker.order(), &meetings[l]) {
            let mut t = tracker.clone();
            let fits = t.block_move(bc)?;
            debug_assert!(fits);
            let reach = t.advance(meetings, l + 1);
            if best.as_ref().map_or(true, |(r, _, _)| reach > *r) {
                best = Some((reach, bc, t));
            }
        }
        let (reach, bc, t) = best.ok_or_else(|| Error::Contract("no relevant crossing".into()))?;
        blocks[l].push(bc);
        tracker = t;
        l = reach;
    }
    Ok(Solution { start: start.clone(), blocks })
}

/// Length of the longest crossing-free prefix and an order supporting it.
///
/// Meetings are added while the pair graph stays a set of disjoint paths.
pub fn heuristic_prefix(inst: &StorylineInstance) -> Result<(usize, Permutation)> {
    require_pairs(inst)?;
    let k = inst.k;
    let mut parent: Vec<usize> = (0..=k).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut degree = vec![0usize; k + 1];
    let mut seen: BTreeSet<(CharId, CharId)> = BTreeSet::new();
    let mut edges = Vec::new();
    let mut len = 0;
    for m in &inst.meetings {
        let (u, v) = (m.members()[0], m.members()[1]);
        if !seen.contains(&(u, v)) {
            let (ru, rv) = (find(&mut parent, u as usize), find(&mut parent, v as usize));
            if degree[u as usize] == 2 || degree[v as usize] == 2 || ru == rv {
                break;
            }
            parent[ru] = rv;
            degree[u as usize] += 1;
            degree[v as usize] += 1;
            seen.insert((u, v));
            edges.push((u, v));
        }
        len += 1;
    }
    let order = paths_order(k, &edges).ok_or_else(|| Error::Contract("prefix graph is not a path collection".into()))?;
    Ok((len, Permutation::from_vec_unchecked(order)))
}

pub fn heuristic_start(inst: &StorylineInstance) -> Result<Permutation> {
    heuristic_prefix(inst).map(|(_, p)| p)
}

/// Greedy cost for every start permutation, in lexicographic start order.
pub fn greedy_all_starts(inst: &StorylineInstance) -> Result<Vec<usize>> {
    require_pairs(inst)?;
    if inst.k > BEST_GREEDY_MAX_K {
        return Err(Error::Guard { what: "k for all-starts greedy", limit: BEST_GREEDY_MAX_K, got: inst.k });
    }
    let ranker = Ranker::new(inst.k);
    (0..ranker.count())
        .into_par_iter()
        .map(|r| {
            let start = Permutation::from_vec_unchecked(ranker.unrank(r));
            greedy(inst, &start).map(|s| s.cost())
        })
        .collect()
}

/// Cheapest greedy run over all starts; ties go to the smaller start.
pub fn best_greedy(inst: &StorylineInstance) -> Result<Solution> {
    let costs = greedy_all_starts(inst)?;
    let (rank, _) = costs
        .iter()
        .enumerate()
        .min_by_key(|&(r, &c)| (c, r))
        .ok_or_else(|| Error::Contract("no start permutations".into()))?;
    let start = Permutation::from_vec_unchecked(Ranker::new(inst.k).unrank(rank as u64));
    greedy(inst, &start)
}

/// Maximal runs using at most two distinct meetings (three characters only).
///
/// Returned as 0-based half-open meeting ranges.
pub fn epochs(inst: &StorylineInstance) -> Result<Vec<Range<usize>>> {
    if inst.k != 3 {
        return Err(Error::Guard { what: "epochs are defined for k = 3; k", limit: 3, got: inst.k });
    }
    require_pairs(inst)?;
    let mut out = Vec::new();
    let mut start = 0;
    let mut distinct: Vec<&Meeting> = Vec::new();
    for (i, m) in inst.meetings.iter().enumerate() {
        if !distinct.contains(&m) {
            if distinct.len() == 2 {
                out.push(start..i);
                start = i;
                distinct.clear();
            }
            distinct.push(m);
        }
    }
    if inst.n() > 0 {
        out.push(start..inst.n());
    }
    Ok(out)
}
