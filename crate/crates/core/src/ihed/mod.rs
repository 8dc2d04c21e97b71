//! Edge deletion to an interval hypergraph.
//!
//! The approximation first removes every small obstruction it can find (short
//! cycles and the bounded-size patterns of [`PatternKind`]) in full, then
//! cuts each remaining cyclic component at its cheapest point. Every removed
//! obstruction has at most `rank + 1` edges and forces at least one deletion,
//! and the cut step is optimal on what is left.

mod circular;
mod cycles;
mod patterns;
mod two_char;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::{interval_support, is_contiguous};
use crate::model::{CharId, GroupHypergraph, Meeting, Permutation};

pub use circular::{break_long_cycles, cell_order, circular_order, CellOrder};
pub use cycles::{find_cycle, remove_short_cycles, Cycle};
pub use patterns::{find_forbidden, ForbiddenOccurrence, PatternKind};
pub use two_char::two_char_deletion;

use cycles::EdgeSet;

/// Removes short cycles and patterns until none is left.
///
/// Returns the remainder, the removed edges (sorted) and the occurrences in
/// the order they were found.
pub fn make_f_free_traced(h: &GroupHypergraph) -> (GroupHypergraph, Vec<Meeting>, Vec<ForbiddenOccurrence>) {
    let rank = h.rank();
    let pats = patterns::patterns_for_rank(rank);
    let mut set = EdgeSet::new(h.vertex_count(), h.edges());
    let mut found = Vec::new();
    loop {
        let cycles = set.remove_short_cycles(rank + 1);
        let fired = !cycles.is_empty();
        found.extend(cycles.into_iter().map(|c| ForbiddenOccurrence {
            kind: PatternKind::C(c.len()),
            edges: c.edges,
            witnesses: c.vertices,
        }));
        match patterns::find_in(&set, &pats) {
            Some(occ) => {
                for e in &occ.edges {
                    let i = set.edges.binary_search(e).expect("occurrence uses known edges");
                    set.alive[i] = false;
                }
                found.push(occ);
            }
            None if !fired => break,
            None => {}
        }
    }
    let mut removed: Vec<Meeting> = found.iter().flat_map(|o| o.edges.iter().cloned()).collect();
    removed.sort();
    (GroupHypergraph::from_sorted_unchecked(h.vertex_count(), set.remaining()), removed, found)
}

pub fn make_f_free(h: &GroupHypergraph) -> (GroupHypergraph, Vec<Meeting>) {
    let (rest, removed, _) = make_f_free_traced(h);
    (rest, removed)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Deletion {
    /// Removed edges, sorted.
    pub paid: Vec<Meeting>,
    /// Order supporting every edge that was kept.
    pub witness: Permutation,
}

/// Deletion set whose remainder is interval, at most `rank + 1` times optimal.
pub fn ihed_approx(h: &GroupHypergraph) -> Result<Deletion> {
    let (rest, mut paid) = make_f_free(h);
    let comps = circular::components(rest.edges());
    let parts: Vec<(Vec<Meeting>, Vec<CharId>)> =
        comps.par_iter().map(|(vs, es)| break_long_cycles(vs, es)).collect::<Result<_>>()?;
    let mut order: Vec<CharId> = Vec::with_capacity(h.vertex_count());
    let mut placed = vec![false; h.vertex_count() + 1];
    for (removed, part) in parts {
        paid.extend(removed);
        for v in part {
            placed[v as usize] = true;
            order.push(v);
        }
    }
    order.extend((1..=h.vertex_count() as CharId).filter(|&v| !placed[v as usize]));
    paid.sort();
    if let Some(e) = h.edges().iter().find(|e| paid.binary_search(e).is_err() && !is_contiguous(&order, e.members())) {
        return Err(Error::Contract(format!("kept edge {e} is not supported by the witness")));
    }
    Ok(Deletion { paid, witness: Permutation::from_vec_unchecked(order) })
}

pub const BRUTE_MAX_EDGES: usize = 20;

/// Smallest deletion set, trying subsets by size then lexicographically.
pub fn ihed_brute(h: &GroupHypergraph) -> Result<Vec<Meeting>> {
    let m = h.edges().len();
    if m > BRUTE_MAX_EDGES {
        return Err(Error::Guard { what: "edges for exhaustive deletion", limit: BRUTE_MAX_EDGES, got: m });
    }
    for size in 0..=m {
        for subset in h.edges().iter().cloned().combinations(size) {
            if interval_support(&h.without(&subset)).is_some() {
                return Ok(subset);
            }
        }
    }
    Err(Error::Contract("removing every edge leaves an interval hypergraph".into()))
}
