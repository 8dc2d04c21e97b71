//! Approximation for instances with bounded meeting size.
//!
//! A start order is chosen that supports as many distinct groups as possible
//! (via edge deletion on the group hypergraph). Every meeting it does not
//! support is realized by moving its members next to one fixed member, one
//! line at a time, and the moves are undone right after the meeting so the
//! start order is in force again for the next one.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ihed::{ihed_approx, two_char_deletion};
use crate::model::{build_group_hypergraph, BlockCrossing, Meeting, Permutation, Solution, StorylineInstance};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// At least `2 d k` meetings: the identity start is good enough.
    Dense,
    /// Pair meetings without repeated groups.
    TwoChar,
    Deletion,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApproxReport {
    pub branch: Branch,
    /// Meeting size bound used for the branch choice and the guarantees.
    pub d: usize,
    /// Distinct groups not supported by the start order.
    pub paid_groups: usize,
    /// Meetings whose group is not supported by the start order.
    pub paid_meetings: usize,
    pub cost: usize,
    /// Guaranteed lower bound on the optimum, `4 p / (3 d^2)` for `p` paid groups.
    pub lower_bound: String,
    /// Proven approximation factor for the branch that fired.
    pub factor: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Approximation {
    pub solution: Solution,
    pub report: ApproxReport,
}

/// `4 * paid / (3 * d^2)`.
pub fn lower_bound(paid: u64, d: u64) -> Result<Ratio<u64>> {
    if d < 2 {
        return Err(Error::Guard { what: "meeting size bound d below 2; d", limit: 2, got: d as usize });
    }
    Ok(Ratio::new(4 * paid, 3 * d * d))
}

/// Moves that make `group` contiguous in `pi0`, and the moves that undo them.
///
/// The member at the lower median position stays fixed; the others are moved
/// next to the growing block one line at a time, nearest first, above and
/// then below. The undo list is to be applied in the given order.
pub fn realize_paid_meeting(pi0: &Permutation, group: &Meeting) -> Result<(Vec<BlockCrossing>, Vec<BlockCrossing>)> {
    if group.len() < 2 {
        return Err(Error::MeetingSize { expected: 2, got: group.len() });
    }
    if group.max_id() as usize > pi0.len() {
        return Err(Error::InvalidInstance(format!("group {group} has an id above {}", pi0.len())));
    }
    let pos = pi0.positions();
    let mut at: Vec<usize> = group.members().iter().map(|&c| pos[c as usize] + 1).collect();
    at.sort_unstable();
    let mid = (at.len() - 1) / 2;
    let (mut top, mut bottom) = (at[mid], at[mid]);
    let mut moves = Vec::new();
    for &p in at[..mid].iter().rev() {
        if p + 1 < top {
            moves.push(BlockCrossing { a: p, b: p, c: top - 1 });
        }
        top -= 1;
    }
    for &q in &at[mid + 1..] {
        if bottom + 1 < q {
            moves.push(BlockCrossing { a: bottom + 1, b: q - 1, c: q });
        }
        bottom += 1;
    }
    let undo = moves.iter().rev().map(BlockCrossing::inverse).collect();
    Ok((moves, undo))
}

/// Approximate solution with a report of the guarantees that apply.
///
/// `d` overrides the meeting size bound (it must be at least the largest
/// meeting). `repetition_bound` only scales the reported factor.
pub fn approx_sbcm(inst: &StorylineInstance, d: Option<usize>, repetition_bound: Option<usize>) -> Result<Approximation> {
    let rank = inst.rank();
    let d = match d {
        Some(d) if d < rank => return Err(Error::Rank { rank, limit: d }),
        Some(d) => d,
        None => rank.max(2),
    };
    let k = inst.k;
    let n = inst.n();
    let h = build_group_hypergraph(inst);
    let (branch, start) = if n >= 2 * d * k {
        (Branch::Dense, Permutation::identity(k))
    } else if rank <= 2 && !inst.has_repetitions() {
        (Branch::TwoChar, two_char_deletion(inst)?.witness)
    } else {
        (Branch::Deletion, ihed_approx(&h)?.witness)
    };

    let mut blocks: Vec<Vec<BlockCrossing>> = vec![Vec::new(); n];
    let mut paid_meetings = 0;
    let mut pending: Vec<BlockCrossing> = Vec::new();
    for (i, m) in inst.meetings.iter().enumerate() {
        blocks[i].append(&mut pending);
        if start.supports(m) {
            continue;
        }
        paid_meetings += 1;
        let (moves, undo) = realize_paid_meeting(&start, m)?;
        blocks[i].extend(moves);
        pending = undo;
    }
    let solution = Solution { start, blocks };
    let cost = solution.cost();
    if cost > 2 * (d - 1) * paid_meetings {
        return Err(Error::Contract(format!("cost {cost} exceeds 2(d-1) per paid meeting")));
    }
    let paid_groups = h.edges().iter().filter(|g| !solution.start.supports(g)).count();
    let lb = lower_bound(paid_groups as u64, d as u64)?;
    let dd = d as u64;
    let factor = match branch {
        Branch::TwoChar => 12,
        _ => 3 * (dd * dd - 1) * dd * dd / 2 * repetition_bound.unwrap_or(1).max(1) as u64,
    };
    let report = ApproxReport {
        branch,
        d,
        paid_groups,
        paid_meetings,
        cost,
        lower_bound: lb.to_string(),
        factor,
    };
    Ok(Approximation { solution, report })
}
