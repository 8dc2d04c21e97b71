use std::collections::BTreeSet;

use super::Deletion;
use crate::error::{Error, Result};
use crate::interval::paths_order;
use crate::model::{build_group_hypergraph, CharId, Meeting, Permutation, StorylineInstance};

/// Deletion for pair meetings that keeps each character's first meeting cheap.
///
/// Characters are visited in ascending order. If a character still has two or
/// more edges besides the one of its first meeting, all of those are removed.
/// Every character then has degree at most two; from each remaining cycle the
/// smallest edge is removed.
pub fn two_char_deletion(inst: &StorylineInstance) -> Result<Deletion> {
    if inst.rank() > 2 {
        return Err(Error::Rank { rank: inst.rank(), limit: 2 });
    }
    let k = inst.k;
    let mut first: Vec<Option<&Meeting>> = vec![None; k + 1];
    for m in &inst.meetings {
        for &c in m.members() {
            first[c as usize].get_or_insert(m);
        }
    }
    let h = build_group_hypergraph(inst);
    let mut kept: BTreeSet<Meeting> = h.edges().iter().cloned().collect();
    let mut paid: Vec<Meeting> = Vec::new();
    for c in 1..=k as CharId {
        let others: Vec<Meeting> =
            kept.iter().filter(|e| e.contains(c) && Some(*e) != first[c as usize]).cloned().collect();
        if others.len() >= 2 {
            for e in others {
                kept.remove(&e);
                paid.push(e);
            }
        }
    }

    let mut parent: Vec<usize> = (0..=k).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    // Edges in ascending order: the one closing a cycle is not the smallest,
    // so collect cycle members per root and drop the smallest afterwards.
    let mut closing: Vec<usize> = Vec::new();
    for e in &kept {
        let (u, v) = (e.members()[0] as usize, e.members()[1] as usize);
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        if ru == rv {
            closing.push(ru);
        } else {
            parent[ru] = rv;
        }
    }
    let cycle_roots: BTreeSet<usize> = closing.iter().map(|&r| find(&mut parent, r)).collect();
    for root in cycle_roots {
        let smallest = kept
            .iter()
            .find(|e| find(&mut parent, e.members()[0] as usize) == root)
            .cloned()
            .expect("cycle has edges");
        kept.remove(&smallest);
        paid.push(smallest);
    }

    let pairs: Vec<(CharId, CharId)> = kept.iter().map(|e| (e.members()[0], e.members()[1])).collect();
    let order = paths_order(k, &pairs).ok_or_else(|| Error::Contract("kept pairs do not form paths".into()))?;
    paid.sort();
    Ok(Deletion { paid, witness: Permutation::from_vec_unchecked(order) })
}
