//! Storyline data model and block-crossing algebra.
//!
//! Characters are identified by `1..=k`. Positions inside a permutation are
//! 1-based in every public signature; internal code converts at the boundary.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Character identifier, 1-based.
pub type CharId = u32;

/// A set of at least two distinct characters, stored sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<CharId>", into = "Vec<CharId>")]
pub struct Meeting(Vec<CharId>);

impl Meeting {
    pub fn new(mut ids: Vec<CharId>) -> Result<Self> {
        ids.sort_unstable();
        if ids.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidInstance(format!("meeting {ids:?} repeats a character")));
        }
        if ids.len() < 2 {
            return Err(Error::InvalidInstance(format!("meeting {ids:?} has fewer than 2 characters")));
        }
        if ids[0] == 0 {
            return Err(Error::InvalidInstance("character id 0 (ids are 1-based)".into()));
        }
        Ok(Meeting(ids))
    }

    pub fn members(&self) -> &[CharId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, id: CharId) -> bool {
        self.0.binary_search(&id).is_ok()
    }

    pub fn max_id(&self) -> CharId {
        *self.0.last().expect("meetings are nonempty")
    }
}

impl TryFrom<Vec<CharId>> for Meeting {
    type Error = Error;
    fn try_from(v: Vec<CharId>) -> Result<Self> {
        Meeting::new(v)
    }
}

impl From<Meeting> for Vec<CharId> {
    fn from(m: Meeting) -> Self {
        m.0
    }
}

impl fmt::Display for Meeting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, id) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{id}")?;
        }
        write!(f, "}}")
    }
}

/// Vertical order of all characters, top to bottom.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<CharId>", into = "Vec<CharId>")]
pub struct Permutation(Vec<CharId>);

impl Permutation {
    /// Checks that `order` contains every id `1..=order.len()` exactly once.
    pub fn new(order: Vec<CharId>) -> Result<Self> {
        let k = order.len();
        let mut seen = vec![false; k + 1];
        for &id in &order {
            let i = id as usize;
            if i == 0 || i > k {
                return Err(Error::InvalidPermutation(format!("id {id} outside 1..{k}")));
            }
            if seen[i] {
                return Err(Error::InvalidPermutation(format!("id {id} appears twice")));
            }
            seen[i] = true;
        }
        Ok(Permutation(order))
    }

    pub(crate) fn from_vec_unchecked(order: Vec<CharId>) -> Self {
        debug_assert!(Permutation::new(order.clone()).is_ok());
        Permutation(order)
    }

    pub fn identity(k: usize) -> Self {
        Permutation((1..=k as CharId).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[CharId] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<CharId> {
        self.0
    }

    /// `pos[id]` is the 0-based position of `id`; index 0 is unused.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![usize::MAX; self.0.len() + 1];
        for (p, &id) in self.0.iter().enumerate() {
            pos[id as usize] = p;
        }
        pos
    }

    pub fn apply(&self, bc: BlockCrossing) -> Result<Permutation> {
        bc.check(self.len())?;
        let mut next = self.0.clone();
        bc.apply_to_slice(&mut next);
        Ok(Permutation(next))
    }

    pub fn supports(&self, m: &Meeting) -> bool {
        supports_slice(&self.0, m)
    }

    pub fn reversed(&self) -> Permutation {
        let mut v = self.0.clone();
        v.reverse();
        Permutation(v)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, id) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{id}")?;
        }
        write!(f, ">")
    }
}

impl TryFrom<Vec<CharId>> for Permutation {
    type Error = Error;
    fn try_from(v: Vec<CharId>) -> Result<Self> {
        Permutation::new(v)
    }
}

impl From<Permutation> for Vec<CharId> {
    fn from(p: Permutation) -> Self {
        p.0
    }
}

/// True iff the members of `m` occupy consecutive positions of `order`.
pub(crate) fn supports_slice(order: &[CharId], m: &Meeting) -> bool {
    let mut lo = usize::MAX;
    let mut hi = 0;
    let mut found = 0;
    for (p, &id) in order.iter().enumerate() {
        if m.contains(id) {
            lo = lo.min(p);
            hi = hi.max(p);
            found += 1;
        }
    }
    found == m.len() && hi - lo + 1 == m.len()
}

/// Exchange of the adjacent position blocks `a..=b` and `b+1..=c` (1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[usize; 3]", into = "[usize; 3]")]
pub struct BlockCrossing {
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

impl BlockCrossing {
    /// Checks `1 <= a <= b < c`; the upper bound on `c` depends on `k`, see [`BlockCrossing::check`].
    pub fn new(a: usize, b: usize, c: usize) -> Result<Self> {
        if a == 0 || a > b || b >= c {
            return Err(Error::InvalidCrossing { a, b, c, k: 0 });
        }
        Ok(BlockCrossing { a, b, c })
    }

    pub fn check(&self, k: usize) -> Result<()> {
        let BlockCrossing { a, b, c } = *self;
        if a == 0 || a > b || b >= c || c > k {
            return Err(Error::InvalidCrossing { a, b, c, k });
        }
        Ok(())
    }

    /// The crossing that restores the order this one changed.
    pub fn inverse(&self) -> BlockCrossing {
        BlockCrossing { a: self.a, b: self.a + self.c - self.b - 1, c: self.c }
    }

    /// Applies to an order of length at least `c`; caller guarantees validity.
    pub(crate) fn apply_to_slice<T>(&self, order: &mut [T]) {
        order[self.a - 1..self.c].rotate_left(self.b - self.a + 1);
    }
}

impl TryFrom<[usize; 3]> for BlockCrossing {
    type Error = Error;
    fn try_from(t: [usize; 3]) -> Result<Self> {
        BlockCrossing::new(t[0], t[1], t[2])
    }
}

impl From<BlockCrossing> for [usize; 3] {
    fn from(bc: BlockCrossing) -> Self {
        [bc.a, bc.b, bc.c]
    }
}

impl fmt::Display for BlockCrossing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

pub fn apply_block_crossing(pi: &Permutation, bc: BlockCrossing) -> Result<Permutation> {
    pi.apply(bc)
}

/// All `(k^3 - k) / 6` block crossings on `k` positions in lexicographic order.
pub fn enumerate_block_crossings(k: usize) -> Result<Vec<BlockCrossing>> {
    if k < 2 {
        return Err(Error::Guard { what: "block crossings need k >= 2; k", limit: 2, got: k });
    }
    let mut out = Vec::with_capacity((k * k * k - k) / 6);
    for a in 1..=k {
        for b in a..=k {
            for c in b + 1..=k {
                out.push(BlockCrossing { a, b, c });
            }
        }
    }
    Ok(out)
}

pub fn supports(pi: &Permutation, m: &Meeting) -> bool {
    pi.supports(m)
}

/// Character count plus ordered meeting sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawInstance")]
pub struct StorylineInstance {
    pub k: usize,
    pub meetings: Vec<Meeting>,
}

#[derive(Deserialize)]
struct RawInstance {
    k: usize,
    meetings: Vec<Meeting>,
}

impl TryFrom<RawInstance> for StorylineInstance {
    type Error = Error;
    fn try_from(raw: RawInstance) -> Result<Self> {
        StorylineInstance::new(raw.k, raw.meetings)
    }
}

impl StorylineInstance {
    pub fn new(k: usize, meetings: Vec<Meeting>) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidInstance("k must be positive".into()));
        }
        for (i, m) in meetings.iter().enumerate() {
            if m.max_id() as usize > k {
                return Err(Error::InvalidInstance(format!(
                    "meeting {} = {m} uses an id above k = {k}",
                    i + 1
                )));
            }
        }
        Ok(StorylineInstance { k, meetings })
    }

    /// Builds an instance from raw id lists.
    pub fn from_lists(k: usize, lists: &[&[CharId]]) -> Result<Self> {
        let meetings = lists.iter().map(|l| Meeting::new(l.to_vec())).collect::<Result<_>>()?;
        StorylineInstance::new(k, meetings)
    }

    pub fn n(&self) -> usize {
        self.meetings.len()
    }

    /// Largest meeting size, 0 for an empty instance.
    pub fn rank(&self) -> usize {
        self.meetings.iter().map(Meeting::len).max().unwrap_or(0)
    }

    /// Sum of meeting sizes.
    pub fn total_size(&self) -> usize {
        self.meetings.iter().map(Meeting::len).sum()
    }

    pub fn is_normalized(&self) -> bool {
        self.meetings.windows(2).all(|w| w[0] != w[1])
    }

    /// True iff no group occurs more than once anywhere in the sequence.
    pub fn has_repetitions(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.meetings.iter().any(|m| !seen.insert(m))
    }
}

/// Drops consecutive duplicate meetings.
pub fn normalize_instance(inst: &StorylineInstance) -> StorylineInstance {
    let mut meetings = inst.meetings.clone();
    meetings.dedup();
    StorylineInstance { k: inst.k, meetings }
}

/// Start permutation plus one crossing sequence before each meeting.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Solution {
    pub start: Permutation,
    pub blocks: Vec<Vec<BlockCrossing>>,
}

impl Solution {
    pub fn crossing_free(start: Permutation, n: usize) -> Self {
        Solution { start, blocks: vec![Vec::new(); n] }
    }

    pub fn cost(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    /// Permutation in force at each meeting, in order.
    pub fn replay(&self) -> Result<Vec<Permutation>> {
        let k = self.start.len();
        let mut cur = self.start.as_slice().to_vec();
        let mut out = Vec::with_capacity(self.blocks.len());
        for seq in &self.blocks {
            for bc in seq {
                bc.check(k)?;
                bc.apply_to_slice(&mut cur);
            }
            out.push(Permutation(cur.clone()));
        }
        Ok(out)
    }
}

/// Returns the number of crossings if every meeting is supported in turn.
pub fn validate_solution(inst: &StorylineInstance, sol: &Solution) -> Result<usize> {
    if sol.start.len() != inst.k {
        return Err(Error::InvalidPermutation(format!(
            "start has length {}, instance has k = {}",
            sol.start.len(),
            inst.k
        )));
    }
    if sol.blocks.len() != inst.n() {
        return Err(Error::WrongBlockCount { expected: inst.n(), got: sol.blocks.len() });
    }
    let mut cur = sol.start.as_slice().to_vec();
    for (i, (seq, m)) in sol.blocks.iter().zip(&inst.meetings).enumerate() {
        for bc in seq {
            bc.check(inst.k)?;
            bc.apply_to_slice(&mut cur);
        }
        if !supports_slice(&cur, m) {
            return Err(Error::UnsupportedMeeting { index: i + 1 });
        }
    }
    Ok(sol.cost())
}

/// Characters as vertices, distinct groups as hyperedges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawHypergraph", into = "RawHypergraph")]
pub struct GroupHypergraph {
    vertex_count: usize,
    edges: Vec<Meeting>,
}

#[derive(Serialize, Deserialize)]
struct RawHypergraph {
    k: usize,
    edges: Vec<Meeting>,
}

impl TryFrom<RawHypergraph> for GroupHypergraph {
    type Error = Error;
    fn try_from(raw: RawHypergraph) -> Result<Self> {
        GroupHypergraph::new(raw.k, raw.edges)
    }
}

impl From<GroupHypergraph> for RawHypergraph {
    fn from(h: GroupHypergraph) -> Self {
        RawHypergraph { k: h.vertex_count, edges: h.edges }
    }
}

impl GroupHypergraph {
    /// Deduplicates and sorts the edges.
    pub fn new(vertex_count: usize, edges: Vec<Meeting>) -> Result<Self> {
        if let Some(e) = edges.iter().find(|e| e.max_id() as usize > vertex_count) {
            return Err(Error::InvalidInstance(format!("edge {e} uses an id above {vertex_count}")));
        }
        let edges: BTreeSet<Meeting> = edges.into_iter().collect();
        Ok(GroupHypergraph { vertex_count, edges: edges.into_iter().collect() })
    }

    pub fn from_lists(vertex_count: usize, lists: &[&[CharId]]) -> Result<Self> {
        let edges = lists.iter().map(|l| Meeting::new(l.to_vec())).collect::<Result<_>>()?;
        GroupHypergraph::new(vertex_count, edges)
    }

    pub(crate) fn from_sorted_unchecked(vertex_count: usize, edges: Vec<Meeting>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        GroupHypergraph { vertex_count, edges }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Distinct edges in ascending lexicographic order.
    pub fn edges(&self) -> &[Meeting] {
        &self.edges
    }

    pub fn rank(&self) -> usize {
        self.edges.iter().map(Meeting::len).max().unwrap_or(0)
    }

    /// The hypergraph without the given edges.
    pub fn without(&self, removed: &[Meeting]) -> GroupHypergraph {
        let gone: BTreeSet<&Meeting> = removed.iter().collect();
        GroupHypergraph {
            vertex_count: self.vertex_count,
            edges: self.edges.iter().filter(|e| !gone.contains(e)).cloned().collect(),
        }
    }
}

pub fn build_group_hypergraph(inst: &StorylineInstance) -> GroupHypergraph {
    let edges: BTreeSet<Meeting> = inst.meetings.iter().cloned().collect();
    GroupHypergraph { vertex_count: inst.k, edges: edges.into_iter().collect() }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(v: &[CharId]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    fn bc(a: usize, b: usize, c: usize) -> BlockCrossing {
        BlockCrossing::new(a, b, c).unwrap()
    }

    #[test]
    fn block_exchange_examples() {
        assert_eq!(perm(&[1, 2, 3, 4, 5]).apply(bc(1, 2, 4)).unwrap(), perm(&[3, 4, 1, 2, 5]));
        assert_eq!(perm(&[1, 2, 3]).apply(bc(2, 2, 3)).unwrap(), perm(&[1, 3, 2]));
        assert_eq!(
            Permutation::identity(8).apply(bc(2, 4, 7)).unwrap(),
            perm(&[1, 5, 6, 7, 2, 3, 4, 8])
        );
    }

    #[test]
    fn invalid_triples_rejected() {
        assert!(BlockCrossing::new(2, 1, 3).is_err());
        assert!(BlockCrossing::new(1, 2, 2).is_err());
        assert!(BlockCrossing::new(0, 1, 2).is_err());
        assert!(Permutation::identity(3).apply(bc(1, 2, 4)).is_err());
    }

    #[test]
    fn enumeration() {
        assert_eq!(enumerate_block_crossings(2).unwrap(), vec![bc(1, 1, 2)]);
        assert_eq!(
            enumerate_block_crossings(3).unwrap(),
            vec![bc(1, 1, 2), bc(1, 1, 3), bc(1, 2, 3), bc(2, 2, 3)]
        );
        assert_eq!(enumerate_block_crossings(4).unwrap().len(), 10);
        assert!(enumerate_block_crossings(1).is_err());
    }

    #[test]
    fn support_examples() {
        let p = Permutation::identity(4);
        assert!(p.supports(&Meeting::new(vec![2, 3]).unwrap()));
        assert!(!p.supports(&Meeting::new(vec![1, 3]).unwrap()));
        assert!(perm(&[1, 5, 6, 3, 4, 8, 7, 2]).supports(&Meeting::new(vec![8, 7]).unwrap()));
    }

    #[test]
    fn meetings_are_sets() {
        assert_eq!(Meeting::new(vec![2, 1]).unwrap(), Meeting::new(vec![1, 2]).unwrap());
        assert!(Meeting::new(vec![1, 1]).is_err());
        assert!(Meeting::new(vec![1]).is_err());
    }

    #[test]
    fn normalization() {
        let inst = StorylineInstance::from_lists(3, &[&[1, 2], &[1, 2], &[2, 3]]).unwrap();
        assert_eq!(normalize_instance(&inst).meetings.len(), 2);
        let inst = StorylineInstance::from_lists(3, &[&[1, 2], &[2, 1]]).unwrap();
        assert_eq!(normalize_instance(&inst).meetings.len(), 1);
        let empty = StorylineInstance::new(3, vec![]).unwrap();
        assert_eq!(normalize_instance(&empty), empty);
    }

    #[test]
    fn hypergraph_dedup() {
        let inst = StorylineInstance::from_lists(3, &[&[1, 2], &[1, 2], &[2, 3]]).unwrap();
        let h = build_group_hypergraph(&inst);
        assert_eq!(h.edges().len(), 2);
        assert_eq!(h.rank(), 2);
        let inst = StorylineInstance::from_lists(3, &[&[1, 2, 3]]).unwrap();
        assert_eq!(build_group_hypergraph(&inst).rank(), 3);
    }

    #[test]
    fn instance_ids_checked() {
        assert!(StorylineInstance::from_lists(3, &[&[1, 4]]).is_err());
        assert!(StorylineInstance::new(0, vec![]).is_err());
    }

    #[test]
    fn validation_reports_first_violation() {
        let inst = StorylineInstance::from_lists(4, &[&[1, 2], &[1, 3], &[3, 4]]).unwrap();
        let sol = Solution::crossing_free(Permutation::identity(4), 3);
        assert_eq!(validate_solution(&inst, &sol), Err(Error::UnsupportedMeeting { index: 2 }));
        let mut sol = sol;
        sol.blocks[1].push(bc(2, 2, 3));
        assert_eq!(validate_solution(&inst, &sol), Err(Error::UnsupportedMeeting { index: 3 }));
        sol.blocks.pop();
        assert!(matches!(validate_solution(&inst, &sol), Err(Error::WrongBlockCount { .. })));
    }

    #[test]
    fn serde_shapes() {
        let inst = StorylineInstance::from_lists(3, &[&[2, 1]]).unwrap();
        assert_eq!(serde_json::to_string(&inst).unwrap(), r#"{"k":3,"meetings":[[1,2]]}"#);
        let sol = Solution { start: Permutation::identity(3), blocks: vec![vec![bc(1, 1, 2)]] };
        assert_eq!(serde_json::to_string(&sol).unwrap(), r#"{"start":[1,2,3],"blocks":[[[1,1,2]]]}"#);
        assert!(serde_json::from_str::<StorylineInstance>(r#"{"k":2,"meetings":[[1,3]]}"#).is_err());
        assert!(serde_json::from_str::<Permutation>("[1,1]").is_err());
        assert!(serde_json::from_str::<BlockCrossing>("[2,1,3]").is_err());
    }
}
