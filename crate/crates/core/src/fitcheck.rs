//! Incremental "does the last meeting fit" tracker.
//!
//! The tracker remembers the most recently checked meeting as a per-character
//! flag and counts adjacent position pairs whose characters are both flagged.
//! A meeting of size `m` is contiguous exactly when that count is `m - 1`.
//! A block crossing only changes the three adjacencies at its boundaries, so
//! the count is repaired by looking at those six pairs (three before, three
//! after).
//!
//! Neighbour lookups go through a position index; the crossing itself rewrites
//! the affected segment of the order. The `steps` counter measures adjacency
//! and membership work only.

use crate::error::{Error, Result};
use crate::model::{BlockCrossing, CharId, Meeting, Permutation};

#[derive(Clone, Debug)]
pub struct FitTracker {
    order: Vec<CharId>,
    pos: Vec<u32>,
    flagged: Vec<bool>,
    tracked: Vec<CharId>,
    has_tracked: bool,
    pairs: usize,
    steps: u64,
    last_touched: usize,
}

impl FitTracker {
    pub fn new(pi: &Permutation) -> Self {
        let order = pi.as_slice().to_vec();
        let k = order.len();
        let mut pos = vec![u32::MAX; k + 1];
        for (p, &id) in order.iter().enumerate() {
            pos[id as usize] = p as u32;
        }
        FitTracker {
            order,
            pos,
            flagged: vec![false; k + 1],
            tracked: Vec::new(),
            has_tracked: false,
            pairs: 0,
            steps: 0,
            last_touched: 0,
        }
    }

    pub fn k(&self) -> usize {
        self.order.len()
    }

    /// Makes `m` the tracked meeting and reports whether it is contiguous.
    pub fn check(&mut self, m: &Meeting) -> bool {
        for &id in &self.tracked {
            self.flagged[id as usize] = false;
        }
        self.steps += self.tracked.len() as u64;
        self.tracked.clear();
        self.tracked.extend_from_slice(m.members());
        for &id in m.members() {
            self.flagged[id as usize] = true;
        }
        let k = self.order.len();
        let mut pairs = 0;
        for &id in m.members() {
            let p = self.pos[id as usize] as usize;
            if p + 1 < k && self.flagged[self.order[p + 1] as usize] {
                pairs += 1;
            }
        }
        self.steps += 2 * m.len() as u64;
        self.pairs = pairs;
        self.has_tracked = true;
        self.fits()
    }

    /// Applies `bc` and reports whether the tracked meeting fits afterwards.
    pub fn block_move(&mut self, bc: BlockCrossing) -> Result<bool> {
        if !self.has_tracked {
            return Err(Error::NoTrackedMeeting);
        }
        let k = self.order.len();
        bc.check(k)?;
        let (a0, c0) = (bc.a - 1, bc.c - 1);
        let mid_old = bc.b - 1;
        let mid_new = a0 + (bc.c - bc.b) - 1;
        let mut touched = 0;

        for left in [a0.checked_sub(1), Some(mid_old), Some(c0)].into_iter().flatten() {
            if left + 1 < k {
                touched += 1;
                if self.pair_flagged(left) {
                    self.pairs -= 1;
                }
            }
        }
        bc.apply_to_slice(&mut self.order);
        for p in a0..=c0 {
            self.pos[self.order[p] as usize] = p as u32;
        }
        for left in [a0.checked_sub(1), Some(mid_new), Some(c0)].into_iter().flatten() {
            if left + 1 < k {
                touched += 1;
                if self.pair_flagged(left) {
                    self.pairs += 1;
                }
            }
        }
        self.steps += touched as u64;
        self.last_touched = touched;
        Ok(self.fits())
    }

    fn pair_flagged(&self, left: usize) -> bool {
        self.flagged[self.order[left] as usize] && self.flagged[self.order[left + 1] as usize]
    }

    /// Fit status of the tracked meeting; false when nothing is tracked.
    pub fn fits(&self) -> bool {
        self.has_tracked && self.pairs + 1 == self.tracked.len()
    }

    /// Count of adjacent pairs inside the tracked meeting.
    pub fn inside_pairs(&self) -> usize {
        self.pairs
    }

    pub fn order(&self) -> &[CharId] {
        &self.order
    }

    pub fn permutation(&self) -> Permutation {
        Permutation::from_vec_unchecked(self.order.clone())
    }

    /// Adjacency and membership operations performed so far.
    pub fn steps(&self) -> u64 {
        self.steps
    }

    /// Boundary pairs examined by the most recent block move.
    pub fn last_touched(&self) -> usize {
        self.last_touched
    }

    /// Checks meetings `from, from+1, ...` and stops at the first that does not
    /// fit; returns the count of meetings supported from `from` on. The tracked
    /// meeting afterwards is the first unsupported one, if any.
    pub fn advance(&mut self, meetings: &[Meeting], from: usize) -> usize {
        let mut l = from;
        while l < meetings.len() && self.check(&meetings[l]) {
            l += 1;
        }
        l
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn meeting(v: &[CharId]) -> Meeting {
        Meeting::new(v.to_vec()).unwrap()
    }

    fn bc(a: usize, b: usize, c: usize) -> BlockCrossing {
        BlockCrossing::new(a, b, c).unwrap()
    }

    #[test]
    fn initial_adjacencies() {
        let mut t = FitTracker::new(&Permutation::identity(3));
        assert!(t.check(&meeting(&[1, 2, 3])));
        assert_eq!(t.inside_pairs(), 2);
        let mut t = FitTracker::new(&Permutation::new(vec![2, 1]).unwrap());
        assert!(t.check(&meeting(&[1, 2])));
        let mut t = FitTracker::new(&Permutation::identity(8));
        assert!(t.check(&meeting(&[1, 2, 3, 4, 5, 6, 7, 8])));
        assert_eq!(t.inside_pairs(), 7);
    }

    #[test]
    fn check_examples() {
        let mut t = FitTracker::new(&Permutation::identity(3));
        assert!(!t.check(&meeting(&[1, 3])));
        let mut t = FitTracker::new(&Permutation::new(vec![1, 5, 6, 3, 4, 8, 7, 2]).unwrap());
        assert!(t.check(&meeting(&[3, 4])));
    }

    #[test]
    fn move_examples() {
        let mut t = FitTracker::new(&Permutation::identity(3));
        assert!(!t.check(&meeting(&[1, 3])));
        assert!(t.block_move(bc(1, 1, 2)).unwrap());
        assert_eq!(t.order(), &[2, 1, 3]);

        let mut t = FitTracker::new(&Permutation::identity(4));
        assert!(!t.check(&meeting(&[1, 4])));
        assert!(t.block_move(bc(2, 3, 4)).unwrap());
        assert_eq!(t.order(), &[1, 4, 2, 3]);

        let mut t = FitTracker::new(&Permutation::identity(6));
        assert!(t.check(&meeting(&[1, 2])));
        assert!(t.block_move(bc(4, 4, 6)).unwrap());
        assert!(t.last_touched() <= 6);
    }

    #[test]
    fn move_before_check_is_an_error() {
        let mut t = FitTracker::new(&Permutation::identity(3));
        assert_eq!(t.block_move(bc(1, 1, 2)), Err(Error::NoTrackedMeeting));
    }
}
