//! Lexicographic ranking of permutations of `1..=k` (factorial number system).

use crate::model::CharId;

pub const MAX_RANK_K: usize = 20;

pub fn factorial(k: usize) -> u128 {
    (1..=k as u128).fold(1u128, |acc, x| acc.saturating_mul(x))
}

#[derive(Clone, Debug)]
pub struct Ranker {
    k: usize,
    fact: Vec<u64>,
}

impl Ranker {
    /// Panics if `k > MAX_RANK_K`; callers guard first.
    pub fn new(k: usize) -> Self {
        assert!(k <= MAX_RANK_K);
        let mut fact = vec![1u64; k + 1];
        for i in 1..=k {
            fact[i] = fact[i - 1] * i as u64;
        }
        Ranker { k, fact }
    }

    pub fn count(&self) -> u64 {
        self.fact[self.k]
    }

    pub fn rank(&self, order: &[CharId]) -> u64 {
        let mut used: u64 = 0;
        let mut r = 0u64;
        for (i, &id) in order.iter().enumerate() {
            let below = (1u64 << (id - 1)) - 1;
            let smaller_free = (id as u64 - 1) - (used & below).count_ones() as u64;
            r += smaller_free * self.fact[self.k - 1 - i];
            used |= 1 << (id - 1);
        }
        r
    }

    pub fn unrank_into(&self, mut r: u64, out: &mut Vec<CharId>) {
        out.clear();
        let mut free: Vec<CharId> = (1..=self.k as CharId).collect();
        for i in 0..self.k {
            let f = self.fact[self.k - 1 - i];
            let idx = (r / f) as usize;
            r %= f;
            out.push(free.remove(idx));
        }
    }

    pub fn unrank(&self, r: u64) -> Vec<CharId> {
        let mut out = Vec::with_capacity(self.k);
        self.unrank_into(r, &mut out);
        out
    }
}
