//! Instance generators.
//!
//! Randomness comes from `ChaCha8Rng` (the ChaCha stream cipher with 8 rounds,
//! `rand_chacha` crate) seeded with `seed_from_u64`; integer ranges use
//! `rand` 0.8's `gen_range`, whose output is value-stable across platforms.

use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::rank::Ranker;
use crate::model::{enumerate_block_crossings, CharId, Meeting, Permutation, StorylineInstance};

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `n` uniform unordered pairs over `1..=k`, no two consecutive pairs equal.
pub fn gen_random_2sbcm(k: usize, n: usize, seed: u64) -> Result<StorylineInstance> {
    if n >= 1 && k < 2 {
        return Err(Error::Guard { what: "random pair meetings need k >= 2; k", limit: 2, got: k });
    }
    if n >= 2 && k < 3 {
        return Err(Error::Guard { what: "distinct consecutive pairs need k >= 3; k", limit: 3, got: k });
    }
    let mut rng = rng_from_seed(seed);
    let mut meetings: Vec<Meeting> = Vec::with_capacity(n);
    while meetings.len() < n {
        let a = rng.gen_range(1..=k as CharId);
        let mut b = rng.gen_range(1..k as CharId);
        if b >= a {
            b += 1;
        }
        let m = Meeting::new(vec![a, b])?;
        if meetings.last() != Some(&m) {
            meetings.push(m);
        }
    }
    StorylineInstance::new(k, meetings)
}

/// Uniform random permutation of `1..=k`.
pub fn random_permutation(k: usize, rng: &mut impl Rng) -> Permutation {
    let mut v: Vec<CharId> = (1..=k as CharId).collect();
    v.shuffle(rng);
    Permutation::from_vec_unchecked(v)
}

/// Storyline instance whose optimum equals the transposition distance of `pi`.
///
/// With `l = pi.len()`, original characters keep ids `1..=l` and the `2l`
/// padding characters get ids `l+1..=3l`. The padded orders are
/// `<l+1, .., 3l, pi_1, .., pi_l>` and `<l+1, .., 3l, 1, .., l>`; the meetings
/// are `l+1` copies of the neighbour pairs of the first, then `l+1` copies of
/// the neighbour pairs of the second.
pub fn gen_sbt_reduction(pi: &Permutation) -> Result<StorylineInstance> {
    let l = pi.len();
    if l == 0 {
        return Err(Error::InvalidPermutation("empty permutation".into()));
    }
    let padding: Vec<CharId> = (l as CharId + 1..=3 * l as CharId).collect();
    let shuffled: Vec<CharId> = padding.iter().chain(pi.as_slice()).copied().collect();
    let sorted: Vec<CharId> = padding.iter().copied().chain(1..=l as CharId).collect();
    let pairs = |order: &[CharId]| -> Result<Vec<Meeting>> {
        order.windows(2).map(|w| Meeting::new(w.to_vec())).collect()
    };
    let first = pairs(&shuffled)?;
    let second = pairs(&sorted)?;
    let mut meetings = Vec::with_capacity(2 * (l + 1) * first.len());
    for _ in 0..=l {
        meetings.extend(first.iter().cloned());
    }
    for _ in 0..=l {
        meetings.extend(second.iter().cloned());
    }
    StorylineInstance::new(3 * l, meetings)
}

pub const SBT_BRUTE_MAX_LEN: usize = 7;

/// Fewest block crossings sorting `pi` to the identity, by breadth-first search.
pub fn sbt_distance_brute(pi: &Permutation) -> Result<usize> {
    let k = pi.len();
    if k > SBT_BRUTE_MAX_LEN {
        return Err(Error::Guard { what: "permutation length", limit: SBT_BRUTE_MAX_LEN, got: k });
    }
    if k < 2 {
        return Ok(0);
    }
    let ranker = Ranker::new(k);
    let crossings = enumerate_block_crossings(k)?;
    let mut dist = vec![usize::MAX; ranker.count() as usize];
    let source = ranker.rank(pi.as_slice());
    let target = 0;
    dist[source as usize] = 0;
    let mut queue = VecDeque::from([source]);
    let mut buf = Vec::with_capacity(k);
    while let Some(r) = queue.pop_front() {
        if r == target {
            return Ok(dist[r as usize]);
        }
        let order = ranker.unrank(r);
        for bc in &crossings {
            buf.clear();
            buf.extend_from_slice(&order);
            bc.apply_to_slice(&mut buf);
            let r2 = ranker.rank(&buf);
            if dist[r2 as usize] == usize::MAX {
                dist[r2 as usize] = dist[r as usize] + 1;
                queue.push_back(r2);
            }
        }
    }
    Err(Error::Contract("identity unreachable".into()))
}
