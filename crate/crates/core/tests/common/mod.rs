//! Test oracles written without the library's search machinery.
#![allow(dead_code)]

use std::collections::{HashMap, VecDeque};

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use slbc::{CharId, GroupHypergraph, Meeting, StorylineInstance};

pub fn contiguous(order: &[CharId], group: &[CharId]) -> bool {
    let pos: Vec<usize> = group.iter().map(|g| order.iter().position(|o| o == g).unwrap()).collect();
    pos.iter().max().unwrap() - pos.iter().min().unwrap() + 1 == group.len()
}

/// Exchange of blocks `a..=b` and `b+1..=c` (1-based), spelled out.
pub fn exchange(order: &[CharId], a: usize, b: usize, c: usize) -> Vec<CharId> {
    let mut out = order[..a - 1].to_vec();
    out.extend_from_slice(&order[b..c]);
    out.extend_from_slice(&order[a - 1..b]);
    out.extend_from_slice(&order[c..]);
    out
}

pub fn all_triples(k: usize) -> Vec<(usize, usize, usize)> {
    let mut v = Vec::new();
    for a in 1..=k {
        for b in a..=k {
            for c in b + 1..=k {
                v.push((a, b, c));
            }
        }
    }
    v
}

pub fn all_perms(k: usize) -> Vec<Vec<CharId>> {
    fn rec(left: &mut Vec<CharId>, cur: &mut Vec<CharId>, out: &mut Vec<Vec<CharId>>) {
        if left.is_empty() {
            out.push(cur.clone());
            return;
        }
        for i in 0..left.len() {
            let x = left.remove(i);
            cur.push(x);
            rec(left, cur, out);
            cur.pop();
            left.insert(i, x);
        }
    }
    let mut out = Vec::new();
    rec(&mut (1..=k as CharId).collect(), &mut Vec::new(), &mut out);
    out
}

/// Fewest crossings by 0-1 breadth-first search over (order, meetings done).
///
/// A crossing costs 1 and keeps the count; holding a meeting costs 0 and
/// needs the order to support it. No shortcut of any kind is taken.
pub fn brute_optimum(inst: &StorylineInstance, start: Option<&[CharId]>) -> usize {
    let n = inst.n();
    let triples = all_triples(inst.k);
    let mut dist: HashMap<(Vec<CharId>, usize), usize> = HashMap::new();
    let mut dq: VecDeque<(Vec<CharId>, usize)> = VecDeque::new();
    let starts = match start {
        Some(s) => vec![s.to_vec()],
        None => all_perms(inst.k),
    };
    for s in starts {
        dist.insert((s.clone(), 0), 0);
        dq.push_back((s, 0));
    }
    while let Some((order, l)) = dq.pop_front() {
        let d = dist[&(order.clone(), l)];
        if l == n {
            return d;
        }
        if contiguous(&order, inst.meetings[l].members()) {
            let key = (order.clone(), l + 1);
            if dist.get(&key).map_or(true, |&x| x > d) {
                dist.insert(key.clone(), d);
                dq.push_front(key);
            }
        }
        for &(a, b, c) in &triples {
            let key = (exchange(&order, a, b, c), l);
            if dist.get(&key).map_or(true, |&x| x > d + 1) {
                dist.insert(key.clone(), d + 1);
                dq.push_back(key);
            }
        }
    }
    unreachable!("every instance is solvable")
}

pub fn random_group(rng: &mut ChaCha8Rng, k: usize, size: usize) -> Meeting {
    let mut ids: Vec<CharId> = (1..=k as CharId).collect();
    ids.shuffle(rng);
    ids.truncate(size);
    Meeting::new(ids).unwrap()
}

/// Meetings of size 2..=max_size, consecutive ones distinct. Needs k >= 3.
pub fn random_instance(rng: &mut ChaCha8Rng, k: usize, n: usize, max_size: usize) -> StorylineInstance {
    let mut meetings: Vec<Meeting> = Vec::new();
    while meetings.len() < n {
        let size = rng.gen_range(2..=max_size.min(k));
        let m = random_group(rng, k, size);
        if meetings.last() != Some(&m) {
            meetings.push(m);
        }
    }
    StorylineInstance::new(k, meetings).unwrap()
}

/// `n` distinct pairs in random order (so no group repeats).
pub fn distinct_pairs(rng: &mut ChaCha8Rng, k: usize, n: usize) -> StorylineInstance {
    let mut all: Vec<Meeting> = Vec::new();
    for a in 1..=k as CharId {
        for b in a + 1..=k as CharId {
            all.push(Meeting::new(vec![a, b]).unwrap());
        }
    }
    all.shuffle(rng);
    all.truncate(n);
    StorylineInstance::new(k, all).unwrap()
}

/// Up to `m` random edges of size 2..=d, at least one of size exactly d.
pub fn random_hypergraph(rng: &mut ChaCha8Rng, k: usize, m: usize, d: usize) -> GroupHypergraph {
    let mut edges = vec![random_group(rng, k, d)];
    for _ in 1..m {
        let size = rng.gen_range(2..=d);
        edges.push(random_group(rng, k, size));
    }
    GroupHypergraph::new(k, edges).unwrap()
}

/// Runs of a hidden cycle order plus a closing ring, so cycles survive the
/// small-obstruction phase often.
pub fn random_cyclic_hypergraph(rng: &mut ChaCha8Rng, k: usize, m: usize, d: usize) -> GroupHypergraph {
    let mut ring: Vec<CharId> = (1..=k as CharId).collect();
    ring.shuffle(rng);
    let mut edges: Vec<Meeting> = (0..k).map(|i| Meeting::new(vec![ring[i], ring[(i + 1) % k]]).unwrap()).collect();
    while edges.len() < m {
        let size = rng.gen_range(2..=d);
        let s = rng.gen_range(0..k);
        edges.push(Meeting::new((0..size).map(|j| ring[(s + j) % k]).collect()).unwrap());
    }
    GroupHypergraph::new(k, edges).unwrap()
}
