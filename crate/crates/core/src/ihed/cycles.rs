use std::collections::VecDeque;

use crate::model::{CharId, GroupHypergraph, Meeting};

/// A hypergraph cycle: `edges[i]` meets the cycle vertices exactly in
/// `vertices[i]` and `vertices[(i + 1) % len]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cycle {
    pub edges: Vec<Meeting>,
    pub vertices: Vec<CharId>,
}

impl Cycle {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// Edge list with alive flags and a vertex incidence index.
pub(crate) struct EdgeSet<'a> {
    pub edges: &'a [Meeting],
    pub alive: Vec<bool>,
    pub incident: Vec<Vec<usize>>,
}

impl<'a> EdgeSet<'a> {
    pub fn new(vertex_count: usize, edges: &'a [Meeting]) -> Self {
        let mut incident = vec![Vec::new(); vertex_count + 1];
        for (i, e) in edges.iter().enumerate() {
            for &v in e.members() {
                incident[v as usize].push(i);
            }
        }
        EdgeSet { edges, alive: vec![true; edges.len()], incident }
    }

    pub fn remaining(&self) -> Vec<Meeting> {
        self.edges.iter().zip(&self.alive).filter(|(_, &a)| a).map(|(e, _)| e.clone()).collect()
    }

    /// Shortest cycle through edge `ei` that meets it in the pair `(v1, v2)`.
    ///
    /// Breadth-first search from `v1` to `v2` avoiding the other members of the
    /// edge and every edge containing both ends. A shortest such path has no
    /// chords, so together with the edge it restricts to a proper cycle.
    pub fn cycle_through(&self, ei: usize, v1: CharId, v2: CharId, max_path: usize) -> Option<(Vec<usize>, Vec<CharId>)> {
        let e = &self.edges[ei];
        let n = self.incident.len();
        let mut dist = vec![usize::MAX; n];
        let mut parent: Vec<(CharId, usize)> = vec![(0, usize::MAX); n];
        for &b in e.members() {
            if b != v1 && b != v2 {
                dist[b as usize] = 0;
            }
        }
        dist[v1 as usize] = 0;
        let mut queue = VecDeque::from([v1]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u as usize];
            if du >= max_path {
                continue;
            }
            for &fi in &self.incident[u as usize] {
                if fi == ei || !self.alive[fi] {
                    continue;
                }
                let f = &self.edges[fi];
                if f.contains(v1) && f.contains(v2) {
                    continue;
                }
                for &w in f.members() {
                    if dist[w as usize] != usize::MAX {
                        continue;
                    }
                    dist[w as usize] = du + 1;
                    parent[w as usize] = (u, fi);
                    if w == v2 {
                        let mut verts = vec![v2];
                        let mut path_edges = Vec::new();
                        let mut cur = v2;
                        while cur != v1 {
                            let (p, pe) = parent[cur as usize];
                            path_edges.push(pe);
                            verts.push(p);
                            cur = p;
                        }
                        verts.reverse();
                        path_edges.reverse();
                        path_edges.push(ei);
                        return Some((path_edges, verts));
                    }
                    queue.push_back(w);
                }
            }
        }
        None
    }

    fn first_cycle_through(&self, ei: usize, max_path: usize) -> Option<(Vec<usize>, Vec<CharId>)> {
        let m = self.edges[ei].members();
        for i in 0..m.len() {
            for j in i + 1..m.len() {
                if let Some(c) = self.cycle_through(ei, m[i], m[j], max_path) {
                    return Some(c);
                }
            }
        }
        None
    }

    /// Removes every cycle of at most `max_len` edges; one pass over the edges
    /// suffices because deleting edges never creates a cycle.
    pub fn remove_short_cycles(&mut self, max_len: usize) -> Vec<Cycle> {
        let mut found = Vec::new();
        for ei in 0..self.edges.len() {
            if !self.alive[ei] {
                continue;
            }
            if let Some((es, vs)) = self.first_cycle_through(ei, max_len.saturating_sub(1)) {
                for &x in &es {
                    self.alive[x] = false;
                }
                found.push(Cycle { edges: es.iter().map(|&x| self.edges[x].clone()).collect(), vertices: vs });
            }
        }
        found
    }

    pub fn find_cycle(&self) -> Option<Cycle> {
        (0..self.edges.len()).filter(|&ei| self.alive[ei]).find_map(|ei| {
            self.first_cycle_through(ei, usize::MAX)
                .map(|(es, vs)| Cycle { edges: es.iter().map(|&x| self.edges[x].clone()).collect(), vertices: vs })
        })
    }
}

/// Removes all cycles of length 3 up to `rank + 1`, returning the remainder
/// and the removed edges.
pub fn remove_short_cycles(h: &GroupHypergraph) -> (GroupHypergraph, Vec<Meeting>) {
    let mut set = EdgeSet::new(h.vertex_count(), h.edges());
    let cycles = set.remove_short_cycles(h.rank() + 1);
    let mut removed: Vec<Meeting> = cycles.into_iter().flat_map(|c| c.edges).collect();
    removed.sort();
    (GroupHypergraph::from_sorted_unchecked(h.vertex_count(), set.remaining()), removed)
}

/// Any cycle of length at least 3, if one exists.
pub fn find_cycle(h: &GroupHypergraph) -> Option<Cycle> {
    EdgeSet::new(h.vertex_count(), h.edges()).find_cycle()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(k: usize, lists: &[&[CharId]]) -> GroupHypergraph {
        GroupHypergraph::from_lists(k, lists).unwrap()
    }

    fn assert_proper(c: &Cycle) {
        let l = c.len();
        assert!(l >= 3);
        for (i, e) in c.edges.iter().enumerate() {
            let inside: Vec<CharId> = c.vertices.iter().copied().filter(|&v| e.contains(v)).collect();
            let mut expect = vec![c.vertices[i], c.vertices[(i + 1) % l]];
            expect.sort_unstable();
            let mut inside = inside;
            inside.sort_unstable();
            assert_eq!(inside, expect);
        }
    }

    #[test]
    fn short_cycle_examples() {
        let (rest, removed) = remove_short_cycles(&graph(3, &[&[1, 2], &[2, 3], &[1, 3]]));
        assert_eq!(removed.len(), 3);
        assert!(rest.edges().is_empty());

        let (_, removed) = remove_short_cycles(&graph(4, &[&[1, 2], &[2, 3], &[3, 4]]));
        assert!(removed.is_empty());

        let (_, removed) = remove_short_cycles(&graph(4, &[&[1, 2, 3], &[3, 4], &[1, 4]]));
        assert_eq!(removed.len(), 3);

        let c6 = graph(6, &[&[1, 2], &[2, 3], &[3, 4], &[4, 5], &[5, 6], &[1, 6]]);
        assert!(remove_short_cycles(&c6).1.is_empty());
        let c = find_cycle(&c6).unwrap();
        assert_eq!(c.len(), 6);
        assert_proper(&c);
    }

    #[test]
    fn cycles_are_chordless() {
        let h = graph(6, &[&[1, 2, 3], &[3, 4], &[4, 5], &[5, 6], &[1, 6], &[2, 5]]);
        let c = find_cycle(&h).unwrap();
        assert_proper(&c);
    }
}
