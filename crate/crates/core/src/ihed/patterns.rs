use std::fmt;

use serde::{Deserialize, Serialize};

use super::cycles::EdgeSet;
use crate::model::{CharId, GroupHypergraph, Meeting};

/// Kinds of minimal non-interval hypergraphs.
///
/// With a path `p0, p1, ..` of pair edges, `M(k)` adds a large edge holding
/// `k` consecutive inner path vertices plus one private vertex (`M(1)` is the
/// claw), and `F(k)` adds two large edges over the path ends that share a
/// private vertex. `O1` is a large edge picking one end from each of three
/// disjoint pairs; `O2` is a 4-edge with pairs on both halves plus an edge
/// joining its outer vertices to a new one. `C(k)` is a cycle with `k` edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PatternKind {
    O1,
    O2,
    F(usize),
    M(usize),
    C(usize),
}

impl fmt::Display for PatternKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternKind::O1 => write!(f, "O1"),
            PatternKind::O2 => write!(f, "O2"),
            PatternKind::F(k) => write!(f, "F{k}"),
            PatternKind::M(k) => write!(f, "M{k}"),
            PatternKind::C(k) => write!(f, "C{k}"),
        }
    }
}

/// Edges and vertices whose restriction forms the named pattern.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForbiddenOccurrence {
    pub kind: PatternKind,
    pub edges: Vec<Meeting>,
    pub witnesses: Vec<CharId>,
}

#[derive(Clone, Debug)]
pub(crate) struct Pattern {
    pub kind: PatternKind,
    pub vertex_count: usize,
    /// Pattern edges over local vertices; edge 0 is the largest.
    pub edges: Vec<Vec<usize>>,
}

fn path_pairs(from: usize, to: usize) -> impl Iterator<Item = Vec<usize>> {
    (from..to).map(|i| vec![i, i + 1])
}

pub(crate) fn pattern_m(k: usize) -> Pattern {
    let x = k + 2;
    let mut large: Vec<usize> = (1..=k).collect();
    large.push(x);
    let edges = std::iter::once(large).chain(path_pairs(0, k + 1)).collect();
    Pattern { kind: PatternKind::M(k), vertex_count: k + 3, edges }
}

pub(crate) fn pattern_f(k: usize) -> Pattern {
    let x = k + 2;
    let mut a: Vec<usize> = (0..=k).collect();
    a.push(x);
    let mut b: Vec<usize> = (1..=k + 1).collect();
    b.push(x);
    let edges = [a, b].into_iter().chain(path_pairs(0, k + 1)).collect();
    Pattern { kind: PatternKind::F(k), vertex_count: k + 3, edges }
}

pub(crate) fn pattern_o1() -> Pattern {
    Pattern { kind: PatternKind::O1, vertex_count: 6, edges: vec![vec![1, 3, 5], vec![0, 1], vec![2, 3], vec![4, 5]] }
}

pub(crate) fn pattern_o2() -> Pattern {
    Pattern { kind: PatternKind::O2, vertex_count: 5, edges: vec![vec![0, 1, 2, 3], vec![0, 1], vec![2, 3], vec![0, 3, 4]] }
}

/// All patterns whose largest edge has at most `rank` vertices, fewest edges first.
pub(crate) fn patterns_for_rank(rank: usize) -> Vec<Pattern> {
    let mut out: Vec<Pattern> = Vec::new();
    for k in 1..rank {
        out.push(pattern_m(k));
    }
    for k in 1..rank.saturating_sub(1) {
        out.push(pattern_f(k));
    }
    if rank >= 3 {
        out.push(pattern_o1());
    }
    if rank >= 4 {
        out.push(pattern_o2());
    }
    out.sort_by_key(|p| p.edges.len());
    out
}

struct Matcher<'s, 'a> {
    set: &'s EdgeSet<'a>,
    pat: &'s Pattern,
    member: Vec<Vec<bool>>,
    image: Vec<Option<CharId>>,
    hosts: Vec<usize>,
}

impl Matcher<'_, '_> {
    fn consistent_edge(&self, j: usize, f: &Meeting) -> bool {
        self.image
            .iter()
            .enumerate()
            .all(|(u, img)| img.map_or(true, |w| self.member[j][u] == f.contains(w)))
    }

    fn consistent_vertex(&self, u: usize, w: CharId) -> bool {
        !self.image.contains(&Some(w))
            && self.hosts.iter().enumerate().all(|(l, &h)| self.member[l][u] == self.set.edges[h].contains(w))
    }

    fn place_edge(&mut self, j: usize) -> bool {
        if j == self.pat.edges.len() {
            return true;
        }
        let anchor = self.pat.edges[j].iter().find_map(|&u| self.image[u]);
        let candidates: Vec<usize> = match anchor {
            Some(w) => self.set.incident[w as usize].clone(),
            None => (0..self.set.edges.len()).collect(),
        };
        let need = self.pat.edges[j].len();
        for fi in candidates {
            if !self.set.alive[fi] || self.hosts.contains(&fi) {
                continue;
            }
            let f = &self.set.edges[fi];
            if f.len() < need || !self.consistent_edge(j, f) {
                continue;
            }
            self.hosts.push(fi);
            let open: Vec<usize> = self.pat.edges[j].iter().copied().filter(|&u| self.image[u].is_none()).collect();
            if self.place_vertices(j, &open, 0) {
                return true;
            }
            self.hosts.pop();
        }
        false
    }

    fn place_vertices(&mut self, j: usize, open: &[usize], i: usize) -> bool {
        if i == open.len() {
            return self.place_edge(j + 1);
        }
        let u = open[i];
        let host = self.hosts[j];
        for &w in self.set.edges[host].members() {
            if !self.consistent_vertex(u, w) {
                continue;
            }
            self.image[u] = Some(w);
            if self.place_vertices(j, open, i + 1) {
                return true;
            }
            self.image[u] = None;
        }
        false
    }
}

pub(crate) fn match_pattern(set: &EdgeSet<'_>, pat: &Pattern) -> Option<ForbiddenOccurrence> {
    let member = pat
        .edges
        .iter()
        .map(|e| (0..pat.vertex_count).map(|u| e.contains(&u)).collect())
        .collect();
    let mut m = Matcher { set, pat, member, image: vec![None; pat.vertex_count], hosts: Vec::new() };
    m.place_edge(0).then(|| ForbiddenOccurrence {
        kind: pat.kind,
        edges: m.hosts.iter().map(|&h| set.edges[h].clone()).collect(),
        witnesses: m.image.iter().map(|w| w.expect("every pattern vertex lies in an edge")).collect(),
    })
}

pub(crate) fn find_in(set: &EdgeSet<'_>, patterns: &[Pattern]) -> Option<ForbiddenOccurrence> {
    patterns.iter().find_map(|p| match_pattern(set, p))
}

/// An occurrence of one of the non-cycle minimal non-interval patterns.
///
/// Expects a hypergraph without short cycles; cycles themselves are not reported.
pub fn find_forbidden(h: &GroupHypergraph) -> Option<ForbiddenOccurrence> {
    let set = EdgeSet::new(h.vertex_count(), h.edges());
    find_in(&set, &patterns_for_rank(h.rank()))
}
