//! Interval hypergraph recognition (consecutive-ones ordering) with a witness.
//!
//! Edges are grouped into overlap components (two edges overlap when they
//! intersect and neither contains the other). Inside one component the order
//! of vertex classes is forced up to reversal, so inserting the edges in
//! overlap-BFS order refines an ordered partition deterministically; any
//! insertion that cannot be placed proves there is no valid order. Distinct
//! components are either disjoint or one lies inside a single class of the
//! other, which gives a containment forest that is expanded recursively.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::model::{build_group_hypergraph, CharId, GroupHypergraph, Permutation, StorylineInstance};

const NONE: usize = usize::MAX;

/// A vertex order in which every edge is contiguous, if one exists.
pub fn interval_support(h: &GroupHypergraph) -> Option<Permutation> {
    let vertices: Vec<CharId> = (1..=h.vertex_count() as CharId).collect();
    let edges: Vec<&[CharId]> = h.edges().iter().map(|e| e.members()).collect();
    order_vertices(&vertices, &edges).map(Permutation::from_vec_unchecked)
}

/// A start permutation supporting every meeting, if one exists.
pub fn crossing_free(inst: &StorylineInstance) -> Option<Permutation> {
    interval_support(&build_group_hypergraph(inst))
}

/// Orders `vertices` so that every edge (a subset of `vertices`) is contiguous.
///
/// Vertices outside every edge come last in ascending order.
pub fn order_vertices(vertices: &[CharId], edges: &[&[CharId]]) -> Option<Vec<CharId>> {
    let mut sorted_vertices = vertices.to_vec();
    sorted_vertices.sort_unstable();
    let n = sorted_vertices.len();
    let local = |id: CharId| sorted_vertices.binary_search(&id).ok();

    let mut local_edges: Vec<Vec<usize>> = Vec::with_capacity(edges.len());
    for e in edges {
        let mut le = Vec::with_capacity(e.len());
        for &id in e.iter() {
            le.push(local(id)?);
        }
        le.sort_unstable();
        le.dedup();
        if le.len() >= 2 {
            local_edges.push(le);
        }
    }
    local_edges.sort();
    local_edges.dedup();

    let order = order_local(n, &local_edges)?;
    let out: Vec<CharId> = order.into_iter().map(|v| sorted_vertices[v]).collect();
    debug_assert!(edges.iter().all(|e| is_contiguous(&out, e)));
    Some(out)
}

pub(crate) fn is_contiguous(order: &[CharId], e: &[CharId]) -> bool {
    let mut lo = usize::MAX;
    let mut hi = 0;
    let mut found = 0;
    for (p, id) in order.iter().enumerate() {
        if e.contains(id) {
            lo = lo.min(p);
            hi = hi.max(p);
            found += 1;
        }
    }
    found == e.len() && (found == 0 || hi - lo + 1 == found)
}

struct Component {
    blocks: Vec<Vec<usize>>,
    union_size: usize,
    min_vertex: usize,
    edge_count: usize,
    /// children[b] = indices of components nested inside block b.
    children: Vec<Vec<usize>>,
}

fn order_local(n: usize, edges: &[Vec<usize>]) -> Option<Vec<usize>> {
    let m = edges.len();
    let mut member = vec![vec![false; n]; m];
    for (i, e) in edges.iter().enumerate() {
        for &v in e {
            member[i][v] = true;
        }
    }
    let overlaps = |i: usize, j: usize| {
        let inter = edges[i].iter().filter(|&&v| member[j][v]).count();
        inter > 0 && inter < edges[i].len() && inter < edges[j].len()
    };
    let mut adj = vec![Vec::new(); m];
    for i in 0..m {
        for j in i + 1..m {
            if overlaps(i, j) {
                adj[i].push(j);
                adj[j].push(i);
            }
        }
    }

    let mut comp_of = vec![NONE; m];
    let mut comps: Vec<Component> = Vec::new();
    for root in 0..m {
        if comp_of[root] != NONE {
            continue;
        }
        let id = comps.len();
        let mut bfs = Vec::new();
        let mut queue = VecDeque::from([root]);
        comp_of[root] = id;
        while let Some(x) = queue.pop_front() {
            bfs.push(x);
            for &y in &adj[x] {
                if comp_of[y] == NONE {
                    comp_of[y] = id;
                    queue.push_back(y);
                }
            }
        }
        let blocks = refine_component(n, edges, &bfs)?;
        let union_size = blocks.iter().map(Vec::len).sum();
        let min_vertex = blocks.iter().flatten().copied().min().unwrap_or(NONE);
        let children = vec![Vec::new(); blocks.len()];
        comps.push(Component { blocks, union_size, min_vertex, edge_count: bfs.len(), children });
    }

    // Nest components: a component hangs below the smallest one whose class contains it.
    let mut by_size: Vec<usize> = (0..comps.len()).collect();
    by_size.sort_by_key(|&c| (std::cmp::Reverse(comps[c].union_size), comps[c].edge_count, c));
    let mut block_maps: Vec<Vec<usize>> = Vec::with_capacity(comps.len());
    for c in &comps {
        let mut map = vec![NONE; n];
        for (b, blk) in c.blocks.iter().enumerate() {
            for &v in blk {
                map[v] = b;
            }
        }
        block_maps.push(map);
    }
    let mut has_parent = vec![false; comps.len()];
    for (rank, &c) in by_size.iter().enumerate() {
        let sample = comps[c].min_vertex;
        let mut best: Option<usize> = None;
        for &d in by_size[..rank].iter() {
            if block_maps[d][sample] == NONE {
                continue;
            }
            let better = match best {
                None => true,
                Some(b) => comps[d].union_size <= comps[b].union_size,
            };
            if better {
                best = Some(d);
            }
        }
        if let Some(d) = best {
            let blk = block_maps[d][sample];
            let inside = comps[c].blocks.iter().flatten().all(|&v| block_maps[d][v] == blk);
            if !inside {
                return None;
            }
            comps[d].children[blk].push(c);
            has_parent[c] = true;
        }
    }

    let mut covered = vec![false; n];
    for e in edges {
        for &v in e {
            covered[v] = true;
        }
    }
    let mut tops: Vec<usize> = (0..comps.len()).filter(|&c| !has_parent[c]).collect();
    tops.sort_by_key(|&c| comps[c].min_vertex);
    let mut order = Vec::with_capacity(n);
    for c in tops {
        order.extend(expand(&comps, c));
    }
    order.extend((0..n).filter(|&v| !covered[v]));

    let mut pos = vec![0; n];
    for (p, &v) in order.iter().enumerate() {
        pos[v] = p;
    }
    let ok = edges.iter().all(|e| {
        let lo = e.iter().map(|&v| pos[v]).min().unwrap();
        let hi = e.iter().map(|&v| pos[v]).max().unwrap();
        hi - lo + 1 == e.len()
    });
    ok.then_some(order)
}

fn expand(comps: &[Component], c: usize) -> Vec<usize> {
    let comp = &comps[c];
    let mut seq = Vec::with_capacity(comp.union_size);
    for (b, blk) in comp.blocks.iter().enumerate() {
        let mut nested = BTreeSet::new();
        let mut items: Vec<(usize, Vec<usize>)> = Vec::new();
        for &child in &comp.children[b] {
            let sub = expand(comps, child);
            nested.extend(sub.iter().copied());
            items.push((comps[child].min_vertex, sub));
        }
        for &v in blk {
            if !nested.contains(&v) {
                items.push((v, vec![v]));
            }
        }
        items.sort_by_key(|(key, _)| *key);
        for (_, sub) in items {
            seq.extend(sub);
        }
    }
    let mut rev = seq.clone();
    rev.reverse();
    seq.min(rev)
}

/// Ordered partition of one overlap component's vertices; `None` if impossible.
fn refine_component(n: usize, edges: &[Vec<usize>], bfs: &[usize]) -> Option<Vec<Vec<usize>>> {
    let mut blocks: Vec<Vec<usize>> = vec![edges[bfs[0]].clone()];
    let mut block_of = vec![NONE; n];
    for &v in &edges[bfs[0]] {
        block_of[v] = 0;
    }
    for &ei in &bfs[1..] {
        blocks = insert_edge(&blocks, &block_of, &edges[ei])?;
        block_of.iter_mut().for_each(|b| *b = NONE);
        for (b, blk) in blocks.iter().enumerate() {
            for &v in blk {
                block_of[v] = b;
            }
        }
    }
    Some(blocks)
}

#[derive(PartialEq, Eq, Clone, Copy)]
enum Side {
    Inside,
    Left,
    Right,
}

fn insert_edge(blocks: &[Vec<usize>], block_of: &[usize], e: &[usize]) -> Option<Vec<Vec<usize>>> {
    let t = blocks.len();
    let mut cnt = vec![0usize; t];
    let mut fresh = Vec::new();
    for &v in e {
        match block_of[v] {
            NONE => fresh.push(v),
            b => cnt[b] += 1,
        }
    }
    let hit: Vec<usize> = (0..t).filter(|&b| cnt[b] > 0).collect();
    let (&i, &j) = (hit.first()?, hit.last()?);
    if hit.len() != j - i + 1 {
        return None;
    }
    let full = |b: usize| cnt[b] == blocks[b].len();
    if (i + 1..j).any(|b| !full(b)) {
        return None;
    }
    let side = if fresh.is_empty() {
        Side::Inside
    } else if j == t - 1 && (i == j || full(j)) {
        Side::Right
    } else if i == 0 && (i == j || full(i)) {
        Side::Left
    } else {
        return None;
    };
    let in_e = |v: usize| e.contains(&v);

    let mut out = Vec::with_capacity(t + 3);
    if side == Side::Left {
        out.push(fresh.clone());
    }
    for (b, blk) in blocks.iter().enumerate() {
        if cnt[b] == 0 || full(b) {
            out.push(blk.clone());
            continue;
        }
        let (inner, outer): (Vec<usize>, Vec<usize>) = blk.iter().partition(|&&v| in_e(v));
        let inner_first = if i == j {
            match side {
                Side::Left => true,
                Side::Right => false,
                Side::Inside => return None,
            }
        } else {
            b == j
        };
        if inner_first {
            out.push(inner);
            out.push(outer);
        } else {
            out.push(outer);
            out.push(inner);
        }
    }
    if side == Side::Right {
        out.push(fresh);
    }
    Some(out)
}

/// Rank-2 special case: the edges must form vertex-disjoint paths.
///
/// Paths are listed by ascending smallest member, each walked from the end with
/// the smaller id; isolated vertices follow in ascending order.
pub fn path_collection_support(h: &GroupHypergraph) -> Result<Option<Permutation>> {
    if h.rank() > 2 {
        return Err(Error::Rank { rank: h.rank(), limit: 2 });
    }
    let pairs: Vec<(CharId, CharId)> =
        h.edges().iter().map(|e| (e.members()[0], e.members()[1])).collect();
    Ok(paths_order(h.vertex_count(), &pairs).map(Permutation::from_vec_unchecked))
}

pub(crate) fn paths_order(k: usize, pairs: &[(CharId, CharId)]) -> Option<Vec<CharId>> {
    let mut nbrs: BTreeMap<CharId, Vec<CharId>> = BTreeMap::new();
    for &(u, v) in pairs {
        nbrs.entry(u).or_default().push(v);
        nbrs.entry(v).or_default().push(u);
    }
    for list in nbrs.values_mut() {
        list.sort_unstable();
        list.dedup();
        if list.len() > 2 {
            return None;
        }
    }
    let mut seen = vec![false; k + 1];
    let mut paths: Vec<Vec<CharId>> = Vec::new();
    for (&v, list) in &nbrs {
        if seen[v as usize] || list.len() != 1 {
            continue;
        }
        let mut path = vec![v];
        seen[v as usize] = true;
        let (mut prev, mut cur) = (v, list[0]);
        loop {
            seen[cur as usize] = true;
            path.push(cur);
            match nbrs[&cur].iter().find(|&&w| w != prev) {
                Some(&next) => {
                    prev = cur;
                    cur = next;
                }
                None => break,
            }
        }
        paths.push(path);
    }
    if nbrs.keys().any(|&v| !seen[v as usize]) {
        return None;
    }
    for p in &mut paths {
        if p.last() < p.first() {
            p.reverse();
        }
    }
    paths.sort_by_key(|p| *p.iter().min().unwrap());
    let mut order: Vec<CharId> = paths.concat();
    order.extend((1..=k as CharId).filter(|&v| !seen[v as usize]));
    Some(order)
}


#[cfg(test)]
mod brute_tests {
    use super::*;
    use crate::model::Meeting;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn next_perm(v: &mut [CharId]) -> bool {
        let n = v.len();
        if n < 2 {
            return false;
        }
        let mut i = n - 1;
        while i > 0 && v[i - 1] >= v[i] {
            i -= 1;
        }
        if i == 0 {
            return false;
        }
        let mut j = n - 1;
        while v[j] <= v[i - 1] {
            j -= 1;
        }
        v.swap(i - 1, j);
        v[i..].reverse();
        true
    }

    fn brute(h: &GroupHypergraph) -> bool {
        let mut p: Vec<CharId> = (1..=h.vertex_count() as CharId).collect();
        loop {
            if h.edges().iter().all(|e| is_contiguous(&p, e.members())) {
                return true;
            }
            if !next_perm(&mut p) {
                return false;
            }
        }
    }

    #[test]
    fn agrees_with_exhaustive_search() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for round in 0..3000 {
            let k = rng.gen_range(2..=7);
            let m = rng.gen_range(0..=7);
            let maxd = rng.gen_range(2..=k);
            let mut edges = Vec::new();
            for _ in 0..m {
                let d = rng.gen_range(2..=maxd);
                let mut ids: Vec<CharId> = (1..=k as CharId).collect();
                for i in 0..d {
                    let j = rng.gen_range(i..k);
                    ids.swap(i, j);
                }
                ids.truncate(d);
                edges.push(Meeting::new(ids).unwrap());
            }
            let h = GroupHypergraph::new(k, edges).unwrap();
            let got = interval_support(&h);
            if let Some(p) = &got {
                assert!(h.edges().iter().all(|e| p.supports(e)));
            }
            assert_eq!(got.is_some(), brute(&h), "round {round}: {h:?}");
            if h.rank() <= 2 {
                assert_eq!(path_collection_support(&h).unwrap().is_some(), got.is_some());
            }
        }
    }
}
