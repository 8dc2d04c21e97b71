use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::cycles::EdgeSet;
use super::patterns::{find_in, patterns_for_rank};
use crate::error::{Error, Result};
use crate::interval::{is_contiguous, order_vertices};
use crate::model::{CharId, Meeting};

/// Cyclic order of vertex cells in which every edge covers a run of cells.
///
/// Cells are maximal runs of vertices lying in exactly the same edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellOrder {
    pub cells: Vec<Vec<CharId>>,
    /// Per edge (same order as the input edges): first cell and number of cells.
    pub spans: Vec<(usize, usize)>,
}

impl CellOrder {
    /// Edges containing both cell `i` and the next one (full edges excluded).
    pub fn gap_cover(&self, i: usize) -> Vec<usize> {
        let c = self.cells.len();
        self.spans
            .iter()
            .enumerate()
            .filter(|(_, &(s, len))| len < c && (i + c - s) % c < len - 1)
            .map(|(e, _)| e)
            .collect()
    }
}

/// Circular order in which every edge is a cyclic run, if one exists.
///
/// Edges through a fixed vertex are replaced by their complements; a linear
/// order for the result is a circular order for the original edges.
pub fn circular_order(vertices: &[CharId], edges: &[Meeting]) -> Option<Vec<CharId>> {
    let &root = vertices.first()?;
    let flipped: Vec<Vec<CharId>> = edges
        .iter()
        .map(|e| {
            if e.contains(root) {
                vertices.iter().copied().filter(|&v| !e.contains(v)).collect()
            } else {
                e.members().to_vec()
            }
        })
        .collect();
    let refs: Vec<&[CharId]> = flipped.iter().map(Vec::as_slice).collect();
    order_vertices(vertices, &refs)
}

fn is_cyclic_run(order: &[CharId], e: &Meeting) -> bool {
    let n = order.len();
    let inside: Vec<bool> = order.iter().map(|&v| e.contains(v)).collect();
    let starts = (0..n).filter(|&i| inside[i] && !inside[(i + n - 1) % n]).count();
    starts <= 1
}

pub fn cell_order(order: &[CharId], edges: &[Meeting]) -> Result<CellOrder> {
    let n = order.len();
    let signature = |v: CharId| -> Vec<usize> { (0..edges.len()).filter(|&e| edges[e].contains(v)).collect() };
    let sigs: Vec<Vec<usize>> = order.iter().map(|&v| signature(v)).collect();
    let start = (0..n).find(|&i| sigs[i] != sigs[(i + n - 1) % n]).unwrap_or(0);
    let mut cells: Vec<Vec<CharId>> = Vec::new();
    let mut cell_sigs: Vec<&Vec<usize>> = Vec::new();
    for step in 0..n {
        let i = (start + step) % n;
        if cell_sigs.last().is_some_and(|s| **s == sigs[i]) {
            cells.last_mut().unwrap().push(order[i]);
        } else {
            cells.push(vec![order[i]]);
            cell_sigs.push(&sigs[i]);
        }
    }
    let c = cells.len();
    let mut spans = Vec::with_capacity(edges.len());
    for (ei, e) in edges.iter().enumerate() {
        let inside: Vec<bool> = cell_sigs.iter().map(|s| s.contains(&ei)).collect();
        let firsts: Vec<usize> = (0..c).filter(|&i| inside[i] && !inside[(i + c - 1) % c]).collect();
        let len = inside.iter().filter(|&&b| b).count();
        let first = match firsts.as_slice() {
            [] if len == c => 0,
            [f] => *f,
            _ => return Err(Error::Contract(format!("edge {e} is not a run of cells"))),
        };
        spans.push((first, len));
    }
    Ok(CellOrder { cells, spans })
}

/// Removes the fewest edges that open a cycle-containing component into a line.
///
/// The component must be connected and free of short cycles and patterns.
/// Returns the removed edges and a vertex order supporting the rest.
pub fn break_long_cycles(vertices: &[CharId], edges: &[Meeting]) -> Result<(Vec<Meeting>, Vec<CharId>)> {
    let refs: Vec<&[CharId]> = edges.iter().map(Meeting::members).collect();
    if let Some(order) = order_vertices(vertices, &refs) {
        return Ok((Vec::new(), order));
    }
    let max_id = vertices.iter().copied().max().unwrap_or(0) as usize;
    let rank = edges.iter().map(Meeting::len).max().unwrap_or(0);
    let mut set = EdgeSet::new(max_id, edges);
    if !set.remove_short_cycles(rank + 1).is_empty() {
        return Err(Error::Contract("component has a short cycle".into()));
    }
    if let Some(occ) = find_in(&set, &patterns_for_rank(rank)) {
        return Err(Error::Contract(format!("component contains pattern {}", occ.kind)));
    }
    let circle = circular_order(vertices, edges)
        .ok_or_else(|| Error::Contract("pattern-free component has no circular order".into()))?;
    debug_assert!(edges.iter().all(|e| is_cyclic_run(&circle, e)));
    let cells = cell_order(&circle, edges)?;
    let c = cells.cells.len();
    let mut best: Option<(usize, (CharId, CharId), usize)> = None;
    for i in 0..c {
        let cover = cells.gap_cover(i).len();
        let key = (cells.cells[i].iter().copied().min().unwrap(), cells.cells[(i + 1) % c].iter().copied().min().unwrap());
        if best.map_or(true, |(bc, bk, _)| (cover, key) < (bc, bk)) {
            best = Some((cover, key, i));
        }
    }
    let (_, _, gap) = best.ok_or_else(|| Error::Contract("empty component".into()))?;
    let mut removed: Vec<Meeting> = cells.gap_cover(gap).into_iter().map(|e| edges[e].clone()).collect();
    removed.sort();
    let order: Vec<CharId> = (1..=c).flat_map(|s| cells.cells[(gap + s) % c].iter().copied()).collect();
    if let Some(e) = edges.iter().find(|e| !removed.contains(e) && !is_contiguous(&order, e.members())) {
        return Err(Error::Contract(format!("edge {e} is split after opening the cycle")));
    }
    Ok((removed, order))
}

/// Connected components of the edges, by ascending smallest vertex.
pub(crate) fn components(edges: &[Meeting]) -> Vec<(Vec<CharId>, Vec<Meeting>)> {
    let mut parent: BTreeMap<CharId, CharId> = BTreeMap::new();
    fn find(parent: &mut BTreeMap<CharId, CharId>, v: CharId) -> CharId {
        let p = *parent.entry(v).or_insert(v);
        if p == v {
            return v;
        }
        let r = find(parent, p);
        parent.insert(v, r);
        r
    }
    for e in edges {
        let m = e.members();
        let r0 = find(&mut parent, m[0]);
        for &v in &m[1..] {
            let r = find(&mut parent, v);
            if r != r0 {
                parent.insert(r, r0);
            }
        }
    }
    let mut groups: BTreeMap<CharId, (Vec<CharId>, Vec<Meeting>)> = BTreeMap::new();
    let verts: Vec<CharId> = parent.keys().copied().collect();
    let mut root_min: BTreeMap<CharId, CharId> = BTreeMap::new();
    for &v in &verts {
        let r = find(&mut parent, v);
        root_min.entry(r).or_insert(v);
    }
    for &v in &verts {
        let r = find(&mut parent, v);
        groups.entry(root_min[&r]).or_default().0.push(v);
    }
    for e in edges {
        let r = find(&mut parent, e.members()[0]);
        groups.get_mut(&root_min[&r]).unwrap().1.push(e.clone());
    }
    groups.into_values().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edges(lists: &[&[CharId]]) -> Vec<Meeting> {
        lists.iter().map(|l| Meeting::new(l.to_vec()).unwrap()).collect()
    }

    #[test]
    fn six_cycle_loses_one_edge() {
        let es = edges(&[&[1, 2], &[2, 3], &[3, 4], &[4, 5], &[5, 6], &[1, 6]]);
        let (removed, order) = break_long_cycles(&[1, 2, 3, 4, 5, 6], &es).unwrap();
        assert_eq!(removed.len(), 1);
        assert_eq!(order.len(), 6);
    }

    #[test]
    fn path_loses_nothing() {
        let es = edges(&[&[1, 2], &[2, 3, 4]]);
        let (removed, order) = break_long_cycles(&[1, 2, 3, 4], &es).unwrap();
        assert!(removed.is_empty());
        assert!(is_contiguous(&order, &[2, 3, 4]));
    }

    #[test]
    fn short_cycle_is_rejected() {
        let es = edges(&[&[1, 2], &[2, 3], &[1, 3]]);
        assert!(break_long_cycles(&[1, 2, 3], &es).is_err());
    }

    #[test]
    fn component_split() {
        let es = edges(&[&[5, 6], &[1, 2], &[2, 3], &[6, 7]]);
        let comps = components(&es);
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].0, vec![1, 2, 3]);
        assert_eq!(comps[1].0, vec![5, 6, 7]);
    }

    #[test]
    fn cells_of_a_hyper_cycle() {
        let es = edges(&[&[1, 2, 3], &[3, 4], &[4, 5, 6], &[6, 7], &[7, 8], &[8, 1]]);
        let verts: Vec<CharId> = (1..=8).collect();
        let circle = circular_order(&verts, &es).unwrap();
        let cells = cell_order(&circle, &es).unwrap();
        assert_eq!(cells.cells.len(), 8);
        let (removed, _) = break_long_cycles(&verts, &es).unwrap();
        assert_eq!(removed.len(), 1);
    }
}
