//! Left, right and two-sided cells from the full KL preorders.

use std::collections::BTreeSet;

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use serde::Serialize;

use super::KLData;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CellPartition {
    pub left_cells: Vec<Vec<usize>>,
    pub right_cells: Vec<Vec<usize>>,
    pub two_sided_cells: Vec<Vec<usize>>,
    /// a-value per two-sided cell, in the order of `two_sided_cells`.
    pub a_value: Vec<usize>,
    #[serde(skip)]
    left_of: Vec<usize>,
    #[serde(skip)]
    right_of: Vec<usize>,
    #[serde(skip)]
    two_sided_of: Vec<usize>,
}

/// Equivalence classes of the preorder generated by the given edges, each
/// sorted, ordered by smallest member.
fn classes(size: usize, edges: &[(usize, usize)]) -> (Vec<Vec<usize>>, Vec<usize>) {
    let mut graph: DiGraph<usize, ()> = DiGraph::with_capacity(size, edges.len());
    let nodes: Vec<_> = (0..size).map(|w| graph.add_node(w)).collect();
    for &(a, b) in edges {
        graph.add_edge(nodes[a], nodes[b], ());
    }
    let mut comps: Vec<Vec<usize>> = tarjan_scc(&graph)
        .into_iter()
        .map(|c| {
            let mut v: Vec<usize> = c.into_iter().map(|n| graph[n]).collect();
            v.sort_unstable();
            v
        })
        .collect();
    comps.sort();
    let mut of = vec![0; size];
    for (k, c) in comps.iter().enumerate() {
        for &w in c {
            of[w] = k;
        }
    }
    (comps, of)
}

pub fn compute_cells(kl: &KLData) -> CellPartition {
    let g = kl.group();
    let h = kl.structure_constants();
    let size = g.order();
    let mut left_edges = Vec::new();
    let mut right_edges = Vec::new();
    for w in 0..size {
        for i in 1..=g.rank() {
            let s = g.left_mul_gen(0, i);
            // an edge w -> y records y <=_L w (resp. <=_R)
            left_edges.extend(h.support(s, w).map(|y| (w, y)));
            right_edges.extend(h.support(w, s).map(|y| (w, y)));
        }
    }
    let both: Vec<_> = left_edges.iter().chain(&right_edges).copied().collect();
    let (left_cells, left_of) = classes(size, &left_edges);
    let (right_cells, right_of) = classes(size, &right_edges);
    let (two_sided_cells, two_sided_of) = classes(size, &both);
    let a_value = two_sided_cells.iter().map(|c| kl.a(c[0])).collect();
    CellPartition {
        left_cells,
        right_cells,
        two_sided_cells,
        a_value,
        left_of,
        right_of,
        two_sided_of,
    }
}

impl CellPartition {
    pub fn left_cell_of(&self, w: usize) -> usize {
        self.left_of[w]
    }

    pub fn right_cell_of(&self, w: usize) -> usize {
        self.right_of[w]
    }

    pub fn two_sided_cell_of(&self, w: usize) -> usize {
        self.two_sided_of[w]
    }

    pub fn a_of_cell_containing(&self, w: usize) -> usize {
        self.a_value[self.two_sided_of[w]]
    }

    /// Structural invariants: right cells are the inverses of left cells,
    /// each two-sided cell is a union of left cells, and `a` is constant on
    /// two-sided cells. Returns a description of the first violation.
    pub fn check_invariants(&self, kl: &KLData) -> Result<(), String> {
        let g = kl.group();
        let inverted: BTreeSet<Vec<usize>> = self
            .left_cells
            .iter()
            .map(|c| {
                let mut v: Vec<usize> = c.iter().map(|&w| g.inverse(w)).collect();
                v.sort_unstable();
                v
            })
            .collect();
        let right: BTreeSet<Vec<usize>> = self.right_cells.iter().cloned().collect();
        if inverted != right {
            return Err("right cells differ from inverted left cells".into());
        }
        for c in &self.left_cells {
            let t = self.two_sided_of[c[0]];
            if c.iter().any(|&w| self.two_sided_of[w] != t) {
                return Err(format!("left cell {:?} straddles two-sided cells", c));
            }
        }
        for (k, c) in self.two_sided_cells.iter().enumerate() {
            if let Some(&w) = c.iter().find(|&&w| kl.a(w) != self.a_value[k]) {
                return Err(format!("a not constant on two-sided cell containing {}", g.elt(w)));
            }
        }
        Ok(())
    }
}

/// Elements `w` with `w` and `w^{-1}` in the same left cell.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NearInvolutionSet {
    pub members: Vec<usize>,
}

impl NearInvolutionSet {
    pub fn contains(&self, w: usize) -> bool {
        self.members.binary_search(&w).is_ok()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

pub fn near_involutions(kl: &KLData, cells: &CellPartition) -> NearInvolutionSet {
    let g = kl.group();
    NearInvolutionSet {
        members: (0..g.order())
            .filter(|&w| cells.left_cell_of(w) == cells.left_cell_of(g.inverse(w)))
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::super::compute_kl;
    use super::*;
    use crate::coxeter::WeylGroup;
    use crate::rootdata::CartanType;

    fn words(g: &WeylGroup, set: &[usize]) -> Vec<String> {
        set.iter().map(|&w| g.elt(w).to_string()).collect()
    }

    #[test]
    fn b2_cells() {
        let g = WeylGroup::generate(CartanType::B2);
        let kl = compute_kl(&g).unwrap();
        let cells = compute_cells(&kl);
        assert_eq!(cells.two_sided_cells.len(), 3);
        let sizes: Vec<usize> = cells.two_sided_cells.iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![1, 6, 1]);
        assert_eq!(cells.a_value, vec![0, 1, 4]);
        assert_eq!(cells.left_cells.len(), 4);
        cells.check_invariants(&kl).unwrap();
        let j = near_involutions(&kl, &cells);
        assert_eq!(words(&g, &j.members), vec!["e", "1", "2", "121", "212", "1212"]);
    }

    #[test]
    fn a3_near_involutions_match_the_listed_ones() {
        let g = WeylGroup::generate(CartanType::A3);
        let kl = compute_kl(&g).unwrap();
        let cells = compute_cells(&kl);
        cells.check_invariants(&kl).unwrap();
        let j = near_involutions(&kl, &cells);
        let listed = ["e", "1", "2", "3", "13", "121", "232", "2132", "13231", "121321"];
        let mut expected: Vec<usize> = listed.iter().map(|w| g.parse_word(w).unwrap()).collect();
        expected.sort_unstable();
        assert_eq!(j.members, expected);
        // five two-sided cells, indexed by partitions of 4
        assert_eq!(cells.two_sided_cells.len(), 5);
        let mut a: Vec<usize> = cells.a_value.clone();
        a.sort_unstable();
        assert_eq!(a, vec![0, 1, 2, 3, 6]);
    }

    #[test]
    fn extreme_cells_are_singletons() {
        for t in [CartanType::A1, CartanType::A2, CartanType::G2] {
            let g = WeylGroup::generate(t);
            let kl = compute_kl(&g).unwrap();
            let cells = compute_cells(&kl);
            assert_eq!(cells.two_sided_cells[cells.two_sided_cell_of(0)], vec![0]);
            assert_eq!(cells.two_sided_cells[cells.two_sided_cell_of(g.w0())], vec![g.w0()]);
            let j = near_involutions(&kl, &cells);
            let involutions: Vec<usize> = (0..g.order()).filter(|&w| g.is_involution(w)).collect();
            assert_eq!(j.members, involutions, "{t}");
        }
    }
}
