//! The GF(2) cycle space: eulerian edge subsets of a dual graph.
//!
//! An edge subset is *eulerian* when every vertex sees an even number of its
//! half-edges (a loop always contributes 2, so loops never break parity).
//! The eulerian subsets form a GF(2) vector space of dimension `b₁` under
//! symmetric difference; a spanning-tree fundamental-cycle basis spans it,
//! and the full space of `2^{b₁}` elements is enumerated in Gray-code order
//! so each step is one basis flip. The empty set is always emitted first.

use crate::error::{Error, Result};
use crate::graph::{DualGraph, EdgeSubset};

/// Default enumeration cap: exhaustive runs stay under ~10⁷ subsets.
pub const DEFAULT_ENUM_CAP: u32 = 24;

/// Caps above this are meaningless: subset counts are held in `u64` and a
/// walk beyond `2^62` states would never finish anyway.
const HARD_CAP: u32 = 62;

/// First vertex with an odd number of `sub`-half-edges, if any.
pub fn odd_vertex(g: &DualGraph, sub: &EdgeSubset) -> Option<usize> {
    g.valency_profile(sub).into_iter().position(|v| v % 2 == 1)
}

/// True iff every vertex has even `sub`-valency.
pub fn is_eulerian(g: &DualGraph, sub: &EdgeSubset) -> bool {
    odd_vertex(g, sub).is_none()
}

/// A fundamental-cycle basis of the cycle space.
///
/// Deterministic given the graph's edge order: the spanning tree is grown
/// over edges in index order, and basis elements appear in the index order
/// of their defining non-tree edges.
#[derive(Debug, Clone)]
pub struct CycleSpace {
    rank: usize,
    basis: Vec<EdgeSubset>,
}

impl CycleSpace {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn basis(&self) -> &[EdgeSubset] {
        &self.basis
    }
}

/// Spanning-tree fundamental-cycle basis; `rank == betti1`.
pub fn cycle_basis(g: &DualGraph) -> CycleSpace {
    let n = g.vertex_count();

    // Union-find selects the spanning tree greedily in edge-index order.
    let mut uf: Vec<usize> = (0..n).collect();
    fn find(uf: &mut [usize], mut x: usize) -> usize {
        while uf[x] != x {
            uf[x] = uf[uf[x]];
            x = uf[x];
        }
        x
    }

    let mut in_tree = vec![false; g.edge_count()];
    let mut cotree = Vec::with_capacity(g.betti1());
    for e in 0..g.edge_count() {
        let (a, b) = g.edge_ends(e);
        let (ra, rb) = (find(&mut uf, a), find(&mut uf, b));
        if ra != rb {
            uf[ra] = rb;
            in_tree[e] = true;
        } else {
            cotree.push(e);
        }
    }

    // Root the tree at vertex 0 and record parent pointers.
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n]; // (neighbor, edge)
    for e in 0..g.edge_count() {
        if in_tree[e] {
            let (a, b) = g.edge_ends(e);
            adj[a].push((b, e));
            adj[b].push((a, e));
        }
    }
    let mut parent_vertex = vec![usize::MAX; n];
    let mut parent_edge = vec![usize::MAX; n];
    let mut depth = vec![0usize; n];
    let mut stack = vec![0usize];
    parent_vertex[0] = 0;
    while let Some(v) = stack.pop() {
        for &(w, e) in &adj[v] {
            if parent_vertex[w] == usize::MAX {
                parent_vertex[w] = v;
                parent_edge[w] = e;
                depth[w] = depth[v] + 1;
                stack.push(w);
            }
        }
    }

    // Fundamental cycle of a non-tree edge: the edge plus the tree path
    // between its endpoints. For a loop the path is empty.
    let basis = cotree
        .into_iter()
        .map(|e| {
            let mut cycle = EdgeSubset::empty(g);
            cycle.insert(e);
            let (mut u, mut v) = g.edge_ends(e);
            while depth[u] > depth[v] {
                cycle.toggle(parent_edge[u]);
                u = parent_vertex[u];
            }
            while depth[v] > depth[u] {
                cycle.toggle(parent_edge[v]);
                v = parent_vertex[v];
            }
            while u != v {
                cycle.toggle(parent_edge[u]);
                cycle.toggle(parent_edge[v]);
                u = parent_vertex[u];
                v = parent_vertex[v];
            }
            cycle
        })
        .collect();

    CycleSpace { rank: g.betti1(), basis }
}

/// Gray-code walk over all GF(2) combinations of a cycle basis.
///
/// Emits each eulerian subset exactly once, `∅` first; consecutive outputs
/// differ by a single basis element, so each step is one symmetric
/// difference.
#[derive(Debug, Clone)]
pub struct EulerianSubsets {
    basis: Vec<EdgeSubset>,
    current: EdgeSubset,
    k: u64,
    total: u64,
}

impl Iterator for EulerianSubsets {
    type Item = EdgeSubset;

    fn next(&mut self) -> Option<EdgeSubset> {
        if self.k >= self.total {
            return None;
        }
        if self.k > 0 {
            let pos = self.k.trailing_zeros() as usize;
            self.current.symmetric_difference_with(&self.basis[pos]);
        }
        self.k += 1;
        Some(self.current.clone())
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.total - self.k) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for EulerianSubsets {}

/// All `2^{b₁}` eulerian subsets, `∅` first.
///
/// Refuses with [`Error::CapExceeded`] when `b₁` exceeds `cap` (values of
/// `cap` above 62 are treated as 62; see [`DEFAULT_ENUM_CAP`]).
pub fn enumerate_eulerian(g: &DualGraph, cap: u32) -> Result<EulerianSubsets> {
    let rank = g.betti1();
    if rank as u64 > u64::from(cap.min(HARD_CAP)) {
        return Err(Error::CapExceeded { rank, cap });
    }
    let space = cycle_basis(g);
    Ok(EulerianSubsets {
        basis: space.basis,
        current: EdgeSubset::empty(g),
        k: 0,
        total: 1u64 << rank,
    })
}

/// Collected form of [`enumerate_eulerian`].
pub fn eulerian_subsets(g: &DualGraph, cap: u32) -> Result<Vec<EdgeSubset>> {
    Ok(enumerate_eulerian(g, cap)?.collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn banana(k: usize, g1: u32, g2: u32) -> DualGraph {
        let edges: Vec<(String, String, String)> =
            (1..=k).map(|i| (format!("e{i}"), "v1".to_string(), "v2".to_string())).collect();
        DualGraph::new(vec![("v1".to_string(), g1), ("v2".to_string(), g2)], edges).unwrap()
    }

    #[test]
    fn eulerian_predicate() {
        let b5 = banana(5, 1, 1);
        assert!(is_eulerian(&b5, &EdgeSubset::empty(&b5)));
        let two = EdgeSubset::from_names(&b5, &["e2", "e5"]).unwrap();
        assert!(is_eulerian(&b5, &two));
        let three = EdgeSubset::from_names(&b5, &["e1", "e2", "e3"]).unwrap();
        assert!(!is_eulerian(&b5, &three));
        assert_eq!(odd_vertex(&b5, &three), Some(0));

        let loop_g = DualGraph::from_literals(&[("v", 1)], &[("l", "v", "v")]).unwrap();
        let l = EdgeSubset::full(&loop_g);
        assert!(is_eulerian(&loop_g, &l));
    }

    #[test]
    fn basis_shape() {
        let tree = DualGraph::from_literals(&[("a", 1), ("b", 1)], &[("e", "a", "b")]).unwrap();
        let cs = cycle_basis(&tree);
        assert_eq!(cs.rank(), 0);
        assert!(cs.basis().is_empty());

        let two_loops =
            DualGraph::from_literals(&[("v", 0)], &[("l1", "v", "v"), ("l2", "v", "v")]).unwrap();
        let cs = cycle_basis(&two_loops);
        assert_eq!(cs.rank(), 2);
        let names: Vec<Vec<&str>> = cs.basis().iter().map(|b| b.names(&two_loops)).collect();
        assert_eq!(names, vec![vec!["l1"], vec!["l2"]]);

        let b5 = banana(5, 1, 1);
        let cs = cycle_basis(&b5);
        assert_eq!(cs.rank(), 4);
        for b in cs.basis() {
            assert!(is_eulerian(&b5, b));
            assert!(!b.is_empty());
        }
    }

    #[test]
    fn enumeration_matches_brute_force() {
        // Independent filter over all 2^|E| subsets on a few small graphs.
        let graphs = vec![
            banana(5, 1, 1),
            banana(2, 1, 1),
            DualGraph::from_literals(&[("v", 1)], &[("l", "v", "v")]).unwrap(),
            DualGraph::from_literals(
                &[("a", 1), ("b", 0), ("c", 1)],
                &[
                    ("e1", "a", "b"),
                    ("e2", "a", "b"),
                    ("e3", "b", "c"),
                    ("e4", "b", "c"),
                    ("l", "a", "a"),
                ],
            )
            .unwrap(),
        ];
        for g in &graphs {
            let m = g.edge_count();
            let mut expected: Vec<Vec<usize>> = Vec::new();
            for mask in 0u32..(1 << m) {
                let ix: Vec<usize> = (0..m).filter(|&i| mask >> i & 1 == 1).collect();
                let sub = EdgeSubset::from_indices(g, &ix).unwrap();
                if is_eulerian(g, &sub) {
                    expected.push(ix);
                }
            }
            expected.sort();
            let mut got: Vec<Vec<usize>> =
                eulerian_subsets(g, DEFAULT_ENUM_CAP).unwrap().iter().map(|s| s.sorted_indices()).collect();
            got.sort();
            assert_eq!(got, expected, "mismatch on a graph with {m} edges");
            assert_eq!(got.len(), 1 << g.betti1());
        }
    }

    #[test]
    fn enumeration_order_and_caps() {
        let b5 = banana(5, 1, 1);
        let all = eulerian_subsets(&b5, DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(all.len(), 16);
        assert!(all[0].is_empty(), "the empty set anchors the enumeration");
        // Even-cardinality count over 5 parallel edges: C(5,0)+C(5,2)+C(5,4).
        assert!(all.iter().all(|s| s.len() % 2 == 0));

        assert!(matches!(
            enumerate_eulerian(&b5, 3),
            Err(Error::CapExceeded { rank: 4, cap: 3 })
        ));

        let tree = DualGraph::from_literals(&[("a", 1), ("b", 1)], &[("e", "a", "b")]).unwrap();
        let only = eulerian_subsets(&tree, DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(only.len(), 1);
        assert!(only[0].is_empty());
    }

    #[test]
    fn gf2_closure_spot_check() {
        let b5 = banana(5, 1, 1);
        let all = eulerian_subsets(&b5, DEFAULT_ENUM_CAP).unwrap();
        let mut keys: Vec<Vec<usize>> = all.iter().map(|s| s.sorted_indices()).collect();
        keys.sort();
        for a in &all {
            for b in &all {
                let mut s = a.clone();
                s.symmetric_difference_with(b);
                assert!(keys.binary_search(&s.sorted_indices()).is_ok());
            }
        }
    }
}
