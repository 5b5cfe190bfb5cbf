//! Exact canonical forms and isomorphism for small genus-weighted multigraphs.
//!
//! Isomorphism here means a vertex bijection preserving genera and edge
//! multiplicities (loops included); edge ids never matter. Canonicalization
//! is brute force — the signature is minimized over all vertex permutations —
//! which is exact and fast for the `|V| ≤ 8` range the search module works in.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::graph::DualGraph;

/// Brute-force permutation canonicalization is kept to this many vertices.
pub const MAX_EXACT_VERTICES: usize = 8;

/// Canonical byte signature: two graphs are isomorphic iff their signatures
/// are equal (within the exact range).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    sig: Vec<u8>,
}

impl CanonicalForm {
    pub fn bytes(&self) -> &[u8] {
        &self.sig
    }
}

/// Symmetric multiplicity matrix; `m[i][i]` counts loops at `i`.
fn multiplicity_matrix(g: &DualGraph) -> Vec<Vec<u32>> {
    let n = g.vertex_count();
    let mut m = vec![vec![0u32; n]; n];
    for e in 0..g.edge_count() {
        let (a, b) = g.edge_ends(e);
        if a == b {
            m[a][a] += 1;
        } else {
            m[a][b] += 1;
            m[b][a] += 1;
        }
    }
    m
}

fn signature_under(genera: &[u32], mat: &[Vec<u32>], perm: &[usize]) -> Vec<u8> {
    let n = perm.len();
    let mut sig = Vec::with_capacity(4 * n + 2 * n * (n + 1));
    for &p in perm {
        sig.extend_from_slice(&genera[p].to_be_bytes());
    }
    for i in 0..n {
        for j in i..n {
            sig.extend_from_slice(&mat[perm[i]][perm[j]].to_be_bytes());
        }
    }
    sig
}

/// Minimal signature over all vertex permutations.
pub fn canonical_form(g: &DualGraph) -> Result<CanonicalForm> {
    let n = g.vertex_count();
    if n > MAX_EXACT_VERTICES {
        return Err(Error::SpaceTooLarge(format!(
            "canonical form is exact only up to {MAX_EXACT_VERTICES} vertices; got {n}"
        )));
    }
    let genera: Vec<u32> = (0..n).map(|v| g.vertex_genus(v)).collect();
    let mat = multiplicity_matrix(g);
    let sig = (0..n)
        .permutations(n)
        .map(|p| signature_under(&genera, &mat, &p))
        .min()
        .expect("at least one permutation of a nonempty vertex set");
    Ok(CanonicalForm { sig })
}

/// Direct brute-force isomorphism test, independent of [`canonical_form`]
/// (used to cross-check it).
pub fn are_isomorphic(a: &DualGraph, b: &DualGraph) -> Result<bool> {
    let n = a.vertex_count();
    if n > MAX_EXACT_VERTICES || b.vertex_count() > MAX_EXACT_VERTICES {
        return Err(Error::SpaceTooLarge(format!(
            "isomorphism testing is exact only up to {MAX_EXACT_VERTICES} vertices"
        )));
    }
    if n != b.vertex_count() || a.edge_count() != b.edge_count() {
        return Ok(false);
    }
    let ga: Vec<u32> = (0..n).map(|v| a.vertex_genus(v)).collect();
    let gb: Vec<u32> = (0..n).map(|v| b.vertex_genus(v)).collect();
    let ma = multiplicity_matrix(a);
    let mb = multiplicity_matrix(b);
    'perm: for p in (0..n).permutations(n) {
        // p maps a-vertices onto b-vertices.
        for i in 0..n {
            if ga[i] != gb[p[i]] {
                continue 'perm;
            }
            for j in i..n {
                if ma[i][j] != mb[p[i]][p[j]] {
                    continue 'perm;
                }
            }
        }
        return Ok(true);
    }
    Ok(false)
}

/// Whether the graph admits any nontrivial automorphism: a non-identity
/// vertex permutation preserving genera and multiplicities, or a pair of
/// interchangeable edges (parallel edges / two loops at one vertex).
pub fn has_nontrivial_automorphism(g: &DualGraph) -> Result<bool> {
    let n = g.vertex_count();
    if n > MAX_EXACT_VERTICES {
        return Err(Error::SpaceTooLarge(format!(
            "automorphism detection is exact only up to {MAX_EXACT_VERTICES} vertices"
        )));
    }
    if g.has_parallel_pair() {
        return Ok(true);
    }
    let genera: Vec<u32> = (0..n).map(|v| g.vertex_genus(v)).collect();
    let mat = multiplicity_matrix(g);
    'perm: for p in (0..n).permutations(n) {
        if p.iter().enumerate().all(|(i, &pi)| i == pi) {
            continue;
        }
        for i in 0..n {
            if genera[i] != genera[p[i]] {
                continue 'perm;
            }
            for j in i..n {
                if mat[i][j] != mat[p[i]][p[j]] {
                    continue 'perm;
                }
            }
        }
        return Ok(true);
    }
    Ok(false)
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
    fn relabeling_is_invisible() {
        let a = banana(5, 1, 2);
        // Same graph, vertices swapped and edges renamed.
        let edges: Vec<(String, String, String)> =
            (1..=5).map(|i| (format!("f{i}"), "w2".to_string(), "w1".to_string())).collect();
        let b = DualGraph::new(vec![("w1".to_string(), 2), ("w2".to_string(), 1)], edges).unwrap();
        assert_eq!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
        assert!(are_isomorphic(&a, &b).unwrap());
    }

    #[test]
    fn genus_weight_distinguishes() {
        let a = banana(3, 0, 2);
        let b = banana(3, 1, 1);
        assert_ne!(canonical_form(&a).unwrap(), canonical_form(&b).unwrap());
        assert!(!are_isomorphic(&a, &b).unwrap());
    }

    #[test]
    fn loops_vs_parallel_edges() {
        let loops =
            DualGraph::from_literals(&[("v", 0)], &[("l1", "v", "v"), ("l2", "v", "v")]).unwrap();
        let b2 = banana(2, 1, 1);
        assert!(!are_isomorphic(&loops, &b2).unwrap());
        assert_ne!(canonical_form(&loops).unwrap(), canonical_form(&b2).unwrap());
    }

    #[test]
    fn automorphism_detection() {
        // Symmetric banana: swapping the vertices is an automorphism.
        assert!(has_nontrivial_automorphism(&banana(3, 1, 1)).unwrap());
        // Asymmetric genera, but parallel edges still swap.
        assert!(has_nontrivial_automorphism(&banana(3, 1, 2)).unwrap());
        // Rigid: distinct genera, single edges, no parallel pair.
        let rigid = DualGraph::from_literals(
            &[("a", 1), ("b", 2), ("c", 3)],
            &[("e1", "a", "b"), ("e2", "b", "c")],
        )
        .unwrap();
        assert!(!has_nontrivial_automorphism(&rigid).unwrap());
        // Path with equal end genera: reflection symmetry.
        let sym = DualGraph::from_literals(
            &[("a", 1), ("b", 2), ("c", 1)],
            &[("e1", "a", "b"), ("e2", "b", "c")],
        )
        .unwrap();
        assert!(has_nontrivial_automorphism(&sym).unwrap());
    }

    #[test]
    fn size_guard() {
        let vertices: Vec<(String, u32)> = (0..9).map(|i| (format!("v{i}"), 1)).collect();
        let edges: Vec<(String, String, String)> =
            (0..8).map(|i| (format!("e{i}"), format!("v{i}"), format!("v{}", i + 1))).collect();
        let path = DualGraph::new(vertices, edges).unwrap();
        assert!(matches!(canonical_form(&path), Err(Error::SpaceTooLarge(_))));
    }
}
