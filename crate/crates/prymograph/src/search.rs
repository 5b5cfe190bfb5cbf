//! Exhaustive generation of stable graphs inside explicit bounds, and the
//! two sweeps built on top of it: hunting for a pair of graphs whose
//! multiplicity sets collide while their parity-refined sets differ, and
//! verifying the two-gap classification over a whole space.
//!
//! Spaces are enumerated in a fixed deterministic order (vertex count, then
//! the edge-multiplicity vector over vertex pairs, then the genus vector)
//! with exact isomorphism dedup, so results are reproducible run to run.

use std::collections::{BTreeMap, BTreeSet};

use crate::canon;
use crate::error::{Error, Result};
use crate::fiber;
use crate::graph::DualGraph;

/// Refuse to enumerate when the raw candidate estimate exceeds this.
pub const MAX_CANDIDATES: u128 = 10_000_000;

/// Structural restriction applied to candidate multigraphs before genus
/// assignment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpaceFilter {
    /// Keep only graphs in which every valency is even.
    EvenValencies,
    /// Keep only graphs in which every valency is at least this.
    MinValency(u32),
}

/// Bounds describing a finite space of stable graphs.
#[derive(Debug, Clone)]
pub struct SearchSpace {
    pub max_vertices: usize,
    pub max_edges: usize,
    pub max_genus_per_vertex: u32,
    /// Lower bound on the total (arithmetic) genus; values below 2 are
    /// clamped to 2, the stability threshold.
    pub min_total_genus: u64,
    pub max_total_genus: u64,
    pub filters: Vec<SpaceFilter>,
}

fn binomial(n: u128, k: u128) -> u128 {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

impl SearchSpace {
    /// Upper bound on raw candidates: for each vertex count, the number of
    /// edge multisets over vertex pairs times the number of genus vectors.
    pub fn estimate_candidates(&self) -> u128 {
        let mut total: u128 = 0;
        for n in 1..=self.max_vertices as u128 {
            let pairs = n * (n + 1) / 2;
            let multisets = binomial(pairs + self.max_edges as u128, self.max_edges as u128);
            let genera = (u128::from(self.max_genus_per_vertex) + 1).saturating_pow(n as u32);
            total = total.saturating_add(multisets.saturating_mul(genera));
        }
        total
    }
}

/// Stability forces a minimum genus from the valency: an isolated vertex
/// needs genus 2, a valency-1 or -2 vertex needs genus 1, and three or more
/// half-edges make genus 0 admissible.
fn min_genus_for_valency(val: u32) -> u32 {
    match val {
        0 => 2,
        1 | 2 => 1,
        _ => 0,
    }
}

struct Enumerator<'s> {
    space: &'s SearchSpace,
    pairs: Vec<(usize, usize)>,
    mult: Vec<usize>,
    seen: BTreeSet<canon::CanonicalForm>,
    out: Vec<DualGraph>,
}

impl Enumerator<'_> {
    fn fill_edges(&mut self, pos: usize, budget: usize, n: usize) -> Result<()> {
        if pos == self.pairs.len() {
            return self.finish_multigraph(n);
        }
        for c in 0..=budget {
            self.mult[pos] = c;
            self.fill_edges(pos + 1, budget - c, n)?;
        }
        self.mult[pos] = 0;
        Ok(())
    }

    fn finish_multigraph(&mut self, n: usize) -> Result<()> {
        let m: usize = self.mult.iter().sum();
        // Connectivity (loops connect nothing).
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (p, &(i, j)) in self.pairs.iter().enumerate() {
            if self.mult[p] > 0 && i != j {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                parent[ri] = rj;
            }
        }
        let root = find(&mut parent, 0);
        if (0..n).any(|v| find(&mut parent, v) != root) {
            return Ok(());
        }

        let mut val = vec![0u32; n];
        for (p, &(i, j)) in self.pairs.iter().enumerate() {
            let c = self.mult[p] as u32;
            if i == j {
                val[i] += 2 * c;
            } else {
                val[i] += c;
                val[j] += c;
            }
        }
        for filter in &self.space.filters {
            let ok = match filter {
                SpaceFilter::EvenValencies => val.iter().all(|v| v % 2 == 0),
                SpaceFilter::MinValency(k) => val.iter().all(|v| v >= k),
            };
            if !ok {
                return Ok(());
            }
        }

        let gmin: Vec<u32> = val.iter().map(|&v| min_genus_for_valency(v)).collect();
        if gmin.iter().any(|&g| g > self.space.max_genus_per_vertex) {
            return Ok(());
        }
        let betti1 = (m + 1 - n) as u64;
        let suffix_min: Vec<u64> = {
            let mut s = vec![0u64; n + 1];
            for v in (0..n).rev() {
                s[v] = s[v + 1] + u64::from(gmin[v]);
            }
            s
        };
        let mut genera = vec![0u32; n];
        self.fill_genera(0, 0, betti1, &gmin, &suffix_min, &mut genera, n)
    }

    #[allow(clippy::too_many_arguments)]
    fn fill_genera(
        &mut self,
        pos: usize,
        acc: u64,
        betti1: u64,
        gmin: &[u32],
        suffix_min: &[u64],
        genera: &mut Vec<u32>,
        n: usize,
    ) -> Result<()> {
        if pos == n {
            let total = acc + betti1;
            let lo = self.space.min_total_genus.max(2);
            if total < lo || total > self.space.max_total_genus {
                return Ok(());
            }
            return self.emit(genera, n);
        }
        for g in gmin[pos]..=self.space.max_genus_per_vertex {
            let acc2 = acc + u64::from(g);
            if acc2 + suffix_min[pos + 1] + betti1 > self.space.max_total_genus {
                break;
            }
            genera[pos] = g;
            self.fill_genera(pos + 1, acc2, betti1, gmin, suffix_min, genera, n)?;
        }
        Ok(())
    }

    fn emit(&mut self, genera: &[u32], n: usize) -> Result<()> {
        let vertices: Vec<(String, u32)> =
            (0..n).map(|v| (format!("v{}", v + 1), genera[v])).collect();
        let mut edges = Vec::new();
        let mut k = 0;
        for (p, &(i, j)) in self.pairs.iter().enumerate() {
            for _ in 0..self.mult[p] {
                k += 1;
                edges.push((format!("e{k}"), format!("v{}", i + 1), format!("v{}", j + 1)));
            }
        }
        let graph = DualGraph::new(vertices, edges)?;
        let form = canon::canonical_form(&graph)?;
        if self.seen.insert(form) {
            self.out.push(graph);
        }
        Ok(())
    }
}

/// Every stable graph in the space, deterministically ordered, one per
/// isomorphism class. Errors with [`Error::SpaceTooLarge`] when the raw
/// estimate exceeds [`MAX_CANDIDATES`] or the vertex bound exceeds what
/// exact isomorphism handling supports.
pub fn enumerate_graphs(space: &SearchSpace) -> Result<Vec<DualGraph>> {
    let est = space.estimate_candidates();
    if est > MAX_CANDIDATES {
        return Err(Error::SpaceTooLarge(format!(
            "an estimated {est} raw candidates exceed the limit of {MAX_CANDIDATES}"
        )));
    }
    if space.max_vertices > canon::MAX_EXACT_VERTICES {
        return Err(Error::SpaceTooLarge(format!(
            "{} vertices exceed the exact-isomorphism limit of {}",
            space.max_vertices,
            canon::MAX_EXACT_VERTICES
        )));
    }
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for n in 1..=space.max_vertices {
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
        let mut en = Enumerator {
            space,
            mult: vec![0; pairs.len()],
            pairs,
            seen: std::mem::take(&mut seen),
            out: std::mem::take(&mut out),
        };
        en.fill_edges(0, space.max_edges, n)?;
        seen = en.seen;
        out = en.out;
    }
    Ok(out)
}

/// A pair of non-isomorphic graphs with the same multiplicity set but
/// different parity-refined sets.
#[derive(Debug, Clone)]
pub struct LCollision {
    pub first: DualGraph,
    pub second: DualGraph,
    /// The shared multiplicity exponent set.
    pub prym_exponents: BTreeSet<usize>,
    pub first_spin: BTreeSet<usize>,
    pub second_spin: BTreeSet<usize>,
}

/// Scan the space for the first pair of graphs whose multiplicity sets agree
/// while their parity-refined sets differ. Deterministic: graphs are visited
/// in enumeration order and the earliest qualifying pair wins.
pub fn find_l_collision(space: &SearchSpace, cap: u32) -> Result<Option<LCollision>> {
    let graphs = enumerate_graphs(space)?;
    let mut by_prym: BTreeMap<Vec<usize>, Vec<(usize, BTreeSet<usize>)>> = BTreeMap::new();
    for (ix, g) in graphs.iter().enumerate() {
        let report = fiber::prym_fiber(g, cap)?;
        let key: Vec<usize> = report.prym_exponents.iter().copied().collect();
        let group = by_prym.entry(key).or_default();
        for (prev_ix, prev_spin) in group.iter() {
            if *prev_spin != report.spin_exponents {
                return Ok(Some(LCollision {
                    first: graphs[*prev_ix].clone(),
                    second: g.clone(),
                    prym_exponents: report.prym_exponents.clone(),
                    first_spin: prev_spin.clone(),
                    second_spin: report.spin_exponents.clone(),
                }));
            }
        }
        group.push((ix, report.spin_exponents));
    }
    Ok(None)
}

/// Outcome of sweeping the two-gap classification over a space.
#[derive(Debug, Clone)]
pub struct GapSweep {
    /// Graphs enumerated in the space.
    pub total: usize,
    /// Graphs meeting the hypothesis (every valency even and ≥ 4).
    pub hypothesis_met: usize,
    /// Descriptions of graphs where a premise held but its structural
    /// conclusion failed. Empty means the classification is confirmed.
    pub violations: Vec<String>,
}

fn describe(g: &DualGraph) -> String {
    let genera: Vec<u32> = (0..g.vertex_count()).map(|v| g.vertex_genus(v)).collect();
    let edges: Vec<(usize, usize)> = (0..g.edge_count()).map(|e| g.edge_ends(e)).collect();
    format!("genera={genera:?} edges={edges:?}")
}

/// Check both gap implications on every graph in the space that meets the
/// hypothesis.
pub fn verify_gap_classification_over_space(space: &SearchSpace, cap: u32) -> Result<GapSweep> {
    let graphs = enumerate_graphs(space)?;
    let total = graphs.len();
    let mut hypothesis_met = 0;
    let mut violations = Vec::new();
    for g in &graphs {
        match fiber::check_gap_classification(g, cap) {
            Ok(report) => {
                hypothesis_met += 1;
                if !report.implication_two_gap {
                    violations.push(format!("two-gap implication fails on {}", describe(g)));
                }
                if !report.implication_three_gap {
                    violations.push(format!("three-gap implication fails on {}", describe(g)));
                }
            }
            Err(Error::HypothesisNotMet(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(GapSweep { total, hypothesis_met, violations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::are_isomorphic;

    #[test]
    fn single_vertex_space_by_hand() {
        // One vertex, up to two loops, genus ≤ 2, total genus in [2, 3]:
        // smooth genus 2; one loop with vertex genus 1 or 2; two loops with
        // vertex genus 0 or 1. Five graphs, no two isomorphic.
        let space = SearchSpace {
            max_vertices: 1,
            max_edges: 2,
            max_genus_per_vertex: 2,
            min_total_genus: 2,
            max_total_genus: 3,
            filters: vec![],
        };
        let graphs = enumerate_graphs(&space).unwrap();
        assert_eq!(graphs.len(), 5);
        let profiles: Vec<(usize, u32, u64)> =
            graphs.iter().map(|g| (g.edge_count(), g.vertex_genus(0), g.genus())).collect();
        assert_eq!(profiles, vec![(0, 2, 2), (1, 1, 2), (1, 2, 3), (2, 0, 2), (2, 1, 3)]);
    }

    #[test]
    fn dedup_collapses_mirror_images() {
        // Two vertices, ≤ 2 edges, genus ≤ 1, total genus exactly 2. The
        // loop-plus-bridge graph arises twice (loop at either vertex) but is
        // kept once.
        let space = SearchSpace {
            max_vertices: 2,
            max_edges: 2,
            max_genus_per_vertex: 1,
            min_total_genus: 2,
            max_total_genus: 2,
            filters: vec![],
        };
        let graphs = enumerate_graphs(&space).unwrap();
        assert_eq!(graphs.len(), 4);
        for (i, a) in graphs.iter().enumerate() {
            for b in &graphs[i + 1..] {
                assert!(!are_isomorphic(a, b).unwrap());
            }
        }
    }

    #[test]
    fn filters_restrict_the_space() {
        let space = SearchSpace {
            max_vertices: 2,
            max_edges: 3,
            max_genus_per_vertex: 1,
            min_total_genus: 2,
            max_total_genus: 3,
            filters: vec![SpaceFilter::EvenValencies],
        };
        let graphs = enumerate_graphs(&space).unwrap();
        assert!(!graphs.is_empty());
        for g in &graphs {
            for v in 0..g.vertex_count() {
                assert_eq!(g.valency(v) % 2, 0, "odd valency slipped through the filter");
            }
        }
        // The genus-(1,1) two-edge join passes; the single bridge cannot.
        let banana = DualGraph::from_literals(
            &[("a", 1), ("b", 1)],
            &[("e1", "a", "b"), ("e2", "a", "b")],
        )
        .unwrap();
        assert!(graphs.iter().any(|g| are_isomorphic(g, &banana).unwrap()));
        assert!(graphs.iter().all(|g| {
            (0..g.vertex_count()).all(|v| g.valency(v) > 0) || g.vertex_count() == 1
        }));
    }

    #[test]
    fn oversized_spaces_are_refused() {
        let space = SearchSpace {
            max_vertices: 8,
            max_edges: 30,
            max_genus_per_vertex: 5,
            min_total_genus: 2,
            max_total_genus: 40,
            filters: vec![],
        };
        assert!(matches!(enumerate_graphs(&space), Err(Error::SpaceTooLarge(_))));

        let space = SearchSpace {
            max_vertices: 9,
            max_edges: 1,
            max_genus_per_vertex: 2,
            min_total_genus: 2,
            max_total_genus: 3,
            filters: vec![],
        };
        assert!(matches!(enumerate_graphs(&space), Err(Error::SpaceTooLarge(_))));
    }

    #[test]
    fn no_collision_in_a_tiny_space() {
        // All one-vertex graphs here share their refined set whenever the
        // plain sets collide, so the scan comes up empty.
        let space = SearchSpace {
            max_vertices: 1,
            max_edges: 2,
            max_genus_per_vertex: 2,
            min_total_genus: 2,
            max_total_genus: 3,
            filters: vec![],
        };
        assert!(find_l_collision(&space, 24).unwrap().is_none());
    }

    #[test]
    fn gap_sweep_small_even_space() {
        let space = SearchSpace {
            max_vertices: 2,
            max_edges: 4,
            max_genus_per_vertex: 1,
            min_total_genus: 2,
            max_total_genus: 4,
            filters: vec![SpaceFilter::EvenValencies, SpaceFilter::MinValency(4)],
        };
        let sweep = verify_gap_classification_over_space(&space, 24).unwrap();
        // One vertex with 2, 3, or 4 loops (genus 0 or 1 within the total
        // bound: five graphs), the four-edge join (genus (0,0) or (0,1)),
        // and loop–double-edge–loop (genus (0,0) or (0,1)).
        assert_eq!(sweep.hypothesis_met, 9);
        assert!(sweep.violations.is_empty(), "{:?}", sweep.violations);
    }
}
