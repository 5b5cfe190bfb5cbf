//! Weighted dual graphs of stable curves and their subgraph arithmetic.
//!
//! Vertices are irreducible components carrying a geometric genus; edges are
//! nodes. Loops (a component meeting itself) and parallel edges (two
//! components meeting in several points) are both essential, so edges carry
//! their own ids and are individually selectable — an [`EdgeSubset`] is a set
//! of *edges*, never a set of vertex pairs.
//!
//! Construction validates everything the rest of the crate assumes:
//! connectivity, per-vertex stability `2·genus − 2 + valency > 0` (a loop
//! contributes 2 to its vertex's valency), and total genus
//! `g = Σ genus(v) + b₁ ≥ 2`. Invalid data is rejected with a typed error,
//! never silently accepted.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// One irreducible component: display id plus geometric genus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub name: String,
    pub genus: u32,
}

/// One node of the curve. `ends` are vertex indices; equal indices encode a
/// loop (a self-node of a single component).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub ends: (u32, u32),
}

/// Connected, stable, genus-weighted multigraph.
///
/// Vertex and edge order is the construction order and is preserved
/// everywhere: reports, enumerations, and serializations are deterministic
/// given the input order.
#[derive(Debug, Clone)]
pub struct DualGraph {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    vertex_ix: HashMap<String, u32>,
    edge_ix: HashMap<String, u32>,
    valencies: Vec<u32>,
}

impl PartialEq for DualGraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges
    }
}

impl Eq for DualGraph {}

impl DualGraph {
    /// Build and validate a graph from owned parts.
    ///
    /// Edges are `(id, end, end)` triples naming vertices. Errors:
    /// [`Error::InvalidGraph`] for structural problems (no vertices,
    /// duplicate ids, dangling endpoints, disconnected), and
    /// [`Error::NotStable`] when a vertex fails `2g − 2 + valency > 0` or the
    /// total genus is below 2.
    pub fn new(vertices: Vec<(String, u32)>, edges: Vec<(String, String, String)>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidGraph("graph has no vertices".into()));
        }
        let mut vertex_ix = HashMap::with_capacity(vertices.len());
        let vertices: Vec<Vertex> = vertices
            .into_iter()
            .map(|(name, genus)| Vertex { name, genus })
            .collect();
        for (i, v) in vertices.iter().enumerate() {
            if vertex_ix.insert(v.name.clone(), i as u32).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate vertex id {:?}", v.name)));
            }
        }
        let mut edge_ix = HashMap::with_capacity(edges.len());
        let mut resolved = Vec::with_capacity(edges.len());
        for (i, (name, a, b)) in edges.into_iter().enumerate() {
            let ea = *vertex_ix
                .get(&a)
                .ok_or_else(|| Error::InvalidGraph(format!("edge {name:?} ends at unknown vertex {a:?}")))?;
            let eb = *vertex_ix
                .get(&b)
                .ok_or_else(|| Error::InvalidGraph(format!("edge {name:?} ends at unknown vertex {b:?}")))?;
            if edge_ix.insert(name.clone(), i as u32).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate edge id {name:?}")));
            }
            resolved.push(Edge { name, ends: (ea, eb) });
        }

        let mut valencies = vec![0u32; vertices.len()];
        for e in &resolved {
            valencies[e.ends.0 as usize] += 1;
            valencies[e.ends.1 as usize] += 1;
        }

        let g = DualGraph { vertices, edges: resolved, vertex_ix, edge_ix, valencies };

        if !g.is_connected() {
            return Err(Error::InvalidGraph("graph is not connected".into()));
        }
        for (i, v) in g.vertices.iter().enumerate() {
            let val = g.valencies[i];
            if 2 * i64::from(v.genus) - 2 + i64::from(val) <= 0 {
                return Err(Error::NotStable(format!(
                    "vertex {:?}: 2·{} − 2 + {} ≤ 0",
                    v.name, v.genus, val
                )));
            }
        }
        if g.genus() < 2 {
            return Err(Error::NotStable(format!("total genus {} < 2", g.genus())));
        }
        Ok(g)
    }

    /// Literal-friendly constructor for tests and generated graphs.
    pub fn from_literals(vertices: &[(&str, u32)], edges: &[(&str, &str, &str)]) -> Result<Self> {
        Self::new(
            vertices.iter().map(|&(n, g)| (n.to_string(), g)).collect(),
            edges
                .iter()
                .map(|&(n, a, b)| (n.to_string(), a.to_string(), b.to_string()))
                .collect(),
        )
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_entries(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edge_entries(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v].name
    }

    pub fn vertex_genus(&self, v: usize) -> u32 {
        self.vertices[v].genus
    }

    pub fn edge_name(&self, e: usize) -> &str {
        &self.edges[e].name
    }

    /// Endpoint vertex indices of an edge; equal for loops.
    pub fn edge_ends(&self, e: usize) -> (usize, usize) {
        let (a, b) = self.edges[e].ends;
        (a as usize, b as usize)
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertex_ix.get(name).map(|&i| i as usize)
    }

    pub fn edge_index(&self, name: &str) -> Option<usize> {
        self.edge_ix.get(name).map(|&i| i as usize)
    }

    pub fn is_loop(&self, e: usize) -> bool {
        self.edges[e].ends.0 == self.edges[e].ends.1
    }

    /// Full valency of a vertex; each loop at it counts 2.
    pub fn valency(&self, v: usize) -> u32 {
        self.valencies[v]
    }

    /// First Betti number `b₁ = |E| − |V| + 1` (the graph is connected).
    pub fn betti1(&self) -> usize {
        self.edges.len() + 1 - self.vertices.len()
    }

    /// Sum of the vertex genera (the geometric genus of the normalization).
    pub fn genus_nu(&self) -> u64 {
        self.vertices.iter().map(|v| u64::from(v.genus)).sum()
    }

    /// Total (arithmetic) genus `g = Σ genus(v) + b₁`.
    pub fn genus(&self) -> u64 {
        self.genus_nu() + self.betti1() as u64
    }

    /// Recompute the stability predicate. Constructed graphs always satisfy
    /// it; the method states the definition once for callers that want it.
    pub fn is_stable(&self) -> bool {
        self.vertices
            .iter()
            .zip(&self.valencies)
            .all(|(v, &val)| 2 * i64::from(v.genus) - 2 + i64::from(val) > 0)
            && self.genus() >= 2
    }

    /// Number of half-edges of `sub` at each vertex, indexed by vertex.
    /// A loop contributes 2 to its vertex.
    pub fn valency_profile(&self, sub: &EdgeSubset) -> Vec<u32> {
        debug_assert_eq!(sub.universe_len(), self.edge_count());
        let mut prof = vec![0u32; self.vertices.len()];
        for e in sub.indices() {
            let (a, b) = self.edge_ends(e);
            prof[a] += 1;
            prof[b] += 1;
        }
        prof
    }

    /// First Betti number of the subgraph spanned by `sub`, computed over
    /// edge-incident vertices. Isolated vertices would add 1 to both the
    /// vertex and component counts, so the value is the same either way.
    pub fn subgraph_betti1(&self, sub: &EdgeSubset) -> usize {
        debug_assert_eq!(sub.universe_len(), self.edge_count());
        let n = self.vertices.len();
        let mut incident = vec![false; n];
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut e_count = 0usize;
        for e in sub.indices() {
            e_count += 1;
            let (a, b) = self.edge_ends(e);
            incident[a] = true;
            incident[b] = true;
            if a != b {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        let mut seen = vec![false; n];
        let mut v_count = 0usize;
        let mut components = 0usize;
        let mut stack = Vec::new();
        for s in 0..n {
            if !incident[s] || seen[s] {
                continue;
            }
            components += 1;
            seen[s] = true;
            stack.push(s);
            while let Some(v) = stack.pop() {
                v_count += 1;
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        e_count + components - v_count
    }

    /// True when some pair of distinct edges shares the same unordered
    /// endpoint pair (parallel edges, or two loops at one vertex). Such a
    /// pair always yields a nontrivial graph automorphism.
    pub fn has_parallel_pair(&self) -> bool {
        let mut seen: Vec<(u32, u32)> = self
            .edges
            .iter()
            .map(|e| {
                let (a, b) = e.ends;
                (a.min(b), a.max(b))
            })
            .collect();
        seen.sort_unstable();
        seen.windows(2).any(|w| w[0] == w[1])
    }

    fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for e in &self.edges {
            let (a, b) = (e.ends.0 as usize, e.ends.1 as usize);
            if a != b {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut visited = 0usize;
        while let Some(v) = stack.pop() {
            visited += 1;
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        visited == n
    }
}

/// A set of edges of a fixed graph, stored as a bitset over edge indices.
///
/// The universe length always equals the owning graph's edge count; every
/// operation taking a graph plus a subset debug-asserts that agreement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSubset {
    bits: FixedBitSet,
}

impl EdgeSubset {
    pub fn empty(g: &DualGraph) -> Self {
        EdgeSubset { bits: FixedBitSet::with_capacity(g.edge_count()) }
    }

    pub fn full(g: &DualGraph) -> Self {
        let mut bits = FixedBitSet::with_capacity(g.edge_count());
        bits.set_range(.., true);
        EdgeSubset { bits }
    }

    /// Subset from edge indices; out-of-range indices are rejected.
    pub fn from_indices(g: &DualGraph, indices: &[usize]) -> Result<Self> {
        let mut s = Self::empty(g);
        for &i in indices {
            if i >= g.edge_count() {
                return Err(Error::InvalidGraph(format!(
                    "edge index {i} out of range for a graph with {} edges",
                    g.edge_count()
                )));
            }
            s.bits.insert(i);
        }
        Ok(s)
    }

    /// Subset from edge ids; unknown ids are rejected.
    pub fn from_names<S: AsRef<str>>(g: &DualGraph, names: &[S]) -> Result<Self> {
        let mut s = Self::empty(g);
        for name in names {
            let name = name.as_ref();
            let i = g
                .edge_index(name)
                .ok_or_else(|| Error::InvalidGraph(format!("unknown edge id {name:?}")))?;
            s.bits.insert(i);
        }
        Ok(s)
    }

    /// Size of the edge universe (the graph's edge count), not the subset.
    pub fn universe_len(&self) -> usize {
        self.bits.len()
    }

    /// Number of member edges.
    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, e: usize) -> bool {
        self.bits.contains(e)
    }

    pub fn insert(&mut self, e: usize) {
        self.bits.insert(e);
    }

    pub fn remove(&mut self, e: usize) {
        self.bits.set(e, false);
    }

    pub fn toggle(&mut self, e: usize) {
        self.bits.toggle(e);
    }

    pub fn complement(&self) -> Self {
        let mut bits = self.bits.clone();
        bits.toggle_range(..);
        EdgeSubset { bits }
    }

    /// GF(2) addition: replace `self` by the symmetric difference with `other`.
    pub fn symmetric_difference_with(&mut self, other: &Self) {
        debug_assert_eq!(self.bits.len(), other.bits.len());
        self.bits.symmetric_difference_with(&other.bits);
    }

    /// Member edge indices in increasing order.
    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn sorted_indices(&self) -> Vec<usize> {
        self.indices().collect()
    }

    /// Member edge ids in edge-index order.
    pub fn names<'g>(&self, g: &'g DualGraph) -> Vec<&'g str> {
        debug_assert_eq!(self.universe_len(), g.edge_count());
        self.indices().map(|e| g.edge_name(e)).collect()
    }
}

/// A stable base curve together with the set of nodes to blow up.
///
/// Blowing up a node inserts one exceptional component: a genus-0 vertex of
/// valency 2 attached to the (possibly equal) endpoints of the blown edge.
/// Distinct blown edges give disjoint exceptional components by construction,
/// so any edge subset is a valid blow-up locus. The blown-up object is *not*
/// itself a [`DualGraph`] — exceptional components violate stability — so the
/// model keeps the base and the blown set and lets consumers do component
/// bookkeeping through this type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasistableModel {
    base: DualGraph,
    blown: EdgeSubset,
}

impl QuasistableModel {
    pub fn new(base: DualGraph, blown: EdgeSubset) -> Result<Self> {
        if blown.universe_len() != base.edge_count() {
            return Err(Error::InvalidGraph(format!(
                "blown-edge universe has {} slots but the graph has {} edges",
                blown.universe_len(),
                base.edge_count()
            )));
        }
        Ok(QuasistableModel { base, blown })
    }

    pub fn base(&self) -> &DualGraph {
        &self.base
    }

    pub fn blown(&self) -> &EdgeSubset {
        &self.blown
    }

    /// Components of the model: all base vertices first (in vertex order),
    /// then one exceptional component per blown edge (in edge order).
    pub fn component_count(&self) -> usize {
        self.base.vertex_count() + self.blown.len()
    }

    /// Blown edge indices in increasing order; position `k` in this list is
    /// component `vertex_count + k`.
    pub fn blown_indices(&self) -> Vec<usize> {
        self.blown.sorted_indices()
    }

    /// Display id of a component: the vertex id for base components,
    /// `E(edge-id)` for the exceptional component over a blown edge.
    pub fn component_name(&self, c: usize) -> String {
        let nv = self.base.vertex_count();
        if c < nv {
            self.base.vertex_name(c).to_string()
        } else {
            let e = self.blown_indices()[c - nv];
            format!("E({})", self.base.edge_name(e))
        }
    }

    /// Number of blown half-edges at a base vertex (`m_v`); a blown loop
    /// contributes 2. Even at every vertex exactly when the blown set is
    /// eulerian.
    pub fn blown_half_edges_at(&self, v: usize) -> u32 {
        let mut m = 0;
        for e in self.blown.indices() {
            let (a, b) = self.base.edge_ends(e);
            if a == v {
                m += 1;
            }
            if b == v {
                m += 1;
            }
        }
        m
    }
}
