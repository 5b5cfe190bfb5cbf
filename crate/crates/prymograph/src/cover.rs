//! Combinatorial admissible double covers of a stable curve.
//!
//! Given a base graph and an eulerian blown-node set `Σ`, the cover of a
//! component is either *split* (two disjoint sheets, only possible where no
//! branch point lies, `m_v = 0`) or *connected* (one component upstairs; by
//! degree-2 Riemann–Hurwitz its genus is `2·genus(v) − 1 + m_v/2`, so an
//! unbranched connected cover additionally needs `genus(v) ≥ 1`). Each
//! untouched edge lifts to two edges whose pairing against the sheets is a
//! twist bit; each `Σ`-edge lifts to a single edge fixed by the deck
//! involution, whose two branches map to themselves — the admissibility
//! condition at a fixed node.
//!
//! The topological type of the cover is *not* determined by `(Γ, Σ)` alone,
//! so the split/twist choices are explicit [`MonodromyData`]. Covers that
//! fall apart (the shadow of the trivial square root) are rejected.

use std::collections::BTreeMap;

use crate::cycles;
use crate::error::{Error, Result};
use crate::graph::{DualGraph, EdgeSubset};

/// Cap on the number of free monodromy bits in exhaustive enumeration.
pub const DEFAULT_MONODROMY_BITS: u32 = 20;

/// Sheet structure over one unbranched vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SheetChoice {
    /// Two disjoint sheets of the same genus.
    Split,
    /// One component of genus `2·genus(v) − 1` upstairs (needs genus ≥ 1).
    Connected,
}

/// The free choices pinning down a double cover over `(Γ, Σ)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MonodromyData {
    /// Sheet choice for *every* vertex with `m_v = 0` (branched vertices are
    /// forced connected and must not appear). Genus-0 entries must be
    /// `Split`.
    pub split: BTreeMap<usize, SheetChoice>,
    /// Twist bit per untouched edge; missing entries mean `false`. The bit
    /// only changes the cover's shape where both endpoint fibers are split.
    pub twists: BTreeMap<usize, bool>,
}

/// A double cover: the cover graph, the deck involution (on vertices and
/// edges, with a branch-swap flag per edge), the projection to the base, and
/// the set of involution-fixed edges (the lifts of `Σ`).
///
/// Fields are public for inspection and for building adversarial instances
/// in tests; [`verify_admissible`] validates an arbitrary instance.
#[derive(Debug, Clone)]
pub struct CoverGraph {
    pub base: DualGraph,
    pub blown: EdgeSubset,
    pub cover: DualGraph,
    /// Deck involution on cover vertices (an order-≤2 permutation).
    pub vertex_involution: Vec<usize>,
    /// Deck involution on cover edges.
    pub edge_involution: Vec<usize>,
    /// Whether the involution maps the edge to its image with the two
    /// branches (dart order) exchanged. Must be `false` on fixed edges.
    pub edge_reversed: Vec<bool>,
    pub vertex_projection: Vec<usize>,
    pub edge_projection: Vec<usize>,
    /// Cover edges fixed by the involution, one per blown base edge.
    pub fixed_edges: EdgeSubset,
}

/// Blown half-edge count per base vertex.
fn branch_counts(base: &DualGraph, blown: &EdgeSubset) -> Vec<u32> {
    base.valency_profile(blown)
}

fn cover_vertex_genus(base_genus: u32, m_v: u32, choice: SheetChoice) -> Result<u32> {
    match choice {
        SheetChoice::Split => Ok(base_genus),
        SheetChoice::Connected => {
            let genus = 2 * u64::from(base_genus) + u64::from(m_v / 2);
            u32::try_from(genus - 1).map_err(|_| {
                Error::Overflow("cover vertex genus exceeds the representable range".into())
            })
        }
    }
}

/// Build the double cover over `(base, blown)` from explicit monodromy data.
///
/// Errors: [`Error::NotEulerian`] when `Σ` is not eulerian (no such cover
/// exists), [`Error::SplitInvalid`] for malformed monodromy (wrong key set,
/// split missing, connected over an unbranched rational vertex), and
/// [`Error::Disconnected`] when the choices produce a disconnected cover.
pub fn build_cover(base: &DualGraph, blown: &EdgeSubset, mono: &MonodromyData) -> Result<CoverGraph> {
    if blown.universe_len() != base.edge_count() {
        return Err(Error::InvalidGraph("blown-set universe does not match the graph".into()));
    }
    if let Some(v) = cycles::odd_vertex(base, blown) {
        return Err(Error::NotEulerian(format!(
            "vertex {:?} meets an odd number of blown half-edges",
            base.vertex_name(v)
        )));
    }
    let m = branch_counts(base, blown);

    // Validate the monodromy domain: exactly the unbranched vertices.
    for (&v, &choice) in &mono.split {
        if v >= base.vertex_count() {
            return Err(Error::SplitInvalid(format!("vertex index {v} out of range")));
        }
        if m[v] > 0 {
            return Err(Error::SplitInvalid(format!(
                "vertex {:?} is branched (m = {}) and is forced connected; it must not carry a sheet choice",
                base.vertex_name(v),
                m[v]
            )));
        }
        if choice == SheetChoice::Connected && base.vertex_genus(v) == 0 {
            return Err(Error::SplitInvalid(format!(
                "vertex {:?} is rational and unbranched: a connected unramified double cover does not exist",
                base.vertex_name(v)
            )));
        }
    }
    for v in 0..base.vertex_count() {
        if m[v] == 0 && !mono.split.contains_key(&v) {
            return Err(Error::SplitInvalid(format!(
                "vertex {:?} is unbranched and needs a sheet choice",
                base.vertex_name(v)
            )));
        }
    }
    for &e in mono.twists.keys() {
        if e >= base.edge_count() {
            return Err(Error::SplitInvalid(format!("edge index {e} out of range")));
        }
        if blown.contains(e) {
            return Err(Error::SplitInvalid(format!(
                "edge {:?} is blown up; its single lift carries no twist",
                base.edge_name(e)
            )));
        }
    }

    // Vertex fibers. `sheets[v]` holds the cover indices of sheet 0 and
    // sheet 1 over `v`; equal for a connected-type vertex.
    let mut cover_vertices: Vec<(String, u32)> = Vec::new();
    let mut sheets = vec![(0usize, 0usize); base.vertex_count()];
    let mut vertex_involution = Vec::new();
    let mut vertex_projection = Vec::new();
    for v in 0..base.vertex_count() {
        let choice = if m[v] > 0 { SheetChoice::Connected } else { mono.split[&v] };
        let genus = cover_vertex_genus(base.vertex_genus(v), m[v], choice)?;
        match choice {
            SheetChoice::Connected => {
                let ix = cover_vertices.len();
                cover_vertices.push((format!("{}~", base.vertex_name(v)), genus));
                sheets[v] = (ix, ix);
                vertex_involution.push(ix);
                vertex_projection.push(v);
            }
            SheetChoice::Split => {
                let ix = cover_vertices.len();
                cover_vertices.push((format!("{}^0", base.vertex_name(v)), genus));
                cover_vertices.push((format!("{}^1", base.vertex_name(v)), genus));
                sheets[v] = (ix, ix + 1);
                vertex_involution.push(ix + 1);
                vertex_involution.push(ix);
                vertex_projection.push(v);
                vertex_projection.push(v);
            }
        }
    }

    // Edge lifts.
    let mut cover_edges: Vec<(String, String, String)> = Vec::new();
    let mut edge_involution = Vec::new();
    let mut edge_reversed = Vec::new();
    let mut edge_projection = Vec::new();
    let mut fixed_ix = Vec::new();
    let sheet = |v: usize, k: usize| -> usize {
        if k == 0 {
            sheets[v].0
        } else {
            sheets[v].1
        }
    };
    for e in 0..base.edge_count() {
        let (a, b) = base.edge_ends(e);
        if blown.contains(e) {
            // Single fixed lift joining the (connected-type) ramified sheets.
            let ix = cover_edges.len();
            cover_edges.push((
                format!("{}~", base.edge_name(e)),
                cover_vertices[sheet(a, 0)].0.clone(),
                cover_vertices[sheet(b, 0)].0.clone(),
            ));
            edge_involution.push(ix);
            edge_reversed.push(false);
            edge_projection.push(e);
            fixed_ix.push(ix);
        } else {
            let twist = usize::from(*mono.twists.get(&e).unwrap_or(&false));
            let ix = cover_edges.len();
            for k in 0..2 {
                cover_edges.push((
                    format!("{}^{k}", base.edge_name(e)),
                    cover_vertices[sheet(a, k)].0.clone(),
                    cover_vertices[sheet(b, k ^ twist)].0.clone(),
                ));
                edge_projection.push(e);
                edge_reversed.push(false);
            }
            edge_involution.push(ix + 1);
            edge_involution.push(ix);
        }
    }

    // Connectivity decides validity: a disconnected cover is the trivial
    // square root, which is excluded.
    {
        let n = cover_vertices.len();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        let name_ix: BTreeMap<&str, usize> =
            cover_vertices.iter().enumerate().map(|(i, (n, _))| (n.as_str(), i)).collect();
        for (_, a, b) in &cover_edges {
            let (ia, ib) = (name_ix[a.as_str()], name_ix[b.as_str()]);
            if ia != ib {
                adj[ia].push(ib);
                adj[ib].push(ia);
            }
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 0;
        while let Some(v) = stack.pop() {
            count += 1;
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        if count != n {
            return Err(Error::Disconnected);
        }
    }

    let cover = DualGraph::new(cover_vertices, cover_edges)?;
    let fixed_edges = EdgeSubset::from_indices(&cover, &fixed_ix)?;
    debug_assert_eq!(cover.genus(), 2 * base.genus() - 1);

    Ok(CoverGraph {
        base: base.clone(),
        blown: blown.clone(),
        cover,
        vertex_involution,
        edge_involution,
        edge_reversed,
        vertex_projection,
        edge_projection,
        fixed_edges,
    })
}

/// Every admissibility condition, as human-readable failure strings
/// (empty = admissible). Checks the involution laws, the branch condition at
/// fixed nodes, the fiber structure over vertices and edges (which together
/// say that contracting the involution recovers the base), and the genus law
/// `genus(cover) = 2·genus(base) − 1`.
pub fn admissibility_failures(cg: &CoverGraph) -> Vec<String> {
    let mut fails = Vec::new();
    let nv = cg.cover.vertex_count();
    let ne = cg.cover.edge_count();

    if cg.vertex_involution.len() != nv
        || cg.edge_involution.len() != ne
        || cg.edge_reversed.len() != ne
        || cg.vertex_projection.len() != nv
        || cg.edge_projection.len() != ne
        || cg.fixed_edges.universe_len() != ne
        || cg.blown.universe_len() != cg.base.edge_count()
    {
        fails.push("involution/projection tables do not match the cover's size".into());
        return fails;
    }
    if cg.vertex_involution.iter().any(|&v| v >= nv)
        || cg.edge_involution.iter().any(|&e| e >= ne)
        || cg.vertex_projection.iter().any(|&v| v >= cg.base.vertex_count())
        || cg.edge_projection.iter().any(|&e| e >= cg.base.edge_count())
    {
        fails.push("involution or projection index out of range".into());
        return fails;
    }

    if cycles::odd_vertex(&cg.base, &cg.blown).is_some() {
        fails.push("blown set is not eulerian".into());
    }

    for v in 0..nv {
        if cg.vertex_involution[cg.vertex_involution[v]] != v {
            fails.push(format!("vertex involution is not an involution at {v}"));
        }
        if cg.vertex_projection[cg.vertex_involution[v]] != cg.vertex_projection[v] {
            fails.push(format!("vertex involution does not commute with projection at {v}"));
        }
    }
    for e in 0..ne {
        let ie = cg.edge_involution[e];
        if cg.edge_involution[ie] != e {
            fails.push(format!("edge involution is not an involution at {e}"));
        }
        if cg.edge_reversed[ie] != cg.edge_reversed[e] {
            fails.push(format!("branch-swap flag is not symmetric on the orbit of edge {e}"));
        }
        if cg.edge_projection[ie] != cg.edge_projection[e] {
            fails.push(format!("edge involution does not commute with projection at {e}"));
        }
        // The involution must be a graph automorphism respecting the
        // recorded dart orientation.
        let (a, b) = cg.cover.edge_ends(e);
        let (ia, ib) = cg.cover.edge_ends(ie);
        let expect = if cg.edge_reversed[e] {
            (cg.vertex_involution[b], cg.vertex_involution[a])
        } else {
            (cg.vertex_involution[a], cg.vertex_involution[b])
        };
        if (ia, ib) != expect {
            fails.push(format!("edge involution is not a graph map on edge {e}"));
        }
        // Projection must send the edge onto its base edge's endpoints.
        let (ba, bb) = cg.base.edge_ends(cg.edge_projection[e]);
        let (pa, pb) = (cg.vertex_projection[a], cg.vertex_projection[b]);
        if (pa, pb) != (ba, bb) && (pa, pb) != (bb, ba) {
            fails.push(format!("projection of edge {e} does not cover its base edge"));
        }
    }

    // Fixed edges: exactly the involution-fixed ones, never branch-swapped,
    // exactly one over each blown base edge.
    for e in 0..ne {
        let fixed = cg.edge_involution[e] == e;
        if fixed != cg.fixed_edges.contains(e) {
            fails.push(format!("fixed_edges disagrees with the involution at edge {e}"));
        }
        if fixed && cg.edge_reversed[e] {
            fails.push(format!(
                "edge {e} is a fixed node whose branches are exchanged — inadmissible"
            ));
        }
        if fixed && !cg.blown.contains(cg.edge_projection[e]) {
            fails.push(format!("fixed edge {e} lies over an unblown base edge"));
        }
    }

    // Fiber structure over vertices.
    let m = branch_counts(&cg.base, &cg.blown);
    let mut vertex_fibers: Vec<Vec<usize>> = vec![Vec::new(); cg.base.vertex_count()];
    for v in 0..nv {
        vertex_fibers[cg.vertex_projection[v]].push(v);
    }
    for (bv, fiber) in vertex_fibers.iter().enumerate() {
        let genus = u64::from(cg.base.vertex_genus(bv));
        match fiber.len() {
            1 => {
                let cv = fiber[0];
                if cg.vertex_involution[cv] != cv {
                    fails.push(format!("single-sheet vertex {cv} is not involution-fixed"));
                }
                let expect = 2 * genus + u64::from(m[bv] / 2);
                if u64::from(cg.cover.vertex_genus(cv)) + 1 != expect {
                    fails.push(format!(
                        "connected-type vertex over {:?} has the wrong genus",
                        cg.base.vertex_name(bv)
                    ));
                }
                if m[bv] == 0 && genus == 0 {
                    fails.push(format!(
                        "unramified connected cover over the rational vertex {:?}",
                        cg.base.vertex_name(bv)
                    ));
                }
            }
            2 => {
                if m[bv] > 0 {
                    fails.push(format!(
                        "branched vertex {:?} has a split fiber",
                        cg.base.vertex_name(bv)
                    ));
                }
                if cg.vertex_involution[fiber[0]] != fiber[1] {
                    fails.push(format!(
                        "the two sheets over {:?} are not swapped",
                        cg.base.vertex_name(bv)
                    ));
                }
                for &cv in fiber {
                    if u64::from(cg.cover.vertex_genus(cv)) != genus {
                        fails.push(format!(
                            "split sheet over {:?} has the wrong genus",
                            cg.base.vertex_name(bv)
                        ));
                    }
                }
            }
            k => fails.push(format!(
                "vertex {:?} has {k} cover vertices; fibers must have size 1 or 2",
                cg.base.vertex_name(bv)
            )),
        }
    }

    // Fiber structure over edges.
    let mut edge_fibers: Vec<Vec<usize>> = vec![Vec::new(); cg.base.edge_count()];
    for e in 0..ne {
        edge_fibers[cg.edge_projection[e]].push(e);
    }
    for (be, fiber) in edge_fibers.iter().enumerate() {
        if cg.blown.contains(be) {
            if fiber.len() != 1 || !cg.fixed_edges.contains(fiber[0]) {
                fails.push(format!(
                    "blown edge {:?} must have exactly one fixed lift",
                    cg.base.edge_name(be)
                ));
            }
        } else if fiber.len() != 2 || cg.edge_involution[fiber[0]] != fiber[1] {
            fails.push(format!(
                "untouched edge {:?} must have exactly two swapped lifts",
                cg.base.edge_name(be)
            ));
        }
    }

    // Genus law.
    if cg.cover.genus() != 2 * cg.base.genus() - 1 {
        fails.push(format!(
            "cover genus {} violates the law 2·{} − 1",
            cg.cover.genus(),
            cg.base.genus()
        ));
    }

    fails
}

/// True iff [`admissibility_failures`] is empty.
pub fn verify_admissible(cg: &CoverGraph) -> bool {
    admissibility_failures(cg).is_empty()
}

/// Lazy enumeration of all monodromy data whose cover is connected, in a
/// fixed deterministic order (split assignments in binary order — all
/// connected first — then twist assignments over the edges where the bit
/// matters). Refuses when the number of free bits exceeds `max_bits`.
pub struct Monodromies<'g> {
    base: &'g DualGraph,
    blown: EdgeSubset,
    /// Unbranched vertices of positive genus: free split/connected bit each.
    free_vertices: Vec<usize>,
    /// Unbranched rational vertices: forced split.
    forced_split: Vec<usize>,
    delta_edges: Vec<usize>,
    split_mask: u64,
    meaningful: Vec<usize>,
    twist_mask: u64,
    exhausted: bool,
}

impl<'g> Monodromies<'g> {
    fn current_split(&self) -> BTreeMap<usize, SheetChoice> {
        let mut split = BTreeMap::new();
        for &v in &self.forced_split {
            split.insert(v, SheetChoice::Split);
        }
        for (i, &v) in self.free_vertices.iter().enumerate() {
            let choice =
                if self.split_mask >> i & 1 == 1 { SheetChoice::Split } else { SheetChoice::Connected };
            split.insert(v, choice);
        }
        split
    }

    /// Edges whose twist bit changes the cover under the current split
    /// assignment: both endpoint fibers must be split.
    fn recompute_meaningful(&mut self) {
        let split = self.current_split();
        let is_split = |v: usize| split.get(&v) == Some(&SheetChoice::Split);
        self.meaningful = self
            .delta_edges
            .iter()
            .copied()
            .filter(|&e| {
                let (a, b) = self.base.edge_ends(e);
                is_split(a) && is_split(b)
            })
            .collect();
        self.twist_mask = 0;
    }
}

impl Iterator for Monodromies<'_> {
    type Item = MonodromyData;

    fn next(&mut self) -> Option<MonodromyData> {
        loop {
            if self.exhausted {
                return None;
            }
            if self.twist_mask >> self.meaningful.len() == 0 {
                let mut twists = BTreeMap::new();
                for (i, &e) in self.meaningful.iter().enumerate() {
                    twists.insert(e, self.twist_mask >> i & 1 == 1);
                }
                let data = MonodromyData { split: self.current_split(), twists };
                self.twist_mask += 1;
                match build_cover(self.base, &self.blown, &data) {
                    Ok(_) => return Some(data),
                    Err(Error::Disconnected) => continue,
                    // Construction errors other than disconnection cannot
                    // happen for enumerated data.
                    Err(_) => continue,
                }
            }
            self.split_mask += 1;
            if self.split_mask >> self.free_vertices.len() != 0 {
                self.exhausted = true;
                return None;
            }
            self.recompute_meaningful();
        }
    }
}

/// All valid (connected) monodromy data over `(base, blown)`.
///
/// The free-bit count `#unbranched-positive-genus-vertices + #untouched
/// edges` must stay within `max_bits` ([`Error::CapExceeded`] otherwise;
/// [`DEFAULT_MONODROMY_BITS`] is the usual cap).
pub fn enumerate_monodromies<'g>(
    base: &'g DualGraph,
    blown: &EdgeSubset,
    max_bits: u32,
) -> Result<Monodromies<'g>> {
    if blown.universe_len() != base.edge_count() {
        return Err(Error::InvalidGraph("blown-set universe does not match the graph".into()));
    }
    if let Some(v) = cycles::odd_vertex(base, blown) {
        return Err(Error::NotEulerian(format!(
            "vertex {:?} meets an odd number of blown half-edges",
            base.vertex_name(v)
        )));
    }
    let m = branch_counts(base, blown);
    let mut free_vertices = Vec::new();
    let mut forced_split = Vec::new();
    for v in 0..base.vertex_count() {
        if m[v] == 0 {
            if base.vertex_genus(v) > 0 {
                free_vertices.push(v);
            } else {
                forced_split.push(v);
            }
        }
    }
    let delta_edges: Vec<usize> = (0..base.edge_count()).filter(|&e| !blown.contains(e)).collect();
    let bits = free_vertices.len() + delta_edges.len();
    if bits as u64 > u64::from(max_bits.min(62)) {
        return Err(Error::CapExceeded { rank: bits, cap: max_bits });
    }
    let mut it = Monodromies {
        base,
        blown: blown.clone(),
        free_vertices,
        forced_split,
        delta_edges,
        split_mask: 0,
        meaningful: Vec::new(),
        twist_mask: 0,
        exhausted: false,
    };
    it.recompute_meaningful();
    Ok(it)
}
