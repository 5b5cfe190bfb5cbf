//! The fiber of the Prym moduli space over a stable curve, computed from its
//! dual graph, together with the spin analogue and the structure checks.
//!
//! A quasistable model `X` of `Z` is determined by the set `Σ` of blown-up
//! nodes; `X` supports a square root of `O` with the right degrees exactly
//! when `Σ` is eulerian. Writing `Δ = Σ^c` for the untouched nodes, the model
//! contributes
//!
//! - `2^{2gν + b₁(Δ)}` distinct square roots (`eta_count`), each
//! - of multiplicity `2^{b₁(Γ) − b₁(Δ)}` in the fiber.
//!
//! Summed over `Σ ∈ C_Γ` the products telescope to the fiber length
//! `2^{2g}`, and the set of multiplicities that actually occur is `L(P_Z)`.
//! The spin fiber has the analogous multiplicity set with `Δ` itself (not its
//! complement) ranging over the cycle space.

use std::collections::BTreeSet;

use num_bigint::BigUint;

use crate::canon;
use crate::cycles::{eulerian_subsets, is_eulerian};
use crate::error::{Error, Result};
use crate::graph::{DualGraph, EdgeSubset};

/// One irreducible piece of the fiber: a blown-node set `Σ` (eulerian), the
/// untouched nodes `Δ`, how many square roots live on this model, and with
/// what multiplicity each appears.
#[derive(Debug, Clone)]
pub struct FiberComponentRecord {
    pub sigma: EdgeSubset,
    pub delta: EdgeSubset,
    pub sigma_betti1: usize,
    pub delta_betti1: usize,
    /// `2^{2gν + b₁(Δ)}`
    pub eta_count: BigUint,
    /// `2^{b₁(Γ) − b₁(Δ)}`
    pub multiplicity: BigUint,
    pub multiplicity_exponent: usize,
}

/// Everything the fiber computation produces for one graph.
///
/// `records` are sorted by `(|Σ|, Σ's index sequence)`, so the `Σ = ∅` record
/// is always first. The multiplicity sets are kept as exponent sets — the
/// exponent `b₁(Γ) − b₁(Δ)` is the canonical datum; [`l_values`] turns them
/// into the actual powers of two.
#[derive(Debug, Clone)]
pub struct FiberReport {
    pub genus: u64,
    pub genus_nu: u64,
    pub betti1: usize,
    pub records: Vec<FiberComponentRecord>,
    /// `Σ eta_count = 2^{2gν} · Σ_{Σ ∈ C_Γ} 2^{b₁(Σ^c)}`
    pub component_count: BigUint,
    /// `Σ eta_count · multiplicity = 2^{2g}`
    pub length: BigUint,
    pub prym_exponents: BTreeSet<usize>,
    pub spin_exponents: BTreeSet<usize>,
    /// `Some(true)` when the graph has a nontrivial automorphism (the fiber
    /// is then the one modulo inessential isomorphism, not the literal
    /// scheme fiber); `None` when the graph is too large to decide exactly.
    pub aut_caveat: Option<bool>,
}

fn pow2(exp: u64) -> BigUint {
    BigUint::from(1u8) << usize::try_from(exp).expect("power-of-two exponent fits usize")
}

/// Powers of two for an exponent set, ascending.
pub fn l_values(exponents: &BTreeSet<usize>) -> Vec<u64> {
    exponents.iter().map(|&e| 1u64 << e).collect()
}

/// Compute the full fiber report. `cap` bounds the cycle-space rank for the
/// underlying enumeration ([`crate::cycles::DEFAULT_ENUM_CAP`] is the usual
/// choice).
pub fn prym_fiber(g: &DualGraph, cap: u32) -> Result<FiberReport> {
    let b1 = g.betti1();
    let gnu = g.genus_nu();
    let mut records: Vec<FiberComponentRecord> = eulerian_subsets(g, cap)?
        .into_iter()
        .map(|sigma| {
            let delta = sigma.complement();
            let sigma_betti1 = g.subgraph_betti1(&sigma);
            let delta_betti1 = g.subgraph_betti1(&delta);
            FiberComponentRecord {
                eta_count: pow2(2 * gnu + delta_betti1 as u64),
                multiplicity: pow2((b1 - delta_betti1) as u64),
                multiplicity_exponent: b1 - delta_betti1,
                sigma,
                delta,
                sigma_betti1,
                delta_betti1,
            }
        })
        .collect();
    records.sort_by_cached_key(|r| (r.sigma.len(), r.sigma.sorted_indices()));

    let mut component_count = BigUint::from(0u8);
    let mut length = BigUint::from(0u8);
    let mut prym_exponents = BTreeSet::new();
    let mut spin_exponents = BTreeSet::new();
    for r in &records {
        component_count += &r.eta_count;
        length += &r.eta_count * &r.multiplicity;
        prym_exponents.insert(r.multiplicity_exponent);
        spin_exponents.insert(b1 - r.sigma_betti1);
    }

    let aut_caveat = if g.vertex_count() <= canon::MAX_EXACT_VERTICES {
        Some(canon::has_nontrivial_automorphism(g)?)
    } else {
        None
    };

    Ok(FiberReport {
        genus: g.genus(),
        genus_nu: gnu,
        betti1: b1,
        records,
        component_count,
        length,
        prym_exponents,
        spin_exponents,
        aut_caveat,
    })
}

/// The spin multiplicity set `{ 2^{b₁(Γ) − b₁(Δ)} : Δ ∈ C_Γ }` as exponents.
/// Here `Δ` itself ranges over the cycle space.
pub fn spin_multiplicity_set(g: &DualGraph, cap: u32) -> Result<BTreeSet<usize>> {
    let b1 = g.betti1();
    let mut exps = BTreeSet::new();
    for delta in enumerate_eulerian_iter(g, cap)? {
        exps.insert(b1 - g.subgraph_betti1(&delta));
    }
    Ok(exps)
}

fn enumerate_eulerian_iter(g: &DualGraph, cap: u32) -> Result<crate::cycles::EulerianSubsets> {
    crate::cycles::enumerate_eulerian(g, cap)
}

/// The five structural facts about the multiplicity set, each evaluated from
/// the computed report. Every one is a theorem, so a `false` anywhere means
/// an implementation bug — the acceptance suite sweeps them over a whole
/// space of graphs.
#[derive(Debug, Clone)]
pub struct MultiplicityLawsReport {
    pub betti1: usize,
    pub genus: u64,
    pub genus_nu: u64,
    pub prym_exponents: BTreeSet<usize>,
    pub spin_exponents: BTreeSet<usize>,
    pub graph_eulerian: bool,
    /// (1) `1 ∈ L`.
    pub contains_one: bool,
    /// (2) `max L = 2^{b₁}`.
    pub max_is_two_pow_b1: bool,
    /// (3) `2^g ∈ L` iff every component is rational.
    pub two_pow_g_iff_all_rational: bool,
    /// (4) all multiplicities are 1 iff the graph is a tree (compact type).
    pub reduced_iff_compact_type: bool,
    /// (5) if the graph itself is eulerian, the prym and spin sets agree.
    pub spin_match_when_eulerian: bool,
    pub all_hold: bool,
}

pub fn check_multiplicity_laws(g: &DualGraph, cap: u32) -> Result<MultiplicityLawsReport> {
    let r = prym_fiber(g, cap)?;
    let exps = &r.prym_exponents;
    let b1 = r.betti1;

    let contains_one = exps.contains(&0);
    let max_is_two_pow_b1 = exps.iter().next_back() == Some(&b1);
    let g_in_l = r.genus <= b1 as u64 && exps.contains(&(r.genus as usize));
    let two_pow_g_iff_all_rational = g_in_l == (r.genus_nu == 0);
    let reduced = exps.len() == 1 && contains_one;
    let reduced_iff_compact_type = reduced == (b1 == 0);
    let graph_eulerian = is_eulerian(g, &EdgeSubset::full(g));
    let spin_match_when_eulerian = !graph_eulerian || *exps == r.spin_exponents;
    let all_hold = contains_one
        && max_is_two_pow_b1
        && two_pow_g_iff_all_rational
        && reduced_iff_compact_type
        && spin_match_when_eulerian;

    Ok(MultiplicityLawsReport {
        betti1: b1,
        genus: r.genus,
        genus_nu: r.genus_nu,
        prym_exponents: exps.clone(),
        spin_exponents: r.spin_exponents.clone(),
        graph_eulerian,
        contains_one,
        max_is_two_pow_b1,
        two_pow_g_iff_all_rational,
        reduced_iff_compact_type,
        spin_match_when_eulerian,
        all_hold,
    })
}

/// Per-record check that non-reducedness is exactly non-stability of the
/// model: multiplicity exceeds 1 iff some node was blown up (`Σ ≠ ∅`).
/// For eulerian `Σ` this is equivalent to the exponent form
/// `b₁(Δ) < b₁(Γ)`, because a nonempty eulerian set contains a cycle.
pub fn check_reducedness_flags(g: &DualGraph, cap: u32) -> Result<Vec<bool>> {
    let r = prym_fiber(g, cap)?;
    Ok(r.records
        .iter()
        .map(|rec| (rec.multiplicity_exponent > 0) == !rec.sigma.is_empty())
        .collect())
}

/// Outcome of the two-gap classification for graphs with all valencies even
/// and at least 4.
#[derive(Debug, Clone)]
pub struct GapClassificationReport {
    pub betti1: usize,
    pub prym_exponents: BTreeSet<usize>,
    /// `2^{b₁−2} ∉ L` (negative exponents count as absent).
    pub premise_two_gap: bool,
    /// The graph is two loop-free vertices (two smooth components).
    pub conclusion_two_smooth: bool,
    pub implication_two_gap: bool,
    /// `2^{b₁−3} ∉ L`.
    pub premise_three_gap: bool,
    /// One vertex with two loops (irreducible, two self-nodes), or a
    /// triangle of three loop-free vertices with each pair doubly joined.
    pub conclusion_two_nodes_or_triangle: bool,
    pub implication_three_gap: bool,
}

pub fn check_gap_classification(g: &DualGraph, cap: u32) -> Result<GapClassificationReport> {
    for v in 0..g.vertex_count() {
        let val = g.valency(v);
        if val % 2 != 0 || val < 4 {
            return Err(Error::HypothesisNotMet(format!(
                "vertex {:?} has valency {val}; the classification requires every valency even and ≥ 4",
                g.vertex_name(v)
            )));
        }
    }

    let r = prym_fiber(g, cap)?;
    let exps = &r.prym_exponents;
    let b1 = r.betti1;

    let absent = |e: i64| e < 0 || !exps.contains(&(e as usize));
    let premise_two_gap = absent(b1 as i64 - 2);
    let premise_three_gap = absent(b1 as i64 - 3);

    let n = g.vertex_count();
    let m = g.edge_count();
    let loops = (0..m).filter(|&e| g.is_loop(e)).count();
    let conclusion_two_smooth = n == 2 && loops == 0;

    let two_self_nodes = n == 1 && m == 2;
    let triangle_doubled = n == 3 && m == 6 && loops == 0 && {
        let mut pair_counts = std::collections::BTreeMap::new();
        for e in 0..m {
            let (a, b) = g.edge_ends(e);
            *pair_counts.entry((a.min(b), a.max(b))).or_insert(0u32) += 1;
        }
        pair_counts.len() == 3 && pair_counts.values().all(|&c| c == 2)
    };
    let conclusion_two_nodes_or_triangle = two_self_nodes || triangle_doubled;

    Ok(GapClassificationReport {
        betti1: b1,
        prym_exponents: exps.clone(),
        premise_two_gap,
        conclusion_two_smooth,
        implication_two_gap: !premise_two_gap || conclusion_two_smooth,
        premise_three_gap,
        conclusion_two_nodes_or_triangle,
        implication_three_gap: !premise_three_gap || conclusion_two_nodes_or_triangle,
    })
}
