//! Multidegrees of `η ⊗ ω^t` on quasistable models and exact certification
//! of the Basic Inequality over every complete subcurve.
//!
//! On a model with blown-node set `Σ` (which must be eulerian), the line
//! bundle has degree `1` on every exceptional component and
//! `t·(2·genus(v) − 2 + valency(v)) − m_v/2` on a base component `v`, where
//! `m_v` counts blown half-edges at `v` (even by the eulerian condition).
//! The total is `d = 2t(g − 1)`.
//!
//! For every nonempty proper subset `Y` of components — connectedness is not
//! required — the Basic Inequality `m_Y ≤ d_Y ≤ m_Y + k_Y` is certified with
//! exact rational arithmetic, where `k_Y` counts nodes joining `Y` to its
//! complement and
//!
//! ```text
//! m_Y = (d / (g−1)) · (g_Y − 1 + k_Y/2) − k_Y/2 .
//! ```
//!
//! `g_Y` is the arithmetic genus `Σ genera + |E_Y| − |V_Y| + 1` of the
//! (possibly disconnected) subcurve; for disconnected `Y` this can be
//! negative, and it is the only convention under which both the inequality
//! and the complementarity identity `m_Y + m_{Y^c} + k_Y = d` hold.

use num_rational::Ratio;
use num_traits::Signed;

use crate::cycles;
use crate::error::{Error, Result};
use crate::graph::QuasistableModel;

/// Exact rational type used for `m_Y` and the slacks. All comparisons are
/// done in cross-multiplied integers; no floating point exists here.
pub type Rat = Ratio<i128>;

/// Floor on the twisting exponent below which nothing is asserted.
pub const MIN_T: i64 = 10;

/// Subcurve enumeration is `2^n` in the component count `n`.
pub const MAX_COMPONENTS: usize = 20;

/// A multidegree on the components of a quasistable model: all base vertices
/// first (vertex order), then one exceptional component per blown edge
/// (edge order), matching [`QuasistableModel::component_name`].
#[derive(Debug, Clone)]
pub struct Multidegree {
    model: QuasistableModel,
    pub t: i64,
    pub degrees: Vec<i64>,
    pub total: i64,
}

impl Multidegree {
    pub fn model(&self) -> &QuasistableModel {
        &self.model
    }
}

fn overflow(what: &str) -> Error {
    Error::Overflow(format!("multidegree arithmetic overflowed computing {what}"))
}

/// Degrees of `η ⊗ ω^t` on the model. Rejects `t < 10` ([`Error::BadT`]) and
/// non-eulerian blown sets ([`Error::NotEulerian`] — such models carry no
/// square root with the required degrees).
pub fn prym_multidegree(model: &QuasistableModel, t: i64) -> Result<Multidegree> {
    if t < MIN_T {
        return Err(Error::BadT(t));
    }
    let g = model.base();
    if let Some(v) = cycles::odd_vertex(g, model.blown()) {
        return Err(Error::NotEulerian(format!(
            "vertex {:?} meets an odd number of blown half-edges",
            g.vertex_name(v)
        )));
    }

    let nv = g.vertex_count();
    let mut degrees = Vec::with_capacity(model.component_count());
    for v in 0..nv {
        let omega = 2 * i64::from(g.vertex_genus(v)) - 2 + i64::from(g.valency(v));
        let m_v = i64::from(model.blown_half_edges_at(v));
        let d_v = t
            .checked_mul(omega)
            .and_then(|x| x.checked_sub(m_v / 2))
            .ok_or_else(|| overflow("a vertex degree"))?;
        degrees.push(d_v);
    }
    degrees.resize(model.component_count(), 1); // exceptional components

    let mut total = 0i64;
    for &d in &degrees {
        total = total.checked_add(d).ok_or_else(|| overflow("the total degree"))?;
    }
    // Identity check: Σ degrees = 2t(g − 1).
    debug_assert_eq!(total as i128, 2 * t as i128 * (g.genus() as i128 - 1));

    Ok(Multidegree { model: model.clone(), t, degrees, total })
}

/// One row of the exhaustive Basic-Inequality certification.
#[derive(Debug, Clone)]
pub struct SubcurveCertificate {
    /// Bit `c` set iff component `c` belongs to `Y`.
    pub mask: u32,
    /// Sorted component indices of `Y`.
    pub members: Vec<usize>,
    pub d_y: i64,
    pub k_y: u32,
    /// Arithmetic genus of `Y`; negative for sufficiently disconnected `Y`.
    pub g_y: i64,
    pub m_y: Rat,
    /// `d_Y − m_Y ≥ 0` when the inequality holds.
    pub slack_low: Rat,
    /// `m_Y + k_Y − d_Y ≥ 0` when the inequality holds.
    pub slack_high: Rat,
    /// Nodes joining non-exceptional parts of `Y` and of its complement.
    pub ktilde_y: u32,
    pub holds: bool,
    /// `d_Y = m_Y` exactly.
    pub lower_equality: bool,
}

/// Edges of the blown-up model as component-index pairs: untouched base
/// edges survive, each blown edge becomes two half-edges through its
/// exceptional component.
fn model_edges(model: &QuasistableModel) -> Vec<(usize, usize)> {
    let g = model.base();
    let nv = g.vertex_count();
    let blown = model.blown_indices();
    let mut edges = Vec::with_capacity(g.edge_count() + blown.len());
    let mut exc_of = vec![usize::MAX; g.edge_count()];
    for (k, &e) in blown.iter().enumerate() {
        exc_of[e] = nv + k;
    }
    for e in 0..g.edge_count() {
        let (a, b) = g.edge_ends(e);
        if exc_of[e] != usize::MAX {
            edges.push((a, exc_of[e]));
            edges.push((b, exc_of[e]));
        } else {
            edges.push((a, b));
        }
    }
    edges
}

/// Certify the Basic Inequality for every nonempty proper subset of
/// components, in ascending mask order. All certificates of a valid
/// multidegree satisfy `holds`; a failure is a bug diagnostic, not an error.
pub fn basic_inequality_check(md: &Multidegree) -> Result<Vec<SubcurveCertificate>> {
    let n = md.model.component_count();
    if n > MAX_COMPONENTS {
        return Err(Error::TooManyComponents { count: n, limit: MAX_COMPONENTS });
    }
    let g = md.model.base();
    let nv = g.vertex_count();
    let edges = model_edges(&md.model);
    let genus_total = g.genus() as i128;
    let d_total = md.total as i128;
    let den = 2 * (genus_total - 1); // > 0 since g ≥ 2

    let mut certs = Vec::with_capacity((1usize << n) - 2);
    for mask in 1u32..((1u32 << n) - 1) {
        let mut d_y: i64 = 0;
        let mut genus_sum: i64 = 0;
        let mut v_count: i64 = 0;
        let mut members = Vec::new();
        for c in 0..n {
            if mask >> c & 1 == 1 {
                d_y += md.degrees[c];
                if c < nv {
                    genus_sum += i64::from(g.vertex_genus(c));
                }
                v_count += 1;
                members.push(c);
            }
        }
        let mut e_y: i64 = 0;
        let mut k_y: u32 = 0;
        let mut ktilde_y: u32 = 0;
        for &(a, b) in &edges {
            let ia = mask >> a & 1 == 1;
            let ib = mask >> b & 1 == 1;
            if ia && ib {
                e_y += 1;
            } else if ia != ib {
                k_y += 1;
                if a < nv && b < nv {
                    ktilde_y += 1;
                }
            }
        }
        let g_y = genus_sum + e_y - v_count + 1;

        // m_Y = (d(2g_Y − 2 + k_Y) − (g−1)k_Y) / (2(g−1)); compare in
        // cross-multiplied integers, materialize the rationals once.
        let num = d_total * (2 * g_y as i128 - 2 + k_y as i128) - (genus_total - 1) * k_y as i128;
        let lhs = den * d_y as i128;
        let holds = num <= lhs && lhs <= num + den * k_y as i128;
        let lower_equality = num == lhs;
        let m_y = Rat::new(num, den);
        let slack_low = Rat::new(lhs - num, den);
        let slack_high = Rat::new(num + den * k_y as i128 - lhs, den);

        certs.push(SubcurveCertificate {
            mask,
            members,
            d_y,
            k_y,
            g_y,
            m_y,
            slack_low,
            slack_high,
            ktilde_y,
            holds,
            lower_equality,
        });
    }
    Ok(certs)
}

/// The closed-orbit criterion: wherever the lower bound is attained
/// (`d_Y = m_Y`), no node may join the non-exceptional parts of `Y` and its
/// complement (`k̃_Y = 0`). Always true for valid multidegrees.
pub fn closed_orbit_criterion(_md: &Multidegree, certs: &[SubcurveCertificate]) -> bool {
    certs.iter().all(|c| !c.lower_equality || c.ktilde_y == 0)
}

/// The square-root contribution to the degree of a subcurve, straight from
/// the half-edge bookkeeping: `e_Y = Σ_{v ∈ Y base} (−m_v/2) + #{exceptional
/// components in Y}`, paired with the node count `k_Y`. Satisfies
/// `−k_Y/2 ≤ e_Y ≤ k_Y/2`.
pub fn eta_restriction_bounds(model: &QuasistableModel, members: &[usize]) -> Result<(Rat, u32)> {
    let n = model.component_count();
    let nv = model.base().vertex_count();
    let mut in_y = vec![false; n];
    for &c in members {
        if c >= n {
            return Err(Error::InvalidGraph(format!(
                "component index {c} out of range for a model with {n} components"
            )));
        }
        in_y[c] = true;
    }

    let mut half_numer: i128 = 0; // e_Y numerator over denominator 2
    for v in 0..nv {
        if in_y[v] {
            half_numer -= i128::from(model.blown_half_edges_at(v));
        }
    }
    for c in nv..n {
        if in_y[c] {
            half_numer += 2;
        }
    }
    let e_y = Rat::new(half_numer, 2);

    let mut k_y: u32 = 0;
    for (a, b) in model_edges(model) {
        if in_y[a] != in_y[b] {
            k_y += 1;
        }
    }
    debug_assert!(e_y.abs() * Rat::from_integer(2) <= Rat::from_integer(k_y as i128));
    Ok((e_y, k_y))
}
