//! A brute-force oracle for the fiber computation, written against the raw
//! definitions with none of the library's machinery: subsets are walked as
//! bitmasks of the full `2^{|E|}` power set, parity is counted per vertex
//! from scratch, and first Betti numbers come from a plain union–find. Any
//! disagreement with the library is a bug in one of the two.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use prymograph::fiber;
use prymograph::DualGraph;

pub struct OracleRecord {
    pub sigma: Vec<usize>,
    pub sigma_betti1: usize,
    pub delta_betti1: usize,
    pub eta: BigUint,
    pub mult: BigUint,
    pub exponent: usize,
}

pub struct OracleFiber {
    pub betti1: usize,
    pub records: Vec<OracleRecord>,
    pub component_count: BigUint,
    pub length: BigUint,
    pub prym: BTreeSet<usize>,
    pub spin: BTreeSet<usize>,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// First Betti number of the subgraph spanned by the chosen edges and the
/// vertices they touch: `|E| + #components − |V|`.
fn subset_betti1(g: &DualGraph, bits: u64) -> usize {
    let n = g.vertex_count();
    let mut parent: Vec<usize> = (0..n).collect();
    let mut touched = vec![false; n];
    let mut edge_count = 0usize;
    for e in 0..g.edge_count() {
        if bits >> e & 1 == 1 {
            edge_count += 1;
            let (a, b) = g.edge_ends(e);
            touched[a] = true;
            touched[b] = true;
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
    }
    let mut roots = BTreeSet::new();
    let mut vertex_count = 0usize;
    for v in 0..n {
        if touched[v] {
            vertex_count += 1;
            roots.insert(find(&mut parent, v));
        }
    }
    edge_count + roots.len() - vertex_count
}

fn pow2(e: usize) -> BigUint {
    BigUint::from(1u8) << e
}

pub fn oracle_fiber(g: &DualGraph) -> OracleFiber {
    let m = g.edge_count();
    assert!(m <= 20, "oracle walks the full power set; {m} edges is too many");
    let n = g.vertex_count();
    let full: u64 = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
    let gnu: usize = (0..n).map(|v| g.vertex_genus(v) as usize).sum();
    let betti1 = subset_betti1(g, full);

    let mut eulerian = Vec::new();
    for bits in 0..=full {
        let mut degree = vec![0u32; n];
        for e in 0..m {
            if bits >> e & 1 == 1 {
                let (a, b) = g.edge_ends(e);
                degree[a] += 1;
                degree[b] += 1;
            }
        }
        if degree.iter().all(|d| d % 2 == 0) {
            eulerian.push(bits);
        }
    }
    assert_eq!(eulerian.len(), 1usize << betti1, "cycle space size must be 2^b1");

    let mut records = Vec::new();
    let mut component_count = BigUint::default();
    let mut length = BigUint::default();
    let mut prym = BTreeSet::new();
    let mut spin = BTreeSet::new();
    for &bits in &eulerian {
        let delta = full & !bits;
        let delta_betti1 = subset_betti1(g, delta);
        let eta = pow2(2 * gnu + delta_betti1);
        let exponent = betti1 - delta_betti1;
        let mult = pow2(exponent);
        component_count += &eta;
        length += &eta * &mult;
        prym.insert(exponent);
        spin.insert(betti1 - subset_betti1(g, bits));
        records.push(OracleRecord {
            sigma: (0..m).filter(|&e| bits >> e & 1 == 1).collect(),
            sigma_betti1: subset_betti1(g, bits),
            delta_betti1,
            eta,
            mult,
            exponent,
        });
    }

    OracleFiber { betti1, records, component_count, length, prym, spin }
}

/// Compare the library's fiber computation against the oracle, field by
/// field, and check the closed form for the total length.
pub fn assert_fiber_matches(g: &DualGraph) {
    let oracle = oracle_fiber(g);
    let r = fiber::prym_fiber(g, 24).unwrap();

    assert_eq!(r.betti1, oracle.betti1);
    assert_eq!(r.records.len(), oracle.records.len(), "stratum count differs");

    let by_sigma: BTreeMap<Vec<usize>, &OracleRecord> =
        oracle.records.iter().map(|rec| (rec.sigma.clone(), rec)).collect();
    for rec in &r.records {
        let key = rec.sigma.sorted_indices();
        let expect = by_sigma
            .get(&key)
            .unwrap_or_else(|| panic!("library emitted stratum {key:?} the oracle lacks"));
        assert_eq!(rec.sigma_betti1, expect.sigma_betti1, "sigma b1 on {key:?}");
        assert_eq!(rec.delta_betti1, expect.delta_betti1, "delta b1 on {key:?}");
        assert_eq!(rec.eta_count, expect.eta, "square-root count on {key:?}");
        assert_eq!(rec.multiplicity, expect.mult, "multiplicity on {key:?}");
        assert_eq!(rec.multiplicity_exponent, expect.exponent, "exponent on {key:?}");
    }

    assert_eq!(r.component_count, oracle.component_count);
    assert_eq!(r.length, oracle.length);
    assert_eq!(r.prym_exponents, oracle.prym);
    assert_eq!(r.spin_exponents, oracle.spin);
    assert_eq!(r.length, pow2(2 * r.genus as usize), "length must be 2^(2g)");
    assert_eq!(
        fiber::spin_multiplicity_set(g, 24).unwrap(),
        oracle.spin,
        "standalone parity set must match"
    );
}
