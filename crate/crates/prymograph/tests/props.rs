//! Randomized structural properties over generated stable graphs. The
//! generator builds a random spanning tree, sprinkles extra edges and loops,
//! then repairs genera upward until the graph is stable with total genus at
//! least 2 — so every case exercises the full pipeline, not just the happy
//! path shapes the unit tests pin down.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use proptest::prelude::*;
use prymograph::degrees::Rat;
use prymograph::search::SearchSpace;
use prymograph::{canon, cover, cycles, degrees, fiber, io, search};
use prymograph::{DualGraph, EdgeSubset, QuasistableModel};

fn build_stable(n: usize, parents: &[u32], extras: &[(usize, usize)], seeds: &[u32]) -> DualGraph {
    let mut ends: Vec<(usize, usize)> = Vec::new();
    for i in 1..n {
        ends.push((parents[i - 1] as usize % i, i));
    }
    ends.extend(extras.iter().copied());

    let mut valency = vec![0u32; n];
    for &(a, b) in &ends {
        valency[a] += 1;
        valency[b] += 1;
    }
    let mut genera: Vec<u32> = seeds.to_vec();
    for v in 0..n {
        let floor = match valency[v] {
            0 => 2,
            1 | 2 => 1,
            _ => 0,
        };
        genera[v] = genera[v].max(floor);
    }
    let b1 = ends.len() + 1 - n;
    let total: u64 = genera.iter().map(|&x| u64::from(x)).sum::<u64>() + b1 as u64;
    if total < 2 {
        genera[0] += (2 - total) as u32;
    }

    let vertices: Vec<(String, u32)> = (0..n).map(|v| (format!("v{v}"), genera[v])).collect();
    let edges: Vec<(String, String, String)> = ends
        .iter()
        .enumerate()
        .map(|(i, &(a, b))| (format!("e{i}"), format!("v{a}"), format!("v{b}")))
        .collect();
    DualGraph::new(vertices, edges).unwrap()
}

fn stable_graph() -> impl Strategy<Value = DualGraph> {
    (1usize..=5).prop_flat_map(|n| {
        (
            proptest::collection::vec(any::<u32>(), n.saturating_sub(1)),
            proptest::collection::vec((0..n, 0..n), 0..=4),
            proptest::collection::vec(0u32..=2, n),
        )
            .prop_map(move |(parents, extras, seeds)| build_stable(n, &parents, &extras, &seeds))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generator_output_is_stable_and_connected(g in stable_graph()) {
        prop_assert!(g.is_stable());
        prop_assert!(g.genus() >= 2);
        prop_assert_eq!(g.betti1(), g.edge_count() + 1 - g.vertex_count());
        prop_assert_eq!(g.genus(), g.genus_nu() + g.betti1() as u64);
    }

    #[test]
    fn eulerian_family_is_a_group_of_the_right_size(g in stable_graph()) {
        let family = cycles::eulerian_subsets(&g, 24).unwrap();
        prop_assert_eq!(family.len(), 1usize << g.betti1());
        let members: BTreeSet<Vec<usize>> =
            family.iter().map(|s| s.sorted_indices()).collect();
        prop_assert!(members.contains(&Vec::new()), "the empty set is always a member");
        for a in &family {
            prop_assert!(cycles::is_eulerian(&g, a));
            for b in &family {
                let mut xor = a.clone();
                xor.symmetric_difference_with(b);
                prop_assert!(
                    members.contains(&xor.sorted_indices()),
                    "the family must be closed under symmetric difference"
                );
            }
        }
    }

    #[test]
    fn multiplicity_set_laws_hold(g in stable_graph()) {
        let report = fiber::check_multiplicity_laws(&g, 24).unwrap();
        prop_assert!(report.all_hold, "law failure: {report:?}");
    }

    #[test]
    fn fiber_length_is_two_pow_2g(g in stable_graph()) {
        let r = fiber::prym_fiber(&g, 24).unwrap();
        let want = BigUint::from(1u8) << (2 * r.genus as usize);
        prop_assert_eq!(&r.length, &want);
        let summed: BigUint =
            r.records.iter().map(|rec| &rec.eta_count * &rec.multiplicity).sum();
        prop_assert_eq!(summed, want);
    }

    #[test]
    fn degree_bounds_are_complementary(g in stable_graph()) {
        for sigma in cycles::eulerian_subsets(&g, 24).unwrap() {
            let model = QuasistableModel::new(g.clone(), sigma).unwrap();
            let n = model.component_count();
            let md = degrees::prym_multidegree(&model, 10).unwrap();
            let certs = degrees::basic_inequality_check(&md).unwrap();
            let full: u32 = (1u32 << n) - 1;
            prop_assert_eq!(certs.len() as u32, full.saturating_sub(1));
            let total = Rat::from_integer(i128::from(md.total));
            for mask in 1..full {
                let c = &certs[(mask - 1) as usize];
                prop_assert_eq!(c.mask, mask);
                prop_assert!(c.holds);
                let co = &certs[((full ^ mask) - 1) as usize];
                prop_assert_eq!(c.k_y, co.k_y, "crossing count must be symmetric");
                let sum = c.m_y + co.m_y + Rat::from_integer(i128::from(c.k_y));
                prop_assert_eq!(sum, total, "m_Y + m_Yc + k_Y must equal the total degree");
            }
        }
    }

    #[test]
    fn covers_from_enumerated_monodromies_are_admissible(g in stable_graph()) {
        let blown = EdgeSubset::empty(&g);
        let data = cover::enumerate_monodromies(&g, &blown, 20).unwrap();
        for datum in data.take(8) {
            let cg = cover::build_cover(&g, &blown, &datum).unwrap();
            prop_assert!(
                cover::verify_admissible(&cg),
                "audit failures: {:?}",
                cover::admissibility_failures(&cg)
            );
            prop_assert_eq!(cg.cover.genus(), 2 * g.genus() - 1);
        }
    }

    #[test]
    fn canonical_form_ignores_labels_and_order(g in stable_graph()) {
        let n = g.vertex_count();
        let vertices: Vec<(String, u32)> = (0..n)
            .rev()
            .map(|v| (format!("w{v}"), g.vertex_genus(v)))
            .collect();
        let edges: Vec<(String, String, String)> = (0..g.edge_count())
            .rev()
            .map(|e| {
                let (a, b) = g.edge_ends(e);
                (format!("f{e}"), format!("w{b}"), format!("w{a}"))
            })
            .collect();
        let relabeled = DualGraph::new(vertices, edges).unwrap();
        prop_assert_eq!(
            canon::canonical_form(&g).unwrap(),
            canon::canonical_form(&relabeled).unwrap()
        );
        prop_assert!(canon::are_isomorphic(&g, &relabeled).unwrap());
    }

    #[test]
    fn graph_json_round_trips(g in stable_graph()) {
        let text = io::to_pretty_json(&io::GraphJson::from_graph(&g)).unwrap();
        let back = io::parse_graph(&text).unwrap();
        prop_assert_eq!(back.vertex_count(), g.vertex_count());
        prop_assert_eq!(back.edge_count(), g.edge_count());
        for v in 0..g.vertex_count() {
            prop_assert_eq!(back.vertex_name(v), g.vertex_name(v));
            prop_assert_eq!(back.vertex_genus(v), g.vertex_genus(v));
        }
        for e in 0..g.edge_count() {
            prop_assert_eq!(back.edge_name(e), g.edge_name(e));
            prop_assert_eq!(back.edge_ends(e), g.edge_ends(e));
        }
    }

    #[test]
    fn enumeration_contains_every_generated_shape(g in stable_graph()) {
        // Any generated graph small enough for the enumerator's space must
        // be found by it, up to isomorphism — the search is exhaustive.
        let n = g.vertex_count();
        let m = g.edge_count();
        if n <= 3 && m <= 5 {
            let genus_cap = (0..n).map(|v| g.vertex_genus(v)).max().unwrap();
            let space = SearchSpace {
                max_vertices: n,
                max_edges: m,
                max_genus_per_vertex: genus_cap,
                min_total_genus: 2,
                max_total_genus: g.genus(),
                filters: vec![],
            };
            let graphs = search::enumerate_graphs(&space).unwrap();
            prop_assert!(
                graphs.iter().any(|h| canon::are_isomorphic(h, &g).unwrap()),
                "enumeration missed a stable graph with {n} vertices and {m} edges"
            );
        }
    }
}
