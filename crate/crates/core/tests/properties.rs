use modgraph::canon::canonical_form;
use modgraph::convergence;
use modgraph::graph::{self, Edge, Multigraph};
use modgraph::kirchhoff;
use modgraph::matroid::{self, CographicMatroid};
use modgraph::rational::int;
use proptest::prelude::*;

/// Connected multigraph: a random tree on `v` vertices plus extra edges.
fn multigraph(max_v: usize, max_extra: usize) -> impl Strategy<Value = Multigraph> {
    (1..=max_v).prop_flat_map(move |v| {
        (
            prop::collection::vec(any::<usize>(), v - 1),
            prop::collection::vec((0..v, 0..v), 0..=max_extra),
        )
            .prop_map(move |(parents, extra)| {
                let mut edges: Vec<Edge> =
                    parents.iter().enumerate().map(|(i, p)| Edge::new(p % (i + 1), i + 1)).collect();
                edges.extend(extra.into_iter().map(|(a, b)| Edge::new(a, b)));
                Multigraph::new(vec![0; v], edges).unwrap()
            })
    })
}

fn bridgeless(max_v: usize, max_extra: usize) -> impl Strategy<Value = Multigraph> {
    multigraph(max_v, max_extra)
        .prop_map(|g| convergence::bridgeless_core(&g).unwrap().graph)
        .prop_filter("needs a cycle", |g| g.num_edges() > 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kirchhoff_routes_agree(g in multigraph(5, 5)) {
        prop_assert_eq!(kirchhoff::psi(&g), kirchhoff::psi_trees(&g));
    }

    #[test]
    fn psi_is_homogeneous_of_degree_b(g in multigraph(5, 5)) {
        let p = kirchhoff::psi(&g);
        prop_assert_eq!(p.homogeneous_degree(), Some(graph::betti(&g) as u32));
        prop_assert!(p.terms().all(|(m, c)| m.is_squarefree() && *c == 1.into()));
    }

    #[test]
    fn corank_axioms(g in bridgeless(5, 6), a in any::<u64>(), b in any::<u64>()) {
        let m = CographicMatroid::new(g).unwrap();
        let full = m.full_mask();
        let (a, b) = (a & full, b & full);
        let rk = |s| m.corank_mask(s);
        prop_assert!(rk(a) <= a.count_ones() as usize);
        prop_assert!(rk(a & b) <= rk(a));
        prop_assert!(rk(a | b) + rk(a & b) <= rk(a) + rk(b));
        prop_assert_eq!(rk(full), m.rank());
    }

    #[test]
    fn density_certificate_checks_out(g in bridgeless(5, 6)) {
        let m = CographicMatroid::new(g.clone()).unwrap();
        let cert = matroid::build_witness(&m).unwrap();
        cert.verify(&m).unwrap();
        let t0 = matroid::mask_of(&cert.t0);
        prop_assert_eq!(int(cert.t0.len() as i64), &cert.m * int(m.corank_mask(t0) as i64));
        prop_assert!(cert.m >= convergence::edge_ratio(&g).unwrap());
    }

    #[test]
    fn threshold_equals_lp_value(g in bridgeless(4, 5)) {
        prop_assume!(graph::spanning_trees(&g).len() <= 200);
        let m = matroid::density(&CographicMatroid::new(g.clone()).unwrap()).unwrap().m;
        prop_assert_eq!(matroid::cover_lp_oracle(&g).unwrap(), m);
    }

    #[test]
    fn optimal_contraction_keeps_c(g in bridgeless(5, 6)) {
        let c = convergence::threshold_value(&g).unwrap();
        let oc = convergence::optimal_contraction(&g).unwrap();
        prop_assert_eq!(&oc.c, &c);
        prop_assert_eq!(convergence::edge_ratio(&oc.graph).unwrap(), c);
    }

    #[test]
    fn bridges_do_not_change_c(g in multigraph(5, 5)) {
        prop_assume!(graph::betti(&g) > 0);
        let core = convergence::bridgeless_core(&g).unwrap().graph;
        prop_assert!(graph::bridges(&core).is_empty());
        prop_assert_eq!(graph::betti(&core), graph::betti(&g));
        prop_assert_eq!(
            convergence::threshold_value(&g).unwrap(),
            convergence::threshold_value(&core).unwrap()
        );
    }

    #[test]
    fn canonical_form_ignores_labels(g in multigraph(5, 4), seed in any::<u64>()) {
        let n = g.num_vertices();
        let mut perm: Vec<usize> = (0..n).collect();
        // Deterministic shuffle from the seed.
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let mut edges: Vec<Edge> = g.edges().iter().map(|e| Edge::new(perm[e.head], perm[e.tail])).collect();
        edges.reverse();
        let h = Multigraph::new(vec![0; n], edges).unwrap();
        prop_assert_eq!(canonical_form(&g).0, canonical_form(&h).0);
        prop_assert_eq!(
            convergence::fingerprint(&g),
            convergence::fingerprint(&h)
        );
    }

    #[test]
    fn json_round_trip(g in multigraph(5, 4)) {
        prop_assert_eq!(graph::parse_graph(&g.to_json()).unwrap(), g.clone());
        if g.num_edges() > 0 {
            let text = graph::parse_graph(&g.to_edge_list()).unwrap();
            prop_assert_eq!(text.edges(), g.edges());
        }
    }
}
