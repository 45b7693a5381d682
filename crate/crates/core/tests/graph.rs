use cascadelab::generators::GeneratorSpec;
use cascadelab::graph::{average_clustering, betweenness, components, high_betweenness_mean_degree};
use cascadelab::{Graph, RngStream};
use proptest::prelude::*;

fn waxman(n: usize, s: f64, seed: u64, r: u64) -> Graph {
    GeneratorSpec::Waxman { n, s, target_z: 6.0 }
        .generate(RngStream::new(seed, r))
        .unwrap()
}

fn mean_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let m = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (n - 1.0);
    (m, (var / n).sqrt())
}

#[test]
fn local_waxman_keeps_a_giant_component() {
    for r in 0..20 {
        let giant = components(&waxman(5000, 10.0, 31, r)).giant_size;
        assert!(giant > 4500, "realization {r}: giant {giant}");
    }
}

#[test]
fn locality_raises_clustering() {
    let c0: Vec<f64> = (0..30).map(|r| average_clustering(&waxman(5000, 0.0, 32, r))).collect();
    let c10: Vec<f64> = (0..30).map(|r| average_clustering(&waxman(5000, 10.0, 33, r))).collect();
    let (m0, se0) = mean_se(&c0);
    let (m10, se10) = mean_se(&c10);
    assert!(m10 - 3.0 * se10 > m0 + 3.0 * se0, "{m0} vs {m10}");
}

#[test]
fn high_betweenness_nodes_are_better_connected_without_locality() {
    // n = 200: at larger n hardly any node reaches the 0.03 threshold
    let per = |s: f64, seed: u64| -> Vec<f64> {
        (0..30)
            .filter_map(|r| high_betweenness_mean_degree(&waxman(200, s, seed, r), 0.03).unwrap())
            .collect()
    };
    let er = per(0.0, 34);
    let local = per(10.0, 35);
    assert!(er.len() >= 25 && local.len() >= 25);
    let (m0, se0) = mean_se(&er);
    let (m10, se10) = mean_se(&local);
    assert!(m0 - 1.96 * se0 > m10 + 1.96 * se10, "{m0} vs {m10}");
}

#[test]
fn threshold_is_out_of_reach_for_large_random_graphs() {
    let g = GeneratorSpec::Er { n: 5000, q: 6.0 / 4999.0 }
        .generate(RngStream::new(36, 0))
        .unwrap();
    let b = betweenness(&g);
    let max = b.values.iter().cloned().fold(0.0, f64::max);
    assert!(max < 0.03, "max betweenness {max}");
    assert_eq!(high_betweenness_mean_degree(&g, 0.03).unwrap(), None);
}

fn arb_graph() -> impl Strategy<Value = Graph> {
    (1usize..30).prop_flat_map(|n| {
        prop::collection::vec((0..n, 0..n), 0..80).prop_map(move |pairs| {
            let mut edges: Vec<(usize, usize)> = pairs
                .into_iter()
                .filter(|(u, v)| u != v)
                .map(|(u, v)| (u.min(v), u.max(v)))
                .collect();
            edges.sort_unstable();
            edges.dedup();
            Graph::from_edges(n, &edges, false, None).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn handshake(g in arb_graph()) {
        prop_assert_eq!(g.degrees().iter().sum::<usize>(), 2 * g.edge_count());
    }

    #[test]
    fn components_partition_nodes(g in arb_graph()) {
        let p = components(&g);
        prop_assert_eq!(p.sizes.iter().sum::<usize>(), g.node_count());
        prop_assert_eq!(p.giant_size, p.sizes.iter().copied().max().unwrap_or(0));
        for &(u, v) in g.edges() {
            prop_assert_eq!(p.component_id[u], p.component_id[v]);
        }
    }

    #[test]
    fn clustering_in_unit_interval(g in arb_graph()) {
        let c = average_clustering(&g);
        prop_assert!((0.0..=1.0).contains(&c));
    }

    #[test]
    fn betweenness_in_unit_interval(g in arb_graph()) {
        prop_assert!(betweenness(&g).values.iter().all(|b| (0.0..=1.0 + 1e-12).contains(b)));
    }

    #[test]
    fn complete_and_star_betweenness(n in 3usize..15) {
        let complete: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let k = Graph::from_edges(n, &complete, false, None).unwrap();
        prop_assert!(betweenness(&k).values.iter().all(|&b| b == 0.0));
        let spokes: Vec<_> = (1..n).map(|v| (0, v)).collect();
        let star = Graph::from_edges(n, &spokes, false, None).unwrap();
        let b = betweenness(&star).values;
        prop_assert!((b[0] - 1.0).abs() < 1e-12);
        prop_assert!(b[1..].iter().all(|&x| x == 0.0));
    }
}
