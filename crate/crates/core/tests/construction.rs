mod common;

use graph_energy::construction::{
    construct_graph, construct_max_energy_graph, energy_target, select_dense_subset, SearchBudget,
};
use graph_energy::{paley_graph, singular_values, VertexSet};

/// Maximum induced edge count over all `k`-subsets of `0..n`.
fn exhaustive_max(g: &graph_energy::Graph, k: usize) -> usize {
    let n = g.order();
    let mut best = 0;
    let mut count = 0;
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != k {
            continue;
        }
        count += 1;
        let members: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let x = VertexSet::new(members, n).unwrap();
        best = best.max(g.induced_subgraph(&x).unwrap().edge_count());
    }
    assert_eq!(count, binomial(n, k));
    best
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn paley_13_ten_subsets_match_exhaustive_search() {
    let g = paley_graph(13).unwrap();
    let best = exhaustive_max(&g, 10);
    assert_eq!(binomial(13, 10), 286);
    assert!(best >= 23);
    let found = select_dense_subset(&g, 10, 0, SearchBudget::default_for(10)).unwrap();
    assert_eq!(found.induced_edges, best);
}

#[test]
fn search_meets_the_average_on_small_paley_graphs() {
    for (p, k) in [(13u64, 7usize), (17, 9), (17, 12), (29, 20)] {
        let g = paley_graph(p).unwrap();
        let s = select_dense_subset(&g, k, 1, SearchBudget::default_for(k)).unwrap();
        assert!(4 * s.induced_edges >= k * (k - 1), "p = {p}, k = {k}");
        if p <= 17 {
            assert_eq!(s.induced_edges, exhaustive_max(&g, k));
        }
    }
}

#[test]
fn reports_respect_interlacing_and_the_floor() {
    for n in (4..=80).step_by(3) {
        let (r, g) = construct_graph(n, 3, SearchBudget::default_for(n)).unwrap();
        assert_eq!(g.order(), n);
        assert_eq!(g.edge_count(), r.induced_edges);
        let host = singular_values(&paley_graph(r.p).unwrap().adjacency_matrix().unwrap()).unwrap();
        assert!(r.sigma1 <= host.sigma(1) + 1e-9);
        assert!(r.sigma2 <= host.sigma(2) + 1e-9);
        assert!((host.sigma(1) - r.host_sigma1).abs() < 1e-9);
        assert!((host.sigma(2) - r.host_sigma2).abs() < 1e-9);
        if let Some(floor) = r.energy_floor_via_lowb {
            assert!(r.energy_achieved >= floor - 1e-8 * n as f64, "n = {n}: {r:?}");
        }
        assert!(4 * r.induced_edges >= n * (n - 1), "n = {n}");
        assert_eq!(r.certified, r.energy_achieved >= r.target);
        assert_eq!(r.x.len(), n);
    }
}

#[test]
fn certifies_across_a_range() {
    for n in 20..=60 {
        let r = construct_max_energy_graph(n, 0).unwrap();
        assert!(r.certified, "n = {n}: {r:?}");
    }
}

#[test]
fn hundred_vertices() {
    let r = construct_max_energy_graph(100, 0).unwrap();
    assert_eq!(r.p, 101);
    assert!(r.window_ok);
    assert!((r.target - (500.0 - 100f64.powf(1.1))).abs() < 1e-9);
    assert!((r.target - 341.511).abs() < 1e-3);
    assert!(r.certified);
    assert!(r.energy_achieved > 540.0 && r.energy_achieved < 553.0, "{}", r.energy_achieved);
    assert!(r.energy_achieved >= r.energy_floor_via_lowb.unwrap());
}

#[test]
fn window_fails_at_small_n_but_construction_proceeds() {
    let r = construct_max_energy_graph(10, 0).unwrap();
    assert_eq!(r.p, 13);
    assert!(!r.window_ok);
    assert!(r.certified);
}

#[test]
fn reports_are_reproducible() {
    let a = construct_max_energy_graph(47, 9).unwrap();
    let b = construct_max_energy_graph(47, 9).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.to_document().to_text(), b.to_document().to_text());
}

#[test]
fn target_formula() {
    assert!((energy_target(100) - 341.5106807).abs() < 1e-6);
    assert!(energy_target(4) < 0.0);
}
