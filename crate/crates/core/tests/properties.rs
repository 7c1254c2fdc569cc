//! Structural and numerical invariants over generated graphs.

use approx::assert_abs_diff_eq;
use perron_bounds::linalg::jacobi_eigen;
use perron_bounds::{
    analyze, dense_eigen_oracle, encode_graph6, enumerate_connected, parse_graph6, principal_eigenpair,
    spectral_radius_any, verify_report, Graph, SolverConfig,
};
use proptest::prelude::*;

/// Any simple graph on 1..=12 vertices.
fn any_graph() -> impl Strategy<Value = Graph> {
    (1usize..=12).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|v| (0..v).map(move |u| (u, v)));
            let edges: Vec<_> = pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e).collect();
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

/// A random spanning tree plus extra edges, so always connected.
fn connected_graph() -> impl Strategy<Value = Graph> {
    (2usize..=16).prop_flat_map(|n| {
        (
            proptest::collection::vec(any::<prop::sample::Index>(), n - 1),
            proptest::collection::vec((0..n, 0..n), 0..2 * n),
        )
            .prop_map(move |(parents, extra)| {
                let tree = parents.iter().enumerate().map(|(i, p)| (p.index(i + 1), i + 1));
                let extra = extra.into_iter().filter(|(u, v)| u != v);
                Graph::from_edges(n, tree.chain(extra)).unwrap()
            })
    })
}

fn cfg() -> SolverConfig {
    SolverConfig::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn degrees_sum_to_twice_edges(g in any_graph()) {
        prop_assert_eq!(g.degrees().iter().sum::<usize>(), 2 * g.edge_count());
        prop_assert_eq!(g.edges().count(), g.edge_count());
    }

    #[test]
    fn deleting_a_vertex_lowers_neighbor_degrees(g in any_graph(), pick in any::<prop::sample::Index>()) {
        prop_assume!(g.n() >= 2);
        let v = pick.index(g.n());
        let h = g.delete_vertex(v).unwrap();
        prop_assert_eq!(h.n(), g.n() - 1);
        prop_assert_eq!(h.edge_count(), g.edge_count() - g.degree(v));
        let survivors: Vec<usize> = (0..g.n()).filter(|&u| u != v).collect();
        for (i, &u) in survivors.iter().enumerate() {
            let expected = g.degree(u) - usize::from(g.has_edge(u, v));
            prop_assert_eq!(h.degree(i), expected);
        }
    }

    #[test]
    fn components_partition_the_vertices(g in any_graph()) {
        let parts = g.connected_components();
        let mut seen: Vec<usize> = parts.iter().flatten().copied().collect();
        seen.sort_unstable();
        prop_assert_eq!(seen, (0..g.n()).collect::<Vec<_>>());
        prop_assert_eq!(parts.len() == 1, g.is_connected());
        for (u, v) in g.edges() {
            prop_assert!(parts.iter().any(|c| c.contains(&u) && c.contains(&v)));
        }
    }

    #[test]
    fn graph6_round_trips(g in any_graph()) {
        let text = encode_graph6(&g).unwrap();
        prop_assert_eq!(parse_graph6(&text).unwrap(), g);
    }

    #[test]
    fn edge_order_does_not_matter(g in connected_graph(), shuffle in any::<u64>()) {
        let mut edges: Vec<_> = g.edges().map(|(u, v)| if shuffle & 1 == 0 { (u, v) } else { (v, u) }).collect();
        edges.reverse();
        let shift = (shuffle as usize) % edges.len().max(1);
        edges.rotate_left(shift);
        let h = Graph::from_edges(g.n(), edges).unwrap();
        prop_assert_eq!(&h, &g);
        let (a, b) = (principal_eigenpair(&g, &cfg()).unwrap(), principal_eigenpair(&h, &cfg()).unwrap());
        prop_assert!((a.rho - b.rho).abs() <= 1e-12);
    }

    #[test]
    fn power_iteration_matches_oracle(g in connected_graph()) {
        let s = principal_eigenpair(&g, &cfg()).unwrap();
        let e = dense_eigen_oracle(&g).unwrap();
        prop_assert!((s.rho - e.values[0]).abs() <= 1e-9);
        let sign = e.vectors[0].iter().sum::<f64>().signum();
        for (x, y) in s.eigenvector.iter().zip(&e.vectors[0]) {
            prop_assert!((x - sign * y).abs() <= 1e-8);
        }
    }

    #[test]
    fn eigenvector_is_positive_unit_and_rayleigh_consistent(g in connected_graph()) {
        let s = principal_eigenpair(&g, &cfg()).unwrap();
        prop_assert!(s.eigenvector.iter().all(|&x| x > 0.0));
        let norm: f64 = s.eigenvector.iter().map(|x| x * x).sum();
        prop_assert!((norm - 1.0).abs() <= 1e-12);
        let rayleigh: f64 = g.edges().map(|(u, v)| 2.0 * s.eigenvector[u] * s.eigenvector[v]).sum();
        prop_assert!((rayleigh - s.rho).abs() <= 1e-10);
    }

    #[test]
    fn jacobi_trace_and_square_sum(g in any_graph()) {
        let e = jacobi_eigen(&g.adjacency_matrix(), g.n()).unwrap();
        prop_assert!(e.values.iter().sum::<f64>().abs() <= 1e-10);
        let squares: f64 = e.values.iter().map(|l| l * l).sum();
        prop_assert!((squares - 2.0 * g.edge_count() as f64).abs() <= 1e-8);
        prop_assert!(e.values.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn radius_of_any_graph_is_largest_component_radius(g in any_graph()) {
        let rho = spectral_radius_any(&g).unwrap();
        let oracle = dense_eigen_oracle(&g).unwrap().values[0];
        prop_assert!((rho - oracle).abs() <= 1e-9);
    }

    #[test]
    fn every_bound_holds(g in connected_graph()) {
        let report = analyze(&g, &cfg()).unwrap();
        prop_assert!(verify_report(&report, &cfg()).is_empty());
        for row in &report.rows {
            prop_assert!(row.rho_deleted < report.spectral.rho - 1e-12);
            prop_assert!((row.exact_sq - row.actual * row.actual).abs() <= 1e-8);
        }
    }

    #[test]
    fn non_stars_stay_strictly_below_one_over_root_two(g in connected_graph()) {
        prop_assume!(!g.is_star());
        let s = principal_eigenpair(&g, &cfg()).unwrap();
        prop_assert!(s.x_max() < std::f64::consts::FRAC_1_SQRT_2 - 1e-12);
    }
}

#[test]
fn every_connected_five_vertex_graph_round_trips() {
    for g in enumerate_connected(5).unwrap() {
        let text = encode_graph6(&g).unwrap();
        assert_eq!(parse_graph6(&text).unwrap(), g, "{text}");
    }
}

#[test]
fn adding_an_edge_never_lowers_the_radius() {
    for n in 2..=6 {
        for g in enumerate_connected(n).unwrap() {
            let rho = principal_eigenpair(&g, &cfg()).unwrap().rho;
            for u in 0..n {
                for v in u + 1..n {
                    if !g.has_edge(u, v) {
                        let bigger = principal_eigenpair(&g.with_edge(u, v).unwrap(), &cfg()).unwrap().rho;
                        assert!(bigger > rho, "{} + ({u},{v})", encode_graph6(&g).unwrap());
                    }
                }
            }
        }
    }
}

#[test]
fn bipartite_graphs_converge_despite_symmetric_spectrum() {
    for (a, b) in [(1, 1), (2, 2), (3, 3), (2, 5), (4, 7)] {
        let g = Graph::from_edges(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)))).unwrap();
        let s = principal_eigenpair(&g, &cfg()).unwrap();
        assert_abs_diff_eq!(s.rho, ((a * b) as f64).sqrt(), epsilon = 1e-12);
        assert!(s.residual <= 1e-12);
    }
    for n in [4, 6, 10, 20] {
        let even_cycle = perron_bounds::named_graph(perron_bounds::Family::Cycle, n).unwrap();
        let s = principal_eigenpair(&even_cycle, &cfg()).unwrap();
        assert_abs_diff_eq!(s.rho, 2.0, epsilon = 1e-12);
    }
}

#[test]
fn regular_graphs_have_flat_eigenvectors() {
    for n in 2..=6 {
        for g in enumerate_connected(n).unwrap().filter(|g| g.is_regular().is_some()) {
            let s = principal_eigenpair(&g, &cfg()).unwrap();
            assert_abs_diff_eq!(s.rho, g.is_regular().unwrap() as f64, epsilon = 1e-12);
            for x in &s.eigenvector {
                assert_abs_diff_eq!(*x, 1.0 / (n as f64).sqrt(), epsilon = 1e-10);
            }
        }
    }
}
