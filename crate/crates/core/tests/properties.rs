use icolor_core::composition::inner_coloring;
use icolor_core::construct::{prescribed_lse_diagonals, tree_construction};
use icolor_core::generators::{
    complete, complete_bipartite, cycle, empty, hypercube, path, random_tree, star,
};
use icolor_core::search::bfs_edge_order;
use icolor_core::{
    bounds, chromatic_index_small, classify, compose, compose_auto, complete_bipartite_color,
    even_cycle_color, find_continuous_use, find_interval_t, regular_delta_color, shift_coloring,
    spectra, tree_continuous_use, upper_spectral_edge_all, verify_interval, ColorSequence,
    EdgeColoring, Graph, SearchBudget, SearchOutcome, Strategy,
};
use proptest::prelude::*;
use proptest::strategy::Strategy as _;

fn arb_graph(max_v: usize) -> impl proptest::strategy::Strategy<Value = Graph> {
    (1..=max_v).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let k = pairs.len();
        proptest::collection::vec(any::<bool>(), k).prop_map(move |keep| {
            let edges = pairs
                .iter()
                .zip(&keep)
                .filter(|(_, &b)| b)
                .map(|(&e, _)| e)
                .collect();
            Graph::new("arb", n, edges).unwrap()
        })
    })
}

fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::new("petersen", 10, edges).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn compose_degree_and_edge_count(g in arb_graph(5), h in arb_graph(4)) {
        let p = compose(&g, &h).unwrap();
        let n = h.num_vertices();
        prop_assert_eq!(p.num_vertices(), g.num_vertices() * n);
        prop_assert_eq!(p.num_edges(), g.num_edges() * n * n + g.num_vertices() * h.num_edges());
        let (dg, dh, dp) = (g.degrees(), h.degrees(), p.degrees());
        for i in 0..g.num_vertices() {
            for j in 0..n {
                prop_assert_eq!(dp[i * n + j], dg[i] * n + dh[j]);
            }
        }
    }

    #[test]
    fn canonical_json_round_trip(g in arb_graph(7)) {
        let text = g.to_json().unwrap();
        let back = Graph::from_json(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(back.to_json().unwrap(), text);
    }

    #[test]
    fn spectrum_sizes_sum_to_twice_edges(g in arb_graph(7)) {
        // distinct colors per edge are always proper
        let c = EdgeColoring::new(g.clone(), (1..=g.num_edges() as i64).collect()).unwrap();
        let t = spectra(&c).unwrap();
        let total: usize = (0..g.num_vertices()).map(|v| t.spectrum(v).len()).sum();
        prop_assert_eq!(total, 2 * g.num_edges());
    }

    #[test]
    fn shifting_preserves_interval_structure(n in 2usize..12, seed in 0u64..1000, p in 0i64..40) {
        let c = tree_continuous_use(&random_tree(n, seed).unwrap()).unwrap();
        let before = verify_interval(&c);
        let after = verify_interval(&shift_coloring(&c, p).unwrap());
        prop_assert!(before.valid && after.valid);
        prop_assert_eq!(before.t, after.t);
        prop_assert_eq!(before.windows, after.windows);
    }

    #[test]
    fn interval_colorings_use_at_least_delta_colors(n in 2usize..10, seed in 0u64..500) {
        let c = tree_continuous_use(&random_tree(n, seed).unwrap()).unwrap();
        prop_assert!(c.distinct_colors() >= c.graph().max_degree());
    }
}

#[test]
fn prescribed_diagonals_are_perfect_matchings() {
    for n in 2..=6usize {
        for start in 1..=2i64 {
            for k in 1..=n {
                // k distinct values, the first taking the surplus
                let mut values: Vec<i64> = (0..k as i64).map(|x| start + x).collect();
                values.extend(std::iter::repeat_n(start, n - k));
                let l = ColorSequence::new(values).unwrap();
                for d in prescribed_lse_diagonals(n, &l).unwrap() {
                    let mut edges = d.low_edges.clone();
                    edges.extend(&d.high_edges);
                    assert_eq!(edges.len(), n, "n={n} L={l}");
                    let mut us: Vec<usize> = edges.iter().map(|e| e.0).collect();
                    let mut vs: Vec<usize> = edges.iter().map(|e| e.1).collect();
                    us.sort_unstable();
                    vs.sort_unstable();
                    assert_eq!(us, (0..n).collect::<Vec<_>>());
                    assert_eq!(vs, (n..2 * n).collect::<Vec<_>>());
                }
            }
        }
    }
}

/// Replays the tree construction and checks at every step that each color
/// between the current minimum and maximum is some vertex's spectrum maximum.
#[test]
fn tree_steps_keep_upper_edge_continuous() {
    for seed in 0..100u64 {
        let t = random_tree(2 + seed as usize % 12, seed).unwrap();
        let tc = tree_construction(&t).unwrap();
        let m = t.num_edges() as i64;
        let mut edges = vec![tc.root_edge];
        let mut colors = vec![m];
        let mut nv = vec![tc.root_edge.0, tc.root_edge.1];
        for s in &tc.steps {
            edges.push((s.leaf, s.attach));
            colors.push(s.color);
            nv.push(s.leaf);
            let mut upper = vec![i64::MIN; t.num_vertices()];
            let mut lower = vec![i64::MAX; t.num_vertices()];
            for (&(a, b), &c) in edges.iter().zip(&colors) {
                for x in [a, b] {
                    upper[x] = upper[x].max(c);
                    lower[x] = lower[x].min(c);
                }
            }
            let uppers: Vec<i64> = nv.iter().map(|&v| upper[v]).collect();
            let lo = *colors.iter().min().unwrap();
            let hi = *colors.iter().max().unwrap();
            assert_eq!(hi, m);
            for c in lo..=hi {
                assert!(uppers.contains(&c), "seed {seed}: color {c} missing from USE");
            }
            // each partial spectrum is an interval
            for &v in &nv {
                let mut at: Vec<i64> = edges
                    .iter()
                    .zip(&colors)
                    .filter(|(e, _)| e.0 == v || e.1 == v)
                    .map(|(_, &c)| c)
                    .collect();
                at.sort_unstable();
                assert!(at.windows(2).all(|w| w[1] == w[0] + 1));
            }
        }
        assert_eq!(tc.coloring().min_color(), Some(1));
    }
}

fn constructive_suite() -> Vec<EdgeColoring> {
    let mut out = vec![
        complete_bipartite_color(2, 3).unwrap(),
        complete_bipartite_color(3, 3).unwrap(),
        complete_bipartite_color(1, 4).unwrap(),
        even_cycle_color(4).unwrap(),
        even_cycle_color(6).unwrap(),
        even_cycle_color(8).unwrap(),
        regular_delta_color(&complete(4).unwrap()).unwrap(),
        regular_delta_color(&hypercube(3).unwrap()).unwrap(),
        regular_delta_color(&cycle(6).unwrap()).unwrap(),
    ];
    for seed in 0..6 {
        out.push(tree_continuous_use(&random_tree(6 + seed as usize, seed).unwrap()).unwrap());
    }
    out
}

#[test]
fn oracle_agrees_with_constructions() {
    let budget = SearchBudget::default();
    for c in constructive_suite() {
        let g = c.graph();
        let t = verify_interval(&c).t as usize;
        let found = find_interval_t(g, t, &budget).unwrap();
        assert!(found.is_found(), "{} t={t}", g.name());
        let b = bounds(g, &budget).unwrap().found().unwrap();
        assert!(b.min().unwrap() <= t && t <= b.max().unwrap(), "{}", g.name());
        assert!(b.achievable.contains(&t));
        // colorable graphs are class 1
        assert_eq!(
            chromatic_index_small(g, &budget).unwrap(),
            SearchOutcome::Found(g.max_degree()),
            "{}",
            g.name()
        );
        let use_ = upper_spectral_edge_all(&c).unwrap();
        assert!(use_.is_continuous(), "{}", g.name());
    }
}

#[test]
fn oracle_finds_continuous_use_for_trees_and_kmn() {
    let budget = SearchBudget::default();
    for g in [complete_bipartite(2, 3).unwrap(), path(5).unwrap(), star(5).unwrap(), random_tree(9, 4).unwrap()] {
        let c = find_continuous_use(&g, &budget).unwrap().found().expect("witness");
        assert!(verify_interval(&c).valid);
        assert!(upper_spectral_edge_all(&c).unwrap().is_continuous());
    }
}

#[test]
fn petersen_is_class_two() {
    let g = petersen();
    assert_eq!(classify(&g).regular_degree, Some(3));
    assert_eq!(
        chromatic_index_small(&g, &SearchBudget::default()).unwrap(),
        SearchOutcome::Found(4)
    );
    let b = bounds(&g, &SearchBudget::default()).unwrap().found().unwrap();
    assert!(!b.is_colorable());
}

#[test]
fn searches_are_deterministic() {
    let budget = SearchBudget::default();
    let g = complete_bipartite(3, 4).unwrap();
    let a = find_interval_t(&g, 5, &budget).unwrap();
    let b = find_interval_t(&g, 5, &budget).unwrap();
    assert_eq!(a, b);
    let par = SearchBudget { threads: 4, ..budget };
    assert_eq!(find_interval_t(&g, 5, &par).unwrap(), a);
    assert_eq!(bfs_edge_order(&g), bfs_edge_order(&g));
}

/// On products small enough for the oracle, the minimal product coloring is
/// no larger than the one built from a minimal coloring of `G`.
#[test]
fn product_minimum_within_constructed_bound() {
    let budget = SearchBudget::default();
    let cases = [
        (complete(2).unwrap(), empty(2).unwrap()),
        (complete(2).unwrap(), empty(3).unwrap()),
        (complete(2).unwrap(), complete(2).unwrap()),
        (path(3).unwrap(), empty(2).unwrap()),
        (path(3).unwrap(), complete(2).unwrap()),
        (complete(2).unwrap(), path(3).unwrap()),
    ];
    for (g, h) in cases {
        let bg = bounds(&g, &budget).unwrap().found().unwrap();
        let w_witness = bg.witnesses[0].clone();
        let r = compose_auto(&w_witness, &h, &Strategy::Auto).unwrap();
        let l_max = upper_spectral_edge_all(&r.inner).unwrap().max().unwrap();
        let bound = bg.min().unwrap() as i64 * h.num_vertices() as i64 + l_max;
        assert_eq!(r.t_out, bound);
        let product = r.coloring.graph();
        let bp = bounds(product, &budget).unwrap().found().unwrap();
        assert!(
            (bp.min().unwrap() as i64) <= bound,
            "{}: w = {:?}, bound {bound}",
            product.name(),
            bp.min()
        );
        assert!((bp.max().unwrap() as i64) >= r.t_out);
    }
}

#[test]
fn auto_reports_witnessed_bounds() {
    let g = tree_continuous_use(&path(3).unwrap()).unwrap();
    let t = 2;

    let r = compose_auto(&g, &complete_bipartite(2, 3).unwrap(), &Strategy::Auto).unwrap();
    assert_eq!(r.strategy, Strategy::CompleteBipartite);
    assert_eq!(r.t_out, t * 5 + 4);
    assert_eq!(r.bound.value, (t + 1) * 5 - 1);

    let r = compose_auto(&g, &cycle(6).unwrap(), &Strategy::EvenCycle).unwrap();
    assert_eq!(r.t_out, t * 6 + 4);
    assert_eq!(r.bound.value, (2 * t + 1) * 3 + 1);

    let r = compose_auto(&g, &cycle(6).unwrap(), &Strategy::Regular).unwrap();
    assert_eq!(r.t_out, t * 6 + 2);

    let r = compose_auto(&g, &empty(4).unwrap(), &Strategy::Edgeless).unwrap();
    assert_eq!(r.t_out, t * 4);
    assert_eq!(r.bound.value, t * 4);

    let r = compose_auto(&g, &complete(6).unwrap(), &Strategy::K2nMax).unwrap();
    assert!(verify_interval(&r.coloring).valid);
    assert_eq!(r.t_out, (2 * t + 3) * 3 - 2);

    let (hc, _) = inner_coloring(&path(4).unwrap(), &Strategy::Tree).unwrap();
    let r = compose_auto(&g, &path(4).unwrap(), &Strategy::Prescribed(hc)).unwrap();
    assert_eq!(r.t_out, r.bound.value);
}

#[test]
fn k8_paired_spectrum_search() {
    let c = icolor_core::search_k2n_max(4).unwrap();
    let cert = verify_interval(&c);
    assert!(cert.valid);
    assert_eq!(cert.t, 10);
}
