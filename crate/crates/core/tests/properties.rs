mod common;

use std::collections::HashSet;

use chromastate::closedform::{expand, expand_exact, passes};
use chromastate::entanglement::schmidt_bounds;
use chromastate::field::enumerate_vectors;
use chromastate::graph::{block_decompose, local_complement};
use chromastate::simulator::{build_graph_state, index_digits, omega_table, Gate, StateVector};
use chromastate::{
    chromatic_coloring, compile_chi_color, Coloring, compile_two_color, verify, FieldMatrix, PrimeDimension,
    WeightedGraph,
};
use num_complex::Complex;
use proptest::prelude::*;

fn prime() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![2u32, 3, 5])
}

fn matrix(max: usize) -> impl Strategy<Value = FieldMatrix> {
    (prime(), 1..=max, 1..=max).prop_flat_map(|(d, r, c)| {
        prop::collection::vec(0..d, r * c).prop_map(move |entries| {
            let rows: Vec<Vec<u32>> = entries.chunks(c).map(<[u32]>::to_vec).collect();
            FieldMatrix::from_rows(PrimeDimension::new(d).unwrap(), &rows).unwrap()
        })
    })
}

fn weighted_graph(max_n: usize, primes: Vec<u32>) -> impl Strategy<Value = WeightedGraph> {
    (prop::sample::select(primes), 2..=max_n).prop_flat_map(|(d, n)| {
        prop::collection::vec(0..d, n * (n - 1) / 2).prop_map(move |ws| {
            let mut edges = Vec::new();
            let mut it = ws.into_iter();
            for u in 0..n {
                for v in u + 1..n {
                    let w = it.next().unwrap();
                    if w != 0 {
                        edges.push((u, v, w));
                    }
                }
            }
            WeightedGraph::from_edges(PrimeDimension::new(d).unwrap(), n, &edges).unwrap()
        })
    })
}

fn bipartite_graph() -> impl Strategy<Value = WeightedGraph> {
    (prop::sample::select(vec![2u32, 3]), 1..=4usize, 1..=4usize).prop_flat_map(|(d, a, b)| {
        prop::collection::vec(0..d, a * b).prop_map(move |ws| {
            let edges: Vec<(usize, usize, u32)> = ws
                .iter()
                .enumerate()
                .filter(|(_, &w)| w != 0)
                .map(|(i, &w)| (i / b, a + i % b, w))
                .collect();
            WeightedGraph::from_edges(PrimeDimension::new(d).unwrap(), a + b, &edges).unwrap()
        })
    })
}

fn span_size(m: &FieldMatrix) -> usize {
    let mut seen = HashSet::new();
    for w in enumerate_vectors(m.rows(), m.dim()).unwrap() {
        let mut row = vec![0u32; m.cols()];
        for (r, &x) in w.entries().iter().enumerate() {
            for (c, slot) in row.iter_mut().enumerate() {
                *slot = (*slot + x * m.get(r, c)) % m.dim().get();
            }
        }
        seen.insert(row);
    }
    seen.len()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_matches_span(m in matrix(4)) {
        let d = m.dim().get() as usize;
        prop_assert_eq!(d.pow(m.rank() as u32), span_size(&m));
    }

    #[test]
    fn rank_of_transpose(m in matrix(5)) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn identity_block_has_full_rank(m in matrix(5)) {
        let g = FieldMatrix::identity(m.dim(), m.rows()).hconcat(&m).unwrap();
        prop_assert_eq!(g.rank(), m.rows());
    }

    #[test]
    fn local_complement_inverts(g in weighted_graph(6, vec![2, 3, 5]), a in 0usize..6, lambda in 1u32..5) {
        let a = a % g.n();
        let d = g.d();
        let lambda = lambda % d;
        prop_assume!(lambda != 0);
        let once = local_complement(&g, a, lambda).unwrap();
        let back = local_complement(&once, a, d - lambda).unwrap();
        prop_assert_eq!(&back, &g);
        for b in 0..g.n() {
            prop_assert_eq!(once.weight(a, b), g.weight(a, b));
        }
    }

    #[test]
    fn blocks_reassemble(g in weighted_graph(7, vec![2, 3])) {
        let c = chromatic_coloring(&g, None).unwrap();
        let b = block_decompose(&g, &c).unwrap();
        prop_assert_eq!(&b.reassemble(g.gamma()), g.gamma());
    }

    #[test]
    fn gate_inverse_pairs(d in prime(), a in 1u32..5, input in prop::collection::vec(0u32..5, 2)) {
        let dim = PrimeDimension::new(d).unwrap();
        let a = a % d;
        let input: Vec<u32> = input.iter().map(|x| x % d).collect();
        let s = StateVector::<f64>::basis(dim, &input).unwrap().apply_gate(Gate::H { q: 1 }).unwrap();
        let pairs = [
            vec![Gate::X { q: 0, a }, Gate::X { q: 0, a: (d - a) % d }],
            vec![Gate::Z { q: 1, a }, Gate::Z { q: 1, a: (d - a) % d }],
            vec![Gate::H { q: 0 }, Gate::Hdag { q: 0 }],
            vec![Gate::CZ { q1: 0, q2: 1, beta: a }, Gate::CZ { q1: 0, q2: 1, beta: (d - a) % d }],
            vec![Gate::CX { control: 0, target: 1, gamma: a }; d as usize],
        ];
        for gates in pairs {
            let out = s.apply_all(&gates).unwrap();
            prop_assert!(out.max_abs_diff(&s).unwrap() < 1e-12);
        }
    }

    #[test]
    fn amplitude_formula(g in weighted_graph(5, vec![2, 3, 5])) {
        let s = build_graph_state::<f64>(&g).unwrap();
        let d = g.d();
        let omega = omega_table::<f64>(d);
        let scale = (d as f64).powi(g.n() as i32).sqrt().recip();
        for (idx, amp) in s.amps().iter().enumerate() {
            let digits = index_digits(idx, g.n(), d);
            let mut e = 0u64;
            for u in 0..g.n() {
                for v in u + 1..g.n() {
                    e += g.weight(u, v) as u64 * digits[u] as u64 * digits[v] as u64;
                }
            }
            let want = omega[(e % d as u64) as usize] * Complex::new(scale, 0.0);
            prop_assert!((amp - want).norm() < 1e-12);
        }
    }

    #[test]
    fn edge_order_independent(g in weighted_graph(6, vec![2, 3]), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut edges: Vec<(usize, usize, u32)> = g.edges().iter().map(|e| (e.u, e.v, e.weight)).collect();
        edges.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let h = WeightedGraph::from_edges(g.dim(), g.n(), &edges).unwrap();
        let a = build_graph_state::<f64>(&g).unwrap();
        let b = build_graph_state::<f64>(&h).unwrap();
        prop_assert!(a.max_abs_diff(&b).unwrap() < 1e-12);
        let c = chromatic_coloring(&g, None).unwrap();
        prop_assert_eq!(compile_chi_color(&g, &c).unwrap(), compile_chi_color(&h, &c).unwrap());
    }

    #[test]
    fn compiler_sound_on_weighted_graphs(g in weighted_graph(6, vec![2, 3, 5])) {
        let c = chromatic_coloring(&g, None).unwrap();
        let cf = compile_chi_color(&g, &c).unwrap();
        prop_assert!(passes(verify::<f64>(&cf, &g).unwrap()));
        let hist = expand_exact(&cf).unwrap();
        let total: u64 = hist.values().flatten().sum();
        prop_assert_eq!(total as u128, cf.term_count());
        let s = expand::<f32>(&cf).unwrap();
        prop_assert!((s.norm_sqr() - 1.0).abs() < 1e-4);
    }

    #[test]
    fn two_color_paths_agree(g in bipartite_graph()) {
        let c = chromatic_coloring(&g, None).unwrap();
        prop_assume!(c.chi() == 2);
        let general = compile_chi_color(&g, &c).unwrap();
        prop_assert!(general.phase().is_zero());
        prop_assert_eq!(general, compile_two_color(&g, &c).unwrap());
    }

    #[test]
    fn bounds_invariant_under_relabeling(g in weighted_graph(6, vec![2, 3]), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut perm: Vec<usize> = (0..g.n()).collect();
        perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let h = g.permuted(&perm).unwrap();
        let c = chromatic_coloring(&g, None).unwrap();
        let mut moved = vec![0; g.n()];
        for (v, &k) in c.assignment().iter().enumerate() {
            moved[perm[v]] = k;
        }
        let a = schmidt_bounds(&g, &c).unwrap();
        let b = schmidt_bounds(&h, &Coloring::from_assignment(&h, &moved).unwrap()).unwrap();
        prop_assert_eq!(a, b);
    }
}
