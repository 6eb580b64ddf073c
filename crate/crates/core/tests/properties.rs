use std::collections::BTreeMap;

use grpchoose::discharge::{apply_charg_rules, rule_masters, Charge, Element, Rule};
use grpchoose::graph::canon::{are_isomorphic, canonical_form};
use grpchoose::graph::graph6::{decode_graph6, encode_graph6};
use grpchoose::graph::{line_graph, Graph};
use grpchoose::group::{enumerate_abelian_groups, k_subsets, k_subsets_containing_zero, AbelianGroup, ElementSet};
use grpchoose::plane::{embed_planar, parse_rotation_system, write_rotation_system, PlaneGraph};
use grpchoose::solver::{
    find_coloring, is_coloring, kernelize_low_degree, normalize_shift, translate_lists, ListAssignment, ShiftAssignment,
};
use proptest::prelude::*;

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut i = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[i] {
                        edges.push((u, v));
                    }
                    i += 1;
                }
            }
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

fn group_strategy() -> impl Strategy<Value = AbelianGroup> {
    let all: Vec<AbelianGroup> = (2..=12).flat_map(|o| enumerate_abelian_groups(o).unwrap()).collect();
    proptest::sample::select(all)
}

/// A graph, a group, random non-empty lists and a random shift.
fn instance() -> impl Strategy<Value = (Graph, AbelianGroup, ListAssignment, ShiftAssignment)> {
    (graph_strategy(6), group_strategy()).prop_flat_map(|(g, a)| {
        let o = a.order();
        let lists = proptest::collection::vec(1u64..(1u64 << o), g.n());
        let shift = proptest::collection::vec(0..o as u8, g.m());
        (Just(g), Just(a), lists, shift).prop_map(|(g, a, lists, shift)| {
            let l = ListAssignment::new(lists.into_iter().map(ElementSet).collect());
            (g, a, l, ShiftAssignment::new(shift))
        })
    })
}

fn planar_host() -> impl Strategy<Value = PlaneGraph> {
    graph_strategy(9).prop_filter_map("planar", |g| embed_planar(&g).unwrap())
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn graph6_round_trip(g in graph_strategy(20)) {
        let text = encode_graph6(&g).unwrap();
        let back = decode_graph6(&text).unwrap();
        prop_assert_eq!(back.n(), g.n());
        prop_assert_eq!(encode_graph6(&back).unwrap(), text);
        for u in g.vertices() {
            for v in g.vertices() {
                prop_assert_eq!(g.has_edge(u, v), back.has_edge(u, v));
            }
        }
    }

    #[test]
    fn line_graph_degrees(g in graph_strategy(9)) {
        prop_assume!(g.m() > 0);
        let l = line_graph(&g).unwrap();
        prop_assert_eq!(l.n(), g.m());
        for (i, e) in g.edges().iter().enumerate() {
            prop_assert_eq!(l.degree(i), g.degree(e.u) + g.degree(e.v) - 2);
        }
        let expected: usize = g.vertices().map(|v| binomial(g.degree(v), 2)).sum();
        prop_assert_eq!(l.m(), expected);
    }

    #[test]
    fn group_axioms(a in group_strategy(), x in 0u8..64, y in 0u8..64, z in 0u8..64) {
        let o = a.order() as u8;
        let (x, y, z) = (x % o, y % o, z % o);
        prop_assert_eq!(a.add_idx(x, 0), x);
        prop_assert_eq!(a.add_idx(x, y), a.add_idx(y, x));
        prop_assert_eq!(a.add_idx(a.add_idx(x, y), z), a.add_idx(x, a.add_idx(y, z)));
        prop_assert_eq!(a.add_idx(x, a.neg_idx(x)), 0);
        prop_assert_eq!(a.sub_idx(x, y), a.add_idx(x, a.neg_idx(y)));
        let text = a.to_string();
        prop_assert_eq!(text.parse::<AbelianGroup>().unwrap(), a);
    }

    #[test]
    fn subset_counts(a in group_strategy(), k in 1usize..=12) {
        let o = a.order();
        prop_assume!(k <= o);
        prop_assert_eq!(k_subsets(&a, k).unwrap().count(), binomial(o, k));
        let with_zero: Vec<ElementSet> = k_subsets_containing_zero(&a, k).unwrap().collect();
        prop_assert_eq!(with_zero.len(), binomial(o - 1, k - 1));
        prop_assert!(with_zero.iter().all(|s| s.contains(0) && s.len() == k && s.fits(o)));
    }

    #[test]
    fn shift_normalization_preserves_colourability((g, a, l, f) in instance()) {
        let (f2, t) = normalize_shift(&g, &a, &f).unwrap();
        let (order, parent) = g.bfs_forest();
        for v in order {
            if let Some(pos) = parent[v] {
                prop_assert_eq!(f2.get(pos), 0);
            } else {
                prop_assert_eq!(t[v], 0);
            }
        }
        let l2 = translate_lists(&a, &l, &t);
        let before = find_coloring(&g, &a, &l, &f).unwrap();
        let after = find_coloring(&g, &a, &l2, &f2).unwrap();
        prop_assert_eq!(before.is_some(), after.is_some());
        if let Some(c) = after {
            // c' = c - t maps colourings back
            let lifted: Vec<u8> = c.iter().zip(&t).map(|(&x, &tv)| a.add_idx(x, tv)).collect();
            prop_assert!(is_coloring(&g, &a, &l, &f, &lifted));
        }
    }

    #[test]
    fn orientation_and_negation((g, a, l, f) in instance()) {
        let x = find_coloring(&g, &a, &l, &f).unwrap();
        if let Some(c) = &x {
            // the constraint read from either endpoint
            for (pos, e) in g.edges().iter().enumerate() {
                prop_assert_ne!(a.sub_idx(c[e.u], c[e.v]), f.oriented(&g, &a, pos, e.u));
                prop_assert_ne!(a.sub_idx(c[e.v], c[e.u]), f.oriented(&g, &a, pos, e.v));
            }
        }
        // x -> -x is an automorphism: (-L, -f) is colourable iff (L, f) is
        let neg_l = ListAssignment::new(
            l.as_slice().iter().map(|s| s.iter().map(|v| a.neg_idx(v)).collect()).collect(),
        );
        let neg_f = ShiftAssignment::new(f.as_slice().iter().map(|&v| a.neg_idx(v)).collect());
        let y = find_coloring(&g, &a, &neg_l, &neg_f).unwrap();
        prop_assert_eq!(x.is_some(), y.is_some());
        if let Some(c) = x {
            let neg_c: Vec<u8> = c.iter().map(|&v| a.neg_idx(v)).collect();
            prop_assert!(is_coloring(&g, &a, &neg_l, &neg_f, &neg_c));
        }
    }

    #[test]
    fn canonical_form_ignores_labels(g in graph_strategy(8), seed in any::<u64>()) {
        let n = g.n();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let edges: Vec<(usize, usize)> = g.edges().iter().map(|e| (perm[e.u], perm[e.v])).collect();
        let h = Graph::from_edges(n, &edges).unwrap();
        prop_assert_eq!(canonical_form(&g), canonical_form(&h));
        prop_assert!(are_isomorphic(&g, &h));
    }

    #[test]
    fn kernel_has_no_low_degree_vertex(g in graph_strategy(10), l in 1usize..4) {
        let (k, cert) = kernelize_low_degree(&g, l).unwrap();
        prop_assert!(k.vertices().all(|v| k.degree(v) == 0 || k.degree(v) >= 3));
        prop_assert_eq!(k.m() + cert.peeled.len(), g.m());
        prop_assert_eq!(cert.bound(), g.max_degree() + l);
    }

    #[test]
    fn face_counts(pg in planar_host()) {
        let g = pg.graph();
        let faces = pg.faces();
        prop_assert_eq!(faces.iter().map(|f| f.degree()).sum::<usize>(), 2 * g.m());
        for (i, f) in faces.iter().enumerate() {
            let visits: usize = f.vertex_set().iter().map(|&v| pg.m_v(v, i)).sum();
            prop_assert_eq!(visits, f.degree());
        }
        if g.is_connected() && g.m() > 0 {
            let excess: i64 = g.vertices().map(|v| g.degree(v) as i64 - 4).sum::<i64>()
                + faces.iter().map(|f| f.degree() as i64 - 4).sum::<i64>();
            prop_assert_eq!(excess, -8);
        }
    }

    #[test]
    fn rotation_text_round_trip(pg in planar_host()) {
        let text = write_rotation_system(&pg);
        let back = parse_rotation_system(&text).unwrap();
        prop_assert_eq!(back.rotations(), pg.rotations());
        prop_assert_eq!(back.faces().len(), pg.faces().len());
    }

    #[test]
    fn discharge_conserves_and_faces_pay_excess(pg in planar_host()) {
        let Ok(masters) = rule_masters(&pg) else {
            return Ok(());
        };
        let ledger = apply_charg_rules(&pg, &masters).unwrap();
        prop_assert_eq!(ledger.total_initial(), ledger.total_final());
        prop_assert_eq!(ledger.replay(), ledger.final_charges.clone());
        let mut paid: BTreeMap<usize, Charge> = BTreeMap::new();
        for t in ledger.transfers.iter().filter(|t| t.rule == Rule::R1) {
            if let Element::Face(f) = t.from {
                let e = paid.entry(f).or_insert_with(Charge::zero);
                e.0 += &t.amount.0;
            }
        }
        if pg.graph().is_connected() {
            for (i, f) in pg.faces().iter().enumerate() {
                let r = f.degree() as i64;
                let expected = if r >= 15 { Charge::integer(r - 4) } else { Charge::zero() };
                prop_assert_eq!(paid.get(&i).cloned().unwrap_or_else(Charge::zero), expected);
            }
        }
    }
}
