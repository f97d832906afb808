mod common;

use std::collections::{BTreeSet, VecDeque};

use common::{canonical, graph, naive_apaths, solve_and_verify, terminals};
use epframe::epsolve::{SolveParams, Variant};
use epframe::extract::{even_component_paths, leaf_pair_paths, tree_edge_disjoint_apaths, Tree};
use epframe::frame::{construct_frame, find_augmentation, Frame, FrameVariant};
use epframe::graph::{components, parse_graph, serialize_graph, EdgeId, Graph, GraphDoc, TerminalSet, VertexId};
use epframe::labeling::{
    make_parity_labeling, matches_spec, path_weight, EdgeLabeling, GroupElem, GroupSpec, LabelMode,
};
use epframe::menger::max_edge_disjoint_paths;
use epframe::oracle::{enumerate_paths, min_hitting_set, Budget, Disjointness, Instance, PathKind, PathSpec};
use epframe::random::{random_subcubic_tree, random_tree, rng};
use proptest::prelude::*;

/// (n, edges, A) with n in `lo..=hi`.
fn instance(lo: usize, hi: usize, density: f64) -> impl Strategy<Value = (usize, Vec<(usize, usize)>, Vec<usize>)> {
    (lo..=hi).prop_flat_map(move |n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let m = pairs.len();
        (
            Just(n),
            prop::collection::vec(prop::bool::weighted(density), m)
                .prop_map(move |keep| pairs.iter().zip(keep).filter(|(_, k)| *k).map(|(p, _)| *p).collect()),
            prop::collection::vec(any::<bool>(), n)
                .prop_map(|bits| bits.into_iter().enumerate().filter(|(_, b)| *b).map(|(i, _)| i).collect()),
        )
    })
}

fn doc(n: usize, edges: &[(usize, usize)], a: &[usize]) -> GraphDoc {
    GraphDoc::new(graph(n, edges), terminals(a.iter().copied()))
}

fn connected(g: &Graph, s: &BTreeSet<VertexId>, t: &BTreeSet<VertexId>, gone: &BTreeSet<EdgeId>) -> bool {
    let mut seen: BTreeSet<VertexId> = s.clone();
    let mut queue: VecDeque<VertexId> = s.iter().copied().collect();
    while let Some(u) = queue.pop_front() {
        if t.contains(&u) {
            return true;
        }
        for inc in g.incident(u) {
            if !gone.contains(&inc.edge) && seen.insert(inc.other) {
                queue.push_back(inc.other);
            }
        }
    }
    false
}

fn brute_min_cut(g: &Graph, s: &BTreeSet<VertexId>, t: &BTreeSet<VertexId>, forbidden: &BTreeSet<EdgeId>) -> usize {
    let free: Vec<EdgeId> = g.edge_ids().filter(|e| !forbidden.contains(e)).collect();
    (0u32..1 << free.len())
        .filter(|mask| {
            let mut gone = forbidden.clone();
            gone.extend(free.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, e)| *e));
            !connected(g, s, t, &gone)
        })
        .map(u32::count_ones)
        .min()
        .unwrap() as usize
}

/// A-paths the plain frame would still accept: new components avoiding the
/// frame, or attachments ending at a frame vertex of degree 2.
fn missed_augmentations(g: &Graph, a: &TerminalSet, f: &Frame) -> usize {
    let open: Vec<VertexId> = f.vertices().filter(|&v| f.degree(v) == 2).collect();
    let ends = TerminalSet::from_iter(
        epframe::graph::TerminalLabel::A,
        a.iter().filter(|&v| !f.contains(v)).chain(open.iter().copied()),
    );
    let paths =
        enumerate_paths(&Instance::new(g, &ends), PathSpec::vertex(PathKind::Plain), &Budget::nodes(10_000_000))
            .unwrap();
    paths
        .iter()
        .filter(|p| p.vertices.iter().all(|&v| !f.contains(v) || open.contains(&v)))
        .filter(|p| !(open.contains(&p.first()) && open.contains(&p.last())))
        .count()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn reversed_paths_stay_valid((n, edges, _a) in instance(2, 9, 0.4)) {
        let g = graph(n, &edges);
        let all = terminals(0..n);
        for p in enumerate_paths(&Instance::new(&g, &all), PathSpec::vertex(PathKind::Plain), &Budget::default()).unwrap() {
            prop_assert!(g.validate_path(&p.reversed()).is_ok());
        }
    }

    #[test]
    fn components_partition_vertices((n, edges, _a) in instance(1, 12, 0.2)) {
        let g = graph(n, &edges);
        let cells = components(&g);
        let mut seen: Vec<usize> = cells.iter().flatten().map(|v| v.0).collect();
        seen.sort_unstable();
        prop_assert_eq!(seen, (0..n).collect::<Vec<_>>());
        prop_assert_eq!(cells, components(&g));
    }

    #[test]
    fn weights_under_reversal((n, edges, a) in instance(2, 8, 0.4), labels in prop::collection::vec(0u64..5, 28)) {
        let g = graph(n, &edges);
        let a = terminals(a);
        let group = GroupSpec::Zm(5);
        for mode in [LabelMode::Undirected, LabelMode::Directed] {
            let lab = EdgeLabeling { group, mode, weights: (0..g.edge_count()).map(|i| GroupElem::Mod(labels[i])).collect() };
            for p in enumerate_paths(&Instance::new(&g, &a), PathSpec::vertex(PathKind::Plain), &Budget::default()).unwrap() {
                let fwd = path_weight(&g, &lab, &p).unwrap();
                let back = path_weight(&g, &lab, &p.reversed()).unwrap();
                match mode {
                    LabelMode::Directed => prop_assert!(group.is_zero(group.add(fwd, back).unwrap())),
                    LabelMode::Undirected => prop_assert_eq!(fwd, back),
                }
            }
        }
    }

    #[test]
    fn parity_labeling_is_evenness((n, edges, a) in instance(2, 10, 0.3)) {
        let g = graph(n, &edges);
        let a = terminals(a);
        let lab = make_parity_labeling(&g);
        let inst = Instance::new(&g, &a).with_labeling(&lab);
        let zero = PathSpec::vertex(PathKind::ZeroWeight);
        for p in enumerate_paths(&inst, PathSpec::vertex(PathKind::Plain), &Budget::default()).unwrap() {
            prop_assert_eq!(matches_spec(&zero, &inst, &p).unwrap(), p.len() % 2 == 0);
        }
    }

    #[test]
    fn enumeration_matches_naive_recursion((n, edges, a) in instance(1, 10, 0.35)) {
        let g = graph(n, &edges);
        let a = terminals(a);
        let found: BTreeSet<Vec<usize>> = enumerate_paths(&Instance::new(&g, &a), PathSpec::vertex(PathKind::Plain), &Budget::default())
            .unwrap()
            .iter()
            .map(canonical)
            .collect();
        prop_assert_eq!(found, naive_apaths(&g, &a));
    }

    #[test]
    fn min_hitting_is_minimum((n, edges, a) in instance(2, 8, 0.4)) {
        let g = graph(n, &edges);
        let a = terminals(a);
        let inst = Instance::new(&g, &a);
        let spec = PathSpec::vertex(PathKind::Plain);
        let paths: Vec<u32> = enumerate_paths(&inst, spec, &Budget::default())
            .unwrap()
            .iter()
            .map(|p| p.vertices.iter().fold(0, |m, v| m | 1 << v.0))
            .collect();
        let h = min_hitting_set(&inst, spec, Disjointness::Vertex, n, &Budget::default()).unwrap().unwrap();
        let hm = h.items.iter().fold(0u32, |m, &v| m | 1 << v);
        prop_assert!(paths.iter().all(|p| p & hm != 0));
        if !h.is_empty() {
            let smaller = (0u32..1 << n).filter(|s| s.count_ones() as usize == h.len() - 1);
            for s in smaller {
                prop_assert!(paths.iter().any(|p| p & s == 0));
            }
        }
    }

    #[test]
    fn plain_frame_is_valid_and_maximal((n, edges, a) in instance(1, 10, 0.3)) {
        let g = graph(n, &edges);
        let a = terminals(a);
        let f = construct_frame(&g, &a, FrameVariant::Plain, &Budget::nodes(10_000_000)).unwrap();
        prop_assert!(f.validate(&g, &a).is_ok());
        prop_assert_eq!(missed_augmentations(&g, &a, &f), 0);
    }

    #[test]
    fn frames_grow_strictly((n, edges, a) in instance(1, 10, 0.3), which in 0usize..3) {
        let g = graph(n, &edges);
        let a = terminals(a);
        let variant = [FrameVariant::Plain, FrameVariant::Long(2), FrameVariant::Even][which];
        let budget = Budget::nodes(10_000_000);
        let mut f = Frame::empty(&g, variant);
        let mut steps = 0;
        while let Some(aug) = find_augmentation(&g, &a, &f, &budget).unwrap() {
            let before = f.edges().len();
            f.apply(&g, &aug);
            prop_assert!(f.edges().len() > before);
            prop_assert!(f.validate(&g, &a).is_ok());
            steps += 1;
            prop_assert!(steps <= g.edge_count());
        }
        let direct = construct_frame(&g, &a, variant, &budget).unwrap();
        prop_assert_eq!(f.edges(), direct.edges());
    }

    #[test]
    fn leaf_pairs_count_half_the_leaves(seed in any::<u64>(), n in 2usize..=40) {
        let g = random_subcubic_tree(&mut rng(seed), n);
        let t = Tree::from_graph(&g).unwrap();
        let leaves = t.leaves();
        let paths = leaf_pair_paths(&t).unwrap();
        prop_assert_eq!(paths.len(), leaves.len() / 2);
        let mut used = BTreeSet::new();
        for p in &paths {
            prop_assert!(g.validate_path(p).is_ok());
            prop_assert!(p.first() != p.last());
            prop_assert!(leaves.contains(&p.first()) && leaves.contains(&p.last()));
            for v in &p.vertices {
                prop_assert!(used.insert(*v));
            }
        }
    }

    #[test]
    fn even_paths_in_subcubic_trees(seed in any::<u64>(), n in 2usize..=30, pick in any::<u64>()) {
        let g = random_subcubic_tree(&mut rng(seed), n);
        let t = Tree::from_graph(&g).unwrap();
        let leaves = t.leaves();
        let chosen: Vec<VertexId> = leaves.iter().enumerate().filter(|(i, _)| pick >> (i % 64) & 1 == 1).map(|(_, v)| *v).collect();
        let a = TerminalSet::from_iter(epframe::graph::TerminalLabel::A, chosen.iter().copied());
        let side = t.bipartition();
        let class = chosen.iter().filter(|v| side[v]).count();
        let expect = class.max(chosen.len() - class) / 2;
        let paths = even_component_paths(&t, &a).unwrap();
        prop_assert_eq!(paths.len(), expect);
        let mut used = BTreeSet::new();
        for p in &paths {
            prop_assert!(p.len() % 2 == 0 && a.contains(p.first()) && a.contains(p.last()));
            for v in &p.vertices {
                prop_assert!(used.insert(*v));
            }
        }
    }

    #[test]
    fn tree_paths_are_edge_disjoint(seed in any::<u64>(), n in 2usize..=16, pick in any::<u64>()) {
        let g = random_tree(&mut rng(seed), n);
        let a = TerminalSet::from_iter(epframe::graph::TerminalLabel::A, (0..n).filter(|i| pick >> i & 1 == 1).map(VertexId));
        prop_assume!(a.len() >= 2);
        let t = Tree::from_graph(&g).unwrap();
        let paths = tree_edge_disjoint_apaths(&t, &a).unwrap();
        prop_assert!(paths.len() >= a.len() / 2);
        let mut used = BTreeSet::new();
        for p in &paths {
            prop_assert!(g.validate_path(p).is_ok());
            prop_assert!(a.contains(p.first()) && a.contains(p.last()));
            prop_assert!(p.interior().iter().all(|&v| !a.contains(v)));
            for e in &p.edges {
                prop_assert!(used.insert(*e));
            }
        }
    }

    #[test]
    fn menger_matches_brute_force((n, edges, split) in instance(2, 7, 0.45), forbid in any::<u16>()) {
        let g = graph(n, &edges);
        let s: BTreeSet<VertexId> = split.iter().map(|&i| VertexId(i)).collect();
        let t: BTreeSet<VertexId> = (0..n).map(VertexId).filter(|v| !s.contains(v)).take(2).collect();
        prop_assume!(!s.is_empty() && !t.is_empty() && g.edge_count() <= 14);
        let none = BTreeSet::new();
        let full = max_edge_disjoint_paths(&g, &s, &t, &none).unwrap();
        prop_assert_eq!(full.paths.len(), full.cut.len());
        prop_assert_eq!(full.paths.len(), brute_min_cut(&g, &s, &t, &none));
        let mut used = BTreeSet::new();
        for p in &full.paths {
            prop_assert!(g.validate_path(p).is_ok());
            prop_assert!(s.contains(&p.first()) && t.contains(&p.last()));
            prop_assert!(p.interior().iter().all(|v| !s.contains(v) && !t.contains(v)));
            for e in &p.edges {
                prop_assert!(used.insert(*e));
            }
        }
        let forbidden: BTreeSet<EdgeId> = g.edge_ids().filter(|e| forbid >> e.0 & 1 == 1).collect();
        let less = max_edge_disjoint_paths(&g, &s, &t, &forbidden).unwrap();
        prop_assert_eq!(less.paths.len(), brute_min_cut(&g, &s, &t, &forbidden));
        prop_assert!(less.paths.len() <= full.paths.len());
    }

    #[test]
    fn certificates_verify((n, edges, a) in instance(1, 10, 0.3), k in 1usize..=3, ell in 2usize..=4, which in 0usize..4) {
        let doc = doc(n, &edges, &a);
        let variant = Variant::ALL[which];
        let params = if variant == Variant::Long { SolveParams::long(k, ell) } else { SolveParams::new(k) };
        let (cert, report) = solve_and_verify(&doc, variant, params);
        prop_assert!(report.passed(), "{variant} k={k}: {report}");
        let strict = match variant {
            Variant::Gallai => Some(4 * k - 1),
            Variant::Even => Some(10 * k),
            _ => None,
        };
        if let (Some(cap), epframe::epsolve::Outcome::Hitting(h)) = (strict, &cert.outcome) {
            prop_assert!(h.len() <= cap);
        }
    }

    #[test]
    fn documents_round_trip((n, edges, a) in instance(1, 10, 0.3)) {
        let d = doc(n, &edges, &a);
        let text = serialize_graph(&d);
        prop_assert_eq!(&parse_graph(&text).unwrap(), &d);
        prop_assert_eq!(serialize_graph(&parse_graph(&text).unwrap()), text);
    }
}
