use epframe::gallery::*;
use epframe::graph::{components, parse_graph, serialize_graph, GraphDoc};
use epframe::labeling::{path_weight, GroupElem, GroupSpec, LabelMode};
use epframe::oracle::{enumerate_paths, max_disjoint, min_hitting_set, Budget, PathKind, PathSpec};

fn big() -> Budget {
    Budget::nodes(200_000_000)
}

fn max(doc: &GraphDoc, spec: PathSpec) -> usize {
    max_disjoint(&doc.instance(), spec, None, &big()).unwrap().size
}

fn hit(doc: &GraphDoc, spec: PathSpec) -> usize {
    let cap = doc.graph.vertex_count() + doc.graph.edge_count();
    min_hitting_set(&doc.instance(), spec, spec.disjointness, cap, &big()).unwrap().unwrap().len()
}

fn round_trips(doc: &GraphDoc) {
    let text = serialize_graph(doc);
    assert_eq!(&parse_graph(&text).unwrap(), doc);
}

#[test]
fn clique_is_tight_for_gallai() {
    let d = gen_clique_a(3).unwrap();
    round_trips(&d);
    assert_eq!(max(&d, PathSpec::vertex(PathKind::Plain)), 2);
    assert_eq!(hit(&d, PathSpec::vertex(PathKind::Plain)), 4);
}

#[test]
fn long_lower_bound() {
    let d = gen_long_lb(2, 4).unwrap();
    round_trips(&d);
    assert_eq!(max(&d, PathSpec::vertex(PathKind::Long(4))), 1);
    assert_eq!(hit(&d, PathSpec::vertex(PathKind::Long(4))), 3);
    assert_eq!(max(&d, PathSpec::vertex(PathKind::Even)), 1);
    assert!(hit(&d, PathSpec::vertex(PathKind::Even)) >= 3);
}

#[test]
fn grid_mod_zero_residue() {
    let p = ModularFamilyParams::new(6, 0, 3).unwrap();
    let fam = gen_grid_mod(p).unwrap();
    round_trips(&fam.doc);
    assert_eq!(components(&fam.doc.graph).len(), 1);
    let zero = PathSpec::vertex(PathKind::ZeroMod { m: 6, d: 0 });
    assert_eq!(max(&fam.doc, zero), 1);
    let audit = residue_audit(p, &fam, &big()).unwrap();
    assert!(audit.passed(), "{:?}", audit.violations);
    let small = gen_grid_mod(ModularFamilyParams::new(6, 0, 2).unwrap()).unwrap();
    assert!(hit(&small.doc, zero) <= hit(&fam.doc, zero));
}

#[test]
fn subdivision_hits_residue_d() {
    for (m, d) in [(6, 0), (6, 1), (6, 3), (8, 5), (9, 2)] {
        let p = ModularFamilyParams::new(m, d, 2).unwrap();
        let fam = gen_grid_mod(p).unwrap();
        let audit = subdivision_audit(p, &fam, &big()).unwrap();
        assert!(audit.passed(), "({m},{d}): {:?}", audit.violations);
        assert!(residue_audit(p, &fam, &big()).unwrap().passed());
    }
}

#[test]
fn wall_aba() {
    let w = gen_wall_aba(2).unwrap();
    round_trips(&w.doc);
    assert_eq!(w.doc.a.len(), 2);
    assert_eq!(components(&w.doc.graph).len(), 1);
    let aba = PathSpec::edge(PathKind::ABA);
    assert_eq!(max(&w.doc, aba), 1);
    assert!(hit(&w.doc, aba) >= 2);
}

#[test]
fn wall_parity_odd() {
    let w = gen_wall_parity(2, Parity::Odd).unwrap();
    round_trips(&w.doc);
    let odd = PathSpec::edge(PathKind::Odd);
    assert_eq!(max(&w.doc, odd), 1);
    let all = enumerate_paths(&w.doc.instance(), PathSpec::vertex(PathKind::Plain), &big()).unwrap();
    assert!(all.iter().any(|p| p.len() % 2 == 1));
    for p in all.iter().filter(|p| !p.edges.iter().any(|e| w.grey.contains(e))) {
        assert_eq!(p.len() % 2, 0);
    }
}

#[test]
fn zero_wall() {
    let w = gen_zero_label_wall(2, GroupSpec::Zm(3), GroupElem::Mod(1), LabelMode::Undirected).unwrap();
    round_trips(&w.doc);
    let lab = w.doc.labeling.as_ref().unwrap();
    let all = enumerate_paths(&w.doc.instance(), PathSpec::vertex(PathKind::Plain), &big()).unwrap();
    for p in &all {
        if lab.group.is_zero(path_weight(&w.doc.graph, lab, p).unwrap()) {
            assert!(p.edges.iter().any(|e| w.grey.contains(e)));
        }
    }
    assert_eq!(max(&w.doc, PathSpec::edge(PathKind::ZeroWeight)), 1);
    assert!(gen_zero_label_wall(2, GroupSpec::Zm(3), GroupElem::Mod(0), LabelMode::Undirected).is_err());
    let directed = gen_zero_label_wall(2, GroupSpec::Z, GroupElem::Int(1), LabelMode::Directed).unwrap();
    round_trips(&directed.doc);
}

#[test]
fn directed_grid() {
    let d3 = gen_directed_grid(3).unwrap();
    round_trips(&d3);
    let spec = PathSpec::vertex(PathKind::DirectedABA);
    for p in enumerate_paths(&d3.instance(), spec, &big()).unwrap() {
        let names = p.names(&d3.graph);
        for j in 1..=3 {
            let in_column = |n: &String| n.starts_with('g') && n.ends_with(&format!(".{j}"));
            assert!(names.iter().any(in_column), "column {j} skipped: {names:?}");
        }
    }
    assert_eq!(max(&d3, spec), 1);
    let d2 = gen_directed_grid(2).unwrap();
    assert!(hit(&d2, spec) <= hit(&d3, spec));
}

#[test]
fn even_ab() {
    let fam = gen_even_abpath_counterexample(2).unwrap();
    round_trips(&fam.doc);
    let inst = fam.doc.instance();
    let ab = enumerate_paths(&inst, PathSpec::vertex(PathKind::AB), &big()).unwrap();
    for p in ab.iter().filter(|p| fam.top_count(p) == 0) {
        assert_eq!(p.len() % 2, 1);
    }
    assert!(ab.iter().any(|p| p.len() % 2 == 0));
    assert_eq!(max(&fam.doc, PathSpec::vertex(PathKind::EvenAB)), 1);
}

#[test]
fn generators_are_deterministic() {
    let a = serialize_graph(&gen_wall_parity(3, Parity::Even).unwrap().doc);
    let b = serialize_graph(&gen_wall_parity(3, Parity::Even).unwrap().doc);
    assert_eq!(a, b);
    let p = ModularFamilyParams::new(6, 0, 3).unwrap();
    assert_eq!(serialize_graph(&gen_grid_mod(p).unwrap().doc), serialize_graph(&gen_grid_mod(p).unwrap().doc));
}
