//! Seeded random instances for property tests and the acceptance harness.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, GraphDoc, TerminalLabel, TerminalSet, VertexId};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn numbered(n: usize, directed: bool) -> Graph {
    let mut g = Graph::new(directed);
    for i in 0..n {
        g.add_vertex(format!("v{i}")).expect("fresh names");
    }
    g
}

fn random_a(rng: &mut impl Rng, n: usize, a_prob: f64) -> TerminalSet {
    TerminalSet::from_iter(TerminalLabel::A, (0..n).filter(|_| rng.gen_bool(a_prob)).map(VertexId))
}

/// G(n, p) with each vertex in A independently with probability `a_prob`.
pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64, a_prob: f64) -> GraphDoc {
    let mut g = numbered(n, false);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(VertexId(u), VertexId(v));
            }
        }
    }
    let a = random_a(rng, n, a_prob);
    GraphDoc::new(g, a)
}

/// Random recursive tree: vertex `i` attaches to a uniform earlier vertex.
pub fn random_tree(rng: &mut impl Rng, n: usize) -> Graph {
    let mut g = numbered(n, false);
    for i in 1..n {
        let j = rng.gen_range(0..i);
        g.add_edge(VertexId(j), VertexId(i));
    }
    g
}

/// Random tree of maximum degree 3.
pub fn random_subcubic_tree(rng: &mut impl Rng, n: usize) -> Graph {
    let mut g = numbered(n, false);
    let mut open: Vec<usize> = vec![0];
    for i in 1..n {
        let slot = rng.gen_range(0..open.len());
        let j = open[slot];
        g.add_edge(VertexId(j), VertexId(i));
        if g.degree(VertexId(j)) == 3 {
            open.swap_remove(slot);
        }
        open.push(i);
    }
    g
}

/// A random tree with a random terminal set.
pub fn random_tree_doc(rng: &mut impl Rng, n: usize, a_prob: f64) -> GraphDoc {
    let g = random_tree(rng, n);
    let a = random_a(rng, n, a_prob);
    GraphDoc::new(g, a)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subcubic_trees_are_subcubic_trees() {
        let mut r = rng(7);
        for n in 1..30 {
            let g = random_subcubic_tree(&mut r, n);
            assert_eq!(g.edge_count(), n.saturating_sub(1));
            assert!(g.vertices().all(|v| g.degree(v) <= 3));
            assert_eq!(crate::graph::components(&g).len(), 1);
        }
    }

    #[test]
    fn seeds_reproduce() {
        let a = random_graph(&mut rng(3), 10, 0.3, 0.5);
        let b = random_graph(&mut rng(3), 10, 0.3, 0.5);
        assert_eq!(a, b);
    }
}
