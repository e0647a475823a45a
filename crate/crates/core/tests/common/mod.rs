#![allow(dead_code)]

use lsys_nac::nac::TreeModel;
use lsys_nac::Tree;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;

/// Builds a tree of at most `max_nodes` nodes by repeatedly substituting
/// elementary trees of `model`, at a matching leaf or at the root.
pub fn random_composed_tree(rng: &mut StdRng, model: &TreeModel, max_nodes: usize) -> Tree {
    let mut pool = Vec::new();
    for b in 1..=model.max_elementary_breadth() {
        pool.extend(model.elementary_trees(b).unwrap().into_iter().map(|e| e.tree));
    }
    let mut tree = pool.choose(rng).unwrap().clone();
    let attempts = rng.gen_range(0..40);
    for _ in 0..attempts {
        let guest = pool.choose(rng).unwrap();
        let candidate = if rng.gen_bool(0.8) {
            let leaves: Vec<_> = tree
                .node_ids()
                .filter(|&id| tree.is_leaf(id) && tree.label(id) == guest.root_label())
                .collect();
            match leaves.choose(rng) {
                Some(&leaf) => tree.substitute_frontier(guest, leaf).unwrap(),
                None => continue,
            }
        } else if tree.root_label() == guest.root_label() {
            if rng.gen_bool(0.5) {
                tree.substitute_root(guest).unwrap()
            } else {
                guest.substitute_root(&tree).unwrap()
            }
        } else {
            continue;
        };
        if candidate.len() <= max_nodes {
            tree = candidate;
        }
    }
    tree
}

/// Binary string oracle for the Fibonacci laws, by plain substring search.
pub fn violates_fib_laws(s: &str) -> bool {
    s.contains("00") || s.contains("111")
}

/// All binary strings of length `n`.
pub fn binary_strings(n: usize) -> Vec<String> {
    (0..1u32 << n)
        .map(|i| format!("{i:0width$b}", width = n))
        .collect()
}
