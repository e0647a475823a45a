mod common;

use std::collections::BTreeSet;

use lsys_nac::ca::{gol_table, Axis, History};
use lsys_nac::lsystem::{bif, fib, xor_01, xor_ab};
use lsys_nac::model::{self, PointClass, SymbolMap};
use lsys_nac::nac::CheckMode;
use lsys_nac::symbol::{sym, word};
use lsys_nac::{fib_laws, render, Tree, TreeModel, Word};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn binary_word() -> impl Strategy<Value = Word> {
    proptest::collection::vec(prop_oneof![Just(sym("0")), Just(sym("1"))], 0..40)
}

/// Random binary words, flipping any bit that would complete `00` or `111`.
fn admissible_word() -> impl Strategy<Value = Word> {
    proptest::collection::vec(any::<bool>(), 0..40).prop_map(|bits| {
        let mut s = String::new();
        for b in bits {
            let mut c = if b { '1' } else { '0' };
            if (c == '0' && s.ends_with('0')) || (c == '1' && s.ends_with("11")) {
                c = if c == '0' { '1' } else { '0' };
            }
            s.push(c);
        }
        word(&s)
    })
}

fn composed_tree() -> impl Strategy<Value = Tree> {
    any::<u64>().prop_map(|seed| {
        common::random_composed_tree(&mut StdRng::seed_from_u64(seed), &TreeModel::fib(), 30)
    })
}

#[test]
fn fib_lengths_follow_the_recurrence() {
    let d = fib().derive(21).unwrap();
    let len: Vec<usize> = d.generations().iter().map(Vec::len).collect();
    for k in 1..=20 {
        assert_eq!(len[k + 1], len[k] + len[k - 1], "k = {k}");
    }
}

#[test]
fn derivation_tree_frontiers_match_generations() {
    for g in [fib(), bif()] {
        let d = g.derive(12).unwrap();
        let t = g.derivation_tree(12).unwrap();
        for (i, gen) in d.generations().iter().enumerate() {
            assert_eq!(&t.frontier_at(i), gen, "{} generation {i}", g.name());
        }
    }
}

#[test]
fn step_is_deterministic() {
    let g = fib();
    let s = g.derive(10).unwrap().last().clone();
    assert_eq!(g.step(&s).unwrap(), g.step(&s).unwrap());
}

#[test]
fn complement_duality() {
    let laws = fib_laws();
    for n in 1..=10 {
        let allowed = laws.allowed_ngrams(n);
        let all = common::binary_strings(n);
        let excluded: BTreeSet<String> = all
            .iter()
            .filter(|s| common::violates_fib_laws(s))
            .cloned()
            .collect();
        let allowed: BTreeSet<String> = allowed.iter().map(|w| render(w)).collect();
        assert!(allowed.is_disjoint(&excluded));
        assert_eq!(allowed.len() + excluded.len(), all.len());
    }
}

#[test]
fn third_law_is_realized() {
    let d = fib().derive(20).unwrap();
    for g in &d.generations()[4..] {
        let s = render(g);
        assert!(s.contains("10") && s.contains("11"), "{s}");
    }
}

#[test]
fn elementary_trees_pass_their_model() {
    let m = TreeModel::fib();
    for b in 1..=2 {
        for e in m.elementary_trees(b).unwrap() {
            assert!(m.nac_check(&e.tree, CheckMode::Elementary).unwrap().ok, "{}", e.tree);
        }
    }
}

#[test]
fn fib_derivation_trees_pass_the_model() {
    let m = TreeModel::fib();
    for depth in 0..=12 {
        let dt = fib().derivation_tree(depth).unwrap();
        let t = dt.tree();
        assert!(m.nac_check(t, CheckMode::Elementary).unwrap().ok);
        for id in t.node_ids().filter(|&id| !t.is_leaf(id)) {
            let local = Tree::local(t.label(id).clone(), &t.child_labels(id));
            match t.children(id).len() {
                2 => assert_eq!(local.to_string(), "1(0,1)"),
                1 => assert_eq!(local.to_string(), "0(1)"),
                n => panic!("unexpected breadth {n}"),
            }
        }
    }
}

#[test]
fn symmetric_grammars_break_the_first_law_early() {
    let laws = fib_laws();
    let r = model::grammar_satisfies(&xor_01(), &laws, 20, &SymbolMap::new()).unwrap();
    assert!(r.failure.unwrap().generation <= 4);
    let map: SymbolMap = [(sym("a"), sym("1")), (sym("b"), sym("0"))].into();
    let r = model::grammar_satisfies(&xor_ab(), &laws, 20, &map).unwrap();
    assert!(r.failure.unwrap().generation <= 4);
}

#[test]
fn bounded_failure_is_stable_under_larger_bounds() {
    let laws = fib_laws();
    let base = model::grammar_satisfies(&xor_01(), &laws, 3, &SymbolMap::new()).unwrap();
    for bound in 3..=15 {
        let r = model::grammar_satisfies(&xor_01(), &laws, bound, &SymbolMap::new()).unwrap();
        assert_eq!(r.failure, base.failure);
    }
}

#[test]
fn k_points_determine_their_neighborhood() {
    for g in [fib(), bif()] {
        let one_rule = g.rule(&sym("1")).unwrap().clone();
        let dt = g.derivation_tree(10).unwrap();
        let t = dt.tree();
        let classes = model::classify_points(&dt).unwrap();
        assert_eq!(classes.len(), t.len());
        for (&id, &c) in &classes {
            if c == PointClass::K {
                assert_eq!(t.label(t.parent(id).unwrap()), &sym("0"));
                assert_eq!(t.child_labels(id), one_rule);
            }
        }
    }
}

#[test]
fn majority_rule_entries() {
    let t = gol_table();
    for (i, &out) in t.entries().iter().enumerate() {
        assert_eq!(out, u8::from((i as u32).count_ones() >= 2));
    }
}

proptest! {
    #[test]
    fn admissibility_is_closed_under_substrings(s in admissible_word()) {
        let laws = fib_laws();
        prop_assert!(laws.check(&s).unwrap().ok);
        for i in 0..=s.len() {
            for j in i..=s.len() {
                prop_assert!(laws.check(&s[i..j]).unwrap().ok);
            }
        }
    }

    #[test]
    fn check_agrees_with_substring_search(s in binary_word()) {
        let ok = fib_laws().check(&s).unwrap().ok;
        prop_assert_eq!(ok, !common::violates_fib_laws(&render(&s)));
    }

    #[test]
    fn concatenation_violations_straddle_the_junction(a in admissible_word(), b in admissible_word()) {
        let laws = fib_laws();
        let max = laws.max_gram_len();
        let v = laws.concat_check(&a, &b).unwrap();
        let lo = (a.len() + 1).saturating_sub(max);
        for x in &v.violations {
            prop_assert!(x.position >= lo && x.position < a.len());
            prop_assert!(x.position + x.gram.len() > a.len());
        }
    }

    #[test]
    fn walk_puts_ancestors_first(t in composed_tree()) {
        let walk = t.walk();
        prop_assert_eq!(walk.len(), t.len());
        let mut index = vec![0; t.len()];
        for (i, &id) in walk.iter().enumerate() {
            index[id] = i;
        }
        for a in t.node_ids() {
            for b in t.node_ids() {
                if t.dominates(a, b) {
                    prop_assert!(index[a] < index[b]);
                }
            }
        }
    }

    #[test]
    fn frontier_commutes_with_substitution(host in composed_tree(), guest in composed_tree()) {
        let leaves: Vec<_> = host
            .node_ids()
            .filter(|&id| host.is_leaf(id) && host.label(id) == guest.root_label())
            .collect();
        for leaf in leaves {
            let composed = host.substitute_frontier(&guest, leaf).unwrap();
            // splice the guest frontier in place of the leaf's symbol
            let mut expected = Word::new();
            for id in host.walk().into_iter().filter(|&id| host.is_leaf(id)) {
                if id == leaf {
                    expected.extend(guest.frontier());
                } else {
                    expected.push(host.label(id).clone());
                }
            }
            prop_assert_eq!(composed.frontier(), expected);
            prop_assert_eq!(composed.len(), host.len() + guest.len() - 1);
        }
    }

    #[test]
    fn frontier_composition_of_admissible_trees_stays_admissible(host in composed_tree(), guest in composed_tree()) {
        let m = TreeModel::fib();
        prop_assume!(m.nac_check(&host, CheckMode::Derived).unwrap().ok);
        prop_assume!(m.nac_check(&guest, CheckMode::Derived).unwrap().ok);
        if let Some(leaf) = host.node_ids().find(|&id| host.is_leaf(id) && host.label(id) == guest.root_label()) {
            let composed = host.substitute_frontier(&guest, leaf).unwrap();
            prop_assert!(m.nac_check(&composed, CheckMode::Derived).unwrap().ok);
        }
    }

    #[test]
    fn root_composition_only_touches_the_root(a in composed_tree(), b in composed_tree()) {
        prop_assume!(a.root_label() == b.root_label());
        let merged = a.substitute_root(&b).unwrap();
        let neighborhoods = |t: &Tree, skip_root: bool| {
            let mut v: Vec<(String, String)> = t
                .node_ids()
                .filter(|&id| !(skip_root && id == t.root()))
                .map(|id| (t.label(id).to_string(), render(&t.child_labels(id))))
                .collect();
            v.sort();
            v
        };
        let mut expected = neighborhoods(&a, true);
        expected.extend(neighborhoods(&b, true));
        expected.sort();
        prop_assert_eq!(neighborhoods(&merged, true), expected);
        let mut root_children = a.child_labels(0);
        root_children.extend(b.child_labels(0));
        prop_assert_eq!(merged.child_labels(0), root_children);
    }

    #[test]
    fn condition_three_never_keeps_a_narrower_tree(seeds in proptest::collection::vec(any::<u64>(), 1..6)) {
        let m = TreeModel::fib();
        let candidates: Vec<Tree> = seeds
            .iter()
            .map(|&s| common::random_composed_tree(&mut StdRng::seed_from_u64(s), &m, 8))
            .filter(|t| t.root_label() == &sym("1"))
            .collect();
        prop_assume!(!candidates.is_empty());
        let kept = m.prefer_maximal(&candidates).unwrap();
        let widest_passing = candidates
            .iter()
            .filter(|t| m.nac_check(t, CheckMode::Elementary).unwrap().ok)
            .map(|t| t.children(0).len())
            .max();
        for t in &kept {
            prop_assert_eq!(Some(t.children(0).len()), widest_passing);
        }
    }

    #[test]
    fn ca_step_preserves_length(row in proptest::collection::vec(prop_oneof![Just(sym("0")), Just(sym("1"))], 1..64)) {
        prop_assert_eq!(gol_table().step(&row).unwrap().len(), row.len());
    }

    #[test]
    fn axis_y_reads_columns(rows in proptest::collection::vec(proptest::collection::vec(prop_oneof![Just(sym("0")), Just(sym("1"))], 4), 1..6)) {
        let h = History::from_rows(rows.clone()).unwrap();
        let v = h.axis_check(&fib_laws(), Axis::Y).unwrap();
        for c in 0..4 {
            let column: String = rows.iter().map(|r| r[c].to_string()).collect();
            let has = v.violations.iter().any(|x| x.column == c);
            prop_assert_eq!(has, common::violates_fib_laws(&column));
        }
    }
}

#[test]
fn derived_mode_accepts_wide_neighborhoods_inside_composed_trees() {
    // 1(1,1,0) is rejected as an elementary tree but allowed inside a derived one
    let m = TreeModel::fib();
    let t = Tree::parse("0(1(1,1,0))").unwrap();
    assert!(m.nac_check(&t, CheckMode::Derived).unwrap().ok);
    assert!(!m.nac_check(&t, CheckMode::Elementary).unwrap().ok);
    assert_eq!(t.frontier(), word("110"));
}
