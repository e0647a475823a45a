//! Bounded model checking of grammars against law sets, Lonely Beta
//! detection, and k/n/s classification of derivation-tree points.
//!
//! "Satisfies" here always means: every generation up to the stated bound
//! was derived and checked. Nothing is proved about later generations.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lsystem::{DerivationTree, Grammar};
use crate::sac::{NGramLawSet, Verdict};
use crate::symbol::{render, sym, Symbol, Word};
use crate::tree::NodeId;

/// Renames grammar symbols into the law alphabet (e.g. `a ↦ 1, b ↦ 0`).
pub type SymbolMap = BTreeMap<Symbol, Symbol>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelFailure {
    pub generation: usize,
    pub string: Word,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelReport {
    pub grammar: String,
    pub bound: usize,
    pub ok: bool,
    pub failure: Option<ModelFailure>,
}

/// Flat record form of a [`ModelReport`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportRecord {
    pub grammar: String,
    pub bound: usize,
    pub ok: bool,
    pub failure: Option<FailureRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FailureRecord {
    pub generation: usize,
    pub position: usize,
    pub gram: String,
}

impl ModelReport {
    pub fn to_record(&self) -> ReportRecord {
        ReportRecord {
            grammar: self.grammar.clone(),
            bound: self.bound,
            ok: self.ok,
            failure: self.failure.as_ref().and_then(|f| {
                f.verdict.first().map(|v| FailureRecord {
                    generation: f.generation,
                    position: v.position,
                    gram: render(&v.gram),
                })
            }),
        }
    }
}

impl Serialize for ModelReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_record().serialize(s)
    }
}

fn map_word(word: &[Symbol], map: &SymbolMap) -> Word {
    word.iter()
        .map(|s| map.get(s).unwrap_or(s).clone())
        .collect()
}

/// Derives generations `0..=max_gen` and checks each against `laws`,
/// stopping at the first failure.
pub fn grammar_satisfies(
    grammar: &Grammar,
    laws: &NGramLawSet,
    max_gen: usize,
    map: &SymbolMap,
) -> Result<ModelReport> {
    for s in grammar.alphabet() {
        let mapped = map.get(s).unwrap_or(s);
        if !laws.alphabet().contains(mapped) {
            return Err(Error::AlphabetMismatch(s.clone()));
        }
    }
    let mut current = grammar.axiom().clone();
    for generation in 0..=max_gen {
        if generation > 0 {
            current = grammar.step(&current)?;
        }
        let string = map_word(&current, map);
        let verdict = laws.check(&string)?;
        if !verdict.ok {
            return Ok(ModelReport {
                grammar: grammar.name().to_string(),
                bound: max_gen,
                ok: false,
                failure: Some(ModelFailure {
                    generation,
                    string,
                    verdict,
                }),
            });
        }
    }
    Ok(ModelReport {
        grammar: grammar.name().to_string(),
        bound: max_gen,
        ok: true,
        failure: None,
    })
}

/// True iff both grammars pass `laws` up to `max_gen`.
pub fn same_model(
    g1: &Grammar,
    g2: &Grammar,
    laws: &NGramLawSet,
    max_gen: usize,
    map: &SymbolMap,
) -> Result<(bool, ModelReport, ModelReport)> {
    let r1 = grammar_satisfies(g1, laws, max_gen, map)?;
    let r2 = grammar_satisfies(g2, laws, max_gen, map)?;
    Ok((r1.ok && r2.ok, r1, r2))
}

/// The unique symbol whose rule does not reintroduce it, if exactly one
/// symbol has that property.
pub fn detect_lonely_beta(grammar: &Grammar) -> Option<Symbol> {
    let mut found = grammar
        .rules()
        .iter()
        .filter(|(lhs, rhs)| !rhs.contains(lhs))
        .map(|(lhs, _)| lhs);
    match (found.next(), found.next()) {
        (Some(beta), None) => Some(beta.clone()),
        _ => None,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GrammarKind {
    Asymmetric,
    Symmetric,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrammarClass {
    pub kind: GrammarKind,
    pub lonely_beta: Option<Symbol>,
}

pub fn classify_grammar(grammar: &Grammar) -> GrammarClass {
    let lonely_beta = detect_lonely_beta(grammar);
    GrammarClass {
        kind: if lonely_beta.is_some() {
            GrammarKind::Asymmetric
        } else {
            GrammarKind::Symmetric
        },
        lonely_beta,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PointClass {
    K,
    N,
    S,
    Other,
}

impl std::fmt::Display for PointClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            PointClass::K => "k",
            PointClass::N => "n",
            PointClass::S => "s",
            PointClass::Other => "other",
        })
    }
}

/// Classifies every node of a binary derivation tree.
///
/// A k-point is a `1` whose mother is `0` and whose daughters spell the
/// grammar's rule for `1`; an n-point is a `1` whose mother is a k-point; an
/// s-point is a `1` whose mother is an n-point.
pub fn classify_points(dtree: &DerivationTree) -> Result<BTreeMap<NodeId, PointClass>> {
    let binary: BTreeSet<Symbol> = [sym("0"), sym("1")].into();
    if let Some(s) = dtree.grammar().alphabet().difference(&binary).next() {
        return Err(Error::NonBinary(s.clone()));
    }
    let zero = sym("0");
    let one = sym("1");
    let one_rule = dtree.grammar().rule(&one).cloned().unwrap_or_default();
    let tree = dtree.tree();
    let mut classes = BTreeMap::new();
    // pre-order guarantees a mother is classified before her daughters
    for id in tree.walk() {
        let class = match tree.parent(id) {
            Some(mother) if tree.label(id) == &one => {
                let mother_class = classes[&mother];
                if tree.label(mother) == &zero && tree.child_labels(id) == one_rule {
                    PointClass::K
                } else if mother_class == PointClass::K {
                    PointClass::N
                } else if mother_class == PointClass::N {
                    PointClass::S
                } else {
                    PointClass::Other
                }
            }
            _ => PointClass::Other,
        };
        classes.insert(id, class);
    }
    Ok(classes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lsystem::{bif, fib, xor_01, xor_ab};
    use crate::sac::fib_laws;
    use crate::symbol::word;

    fn no_map() -> SymbolMap {
        SymbolMap::new()
    }

    #[test]
    fn fib_and_bif_satisfy_the_laws() {
        for g in [fib(), bif()] {
            let r = grammar_satisfies(&g, &fib_laws(), 20, &no_map()).unwrap();
            assert!(r.ok, "{}", g.name());
            assert!(r.failure.is_none());
        }
    }

    #[test]
    fn symmetric_variant_fails_at_generation_three() {
        let r = grammar_satisfies(&xor_01(), &fib_laws(), 5, &no_map()).unwrap();
        assert!(!r.ok);
        let f = r.failure.unwrap();
        assert_eq!(f.generation, 3);
        assert_eq!(f.string, word("10010110"));
        assert_eq!(f.verdict.violations[0].gram, word("00"));
        assert_eq!(f.verdict.violations[0].position, 1);
    }

    #[test]
    fn alphabet_mismatch_needs_a_map() {
        assert_eq!(
            grammar_satisfies(&xor_ab(), &fib_laws(), 3, &no_map()),
            Err(Error::AlphabetMismatch(sym("a")))
        );
        let map: SymbolMap = [(sym("a"), sym("1")), (sym("b"), sym("0"))].into();
        let r = grammar_satisfies(&xor_ab(), &fib_laws(), 5, &map).unwrap();
        assert!(!r.ok);
        assert_eq!(r.failure.unwrap().generation, 2);
    }

    #[test]
    fn lonely_beta_detection() {
        assert_eq!(detect_lonely_beta(&fib()), Some(sym("0")));
        assert_eq!(detect_lonely_beta(&bif()), Some(sym("0")));
        assert_eq!(detect_lonely_beta(&xor_01()), None);
        assert_eq!(detect_lonely_beta(&xor_ab()), None);
    }

    #[test]
    fn grammar_classes() {
        assert_eq!(classify_grammar(&fib()).kind, GrammarKind::Asymmetric);
        assert_eq!(classify_grammar(&bif()).kind, GrammarKind::Asymmetric);
        assert_eq!(
            classify_grammar(&xor_01()),
            GrammarClass {
                kind: GrammarKind::Symmetric,
                lonely_beta: None
            }
        );
    }

    #[test]
    fn same_model_examples() {
        let laws = fib_laws();
        assert!(same_model(&fib(), &bif(), &laws, 20, &no_map()).unwrap().0);
        assert!(!same_model(&fib(), &xor_01(), &laws, 20, &no_map()).unwrap().0);
        assert!(same_model(&fib(), &fib(), &laws, 20, &no_map()).unwrap().0);
    }

    #[test]
    fn report_record() {
        let r = grammar_satisfies(&xor_01(), &fib_laws(), 5, &no_map()).unwrap();
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(
            json,
            serde_json::json!({
                "grammar": "xor-01", "bound": 5, "ok": false,
                "failure": {"generation": 3, "position": 1, "gram": "00"}
            })
        );
        let r = grammar_satisfies(&fib(), &fib_laws(), 5, &no_map()).unwrap();
        assert_eq!(serde_json::to_value(&r).unwrap()["failure"], serde_json::Value::Null);
    }

    #[test]
    fn points_in_a_depth_three_fib_tree() {
        // 0(1(0(1),1(0,1)))
        let dt = fib().derivation_tree(3).unwrap();
        let t = dt.tree();
        let classes = classify_points(&dt).unwrap();
        assert_eq!(classes[&0], PointClass::Other);
        let gen1 = t.children(0)[0];
        assert_eq!(classes[&gen1], PointClass::K);
        let k_daughter_one = t.children(gen1)[1];
        assert_eq!(classes[&k_daughter_one], PointClass::N);
        let k_daughter_zero = t.children(gen1)[0];
        assert_eq!(classes[&k_daughter_zero], PointClass::Other);
        assert_eq!(classes.len(), t.len());
    }

    #[test]
    fn bif_k_points_follow_bif_rule() {
        let dt = bif().derivation_tree(3).unwrap();
        let gen1 = dt.tree().children(0)[0];
        assert_eq!(classify_points(&dt).unwrap()[&gen1], PointClass::K);
    }

    #[test]
    fn points_need_a_binary_alphabet() {
        let dt = xor_ab().derivation_tree(2).unwrap();
        assert!(matches!(classify_points(&dt), Err(Error::NonBinary(_))));
    }
}
