//! Node admissibility conditions induced by a law set.
//!
//! A [`TreeModel`] reads every forbidden n-gram as a condition on the ordered
//! children of a single node, adds the Lonely Beta clause (the designated
//! label may not immediately dominate itself and has at most one daughter),
//! and bounds the breadth of elementary trees. Trees are judged one depth-1
//! neighborhood at a time; nothing is said about larger configurations.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::sac::{fib_laws, NGramLawSet};
use crate::symbol::{sym, Symbol, Word};
use crate::tree::{NodeId, Tree};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeModel {
    laws: NGramLawSet,
    lonely_beta: Option<Symbol>,
    max_elementary_breadth: usize,
}

/// How a tree is judged by [`TreeModel::nac_check`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckMode {
    /// Every neighborhood must also fit within the elementary breadth bound.
    Elementary,
    /// Neighborhoods of a composed tree; no breadth bound.
    Derived,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NacReason {
    /// The lonely beta immediately dominates a node with its own label.
    LonelyBetaLoop,
    /// The node's child string contains a forbidden gram.
    ForbiddenChildGram,
    /// More daughters than an elementary tree may have.
    ConditionIii,
    /// The lonely beta has more than one daughter.
    LonelyBetaBreadth,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct NacFailure {
    pub node: NodeId,
    pub reason: NacReason,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NacVerdict {
    pub ok: bool,
    pub failures: Vec<NacFailure>,
}

/// Whether a model-licensed local tree also reads as a conjunction of the
/// breadth-1 conditions on its root.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Constituency {
    Constituent,
    /// Licensed by the model, but its daughters are not exactly the distinct
    /// labels the root may dominate at breadth 1.
    NonConstituent,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct ElementaryTree {
    pub tree: Tree,
    pub constituency: Constituency,
}

/// Local trees over one window of a string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WindowTrees {
    pub n: usize,
    pub position: usize,
    #[serde(serialize_with = "crate::sac::serialize_word")]
    pub window: Word,
    pub trees: Vec<ElementaryTree>,
}

impl TreeModel {
    pub fn new(
        laws: NGramLawSet,
        lonely_beta: Option<Symbol>,
        max_elementary_breadth: usize,
    ) -> Result<Self> {
        if let Some(beta) = &lonely_beta {
            if !laws.alphabet().contains(beta) {
                return Err(Error::InvalidLaws(format!(
                    "lonely beta {beta} is not in the alphabet"
                )));
            }
        }
        if max_elementary_breadth == 0 {
            return Err(Error::InvalidLaws("elementary breadth bound must be at least 1".into()));
        }
        Ok(TreeModel {
            laws,
            lonely_beta,
            max_elementary_breadth,
        })
    }

    /// Elementary breadth defaults to one less than the longest forbidden
    /// gram, and never below 1.
    pub fn from_laws(laws: NGramLawSet, lonely_beta: Option<Symbol>) -> Result<Self> {
        let breadth = laws.max_gram_len().saturating_sub(1).max(1);
        Self::new(laws, lonely_beta, breadth)
    }

    /// The Fibonacci laws with lonely beta `0`; elementary breadth 2.
    pub fn fib() -> Self {
        Self::from_laws(fib_laws(), Some(sym("0"))).expect("fib model is well formed")
    }

    pub fn laws(&self) -> &NGramLawSet {
        &self.laws
    }

    pub fn lonely_beta(&self) -> Option<&Symbol> {
        self.lonely_beta.as_ref()
    }

    pub fn max_elementary_breadth(&self) -> usize {
        self.max_elementary_breadth
    }

    /// Checks every depth-1 neighborhood of `tree`. The failure list names
    /// every offending node and reason.
    pub fn nac_check(&self, tree: &Tree, mode: CheckMode) -> Result<NacVerdict> {
        for id in tree.node_ids() {
            let label = tree.label(id);
            if !self.laws.alphabet().contains(label) {
                return Err(Error::UnknownSymbol {
                    symbol: label.clone(),
                    position: id,
                });
            }
        }
        let mut failures = Vec::new();
        for id in tree.node_ids() {
            let children = tree.child_labels(id);
            if children.is_empty() {
                continue;
            }
            let mut fail = |reason| failures.push(NacFailure { node: id, reason });
            if Some(tree.label(id)) == self.lonely_beta.as_ref() {
                if children.contains(tree.label(id)) {
                    fail(NacReason::LonelyBetaLoop);
                }
                if children.len() > 1 {
                    fail(NacReason::LonelyBetaBreadth);
                }
            }
            if !self.laws.check(&children)?.ok {
                fail(NacReason::ForbiddenChildGram);
            }
            if mode == CheckMode::Elementary && children.len() > self.max_elementary_breadth {
                fail(NacReason::ConditionIii);
            }
        }
        failures.sort();
        Ok(NacVerdict {
            ok: failures.is_empty(),
            failures,
        })
    }

    fn admits_local(&self, root: &Symbol, children: &[Symbol]) -> bool {
        self.nac_check(&Tree::local(root.clone(), children), CheckMode::Elementary)
            .map(|v| v.ok)
            .unwrap_or(false)
    }

    /// Labels `root` may immediately dominate in a breadth-1 elementary tree.
    fn single_daughters(&self, root: &Symbol) -> BTreeSet<Symbol> {
        self.laws
            .alphabet()
            .iter()
            .filter(|c| self.admits_local(root, std::slice::from_ref(*c)))
            .cloned()
            .collect()
    }

    fn constituency(&self, root: &Symbol, children: &[Symbol]) -> Constituency {
        if children.len() <= 1 {
            return Constituency::Constituent;
        }
        let mut sorted = children.to_vec();
        sorted.sort();
        let distinct: Vec<Symbol> = self.single_daughters(root).into_iter().collect();
        if sorted == distinct {
            Constituency::Constituent
        } else {
            Constituency::NonConstituent
        }
    }

    fn tagged(&self, root: &Symbol, children: &[Symbol]) -> ElementaryTree {
        ElementaryTree {
            tree: Tree::local(root.clone(), children),
            constituency: self.constituency(root, children),
        }
    }

    /// All depth-1 trees of the given breadth licensed by the model, sorted.
    pub fn elementary_trees(&self, breadth: usize) -> Result<Vec<ElementaryTree>> {
        if breadth == 0 || breadth > self.max_elementary_breadth {
            return Err(Error::BreadthOutOfRange {
                breadth,
                max: self.max_elementary_breadth,
            });
        }
        let strings = self.laws.allowed_ngrams(breadth);
        let mut out: Vec<ElementaryTree> = self
            .laws
            .alphabet()
            .iter()
            .flat_map(|root| strings.iter().map(move |c| (root, c)))
            .filter(|(root, c)| self.admits_local(root, c))
            .map(|(root, c)| self.tagged(root, c))
            .collect();
        out.sort();
        Ok(out)
    }

    /// Condition III: among candidates sharing a root label, keep those that
    /// pass as elementary trees and whose root has the most daughters.
    pub fn prefer_maximal(&self, candidates: &[Tree]) -> Result<BTreeSet<Tree>> {
        let first = candidates.first().ok_or(Error::EmptyCandidates)?;
        if let Some(other) = candidates
            .iter()
            .find(|t| t.root_label() != first.root_label())
        {
            return Err(Error::MixedRoots(
                first.root_label().clone(),
                other.root_label().clone(),
            ));
        }
        let mut passing = Vec::new();
        for t in candidates {
            if self.nac_check(t, CheckMode::Elementary)?.ok {
                passing.push(t);
            }
        }
        let widest = passing
            .iter()
            .map(|t| t.children(t.root()).len())
            .max()
            .unwrap_or(0);
        Ok(passing
            .into_iter()
            .filter(|t| t.children(t.root()).len() == widest)
            .cloned()
            .collect())
    }

    /// For each window of `s` of width 2 up to the elementary breadth bound,
    /// the depth-1 trees whose daughters spell that window.
    pub fn ngram_depth1_trees(&self, s: &[Symbol]) -> Result<Vec<WindowTrees>> {
        if !self.laws.check(s)?.ok {
            return Err(Error::IllFormedString(crate::symbol::render(s)));
        }
        let top = s.len().min(self.max_elementary_breadth);
        let mut out = Vec::new();
        for n in 2..=top {
            for (position, window) in s.windows(n).enumerate() {
                let trees = self
                    .laws
                    .alphabet()
                    .iter()
                    .filter(|root| self.admits_local(root, window))
                    .map(|root| self.tagged(root, window))
                    .collect();
                out.push(WindowTrees {
                    n,
                    position,
                    window: window.to_vec(),
                    trees,
                });
            }
        }
        Ok(out)
    }
}
