//! Deterministic context-free L-systems (D0L): grammars, parallel rewriting,
//! derivations and derivation trees.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::symbol::{render, sym, Symbol, Word};
use crate::tree::{NodeId, Tree};

/// An alphabet, exactly one rewrite rule per symbol, and an axiom. There is
/// no terminal/nonterminal split: every symbol is rewritten every step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grammar {
    name: String,
    alphabet: BTreeSet<Symbol>,
    rules: BTreeMap<Symbol, Word>,
    axiom: Word,
}

impl Grammar {
    /// Builds a grammar, inferring the alphabet from every symbol mentioned.
    pub fn new(name: impl Into<String>, rules: BTreeMap<Symbol, Word>, axiom: Word) -> Result<Self> {
        Self::from_map(name.into(), rules, axiom)
    }

    fn from_map(name: String, rules: BTreeMap<Symbol, Word>, axiom: Word) -> Result<Self> {
        if axiom.is_empty() {
            return Err(Error::EmptyAxiom);
        }
        let alphabet: BTreeSet<Symbol> = rules
            .iter()
            .flat_map(|(lhs, rhs)| std::iter::once(lhs).chain(rhs))
            .chain(&axiom)
            .cloned()
            .collect();
        if let Some(missing) = alphabet.iter().find(|s| !rules.contains_key(*s)) {
            return Err(Error::MissingRule(missing.clone()));
        }
        Ok(Grammar {
            name,
            alphabet,
            rules,
            axiom,
        })
    }

    /// Parses the line-oriented grammar format:
    ///
    /// ```text
    /// # Fibonacci grammar
    /// axiom: 0
    /// rule: 0 -> 1
    /// rule: 1 -> 0 1
    /// ```
    pub fn parse(name: impl Into<String>, text: &str) -> Result<Self> {
        let mut axiom: Option<Word> = None;
        let mut rules = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let parse_err = |message: String| Error::Parse { line, message };
            let (directive, body) = content
                .split_once(':')
                .ok_or_else(|| parse_err(format!("expected `axiom:` or `rule:`, got {content:?}")))?;
            match directive.trim() {
                "axiom" => {
                    if axiom.is_some() {
                        return Err(parse_err("more than one axiom".into()));
                    }
                    let tokens = tokens(body).map_err(|e| parse_err(e.to_string()))?;
                    if tokens.is_empty() {
                        return Err(Error::EmptyAxiom);
                    }
                    axiom = Some(tokens);
                }
                "rule" => {
                    let (lhs, rhs) = body
                        .split_once("->")
                        .ok_or_else(|| parse_err("rule needs `->`".into()))?;
                    let lhs = tokens(lhs).map_err(|e| parse_err(e.to_string()))?;
                    let [lhs] = <[Symbol; 1]>::try_from(lhs).map_err(|v| {
                        parse_err(format!("rule needs exactly one left-hand symbol, got {}", v.len()))
                    })?;
                    let rhs = tokens(rhs).map_err(|e| parse_err(e.to_string()))?;
                    if rules.contains_key(&lhs) {
                        return Err(Error::DuplicateRule { symbol: lhs, line });
                    }
                    rules.insert(lhs, rhs);
                }
                other => return Err(parse_err(format!("unknown directive {other:?}"))),
            }
        }
        Self::from_map(name.into(), rules, axiom.ok_or(Error::EmptyAxiom)?)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn alphabet(&self) -> &BTreeSet<Symbol> {
        &self.alphabet
    }

    pub fn rules(&self) -> &BTreeMap<Symbol, Word> {
        &self.rules
    }

    pub fn rule(&self, symbol: &Symbol) -> Option<&Word> {
        self.rules.get(symbol)
    }

    pub fn axiom(&self) -> &Word {
        &self.axiom
    }

    /// Renders the grammar back into the file format.
    pub fn to_text(&self) -> String {
        let spaced = |w: &Word| w.iter().map(Symbol::as_str).collect::<Vec<_>>().join(" ");
        let mut out = format!("axiom: {}\n", spaced(&self.axiom));
        for (lhs, rhs) in &self.rules {
            out.push_str(&format!("rule: {lhs} -> {}\n", spaced(rhs)));
        }
        out
    }

    /// One parallel rewrite: every symbol is replaced by its right-hand side
    /// simultaneously.
    pub fn step(&self, generation: &[Symbol]) -> Result<Word> {
        let mut out = Vec::with_capacity(generation.len() * 2);
        for (position, s) in generation.iter().enumerate() {
            let rhs = self.rules.get(s).ok_or_else(|| Error::UnknownSymbol {
                symbol: s.clone(),
                position,
            })?;
            out.extend_from_slice(rhs);
        }
        Ok(out)
    }

    /// Generations 0 (the axiom) through `steps`.
    pub fn derive(&self, steps: usize) -> Result<Derivation> {
        let mut generations = Vec::with_capacity(steps + 1);
        generations.push(self.axiom.clone());
        for _ in 0..steps {
            let next = self.step(generations.last().expect("non-empty"))?;
            generations.push(next);
        }
        Ok(Derivation {
            grammar: self.clone(),
            generations,
        })
    }

    /// The tree of depth `steps` in which every node labeled X has children
    /// spelling X's right-hand side.
    pub fn derivation_tree(&self, steps: usize) -> Result<DerivationTree> {
        let [root] = self.axiom.as_slice() else {
            return Err(Error::MultiSymbolAxiom(self.axiom.len()));
        };
        fn grow(g: &Grammar, label: &Symbol, remaining: usize) -> Tree {
            if remaining == 0 {
                return Tree::leaf(label.clone());
            }
            let children = g.rules[label]
                .iter()
                .map(|c| grow(g, c, remaining - 1))
                .collect();
            Tree::new(label.clone(), children)
        }
        let tree = grow(self, root, steps);
        let generation = tree.node_ids().map(|id| tree.node_depth(id)).collect();
        Ok(DerivationTree {
            grammar: self.clone(),
            depth: steps,
            tree,
            generation,
        })
    }
}

fn tokens(text: &str) -> Result<Word> {
    text.split_whitespace().map(Symbol::new).collect()
}

fn builtin(name: &str, rules: &[(&str, &str)], axiom: &str) -> Grammar {
    Grammar::new(
        name,
        rules
            .iter()
            .map(|(l, r)| (sym(l), r.split_whitespace().map(sym).collect()))
            .collect(),
        vec![sym(axiom)],
    )
    .expect("built-in grammar is well formed")
}

/// Fibonacci grammar: 0 → 1, 1 → 0 1, axiom 0.
pub fn fib() -> Grammar {
    builtin("fib", &[("0", "1"), ("1", "0 1")], "0")
}

/// The mirror of `fib`: 0 → 1, 1 → 1 0, axiom 0.
pub fn bif() -> Grammar {
    builtin("bif", &[("0", "1"), ("1", "1 0")], "0")
}

/// XOR grammar over {a, b}: a → a b, b → b a, axiom a.
pub fn xor_ab() -> Grammar {
    builtin("xor-ab", &[("a", "a b"), ("b", "b a")], "a")
}

/// Symmetric grammar over {0, 1}: 0 → 1 0, 1 → 0 1, axiom 0.
pub fn xor_01() -> Grammar {
    builtin("xor-01", &[("0", "1 0"), ("1", "0 1")], "0")
}

pub fn builtin_grammar(name: &str) -> Option<Grammar> {
    match name {
        "fib" => Some(fib()),
        "bif" => Some(bif()),
        "xor-ab" => Some(xor_ab()),
        "xor-01" => Some(xor_01()),
        _ => None,
    }
}

pub const BUILTIN_NAMES: [&str; 4] = ["fib", "bif", "xor-ab", "xor-01"];

/// A grammar together with generations 0..=n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    grammar: Grammar,
    generations: Vec<Word>,
}

/// Length and per-symbol counts of one generation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenerationStats {
    pub generation: usize,
    pub length: usize,
    pub counts: BTreeMap<Symbol, usize>,
}

impl Derivation {
    pub fn grammar(&self) -> &Grammar {
        &self.grammar
    }

    pub fn generations(&self) -> &[Word] {
        &self.generations
    }

    pub fn last(&self) -> &Word {
        self.generations.last().expect("derivation holds the axiom")
    }

    pub fn rendered(&self) -> Vec<String> {
        self.generations.iter().map(|g| render(g)).collect()
    }

    /// Per-generation lengths and symbol counts; every alphabet symbol is
    /// listed, with zero when absent.
    pub fn stats(&self) -> Vec<GenerationStats> {
        self.generations
            .iter()
            .enumerate()
            .map(|(generation, g)| {
                let mut counts: BTreeMap<Symbol, usize> = self
                    .grammar
                    .alphabet
                    .iter()
                    .map(|s| (s.clone(), 0))
                    .collect();
                for s in g {
                    *counts.entry(s.clone()).or_default() += 1;
                }
                GenerationStats {
                    generation,
                    length: g.len(),
                    counts,
                }
            })
            .collect()
    }
}

/// A derivation tree: node depth equals the generation the node belongs to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationTree {
    grammar: Grammar,
    depth: usize,
    tree: Tree,
    generation: Vec<usize>,
}

impl DerivationTree {
    pub fn grammar(&self) -> &Grammar {
        &self.grammar
    }

    pub fn tree(&self) -> &Tree {
        &self.tree
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn generation_of(&self, id: NodeId) -> usize {
        self.generation[id]
    }

    /// Left-to-right labels of the nodes belonging to generation `g`.
    pub fn frontier_at(&self, g: usize) -> Word {
        self.tree
            .walk()
            .into_iter()
            .filter(|&id| self.generation[id] == g)
            .map(|id| self.tree.label(id).clone())
            .collect()
    }
}
