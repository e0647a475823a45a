//! String admissibility conditions as finite sets of forbidden n-grams.
//!
//! A string is admissible iff it contains no forbidden gram as a contiguous
//! substring. Because any string properly containing a forbidden gram is
//! itself excluded, a law set never needs to list supergrams of its members,
//! and [`NGramLawSet::new`] drops them.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Operand, Result};
use crate::symbol::{render, sym, Symbol, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NGramLawSet {
    alphabet: BTreeSet<Symbol>,
    forbidden: BTreeSet<Word>,
    names: BTreeMap<Word, String>,
}

/// One occurrence of a forbidden gram.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Violation {
    pub position: usize,
    #[serde(serialize_with = "serialize_word")]
    pub gram: Word,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub law: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl Verdict {
    fn from_violations(mut violations: Vec<Violation>) -> Self {
        violations.sort();
        Verdict {
            ok: violations.is_empty(),
            violations,
        }
    }

    pub fn first(&self) -> Option<&Violation> {
        self.violations.first()
    }
}

pub(crate) fn serialize_word<S: serde::Serializer>(w: &Word, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&render(w))
}

fn is_substring(needle: &[Symbol], haystack: &[Symbol]) -> bool {
    needle.len() <= haystack.len() && haystack.windows(needle.len()).any(|w| w == needle)
}

impl NGramLawSet {
    /// Builds a law set. Grams must have length at least 2 and use only
    /// alphabet symbols. Duplicates collapse, and a gram that properly
    /// contains another member is dropped since it can never add a violation
    /// of its own.
    pub fn new(
        alphabet: impl IntoIterator<Item = Symbol>,
        forbidden: impl IntoIterator<Item = (Word, Option<String>)>,
    ) -> Result<Self> {
        let alphabet: BTreeSet<Symbol> = alphabet.into_iter().collect();
        if alphabet.is_empty() {
            return Err(Error::InvalidLaws("empty alphabet".into()));
        }
        let mut grams: BTreeMap<Word, Option<String>> = BTreeMap::new();
        for (gram, name) in forbidden {
            if gram.len() < 2 {
                return Err(Error::InvalidLaws(format!(
                    "forbidden gram {:?} is shorter than 2",
                    render(&gram)
                )));
            }
            if let Some(s) = gram.iter().find(|s| !alphabet.contains(*s)) {
                return Err(Error::InvalidLaws(format!(
                    "forbidden gram {:?} uses {s}, which is not in the alphabet",
                    render(&gram)
                )));
            }
            let slot = grams.entry(gram).or_default();
            if slot.is_none() {
                *slot = name;
            }
        }
        let minimal: Vec<Word> = grams
            .keys()
            .filter(|g| {
                !grams
                    .keys()
                    .any(|other| other.len() < g.len() && is_substring(other, g))
            })
            .cloned()
            .collect();
        let names = minimal
            .iter()
            .filter_map(|g| grams[g].clone().map(|n| (g.clone(), n)))
            .collect();
        Ok(NGramLawSet {
            alphabet,
            forbidden: minimal.into_iter().collect(),
            names,
        })
    }

    /// Parses the law file format:
    ///
    /// ```text
    /// alphabet: 0 1      # optional; otherwise inferred from the grams
    /// name: First Law
    /// forbid: 0 0
    /// name: Second Law
    /// forbid: 1 1 1
    /// ```
    ///
    /// A `name:` line labels the `forbid:` line that follows it. Grams may be
    /// written compactly (`forbid: 111`) when every symbol is one character.
    pub fn parse(text: &str) -> Result<Self> {
        let mut alphabet: Option<Vec<Symbol>> = None;
        let mut pending_name: Option<String> = None;
        let mut grams = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let parse_err = |message: String| Error::Parse { line, message };
            let (directive, body) = content
                .split_once(':')
                .ok_or_else(|| parse_err(format!("expected a directive, got {content:?}")))?;
            let body = body.trim();
            match directive.trim() {
                "alphabet" => {
                    let symbols = crate::symbol::parse_word(body)
                        .map_err(|e| parse_err(e.to_string()))?;
                    alphabet = Some(symbols);
                }
                "name" => {
                    if body.is_empty() {
                        return Err(parse_err("empty law name".into()));
                    }
                    pending_name = Some(body.to_string());
                }
                "forbid" => {
                    let gram =
                        crate::symbol::parse_word(body).map_err(|e| parse_err(e.to_string()))?;
                    grams.push((gram, pending_name.take()));
                }
                other => return Err(parse_err(format!("unknown directive {other:?}"))),
            }
        }
        if pending_name.is_some() {
            return Err(Error::InvalidLaws("`name:` without a following `forbid:`".into()));
        }
        let alphabet = match alphabet {
            Some(a) => a,
            None => grams.iter().flat_map(|(g, _)| g.iter().cloned()).collect(),
        };
        Self::new(alphabet, grams)
    }

    pub fn alphabet(&self) -> &BTreeSet<Symbol> {
        &self.alphabet
    }

    pub fn forbidden(&self) -> &BTreeSet<Word> {
        &self.forbidden
    }

    pub fn law_name(&self, gram: &[Symbol]) -> Option<&str> {
        self.names.get(gram).map(String::as_str)
    }

    /// Length of the longest forbidden gram (0 for an empty set).
    pub fn max_gram_len(&self) -> usize {
        self.forbidden.iter().map(Vec::len).max().unwrap_or(0)
    }

    fn ensure_in_alphabet(&self, s: &[Symbol]) -> Result<()> {
        match s.iter().position(|x| !self.alphabet.contains(x)) {
            Some(position) => Err(Error::UnknownSymbol {
                symbol: s[position].clone(),
                position,
            }),
            None => Ok(()),
        }
    }

    fn scan(&self, s: &[Symbol]) -> Vec<Violation> {
        let mut out = Vec::new();
        for gram in &self.forbidden {
            if gram.len() > s.len() {
                continue;
            }
            for (position, window) in s.windows(gram.len()).enumerate() {
                if window == gram.as_slice() {
                    out.push(Violation {
                        position,
                        gram: gram.clone(),
                        law: self.names.get(gram).cloned(),
                    });
                }
            }
        }
        out
    }

    /// Every occurrence of every forbidden gram in `s`.
    pub fn check(&self, s: &[Symbol]) -> Result<Verdict> {
        self.ensure_in_alphabet(s)?;
        Ok(Verdict::from_violations(self.scan(s)))
    }

    pub fn admits(&self, s: &[Symbol]) -> Result<bool> {
        Ok(self.check(s)?.ok)
    }

    /// All length-`n` words over the alphabet containing no forbidden gram.
    pub fn allowed_ngrams(&self, n: usize) -> BTreeSet<Word> {
        let symbols: Vec<&Symbol> = self.alphabet.iter().collect();
        let mut out = BTreeSet::new();
        if n == 0 {
            out.insert(Word::new());
            return out;
        }
        // odometer over alphabet indices
        let mut idx = vec![0usize; n];
        loop {
            let w: Word = idx.iter().map(|&i| symbols[i].clone()).collect();
            if self.scan(&w).is_empty() {
                out.insert(w);
            }
            let mut k = n;
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < symbols.len() {
                    break;
                }
                idx[k] = 0;
            }
        }
    }

    /// Verdict for `left · right`, given both operands are admissible on their
    /// own. Any violation found must straddle the junction.
    pub fn concat_check(&self, left: &[Symbol], right: &[Symbol]) -> Result<Verdict> {
        for (operand, w) in [(Operand::Left, left), (Operand::Right, right)] {
            if !self.check(w)?.ok {
                return Err(Error::IllFormedOperand {
                    operand,
                    word: render(w),
                });
            }
        }
        let joined: Word = left.iter().chain(right).cloned().collect();
        self.check(&joined)
    }

    /// Ordered pairs of admissible words with lengths in `2..=max_len` whose
    /// concatenation is not admissible.
    pub fn forbidden_concatenations(&self, max_len: usize) -> BTreeSet<(Word, Word)> {
        let pool: Vec<Word> = (2..=max_len)
            .flat_map(|n| self.allowed_ngrams(n))
            .collect();
        let mut out = BTreeSet::new();
        for u in &pool {
            for v in &pool {
                let joined: Word = u.iter().chain(v).cloned().collect();
                if !self.scan(&joined).is_empty() {
                    out.insert((u.clone(), v.clone()));
                }
            }
        }
        out
    }
}

/// The First and Second Laws of the Fibonacci grammar over {0, 1}: no `00`,
/// no `111`. The Third Law (a single 1 may be followed by either symbol) is
/// permissive and forbids nothing.
pub fn fib_laws() -> NGramLawSet {
    NGramLawSet::new(
        [sym("0"), sym("1")],
        [
            (vec![sym("0"), sym("0")], Some("First Law".to_string())),
            (
                vec![sym("1"), sym("1"), sym("1")],
                Some("Second Law".to_string()),
            ),
        ],
    )
    .expect("fib laws are well formed")
}

/// The `|s| - n + 1` overlapping windows of width `n`, in order.
pub fn extract_ngrams(s: &[Symbol], n: usize) -> Result<Vec<Word>> {
    if n == 0 || n > s.len() {
        return Err(Error::NGramLength { n, len: s.len() });
    }
    Ok(s.windows(n).map(<[Symbol]>::to_vec).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbol::word;

    fn set(words: &[&str]) -> BTreeSet<Word> {
        words.iter().map(|w| word(w)).collect()
    }

    #[test]
    fn fib_laws_content() {
        let laws = fib_laws();
        assert_eq!(laws.forbidden(), &set(&["00", "111"]));
        assert_eq!(laws.law_name(&word("00")), Some("First Law"));
        assert_eq!(laws.max_gram_len(), 3);
    }

    #[test]
    fn check_examples() {
        let laws = fib_laws();
        let v = laws.check(&word("11101")).unwrap();
        assert!(!v.ok);
        assert_eq!(v.violations.len(), 1);
        assert_eq!(v.violations[0].position, 0);
        assert_eq!(v.violations[0].gram, word("111"));
        assert!(laws.check(&word("10101101")).unwrap().ok);
        assert!(laws.check(&[]).unwrap().ok);
    }

    #[test]
    fn check_reports_every_occurrence() {
        let v = fib_laws().check(&word("1111001")).unwrap();
        let found: Vec<(usize, String)> = v
            .violations
            .iter()
            .map(|x| (x.position, render(&x.gram)))
            .collect();
        assert_eq!(
            found,
            [(0, "111".into()), (1, "111".into()), (4, "00".into())]
        );
    }

    #[test]
    fn foreign_symbol_is_an_error() {
        assert!(matches!(
            fib_laws().check(&word("012")),
            Err(Error::UnknownSymbol { position: 2, .. })
        ));
    }

    #[test]
    fn allowed_examples() {
        let laws = fib_laws();
        assert_eq!(laws.allowed_ngrams(2), set(&["01", "10", "11"]));
        assert_eq!(laws.allowed_ngrams(3), set(&["101", "110", "011", "010"]));
        assert_eq!(laws.allowed_ngrams(1), set(&["0", "1"]));
    }

    #[test]
    fn concat_examples() {
        let laws = fib_laws();
        assert!(!laws.concat_check(&word("01"), &word("11")).unwrap().ok);
        assert!(!laws.concat_check(&word("10"), &word("01")).unwrap().ok);
        assert!(laws.concat_check(&word("10"), &word("110")).unwrap().ok);
        assert_eq!(
            laws.concat_check(&word("00"), &word("1")),
            Err(Error::IllFormedOperand {
                operand: Operand::Left,
                word: "00".into()
            })
        );
        assert_eq!(
            laws.concat_check(&word("1"), &word("111")),
            Err(Error::IllFormedOperand {
                operand: Operand::Right,
                word: "111".into()
            })
        );
    }

    #[test]
    fn closure_examples() {
        let laws = fib_laws();
        let c3 = laws.forbidden_concatenations(3);
        assert!(c3.contains(&(word("11"), word("101"))));
        let c2 = laws.forbidden_concatenations(2);
        assert!(!c2.contains(&(word("01"), word("10"))));
        assert!(c2.contains(&(word("01"), word("11"))));
    }

    #[test]
    fn ngram_windows() {
        let s = word("10101101");
        assert_eq!(extract_ngrams(&s, 8).unwrap(), vec![s.clone()]);
        assert_eq!(extract_ngrams(&s, 1).unwrap().len(), 8);
        let threes: Vec<String> = extract_ngrams(&s, 3)
            .unwrap()
            .iter()
            .map(|w| render(w))
            .collect();
        assert_eq!(threes, ["101", "010", "101", "011", "110", "101"]);
        let fours: Vec<String> = extract_ngrams(&s, 4)
            .unwrap()
            .iter()
            .map(|w| render(w))
            .collect();
        assert_eq!(fours, ["1010", "0101", "1011", "0110", "1101"]);
        assert!(extract_ngrams(&s, 0).is_err());
        assert!(extract_ngrams(&s, 9).is_err());
    }

    #[test]
    fn supergrams_are_dropped() {
        let laws = NGramLawSet::new(
            [sym("0"), sym("1")],
            [(word("00"), None), (word("100"), None), (word("111"), None)],
        )
        .unwrap();
        assert_eq!(laws.forbidden(), &set(&["00", "111"]));
    }

    #[test]
    fn invalid_law_sets() {
        assert!(NGramLawSet::new([sym("0")], [(word("0"), None)]).is_err());
        assert!(NGramLawSet::new([sym("0")], [(word("01"), None)]).is_err());
        assert!(NGramLawSet::new([], []).is_err());
    }

    #[test]
    fn parses_law_file() {
        let text = "# the Laws\nname: First Law\nforbid: 0 0\nname: Second Law\nforbid: 111\n";
        assert_eq!(NGramLawSet::parse(text).unwrap(), fib_laws());
        let with_alpha = NGramLawSet::parse("alphabet: a b c\nforbid: a a").unwrap();
        assert_eq!(with_alpha.alphabet().len(), 3);
        assert!(NGramLawSet::parse("forbid 00").is_err());
        assert!(NGramLawSet::parse("name: dangling").is_err());
    }
}
