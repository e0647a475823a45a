//! One-dimensional binary cellular automata with radius-1 neighborhoods, and
//! the reading of a law set along either axis of a space-time history.
//!
//! Rows are indexed top-down, time increasing downward. Boundaries wrap.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::sac::NGramLawSet;
use crate::symbol::{render, sym, Symbol, Word};

/// Output bit for each of the 8 neighborhoods, indexed by the neighborhood
/// read as a 3-bit binary number (left cell most significant).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RuleTable {
    entries: [u8; 8],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    #[default]
    Periodic,
}

impl std::str::FromStr for Boundary {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "periodic" => Ok(Boundary::Periodic),
            other => Err(format!("unsupported boundary policy {other:?}")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    /// Along each row.
    X,
    /// Down each column.
    Y,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct History {
    #[serde(serialize_with = "serialize_rows")]
    rows: Vec<Word>,
    boundary: Boundary,
}

fn serialize_rows<S: serde::Serializer>(rows: &[Word], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(rows.iter().map(|r| render(r)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GridViolation {
    pub row: usize,
    pub column: usize,
    #[serde(serialize_with = "crate::sac::serialize_word")]
    pub gram: Word,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub law: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GridVerdict {
    pub ok: bool,
    pub violations: Vec<GridViolation>,
}

fn bit(s: &Symbol, position: usize) -> Result<u8> {
    match s.as_str() {
        "0" => Ok(0),
        "1" => Ok(1),
        _ => Err(Error::UnknownSymbol {
            symbol: s.clone(),
            position,
        }),
    }
}

fn bits(row: &[Symbol]) -> Result<Vec<u8>> {
    row.iter().enumerate().map(|(i, s)| bit(s, i)).collect()
}

fn to_word(bits: &[u8]) -> Word {
    let (zero, one) = (sym("0"), sym("1"));
    bits.iter()
        .map(|&b| if b == 1 { one.clone() } else { zero.clone() })
        .collect()
}

impl RuleTable {
    /// `entries[i]` is the output for the neighborhood whose bits spell `i`.
    pub fn new(entries: [u8; 8]) -> Result<Self> {
        if let Some(i) = entries.iter().position(|&b| b > 1) {
            return Err(Error::InvalidLaws(format!(
                "rule table entry {i} is {}, expected 0 or 1",
                entries[i]
            )));
        }
        Ok(RuleTable { entries })
    }

    pub fn lookup_bits(&self, left: u8, center: u8, right: u8) -> u8 {
        self.entries[usize::from(left << 2 | center << 1 | right)]
    }

    /// Output for a three-symbol neighborhood such as `"011"`.
    pub fn lookup(&self, neighborhood: &[Symbol]) -> Result<Symbol> {
        let [l, c, r] = neighborhood else {
            return Err(Error::NGramLength {
                n: 3,
                len: neighborhood.len(),
            });
        };
        let out = self.lookup_bits(bit(l, 0)?, bit(c, 1)?, bit(r, 2)?);
        Ok(sym(if out == 1 { "1" } else { "0" }))
    }

    pub fn wolfram_number(&self) -> u8 {
        self.entries
            .iter()
            .enumerate()
            .map(|(i, &b)| b << i)
            .fold(0, |acc, x| acc | x)
    }

    /// Entries in `000, 001, ..., 111` order.
    pub fn entries(&self) -> [u8; 8] {
        self.entries
    }

    pub fn step(&self, row: &[Symbol]) -> Result<Word> {
        if row.is_empty() {
            return Err(Error::EmptyRow);
        }
        let cells = bits(row)?;
        let n = cells.len();
        let next: Vec<u8> = (0..n)
            .map(|i| self.lookup_bits(cells[(i + n - 1) % n], cells[i], cells[(i + 1) % n]))
            .collect();
        Ok(to_word(&next))
    }

    /// The initial row followed by `steps` successors.
    pub fn evolve(&self, initial: &[Symbol], steps: usize) -> Result<History> {
        if initial.is_empty() {
            return Err(Error::EmptyRow);
        }
        bits(initial)?;
        let mut rows = vec![initial.to_vec()];
        for _ in 0..steps {
            let next = self.step(rows.last().expect("non-empty"))?;
            rows.push(next);
        }
        Ok(History {
            rows,
            boundary: Boundary::Periodic,
        })
    }
}

impl fmt::Display for RuleTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let hood: Vec<String> = (0..8).map(|i| format!("{i:03b}")).collect();
        let out: Vec<String> = self.entries.iter().map(|b| format!("{b:>3}")).collect();
        writeln!(f, "η {}", hood.join(" "))?;
        write!(f, "s {}", out.join(" "))
    }
}

/// The radius-1 majority rule: 000→0 001→0 010→0 011→1 100→0 101→1 110→1 111→1.
pub fn gol_table() -> RuleTable {
    RuleTable {
        entries: [0, 0, 0, 1, 0, 1, 1, 1],
    }
}

impl History {
    /// Wraps existing rows. Rows must be non-empty, binary and of equal length.
    pub fn from_rows(rows: Vec<Word>) -> Result<Self> {
        let width = rows.first().ok_or(Error::EmptyRow)?.len();
        for row in &rows {
            if row.len() != width {
                return Err(Error::RaggedHistory {
                    expected: width,
                    found: row.len(),
                });
            }
            bits(row)?;
        }
        Ok(History {
            rows,
            boundary: Boundary::Periodic,
        })
    }

    pub fn rows(&self) -> &[Word] {
        &self.rows
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    pub fn width(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    /// Column `c` read top to bottom.
    pub fn column(&self, c: usize) -> Word {
        self.rows.iter().map(|r| r[c].clone()).collect()
    }

    /// One row per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.rows {
            out.push_str(&render(r));
            out.push('\n');
        }
        out
    }

    /// Checks every row (`Axis::X`) or every column (`Axis::Y`) against
    /// `laws`. Violations carry the grid coordinates of the gram's first cell.
    pub fn axis_check(&self, laws: &NGramLawSet, axis: Axis) -> Result<GridVerdict> {
        let mut violations = Vec::new();
        match axis {
            Axis::X => {
                for (row, r) in self.rows.iter().enumerate() {
                    for v in laws.check(r)?.violations {
                        violations.push(GridViolation {
                            row,
                            column: v.position,
                            gram: v.gram,
                            law: v.law,
                        });
                    }
                }
            }
            Axis::Y => {
                for column in 0..self.width() {
                    for v in laws.check(&self.column(column))?.violations {
                        violations.push(GridViolation {
                            row: v.position,
                            column,
                            gram: v.gram,
                            law: v.law,
                        });
                    }
                }
            }
        }
        Ok(GridVerdict {
            ok: violations.is_empty(),
            violations,
        })
    }
}
