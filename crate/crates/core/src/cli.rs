//! The `lsnac` command line.
//!
//! [`run`] takes an argument vector and returns the exit status together with
//! what would have gone to stdout and stderr, so the binary is a thin shell
//! around it and tests can drive every verb in-process.
//!
//! Exit status: 0 on success (and, for checking verbs, an ok verdict), 1 when
//! a checking verb finds a violation, 2 on usage or input errors.

use std::fmt::Write as _;
use std::path::Path;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::ca::{gol_table, Axis, Boundary};
use crate::lsystem::{builtin_grammar, Grammar, BUILTIN_NAMES};
use crate::model::{self, ModelReport, SymbolMap};
use crate::nac::{CheckMode, TreeModel};
use crate::sac::{extract_ngrams, fib_laws, NGramLawSet, Verdict};
use crate::symbol::{parse_word, render, Symbol, Word};
use crate::tree::Tree;

#[derive(Debug, Parser)]
#[command(name = "lsnac", version, about = "L-system laws, n-grams and local tree models")]
struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct LawArgs {
    /// Law-set file (`forbid:` / `name:` / `alphabet:` lines).
    #[arg(long, conflicts_with = "forbid")]
    laws: Option<String>,

    /// Inline forbidden gram; repeatable. Defaults to the Fibonacci laws.
    #[arg(long)]
    forbid: Vec<String>,

    /// Alphabet for inline grams; inferred from the grams when omitted.
    #[arg(long, requires = "forbid")]
    alphabet: Option<String>,
}

#[derive(Debug, Args)]
struct ModelArgs {
    #[command(flatten)]
    laws: LawArgs,

    /// Label that may not dominate itself; defaults to 0 when in the alphabet.
    #[arg(long, conflicts_with = "no_lonely_beta")]
    lonely_beta: Option<String>,

    #[arg(long)]
    no_lonely_beta: bool,

    /// Largest elementary breadth; defaults to the longest forbidden gram minus one.
    #[arg(long)]
    max_breadth: Option<usize>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum AxisArg {
    X,
    Y,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Elementary,
    Derived,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Dot,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print generations 0..=n of a grammar.
    Derive {
        #[arg(short, long)]
        grammar: String,
        #[arg(short, default_value_t = 6)]
        n: usize,
    },
    /// Per-generation lengths and symbol counts.
    Stats {
        #[arg(short, long)]
        grammar: String,
        #[arg(short, default_value_t = 6)]
        n: usize,
    },
    /// Check a string (-s) or a grammar's generations (-g) against the laws.
    Check {
        #[arg(short, long, conflicts_with = "grammar", required_unless_present = "grammar")]
        string: Option<String>,
        #[arg(short, long)]
        grammar: Option<String>,
        #[arg(short, default_value_t = 20)]
        n: usize,
        /// Symbol renaming such as `a=1`; repeatable.
        #[arg(long)]
        map: Vec<String>,
        #[command(flatten)]
        laws: LawArgs,
    },
    /// Overlapping n-grams of a string.
    Ngrams {
        #[arg(short, long)]
        string: String,
        #[arg(short)]
        n: Option<usize>,
        /// List the depth-1 trees licensed for each window instead.
        #[arg(long)]
        trees: bool,
        #[command(flatten)]
        model: ModelArgs,
    },
    /// All admissible n-grams.
    Allowed {
        #[arg(short)]
        n: usize,
        #[command(flatten)]
        laws: LawArgs,
    },
    /// Check the concatenation of two admissible strings.
    Concat {
        left: String,
        right: String,
        #[command(flatten)]
        laws: LawArgs,
    },
    /// Pairs of admissible strings whose concatenation is not admissible.
    Closure {
        #[arg(long, default_value_t = 3)]
        max: usize,
        #[command(flatten)]
        laws: LawArgs,
    },
    /// Elementary trees of a breadth, or Condition III over candidates.
    Elementary {
        #[arg(short, long, required_unless_present = "candidates")]
        breadth: Option<usize>,
        /// Candidate trees to filter by Condition III.
        #[arg(long, num_args = 1.., conflicts_with = "breadth")]
        candidates: Vec<String>,
        #[command(flatten)]
        model: ModelArgs,
    },
    /// Compose two trees by substitution at a leaf (--at) or at the root.
    Compose {
        host: String,
        guest: String,
        /// Leaf id (pre-order) of the host to substitute at.
        #[arg(long, conflicts_with = "root", required_unless_present = "root")]
        at: Option<usize>,
        #[arg(long)]
        root: bool,
        #[arg(long)]
        dot: bool,
    },
    /// Derivation tree of a single-symbol-axiom grammar.
    Tree {
        #[arg(short, long)]
        grammar: String,
        #[arg(short, default_value_t = 3)]
        n: usize,
        #[arg(long)]
        dot: bool,
    },
    /// k/n/s classification of derivation-tree nodes.
    Points {
        #[arg(short, long)]
        grammar: String,
        #[arg(short, default_value_t = 4)]
        n: usize,
    },
    /// Symmetric/asymmetric classification via Lonely Beta detection.
    Classify {
        #[arg(short, long)]
        grammar: String,
    },
    /// Whether two grammars satisfy the same laws up to a bound.
    SameModel {
        #[arg(long)]
        g1: String,
        #[arg(long)]
        g2: String,
        #[arg(short, default_value_t = 20)]
        n: usize,
        #[arg(long)]
        map: Vec<String>,
        #[command(flatten)]
        laws: LawArgs,
    },
    /// Run the majority-rule cellular automaton.
    Ca {
        #[arg(long, default_value_t = 5)]
        steps: usize,
        #[arg(long)]
        init: String,
        #[arg(long, default_value = "periodic")]
        boundary: Boundary,
        /// Also check the history's rows (x) or columns (y) against the laws.
        #[arg(long)]
        axis: Option<AxisArg>,
        #[command(flatten)]
        laws: LawArgs,
    },
    /// Render a tree given in bracket notation, optionally checking it.
    Export {
        tree: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Check the tree's neighborhoods against the model.
        #[arg(long)]
        check: Option<ModeArg>,
        #[command(flatten)]
        model: ModelArgs,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs one command. `args[0]` is the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<String>,
{
    // `-g1`/`-g2` are accepted as spellings of `--g1`/`--g2`
    let args: Vec<String> = args
        .into_iter()
        .map(Into::into)
        .map(|a| match a.as_str() {
            "-g1" | "-g2" => format!("-{a}"),
            _ => a,
        })
        .collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let status = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if status == 0 {
                Outcome {
                    status,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    status,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let mut out = String::new();
    match execute(&cli, &mut out) {
        Ok(passed) => Outcome {
            status: if passed { 0 } else { 1 },
            stdout: out,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            status: 2,
            stdout: out,
            stderr: format!("error: {e:#}\n"),
        },
    }
}

fn load_grammar(source: &str) -> anyhow::Result<Grammar> {
    let path = Path::new(source);
    if path.is_file() {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading grammar file {source}"))?;
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| source.to_string());
        return Grammar::parse(name, &text).with_context(|| format!("parsing {source}"));
    }
    builtin_grammar(source).ok_or_else(|| {
        anyhow!(
            "{source}: no such grammar file, and not a built-in ({})",
            BUILTIN_NAMES.join(", ")
        )
    })
}

fn load_laws(args: &LawArgs) -> anyhow::Result<NGramLawSet> {
    if let Some(path) = &args.laws {
        let text =
            std::fs::read_to_string(path).with_context(|| format!("reading law file {path}"))?;
        return NGramLawSet::parse(&text).with_context(|| format!("parsing {path}"));
    }
    if args.forbid.is_empty() {
        return Ok(fib_laws());
    }
    let grams: Vec<(Word, Option<String>)> = args
        .forbid
        .iter()
        .map(|g| Ok((parse_word(g)?, None)))
        .collect::<crate::Result<_>>()?;
    let alphabet: Vec<Symbol> = match &args.alphabet {
        Some(a) => parse_word(a)?,
        None => grams.iter().flat_map(|(g, _)| g.iter().cloned()).collect(),
    };
    Ok(NGramLawSet::new(alphabet, grams)?)
}

fn load_model(args: &ModelArgs) -> anyhow::Result<TreeModel> {
    let laws = load_laws(&args.laws)?;
    let beta = if args.no_lonely_beta {
        None
    } else if let Some(b) = &args.lonely_beta {
        Some(Symbol::new(b.as_str())?)
    } else {
        laws.alphabet().iter().find(|s| s.as_str() == "0").cloned()
    };
    let model = match args.max_breadth {
        Some(b) => TreeModel::new(laws, beta, b)?,
        None => TreeModel::from_laws(laws, beta)?,
    };
    Ok(model)
}

fn parse_map(entries: &[String]) -> anyhow::Result<SymbolMap> {
    entries
        .iter()
        .flat_map(|e| e.split(','))
        .map(|pair| {
            let (from, to) = pair
                .split_once('=')
                .ok_or_else(|| anyhow!("bad mapping {pair:?}, expected from=to"))?;
            Ok((Symbol::new(from.trim())?, Symbol::new(to.trim())?))
        })
        .collect()
}

fn parse_tree(text: &str) -> anyhow::Result<Tree> {
    Tree::parse(text).with_context(|| format!("parsing tree {text:?}"))
}

fn emit_json(out: &mut String, value: &impl Serialize) -> anyhow::Result<()> {
    out.push_str(&serde_json::to_string_pretty(value)?);
    out.push('\n');
    Ok(())
}

fn write_verdict(out: &mut String, subject: &str, verdict: &Verdict) {
    if verdict.ok {
        let _ = writeln!(out, "ok: {subject}");
        return;
    }
    let _ = writeln!(out, "not ok: {subject}");
    for v in &verdict.violations {
        let _ = write!(out, "  {} at {}", render(&v.gram), v.position);
        match &v.law {
            Some(law) => {
                let _ = writeln!(out, " ({law})");
            }
            None => out.push('\n'),
        }
    }
}

fn write_report(out: &mut String, report: &ModelReport) {
    match &report.failure {
        None => {
            let _ = writeln!(
                out,
                "{}: ok through generation {} (bounded check)",
                report.grammar, report.bound
            );
        }
        Some(f) => {
            let first = f.verdict.first().expect("failing verdict has a violation");
            let _ = writeln!(
                out,
                "{}: fails at generation {}: {} at {} in {}",
                report.grammar,
                f.generation,
                render(&first.gram),
                first.position,
                render(&f.string)
            );
        }
    }
}

/// Returns whether the command's verdict (if any) passed.
fn execute(cli: &Cli, out: &mut String) -> anyhow::Result<bool> {
    let json = cli.json;
    match &cli.command {
        Command::Derive { grammar, n } => {
            let g = load_grammar(grammar)?;
            let d = g.derive(*n)?;
            if json {
                emit_json(
                    out,
                    &json!({ "grammar": g.name(), "steps": n, "generations": d.rendered() }),
                )?;
            } else {
                for line in d.rendered() {
                    let _ = writeln!(out, "{line}");
                }
            }
        }
        Command::Stats { grammar, n } => {
            let g = load_grammar(grammar)?;
            let stats = g.derive(*n)?.stats();
            if json {
                emit_json(out, &stats)?;
            } else {
                for s in &stats {
                    let counts: Vec<String> =
                        s.counts.iter().map(|(k, v)| format!("{k}={v}")).collect();
                    let _ = writeln!(out, "{}\t{}\t{}", s.generation, s.length, counts.join(" "));
                }
            }
        }
        Command::Check {
            string,
            grammar,
            n,
            map,
            laws,
        } => {
            let laws = load_laws(laws)?;
            if let Some(s) = string {
                let w = parse_word(s)?;
                let verdict = laws.check(&w)?;
                if json {
                    emit_json(out, &json!({ "string": render(&w), "verdict": verdict }))?;
                } else {
                    write_verdict(out, &render(&w), &verdict);
                }
                return Ok(verdict.ok);
            }
            let g = load_grammar(grammar.as_deref().expect("clap requires -s or -g"))?;
            let report = model::grammar_satisfies(&g, &laws, *n, &parse_map(map)?)?;
            if json {
                emit_json(out, &report)?;
            } else {
                write_report(out, &report);
            }
            return Ok(report.ok);
        }
        Command::Ngrams {
            string,
            n,
            trees,
            model,
        } => {
            let w = parse_word(string)?;
            if *trees {
                let model = load_model(model)?;
                let windows = model.ngram_depth1_trees(&w)?;
                if json {
                    emit_json(out, &windows)?;
                } else {
                    for win in &windows {
                        let shapes: Vec<String> = win
                            .trees
                            .iter()
                            .map(|e| format!("{}{}", e.tree, constituency_tag(e.constituency)))
                            .collect();
                        let _ = writeln!(
                            out,
                            "{}@{}\t{}",
                            render(&win.window),
                            win.position,
                            shapes.join(" ")
                        );
                    }
                }
                return Ok(true);
            }
            let sizes: Vec<usize> = match n {
                Some(n) => vec![*n],
                None => (1..=w.len()).collect(),
            };
            let mut table = Vec::new();
            for k in sizes {
                let grams: Vec<String> = extract_ngrams(&w, k)?.iter().map(|g| render(g)).collect();
                table.push((k, grams));
            }
            if json {
                let records: Vec<_> = table
                    .iter()
                    .map(|(k, g)| json!({ "n": k, "grams": g }))
                    .collect();
                emit_json(out, &records)?;
            } else if n.is_some() {
                let _ = writeln!(out, "{}", table[0].1.join(" "));
            } else {
                for (k, grams) in &table {
                    let _ = writeln!(out, "{k}-grams: {}", grams.join(" "));
                }
            }
        }
        Command::Allowed { n, laws } => {
            if *n == 0 {
                bail!("n must be at least 1");
            }
            let laws = load_laws(laws)?;
            let allowed: Vec<String> = laws.allowed_ngrams(*n).iter().map(|w| render(w)).collect();
            if json {
                emit_json(out, &json!({ "n": n, "allowed": allowed }))?;
            } else {
                let _ = writeln!(out, "{}", allowed.join(" "));
            }
        }
        Command::Concat { left, right, laws } => {
            let laws = load_laws(laws)?;
            let (l, r) = (parse_word(left)?, parse_word(right)?);
            let verdict = laws.concat_check(&l, &r)?;
            let subject = format!("{}-{}", render(&l), render(&r));
            if json {
                emit_json(out, &json!({ "left": render(&l), "right": render(&r), "verdict": verdict }))?;
            } else {
                write_verdict(out, &subject, &verdict);
            }
            return Ok(verdict.ok);
        }
        Command::Closure { max, laws } => {
            if *max < 2 {
                bail!("--max must be at least 2");
            }
            let laws = load_laws(laws)?;
            let pairs: Vec<(String, String)> = laws
                .forbidden_concatenations(*max)
                .iter()
                .map(|(u, v)| (render(u), render(v)))
                .collect();
            if json {
                emit_json(out, &pairs)?;
            } else {
                for (u, v) in &pairs {
                    let _ = writeln!(out, "*{u}-{v}");
                }
            }
        }
        Command::Elementary {
            breadth,
            candidates,
            model,
        } => {
            let model = load_model(model)?;
            if let Some(b) = breadth {
                let trees = model.elementary_trees(*b)?;
                if json {
                    emit_json(out, &trees)?;
                } else {
                    for e in &trees {
                        let _ = writeln!(out, "{}{}", e.tree, constituency_tag(e.constituency));
                    }
                }
            } else {
                let parsed = candidates
                    .iter()
                    .map(|c| parse_tree(c))
                    .collect::<anyhow::Result<Vec<_>>>()?;
                let kept = model.prefer_maximal(&parsed)?;
                if json {
                    emit_json(out, &kept)?;
                } else {
                    for t in &kept {
                        let _ = writeln!(out, "{t}");
                    }
                }
            }
        }
        Command::Compose {
            host,
            guest,
            at,
            root: _,
            dot,
        } => {
            let (host, guest) = (parse_tree(host)?, parse_tree(guest)?);
            let composed = match at {
                Some(leaf) => host.substitute_frontier(&guest, *leaf)?,
                None => host.substitute_root(&guest)?,
            };
            write_tree(out, &composed, json, *dot)?;
        }
        Command::Tree { grammar, n, dot } => {
            let g = load_grammar(grammar)?;
            let dt = g.derivation_tree(*n)?;
            write_tree(out, dt.tree(), json, *dot)?;
        }
        Command::Points { grammar, n } => {
            let g = load_grammar(grammar)?;
            let dt = g.derivation_tree(*n)?;
            let classes = model::classify_points(&dt)?;
            let t = dt.tree();
            if json {
                let records: Vec<_> = classes
                    .iter()
                    .map(|(id, c)| {
                        json!({
                            "node": id,
                            "label": t.label(*id),
                            "generation": dt.generation_of(*id),
                            "parent": t.parent(*id),
                            "class": c,
                        })
                    })
                    .collect();
                emit_json(out, &records)?;
            } else {
                for (id, c) in &classes {
                    let _ = writeln!(out, "{id}\t{}\t{}\t{c}", dt.generation_of(*id), t.label(*id));
                }
            }
        }
        Command::Classify { grammar } => {
            let g = load_grammar(grammar)?;
            let class = model::classify_grammar(&g);
            if json {
                emit_json(
                    out,
                    &json!({ "grammar": g.name(), "kind": class.kind, "lonely_beta": class.lonely_beta }),
                )?;
            } else {
                match &class.lonely_beta {
                    Some(b) => {
                        let _ = writeln!(out, "{}: asymmetric (lonely beta {b})", g.name());
                    }
                    None => {
                        let _ = writeln!(out, "{}: symmetric", g.name());
                    }
                }
            }
        }
        Command::SameModel {
            g1,
            g2,
            n,
            map,
            laws,
        } => {
            let laws = load_laws(laws)?;
            let (g1, g2) = (load_grammar(g1)?, load_grammar(g2)?);
            let (same, r1, r2) = model::same_model(&g1, &g2, &laws, *n, &parse_map(map)?)?;
            if json {
                emit_json(out, &json!({ "same_model": same, "reports": [r1, r2] }))?;
            } else {
                write_report(out, &r1);
                write_report(out, &r2);
                let _ = writeln!(out, "same model: {same}");
            }
            return Ok(same);
        }
        Command::Ca {
            steps,
            init,
            boundary: _,
            axis,
            laws,
        } => {
            let history = gol_table().evolve(&parse_word(init)?, *steps)?;
            let verdict = match axis {
                Some(a) => {
                    let laws = load_laws(laws)?;
                    let axis = match a {
                        AxisArg::X => Axis::X,
                        AxisArg::Y => Axis::Y,
                    };
                    Some(history.axis_check(&laws, axis)?)
                }
                None => None,
            };
            if json {
                emit_json(out, &json!({ "history": history, "axis_check": verdict }))?;
            } else {
                out.push_str(&history.to_text());
                if let Some(v) = &verdict {
                    if v.ok {
                        let _ = writeln!(out, "axis check: ok");
                    } else {
                        let _ = writeln!(out, "axis check: not ok");
                        for x in &v.violations {
                            let _ = writeln!(
                                out,
                                "  {} at row {} column {}",
                                render(&x.gram),
                                x.row,
                                x.column
                            );
                        }
                    }
                }
            }
            return Ok(verdict.is_none_or(|v| v.ok));
        }
        Command::Export {
            tree,
            format,
            check,
            model,
        } => {
            let tree = parse_tree(tree)?;
            let format = if json { Format::Json } else { *format };
            match check {
                None => {
                    write_tree(out, &tree, matches!(format, Format::Json), matches!(format, Format::Dot))?;
                }
                Some(mode) => {
                    let model = load_model(model)?;
                    let mode = match mode {
                        ModeArg::Elementary => CheckMode::Elementary,
                        ModeArg::Derived => CheckMode::Derived,
                    };
                    let verdict = model.nac_check(&tree, mode)?;
                    match format {
                        Format::Json => emit_json(out, &json!({ "tree": tree, "nac": verdict }))?,
                        Format::Dot => out.push_str(&tree.to_dot()),
                        Format::Text => {
                            let _ = writeln!(out, "{tree}");
                            if verdict.ok {
                                let _ = writeln!(out, "nac: ok");
                            }
                            for f in &verdict.failures {
                                let _ = writeln!(
                                    out,
                                    "  node {} ({}): {}",
                                    f.node,
                                    tree.label(f.node),
                                    serde_json::to_value(f.reason)?.as_str().unwrap_or("?")
                                );
                            }
                        }
                    }
                    return Ok(verdict.ok);
                }
            }
        }
    }
    Ok(true)
}

fn constituency_tag(c: crate::nac::Constituency) -> &'static str {
    match c {
        crate::nac::Constituency::Constituent => "",
        crate::nac::Constituency::NonConstituent => " [non-constituent]",
    }
}

fn write_tree(out: &mut String, tree: &Tree, json: bool, dot: bool) -> anyhow::Result<()> {
    if json {
        emit_json(out, tree)
    } else if dot {
        out.push_str(&tree.to_dot());
        Ok(())
    } else {
        let _ = writeln!(out, "{tree}");
        Ok(())
    }
}
