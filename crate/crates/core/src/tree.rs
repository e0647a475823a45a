//! Rooted, ordered, labeled trees.
//!
//! Nodes live in an arena kept in pre-order with the root at id 0, so two
//! trees are equal exactly when they have the same shape and labels. Every
//! constructor re-establishes that layout; node ids of an input tree are not
//! preserved across composition.
//!
//! Trees have a compact bracket notation, `1(0(1),1)`, used by the CLI and by
//! `Display`.

use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symbol::{Symbol, Word};

pub type NodeId = usize;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Node {
    label: Symbol,
    parent: Option<NodeId>,
    children: Vec<NodeId>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "NestedTree", into = "NestedTree")]
pub struct Tree {
    nodes: Vec<Node>,
}

/// Machine-readable form of a tree: a label and its ordered children.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NestedTree {
    pub label: Symbol,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<NestedTree>,
}

impl Tree {
    pub fn leaf(label: Symbol) -> Self {
        Tree {
            nodes: vec![Node {
                label,
                parent: None,
                children: Vec::new(),
            }],
        }
    }

    /// Builds a tree whose root carries `label` and whose subtrees are
    /// `children`, in order.
    pub fn new(label: Symbol, children: Vec<Tree>) -> Self {
        let mut nodes = vec![Node {
            label,
            parent: None,
            children: Vec::new(),
        }];
        for child in children {
            let offset = nodes.len();
            nodes[0].children.push(offset);
            for (i, mut node) in child.nodes.into_iter().enumerate() {
                node.parent = Some(match node.parent {
                    Some(p) => p + offset,
                    None => 0,
                });
                debug_assert!(i > 0 || node.parent == Some(0));
                for c in &mut node.children {
                    *c += offset;
                }
                nodes.push(node);
            }
        }
        Tree { nodes }
    }

    /// A depth-1 tree: `root` immediately dominating each symbol of `children`.
    pub fn local(root: Symbol, children: &[Symbol]) -> Self {
        Tree::new(root, children.iter().cloned().map(Tree::leaf).collect())
    }

    pub fn root(&self) -> NodeId {
        0
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn node_ids(&self) -> impl Iterator<Item = NodeId> {
        0..self.nodes.len()
    }

    pub fn contains(&self, id: NodeId) -> bool {
        id < self.nodes.len()
    }

    pub fn label(&self, id: NodeId) -> &Symbol {
        &self.nodes[id].label
    }

    pub fn root_label(&self) -> &Symbol {
        &self.nodes[0].label
    }

    pub fn parent(&self, id: NodeId) -> Option<NodeId> {
        self.nodes[id].parent
    }

    pub fn children(&self, id: NodeId) -> &[NodeId] {
        &self.nodes[id].children
    }

    /// Labels of `id`'s children, left to right.
    pub fn child_labels(&self, id: NodeId) -> Word {
        self.children(id)
            .iter()
            .map(|&c| self.label(c).clone())
            .collect()
    }

    pub fn is_leaf(&self, id: NodeId) -> bool {
        self.nodes[id].children.is_empty()
    }

    /// Number of edges between `id` and the root.
    pub fn node_depth(&self, mut id: NodeId) -> usize {
        let mut depth = 0;
        while let Some(p) = self.nodes[id].parent {
            depth += 1;
            id = p;
        }
        depth
    }

    /// Longest root-to-leaf path, in edges.
    pub fn depth(&self) -> usize {
        self.node_ids()
            .filter(|&id| self.is_leaf(id))
            .map(|id| self.node_depth(id))
            .max()
            .unwrap_or(0)
    }

    /// Largest child count over all nodes.
    pub fn breadth(&self) -> usize {
        self.nodes.iter().map(|n| n.children.len()).max().unwrap_or(0)
    }

    /// True if `ancestor` properly dominates `id`.
    pub fn dominates(&self, ancestor: NodeId, mut id: NodeId) -> bool {
        while let Some(p) = self.nodes[id].parent {
            if p == ancestor {
                return true;
            }
            id = p;
        }
        false
    }

    /// The subtree rooted at `id`, as a standalone tree.
    pub fn subtree(&self, id: NodeId) -> Tree {
        Tree::new(
            self.label(id).clone(),
            self.children(id).iter().map(|&c| self.subtree(c)).collect(),
        )
    }

    /// Depth-first pre-order traversal following sibling order. Every node
    /// appears after all of its ancestors.
    pub fn walk(&self) -> Vec<NodeId> {
        let mut order = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![self.root()];
        while let Some(id) = stack.pop() {
            order.push(id);
            stack.extend(self.children(id).iter().rev());
        }
        order
    }

    /// Leaf labels, left to right.
    pub fn frontier(&self) -> Word {
        self.walk()
            .into_iter()
            .filter(|&id| self.is_leaf(id))
            .map(|id| self.label(id).clone())
            .collect()
    }

    /// Identifies the root of `guest` with the leaf `leaf` of `host`.
    pub fn substitute_frontier(&self, guest: &Tree, leaf: NodeId) -> Result<Tree> {
        if !self.contains(leaf) {
            return Err(Error::NoSuchNode(leaf));
        }
        if !self.is_leaf(leaf) {
            return Err(Error::NotALeaf(leaf));
        }
        if self.label(leaf) != guest.root_label() {
            return Err(Error::LabelMismatch {
                expected: self.label(leaf).clone(),
                found: guest.root_label().clone(),
            });
        }
        Ok(self.rebuild_with(leaf, guest))
    }

    fn rebuild_with(&self, leaf: NodeId, guest: &Tree) -> Tree {
        fn go(host: &Tree, id: NodeId, leaf: NodeId, guest: &Tree) -> Tree {
            if id == leaf {
                return guest.clone();
            }
            Tree::new(
                host.label(id).clone(),
                host.children(id)
                    .iter()
                    .map(|&c| go(host, c, leaf, guest))
                    .collect(),
            )
        }
        go(self, self.root(), leaf, guest)
    }

    /// Merges two trees with the same root label into one root carrying
    /// `self`'s children followed by `other`'s.
    pub fn substitute_root(&self, other: &Tree) -> Result<Tree> {
        if self.root_label() != other.root_label() {
            return Err(Error::LabelMismatch {
                expected: self.root_label().clone(),
                found: other.root_label().clone(),
            });
        }
        let subtrees = self
            .children(self.root())
            .iter()
            .map(|&c| self.subtree(c))
            .chain(other.children(other.root()).iter().map(|&c| other.subtree(c)))
            .collect();
        Ok(Tree::new(self.root_label().clone(), subtrees))
    }

    /// Graphviz rendering. Node names are ids, display labels are symbols, and
    /// each edge carries its position among its siblings as `order`.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph tree {\n  ordering=out;\n");
        for id in self.walk() {
            let _ = writeln!(out, "  n{id} [label={:?}];", self.label(id).as_str());
        }
        for id in self.walk() {
            for (order, &child) in self.children(id).iter().enumerate() {
                let _ = writeln!(out, "  n{id} -> n{child} [order={order}];");
            }
        }
        out.push_str("}\n");
        out
    }

    pub fn to_nested(&self) -> NestedTree {
        fn go(t: &Tree, id: NodeId) -> NestedTree {
            NestedTree {
                label: t.label(id).clone(),
                children: t.children(id).iter().map(|&c| go(t, c)).collect(),
            }
        }
        go(self, self.root())
    }

    /// Parses bracket notation: `label`, or `label(child,child,...)`.
    pub fn parse(text: &str) -> Result<Tree> {
        let mut parser = NotationParser { text, pos: 0 };
        let tree = parser.tree()?;
        parser.skip_ws();
        if parser.pos != text.len() {
            return Err(parser.error("trailing input"));
        }
        Ok(tree)
    }
}

impl From<NestedTree> for Tree {
    fn from(n: NestedTree) -> Tree {
        Tree::new(n.label, n.children.into_iter().map(Tree::from).collect())
    }
}

impl From<Tree> for NestedTree {
    fn from(t: Tree) -> NestedTree {
        t.to_nested()
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(t: &Tree, id: NodeId, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            write!(f, "{}", t.label(id))?;
            let children = t.children(id);
            if !children.is_empty() {
                f.write_char('(')?;
                for (i, &c) in children.iter().enumerate() {
                    if i > 0 {
                        f.write_char(',')?;
                    }
                    go(t, c, f)?;
                }
                f.write_char(')')?;
            }
            Ok(())
        }
        go(self, self.root(), f)
    }
}

impl std::str::FromStr for Tree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Tree> {
        Tree::parse(s)
    }
}

struct NotationParser<'a> {
    text: &'a str,
    pos: usize,
}

impl NotationParser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::TreeSyntax {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn tree(&mut self) -> Result<Tree> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.text[start..];
        let len = rest
            .find(|c: char| c.is_whitespace() || "(),".contains(c))
            .unwrap_or(rest.len());
        if len == 0 {
            return Err(self.error("expected a label"));
        }
        self.pos += len;
        let label = Symbol::new(&self.text[start..start + len])?;
        self.skip_ws();
        if self.peek() != Some('(') {
            return Ok(Tree::leaf(label));
        }
        self.pos += 1;
        let mut children = vec![self.tree()?];
        loop {
            self.skip_ws();
            match self.peek() {
                Some(',') => {
                    self.pos += 1;
                    children.push(self.tree()?);
                }
                Some(')') => {
                    self.pos += 1;
                    return Ok(Tree::new(label, children));
                }
                _ => return Err(self.error("expected ',' or ')'")),
            }
        }
    }
}
