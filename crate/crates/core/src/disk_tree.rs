//! Di-sk trees: binary trees labelled `⊕`/`⊖` whose right chains alternate.
//!
//! Nodes are identified by their 1-based in-order index, and `0` stands for
//! "no node" in the child arrays. A tree with `n - 1` nodes corresponds to
//! Schröder words and separable permutations of length `n`.
//!
//! Text form: `(label left right)` with `_` for an empty subtree and labels
//! `+`/`-`; the one-leaf tree (no nodes) is `_`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::schroder::{self, Expr, Op, SchroderWord};

/// An unlabelled binary tree in canonical in-order numbering.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryTree {
    left: Vec<usize>,
    right: Vec<usize>,
    root: usize,
}

impl BinaryTree {
    pub fn empty() -> Self {
        BinaryTree { left: vec![0], right: vec![0], root: 0 }
    }

    pub fn node_count(&self) -> usize {
        self.left.len() - 1
    }

    pub fn root(&self) -> Option<usize> {
        (self.root != 0).then_some(self.root)
    }

    pub fn left(&self, node: usize) -> Option<usize> {
        let c = self.left[node];
        (c != 0).then_some(c)
    }

    pub fn right(&self, node: usize) -> Option<usize> {
        let c = self.right[node];
        (c != 0).then_some(c)
    }

    /// Renumbers an arbitrary pointer structure (1-based, `0` = none) in in-order.
    ///
    /// Returns the tree and `order`, where `order[new_id] = old_id`.
    pub(crate) fn from_pointers(left: &[usize], right: &[usize], root: usize) -> (BinaryTree, Vec<usize>) {
        let m = left.len() - 1;
        let mut order = Vec::with_capacity(m + 1);
        order.push(0);
        let mut stack = Vec::new();
        let mut cur = root;
        while cur != 0 || !stack.is_empty() {
            while cur != 0 {
                stack.push(cur);
                cur = left[cur];
            }
            let v = stack.pop().unwrap();
            order.push(v);
            cur = right[v];
        }
        assert_eq!(order.len(), m + 1, "pointer structure is not a single tree");
        let mut new_id = vec![0usize; m + 1];
        for (new, &old) in order.iter().enumerate().skip(1) {
            new_id[old] = new;
        }
        let mut tree = BinaryTree { left: vec![0; m + 1], right: vec![0; m + 1], root: new_id[root] };
        for new in 1..=m {
            let old = order[new];
            tree.left[new] = new_id[left[old]];
            tree.right[new] = new_id[right[old]];
        }
        (tree, order)
    }

    /// Parses a preorder code: `1` for a node, `0` for an empty subtree.
    pub fn from_preorder_code(code: &str) -> Result<BinaryTree> {
        let bits: Vec<char> = code.chars().collect();
        let m = bits.iter().filter(|&&c| c == '1').count();
        let mut left = vec![0usize; m + 1];
        let mut right = vec![0usize; m + 1];
        let mut next = 1usize;
        let mut pos = 0usize;
        fn go(bits: &[char], pos: &mut usize, next: &mut usize, left: &mut [usize], right: &mut [usize]) -> Result<usize> {
            match bits.get(*pos) {
                Some('0') => {
                    *pos += 1;
                    Ok(0)
                }
                Some('1') => {
                    *pos += 1;
                    let id = *next;
                    *next += 1;
                    left[id] = go(bits, pos, next, left, right)?;
                    right[id] = go(bits, pos, next, left, right)?;
                    Ok(id)
                }
                _ => Err(Error::Parse(format!("bad preorder code at offset {pos}"))),
            }
        }
        let root = go(&bits, &mut pos, &mut next, &mut left, &mut right)?;
        if pos != bits.len() {
            return Err(Error::Parse("trailing preorder code".into()));
        }
        Ok(BinaryTree::from_pointers(&left, &right, root).0)
    }

    /// Preorder code; the canonical key of a shape.
    pub fn preorder_code(&self) -> String {
        let mut s = String::with_capacity(2 * self.node_count() + 1);
        fn go(t: &BinaryTree, v: usize, s: &mut String) {
            if v == 0 {
                s.push('0');
            } else {
                s.push('1');
                go(t, t.left[v], s);
                go(t, t.right[v], s);
            }
        }
        go(self, self.root, &mut s);
        s
    }

    /// Parent of every node (`0` for the root).
    fn parents(&self) -> Vec<usize> {
        let mut parent = vec![0usize; self.left.len()];
        for v in 1..self.left.len() {
            if self.left[v] != 0 {
                parent[self.left[v]] = v;
            }
            if self.right[v] != 0 {
                parent[self.right[v]] = v;
            }
        }
        parent
    }

    /// Decomposition into maximal right chains, in chain order.
    pub fn right_chains(&self) -> RightChainView {
        let mut chains: Vec<RightChain> = Vec::new();
        if self.root == 0 {
            return RightChainView { chains };
        }
        let parent = self.parents();
        // Top-down from the root so a chain's parent chain is known first.
        let mut pending: Vec<(usize, Attachment, usize, usize)> = vec![(self.root, Attachment::Root, 0, 0)];
        let mut raw: Vec<(usize, Vec<usize>, Attachment, usize, usize)> = Vec::new();
        while let Some((terminal, attachment, level, parent_slot)) = pending.pop() {
            let mut nodes = vec![terminal];
            let mut v = terminal;
            while self.right[v] != 0 {
                v = self.right[v];
                nodes.push(v);
            }
            let slot = raw.len();
            for (i, &u) in nodes.iter().enumerate() {
                if self.left[u] != 0 {
                    let (att, lvl) = if i == 0 { (Attachment::Lock, level) } else { (Attachment::Hang, level + 1) };
                    pending.push((self.left[u], att, lvl, slot));
                }
            }
            raw.push((terminal, nodes, attachment, level, parent_slot));
        }
        // Group = maximal lock-connected run; key it by the run's top chain.
        let mut top_of = vec![0usize; raw.len()];
        for slot in 0..raw.len() {
            top_of[slot] = if raw[slot].2 == Attachment::Lock { top_of[raw[slot].4] } else { slot };
        }
        let mut by_order: Vec<usize> = (0..raw.len()).collect();
        by_order.sort_by_key(|&s| raw[s].0);
        let mut group_of_top = vec![usize::MAX; raw.len()];
        let mut next_group = 0;
        for (idx, &slot) in by_order.iter().enumerate() {
            let (terminal, nodes, attachment, level, _) = &raw[slot];
            let top = top_of[slot];
            if group_of_top[top] == usize::MAX {
                group_of_top[top] = next_group;
                next_group += 1;
            }
            chains.push(RightChain {
                index: idx + 1,
                terminal: *terminal,
                nodes: nodes.clone(),
                starts_with: None,
                level: *level,
                attachment: *attachment,
                anchor: parent[*terminal],
                group: group_of_top[top],
            });
        }
        RightChainView { chains }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Attachment {
    /// The chain through the root of the whole tree.
    Root,
    /// Terminal is the left child of another chain's terminal (same level).
    Lock,
    /// Terminal is the left child of a non-terminal node (one level down).
    Hang,
}

/// One maximal right chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RightChain {
    /// 1-based position in chain order.
    pub index: usize,
    /// First node: the root or a left child.
    pub terminal: usize,
    /// Nodes from the terminal down the right edges.
    pub nodes: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub starts_with: Option<Op>,
    pub level: usize,
    pub attachment: Attachment,
    /// Parent of the terminal, `0` for the root chain.
    pub anchor: usize,
    /// Lock-connected run this chain belongs to, numbered in chain order.
    pub group: usize,
}

impl RightChain {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn is_odd(&self) -> bool {
        self.nodes.len() % 2 == 1
    }

    pub fn last(&self) -> usize {
        *self.nodes.last().unwrap()
    }
}

impl Serialize for Op {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.symbol().to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RightChainView {
    pub chains: Vec<RightChain>,
}

impl RightChainView {
    pub fn r(&self) -> usize {
        self.chains.len()
    }

    pub fn r_odd(&self) -> usize {
        self.chains.iter().filter(|c| c.is_odd()).count()
    }

    pub fn r_even(&self) -> usize {
        self.r() - self.r_odd()
    }

    pub fn lengths(&self) -> Vec<usize> {
        self.chains.iter().map(|c| c.len()).collect()
    }

    /// 1-based chain index containing `node`.
    pub fn chain_of(&self, node: usize) -> Option<usize> {
        self.chains.iter().find(|c| c.nodes.contains(&node)).map(|c| c.index)
    }

    pub fn get(&self, index: usize) -> Option<&RightChain> {
        index.checked_sub(1).and_then(|i| self.chains.get(i))
    }
}

/// An unlabelled tree shape; two di-sk trees are in one flip orbit iff their shapes agree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TreeShape {
    tree: BinaryTree,
}

impl TreeShape {
    pub fn new(tree: BinaryTree) -> Self {
        TreeShape { tree }
    }

    pub fn tree(&self) -> &BinaryTree {
        &self.tree
    }

    /// `n` such that the shape has `n - 1` nodes.
    pub fn n(&self) -> usize {
        self.tree.node_count() + 1
    }

    pub fn key(&self) -> String {
        self.tree.preorder_code()
    }

    pub fn right_chains(&self) -> RightChainView {
        self.tree.right_chains()
    }

    /// All `2^r` alternating labellings of this shape.
    pub fn labelings(&self) -> impl Iterator<Item = DiskTree> + '_ {
        let view = self.right_chains();
        let r = view.r();
        (0u64..1 << r).map(move |mask| {
            let mut labels = vec![Op::Direct; self.tree.left.len()];
            for (i, chain) in view.chains.iter().enumerate() {
                let mut op = if mask >> i & 1 == 1 { Op::Skew } else { Op::Direct };
                for &v in &chain.nodes {
                    labels[v] = op;
                    op = op.flip();
                }
            }
            DiskTree { tree: self.tree.clone(), labels }
        })
    }
}

impl fmt::Display for TreeShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.key())
    }
}

impl PartialOrd for TreeShape {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for TreeShape {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

/// A binary tree with `⊕`/`⊖` labels whose right chains alternate.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiskTree {
    tree: BinaryTree,
    /// `labels[v]` for in-order id `v`; slot 0 unused.
    labels: Vec<Op>,
}

impl DiskTree {
    /// Checks the alternation condition on every right edge.
    pub fn new(tree: BinaryTree, labels: Vec<Op>) -> Result<Self> {
        if labels.len() != tree.left.len() {
            return Err(Error::Domain(format!(
                "{} labels for {} nodes",
                labels.len().saturating_sub(1),
                tree.node_count()
            )));
        }
        for v in 1..tree.left.len() {
            let r = tree.right[v];
            if r != 0 && labels[r] == labels[v] {
                return Err(Error::Domain(format!("right chain repeats label at nodes {v} and {r}")));
            }
        }
        Ok(DiskTree { tree, labels })
    }

    /// The tree for `n = 1`, which has no nodes.
    pub fn empty() -> Self {
        DiskTree { tree: BinaryTree::empty(), labels: vec![Op::Direct] }
    }

    pub fn tree(&self) -> &BinaryTree {
        &self.tree
    }

    pub fn node_count(&self) -> usize {
        self.tree.node_count()
    }

    pub fn n(&self) -> usize {
        self.node_count() + 1
    }

    /// Label of the node with 1-based in-order id `node`.
    pub fn label(&self, node: usize) -> Op {
        self.labels[node]
    }

    /// Labels in in-order.
    pub fn labels(&self) -> &[Op] {
        &self.labels[1..]
    }

    pub fn n_minus(&self) -> usize {
        self.labels().iter().filter(|op| op.is_skew()).count()
    }

    pub fn shape(&self) -> TreeShape {
        TreeShape { tree: self.tree.clone() }
    }

    pub fn right_chains(&self) -> RightChainView {
        let mut view = self.tree.right_chains();
        for c in &mut view.chains {
            c.starts_with = Some(self.labels[c.terminal]);
        }
        view
    }

    /// Reverses every label on chain `index` (1-based, chain order).
    pub fn flip_chain(&self, index: usize) -> Result<DiskTree> {
        let view = self.tree.right_chains();
        let chain = view
            .get(index)
            .ok_or_else(|| Error::Domain(format!("chain {index} out of range 1..={}", view.r())))?;
        let mut labels = self.labels.clone();
        for &v in &chain.nodes {
            labels[v] = labels[v].flip();
        }
        Ok(DiskTree { tree: self.tree.clone(), labels })
    }

    pub fn from_word(w: &SchroderWord) -> DiskTree {
        fn count(e: &Expr) -> usize {
            match e {
                Expr::Leaf => 0,
                Expr::Node(_, l, r) => 1 + count(l) + count(r),
            }
        }
        let m = count(w.expr());
        let mut left = vec![0usize; m + 1];
        let mut right = vec![0usize; m + 1];
        let mut labels = vec![Op::Direct; m + 1];
        let mut next = 1;
        fn go(e: &Expr, next: &mut usize, left: &mut [usize], right: &mut [usize], labels: &mut [Op]) -> usize {
            match e {
                Expr::Leaf => 0,
                Expr::Node(op, l, r) => {
                    let id = *next;
                    *next += 1;
                    labels[id] = *op;
                    left[id] = go(l, next, left, right, labels);
                    right[id] = go(r, next, left, right, labels);
                    id
                }
            }
        }
        let root = go(w.expr(), &mut next, &mut left, &mut right, &mut labels);
        DiskTree::from_pointers(&left, &right, root, &labels)
    }

    /// Builds from a pointer structure in any numbering; renumbers in in-order.
    pub(crate) fn from_pointers(left: &[usize], right: &[usize], root: usize, labels: &[Op]) -> DiskTree {
        let (tree, order) = BinaryTree::from_pointers(left, right, root);
        let labels = order.iter().map(|&old| labels[old]).collect();
        DiskTree { tree, labels }
    }

    pub fn to_word(&self) -> SchroderWord {
        fn go(t: &DiskTree, v: usize) -> Expr {
            if v == 0 {
                Expr::Leaf
            } else {
                Expr::node(t.labels[v], go(t, t.tree.left[v]), go(t, t.tree.right[v]))
            }
        }
        SchroderWord::from_expr_unchecked(go(self, self.tree.root))
    }

    pub fn from_permutation(p: &Permutation) -> Result<DiskTree> {
        Ok(DiskTree::from_word(&schroder::sweep(p)?))
    }

    pub fn to_permutation(&self) -> Permutation {
        self.to_word().to_permutation()
    }

    /// Nested JSON form `{label, left, right}`; `null` for an empty subtree.
    pub fn to_json(&self) -> serde_json::Value {
        fn go(t: &DiskTree, v: usize) -> Option<Box<JsonNode>> {
            (v != 0).then(|| {
                Box::new(JsonNode {
                    label: t.labels[v].symbol().to_string(),
                    left: go(t, t.tree.left[v]),
                    right: go(t, t.tree.right[v]),
                })
            })
        }
        serde_json::to_value(go(self, self.tree.root)).expect("tree serialises")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<DiskTree> {
        let node: Option<Box<JsonNode>> =
            serde_json::from_value(value.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let mut b = Builder::default();
        let root = b.add_json(node.as_deref())?;
        b.finish(root)
    }
}

#[derive(Serialize, Deserialize)]
struct JsonNode {
    label: String,
    left: Option<Box<JsonNode>>,
    right: Option<Box<JsonNode>>,
}

#[derive(Default)]
struct Builder {
    left: Vec<usize>,
    right: Vec<usize>,
    labels: Vec<Op>,
}

impl Builder {
    fn alloc(&mut self, op: Op) -> usize {
        if self.labels.is_empty() {
            self.left.push(0);
            self.right.push(0);
            self.labels.push(Op::Direct);
        }
        self.left.push(0);
        self.right.push(0);
        self.labels.push(op);
        self.labels.len() - 1
    }

    fn add_json(&mut self, node: Option<&JsonNode>) -> Result<usize> {
        let Some(node) = node else { return Ok(0) };
        let mut chars = node.label.chars();
        let op = match (chars.next().and_then(Op::from_symbol), chars.next()) {
            (Some(op), None) => op,
            _ => return Err(Error::Parse(format!("bad label '{}'", node.label))),
        };
        let id = self.alloc(op);
        let l = self.add_json(node.left.as_deref())?;
        let r = self.add_json(node.right.as_deref())?;
        self.left[id] = l;
        self.right[id] = r;
        Ok(id)
    }

    fn finish(mut self, root: usize) -> Result<DiskTree> {
        if self.labels.is_empty() {
            self.alloc(Op::Direct);
            self.labels.truncate(1);
            self.left.truncate(1);
            self.right.truncate(1);
        }
        let t = DiskTree::from_pointers(&self.left, &self.right, root, &self.labels);
        DiskTree::new(t.tree, t.labels)
    }
}

impl fmt::Display for DiskTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(t: &DiskTree, v: usize, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            if v == 0 {
                return write!(f, "_");
            }
            write!(f, "({} ", t.labels[v])?;
            go(t, t.tree.left[v], f)?;
            write!(f, " ")?;
            go(t, t.tree.right[v], f)?;
            write!(f, ")")
        }
        go(self, self.tree.root, f)
    }
}

impl FromStr for DiskTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<DiskTree> {
        let tokens = tokenize(s);
        let mut pos = 0;
        let mut b = Builder::default();
        let root = parse_nested(&tokens, &mut pos, &mut b)?;
        if pos != tokens.len() {
            return Err(Error::Parse("trailing input after tree".into()));
        }
        b.finish(root)
    }
}

fn tokenize(s: &str) -> Vec<char> {
    s.chars().filter(|c| !c.is_whitespace()).collect()
}

fn parse_nested(tokens: &[char], pos: &mut usize, b: &mut Builder) -> Result<usize> {
    match tokens.get(*pos) {
        Some('_') => {
            *pos += 1;
            Ok(0)
        }
        Some('(') => {
            *pos += 1;
            let op = tokens
                .get(*pos)
                .and_then(|&c| Op::from_symbol(c))
                .ok_or_else(|| Error::Parse(format!("expected label at offset {pos}")))?;
            *pos += 1;
            let id = b.alloc(op);
            let l = parse_nested(tokens, pos, b)?;
            let r = parse_nested(tokens, pos, b)?;
            if tokens.get(*pos) != Some(&')') {
                return Err(Error::Parse(format!("expected ')' at offset {pos}")));
            }
            *pos += 1;
            b.left[id] = l;
            b.right[id] = r;
            Ok(id)
        }
        _ => Err(Error::Parse(format!("unexpected token at offset {pos}"))),
    }
}

/// All unlabelled shapes with `n - 1` nodes.
pub fn enumerate_shapes(n: usize) -> impl Iterator<Item = TreeShape> {
    shape_codes(n.saturating_sub(1))
        .into_iter()
        .map(|code| TreeShape { tree: BinaryTree::from_preorder_code(&code).expect("generated code parses") })
}

fn shape_codes(m: usize) -> Vec<String> {
    let mut table: Vec<Vec<String>> = vec![vec!["0".to_string()]];
    for size in 1..=m {
        let mut codes = Vec::new();
        for l in 0..size {
            for lc in &table[l] {
                for rc in &table[size - 1 - l] {
                    codes.push(format!("1{lc}{rc}"));
                }
            }
        }
        table.push(codes);
    }
    table.swap_remove(m)
}

/// All di-sk trees for `n`: every shape with each of its `2^r` labellings.
pub fn enumerate_trees(n: usize) -> impl Iterator<Item = DiskTree> {
    enumerate_shapes(n).flat_map(|shape| shape.labelings().collect::<Vec<_>>())
}
