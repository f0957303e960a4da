//! Schröder words: fully parenthesised `⊕`/`⊖` expressions over the atom `1`,
//! and the sweeping parser that produces them from separable permutations.
//!
//! Text form: `W := "1" | "(" W op W ")"`, `op := "+" | "-"`. Whitespace is
//! skipped when parsing and never emitted.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Node label shared by words and di-sk trees: `⊕` (direct sum) or `⊖` (skew sum).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Op {
    Direct,
    Skew,
}

impl Op {
    pub fn flip(self) -> Op {
        match self {
            Op::Direct => Op::Skew,
            Op::Skew => Op::Direct,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Op::Direct => '+',
            Op::Skew => '-',
        }
    }

    pub fn from_symbol(c: char) -> Option<Op> {
        match c {
            '+' => Some(Op::Direct),
            '-' => Some(Op::Skew),
            _ => None,
        }
    }

    pub fn is_skew(self) -> bool {
        self == Op::Skew
    }
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// An expression tree over `1`, not yet checked against the right-nesting rule.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Expr {
    Leaf,
    Node(Op, Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn node(op: Op, left: Expr, right: Expr) -> Expr {
        Expr::Node(op, Box::new(left), Box::new(right))
    }

    pub fn leaves(&self) -> usize {
        match self {
            Expr::Leaf => 1,
            Expr::Node(_, l, r) => l.leaves() + r.leaves(),
        }
    }

    pub fn root_op(&self) -> Option<Op> {
        match self {
            Expr::Leaf => None,
            Expr::Node(op, _, _) => Some(*op),
        }
    }

    /// First subexpression of the form `(B₁ ⊕ (B₂ ⊕ B₃))` or `(B₁ ⊖ (B₂ ⊖ B₃))`.
    fn first_violation(&self) -> Option<&Expr> {
        match self {
            Expr::Leaf => None,
            Expr::Node(op, l, r) => {
                if r.root_op() == Some(*op) {
                    return Some(self);
                }
                l.first_violation().or_else(|| r.first_violation())
            }
        }
    }

    fn ops_in_order(&self, out: &mut Vec<Op>) {
        if let Expr::Node(op, l, r) = self {
            l.ops_in_order(out);
            out.push(*op);
            r.ops_in_order(out);
        }
    }

    fn evaluate(&self) -> Permutation {
        match self {
            Expr::Leaf => Permutation::one(),
            Expr::Node(Op::Direct, l, r) => l.evaluate().direct_sum(&r.evaluate()),
            Expr::Node(Op::Skew, l, r) => l.evaluate().skew_sum(&r.evaluate()),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Leaf => write!(f, "1"),
            Expr::Node(op, l, r) => write!(f, "({l}{op}{r})"),
        }
    }
}

/// A valid Schröder word on `n` leaves.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SchroderWord {
    expr: Expr,
}

impl SchroderWord {
    /// Rejects expressions containing a right-nested repeat of one operator.
    pub fn new(expr: Expr) -> Result<Self> {
        if let Some(bad) = expr.first_violation() {
            return Err(Error::Domain(format!("right-nested repeated operator in {bad}")));
        }
        Ok(SchroderWord { expr })
    }

    pub(crate) fn from_expr_unchecked(expr: Expr) -> Self {
        debug_assert!(expr.first_violation().is_none());
        SchroderWord { expr }
    }

    /// The one-leaf word `1`.
    pub fn one() -> Self {
        SchroderWord { expr: Expr::Leaf }
    }

    pub fn expr(&self) -> &Expr {
        &self.expr
    }

    pub fn into_expr(self) -> Expr {
        self.expr
    }

    /// Number of leaves.
    pub fn n(&self) -> usize {
        self.expr.leaves()
    }

    /// Operators in textual (left-to-right) order.
    pub fn operator_sequence(&self) -> Vec<Op> {
        let mut ops = Vec::with_capacity(self.n() - 1);
        self.expr.ops_in_order(&mut ops);
        ops
    }

    /// 1-based positions of `⊖` in the operator sequence.
    pub fn skew_positions(&self) -> Vec<usize> {
        self.operator_sequence()
            .iter()
            .enumerate()
            .filter(|(_, op)| op.is_skew())
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// The separable permutation this word encodes.
    pub fn to_permutation(&self) -> Permutation {
        self.expr.evaluate()
    }
}

impl fmt::Display for SchroderWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.expr.fmt(f)
    }
}

impl FromStr for Expr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Expr> {
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pos = 0;
        let expr = parse_expr(&chars, &mut pos)?;
        if pos != chars.len() {
            return Err(Error::Parse(format!("trailing input at offset {pos}")));
        }
        Ok(expr)
    }
}

fn parse_expr(chars: &[char], pos: &mut usize) -> Result<Expr> {
    match chars.get(*pos) {
        Some('1') => {
            *pos += 1;
            Ok(Expr::Leaf)
        }
        Some('(') => {
            *pos += 1;
            let left = parse_expr(chars, pos)?;
            let op = chars
                .get(*pos)
                .and_then(|&c| Op::from_symbol(c))
                .ok_or_else(|| Error::Parse(format!("expected '+' or '-' at offset {pos}")))?;
            *pos += 1;
            let right = parse_expr(chars, pos)?;
            if chars.get(*pos) != Some(&')') {
                return Err(Error::Parse(format!("expected ')' at offset {pos}")));
            }
            *pos += 1;
            Ok(Expr::node(op, left, right))
        }
        Some(c) => Err(Error::Parse(format!("unexpected '{c}' at offset {pos}"))),
        None => Err(Error::Parse("unexpected end of input".into())),
    }
}

impl FromStr for SchroderWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<SchroderWord> {
        SchroderWord::new(s.parse()?)
    }
}

struct Block {
    min: u32,
    max: u32,
    expr: Expr,
}

/// The sweeping algorithm.
///
/// Blocks start as the single entries. Each step merges the leftmost pair of
/// adjacent blocks whose value ranges are adjacent intervals, with `⊕` if the
/// left block holds the smaller values and `⊖` otherwise. Fails when a pass
/// finds no mergeable pair while more than one block remains.
pub fn sweep(p: &Permutation) -> Result<SchroderWord> {
    let mut blocks: Vec<Block> =
        p.word().iter().map(|&v| Block { min: v, max: v, expr: Expr::Leaf }).collect();
    while blocks.len() > 1 {
        let found = blocks.windows(2).position(|w| w[0].max + 1 == w[1].min || w[1].max + 1 == w[0].min);
        let Some(j) = found else {
            let witness = p
                .separability_witness()
                .expect("a stalled sweep implies a 2413 or 3142 occurrence");
            return Err(Error::NotSeparable(witness));
        };
        let right = blocks.remove(j + 1);
        let left = std::mem::replace(&mut blocks[j].expr, Expr::Leaf);
        let op = if left_is_lower(&blocks[j], &right) { Op::Direct } else { Op::Skew };
        let merged = &mut blocks[j];
        merged.expr = Expr::node(op, left, right.expr);
        merged.min = merged.min.min(right.min);
        merged.max = merged.max.max(right.max);
    }
    let block = blocks.pop().expect("permutations are non-empty");
    Ok(SchroderWord::from_expr_unchecked(block.expr))
}

fn left_is_lower(left: &Block, right: &Block) -> bool {
    left.max < right.min
}

/// Inverse of [`sweep`].
pub fn word_to_perm(w: &SchroderWord) -> Permutation {
    w.to_permutation()
}

/// Every Schröder word on `n` leaves, each exactly once.
///
/// Generated straight from the grammar: a root operator, any word on the left,
/// and on the right any word whose root is not the same operator.
pub fn enumerate_words(n: usize) -> impl Iterator<Item = SchroderWord> {
    exprs(n).map(SchroderWord::from_expr_unchecked)
}

fn exprs(n: usize) -> Box<dyn Iterator<Item = Expr>> {
    match n {
        0 => Box::new(std::iter::empty()),
        1 => Box::new(std::iter::once(Expr::Leaf)),
        _ => Box::new((1..n).flat_map(move |l| {
            exprs(l).flat_map(move |left| {
                [Op::Direct, Op::Skew].into_iter().flat_map(move |op| {
                    let left = left.clone();
                    exprs(n - l)
                        .filter(move |r| r.root_op() != Some(op))
                        .map(move |right| Expr::node(op, left.clone(), right))
                })
            })
        })),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const RUNNING: &str = "((1-1)-((1-(1+(1-1)))+(1-(1+1))))";

    fn p(s: &str) -> Permutation {
        Permutation::from_digits(s).unwrap()
    }

    #[test]
    fn sweeps_running_example() {
        let w = sweep(&p("984132756")).unwrap();
        assert_eq!(w.to_string(), RUNNING);
        assert_eq!(w.n(), 9);
    }

    #[test]
    fn word_back_to_permutation() {
        let w: SchroderWord = RUNNING.parse().unwrap();
        assert_eq!(word_to_perm(&w), p("984132756"));
        assert_eq!(word_to_perm(&"(1+1)".parse().unwrap()), p("12"));
        assert_eq!(word_to_perm(&"(1-1)".parse().unwrap()), p("21"));
        assert_eq!(word_to_perm(&SchroderWord::one()), p("1"));
    }

    #[test]
    fn rejects_non_separable() {
        for (s, pat) in [("2413", [2, 4, 1, 3]), ("3142", [3, 1, 4, 2])] {
            match sweep(&p(s)) {
                Err(Error::NotSeparable(w)) => {
                    assert_eq!(w.pattern, pat.to_vec());
                    assert_eq!(w.positions, vec![1, 2, 3, 4]);
                }
                other => panic!("expected NotSeparable, got {other:?}"),
            }
        }
        assert!(matches!(sweep(&p("25314")), Err(Error::NotSeparable(_))));
        assert_eq!(sweep(&p("1")).unwrap(), SchroderWord::one());
    }

    #[test]
    fn operator_sequence_tracks_descents() {
        let w: SchroderWord = RUNNING.parse().unwrap();
        use Op::*;
        assert_eq!(w.operator_sequence(), vec![Skew, Skew, Skew, Direct, Skew, Direct, Skew, Direct]);
        assert_eq!(w.skew_positions(), vec![1, 2, 3, 5, 7]);
        assert_eq!("(1+1)".parse::<SchroderWord>().unwrap().operator_sequence(), vec![Direct]);
    }

    #[test]
    fn validity_rejects_right_nested_repeats() {
        assert!("(1+(1+1))".parse::<SchroderWord>().is_err());
        assert!("(1-(1-1))".parse::<SchroderWord>().is_err());
        assert!("(1+(1-1))".parse::<SchroderWord>().is_ok());
        assert!("(1-(1+1))".parse::<SchroderWord>().is_ok());
        assert!("((1+1)+1)".parse::<SchroderWord>().is_ok());
        assert!("((1-1)-1)".parse::<SchroderWord>().is_ok());
        assert!("((1+(1+1))-1)".parse::<SchroderWord>().is_err());
    }

    #[test]
    fn parser_edges() {
        assert_eq!(" ( 1 + 1 ) ".parse::<SchroderWord>().unwrap().to_string(), "(1+1)");
        assert!("(1+1".parse::<Expr>().is_err());
        assert!("(1*1)".parse::<Expr>().is_err());
        assert!("11".parse::<Expr>().is_err());
        assert!("".parse::<Expr>().is_err());
        assert!("2".parse::<Expr>().is_err());
    }

    #[test]
    fn enumerates_small_cases() {
        let two: Vec<String> = enumerate_words(2).map(|w| w.to_string()).collect();
        assert_eq!(two, vec!["(1+1)", "(1-1)"]);
        let counts: Vec<usize> = (1..=7).map(|n| enumerate_words(n).count()).collect();
        assert_eq!(counts, vec![1, 2, 6, 22, 90, 394, 1806]);
        let mut des_hist = [0usize; 4];
        for w in enumerate_words(4) {
            des_hist[w.skew_positions().len()] += 1;
        }
        assert_eq!(des_hist, [1, 10, 10, 1]);
    }
}
