//! The two tree families counted by the γ-coefficients of `S_n(t)` and the
//! cut-and-paste bijection `ψ: DT² → DT¹` with inverse `φ`.
//!
//! `DT¹_{n,k}`: exactly `n-1-2k` odd chains, all starting with `⊕`.
//! `DT²_{n,k}`: `k` nodes labelled `⊖`, first in-order node `⊕`, and no two
//! in-order consecutive `⊖` (the trees of permutations with `des = k` and no
//! double descent).
//!
//! A group (a lock-connected run of chains, bottom to top) sees a fixed label
//! just before its bottom terminal and just after its top chain. At level 0
//! and below an `⊕` anchor the group behaves like the whole tree: it must
//! start with `⊕`. Below a `⊖` anchor the group must instead not end with
//! `⊖`. The searches below only ever look inside one group.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::disk_tree::{enumerate_shapes, DiskTree, RightChain, RightChainView};
use crate::error::{Error, Result};
use crate::schroder::Op;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    /// An odd chain whose first label is `⊖` (forbidden in DT¹).
    OddChainStartsMinus,
    /// The first in-order node is `⊖` (forbidden in DT²).
    LeadingMinus,
    /// Two in-order neighbours both labelled `⊖` (forbidden in DT²).
    ConsecutiveMinus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    /// In-order ids of the nodes involved.
    pub nodes: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GammaFamilyMembership {
    pub n: usize,
    pub k: usize,
    pub in_dt1: bool,
    pub in_dt2: bool,
    pub violations: Vec<Violation>,
}

/// Membership of `t` in `DT¹_{n,k}` and `DT²_{n,k}`, with every violation found.
pub fn classify(t: &DiskTree, k: usize) -> GammaFamilyMembership {
    let n = t.n();
    let view = t.right_chains();
    let mut violations = Vec::new();
    for c in &view.chains {
        if c.is_odd() && t.label(c.terminal).is_skew() {
            violations.push(Violation { kind: ViolationKind::OddChainStartsMinus, nodes: c.nodes.clone() });
        }
    }
    let dt1_violations = violations.len();
    let m = t.node_count();
    if m > 0 && t.label(1).is_skew() {
        violations.push(Violation { kind: ViolationKind::LeadingMinus, nodes: vec![1] });
    }
    for v in 1..m {
        if t.label(v).is_skew() && t.label(v + 1).is_skew() {
            violations.push(Violation { kind: ViolationKind::ConsecutiveMinus, nodes: vec![v, v + 1] });
        }
    }
    let odd_target = (n - 1).checked_sub(2 * k);
    let in_dt1 = dt1_violations == 0 && odd_target == Some(view.r_odd());
    let in_dt2 = violations.len() == dt1_violations && t.n_minus() == k;
    GammaFamilyMembership { n, k, in_dt1, in_dt2, violations }
}

pub fn in_dt1(t: &DiskTree, k: usize) -> bool {
    classify(t, k).in_dt1
}

pub fn in_dt2(t: &DiskTree, k: usize) -> bool {
    classify(t, k).in_dt2
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum AdjointCase {
    I,
    II,
    III,
    IV,
    V,
    VI,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum LCase {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "2")]
    Two,
    #[serde(rename = "3")]
    Three,
    #[serde(rename = "4")]
    Four,
    #[serde(rename = "5")]
    Five,
    #[serde(rename = "6")]
    Six,
}

impl fmt::Display for AdjointCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl fmt::Display for LCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = match self {
            LCase::One => 1,
            LCase::Two => 2,
            LCase::Three => 3,
            LCase::Four => 4,
            LCase::Five => 5,
            LCase::Six => 6,
        };
        write!(f, "{d}")
    }
}

/// An odd `⊖`-chain together with its adjoint.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AdjointSite {
    /// 1-based chain index of `C`.
    pub chain: usize,
    /// 1-based chain index of the adjoint `C*`.
    pub adjoint: usize,
    /// Terminal of the nearest `⊖`-starting chain above `C`, or the anchor;
    /// only set for cases V and VI.
    pub pivot: Option<usize>,
    pub case: AdjointCase,
}

/// The even chain `L` resolving one DT² violation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LSite {
    pub violation: Violation,
    /// 1-based chain index of `L`.
    pub chain: usize,
    /// The chain whose end receives the last node of `L` (cases 2, 4, 6).
    pub receiver: Option<usize>,
    /// Terminal of the chain above `L`, or the anchor (cases 5, 6).
    pub pivot: Option<usize>,
    pub case: LCase,
}

/// One elementary cut-and-paste step on stable node ids.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "op", rename_all = "kebab-case")]
pub enum Graft {
    /// Cut `node` (with its left subtree) and make it the right child of `onto`.
    AppendRight { node: usize, onto: usize },
    /// Cut `node` (with its left subtree) and make it the left child of `bottom`.
    LockBelow { node: usize, bottom: usize },
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum GroupKind {
    /// Level 0 or hanging from a `⊕` node: must start with `⊕`.
    StartsPlus,
    /// Hanging from a `⊖` node: must not end with `⊖`.
    BeforeMinus,
}

struct Group {
    /// Chain indices, bottom to top.
    chains: Vec<usize>,
    level: usize,
    kind: GroupKind,
    anchor: usize,
}

fn groups(t: &DiskTree, view: &RightChainView) -> Vec<Group> {
    let count = view.chains.iter().map(|c| c.group + 1).max().unwrap_or(0);
    let mut out: Vec<Group> = (0..count)
        .map(|_| Group { chains: Vec::new(), level: 0, kind: GroupKind::StartsPlus, anchor: 0 })
        .collect();
    for c in &view.chains {
        out[c.group].chains.push(c.index);
    }
    for g in &mut out {
        let top = view.get(*g.chains.last().unwrap()).unwrap();
        g.level = top.level;
        g.anchor = top.anchor;
        if top.level > 0 && t.label(top.anchor).is_skew() {
            g.kind = GroupKind::BeforeMinus;
        }
    }
    out
}

fn chain(view: &RightChainView, index: usize) -> &RightChain {
    view.get(index).expect("chain index from the same view")
}

fn starts(t: &DiskTree, c: &RightChain) -> Op {
    t.label(c.terminal)
}

fn ends(t: &DiskTree, c: &RightChain) -> Op {
    t.label(c.last())
}

/// Finds the adjoint of chain `index`, an odd chain starting with `⊖`.
pub fn find_adjoint(t: &DiskTree, index: usize) -> Result<AdjointSite> {
    let view = t.right_chains();
    let gs = groups(t, &view);
    find_adjoint_in(t, &view, &gs, index)
}

fn find_adjoint_in(t: &DiskTree, view: &RightChainView, gs: &[Group], index: usize) -> Result<AdjointSite> {
    let c = view
        .get(index)
        .ok_or_else(|| Error::Domain(format!("chain {index} out of range 1..={}", view.r())))?;
    if !c.is_odd() || !starts(t, c).is_skew() {
        return Err(Error::Domain(format!("chain {index} is not an odd chain starting with ⊖")));
    }
    let g = &gs[c.group];
    let pos = g.chains.iter().position(|&i| i == index).unwrap();
    match g.kind {
        GroupKind::StartsPlus => {
            for &below in g.chains[..pos].iter().rev() {
                let cand = chain(view, below);
                if cand.is_odd() {
                    if starts(t, cand).is_skew() {
                        break;
                    }
                    let case = match (g.level == 0, cand.len() == 1) {
                        (true, true) => AdjointCase::I,
                        (true, false) => AdjointCase::II,
                        (false, true) => AdjointCase::III,
                        (false, false) => AdjointCase::IV,
                    };
                    return Ok(AdjointSite { chain: index, adjoint: below, pivot: None, case });
                }
            }
            Err(Error::Domain(format!("no odd ⊕-chain below chain {index} in its group")))
        }
        GroupKind::BeforeMinus => {
            let above = &g.chains[pos + 1..];
            let (pivot, adjoint) = match above.iter().position(|&i| starts(t, chain(view, i)).is_skew()) {
                Some(0) => {
                    return Err(Error::Domain(format!("chain {index} ends next to a ⊖ terminal")));
                }
                Some(p) => (chain(view, above[p]).terminal, above[p - 1]),
                None if above.is_empty() => {
                    return Err(Error::Domain(format!("chain {index} ends next to its ⊖ anchor")));
                }
                None => (g.anchor, *above.last().unwrap()),
            };
            let star = chain(view, adjoint);
            if !star.is_odd() || starts(t, star).is_skew() {
                return Err(Error::Domain(format!("chain {adjoint} below the pivot is not an odd ⊕-chain")));
            }
            let case = if c.len() == 1 { AdjointCase::V } else { AdjointCase::VI };
            Ok(AdjointSite { chain: index, adjoint, pivot: Some(pivot), case })
        }
    }
}

/// All DT² violations of `t`, each resolved to its `L` chain, in in-order of the violation.
pub fn l_sites(t: &DiskTree) -> Vec<LSite> {
    let view = t.right_chains();
    let gs = groups(t, &view);
    let mut sites = Vec::new();
    for g in &gs {
        let bottom = chain(&view, g.chains[0]);
        match g.kind {
            GroupKind::StartsPlus => {
                let climb = |from: usize| {
                    let mut p = from;
                    while p + 1 < g.chains.len() && starts(t, chain(&view, g.chains[p + 1])).is_skew() {
                        p += 1;
                    }
                    g.chains[p]
                };
                if starts(t, bottom).is_skew() {
                    let violation = if g.level == 0 {
                        Violation { kind: ViolationKind::LeadingMinus, nodes: vec![bottom.terminal] }
                    } else {
                        Violation {
                            kind: ViolationKind::ConsecutiveMinus,
                            nodes: vec![bottom.terminal - 1, bottom.terminal],
                        }
                    };
                    let case = if g.level == 0 { LCase::One } else { LCase::Three };
                    sites.push(LSite { violation, chain: climb(0), receiver: None, pivot: None, case });
                }
                for p in 0..g.chains.len() - 1 {
                    let x = chain(&view, g.chains[p]);
                    let y = chain(&view, g.chains[p + 1]);
                    if ends(t, x).is_skew() && starts(t, y).is_skew() {
                        let violation = Violation { kind: ViolationKind::ConsecutiveMinus, nodes: vec![x.last(), y.terminal] };
                        let case = if g.level == 0 { LCase::Two } else { LCase::Four };
                        sites.push(LSite { violation, chain: climb(p + 1), receiver: Some(x.index), pivot: None, case });
                    }
                }
            }
            GroupKind::BeforeMinus => {
                for p in 0..g.chains.len() {
                    let x = chain(&view, g.chains[p]);
                    if !ends(t, x).is_skew() {
                        continue;
                    }
                    let pivot = match g.chains.get(p + 1) {
                        Some(&i) => {
                            let y = chain(&view, i);
                            if !starts(t, y).is_skew() {
                                continue;
                            }
                            y.terminal
                        }
                        None => g.anchor,
                    };
                    let receiver = g.chains[..p].iter().rev().copied().find(|&i| starts(t, chain(&view, i)).is_skew());
                    let violation = Violation { kind: ViolationKind::ConsecutiveMinus, nodes: vec![x.last(), pivot] };
                    let case = if receiver.is_some() { LCase::Six } else { LCase::Five };
                    sites.push(LSite { violation, chain: x.index, receiver, pivot: Some(pivot), case });
                }
            }
        }
    }
    sites.sort_by(|a, b| a.violation.nodes.last().cmp(&b.violation.nodes.last()));
    sites
}

/// Resolves one DT² violation to its `L` chain.
pub fn find_l(t: &DiskTree, violation: &Violation) -> Result<LSite> {
    if violation.kind == ViolationKind::OddChainStartsMinus {
        return Err(Error::Domain("odd ⊖-chains are resolved by find_adjoint".into()));
    }
    l_sites(t)
        .into_iter()
        .find(|s| s.violation == *violation)
        .ok_or_else(|| Error::Domain(format!("{:?} at {:?} is not a DT² violation of this tree", violation.kind, violation.nodes)))
}

/// All odd `⊖`-chains of `t` with their adjoints, in chain order.
pub fn adjoint_sites(t: &DiskTree) -> Result<Vec<AdjointSite>> {
    let view = t.right_chains();
    let gs = groups(t, &view);
    view.chains
        .iter()
        .filter(|c| c.is_odd() && starts(t, c).is_skew())
        .map(|c| find_adjoint_in(t, &view, &gs, c.index))
        .collect()
}

fn adjoint_graft(view: &RightChainView, site: &AdjointSite) -> Graft {
    let c = chain(view, site.chain);
    let star = chain(view, site.adjoint);
    match site.case {
        AdjointCase::V | AdjointCase::VI => Graft::AppendRight { node: c.last(), onto: star.last() },
        _ => Graft::AppendRight { node: star.last(), onto: c.last() },
    }
}

fn l_graft(t: &DiskTree, view: &RightChainView, site: &LSite) -> Graft {
    let l = chain(view, site.chain);
    match site.receiver {
        Some(r) => Graft::AppendRight { node: l.last(), onto: chain(view, r).last() },
        None => {
            let mut bottom = l.terminal;
            while let Some(next) = t.tree().left(bottom) {
                bottom = next;
            }
            Graft::LockBelow { node: l.last(), bottom }
        }
    }
}

/// Mutable pointer form used while grafting; ids stay those of the source tree.
struct Arena {
    left: Vec<usize>,
    right: Vec<usize>,
    parent: Vec<usize>,
    labels: Vec<Op>,
    root: usize,
}

impl Arena {
    fn new(t: &DiskTree) -> Arena {
        let m = t.node_count();
        let tree = t.tree();
        let mut a = Arena {
            left: vec![0; m + 1],
            right: vec![0; m + 1],
            parent: vec![0; m + 1],
            labels: vec![Op::Direct; m + 1],
            root: tree.root().unwrap_or(0),
        };
        for v in 1..=m {
            a.left[v] = tree.left(v).unwrap_or(0);
            a.right[v] = tree.right(v).unwrap_or(0);
            a.labels[v] = t.label(v);
        }
        for v in 1..=m {
            for c in [a.left[v], a.right[v]] {
                if c != 0 {
                    a.parent[c] = v;
                }
            }
        }
        a
    }

    fn detach(&mut self, node: usize) {
        let p = self.parent[node];
        assert!(p != 0, "cannot cut the root");
        if self.left[p] == node {
            self.left[p] = 0;
        } else {
            self.right[p] = 0;
        }
        self.parent[node] = 0;
    }

    fn apply(&mut self, g: Graft) {
        match g {
            Graft::AppendRight { node, onto } => {
                self.detach(node);
                assert_eq!(self.right[onto], 0, "graft target already has a right child");
                self.right[onto] = node;
                self.parent[node] = onto;
            }
            Graft::LockBelow { node, bottom } => {
                self.detach(node);
                assert_eq!(self.left[bottom], 0, "graft target already has a left child");
                self.left[bottom] = node;
                self.parent[node] = bottom;
            }
        }
    }

    fn finish(&self) -> DiskTree {
        DiskTree::from_pointers(&self.left, &self.right, self.root, &self.labels)
    }
}

/// Applies grafts, in the given order, to a copy of `t`.
pub fn apply_grafts(t: &DiskTree, grafts: &[Graft]) -> DiskTree {
    let mut arena = Arena::new(t);
    for &g in grafts {
        arena.apply(g);
    }
    arena.finish()
}

/// The elementary steps `ψ` performs on `t`, one per odd `⊖`-chain.
pub fn psi_plan(t: &DiskTree) -> Result<Vec<(AdjointSite, Graft)>> {
    let view = t.right_chains();
    Ok(adjoint_sites(t)?
        .into_iter()
        .map(|s| {
            let g = adjoint_graft(&view, &s);
            (s, g)
        })
        .collect())
}

/// The elementary steps `φ` performs on `t`, one per DT² violation.
pub fn phi_plan(t: &DiskTree) -> Vec<(LSite, Graft)> {
    let view = t.right_chains();
    l_sites(t)
        .into_iter()
        .map(|s| {
            let g = l_graft(t, &view, &s);
            (s, g)
        })
        .collect()
}

fn require(t: &DiskTree, family: &'static str, dt1: bool) -> Result<usize> {
    let k = t.n_minus();
    let m = classify(t, k);
    let ok = if dt1 { m.in_dt1 } else { m.in_dt2 };
    if ok {
        Ok(k)
    } else {
        let detail = match m.violations.first() {
            Some(v) if dt1 || v.kind != ViolationKind::OddChainStartsMinus => {
                format!("{:?} at nodes {:?}", v.kind, v.nodes)
            }
            _ => format!("n = {}, k = {k}", t.n()),
        };
        Err(Error::NotInFamily { family, detail })
    }
}

/// `ψ: DT²_{n,k} → DT¹_{n,k}` with `k` the number of `⊖` labels.
pub fn psi(t: &DiskTree) -> Result<DiskTree> {
    require(t, "DT2", false)?;
    let grafts: Vec<Graft> = psi_plan(t)?.into_iter().map(|(_, g)| g).collect();
    Ok(apply_grafts(t, &grafts))
}

/// `φ: DT¹_{n,k} → DT²_{n,k}` with `k` the number of `⊖` labels.
pub fn phi(t: &DiskTree) -> Result<DiskTree> {
    require(t, "DT1", true)?;
    let grafts: Vec<Graft> = phi_plan(t).into_iter().map(|(_, g)| g).collect();
    Ok(apply_grafts(t, &grafts))
}

/// `ψ` computed one step at a time: repeatedly resolve the first odd
/// `⊖`-chain in chain order and recompute the tree.
pub fn psi_sequential(t: &DiskTree) -> Result<DiskTree> {
    require(t, "DT2", false)?;
    let mut cur = t.clone();
    loop {
        let view = cur.right_chains();
        let Some(c) = view.chains.iter().find(|c| c.is_odd() && starts(&cur, c).is_skew()) else {
            return Ok(cur);
        };
        let site = find_adjoint(&cur, c.index)?;
        cur = apply_grafts(&cur, &[adjoint_graft(&view, &site)]);
    }
}

/// `φ` computed one step at a time, always resolving the first violation in in-order.
pub fn phi_sequential(t: &DiskTree) -> Result<DiskTree> {
    require(t, "DT1", true)?;
    let mut cur = t.clone();
    loop {
        let plan = phi_plan(&cur);
        let Some((_, g)) = plan.first() else {
            return Ok(cur);
        };
        cur = apply_grafts(&cur, &[*g]);
    }
}

/// Applies the elementary steps of `ψ` (for a DT² tree) or `φ` (for a DT¹
/// tree) in up to `trials` distinct random orders and reports whether every
/// order gives the same tree. Seeded, so repeated calls agree.
pub fn order_independence_certificate(t: &DiskTree, trials: usize) -> Result<bool> {
    let k = t.n_minus();
    let m = classify(t, k);
    let grafts: Vec<Graft> = if m.in_dt2 {
        psi_plan(t)?.into_iter().map(|(_, g)| g).collect()
    } else if m.in_dt1 {
        phi_plan(t).into_iter().map(|(_, g)| g).collect()
    } else {
        return Err(Error::NotInFamily { family: "DT1 or DT2", detail: format!("n = {}, k = {k}", t.n()) });
    };
    let reference = apply_grafts(t, &grafts);
    let distinct = (1..=grafts.len()).try_fold(1usize, |acc, i| acc.checked_mul(i)).unwrap_or(usize::MAX);
    let wanted = trials.min(distinct);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ grafts.len() as u64);
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    seen.insert((0..grafts.len()).collect());
    let mut attempts = 0;
    while seen.len() < wanted && attempts < 50 * trials.max(1) {
        attempts += 1;
        let mut order: Vec<usize> = (0..grafts.len()).collect();
        order.shuffle(&mut rng);
        if !seen.insert(order.clone()) {
            continue;
        }
        let shuffled: Vec<Graft> = order.iter().map(|&i| grafts[i]).collect();
        if apply_grafts(t, &shuffled) != reference {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exhaustive check of `ψ` and `φ` on all trees with given `n` and `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BijectionCertificate {
    pub n: usize,
    pub k: usize,
    pub dt1: usize,
    pub dt2: usize,
    pub bijection_ok: bool,
    /// Occurrences of each adjoint case over all `ψ` steps.
    pub case_histogram: BTreeMap<String, usize>,
}

/// Enumerates `DT¹_{n,k}` and `DT²_{n,k}`, maps every DT² tree through `ψ`,
/// and checks the image is exactly DT¹ with `φ` inverting each step.
pub fn certify_bijection(n: usize, k: usize) -> BijectionCertificate {
    let shapes: Vec<_> = enumerate_shapes(n).collect();
    let (dt1, dt2): (Vec<DiskTree>, Vec<DiskTree>) = shapes
        .par_iter()
        .map(|s| {
            let mut a = Vec::new();
            let mut b = Vec::new();
            for t in s.labelings() {
                let m = classify(&t, k);
                if m.in_dt1 {
                    a.push(t.clone());
                }
                if m.in_dt2 {
                    b.push(t);
                }
            }
            (a, b)
        })
        .reduce(
            || (Vec::new(), Vec::new()),
            |mut x, y| {
                x.0.extend(y.0);
                x.1.extend(y.1);
                x
            },
        );
    let results: Vec<Option<(DiskTree, Vec<AdjointCase>)>> = dt2
        .par_iter()
        .map(|t| {
            let plan = psi_plan(t).ok()?;
            let image = psi(t).ok()?;
            if !classify(&image, k).in_dt1 || phi(&image).ok()? != *t {
                return None;
            }
            Some((image, plan.into_iter().map(|(s, _)| s.case).collect()))
        })
        .collect();
    let mut ok = dt1.len() == dt2.len();
    let mut images: HashSet<DiskTree> = HashSet::new();
    let mut hist: HashMap<AdjointCase, usize> = HashMap::new();
    for r in results {
        match r {
            Some((image, cases)) => {
                ok &= images.insert(image);
                for c in cases {
                    *hist.entry(c).or_default() += 1;
                }
            }
            None => ok = false,
        }
    }
    let case_histogram = [AdjointCase::I, AdjointCase::II, AdjointCase::III, AdjointCase::IV, AdjointCase::V, AdjointCase::VI]
        .into_iter()
        .map(|c| (c.to_string(), hist.get(&c).copied().unwrap_or(0)))
        .collect();
    BijectionCertificate { n, k, dt1: dt1.len(), dt2: dt2.len(), bijection_ok: ok, case_histogram }
}
