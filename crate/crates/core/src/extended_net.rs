//! Extended nets: links carry multiplicities and may pass through anchors,
//! auxiliary nodes labelled by an atom that need at least two incoming and
//! two outgoing links.
//!
//! Composition replaces the cut leaves by anchors and then normalises until
//! every remaining anchor has a right to exist.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;

use crate::error::NetError;
use crate::formula::{Label, LeafRef, Sequent};
use crate::simple_net::{
    join_violations, juxt_f, juxt_g, juxtaposed_sequent, pruning_cap, CutPlan, Junction, Link, Place,
    PruneIndex, Side, SimpleNet, exists_empty_pruning,
};

pub const DEFAULT_ANCHOR_BOUND: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Node {
    Leaf(LeafRef),
    Anchor(u32),
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Leaf(l) => write!(f, "{l}"),
            Node::Anchor(k) => write!(f, "k{k}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtViolation {
    NoSuchNode(Node),
    TopCount { leaf: LeafRef, count: u64 },
    AnchorInDegree { anchor: u32, degree: u64 },
    AnchorOutDegree { anchor: u32, degree: u64 },
    AnchorSelfLink(u32),
    IllTyped { src: Node, dst: Node },
}

impl fmt::Display for ExtViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtViolation::NoSuchNode(n) => write!(f, "no node {n}"),
            ExtViolation::TopCount { leaf, count } => {
                write!(f, "t leaf {leaf} has self-link count {count}, expected 1")
            }
            ExtViolation::AnchorInDegree { anchor, degree } => {
                write!(f, "anchor k{anchor} in-degree < 2 ({degree})")
            }
            ExtViolation::AnchorOutDegree { anchor, degree } => {
                write!(f, "anchor k{anchor} out-degree < 2 ({degree})")
            }
            ExtViolation::AnchorSelfLink(k) => write!(f, "anchor k{k} has a self-link"),
            ExtViolation::IllTyped { src, dst } => write!(f, "ill-typed link {src} -> {dst}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtendedNet {
    sequent: Sequent,
    anchors: BTreeMap<u32, String>,
    links: BTreeMap<(Node, Node), u64>,
}

impl ExtendedNet {
    pub fn new(
        sequent: Sequent,
        anchors: BTreeMap<u32, String>,
        links: BTreeMap<(Node, Node), u64>,
    ) -> Result<ExtendedNet, NetError> {
        let links = links.into_iter().filter(|(_, c)| *c > 0).collect();
        let n = ExtendedNet { sequent, anchors, links };
        n.validate().map_err(|v| NetError::Invalid(join_violations(&v)))?;
        Ok(n)
    }

    pub fn from_simple(n: &SimpleNet) -> ExtendedNet {
        let links = n.links().iter().map(|(a, b)| ((Node::Leaf(*a), Node::Leaf(*b)), 1)).collect();
        ExtendedNet { sequent: n.sequent().clone(), anchors: BTreeMap::new(), links }
    }

    /// Forgets multiplicities; only defined without anchors.
    pub fn to_simple(&self) -> Option<SimpleNet> {
        if !self.anchors.is_empty() {
            return None;
        }
        let links = self
            .links
            .keys()
            .map(|(a, b)| match (a, b) {
                (Node::Leaf(a), Node::Leaf(b)) => (*a, *b),
                _ => unreachable!("anchor-free net"),
            })
            .collect();
        Some(SimpleNet::from_parts(self.sequent.clone(), links))
    }

    pub fn sequent(&self) -> &Sequent {
        &self.sequent
    }

    pub fn anchors(&self) -> &BTreeMap<u32, String> {
        &self.anchors
    }

    pub fn links(&self) -> &BTreeMap<(Node, Node), u64> {
        &self.links
    }

    pub fn count(&self, a: Node, b: Node) -> u64 {
        self.links.get(&(a, b)).copied().unwrap_or(0)
    }

    fn node_atom(&self, n: &Node) -> Option<Label> {
        match n {
            Node::Leaf(l) => self.sequent.label(l),
            Node::Anchor(k) => self.anchors.get(k).map(|a| Label::Pos(a.clone())),
        }
    }

    pub fn validate(&self) -> Result<(), Vec<ExtViolation>> {
        let mut out = Vec::new();
        let mut indeg: BTreeMap<u32, u64> = self.anchors.keys().map(|k| (*k, 0)).collect();
        let mut outdeg = indeg.clone();
        for (&(a, b), &c) in &self.links {
            let (Some(la), Some(lb)) = (self.node_atom(&a), self.node_atom(&b)) else {
                for n in [a, b] {
                    if self.node_atom(&n).is_none() {
                        out.push(ExtViolation::NoSuchNode(n));
                    }
                }
                continue;
            };
            if let Node::Anchor(k) = b {
                *indeg.get_mut(&k).expect("known anchor") += c;
            }
            if let Node::Anchor(k) = a {
                *outdeg.get_mut(&k).expect("known anchor") += c;
            }
            let ok = match (a, b) {
                (Node::Anchor(x), Node::Anchor(y)) if x == y => {
                    out.push(ExtViolation::AnchorSelfLink(x));
                    continue;
                }
                (Node::Leaf(x), Node::Leaf(y)) if x == y => la == Label::Top,
                (Node::Leaf(_), _) => matches!((&la, &lb), (Label::Neg(p), Label::Pos(q)) if p == q),
                (Node::Anchor(_), _) => matches!((&la, &lb), (Label::Pos(p), Label::Pos(q)) if p == q),
            };
            if !ok {
                out.push(ExtViolation::IllTyped { src: a, dst: b });
            }
        }
        for (leaf, label) in self.sequent.leaves() {
            if label == Label::Top {
                let count = self.count(Node::Leaf(leaf), Node::Leaf(leaf));
                if count != 1 {
                    out.push(ExtViolation::TopCount { leaf, count });
                }
            }
        }
        for (k, d) in indeg {
            if d < 2 {
                out.push(ExtViolation::AnchorInDegree { anchor: k, degree: d });
            }
        }
        for (k, d) in outdeg {
            if d < 2 {
                out.push(ExtViolation::AnchorOutDegree { anchor: k, degree: d });
            }
        }
        if out.is_empty() {
            Ok(())
        } else {
            Err(out)
        }
    }

    /// Leaf pairs joined by a directed path whose inner nodes are anchors.
    pub fn leaf_paths(&self) -> BTreeSet<Link> {
        let mut succ: BTreeMap<Node, Vec<Node>> = BTreeMap::new();
        for &(a, b) in self.links.keys() {
            succ.entry(a).or_default().push(b);
        }
        let mut out = BTreeSet::new();
        for &start in succ.keys() {
            let Node::Leaf(src) = start else { continue };
            let mut seen = HashSet::new();
            let mut stack = vec![start];
            while let Some(n) = stack.pop() {
                for &m in succ.get(&n).map(Vec::as_slice).unwrap_or(&[]) {
                    if !seen.insert(m) {
                        continue;
                    }
                    match m {
                        Node::Leaf(dst) => {
                            out.insert((src, dst));
                        }
                        Node::Anchor(_) => stack.push(m),
                    }
                }
            }
        }
        out
    }

    /// Every conjunctive pruning keeps a complete leaf-to-leaf path or a
    /// t self-link. Anchors survive every pruning.
    pub fn is_correct(&self) -> Result<bool, NetError> {
        let ands = self.sequent.and_nodes().len();
        let cap = pruning_cap();
        if ands > cap {
            return Err(NetError::PruningBudget { ands, cap });
        }
        let index = PruneIndex::new(&self.sequent)?;
        let clauses: Vec<(u64, u64)> =
            self.leaf_paths().iter().filter_map(|(a, b)| index.link_clause(a, b)).collect();
        Ok(!exists_empty_pruning(&clauses))
    }

    pub fn relocate(&self, sequent: Sequent, map: impl Fn(LeafRef) -> LeafRef) -> ExtendedNet {
        let mv = |n: Node| match n {
            Node::Leaf(l) => Node::Leaf(map(l)),
            a => a,
        };
        let links = self.links.iter().map(|(&(a, b), &c)| ((mv(a), mv(b)), c)).collect();
        ExtendedNet { sequent, anchors: self.anchors.clone(), links }
    }

    pub fn juxtapose_and(&self, g: &ExtendedNet) -> Result<ExtendedNet, NetError> {
        self.juxtapose(g, Junction::And)
    }

    pub fn juxtapose_or(&self, g: &ExtendedNet) -> Result<ExtendedNet, NetError> {
        self.juxtapose(g, Junction::Or)
    }

    fn juxtapose(&self, g: &ExtendedNet, j: Junction) -> Result<ExtendedNet, NetError> {
        let sequent = juxtaposed_sequent(&self.sequent, &g.sequent, j)?;
        let shift = self.anchors.keys().next_back().map_or(0, |k| k + 1);
        let mut anchors = self.anchors.clone();
        anchors.extend(g.anchors.iter().map(|(k, a)| (k + shift, a.clone())));
        let mut links = BTreeMap::new();
        for (&(a, b), &c) in &self.links {
            let mv = |n: Node| match n {
                Node::Leaf(l) => Node::Leaf(juxt_f(l)),
                a => a,
            };
            links.insert((mv(a), mv(b)), c);
        }
        for (&(a, b), &c) in &g.links {
            let mv = |n: Node| match n {
                Node::Leaf(l) => Node::Leaf(juxt_g(l)),
                Node::Anchor(k) => Node::Anchor(k + shift),
            };
            links.insert((mv(a), mv(b)), c);
        }
        Ok(ExtendedNet { sequent, anchors, links }.renumbered())
    }

    /// Renames anchors to 1..n in increasing order of their old names.
    fn renumbered(self) -> ExtendedNet {
        let map: BTreeMap<u32, u32> =
            self.anchors.keys().enumerate().map(|(n, k)| (*k, n as u32 + 1)).collect();
        if map.iter().all(|(a, b)| a == b) {
            return self;
        }
        let mv = |n: Node| match n {
            Node::Anchor(k) => Node::Anchor(map[&k]),
            l => l,
        };
        ExtendedNet {
            anchors: self.anchors.iter().map(|(k, a)| (map[k], a.clone())).collect(),
            links: self.links.iter().map(|(&(a, b), &c)| ((mv(a), mv(b)), c)).collect(),
            sequent: self.sequent,
        }
    }

    /// Cuts formula `i` of `self` against formula `j` of `other`: every cut
    /// leaf becomes an anchor, then the result is normalised.
    pub fn cut(&self, i: usize, other: &ExtendedNet, j: usize) -> Result<ExtendedNet, NetError> {
        self.cut_in_order(i, other, j, AnchorOrder::Ascending)
    }

    fn cut_in_order(&self, i: usize, other: &ExtendedNet, j: usize, order: AnchorOrder) -> Result<ExtendedNet, NetError> {
        let plan = CutPlan::new(&self.sequent, i, &other.sequent, j)?;
        let mut work = Work::default();
        let shift = self.anchors.keys().next_back().map_or(0, |k| k + 1);
        for (k, a) in &self.anchors {
            work.labels.insert(*k, Some(a.clone()));
        }
        for (k, a) in &other.anchors {
            work.labels.insert(k + shift, Some(a.clone()));
        }
        let first_cut = shift + other.anchors.keys().next_back().map_or(0, |k| k + 1);
        let mut cut_ids: BTreeMap<crate::formula::Path, u32> = BTreeMap::new();
        let cut_formula = &self.sequent.formulas()[i];
        for (next, (p, label)) in (first_cut..).zip(cut_formula.leaves()) {
            cut_ids.insert(p, next);
            work.labels.insert(next, label.atom().map(str::to_string));
        }
        for (side, net, offset) in [(Side::First, self, 0), (Side::Second, other, shift)] {
            let mv = |n: Node| match n {
                Node::Anchor(k) => Node::Anchor(k + offset),
                Node::Leaf(l) => match plan.place(side, l) {
                    Place::Ext(l) => Node::Leaf(l),
                    Place::Cut(p) => Node::Anchor(cut_ids[&p]),
                },
            };
            for (&(a, b), &c) in &net.links {
                *work.links.entry((mv(a), mv(b))).or_insert(0) += c;
            }
        }
        let tops: Vec<LeafRef> =
            plan.sequent.leaves().into_iter().filter(|(_, l)| *l == Label::Top).map(|(r, _)| r).collect();
        work.normalise(&tops, order);
        Ok(work.finish(plan.sequent))
    }

    /// `g ∘ f` for two-formula nets.
    pub fn compose(g: &ExtendedNet, f: &ExtendedNet) -> Result<ExtendedNet, NetError> {
        for s in [&f.sequent, &g.sequent] {
            if s.len() != 2 {
                return Err(NetError::Arity { found: s.len() });
            }
        }
        f.cut(1, g, 0)
    }

    /// Replaces every path through `k` by a direct link carrying the product
    /// of the two counts, removes `k`, and normalises.
    pub fn eliminate_anchor(&self, k: u32) -> Result<ExtendedNet, NetError> {
        if !self.anchors.contains_key(&k) {
            return Err(NetError::UnknownAnchor(k));
        }
        let ak = Node::Anchor(k);
        let ins: Vec<(Node, u64)> =
            self.links.iter().filter(|((_, b), _)| *b == ak).map(|((a, _), c)| (*a, *c)).collect();
        let outs: Vec<(Node, u64)> =
            self.links.iter().filter(|((a, _), _)| *a == ak).map(|((_, b), c)| (*b, *c)).collect();
        let mut work = Work {
            labels: self.anchors.iter().map(|(k, a)| (*k, Some(a.clone()))).collect(),
            links: self.links.clone(),
        };
        for (i, ci) in &ins {
            for (j, cj) in &outs {
                *work.links.entry((*i, *j)).or_insert(0) += ci * cj;
            }
        }
        work.remove_anchor(k);
        let tops: Vec<LeafRef> = self
            .sequent
            .leaves()
            .into_iter()
            .filter(|(_, l)| *l == Label::Top)
            .map(|(r, _)| r)
            .collect();
        work.normalise(&tops, AnchorOrder::Ascending);
        Ok(work.finish_keep_ids(self.sequent.clone()))
    }

    /// Equality up to a label-preserving bijection of anchors.
    pub fn equal(&self, other: &ExtendedNet) -> bool {
        if self.sequent != other.sequent || self.anchors.len() != other.anchors.len() {
            return false;
        }
        let leaf_only = |n: &ExtendedNet| -> BTreeMap<(Node, Node), u64> {
            n.links
                .iter()
                .filter(|((a, b), _)| matches!((a, b), (Node::Leaf(_), Node::Leaf(_))))
                .map(|(k, c)| (*k, *c))
                .collect()
        };
        if leaf_only(self) != leaf_only(other) {
            return false;
        }
        let sig_self = self.anchor_signatures();
        let sig_other = other.anchor_signatures();
        let mut a_sorted: Vec<_> = sig_self.values().collect();
        let mut b_sorted: Vec<_> = sig_other.values().collect();
        a_sorted.sort();
        b_sorted.sort();
        if a_sorted != b_sorted {
            return false;
        }
        let order: Vec<u32> = self.anchors.keys().copied().collect();
        let mut assign: BTreeMap<u32, u32> = BTreeMap::new();
        let mut used: HashSet<u32> = HashSet::new();
        self.match_anchors(other, &order, 0, &sig_self, &sig_other, &mut assign, &mut used)
    }

    #[allow(clippy::too_many_arguments)]
    fn match_anchors(
        &self,
        other: &ExtendedNet,
        order: &[u32],
        depth: usize,
        sig_self: &BTreeMap<u32, AnchorSig>,
        sig_other: &BTreeMap<u32, AnchorSig>,
        assign: &mut BTreeMap<u32, u32>,
        used: &mut HashSet<u32>,
    ) -> bool {
        let Some(&k) = order.get(depth) else { return true };
        for (&m, sig) in sig_other {
            if used.contains(&m) || *sig != sig_self[&k] {
                continue;
            }
            assign.insert(k, m);
            // Anchor-to-anchor counts among assigned anchors must agree.
            let consistent = assign.iter().all(|(&x, &y)| {
                self.count(Node::Anchor(k), Node::Anchor(x)) == other.count(Node::Anchor(m), Node::Anchor(y))
                    && self.count(Node::Anchor(x), Node::Anchor(k))
                        == other.count(Node::Anchor(y), Node::Anchor(m))
            });
            if consistent {
                used.insert(m);
                if self.match_anchors(other, order, depth + 1, sig_self, sig_other, assign, used) {
                    return true;
                }
                used.remove(&m);
            }
            assign.remove(&k);
        }
        false
    }

    fn anchor_signatures(&self) -> BTreeMap<u32, AnchorSig> {
        let mut sigs: BTreeMap<u32, AnchorSig> = self
            .anchors
            .iter()
            .map(|(k, a)| (*k, AnchorSig { label: a.clone(), ..Default::default() }))
            .collect();
        for (&(a, b), &c) in &self.links {
            match (a, b) {
                (Node::Leaf(l), Node::Anchor(k)) => sigs.get_mut(&k).unwrap().from_leaves.push((l, c)),
                (Node::Anchor(k), Node::Leaf(l)) => sigs.get_mut(&k).unwrap().to_leaves.push((l, c)),
                (Node::Anchor(x), Node::Anchor(y)) => {
                    sigs.get_mut(&x).unwrap().out_anchor.push(c);
                    sigs.get_mut(&y).unwrap().in_anchor.push(c);
                }
                _ => {}
            }
        }
        for s in sigs.values_mut() {
            s.from_leaves.sort();
            s.to_leaves.sort();
            s.out_anchor.sort();
            s.in_anchor.sort();
        }
        sigs
    }

    /// True iff some sequence of anchor eliminations turns `self` into `g`.
    pub fn preceq(&self, g: &ExtendedNet, bound: usize) -> Result<bool, NetError> {
        if self.anchors.len() > bound {
            return Err(NetError::AnchorBound { count: self.anchors.len(), bound });
        }
        if self.sequent != g.sequent {
            return Ok(false);
        }
        let mut seen: HashSet<ExtendedNet> = HashSet::new();
        let mut queue = VecDeque::from([self.clone()]);
        while let Some(n) = queue.pop_front() {
            if !seen.insert(n.clone()) {
                continue;
            }
            if n.equal(g) {
                return Ok(true);
            }
            if n.anchors.len() < g.anchors.len() {
                continue;
            }
            for &k in n.anchors.keys() {
                queue.push_back(n.eliminate_anchor(k)?);
            }
        }
        Ok(false)
    }

    /// Distinct anchor-free results over all elimination orders.
    pub fn elimination_normal_forms(&self, bound: usize) -> Result<Vec<ExtendedNet>, NetError> {
        if self.anchors.len() > bound {
            return Err(NetError::AnchorBound { count: self.anchors.len(), bound });
        }
        let mut seen: HashSet<ExtendedNet> = HashSet::new();
        let mut results: BTreeSet<Vec<((Node, Node), u64)>> = BTreeSet::new();
        let mut out = Vec::new();
        let mut stack = vec![self.clone()];
        while let Some(n) = stack.pop() {
            if !seen.insert(n.clone()) {
                continue;
            }
            if n.anchors.is_empty() {
                let key: Vec<_> = n.links.iter().map(|(k, c)| (*k, *c)).collect();
                if results.insert(key) {
                    out.push(n);
                }
                continue;
            }
            for &k in n.anchors.keys() {
                stack.push(n.eliminate_anchor(k)?);
            }
        }
        out.sort_by(|a, b| a.links.iter().cmp(b.links.iter()));
        Ok(out)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
struct AnchorSig {
    label: String,
    from_leaves: Vec<(LeafRef, u64)>,
    to_leaves: Vec<(LeafRef, u64)>,
    out_anchor: Vec<u64>,
    in_anchor: Vec<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum AnchorOrder {
    Ascending,
    Descending,
}

/// Mutable intermediate state of a cut or elimination. Anchors with label
/// `None` stand for unit cut leaves and never survive normalisation.
#[derive(Default)]
struct Work {
    labels: BTreeMap<u32, Option<String>>,
    links: BTreeMap<(Node, Node), u64>,
}

impl Work {
    fn remove_anchor(&mut self, k: u32) {
        let ak = Node::Anchor(k);
        self.links.retain(|(a, b), _| *a != ak && *b != ak);
        self.labels.remove(&k);
    }

    /// Applies the first applicable rule until none applies. Rules, in
    /// order: zero anchor self-links, reset t self-links to 1, delete an
    /// anchor without outgoing links, delete one without incoming links,
    /// contract a single outgoing unit link, contract a single incoming one.
    fn normalise(&mut self, tops: &[LeafRef], order: AnchorOrder) {
        loop {
            self.links.retain(|(a, b), c| *c > 0 && !(a == b && matches!(a, Node::Anchor(_))));
            for t in tops {
                self.links.insert((Node::Leaf(*t), Node::Leaf(*t)), 1);
            }
            let mut ids: Vec<u32> = self.labels.keys().copied().collect();
            if order == AnchorOrder::Descending {
                ids.reverse();
            }
            if !self.step(&ids) {
                return;
            }
        }
    }

    fn step(&mut self, ids: &[u32]) -> bool {
        let degrees = |w: &Work, k: u32| {
            let ak = Node::Anchor(k);
            let outs: Vec<(Node, u64)> =
                w.links.iter().filter(|((a, _), _)| *a == ak).map(|((_, b), c)| (*b, *c)).collect();
            let ins: Vec<(Node, u64)> =
                w.links.iter().filter(|((_, b), _)| *b == ak).map(|((a, _), c)| (*a, *c)).collect();
            (ins, outs)
        };
        for &k in ids {
            let (ins, outs) = degrees(self, k);
            if outs.is_empty() || ins.is_empty() {
                self.remove_anchor(k);
                return true;
            }
        }
        for &k in ids {
            let (ins, outs) = degrees(self, k);
            if let [(i, 1)] = outs.as_slice() {
                let i = *i;
                self.remove_anchor(k);
                for (l, c) in ins {
                    *self.links.entry((l, i)).or_insert(0) += c;
                }
                return true;
            }
        }
        for &k in ids {
            let (ins, outs) = degrees(self, k);
            if let [(i, 1)] = ins.as_slice() {
                let i = *i;
                self.remove_anchor(k);
                for (l, c) in outs {
                    *self.links.entry((i, l)).or_insert(0) += c;
                }
                return true;
            }
        }
        false
    }

    fn into_net(self, sequent: Sequent) -> ExtendedNet {
        let anchors = self
            .labels
            .into_iter()
            .map(|(k, a)| (k, a.expect("unit cut nodes never survive normalisation")))
            .collect();
        ExtendedNet { sequent, anchors, links: self.links }
    }

    fn finish(self, sequent: Sequent) -> ExtendedNet {
        self.into_net(sequent).renumbered()
    }

    fn finish_keep_ids(self, sequent: Sequent) -> ExtendedNet {
        self.into_net(sequent)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_sequent;

    fn leaf(i: usize, p: &str) -> Node {
        Node::Leaf(LeafRef::at(i, p))
    }

    /// `~a & ~a, a & a` with one anchor fanning both negative leaves into
    /// both positive ones.
    fn anchored_fan() -> ExtendedNet {
        let s = parse_sequent("~a & ~a, a & a").unwrap();
        let k = Node::Anchor(1);
        let links = BTreeMap::from([
            ((leaf(0, "L"), k), 1),
            ((leaf(0, "R"), k), 1),
            ((k, leaf(1, "L")), 1),
            ((k, leaf(1, "R")), 1),
        ]);
        ExtendedNet::new(s, BTreeMap::from([(1, "a".to_string())]), links).unwrap()
    }

    #[test]
    fn eliminating_a_two_by_two_anchor_gives_four_links() {
        let n = anchored_fan().eliminate_anchor(1).unwrap();
        assert!(n.anchors().is_empty());
        assert_eq!(n.links().len(), 4);
        assert!(n.links().values().all(|c| *c == 1));
        assert!(anchored_fan().preceq(&n, DEFAULT_ANCHOR_BOUND).unwrap());
        assert!(!n.preceq(&anchored_fan(), DEFAULT_ANCHOR_BOUND).unwrap());
        assert!(!anchored_fan().equal(&n));
    }

    #[test]
    fn anchor_degree_violations() {
        let s = parse_sequent("~a & ~a, a & a").unwrap();
        let k = Node::Anchor(1);
        let links = BTreeMap::from([((leaf(0, "L"), k), 1), ((leaf(0, "R"), k), 1), ((k, leaf(1, "L")), 1)]);
        let err = ExtendedNet::new(s, BTreeMap::from([(1, "a".to_string())]), links).unwrap_err();
        assert!(err.to_string().contains("anchor k1 out-degree < 2"), "{err}");
    }

    #[test]
    fn top_count_must_be_one() {
        let s = parse_sequent("t").unwrap();
        let links = BTreeMap::from([((leaf(0, ""), leaf(0, "")), 2)]);
        let err = ExtendedNet::new(s, BTreeMap::new(), links).unwrap_err();
        assert!(err.to_string().contains("self-link count 2"));
    }

    #[test]
    fn renaming_anchors_preserves_equality() {
        let n = anchored_fan();
        let mut m = n.clone();
        m.anchors = BTreeMap::from([(7, "a".to_string())]);
        m.links = n
            .links
            .iter()
            .map(|(&(a, b), &c)| {
                let mv = |x: Node| if let Node::Anchor(_) = x { Node::Anchor(7) } else { x };
                ((mv(a), mv(b)), c)
            })
            .collect();
        assert!(n.equal(&m));
        assert!(n.preceq(&n, DEFAULT_ANCHOR_BOUND).unwrap());
    }

    #[test]
    fn unknown_anchor_is_an_error() {
        assert_eq!(anchored_fan().eliminate_anchor(3).unwrap_err(), NetError::UnknownAnchor(3));
    }

    /// Full linkings `A -> B -> C`, which share leaves enough to leave anchors.
    fn full_pair(seed: u64) -> Option<(ExtendedNet, ExtendedNet)> {
        use crate::axiom_suite::sampler::{full_linking, random_formula};
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let atoms = vec!["a".to_string(), "b".to_string()];
        let [a, b, c] = [(); 3].map(|_| random_formula(&mut rng, 3, &atoms));
        let (f, g) = (full_linking(&a, &b), full_linking(&b, &c));
        (f.is_correct_uncapped().ok()? && g.is_correct_uncapped().ok()?)
            .then(|| (ExtendedNet::from_simple(&f), ExtendedNet::from_simple(&g)))
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(200))]

        #[test]
        fn normal_form_ignores_rule_order(seed in proptest::prelude::any::<u64>()) {
            if let Some((f, g)) = full_pair(seed) {
                let up = f.cut_in_order(1, &g, 0, AnchorOrder::Ascending).unwrap();
                let down = f.cut_in_order(1, &g, 0, AnchorOrder::Descending).unwrap();
                proptest::prop_assert!(up.equal(&down));
                proptest::prop_assert!(up.validate().is_ok());
            }
        }
    }
}
