//! Simple prenets: a sequent plus a set of directed leaf-to-leaf links.
//!
//! A net is correct iff every conjunctive pruning keeps at least one link.
//! Each leaf gets a (care, value) bit-mask over the conjunction nodes of the
//! sequent; a pruning is a choice word and a leaf survives it iff the word
//! agrees with the leaf's value on every cared-about bit.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::error::NetError;
use crate::formula::{Dir, Formula, Label, LeafRef, Path, Sequent};

pub type Link = (LeafRef, LeafRef);

/// Hard ceiling of the bit-mask representation.
pub const MAX_ANDS: usize = 64;
pub const DEFAULT_PRUNING_CAP: usize = 24;
pub const PRUNING_CAP_ENV: &str = "BOOLCAT_PRUNING_CAP";

/// The configured conjunction cap: `BOOLCAT_PRUNING_CAP` if set and valid,
/// else 24. Never above 64.
pub fn pruning_cap() -> usize {
    std::env::var(PRUNING_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .unwrap_or(DEFAULT_PRUNING_CAP)
        .min(MAX_ANDS)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NoSuchLeaf(LeafRef),
    TopWithoutSelfLink(LeafRef),
    IllTyped { src: LeafRef, dst: LeafRef, src_label: Label, dst_label: Label },
    TouchesBot { src: LeafRef, dst: LeafRef },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoSuchLeaf(l) => write!(f, "no leaf at {l}"),
            Violation::TopWithoutSelfLink(l) => write!(f, "t leaf without self-link at {l}"),
            Violation::IllTyped { src, dst, src_label, dst_label } => {
                write!(f, "ill-typed link {src_label}@{src} -> {dst_label}@{dst}")
            }
            Violation::TouchesBot { src, dst } => write!(f, "link {src} -> {dst} touches an f leaf"),
        }
    }
}

pub(crate) fn join_violations<V: fmt::Display>(vs: &[V]) -> String {
    vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ")
}

/// Checks the linking conditions: t leaves carry exactly their self-link,
/// every other link goes from a negative atom to a distinct positive leaf of
/// the same atom, and f leaves are untouched.
pub fn validate(sequent: &Sequent, links: &BTreeSet<Link>) -> Result<(), Vec<Violation>> {
    let mut out = Vec::new();
    for (src, dst) in links {
        let (Some(ls), Some(ld)) = (sequent.label(src), sequent.label(dst)) else {
            for l in [src, dst] {
                if sequent.label(l).is_none() {
                    out.push(Violation::NoSuchLeaf(*l));
                }
            }
            continue;
        };
        let ok = match (&ls, &ld) {
            (Label::Top, Label::Top) => src == dst,
            (Label::Neg(a), Label::Pos(b)) => a == b && src != dst,
            _ => false,
        };
        if ok {
            continue;
        }
        if ls == Label::Bot || ld == Label::Bot {
            out.push(Violation::TouchesBot { src: *src, dst: *dst });
        } else {
            out.push(Violation::IllTyped { src: *src, dst: *dst, src_label: ls, dst_label: ld });
        }
    }
    for (leaf, label) in sequent.leaves() {
        if label == Label::Top && !links.contains(&(leaf, leaf)) {
            out.push(Violation::TopWithoutSelfLink(leaf));
        }
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

/// Bit-mask view of the conjunction nodes of a sequent.
#[derive(Clone, Debug)]
pub(crate) struct PruneIndex {
    pub ands: Vec<LeafRef>,
    pub masks: HashMap<LeafRef, (u64, u64)>,
}

impl PruneIndex {
    pub fn new(sequent: &Sequent) -> Result<PruneIndex, NetError> {
        let ands = sequent.and_nodes();
        if ands.len() > MAX_ANDS {
            return Err(NetError::PruningBudget { ands: ands.len(), cap: MAX_ANDS });
        }
        let mut masks = HashMap::new();
        let mut counter = 0usize;
        for (i, g) in sequent.formulas().iter().enumerate() {
            fill_masks(g, i, Path::ROOT, 0, 0, &mut counter, &mut masks);
        }
        debug_assert_eq!(counter, ands.len());
        Ok(PruneIndex { ands, masks })
    }

    pub fn survives(&self, leaf: &LeafRef, word: u64) -> bool {
        let (care, val) = self.masks[leaf];
        (word ^ val) & care == 0
    }

    /// Combined condition under which both endpoints survive, if satisfiable.
    pub fn link_clause(&self, a: &LeafRef, b: &LeafRef) -> Option<(u64, u64)> {
        let (ca, va) = self.masks[a];
        let (cb, vb) = self.masks[b];
        ((va ^ vb) & ca & cb == 0).then_some((ca | cb, va | vb))
    }
}

// Pre-order numbering matches `Formula::and_nodes`.
fn fill_masks(
    g: &Formula,
    i: usize,
    here: Path,
    care: u64,
    val: u64,
    counter: &mut usize,
    out: &mut HashMap<LeafRef, (u64, u64)>,
) {
    match g {
        Formula::And(l, r) => {
            let bit = 1u64 << *counter;
            *counter += 1;
            fill_masks(l, i, here.child(Dir::L), care | bit, val, counter, out);
            fill_masks(r, i, here.child(Dir::R), care | bit, val | bit, counter, out);
        }
        Formula::Or(l, r) => {
            fill_masks(l, i, here.child(Dir::L), care, val, counter, out);
            fill_masks(r, i, here.child(Dir::R), care, val, counter, out);
        }
        _ => {
            out.insert(LeafRef { i, path: here }, (care, val));
        }
    }
}

/// True iff some choice word falsifies every clause, i.e. leaves no
/// clause with all of its cared bits agreeing.
pub(crate) fn exists_empty_pruning(clauses: &[(u64, u64)]) -> bool {
    fn go(clauses: &[(u64, u64)], fixed: u64, word: u64) -> bool {
        let mut best: Option<(u32, usize)> = None;
        for (k, &(care, val)) in clauses.iter().enumerate() {
            if (word ^ val) & care & fixed != 0 {
                continue;
            }
            let free = care & !fixed;
            if free == 0 {
                return false;
            }
            let n = free.count_ones();
            if best.is_none_or(|(m, _)| n < m) {
                best = Some((n, k));
            }
        }
        let Some((_, k)) = best else { return true };
        let (care, val) = clauses[k];
        let mut free = care & !fixed;
        let (mut fixed, mut word) = (fixed, word);
        while free != 0 {
            let bit = free & free.wrapping_neg();
            free &= !bit;
            if go(clauses, fixed | bit, (word & !bit) | (!val & bit)) {
                return true;
            }
            // Later branches may assume this bit agrees.
            fixed |= bit;
            word = (word & !bit) | (val & bit);
        }
        false
    }
    go(clauses, 0, 0)
}

/// One conjunctive pruning: a kept side for every conjunction node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pruning {
    pub choices: BTreeMap<LeafRef, Dir>,
}

#[derive(Clone, Debug)]
pub struct PrunedView {
    pub pruning: Pruning,
    pub survivors: BTreeSet<LeafRef>,
    pub links: BTreeSet<Link>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimpleNet {
    sequent: Sequent,
    links: BTreeSet<Link>,
}

impl SimpleNet {
    pub fn new(sequent: Sequent, links: BTreeSet<Link>) -> Result<SimpleNet, NetError> {
        validate(&sequent, &links).map_err(|v| NetError::Invalid(join_violations(&v)))?;
        Ok(SimpleNet { sequent, links })
    }

    /// For callers that construct links valid by design.
    pub(crate) fn from_parts(sequent: Sequent, links: BTreeSet<Link>) -> SimpleNet {
        debug_assert!(validate(&sequent, &links).is_ok(), "invalid linking built internally");
        SimpleNet { sequent, links }
    }

    pub fn sequent(&self) -> &Sequent {
        &self.sequent
    }

    pub fn links(&self) -> &BTreeSet<Link> {
        &self.links
    }

    /// Links other than t self-links.
    pub fn atom_links(&self) -> impl Iterator<Item = &Link> {
        self.links.iter().filter(|(a, b)| a != b)
    }

    pub fn validate(&self) -> Result<(), Vec<Violation>> {
        validate(&self.sequent, &self.links)
    }

    pub fn and_count(&self) -> usize {
        self.sequent.and_nodes().len()
    }

    fn check_cap(&self) -> Result<usize, NetError> {
        let ands = self.and_count();
        let cap = pruning_cap();
        if ands > cap {
            return Err(NetError::PruningBudget { ands, cap });
        }
        Ok(ands)
    }

    /// Enumerates all `2^n` conjunctive prunings. Bounded by the pruning cap.
    pub fn prunings(&self) -> Result<impl Iterator<Item = PrunedView> + '_, NetError> {
        let n = self.check_cap()?;
        let index = PruneIndex::new(&self.sequent)?;
        let leaves: Vec<LeafRef> = self.sequent.leaves().into_iter().map(|(l, _)| l).collect();
        Ok((0u64..1u64 << n).map(move |word| {
            let choices = index
                .ands
                .iter()
                .enumerate()
                .map(|(k, node)| (*node, if word >> k & 1 == 1 { Dir::R } else { Dir::L }))
                .collect();
            let survivors: BTreeSet<LeafRef> =
                leaves.iter().filter(|l| index.survives(l, word)).copied().collect();
            let links = self
                .links
                .iter()
                .filter(|(a, b)| survivors.contains(a) && survivors.contains(b))
                .copied()
                .collect();
            PrunedView { pruning: Pruning { choices }, survivors, links }
        }))
    }

    /// Number of prunings and how many of them keep a link. Bounded by the cap.
    pub fn pruning_census(&self) -> Result<(u64, u64), NetError> {
        let n = self.check_cap()?;
        let index = PruneIndex::new(&self.sequent)?;
        let clauses: Vec<(u64, u64)> =
            self.links.iter().filter_map(|(a, b)| index.link_clause(a, b)).collect();
        let linked = (0u64..1u64 << n)
            .filter(|w| clauses.iter().any(|(c, v)| (w ^ v) & c == 0))
            .count() as u64;
        Ok((1u64 << n, linked))
    }

    /// Every conjunctive pruning keeps a link (t self-links count).
    pub fn is_correct(&self) -> Result<bool, NetError> {
        self.check_cap()?;
        self.is_correct_uncapped()
    }

    /// Same verdict as `is_correct`, without the configurable cap. The
    /// search never enumerates prunings, so it stays cheap on real nets.
    pub fn is_correct_uncapped(&self) -> Result<bool, NetError> {
        let index = PruneIndex::new(&self.sequent)?;
        let clauses: Vec<(u64, u64)> =
            self.links.iter().filter_map(|(a, b)| index.link_clause(a, b)).collect();
        Ok(!exists_empty_pruning(&clauses))
    }

    /// Literal equality: same sequent, same links.
    pub fn equal(&self, other: &SimpleNet) -> bool {
        self == other
    }

    pub fn sum(&self, other: &SimpleNet) -> Result<SimpleNet, NetError> {
        self.same_sequent(other)?;
        let links = self.links.union(&other.links).copied().collect();
        Ok(SimpleNet { sequent: self.sequent.clone(), links })
    }

    /// Linking inclusion.
    pub fn leq(&self, other: &SimpleNet) -> Result<bool, NetError> {
        self.same_sequent(other)?;
        Ok(self.links.is_subset(&other.links))
    }

    fn same_sequent(&self, other: &SimpleNet) -> Result<(), NetError> {
        if self.sequent != other.sequent {
            return Err(NetError::SequentMismatch {
                left: self.sequent.to_string(),
                right: other.sequent.to_string(),
            });
        }
        Ok(())
    }

    /// Rehouses every link under a leaf bijection onto `sequent`.
    pub fn relocate(&self, sequent: Sequent, map: impl Fn(LeafRef) -> LeafRef) -> SimpleNet {
        let links = self.links.iter().map(|(a, b)| (map(*a), map(*b))).collect();
        SimpleNet::from_parts(sequent, links)
    }

    /// `f : (~A, B)` and `g : (~C, D)` give `(~(A&C), B&D)`.
    pub fn juxtapose_and(&self, g: &SimpleNet) -> Result<SimpleNet, NetError> {
        self.juxtapose(g, Junction::And)
    }

    /// `f : (~A, B)` and `g : (~C, D)` give `(~(A|C), B|D)`.
    pub fn juxtapose_or(&self, g: &SimpleNet) -> Result<SimpleNet, NetError> {
        self.juxtapose(g, Junction::Or)
    }

    fn juxtapose(&self, g: &SimpleNet, j: Junction) -> Result<SimpleNet, NetError> {
        let sequent = juxtaposed_sequent(&self.sequent, &g.sequent, j)?;
        let mut links: BTreeSet<Link> =
            self.links.iter().map(|(a, b)| (juxt_f(*a), juxt_f(*b))).collect();
        links.extend(g.links.iter().map(|(a, b)| (juxt_g(*a), juxt_g(*b))));
        Ok(SimpleNet::from_parts(sequent, links))
    }

    /// Cuts formula `i` of `self` against formula `j` of `other`, which must
    /// be its negation. A link of the result is a directed path between
    /// surviving leaves through identified cut leaves.
    pub fn cut(&self, i: usize, other: &SimpleNet, j: usize) -> Result<SimpleNet, NetError> {
        let plan = CutPlan::new(&self.sequent, i, &other.sequent, j)?;
        let mut ids: HashMap<Place, usize> = HashMap::new();
        let mut places: Vec<Place> = Vec::new();
        let mut adj: Vec<Vec<usize>> = Vec::new();
        let mut id_of = |p: Place, places: &mut Vec<Place>, adj: &mut Vec<Vec<usize>>| {
            *ids.entry(p).or_insert_with(|| {
                places.push(p);
                adj.push(Vec::new());
                places.len() - 1
            })
        };
        for (side, net) in [(Side::First, self), (Side::Second, other)] {
            for (a, b) in &net.links {
                let (pa, pb) = (plan.place(side, *a), plan.place(side, *b));
                if pa == pb && matches!(pa, Place::Cut(_)) {
                    // t self-link inside the cut.
                    continue;
                }
                let ia = id_of(pa, &mut places, &mut adj);
                let ib = id_of(pb, &mut places, &mut adj);
                adj[ia].push(ib);
            }
        }
        let mut links = BTreeSet::new();
        let mut seen = vec![usize::MAX; places.len()];
        for (start, place) in places.iter().enumerate() {
            let Place::Ext(src) = place else { continue };
            let mut stack = vec![start];
            while let Some(n) = stack.pop() {
                for &m in &adj[n] {
                    if seen[m] == start {
                        continue;
                    }
                    seen[m] = start;
                    match places[m] {
                        Place::Ext(dst) => {
                            links.insert((*src, dst));
                        }
                        Place::Cut(_) => stack.push(m),
                    }
                }
            }
        }
        Ok(SimpleNet::from_parts(plan.sequent, links))
    }

    /// `g ∘ f` for `f : (~A, B)` and `g : (~B, C)`.
    pub fn compose(g: &SimpleNet, f: &SimpleNet) -> Result<SimpleNet, NetError> {
        if f.sequent.len() != 2 {
            return Err(NetError::Arity { found: f.sequent.len() });
        }
        if g.sequent.len() != 2 {
            return Err(NetError::Arity { found: g.sequent.len() });
        }
        f.cut(1, g, 0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Junction {
    And,
    Or,
}

pub(crate) fn juxtaposed_sequent(f: &Sequent, g: &Sequent, j: Junction) -> Result<Sequent, NetError> {
    for s in [f, g] {
        if s.len() != 2 {
            return Err(NetError::Arity { found: s.len() });
        }
    }
    let (f0, f1) = (f.0[0].clone(), f.0[1].clone());
    let (g0, g1) = (g.0[0].clone(), g.0[1].clone());
    Ok(match j {
        Junction::And => Sequent::new(vec![Formula::or(g0, f0), Formula::and(f1, g1)]),
        Junction::Or => Sequent::new(vec![Formula::and(g0, f0), Formula::or(f1, g1)]),
    })
}

/// Relocation of the first factor's leaves under juxtaposition.
pub(crate) fn juxt_f(l: LeafRef) -> LeafRef {
    match l.i {
        0 => LeafRef::new(0, l.path.under(Dir::R)),
        _ => LeafRef::new(1, l.path.under(Dir::L)),
    }
}

/// Relocation of the second factor's leaves under juxtaposition.
pub(crate) fn juxt_g(l: LeafRef) -> LeafRef {
    match l.i {
        0 => LeafRef::new(0, l.path.under(Dir::L)),
        _ => LeafRef::new(1, l.path.under(Dir::R)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Side {
    First,
    Second,
}

/// Where a leaf of a cut operand ends up.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) enum Place {
    Ext(LeafRef),
    /// A cut leaf, named by its path in the first operand's cut formula.
    Cut(Path),
}

/// Index bookkeeping for cutting formula `i1` of one sequent against
/// formula `i2` of another. The result keeps the first sequent minus `i1`,
/// then the second minus `i2`.
#[derive(Clone, Debug)]
pub(crate) struct CutPlan {
    pub sequent: Sequent,
    i1: usize,
    i2: usize,
    offset: usize,
}

impl CutPlan {
    pub fn new(s1: &Sequent, i1: usize, s2: &Sequent, i2: usize) -> Result<CutPlan, NetError> {
        for (s, i) in [(s1, i1), (s2, i2)] {
            if i >= s.len() {
                return Err(NetError::NoSuchFormula { index: i, len: s.len() });
            }
        }
        if s2.0[i2] != s1.0[i1].negate() {
            return Err(NetError::CutMismatch {
                left: s1.0[i1].to_string(),
                right: s2.0[i2].to_string(),
            });
        }
        let mut formulas: Vec<Formula> =
            s1.0.iter().enumerate().filter(|(k, _)| *k != i1).map(|(_, g)| g.clone()).collect();
        formulas.extend(s2.0.iter().enumerate().filter(|(k, _)| *k != i2).map(|(_, g)| g.clone()));
        if formulas.is_empty() {
            return Err(NetError::Invalid("cut leaves an empty sequent".into()));
        }
        Ok(CutPlan { sequent: Sequent::new(formulas), i1, i2, offset: s1.len() - 1 })
    }

    pub fn place(&self, side: Side, l: LeafRef) -> Place {
        match side {
            Side::First if l.i == self.i1 => Place::Cut(l.path),
            Side::First => Place::Ext(LeafRef::new(if l.i < self.i1 { l.i } else { l.i - 1 }, l.path)),
            Side::Second if l.i == self.i2 => Place::Cut(l.path.mirror()),
            Side::Second => {
                let k = if l.i < self.i2 { l.i } else { l.i - 1 };
                Place::Ext(LeafRef::new(self.offset + k, l.path))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_sequent;

    type At<'a> = (usize, &'a str);

    fn net(seq: &str, links: &[(At, At)]) -> SimpleNet {
        let s = parse_sequent(seq).unwrap();
        let links = links.iter().map(|((i, p), (j, q))| (LeafRef::at(*i, p), LeafRef::at(*j, q))).collect();
        SimpleNet::new(s, links).unwrap()
    }

    #[test]
    fn crossing_pair_is_not_correct() {
        let n = net("~b & a, ~a & b", &[((0, "L"), (1, "R")), ((1, "L"), (0, "R"))]);
        assert!(!n.is_correct().unwrap());
        assert_eq!(n.pruning_census().unwrap(), (4, 2));
    }

    #[test]
    fn validation_names_the_problem() {
        let s = parse_sequent("t | a, ~a").unwrap();
        let mut links = BTreeSet::from([(LeafRef::at(1, ""), LeafRef::at(0, "R"))]);
        let err = validate(&s, &links).unwrap_err();
        assert_eq!(err, vec![Violation::TopWithoutSelfLink(LeafRef::at(0, "L"))]);
        assert!(err[0].to_string().contains("t leaf without self-link"));
        links.insert((LeafRef::at(0, "L"), LeafRef::at(0, "L")));
        assert!(validate(&s, &links).is_ok());
        links.insert((LeafRef::at(0, "R"), LeafRef::at(0, "R")));
        assert!(matches!(validate(&s, &links).unwrap_err()[0], Violation::IllTyped { .. }));
    }

    #[test]
    fn f_leaves_are_untouchable() {
        let s = parse_sequent("f, t").unwrap();
        let links = BTreeSet::from([(LeafRef::at(0, ""), LeafRef::at(0, "")), (LeafRef::at(1, ""), LeafRef::at(1, ""))]);
        let err = validate(&s, &links).unwrap_err();
        assert_eq!(err, vec![Violation::TouchesBot { src: LeafRef::at(0, ""), dst: LeafRef::at(0, "") }]);
    }

    #[test]
    fn and_free_sequent_has_one_pruning() {
        let n = net("~a | a", &[((0, "L"), (0, "R"))]);
        let all: Vec<_> = n.prunings().unwrap().collect();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].links, *n.links());
    }

    #[test]
    fn pruning_cap_is_enforced() {
        let mut g = crate::formula::Formula::atom("a");
        for _ in 0..30 {
            g = crate::formula::Formula::and(g, crate::formula::Formula::Top);
        }
        let s = Sequent::new(vec![g]);
        let links = s.leaves().into_iter().filter(|(_, l)| *l == Label::Top).map(|(r, _)| (r, r)).collect();
        let n = SimpleNet::new(s, links).unwrap();
        assert!(matches!(n.is_correct(), Err(NetError::PruningBudget { ands: 30, cap: 24 })));
        assert!(matches!(n.prunings().err(), Some(NetError::PruningBudget { .. })));
        assert!(!n.is_correct_uncapped().unwrap());
    }

    #[test]
    fn empty_pruning_search_matches_enumeration() {
        let cases: &[&[(u64, u64)]] = &[
            &[],
            &[(0, 0)],
            &[(1, 0), (1, 1)],
            &[(1, 0), (2, 2)],
            &[(3, 0), (3, 3), (3, 1)],
            &[(3, 0), (3, 3), (3, 1), (3, 2)],
            &[(5, 4), (6, 2), (1, 0)],
        ];
        for clauses in cases {
            let brute = (0u64..8).any(|w| clauses.iter().all(|(c, v)| (w ^ v) & c != 0));
            assert_eq!(exists_empty_pruning(clauses), brute, "{clauses:?}");
        }
    }

    #[test]
    fn cut_plan_mirrors_second_operand() {
        let s1 = parse_sequent("~a, a & b").unwrap();
        let s2 = parse_sequent("~b | ~a, c").unwrap();
        let plan = CutPlan::new(&s1, 1, &s2, 0).unwrap();
        assert_eq!(plan.sequent.to_string(), "~a, c");
        assert_eq!(plan.place(Side::First, LeafRef::at(1, "L")), Place::Cut("L".parse().unwrap()));
        assert_eq!(plan.place(Side::Second, LeafRef::at(0, "R")), Place::Cut("L".parse().unwrap()));
        assert_eq!(plan.place(Side::Second, LeafRef::at(1, "")), Place::Ext(LeafRef::at(1, "")));
        assert!(CutPlan::new(&s1, 1, &s1, 0).is_err());
    }
}
