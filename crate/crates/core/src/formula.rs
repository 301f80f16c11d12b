//! Formulas in negation normal form, sequents, and leaf addressing.
//!
//! Leaves are addressed by a formula index plus a root path over `{L, R}`.
//! Everything that relocates leaves (pruning, juxtaposition, transposition,
//! cut) works on these paths, never on flat offsets.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::de::{self, Deserializer};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::FormulaError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dir {
    L,
    R,
}

impl Dir {
    pub fn flip(self) -> Dir {
        match self {
            Dir::L => Dir::R,
            Dir::R => Dir::L,
        }
    }
}

/// A path from a formula root, at most 64 steps. Step `k` lives in bit `k`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Path {
    bits: u64,
    len: u8,
}

pub const MAX_PATH: usize = 64;

impl Path {
    pub const ROOT: Path = Path { bits: 0, len: 0 };

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn step(&self, k: usize) -> Dir {
        debug_assert!(k < self.len());
        if self.bits >> k & 1 == 1 {
            Dir::R
        } else {
            Dir::L
        }
    }

    pub fn steps(&self) -> impl Iterator<Item = Dir> + '_ {
        (0..self.len()).map(move |k| self.step(k))
    }

    /// Appends a step at the leaf end.
    pub fn child(&self, d: Dir) -> Path {
        assert!(self.len() < MAX_PATH, "path longer than {MAX_PATH} steps");
        let bit = matches!(d, Dir::R) as u64;
        Path {
            bits: self.bits | bit << self.len,
            len: self.len + 1,
        }
    }

    /// Prepends a step at the root end.
    pub fn under(&self, d: Dir) -> Path {
        assert!(self.len() < MAX_PATH, "path longer than {MAX_PATH} steps");
        let bit = matches!(d, Dir::R) as u64;
        Path {
            bits: self.bits << 1 | bit,
            len: self.len + 1,
        }
    }

    pub fn join(&self, rest: &Path) -> Path {
        assert!(self.len() + rest.len() <= MAX_PATH, "path longer than {MAX_PATH} steps");
        let shifted = if self.len() == MAX_PATH { 0 } else { rest.bits << self.len };
        Path {
            bits: self.bits | shifted,
            len: self.len + rest.len,
        }
    }

    /// Flips every step. Negation reverses argument order, so the leaf at
    /// `p` in `A` sits at `p.mirror()` in `negate(A)`.
    pub fn mirror(&self) -> Path {
        let mask = if self.len() == MAX_PATH { u64::MAX } else { (1u64 << self.len) - 1 };
        Path {
            bits: !self.bits & mask,
            len: self.len,
        }
    }

    pub fn first(&self) -> Option<Dir> {
        (self.len > 0).then(|| self.step(0))
    }

    /// Drops the first step.
    pub fn tail(&self) -> Path {
        assert!(self.len > 0, "tail of the root path");
        Path {
            bits: self.bits >> 1,
            len: self.len - 1,
        }
    }

    pub fn strip_prefix(&self, prefix: &Path) -> Option<Path> {
        if prefix.len() > self.len() {
            return None;
        }
        let mask = if prefix.len() == MAX_PATH { u64::MAX } else { (1u64 << prefix.len) - 1 };
        if self.bits & mask != prefix.bits {
            return None;
        }
        let bits = if prefix.len() == MAX_PATH { 0 } else { self.bits >> prefix.len };
        Some(Path {
            bits,
            len: self.len - prefix.len,
        })
    }

    pub fn is_prefix_of(&self, other: &Path) -> bool {
        other.strip_prefix(self).is_some()
    }
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.steps().zip(other.steps()) {
            match a.cmp(&b) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        self.len.cmp(&other.len)
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in self.steps() {
            f.write_str(if d == Dir::L { "L" } else { "R" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Path({self})")
    }
}

impl FromStr for Path {
    type Err = FormulaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Path::ROOT;
        for (pos, c) in s.chars().enumerate() {
            if p.len() == MAX_PATH {
                return Err(FormulaError::Syntax { pos, msg: "path too long".into() });
            }
            p = match c {
                'L' => p.child(Dir::L),
                'R' => p.child(Dir::R),
                _ => {
                    return Err(FormulaError::Syntax {
                        pos,
                        msg: format!("unexpected `{c}` in leaf path"),
                    })
                }
            };
        }
        Ok(p)
    }
}

impl Serialize for Path {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Path {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(String),
    NegAtom(String),
    Top,
    Bot,
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
}

/// What sits at a leaf.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Pos(String),
    Neg(String),
    Top,
    Bot,
}

impl Label {
    pub fn atom(&self) -> Option<&str> {
        match self {
            Label::Pos(a) | Label::Neg(a) => Some(a),
            _ => None,
        }
    }

    pub fn negate(&self) -> Label {
        match self {
            Label::Pos(a) => Label::Neg(a.clone()),
            Label::Neg(a) => Label::Pos(a.clone()),
            Label::Top => Label::Bot,
            Label::Bot => Label::Top,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Pos(a) => write!(f, "{a}"),
            Label::Neg(a) => write!(f, "~{a}"),
            Label::Top => f.write_str("t"),
            Label::Bot => f.write_str("f"),
        }
    }
}

impl Formula {
    pub fn atom(name: &str) -> Formula {
        Formula::Atom(name.to_string())
    }

    pub fn neg_atom(name: &str) -> Formula {
        Formula::NegAtom(name.to_string())
    }

    pub fn and(l: Formula, r: Formula) -> Formula {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Formula {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn is_leaf(&self) -> bool {
        !matches!(self, Formula::And(..) | Formula::Or(..))
    }

    pub fn label(&self) -> Option<Label> {
        match self {
            Formula::Atom(a) => Some(Label::Pos(a.clone())),
            Formula::NegAtom(a) => Some(Label::Neg(a.clone())),
            Formula::Top => Some(Label::Top),
            Formula::Bot => Some(Label::Bot),
            _ => None,
        }
    }

    pub fn children(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::And(l, r) | Formula::Or(l, r) => Some((l, r)),
            _ => None,
        }
    }

    /// De Morgan dual; reverses argument order.
    pub fn negate(&self) -> Formula {
        match self {
            Formula::Atom(a) => Formula::NegAtom(a.clone()),
            Formula::NegAtom(a) => Formula::Atom(a.clone()),
            Formula::Top => Formula::Bot,
            Formula::Bot => Formula::Top,
            Formula::And(l, r) => Formula::or(r.negate(), l.negate()),
            Formula::Or(l, r) => Formula::and(r.negate(), l.negate()),
        }
    }

    pub fn at(&self, path: &Path) -> Option<&Formula> {
        let mut cur = self;
        for d in path.steps() {
            let (l, r) = cur.children()?;
            cur = if d == Dir::L { l } else { r };
        }
        Some(cur)
    }

    /// Leaves in left-to-right depth-first order.
    pub fn leaves(&self) -> Vec<(Path, Label)> {
        let mut out = Vec::new();
        self.collect_leaves(Path::ROOT, &mut out);
        out
    }

    fn collect_leaves(&self, here: Path, out: &mut Vec<(Path, Label)>) {
        match self {
            Formula::And(l, r) | Formula::Or(l, r) => {
                l.collect_leaves(here.child(Dir::L), out);
                r.collect_leaves(here.child(Dir::R), out);
            }
            leaf => out.push((here, leaf.label().expect("leaf"))),
        }
    }

    /// Paths of all conjunction nodes, pre-order.
    pub fn and_nodes(&self) -> Vec<Path> {
        let mut out = Vec::new();
        self.collect_ands(Path::ROOT, &mut out);
        out
    }

    fn collect_ands(&self, here: Path, out: &mut Vec<Path>) {
        if let Formula::And(..) = self {
            out.push(here);
        }
        if let Some((l, r)) = self.children() {
            l.collect_ands(here.child(Dir::L), out);
            r.collect_ands(here.child(Dir::R), out);
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self.children() {
            Some((l, r)) => l.leaf_count() + r.leaf_count(),
            None => 1,
        }
    }

    pub fn depth(&self) -> usize {
        match self.children() {
            Some((l, r)) => 1 + l.depth().max(r.depth()),
            None => 0,
        }
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        self.leaves().into_iter().filter_map(|(_, l)| l.atom().map(str::to_string)).collect()
    }

    /// Classical truth value under `val`; atoms missing from `val` read as false.
    pub fn eval(&self, val: &dyn Fn(&str) -> bool) -> bool {
        match self {
            Formula::Atom(a) => val(a),
            Formula::NegAtom(a) => !val(a),
            Formula::Top => true,
            Formula::Bot => false,
            Formula::And(l, r) => l.eval(val) && r.eval(val),
            Formula::Or(l, r) => l.eval(val) || r.eval(val),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn child(f: &mut fmt::Formatter<'_>, c: &Formula) -> fmt::Result {
            if c.is_leaf() {
                write!(f, "{c}")
            } else {
                write!(f, "({c})")
            }
        }
        match self {
            Formula::And(l, r) => {
                child(f, l)?;
                f.write_str(" & ")?;
                child(f, r)
            }
            Formula::Or(l, r) => {
                child(f, l)?;
                f.write_str(" | ")?;
                child(f, r)
            }
            leaf => write!(f, "{}", leaf.label().expect("leaf")),
        }
    }
}

impl FromStr for Formula {
    type Err = FormulaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_formula(s)
    }
}

pub fn is_atom_name(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_lowercase())
        && cs.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_')
        && s != "t"
        && s != "f"
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err<T>(&self, pos: usize, msg: impl Into<String>) -> Result<T, FormulaError> {
        Err(FormulaError::Syntax { pos, msg: msg.into() })
    }

    fn ident(&mut self) -> Option<(usize, String)> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        (self.pos > start)
            .then(|| (start, String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()))
    }

    fn disjunction(&mut self) -> Result<Formula, FormulaError> {
        let l = self.conjunction()?;
        if self.peek() != Some(b'|') {
            return Ok(l);
        }
        self.pos += 1;
        let r = self.conjunction()?;
        if self.peek() == Some(b'|') {
            return self.err(self.pos, "chained `|` is ambiguous; add parentheses");
        }
        Ok(Formula::or(l, r))
    }

    fn conjunction(&mut self) -> Result<Formula, FormulaError> {
        let l = self.unary()?;
        if self.peek() != Some(b'&') {
            return Ok(l);
        }
        self.pos += 1;
        let r = self.unary()?;
        if self.peek() == Some(b'&') {
            return self.err(self.pos, "chained `&` is ambiguous; add parentheses");
        }
        Ok(Formula::and(l, r))
    }

    fn unary(&mut self) -> Result<Formula, FormulaError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.disjunction()?;
                if self.peek() != Some(b')') {
                    return self.err(self.pos, "expected `)`");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'~') => {
                let at = self.pos;
                self.pos += 1;
                match self.ident() {
                    Some((_, name)) if is_atom_name(&name) => Ok(Formula::NegAtom(name)),
                    _ => self.err(at, "`~` applies only to atoms"),
                }
            }
            Some(_) => match self.ident() {
                Some((_, name)) if name == "t" => Ok(Formula::Top),
                Some((_, name)) if name == "f" => Ok(Formula::Bot),
                Some((_, name)) if is_atom_name(&name) => Ok(Formula::Atom(name)),
                Some((at, name)) => self.err(at, format!("`{name}` is not an atom name")),
                None => self.err(self.pos, "expected a formula"),
            },
            None => self.err(self.pos, "unexpected end of input"),
        }
    }
}

/// Parses the concrete syntax: `&` binds tighter than `|`, `~` only before
/// atoms, `t` and `f` are the units. Chains of one operator must be
/// parenthesised because net shapes depend on the tree shape.
pub fn parse_formula(text: &str) -> Result<Formula, FormulaError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let f = p.disjunction()?;
    if let Some(c) = p.peek() {
        return p.err(p.pos, format!("unexpected `{}`", c as char));
    }
    Ok(f)
}

/// A finite, ordered, non-empty list of formulas.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sequent(pub Vec<Formula>);

impl Sequent {
    pub fn new(formulas: Vec<Formula>) -> Sequent {
        assert!(!formulas.is_empty(), "a sequent has at least one formula");
        Sequent(formulas)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn formulas(&self) -> &[Formula] {
        &self.0
    }

    pub fn leaves(&self) -> Vec<(LeafRef, Label)> {
        let mut out = Vec::new();
        for (i, f) in self.0.iter().enumerate() {
            out.extend(f.leaves().into_iter().map(|(path, l)| (LeafRef { i, path }, l)));
        }
        out
    }

    pub fn label(&self, leaf: &LeafRef) -> Option<Label> {
        self.0.get(leaf.i)?.at(&leaf.path)?.label()
    }

    pub fn and_nodes(&self) -> Vec<LeafRef> {
        let mut out = Vec::new();
        for (i, f) in self.0.iter().enumerate() {
            out.extend(f.and_nodes().into_iter().map(|path| LeafRef { i, path }));
        }
        out
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, g) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// Parses a comma-separated list of formulas.
pub fn parse_sequent(text: &str) -> Result<Sequent, FormulaError> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (k, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push((start, &text[start..k]));
                start = k + 1;
            }
            _ => {}
        }
    }
    parts.push((start, &text[start..]));
    let mut out = Vec::new();
    for (offset, part) in parts {
        out.push(parse_formula(part).map_err(|e| e.shifted(offset))?);
    }
    Ok(Sequent(out))
}

/// A leaf position: formula index and root path. Also used for inner nodes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LeafRef {
    pub i: usize,
    pub path: Path,
}

impl LeafRef {
    pub fn new(i: usize, path: Path) -> LeafRef {
        LeafRef { i, path }
    }

    /// Convenience constructor; panics on a malformed path string.
    pub fn at(i: usize, path: &str) -> LeafRef {
        LeafRef { i, path: path.parse().expect("path over L/R") }
    }
}

impl fmt::Display for LeafRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.i, self.path)
    }
}

impl Serialize for Formula {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Formula::And(l, r) | Formula::Or(l, r) => {
                let tag = if matches!(self, Formula::And(..)) { "and" } else { "or" };
                let mut seq = s.serialize_seq(Some(3))?;
                seq.serialize_element(tag)?;
                seq.serialize_element(l.as_ref())?;
                seq.serialize_element(r.as_ref())?;
                seq.end()
            }
            leaf => s.collect_str(&leaf.label().expect("leaf")),
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum FormulaRepr {
    Leaf(String),
    Node(String, Box<FormulaRepr>, Box<FormulaRepr>),
}

impl FormulaRepr {
    fn build(self) -> Result<Formula, String> {
        match self {
            FormulaRepr::Leaf(s) => match s.as_str() {
                "t" => Ok(Formula::Top),
                "f" => Ok(Formula::Bot),
                _ => match s.strip_prefix('~') {
                    Some(a) if is_atom_name(a) => Ok(Formula::NegAtom(a.to_string())),
                    None if is_atom_name(&s) => Ok(Formula::Atom(s)),
                    _ => Err(format!("`{s}` is not a literal")),
                },
            },
            FormulaRepr::Node(tag, l, r) => {
                let (l, r) = (l.build()?, r.build()?);
                match tag.as_str() {
                    "and" => Ok(Formula::and(l, r)),
                    "or" => Ok(Formula::or(l, r)),
                    _ => Err(format!("unknown connective `{tag}`")),
                }
            }
        }
    }
}

impl<'de> Deserialize<'de> for Formula {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        FormulaRepr::deserialize(d)?.build().map_err(de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn parses_literal_conjunction() {
        assert_eq!(f("~b & a"), Formula::and(Formula::neg_atom("b"), Formula::atom("a")));
        assert_eq!(f("t"), Formula::Top);
        assert_eq!(f("f"), Formula::Bot);
    }

    #[test]
    fn and_binds_tighter_than_or() {
        assert_eq!(
            f("a | b & c"),
            Formula::or(Formula::atom("a"), Formula::and(Formula::atom("b"), Formula::atom("c")))
        );
    }

    #[test]
    fn rejects_negated_compound_and_chains() {
        assert!(matches!(parse_formula("~(a & b)"), Err(FormulaError::Syntax { pos: 0, .. })));
        assert!(parse_formula("~t").is_err());
        assert!(parse_formula("a & b & c").is_err());
        assert!(parse_formula("a | b | c").is_err());
        assert!(parse_formula("(a & b").is_err());
        assert!(parse_formula("a b").is_err());
        assert!(parse_formula("A").is_err());
    }

    #[test]
    fn negation_reverses_and_dualises() {
        assert_eq!(
            Formula::and(Formula::atom("a"), Formula::Top).negate(),
            Formula::or(Formula::Bot, Formula::neg_atom("a"))
        );
        assert_eq!(f("(a|b)&~c").negate().to_string(), "c | (~b & ~a)");
    }

    #[test]
    fn mirrored_path_finds_the_negated_leaf() {
        let a = f("(a & ~b) | (t & c)");
        let na = a.negate();
        for (p, l) in a.leaves() {
            assert_eq!(na.at(&p.mirror()).unwrap().label().unwrap(), l.negate());
        }
    }

    #[test]
    fn eight_leaves_in_order() {
        let s = parse_sequent("~b & a, ~a & ~b, b & a, ~a & b").unwrap();
        let labels: Vec<String> = s.leaves().iter().map(|(_, l)| l.to_string()).collect();
        assert_eq!(labels, ["~b", "a", "~a", "~b", "b", "a", "~a", "b"]);
        assert_eq!(parse_sequent("t").unwrap().leaves().len(), 1);
    }

    #[test]
    fn path_algebra() {
        let p: Path = "LRR".parse().unwrap();
        assert_eq!(p.to_string(), "LRR");
        assert_eq!(p.mirror().to_string(), "RLL");
        assert_eq!(p.under(Dir::R).to_string(), "RLRR");
        assert_eq!(p.child(Dir::L).to_string(), "LRRL");
        assert_eq!(p.tail().to_string(), "RR");
        let q: Path = "LR".parse().unwrap();
        assert_eq!(p.strip_prefix(&q).unwrap().to_string(), "R");
        assert!(p.strip_prefix(&"R".parse().unwrap()).is_none());
        assert_eq!(q.join(&p).to_string(), "LRLRR");
        assert!(Path::ROOT < p && q < p);
    }

    #[test]
    fn json_shape() {
        let g = f("(a | ~b) & t");
        let v = serde_json::to_value(&g).unwrap();
        assert_eq!(v, serde_json::json!(["and", ["or", "a", "~b"], "t"]));
        let back: Formula = serde_json::from_value(v).unwrap();
        assert_eq!(back, g);
        assert!(serde_json::from_str::<Formula>(r#"["xor","a","b"]"#).is_err());
    }

    /// Independent printer: fully parenthesised, then normalised the same way.
    fn oracle_print(g: &Formula) -> String {
        fn go(g: &Formula, top: bool) -> String {
            let s = match g {
                Formula::Atom(a) => return a.clone(),
                Formula::NegAtom(a) => return format!("~{a}"),
                Formula::Top => return "t".into(),
                Formula::Bot => return "f".into(),
                Formula::And(l, r) => format!("{} & {}", go(l, false), go(r, false)),
                Formula::Or(l, r) => format!("{} | {}", go(l, false), go(r, false)),
            };
            if top {
                s
            } else {
                format!("({s})")
            }
        }
        go(g, true)
    }

    fn count_leaves(g: &Formula) -> usize {
        match g {
            Formula::And(l, r) | Formula::Or(l, r) => count_leaves(l) + count_leaves(r),
            _ => 1,
        }
    }

    pub(crate) fn arb_formula(depth: u32) -> impl Strategy<Value = Formula> {
        let leaf = prop_oneof![
            prop::sample::select(vec!["a", "b", "c"]).prop_map(Formula::atom),
            prop::sample::select(vec!["a", "b", "c"]).prop_map(Formula::neg_atom),
            Just(Formula::Top),
            Just(Formula::Bot),
        ];
        leaf.prop_recursive(depth, 64, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::and(l, r)),
                (inner.clone(), inner).prop_map(|(l, r)| Formula::or(l, r)),
            ]
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn print_parse_round_trip(g in arb_formula(6)) {
            let text = g.to_string();
            prop_assert_eq!(&text, &oracle_print(&g));
            prop_assert_eq!(parse_formula(&text).unwrap(), g);
        }

        #[test]
        fn negate_is_an_involution(g in arb_formula(6)) {
            prop_assert_eq!(g.negate().negate(), g);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn leaves_are_a_bijection(gs in prop::collection::vec(arb_formula(4), 1..4)) {
            let s = Sequent::new(gs.clone());
            let leaves = s.leaves();
            prop_assert_eq!(leaves.len(), gs.iter().map(count_leaves).sum::<usize>());
            let distinct: BTreeSet<_> = leaves.iter().map(|(r, _)| *r).collect();
            prop_assert_eq!(distinct.len(), leaves.len());
            for (r, l) in &leaves {
                prop_assert_eq!(s.label(r), Some(l.clone()));
            }
        }
    }
}
