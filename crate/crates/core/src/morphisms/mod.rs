//! Maps between formulas as nets, and the term language that names them.
//!
//! A map `A -> B` is a net over the two-formula sequent `(~A, B)`.
//! Composition cuts the target of the earlier map against the source of the
//! later one; the tensors juxtapose; transposition only rehouses leaves.

pub mod expr;
pub mod generators;
pub mod iso;
pub mod sexp;
pub mod term;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{ElabError, NetError};
use crate::extended_net::ExtendedNet;
use crate::formula::{Dir, Formula, LeafRef, Sequent};
use crate::simple_net::SimpleNet;

pub use expr::{MorphismExpr, TransposeDir};
pub use generators::{GenKind, Generator, SwitchVariant};

/// The two concrete categories.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Category {
    SNet,
    ENet,
}

impl Category {
    pub fn name(self) -> &'static str {
        match self {
            Category::SNet => "snet",
            Category::ENet => "enet",
        }
    }
}

impl FromStr for Category {
    type Err = String;

    fn from_str(s: &str) -> Result<Category, String> {
        match s.to_ascii_lowercase().as_str() {
            "snet" => Ok(Category::SNet),
            "enet" => Ok(Category::ENet),
            _ => Err(format!("unknown category `{s}` (expected snet or enet)")),
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// What elaboration needs from a kind of net.
pub trait Net: Clone + fmt::Debug + Send + Sync + Sized {
    fn lift(n: &SimpleNet) -> Self;
    fn sequent(&self) -> &Sequent;
    fn cut(&self, i: usize, other: &Self, j: usize) -> Result<Self, NetError>;
    fn juxtapose_and(&self, g: &Self) -> Result<Self, NetError>;
    fn juxtapose_or(&self, g: &Self) -> Result<Self, NetError>;
    fn relocate(&self, sequent: Sequent, map: &dyn Fn(LeafRef) -> LeafRef) -> Self;
    fn same(&self, other: &Self) -> bool;
}

impl Net for SimpleNet {
    fn lift(n: &SimpleNet) -> Self {
        n.clone()
    }
    fn sequent(&self) -> &Sequent {
        SimpleNet::sequent(self)
    }
    fn cut(&self, i: usize, other: &Self, j: usize) -> Result<Self, NetError> {
        SimpleNet::cut(self, i, other, j)
    }
    fn juxtapose_and(&self, g: &Self) -> Result<Self, NetError> {
        SimpleNet::juxtapose_and(self, g)
    }
    fn juxtapose_or(&self, g: &Self) -> Result<Self, NetError> {
        SimpleNet::juxtapose_or(self, g)
    }
    fn relocate(&self, sequent: Sequent, map: &dyn Fn(LeafRef) -> LeafRef) -> Self {
        SimpleNet::relocate(self, sequent, map)
    }
    fn same(&self, other: &Self) -> bool {
        self.equal(other)
    }
}

impl Net for ExtendedNet {
    fn lift(n: &SimpleNet) -> Self {
        ExtendedNet::from_simple(n)
    }
    fn sequent(&self) -> &Sequent {
        ExtendedNet::sequent(self)
    }
    fn cut(&self, i: usize, other: &Self, j: usize) -> Result<Self, NetError> {
        ExtendedNet::cut(self, i, other, j)
    }
    fn juxtapose_and(&self, g: &Self) -> Result<Self, NetError> {
        ExtendedNet::juxtapose_and(self, g)
    }
    fn juxtapose_or(&self, g: &Self) -> Result<Self, NetError> {
        ExtendedNet::juxtapose_or(self, g)
    }
    fn relocate(&self, sequent: Sequent, map: &dyn Fn(LeafRef) -> LeafRef) -> Self {
        ExtendedNet::relocate(self, sequent, map)
    }
    fn same(&self, other: &Self) -> bool {
        self.equal(other)
    }
}

/// A map `source -> target`; the net lives on `(~source, target)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hom<N> {
    pub source: Formula,
    pub target: Formula,
    pub net: N,
}

impl<N: Net> Hom<N> {
    pub fn new(source: Formula, target: Formula, net: N) -> Result<Hom<N>, ElabError> {
        let expected = Sequent::new(vec![source.negate(), target.clone()]);
        if *net.sequent() != expected {
            return Err(ElabError::Shape(format!(
                "net sequent `{}` does not match `{expected}`",
                net.sequent()
            )));
        }
        Ok(Hom { source, target, net })
    }

    /// Reads a two-formula net as a map from the negated first formula.
    pub fn from_net(net: N) -> Result<Hom<N>, ElabError> {
        let s = net.sequent();
        if s.len() != 2 {
            return Err(NetError::Arity { found: s.len() }.into());
        }
        let (source, target) = (s.formulas()[0].negate(), s.formulas()[1].clone());
        Ok(Hom { source, target, net })
    }

    pub fn lift(h: &Hom<SimpleNet>) -> Hom<N> {
        Hom { source: h.source.clone(), target: h.target.clone(), net: N::lift(&h.net) }
    }

    /// `self ∘ earlier`.
    pub fn after(&self, earlier: &Hom<N>) -> Result<Hom<N>, ElabError> {
        if earlier.target != self.source {
            return Err(ElabError::Type {
                context: "composition".into(),
                expected: earlier.target.clone(),
                found: self.source.clone(),
            });
        }
        let net = earlier.net.cut(1, &self.net, 0)?;
        Ok(Hom { source: earlier.source.clone(), target: self.target.clone(), net })
    }

    pub fn tensor_and(&self, g: &Hom<N>) -> Result<Hom<N>, ElabError> {
        Ok(Hom {
            source: Formula::and(self.source.clone(), g.source.clone()),
            target: Formula::and(self.target.clone(), g.target.clone()),
            net: self.net.juxtapose_and(&g.net)?,
        })
    }

    pub fn tensor_or(&self, g: &Hom<N>) -> Result<Hom<N>, ElabError> {
        Ok(Hom {
            source: Formula::or(self.source.clone(), g.source.clone()),
            target: Formula::or(self.target.clone(), g.target.clone()),
            net: self.net.juxtapose_or(&g.net)?,
        })
    }

    /// Rehouses every link under the canonical leaf bijection; link
    /// directions never change.
    pub fn transpose(&self, dir: TransposeDir) -> Result<Hom<N>, ElabError> {
        let (source, target) =
            expr::transposed_type(dir, (self.source.clone(), self.target.clone()))?;
        let sequent = Sequent::new(vec![source.negate(), target.clone()]);
        let map: Box<dyn Fn(LeafRef) -> LeafRef> = match dir {
            // (~B | ~A, C) -> (~A, ~B | C)
            TransposeDir::Curry => Box::new(|l: LeafRef| match (l.i, l.path.first()) {
                (0, Some(Dir::L)) => LeafRef::new(1, l.path),
                (0, _) => LeafRef::new(0, l.path.tail()),
                _ => LeafRef::new(1, l.path.under(Dir::R)),
            }),
            // (~A, D | C) -> (D | ~A, C)
            TransposeDir::Uncurry => Box::new(|l: LeafRef| match (l.i, l.path.first()) {
                (1, Some(Dir::L)) => LeafRef::new(0, l.path),
                (1, _) => LeafRef::new(1, l.path.tail()),
                _ => LeafRef::new(0, l.path.under(Dir::R)),
            }),
            TransposeDir::Dual => Box::new(|l: LeafRef| LeafRef::new(1 - l.i, l.path)),
        };
        Ok(Hom { source, target, net: self.net.relocate(sequent, &map) })
    }

    pub fn same(&self, other: &Hom<N>) -> bool {
        self.source == other.source && self.target == other.target && self.net.same(&other.net)
    }

    /// `codiag ∘ (self | g) ∘ mix ∘ diag`, the sum of two parallel maps.
    pub fn plus(&self, g: &Hom<N>) -> Result<Hom<N>, ElabError> {
        for (expected, found) in [(&self.source, &g.source), (&self.target, &g.target)] {
            if expected != found {
                return Err(ElabError::Type { context: "sum".into(), expected: expected.clone(), found: found.clone() });
            }
        }
        let (a, b) = (&self.source, &self.target);
        let gen = |k: GenKind, ps: Vec<Formula>| elaborate::<N>(&MorphismExpr::gen(k, ps));
        let spread = gen(GenKind::Mix, vec![a.clone(), a.clone()])?.after(&gen(GenKind::Diag, vec![a.clone()])?)?;
        gen(GenKind::Codiag, vec![b.clone()])?.after(&self.tensor_or(g)?.after(&spread)?)
    }
}

/// Interprets an expression in the category of `N`.
pub fn elaborate<N: Net>(e: &MorphismExpr) -> Result<Hom<N>, ElabError> {
    use MorphismExpr as M;
    match e {
        M::Gen(g) => match g.primitive_net() {
            Some(net) => {
                let (source, target) = g.signature();
                Ok(Hom { source, target, net: N::lift(&net) })
            }
            None => elaborate(&g.expansion().expect("derived generators have expansions")),
        },
        M::Compose(later, earlier) => {
            let f = elaborate::<N>(earlier)?;
            let g = elaborate::<N>(later)?;
            g.after(&f)
        }
        M::TensorAnd(l, r) => elaborate::<N>(l)?.tensor_and(&elaborate(r)?),
        M::TensorOr(l, r) => elaborate::<N>(l)?.tensor_or(&elaborate(r)?),
        M::Transpose(dir, inner) => elaborate::<N>(inner)?.transpose(*dir),
        M::Sum(..) | M::Pair(..) | M::Copair(..) => elaborate(&e.derived()?.expect("derived form")),
        M::Literal(h) => Ok(Hom::lift(h)),
        M::Canon { source, target, bundles } => {
            let net = generators::bundle_net(source, target, bundles)?;
            if !net.is_correct_uncapped()? {
                return Err(ElabError::NotCorrect {
                    name: e.to_string(),
                    reason: "some conjunctive pruning keeps no link".into(),
                });
            }
            Ok(Hom { source: source.clone(), target: target.clone(), net: N::lift(&net) })
        }
    }
}

pub fn elaborate_in(e: &MorphismExpr, cat: Category) -> Result<AnyHom, ElabError> {
    Ok(match cat {
        Category::SNet => AnyHom::Simple(elaborate(e)?),
        Category::ENet => AnyHom::Extended(elaborate(e)?),
    })
}

/// A map in either category.
#[derive(Clone, Debug)]
pub enum AnyHom {
    Simple(Hom<SimpleNet>),
    Extended(Hom<ExtendedNet>),
}

impl AnyHom {
    pub fn same(&self, other: &AnyHom) -> bool {
        match (self, other) {
            (AnyHom::Simple(a), AnyHom::Simple(b)) => a.same(b),
            (AnyHom::Extended(a), AnyHom::Extended(b)) => a.same(b),
            _ => false,
        }
    }

    pub fn source(&self) -> &Formula {
        match self {
            AnyHom::Simple(h) => &h.source,
            AnyHom::Extended(h) => &h.source,
        }
    }

    pub fn target(&self) -> &Formula {
        match self {
            AnyHom::Simple(h) => &h.target,
            AnyHom::Extended(h) => &h.target,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morphisms::term::{parse_term, Binding};

    fn hom<N: Net>(text: &str) -> Hom<N> {
        elaborate(&parse_term(text).unwrap().bind(&Binding::new()).unwrap()).unwrap()
    }

    #[test]
    fn plus_matches_the_elaborated_sum() {
        let (f, g) = ("(comp (coprojl a a) (projl a a))", "(mix a a)");
        let s: Hom<SimpleNet> = hom(&format!("(sum {f} {g})"));
        assert!(hom::<SimpleNet>(f).plus(&hom(g)).unwrap().same(&s));
        let e: Hom<ExtendedNet> = hom(&format!("(sum {f} {g})"));
        assert!(hom::<ExtendedNet>(f).plus(&hom(g)).unwrap().same(&e));
        assert!(hom::<SimpleNet>("(id a)").plus(&hom("(id b)")).is_err());
    }
}
