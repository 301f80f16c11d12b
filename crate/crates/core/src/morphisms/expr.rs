//! Closed morphism expressions over concrete formulas.

use std::fmt;
use std::sync::Arc;

use crate::error::ElabError;
use crate::formula::{Formula, Path};
use crate::morphisms::generators::{GenKind, Generator};
use crate::morphisms::Hom;
use crate::simple_net::SimpleNet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TransposeDir {
    /// `A & B -> C` becomes `A -> ~B | C`.
    Curry,
    /// `A -> ~B | C` becomes `A & B -> C`.
    Uncurry,
    /// `A -> B` becomes `~B -> ~A`.
    Dual,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MorphismExpr {
    Gen(Generator),
    /// `Compose(later, earlier)`.
    Compose(Box<MorphismExpr>, Box<MorphismExpr>),
    TensorAnd(Box<MorphismExpr>, Box<MorphismExpr>),
    TensorOr(Box<MorphismExpr>, Box<MorphismExpr>),
    Transpose(TransposeDir, Box<MorphismExpr>),
    /// `f + g`, elaborated as `codiag ∘ (f | g) ∘ mix ∘ diag`.
    Sum(Box<MorphismExpr>, Box<MorphismExpr>),
    /// `<f, g> = (f & g) ∘ diag`.
    Pair(Box<MorphismExpr>, Box<MorphismExpr>),
    /// `[f, h] = codiag ∘ (f | h)`.
    Copair(Box<MorphismExpr>, Box<MorphismExpr>),
    /// A given net, e.g. a sampled value of a morphism variable.
    Literal(Arc<Hom<SimpleNet>>),
    /// Straight bundles between equal subformula occurrences. Must be correct.
    Canon { source: Formula, target: Formula, bundles: Vec<(Path, Path)> },
}

impl MorphismExpr {
    pub fn gen(kind: GenKind, params: Vec<Formula>) -> MorphismExpr {
        MorphismExpr::Gen(Generator::new(kind, params).expect("static generator arity"))
    }

    pub fn id(a: &Formula) -> MorphismExpr {
        MorphismExpr::gen(GenKind::Id, vec![a.clone()])
    }

    /// `comp([e1, ..., en]) = e1 ∘ ... ∘ en`.
    pub fn comp(mut parts: Vec<MorphismExpr>) -> MorphismExpr {
        assert!(!parts.is_empty(), "empty composite");
        let mut acc = parts.pop().expect("non-empty");
        while let Some(later) = parts.pop() {
            acc = MorphismExpr::Compose(Box::new(later), Box::new(acc));
        }
        acc
    }

    pub fn and(l: MorphismExpr, r: MorphismExpr) -> MorphismExpr {
        MorphismExpr::TensorAnd(Box::new(l), Box::new(r))
    }

    pub fn or(l: MorphismExpr, r: MorphismExpr) -> MorphismExpr {
        MorphismExpr::TensorOr(Box::new(l), Box::new(r))
    }

    pub fn transpose(dir: TransposeDir, e: MorphismExpr) -> MorphismExpr {
        MorphismExpr::Transpose(dir, Box::new(e))
    }

    pub fn sum(l: MorphismExpr, r: MorphismExpr) -> MorphismExpr {
        MorphismExpr::Sum(Box::new(l), Box::new(r))
    }

    /// Source and target, checked bottom-up without building nets.
    pub fn typ(&self) -> Result<(Formula, Formula), ElabError> {
        use MorphismExpr::*;
        match self {
            Gen(g) => Ok(g.signature()),
            Compose(later, earlier) => {
                let (a, b) = earlier.typ()?;
                let (b2, c) = later.typ()?;
                if b != b2 {
                    return Err(ElabError::Type { context: "composition".into(), expected: b, found: b2 });
                }
                Ok((a, c))
            }
            TensorAnd(l, r) => {
                let ((a, b), (c, d)) = (l.typ()?, r.typ()?);
                Ok((Formula::and(a, c), Formula::and(b, d)))
            }
            TensorOr(l, r) => {
                let ((a, b), (c, d)) = (l.typ()?, r.typ()?);
                Ok((Formula::or(a, c), Formula::or(b, d)))
            }
            Transpose(dir, e) => transposed_type(*dir, e.typ()?),
            Sum(l, r) => {
                let (lt, rt) = (l.typ()?, r.typ()?);
                if lt != rt {
                    let (expected, found) = if lt.0 != rt.0 { (lt.0, rt.0) } else { (lt.1, rt.1) };
                    return Err(ElabError::Type { context: "sum".into(), expected, found });
                }
                Ok(lt)
            }
            Pair(l, r) => {
                let ((a, b), (a2, c)) = (l.typ()?, r.typ()?);
                if a != a2 {
                    return Err(ElabError::Type { context: "pairing".into(), expected: a, found: a2 });
                }
                Ok((a, Formula::and(b, c)))
            }
            Copair(l, r) => {
                let ((a, c), (b, c2)) = (l.typ()?, r.typ()?);
                if c != c2 {
                    return Err(ElabError::Type { context: "copairing".into(), expected: c, found: c2 });
                }
                Ok((Formula::or(a, b), c))
            }
            Literal(h) => Ok((h.source.clone(), h.target.clone())),
            Canon { source, target, .. } => Ok((source.clone(), target.clone())),
        }
    }

    /// The categorical definition of a derived form, given operand types.
    pub(crate) fn derived(&self) -> Result<Option<MorphismExpr>, ElabError> {
        use MorphismExpr as M;
        Ok(Some(match self {
            M::Sum(l, r) => {
                let (a, b) = self.typ()?;
                M::comp(vec![
                    M::gen(GenKind::Codiag, vec![b]),
                    M::or((**l).clone(), (**r).clone()),
                    M::gen(GenKind::Mix, vec![a.clone(), a.clone()]),
                    M::gen(GenKind::Diag, vec![a]),
                ])
            }
            M::Pair(l, r) => {
                let (a, _) = l.typ()?;
                M::comp(vec![M::and((**l).clone(), (**r).clone()), M::gen(GenKind::Diag, vec![a])])
            }
            M::Copair(l, r) => {
                let (_, c) = self.typ()?;
                M::comp(vec![M::gen(GenKind::Codiag, vec![c]), M::or((**l).clone(), (**r).clone())])
            }
            _ => return Ok(None),
        }))
    }
}

pub(crate) fn transposed_type(dir: TransposeDir, (a, b): (Formula, Formula)) -> Result<(Formula, Formula), ElabError> {
    match dir {
        TransposeDir::Curry => match a {
            Formula::And(x, y) => Ok((*x, Formula::or(y.negate(), b))),
            other => Err(ElabError::Shape(format!("curry needs a conjunctive source, got `{other}`"))),
        },
        TransposeDir::Uncurry => match b {
            Formula::Or(x, y) => Ok((Formula::and(a, x.negate()), *y)),
            other => Err(ElabError::Shape(format!("uncurry needs a disjunctive target, got `{other}`"))),
        },
        TransposeDir::Dual => Ok((b.negate(), a.negate())),
    }
}

impl fmt::Display for MorphismExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use crate::morphisms::term::formula_sexp as fx;
        use MorphismExpr::*;
        match self {
            Gen(g) => write!(f, "{g}"),
            Compose(l, r) => write!(f, "(comp {l} {r})"),
            TensorAnd(l, r) => write!(f, "(and {l} {r})"),
            TensorOr(l, r) => write!(f, "(or {l} {r})"),
            Transpose(TransposeDir::Curry, e) => write!(f, "(curry {e})"),
            Transpose(TransposeDir::Uncurry, e) => write!(f, "(uncurry {e})"),
            Transpose(TransposeDir::Dual, e) => write!(f, "(dual {e})"),
            Sum(l, r) => write!(f, "(sum {l} {r})"),
            Pair(l, r) => write!(f, "(pair {l} {r})"),
            Copair(l, r) => write!(f, "(copair {l} {r})"),
            Literal(h) => write!(f, "<net {} -> {}>", fx(&h.source), fx(&h.target)),
            Canon { source, target, .. } => write!(f, "(canon {} {})", fx(source), fx(target)),
        }
    }
}
