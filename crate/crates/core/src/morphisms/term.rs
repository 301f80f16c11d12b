//! Open terms: object and morphism expressions with variables, as written in
//! the equation catalog and in `.mexp` files. Binding the variables yields a
//! closed [`MorphismExpr`].

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{ElabError, SexpError};
use crate::formula::{is_atom_name, Formula, Path};
use crate::morphisms::expr::{MorphismExpr, TransposeDir};
use crate::morphisms::generators::{GenKind, Generator};
use crate::morphisms::iso;
use crate::morphisms::sexp::{self, Sexp};
use crate::morphisms::Hom;
use crate::simple_net::SimpleNet;

/// Renders a formula in the S-expression object syntax.
pub fn formula_sexp(f: &Formula) -> String {
    match f {
        Formula::And(l, r) => format!("(and {} {})", formula_sexp(l), formula_sexp(r)),
        Formula::Or(l, r) => format!("(or {} {})", formula_sexp(l), formula_sexp(r)),
        leaf => leaf.to_string(),
    }
}

/// An object term. Negation is kept on variables and leaves only.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Obj {
    Var(String),
    NegVar(String),
    /// A leaf formula: atom, negated atom, `t` or `f`.
    Lit(Formula),
    And(Box<Obj>, Box<Obj>),
    Or(Box<Obj>, Box<Obj>),
}

impl Obj {
    pub fn var(name: &str) -> Obj {
        Obj::Var(name.to_string())
    }

    pub fn and(l: Obj, r: Obj) -> Obj {
        Obj::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Obj, r: Obj) -> Obj {
        Obj::Or(Box::new(l), Box::new(r))
    }

    pub fn negate(&self) -> Obj {
        match self {
            Obj::Var(v) => Obj::NegVar(v.clone()),
            Obj::NegVar(v) => Obj::Var(v.clone()),
            Obj::Lit(f) => Obj::Lit(f.negate()),
            Obj::And(l, r) => Obj::or(r.negate(), l.negate()),
            Obj::Or(l, r) => Obj::and(r.negate(), l.negate()),
        }
    }

    /// Embeds a closed formula.
    pub fn from_formula(f: &Formula) -> Obj {
        match f {
            Formula::And(l, r) => Obj::and(Obj::from_formula(l), Obj::from_formula(r)),
            Formula::Or(l, r) => Obj::or(Obj::from_formula(l), Obj::from_formula(r)),
            leaf => Obj::Lit(leaf.clone()),
        }
    }

    pub fn bind(&self, objects: &BTreeMap<String, Formula>) -> Result<Formula, ElabError> {
        Ok(match self {
            Obj::Var(v) => objects.get(v).cloned().ok_or_else(|| ElabError::Unbound(v.clone()))?,
            Obj::NegVar(v) => objects.get(v).ok_or_else(|| ElabError::Unbound(v.clone()))?.negate(),
            Obj::Lit(f) => f.clone(),
            Obj::And(l, r) => Formula::and(l.bind(objects)?, r.bind(objects)?),
            Obj::Or(l, r) => Formula::or(l.bind(objects)?, r.bind(objects)?),
        })
    }

    pub fn vars(&self, out: &mut Vec<String>) {
        match self {
            Obj::Var(v) | Obj::NegVar(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Obj::Lit(_) => {}
            Obj::And(l, r) | Obj::Or(l, r) => {
                l.vars(out);
                r.vars(out);
            }
        }
    }

    /// Maximal non-connective subterms with their paths, left to right.
    pub fn units(&self) -> Vec<(Path, &Obj)> {
        fn go<'a>(o: &'a Obj, p: Path, out: &mut Vec<(Path, &'a Obj)>) {
            match o {
                Obj::And(l, r) | Obj::Or(l, r) => {
                    go(l, p.child(crate::formula::Dir::L), out);
                    go(r, p.child(crate::formula::Dir::R), out);
                }
                unit => out.push((p, unit)),
            }
        }
        let mut out = Vec::new();
        go(self, Path::ROOT, &mut out);
        out
    }

    pub fn parse(x: &Sexp) -> Result<Obj, SexpError> {
        match x {
            Sexp::Sym { name, .. } => {
                let name = name.as_str();
                if is_object_var(name) {
                    Ok(Obj::Var(name.to_string()))
                } else if name == "t" {
                    Ok(Obj::Lit(Formula::Top))
                } else if name == "f" {
                    Ok(Obj::Lit(Formula::Bot))
                } else if let Some(a) = name.strip_prefix('~').filter(|a| is_atom_name(a)) {
                    Ok(Obj::Lit(Formula::neg_atom(a)))
                } else if is_atom_name(name) {
                    Ok(Obj::Lit(Formula::atom(name)))
                } else {
                    Err(x.error(format!("`{name}` is not an object")))
                }
            }
            Sexp::List { items, .. } => match (x.head(), items.len()) {
                // `(and A B C)` is `(and A (and B C))`.
                (Some(op @ ("and" | "or")), n) if n >= 3 => {
                    let parts = items[1..].iter().map(Obj::parse).collect::<Result<Vec<_>, _>>()?;
                    let join = if op == "and" { Obj::and } else { Obj::or };
                    Ok(parts.into_iter().rev().reduce(|acc, x| join(x, acc)).expect("two or more parts"))
                }
                (Some("not"), 2) => Ok(Obj::parse(&items[1])?.negate()),
                _ => Err(x.error(format!("`{x}` is not an object"))),
            },
        }
    }
}

/// Object variables start with an uppercase letter; primes and digits may follow.
pub fn is_object_var(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_uppercase())
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

impl fmt::Display for Obj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obj::Var(v) => f.write_str(v),
            Obj::NegVar(v) => write!(f, "(not {v})"),
            Obj::Lit(x) => f.write_str(&formula_sexp(x)),
            Obj::And(l, r) => write!(f, "(and {l} {r})"),
            Obj::Or(l, r) => write!(f, "(or {l} {r})"),
        }
    }
}

/// A morphism term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Term {
    Gen(GenKind, Vec<Obj>),
    /// The coherence isomorphism built from associativity and symmetry.
    Iso(Obj, Obj),
    /// Straight bundles between units occurring once on each side.
    Canon(Obj, Obj),
    /// `Comp([e1, ..., en]) = e1 ∘ ... ∘ en`.
    Comp(Vec<Term>),
    And(Box<Term>, Box<Term>),
    Or(Box<Term>, Box<Term>),
    Transpose(TransposeDir, Box<Term>),
    Sum(Box<Term>, Box<Term>),
    Pair(Box<Term>, Box<Term>),
    Copair(Box<Term>, Box<Term>),
    Var(String),
}

/// Values for the variables of a term.
#[derive(Clone, Debug, Default)]
pub struct Binding {
    pub objects: BTreeMap<String, Formula>,
    pub maps: BTreeMap<String, Arc<Hom<SimpleNet>>>,
}

impl Binding {
    pub fn new() -> Binding {
        Binding::default()
    }

    pub fn with_object(mut self, name: &str, f: Formula) -> Binding {
        self.objects.insert(name.to_string(), f);
        self
    }
}

impl fmt::Display for Binding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, v) in &self.objects {
            if !first {
                f.write_str(", ")?;
            }
            first = false;
            write!(f, "{k}={v}")?;
        }
        for (k, h) in &self.maps {
            if !first {
                f.write_str(", ")?;
            }
            first = false;
            write!(f, "{k}:{}->{} [{} links]", h.source, h.target, h.net.links().len())?;
        }
        Ok(())
    }
}

impl Term {
    pub fn gen(kind: GenKind, params: Vec<Obj>) -> Term {
        Term::Gen(kind, params)
    }

    pub fn id(x: &Obj) -> Term {
        Term::Gen(GenKind::Id, vec![x.clone()])
    }

    pub fn and(l: Term, r: Term) -> Term {
        Term::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Term, r: Term) -> Term {
        Term::Or(Box::new(l), Box::new(r))
    }

    /// Identities and tensors of identities.
    pub fn is_identity(&self) -> bool {
        match self {
            Term::Gen(GenKind::Id, _) => true,
            Term::And(l, r) | Term::Or(l, r) => l.is_identity() && r.is_identity(),
            Term::Comp(parts) => parts.iter().all(Term::is_identity),
            _ => false,
        }
    }

    /// The inverse of a term built from invertible generators.
    pub fn inverse(&self) -> Option<Term> {
        Some(match self {
            Term::Gen(kind, params) => {
                let params = match kind {
                    GenKind::Twist | GenKind::Cotwist => vec![params[1].clone(), params[0].clone()],
                    _ => params.clone(),
                };
                Term::Gen(kind.inverse()?, params)
            }
            Term::Comp(parts) => Term::Comp(parts.iter().rev().map(Term::inverse).collect::<Option<_>>()?),
            Term::And(l, r) => Term::and(l.inverse()?, r.inverse()?),
            Term::Or(l, r) => Term::or(l.inverse()?, r.inverse()?),
            Term::Iso(x, y) => Term::Iso(y.clone(), x.clone()),
            _ => return None,
        })
    }

    pub fn map_vars(&self, out: &mut Vec<String>) {
        match self {
            Term::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Term::Gen(..) | Term::Iso(..) | Term::Canon(..) => {}
            Term::Comp(parts) => parts.iter().for_each(|p| p.map_vars(out)),
            Term::And(l, r) | Term::Or(l, r) | Term::Sum(l, r) | Term::Pair(l, r) | Term::Copair(l, r) => {
                l.map_vars(out);
                r.map_vars(out);
            }
            Term::Transpose(_, e) => e.map_vars(out),
        }
    }

    pub fn object_vars(&self, out: &mut Vec<String>) {
        match self {
            Term::Var(_) => {}
            Term::Gen(_, ps) => ps.iter().for_each(|p| p.vars(out)),
            Term::Iso(x, y) | Term::Canon(x, y) => {
                x.vars(out);
                y.vars(out);
            }
            Term::Comp(parts) => parts.iter().for_each(|p| p.object_vars(out)),
            Term::And(l, r) | Term::Or(l, r) | Term::Sum(l, r) | Term::Pair(l, r) | Term::Copair(l, r) => {
                l.object_vars(out);
                r.object_vars(out);
            }
            Term::Transpose(_, e) => e.object_vars(out),
        }
    }

    pub fn bind(&self, b: &Binding) -> Result<MorphismExpr, ElabError> {
        use MorphismExpr as M;
        let two = |l: &Term, r: &Term| -> Result<(Box<M>, Box<M>), ElabError> {
            Ok((Box::new(l.bind(b)?), Box::new(r.bind(b)?)))
        };
        Ok(match self {
            Term::Gen(kind, params) => {
                let params = params.iter().map(|p| p.bind(&b.objects)).collect::<Result<_, _>>()?;
                M::Gen(Generator::new(*kind, params)?)
            }
            Term::Iso(x, y) => iso::iso(x, y)?.bind(b)?,
            Term::Canon(x, y) => M::Canon {
                source: x.bind(&b.objects)?,
                target: y.bind(&b.objects)?,
                bundles: canon_bundles(x, y),
            },
            Term::Comp(parts) => {
                if parts.is_empty() {
                    return Err(ElabError::Shape("empty composite".into()));
                }
                M::comp(parts.iter().map(|p| p.bind(b)).collect::<Result<_, _>>()?)
            }
            Term::And(l, r) => {
                let (l, r) = two(l, r)?;
                M::TensorAnd(l, r)
            }
            Term::Or(l, r) => {
                let (l, r) = two(l, r)?;
                M::TensorOr(l, r)
            }
            Term::Sum(l, r) => {
                let (l, r) = two(l, r)?;
                M::Sum(l, r)
            }
            Term::Pair(l, r) => {
                let (l, r) = two(l, r)?;
                M::Pair(l, r)
            }
            Term::Copair(l, r) => {
                let (l, r) = two(l, r)?;
                M::Copair(l, r)
            }
            Term::Transpose(dir, e) => M::Transpose(*dir, Box::new(e.bind(b)?)),
            Term::Var(v) => M::Literal(b.maps.get(v).cloned().ok_or_else(|| ElabError::Unbound(v.clone()))?),
        })
    }

    pub fn parse(x: &Sexp) -> Result<Term, SexpError> {
        let items = match x {
            Sexp::Sym { name, .. } => {
                return Ok(match GenKind::lookup(name).filter(|k| k.arity() == 0) {
                    Some(k) => Term::Gen(k, Vec::new()),
                    None if is_object_var(name) => {
                        return Err(x.error(format!("`{name}` is an object, not a map")));
                    }
                    None => Term::Var(name.clone()),
                });
            }
            Sexp::List { items, .. } => items,
        };
        let head = x.head().ok_or_else(|| x.error("expected a map expression"))?;
        let args = &items[1..];
        let unary = |k: usize| -> Result<(), SexpError> {
            if args.len() != k {
                Err(x.error(format!("`{head}` takes {k} arguments, got {}", args.len())))
            } else {
                Ok(())
            }
        };
        let pair = |mk: fn(Box<Term>, Box<Term>) -> Term| -> Result<Term, SexpError> {
            unary(2)?;
            Ok(mk(Box::new(Term::parse(&args[0])?), Box::new(Term::parse(&args[1])?)))
        };
        // Tensors nest to the right, like object connectives.
        let tensor = |mk: fn(Term, Term) -> Term| -> Result<Term, SexpError> {
            if args.len() < 2 {
                return Err(x.error(format!("`{head}` takes at least 2 arguments, got {}", args.len())));
            }
            let parts = args.iter().map(Term::parse).collect::<Result<Vec<_>, _>>()?;
            Ok(parts.into_iter().rev().reduce(|acc, t| mk(t, acc)).expect("two or more parts"))
        };
        match head {
            "comp" => {
                if args.is_empty() {
                    return Err(x.error("empty composite"));
                }
                Ok(Term::Comp(args.iter().map(Term::parse).collect::<Result<_, _>>()?))
            }
            "and" => tensor(Term::and),
            "or" => tensor(Term::or),
            "sum" => pair(Term::Sum),
            "pair" => pair(Term::Pair),
            "copair" => pair(Term::Copair),
            "curry" | "uncurry" | "dual" => {
                unary(1)?;
                let dir = match head {
                    "curry" => TransposeDir::Curry,
                    "uncurry" => TransposeDir::Uncurry,
                    _ => TransposeDir::Dual,
                };
                Ok(Term::Transpose(dir, Box::new(Term::parse(&args[0])?)))
            }
            "iso" | "canon" => {
                unary(2)?;
                let (a, b) = (Obj::parse(&args[0])?, Obj::parse(&args[1])?);
                Ok(if head == "iso" { Term::Iso(a, b) } else { Term::Canon(a, b) })
            }
            name => {
                let kind = GenKind::lookup(name).ok_or_else(|| x.error(format!("unknown generator `{name}`")))?;
                if args.len() != kind.arity() {
                    return Err(x.error(format!(
                        "generator `{name}` takes {} object parameters, got {}",
                        kind.arity(),
                        args.len()
                    )));
                }
                Ok(Term::Gen(kind, args.iter().map(Obj::parse).collect::<Result<_, _>>()?))
            }
        }
    }
}

/// Parses one map expression from text.
pub fn parse_term(text: &str) -> Result<Term, SexpError> {
    Term::parse(&sexp::read_one(text)?)
}

/// Parses one object term from text.
pub fn parse_obj(text: &str) -> Result<Obj, SexpError> {
    Obj::parse(&sexp::read_one(text)?)
}

/// Bundles joining each unit that occurs exactly once in `x` and once in `y`.
pub fn canon_bundles(x: &Obj, y: &Obj) -> Vec<(Path, Path)> {
    let (ux, uy) = (x.units(), y.units());
    let once = |us: &[(Path, &Obj)], o: &Obj| us.iter().filter(|(_, u)| *u == o).count() == 1;
    ux.iter()
        .filter(|(_, u)| once(&ux, u) && once(&uy, u))
        .map(|(p, u)| (*p, uy.iter().find(|(_, v)| v == u).expect("occurs once").0))
        .collect()
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Gen(k, ps) => {
                if ps.is_empty() {
                    return f.write_str(k.name());
                }
                write!(f, "({}", k.name())?;
                for p in ps {
                    write!(f, " {p}")?;
                }
                f.write_str(")")
            }
            Term::Iso(x, y) => write!(f, "(iso {x} {y})"),
            Term::Canon(x, y) => write!(f, "(canon {x} {y})"),
            Term::Comp(parts) => {
                f.write_str("(comp")?;
                for p in parts {
                    write!(f, " {p}")?;
                }
                f.write_str(")")
            }
            Term::And(l, r) => write!(f, "(and {l} {r})"),
            Term::Or(l, r) => write!(f, "(or {l} {r})"),
            Term::Sum(l, r) => write!(f, "(sum {l} {r})"),
            Term::Pair(l, r) => write!(f, "(pair {l} {r})"),
            Term::Copair(l, r) => write!(f, "(copair {l} {r})"),
            Term::Transpose(TransposeDir::Curry, e) => write!(f, "(curry {e})"),
            Term::Transpose(TransposeDir::Uncurry, e) => write!(f, "(uncurry {e})"),
            Term::Transpose(TransposeDir::Dual, e) => write!(f, "(dual {e})"),
            Term::Var(v) => f.write_str(v),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morphisms::{elaborate, Hom};

    fn closed(text: &str) -> MorphismExpr {
        parse_term(text).unwrap().bind(&Binding::new()).unwrap()
    }

    #[test]
    fn objects_parse_and_negate() {
        let o = parse_obj("(and A (or ~b (not B')))").unwrap();
        assert_eq!(o.to_string(), "(and A (or ~b (not B')))");
        assert_eq!(o.negate().to_string(), "(or (and B' b) (not A))");
        let b = BTreeMap::from([("A".to_string(), Formula::atom("a")), ("B'".to_string(), "c & d".parse().unwrap())]);
        assert_eq!(o.bind(&b).unwrap().to_string(), "a & (~b | (~d | ~c))");
        assert!(matches!(parse_obj("(and A)"), Err(SexpError::Syntax { .. })));
    }

    #[test]
    fn terms_round_trip_through_display() {
        for text in [
            "(comp (codiag a) (mix a a) (diag a))",
            "(sum f (proj A))",
            "(curry (and (id A) e1))",
            "(iso (and A B) (and B A))",
            "nm",
        ] {
            assert_eq!(parse_term(text).unwrap().to_string(), text);
        }
        assert!(parse_term("(medial a b)").is_err());
        assert!(parse_term("(frobnicate a)").is_err());
        assert!(parse_term("A").is_err());
    }

    #[test]
    fn closed_terms_elaborate() {
        let h: Hom<SimpleNet> = elaborate(&closed("(comp (codiag a) (mix a a) (diag a))")).unwrap();
        let id: Hom<SimpleNet> = elaborate(&closed("(id a)")).unwrap();
        assert!(h.same(&id));
    }

    #[test]
    fn unbound_variables_are_reported() {
        let t = parse_term("(comp (id A) g)").unwrap();
        assert_eq!(t.bind(&Binding::new()).unwrap_err(), ElabError::Unbound("A".into()));
        let t = parse_term("(comp g (id a))").unwrap();
        assert_eq!(t.bind(&Binding::new()).unwrap_err(), ElabError::Unbound("g".into()));
    }

    #[test]
    fn canon_bundles_skip_repeated_units() {
        let x = parse_obj("(and A (and B A))").unwrap();
        let y = parse_obj("(and B (and A A))").unwrap();
        assert_eq!(canon_bundles(&x, &y), vec![("RL".parse().unwrap(), "L".parse().unwrap())]);
    }
}
