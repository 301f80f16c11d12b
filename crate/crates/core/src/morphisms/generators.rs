//! The generator catalogue: primitive maps drawn as straight bundles, and
//! derived maps defined as composites of primitives.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::ElabError;
use crate::formula::{Formula, Label, LeafRef, Path, Sequent};
use crate::morphisms::expr::MorphismExpr;
use crate::simple_net::{Link, SimpleNet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SwitchVariant {
    /// `A & (B | C) -> (A & B) | C`
    S,
    /// `(A | B) & C -> A | (B & C)`
    Left,
    /// `A & (B | C) -> B | (A & C)`
    Mid,
    /// `(A | B) & C -> (A & C) | B`
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenKind {
    Id,
    Assoc,
    AssocInv,
    Twist,
    Runit,
    RunitInv,
    Lunit,
    LunitInv,
    Coassoc,
    CoassocInv,
    Cotwist,
    Corunit,
    CorunitInv,
    Colunit,
    ColunitInv,
    Switch(SwitchVariant),
    TensorMap,
    CotensorMap,
    Medial,
    Medial3,
    Comedial3,
    NullaryMedial,
    NullaryComedial,
    Diag,
    Codiag,
    Diag3,
    Codiag3,
    Proj,
    Coproj,
    Projl,
    Projr,
    Coprojl,
    Coprojr,
    Mix,
    Nid,
    Conid,
    E1,
    E2,
}

/// Canonical name, accepted aliases, kind, object arity.
const TABLE: &[(&str, &[&str], GenKind, usize)] = &[
    ("id", &[], GenKind::Id, 1),
    ("assoc", &[], GenKind::Assoc, 3),
    ("assoc_inv", &[], GenKind::AssocInv, 3),
    ("twist", &[], GenKind::Twist, 2),
    ("runit", &[], GenKind::Runit, 1),
    ("runit_inv", &[], GenKind::RunitInv, 1),
    ("lunit", &[], GenKind::Lunit, 1),
    ("lunit_inv", &[], GenKind::LunitInv, 1),
    ("coassoc", &[], GenKind::Coassoc, 3),
    ("coassoc_inv", &[], GenKind::CoassocInv, 3),
    ("cotwist", &[], GenKind::Cotwist, 2),
    ("corunit", &[], GenKind::Corunit, 1),
    ("corunit_inv", &[], GenKind::CorunitInv, 1),
    ("colunit", &[], GenKind::Colunit, 1),
    ("colunit_inv", &[], GenKind::ColunitInv, 1),
    ("s", &["switch"], GenKind::Switch(SwitchVariant::S), 3),
    ("s_left", &[], GenKind::Switch(SwitchVariant::Left), 3),
    ("s_mid", &[], GenKind::Switch(SwitchVariant::Mid), 3),
    ("s_right", &[], GenKind::Switch(SwitchVariant::Right), 3),
    ("tens", &["tensor_map"], GenKind::TensorMap, 4),
    ("cotens", &["cotensor_map"], GenKind::CotensorMap, 4),
    ("medial", &["m"], GenKind::Medial, 4),
    ("medial3", &[], GenKind::Medial3, 6),
    ("comedial3", &[], GenKind::Comedial3, 6),
    ("nm", &["nullary_medial"], GenKind::NullaryMedial, 0),
    ("conm", &["nullary_comedial"], GenKind::NullaryComedial, 0),
    ("diag", &[], GenKind::Diag, 1),
    ("codiag", &[], GenKind::Codiag, 1),
    ("diag3", &[], GenKind::Diag3, 1),
    ("codiag3", &[], GenKind::Codiag3, 1),
    ("proj", &[], GenKind::Proj, 1),
    ("coproj", &[], GenKind::Coproj, 1),
    ("projl", &[], GenKind::Projl, 2),
    ("projr", &[], GenKind::Projr, 2),
    ("coprojl", &[], GenKind::Coprojl, 2),
    ("coprojr", &[], GenKind::Coprojr, 2),
    ("mix", &[], GenKind::Mix, 2),
    ("nid", &[], GenKind::Nid, 1),
    ("conid", &[], GenKind::Conid, 1),
    ("e1", &[], GenKind::E1, 0),
    ("e2", &[], GenKind::E2, 0),
];

impl GenKind {
    pub fn lookup(name: &str) -> Option<GenKind> {
        TABLE.iter().find(|(n, aliases, _, _)| *n == name || aliases.contains(&name)).map(|e| e.2)
    }

    pub fn name(self) -> &'static str {
        TABLE.iter().find(|e| e.2 == self).map(|e| e.0).expect("every kind is tabled")
    }

    pub fn arity(self) -> usize {
        TABLE.iter().find(|e| e.2 == self).map(|e| e.3).expect("every kind is tabled")
    }

    pub fn all() -> impl Iterator<Item = GenKind> {
        TABLE.iter().map(|e| e.2)
    }

    /// The kind and parameter permutation of the inverse, for isomorphisms.
    pub fn inverse(self) -> Option<GenKind> {
        use GenKind::*;
        Some(match self {
            Id => Id,
            Assoc => AssocInv,
            AssocInv => Assoc,
            Twist => Twist,
            Runit => RunitInv,
            RunitInv => Runit,
            Lunit => LunitInv,
            LunitInv => Lunit,
            Coassoc => CoassocInv,
            CoassocInv => Coassoc,
            Cotwist => Cotwist,
            Corunit => CorunitInv,
            CorunitInv => Corunit,
            Colunit => ColunitInv,
            ColunitInv => Colunit,
            _ => return None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub kind: GenKind,
    pub params: Vec<Formula>,
}

fn and(a: &Formula, b: &Formula) -> Formula {
    Formula::and(a.clone(), b.clone())
}

fn or(a: &Formula, b: &Formula) -> Formula {
    Formula::or(a.clone(), b.clone())
}

fn p(s: &str) -> Path {
    s.parse().expect("static path")
}

impl Generator {
    pub fn new(kind: GenKind, params: Vec<Formula>) -> Result<Generator, ElabError> {
        if params.len() != kind.arity() {
            return Err(ElabError::Arity {
                name: kind.name().to_string(),
                expected: kind.arity(),
                found: params.len(),
            });
        }
        Ok(Generator { kind, params })
    }

    /// Inverse generator for coherence isomorphisms.
    pub fn inverse(&self) -> Option<Generator> {
        let kind = self.kind.inverse()?;
        let params = match self.kind {
            GenKind::Twist | GenKind::Cotwist => vec![self.params[1].clone(), self.params[0].clone()],
            _ => self.params.clone(),
        };
        Some(Generator { kind, params })
    }

    /// Source and target objects.
    pub fn signature(&self) -> (Formula, Formula) {
        use GenKind::*;
        let x = &self.params;
        let (t, f) = (Formula::Top, Formula::Bot);
        match self.kind {
            Id => (x[0].clone(), x[0].clone()),
            Assoc => (and(&x[0], &and(&x[1], &x[2])), and(&and(&x[0], &x[1]), &x[2])),
            AssocInv => (and(&and(&x[0], &x[1]), &x[2]), and(&x[0], &and(&x[1], &x[2]))),
            Twist => (and(&x[0], &x[1]), and(&x[1], &x[0])),
            Runit => (and(&x[0], &t), x[0].clone()),
            RunitInv => (x[0].clone(), and(&x[0], &t)),
            Lunit => (and(&t, &x[0]), x[0].clone()),
            LunitInv => (x[0].clone(), and(&t, &x[0])),
            Coassoc => (or(&x[0], &or(&x[1], &x[2])), or(&or(&x[0], &x[1]), &x[2])),
            CoassocInv => (or(&or(&x[0], &x[1]), &x[2]), or(&x[0], &or(&x[1], &x[2]))),
            Cotwist => (or(&x[0], &x[1]), or(&x[1], &x[0])),
            Corunit => (or(&x[0], &f), x[0].clone()),
            CorunitInv => (x[0].clone(), or(&x[0], &f)),
            Colunit => (or(&f, &x[0]), x[0].clone()),
            ColunitInv => (x[0].clone(), or(&f, &x[0])),
            Switch(SwitchVariant::S) => (and(&x[0], &or(&x[1], &x[2])), or(&and(&x[0], &x[1]), &x[2])),
            Switch(SwitchVariant::Left) => (and(&or(&x[0], &x[1]), &x[2]), or(&x[0], &and(&x[1], &x[2]))),
            Switch(SwitchVariant::Mid) => (and(&x[0], &or(&x[1], &x[2])), or(&x[1], &and(&x[0], &x[2]))),
            Switch(SwitchVariant::Right) => (and(&or(&x[0], &x[1]), &x[2]), or(&and(&x[0], &x[2]), &x[1])),
            TensorMap => (
                and(&or(&x[0], &x[1]), &or(&x[2], &x[3])),
                or(&x[0], &or(&and(&x[1], &x[2]), &x[3])),
            ),
            CotensorMap => (
                and(&x[0], &and(&or(&x[1], &x[2]), &x[3])),
                or(&and(&x[0], &x[1]), &and(&x[2], &x[3])),
            ),
            Medial => (
                or(&and(&x[0], &x[1]), &and(&x[2], &x[3])),
                and(&or(&x[0], &x[2]), &or(&x[1], &x[3])),
            ),
            Medial3 => (
                or(&and(&x[0], &x[1]), &or(&and(&x[2], &x[3]), &and(&x[4], &x[5]))),
                and(&or(&x[0], &or(&x[2], &x[4])), &or(&x[1], &or(&x[3], &x[5]))),
            ),
            Comedial3 => (
                or(&and(&x[0], &and(&x[1], &x[2])), &and(&x[3], &and(&x[4], &x[5]))),
                and(&or(&x[0], &x[3]), &and(&or(&x[1], &x[4]), &or(&x[2], &x[5]))),
            ),
            NullaryMedial => (or(&t, &t), t),
            NullaryComedial => (f.clone(), and(&f, &f)),
            Diag => (x[0].clone(), and(&x[0], &x[0])),
            Codiag => (or(&x[0], &x[0]), x[0].clone()),
            Diag3 => (x[0].clone(), and(&x[0], &and(&x[0], &x[0]))),
            Codiag3 => (or(&x[0], &or(&x[0], &x[0])), x[0].clone()),
            Proj => (x[0].clone(), t),
            Coproj => (f, x[0].clone()),
            Projl => (and(&x[0], &x[1]), x[0].clone()),
            Projr => (and(&x[0], &x[1]), x[1].clone()),
            Coprojl => (x[0].clone(), or(&x[0], &x[1])),
            Coprojr => (x[1].clone(), or(&x[0], &x[1])),
            Mix => (and(&x[0], &x[1]), or(&x[0], &x[1])),
            Nid => (t, or(&x[0].negate(), &x[0])),
            Conid => (and(&x[0], &x[0].negate()), f),
            E1 | E2 => (f, t),
        }
    }

    /// Source-to-target bundles of a primitive, or `None` for derived maps.
    fn bundles(&self) -> Option<Vec<(Path, Path)>> {
        use GenKind::*;
        let b = |pairs: &[(&str, &str)]| pairs.iter().map(|(s, t)| (p(s), p(t))).collect();
        Some(match self.kind {
            Id => b(&[("", "")]),
            Assoc => b(&[("L", "LL"), ("RL", "LR"), ("RR", "R")]),
            AssocInv => b(&[("LL", "L"), ("LR", "RL"), ("R", "RR")]),
            Twist | Cotwist => b(&[("L", "R"), ("R", "L")]),
            Runit | Corunit => b(&[("L", "")]),
            RunitInv | CorunitInv => b(&[("", "L")]),
            Lunit | Colunit => b(&[("R", "")]),
            LunitInv | ColunitInv => b(&[("", "R")]),
            Coassoc => b(&[("L", "LL"), ("RL", "LR"), ("RR", "R")]),
            CoassocInv => b(&[("LL", "L"), ("LR", "RL"), ("R", "RR")]),
            Switch(SwitchVariant::S) => b(&[("L", "LL"), ("RL", "LR"), ("RR", "R")]),
            Switch(SwitchVariant::Left) => b(&[("LL", "L"), ("LR", "RL"), ("R", "RR")]),
            Switch(SwitchVariant::Mid) => b(&[("L", "RL"), ("RL", "L"), ("RR", "RR")]),
            Switch(SwitchVariant::Right) => b(&[("LL", "LL"), ("LR", "R"), ("R", "LR")]),
            Medial => b(&[("LL", "LL"), ("LR", "RL"), ("RL", "LR"), ("RR", "RR")]),
            NullaryMedial | NullaryComedial | Proj | Coproj => Vec::new(),
            Diag => b(&[("", "L"), ("", "R")]),
            Codiag => b(&[("L", ""), ("R", "")]),
            _ => return None,
        })
    }

    pub fn is_primitive(&self) -> bool {
        self.bundles().is_some() || matches!(self.kind, GenKind::Nid | GenKind::Conid)
    }

    /// The net of a primitive generator.
    pub fn primitive_net(&self) -> Option<SimpleNet> {
        let (src, tgt) = self.signature();
        let sequent = Sequent::new(vec![src.negate(), tgt]);
        let pairs: Vec<(LeafRef, LeafRef)> = match self.kind {
            // `t -> ~A | A`: the two halves of the target face each other.
            GenKind::Nid => vec![(LeafRef::at(1, "R"), LeafRef::at(1, "L"))],
            // `A & ~A -> f`: the negated source is `A | ~A`.
            GenKind::Conid => vec![(LeafRef::at(0, "L"), LeafRef::at(0, "R"))],
            _ => self
                .bundles()?
                .into_iter()
                .map(|(ps, pt)| (LeafRef::new(1, pt), LeafRef::new(0, ps.mirror())))
                .collect(),
        };
        Some(duality_net(sequent, &pairs))
    }

    /// The defining composite of a derived generator.
    pub fn expansion(&self) -> Option<MorphismExpr> {
        use GenKind::*;
        use MorphismExpr as M;
        let x = &self.params;
        let g = |k: GenKind, ps: &[&Formula]| M::gen(k, ps.iter().map(|f| (*f).clone()).collect());
        let (t, f) = (Formula::Top, Formula::Bot);
        Some(match self.kind {
            TensorMap => M::comp(vec![
                M::or(g(Id, &[&x[0]]), g(Switch(SwitchVariant::S), &[&x[1], &x[2], &x[3]])),
                g(Switch(SwitchVariant::Left), &[&x[0], &x[1], &or(&x[2], &x[3])]),
            ]),
            CotensorMap => M::comp(vec![
                g(Switch(SwitchVariant::S), &[&x[0], &x[1], &and(&x[2], &x[3])]),
                M::and(g(Id, &[&x[0]]), g(Switch(SwitchVariant::Left), &[&x[1], &x[2], &x[3]])),
            ]),
            Medial3 => M::comp(vec![
                g(Medial, &[&x[0], &x[1], &or(&x[2], &x[4]), &or(&x[3], &x[5])]),
                M::or(g(Id, &[&and(&x[0], &x[1])]), g(Medial, &[&x[2], &x[3], &x[4], &x[5]])),
            ]),
            Comedial3 => M::comp(vec![
                M::and(g(Id, &[&or(&x[0], &x[3])]), g(Medial, &[&x[1], &x[2], &x[4], &x[5]])),
                g(Medial, &[&x[0], &and(&x[1], &x[2]), &x[3], &and(&x[4], &x[5])]),
            ]),
            Diag3 => M::comp(vec![M::and(g(Id, &[&x[0]]), g(Diag, &[&x[0]])), g(Diag, &[&x[0]])]),
            Codiag3 => M::comp(vec![g(Codiag, &[&x[0]]), M::or(g(Id, &[&x[0]]), g(Codiag, &[&x[0]]))]),
            Projl => M::comp(vec![g(Runit, &[&x[0]]), M::and(g(Id, &[&x[0]]), g(Proj, &[&x[1]]))]),
            Projr => M::comp(vec![g(Lunit, &[&x[1]]), M::and(g(Proj, &[&x[0]]), g(Id, &[&x[1]]))]),
            Coprojl => M::comp(vec![M::or(g(Id, &[&x[0]]), g(Coproj, &[&x[1]])), g(CorunitInv, &[&x[0]])]),
            Coprojr => M::comp(vec![M::or(g(Coproj, &[&x[0]]), g(Id, &[&x[1]])), g(ColunitInv, &[&x[1]])]),
            Mix => M::comp(vec![
                M::or(g(Runit, &[&x[0]]), g(Id, &[&x[1]])),
                M::or(M::and(g(Id, &[&x[0]]), g(Proj, &[&f])), g(Id, &[&x[1]])),
                g(Switch(SwitchVariant::S), &[&x[0], &f, &x[1]]),
                M::and(g(Id, &[&x[0]]), g(ColunitInv, &[&x[1]])),
            ]),
            E1 => M::comp(vec![
                g(Runit, &[&t]),
                M::and(g(Colunit, &[&t]), g(Corunit, &[&t])),
                g(Medial, &[&f, &t, &t, &f]),
                M::or(g(RunitInv, &[&f]), g(LunitInv, &[&f])),
                g(ColunitInv, &[&f]),
            ]),
            E2 => M::comp(vec![
                g(Runit, &[&t]),
                M::and(g(Corunit, &[&t]), g(Colunit, &[&t])),
                g(Medial, &[&t, &f, &f, &t]),
                M::or(g(LunitInv, &[&f]), g(RunitInv, &[&f])),
                g(ColunitInv, &[&f]),
            ]),
            _ => return None,
        })
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}", self.kind.name())?;
        for x in &self.params {
            write!(f, " {}", crate::morphisms::term::formula_sexp(x))?;
        }
        f.write_str(")")
    }
}

/// Builds a net from occurrence pairs `(F at x, ~F at y)`: each leaf of `F`
/// is linked with its mirrored counterpart, from the negative atom to the
/// positive one. Every t leaf of the sequent gets its self-link.
pub fn duality_net(sequent: Sequent, pairs: &[(LeafRef, LeafRef)]) -> SimpleNet {
    let mut links: BTreeSet<Link> = BTreeSet::new();
    for (x, y) in pairs {
        let sub = sequent.formulas()[x.i].at(&x.path).expect("bundle root exists");
        for (q, label) in sub.leaves() {
            let a = LeafRef::new(x.i, x.path.join(&q));
            let b = LeafRef::new(y.i, y.path.join(&q.mirror()));
            debug_assert_eq!(sequent.label(&b), Some(label.negate()), "bundle ends must be dual");
            match label {
                Label::Pos(_) => {
                    links.insert((b, a));
                }
                Label::Neg(_) => {
                    links.insert((a, b));
                }
                Label::Top | Label::Bot => {}
            }
        }
    }
    for (leaf, label) in sequent.leaves() {
        if label == Label::Top {
            links.insert((leaf, leaf));
        }
    }
    SimpleNet::from_parts(sequent, links)
}

/// The straight-bundle net of `source -> target` for explicit bundles.
pub fn bundle_net(source: &Formula, target: &Formula, bundles: &[(Path, Path)]) -> Result<SimpleNet, ElabError> {
    for (ps, pt) in bundles {
        let (a, b) = (source.at(ps), target.at(pt));
        if a.is_none() || a != b {
            return Err(ElabError::Shape(format!(
                "bundle {ps} -> {pt} does not join equal subformulas of `{source}` and `{target}`"
            )));
        }
    }
    let sequent = Sequent::new(vec![source.negate(), target.clone()]);
    let pairs: Vec<(LeafRef, LeafRef)> =
        bundles.iter().map(|(ps, pt)| (LeafRef::new(1, *pt), LeafRef::new(0, ps.mirror()))).collect();
    Ok(duality_net(sequent, &pairs))
}
