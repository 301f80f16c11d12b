//! Coherence isomorphisms between re-bracketed and permuted clusters.
//!
//! A cluster is a maximal tree of one connective. Its units are matched left
//! to right (the first unused equivalent unit wins), so equal units keep their
//! relative order and repeated units never cross.

use crate::error::ElabError;
use crate::morphisms::generators::GenKind;
use crate::morphisms::term::{Obj, Term};

#[derive(Clone, Copy, PartialEq, Eq)]
enum Op {
    And,
    Or,
}

impl Op {
    fn of(o: &Obj) -> Option<Op> {
        match o {
            Obj::And(..) => Some(Op::And),
            Obj::Or(..) => Some(Op::Or),
            _ => None,
        }
    }

    fn split(self, o: &Obj) -> Option<(&Obj, &Obj)> {
        match (self, o) {
            (Op::And, Obj::And(l, r)) | (Op::Or, Obj::Or(l, r)) => Some((l, r)),
            _ => None,
        }
    }

    fn join(self, l: Obj, r: Obj) -> Obj {
        match self {
            Op::And => Obj::and(l, r),
            Op::Or => Obj::or(l, r),
        }
    }

    fn tensor(self, l: Term, r: Term) -> Term {
        match self {
            Op::And => Term::and(l, r),
            Op::Or => Term::or(l, r),
        }
    }

    /// `X * (Y * Z) -> (X * Y) * Z`
    fn assoc(self) -> GenKind {
        match self {
            Op::And => GenKind::Assoc,
            Op::Or => GenKind::Coassoc,
        }
    }

    fn assoc_inv(self) -> GenKind {
        match self {
            Op::And => GenKind::AssocInv,
            Op::Or => GenKind::CoassocInv,
        }
    }

    fn twist(self) -> GenKind {
        match self {
            Op::And => GenKind::Twist,
            Op::Or => GenKind::Cotwist,
        }
    }
}

fn flatten<'a>(op: Op, o: &'a Obj, out: &mut Vec<&'a Obj>) {
    match op.split(o) {
        Some((l, r)) => {
            flatten(op, l, out);
            flatten(op, r, out);
        }
        None => out.push(o),
    }
}

fn units(op: Op, o: &Obj) -> Vec<&Obj> {
    let mut out = Vec::new();
    flatten(op, o, &mut out);
    out
}

/// Right-nested cluster over `us` (non-empty).
fn nest(op: Op, us: &[Obj]) -> Obj {
    match us {
        [u] => u.clone(),
        [u, rest @ ..] => op.join(u.clone(), nest(op, rest)),
        [] => unreachable!("clusters are non-empty"),
    }
}

/// Equal up to re-bracketing and permutation, recursively.
pub fn equivalent(x: &Obj, y: &Obj) -> bool {
    matching(x, y).is_some()
}

/// For each unit of `x`, the index of its partner unit in `y`.
fn matching(x: &Obj, y: &Obj) -> Option<Vec<usize>> {
    let op = match (Op::of(x), Op::of(y)) {
        (Some(a), Some(b)) if a == b => a,
        (None, None) => return (x == y).then(Vec::new),
        _ => return None,
    };
    let (ux, uy) = (units(op, x), units(op, y));
    if ux.len() != uy.len() {
        return None;
    }
    let mut used = vec![false; uy.len()];
    let mut perm = Vec::with_capacity(ux.len());
    for u in &ux {
        let j = (0..uy.len()).find(|&j| !used[j] && equivalent(u, uy[j]))?;
        used[j] = true;
        perm.push(j);
    }
    Some(perm)
}

/// `x -> nest(units(x))` by reassociation only.
fn right_nest(op: Op, x: &Obj) -> Term {
    match op.split(x) {
        None => Term::id(x),
        Some((l, r)) => match op.split(l) {
            Some((l1, l2)) => {
                let step = Term::gen(op.assoc_inv(), vec![l1.clone(), l2.clone(), r.clone()]);
                let next = op.join(l1.clone(), op.join(l2.clone(), r.clone()));
                compose(right_nest(op, &next), step)
            }
            None => op.tensor(Term::id(l), right_nest(op, r)),
        },
    }
}

/// Swaps units `k` and `k + 1` of the right-nested cluster over `us`.
fn swap_at(op: Op, us: &[Obj], k: usize) -> Term {
    if k > 0 {
        return op.tensor(Term::id(&us[0]), swap_at(op, &us[1..], k - 1));
    }
    let (a, b) = (us[0].clone(), us[1].clone());
    if us.len() == 2 {
        return Term::gen(op.twist(), vec![a, b]);
    }
    let rest = nest(op, &us[2..]);
    Term::Comp(vec![
        Term::gen(op.assoc_inv(), vec![b.clone(), a.clone(), rest.clone()]),
        op.tensor(Term::gen(op.twist(), vec![a.clone(), b.clone()]), Term::id(&rest)),
        Term::gen(op.assoc(), vec![a, b, rest]),
    ])
}

/// `later ∘ earlier`, dropping identities.
fn compose(later: Term, earlier: Term) -> Term {
    if earlier.is_identity() {
        return later;
    }
    if later.is_identity() {
        return earlier;
    }
    let mut parts = match later {
        Term::Comp(ps) => ps,
        t => vec![t],
    };
    match earlier {
        Term::Comp(ps) => parts.extend(ps),
        t => parts.push(t),
    }
    Term::Comp(parts)
}

/// The coherence isomorphism `x -> y`, built from associators and symmetries
/// of both connectives.
pub fn iso(x: &Obj, y: &Obj) -> Result<Term, ElabError> {
    let fail = || ElabError::Shape(format!("`{x}` and `{y}` are not related by reassociation and symmetry"));
    if x == y {
        return Ok(Term::id(x));
    }
    let perm = matching(x, y).ok_or_else(fail)?;
    let op = Op::of(x).ok_or_else(fail)?;
    let (ux, uy) = (units(op, x), units(op, y));

    let mut t = right_nest(op, x);
    // Rebuild each unit to the shape of its partner.
    let subs: Vec<Term> = ux.iter().zip(&perm).map(|(u, &j)| iso(u, uy[j])).collect::<Result<_, _>>()?;
    if !subs.iter().all(Term::is_identity) {
        let mut it = subs.into_iter().rev();
        let mut acc = it.next().expect("non-empty");
        for s in it {
            acc = op.tensor(s, acc);
        }
        t = compose(acc, t);
    }
    // Bubble the units into the target order.
    let mut keys = perm;
    let mut cur: Vec<Obj> = keys.iter().map(|&j| uy[j].clone()).collect();
    while let Some(k) = (0..keys.len() - 1).find(|&k| keys[k] > keys[k + 1]) {
        t = compose(swap_at(op, &cur, k), t);
        keys.swap(k, k + 1);
        cur.swap(k, k + 1);
    }
    let back = right_nest(op, y).inverse().expect("associators are invertible");
    Ok(compose(back, t))
}
