//! Loading the equation catalog from its S-expression text.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Serialize, Serializer};

use crate::error::{CatalogError, SexpError};
use crate::formula::Formula;
use crate::morphisms::sexp::{self, Sexp};
use crate::morphisms::term::{is_object_var, Obj, Term};
use crate::morphisms::{Category, GenKind};

/// Bumped whenever the entry grammar changes.
pub const CATALOG_VERSION: u32 = 1;

const BUILTIN_TEXT: &str = include_str!("catalog.sexp");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Level {
    Monoidal,
    Star,
    Mix,
    B1,
    B2,
    LK,
    B3,
    B4,
    B5,
    Flat,
    Contractible,
    Collapse,
}

impl Level {
    pub const ALL: [Level; 12] = [
        Level::Monoidal,
        Level::Star,
        Level::Mix,
        Level::B1,
        Level::B2,
        Level::LK,
        Level::B3,
        Level::B4,
        Level::B5,
        Level::Flat,
        Level::Contractible,
        Level::Collapse,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Level::Monoidal => "monoidal",
            Level::Star => "star",
            Level::Mix => "mix",
            Level::B1 => "B1",
            Level::B2 => "B2",
            Level::LK => "LK",
            Level::B3 => "B3",
            Level::B4 => "B4",
            Level::B5 => "B5",
            Level::Flat => "flat",
            Level::Contractible => "contractible",
            Level::Collapse => "collapse",
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Level {
    type Err = String;

    fn from_str(s: &str) -> Result<Level, String> {
        Level::ALL.into_iter().find(|l| l.name().eq_ignore_ascii_case(s)).ok_or_else(|| {
            let names: Vec<_> = Level::ALL.iter().map(|l| l.name()).collect();
            format!("unknown level `{s}` (expected one of {})", names.join(", "))
        })
    }
}

impl Serialize for Level {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// What a category is expected to do with an entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Expect {
    Holds,
    Fails,
    /// Not checked in that category.
    Na,
}

impl FromStr for Expect {
    type Err = String;

    fn from_str(s: &str) -> Result<Expect, String> {
        match s {
            "holds" => Ok(Expect::Holds),
            "fails" => Ok(Expect::Fails),
            "na" => Ok(Expect::Na),
            _ => Err(format!("unknown verdict `{s}` (expected holds, fails or na)")),
        }
    }
}

impl fmt::Display for Expect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Expect::Holds => "holds",
            Expect::Fails => "fails",
            Expect::Na => "na",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Relation {
    /// `lhs = rhs`.
    Equal,
    /// `lhs <= rhs`: in simple nets, every link of `rhs` is a link of `lhs`;
    /// in extended nets, `lhs` reduces to `rhs` by anchor elimination.
    Below,
    /// `lhs = rhs` whenever the two premise sides are equal.
    Implies(Term, Term),
}

/// A map variable with its declared type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapParam {
    pub name: String,
    pub source: Obj,
    pub target: Obj,
}

/// A fixed binding checked before any sampled ones.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Witness {
    pub objects: BTreeMap<String, Formula>,
    pub maps: BTreeMap<String, Term>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    pub id: String,
    pub level: Level,
    pub law: String,
    pub objects: Vec<String>,
    pub maps: Vec<MapParam>,
    pub relation: Relation,
    pub lhs: Term,
    pub rhs: Term,
    pub snet: Expect,
    pub enet: Expect,
    pub witness: Option<Witness>,
}

impl Equation {
    pub fn expected(&self, cat: Category) -> Expect {
        match cat {
            Category::SNet => self.snet,
            Category::ENet => self.enet,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Catalog {
    pub entries: Vec<Equation>,
}

impl Catalog {
    pub fn get(&self, id: &str) -> Option<&Equation> {
        self.entries.iter().find(|e| e.id == id)
    }

    pub fn at_level(&self, level: Level) -> impl Iterator<Item = &Equation> {
        self.entries.iter().filter(move |e| e.level == level)
    }
}

/// The catalog shipped with the crate.
pub fn builtin() -> &'static Catalog {
    static CATALOG: OnceLock<Catalog> = OnceLock::new();
    CATALOG.get_or_init(|| parse_catalog(BUILTIN_TEXT).expect("the built-in catalog parses"))
}

pub fn builtin_text() -> &'static str {
    BUILTIN_TEXT
}

/// The four preservation diagrams of a map `h : X -> Y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum StrongPart {
    /// `h ∘ codiag = codiag ∘ (h | h)`
    Vmult,
    /// `h ∘ coproj = coproj`
    Vunit,
    /// `proj ∘ h = proj`
    Wcounit,
    /// `diag ∘ h = (h & h) ∘ diag`
    Wcomult,
}

impl StrongPart {
    pub const ALL: [StrongPart; 4] = [StrongPart::Vmult, StrongPart::Vunit, StrongPart::Wcounit, StrongPart::Wcomult];

    pub fn name(self) -> &'static str {
        match self {
            StrongPart::Vmult => "vmult",
            StrongPart::Vunit => "vunit",
            StrongPart::Wcounit => "wcounit",
            StrongPart::Wcomult => "wcomult",
        }
    }

    fn parse(s: &str) -> Option<StrongPart> {
        StrongPart::ALL.into_iter().find(|p| p.name() == s)
    }

    fn sides(self, x: &Obj, y: &Obj, h: &Term) -> (Term, Term) {
        let g = |k: GenKind, o: &Obj| Term::gen(k, vec![o.clone()]);
        let comp = |ts: Vec<Term>| Term::Comp(ts);
        match self {
            StrongPart::Vmult => (
                comp(vec![h.clone(), g(GenKind::Codiag, x)]),
                comp(vec![g(GenKind::Codiag, y), Term::or(h.clone(), h.clone())]),
            ),
            StrongPart::Vunit => (comp(vec![h.clone(), g(GenKind::Coproj, x)]), g(GenKind::Coproj, y)),
            StrongPart::Wcounit => (comp(vec![g(GenKind::Proj, y), h.clone()]), g(GenKind::Proj, x)),
            StrongPart::Wcomult => (
                comp(vec![g(GenKind::Diag, y), h.clone()]),
                comp(vec![Term::and(h.clone(), h.clone()), g(GenKind::Diag, x)]),
            ),
        }
    }
}

fn entry_err(id: &str, msg: impl Into<String>) -> CatalogError {
    CatalogError::Entry { id: id.to_string(), msg: msg.into() }
}

/// `#law` lines directly above each line number, joined.
fn law_lines(text: &str) -> BTreeMap<usize, String> {
    let mut out = BTreeMap::new();
    let mut pending: Vec<&str> = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.trim();
        if let Some(rest) = line.strip_prefix("#law") {
            pending.push(rest.trim());
        } else if line.starts_with('(') && !pending.is_empty() {
            out.insert(k + 1, pending.join(" "));
            pending.clear();
        } else if line.starts_with(";;") {
            pending.clear();
        }
    }
    out
}

pub fn parse_catalog(text: &str) -> Result<Catalog, CatalogError> {
    let laws = law_lines(text);
    let mut entries: Vec<Equation> = Vec::new();
    let mut last_law = String::new();
    for form in sexp::read_all(text)? {
        // Consecutive entries under one `#law` share it.
        if let Some(l) = laws.get(&form.line()) {
            last_law = l.clone();
        }
        for eq in parse_entry(&form, &last_law)? {
            if entries.iter().any(|e| e.id == eq.id) {
                return Err(CatalogError::Duplicate(eq.id));
            }
            validate(&eq)?;
            entries.push(eq);
        }
    }
    Ok(Catalog { entries })
}

struct Header {
    id: String,
    level: Option<Level>,
    objects: Vec<String>,
    maps: Vec<MapParam>,
    snet: Option<Expect>,
    enet: Option<Expect>,
    part_fails: BTreeMap<StrongPart, Expect>,
    parts: Option<Vec<StrongPart>>,
    witness: Option<Witness>,
    lhs: Option<Term>,
    rhs: Option<Term>,
    premise: Option<(Term, Term)>,
    map: Option<(Obj, Obj, Term)>,
}

fn parse_entry(form: &Sexp, law: &str) -> Result<Vec<Equation>, CatalogError> {
    let items = form.list().ok_or_else(|| form.error("expected a catalog entry"))?;
    let kind = form.head().ok_or_else(|| form.error("expected a catalog entry"))?;
    if !matches!(kind, "equation" | "order" | "implies" | "strong") {
        return Err(form.error(format!("unknown entry kind `{kind}`")).into());
    }
    let id = items.get(1).and_then(Sexp::sym).ok_or_else(|| form.error("entry needs an id"))?.to_string();
    let mut h = Header {
        id,
        level: None,
        objects: Vec::new(),
        maps: Vec::new(),
        snet: None,
        enet: None,
        part_fails: BTreeMap::new(),
        parts: None,
        witness: None,
        lhs: None,
        rhs: None,
        premise: None,
        map: None,
    };
    for clause in &items[2..] {
        parse_clause(&mut h, clause)?;
    }
    let id = h.id.clone();
    let level = h.level.ok_or_else(|| entry_err(&id, "missing (level ...)"))?;
    let snet = h.snet.ok_or_else(|| entry_err(&id, "missing snet expectation"))?;
    let enet = h.enet.ok_or_else(|| entry_err(&id, "missing enet expectation"))?;
    let base = |relation, lhs, rhs, id: String, snet, enet| Equation {
        id,
        level,
        law: law.to_string(),
        objects: h.objects.clone(),
        maps: h.maps.clone(),
        relation,
        lhs,
        rhs,
        snet,
        enet,
        witness: h.witness.clone(),
    };
    if kind == "strong" {
        let (x, y, m) = h.map.clone().ok_or_else(|| entry_err(&id, "missing (map ...)"))?;
        let parts = h.parts.clone().unwrap_or_else(|| StrongPart::ALL.to_vec());
        return Ok(parts
            .into_iter()
            .map(|p| {
                let (lhs, rhs) = p.sides(&x, &y, &m);
                let enet = h.part_fails.get(&p).copied().unwrap_or(enet);
                base(Relation::Equal, lhs, rhs, format!("{id}/{}", p.name()), snet, enet)
            })
            .collect());
    }
    if h.map.is_some() || h.parts.is_some() {
        return Err(entry_err(&id, "(map ...) and (parts ...) belong to strong entries"));
    }
    let lhs = h.lhs.clone().ok_or_else(|| entry_err(&id, "missing (lhs ...)"))?;
    let rhs = h.rhs.clone().ok_or_else(|| entry_err(&id, "missing (rhs ...)"))?;
    let relation = match (kind, h.premise.clone()) {
        ("implies", Some((p, q))) => Relation::Implies(p, q),
        ("implies", None) => return Err(entry_err(&id, "missing (if ...)")),
        (_, Some(_)) => return Err(entry_err(&id, "(if ...) belongs to implies entries")),
        ("order", None) => Relation::Below,
        _ => Relation::Equal,
    };
    Ok(vec![base(relation, lhs, rhs, id.clone(), snet, enet)])
}

fn args(clause: &Sexp, n: usize) -> Result<&[Sexp], SexpError> {
    let items = clause.list().expect("clauses are lists");
    if items.len() != n + 1 {
        return Err(clause.error(format!("`{}` takes {n} arguments", clause.head().unwrap_or("?"))));
    }
    Ok(&items[1..])
}

fn sym<'a>(x: &'a Sexp, what: &str) -> Result<&'a str, SexpError> {
    x.sym().ok_or_else(|| x.error(format!("expected {what}")))
}

fn parse_clause(h: &mut Header, clause: &Sexp) -> Result<(), CatalogError> {
    let head = clause.head().ok_or_else(|| clause.error("expected a clause"))?;
    let items = clause.list().expect("has a head");
    match head {
        "level" => {
            let name = sym(&args(clause, 1)?[0], "a level")?;
            h.level = Some(name.parse().map_err(|m: String| clause.error(m))?);
        }
        "params" => {
            for p in &items[1..] {
                match p {
                    Sexp::Sym { name, .. } if is_object_var(name) => h.objects.push(name.clone()),
                    Sexp::List { items: q, .. } if q.len() == 3 => {
                        let name = sym(&q[0], "a map variable")?.to_string();
                        h.maps.push(MapParam { name, source: Obj::parse(&q[1])?, target: Obj::parse(&q[2])? });
                    }
                    _ => return Err(p.error("expected an object variable or (name SOURCE TARGET)").into()),
                }
            }
        }
        "expect" => {
            let rest: Vec<&str> = items[1..].iter().map(|x| sym(x, "a word")).collect::<Result<_, _>>()?;
            let verdict = |s: &str| s.parse::<Expect>().map_err(|m| clause.error(m));
            match rest.as_slice() {
                [v] => {
                    let v = verdict(v)?;
                    h.snet = Some(v);
                    h.enet = Some(v);
                }
                [cat, v] => {
                    let v = verdict(v)?;
                    match *cat {
                        "snet" => h.snet = Some(v),
                        "enet" => h.enet = Some(v),
                        _ => return Err(clause.error(format!("unknown category `{cat}`")).into()),
                    }
                }
                ["enet", v, part] => {
                    let p = StrongPart::parse(part).ok_or_else(|| clause.error(format!("unknown part `{part}`")))?;
                    h.part_fails.insert(p, verdict(v)?);
                }
                _ => return Err(clause.error("expected (expect [CAT] VERDICT [PART])").into()),
            }
        }
        "parts" => {
            let ps = items[1..]
                .iter()
                .map(|x| {
                    let s = sym(x, "a part name")?;
                    StrongPart::parse(s).ok_or_else(|| x.error(format!("unknown part `{s}`")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            h.parts = Some(ps);
        }
        "witness" => {
            let mut w = Witness::default();
            for b in &items[1..] {
                let pair = b.list().filter(|p| p.len() == 2).ok_or_else(|| b.error("expected (VAR VALUE)"))?;
                let name = sym(&pair[0], "a variable")?.to_string();
                if is_object_var(&name) {
                    let f = Obj::parse(&pair[1])?.bind(&BTreeMap::new()).map_err(|e| b.error(e.to_string()))?;
                    w.objects.insert(name, f);
                } else {
                    w.maps.insert(name, Term::parse(&pair[1])?);
                }
            }
            h.witness = Some(w);
        }
        "lhs" => h.lhs = Some(Term::parse(&args(clause, 1)?[0])?),
        "rhs" => h.rhs = Some(Term::parse(&args(clause, 1)?[0])?),
        "if" => {
            let a = args(clause, 2)?;
            h.premise = Some((Term::parse(&a[0])?, Term::parse(&a[1])?));
        }
        "map" => {
            let a = args(clause, 3)?;
            let side = |x: &Sexp, key: &str| -> Result<Obj, CatalogError> {
                match x.list() {
                    Some([k, o]) if k.sym() == Some(key) => Ok(Obj::parse(o)?),
                    _ => Err(x.error(format!("expected ({key} OBJ)")).into()),
                }
            };
            h.map = Some((side(&a[0], "source")?, side(&a[1], "target")?, Term::parse(&a[2])?));
        }
        other => return Err(clause.error(format!("unknown clause `{other}`")).into()),
    }
    Ok(())
}

/// Every variable used is declared and every declared one is used.
fn validate(eq: &Equation) -> Result<(), CatalogError> {
    let mut obj_used = Vec::new();
    let mut map_used = Vec::new();
    let mut terms = vec![&eq.lhs, &eq.rhs];
    if let Relation::Implies(p, q) = &eq.relation {
        terms.extend([p, q]);
    }
    for t in &terms {
        t.object_vars(&mut obj_used);
        t.map_vars(&mut map_used);
    }
    for m in &eq.maps {
        m.source.vars(&mut obj_used);
        m.target.vars(&mut obj_used);
    }
    let declared: BTreeSet<&String> = eq.objects.iter().collect();
    let used: BTreeSet<&String> = obj_used.iter().collect();
    if let Some(v) = used.difference(&declared).next() {
        return Err(entry_err(&eq.id, format!("object variable `{v}` is not declared")));
    }
    if let Some(v) = declared.difference(&used).next() {
        return Err(entry_err(&eq.id, format!("object variable `{v}` is never used")));
    }
    let declared: BTreeSet<&String> = eq.maps.iter().map(|m| &m.name).collect();
    let used: BTreeSet<&String> = map_used.iter().collect();
    if let Some(v) = used.difference(&declared).next() {
        return Err(entry_err(&eq.id, format!("map variable `{v}` is not declared")));
    }
    if let Some(v) = declared.difference(&used).next() {
        return Err(entry_err(&eq.id, format!("map variable `{v}` is never used")));
    }
    if let Some(w) = &eq.witness {
        for v in w.objects.keys() {
            if !eq.objects.contains(v) {
                return Err(entry_err(&eq.id, format!("witness binds unknown variable `{v}`")));
            }
        }
        for v in w.maps.keys() {
            if !eq.maps.iter().any(|m| &m.name == v) {
                return Err(entry_err(&eq.id, format!("witness binds unknown map `{v}`")));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_catalog_loads_and_covers_every_level() {
        let c = builtin();
        for l in Level::ALL {
            assert!(c.at_level(l).count() > 0, "no entries at {l}");
        }
        assert!(c.get("delta-nabla").is_some());
        assert_eq!(c.get("diag-strong/vmult").unwrap().enet, Expect::Fails);
        assert_eq!(c.get("diag-strong/vunit").unwrap().enet, Expect::Holds);
        assert!(c.entries.iter().all(|e| !e.law.is_empty()), "every entry is described");
    }

    #[test]
    fn laws_attach_to_following_entries() {
        let c = builtin();
        assert_eq!(c.get("assoc-inverse-r").unwrap().law, "reassociation is invertible");
    }

    #[test]
    fn malformed_entries_are_rejected() {
        let bad = [
            "(equation x (level B9) (params) (expect holds) (lhs nm) (rhs nm))",
            "(equation x (level B3) (params A) (expect holds) (lhs nm) (rhs nm))",
            "(equation x (level B3) (params) (expect holds) (lhs (id A)) (rhs (id A)))",
            "(equation x (level B3) (params) (lhs nm) (rhs nm))",
            "(equation x (level B3) (params) (expect holds) (lhs nm))",
            "(frob x)",
        ];
        for text in bad {
            assert!(parse_catalog(text).is_err(), "{text}");
        }
        let dup = "(equation x (level B3) (params) (expect holds) (lhs nm) (rhs nm))\n\
                   (equation x (level B3) (params) (expect holds) (lhs nm) (rhs nm))";
        assert_eq!(parse_catalog(dup).unwrap_err(), CatalogError::Duplicate("x".into()));
    }

    #[test]
    fn levels_parse_case_insensitively() {
        assert_eq!("b5".parse::<Level>().unwrap(), Level::B5);
        assert_eq!("Flat".parse::<Level>().unwrap(), Level::Flat);
        assert!("B6".parse::<Level>().is_err());
    }
}
