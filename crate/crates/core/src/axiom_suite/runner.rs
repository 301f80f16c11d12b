//! Checking catalog entries and collecting the results into reports.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::axiom_suite::catalog::{Catalog, Equation, Expect, Level, Relation, CATALOG_VERSION};
use crate::axiom_suite::sampler::{self, SamplerConfig};
use crate::error::CatalogError;
use crate::json;
use crate::morphisms::term::{Binding, Term};
use crate::morphisms::{elaborate, elaborate_in, AnyHom, Category, Hom, MorphismExpr};
use crate::simple_net::SimpleNet;

/// Anchor bound for order checks between extended nets.
pub const ORDER_ANCHOR_BOUND: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Observed {
    Equal,
    Unequal,
    /// No binding could be built, or an implication's premise failed.
    Vacuous,
}

/// Both sides of an unequal check, as net JSON.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WitnessPair {
    pub lhs: Value,
    pub rhs: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub id: String,
    pub binding: String,
    pub category: Category,
    pub observed: Observed,
    /// Present iff `observed` is unequal.
    pub witness: Option<WitnessPair>,
}

fn bug(eq: &Equation, msg: impl std::fmt::Display) -> CatalogError {
    CatalogError::Entry { id: eq.id.clone(), msg: msg.to_string() }
}

fn typed_pair(eq: &Equation, l: &Term, r: &Term, b: &Binding) -> Result<(MorphismExpr, MorphismExpr), CatalogError> {
    let (l, r) = (l.bind(b).map_err(|e| bug(eq, e))?, r.bind(b).map_err(|e| bug(eq, e))?);
    let (lt, rt) = (l.typ().map_err(|e| bug(eq, e))?, r.typ().map_err(|e| bug(eq, e))?);
    if lt != rt {
        return Err(bug(
            eq,
            format!("sides differ in type under {b}: `{} -> {}` vs `{} -> {}`", lt.0, lt.1, rt.0, rt.1),
        ));
    }
    Ok((l, r))
}

/// Source and target of both sides agree under `b`. Does not build nets.
pub fn type_check(eq: &Equation, b: &Binding) -> Result<(), CatalogError> {
    typed_pair(eq, &eq.lhs, &eq.rhs, b)?;
    if let Relation::Implies(p, q) = &eq.relation {
        typed_pair(eq, p, q, b)?;
    }
    Ok(())
}

fn to_value(text: String) -> Value {
    serde_json::from_str(&text).expect("net JSON parses")
}

fn witness(l: &AnyHom, r: &AnyHom) -> WitnessPair {
    let j = |h: &AnyHom| match h {
        AnyHom::Simple(h) => to_value(json::simple_to_json(&h.net)),
        AnyHom::Extended(h) => to_value(json::extended_to_json(&h.net)),
    };
    WitnessPair { lhs: j(l), rhs: j(r) }
}

/// Elaborates both sides of `eq` under `b` in `cat` and compares them.
/// Ill-typed or non-elaborating sides are catalog bugs, not inequalities.
pub fn check_equation(eq: &Equation, b: &Binding, cat: Category) -> Result<Verdict, CatalogError> {
    let verdict = |observed, witness| Verdict {
        id: eq.id.clone(),
        binding: b.to_string(),
        category: cat,
        observed,
        witness,
    };
    if let Relation::Implies(p, q) = &eq.relation {
        let (p, q) = typed_pair(eq, p, q, b)?;
        let (p, q) = (elaborate_in(&p, cat).map_err(|e| bug(eq, e))?, elaborate_in(&q, cat).map_err(|e| bug(eq, e))?);
        if !p.same(&q) {
            return Ok(verdict(Observed::Vacuous, None));
        }
    }
    let (l, r) = typed_pair(eq, &eq.lhs, &eq.rhs, b)?;
    let (l, r) = (elaborate_in(&l, cat).map_err(|e| bug(eq, e))?, elaborate_in(&r, cat).map_err(|e| bug(eq, e))?);
    let holds = match (&eq.relation, &l, &r) {
        (Relation::Below, AnyHom::Simple(x), AnyHom::Simple(y)) => y.net.leq(&x.net).map_err(|e| bug(eq, e))?,
        (Relation::Below, AnyHom::Extended(x), AnyHom::Extended(y)) => {
            x.net.preceq(&y.net, ORDER_ANCHOR_BOUND).unwrap_or(false)
        }
        _ => l.same(&r),
    };
    Ok(if holds {
        verdict(Observed::Equal, None)
    } else {
        let w = witness(&l, &r);
        verdict(Observed::Unequal, Some(w))
    })
}

/// The fixed binding of an entry's witness clause, if any.
pub fn witness_binding(eq: &Equation) -> Result<Option<Binding>, CatalogError> {
    let Some(w) = &eq.witness else { return Ok(None) };
    let mut b = Binding::new();
    b.objects = w.objects.clone();
    for m in &eq.maps {
        let t = w.maps.get(&m.name).ok_or_else(|| bug(eq, format!("witness leaves `{}` unbound", m.name)))?;
        let h: Hom<SimpleNet> = elaborate(&t.bind(&b).map_err(|e| bug(eq, e))?).map_err(|e| bug(eq, e))?;
        let (s, tg) = (m.source.bind(&b.objects).map_err(|e| bug(eq, e))?, m.target.bind(&b.objects).map_err(|e| bug(eq, e))?);
        if h.source != s || h.target != tg {
            return Err(bug(eq, format!("witness map `{}` is not `{s} -> {tg}`", m.name)));
        }
        b.maps.insert(m.name.clone(), std::sync::Arc::new(h));
    }
    Ok(Some(b))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Expected verdict is `na` in this category.
    Skipped,
    /// The entry itself is broken.
    Error,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EntryReport {
    pub id: String,
    pub level: Level,
    pub law: String,
    pub expected: Expect,
    pub status: Status,
    pub checked: usize,
    pub equal: usize,
    pub unequal: usize,
    pub vacuous: usize,
    /// First unequal verdict, if any.
    pub counterexample: Option<Verdict>,
    pub error: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Random,
    Exhaustive,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub catalog_version: u32,
    pub levels: Vec<Level>,
    pub category: Category,
    pub mode: Mode,
    pub seed: u64,
    pub bindings: usize,
    pub max_depth: usize,
    pub atoms: Vec<String>,
    pub entries: Vec<EntryReport>,
}

impl Report {
    /// Every checked entry met its expectation.
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| matches!(e.status, Status::Pass | Status::Skipped))
    }

    pub fn failures(&self) -> impl Iterator<Item = &EntryReport> {
        self.entries.iter().filter(|e| matches!(e.status, Status::Fail | Status::Error))
    }

    pub fn entry(&self, id: &str) -> Option<&EntryReport> {
        self.entries.iter().find(|e| e.id == id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// One row per entry, then a summary line.
    pub fn table(&self) -> String {
        let w = self.entries.iter().map(|e| e.id.len()).max().unwrap_or(2).max(2);
        let mut out = String::new();
        let levels: Vec<_> = self.levels.iter().map(|l| l.name()).collect();
        let _ = writeln!(
            out,
            "suite {} in {} ({:?}, seed {}, {} bindings, depth {}, atoms {})",
            levels.join(","),
            self.category,
            self.mode,
            self.seed,
            self.bindings,
            self.max_depth,
            self.atoms.join(",")
        );
        let _ = writeln!(out, "{:<w$}  {:<12}  {:<6}  {:<7}  {:>6} {:>6} {:>6}", "id", "level", "expect", "status", "equal", "unequal", "vacuous");
        for e in &self.entries {
            let status = match e.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skipped => "skip",
                Status::Error => "ERROR",
            };
            let _ = writeln!(
                out,
                "{:<w$}  {:<12}  {:<6}  {:<7}  {:>6} {:>6} {:>6}",
                e.id,
                e.level.name(),
                e.expected.to_string(),
                status,
                e.equal,
                e.unequal,
                e.vacuous
            );
            if let Some(msg) = &e.error {
                let _ = writeln!(out, "    error: {msg}");
            } else if let (Status::Fail, Some(c)) = (e.status, &e.counterexample) {
                let _ = writeln!(out, "    counterexample: {}", c.binding);
            }
        }
        let count = |s: Status| self.entries.iter().filter(|e| e.status == s).count();
        let _ = writeln!(
            out,
            "{} entries: {} pass, {} fail, {} skipped, {} errors",
            self.entries.len(),
            count(Status::Pass),
            count(Status::Fail),
            count(Status::Skipped),
            count(Status::Error)
        );
        out
    }
}

fn judge(eq: &Equation, cat: Category, bindings: Result<Vec<Option<Binding>>, CatalogError>) -> EntryReport {
    let expected = eq.expected(cat);
    let mut rep = EntryReport {
        id: eq.id.clone(),
        level: eq.level,
        law: eq.law.clone(),
        expected,
        status: Status::Skipped,
        checked: 0,
        equal: 0,
        unequal: 0,
        vacuous: 0,
        counterexample: None,
        error: None,
    };
    if expected == Expect::Na {
        return rep;
    }
    let bindings = match bindings {
        Ok(b) => b,
        Err(e) => {
            rep.status = Status::Error;
            rep.error = Some(e.to_string());
            return rep;
        }
    };
    let verdicts: Vec<Result<Option<Verdict>, CatalogError>> = bindings
        .par_iter()
        .map(|b| b.as_ref().map(|b| check_equation(eq, b, cat)).transpose())
        .collect();
    rep.checked = verdicts.len();
    for v in verdicts {
        match v {
            Err(e) => {
                rep.status = Status::Error;
                rep.error.get_or_insert(e.to_string());
            }
            Ok(None) => rep.vacuous += 1,
            Ok(Some(v)) => match v.observed {
                Observed::Equal => rep.equal += 1,
                Observed::Vacuous => rep.vacuous += 1,
                Observed::Unequal => {
                    rep.unequal += 1;
                    rep.counterexample.get_or_insert(v);
                }
            },
        }
    }
    if rep.status != Status::Error {
        let ok = match expected {
            Expect::Holds => rep.unequal == 0,
            Expect::Fails => rep.unequal > 0,
            Expect::Na => unreachable!("handled above"),
        };
        rep.status = if ok { Status::Pass } else { Status::Fail };
    }
    rep
}

fn with_witness(eq: &Equation, mut rest: Vec<Option<Binding>>) -> Result<Vec<Option<Binding>>, CatalogError> {
    if let Some(w) = witness_binding(eq)? {
        rest.insert(0, Some(w));
    }
    Ok(rest)
}

fn selected<'a>(catalog: &'a Catalog, levels: &[Level]) -> Vec<&'a Equation> {
    catalog.entries.iter().filter(|e| levels.contains(&e.level)).collect()
}

/// Checks every entry at `levels` on its witness binding (if any) and
/// `cfg.bindings` random bindings.
pub fn run_suite(catalog: &Catalog, levels: &[Level], cat: Category, cfg: &SamplerConfig) -> Report {
    let entries = selected(catalog, levels)
        .into_par_iter()
        .map(|eq| {
            let mut rng = sampler::rng_for(cfg.seed, &eq.id);
            let sampled = (0..cfg.bindings).map(|_| sampler::sample_binding(eq, &mut rng, cfg)).collect();
            judge(eq, cat, with_witness(eq, sampled))
        })
        .collect();
    Report {
        catalog_version: CATALOG_VERSION,
        levels: levels.to_vec(),
        category: cat,
        mode: Mode::Random,
        seed: cfg.seed,
        bindings: cfg.bindings,
        max_depth: cfg.max_depth,
        atoms: cfg.atoms.clone(),
        entries,
    }
}

/// Checks every entry at `levels` on the exhaustive small sweep.
pub fn run_sweep(catalog: &Catalog, levels: &[Level], cat: Category, seed: u64) -> Report {
    let entries = selected(catalog, levels)
        .into_par_iter()
        .map(|eq| judge(eq, cat, with_witness(eq, sampler::sweep_bindings(eq, seed))))
        .collect();
    Report {
        catalog_version: CATALOG_VERSION,
        levels: levels.to_vec(),
        category: cat,
        mode: Mode::Exhaustive,
        seed,
        bindings: 0,
        max_depth: 1,
        atoms: vec!["a".into(), "b".into()],
        entries,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axiom_suite::catalog::{builtin, parse_catalog};
    use proptest::prelude::*;

    fn one(text: &str) -> Equation {
        parse_catalog(text).unwrap().entries.remove(0)
    }

    fn at(pairs: &[(&str, &str)]) -> Binding {
        pairs.iter().fold(Binding::new(), |b, (v, f)| b.with_object(v, f.parse().unwrap()))
    }

    #[test]
    fn false_equations_are_caught_with_witnesses() {
        let eq = one("(equation bogus (level B1) (params A) (expect holds) (lhs (twist A A)) (rhs (id (and A A))))");
        for cat in [Category::SNet, Category::ENet] {
            let v = check_equation(&eq, &at(&[("A", "a")]), cat).unwrap();
            assert_eq!(v.observed, Observed::Unequal);
            assert!(v.witness.is_some());
        }
        let cfg = SamplerConfig { bindings: 10, ..SamplerConfig::default() };
        let cat = Catalog { entries: vec![eq] };
        let r = run_suite(&cat, &[Level::B1], Category::SNet, &cfg);
        assert!(!r.passed());
        assert_eq!(r.entries[0].status, Status::Fail);
    }

    #[test]
    fn equal_verdicts_carry_no_witness() {
        let eq = builtin().get("medial-diag").unwrap();
        let v = check_equation(eq, &at(&[("A", "a"), ("B", "b")]), Category::SNet).unwrap();
        assert_eq!(v.observed, Observed::Equal);
        assert!(v.witness.is_none());
    }

    #[test]
    fn delta_nabla_splits_the_categories() {
        let eq = builtin().get("delta-nabla").unwrap();
        let b = at(&[("A", "a")]);
        assert_eq!(check_equation(eq, &b, Category::SNet).unwrap().observed, Observed::Equal);
        assert_eq!(check_equation(eq, &b, Category::ENet).unwrap().observed, Observed::Unequal);
    }

    #[test]
    fn ill_typed_entries_are_catalog_bugs() {
        let eq = one("(equation bad (level B1) (params A B) (expect holds) (lhs (id A)) (rhs (id B)))");
        let err = check_equation(&eq, &at(&[("A", "a"), ("B", "b")]), Category::SNet).unwrap_err();
        assert!(matches!(err, CatalogError::Entry { .. }));
        // Equal types under this binding, so it checks.
        assert!(check_equation(&eq, &at(&[("A", "a"), ("B", "a")]), Category::SNet).is_ok());
    }

    #[test]
    fn failed_premises_are_vacuous() {
        let eq = one(
            "(implies v (level B1) (params A) (expect holds) (if (id (and A A)) (twist A A)) (lhs (id (and A A))) (rhs (twist A A)))",
        );
        let v = check_equation(&eq, &at(&[("A", "a")]), Category::SNet).unwrap();
        assert_eq!(v.observed, Observed::Vacuous);
    }

    #[test]
    fn na_entries_are_skipped() {
        let cfg = SamplerConfig { bindings: 3, ..SamplerConfig::default() };
        let r = run_suite(builtin(), &[Level::LK], Category::ENet, &cfg);
        assert!(r.entries.iter().all(|e| e.status == Status::Skipped && e.checked == 0));
    }

    #[test]
    fn reports_are_deterministic() {
        let cfg = SamplerConfig { bindings: 4, seed: 11, ..SamplerConfig::default() };
        let a = run_suite(builtin(), &[Level::B3], Category::ENet, &cfg).to_json();
        let b = run_suite(builtin(), &[Level::B3], Category::ENet, &cfg).to_json();
        assert_eq!(a, b);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn every_entry_type_checks(seed in any::<u64>()) {
            let cfg = SamplerConfig { bindings: 1, max_depth: 2, atoms: vec!["a".into(), "b".into(), "c".into()], seed };
            for eq in &builtin().entries {
                let mut rng = sampler::rng_for(seed, &eq.id);
                if let Some(b) = sampler::sample_binding(eq, &mut rng, &cfg) {
                    prop_assert!(type_check(eq, &b).is_ok(), "{}: {:?}", eq.id, type_check(eq, &b));
                }
            }
        }

        #[test]
        fn witness_present_iff_unequal(seed in any::<u64>()) {
            let cfg = SamplerConfig { seed, ..SamplerConfig::default() };
            let eq = builtin().get("id-plus-id").unwrap();
            let mut rng = sampler::rng_for(seed, &eq.id);
            let b = sampler::sample_binding(eq, &mut rng, &cfg).unwrap();
            for cat in [Category::SNet, Category::ENet] {
                let v = check_equation(eq, &b, cat).unwrap();
                prop_assert_eq!(v.witness.is_some(), v.observed == Observed::Unequal);
            }
        }
    }
}
