//! Seeded random and exhaustive variable bindings for catalog entries.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::axiom_suite::catalog::{Equation, MapParam};
use crate::formula::{Formula, Label, Sequent};
use crate::morphisms::term::Binding;
use crate::morphisms::Hom;
use crate::simple_net::{Link, SimpleNet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SamplerConfig {
    pub bindings: usize,
    pub max_depth: usize,
    pub atoms: Vec<String>,
    pub seed: u64,
}

impl Default for SamplerConfig {
    fn default() -> SamplerConfig {
        SamplerConfig { bindings: 25, max_depth: 2, atoms: vec!["a".into(), "b".into()], seed: 0 }
    }
}

/// Probability of stopping at a leaf above the depth limit.
const LEAF_PROB: f64 = 0.35;
/// Object resamples before falling back to a single shared formula.
const OBJECT_TRIES: usize = 64;
/// Largest number of object bindings the exhaustive sweep enumerates per entry.
pub const SWEEP_CAP: usize = 6500;

/// FNV-1a of the entry id, mixed with the run seed.
pub fn entry_seed(seed: u64, id: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in id.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h ^ seed
}

pub fn rng_for(seed: u64, id: &str) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(entry_seed(seed, id))
}

fn leaves(atoms: &[String]) -> Vec<Formula> {
    let mut out: Vec<Formula> = atoms.iter().flat_map(|a| [Formula::atom(a), Formula::neg_atom(a)]).collect();
    out.extend([Formula::Top, Formula::Bot]);
    out
}

/// A formula tree of depth at most `depth` over the atoms, their negations and the units.
pub fn random_formula(rng: &mut impl Rng, depth: usize, atoms: &[String]) -> Formula {
    if depth == 0 || rng.gen_bool(LEAF_PROB) {
        return leaves(atoms).choose(rng).expect("at least the units").clone();
    }
    let (l, r) = (random_formula(rng, depth - 1, atoms), random_formula(rng, depth - 1, atoms));
    if rng.gen_bool(0.5) {
        Formula::and(l, r)
    } else {
        Formula::or(l, r)
    }
}

/// Every well-typed link on `(~source, target)`: t self-links and all
/// negative-to-positive pairs of the same atom.
pub fn full_linking(source: &Formula, target: &Formula) -> SimpleNet {
    let sequent = Sequent::new(vec![source.negate(), target.clone()]);
    let ls = sequent.leaves();
    let mut links: BTreeSet<Link> = BTreeSet::new();
    for (x, lx) in &ls {
        match lx {
            Label::Top => {
                links.insert((*x, *x));
            }
            Label::Neg(a) => {
                for (y, ly) in &ls {
                    if *ly == Label::Pos(a.clone()) {
                        links.insert((*x, *y));
                    }
                }
            }
            _ => {}
        }
    }
    SimpleNet::new(sequent, links).expect("candidate links are well typed")
}

/// A random correct map `source -> target`, if any exists. Correctness is
/// monotone in the linking, so one exists iff the full linking is correct;
/// links are then dropped at random while the net stays correct.
pub fn random_map(rng: &mut impl Rng, source: &Formula, target: &Formula) -> Option<Hom<SimpleNet>> {
    let full = full_linking(source, target);
    if !full.is_correct_uncapped().ok()? {
        return None;
    }
    let mut links: BTreeSet<Link> = full.links().clone();
    let mut atom: Vec<Link> = full.atom_links().copied().collect();
    atom.shuffle(rng);
    for l in atom {
        if rng.gen_bool(0.5) {
            links.remove(&l);
            let trial = SimpleNet::new(full.sequent().clone(), links.clone()).expect("subset of a valid linking");
            if !trial.is_correct_uncapped().ok()? {
                links.insert(l);
            }
        }
    }
    let net = SimpleNet::new(full.sequent().clone(), links).expect("subset of a valid linking");
    Some(Hom { source: source.clone(), target: target.clone(), net })
}

fn bind_maps(rng: &mut impl Rng, maps: &[MapParam], mut b: Binding) -> Option<Binding> {
    for m in maps {
        let (s, t) = (m.source.bind(&b.objects).ok()?, m.target.bind(&b.objects).ok()?);
        let h = random_map(rng, &s, &t)?;
        b.maps.insert(m.name.clone(), Arc::new(h));
    }
    Some(b)
}

/// One random binding of every variable of `eq`. Objects are resampled
/// until every map variable has an inhabited type; as a last resort all
/// objects share one formula. `None` means no binding was found.
pub fn sample_binding(eq: &Equation, rng: &mut impl Rng, cfg: &SamplerConfig) -> Option<Binding> {
    let tries = if eq.maps.is_empty() { 1 } else { OBJECT_TRIES };
    for _ in 0..tries {
        let mut b = Binding::new();
        for v in &eq.objects {
            b.objects.insert(v.clone(), random_formula(rng, cfg.max_depth, &cfg.atoms));
        }
        if let Some(b) = bind_maps(rng, &eq.maps, b) {
            return Some(b);
        }
    }
    let shared = random_formula(rng, cfg.max_depth, &cfg.atoms);
    let b = eq.objects.iter().fold(Binding::new(), |b, v| b.with_object(v, shared.clone()));
    bind_maps(rng, &eq.maps, b)
}

/// All formulas of depth at most one over the atoms: 6 leaves and 72 binary
/// nodes for two atoms.
pub fn depth_one_formulas(atoms: &[String]) -> Vec<Formula> {
    let ls = leaves(atoms);
    let mut out = ls.clone();
    for l in &ls {
        for r in &ls {
            out.push(Formula::and(l.clone(), r.clone()));
            out.push(Formula::or(l.clone(), r.clone()));
        }
    }
    out
}

/// The object domain of the exhaustive sweep for `k` variables: the largest
/// of depth-one formulas over {a, b}, the six leaves, {a, b, t, f} and
/// {a, b} whose `k`-th power fits [`SWEEP_CAP`].
pub fn sweep_domain(k: usize) -> Vec<Formula> {
    let atoms = vec!["a".to_string(), "b".to_string()];
    let ladder = [
        depth_one_formulas(&atoms),
        leaves(&atoms),
        vec![Formula::atom("a"), Formula::atom("b"), Formula::Top, Formula::Bot],
        vec![Formula::atom("a"), Formula::atom("b")],
    ];
    let fits = |d: &Vec<Formula>| (d.len() as f64).powi(k as i32) <= SWEEP_CAP as f64;
    ladder.iter().find(|d| fits(d)).unwrap_or(&ladder[3]).clone()
}

/// Every object binding over [`sweep_domain`], in lexicographic order, with
/// one seeded random map per map variable. Bindings whose map types are
/// uninhabited come back as `None`.
pub fn sweep_bindings(eq: &Equation, seed: u64) -> Vec<Option<Binding>> {
    let k = eq.objects.len();
    let dom = sweep_domain(k);
    let mut rng = rng_for(seed, &eq.id);
    let total = dom.len().pow(k as u32);
    (0..total)
        .map(|mut n| {
            let mut b = Binding::new();
            for v in eq.objects.iter().rev() {
                b.objects.insert(v.clone(), dom[n % dom.len()].clone());
                n /= dom.len();
            }
            bind_maps(&mut rng, &eq.maps, b)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn atoms() -> Vec<String> {
        vec!["a".into(), "b".into(), "c".into()]
    }

    #[test]
    fn entry_seeds_differ_by_id_and_seed() {
        assert_ne!(entry_seed(0, "x"), entry_seed(0, "y"));
        assert_ne!(entry_seed(0, "x"), entry_seed(1, "x"));
        assert_eq!(entry_seed(7, "x"), entry_seed(7, "x"));
    }

    #[test]
    fn depth_one_domain_has_78_formulas() {
        assert_eq!(depth_one_formulas(&["a".into(), "b".into()]).len(), 78);
        assert_eq!(sweep_domain(1).len(), 78);
        assert_eq!(sweep_domain(2).len(), 78);
        assert_eq!(sweep_domain(3).len(), 6);
        assert_eq!(sweep_domain(5).len(), 4);
        assert_eq!(sweep_domain(8).len(), 2);
    }

    #[test]
    fn uninhabited_types_have_no_map() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(random_map(&mut rng, &Formula::atom("a"), &Formula::atom("b")).is_none());
        assert!(random_map(&mut rng, &Formula::Top, &Formula::Bot).is_none());
        assert!(random_map(&mut rng, &Formula::Bot, &Formula::atom("b")).is_some());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn random_formulas_respect_depth(seed in any::<u64>(), depth in 0usize..4) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let f = random_formula(&mut rng, depth, &atoms());
            prop_assert!(f.depth() <= depth);
            prop_assert!(f.atoms().iter().all(|a| atoms().contains(a)));
        }

        #[test]
        fn random_maps_are_correct_and_below_the_full_linking(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (s, t) = (random_formula(&mut rng, 2, &atoms()), random_formula(&mut rng, 2, &atoms()));
            let full = full_linking(&s, &t);
            match random_map(&mut rng, &s, &t) {
                Some(h) => {
                    prop_assert!(h.net.is_correct_uncapped().unwrap());
                    prop_assert!(h.net.leq(&full).unwrap());
                }
                None => prop_assert!(!full.is_correct_uncapped().unwrap()),
            }
        }
    }
}
