//! Elaboration properties: typing, correctness of every generator and
//! composite, and functoriality of the tensors.

use boolcat::axiom_suite::sampler::{random_formula, random_map, sample_binding};
use boolcat::axiom_suite::{self, SamplerConfig};
use boolcat::morphisms::{elaborate, GenKind, Generator, MorphismExpr, Net};
use boolcat::{ExtendedNet, Hom, SimpleNet};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn atoms() -> Vec<String> {
    vec!["a".into(), "b".into(), "c".into()]
}

fn map_from(rng: &mut ChaCha8Rng, source: &boolcat::Formula) -> Hom<SimpleNet> {
    loop {
        let t = random_formula(rng, 2, &atoms());
        if let Some(h) = random_map(rng, source, &t) {
            return h;
        }
    }
}

fn functorial<N: Net>(f: &Hom<SimpleNet>, g: &Hom<SimpleNet>, h: &Hom<SimpleNet>, k: &Hom<SimpleNet>) -> bool {
    let [f, g, h, k] = [f, g, h, k].map(Hom::<N>::lift);
    let and_first = f.tensor_and(&g).unwrap().after(&h.tensor_and(&k).unwrap()).unwrap();
    let and_after = f.after(&h).unwrap().tensor_and(&g.after(&k).unwrap()).unwrap();
    let or_first = f.tensor_or(&g).unwrap().after(&h.tensor_or(&k).unwrap()).unwrap();
    let or_after = f.after(&h).unwrap().tensor_or(&g.after(&k).unwrap()).unwrap();
    and_first.same(&and_after) && or_first.same(&or_after)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn every_generator_is_correct_and_typed(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for kind in GenKind::all() {
            let params = (0..kind.arity()).map(|_| random_formula(&mut rng, 2, &atoms())).collect();
            let g = Generator::new(kind, params).unwrap();
            let (s, t) = g.signature();
            let h: Hom<SimpleNet> = elaborate(&MorphismExpr::Gen(g)).unwrap();
            prop_assert_eq!((&h.source, &h.target), (&s, &t), "{}", kind.name());
            prop_assert!(h.net.is_correct_uncapped().unwrap(), "{} is not correct", kind.name());
        }
    }

    #[test]
    fn composition_preserves_correctness(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_formula(&mut rng, 2, &atoms());
        let f = map_from(&mut rng, &a);
        let g = map_from(&mut rng, &f.target);
        let gf = g.after(&f).unwrap();
        prop_assert!(gf.net.is_correct_uncapped().unwrap());
        prop_assert!(Hom::<ExtendedNet>::lift(&g).after(&Hom::lift(&f)).unwrap().net.is_correct().unwrap());
    }

    #[test]
    fn tensors_are_functorial(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, d) = (random_formula(&mut rng, 2, &atoms()), random_formula(&mut rng, 2, &atoms()));
        let h = map_from(&mut rng, &a);
        let f = map_from(&mut rng, &h.target);
        let k = map_from(&mut rng, &d);
        let g = map_from(&mut rng, &k.target);
        prop_assert!(functorial::<SimpleNet>(&f, &g, &h, &k));
        prop_assert!(functorial::<ExtendedNet>(&f, &g, &h, &k));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    /// Elaborated source and target agree with the computed type of every
    /// catalog side, in both categories.
    #[test]
    fn elaboration_is_typed(seed in any::<u64>()) {
        let cfg = SamplerConfig { seed, ..SamplerConfig::default() };
        for eq in &axiom_suite::builtin().entries {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ axiom_suite::sampler::entry_seed(0, &eq.id));
            let Some(b) = sample_binding(eq, &mut rng, &cfg) else { continue };
            for side in [&eq.lhs, &eq.rhs] {
                let e = side.bind(&b).unwrap();
                let typ = e.typ().unwrap();
                let s: Hom<SimpleNet> = elaborate(&e).unwrap();
                let x: Hom<ExtendedNet> = elaborate(&e).unwrap();
                prop_assert_eq!((&s.source, &s.target), (&typ.0, &typ.1), "{}", eq.id);
                prop_assert_eq!((&x.source, &x.target), (&typ.0, &typ.1), "{}", eq.id);
            }
        }
    }
}
