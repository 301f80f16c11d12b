//! Composition of extended nets: validity, associativity, and agreement
//! with simple nets once counts and anchors are forgotten.

use boolcat::axiom_suite::sampler::{full_linking, random_formula, random_map};
use boolcat::{ExtendedNet, Formula, Hom, SimpleNet};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn atoms() -> Vec<String> {
    vec!["a".into(), "b".into()]
}

/// A random correct map out of `source`: a sampled one or, half the time,
/// the full linking, whose composites tend to keep anchors.
fn map_from(rng: &mut ChaCha8Rng, source: &Formula) -> Hom<SimpleNet> {
    loop {
        let t = random_formula(rng, 3, &atoms());
        if let Some(h) = random_map(rng, source, &t) {
            if rng.gen_bool(0.5) {
                return Hom::new(source.clone(), t.clone(), full_linking(source, &t)).unwrap();
            }
            return h;
        }
    }
}

fn chain(seed: u64, n: usize) -> Vec<Hom<SimpleNet>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut src = random_formula(&mut rng, 3, &atoms());
    let mut out = Vec::new();
    for _ in 0..n {
        let h = map_from(&mut rng, &src);
        src = h.target.clone();
        out.push(h);
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn composites_validate_and_are_correct(seed in any::<u64>()) {
        let c = chain(seed, 2);
        let gf = Hom::<ExtendedNet>::lift(&c[1]).after(&Hom::lift(&c[0])).unwrap();
        prop_assert!(gf.net.validate().is_ok());
        prop_assert!(gf.net.is_correct().unwrap());
    }

    #[test]
    fn composition_is_associative(seed in any::<u64>()) {
        let c: Vec<Hom<ExtendedNet>> = chain(seed, 3).iter().map(Hom::lift).collect();
        let left = c[2].after(&c[1].after(&c[0]).unwrap()).unwrap();
        let right = c[2].after(&c[1]).unwrap().after(&c[0]).unwrap();
        prop_assert!(left.same(&right));
    }

    #[test]
    fn forgetting_counts_gives_the_simple_composite(seed in any::<u64>()) {
        let c = chain(seed, 2);
        let simple = c[1].after(&c[0]).unwrap();
        let ext = Hom::<ExtendedNet>::lift(&c[1]).after(&Hom::lift(&c[0])).unwrap();
        prop_assert_eq!(&ext.net.leaf_paths(), simple.net.links());
        if let Some(s) = ext.net.to_simple() {
            prop_assert!(s.equal(&simple.net));
        }
    }

    #[test]
    fn eliminating_every_anchor_keeps_the_paths(seed in any::<u64>()) {
        let c = chain(seed, 3);
        let ext = Hom::<ExtendedNet>::lift(&c[2]).after(&Hom::<ExtendedNet>::lift(&c[1]).after(&Hom::lift(&c[0])).unwrap()).unwrap();
        if ext.net.anchors().len() <= 4 {
            for n in ext.net.elimination_normal_forms(4).unwrap() {
                prop_assert!(n.anchors().is_empty());
                prop_assert_eq!(n.leaf_paths(), ext.net.leaf_paths());
            }
        }
    }
}
