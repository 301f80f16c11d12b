//! Properties of simple nets on sampled maps.

use boolcat::axiom_suite::sampler::{full_linking, random_formula, random_map};
use boolcat::formula::Dir;
use boolcat::{Hom, SimpleNet};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn atoms() -> Vec<String> {
    vec!["a".into(), "b".into(), "c".into()]
}

/// Two random correct maps of one type; targets are resampled until the
/// type is inhabited.
fn parallel_pair(seed: u64) -> Option<(Hom<SimpleNet>, Hom<SimpleNet>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = random_formula(&mut rng, 2, &atoms());
    (0..50).find_map(|_| {
        let b = random_formula(&mut rng, 2, &atoms());
        let f = random_map(&mut rng, &a, &b)?;
        let g = random_map(&mut rng, &a, &b)?;
        Some((f, g))
    })
}

/// Is `leaf` under the dropped side of some conjunction in `choices`?
fn pruned_away(leaf: &boolcat::LeafRef, choices: &std::collections::BTreeMap<boolcat::LeafRef, Dir>) -> bool {
    choices.iter().any(|(node, keep)| {
        let (n, l) = (node.path.to_string(), leaf.path.to_string());
        let drop = if *keep == Dir::L { 'R' } else { 'L' };
        node.i == leaf.i && l.starts_with(&n) && l[n.len()..].starts_with(drop)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn correctness_is_monotone(seed in any::<u64>()) {
        if let Some((f, g)) = parallel_pair(seed) {
            let full = full_linking(&f.source, &f.target);
            prop_assert!(f.net.leq(&full).unwrap());
            prop_assert!(full.is_correct_uncapped().unwrap());
            let up = f.net.sum(&g.net).unwrap();
            prop_assert!(up.is_correct_uncapped().unwrap());
        }
    }

    #[test]
    fn sum_is_a_semilattice_with_leq_as_its_order(seed in any::<u64>()) {
        if let Some((f, g)) = parallel_pair(seed) {
            let (f, g) = (&f.net, &g.net);
            let s = f.sum(g).unwrap();
            prop_assert!(s.equal(&g.sum(f).unwrap()));
            prop_assert!(f.sum(f).unwrap().equal(f));
            prop_assert!(f.leq(&s).unwrap() && g.leq(&s).unwrap());
            prop_assert_eq!(f.leq(g).unwrap(), f.sum(g).unwrap().equal(g));
        }
    }

    #[test]
    fn prunings_restrict_to_surviving_leaves(seed in any::<u64>()) {
        if let Some((f, _)) = parallel_pair(seed) {
            let leaves = f.net.sequent().leaves();
            let views: Vec<_> = f.net.prunings().unwrap().collect();
            prop_assert_eq!(views.len() as u64, 1u64 << f.net.and_count());
            for v in views {
                for (l, _) in &leaves {
                    prop_assert_eq!(v.survivors.contains(l), !pruned_away(l, &v.pruning.choices));
                }
                let kept: std::collections::BTreeSet<_> = f
                    .net
                    .links()
                    .iter()
                    .filter(|(a, b)| v.survivors.contains(a) && v.survivors.contains(b))
                    .copied()
                    .collect();
                prop_assert_eq!(&v.links, &kept);
                // Every surviving t leaf keeps its self-link.
                for (l, lab) in &leaves {
                    if *lab == boolcat::Label::Top && v.survivors.contains(l) {
                        prop_assert!(v.links.contains(&(*l, *l)));
                    }
                }
            }
        }
    }

    #[test]
    fn census_agrees_with_the_correctness_search(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = (random_formula(&mut rng, 2, &atoms()), random_formula(&mut rng, 2, &atoms()));
        let net = full_linking(&a, &b);
        let (total, linked) = net.pruning_census().unwrap();
        prop_assert_eq!(total == linked, net.is_correct().unwrap());
    }
}

#[test]
fn validate_rejects_each_kind_of_bad_link() {
    let s = boolcat::parse_sequent("~a | t, a | (f | b)").unwrap();
    let at = boolcat::LeafRef::at;
    let bad = [
        (at(0, "L"), at(1, "RR")),
        (at(1, "L"), at(0, "L")),
        (at(1, "RL"), at(1, "RL")),
        (at(0, "L"), at(1, "RL")),
        (at(0, "L"), at(2, "")),
    ];
    for link in bad {
        let mut links = std::collections::BTreeSet::from([(at(0, "R"), at(0, "R")), link]);
        assert!(SimpleNet::new(s.clone(), links.clone()).is_err(), "accepted {link:?}");
        links.remove(&link);
        links.insert((at(0, "L"), at(1, "L")));
        assert!(SimpleNet::new(s.clone(), links).is_ok());
    }
    // Every t leaf needs its self-link.
    let no_top = std::collections::BTreeSet::from([(at(0, "L"), at(1, "L"))]);
    assert!(SimpleNet::new(s, no_top).is_err());
}
