//! Property tests over randomly generated semigroups and chain seeds.

use proptest::prelude::*;

use sgtree::chains::{self, ChainSeed};
use sgtree::families;
use sgtree::semigroup::NumericalSemigroup;
use sgtree::tree;

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = b;
        b = a % b;
        a = t;
    }
    a
}

/// Random semigroup through a random coprime generator set.
fn semigroup_strategy() -> impl Strategy<Value = NumericalSemigroup> {
    proptest::collection::vec(2u64..=13, 1..4).prop_map(|mut gens| {
        let d = gens.iter().fold(0, |a, &b| gcd(a, b));
        if d != 1 {
            gens.push(d + 1);
        }
        NumericalSemigroup::from_generators(&gens).unwrap()
    })
}

fn seed_strategy() -> impl Strategy<Value = ChainSeed> {
    (2u64..=6, semigroup_strategy()).prop_filter_map("base genus within range", |(d, base)| {
        (base.genus() <= 8).then(|| ChainSeed::new(d, base).unwrap())
    })
}

proptest! {
    #[test]
    fn constructed_semigroups_are_valid(s in semigroup_strategy()) {
        s.validate().unwrap();
    }

    #[test]
    fn gap_and_generator_roundtrips(s in semigroup_strategy()) {
        prop_assert_eq!(&NumericalSemigroup::from_gaps(s.gaps()).unwrap(), &s);
        prop_assert_eq!(
            &NumericalSemigroup::from_generators(&s.minimal_generators()).unwrap(),
            &s
        );
    }

    #[test]
    fn element_is_increasing_bijection(s in semigroup_strategy()) {
        let upper = s.left_count() + 5;
        for i in 0..upper {
            prop_assert!(s.element(i) < s.element(i + 1));
            prop_assert!(s.contains(s.element(i)));
        }
    }

    #[test]
    fn embedding_dimension_bounded_by_multiplicity(s in semigroup_strategy()) {
        prop_assert!(s.minimal_generators().len() as u64 <= s.multiplicity());
    }

    #[test]
    fn children_and_parent_invert(s in semigroup_strategy()) {
        for ch in tree::children(&s) {
            prop_assert_eq!(&tree::parent(&ch).unwrap(), &s);
            ch.validate().unwrap();
        }
    }

    #[test]
    fn push_statistics(s in semigroup_strategy()) {
        let pushed = families::push(&s);
        pushed.validate().unwrap();
        if !s.is_trivial() {
            let m = s.multiplicity();
            prop_assert_eq!(pushed.multiplicity(), m);
            prop_assert_eq!(pushed.genus(), s.genus() + m - 1);
            prop_assert_eq!(pushed.conductor(), s.conductor() + m);
            prop_assert_eq!(
                pushed.left_elements().len(),
                s.left_elements().len() + 1
            );
        }
        prop_assert_eq!(families::unpush(&pushed), Some(s));
    }

    #[test]
    fn push_maps_generators_forward(s in semigroup_strategy()) {
        // holds for every generator except the multiplicity itself: the
        // multiplicity is a member of the push, so twice the multiplicity is
        // always decomposable there
        if !s.is_trivial() {
            let m = s.multiplicity();
            let pushed = families::push(&s);
            let pushed_min = pushed.minimal_generators();
            for g in s.minimal_generators() {
                if g != m {
                    prop_assert!(pushed_min.contains(&(g + m)));
                }
            }
            prop_assert!(!pushed_min.contains(&(2 * m)));
            let pushed_eff = pushed.effective_generators();
            for e in s.effective_generators() {
                if e != m {
                    prop_assert!(pushed_eff.contains(&(e + m)));
                }
            }
        }
    }

    #[test]
    fn seed_roundtrip(seed in seed_strategy()) {
        let d = seed.factor();
        let depth = d * (seed.base().conductor() + 2) + 2;
        let prefix = chains::chain_from_seed(&seed, depth);
        for pair in prefix.windows(2) {
            prop_assert_eq!(&tree::parent(&pair[1]).unwrap(), &pair[0]);
            prop_assert!(chains::in_infinite_chain(&pair[1]));
        }
        let recovered = chains::seed_from_prefix(&prefix).unwrap();
        prop_assert_eq!(recovered, seed);
    }

    #[test]
    fn gap_sets_either_build_or_give_a_witness(
        gaps in proptest::collection::btree_set(1u64..40, 0..12)
    ) {
        let gaps: Vec<u64> = gaps.into_iter().collect();
        match NumericalSemigroup::from_gaps(gaps.clone()) {
            Ok(s) => {
                s.validate().unwrap();
                prop_assert_eq!(s.gaps(), gaps);
            }
            Err(sgtree::Error::ClosureViolation { a, b }) => {
                prop_assert!(!gaps.contains(&a));
                prop_assert!(!gaps.contains(&b));
                prop_assert!(gaps.contains(&(a + b)));
            }
            Err(other) => prop_assert!(false, "unexpected error {other:?}"),
        }
    }
}
