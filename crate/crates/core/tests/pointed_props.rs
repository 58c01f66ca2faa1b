use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use weqtk_core::kernel::{Category, FinSet, FinSetMap};
use weqtk_core::lifting::{build_algebraic_injective, AlgInjWitness, Extension};
use weqtk_core::pointed::{
    canonical_extension, free_algebraic_injective, free_chain, verify_universal_property, Algebra, RConstruction,
};

fn empty_to_one() -> FinSetMap {
    FinSetMap::new(0, 1, vec![]).unwrap()
}

fn point_to_two() -> FinSetMap {
    FinSetMap::new(1, 2, vec![0]).unwrap()
}

/// An algebra for `{∅ -> 1}` is a chosen point.
fn pointed_algebra(r: &RConstruction<FinSet>, size: usize, point: usize) -> Algebra<usize, FinSetMap> {
    let filler = FinSetMap::new(1, size, vec![point]).unwrap();
    let w = AlgInjWitness {
        carrier: size,
        generators: r.generators.clone(),
        table: vec![vec![Extension {
            attempt: FinSetMap::new(0, size, vec![]).unwrap(),
            filler,
        }]],
    };
    r.algebra_from_witness(&w).unwrap()
}

#[test]
fn free_chain_suite_for_the_empty_generator() {
    let r = RConstruction::new(FinSet::new(), vec![empty_to_one()]);
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for x in 0..=4usize {
        let res = free_chain(&r, &x, 3).unwrap();
        assert!(res.stabilized_at.is_some_and(|s| s <= 3));
        res.chain.validate(&r).unwrap();
        let alg = res.algebra.as_ref().unwrap();
        assert_eq!(alg.carrier, x + 1);
        for _ in 0..20 {
            let size = rng.gen_range(1..=4);
            let probe = pointed_algebra(&r, size, rng.gen_range(0..size));
            let f = FinSetMap::new(x, size, (0..x).map(|_| rng.gen_range(0..size)).collect()).unwrap();
            assert!(verify_universal_property(&r, &res, &probe, &f).unwrap());
        }
        let unit = res.chain.connecting(&r.base, 0, res.stabilized_at.unwrap()).unwrap();
        assert!(verify_universal_property(&r, &res, alg, &unit).unwrap());
        let id = canonical_extension(&r, &res, alg, &unit).unwrap();
        assert_eq!(id, FinSetMap::identity(x + 1));
    }
}

#[test]
fn stabilization_is_monotone() {
    let r = RConstruction::new(FinSet::new(), vec![empty_to_one()]);
    for x in 0..=3 {
        let res = free_chain(&r, &x, 6).unwrap();
        let s = res.stabilized_at.unwrap();
        for step in &res.chain.steps[s..] {
            assert!(r.base.inverse(step).unwrap().is_some());
        }
        assert!(res.chain.steps.len() > s + 1);
    }
}

#[test]
fn witnesses_and_algebras_correspond() {
    let fs = FinSet::new();
    for gens in [vec![empty_to_one()], vec![point_to_two()]] {
        let r = RConstruction::new(FinSet::new(), gens.clone());
        for n in 0..=3usize {
            let tn = r.stage(&n).unwrap().pushout.apex;
            let mut algebras = 0;
            for s in fs.homs(&tn, &n).unwrap() {
                let alg = Algebra { carrier: n, structure: s };
                if alg.check_law(&r).is_err() {
                    continue;
                }
                algebras += 1;
                let w = r.witness_from_algebra(&alg).unwrap();
                assert!(w.replay(&fs).unwrap());
                assert_eq!(r.algebra_from_witness(&w).unwrap(), alg);
                assert_eq!(r.witness_from_algebra(&r.algebra_from_witness(&w).unwrap()).unwrap(), w);
            }
            // one chosen filler per attempt
            let expected = match gens[0].source {
                0 => n,
                _ => n.pow(n as u32),
            };
            assert_eq!(algebras, expected);
        }
    }
}

#[test]
fn injective_objects_retract_from_their_free_algebra() {
    let r = RConstruction::new(FinSet::new(), vec![empty_to_one()]);
    for n in 1..=3usize {
        let w = build_algebraic_injective(&r.base, &r.generators, &n).unwrap();
        let own = r.algebra_from_witness(&w).unwrap();
        let (_, res) = free_algebraic_injective(&r, &n, 4).unwrap();
        let id = FinSetMap::identity(n);
        let retraction = canonical_extension(&r, &res, &own, &id).unwrap();
        let unit = res.chain.connecting(&r.base, 0, res.stabilized_at.unwrap()).unwrap();
        assert_eq!(retraction.after(&unit).unwrap(), id);
        assert!(verify_universal_property(&r, &res, &own, &id).unwrap());
    }
}

proptest! {
    #[test]
    fn free_chain_laws_hold(x in 0usize..4, bound in 1usize..5) {
        let r = RConstruction::new(FinSet::new(), vec![empty_to_one(), point_to_two()]);
        let res = free_chain(&r, &x, bound).unwrap();
        res.chain.validate(&r).unwrap();
        // every point added for the second generator needs a fresh filler
        prop_assert_eq!(res.stabilized_at, None);
        prop_assert!(res.chain.stages.windows(2).all(|w| w[0] < w[1]));
    }
}
