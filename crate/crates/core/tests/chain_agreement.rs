use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use weqtk_core::chain::corpus::random_map;
use weqtk_core::chain::{
    induced_on_homology, is_quasi_iso_homology, is_quasi_iso_via_injectivity,
    quasi_iso_condition_enumerative, quasi_iso_condition_linear, PrimeField, Rationals,
};
use weqtk_core::lifting::Status;

const BUDGET: usize = 1 << 22;

fn four_way(p: u32, seed: u64) -> (bool, bool, bool, bool) {
    let f = PrimeField::new(p).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = random_map(&f, &mut rng, 5, 3);
    let h = is_quasi_iso_homology(&m);
    let e = quasi_iso_condition_enumerative(&m, BUDGET).unwrap().holds;
    let l = quasi_iso_condition_linear(&m);
    let i = is_quasi_iso_via_injectivity(&m, BUDGET).unwrap().status == Status::Verified;
    (h, e, l, i)
}

#[test]
fn corpus_has_both_outcomes_and_agrees() {
    let (mut yes, mut no) = (0, 0);
    for p in [2, 3] {
        for seed in 0..60 {
            let (h, e, l, i) = four_way(p, seed);
            assert_eq!((h, h, h), (e, l, i), "p={p} seed={seed}");
            if h {
                yes += 1
            } else {
                no += 1
            }
        }
    }
    assert!(yes >= 20 && no >= 20, "{yes} quasi-isomorphisms, {no} others");
}

#[test]
fn rational_linear_matches_homology() {
    let q = Rationals;
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..200 {
        let m = random_map(&q, &mut rng, 3, 3);
        assert_eq!(quasi_iso_condition_linear(&m), is_quasi_iso_homology(&m));
    }
}

#[test]
fn composites_of_quasi_isos() {
    use std::sync::Arc;
    use weqtk_core::chain::corpus::{inclusion, projection, random_complex};
    use weqtk_core::chain::BoundedComplex;
    let f = PrimeField::new(3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..30 {
        let x = Arc::new(random_complex(&f, &mut rng, 0, 3, 2));
        let a = inclusion(&x, &BoundedComplex::disk(f, 1));
        let b = projection(&x, &BoundedComplex::disk(f, 1));
        let c = inclusion(&x, &BoundedComplex::disk(f, 2));
        for g in [b.after(&a).unwrap(), c.after(&b).unwrap()] {
            assert!(is_quasi_iso_homology(&g));
            assert!(quasi_iso_condition_linear(&g));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn three_checks_agree(p in prop::sample::select(vec![2u32, 3]), seed in any::<u64>()) {
        let (h, e, l, i) = four_way(p, seed);
        prop_assert_eq!((h, h, h), (e, l, i));
    }

    #[test]
    fn linear_condition_gives_bijective_homology(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_map(&Rationals, &mut rng, 4, 3);
        if quasi_iso_condition_linear(&m) {
            let (lo, hi) = m.window().unwrap_or((0, -1));
            for n in lo - 2..=hi + 2 {
                let h = induced_on_homology(&m, n);
                prop_assert!(h.injective && h.surjective);
            }
        }
    }
}
