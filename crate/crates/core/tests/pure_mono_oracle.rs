use weqtk_core::kernel::{ArrowCategory, Category, FinSet};
use weqtk_core::lifting::replay_injective;
use weqtk_core::pure_mono::{build_purity_squares, is_pure_mono_against, split_mono_oracle};

#[test]
fn purity_matches_split_monos() {
    let fs = FinSet::new();
    let arr = ArrowCategory::new(FinSet::new());
    let family = build_purity_squares(3).unwrap();
    let mut seen = [0, 0];
    for a in 0..=3 {
        for b in 0..=3 {
            for f in fs.homs(&a, &b).unwrap() {
                let v = is_pure_mono_against(&f, &family).unwrap();
                assert_eq!(v.is_verified(), split_mono_oracle(&f), "{f:?}");
                for (sq, check) in family.squares.iter().zip(&v.checked) {
                    assert!(replay_injective(&arr, sq, &f, check).unwrap());
                }
                seen[usize::from(v.is_verified())] += 1;
            }
        }
    }
    assert!(seen[0] > 0 && seen[1] > 0);
}
