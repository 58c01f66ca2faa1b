//! Pure monomorphisms of finite sets as injectives in the arrow category.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::kernel::{ArrowCategory, Category, FinSet, FinSetMap, FiniteColimits, SquareMorphism};
use crate::lifting::{is_injective, InjectivityVerdict, Status};

pub type FinSquare = SquareMorphism<FinSetMap>;

/// For each `j: n -> m` with `n, m <= size_bound`, the pushout square of `j`
/// along itself, read as a map `j -> (m -> m ∪_n m)` of the arrow category.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PuritySquareFamily {
    pub size_bound: usize,
    pub squares: Vec<FinSquare>,
}

pub fn build_purity_squares(size_bound: usize) -> Result<PuritySquareFamily> {
    let fs = FinSet::new();
    let mut squares = Vec::new();
    for n in 0..=size_bound {
        for m in 0..=size_bound {
            for j in fs.homs(&n, &m)? {
                let po = fs.pushout(&j, &j)?;
                squares.push(SquareMorphism::new(&fs, j.clone(), po.left, j, po.right)?);
            }
        }
    }
    Ok(PuritySquareFamily { size_bound, squares })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PurityVerdict {
    pub status: Status,
    pub size_bound: usize,
    /// One verdict per square checked, in family order; stops at the first failure.
    pub checked: Vec<InjectivityVerdict<FinSquare>>,
    pub failing_square: Option<usize>,
}

impl PurityVerdict {
    pub fn is_verified(&self) -> bool {
        self.status == Status::Verified
    }
}

/// Injectivity of `f` against every square of the family.
pub fn is_pure_mono_against(f: &FinSetMap, family: &PuritySquareFamily) -> Result<PurityVerdict> {
    let arr = ArrowCategory::new(FinSet::new());
    let mut checked = Vec::new();
    for (i, sq) in family.squares.iter().enumerate() {
        let v = is_injective(&arr, sq, f)?;
        let failed = !v.is_verified();
        checked.push(v);
        if failed {
            return Ok(PurityVerdict {
                status: Status::RefutedExhaustive,
                size_bound: family.size_bound,
                checked,
                failing_square: Some(i),
            });
        }
    }
    Ok(PurityVerdict {
        status: Status::Verified,
        size_bound: family.size_bound,
        checked,
        failing_square: None,
    })
}

pub fn is_pure_mono(f: &FinSetMap, size_bound: usize) -> Result<PurityVerdict> {
    is_pure_mono_against(f, &build_purity_squares(size_bound)?)
}

/// Split monomorphisms of finite sets.
pub fn split_mono_oracle(f: &FinSetMap) -> bool {
    f.is_injective() && (f.source > 0 || f.target == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lifting::replay_injective;

    #[test]
    fn family_shapes() {
        let fam = build_purity_squares(2).unwrap();
        assert_eq!(fam.squares.len(), 1 + 1 + 1 + 1 + 2 + 1 + 4);
        let id1 = fam.squares.iter().find(|s| s.source_arrow == FinSetMap::identity(1)).unwrap();
        assert_eq!(id1.target_arrow.target, 1);
        let incl = fam.squares.iter().find(|s| s.source_arrow.table == [0] && s.source_arrow.target == 2).unwrap();
        assert_eq!(incl.target_arrow.target, 3);
        let empty = fam.squares.iter().find(|s| s.source_arrow.source == 0 && s.source_arrow.target == 1).unwrap();
        assert_eq!(empty.target_arrow.target, 2);
    }

    #[test]
    fn small_cases() {
        assert!(is_pure_mono(&FinSetMap::identity(2), 2).unwrap().is_verified());
        assert!(is_pure_mono(&FinSetMap::new(1, 3, vec![2]).unwrap(), 2).unwrap().is_verified());
        let v = is_pure_mono(&FinSetMap::new(0, 1, vec![]).unwrap(), 2).unwrap();
        assert_eq!(v.status, Status::RefutedExhaustive);
        let fam = build_purity_squares(2).unwrap();
        let arr = ArrowCategory::new(FinSet::new());
        let f = FinSetMap::new(0, 1, vec![]).unwrap();
        let i = v.failing_square.unwrap();
        assert!(replay_injective(&arr, &fam.squares[i], &f, v.checked.last().unwrap()).unwrap());
    }
}
