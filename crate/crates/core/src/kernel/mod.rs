//! Computable categories and the finite colimit toolkit.

use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;

use rayon::prelude::*;

use crate::error::{Error, Result};

pub mod arrow;
pub mod fincat;
pub mod finset;
pub mod union_find;

pub use arrow::{ArrowCategory, SquareMorphism};
pub use fincat::{Cat, FinCategory, FinFunctor};
pub use finset::{FinSet, FinSetMap};
pub use union_find::UnionFind;

/// A category whose hom-sets can be listed.
///
/// `homs` must return the same canonically ordered list on every call; every
/// choice made elsewhere in the crate is "first in that order".
pub trait Category: Sync {
    type Obj: Clone + Eq + Hash + Debug + Send + Sync;
    type Mor: Clone + Eq + Hash + Debug + Send + Sync;

    fn source(&self, f: &Self::Mor) -> Self::Obj;
    fn target(&self, f: &Self::Mor) -> Self::Obj;
    fn identity(&self, a: &Self::Obj) -> Self::Mor;
    /// `g ∘ f`.
    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Result<Self::Mor>;
    fn homs(&self, a: &Self::Obj, b: &Self::Obj) -> Result<Vec<Self::Mor>>;

    /// Backends that answer `extensions` by constraint search rather than by
    /// filtering a full hom enumeration.
    fn search_based(&self) -> bool {
        false
    }

    /// Every `c: b -> x` with `c ∘ j = f` for each `(j, f)`, in canonical order.
    fn extensions(
        &self,
        constraints: &[(Self::Mor, Self::Mor)],
        b: &Self::Obj,
        x: &Self::Obj,
        limit: Option<usize>,
    ) -> Result<Vec<Self::Mor>> {
        let mut out = Vec::new();
        for c in self.homs(b, x)? {
            let mut ok = true;
            for (j, f) in constraints {
                if &self.compose(&c, j)? != f {
                    ok = false;
                    break;
                }
            }
            if ok {
                out.push(c);
                if limit.is_some_and(|l| out.len() >= l) {
                    break;
                }
            }
        }
        Ok(out)
    }

    /// For each attempt `f: A -> x`, the canonically first `c` with `c ∘ j = f`.
    fn first_fillers(
        &self,
        j: &Self::Mor,
        x: &Self::Obj,
        attempts: &[Self::Mor],
    ) -> Result<Vec<Option<Self::Mor>>> {
        if self.search_based() {
            let b = self.target(j);
            return attempts
                .par_iter()
                .map(|f| {
                    let found = self.extensions(&[(j.clone(), f.clone())], &b, x, Some(1))?;
                    Ok(found.into_iter().next())
                })
                .collect();
        }
        let candidates = self.homs(&self.target(j), x)?;
        let restricted: Vec<Self::Mor> = candidates
            .par_iter()
            .map(|c| self.compose(c, j))
            .collect::<Result<_>>()?;
        let mut table: HashMap<&Self::Mor, usize> = HashMap::new();
        for (i, r) in restricted.iter().enumerate() {
            table.entry(r).or_insert(i);
        }
        Ok(attempts
            .iter()
            .map(|f| table.get(f).map(|&i| candidates[i].clone()))
            .collect())
    }

    /// Two-sided inverse, canonically first, when one exists.
    fn inverse(&self, f: &Self::Mor) -> Result<Option<Self::Mor>> {
        let a = self.source(f);
        let b = self.target(f);
        let id_a = self.identity(&a);
        let id_b = self.identity(&b);
        for g in self.extensions(&[(f.clone(), id_a)], &b, &a, None)? {
            if self.compose(f, &g)? == id_b {
                return Ok(Some(g));
            }
        }
        Ok(None)
    }
}

impl<C: Category> Category for &C {
    type Obj = C::Obj;
    type Mor = C::Mor;

    fn source(&self, f: &C::Mor) -> C::Obj {
        (**self).source(f)
    }
    fn target(&self, f: &C::Mor) -> C::Obj {
        (**self).target(f)
    }
    fn identity(&self, a: &C::Obj) -> C::Mor {
        (**self).identity(a)
    }
    fn compose(&self, g: &C::Mor, f: &C::Mor) -> Result<C::Mor> {
        (**self).compose(g, f)
    }
    fn homs(&self, a: &C::Obj, b: &C::Obj) -> Result<Vec<C::Mor>> {
        (**self).homs(a, b)
    }
    fn search_based(&self) -> bool {
        (**self).search_based()
    }
    fn extensions(
        &self,
        constraints: &[(C::Mor, C::Mor)],
        b: &C::Obj,
        x: &C::Obj,
        limit: Option<usize>,
    ) -> Result<Vec<C::Mor>> {
        (**self).extensions(constraints, b, x, limit)
    }
    fn first_fillers(
        &self,
        j: &C::Mor,
        x: &C::Obj,
        attempts: &[C::Mor],
    ) -> Result<Vec<Option<C::Mor>>> {
        (**self).first_fillers(j, x, attempts)
    }
    fn inverse(&self, f: &C::Mor) -> Result<Option<C::Mor>> {
        (**self).inverse(f)
    }
}

impl<C: FiniteColimits> FiniteColimits for &C {
    fn coproduct(&self, objs: &[C::Obj]) -> Result<Coproduct<C::Obj, C::Mor>> {
        (**self).coproduct(objs)
    }
    fn copair(&self, summands: &[C::Obj], maps: &[C::Mor], target: &C::Obj) -> Result<C::Mor> {
        (**self).copair(summands, maps, target)
    }
    fn coequalizer(&self, f: &C::Mor, g: &C::Mor) -> Result<(C::Obj, C::Mor)> {
        (**self).coequalizer(f, g)
    }
    fn coequalizer_mediate(&self, q: &C::Mor, h: &C::Mor) -> Result<C::Mor> {
        (**self).coequalizer_mediate(q, h)
    }
    fn pushout(&self, f: &C::Mor, g: &C::Mor) -> Result<Pushout<C::Obj, C::Mor>> {
        (**self).pushout(f, g)
    }
}

/// Listing of a hom-set.
pub fn enumerate_homs<C: Category>(c: &C, a: &C::Obj, b: &C::Obj) -> Result<Vec<C::Mor>> {
    c.homs(a, b)
}

/// `Some(inverse)` when `f` is an isomorphism.
pub fn is_iso<C: Category>(c: &C, f: &C::Mor) -> Result<Option<C::Mor>> {
    c.inverse(f)
}

/// A colimiting cocone over a finite list of objects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coproduct<O, M> {
    pub apex: O,
    pub injections: Vec<M>,
}

/// Pushout of a span `b <-f- a -g-> d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pushout<O, M> {
    pub apex: O,
    pub left: M,
    pub right: M,
    /// The coequalizer projection from `b ⊔ d`.
    pub quotient: M,
    pub summands: Vec<O>,
}

/// Finite coproducts and coequalizers, hence all finite colimits.
pub trait FiniteColimits: Category {
    fn coproduct(&self, objs: &[Self::Obj]) -> Result<Coproduct<Self::Obj, Self::Mor>>;

    /// The map out of `coproduct(summands)` restricting to `maps[i]` on summand `i`.
    fn copair(
        &self,
        summands: &[Self::Obj],
        maps: &[Self::Mor],
        target: &Self::Obj,
    ) -> Result<Self::Mor>;

    /// Quotient object and projection for `f, g: a ⇉ b`.
    fn coequalizer(&self, f: &Self::Mor, g: &Self::Mor) -> Result<(Self::Obj, Self::Mor)>;

    /// The unique `u` with `u ∘ q = h`; errors when `h` does not factor.
    fn coequalizer_mediate(&self, q: &Self::Mor, h: &Self::Mor) -> Result<Self::Mor>;

    fn pushout(&self, f: &Self::Mor, g: &Self::Mor) -> Result<Pushout<Self::Obj, Self::Mor>> {
        if self.source(f) != self.source(g) {
            return Err(Error::NotComposable("pushout of a non-span".into()));
        }
        let summands = vec![self.target(f), self.target(g)];
        let sum = self.coproduct(&summands)?;
        let a = self.compose(&sum.injections[0], f)?;
        let b = self.compose(&sum.injections[1], g)?;
        let (apex, quotient) = self.coequalizer(&a, &b)?;
        let left = self.compose(&quotient, &sum.injections[0])?;
        let right = self.compose(&quotient, &sum.injections[1])?;
        Ok(Pushout {
            apex,
            left,
            right,
            quotient,
            summands,
        })
    }

    /// The map `apex -> z` restricting to `u` and `v` on the two coprojections.
    fn pushout_mediate(
        &self,
        po: &Pushout<Self::Obj, Self::Mor>,
        u: &Self::Mor,
        v: &Self::Mor,
    ) -> Result<Self::Mor> {
        let z = self.target(u);
        let h = self.copair(&po.summands, &[u.clone(), v.clone()], &z)?;
        self.coequalizer_mediate(&po.quotient, &h)
    }
}

/// Pushout of `g` along `f`.
pub fn pushout<C: FiniteColimits>(
    c: &C,
    f: &C::Mor,
    g: &C::Mor,
) -> Result<Pushout<C::Obj, C::Mor>> {
    c.pushout(f, g)
}

/// Coequalizer of a parallel pair.
pub fn coequalizer<C: FiniteColimits>(
    c: &C,
    f: &C::Mor,
    g: &C::Mor,
) -> Result<(C::Obj, C::Mor)> {
    c.coequalizer(f, g)
}
