use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{Category, Coproduct, FiniteColimits};
use crate::error::{Error, Result};

/// A morphism `source_arrow -> target_arrow` of the arrow category:
/// `target_arrow ∘ top = bottom ∘ source_arrow`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SquareMorphism<M> {
    pub source_arrow: M,
    pub target_arrow: M,
    pub top: M,
    pub bottom: M,
}

impl<M: Clone + Eq> SquareMorphism<M> {
    /// Builds the square, rejecting it unless it commutes.
    pub fn new<C: Category<Mor = M>>(
        base: &C,
        source_arrow: M,
        target_arrow: M,
        top: M,
        bottom: M,
    ) -> Result<Self> {
        let sq = SquareMorphism {
            source_arrow,
            target_arrow,
            top,
            bottom,
        };
        sq.validate(base)?;
        Ok(sq)
    }

    pub fn validate<C: Category<Mor = M>>(&self, base: &C) -> Result<()> {
        let lhs = base.compose(&self.target_arrow, &self.top)?;
        let rhs = base.compose(&self.bottom, &self.source_arrow)?;
        if lhs != rhs {
            return Err(Error::invalid("square does not commute"));
        }
        Ok(())
    }
}

/// `Arr(C)`: arrows of `C` as objects, commuting squares as morphisms.
#[derive(Debug, Clone)]
pub struct ArrowCategory<C> {
    pub base: C,
}

impl<C: Category> ArrowCategory<C> {
    pub fn new(base: C) -> Self {
        ArrowCategory { base }
    }

    /// Squares built from the given tops and bottoms, tops outermost.
    fn join(
        &self,
        f: &C::Mor,
        g: &C::Mor,
        tops: Vec<C::Mor>,
        bottoms: Vec<C::Mor>,
        limit: Option<usize>,
    ) -> Result<Vec<SquareMorphism<C::Mor>>> {
        let mut by_key: HashMap<C::Mor, Vec<usize>> = HashMap::new();
        for (i, b) in bottoms.iter().enumerate() {
            by_key.entry(self.base.compose(b, f)?).or_default().push(i);
        }
        let mut out = Vec::new();
        for t in tops {
            let key = self.base.compose(g, &t)?;
            if let Some(idx) = by_key.get(&key) {
                for &i in idx {
                    out.push(SquareMorphism {
                        source_arrow: f.clone(),
                        target_arrow: g.clone(),
                        top: t.clone(),
                        bottom: bottoms[i].clone(),
                    });
                    if limit.is_some_and(|l| out.len() >= l) {
                        return Ok(out);
                    }
                }
            }
        }
        Ok(out)
    }
}

impl<C: Category> Category for ArrowCategory<C> {
    type Obj = C::Mor;
    type Mor = SquareMorphism<C::Mor>;

    fn source(&self, s: &Self::Mor) -> C::Mor {
        s.source_arrow.clone()
    }

    fn target(&self, s: &Self::Mor) -> C::Mor {
        s.target_arrow.clone()
    }

    fn identity(&self, f: &C::Mor) -> Self::Mor {
        SquareMorphism {
            source_arrow: f.clone(),
            target_arrow: f.clone(),
            top: self.base.identity(&self.base.source(f)),
            bottom: self.base.identity(&self.base.target(f)),
        }
    }

    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Result<Self::Mor> {
        if g.source_arrow != f.target_arrow {
            return Err(Error::NotComposable("squares do not meet".into()));
        }
        Ok(SquareMorphism {
            source_arrow: f.source_arrow.clone(),
            target_arrow: g.target_arrow.clone(),
            top: self.base.compose(&g.top, &f.top)?,
            bottom: self.base.compose(&g.bottom, &f.bottom)?,
        })
    }

    fn homs(&self, f: &C::Mor, g: &C::Mor) -> Result<Vec<Self::Mor>> {
        let b = &self.base;
        let tops = b.homs(&b.source(f), &b.source(g))?;
        let bottoms = b.homs(&b.target(f), &b.target(g))?;
        self.join(f, g, tops, bottoms, None)
    }

    fn search_based(&self) -> bool {
        self.base.search_based()
    }

    fn extensions(
        &self,
        constraints: &[(Self::Mor, Self::Mor)],
        b: &C::Mor,
        x: &C::Mor,
        limit: Option<usize>,
    ) -> Result<Vec<Self::Mor>> {
        let base = &self.base;
        let top_constraints: Vec<_> = constraints
            .iter()
            .map(|(j, f)| (j.top.clone(), f.top.clone()))
            .collect();
        let tops = base.extensions(&top_constraints, &base.source(b), &base.source(x), None)?;
        let mut out = Vec::new();
        for t in tops {
            let mut bottom_constraints: Vec<_> = constraints
                .iter()
                .map(|(j, f)| (j.bottom.clone(), f.bottom.clone()))
                .collect();
            bottom_constraints.push((b.clone(), base.compose(x, &t)?));
            let remaining = limit.map(|l| l - out.len());
            let bottoms =
                base.extensions(&bottom_constraints, &base.target(b), &base.target(x), remaining)?;
            for bottom in bottoms {
                out.push(SquareMorphism {
                    source_arrow: b.clone(),
                    target_arrow: x.clone(),
                    top: t.clone(),
                    bottom,
                });
            }
            if limit.is_some_and(|l| out.len() >= l) {
                break;
            }
        }
        Ok(out)
    }

    fn inverse(&self, s: &Self::Mor) -> Result<Option<Self::Mor>> {
        let Some(top) = self.base.inverse(&s.top)? else {
            return Ok(None);
        };
        let Some(bottom) = self.base.inverse(&s.bottom)? else {
            return Ok(None);
        };
        Ok(Some(SquareMorphism {
            source_arrow: s.target_arrow.clone(),
            target_arrow: s.source_arrow.clone(),
            top,
            bottom,
        }))
    }
}

impl<C: FiniteColimits> FiniteColimits for ArrowCategory<C> {
    fn coproduct(&self, arrows: &[C::Mor]) -> Result<Coproduct<C::Mor, Self::Mor>> {
        let b = &self.base;
        let sources: Vec<_> = arrows.iter().map(|f| b.source(f)).collect();
        let targets: Vec<_> = arrows.iter().map(|f| b.target(f)).collect();
        let top = b.coproduct(&sources)?;
        let bottom = b.coproduct(&targets)?;
        let legs = arrows
            .iter()
            .zip(&bottom.injections)
            .map(|(f, inj)| b.compose(inj, f))
            .collect::<Result<Vec<_>>>()?;
        let apex = b.copair(&sources, &legs, &bottom.apex)?;
        let injections = arrows
            .iter()
            .zip(top.injections.into_iter().zip(bottom.injections))
            .map(|(f, (t, u))| SquareMorphism {
                source_arrow: f.clone(),
                target_arrow: apex.clone(),
                top: t,
                bottom: u,
            })
            .collect();
        Ok(Coproduct { apex, injections })
    }

    fn copair(
        &self,
        summands: &[C::Mor],
        maps: &[Self::Mor],
        target: &C::Mor,
    ) -> Result<Self::Mor> {
        let b = &self.base;
        let sources: Vec<_> = summands.iter().map(|f| b.source(f)).collect();
        let targets: Vec<_> = summands.iter().map(|f| b.target(f)).collect();
        let tops: Vec<_> = maps.iter().map(|m| m.top.clone()).collect();
        let bottoms: Vec<_> = maps.iter().map(|m| m.bottom.clone()).collect();
        let top = b.copair(&sources, &tops, &b.source(target))?;
        let bottom = b.copair(&targets, &bottoms, &b.target(target))?;
        let apex = self.coproduct(summands)?.apex;
        Ok(SquareMorphism {
            source_arrow: apex,
            target_arrow: target.clone(),
            top,
            bottom,
        })
    }

    fn coequalizer(&self, f: &Self::Mor, g: &Self::Mor) -> Result<(C::Mor, Self::Mor)> {
        let b = &self.base;
        let (_, q1) = b.coequalizer(&f.top, &g.top)?;
        let (_, q2) = b.coequalizer(&f.bottom, &g.bottom)?;
        let via = b.compose(&q2, &f.target_arrow)?;
        let arrow = b.coequalizer_mediate(&q1, &via)?;
        let proj = SquareMorphism {
            source_arrow: f.target_arrow.clone(),
            target_arrow: arrow.clone(),
            top: q1,
            bottom: q2,
        };
        Ok((arrow, proj))
    }

    fn coequalizer_mediate(&self, q: &Self::Mor, h: &Self::Mor) -> Result<Self::Mor> {
        let b = &self.base;
        Ok(SquareMorphism {
            source_arrow: q.target_arrow.clone(),
            target_arrow: h.target_arrow.clone(),
            top: b.coequalizer_mediate(&q.top, &h.top)?,
            bottom: b.coequalizer_mediate(&q.bottom, &h.bottom)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{FinSet, FinSetMap};

    fn map(s: usize, t: usize, table: &[usize]) -> FinSetMap {
        FinSetMap::new(s, t, table.to_vec()).unwrap()
    }

    #[test]
    fn square_counts() {
        let arr = ArrowCategory::new(FinSet::new());
        let f = map(1, 2, &[0]);
        assert_eq!(arr.homs(&f, &f).unwrap().len(), 2);
        let e = map(0, 1, &[]);
        assert_eq!(arr.homs(&e, &e).unwrap().len(), 1);
        let c = map(2, 1, &[0, 0]);
        assert_eq!(arr.homs(&c, &c).unwrap().len(), 4);
        let id = FinSetMap::identity(2);
        assert_eq!(arr.homs(&id, &id).unwrap().len(), 4);
    }

    #[test]
    fn extensions_match_filtered_homs() {
        let arr = ArrowCategory::new(FinSet::new());
        let f = map(1, 2, &[0]);
        let g = map(2, 2, &[1, 1]);
        let j = arr.identity(&f);
        for s in arr.homs(&f, &g).unwrap() {
            let ext = arr.extensions(&[(j.clone(), s.clone())], &f, &g, None).unwrap();
            assert_eq!(ext, vec![s]);
        }
    }

    #[test]
    fn pointwise_pushout() {
        let arr = ArrowCategory::new(FinSet::new());
        let a = map(1, 1, &[0]);
        let b = map(1, 2, &[0]);
        let s = SquareMorphism::new(&arr.base, a.clone(), b.clone(), map(1, 1, &[0]), map(1, 2, &[0]))
            .unwrap();
        let po = arr.pushout(&s, &s).unwrap();
        let top = arr.base.pushout(&s.top, &s.top).unwrap();
        let bottom = arr.base.pushout(&s.bottom, &s.bottom).unwrap();
        assert_eq!(arr.base.source(&po.apex), top.apex);
        assert_eq!(arr.base.target(&po.apex), bottom.apex);
        po.left.validate(&arr.base).unwrap();
        po.right.validate(&arr.base).unwrap();
    }
}
