//! Lifting properties, injectivity and cone injectivity over any listed category,
//! with witness-carrying algebraic injectives.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::{ArrowCategory, Category, FinSetMap, SquareMorphism};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Status {
    Verified,
    RefutedExhaustive,
    UnknownAtBound,
}

/// Outcome of a bounded search. `witnesses` is complete when the status is
/// `Verified`; `counterexample` is the least unsolved problem otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict<W, X> {
    pub status: Status,
    pub witnesses: Vec<W>,
    pub counterexample: Option<X>,
    pub bound: Option<usize>,
}

impl<W, X> Verdict<W, X> {
    pub fn is_verified(&self) -> bool {
        self.status == Status::Verified
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Extension<M> {
    pub attempt: M,
    pub filler: M,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Diagonal<M> {
    pub square: SquareMorphism<M>,
    pub diagonal: M,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConeExtension<M> {
    pub attempt: M,
    /// Position in the cone's leg list.
    pub leg: usize,
    pub filler: M,
}

pub type InjectivityVerdict<M> = Verdict<Extension<M>, M>;
pub type LiftingVerdict<M> = Verdict<Diagonal<M>, SquareMorphism<M>>;
pub type ConeVerdict<M> = Verdict<ConeExtension<M>, M>;

/// A map `j: A -> B` and an attempt `f: A -> C` to be extended along it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftingProblem<M> {
    pub j: M,
    pub f: M,
}

impl<M: Clone> LiftingProblem<M> {
    pub fn new<C: Category<Mor = M>>(c: &C, j: M, f: M) -> Result<Self> {
        if c.source(&j) != c.source(&f) {
            return Err(Error::NotComposable("problem maps have different sources".into()));
        }
        Ok(LiftingProblem { j, f })
    }
}

/// Morphisms with a common source. When `complete` is false the listed legs
/// are a finite prefix of a longer family, so failure to factor is only a
/// refutation up to the listed legs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cone<M> {
    pub legs: Vec<M>,
    pub complete: bool,
}

impl<M: Clone> Cone<M> {
    pub fn new<C: Category<Mor = M>>(c: &C, legs: Vec<M>, complete: bool) -> Result<Self> {
        let Some(first) = legs.first() else {
            return Err(Error::invalid("a cone needs at least one leg"));
        };
        let apex = c.source(first);
        if legs.iter().any(|l| c.source(l) != apex) {
            return Err(Error::invalid("cone legs have different sources"));
        }
        Ok(Cone { legs, complete })
    }

    pub fn single(j: M) -> Self {
        Cone {
            legs: vec![j],
            complete: true,
        }
    }

    pub fn apex<C: Category<Mor = M>>(&self, c: &C) -> C::Obj {
        c.source(&self.legs[0])
    }
}

/// Whether `g` has the right lifting property against `j`: every commuting
/// square from `j` to `g` gets its canonically first diagonal.
pub fn has_rlp<C: Category>(c: &C, j: &C::Mor, g: &C::Mor) -> Result<LiftingVerdict<C::Mor>> {
    let arr = ArrowCategory::new(c);
    let squares = arr.homs(j, g)?;
    let b = c.target(j);
    let x = c.source(g);
    let diagonals: Vec<Option<C::Mor>> = if c.search_based() {
        squares
            .par_iter()
            .map(|sq| {
                for d in c.extensions(&[(j.clone(), sq.top.clone())], &b, &x, None)? {
                    if c.compose(g, &d)? == sq.bottom {
                        return Ok(Some(d));
                    }
                }
                Ok(None)
            })
            .collect::<Result<_>>()?
    } else {
        let candidates = c.homs(&b, &x)?;
        let keys: Vec<(C::Mor, C::Mor)> = candidates
            .par_iter()
            .map(|d| Ok((c.compose(d, j)?, c.compose(g, d)?)))
            .collect::<Result<_>>()?;
        let mut table: HashMap<&(C::Mor, C::Mor), usize> = HashMap::new();
        for (i, k) in keys.iter().enumerate() {
            table.entry(k).or_insert(i);
        }
        squares
            .iter()
            .map(|sq| {
                table
                    .get(&(sq.top.clone(), sq.bottom.clone()))
                    .map(|&i| candidates[i].clone())
            })
            .collect()
    };
    let mut witnesses = Vec::with_capacity(squares.len());
    for (square, d) in squares.into_iter().zip(diagonals) {
        match d {
            Some(diagonal) => witnesses.push(Diagonal { square, diagonal }),
            None => {
                return Ok(Verdict {
                    status: Status::RefutedExhaustive,
                    witnesses: Vec::new(),
                    counterexample: Some(square),
                    bound: None,
                })
            }
        }
    }
    Ok(Verdict {
        status: Status::Verified,
        witnesses,
        counterexample: None,
        bound: None,
    })
}

/// Whether every `f: A -> x` extends along `j: A -> B`.
pub fn is_injective<C: Category>(
    c: &C,
    j: &C::Mor,
    x: &C::Obj,
) -> Result<InjectivityVerdict<C::Mor>> {
    let attempts = c.homs(&c.source(j), x)?;
    let fillers = c.first_fillers(j, x, &attempts)?;
    let mut witnesses = Vec::with_capacity(attempts.len());
    for (attempt, filler) in attempts.into_iter().zip(fillers) {
        match filler {
            Some(filler) => witnesses.push(Extension { attempt, filler }),
            None => {
                return Ok(Verdict {
                    status: Status::RefutedExhaustive,
                    witnesses: Vec::new(),
                    counterexample: Some(attempt),
                    bound: None,
                })
            }
        }
    }
    Ok(Verdict {
        status: Status::Verified,
        witnesses,
        counterexample: None,
        bound: None,
    })
}

/// The square `(f, 1_B): f -> 1_B` whose arrow-category injectivity is the
/// right lifting property against `f`.
pub fn rlp_as_arrow_injectivity<C: Category>(c: &C, f: &C::Mor) -> SquareMorphism<C::Mor> {
    let b = c.identity(&c.target(f));
    SquareMorphism {
        source_arrow: f.clone(),
        target_arrow: b.clone(),
        top: f.clone(),
        bottom: b,
    }
}

/// For each `f: apex -> x`, the first leg (and first filler on it) through
/// which `f` factors.
pub fn cone_injective<C: Category>(
    c: &C,
    cone: &Cone<C::Mor>,
    x: &C::Obj,
) -> Result<ConeVerdict<C::Mor>> {
    let attempts = c.homs(&cone.apex(c), x)?;
    let mut found: Vec<Option<(usize, C::Mor)>> = vec![None; attempts.len()];
    for (i, leg) in cone.legs.iter().enumerate() {
        let pending: Vec<usize> = (0..attempts.len()).filter(|&a| found[a].is_none()).collect();
        if pending.is_empty() {
            break;
        }
        let batch: Vec<C::Mor> = pending.iter().map(|&a| attempts[a].clone()).collect();
        let fillers = c.first_fillers(leg, x, &batch)?;
        for (a, filler) in pending.into_iter().zip(fillers) {
            if let Some(filler) = filler {
                found[a] = Some((i, filler));
            }
        }
    }
    let bound = Some(cone.legs.len());
    if let Some(miss) = found.iter().position(|f| f.is_none()) {
        return Ok(Verdict {
            status: if cone.complete {
                Status::RefutedExhaustive
            } else {
                Status::UnknownAtBound
            },
            witnesses: Vec::new(),
            counterexample: Some(attempts[miss].clone()),
            bound,
        });
    }
    let witnesses = attempts
        .into_iter()
        .zip(found)
        .map(|(attempt, f)| {
            let (leg, filler) = f.unwrap();
            ConeExtension {
                attempt,
                leg,
                filler,
            }
        })
        .collect();
    Ok(Verdict {
        status: Status::Verified,
        witnesses,
        counterexample: None,
        bound,
    })
}

/// Re-composes every extension of a verified injectivity verdict.
pub fn replay_injective<C: Category>(
    c: &C,
    j: &C::Mor,
    x: &C::Obj,
    v: &InjectivityVerdict<C::Mor>,
) -> Result<bool> {
    match v.status {
        Status::Verified => {
            let attempts = c.homs(&c.source(j), x)?;
            if attempts.len() != v.witnesses.len() {
                return Ok(false);
            }
            for (a, w) in attempts.iter().zip(&v.witnesses) {
                if a != &w.attempt || &c.compose(&w.filler, j)? != a {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        _ => {
            let Some(f) = &v.counterexample else {
                return Ok(false);
            };
            let b = c.target(j);
            Ok(c.extensions(&[(j.clone(), f.clone())], &b, x, Some(1))?.is_empty())
        }
    }
}

/// Re-composes every diagonal of a verified lifting verdict.
pub fn replay_rlp<C: Category>(
    c: &C,
    j: &C::Mor,
    g: &C::Mor,
    v: &LiftingVerdict<C::Mor>,
) -> Result<bool> {
    let squares = ArrowCategory::new(c).homs(j, g)?;
    match v.status {
        Status::Verified => {
            if squares.len() != v.witnesses.len() {
                return Ok(false);
            }
            for (sq, w) in squares.iter().zip(&v.witnesses) {
                if sq != &w.square
                    || c.compose(&w.diagonal, j)? != sq.top
                    || c.compose(g, &w.diagonal)? != sq.bottom
                {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        _ => {
            let Some(sq) = &v.counterexample else {
                return Ok(false);
            };
            for d in c.extensions(&[(j.clone(), sq.top.clone())], &c.target(j), &c.source(g), None)? {
                if c.compose(g, &d)? == sq.bottom {
                    return Ok(false);
                }
            }
            Ok(squares.contains(sq))
        }
    }
}

/// Re-composes every factorization of a verified cone verdict.
pub fn replay_cone<C: Category>(
    c: &C,
    cone: &Cone<C::Mor>,
    x: &C::Obj,
    v: &ConeVerdict<C::Mor>,
) -> Result<bool> {
    match v.status {
        Status::Verified => {
            let attempts = c.homs(&cone.apex(c), x)?;
            if attempts.len() != v.witnesses.len() {
                return Ok(false);
            }
            for (a, w) in attempts.iter().zip(&v.witnesses) {
                let Some(leg) = cone.legs.get(w.leg) else {
                    return Ok(false);
                };
                if a != &w.attempt || &c.compose(&w.filler, leg)? != a {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        _ => {
            let Some(f) = &v.counterexample else {
                return Ok(false);
            };
            for leg in &cone.legs {
                let b = c.target(leg);
                if !c.extensions(&[(leg.clone(), f.clone())], &b, x, Some(1))?.is_empty() {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

/// Chosen fillers `c(j, f)` for every generator `j` and every `f: A_j -> carrier`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgInjWitness<O, M> {
    pub carrier: O,
    pub generators: Vec<M>,
    /// `table[j]` lists the attempts out of `A_j` in canonical order.
    pub table: Vec<Vec<Extension<M>>>,
}

impl<O, M: Eq> AlgInjWitness<O, M> {
    pub fn filler(&self, j: usize, f: &M) -> Option<&M> {
        self.table[j].iter().find(|e| &e.attempt == f).map(|e| &e.filler)
    }
}

impl<O: Eq, M: Clone + Eq> AlgInjWitness<O, M> {
    /// Checks `c(j, f) ∘ j = f` for every entry and totality of the table.
    pub fn replay<C: Category<Obj = O, Mor = M>>(&self, c: &C) -> Result<bool> {
        if self.table.len() != self.generators.len() {
            return Ok(false);
        }
        for (j, row) in self.generators.iter().zip(&self.table) {
            let attempts = c.homs(&c.source(j), &self.carrier)?;
            if attempts.len() != row.len() {
                return Ok(false);
            }
            for (a, e) in attempts.iter().zip(row) {
                if a != &e.attempt || &c.compose(&e.filler, j)? != a {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Chosen leg indices `c_1(p, f)` and fillers `c_2(p, f)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeAlgInjWitness<O, M> {
    pub carrier: O,
    pub cones: Vec<Cone<M>>,
    pub table: Vec<Vec<ConeExtension<M>>>,
}

impl<O: Eq, M: Clone + Eq> ConeAlgInjWitness<O, M> {
    pub fn replay<C: Category<Obj = O, Mor = M>>(&self, c: &C) -> Result<bool> {
        if self.table.len() != self.cones.len() {
            return Ok(false);
        }
        for (p, row) in self.cones.iter().zip(&self.table) {
            let attempts = c.homs(&p.apex(c), &self.carrier)?;
            if attempts.len() != row.len() {
                return Ok(false);
            }
            for (a, e) in attempts.iter().zip(row) {
                let Some(leg) = p.legs.get(e.leg) else {
                    return Ok(false);
                };
                if a != &e.attempt || &c.compose(&e.filler, leg)? != a {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Canonical-first choice of fillers for every generator, or the first
/// generator and attempt that cannot be extended.
pub fn build_algebraic_injective<C: Category>(
    c: &C,
    generators: &[C::Mor],
    x: &C::Obj,
) -> Result<AlgInjWitness<C::Obj, C::Mor>> {
    let mut table = Vec::with_capacity(generators.len());
    for (gi, j) in generators.iter().enumerate() {
        let attempts = c.homs(&c.source(j), x)?;
        let fillers = c.first_fillers(j, x, &attempts)?;
        let mut row = Vec::with_capacity(attempts.len());
        for (ai, (attempt, filler)) in attempts.into_iter().zip(fillers).enumerate() {
            match filler {
                Some(filler) => row.push(Extension { attempt, filler }),
                None => {
                    return Err(Error::NotInjective {
                        generator: gi,
                        attempt: ai,
                    })
                }
            }
        }
        table.push(row);
    }
    Ok(AlgInjWitness {
        carrier: x.clone(),
        generators: generators.to_vec(),
        table,
    })
}

/// Cone version of [`build_algebraic_injective`].
pub fn build_cone_algebraic_injective<C: Category>(
    c: &C,
    cones: &[Cone<C::Mor>],
    x: &C::Obj,
) -> Result<ConeAlgInjWitness<C::Obj, C::Mor>> {
    let mut table = Vec::with_capacity(cones.len());
    for (pi, p) in cones.iter().enumerate() {
        let v = cone_injective(c, p, x)?;
        if !v.is_verified() {
            let attempts = c.homs(&p.apex(c), x)?;
            let ai = v
                .counterexample
                .as_ref()
                .and_then(|f| attempts.iter().position(|a| a == f))
                .unwrap_or(0);
            return Err(Error::NotInjective {
                generator: pi,
                attempt: ai,
            });
        }
        table.push(v.witnesses);
    }
    Ok(ConeAlgInjWitness {
        carrier: x.clone(),
        cones: cones.to_vec(),
        table,
    })
}

/// Whether `g: X -> Y` carries chosen fillers to chosen fillers:
/// `g ∘ c_X(j, f) = c_Y(j, g ∘ f)`.
pub fn is_witness_morphism<C: Category>(
    c: &C,
    g: &C::Mor,
    wx: &AlgInjWitness<C::Obj, C::Mor>,
    wy: &AlgInjWitness<C::Obj, C::Mor>,
) -> Result<bool> {
    if wx.generators != wy.generators {
        return Err(Error::IncompatibleJ);
    }
    if c.source(g) != wx.carrier || c.target(g) != wy.carrier {
        return Err(Error::NotComposable("map does not join the two carriers".into()));
    }
    for (ji, row) in wx.table.iter().enumerate() {
        let index: HashMap<&C::Mor, &C::Mor> =
            wy.table[ji].iter().map(|e| (&e.attempt, &e.filler)).collect();
        for e in row {
            let gf = c.compose(g, &e.attempt)?;
            let Some(cy) = index.get(&gf) else {
                return Ok(false);
            };
            if &&c.compose(g, &e.filler)? != cy {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Cone version of [`is_witness_morphism`]: leg choices must agree as well.
pub fn is_cone_witness_morphism<C: Category>(
    c: &C,
    g: &C::Mor,
    wx: &ConeAlgInjWitness<C::Obj, C::Mor>,
    wy: &ConeAlgInjWitness<C::Obj, C::Mor>,
) -> Result<bool> {
    if wx.cones != wy.cones {
        return Err(Error::IncompatibleJ);
    }
    for (pi, row) in wx.table.iter().enumerate() {
        let index: HashMap<&C::Mor, &ConeExtension<C::Mor>> =
            wy.table[pi].iter().map(|e| (&e.attempt, e)).collect();
        for e in row {
            let gf = c.compose(g, &e.attempt)?;
            let Some(ey) = index.get(&gf) else {
                return Ok(false);
            };
            if ey.leg != e.leg || c.compose(g, &e.filler)? != ey.filler {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A surjection of finite sets together with a chosen section.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitEpi {
    pub epi: FinSetMap,
    pub section: FinSetMap,
}

impl SplitEpi {
    pub fn holds(&self) -> bool {
        self.epi
            .after(&self.section)
            .is_ok_and(|id| id == FinSetMap::identity(self.epi.target))
    }
}

/// For each generator `j: A -> B`, restriction `C(B, X) -> C(A, X)` with the
/// witness as its section.
pub fn sections_view<C: Category>(
    c: &C,
    w: &AlgInjWitness<C::Obj, C::Mor>,
) -> Result<Vec<SplitEpi>> {
    w.generators
        .iter()
        .zip(&w.table)
        .map(|(j, row)| {
            let fillers = c.homs(&c.target(j), &w.carrier)?;
            let attempts = c.homs(&c.source(j), &w.carrier)?;
            split_epi(c, &[j.clone()], &[fillers], &attempts, |a| {
                row.iter().find(|e| &e.attempt == a).map(|e| (0, e.filler.clone()))
            })
        })
        .collect()
}

/// For each cone, `Σ_i C(B_i, X) -> C(A, X)` with the chosen `(c_1, c_2)` as section.
pub fn cone_sections_view<C: Category>(
    c: &C,
    w: &ConeAlgInjWitness<C::Obj, C::Mor>,
) -> Result<Vec<SplitEpi>> {
    w.cones
        .iter()
        .zip(&w.table)
        .map(|(p, row)| {
            let fillers = p
                .legs
                .iter()
                .map(|l| c.homs(&c.target(l), &w.carrier))
                .collect::<Result<Vec<_>>>()?;
            let attempts = c.homs(&p.apex(c), &w.carrier)?;
            split_epi(c, &p.legs, &fillers, &attempts, |a| {
                row.iter().find(|e| &e.attempt == a).map(|e| (e.leg, e.filler.clone()))
            })
        })
        .collect()
}

fn split_epi<C: Category>(
    c: &C,
    legs: &[C::Mor],
    fillers: &[Vec<C::Mor>],
    attempts: &[C::Mor],
    chosen: impl Fn(&C::Mor) -> Option<(usize, C::Mor)>,
) -> Result<SplitEpi> {
    let attempt_index: HashMap<&C::Mor, usize> =
        attempts.iter().enumerate().map(|(i, a)| (a, i)).collect();
    let mut offsets = Vec::with_capacity(fillers.len());
    let mut total = 0;
    for f in fillers {
        offsets.push(total);
        total += f.len();
    }
    let mut epi = Vec::with_capacity(total);
    for (leg, fs) in legs.iter().zip(fillers) {
        for f in fs {
            let r = c.compose(f, leg)?;
            epi.push(attempt_index[&r]);
        }
    }
    let mut section = Vec::with_capacity(attempts.len());
    for a in attempts {
        let (leg, filler) = chosen(a).ok_or_else(|| Error::invalid("witness table is not total"))?;
        let pos = fillers[leg]
            .iter()
            .position(|f| f == &filler)
            .ok_or_else(|| Error::invalid("chosen filler is not a listed map"))?;
        section.push(offsets[leg] + pos);
    }
    Ok(SplitEpi {
        epi: FinSetMap::new(total, attempts.len(), epi)?,
        section: FinSetMap::new(attempts.len(), total, section)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{FinSet, FinSetMap};

    fn map(s: usize, t: usize, table: &[usize]) -> FinSetMap {
        FinSetMap::new(s, t, table.to_vec()).unwrap()
    }

    #[test]
    fn rlp_examples() {
        let c = FinSet::new();
        let id1 = FinSetMap::identity(1);
        assert_eq!(has_rlp(&c, &id1, &id1).unwrap().status, Status::Verified);
        let bang = map(0, 1, &[]);
        let v = has_rlp(&c, &bang, &map(2, 1, &[0, 0])).unwrap();
        assert_eq!(v.status, Status::Verified);
        assert!(replay_rlp(&c, &bang, &map(2, 1, &[0, 0]), &v).unwrap());
        let v = has_rlp(&c, &bang, &bang).unwrap();
        assert_eq!(v.status, Status::RefutedExhaustive);
        assert!(replay_rlp(&c, &bang, &bang, &v).unwrap());
    }

    #[test]
    fn injectivity_examples() {
        let c = FinSet::new();
        assert!(is_injective(&c, &map(1, 2, &[0]), &1).unwrap().is_verified());
        // nothing maps 1 -> 0, so the check is vacuous
        assert!(is_injective(&c, &map(1, 1, &[0]), &0).unwrap().is_verified());
        let v = is_injective(&c, &map(2, 1, &[0, 0]), &2).unwrap();
        assert_eq!(v.status, Status::RefutedExhaustive);
        assert_eq!(v.counterexample, Some(map(2, 2, &[0, 1])));
    }

    #[test]
    fn arrow_square_of_identity() {
        let c = FinSet::new();
        let id = FinSetMap::identity(2);
        let sq = rlp_as_arrow_injectivity(&c, &id);
        assert_eq!(sq.top, id);
        assert_eq!(sq.bottom, id);
        sq.validate(&c).unwrap();
        let sq = rlp_as_arrow_injectivity(&c, &map(0, 1, &[]));
        assert_eq!(sq.bottom, FinSetMap::identity(1));
    }

    #[test]
    fn witness_examples() {
        let c = FinSet::new();
        let w = build_algebraic_injective(&c, &[map(0, 1, &[])], &1).unwrap();
        assert_eq!(w.table[0].len(), 1);
        assert!(w.replay(&c).unwrap());
        let views = sections_view(&c, &w).unwrap();
        assert_eq!(views.len(), 1);
        assert!(views[0].holds());
        assert_eq!((views[0].epi.source, views[0].epi.target), (1, 1));
        let err = build_algebraic_injective(&c, &[map(2, 1, &[0, 0])], &2).unwrap_err();
        assert_eq!(
            err,
            Error::NotInjective {
                generator: 0,
                attempt: 1
            }
        );
    }

    #[test]
    fn distinct_tables_are_not_related_by_identity() {
        let c = FinSet::new();
        let j = map(0, 1, &[]);
        let w = build_algebraic_injective(&c, &[j.clone()], &2).unwrap();
        assert!(is_witness_morphism(&c, &FinSetMap::identity(2), &w, &w).unwrap());
        let mut other = w.clone();
        other.table[0][0].filler = map(1, 2, &[1]);
        assert!(other.replay(&c).unwrap());
        assert!(!is_witness_morphism(&c, &FinSetMap::identity(2), &w, &other).unwrap());
        let w2 = build_algebraic_injective(&c, &[map(1, 2, &[0])], &2).unwrap();
        assert_eq!(
            is_witness_morphism(&c, &FinSetMap::identity(2), &w, &w2),
            Err(Error::IncompatibleJ)
        );
    }

    #[test]
    fn one_leg_cone_is_plain_injectivity() {
        let c = FinSet::new();
        let j = map(1, 2, &[1]);
        for x in 0..3 {
            let a = is_injective(&c, &j, &x).unwrap();
            let b = cone_injective(&c, &Cone::single(j.clone()), &x).unwrap();
            assert_eq!(a.status, b.status);
        }
    }
}
