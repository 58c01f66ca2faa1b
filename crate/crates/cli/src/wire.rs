//! Compact forms of morphisms and verdicts for certificates. Endpoints are
//! left out and recovered from the surrounding problem on the way back in.

use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use weqtk_core::chain::{BoundedComplex, ChainCategory, ChainMap, FiniteField};
use weqtk_core::kernel::{ArrowCategory, Cat, Category, FinCategory, FinFunctor, FinSet, FinSetMap, SquareMorphism};
use weqtk_core::lifting::{
    ConeExtension, ConeVerdict, Diagonal, Extension, InjectivityVerdict, LiftingVerdict, Status, Verdict,
};
use weqtk_core::simplicial::{FinSimplicialSet, SSet, Simplex, SimplicialMap};

use crate::error::{CliError, CliResult};
use crate::payload::{MatrixWire, WireField};

/// A category whose morphisms have a wire form relative to known endpoints.
pub trait WireCat: Category {
    type W: Serialize + DeserializeOwned + Clone + std::fmt::Debug;

    fn to_wire(&self, m: &Self::Mor) -> CliResult<Self::W>;
    fn from_wire(&self, w: &Self::W, source: &Self::Obj, target: &Self::Obj) -> CliResult<Self::Mor>;
}

impl WireCat for FinSet {
    type W = Vec<usize>;

    fn to_wire(&self, m: &FinSetMap) -> CliResult<Vec<usize>> {
        Ok(m.table.clone())
    }

    fn from_wire(&self, w: &Vec<usize>, s: &usize, t: &usize) -> CliResult<FinSetMap> {
        Ok(FinSetMap::new(*s, *t, w.clone())?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorTables {
    pub obj: Vec<usize>,
    pub mor: Vec<usize>,
}

impl WireCat for Cat {
    type W = FunctorTables;

    fn to_wire(&self, m: &FinFunctor) -> CliResult<FunctorTables> {
        Ok(FunctorTables {
            obj: m.obj_map.clone(),
            mor: m.mor_map.clone(),
        })
    }

    fn from_wire(&self, w: &FunctorTables, s: &Arc<FinCategory>, t: &Arc<FinCategory>) -> CliResult<FinFunctor> {
        Ok(FinFunctor::new(s.clone(), t.clone(), w.obj.clone(), w.mor.clone())?)
    }
}

impl WireCat for SSet {
    type W = Vec<Vec<Simplex>>;

    fn to_wire(&self, m: &SimplicialMap) -> CliResult<Vec<Vec<Simplex>>> {
        Ok(m.images.clone())
    }

    fn from_wire(
        &self,
        w: &Vec<Vec<Simplex>>,
        s: &Arc<FinSimplicialSet>,
        t: &Arc<FinSimplicialSet>,
    ) -> CliResult<SimplicialMap> {
        Ok(SimplicialMap::new(s.clone(), t.clone(), w.clone())?)
    }
}

/// Chain maps as their components over the joint window of the endpoints.
impl<F: FiniteField + WireField> WireCat for ChainCategory<F> {
    type W = Vec<MatrixWire>;

    fn to_wire(&self, m: &ChainMap<F>) -> CliResult<Vec<MatrixWire>> {
        m.components().iter().map(|c| MatrixWire::from_core(&self.field, c)).collect()
    }

    fn from_wire(
        &self,
        w: &Vec<MatrixWire>,
        s: &Arc<BoundedComplex<F>>,
        t: &Arc<BoundedComplex<F>>,
    ) -> CliResult<ChainMap<F>> {
        let lo = match (s.window(), t.window()) {
            (None, None) => 0,
            (Some(a), None) | (None, Some(a)) => a.0,
            (Some(a), Some(b)) => a.0.min(b.0),
        };
        let mats = w.iter().map(|m| m.to_core(&self.field)).collect::<CliResult<_>>()?;
        Ok(ChainMap::new(s.clone(), t.clone(), lo, mats)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SquareWire<W> {
    pub top: W,
    pub bottom: W,
}

impl<C: WireCat> WireCat for ArrowCategory<C> {
    type W = SquareWire<C::W>;

    fn to_wire(&self, m: &SquareMorphism<C::Mor>) -> CliResult<Self::W> {
        Ok(SquareWire {
            top: self.base.to_wire(&m.top)?,
            bottom: self.base.to_wire(&m.bottom)?,
        })
    }

    fn from_wire(&self, w: &Self::W, s: &C::Mor, t: &C::Mor) -> CliResult<SquareMorphism<C::Mor>> {
        let c = &self.base;
        let top = c.from_wire(&w.top, &c.source(s), &c.source(t))?;
        let bottom = c.from_wire(&w.bottom, &c.target(s), &c.target(t))?;
        Ok(SquareMorphism::new(c, s.clone(), t.clone(), top, bottom)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionWire<W> {
    pub attempt: W,
    pub filler: W,
}

/// An injectivity verdict of `j` against `x`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InjectivityWire<W> {
    pub status: Status,
    pub extensions: Vec<ExtensionWire<W>>,
    pub counterexample: Option<W>,
    pub bound: Option<usize>,
}

pub fn injectivity_to_wire<C: WireCat>(
    c: &C,
    v: &InjectivityVerdict<C::Mor>,
) -> CliResult<InjectivityWire<C::W>> {
    Ok(InjectivityWire {
        status: v.status,
        extensions: v
            .witnesses
            .iter()
            .map(|e| {
                Ok(ExtensionWire {
                    attempt: c.to_wire(&e.attempt)?,
                    filler: c.to_wire(&e.filler)?,
                })
            })
            .collect::<CliResult<_>>()?,
        counterexample: v.counterexample.as_ref().map(|m| c.to_wire(m)).transpose()?,
        bound: v.bound,
    })
}

pub fn injectivity_from_wire<C: WireCat>(
    c: &C,
    w: &InjectivityWire<C::W>,
    j: &C::Mor,
    x: &C::Obj,
) -> CliResult<InjectivityVerdict<C::Mor>> {
    let (a, b) = (c.source(j), c.target(j));
    Ok(Verdict {
        status: w.status,
        witnesses: w
            .extensions
            .iter()
            .map(|e| {
                Ok(Extension {
                    attempt: c.from_wire(&e.attempt, &a, x)?,
                    filler: c.from_wire(&e.filler, &b, x)?,
                })
            })
            .collect::<CliResult<_>>()?,
        counterexample: w.counterexample.as_ref().map(|m| c.from_wire(m, &a, x)).transpose()?,
        bound: w.bound,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagonalWire<W> {
    pub square: SquareWire<W>,
    pub diagonal: W,
}

/// A lifting verdict of `g` against `j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LiftingWire<W> {
    pub status: Status,
    pub diagonals: Vec<DiagonalWire<W>>,
    pub counterexample: Option<SquareWire<W>>,
}

pub fn lifting_to_wire<C: WireCat>(c: &C, v: &LiftingVerdict<C::Mor>) -> CliResult<LiftingWire<C::W>> {
    let sq = |s: &SquareMorphism<C::Mor>| -> CliResult<SquareWire<C::W>> {
        Ok(SquareWire {
            top: c.to_wire(&s.top)?,
            bottom: c.to_wire(&s.bottom)?,
        })
    };
    Ok(LiftingWire {
        status: v.status,
        diagonals: v
            .witnesses
            .iter()
            .map(|d| {
                Ok(DiagonalWire {
                    square: sq(&d.square)?,
                    diagonal: c.to_wire(&d.diagonal)?,
                })
            })
            .collect::<CliResult<_>>()?,
        counterexample: v.counterexample.as_ref().map(sq).transpose()?,
    })
}

pub fn lifting_from_wire<C: WireCat>(
    c: &C,
    w: &LiftingWire<C::W>,
    j: &C::Mor,
    g: &C::Mor,
) -> CliResult<LiftingVerdict<C::Mor>> {
    let (a, b, x, y) = (c.source(j), c.target(j), c.source(g), c.target(g));
    let sq = |s: &SquareWire<C::W>| -> CliResult<SquareMorphism<C::Mor>> {
        let top = c.from_wire(&s.top, &a, &x)?;
        let bottom = c.from_wire(&s.bottom, &b, &y)?;
        Ok(SquareMorphism::new(c, j.clone(), g.clone(), top, bottom)?)
    };
    Ok(Verdict {
        status: w.status,
        witnesses: w
            .diagonals
            .iter()
            .map(|d| {
                Ok(Diagonal {
                    square: sq(&d.square)?,
                    diagonal: c.from_wire(&d.diagonal, &b, &x)?,
                })
            })
            .collect::<CliResult<_>>()?,
        counterexample: w.counterexample.as_ref().map(sq).transpose()?,
        bound: None,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConeExtensionWire<W> {
    pub attempt: W,
    pub leg: usize,
    pub filler: W,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConeWire<W> {
    pub status: Status,
    pub extensions: Vec<ConeExtensionWire<W>>,
    pub counterexample: Option<W>,
    pub bound: Option<usize>,
}

pub fn cone_to_wire<C: WireCat>(c: &C, v: &ConeVerdict<C::Mor>) -> CliResult<ConeWire<C::W>> {
    Ok(ConeWire {
        status: v.status,
        extensions: v
            .witnesses
            .iter()
            .map(|e| {
                Ok(ConeExtensionWire {
                    attempt: c.to_wire(&e.attempt)?,
                    leg: e.leg,
                    filler: c.to_wire(&e.filler)?,
                })
            })
            .collect::<CliResult<_>>()?,
        counterexample: v.counterexample.as_ref().map(|m| c.to_wire(m)).transpose()?,
        bound: v.bound,
    })
}

pub fn cone_from_wire<C: WireCat>(
    c: &C,
    w: &ConeWire<C::W>,
    legs: &[C::Mor],
    x: &C::Obj,
) -> CliResult<ConeVerdict<C::Mor>> {
    let apex = legs
        .first()
        .map(|l| c.source(l))
        .ok_or_else(|| CliError::Parse("cone without legs".into()))?;
    Ok(Verdict {
        status: w.status,
        witnesses: w
            .extensions
            .iter()
            .map(|e| {
                let leg = legs
                    .get(e.leg)
                    .ok_or_else(|| CliError::Parse(format!("leg {} out of range", e.leg)))?;
                Ok(ConeExtension {
                    attempt: c.from_wire(&e.attempt, &apex, x)?,
                    leg: e.leg,
                    filler: c.from_wire(&e.filler, &c.target(leg), x)?,
                })
            })
            .collect::<CliResult<_>>()?,
        counterexample: w.counterexample.as_ref().map(|m| c.from_wire(m, &apex, x)).transpose()?,
        bound: w.bound,
    })
}
