//! The JSON interchange format for objects and morphisms.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use weqtk_core::chain::{BoundedComplex, ChainMap, Field, Matrix, PrimeField, Rationals};
use weqtk_core::kernel::{FinCategory, FinFunctor, FinSetMap};
use weqtk_core::simplicial::{FinSimplicialSet, ReflexiveGraph, Simplex, SimplicialMap};

use crate::error::{CliError, CliResult};

/// A field element: an integer, or a `[numerator, denominator]` pair over `Q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Frac([i64; 2]),
}

/// Row-major matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixWire {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Scalar>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryWire {
    pub objects: usize,
    pub src: Vec<usize>,
    pub tgt: Vec<usize>,
    pub ids: Vec<usize>,
    /// `comp[g][f]` is `g ∘ f` when defined.
    pub comp: Vec<Vec<Option<usize>>>,
}

/// `diffs[i]` is the differential out of degree `lo + i + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexWire {
    pub lo: i64,
    pub ranks: Vec<usize>,
    pub diffs: Vec<MatrixWire>,
}

/// `faces[n][x]` lists the faces of the `x`-th nondegenerate `n`-simplex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SSetWire {
    pub faces: Vec<Vec<Vec<Simplex>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FinSetMapWire {
    pub source: usize,
    pub target: usize,
    pub table: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Payload {
    FinsetMap {
        source: usize,
        target: usize,
        table: Vec<usize>,
    },
    FinFunctor {
        source: CategoryWire,
        target: CategoryWire,
        obj_map: Vec<usize>,
        mor_map: Vec<usize>,
    },
    ChainMap {
        source: ComplexWire,
        target: ComplexWire,
        lo: i64,
        components: Vec<MatrixWire>,
    },
    SimplicialMap {
        source: SSetWire,
        target: SSetWire,
        images: Vec<Vec<Simplex>>,
    },
    SimplicialSet {
        faces: Vec<Vec<Vec<Simplex>>>,
    },
    Graph {
        vertices: usize,
        /// Non-identity edges `(source, target)`.
        edges: Vec<(usize, usize)>,
    },
    #[serde(rename = "endofunctor-by-J")]
    EndofunctorByJ {
        generators: Vec<FinSetMapWire>,
        carrier: usize,
    },
}

impl Payload {
    pub fn kind(&self) -> &'static str {
        match self {
            Payload::FinsetMap { .. } => "finset-map",
            Payload::FinFunctor { .. } => "fin-functor",
            Payload::ChainMap { .. } => "chain-map",
            Payload::SimplicialMap { .. } => "simplicial-map",
            Payload::SimplicialSet { .. } => "simplicial-set",
            Payload::Graph { .. } => "graph",
            Payload::EndofunctorByJ { .. } => "endofunctor-by-J",
        }
    }

    fn mismatch(&self, want: &str) -> CliError {
        CliError::Parse(format!("expected a {want} payload, got {}", self.kind()))
    }

    pub fn finset_map(&self) -> CliResult<FinSetMap> {
        match self {
            Payload::FinsetMap {
                source,
                target,
                table,
            } => Ok(FinSetMap::new(*source, *target, table.clone())?),
            _ => Err(self.mismatch("finset-map")),
        }
    }

    pub fn fin_functor(&self) -> CliResult<FinFunctor> {
        match self {
            Payload::FinFunctor {
                source,
                target,
                obj_map,
                mor_map,
            } => Ok(FinFunctor::new(
                Arc::new(source.to_core()?),
                Arc::new(target.to_core()?),
                obj_map.clone(),
                mor_map.clone(),
            )?),
            _ => Err(self.mismatch("fin-functor")),
        }
    }

    pub fn chain_map<F: WireField>(&self, field: &F) -> CliResult<ChainMap<F>> {
        match self {
            Payload::ChainMap {
                source,
                target,
                lo,
                components,
            } => {
                let s = Arc::new(source.to_core(field)?);
                let t = Arc::new(target.to_core(field)?);
                let mats = components.iter().map(|m| m.to_core(field)).collect::<CliResult<_>>()?;
                Ok(ChainMap::new(s, t, *lo, mats)?)
            }
            _ => Err(self.mismatch("chain-map")),
        }
    }

    pub fn simplicial_map(&self) -> CliResult<SimplicialMap> {
        match self {
            Payload::SimplicialMap {
                source,
                target,
                images,
            } => Ok(SimplicialMap::new(
                Arc::new(FinSimplicialSet::new(source.faces.clone())?),
                Arc::new(FinSimplicialSet::new(target.faces.clone())?),
                images.clone(),
            )?),
            _ => Err(self.mismatch("simplicial-map")),
        }
    }

    pub fn simplicial_set(&self) -> CliResult<FinSimplicialSet> {
        match self {
            Payload::SimplicialSet { faces } => Ok(FinSimplicialSet::new(faces.clone())?),
            _ => Err(self.mismatch("simplicial-set")),
        }
    }

    pub fn graph(&self) -> CliResult<ReflexiveGraph> {
        match self {
            Payload::Graph { vertices, edges } => Ok(ReflexiveGraph::new(*vertices, edges)?),
            _ => Err(self.mismatch("graph")),
        }
    }

    pub fn endofunctor(&self) -> CliResult<(Vec<FinSetMap>, usize)> {
        match self {
            Payload::EndofunctorByJ {
                generators,
                carrier,
            } => {
                let gens = generators
                    .iter()
                    .map(|g| Ok(FinSetMap::new(g.source, g.target, g.table.clone())?))
                    .collect::<CliResult<_>>()?;
                Ok((gens, *carrier))
            }
            _ => Err(self.mismatch("endofunctor-by-J")),
        }
    }

    pub fn from_finset_map(f: &FinSetMap) -> Self {
        Payload::FinsetMap {
            source: f.source,
            target: f.target,
            table: f.table.clone(),
        }
    }

    pub fn from_fin_functor(f: &FinFunctor) -> Self {
        Payload::FinFunctor {
            source: CategoryWire::from_core(&f.source),
            target: CategoryWire::from_core(&f.target),
            obj_map: f.obj_map.clone(),
            mor_map: f.mor_map.clone(),
        }
    }

    pub fn from_chain_map<F: WireField>(f: &ChainMap<F>) -> CliResult<Self> {
        let field = f.field();
        let (lo, hi) = f.window().unwrap_or((0, -1));
        Ok(Payload::ChainMap {
            source: ComplexWire::from_core(&f.source)?,
            target: ComplexWire::from_core(&f.target)?,
            lo,
            components: (lo..=hi)
                .map(|n| MatrixWire::from_core(field, &f.component(n)))
                .collect::<CliResult<_>>()?,
        })
    }

    pub fn from_simplicial_map(f: &SimplicialMap) -> Self {
        Payload::SimplicialMap {
            source: SSetWire::from_core(&f.source),
            target: SSetWire::from_core(&f.target),
            images: f.images.clone(),
        }
    }

    pub fn from_simplicial_set(x: &FinSimplicialSet) -> Self {
        Payload::SimplicialSet {
            faces: x.raw_faces().to_vec(),
        }
    }

    pub fn from_graph(g: &ReflexiveGraph) -> Self {
        Payload::Graph {
            vertices: g.vertices(),
            edges: g.non_identity_edges().to_vec(),
        }
    }

    pub fn from_endofunctor(generators: &[FinSetMap], carrier: usize) -> Self {
        Payload::EndofunctorByJ {
            generators: generators.iter().map(FinSetMapWire::from_core).collect(),
            carrier,
        }
    }
}

impl FinSetMapWire {
    pub fn from_core(f: &FinSetMap) -> Self {
        FinSetMapWire {
            source: f.source,
            target: f.target,
            table: f.table.clone(),
        }
    }
}

impl CategoryWire {
    pub fn from_core(c: &FinCategory) -> Self {
        let (objects, src, tgt, ids, comp) = c.table();
        CategoryWire {
            objects,
            src,
            tgt,
            ids,
            comp,
        }
    }

    pub fn to_core(&self) -> CliResult<FinCategory> {
        Ok(FinCategory::new(
            self.objects,
            self.src.clone(),
            self.tgt.clone(),
            self.ids.clone(),
            self.comp.clone(),
        )?)
    }
}

impl SSetWire {
    pub fn from_core(x: &FinSimplicialSet) -> Self {
        SSetWire {
            faces: x.raw_faces().to_vec(),
        }
    }
}

impl ComplexWire {
    pub fn from_core<F: WireField>(x: &BoundedComplex<F>) -> CliResult<Self> {
        let field = x.field();
        let Some((lo, hi)) = x.window() else {
            return Ok(ComplexWire {
                lo: 0,
                ranks: Vec::new(),
                diffs: Vec::new(),
            });
        };
        Ok(ComplexWire {
            lo,
            ranks: (lo..=hi).map(|n| x.rank(n)).collect(),
            diffs: (lo + 1..=hi)
                .map(|n| MatrixWire::from_core(field, &x.d(n)))
                .collect::<CliResult<_>>()?,
        })
    }

    pub fn to_core<F: WireField>(&self, field: &F) -> CliResult<BoundedComplex<F>> {
        let diffs = self.diffs.iter().map(|m| m.to_core(field)).collect::<CliResult<_>>()?;
        Ok(BoundedComplex::new(field.clone(), self.lo, self.ranks.clone(), diffs)?)
    }
}

impl MatrixWire {
    pub fn from_core<F: WireField>(field: &F, m: &Matrix<F::Elem>) -> CliResult<Self> {
        Ok(MatrixWire {
            rows: m.rows(),
            cols: m.cols(),
            data: m.data().iter().map(|e| field.to_scalar(e)).collect::<CliResult<_>>()?,
        })
    }

    pub fn to_core<F: WireField>(&self, field: &F) -> CliResult<Matrix<F::Elem>> {
        if self.data.len() != self.rows * self.cols {
            return Err(CliError::Parse(format!(
                "matrix of shape {}x{} has {} entries",
                self.rows,
                self.cols,
                self.data.len()
            )));
        }
        let data = self.data.iter().map(|s| field.from_scalar(s)).collect::<CliResult<_>>()?;
        Ok(Matrix::from_rows(self.rows, self.cols, data))
    }
}

/// Fields whose elements have a wire form.
pub trait WireField: Field {
    fn to_scalar(&self, e: &Self::Elem) -> CliResult<Scalar>;
    fn from_scalar(&self, s: &Scalar) -> CliResult<Self::Elem>;
}

impl WireField for PrimeField {
    fn to_scalar(&self, e: &u32) -> CliResult<Scalar> {
        Ok(Scalar::Int(*e as i64))
    }

    fn from_scalar(&self, s: &Scalar) -> CliResult<u32> {
        match s {
            Scalar::Int(v) => Ok(self.from_i64(*v)),
            Scalar::Frac(_) => Err(CliError::Parse(format!(
                "fractions are not elements of Z/{}",
                self.modulus()
            ))),
        }
    }
}

impl WireField for Rationals {
    fn to_scalar(&self, e: &BigRational) -> CliResult<Scalar> {
        let e = e.reduced();
        let part = |b: &BigInt| {
            i64::try_from(b).map_err(|_| CliError::Parse(format!("rational {e} does not fit in 64 bits")))
        };
        Ok(Scalar::Frac([part(e.numer())?, part(e.denom())?]))
    }

    fn from_scalar(&self, s: &Scalar) -> CliResult<BigRational> {
        match s {
            Scalar::Int(v) => Ok(self.from_i64(*v)),
            Scalar::Frac([_, 0]) => Err(CliError::Parse("zero denominator".into())),
            Scalar::Frac([n, d]) => Ok(BigRational::new(BigInt::from(*n), BigInt::from(*d))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use weqtk_core::simplicial::{boundary, standard_simplex};

    fn round_trip(p: &Payload) {
        let text = serde_json::to_string(p).unwrap();
        let back: Payload = serde_json::from_str(&text).unwrap();
        assert_eq!(&back, p);
    }

    #[test]
    fn kind_tags() {
        let p = Payload::from_endofunctor(&[FinSetMap::new(0, 1, vec![]).unwrap()], 2);
        let v = serde_json::to_value(&p).unwrap();
        assert_eq!(v["kind"], "endofunctor-by-J");
        assert_eq!(Payload::from_finset_map(&FinSetMap::identity(2)).kind(), "finset-map");
        round_trip(&p);
    }

    #[test]
    fn rational_matrices_use_pairs() {
        let q = Rationals;
        let m = Matrix::from_rows(1, 2, vec![BigRational::new(2.into(), 4.into()), q.from_i64(-3)]);
        let w = MatrixWire::from_core(&q, &m).unwrap();
        assert_eq!(w.data, vec![Scalar::Frac([1, 2]), Scalar::Frac([-3, 1])]);
        assert_eq!(serde_json::to_string(&w.data).unwrap(), "[[1,2],[-3,1]]");
        assert_eq!(w.to_core(&q).unwrap(), m);
    }

    #[test]
    fn core_values_survive_the_wire() {
        let (_, j) = boundary(2).unwrap();
        let p = Payload::from_simplicial_map(&j);
        round_trip(&p);
        assert_eq!(p.simplicial_map().unwrap(), j);

        let f = FinFunctor::identity(Arc::new(FinCategory::walking_iso()));
        let p = Payload::from_fin_functor(&f);
        round_trip(&p);
        assert_eq!(p.fin_functor().unwrap(), f);

        let z3 = PrimeField::new(3).unwrap();
        let d = Arc::new(BoundedComplex::disk(z3, 2));
        let id = ChainMap::identity(d);
        let p = Payload::from_chain_map(&id).unwrap();
        round_trip(&p);
        assert_eq!(p.chain_map(&z3).unwrap(), id);

        let x = standard_simplex(2).unwrap();
        assert_eq!(Payload::from_simplicial_set(&x).simplicial_set().unwrap(), x);
    }

    #[test]
    fn wrong_kind_is_a_parse_error() {
        let p = Payload::from_finset_map(&FinSetMap::identity(1));
        assert!(matches!(p.fin_functor(), Err(CliError::Parse(_))));
    }
}
