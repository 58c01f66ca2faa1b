use std::sync::Arc;

use super::complex::{chain_map_basis, BoundedComplex, ChainMap};
use super::field::{Field, FiniteField};
use super::matrix::Matrix;
use super::quasi_iso::padded_window;
use crate::error::{Error, Result};
use crate::kernel::{ArrowCategory, Category, SquareMorphism};
use crate::lifting::{is_injective, InjectivityVerdict, Status};

/// Chain complexes over a finite field, hom-sets listed by coefficients.
#[derive(Debug, Clone)]
pub struct ChainCategory<F> {
    pub field: F,
    /// Largest hom-set that may be listed.
    pub budget: usize,
}

impl<F: FiniteField> ChainCategory<F> {
    pub fn new(field: F) -> Self {
        ChainCategory {
            field,
            budget: 1 << 20,
        }
    }

    pub fn with_budget(field: F, budget: usize) -> Self {
        ChainCategory { field, budget }
    }
}

impl<F: FiniteField> Category for ChainCategory<F> {
    type Obj = Arc<BoundedComplex<F>>;
    type Mor = ChainMap<F>;

    fn source(&self, f: &ChainMap<F>) -> Self::Obj {
        f.source.clone()
    }

    fn target(&self, f: &ChainMap<F>) -> Self::Obj {
        f.target.clone()
    }

    fn identity(&self, a: &Self::Obj) -> ChainMap<F> {
        ChainMap::identity(a.clone())
    }

    fn compose(&self, g: &ChainMap<F>, f: &ChainMap<F>) -> Result<ChainMap<F>> {
        g.after(f)
    }

    /// All linear combinations of a fixed basis, sorted by coefficient tables.
    fn homs(&self, a: &Self::Obj, b: &Self::Obj) -> Result<Vec<ChainMap<F>>> {
        let basis = chain_map_basis(a, b);
        let q = self.field.order();
        let count = u32::try_from(basis.len())
            .ok()
            .and_then(|k| q.checked_pow(k))
            .filter(|&c| c <= self.budget)
            .ok_or_else(|| {
                Error::budget(self.budget, format!("{q}^{} chain maps", basis.len()))
            })?;
        let elems = self.field.elements();
        let mut out = Vec::with_capacity(count);
        for mut code in 0..count {
            let mut m = ChainMap::zero(a.clone(), b.clone());
            for v in &basis {
                let coeff = &elems[code % q];
                code /= q;
                if !self.field.is_zero(coeff) {
                    m = m.add(&v.scale(coeff));
                }
            }
            out.push(m);
        }
        out.sort_by(|x, y| x.components().cmp(y.components()));
        Ok(out)
    }
}

/// The complexes and maps of one generating square.
#[derive(Debug, Clone)]
pub struct Sdi<F: Field> {
    pub degree: i64,
    pub sphere: Arc<BoundedComplex<F>>,
    pub disk: Arc<BoundedComplex<F>>,
    pub cylinder: Arc<BoundedComplex<F>>,
    /// `S^n -> D^{n+1}`.
    pub inclusion: ChainMap<F>,
    pub i: ChainMap<F>,
    pub j: ChainMap<F>,
    /// From the inclusion to `i`, with top the inclusion and bottom `j`.
    pub square: SquareMorphism<ChainMap<F>>,
}

fn sdi_with<F: Field>(field: F, n: i64, cylinder: BoundedComplex<F>, fill_base: bool) -> Result<Sdi<F>> {
    let sphere = Arc::new(BoundedComplex::sphere(field.clone(), n));
    let disk = Arc::new(BoundedComplex::disk(field.clone(), n + 1));
    let cylinder = Arc::new(cylinder);
    let (one, zero) = (field.one(), field.zero());
    let inclusion = ChainMap::new(
        sphere.clone(),
        disk.clone(),
        n,
        vec![Matrix::identity(&field, 1)],
    )?;
    let base = if fill_base {
        Matrix::identity(&field, 1)
    } else {
        Matrix::zeros(&field, 0, 1)
    };
    let leg = |top: Vec<F::Elem>| {
        ChainMap::new(
            disk.clone(),
            cylinder.clone(),
            n,
            vec![base.clone(), Matrix::from_rows(2, 1, top)],
        )
    };
    let i = leg(vec![one.clone(), zero.clone()])?;
    let j = leg(vec![zero, one])?;
    let square = SquareMorphism {
        source_arrow: inclusion.clone(),
        target_arrow: i.clone(),
        top: inclusion.clone(),
        bottom: j.clone(),
    };
    if i.after(&inclusion)? != j.after(&inclusion)? {
        return Err(Error::invalid("generating square does not commute"));
    }
    Ok(Sdi {
        degree: n,
        sphere,
        disk,
        cylinder,
        inclusion,
        i,
        j,
        square,
    })
}

/// `S^n -> D^{n+1}` against `i, j: D^{n+1} ⇉ I^{n+1}`, with the cylinder that
/// carries a degree-`n` cell so that `i` and `j` are chain maps extending
/// the identity of `D^{n+1}` in degree `n`.
pub fn build_sdi<F: Field>(field: F, n: i64) -> Result<Sdi<F>> {
    let cyl = BoundedComplex::interval(field.clone(), n + 1);
    sdi_with(field, n, cyl, true)
}

/// The same square on the cylinder without its bottom cell, `i` and `j`
/// vanishing in degree `n`.
pub fn build_sdi_truncated<F: Field>(field: F, n: i64) -> Result<Sdi<F>> {
    let cyl = BoundedComplex::interval_truncated(field.clone(), n + 1);
    sdi_with(field, n, cyl, false)
}

#[derive(Debug, Clone)]
pub struct ChainInjectivityVerdict<F: Field> {
    pub status: Status,
    pub degrees: Vec<(i64, InjectivityVerdict<SquareMorphism<ChainMap<F>>>)>,
    pub failing_degree: Option<i64>,
}

fn injectivity_against<F: FiniteField>(
    f: &ChainMap<F>,
    budget: usize,
    build: fn(F, i64) -> Result<Sdi<F>>,
) -> Result<ChainInjectivityVerdict<F>> {
    let arr = ArrowCategory::new(ChainCategory::with_budget(f.field().clone(), budget));
    let mut degrees = Vec::new();
    for n in padded_window(f) {
        let sdi = build(f.field().clone(), n)?;
        let v = is_injective(&arr, &sdi.square, f)?;
        let ok = v.is_verified();
        degrees.push((n, v));
        if !ok {
            return Ok(ChainInjectivityVerdict {
                status: Status::RefutedExhaustive,
                degrees,
                failing_degree: Some(n),
            });
        }
    }
    Ok(ChainInjectivityVerdict {
        status: Status::Verified,
        degrees,
        failing_degree: None,
    })
}

/// Injectivity of `f`, as an object of `Arr(Ch)`, against every generating
/// square in the padded window. Stops at the first failing degree.
pub fn is_quasi_iso_via_injectivity<F: FiniteField>(
    f: &ChainMap<F>,
    budget: usize,
) -> Result<ChainInjectivityVerdict<F>> {
    injectivity_against(f, budget, build_sdi)
}

/// As [`is_quasi_iso_via_injectivity`] with the truncated cylinder.
pub fn injectivity_truncated<F: FiniteField>(
    f: &ChainMap<F>,
    budget: usize,
) -> Result<ChainInjectivityVerdict<F>> {
    injectivity_against(f, budget, build_sdi_truncated)
}
