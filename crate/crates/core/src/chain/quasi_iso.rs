use std::collections::{HashMap, HashSet};

use rayon::prelude::*;

use super::complex::{BoundedComplex, ChainMap};
use super::field::{Field, FiniteField};
use super::matrix::{span_rank, Matrix};
use crate::error::{Error, Result};

/// `H_n` with one cycle representative per basis class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homology<E> {
    pub degree: i64,
    pub dim: usize,
    pub representatives: Vec<Vec<E>>,
}

fn boundaries<F: Field>(x: &BoundedComplex<F>, n: i64) -> Vec<Vec<F::Elem>> {
    let d = x.d(n + 1);
    (0..d.cols()).map(|j| d.column(j)).collect()
}

pub fn homology<F: Field>(x: &BoundedComplex<F>, n: i64) -> Homology<F::Elem> {
    let f = x.field();
    let r = x.rank(n);
    let mut span = boundaries(x, n);
    let mut rank = span_rank(f, r, &span);
    let mut representatives = Vec::new();
    for z in x.d(n).kernel_basis(f) {
        span.push(z.clone());
        let next = span_rank(f, r, &span);
        if next > rank {
            rank = next;
            representatives.push(z);
        } else {
            span.pop();
        }
    }
    Homology {
        degree: n,
        dim: representatives.len(),
        representatives,
    }
}

/// Injectivity and surjectivity of `H_n f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InducedMap {
    pub injective: bool,
    pub surjective: bool,
}

pub fn induced_on_homology<F: Field>(f: &ChainMap<F>, n: i64) -> InducedMap {
    let k = f.field();
    let hx = homology(&f.source, n);
    let hy = homology(&f.target, n);
    let r = f.target.rank(n);
    let by = boundaries(&f.target, n);
    let base = span_rank(k, r, &by);
    let fn_ = f.component(n);
    let mut span = by;
    span.extend(hx.representatives.iter().map(|z| fn_.apply(k, z)));
    let image = span_rank(k, r, &span) - base;
    InducedMap {
        injective: image == hx.dim,
        surjective: image == hy.dim,
    }
}

/// Degrees over which the conditions are checked: the joint window padded by 2.
pub fn padded_window<F: Field>(f: &ChainMap<F>) -> Vec<i64> {
    match f.window() {
        Some((lo, hi)) => (lo - 2..=hi + 2).collect(),
        None => Vec::new(),
    }
}

pub fn is_quasi_iso_homology<F: Field>(f: &ChainMap<F>) -> bool {
    padded_window(f).into_par_iter().all(|n| {
        let m = induced_on_homology(f, n);
        m.injective && m.surjective
    })
}

/// An `n`-cycle `a` and `b` with `db = fa` admitting no `(c, e)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleCounterexample<E> {
    pub degree: i64,
    pub a: Vec<E>,
    pub b: Vec<E>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleCheck<E> {
    pub holds: bool,
    pub counterexample: Option<CycleCounterexample<E>>,
    /// Vectors enumerated.
    pub enumerated: usize,
}

/// Every vector of length `len`, lexicographically with the first coordinate
/// most significant.
pub fn all_vectors<F: FiniteField>(f: &F, len: usize) -> Vec<Vec<F::Elem>> {
    let elems = f.elements();
    let mut out = vec![Vec::with_capacity(len)];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v| {
                elems.iter().map(move |e| {
                    let mut w = v.clone();
                    w.push(e.clone());
                    w
                })
            })
            .collect();
    }
    out
}

struct Budget {
    limit: usize,
    used: usize,
    q: usize,
}

impl Budget {
    fn take(&mut self, len: usize) -> Result<()> {
        let n = u32::try_from(len)
            .ok()
            .and_then(|l| self.q.checked_pow(l))
            .ok_or_else(|| Error::budget(self.limit, "vector count overflows"))?;
        self.used = self.used.saturating_add(n);
        if self.used > self.limit {
            return Err(Error::budget(self.limit, "enumerative quasi-isomorphism check"));
        }
        Ok(())
    }
}

/// Checks the cycle-lifting condition by listing every vector involved.
pub fn quasi_iso_condition_enumerative<F: FiniteField>(
    f: &ChainMap<F>,
    budget: usize,
) -> Result<CycleCheck<F::Elem>> {
    let k = f.field();
    let (x, y) = (&f.source, &f.target);
    let mut b = Budget {
        limit: budget,
        used: 0,
        q: k.order(),
    };
    for n in padded_window(f) {
        let (dx, dy) = (x.d(n), y.d(n + 1));
        let (fn_, fn1) = (f.component(n), f.component(n + 1));
        b.take(y.rank(n + 2))?;
        let bound: HashSet<Vec<F::Elem>> = all_vectors(k, y.rank(n + 2))
            .iter()
            .map(|e| y.d(n + 2).apply(k, e))
            .collect();
        b.take(x.rank(n + 1))?;
        let mut lifts: HashMap<Vec<F::Elem>, Vec<Vec<F::Elem>>> = HashMap::new();
        for c in all_vectors(k, x.rank(n + 1)) {
            lifts.entry(x.d(n + 1).apply(k, &c)).or_default().push(c);
        }
        b.take(x.rank(n))?;
        for a in all_vectors(k, x.rank(n)) {
            if !dx.apply(k, &a).iter().all(|v| k.is_zero(v)) {
                continue;
            }
            let fa = fn_.apply(k, &a);
            b.take(y.rank(n + 1))?;
            let lifts_a = lifts.get(&a).map(Vec::as_slice).unwrap_or(&[]);
            for bv in all_vectors(k, y.rank(n + 1)) {
                if dy.apply(k, &bv) != fa {
                    continue;
                }
                let ok = lifts_a.iter().any(|c| {
                    let fc = fn1.apply(k, c);
                    let diff: Vec<F::Elem> = fc.iter().zip(&bv).map(|(u, v)| k.sub(u, v)).collect();
                    bound.contains(&diff)
                });
                if !ok {
                    return Ok(CycleCheck {
                        holds: false,
                        counterexample: Some(CycleCounterexample {
                            degree: n,
                            a,
                            b: bv,
                        }),
                        enumerated: b.used,
                    });
                }
            }
        }
    }
    Ok(CycleCheck {
        holds: true,
        counterexample: None,
        enumerated: b.used,
    })
}

/// The same condition as a rank equality in each degree: the map
/// `(c, e) |-> (dc, fc - de)` must hit every `(a, b)` with `da = 0`, `db = fa`.
pub fn quasi_iso_condition_linear<F: Field>(f: &ChainMap<F>) -> bool {
    padded_window(f).into_par_iter().all(|n| linear_condition_at(f, n))
}

pub fn linear_condition_at<F: Field>(f: &ChainMap<F>, n: i64) -> bool {
    let k = f.field();
    let (x, y) = (&f.source, &f.target);
    let z = |r, c| Matrix::zeros(k, r, c);
    // rows X_{n-1} ⊕ Y_n, columns X_n ⊕ Y_{n+1}
    let minus_dy = y.d(n + 1).scale(k, &k.neg(&k.one()));
    let constraint = x
        .d(n)
        .hstack(&z(x.rank(n - 1), y.rank(n + 1)))
        .vstack(&f.component(n).hstack(&minus_dy));
    let dim_v = x.rank(n) + y.rank(n + 1) - constraint.rank(k);
    // rows X_n ⊕ Y_{n+1}, columns X_{n+1} ⊕ Y_{n+2}
    let minus_dy2 = y.d(n + 2).scale(k, &k.neg(&k.one()));
    let l = x
        .d(n + 1)
        .hstack(&z(x.rank(n), y.rank(n + 2)))
        .vstack(&f.component(n + 1).hstack(&minus_dy2));
    l.rank(k) == dim_v
}
