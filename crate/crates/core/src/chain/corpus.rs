//! Seeded random complexes and chain maps.

use std::sync::Arc;

use rand::Rng;

use super::complex::{chain_map_basis, BoundedComplex, ChainMap};
use super::field::Field;
use super::matrix::Matrix;

fn random_elem<F: Field, R: Rng>(f: &F, rng: &mut R) -> F::Elem {
    f.from_i64(rng.gen_range(-2..=2))
}

/// A complex on `len` consecutive degrees starting at `lo`, ranks at most
/// `max_rank`. Each differential lands in the kernel of the one below it.
pub fn random_complex<F: Field, R: Rng>(
    field: &F,
    rng: &mut R,
    lo: i64,
    len: usize,
    max_rank: usize,
) -> BoundedComplex<F> {
    let ranks: Vec<usize> = (0..len).map(|_| rng.gen_range(0..=max_rank)).collect();
    let mut diffs: Vec<Matrix<F::Elem>> = Vec::new();
    for i in 1..len {
        let below = if i == 1 {
            Matrix::zeros(field, 0, ranks[0])
        } else {
            diffs[i - 2].clone()
        };
        let kernel = below.kernel_basis(field);
        let cols: Vec<Vec<F::Elem>> = (0..ranks[i])
            .map(|_| {
                let mut v = vec![field.zero(); ranks[i - 1]];
                for k in &kernel {
                    let c = random_elem(field, rng);
                    for (x, y) in v.iter_mut().zip(k) {
                        *x = field.add(x, &field.mul(&c, y));
                    }
                }
                v
            })
            .collect();
        diffs.push(Matrix::from_columns(field, ranks[i - 1], &cols));
    }
    BoundedComplex::new(field.clone(), lo, ranks, diffs).expect("kernel-valued differentials square to zero")
}

/// A random linear combination of a basis of chain maps `x -> y`.
pub fn random_chain_map<F: Field, R: Rng>(
    x: &Arc<BoundedComplex<F>>,
    y: &Arc<BoundedComplex<F>>,
    rng: &mut R,
) -> ChainMap<F> {
    let field = x.field().clone();
    let mut m = ChainMap::zero(x.clone(), y.clone());
    for v in chain_map_basis(x, y) {
        m = m.add(&v.scale(&random_elem(&field, rng)));
    }
    m
}

/// `x -> x ⊕ y`.
pub fn inclusion<F: Field>(x: &Arc<BoundedComplex<F>>, y: &BoundedComplex<F>) -> ChainMap<F> {
    let field = x.field();
    let sum = Arc::new(x.direct_sum(y));
    let (lo, hi) = sum.window().unwrap_or((0, -1));
    let mats = (lo..=hi)
        .map(|n| {
            Matrix::identity(field, x.rank(n)).vstack(&Matrix::zeros(field, y.rank(n), x.rank(n)))
        })
        .collect();
    ChainMap::new(x.clone(), sum, lo, mats).expect("summand inclusion is a chain map")
}

/// `x ⊕ y -> x`.
pub fn projection<F: Field>(x: &Arc<BoundedComplex<F>>, y: &BoundedComplex<F>) -> ChainMap<F> {
    let field = x.field();
    let sum = Arc::new(x.direct_sum(y));
    let (lo, hi) = sum.window().unwrap_or((0, -1));
    let mats = (lo..=hi)
        .map(|n| {
            Matrix::identity(field, x.rank(n)).hstack(&Matrix::zeros(field, x.rank(n), y.rank(n)))
        })
        .collect();
    ChainMap::new(sum, x.clone(), lo, mats).expect("summand projection is a chain map")
}

/// A mixed sample: random maps between random complexes, which are rarely
/// quasi-isomorphisms, and inclusions or projections of contractible summands,
/// which always are. Windows have at most `max_len` degrees.
pub fn random_map<F: Field, R: Rng>(
    field: &F,
    rng: &mut R,
    max_len: usize,
    max_rank: usize,
) -> ChainMap<F> {
    let lo = rng.gen_range(-1..=1);
    let len = rng.gen_range(1..=max_len);
    match rng.gen_range(0..4) {
        0 | 1 => {
            let x = Arc::new(random_complex(field, rng, lo, len, max_rank));
            let ylo = lo + rng.gen_range(0..=1).min(max_len as i64 - len as i64);
            let y = Arc::new(random_complex(field, rng, ylo, len, max_rank));
            random_chain_map(&x, &y, rng)
        }
        k => {
            let x = Arc::new(random_complex(field, rng, lo, len.saturating_sub(1).max(1), max_rank.min(2)));
            let top = x.window().map_or(lo, |w| w.1);
            let n = rng.gen_range(lo + 1..=top.max(lo + 1));
            let disk = BoundedComplex::disk(field.clone(), n);
            if k == 2 {
                inclusion(&x, &disk)
            } else {
                projection(&x, &disk)
            }
        }
    }
}
