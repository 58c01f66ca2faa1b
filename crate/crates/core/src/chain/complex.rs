use std::sync::Arc;

use super::field::Field;
use super::matrix::Matrix;
use crate::error::{Error, Result};

/// A chain complex of finite-rank free modules supported on `[lo, hi]`.
///
/// Zero ranks at either end are trimmed on construction, so two complexes
/// with the same data compare equal whatever window they were given in.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BoundedComplex<F: Field> {
    field: F,
    lo: i64,
    ranks: Vec<usize>,
    /// `diffs[i]` is `d_{lo+i+1}`, of shape `ranks[i] × ranks[i+1]`.
    diffs: Vec<Matrix<F::Elem>>,
}

impl<F: Field> BoundedComplex<F> {
    /// `ranks[i]` is the rank in degree `lo + i`; `diffs[i]` is `d_{lo+i+1}`.
    pub fn new(field: F, lo: i64, ranks: Vec<usize>, diffs: Vec<Matrix<F::Elem>>) -> Result<Self> {
        if diffs.len() + 1 != ranks.len().max(1) {
            return Err(Error::invalid("need one differential between each pair of adjacent degrees"));
        }
        for (i, d) in diffs.iter().enumerate() {
            if d.rows() != ranks[i] || d.cols() != ranks[i + 1] {
                return Err(Error::invalid(format!(
                    "d_{} has shape {}x{}, expected {}x{}",
                    lo + i as i64 + 1,
                    d.rows(),
                    d.cols(),
                    ranks[i],
                    ranks[i + 1]
                )));
            }
        }
        for i in 1..diffs.len() {
            if !diffs[i - 1].mul(&field, &diffs[i]).is_zero(&field) {
                return Err(Error::invalid(format!("d_{} d_{} is not zero", lo + i as i64, lo + i as i64 + 1)));
            }
        }
        let mut c = BoundedComplex {
            field,
            lo,
            ranks,
            diffs,
        };
        c.trim();
        Ok(c)
    }

    fn trim(&mut self) {
        while self.ranks.last() == Some(&0) {
            self.ranks.pop();
            self.diffs.pop();
        }
        while self.ranks.first() == Some(&0) {
            self.ranks.remove(0);
            if !self.diffs.is_empty() {
                self.diffs.remove(0);
            }
            self.lo += 1;
        }
        if self.ranks.is_empty() {
            self.lo = 0;
            self.diffs.clear();
        }
    }

    pub fn zero(field: F) -> Self {
        BoundedComplex {
            field,
            lo: 0,
            ranks: Vec::new(),
            diffs: Vec::new(),
        }
    }

    /// `S^n`: one generator in degree `n`.
    pub fn sphere(field: F, n: i64) -> Self {
        BoundedComplex {
            field,
            lo: n,
            ranks: vec![1],
            diffs: Vec::new(),
        }
    }

    /// `D^n`: degrees `n` and `n-1` joined by the identity.
    pub fn disk(field: F, n: i64) -> Self {
        let d = Matrix::identity(&field, 1);
        BoundedComplex {
            field,
            lo: n - 1,
            ranks: vec![1, 1],
            diffs: vec![d],
        }
    }

    /// The cylinder on `D^n`: ranks 1, 2, 1 in degrees `n+1, n, n-1`, with
    /// `d(x) = (x, -x)` and `d(y, z) = y + z`.
    pub fn interval(field: F, n: i64) -> Self {
        let (one, m1) = (field.one(), field.neg(&field.one()));
        let top = Matrix::from_rows(2, 1, vec![one.clone(), m1]);
        let mid = Matrix::from_rows(1, 2, vec![one.clone(), one]);
        BoundedComplex {
            field,
            lo: n - 1,
            ranks: vec![1, 2, 1],
            diffs: vec![mid, top],
        }
    }

    /// Rank 1 in degree `n+1` and rank 2 in degree `n`, `d(x) = (x, -x)`,
    /// with nothing below degree `n`.
    pub fn interval_truncated(field: F, n: i64) -> Self {
        let (one, m1) = (field.one(), field.neg(&field.one()));
        BoundedComplex {
            field,
            lo: n,
            ranks: vec![2, 1],
            diffs: vec![Matrix::from_rows(2, 1, vec![one, m1])],
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let f = &self.field;
        let Some((lo, hi)) = joint(self.window(), other.window()) else {
            return self.clone();
        };
        let ranks: Vec<usize> = (lo..=hi).map(|n| self.rank(n) + other.rank(n)).collect();
        let diffs = (lo + 1..=hi)
            .map(|n| block_diag(f, &self.d(n), &other.d(n)))
            .collect();
        BoundedComplex {
            field: f.clone(),
            lo,
            ranks,
            diffs,
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    /// `None` for the zero complex.
    pub fn window(&self) -> Option<(i64, i64)> {
        if self.ranks.is_empty() {
            None
        } else {
            Some((self.lo, self.lo + self.ranks.len() as i64 - 1))
        }
    }

    pub fn rank(&self, n: i64) -> usize {
        let i = n - self.lo;
        if i < 0 || i >= self.ranks.len() as i64 {
            0
        } else {
            self.ranks[i as usize]
        }
    }

    /// `d_n`, of shape `rank(n-1) × rank(n)`.
    pub fn d(&self, n: i64) -> Matrix<F::Elem> {
        let i = n - self.lo - 1;
        if i >= 0 && (i as usize) < self.diffs.len() {
            self.diffs[i as usize].clone()
        } else {
            Matrix::zeros(&self.field, self.rank(n - 1), self.rank(n))
        }
    }
}

pub(crate) fn joint(a: Option<(i64, i64)>, b: Option<(i64, i64)>) -> Option<(i64, i64)> {
    match (a, b) {
        (None, w) | (w, None) => w,
        (Some((a0, a1)), Some((b0, b1))) => Some((a0.min(b0), a1.max(b1))),
    }
}

fn block_diag<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    let top = a.hstack(&Matrix::zeros(f, a.rows(), b.cols()));
    let bottom = Matrix::zeros(f, b.rows(), a.cols()).hstack(b);
    top.vstack(&bottom)
}

/// A degreewise family of matrices commuting with the differentials.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChainMap<F: Field> {
    pub source: Arc<BoundedComplex<F>>,
    pub target: Arc<BoundedComplex<F>>,
    lo: i64,
    /// One matrix per degree of the joint window.
    mats: Vec<Matrix<F::Elem>>,
}

impl<F: Field> ChainMap<F> {
    /// `components` gives `f_n` for `n = lo, lo+1, ...`; degrees not covered
    /// are zero.
    pub fn new(
        source: Arc<BoundedComplex<F>>,
        target: Arc<BoundedComplex<F>>,
        lo: i64,
        components: Vec<Matrix<F::Elem>>,
    ) -> Result<Self> {
        let field = source.field().clone();
        let window = joint(source.window(), target.window());
        let mut mats = Vec::new();
        let (wlo, whi) = window.unwrap_or((0, -1));
        for n in wlo..=whi {
            mats.push(Matrix::zeros(&field, target.rank(n), source.rank(n)));
        }
        for (k, m) in components.into_iter().enumerate() {
            let n = lo + k as i64;
            let (r, c) = (target.rank(n), source.rank(n));
            if m.rows() != r || m.cols() != c {
                return Err(Error::invalid(format!(
                    "f_{n} has shape {}x{}, expected {r}x{c}",
                    m.rows(),
                    m.cols()
                )));
            }
            if r * c > 0 {
                mats[(n - wlo) as usize] = m;
            }
        }
        let f = ChainMap {
            source,
            target,
            lo: wlo,
            mats,
        };
        f.validate()?;
        Ok(f)
    }

    pub(crate) fn from_parts_unchecked(
        source: Arc<BoundedComplex<F>>,
        target: Arc<BoundedComplex<F>>,
        mats: Vec<Matrix<F::Elem>>,
    ) -> Self {
        let lo = joint(source.window(), target.window()).map_or(0, |w| w.0);
        ChainMap {
            source,
            target,
            lo,
            mats,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let f = self.field();
        let Some((lo, hi)) = self.window() else {
            return Ok(());
        };
        for n in lo..=hi + 1 {
            let lhs = self.target.d(n).mul(f, &self.component(n));
            let rhs = self.component(n - 1).mul(f, &self.source.d(n));
            if lhs != rhs {
                return Err(Error::invalid(format!("chain map condition fails in degree {n}")));
            }
        }
        Ok(())
    }

    pub fn field(&self) -> &F {
        self.source.field()
    }

    pub fn window(&self) -> Option<(i64, i64)> {
        joint(self.source.window(), self.target.window())
    }

    pub fn component(&self, n: i64) -> Matrix<F::Elem> {
        let i = n - self.lo;
        if i >= 0 && (i as usize) < self.mats.len() {
            self.mats[i as usize].clone()
        } else {
            Matrix::zeros(self.field(), self.target.rank(n), self.source.rank(n))
        }
    }

    pub fn components(&self) -> &[Matrix<F::Elem>] {
        &self.mats
    }

    pub fn zero(source: Arc<BoundedComplex<F>>, target: Arc<BoundedComplex<F>>) -> Self {
        let field = source.field().clone();
        let (lo, hi) = joint(source.window(), target.window()).unwrap_or((0, -1));
        let mats = (lo..=hi)
            .map(|n| Matrix::zeros(&field, target.rank(n), source.rank(n)))
            .collect();
        ChainMap::from_parts_unchecked(source, target, mats)
    }

    pub fn identity(x: Arc<BoundedComplex<F>>) -> Self {
        let field = x.field().clone();
        let (lo, hi) = x.window().unwrap_or((0, -1));
        let mats = (lo..=hi).map(|n| Matrix::identity(&field, x.rank(n))).collect();
        ChainMap::from_parts_unchecked(x.clone(), x, mats)
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &ChainMap<F>) -> Result<ChainMap<F>> {
        if f.target != self.source {
            return Err(Error::NotComposable("chain maps do not meet".into()));
        }
        let field = self.field();
        let (lo, hi) = joint(f.source.window(), self.target.window()).unwrap_or((0, -1));
        let mats = (lo..=hi)
            .map(|n| self.component(n).mul(field, &f.component(n)))
            .collect();
        Ok(ChainMap::from_parts_unchecked(
            f.source.clone(),
            self.target.clone(),
            mats,
        ))
    }

    /// Coefficient sum of two parallel maps.
    pub fn add(&self, other: &ChainMap<F>) -> ChainMap<F> {
        let field = self.field();
        let mats = self
            .mats
            .iter()
            .zip(&other.mats)
            .map(|(a, b)| a.add(field, b))
            .collect();
        ChainMap::from_parts_unchecked(self.source.clone(), self.target.clone(), mats)
    }

    pub fn scale(&self, s: &F::Elem) -> ChainMap<F> {
        let field = self.field();
        let mats = self.mats.iter().map(|a| a.scale(field, s)).collect();
        ChainMap::from_parts_unchecked(self.source.clone(), self.target.clone(), mats)
    }
}

/// A basis of the space of chain maps `x -> y`.
pub fn chain_map_basis<F: Field>(
    x: &Arc<BoundedComplex<F>>,
    y: &Arc<BoundedComplex<F>>,
) -> Vec<ChainMap<F>> {
    let field = x.field();
    let Some((lo, hi)) = joint(x.window(), y.window()) else {
        return vec![ChainMap::zero(x.clone(), y.clone())];
    };
    let mut offsets = Vec::new();
    let mut total = 0;
    for n in lo..=hi {
        offsets.push(total);
        total += y.rank(n) * x.rank(n);
    }
    let var = |n: i64, i: usize, j: usize| -> Option<usize> {
        if n < lo || n > hi {
            return None;
        }
        Some(offsets[(n - lo) as usize] + i * x.rank(n) + j)
    };
    // d^Y_n f_n - f_{n-1} d^X_n = 0
    let mut rows: Vec<Vec<F::Elem>> = Vec::new();
    for n in lo..=hi + 1 {
        let (dy, dx) = (y.d(n), x.d(n));
        for i in 0..y.rank(n - 1) {
            for j in 0..x.rank(n) {
                let mut row = vec![field.zero(); total];
                for k in 0..y.rank(n) {
                    if let Some(v) = var(n, k, j) {
                        row[v] = field.add(&row[v], dy.get(i, k));
                    }
                }
                for k in 0..x.rank(n - 1) {
                    if let Some(v) = var(n - 1, i, k) {
                        row[v] = field.sub(&row[v], dx.get(k, j));
                    }
                }
                rows.push(row);
            }
        }
    }
    let system = Matrix::from_rows(rows.len(), total, rows.into_iter().flatten().collect());
    system
        .kernel_basis(field)
        .into_iter()
        .map(|v| {
            let mats = (lo..=hi)
                .map(|n| {
                    let o = offsets[(n - lo) as usize];
                    let (r, c) = (y.rank(n), x.rank(n));
                    Matrix::from_rows(r, c, v[o..o + r * c].to_vec())
                })
                .collect();
            ChainMap::from_parts_unchecked(x.clone(), y.clone(), mats)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::field::{PrimeField, Rationals};

    #[test]
    fn rejects_nonzero_square() {
        let q = Rationals;
        let one = Matrix::identity(&q, 1);
        assert!(BoundedComplex::new(q, 0, vec![1, 1, 1], vec![one.clone(), one]).is_err());
    }

    #[test]
    fn trims_zero_ends() {
        let f = PrimeField::new(2).unwrap();
        let z = |r, c| Matrix::zeros(&f, r, c);
        let c = BoundedComplex::new(f, -1, vec![0, 1, 0], vec![z(0, 1), z(1, 0)]).unwrap();
        assert_eq!(c, BoundedComplex::sphere(f, 0));
    }

    #[test]
    fn cylinder_squares_to_zero() {
        let q = Rationals;
        let i = BoundedComplex::interval(q, 3);
        let again = BoundedComplex::new(q, 2, vec![1, 2, 1], vec![i.d(3), i.d(4)]).unwrap();
        assert_eq!(again, i);
        assert_eq!(i.window(), Some((2, 4)));
    }

    #[test]
    fn chain_maps_between_disks() {
        let f = PrimeField::new(3).unwrap();
        let d = Arc::new(BoundedComplex::disk(f, 1));
        // maps D^1 -> D^1 are scalars
        assert_eq!(chain_map_basis(&d, &d).len(), 1);
        let s = Arc::new(BoundedComplex::sphere(f, 0));
        // S^0 -> D^1 picks an element of degree 0
        assert_eq!(chain_map_basis(&s, &d).len(), 1);
        // D^1 -> S^0 must vanish on the boundary generator
        assert_eq!(chain_map_basis(&d, &s).len(), 0);
        for m in chain_map_basis(&s, &d) {
            m.validate().unwrap();
        }
    }
}
