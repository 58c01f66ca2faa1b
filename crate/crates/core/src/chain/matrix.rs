use super::field::Field;

/// Dense row-major matrix over a field's elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone + Eq> Matrix<E> {
    pub fn from_rows(rows: usize, cols: usize, data: Vec<E>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has the wrong length");
        Matrix { rows, cols, data }
    }

    pub fn zeros<F: Field<Elem = E>>(f: &F, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![f.zero(); rows * cols],
        }
    }

    pub fn identity<F: Field<Elem = E>>(f: &F, n: usize) -> Self {
        let mut m = Self::zeros(f, n, n);
        for i in 0..n {
            m.set(i, i, f.one());
        }
        m
    }

    /// The matrix whose columns are `cols`, each of length `rows`.
    pub fn from_columns<F: Field<Elem = E>>(f: &F, rows: usize, cols: &[Vec<E>]) -> Self {
        let mut m = Self::zeros(f, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[E] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<E> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero<F: Field<Elem = E>>(&self, f: &F) -> bool {
        self.data.iter().all(|x| f.is_zero(x))
    }

    /// `self * other`.
    pub fn mul<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix shapes do not compose");
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), &f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn add<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f.add(a, b)).collect(),
        }
    }

    pub fn scale<F: Field<Elem = E>>(&self, f: &F, s: &E) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| f.mul(s, a)).collect(),
        }
    }

    pub fn apply<F: Field<Elem = E>>(&self, f: &F, v: &[E]) -> Vec<E> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = f.zero();
                for (j, x) in v.iter().enumerate() {
                    acc = f.add(&acc, &f.mul(self.get(i, j), x));
                }
                acc
            })
            .collect()
    }

    /// Block matrix `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(&self.data[i * self.cols..(i + 1) * self.cols]);
            data.extend_from_slice(&other.data[i * other.cols..(i + 1) * other.cols]);
        }
        Matrix {
            rows: self.rows,
            cols,
            data,
        }
    }

    /// Block matrix with `self` above `other`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref<F: Field<Elem = E>>(&self, f: &F) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = f.inv(m.get(r, c));
            for j in 0..m.cols {
                let v = f.mul(&inv, m.get(r, j));
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || f.is_zero(m.get(i, c)) {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for j in 0..m.cols {
                    let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank<F: Field<Elem = E>>(&self, f: &F) -> usize {
        self.rref(f).1.len()
    }

    /// Basis of the null space, one vector per free column.
    pub fn kernel_basis<F: Field<Elem = E>>(&self, f: &F) -> Vec<Vec<E>> {
        let (m, pivots) = self.rref(f);
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(m.get(r, free));
            }
            basis.push(v);
        }
        basis
    }

    /// Some `x` with `self * x = b`.
    pub fn solve<F: Field<Elem = E>>(&self, f: &F, b: &[E]) -> Option<Vec<E>> {
        assert_eq!(b.len(), self.rows);
        let aug = self.hstack(&Matrix::from_columns(f, self.rows, &[b.to_vec()]));
        let (m, pivots) = aug.rref(f);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![f.zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = m.get(r, self.cols).clone();
        }
        Some(x)
    }
}

/// Rank of the span of a list of vectors of length `len`.
pub fn span_rank<F: Field>(f: &F, len: usize, vectors: &[Vec<F::Elem>]) -> usize {
    Matrix::from_columns(f, len, vectors).rank(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::field::{PrimeField, Rationals};

    #[test]
    fn rank_and_kernel_over_q() {
        let q = Rationals;
        let e = |v: i64| q.from_i64(v);
        let m = Matrix::from_rows(2, 3, vec![e(1), e(2), e(3), e(2), e(4), e(6)]);
        assert_eq!(m.rank(&q), 1);
        let ker = m.kernel_basis(&q);
        assert_eq!(ker.len(), 2);
        for v in ker {
            assert!(m.apply(&q, &v).iter().all(|x| q.is_zero(x)));
        }
    }

    #[test]
    fn solve_over_prime_field() {
        let f = PrimeField::new(3).unwrap();
        let m = Matrix::from_rows(2, 2, vec![1, 1, 0, 2]);
        let x = m.solve(&f, &[2, 1]).unwrap();
        assert_eq!(m.apply(&f, &x), vec![2, 1]);
        let singular = Matrix::from_rows(2, 2, vec![1, 1, 1, 1]);
        assert!(singular.solve(&f, &[1, 0]).is_none());
    }

    #[test]
    fn empty_shapes() {
        let f = PrimeField::new(2).unwrap();
        let m: Matrix<u32> = Matrix::zeros(&f, 0, 3);
        assert_eq!(m.rank(&f), 0);
        assert_eq!(m.kernel_basis(&f).len(), 3);
        let n: Matrix<u32> = Matrix::zeros(&f, 2, 0);
        assert_eq!(n.solve(&f, &[0, 0]), Some(vec![]));
        assert_eq!(n.solve(&f, &[1, 0]), None);
    }
}
