use serde::{Deserialize, Serialize};

/// A possibly degenerate simplex `σ^* x`: `cell` indexes a nondegenerate
/// simplex of dimension `σ.last()`, and `sigma` is a monotone surjection
/// `[n] -> [k]` listed by values, so the simplex has dimension `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Simplex {
    pub cell: usize,
    pub sigma: Vec<usize>,
}

impl Simplex {
    pub fn nondegenerate(cell: usize, dim: usize) -> Self {
        Simplex {
            cell,
            sigma: (0..=dim).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.sigma.len() - 1
    }

    /// Dimension of the underlying nondegenerate simplex.
    pub fn base_dim(&self) -> usize {
        *self.sigma.last().expect("sigma is never empty")
    }

    pub fn is_degenerate(&self) -> bool {
        self.dim() != self.base_dim()
    }

    /// `ρ^*` of this simplex for a surjection `ρ: [m] -> [dim]`.
    pub fn pullback(&self, rho: &[usize]) -> Simplex {
        Simplex {
            cell: self.cell,
            sigma: rho.iter().map(|&t| self.sigma[t]).collect(),
        }
    }

    pub(crate) fn valid_sigma(sigma: &[usize]) -> bool {
        !sigma.is_empty()
            && sigma[0] == 0
            && sigma.windows(2).all(|w| w[1] == w[0] || w[1] == w[0] + 1)
    }
}

/// Monotone surjections `[n] -> [k]`, lexicographically.
pub fn surjections(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let last = *cur.last().unwrap();
        if cur.len() == n + 1 {
            if last == k {
                out.push(cur.clone());
            }
            return;
        }
        let remaining = n + 1 - cur.len();
        for step in 0..=1 {
            let v = last + step;
            if v <= k && k - v <= remaining - 1 {
                cur.push(v);
                go(n, k, cur, out);
                cur.pop();
            }
        }
    }
    if k > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    go(n, k, &mut vec![0], &mut out);
    out
}

/// `δ_i: [n-1] -> [n]`, skipping `i`.
pub fn coface(n: usize, i: usize) -> Vec<usize> {
    (0..n).map(|t| if t < i { t } else { t + 1 }).collect()
}

/// `s_i: [n+1] -> [n]`, hitting `i` twice.
pub fn codegeneracy(n: usize, i: usize) -> Vec<usize> {
    (0..n + 2).map(|t| if t <= i { t } else { t - 1 }).collect()
}

/// Splits a monotone map into a surjection onto its image and the sorted image.
pub fn epi_mono(theta: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut image: Vec<usize> = Vec::new();
    let mut eps = Vec::with_capacity(theta.len());
    for &v in theta {
        if image.last() != Some(&v) {
            image.push(v);
        }
        eps.push(image.len() - 1);
    }
    (eps, image)
}

/// For a weakly increasing sequence, the distinct values and the surjection
/// recording where each position lands.
pub(crate) fn collapse<T: PartialEq + Clone>(seq: &[T]) -> (Vec<T>, Vec<usize>) {
    let mut distinct: Vec<T> = Vec::new();
    let mut sigma = Vec::with_capacity(seq.len());
    for v in seq {
        if distinct.last() != Some(v) {
            distinct.push(v.clone());
        }
        sigma.push(distinct.len() - 1);
    }
    (distinct, sigma)
}

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn surjection_counts() {
        for n in 0..6 {
            for k in 0..=n {
                assert_eq!(surjections(n, k).len(), binomial(n, k));
            }
        }
        assert_eq!(surjections(2, 1), vec![vec![0, 0, 1], vec![0, 1, 1]]);
    }

    #[test]
    fn factorization() {
        let (eps, image) = epi_mono(&[1, 1, 3]);
        assert_eq!(eps, vec![0, 0, 1]);
        assert_eq!(image, vec![1, 3]);
        assert_eq!(coface(2, 1), vec![0, 2]);
        assert_eq!(codegeneracy(1, 0), vec![0, 0, 1]);
    }
}
