use std::collections::HashMap;
use std::sync::Arc;

use super::set::{FinSimplicialSet, SimplicialMap};
use super::simplex::Simplex;
use super::DIM_LIMIT;
use crate::error::{Error, Result};

fn check_dim(n: usize) -> Result<()> {
    if n > DIM_LIMIT {
        return Err(Error::DimensionBound {
            dim: n,
            bound: DIM_LIMIT,
        });
    }
    Ok(())
}

/// Nerve of a finite poset on `0..size`, with the strict chain behind each
/// nondegenerate simplex. Chains of each length are listed lexicographically.
pub fn nerve(size: usize, le: impl Fn(usize, usize) -> bool) -> Result<(FinSimplicialSet, Vec<Vec<Vec<usize>>>)> {
    let mut chains: Vec<Vec<Vec<usize>>> = Vec::new();
    for len in 1.. {
        let level = strict_chains(size, len, &le);
        if level.is_empty() {
            break;
        }
        check_dim(len - 1)?;
        chains.push(level);
    }
    let index: Vec<HashMap<&Vec<usize>, usize>> = chains
        .iter()
        .map(|l| l.iter().enumerate().map(|(i, c)| (c, i)).collect())
        .collect();
    let faces = chains
        .iter()
        .enumerate()
        .map(|(m, level)| {
            level
                .iter()
                .map(|c| {
                    if m == 0 {
                        return Vec::new();
                    }
                    (0..=m)
                        .map(|i| {
                            let mut d = c.clone();
                            d.remove(i);
                            Simplex::nondegenerate(index[m - 1][&d], m - 1)
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    Ok((FinSimplicialSet::from_faces_unchecked(faces), chains))
}

fn strict_chains(size: usize, len: usize, le: &impl Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
    fn go(
        size: usize,
        len: usize,
        le: &impl Fn(usize, usize) -> bool,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for v in 0..size {
            if cur.last().is_some_and(|&l| l == v || !le(l, v)) {
                continue;
            }
            cur.push(v);
            go(size, len, le, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(size, len, le, &mut Vec::new(), &mut out);
    out
}

/// `Δ_n`; its `m`-simplices are the `(m+1)`-subsets of `[n]` in lexicographic order.
pub fn standard_simplex(n: usize) -> Result<FinSimplicialSet> {
    check_dim(n)?;
    Ok(nerve(n + 1, |a, b| a <= b)?.0)
}

/// Index of the face of `Δ_n` spanned by a sorted nonempty subset.
pub fn simplex_cell(n: usize, subset: &[usize]) -> Simplex {
    // lexicographic rank among subsets of the same size
    let m = subset.len() - 1;
    let mut rank = 0;
    let mut prev: Option<usize> = None;
    for (pos, &v) in subset.iter().enumerate() {
        let start = prev.map_or(0, |p| p + 1);
        for u in start..v {
            rank += super::simplex::binomial(n - u, m - pos);
        }
        prev = Some(v);
    }
    Simplex::nondegenerate(rank, m)
}

/// `∂Δ_n` and the inclusion `j_n: ∂Δ_n -> Δ_n`.
pub fn boundary(n: usize) -> Result<(FinSimplicialSet, SimplicialMap)> {
    let delta = standard_simplex(n)?;
    let keep: Vec<Vec<bool>> = (0..=n)
        .map(|m| (0..delta.count(m)).map(|_| m < n).collect())
        .collect();
    let (bd, renumber) = delta.subcomplex(&keep)?;
    let j = inclusion_from_renumbering(Arc::new(bd.clone()), Arc::new(delta), &renumber);
    Ok((bd, j))
}

pub(crate) fn inclusion_from_renumbering(
    sub: Arc<FinSimplicialSet>,
    whole: Arc<FinSimplicialSet>,
    renumber: &[Vec<Option<usize>>],
) -> SimplicialMap {
    let mut images: Vec<Vec<Simplex>> = (0..sub.counts().len()).map(|n| vec![Simplex::nondegenerate(0, n); sub.count(n)]).collect();
    for (n, level) in renumber.iter().enumerate() {
        for (x, r) in level.iter().enumerate() {
            if let Some(r) = r {
                images[n][*r] = Simplex::nondegenerate(x, n);
            }
        }
    }
    SimplicialMap::new_unchecked(sub, whole, images)
}

/// The map `Δ_n -> X` classifying `s`.
pub fn yoneda(x: &Arc<FinSimplicialSet>, s: &Simplex) -> Result<SimplicialMap> {
    let n = s.dim();
    let (delta, chains) = nerve(n + 1, |a, b| a <= b)?;
    let images = chains
        .iter()
        .map(|level| level.iter().map(|subset| x.act(s, subset)).collect())
        .collect();
    Ok(SimplicialMap::new_unchecked(Arc::new(delta), x.clone(), images))
}

/// `Δ_0 -> X` picking a vertex.
pub fn vertex(x: &Arc<FinSimplicialSet>, v: usize) -> SimplicialMap {
    SimplicialMap::new_unchecked(
        Arc::new(standard_simplex(0).unwrap()),
        x.clone(),
        vec![vec![Simplex::nondegenerate(v, 0)]],
    )
}

/// The constant map `X -> Y` at a vertex of `Y`.
pub fn constant(x: &Arc<FinSimplicialSet>, y: &Arc<FinSimplicialSet>, v: usize) -> SimplicialMap {
    let images = x
        .counts()
        .iter()
        .enumerate()
        .map(|(n, &c)| vec![Simplex { cell: v, sigma: vec![0; n + 1] }; c])
        .collect();
    SimplicialMap::new_unchecked(x.clone(), y.clone(), images)
}

/// `Z_n`: vertices `0..=2n`, edges `0 -> 1 <- 2 -> 3 <- ...`.
pub fn zigzag(n: usize) -> FinSimplicialSet {
    let v = |c| Simplex::nondegenerate(c, 0);
    let edges = (0..2 * n)
        .map(|t| {
            if t % 2 == 0 {
                vec![v(t + 1), v(t)]
            } else {
                vec![v(t), v(t + 1)]
            }
        })
        .collect();
    FinSimplicialSet::from_faces_unchecked(vec![vec![vec![]; 2 * n + 1], edges])
}

/// Binary product with its projections and pairing.
#[derive(Debug, Clone)]
pub struct Product {
    pub apex: Arc<FinSimplicialSet>,
    pub left: SimplicialMap,
    pub right: SimplicialMap,
    index: HashMap<(Simplex, Simplex), usize>,
}

fn common_collapse(a: &Simplex, b: &Simplex) -> (Simplex, Simplex, Vec<usize>) {
    let n = a.dim();
    let mut rho = vec![0];
    let mut keep = vec![0];
    for i in 0..n {
        let both = a.sigma[i] == a.sigma[i + 1] && b.sigma[i] == b.sigma[i + 1];
        let last = *rho.last().unwrap();
        if both {
            rho.push(last);
        } else {
            rho.push(last + 1);
            keep.push(i + 1);
        }
    }
    let pick = |s: &Simplex| Simplex {
        cell: s.cell,
        sigma: keep.iter().map(|&p| s.sigma[p]).collect(),
    };
    (pick(a), pick(b), rho)
}

impl Product {
    /// The simplex `(a, b)` of the product, in normal form.
    pub fn pair(&self, a: &Simplex, b: &Simplex) -> Simplex {
        let (a2, b2, rho) = common_collapse(a, b);
        let m = a2.dim();
        let cell = self.index[&(a2, b2)];
        Simplex::nondegenerate(cell, m).pullback(&rho)
    }

    /// `⟨h1, h2⟩: Z -> X × Y`.
    pub fn pairing(&self, h1: &SimplicialMap, h2: &SimplicialMap) -> Result<SimplicialMap> {
        if h1.source != h2.source {
            return Err(Error::NotComposable("pairing of maps with different sources".into()));
        }
        let images = h1
            .images
            .iter()
            .zip(&h2.images)
            .map(|(l1, l2)| l1.iter().zip(l2).map(|(a, b)| self.pair(a, b)).collect())
            .collect();
        Ok(SimplicialMap::new_unchecked(h1.source.clone(), self.apex.clone(), images))
    }
}

pub fn product(x: &Arc<FinSimplicialSet>, y: &Arc<FinSimplicialSet>) -> Result<Product> {
    let top = match (x.dim(), y.dim()) {
        (Some(a), Some(b)) => a + b,
        _ => {
            let apex = Arc::new(FinSimplicialSet::empty());
            return Ok(Product {
                left: SimplicialMap::new_unchecked(apex.clone(), x.clone(), Vec::new()),
                right: SimplicialMap::new_unchecked(apex.clone(), y.clone(), Vec::new()),
                apex,
                index: HashMap::new(),
            });
        }
    };
    check_dim(top)?;
    let mut cells: Vec<Vec<(Simplex, Simplex)>> = Vec::new();
    let mut index = HashMap::new();
    for n in 0..=top {
        let mut level = Vec::new();
        for a in x.level(n) {
            for b in y.level(n) {
                let degenerate = (0..n).any(|i| a.sigma[i] == a.sigma[i + 1] && b.sigma[i] == b.sigma[i + 1]);
                if !degenerate {
                    index.insert((a.clone(), b.clone()), level.len());
                    level.push((a.clone(), b));
                }
            }
        }
        cells.push(level);
    }
    let mut prod = Product {
        apex: Arc::new(FinSimplicialSet::empty()),
        left: SimplicialMap::from_empty(x.clone()),
        right: SimplicialMap::from_empty(y.clone()),
        index,
    };
    let faces = cells
        .iter()
        .enumerate()
        .map(|(n, level)| {
            level
                .iter()
                .map(|(a, b)| {
                    if n == 0 {
                        return Vec::new();
                    }
                    (0..=n).map(|i| prod.pair(&x.face(a, i), &y.face(b, i))).collect()
                })
                .collect()
        })
        .collect();
    let apex = Arc::new(FinSimplicialSet::from_faces_unchecked(faces));
    prod.left = SimplicialMap::new_unchecked(
        apex.clone(),
        x.clone(),
        cells.iter().map(|l| l.iter().map(|p| p.0.clone()).collect()).collect(),
    );
    prod.right = SimplicialMap::new_unchecked(
        apex.clone(),
        y.clone(),
        cells.iter().map(|l| l.iter().map(|p| p.1.clone()).collect()).collect(),
    );
    prod.apex = apex;
    Ok(prod)
}

/// `f × g`.
pub fn product_map(
    f: &SimplicialMap,
    g: &SimplicialMap,
    source: &Product,
    target: &Product,
) -> Result<SimplicialMap> {
    let a = f.after(&source.left)?;
    let b = g.after(&source.right)?;
    target.pairing(&a, &b)
}
