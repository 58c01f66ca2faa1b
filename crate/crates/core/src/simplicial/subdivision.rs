use std::collections::HashMap;
use std::sync::Arc;

use super::set::{FinSimplicialSet, SimplicialMap};
use super::simplex::{collapse, Simplex};
use crate::error::{Error, Result};

/// Strict chains of nonempty subsets of `[n]` (as bitmasks) of length `m + 1`
/// ending at the full set, lexicographically.
fn top_chains(n: usize, m: usize) -> Vec<Vec<u32>> {
    fn go(cur: &mut Vec<u32>, m: usize, out: &mut Vec<Vec<u32>>) {
        if cur.len() == m + 1 {
            let mut c = cur.clone();
            c.reverse();
            out.push(c);
            return;
        }
        let top = *cur.last().unwrap();
        // proper nonempty subsets of `top`
        let mut s = (top - 1) & top;
        while s > 0 {
            cur.push(s);
            go(cur, m, out);
            cur.pop();
            s = (s - 1) & top;
        }
    }
    let full = (1u32 << (n + 1)) - 1;
    let mut out = Vec::new();
    go(&mut vec![full], m, &mut out);
    out.sort();
    out
}

fn members(mask: u32) -> Vec<usize> {
    (0..32).filter(|&b| mask & (1 << b) != 0).collect()
}

/// `Sd X` with its cells described as (simplex of `X`, chain of faces).
///
/// The nondegenerate `m`-simplices are pairs of a nondegenerate `n`-simplex
/// `x` of `X` and a strict chain `S_0 ⊊ ... ⊊ S_m = [n]`.
#[derive(Debug, Clone)]
pub struct Subdivision {
    pub base: Arc<FinSimplicialSet>,
    pub set: Arc<FinSimplicialSet>,
    cells: Vec<Vec<(usize, usize, Vec<u32>)>>,
    index: Vec<HashMap<(usize, usize, Vec<u32>), usize>>,
    /// `p: Sd X -> X`, sending a chain to its sequence of maxima.
    pub last_vertex: SimplicialMap,
}

impl Subdivision {
    pub fn new(x: &Arc<FinSimplicialSet>) -> Result<Self> {
        let top = x.dim();
        let levels = top.map_or(0, |t| t + 1);
        let mut cells: Vec<Vec<(usize, usize, Vec<u32>)>> = vec![Vec::new(); levels];
        if top.is_some_and(|t| t >= 31) {
            return Err(Error::DimensionBound { dim: top.unwrap(), bound: 30 });
        }
        for (m, level) in cells.iter_mut().enumerate() {
            for n in m..levels {
                let chains = top_chains(n, m);
                for c in 0..x.count(n) {
                    for ch in &chains {
                        level.push((n, c, ch.clone()));
                    }
                }
            }
        }
        let index: Vec<HashMap<(usize, usize, Vec<u32>), usize>> = cells
            .iter()
            .map(|l| l.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect())
            .collect();
        let mut sd = Subdivision {
            base: x.clone(),
            set: Arc::new(FinSimplicialSet::empty()),
            cells,
            index,
            last_vertex: SimplicialMap::from_empty(x.clone()),
        };
        let faces = sd
            .cells
            .iter()
            .enumerate()
            .map(|(m, level)| {
                level
                    .iter()
                    .map(|(n, c, ch)| {
                        if m == 0 {
                            return Vec::new();
                        }
                        let s = Simplex::nondegenerate(*c, *n);
                        (0..=m)
                            .map(|i| {
                                let mut d = ch.clone();
                                d.remove(i);
                                sd.simplex(&s, &d)
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        sd.set = Arc::new(FinSimplicialSet::from_faces_unchecked(faces));
        let images = sd
            .cells
            .iter()
            .map(|level| {
                level
                    .iter()
                    .map(|(n, c, ch)| {
                        let theta: Vec<usize> = ch.iter().map(|&s| 31 - s.leading_zeros() as usize).collect();
                        x.act(&Simplex::nondegenerate(*c, *n), &theta)
                    })
                    .collect()
            })
            .collect();
        sd.last_vertex = SimplicialMap::new_unchecked(sd.set.clone(), x.clone(), images);
        Ok(sd)
    }

    /// The simplex of `Sd X` given by a simplex `s` of `X` and a weakly
    /// increasing chain of nonempty subsets of `[dim s]`.
    pub fn simplex(&self, s: &Simplex, chain: &[u32]) -> Simplex {
        let top = *chain.last().unwrap();
        let mu = members(top);
        let restricted = self.base.act(s, &mu);
        let sigma = &restricted.sigma;
        let relabelled: Vec<u32> = chain
            .iter()
            .map(|&set| {
                mu.iter()
                    .enumerate()
                    .filter(|(_, &v)| set & (1 << v) != 0)
                    .fold(0u32, |acc, (pos, _)| acc | (1 << sigma[pos]))
            })
            .collect();
        let (distinct, rho) = collapse(&relabelled);
        let key = (restricted.base_dim(), restricted.cell, distinct);
        let r = key.2.len() - 1;
        Simplex::nondegenerate(self.index[r][&key], r).pullback(&rho)
    }

    /// The cell of `Sd X` at `(dim, index)` as (dimension of `x`, `x`, chain).
    pub fn describe(&self, m: usize, i: usize) -> (usize, usize, &[u32]) {
        let (n, c, ch) = &self.cells[m][i];
        (*n, *c, ch)
    }

    /// `Sd f: Sd X -> Sd Y`, with `self` the subdivision of `X`.
    pub fn map(&self, f: &SimplicialMap, target: &Subdivision) -> Result<SimplicialMap> {
        if f.source != self.base || f.target != target.base {
            return Err(Error::NotComposable("subdivision of a map between other sets".into()));
        }
        let images = self
            .cells
            .iter()
            .map(|level| {
                level
                    .iter()
                    .map(|(n, c, ch)| target.simplex(&f.images[*n][*c], ch))
                    .collect()
            })
            .collect();
        Ok(SimplicialMap::new_unchecked(self.set.clone(), target.set.clone(), images))
    }
}

/// `X, Sd X, ..., Sd_k X`.
#[derive(Debug, Clone)]
pub struct Tower {
    pub stages: Vec<Arc<FinSimplicialSet>>,
    subs: Vec<Subdivision>,
}

impl Tower {
    pub fn new(x: &Arc<FinSimplicialSet>, k: usize) -> Result<Self> {
        let mut stages = vec![x.clone()];
        let mut subs = Vec::new();
        for _ in 0..k {
            let s = Subdivision::new(stages.last().unwrap())?;
            stages.push(s.set.clone());
            subs.push(s);
        }
        Ok(Tower { stages, subs })
    }

    pub fn height(&self) -> usize {
        self.subs.len()
    }

    pub fn stage(&self, k: usize) -> &Arc<FinSimplicialSet> {
        &self.stages[k]
    }

    /// `p_{k,m}: Sd_k X -> Sd_m X`, the composite of last-vertex maps.
    pub fn p(&self, k: usize, m: usize) -> Result<SimplicialMap> {
        if m > k || k > self.height() {
            return Err(Error::invalid(format!("no comparison from stage {k} to stage {m}")));
        }
        let mut out = SimplicialMap::identity(self.stages[k].clone());
        for i in (m..k).rev() {
            out = self.subs[i].last_vertex.after(&out)?;
        }
        Ok(out)
    }

    /// `Sd_k f` for `f` from this tower's base into `target`'s.
    pub fn map(&self, f: &SimplicialMap, target: &Tower, k: usize) -> Result<SimplicialMap> {
        let mut g = f.clone();
        for i in 0..k {
            g = self.subs[i].map(&g, &target.subs[i])?;
        }
        Ok(g)
    }
}

pub fn sd(x: &Arc<FinSimplicialSet>) -> Result<Arc<FinSimplicialSet>> {
    Ok(Subdivision::new(x)?.set)
}

pub fn sd_k(x: &Arc<FinSimplicialSet>, k: usize) -> Result<Arc<FinSimplicialSet>> {
    Ok(Tower::new(x, k)?.stages[k].clone())
}
