use std::collections::HashMap;
use std::sync::Arc;

use super::constructions::{standard_simplex, yoneda};
use super::search::search_maps;
use super::set::{FinSimplicialSet, SimplicialMap};
use super::simplex::{codegeneracy, coface, Simplex};
use super::subdivision::Subdivision;
use crate::error::{Error, Result};

/// `Δ_m -> Δ_n` induced by a monotone `θ: [m] -> [n]`.
pub fn delta_map(n: usize, theta: &[usize]) -> Result<SimplicialMap> {
    let delta = Arc::new(standard_simplex(n)?);
    let top = Simplex::nondegenerate(0, n);
    let mut f = yoneda(&delta, &delta.act(&top, theta))?;
    f.source = Arc::new(standard_simplex(theta.len() - 1)?);
    Ok(f)
}

/// `Ex X` through dimension `bound`: the `n`-simplices are the maps
/// `Sd Δ_n -> X`, faces and degeneracies act by precomposition.
#[derive(Debug, Clone)]
pub struct Ex {
    pub base: Arc<FinSimplicialSet>,
    pub set: Arc<FinSimplicialSet>,
    pub bound: usize,
    subdivided: Vec<Subdivision>,
    cell_maps: Vec<Vec<SimplicialMap>>,
    normal: Vec<HashMap<Vec<Vec<Simplex>>, Simplex>>,
    /// `q_X: X -> Ex X`; `None` when `X` has simplices above the bound.
    pub unit: Option<SimplicialMap>,
}

impl Ex {
    pub fn new(x: &Arc<FinSimplicialSet>, bound: usize, budget: usize) -> Result<Self> {
        let mut subdivided = Vec::new();
        let mut cell_maps: Vec<Vec<SimplicialMap>> = Vec::new();
        let mut normal: Vec<HashMap<Vec<Vec<Simplex>>, Simplex>> = Vec::new();
        let mut faces: Vec<Vec<Vec<Simplex>>> = Vec::new();
        for n in 0..=bound {
            let delta = Arc::new(standard_simplex(n)?);
            let sdn = Subdivision::new(&delta)?;
            let homs = search_maps(&sdn.set, x, &[], None, budget)?;
            let mut level: HashMap<Vec<Vec<Simplex>>, Simplex> = HashMap::new();
            if n > 0 {
                let below = &subdivided[n - 1];
                for i in 0..n {
                    let s = sdn.map(&delta_map(n - 1, &codegeneracy(n - 1, i))?, below)?;
                    for (images, nf) in &normal[n - 1] {
                        let g = SimplicialMap::new_unchecked(below.set.clone(), x.clone(), images.clone());
                        let key = g.after(&s)?.images;
                        level.entry(key).or_insert_with(|| nf.pullback(&codegeneracy(n - 1, i)));
                    }
                }
            }
            let mut cells = Vec::new();
            for h in homs {
                if !level.contains_key(&h.images) {
                    level.insert(h.images.clone(), Simplex::nondegenerate(cells.len(), n));
                    cells.push(h);
                }
            }
            let mut level_faces = Vec::new();
            if n > 0 {
                let below = &subdivided[n - 1];
                let cofaces = (0..=n)
                    .map(|i| below.map(&delta_map(n, &coface(n, i))?, &sdn))
                    .collect::<Result<Vec<_>>>()?;
                for h in &cells {
                    level_faces.push(
                        cofaces
                            .iter()
                            .map(|d| normal[n - 1][&h.after(d).unwrap().images].clone())
                            .collect(),
                    );
                }
            } else {
                level_faces = vec![Vec::new(); cells.len()];
            }
            faces.push(level_faces);
            normal.push(level);
            cell_maps.push(cells);
            subdivided.push(sdn);
        }
        let set = Arc::new(FinSimplicialSet::from_faces_unchecked(faces));
        let mut ex = Ex {
            base: x.clone(),
            set,
            bound,
            subdivided,
            cell_maps,
            normal,
            unit: None,
        };
        if x.dim().is_none_or(|d| d <= bound) {
            let images = (0..x.counts().len())
                .map(|n| {
                    (0..x.count(n))
                        .map(|c| {
                            let y = yoneda(x, &Simplex::nondegenerate(c, n))?;
                            let g = y.after(&ex.subdivided[n].last_vertex_as_delta()?)?;
                            ex.element(&g)
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            ex.unit = Some(SimplicialMap::new_unchecked(x.clone(), ex.set.clone(), images));
        }
        Ok(ex)
    }

    /// The simplex of `Ex X` represented by `g: Sd Δ_n -> X`.
    pub fn element(&self, g: &SimplicialMap) -> Result<Simplex> {
        let n = g.source.dim().unwrap_or(0);
        self.normal
            .get(n)
            .and_then(|l| l.get(&g.images))
            .cloned()
            .ok_or_else(|| Error::invalid("map is not a simplex of this Ex"))
    }

    /// The map `Sd Δ_n -> X` behind a simplex of `Ex X`.
    pub fn element_map(&self, s: &Simplex) -> Result<SimplicialMap> {
        let (n, k) = (s.dim(), s.base_dim());
        let cell = &self.cell_maps[k][s.cell];
        if n == k {
            return Ok(cell.clone());
        }
        let sigma = self.subdivided[n].map(&delta_map(k, &s.sigma)?, &self.subdivided[k])?;
        cell.after(&sigma)
    }

    /// The subdivided standard simplex used for level `n`.
    pub fn subdivided_simplex(&self, n: usize) -> &Subdivision {
        &self.subdivided[n]
    }

    /// `q_X`, failing when `X` has simplices above the bound.
    pub fn q(&self) -> Result<&SimplicialMap> {
        self.unit.as_ref().ok_or(Error::DimensionBound {
            dim: self.base.dim().unwrap_or(0),
            bound: self.bound,
        })
    }

    /// `Ex f: Ex X -> Ex Y`, with `self` built on `X`.
    pub fn map(&self, f: &SimplicialMap, target: &Ex) -> Result<SimplicialMap> {
        if f.source != self.base || f.target != target.base || self.bound != target.bound {
            return Err(Error::NotComposable("Ex of a map between other sets".into()));
        }
        let images = self
            .cell_maps
            .iter()
            .take(self.set.counts().len())
            .map(|l| l.iter().map(|h| target.element(&f.after(h)?)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(SimplicialMap::new_unchecked(self.set.clone(), target.set.clone(), images))
    }

    /// The transpose `X -> Ex Y` of `g: Sd X -> Y`, with `self` built on `Y`.
    pub fn transpose(&self, g: &SimplicialMap, sd_x: &Subdivision) -> Result<SimplicialMap> {
        let x = &sd_x.base;
        let images = (0..x.counts().len())
            .map(|n| {
                (0..x.count(n))
                    .map(|c| {
                        let y = yoneda(x, &Simplex::nondegenerate(c, n))?;
                        let sdy = self.subdivided_for(n)?.map(&y, sd_x)?;
                        self.element(&g.after(&sdy)?)
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SimplicialMap::new_unchecked(x.clone(), self.set.clone(), images))
    }

    /// Inverse of [`Ex::transpose`].
    pub fn untranspose(&self, h: &SimplicialMap, sd_x: &Subdivision) -> Result<SimplicialMap> {
        let counts = sd_x.set.counts();
        let images = (0..counts.len())
            .map(|m| {
                (0..counts[m])
                    .map(|i| {
                        let (n, c, chain) = sd_x.describe(m, i);
                        let g = self.element_map(&h.images[n][c])?;
                        let cell = self.subdivided[n].simplex(&Simplex::nondegenerate(0, n), chain);
                        Ok(g.apply(&cell))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SimplicialMap::new_unchecked(sd_x.set.clone(), self.base.clone(), images))
    }

    fn subdivided_for(&self, n: usize) -> Result<&Subdivision> {
        self.subdivided.get(n).ok_or(Error::DimensionBound {
            dim: n,
            bound: self.bound,
        })
    }
}

impl Subdivision {
    /// The last-vertex map of a subdivided standard simplex, with the base
    /// rebuilt as a standard simplex so it composes with Yoneda maps.
    fn last_vertex_as_delta(&self) -> Result<SimplicialMap> {
        let mut p = self.last_vertex.clone();
        p.target = Arc::new(standard_simplex(self.base.dim().unwrap_or(0))?);
        Ok(p)
    }
}

/// `X -> Ex X -> ... -> Ex_M X`, each stage truncated at `bound`.
#[derive(Debug, Clone)]
pub struct ExInfty {
    pub stages: Vec<Arc<FinSimplicialSet>>,
    pub functors: Vec<Ex>,
    /// `q_{i,i+1}`.
    pub connecting: Vec<SimplicialMap>,
}

pub fn ex_infty(x: &Arc<FinSimplicialSet>, stages: usize, bound: usize, budget: usize) -> Result<ExInfty> {
    let mut out = ExInfty {
        stages: vec![x.clone()],
        functors: Vec::new(),
        connecting: Vec::new(),
    };
    for _ in 0..stages {
        let ex = Ex::new(out.stages.last().unwrap(), bound, budget)?;
        out.connecting.push(ex.q()?.clone());
        out.stages.push(ex.set.clone());
        out.functors.push(ex);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const BUDGET: usize = 1 << 22;

    #[test]
    fn ex_of_interval() {
        let d1 = Arc::new(standard_simplex(1).unwrap());
        let ex = Ex::new(&d1, 2, BUDGET).unwrap();
        assert_eq!(ex.set.level(0).len(), 2);
        assert_eq!(ex.set.level(1).len(), 5);
        ex.set.validate().unwrap();
        let q = ex.q().unwrap();
        q.validate().unwrap();
        assert!(q.is_mono());
    }

    #[test]
    fn ex_of_point_is_point() {
        let d0 = Arc::new(standard_simplex(0).unwrap());
        let chain = ex_infty(&d0, 3, 2, BUDGET).unwrap();
        for s in &chain.stages {
            assert_eq!(s.counts(), vec![1]);
        }
    }

    #[test]
    fn transpose_of_last_vertex_is_q() {
        let d1 = Arc::new(standard_simplex(1).unwrap());
        let sd = Subdivision::new(&d1).unwrap();
        let ex = Ex::new(&d1, 1, BUDGET).unwrap();
        let t = ex.transpose(&sd.last_vertex, &sd).unwrap();
        assert_eq!(&t, ex.q().unwrap());
        assert_eq!(ex.untranspose(&t, &sd).unwrap(), sd.last_vertex);
    }
}
