use std::collections::HashMap;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use super::simplex::{codegeneracy, coface, epi_mono, surjections, Simplex};
use super::DIM_LIMIT;
use crate::error::{Error, Result};

/// A finite simplicial set stored by its nondegenerate simplices.
///
/// `faces[n][x]` lists `d_0 x, ..., d_n x` for the `x`-th nondegenerate
/// `n`-simplex; vertices have no faces. Every other simplex is a degeneracy
/// of exactly one of these.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FinSimplicialSet {
    faces: Vec<Vec<Vec<Simplex>>>,
}

impl FinSimplicialSet {
    pub fn new(faces: Vec<Vec<Vec<Simplex>>>) -> Result<Self> {
        let mut s = FinSimplicialSet { faces };
        s.trim();
        s.validate()?;
        Ok(s)
    }

    pub(crate) fn from_faces_unchecked(faces: Vec<Vec<Vec<Simplex>>>) -> Self {
        let mut s = FinSimplicialSet { faces };
        s.trim();
        s
    }

    fn trim(&mut self) {
        while self.faces.last().is_some_and(|l| l.is_empty()) {
            self.faces.pop();
        }
    }

    pub fn empty() -> Self {
        FinSimplicialSet::default()
    }

    /// Checks face shapes and the identities `d_i d_j = d_{j-1} d_i` for `i < j`.
    pub fn validate(&self) -> Result<()> {
        if self.faces.len() > DIM_LIMIT + 1 {
            return Err(Error::DimensionBound {
                dim: self.faces.len() - 1,
                bound: DIM_LIMIT,
            });
        }
        for (n, level) in self.faces.iter().enumerate() {
            for (x, fs) in level.iter().enumerate() {
                let expected = if n == 0 { 0 } else { n + 1 };
                if fs.len() != expected {
                    return Err(Error::invalid(format!("simplex {x} of dimension {n} has {} faces", fs.len())));
                }
                for f in fs {
                    if f.sigma.len() != n
                        || !Simplex::valid_sigma(&f.sigma)
                        || f.cell >= self.count(f.base_dim())
                    {
                        return Err(Error::invalid(format!("malformed face of simplex {x} in dimension {n}")));
                    }
                }
            }
        }
        for n in 2..self.faces.len() {
            for x in 0..self.count(n) {
                let s = Simplex::nondegenerate(x, n);
                for j in 1..=n {
                    for i in 0..j {
                        let a = self.act(&self.act(&s, &coface(n, j)), &coface(n - 1, i));
                        let b = self.act(&self.act(&s, &coface(n, i)), &coface(n - 1, j - 1));
                        if a != b {
                            return Err(Error::invalid(format!(
                                "simplicial identity d_{i} d_{j} fails on simplex {x} of dimension {n}"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Highest dimension with a nondegenerate simplex; `None` when empty.
    pub fn dim(&self) -> Option<usize> {
        self.faces.len().checked_sub(1)
    }

    pub fn count(&self, n: usize) -> usize {
        self.faces.get(n).map_or(0, Vec::len)
    }

    pub fn counts(&self) -> Vec<usize> {
        self.faces.iter().map(Vec::len).collect()
    }

    pub fn total_cells(&self) -> usize {
        self.faces.iter().map(Vec::len).sum()
    }

    pub fn faces_of(&self, n: usize, x: usize) -> &[Simplex] {
        &self.faces[n][x]
    }

    pub fn raw_faces(&self) -> &[Vec<Vec<Simplex>>] {
        &self.faces
    }

    /// `θ^* s` for a monotone `θ: [m] -> [dim s]`.
    pub fn act(&self, s: &Simplex, theta: &[usize]) -> Simplex {
        let composite: Vec<usize> = theta.iter().map(|&t| s.sigma[t]).collect();
        let (eps, image) = epi_mono(&composite);
        self.restrict(s.cell, s.base_dim(), &image).pullback(&eps)
    }

    /// `μ^* x` for the nondegenerate `x` of dimension `k` and an injection `μ`.
    fn restrict(&self, x: usize, k: usize, mu: &[usize]) -> Simplex {
        if mu.len() == k + 1 {
            return Simplex::nondegenerate(x, k);
        }
        let j = (0..=k).find(|&t| mu.get(t) != Some(&t)).unwrap();
        let rest: Vec<usize> = mu.iter().map(|&m| if m < j { m } else { m - 1 }).collect();
        self.act(&self.faces[k][x][j], &rest)
    }

    pub fn face(&self, s: &Simplex, i: usize) -> Simplex {
        self.act(s, &coface(s.dim(), i))
    }

    pub fn degeneracy(&self, s: &Simplex, i: usize) -> Simplex {
        s.pullback(&codegeneracy(s.dim(), i))
    }

    /// Every simplex of dimension `n`, ordered by base dimension, cell, then
    /// degeneracy.
    pub fn level(&self, n: usize) -> Vec<Simplex> {
        let mut out = Vec::new();
        for k in 0..=n.min(self.faces.len().saturating_sub(1)) {
            let sig = surjections(n, k);
            for x in 0..self.count(k) {
                for s in &sig {
                    out.push(Simplex {
                        cell: x,
                        sigma: s.clone(),
                    });
                }
            }
        }
        out
    }

    /// The sub-simplicial set on the given nondegenerate cells, which must be
    /// closed under faces, with the inclusion's cell renumbering.
    pub fn subcomplex(&self, keep: &[Vec<bool>]) -> Result<(FinSimplicialSet, Vec<Vec<Option<usize>>>)> {
        let renumber: Vec<Vec<Option<usize>>> = self
            .faces
            .iter()
            .enumerate()
            .map(|(n, level)| {
                let mut next = 0;
                (0..level.len())
                    .map(|x| {
                        keep.get(n).and_then(|k| k.get(x)).copied().unwrap_or(false).then(|| {
                            next += 1;
                            next - 1
                        })
                    })
                    .collect()
            })
            .collect();
        let mut faces = Vec::new();
        for (n, level) in self.faces.iter().enumerate() {
            let mut kept = Vec::new();
            for (x, fs) in level.iter().enumerate() {
                if renumber[n][x].is_none() {
                    continue;
                }
                let mut out = Vec::with_capacity(fs.len());
                for f in fs {
                    let cell = renumber[f.base_dim()][f.cell]
                        .ok_or_else(|| Error::invalid("subcomplex is not closed under faces"))?;
                    out.push(Simplex {
                        cell,
                        sigma: f.sigma.clone(),
                    });
                }
                kept.push(out);
            }
            faces.push(kept);
        }
        Ok((FinSimplicialSet::from_faces_unchecked(faces), renumber))
    }
}

/// Every simplex of dimensions `0..=n_max` with lookup and face tables.
#[derive(Debug, Clone)]
pub struct Levels {
    pub simplices: Vec<Vec<Simplex>>,
    pub index: Vec<HashMap<Simplex, u32>>,
    /// `faces[n][t][i]` is the index of `d_i` of simplex `t` in level `n-1`.
    pub faces: Vec<Vec<Vec<u32>>>,
}

impl Levels {
    pub fn new(x: &FinSimplicialSet, n_max: usize) -> Self {
        let simplices: Vec<Vec<Simplex>> = (0..=n_max).map(|n| x.level(n)).collect();
        let index: Vec<HashMap<Simplex, u32>> = simplices
            .iter()
            .map(|l| l.iter().enumerate().map(|(i, s)| (s.clone(), i as u32)).collect())
            .collect();
        let mut faces = vec![Vec::new()];
        for n in 1..=n_max {
            faces.push(
                simplices[n]
                    .iter()
                    .map(|s| (0..=n).map(|i| index[n - 1][&x.face(s, i)]).collect())
                    .collect(),
            );
        }
        Levels {
            simplices,
            index,
            faces,
        }
    }

    pub fn len(&self, n: usize) -> usize {
        self.simplices[n].len()
    }

    /// Index table of `ρ^*` from level `k` to level `n`.
    pub fn pullback_table(&self, rho: &[usize]) -> Vec<u32> {
        let (n, k) = (rho.len() - 1, *rho.last().unwrap());
        self.simplices[k]
            .iter()
            .map(|s| self.index[n][&s.pullback(rho)])
            .collect()
    }
}

/// A simplicial map, given on nondegenerate simplices.
#[derive(Debug, Clone)]
pub struct SimplicialMap {
    pub source: Arc<FinSimplicialSet>,
    pub target: Arc<FinSimplicialSet>,
    /// `images[n][x]` is the image of the `x`-th nondegenerate `n`-simplex.
    pub images: Vec<Vec<Simplex>>,
}

impl PartialEq for SimplicialMap {
    fn eq(&self, other: &Self) -> bool {
        self.images == other.images
            && (Arc::ptr_eq(&self.source, &other.source) || self.source == other.source)
            && (Arc::ptr_eq(&self.target, &other.target) || self.target == other.target)
    }
}

impl Eq for SimplicialMap {}

impl Hash for SimplicialMap {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.images.hash(state);
    }
}

impl SimplicialMap {
    pub fn new(
        source: Arc<FinSimplicialSet>,
        target: Arc<FinSimplicialSet>,
        images: Vec<Vec<Simplex>>,
    ) -> Result<Self> {
        let m = SimplicialMap {
            source,
            target,
            images,
        };
        m.validate()?;
        Ok(m)
    }

    pub(crate) fn new_unchecked(
        source: Arc<FinSimplicialSet>,
        target: Arc<FinSimplicialSet>,
        images: Vec<Vec<Simplex>>,
    ) -> Self {
        SimplicialMap {
            source,
            target,
            images,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let (x, y) = (&self.source, &self.target);
        if self.images.len() != x.faces.len() {
            return Err(Error::invalid("map has the wrong number of dimensions"));
        }
        for (n, level) in self.images.iter().enumerate() {
            if level.len() != x.count(n) {
                return Err(Error::invalid(format!("map misses simplices in dimension {n}")));
            }
            for img in level {
                if img.dim() != n
                    || !Simplex::valid_sigma(&img.sigma)
                    || img.cell >= y.count(img.base_dim())
                {
                    return Err(Error::invalid(format!("malformed image in dimension {n}")));
                }
            }
        }
        for n in 1..self.images.len() {
            for (xi, img) in self.images[n].iter().enumerate() {
                for (i, f) in x.faces_of(n, xi).iter().enumerate() {
                    if y.face(img, i) != self.apply(f) {
                        return Err(Error::invalid(format!(
                            "map does not commute with d_{i} on simplex {xi} of dimension {n}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Image of an arbitrary simplex.
    pub fn apply(&self, s: &Simplex) -> Simplex {
        self.images[s.base_dim()][s.cell].pullback(&s.sigma)
    }

    pub fn identity(x: Arc<FinSimplicialSet>) -> Self {
        let images = x
            .faces
            .iter()
            .enumerate()
            .map(|(n, l)| (0..l.len()).map(|c| Simplex::nondegenerate(c, n)).collect())
            .collect();
        SimplicialMap::new_unchecked(x.clone(), x, images)
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &SimplicialMap) -> Result<SimplicialMap> {
        if !(Arc::ptr_eq(&f.target, &self.source) || f.target == self.source) {
            return Err(Error::NotComposable("simplicial maps do not meet".into()));
        }
        let images = f
            .images
            .iter()
            .map(|l| l.iter().map(|s| self.apply(s)).collect())
            .collect();
        Ok(SimplicialMap::new_unchecked(f.source.clone(), self.target.clone(), images))
    }

    /// The unique map out of the empty simplicial set.
    pub fn from_empty(target: Arc<FinSimplicialSet>) -> Self {
        SimplicialMap::new_unchecked(Arc::new(FinSimplicialSet::empty()), target, Vec::new())
    }

    /// Whether the map is injective on simplices of every dimension.
    pub fn is_mono(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.images.iter().flatten().all(|s| !s.is_degenerate() && seen.insert((s.dim(), s.cell)))
    }
}
