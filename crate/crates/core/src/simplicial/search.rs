use std::collections::HashMap;
use std::sync::Arc;

use super::set::{FinSimplicialSet, Levels, SimplicialMap};
use super::simplex::Simplex;
use crate::error::{Error, Result};
use crate::kernel::{Category, Coproduct, FiniteColimits, UnionFind};

/// Finite simplicial sets. Hom-sets are found by constraint search with the
/// nondegenerate simplices of the source as variables, taken by dimension then
/// index, and values in the order of [`FinSimplicialSet::level`]; maps are
/// listed lexicographically in that order.
#[derive(Debug, Clone, Copy)]
pub struct SSet {
    /// Cap on search nodes per query.
    pub budget: usize,
}

impl Default for SSet {
    fn default() -> Self {
        SSet { budget: 5_000_000 }
    }
}

impl SSet {
    pub fn new() -> Self {
        SSet::default()
    }
}

struct Binary {
    x: usize,
    face: usize,
    dim: usize,
    z: usize,
    table: usize,
}

struct Problem<'a> {
    levels: Levels,
    var_dim: Vec<usize>,
    binaries: Vec<Binary>,
    tables: Vec<Vec<u32>>,
    by_var: Vec<Vec<usize>>,
    budget: usize,
    nodes: usize,
    limit: Option<usize>,
    source: &'a Arc<FinSimplicialSet>,
    target: &'a Arc<FinSimplicialSet>,
}

type Domains = Vec<Vec<u32>>;

impl Problem<'_> {
    fn revise(&self, c: &Binary, d: &mut Domains) -> (bool, bool) {
        let faces = &self.levels.faces[c.dim];
        let table = &self.tables[c.table];
        let width = self.levels.len(c.dim - 1);
        let mut support = vec![false; width];
        for &w in &d[c.z] {
            support[table[w as usize] as usize] = true;
        }
        let before = d[c.x].len();
        d[c.x].retain(|&v| support[faces[v as usize][c.face] as usize]);
        let x_changed = d[c.x].len() != before;
        let mut support = vec![false; width];
        for &v in &d[c.x] {
            support[faces[v as usize][c.face] as usize] = true;
        }
        let before = d[c.z].len();
        d[c.z].retain(|&w| support[table[w as usize] as usize]);
        (x_changed, d[c.z].len() != before)
    }

    fn propagate(&self, d: &mut Domains, start: &[usize]) -> bool {
        let mut queued = vec![false; self.binaries.len()];
        let mut queue: Vec<usize> = Vec::new();
        for &v in start {
            for &c in &self.by_var[v] {
                if !queued[c] {
                    queued[c] = true;
                    queue.push(c);
                }
            }
        }
        while let Some(c) = queue.pop() {
            queued[c] = false;
            let b = &self.binaries[c];
            let (xc, zc) = self.revise(b, d);
            if d[b.x].is_empty() || d[b.z].is_empty() {
                return false;
            }
            for (changed, v) in [(xc, b.x), (zc, b.z)] {
                if changed {
                    for &c2 in &self.by_var[v] {
                        if c2 != c && !queued[c2] {
                            queued[c2] = true;
                            queue.push(c2);
                        }
                    }
                }
            }
        }
        true
    }

    fn dfs(&mut self, d: Domains, out: &mut Vec<SimplicialMap>) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::budget(self.budget, "simplicial map search"));
        }
        let Some(var) = d.iter().position(|dom| dom.len() > 1) else {
            out.push(self.materialize(&d));
            return Ok(());
        };
        for &v in &d[var] {
            let mut next = d.clone();
            next[var] = vec![v];
            if self.propagate(&mut next, &[var]) {
                self.dfs(next, out)?;
                if self.limit.is_some_and(|l| out.len() >= l) {
                    return Ok(());
                }
            }
        }
        Ok(())
    }

    fn materialize(&self, d: &Domains) -> SimplicialMap {
        let mut images: Vec<Vec<Simplex>> = self.source.counts().iter().map(|&c| Vec::with_capacity(c)).collect();
        for (var, dom) in d.iter().enumerate() {
            let n = self.var_dim[var];
            images[n].push(self.levels.simplices[n][dom[0] as usize].clone());
        }
        SimplicialMap::new_unchecked(self.source.clone(), self.target.clone(), images)
    }
}

fn same(a: &Arc<FinSimplicialSet>, b: &Arc<FinSimplicialSet>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Maps `x -> y` with `c ∘ j = f` for each `(j, f)`, lexicographically.
pub fn search_maps(
    x: &Arc<FinSimplicialSet>,
    y: &Arc<FinSimplicialSet>,
    constraints: &[(SimplicialMap, SimplicialMap)],
    limit: Option<usize>,
    budget: usize,
) -> Result<Vec<SimplicialMap>> {
    for (j, f) in constraints {
        if !same(&j.target, x) || !same(&f.target, y) || !same(&j.source, &f.source) {
            return Err(Error::NotComposable("extension constraint does not fit".into()));
        }
    }
    let Some(top) = x.dim() else {
        return Ok(vec![SimplicialMap::new_unchecked(x.clone(), y.clone(), Vec::new())]);
    };
    let levels = Levels::new(y, top);
    let mut offsets = Vec::new();
    let mut var_dim = Vec::new();
    for n in 0..=top {
        offsets.push(var_dim.len());
        var_dim.extend(std::iter::repeat(n).take(x.count(n)));
    }
    let var = |s: &Simplex| offsets[s.base_dim()] + s.cell;
    let mut table_ids: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut tables: Vec<Vec<u32>> = Vec::new();
    let mut table_for = |sigma: &Vec<usize>, tables: &mut Vec<Vec<u32>>| -> usize {
        *table_ids.entry(sigma.clone()).or_insert_with(|| {
            tables.push(levels.pullback_table(sigma));
            tables.len() - 1
        })
    };
    let mut binaries = Vec::new();
    for n in 1..=top {
        for c in 0..x.count(n) {
            for (i, f) in x.faces_of(n, c).iter().enumerate() {
                binaries.push(Binary {
                    x: offsets[n] + c,
                    face: i,
                    dim: n,
                    z: var(f),
                    table: table_for(&f.sigma, &mut tables),
                });
            }
        }
    }
    let mut domains: Domains = var_dim.iter().map(|&n| (0..levels.len(n) as u32).collect()).collect();
    for (j, f) in constraints {
        for (n, level) in j.images.iter().enumerate() {
            for (a, img) in level.iter().enumerate() {
                let Some(&want) = levels.index[n].get(&f.images[n][a]) else {
                    return Ok(Vec::new());
                };
                let t = table_for(&img.sigma, &mut tables);
                let table = &tables[t];
                domains[var(img)].retain(|&v| table[v as usize] == want);
            }
        }
    }
    let mut by_var = vec![Vec::new(); var_dim.len()];
    for (i, b) in binaries.iter().enumerate() {
        by_var[b.x].push(i);
        if b.z != b.x {
            by_var[b.z].push(i);
        }
    }
    let mut problem = Problem {
        levels,
        var_dim,
        binaries,
        tables,
        by_var,
        budget,
        nodes: 0,
        limit,
        source: x,
        target: y,
    };
    let mut out = Vec::new();
    if domains.iter().any(Vec::is_empty) {
        return Ok(out);
    }
    let all: Vec<usize> = (0..domains.len()).collect();
    if !problem.propagate(&mut domains, &all) {
        return Ok(out);
    }
    problem.dfs(domains, &mut out)?;
    Ok(out)
}

impl Category for SSet {
    type Obj = Arc<FinSimplicialSet>;
    type Mor = SimplicialMap;

    fn source(&self, f: &SimplicialMap) -> Self::Obj {
        f.source.clone()
    }

    fn target(&self, f: &SimplicialMap) -> Self::Obj {
        f.target.clone()
    }

    fn identity(&self, a: &Self::Obj) -> SimplicialMap {
        SimplicialMap::identity(a.clone())
    }

    fn compose(&self, g: &SimplicialMap, f: &SimplicialMap) -> Result<SimplicialMap> {
        g.after(f)
    }

    fn homs(&self, a: &Self::Obj, b: &Self::Obj) -> Result<Vec<SimplicialMap>> {
        search_maps(a, b, &[], None, self.budget)
    }

    fn search_based(&self) -> bool {
        true
    }

    fn extensions(
        &self,
        constraints: &[(SimplicialMap, SimplicialMap)],
        b: &Self::Obj,
        x: &Self::Obj,
        limit: Option<usize>,
    ) -> Result<Vec<SimplicialMap>> {
        search_maps(b, x, constraints, limit, self.budget)
    }

    /// Isomorphisms are bijections on nondegenerate simplices.
    fn inverse(&self, f: &SimplicialMap) -> Result<Option<SimplicialMap>> {
        if f.source.counts() != f.target.counts() {
            return Ok(None);
        }
        let mut images: Vec<Vec<Option<Simplex>>> = f.target.counts().iter().map(|&c| vec![None; c]).collect();
        for (n, level) in f.images.iter().enumerate() {
            for (x, img) in level.iter().enumerate() {
                if img.is_degenerate() || images[n][img.cell].is_some() {
                    return Ok(None);
                }
                images[n][img.cell] = Some(Simplex::nondegenerate(x, n));
            }
        }
        let images = images
            .into_iter()
            .map(|l| l.into_iter().map(Option::unwrap).collect())
            .collect();
        Ok(Some(SimplicialMap::new_unchecked(f.target.clone(), f.source.clone(), images)))
    }
}

impl FiniteColimits for SSet {
    fn coproduct(&self, objs: &[Self::Obj]) -> Result<Coproduct<Self::Obj, SimplicialMap>> {
        let top = objs.iter().filter_map(|o| o.dim()).max();
        let levels = top.map_or(0, |t| t + 1);
        let mut faces: Vec<Vec<Vec<Simplex>>> = vec![Vec::new(); levels];
        let mut offsets = Vec::new();
        for o in objs {
            let off: Vec<usize> = (0..levels).map(|n| faces[n].len()).collect();
            for n in 0..levels {
                for c in 0..o.count(n) {
                    faces[n].push(
                        o.faces_of(n, c)
                            .iter()
                            .map(|f| Simplex {
                                cell: f.cell + off[f.base_dim()],
                                sigma: f.sigma.clone(),
                            })
                            .collect(),
                    );
                }
            }
            offsets.push(off);
        }
        let apex = Arc::new(FinSimplicialSet::from_faces_unchecked(faces));
        let injections = objs
            .iter()
            .zip(&offsets)
            .map(|(o, off)| {
                let images = o
                    .counts()
                    .iter()
                    .enumerate()
                    .map(|(n, &c)| (0..c).map(|x| Simplex::nondegenerate(x + off[n], n)).collect())
                    .collect();
                SimplicialMap::new_unchecked(o.clone(), apex.clone(), images)
            })
            .collect();
        Ok(Coproduct { apex, injections })
    }

    fn copair(&self, summands: &[Self::Obj], maps: &[SimplicialMap], target: &Self::Obj) -> Result<SimplicialMap> {
        let apex = self.coproduct(summands)?.apex;
        let mut images: Vec<Vec<Simplex>> = apex.counts().iter().map(|&c| Vec::with_capacity(c)).collect();
        for (s, m) in summands.iter().zip(maps) {
            if !same(&m.source, s) || !same(&m.target, target) {
                return Err(Error::NotComposable("copair components do not fit".into()));
            }
            for (n, level) in m.images.iter().enumerate() {
                images[n].extend(level.iter().cloned());
            }
        }
        Ok(SimplicialMap::new_unchecked(apex, target.clone(), images))
    }

    /// Levelwise quotient; a class is nondegenerate when none of its members is.
    fn coequalizer(&self, f: &SimplicialMap, g: &SimplicialMap) -> Result<(Self::Obj, SimplicialMap)> {
        if !same(&f.source, &g.source) || !same(&f.target, &g.target) {
            return Err(Error::NotComposable("coequalizer of a non-parallel pair".into()));
        }
        let (a, b) = (&f.source, &f.target);
        let Some(top) = b.dim() else {
            return Ok((b.clone(), SimplicialMap::identity(b.clone())));
        };
        let mut labels: Vec<Vec<usize>> = Vec::new();
        let mut normal: Vec<Vec<Simplex>> = Vec::new();
        let mut reps: Vec<Vec<usize>> = Vec::new();
        let mut level_lists = Vec::new();
        let mut level_index: Vec<HashMap<Simplex, usize>> = Vec::new();
        for n in 0..=top {
            let lb = b.level(n);
            let index: HashMap<Simplex, usize> = lb.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
            let mut uf = UnionFind::new(lb.len());
            for s in a.level(n) {
                uf.union(index[&f.apply(&s)], index[&g.apply(&s)]);
            }
            let (count, label) = uf.classes();
            let mut degenerate_member: Vec<Option<usize>> = vec![None; count];
            for (i, s) in lb.iter().enumerate() {
                if s.is_degenerate() && degenerate_member[label[i]].is_none() {
                    degenerate_member[label[i]] = Some(i);
                }
            }
            let mut rep = Vec::new();
            let mut nf = Vec::with_capacity(count);
            let mut first_member = vec![usize::MAX; count];
            for (i, &l) in label.iter().enumerate() {
                first_member[l] = first_member[l].min(i);
            }
            for cls in 0..count {
                match degenerate_member[cls] {
                    None => {
                        nf.push(Simplex::nondegenerate(rep.len(), n));
                        rep.push(first_member[cls]);
                    }
                    Some(i) => {
                        let s = &lb[i];
                        let k = s.base_dim();
                        let z = Simplex::nondegenerate(s.cell, k);
                        let zl = labels[k][level_index[k][&z]];
                        nf.push(normal[k][zl].pullback(&s.sigma));
                    }
                }
            }
            labels.push(label);
            normal.push(nf);
            reps.push(rep);
            level_lists.push(lb);
            level_index.push(index);
        }
        let class_nf = |n: usize, s: &Simplex| normal[n][labels[n][level_index[n][s]]].clone();
        let faces: Vec<Vec<Vec<Simplex>>> = (0..=top)
            .map(|n| {
                reps[n]
                    .iter()
                    .map(|&i| {
                        if n == 0 {
                            return Vec::new();
                        }
                        let s = &level_lists[n][i];
                        (0..=n).map(|k| class_nf(n - 1, &b.face(s, k))).collect()
                    })
                    .collect()
            })
            .collect();
        let q = Arc::new(FinSimplicialSet::from_faces_unchecked(faces));
        let images = (0..=top)
            .map(|n| (0..b.count(n)).map(|c| class_nf(n, &Simplex::nondegenerate(c, n))).collect())
            .collect();
        Ok((q.clone(), SimplicialMap::new_unchecked(b.clone(), q, images)))
    }

    fn coequalizer_mediate(&self, q: &SimplicialMap, h: &SimplicialMap) -> Result<SimplicialMap> {
        if !same(&q.source, &h.source) {
            return Err(Error::NotComposable("mediating map from a different source".into()));
        }
        let quotient = &q.target;
        let mut images: Vec<Vec<Option<Simplex>>> = quotient.counts().iter().map(|&c| vec![None; c]).collect();
        for (n, level) in q.images.iter().enumerate() {
            for (x, img) in level.iter().enumerate() {
                if !img.is_degenerate() && images[n][img.cell].is_none() {
                    images[n][img.cell] = Some(h.images[n][x].clone());
                }
            }
        }
        let images: Vec<Vec<Simplex>> = images
            .into_iter()
            .map(|l| l.into_iter().collect::<Option<Vec<_>>>())
            .collect::<Option<_>>()
            .ok_or_else(|| Error::invalid("projection is not surjective on simplices"))?;
        let u = SimplicialMap::new_unchecked(quotient.clone(), h.target.clone(), images);
        if u.after(q)? != *h {
            return Err(Error::invalid("map does not factor through the coequalizer"));
        }
        Ok(u)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::constructions::{standard_simplex, vertex, zigzag};

    fn arc(x: FinSimplicialSet) -> Arc<FinSimplicialSet> {
        Arc::new(x)
    }

    /// Maps out of a 1-dimensional set into a nerve of a total order, by brute force.
    fn monotone_count(src: &FinSimplicialSet, order: usize) -> usize {
        let v = src.count(0);
        let mut total = 0;
        for code in 0..order.pow(v as u32) {
            let val: Vec<usize> = (0..v).map(|i| code / order.pow(i as u32) % order).collect();
            let ok = (0..src.count(1)).all(|e| {
                let fs = src.faces_of(1, e);
                val[fs[1].cell] <= val[fs[0].cell]
            });
            total += usize::from(ok);
        }
        total
    }

    #[test]
    fn map_counts_match_brute_force() {
        let sset = SSet::new();
        for n in 0..4 {
            let z = arc(zigzag(n));
            for m in 0..3 {
                let d = arc(standard_simplex(m).unwrap());
                let homs = sset.homs(&z, &d).unwrap();
                assert_eq!(homs.len(), monotone_count(&z, m + 1));
                for h in &homs {
                    h.validate().unwrap();
                }
            }
        }
    }

    #[test]
    fn maps_between_simplices_are_monotone_maps() {
        let sset = SSet::new();
        let d1 = arc(standard_simplex(1).unwrap());
        let d2 = arc(standard_simplex(2).unwrap());
        // monotone maps [2] -> [1]: 4; [1] -> [2]: 6
        assert_eq!(sset.homs(&d2, &d1).unwrap().len(), 4);
        assert_eq!(sset.homs(&d1, &d2).unwrap().len(), 6);
        assert_eq!(sset.homs(&d2, &d2).unwrap().len(), 10);
    }

    #[test]
    fn extensions_respect_constraints() {
        let sset = SSet::new();
        let z = arc(zigzag(1));
        let d1 = arc(standard_simplex(1).unwrap());
        let j = vertex(&z, 0);
        for f in sset.homs(&j.source, &d1).unwrap() {
            let ext = sset.extensions(&[(j.clone(), f.clone())], &z, &d1, None).unwrap();
            let filtered: Vec<_> = sset
                .homs(&z, &d1)
                .unwrap()
                .into_iter()
                .filter(|c| c.after(&j).unwrap() == f)
                .collect();
            assert_eq!(ext, filtered);
        }
    }

    #[test]
    fn gluing_two_edges() {
        let sset = SSet::new();
        let d1 = arc(standard_simplex(1).unwrap());
        let end = vertex(&d1, 1);
        let start = vertex(&d1, 0);
        let po = sset.pushout(&end, &start).unwrap();
        assert_eq!(po.apex.counts(), vec![3, 2]);
        po.apex.validate().unwrap();
        po.left.validate().unwrap();
    }

    #[test]
    fn collapsing_an_edge() {
        let sset = SSet::new();
        let d1 = arc(standard_simplex(1).unwrap());
        let (q, proj) = sset.coequalizer(&vertex(&d1, 0), &vertex(&d1, 1)).unwrap();
        // a loop: one vertex, one nondegenerate edge
        assert_eq!(q.counts(), vec![1, 1]);
        proj.validate().unwrap();
        let d0 = arc(standard_simplex(0).unwrap());
        let bang = sset.homs(&d1, &d0).unwrap().remove(0);
        let u = sset.coequalizer_mediate(&proj, &bang).unwrap();
        assert_eq!(u.after(&proj).unwrap(), bang);
        assert!(sset.coequalizer_mediate(&proj, &SimplicialMap::identity(d1)).is_err());
    }

    #[test]
    fn inverse_of_bijection() {
        let sset = SSet::new();
        let z = arc(zigzag(2));
        let isos: Vec<_> = sset
            .homs(&z, &z)
            .unwrap()
            .into_iter()
            .filter(|h| sset.inverse(h).unwrap().is_some())
            .collect();
        // identity and the reflection
        assert_eq!(isos.len(), 2);
    }
}
