use serde::{Deserialize, Serialize};

use super::{Category, Coproduct, FiniteColimits, UnionFind};
use crate::error::{Error, Result};

/// A function between the canonical sets `0..source` and `0..target`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FinSetMap {
    pub source: usize,
    pub target: usize,
    pub table: Vec<usize>,
}

impl FinSetMap {
    pub fn new(source: usize, target: usize, table: Vec<usize>) -> Result<Self> {
        if table.len() != source {
            return Err(Error::invalid(format!(
                "table has {} entries for a source of size {source}",
                table.len()
            )));
        }
        if let Some(&bad) = table.iter().find(|&&t| t >= target) {
            return Err(Error::invalid(format!("entry {bad} outside target {target}")));
        }
        Ok(FinSetMap {
            source,
            target,
            table,
        })
    }

    pub fn identity(n: usize) -> Self {
        FinSetMap {
            source: n,
            target: n,
            table: (0..n).collect(),
        }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target];
        self.table.iter().all(|&t| !std::mem::replace(&mut seen[t], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.target];
        for &t in &self.table {
            seen[t] = true;
        }
        seen.into_iter().all(|s| s)
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &FinSetMap) -> Result<FinSetMap> {
        if f.target != self.source {
            return Err(Error::NotComposable(format!(
                "{} -> {} after {} -> {}",
                self.source, self.target, f.source, f.target
            )));
        }
        Ok(FinSetMap {
            source: f.source,
            target: self.target,
            table: f.table.iter().map(|&x| self.table[x]).collect(),
        })
    }
}

/// Finite sets and all functions between them.
#[derive(Debug, Clone)]
pub struct FinSet {
    pub budget: usize,
}

impl Default for FinSet {
    fn default() -> Self {
        FinSet { budget: 1 << 22 }
    }
}

impl FinSet {
    pub fn new() -> Self {
        Self::default()
    }

    fn count(&self, a: usize, b: usize) -> Result<usize> {
        let mut n: usize = 1;
        for _ in 0..a {
            n = n.checked_mul(b).filter(|&v| v <= self.budget).ok_or_else(|| {
                Error::budget(self.budget, format!("listing maps {a} -> {b}"))
            })?;
        }
        Ok(n)
    }
}

/// Lexicographic odometer over tables with some positions pinned.
fn odometer(source: usize, target: usize, fixed: &[Option<usize>], limit: Option<usize>) -> Vec<FinSetMap> {
    let mut out = Vec::new();
    let free: Vec<usize> = (0..source).filter(|&i| fixed[i].is_none()).collect();
    if target == 0 && !free.is_empty() {
        return out;
    }
    let mut table: Vec<usize> = fixed.iter().map(|v| v.unwrap_or(0)).collect();
    loop {
        out.push(FinSetMap {
            source,
            target,
            table: table.clone(),
        });
        if limit.is_some_and(|l| out.len() >= l) {
            return out;
        }
        let mut pos = free.len();
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            let i = free[pos];
            table[i] += 1;
            if table[i] < target {
                break;
            }
            table[i] = 0;
        }
    }
}

impl Category for FinSet {
    type Obj = usize;
    type Mor = FinSetMap;

    fn source(&self, f: &FinSetMap) -> usize {
        f.source
    }

    fn target(&self, f: &FinSetMap) -> usize {
        f.target
    }

    fn identity(&self, a: &usize) -> FinSetMap {
        FinSetMap::identity(*a)
    }

    fn compose(&self, g: &FinSetMap, f: &FinSetMap) -> Result<FinSetMap> {
        g.after(f)
    }

    fn homs(&self, a: &usize, b: &usize) -> Result<Vec<FinSetMap>> {
        self.count(*a, *b)?;
        Ok(odometer(*a, *b, &vec![None; *a], None))
    }

    fn extensions(
        &self,
        constraints: &[(FinSetMap, FinSetMap)],
        b: &usize,
        x: &usize,
        limit: Option<usize>,
    ) -> Result<Vec<FinSetMap>> {
        let mut fixed = vec![None; *b];
        for (j, f) in constraints {
            if j.target != *b || f.target != *x || j.source != f.source {
                return Err(Error::NotComposable("extension constraint shape".into()));
            }
            for (a, &ja) in j.table.iter().enumerate() {
                match fixed[ja] {
                    None => fixed[ja] = Some(f.table[a]),
                    Some(v) if v == f.table[a] => {}
                    Some(_) => return Ok(Vec::new()),
                }
            }
        }
        let free = fixed.iter().filter(|v| v.is_none()).count();
        self.count(free, *x)?;
        Ok(odometer(*b, *x, &fixed, limit))
    }

    fn inverse(&self, f: &FinSetMap) -> Result<Option<FinSetMap>> {
        if f.source != f.target || !f.is_injective() {
            return Ok(None);
        }
        let mut table = vec![0; f.source];
        for (i, &t) in f.table.iter().enumerate() {
            table[t] = i;
        }
        Ok(Some(FinSetMap {
            source: f.target,
            target: f.source,
            table,
        }))
    }
}

impl FiniteColimits for FinSet {
    fn coproduct(&self, objs: &[usize]) -> Result<Coproduct<usize, FinSetMap>> {
        let apex: usize = objs.iter().sum();
        let mut offset = 0;
        let injections = objs
            .iter()
            .map(|&n| {
                let inj = FinSetMap {
                    source: n,
                    target: apex,
                    table: (offset..offset + n).collect(),
                };
                offset += n;
                inj
            })
            .collect();
        Ok(Coproduct { apex, injections })
    }

    fn copair(&self, summands: &[usize], maps: &[FinSetMap], target: &usize) -> Result<FinSetMap> {
        if summands.len() != maps.len() {
            return Err(Error::invalid("copair arity mismatch"));
        }
        let mut table = Vec::new();
        for (&n, m) in summands.iter().zip(maps) {
            if m.source != n || m.target != *target {
                return Err(Error::NotComposable("copair component".into()));
            }
            table.extend_from_slice(&m.table);
        }
        Ok(FinSetMap {
            source: table.len(),
            target: *target,
            table,
        })
    }

    fn coequalizer(&self, f: &FinSetMap, g: &FinSetMap) -> Result<(usize, FinSetMap)> {
        if f.source != g.source || f.target != g.target {
            return Err(Error::NotComposable("coequalizer of non-parallel maps".into()));
        }
        let mut uf = UnionFind::new(f.target);
        for (&a, &b) in f.table.iter().zip(&g.table) {
            uf.union(a, b);
        }
        let (count, labels) = uf.classes();
        Ok((
            count,
            FinSetMap {
                source: f.target,
                target: count,
                table: labels,
            },
        ))
    }

    fn coequalizer_mediate(&self, q: &FinSetMap, h: &FinSetMap) -> Result<FinSetMap> {
        if q.source != h.source {
            return Err(Error::NotComposable("mediating map has the wrong source".into()));
        }
        let mut table: Vec<Option<usize>> = vec![None; q.target];
        for (b, &cls) in q.table.iter().enumerate() {
            match table[cls] {
                None => table[cls] = Some(h.table[b]),
                Some(v) if v == h.table[b] => {}
                Some(_) => return Err(Error::invalid("map does not coequalize the pair")),
            }
        }
        let table = table
            .into_iter()
            .map(|v| v.ok_or_else(|| Error::invalid("projection is not surjective")))
            .collect::<Result<Vec<_>>>()?;
        Ok(FinSetMap {
            source: q.target,
            target: h.target,
            table,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn map(s: usize, t: usize, table: &[usize]) -> FinSetMap {
        FinSetMap::new(s, t, table.to_vec()).unwrap()
    }

    #[test]
    fn hom_counts_and_order() {
        let c = FinSet::new();
        let homs = c.homs(&2, &3).unwrap();
        assert_eq!(homs.len(), 9);
        let mut sorted = homs.clone();
        sorted.sort();
        assert_eq!(homs, sorted);
        assert_eq!(c.homs(&0, &5).unwrap().len(), 1);
        assert!(c.homs(&1, &0).unwrap().is_empty());
        assert_eq!(c.homs(&0, &0).unwrap().len(), 1);
    }

    #[test]
    fn pushout_examples() {
        let c = FinSet::new();
        let po = c.pushout(&map(0, 1, &[]), &map(0, 1, &[])).unwrap();
        assert_eq!(po.apex, 2);
        assert_eq!(po.left.table, vec![0]);
        assert_eq!(po.right.table, vec![1]);
        let po = c.pushout(&map(2, 2, &[0, 1]), &map(2, 1, &[0, 0])).unwrap();
        assert_eq!(po.apex, 1);
        let po = c.pushout(&map(2, 1, &[0, 0]), &map(2, 1, &[0, 0])).unwrap();
        assert_eq!(po.apex, 1);
    }

    #[test]
    fn coequalizer_examples() {
        let c = FinSet::new();
        let f = map(2, 3, &[0, 1]);
        let (q, p) = c.coequalizer(&f, &f).unwrap();
        assert_eq!(q, 3);
        assert!(c.inverse(&p).unwrap().is_some());
        let (q, _) = c.coequalizer(&map(1, 2, &[0]), &map(1, 2, &[1])).unwrap();
        assert_eq!(q, 1);
        let (q, _) = c.coequalizer(&map(2, 3, &[0, 1]), &map(2, 3, &[1, 2])).unwrap();
        assert_eq!(q, 1);
    }

    #[test]
    fn extensions_respect_prescriptions() {
        let c = FinSet::new();
        let j = map(1, 2, &[1]);
        let f = map(1, 3, &[2]);
        let ext = c.extensions(&[(j.clone(), f.clone())], &2, &3, None).unwrap();
        assert_eq!(ext.len(), 3);
        assert!(ext.iter().all(|e| e.after(&j).unwrap() == f));
        assert_eq!(ext[0].table, vec![0, 2]);
    }

    #[test]
    fn iso_detection() {
        let c = FinSet::new();
        assert_eq!(c.inverse(&FinSetMap::identity(3)).unwrap(), Some(FinSetMap::identity(3)));
        assert_eq!(c.inverse(&map(2, 1, &[0, 0])).unwrap(), None);
        let swap = map(2, 2, &[1, 0]);
        assert_eq!(c.inverse(&swap).unwrap(), Some(swap));
    }
}
