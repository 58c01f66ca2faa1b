use std::hash::{Hash, Hasher};
use std::sync::Arc;

use super::Category;
use crate::error::{Error, Result};

/// An explicitly tabulated finite category. Objects are `0..objects`,
/// morphisms are `0..src.len()`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FinCategory {
    objects: usize,
    src: Vec<usize>,
    tgt: Vec<usize>,
    ids: Vec<usize>,
    /// `comp[g * n + f] = g ∘ f` for composable pairs.
    comp: Vec<Option<usize>>,
    homs: Vec<Vec<usize>>,
}

impl FinCategory {
    /// Checks identities, closure and associativity of the given table.
    /// `comp[g][f]` must be `Some(g ∘ f)` exactly when `tgt[f] == src[g]`.
    pub fn new(
        objects: usize,
        src: Vec<usize>,
        tgt: Vec<usize>,
        ids: Vec<usize>,
        comp: Vec<Vec<Option<usize>>>,
    ) -> Result<Self> {
        let n = src.len();
        if tgt.len() != n || comp.len() != n || ids.len() != objects {
            return Err(Error::invalid("table sizes disagree"));
        }
        if src.iter().chain(&tgt).any(|&o| o >= objects) {
            return Err(Error::invalid("morphism endpoint is not an object"));
        }
        let mut flat = vec![None; n * n];
        for g in 0..n {
            if comp[g].len() != n {
                return Err(Error::invalid("composition table is not square"));
            }
            for f in 0..n {
                let composable = tgt[f] == src[g];
                match (composable, comp[g][f]) {
                    (true, Some(h)) => {
                        if h >= n || src[h] != src[f] || tgt[h] != tgt[g] {
                            return Err(Error::invalid(format!("bad composite {g}∘{f}")));
                        }
                        flat[g * n + f] = Some(h);
                    }
                    (false, None) => {}
                    _ => return Err(Error::invalid(format!("composite {g}∘{f} misdeclared"))),
                }
            }
        }
        let cat = Self::from_parts(objects, src, tgt, ids, flat);
        cat.validate()?;
        Ok(cat)
    }

    fn from_parts(
        objects: usize,
        src: Vec<usize>,
        tgt: Vec<usize>,
        ids: Vec<usize>,
        comp: Vec<Option<usize>>,
    ) -> Self {
        let mut homs = vec![Vec::new(); objects * objects];
        for m in 0..src.len() {
            homs[src[m] * objects + tgt[m]].push(m);
        }
        FinCategory {
            objects,
            src,
            tgt,
            ids,
            comp,
            homs,
        }
    }

    fn validate(&self) -> Result<()> {
        let n = self.morphisms();
        for (o, &i) in self.ids.iter().enumerate() {
            if i >= n || self.src[i] != o || self.tgt[i] != o {
                return Err(Error::invalid(format!("identity of object {o} misplaced")));
            }
        }
        for f in 0..n {
            if self.comp(self.ids[self.tgt[f]], f) != Some(f)
                || self.comp(f, self.ids[self.src[f]]) != Some(f)
            {
                return Err(Error::invalid(format!("identity law fails at {f}")));
            }
        }
        for f in 0..n {
            for g in self.homs_from(self.tgt[f]) {
                let gf = self.comp(g, f).unwrap();
                for h in self.homs_from(self.tgt[g]) {
                    let hg = self.comp(h, g).unwrap();
                    if self.comp(h, gf) != self.comp(hg, f) {
                        return Err(Error::invalid(format!("associativity fails at {h},{g},{f}")));
                    }
                }
            }
        }
        Ok(())
    }

    fn homs_from(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.morphisms()).filter(move |&m| self.src[m] == a)
    }

    /// Builds a category from a list of non-identity arrows and a composition
    /// rule on them. Identities are numbered `0..objects` and arrow `i` is
    /// morphism `objects + i`; `compose(g, f)` takes arrow indices and returns
    /// a morphism number.
    pub fn generated(
        objects: usize,
        arrows: &[(usize, usize)],
        compose: impl Fn(usize, usize) -> Option<usize>,
    ) -> Result<Self> {
        let mut src: Vec<usize> = (0..objects).collect();
        let mut tgt: Vec<usize> = (0..objects).collect();
        for &(s, t) in arrows {
            src.push(s);
            tgt.push(t);
        }
        let n = src.len();
        let mut comp = vec![vec![None; n]; n];
        for g in 0..n {
            for f in 0..n {
                if tgt[f] != src[g] {
                    continue;
                }
                comp[g][f] = Some(if g < objects {
                    f
                } else if f < objects {
                    g
                } else {
                    compose(g - objects, f - objects).ok_or_else(|| {
                        Error::invalid(format!(
                            "no composite given for arrows {} ∘ {}",
                            g - objects,
                            f - objects
                        ))
                    })?
                });
            }
        }
        let ids = (0..objects).collect();
        Self::new(objects, src, tgt, ids, comp)
    }

    pub fn empty() -> Self {
        Self::discrete(0)
    }

    pub fn terminal() -> Self {
        Self::discrete(1)
    }

    pub fn discrete(n: usize) -> Self {
        Self::generated(n, &[], |_, _| None).expect("discrete category")
    }

    /// `{0 → 1}`.
    pub fn walking_arrow() -> Self {
        Self::generated(2, &[(0, 1)], |_, _| None).expect("walking arrow")
    }

    /// `{0 ⇉ 1}`.
    pub fn parallel_pair() -> Self {
        Self::generated(2, &[(0, 1), (0, 1)], |_, _| None).expect("parallel pair")
    }

    /// `{0 ≅ 1}`: two identities and two mutually inverse arrows.
    pub fn walking_iso() -> Self {
        let le = vec![vec![true, true], vec![true, true]];
        Self::preorder(&le).expect("walking isomorphism")
    }

    /// The thin category of a reflexive transitive relation `le[a][b]`.
    /// Identities come first, then one arrow per related pair in row order.
    pub fn preorder(le: &[Vec<bool>]) -> Result<Self> {
        let n = le.len();
        let mut src: Vec<usize> = (0..n).collect();
        let mut tgt: Vec<usize> = (0..n).collect();
        let mut arrow = vec![vec![None; n]; n];
        for a in 0..n {
            if !le[a][a] {
                return Err(Error::invalid("relation is not reflexive"));
            }
            arrow[a][a] = Some(a);
            for b in 0..n {
                if a != b && le[a][b] {
                    arrow[a][b] = Some(src.len());
                    src.push(a);
                    tgt.push(b);
                }
            }
        }
        let m = src.len();
        let mut comp = vec![vec![None; m]; m];
        for g in 0..m {
            for f in 0..m {
                if tgt[f] == src[g] {
                    comp[g][f] = arrow[src[f]][tgt[g]];
                    if comp[g][f].is_none() {
                        return Err(Error::invalid("relation is not transitive"));
                    }
                }
            }
        }
        Self::new(n, src, tgt, (0..n).collect(), comp)
    }

    /// One-object category from a monoid multiplication table with unit `0`.
    pub fn monoid(table: &[Vec<usize>]) -> Result<Self> {
        let n = table.len();
        let comp = (0..n)
            .map(|g| (0..n).map(|f| Some(table[g][f])).collect())
            .collect();
        Self::new(1, vec![0; n], vec![0; n], vec![0], comp)
    }

    pub fn objects(&self) -> usize {
        self.objects
    }

    pub fn morphisms(&self) -> usize {
        self.src.len()
    }

    pub fn src(&self, m: usize) -> usize {
        self.src[m]
    }

    pub fn tgt(&self, m: usize) -> usize {
        self.tgt[m]
    }

    pub fn id(&self, o: usize) -> usize {
        self.ids[o]
    }

    pub fn is_identity(&self, m: usize) -> bool {
        self.ids[self.src[m]] == m
    }

    /// `g ∘ f` when composable.
    pub fn comp(&self, g: usize, f: usize) -> Option<usize> {
        self.comp[g * self.morphisms() + f]
    }

    /// Morphisms `a -> b` in increasing order.
    pub fn hom(&self, a: usize, b: usize) -> &[usize] {
        &self.homs[a * self.objects + b]
    }

    /// An inverse of `m`, the least one.
    pub fn inverse_of(&self, m: usize) -> Option<usize> {
        let (a, b) = (self.src[m], self.tgt[m]);
        self.hom(b, a)
            .iter()
            .copied()
            .find(|&g| self.comp(g, m) == Some(self.ids[a]) && self.comp(m, g) == Some(self.ids[b]))
    }

    /// Raw data in a form suitable for re-validation.
    pub fn table(&self) -> (usize, Vec<usize>, Vec<usize>, Vec<usize>, Vec<Vec<Option<usize>>>) {
        let n = self.morphisms();
        let comp = (0..n).map(|g| (0..n).map(|f| self.comp(g, f)).collect()).collect();
        (self.objects, self.src.clone(), self.tgt.clone(), self.ids.clone(), comp)
    }
}

impl Category for FinCategory {
    type Obj = usize;
    type Mor = usize;

    fn source(&self, f: &usize) -> usize {
        self.src[*f]
    }

    fn target(&self, f: &usize) -> usize {
        self.tgt[*f]
    }

    fn identity(&self, a: &usize) -> usize {
        self.ids[*a]
    }

    fn compose(&self, g: &usize, f: &usize) -> Result<usize> {
        self.comp(*g, *f)
            .ok_or_else(|| Error::NotComposable(format!("{g} ∘ {f}")))
    }

    fn homs(&self, a: &usize, b: &usize) -> Result<Vec<usize>> {
        Ok(self.hom(*a, *b).to_vec())
    }

    fn inverse(&self, f: &usize) -> Result<Option<usize>> {
        Ok(self.inverse_of(*f))
    }
}

/// A functor between finite categories.
#[derive(Debug, Clone)]
pub struct FinFunctor {
    pub source: Arc<FinCategory>,
    pub target: Arc<FinCategory>,
    pub obj_map: Vec<usize>,
    pub mor_map: Vec<usize>,
}

impl PartialEq for FinFunctor {
    fn eq(&self, other: &Self) -> bool {
        self.obj_map == other.obj_map
            && self.mor_map == other.mor_map
            && (Arc::ptr_eq(&self.source, &other.source) || self.source == other.source)
            && (Arc::ptr_eq(&self.target, &other.target) || self.target == other.target)
    }
}

impl Eq for FinFunctor {}

impl Hash for FinFunctor {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.obj_map.hash(state);
        self.mor_map.hash(state);
    }
}

impl FinFunctor {
    /// Checks identities, endpoints and every tabulated composite.
    pub fn new(
        source: Arc<FinCategory>,
        target: Arc<FinCategory>,
        obj_map: Vec<usize>,
        mor_map: Vec<usize>,
    ) -> Result<Self> {
        let f = FinFunctor {
            source,
            target,
            obj_map,
            mor_map,
        };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<()> {
        let (s, t) = (&self.source, &self.target);
        if self.obj_map.len() != s.objects() || self.mor_map.len() != s.morphisms() {
            return Err(Error::invalid("functor tables have the wrong length"));
        }
        if self.obj_map.iter().any(|&o| o >= t.objects())
            || self.mor_map.iter().any(|&m| m >= t.morphisms())
        {
            return Err(Error::invalid("functor hits a missing cell"));
        }
        for m in 0..s.morphisms() {
            let fm = self.mor_map[m];
            if t.src(fm) != self.obj_map[s.src(m)] || t.tgt(fm) != self.obj_map[s.tgt(m)] {
                return Err(Error::invalid(format!("morphism {m} lands between wrong objects")));
            }
        }
        for o in 0..s.objects() {
            if self.mor_map[s.id(o)] != t.id(self.obj_map[o]) {
                return Err(Error::invalid(format!("identity of {o} not preserved")));
            }
        }
        for g in 0..s.morphisms() {
            for f in 0..s.morphisms() {
                if let Some(h) = s.comp(g, f) {
                    if t.comp(self.mor_map[g], self.mor_map[f]) != Some(self.mor_map[h]) {
                        return Err(Error::invalid(format!("composite {g}∘{f} not preserved")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn identity(c: Arc<FinCategory>) -> Self {
        FinFunctor {
            obj_map: (0..c.objects()).collect(),
            mor_map: (0..c.morphisms()).collect(),
            source: c.clone(),
            target: c,
        }
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &FinFunctor) -> Result<FinFunctor> {
        if !(Arc::ptr_eq(&f.target, &self.source) || f.target == self.source) {
            return Err(Error::NotComposable("functor endpoints differ".into()));
        }
        Ok(FinFunctor {
            source: f.source.clone(),
            target: self.target.clone(),
            obj_map: f.obj_map.iter().map(|&o| self.obj_map[o]).collect(),
            mor_map: f.mor_map.iter().map(|&m| self.mor_map[m]).collect(),
        })
    }
}

/// The category of finite categories, with functors listed by backtracking.
#[derive(Debug, Clone)]
pub struct Cat {
    pub budget: usize,
}

impl Default for Cat {
    fn default() -> Self {
        Cat { budget: 1 << 22 }
    }
}

struct FunctorSearch<'a> {
    s: &'a FinCategory,
    t: &'a FinCategory,
    /// Non-identity morphisms of the source, in increasing order.
    order: Vec<usize>,
    /// For each position in `order`, the composites to check once it is set.
    checks: Vec<Vec<(usize, usize, usize)>>,
    obj: Vec<Option<usize>>,
    mor: Vec<Option<usize>>,
    nodes: usize,
    budget: usize,
    limit: Option<usize>,
    out: Vec<(Vec<usize>, Vec<usize>)>,
}

impl<'a> FunctorSearch<'a> {
    fn new(s: &'a FinCategory, t: &'a FinCategory, budget: usize, limit: Option<usize>) -> Self {
        let order: Vec<usize> = (0..s.morphisms()).filter(|&m| !s.is_identity(m)).collect();
        let mut pos = vec![usize::MAX; s.morphisms()];
        for (i, &m) in order.iter().enumerate() {
            pos[m] = i;
        }
        let mut checks = vec![Vec::new(); order.len()];
        for &g in &order {
            for &f in &order {
                if let Some(h) = s.comp(g, f) {
                    let last = if s.is_identity(h) {
                        pos[g].max(pos[f])
                    } else {
                        pos[g].max(pos[f]).max(pos[h])
                    };
                    checks[last].push((g, f, h));
                }
            }
        }
        FunctorSearch {
            s,
            t,
            order,
            checks,
            obj: vec![None; s.objects()],
            mor: vec![None; s.morphisms()],
            nodes: 0,
            budget,
            limit,
            out: Vec::new(),
        }
    }

    fn done(&self) -> bool {
        self.limit.is_some_and(|l| self.out.len() >= l)
    }

    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::budget(self.budget, "enumerating functors"));
        }
        Ok(())
    }

    fn objects(&mut self, o: usize) -> Result<()> {
        if self.done() {
            return Ok(());
        }
        if o == self.s.objects() {
            return self.morphisms(0);
        }
        let choices: Vec<usize> = match self.obj[o] {
            Some(v) => vec![v],
            None => (0..self.t.objects()).collect(),
        };
        let prescribed = self.obj[o].is_some();
        for v in choices {
            self.tick()?;
            self.obj[o] = Some(v);
            let id = self.s.id(o);
            let tid = self.t.id(v);
            let ok = match self.mor[id] {
                Some(m) => m == tid,
                None => true,
            };
            if ok {
                let prev = self.mor[id].replace(tid);
                self.objects(o + 1)?;
                self.mor[id] = prev;
            }
            if self.done() {
                break;
            }
        }
        if !prescribed {
            self.obj[o] = None;
        }
        Ok(())
    }

    fn morphisms(&mut self, i: usize) -> Result<()> {
        if self.done() {
            return Ok(());
        }
        if i == self.order.len() {
            let obj = self.obj.iter().map(|v| v.unwrap()).collect();
            let mor = self.mor.iter().map(|v| v.unwrap()).collect();
            self.out.push((obj, mor));
            return Ok(());
        }
        let m = self.order[i];
        let a = self.obj[self.s.src(m)].unwrap();
        let b = self.obj[self.s.tgt(m)].unwrap();
        let prescribed = self.mor[m];
        let choices: Vec<usize> = match prescribed {
            Some(v) if self.t.src(v) == a && self.t.tgt(v) == b => vec![v],
            Some(_) => Vec::new(),
            None => self.t.hom(a, b).to_vec(),
        };
        for v in choices {
            self.tick()?;
            self.mor[m] = Some(v);
            let ok = self.checks[i].iter().all(|&(g, f, h)| {
                let (fg, ff, fh) = (self.mor[g].unwrap(), self.mor[f].unwrap(), self.mor[h].unwrap());
                self.t.comp(fg, ff) == Some(fh)
            });
            if ok {
                self.morphisms(i + 1)?;
            }
            if self.done() {
                break;
            }
        }
        self.mor[m] = prescribed;
        Ok(())
    }
}

impl Cat {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_budget(budget: usize) -> Self {
        Cat { budget }
    }

    fn search(
        &self,
        s: &Arc<FinCategory>,
        t: &Arc<FinCategory>,
        obj_fixed: Vec<Option<usize>>,
        mor_fixed: Vec<Option<usize>>,
        limit: Option<usize>,
    ) -> Result<Vec<FinFunctor>> {
        let mut search = FunctorSearch::new(s, t, self.budget, limit);
        search.obj = obj_fixed;
        search.mor = mor_fixed;
        search.objects(0)?;
        Ok(search
            .out
            .into_iter()
            .map(|(obj_map, mor_map)| FinFunctor {
                source: s.clone(),
                target: t.clone(),
                obj_map,
                mor_map,
            })
            .collect())
    }
}

impl Category for Cat {
    type Obj = Arc<FinCategory>;
    type Mor = FinFunctor;

    fn source(&self, f: &FinFunctor) -> Arc<FinCategory> {
        f.source.clone()
    }

    fn target(&self, f: &FinFunctor) -> Arc<FinCategory> {
        f.target.clone()
    }

    fn identity(&self, a: &Arc<FinCategory>) -> FinFunctor {
        FinFunctor::identity(a.clone())
    }

    fn compose(&self, g: &FinFunctor, f: &FinFunctor) -> Result<FinFunctor> {
        g.after(f)
    }

    fn homs(&self, a: &Arc<FinCategory>, b: &Arc<FinCategory>) -> Result<Vec<FinFunctor>> {
        self.search(a, b, vec![None; a.objects()], vec![None; a.morphisms()], None)
    }

    fn search_based(&self) -> bool {
        true
    }

    fn extensions(
        &self,
        constraints: &[(FinFunctor, FinFunctor)],
        b: &Arc<FinCategory>,
        x: &Arc<FinCategory>,
        limit: Option<usize>,
    ) -> Result<Vec<FinFunctor>> {
        let mut obj = vec![None; b.objects()];
        let mut mor = vec![None; b.morphisms()];
        for (j, f) in constraints {
            for (a, &ja) in j.obj_map.iter().enumerate() {
                match obj[ja] {
                    None => obj[ja] = Some(f.obj_map[a]),
                    Some(v) if v == f.obj_map[a] => {}
                    Some(_) => return Ok(Vec::new()),
                }
            }
            for (m, &jm) in j.mor_map.iter().enumerate() {
                match mor[jm] {
                    None => mor[jm] = Some(f.mor_map[m]),
                    Some(v) if v == f.mor_map[m] => {}
                    Some(_) => return Ok(Vec::new()),
                }
            }
        }
        self.search(b, x, obj, mor, limit)
    }

    fn inverse(&self, f: &FinFunctor) -> Result<Option<FinFunctor>> {
        let (s, t) = (&f.source, &f.target);
        if s.objects() != t.objects() || s.morphisms() != t.morphisms() {
            return Ok(None);
        }
        let mut obj = vec![usize::MAX; t.objects()];
        for (a, &b) in f.obj_map.iter().enumerate() {
            if obj[b] != usize::MAX {
                return Ok(None);
            }
            obj[b] = a;
        }
        let mut mor = vec![usize::MAX; t.morphisms()];
        for (a, &b) in f.mor_map.iter().enumerate() {
            if mor[b] != usize::MAX {
                return Ok(None);
            }
            mor[b] = a;
        }
        Ok(Some(FinFunctor {
            source: t.clone(),
            target: s.clone(),
            obj_map: obj,
            mor_map: mor,
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_shapes_validate() {
        let iso = FinCategory::walking_iso();
        assert_eq!((iso.objects(), iso.morphisms()), (2, 4));
        assert_eq!(iso.inverse_of(2), Some(3));
        assert_eq!(FinCategory::walking_arrow().morphisms(), 3);
        assert_eq!(FinCategory::parallel_pair().morphisms(), 4);
        assert_eq!(FinCategory::empty().morphisms(), 0);
    }

    #[test]
    fn bad_tables_are_rejected() {
        // a non-associative magma on {e, a, b}: a∘a = b, a∘b = e, b∘a = a
        let t = vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 1, 0]];
        assert!(FinCategory::monoid(&t).is_err());
    }

    #[test]
    fn preorder_with_cycle_is_chaotic() {
        let le = vec![vec![true, true], vec![true, true]];
        let c = FinCategory::preorder(&le).unwrap();
        assert_eq!(c.morphisms(), 4);
        assert!(c.inverse_of(2).is_some());
    }

    #[test]
    fn functor_counts() {
        let cat = Cat::new();
        let arrow = Arc::new(FinCategory::walking_arrow());
        let d2 = Arc::new(FinCategory::discrete(2));
        // functors {0→1} -> {0→1}: (0,0), (0,1), (1,1)
        assert_eq!(cat.homs(&arrow, &arrow).unwrap().len(), 3);
        assert_eq!(cat.homs(&d2, &arrow).unwrap().len(), 4);
        assert_eq!(cat.homs(&arrow, &d2).unwrap().len(), 2);
        let empty = Arc::new(FinCategory::empty());
        assert_eq!(cat.homs(&empty, &arrow).unwrap().len(), 1);
        assert!(cat.homs(&arrow, &empty).unwrap().is_empty());
    }

    #[test]
    fn functor_listing_is_lexicographic() {
        let cat = Cat::new();
        let iso = Arc::new(FinCategory::walking_iso());
        let homs = cat.homs(&iso, &iso).unwrap();
        let keys: Vec<_> = homs.iter().map(|f| (f.obj_map.clone(), f.mor_map.clone())).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        for f in &homs {
            f.validate().unwrap();
        }
    }

    #[test]
    fn swap_of_walking_iso_is_invertible() {
        let cat = Cat::new();
        let iso = Arc::new(FinCategory::walking_iso());
        let swap = FinFunctor::new(iso.clone(), iso.clone(), vec![1, 0], vec![1, 0, 3, 2]).unwrap();
        let inv = cat.inverse(&swap).unwrap().unwrap();
        assert_eq!(cat.compose(&inv, &swap).unwrap(), FinFunctor::identity(iso));
    }
}
