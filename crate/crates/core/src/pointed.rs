//! Pointed endofunctors, algebraic chains and free algebras, together with
//! the endofunctor `R` whose algebras are algebraic injectives.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::kernel::{Category, FiniteColimits, Pushout};
use crate::lifting::{AlgInjWitness, Extension};

/// An endofunctor `T` with a natural `η: 1 -> T`.
pub trait PointedEndofunctor: Sync {
    type C: FiniteColimits;

    fn category(&self) -> &Self::C;
    fn apply_obj(&self, x: &Obj<Self>) -> Result<Obj<Self>>;
    fn apply_mor(&self, f: &Mor<Self>) -> Result<Mor<Self>>;
    /// `η_X: X -> T X`.
    fn unit(&self, x: &Obj<Self>) -> Result<Mor<Self>>;
}

pub type Obj<T> = <<T as PointedEndofunctor>::C as Category>::Obj;
pub type Mor<T> = <<T as PointedEndofunctor>::C as Category>::Mor;

/// Checks `T 1 = 1` on `objects`, naturality of `η` on `maps`, and
/// `T(g ∘ f) = T g ∘ T f` on every composable pair of `maps`.
pub fn validate_pointed<T: PointedEndofunctor + ?Sized>(
    t: &T,
    objects: &[Obj<T>],
    maps: &[Mor<T>],
) -> Result<()> {
    let c = t.category();
    for x in objects {
        let tx = t.apply_obj(x)?;
        if t.apply_mor(&c.identity(x))? != c.identity(&tx) {
            return Err(Error::invalid("T does not preserve an identity"));
        }
        let eta = t.unit(x)?;
        if c.source(&eta) != *x || c.target(&eta) != tx {
            return Err(Error::invalid("unit component has the wrong type"));
        }
    }
    for f in maps {
        let tf = t.apply_mor(f)?;
        let lhs = c.compose(&tf, &t.unit(&c.source(f))?)?;
        let rhs = c.compose(&t.unit(&c.target(f))?, f)?;
        if lhs != rhs {
            return Err(Error::invalid("unit is not natural"));
        }
        for g in maps {
            if c.source(g) == c.target(f) {
                let whole = t.apply_mor(&c.compose(g, f)?)?;
                if whole != c.compose(&t.apply_mor(g)?, &tf)? {
                    return Err(Error::invalid("T does not preserve a composite"));
                }
            }
        }
    }
    Ok(())
}

/// The identity functor pointed by identities.
#[derive(Debug, Clone)]
pub struct IdentityPointed<C> {
    pub base: C,
}

impl<C: FiniteColimits> PointedEndofunctor for IdentityPointed<C> {
    type C = C;

    fn category(&self) -> &C {
        &self.base
    }
    fn apply_obj(&self, x: &C::Obj) -> Result<C::Obj> {
        Ok(x.clone())
    }
    fn apply_mor(&self, f: &C::Mor) -> Result<C::Mor> {
        Ok(f.clone())
    }
    fn unit(&self, x: &C::Obj) -> Result<C::Mor> {
        Ok(self.base.identity(x))
    }
}

/// `R X` for one object: the pushout of `ε_X: Σ C(A, X)·A -> X` along
/// `Σ 1·j: Σ C(A, X)·A -> Σ C(A, X)·B`.
#[derive(Debug, Clone)]
pub struct RStage<O, M> {
    /// `attempts[j]` lists `C(A_j, X)` in canonical order.
    pub attempts: Vec<Vec<M>>,
    /// Summand position of each `(j, f)`.
    index: HashMap<(usize, M), usize>,
    b_summands: Vec<O>,
    b_injections: Vec<M>,
    /// `left` is `η_X`; `right` is `Σ C(A, X)·B -> R X`.
    pub pushout: Pushout<O, M>,
}

impl<O, M: Clone + Eq + std::hash::Hash> RStage<O, M> {
    fn position(&self, j: usize, f: &M) -> Result<usize> {
        self.index
            .get(&(j, f.clone()))
            .copied()
            .ok_or_else(|| Error::invalid("attempt is not a map out of the generator's source"))
    }
}

type StageCache<C> = Mutex<HashMap<<C as Category>::Obj, Arc<RStage<<C as Category>::Obj, <C as Category>::Mor>>>>;

/// The pointed endofunctor whose algebras are algebraic `J`-injectives.
pub struct RConstruction<C: FiniteColimits> {
    pub base: C,
    pub generators: Vec<C::Mor>,
    cache: StageCache<C>,
}

impl<C: FiniteColimits> RConstruction<C> {
    pub fn new(base: C, generators: Vec<C::Mor>) -> Self {
        RConstruction {
            base,
            generators,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn stage(&self, x: &C::Obj) -> Result<Arc<RStage<C::Obj, C::Mor>>> {
        if let Some(s) = self.cache.lock().unwrap().get(x) {
            return Ok(s.clone());
        }
        let c = &self.base;
        let mut attempts = Vec::new();
        let mut index = HashMap::new();
        let (mut a_summands, mut b_summands, mut legs) = (Vec::new(), Vec::new(), Vec::new());
        for (ji, j) in self.generators.iter().enumerate() {
            let homs = c.homs(&c.source(j), x)?;
            for f in &homs {
                index.insert((ji, f.clone()), a_summands.len());
                a_summands.push(c.source(j));
                b_summands.push(c.target(j));
                legs.push(f.clone());
            }
            attempts.push(homs);
        }
        let b_sum = c.coproduct(&b_summands)?;
        let epsilon = c.copair(&a_summands, &legs, x)?;
        let alphas = (0..a_summands.len())
            .map(|i| {
                let j = &self.generators[self.generator_of(&attempts, i)];
                c.compose(&b_sum.injections[i], j)
            })
            .collect::<Result<Vec<_>>>()?;
        let sum_alpha = c.copair(&a_summands, &alphas, &b_sum.apex)?;
        let pushout = c.pushout(&epsilon, &sum_alpha)?;
        let stage = Arc::new(RStage {
            attempts,
            index,
            b_summands,
            b_injections: b_sum.injections,
            pushout,
        });
        self.cache.lock().unwrap().insert(x.clone(), stage.clone());
        Ok(stage)
    }

    fn generator_of(&self, attempts: &[Vec<C::Mor>], summand: usize) -> usize {
        let mut seen = 0;
        for (j, row) in attempts.iter().enumerate() {
            seen += row.len();
            if summand < seen {
                return j;
            }
        }
        unreachable!("summand out of range")
    }

    /// `B_j -> R X`, the new filler for `(j, f)`.
    pub fn filler_leg(&self, x: &C::Obj, j: usize, f: &C::Mor) -> Result<C::Mor> {
        let s = self.stage(x)?;
        let i = s.position(j, f)?;
        self.base.compose(&s.pushout.right, &s.b_injections[i])
    }

    /// The structure map `R C -> C` with `c(j, f)` on each summand.
    pub fn algebra_from_witness(
        &self,
        w: &AlgInjWitness<C::Obj, C::Mor>,
    ) -> Result<Algebra<C::Obj, C::Mor>> {
        if w.generators != self.generators {
            return Err(Error::IncompatibleJ);
        }
        let c = &self.base;
        let s = self.stage(&w.carrier)?;
        let mut fillers = Vec::with_capacity(s.b_summands.len());
        for (ji, row) in s.attempts.iter().enumerate() {
            for f in row {
                let filler = w
                    .filler(ji, f)
                    .ok_or_else(|| Error::invalid("witness table is missing an attempt"))?;
                fillers.push(filler.clone());
            }
        }
        let v = c.copair(&s.b_summands, &fillers, &w.carrier)?;
        let structure = c.pushout_mediate(&s.pushout, &c.identity(&w.carrier), &v)?;
        Ok(Algebra {
            carrier: w.carrier.clone(),
            structure,
        })
    }

    /// Reads `c(j, f)` off an algebra as its structure map on the `(j, f)` summand.
    pub fn witness_from_algebra(
        &self,
        alg: &Algebra<C::Obj, C::Mor>,
    ) -> Result<AlgInjWitness<C::Obj, C::Mor>> {
        alg.check_law(self)?;
        let c = &self.base;
        let s = self.stage(&alg.carrier)?;
        let table = s
            .attempts
            .iter()
            .enumerate()
            .map(|(ji, row)| {
                row.iter()
                    .map(|f| {
                        let leg = self.filler_leg(&alg.carrier, ji, f)?;
                        Ok(Extension {
                            attempt: f.clone(),
                            filler: c.compose(&alg.structure, &leg)?,
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(AlgInjWitness {
            carrier: alg.carrier.clone(),
            generators: self.generators.clone(),
            table,
        })
    }
}

impl<C: FiniteColimits> PointedEndofunctor for RConstruction<C> {
    type C = C;

    fn category(&self) -> &C {
        &self.base
    }

    fn apply_obj(&self, x: &C::Obj) -> Result<C::Obj> {
        Ok(self.stage(x)?.pushout.apex.clone())
    }

    fn apply_mor(&self, f: &C::Mor) -> Result<C::Mor> {
        let c = &self.base;
        let (x, y) = (c.source(f), c.target(f));
        let sx = self.stage(&x)?;
        let sy = self.stage(&y)?;
        let u = c.compose(&sy.pushout.left, f)?;
        let mut legs = Vec::with_capacity(sx.b_summands.len());
        for (ji, row) in sx.attempts.iter().enumerate() {
            for g in row {
                let i = sy.position(ji, &c.compose(f, g)?)?;
                legs.push(c.compose(&sy.pushout.right, &sy.b_injections[i])?);
            }
        }
        let v = c.copair(&sx.b_summands, &legs, &sy.pushout.apex)?;
        c.pushout_mediate(&sx.pushout, &u, &v)
    }

    fn unit(&self, x: &C::Obj) -> Result<C::Mor> {
        Ok(self.stage(x)?.pushout.left.clone())
    }
}

/// A `T`-algebra: `structure: T carrier -> carrier` with `structure ∘ η = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Algebra<O, M> {
    pub carrier: O,
    pub structure: M,
}

impl<O, M: PartialEq> Algebra<O, M> {
    pub fn check_law<T>(&self, t: &T) -> Result<()>
    where
        T: PointedEndofunctor + ?Sized,
        T::C: Category<Obj = O, Mor = M>,
    {
        let c = t.category();
        let law = c.compose(&self.structure, &t.unit(&self.carrier)?)?;
        if law != c.identity(&self.carrier) {
            return Err(Error::invalid("structure map does not split the unit"));
        }
        Ok(())
    }
}

/// Stages `X_0..X_N` with `j_n^{n+1}` and `x_n: T X_n -> X_{n+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraicChain<O, M> {
    pub stages: Vec<O>,
    /// `steps[n] = j_n^{n+1}`.
    pub steps: Vec<M>,
    pub structure: Vec<M>,
}

impl<O: Clone, M: Clone> AlgebraicChain<O, M> {
    pub fn len(&self) -> usize {
        self.stages.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stages.is_empty()
    }

    /// `j_n^m`, composed from the stored steps.
    pub fn connecting<C: Category<Obj = O, Mor = M>>(&self, c: &C, n: usize, m: usize) -> Result<M> {
        if n > m || m >= self.stages.len() {
            return Err(Error::invalid(format!("no connecting map from stage {n} to {m}")));
        }
        let mut out = c.identity(&self.stages[n]);
        for step in &self.steps[n..m] {
            out = c.compose(step, &out)?;
        }
        Ok(out)
    }

    /// Checks the unit law at every stored `n`, the compatibility square for
    /// every stored `n < m`, and functoriality of the connecting maps.
    pub fn validate<T>(&self, t: &T) -> Result<()>
    where
        T: PointedEndofunctor + ?Sized,
        T::C: Category<Obj = O, Mor = M>,
        M: PartialEq,
    {
        let c = t.category();
        for (n, x) in self.structure.iter().enumerate() {
            if c.compose(x, &t.unit(&self.stages[n])?)? != self.steps[n] {
                return Err(Error::invalid(format!("unit law fails at stage {n}")));
            }
        }
        for m in 0..self.structure.len() {
            for n in 0..m {
                let lhs = c.compose(&self.structure[m], &t.apply_mor(&self.connecting(c, n, m)?)?)?;
                let rhs = c.compose(&self.connecting(c, n + 1, m + 1)?, &self.structure[n])?;
                if lhs != rhs {
                    return Err(Error::invalid(format!("compatibility fails for {n} < {m}")));
                }
            }
        }
        let len = self.stages.len();
        for n in 0..len {
            for m in n..len {
                for l in m..len {
                    let composite = c.compose(&self.connecting(c, m, l)?, &self.connecting(c, n, m)?)?;
                    if composite != self.connecting(c, n, l)? {
                        return Err(Error::invalid("connecting maps are not functorial"));
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeChainResult<O, M> {
    pub chain: AlgebraicChain<O, M>,
    pub stabilized_at: Option<usize>,
    pub algebra: Option<Algebra<O, M>>,
    pub stage_bound: usize,
}

impl<O, M> FreeChainResult<O, M> {
    pub fn require_algebra(&self) -> Result<&Algebra<O, M>> {
        self.algebra.as_ref().ok_or(Error::StageBoundReached {
            bound: self.stage_bound,
        })
    }
}

/// Least `s` from which every stored step is invertible.
pub fn detect_stabilization<C: Category>(c: &C, chain: &AlgebraicChain<C::Obj, C::Mor>) -> Result<Option<usize>> {
    let mut out = None;
    for (n, step) in chain.steps.iter().enumerate().rev() {
        if c.inverse(step)?.is_none() {
            break;
        }
        out = Some(n);
    }
    Ok(out)
}

/// The free algebraic chain on `x`, built through stage `stage_bound` or
/// until a step is invertible and the next step confirms it.
pub fn free_chain<T: PointedEndofunctor + ?Sized>(
    t: &T,
    x: &Obj<T>,
    stage_bound: usize,
) -> Result<FreeChainResult<Obj<T>, Mor<T>>> {
    let c = t.category();
    let tx = t.apply_obj(x)?;
    let mut chain = AlgebraicChain {
        stages: vec![x.clone()],
        steps: Vec::new(),
        structure: Vec::new(),
    };
    if stage_bound >= 1 {
        chain.stages.push(tx.clone());
        chain.steps.push(t.unit(x)?);
        chain.structure.push(c.identity(&tx));
    }
    let mut first_iso = None;
    while chain.stages.len() <= stage_bound {
        let n = chain.stages.len() - 1;
        if first_iso.is_none() && c.inverse(&chain.steps[n - 1])?.is_some() {
            first_iso = Some(n - 1);
        }
        if first_iso.is_some_and(|s| n >= s + 2) {
            break;
        }
        // X_{n+1} from the fork T X_{n-1} ⇉ T X_n
        let (xp, xc) = (&chain.stages[n - 1], &chain.stages[n]);
        let t_x = t.apply_mor(&chain.structure[n - 1])?;
        let a = c.compose(&t_x, &t.apply_mor(&t.unit(xp)?)?)?;
        let b = c.compose(&t_x, &t.unit(&t.apply_obj(xp)?)?)?;
        let (next, proj) = c.coequalizer(&a, &b)?;
        chain.steps.push(c.compose(&proj, &t.unit(xc)?)?);
        chain.structure.push(proj);
        chain.stages.push(next);
    }
    if first_iso.is_none() {
        if let Some(last) = chain.steps.last() {
            if c.inverse(last)?.is_some() {
                first_iso = Some(chain.steps.len() - 1);
            }
        }
    }
    let stabilized_at = detect_stabilization(c, &chain)?;
    if let (Some(s), Some(f)) = (stabilized_at, first_iso) {
        if s != f {
            return Err(Error::invalid("an invertible step was followed by a non-invertible one"));
        }
    }
    let mut result = FreeChainResult {
        chain,
        stabilized_at,
        algebra: None,
        stage_bound,
    };
    if stabilized_at.is_some() {
        result.algebra = Some(extract_algebra(t, &result)?);
    }
    Ok(result)
}

/// `(j_s^{s+1})^{-1} ∘ x_s` at the stabilization stage `s`.
pub fn extract_algebra<T: PointedEndofunctor + ?Sized>(
    t: &T,
    result: &FreeChainResult<Obj<T>, Mor<T>>,
) -> Result<Algebra<Obj<T>, Mor<T>>> {
    let c = t.category();
    let s = result.stabilized_at.ok_or(Error::NotStabilized)?;
    let inv = c
        .inverse(&result.chain.steps[s])?
        .ok_or(Error::NotStabilized)?;
    let alg = Algebra {
        carrier: result.chain.stages[s].clone(),
        structure: c.compose(&inv, &result.chain.structure[s])?,
    };
    alg.check_law(t)?;
    Ok(alg)
}

/// The algebra map out of the free algebra built stage by stage from
/// `f: X -> probe.carrier`, if every stage is defined.
pub fn canonical_extension<T: PointedEndofunctor + ?Sized>(
    t: &T,
    result: &FreeChainResult<Obj<T>, Mor<T>>,
    probe: &Algebra<Obj<T>, Mor<T>>,
    f: &Mor<T>,
) -> Result<Mor<T>> {
    let c = t.category();
    let s = result.stabilized_at.ok_or(Error::NotStabilized)?;
    let chain = &result.chain;
    let y = &probe.structure;
    let mut maps = vec![f.clone()];
    if s >= 1 {
        maps.push(c.compose(y, &t.apply_mor(f)?)?);
    }
    for n in 0..s.saturating_sub(1) {
        let h = c.compose(y, &t.apply_mor(&maps[n + 1])?)?;
        maps.push(c.coequalizer_mediate(&chain.structure[n + 1], &h)?);
    }
    for n in 0..s {
        if c.compose(&maps[n + 1], &chain.steps[n])? != maps[n] {
            return Err(Error::invalid("stage maps do not form a chain map"));
        }
    }
    Ok(maps.pop().unwrap())
}

/// Existence and uniqueness of an algebra map from the free algebra to
/// `probe` restricting to `f` along `X -> X_s`, the candidate built stage by
/// stage and every other map ruled out by enumeration.
pub fn verify_universal_property<T: PointedEndofunctor + ?Sized>(
    t: &T,
    result: &FreeChainResult<Obj<T>, Mor<T>>,
    probe: &Algebra<Obj<T>, Mor<T>>,
    f: &Mor<T>,
) -> Result<bool> {
    let c = t.category();
    probe.check_law(t)?;
    let free = result.algebra.as_ref().ok_or(Error::NotStabilized)?;
    let s = result.stabilized_at.ok_or(Error::NotStabilized)?;
    let unit = result.chain.connecting(c, 0, s)?;
    let is_extension = |h: &Mor<T>| -> Result<bool> {
        Ok(c.compose(h, &unit)? == *f
            && c.compose(h, &free.structure)? == c.compose(&probe.structure, &t.apply_mor(h)?)?)
    };
    let Ok(h) = canonical_extension(t, result, probe, f) else {
        return Ok(false);
    };
    if !is_extension(&h)? {
        return Ok(false);
    }
    for g in c.homs(&free.carrier, &probe.carrier)? {
        if g != h && is_extension(&g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The free algebraic `J`-injective on `x`, read off the free chain of `R`.
pub fn free_algebraic_injective<C: FiniteColimits>(
    r: &RConstruction<C>,
    x: &C::Obj,
    stage_bound: usize,
) -> Result<(AlgInjWitness<C::Obj, C::Mor>, FreeChainResult<C::Obj, C::Mor>)> {
    let result = free_chain(r, x, stage_bound)?;
    let alg = result.require_algebra()?;
    let w = r.witness_from_algebra(alg)?;
    if !w.replay(&r.base)? {
        return Err(Error::invalid("extracted fillers do not extend their attempts"));
    }
    Ok((w, result))
}
