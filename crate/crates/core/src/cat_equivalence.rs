//! Equivalences of finite categories, decided directly and as injectivity
//! against three squares of the arrow category of categories.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::kernel::{ArrowCategory, Cat, FinCategory, FinFunctor, SquareMorphism};
use crate::lifting::{is_injective, InjectivityVerdict, Status};

/// The eso, fullness and faithfulness squares, in that order.
#[derive(Debug, Clone)]
pub struct CatInjSquares {
    pub eso: SquareMorphism<FinFunctor>,
    pub full: SquareMorphism<FinFunctor>,
    pub faithful: SquareMorphism<FinFunctor>,
}

impl CatInjSquares {
    pub fn all(&self) -> [&SquareMorphism<FinFunctor>; 3] {
        [&self.eso, &self.full, &self.faithful]
    }
}

/// The three generating cofibrations `∅ → •`, `{0 1} → {0→1}`, `{0⇉1} → {0→1}`.
pub fn generating_cofibrations() -> [FinFunctor; 3] {
    let empty = Arc::new(FinCategory::empty());
    let point = Arc::new(FinCategory::terminal());
    let d2 = Arc::new(FinCategory::discrete(2));
    let arrow = Arc::new(FinCategory::walking_arrow());
    let pair = Arc::new(FinCategory::parallel_pair());
    [
        FinFunctor::new(empty, point, vec![], vec![]).expect("∅ → •"),
        FinFunctor::new(d2, arrow.clone(), vec![0, 1], vec![0, 1]).expect("{0 1} → {0→1}"),
        FinFunctor::new(pair, arrow, vec![0, 1], vec![0, 1, 2, 2]).expect("{0⇉1} → {0→1}"),
    ]
}

pub fn build_cat_inj_squares() -> CatInjSquares {
    let cat = Cat::new();
    let [bang, incl, collapse] = generating_cofibrations();
    let point = bang.target.clone();
    let iso = Arc::new(FinCategory::walking_iso());
    let zero = FinFunctor::new(point.clone(), iso.clone(), vec![0], vec![0]).expect("object 0");
    let one = FinFunctor::new(point, iso, vec![1], vec![1]).expect("object 1");
    let eso = SquareMorphism::new(&cat, bang.clone(), zero, bang, one).expect("eso square");
    let arrow = incl.target.clone();
    let id = FinFunctor::identity(arrow);
    let full = SquareMorphism::new(&cat, incl.clone(), id.clone(), incl, id.clone())
        .expect("fullness square");
    let faithful = SquareMorphism::new(&cat, collapse.clone(), id.clone(), collapse, id)
        .expect("faithfulness square");
    CatInjSquares {
        eso,
        full,
        faithful,
    }
}

/// An object choice `a_b` with `φ_b: f(a_b) ≅ b` for every `b`, and a chosen
/// preimage for every morphism between images.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceWitness {
    /// `(b, a_b, φ_b, φ_b⁻¹)`.
    pub essential: Vec<(usize, usize, usize, usize)>,
    /// `(a0, a1, β, α)` with `f(α) = β: f(a0) → f(a1)`.
    pub preimages: Vec<(usize, usize, usize, usize)>,
}

impl EquivalenceWitness {
    pub fn replay(&self, f: &FinFunctor) -> bool {
        let t = &f.target;
        let objects_ok = self.essential.len() == t.objects()
            && self.essential.iter().enumerate().all(|(i, &(b, a, phi, inv))| {
                b == i
                    && a < f.source.objects()
                    && phi.max(inv) < t.morphisms()
                    && t.src(phi) == f.obj_map[a]
                    && t.tgt(phi) == b
                    && t.comp(inv, phi) == Some(t.id(f.obj_map[a]))
                    && t.comp(phi, inv) == Some(t.id(b))
            });
        objects_ok
            && self.preimages.iter().all(|&(a0, a1, beta, alpha)| {
                alpha < f.source.morphisms()
                    && f.source.src(alpha) == a0 && f.source.tgt(alpha) == a1 && f.mor_map[alpha] == beta
            })
    }
}

/// Which of the three conditions fails first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EquivalenceFailure {
    NotEssentiallySurjective { object: usize },
    NotFull { a0: usize, a1: usize, morphism: usize },
    NotFaithful { first: usize, second: usize },
}

impl EquivalenceFailure {
    pub fn square_index(&self) -> usize {
        match self {
            EquivalenceFailure::NotEssentiallySurjective { .. } => 0,
            EquivalenceFailure::NotFull { .. } => 1,
            EquivalenceFailure::NotFaithful { .. } => 2,
        }
    }
}

pub type DirectVerdict = std::result::Result<EquivalenceWitness, EquivalenceFailure>;

/// Essential surjectivity by iso search, then fullness and faithfulness by
/// comparing hom tables.
pub fn is_equivalence_direct(f: &FinFunctor) -> DirectVerdict {
    let (s, t) = (&f.source, &f.target);
    let mut essential = Vec::with_capacity(t.objects());
    for b in 0..t.objects() {
        let found = (0..s.objects()).find_map(|a| {
            t.hom(f.obj_map[a], b)
                .iter()
                .find_map(|&phi| t.inverse_of(phi).map(|inv| (b, a, phi, inv)))
        });
        match found {
            Some(e) => essential.push(e),
            None => return Err(EquivalenceFailure::NotEssentiallySurjective { object: b }),
        }
    }
    let mut preimages = Vec::new();
    for a0 in 0..s.objects() {
        for a1 in 0..s.objects() {
            for &beta in t.hom(f.obj_map[a0], f.obj_map[a1]) {
                match s.hom(a0, a1).iter().find(|&&alpha| f.mor_map[alpha] == beta) {
                    Some(&alpha) => preimages.push((a0, a1, beta, alpha)),
                    None => {
                        return Err(EquivalenceFailure::NotFull {
                            a0,
                            a1,
                            morphism: beta,
                        })
                    }
                }
            }
        }
    }
    for a0 in 0..s.objects() {
        for a1 in 0..s.objects() {
            let hom = s.hom(a0, a1);
            for (i, &x) in hom.iter().enumerate() {
                if let Some(&y) = hom[i + 1..].iter().find(|&&y| f.mor_map[y] == f.mor_map[x]) {
                    return Err(EquivalenceFailure::NotFaithful {
                        first: x,
                        second: y,
                    });
                }
            }
        }
    }
    Ok(EquivalenceWitness {
        essential,
        preimages,
    })
}

/// Per-square verdicts in the order eso, full, faithful. Checking stops at
/// the first square that fails.
#[derive(Debug, Clone)]
pub struct CatInjectivityVerdict {
    pub status: Status,
    pub squares: Vec<InjectivityVerdict<SquareMorphism<FinFunctor>>>,
    pub failing_square: Option<usize>,
}

impl CatInjectivityVerdict {
    /// Reads `a_b`, `φ_b` off the eso fillers and preimages off the fullness
    /// fillers.
    pub fn witness(&self) -> Option<EquivalenceWitness> {
        if self.status != Status::Verified {
            return None;
        }
        let essential = self.squares[0]
            .witnesses
            .iter()
            .map(|e| {
                let b = e.attempt.bottom.obj_map[0];
                let a = e.filler.top.obj_map[0];
                (b, a, e.filler.bottom.mor_map[2], e.filler.bottom.mor_map[3])
            })
            .collect();
        let preimages = self.squares[1]
            .witnesses
            .iter()
            .map(|e| {
                let (a0, a1) = (e.attempt.top.obj_map[0], e.attempt.top.obj_map[1]);
                (a0, a1, e.attempt.bottom.mor_map[2], e.filler.top.mor_map[2])
            })
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        Some(EquivalenceWitness {
            essential,
            preimages,
        })
    }
}

/// Default cap on `objects · morphisms` for each side.
pub const DEFAULT_GUARD: usize = 400;

pub fn is_equivalence_via_injectivity(
    f: &FinFunctor,
    guard: usize,
) -> Result<CatInjectivityVerdict> {
    for c in [&f.source, &f.target] {
        let size = c.objects() * c.morphisms();
        if size > guard {
            return Err(Error::budget(guard, format!("category of size {size} exceeds the guard")));
        }
    }
    let arr = ArrowCategory::new(Cat::new());
    let squares = build_cat_inj_squares();
    let mut verdicts = Vec::with_capacity(3);
    for (i, sq) in squares.all().into_iter().enumerate() {
        let v = is_injective(&arr, sq, f)?;
        let ok = v.is_verified();
        verdicts.push(v);
        if !ok {
            return Ok(CatInjectivityVerdict {
                status: Status::RefutedExhaustive,
                squares: verdicts,
                failing_square: Some(i),
            });
        }
    }
    Ok(CatInjectivityVerdict {
        status: Status::Verified,
        squares: verdicts,
        failing_square: None,
    })
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Preorders on `n` objects with at most `max_morphisms` morphisms, one per
/// isomorphism class.
pub fn preorders(n: usize, max_morphisms: usize) -> Vec<FinCategory> {
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b))).collect();
    let perms = permutations(n);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        if n + mask.count_ones() as usize > max_morphisms {
            continue;
        }
        let mut le = vec![vec![false; n]; n];
        for (i, &(a, b)) in pairs.iter().enumerate() {
            le[a][b] = mask & (1 << i) != 0;
        }
        for (a, row) in le.iter_mut().enumerate() {
            row[a] = true;
        }
        let transitive = (0..n).all(|a| {
            (0..n).all(|b| (0..n).all(|c| !(le[a][b] && le[b][c]) || le[a][c]))
        });
        if !transitive {
            continue;
        }
        let canon = perms
            .iter()
            .map(|p| {
                let mut bits = Vec::with_capacity(n * n);
                for a in 0..n {
                    for b in 0..n {
                        bits.push(le[p[a]][p[b]]);
                    }
                }
                bits
            })
            .min()
            .unwrap();
        if seen.insert(canon) {
            out.push(FinCategory::preorder(&le).expect("preorder"));
        }
    }
    out
}

/// Monoids of the given order, one per isomorphism class, unit first.
pub fn monoids(order: usize) -> Vec<FinCategory> {
    if order == 0 {
        return Vec::new();
    }
    let k = order - 1;
    let cells = k * k;
    let perms = permutations(k);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let total = order.pow(cells as u32);
    for code in 0..total {
        let mut table = vec![vec![0; order]; order];
        for (i, row) in table.iter_mut().enumerate() {
            row[0] = i;
        }
        table[0] = (0..order).collect();
        let mut c = code;
        for g in 1..order {
            for f in 1..order {
                table[g][f] = c % order;
                c /= order;
            }
        }
        let assoc = (0..order).all(|a| {
            (0..order).all(|b| (0..order).all(|d| table[a][table[b][d]] == table[table[a][b]][d]))
        });
        if !assoc {
            continue;
        }
        let canon = perms
            .iter()
            .map(|p| {
                // relabel element i ≥ 1 as p[i - 1] + 1
                let r = |x: usize| if x == 0 { 0 } else { p[x - 1] + 1 };
                let mut t = vec![vec![0; order]; order];
                for g in 0..order {
                    for f in 0..order {
                        t[r(g)][r(f)] = r(table[g][f]);
                    }
                }
                t
            })
            .min()
            .unwrap();
        if seen.insert(canon.clone()) {
            out.push(FinCategory::monoid(&canon).expect("monoid"));
        }
    }
    out
}

/// Small categories used by the equivalence suites: preorders on at most
/// three objects with at most six morphisms, monoids of order at most three,
/// and a few non-thin shapes with several objects.
pub fn small_category_corpus() -> Vec<FinCategory> {
    let mut out = vec![FinCategory::empty()];
    for n in 1..=3 {
        out.extend(preorders(n, 6));
    }
    for order in 2..=3 {
        out.extend(monoids(order));
    }
    out.push(FinCategory::parallel_pair());
    // Z/2 beside a point
    out.push(FinCategory::generated(2, &[(0, 0)], |_, _| Some(0)).expect("Z/2 ⊔ •"));
    // an involution t on 0 absorbed by a: 0 → 1
    out.push(
        FinCategory::generated(2, &[(0, 0), (0, 1)], |g, f| match (g, f) {
            (0, 0) => Some(0),
            (1, 0) => Some(3),
            _ => None,
        })
        .expect("involution with absorbing arrow"),
    );
    // an idempotent e on 0 absorbed by a: 0 → 1
    out.push(
        FinCategory::generated(2, &[(0, 0), (0, 1)], |g, f| match (g, f) {
            (0, 0) => Some(2),
            (1, 0) => Some(3),
            _ => None,
        })
        .expect("idempotent with absorbing arrow"),
    );
    // a parallel pair beside a point
    out.push(
        FinCategory::generated(3, &[(0, 1), (0, 1)], |_, _| None).expect("pair beside a point"),
    );
    out
}

/// All functors between members of `corpus`, grouped by ordered pair.
pub fn functor_corpus(corpus: &[FinCategory]) -> Result<Vec<FinFunctor>> {
    let cat = Cat::new();
    let arcs: Vec<Arc<FinCategory>> = corpus.iter().cloned().map(Arc::new).collect();
    let mut out = Vec::new();
    for a in &arcs {
        for b in &arcs {
            out.extend(crate::kernel::Category::homs(&cat, a, b)?);
        }
    }
    Ok(out)
}
