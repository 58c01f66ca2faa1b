//! One function per command, each producing a verdict, a witness in wire
//! form, and a structural check of that witness against the library.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use weqtk_core::cat_equivalence::{
    build_cat_inj_squares, is_equivalence_direct, is_equivalence_via_injectivity, EquivalenceFailure,
    EquivalenceWitness, DEFAULT_GUARD,
};
use weqtk_core::chain::quasi_iso::padded_window;
use weqtk_core::chain::{
    build_sdi, induced_on_homology, is_quasi_iso_homology, is_quasi_iso_via_injectivity,
    quasi_iso_condition_enumerative, quasi_iso_condition_linear, ChainCategory, ChainMap, FiniteField,
    PrimeField, Rationals,
};
use weqtk_core::kernel::{ArrowCategory, Cat, Category, FinSet, FinSetMap};
use weqtk_core::lifting::{
    has_rlp, is_injective, replay_cone, replay_injective, replay_rlp, rlp_as_arrow_injectivity, AlgInjWitness,
    Extension, Status,
};
use weqtk_core::pointed::{free_chain, verify_universal_property, Algebra, RConstruction};
use weqtk_core::pure_mono::{build_purity_squares, is_pure_mono_against};
use weqtk_core::simplicial::{
    ex_infty, is_we_bounded, pi0, pi0_map, pi0_surjective, skeleton, Components, FinSimplicialSet, SSet, Simplex,
    SimplicialMap, Tower, WeBounds,
};

use crate::error::{CliError, CliResult};
use crate::job::{Budgets, Command, FieldSpec, JobSpec};
use crate::payload::{MatrixWire, Payload, SSetWire, Scalar, WireField};
use crate::wire::{
    cone_from_wire, cone_to_wire, injectivity_from_wire, injectivity_to_wire, lifting_from_wire, lifting_to_wire,
    ConeWire, ExtensionWire, FunctorTables, InjectivityWire, LiftingWire, SquareWire, WireCat,
};

/// Probe algebras generated per free-injective job.
pub const PROBES: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedVerdict {
    pub name: String,
    pub status: Status,
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub status: Status,
    pub verdicts: Vec<NamedVerdict>,
    pub witness: Value,
}

fn named(name: impl Into<String>, status: Status) -> NamedVerdict {
    NamedVerdict {
        name: name.into(),
        status,
    }
}

fn holds(b: bool) -> Status {
    if b {
        Status::Verified
    } else {
        Status::RefutedExhaustive
    }
}

fn to_value<T: Serialize>(w: &T) -> CliResult<Value> {
    Ok(serde_json::to_value(w)?)
}

fn from_value<T: DeserializeOwned>(v: &Value) -> CliResult<T> {
    Ok(T::deserialize(v)?)
}

fn against(job: &JobSpec) -> CliResult<&Payload> {
    job.input
        .against
        .as_ref()
        .ok_or_else(|| CliError::Parse("check-rlp needs an `against` payload".into()))
}

pub fn execute(job: &JobSpec) -> CliResult<Outcome> {
    let b = &job.budgets;
    let p = &job.input.payload;
    match job.command {
        Command::CheckRlp => match p {
            Payload::FinsetMap { .. } => {
                let c = FinSet { budget: b.search_budget };
                check_rlp(c, &against(job)?.finset_map()?, &p.finset_map()?)
            }
            Payload::FinFunctor { .. } => {
                let c = Cat::with_budget(b.search_budget);
                check_rlp(c, &against(job)?.fin_functor()?, &p.fin_functor()?)
            }
            _ => Err(CliError::Parse(format!("check-rlp does not accept {}", p.kind()))),
        },
        Command::CheckEquivalence => check_equivalence(p),
        Command::CheckQuasiIso => match b.field {
            FieldSpec::Prime(q) => check_quasi_iso(&PrimeField::new(q)?, p, b),
            FieldSpec::Rationals => check_quasi_iso_rational(p),
        },
        Command::CheckWeSset => check_we(p, b),
        Command::CheckPureMono => check_pure_mono(p, b),
        Command::FreeInjective => free_injective(p, b, job.seed),
        Command::Subdivide => subdivide(p, b),
        Command::Ex => ex(p, b),
        Command::Pi0 => pi0_command(p),
    }
}

/// Recomposes the witness of an outcome. `Ok(false)` when it is malformed or
/// fails to recompose.
pub fn check_witness(job: &JobSpec, witness: &Value) -> CliResult<bool> {
    let b = &job.budgets;
    let p = &job.input.payload;
    match job.command {
        Command::CheckRlp => match p {
            Payload::FinsetMap { .. } => {
                let c = FinSet { budget: b.search_budget };
                check_rlp_witness(c, &against(job)?.finset_map()?, &p.finset_map()?, witness)
            }
            _ => {
                let c = Cat::with_budget(b.search_budget);
                check_rlp_witness(c, &against(job)?.fin_functor()?, &p.fin_functor()?, witness)
            }
        },
        Command::CheckEquivalence => check_equivalence_witness(p, witness),
        Command::CheckQuasiIso => match b.field {
            FieldSpec::Prime(q) => check_quasi_iso_witness(&PrimeField::new(q)?, p, b, witness),
            FieldSpec::Rationals => Ok(from_value::<QuasiIsoWitness>(witness)?.injectivity.is_none()),
        },
        Command::CheckWeSset => check_we_witness(p, b, witness),
        Command::CheckPureMono => check_pure_mono_witness(p, b, witness),
        Command::FreeInjective => check_free_witness(p, witness),
        Command::Subdivide => check_subdivide_witness(p, witness),
        Command::Ex => check_ex_witness(p, witness),
        Command::Pi0 => check_pi0_witness(p, witness),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RlpWitness<W> {
    rlp: LiftingWire<W>,
    arrow_injectivity: InjectivityWire<SquareWire<W>>,
}

fn check_rlp<C: WireCat + Clone>(c: C, j: &C::Mor, g: &C::Mor) -> CliResult<Outcome> {
    let lv = has_rlp(&c, j, g)?;
    let arr = ArrowCategory::new(c.clone());
    let iv = is_injective(&arr, &rlp_as_arrow_injectivity(&c, j), g)?;
    let w = RlpWitness {
        rlp: lifting_to_wire(&c, &lv)?,
        arrow_injectivity: injectivity_to_wire(&arr, &iv)?,
    };
    Ok(Outcome {
        status: lv.status,
        verdicts: vec![named("rlp", lv.status), named("arrow-injectivity", iv.status)],
        witness: to_value(&w)?,
    })
}

fn check_rlp_witness<C: WireCat + Clone>(c: C, j: &C::Mor, g: &C::Mor, witness: &Value) -> CliResult<bool> {
    let w: RlpWitness<C::W> = from_value(witness)?;
    let lv = lifting_from_wire(&c, &w.rlp, j, g)?;
    let arr = ArrowCategory::new(c.clone());
    let sq = rlp_as_arrow_injectivity(&c, j);
    let iv = injectivity_from_wire(&arr, &w.arrow_injectivity, &sq, g)?;
    Ok(replay_rlp(&c, j, g, &lv)? && replay_injective(&arr, &sq, g, &iv)?)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "kebab-case", deny_unknown_fields)]
enum DirectWire {
    Equivalence {
        /// `(b, a_b, φ_b, φ_b⁻¹)`.
        essential: Vec<(usize, usize, usize, usize)>,
        /// `(a0, a1, β, α)` with `f(α) = β`.
        preimages: Vec<(usize, usize, usize, usize)>,
    },
    NotEssentiallySurjective {
        object: usize,
    },
    NotFull {
        a0: usize,
        a1: usize,
        morphism: usize,
    },
    NotFaithful {
        first: usize,
        second: usize,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EquivalenceCertWitness {
    direct: DirectWire,
    squares: Vec<InjectivityWire<SquareWire<FunctorTables>>>,
    failing_square: Option<usize>,
}

fn check_equivalence(p: &Payload) -> CliResult<Outcome> {
    let f = p.fin_functor()?;
    let direct = match is_equivalence_direct(&f) {
        Ok(w) => DirectWire::Equivalence {
            essential: w.essential,
            preimages: w.preimages,
        },
        Err(EquivalenceFailure::NotEssentiallySurjective { object }) => DirectWire::NotEssentiallySurjective { object },
        Err(EquivalenceFailure::NotFull { a0, a1, morphism }) => DirectWire::NotFull { a0, a1, morphism },
        Err(EquivalenceFailure::NotFaithful { first, second }) => DirectWire::NotFaithful { first, second },
    };
    let status = holds(matches!(direct, DirectWire::Equivalence { .. }));
    let inj = is_equivalence_via_injectivity(&f, DEFAULT_GUARD)?;
    let arr = ArrowCategory::new(Cat::new());
    let w = EquivalenceCertWitness {
        direct,
        squares: inj
            .squares
            .iter()
            .map(|v| injectivity_to_wire(&arr, v))
            .collect::<CliResult<_>>()?,
        failing_square: inj.failing_square,
    };
    Ok(Outcome {
        status,
        verdicts: vec![named("direct", status), named("injectivity", inj.status)],
        witness: to_value(&w)?,
    })
}

fn check_equivalence_witness(p: &Payload, witness: &Value) -> CliResult<bool> {
    let f = p.fin_functor()?;
    let w: EquivalenceCertWitness = from_value(witness)?;
    if let DirectWire::Equivalence { essential, preimages } = &w.direct {
        let ew = EquivalenceWitness {
            essential: essential.clone(),
            preimages: preimages.clone(),
        };
        if !ew.replay(&f) {
            return Ok(false);
        }
    }
    let squares = build_cat_inj_squares();
    let arr = ArrowCategory::new(Cat::new());
    if w.squares.len() > 3 {
        return Ok(false);
    }
    for (sq, v) in squares.all().into_iter().zip(&w.squares) {
        let v = injectivity_from_wire(&arr, v, sq, &f)?;
        if !replay_injective(&arr, sq, &f, &v)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct HomologyWire {
    degree: i64,
    injective: bool,
    surjective: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CycleWire {
    degree: i64,
    a: Vec<Scalar>,
    b: Vec<Scalar>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EnumerativeWire {
    holds: bool,
    counterexample: Option<CycleWire>,
    enumerated: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DegreeWire {
    degree: i64,
    verdict: InjectivityWire<SquareWire<Vec<MatrixWire>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct QuasiIsoWitness {
    homology: Vec<HomologyWire>,
    linear: bool,
    enumerative: Option<EnumerativeWire>,
    injectivity: Option<Vec<DegreeWire>>,
}

fn homology_wire<F: WireField>(m: &ChainMap<F>) -> Vec<HomologyWire> {
    padded_window(m)
        .into_iter()
        .map(|n| {
            let h = induced_on_homology(m, n);
            HomologyWire {
                degree: n,
                injective: h.injective,
                surjective: h.surjective,
            }
        })
        .collect()
}

fn check_quasi_iso<F: FiniteField + WireField>(field: &F, p: &Payload, b: &Budgets) -> CliResult<Outcome> {
    let m = p.chain_map(field)?;
    let h = is_quasi_iso_homology(&m);
    let lin = quasi_iso_condition_linear(&m);
    let en = quasi_iso_condition_enumerative(&m, b.search_budget)?;
    let inj = is_quasi_iso_via_injectivity(&m, b.search_budget)?;
    let arr = ArrowCategory::new(ChainCategory::with_budget(field.clone(), b.search_budget));
    let scalars = |v: &[F::Elem]| v.iter().map(|e| field.to_scalar(e)).collect::<CliResult<Vec<_>>>();
    let w = QuasiIsoWitness {
        homology: homology_wire(&m),
        linear: lin,
        enumerative: Some(EnumerativeWire {
            holds: en.holds,
            counterexample: en
                .counterexample
                .as_ref()
                .map(|c| {
                    Ok::<_, CliError>(CycleWire {
                        degree: c.degree,
                        a: scalars(&c.a)?,
                        b: scalars(&c.b)?,
                    })
                })
                .transpose()?,
            enumerated: en.enumerated,
        }),
        injectivity: Some(
            inj.degrees
                .iter()
                .map(|(n, v)| {
                    Ok(DegreeWire {
                        degree: *n,
                        verdict: injectivity_to_wire(&arr, v)?,
                    })
                })
                .collect::<CliResult<_>>()?,
        ),
    };
    let status = holds(h);
    Ok(Outcome {
        status,
        verdicts: vec![
            named("homology", status),
            named("enumerative", holds(en.holds)),
            named("linear", holds(lin)),
            named("injectivity", inj.status),
        ],
        witness: to_value(&w)?,
    })
}

fn check_quasi_iso_rational(p: &Payload) -> CliResult<Outcome> {
    let m = p.chain_map(&Rationals)?;
    let h = is_quasi_iso_homology(&m);
    let lin = quasi_iso_condition_linear(&m);
    let w = QuasiIsoWitness {
        homology: homology_wire(&m),
        linear: lin,
        enumerative: None,
        injectivity: None,
    };
    let status = holds(h);
    Ok(Outcome {
        status,
        verdicts: vec![named("homology", status), named("linear", holds(lin))],
        witness: to_value(&w)?,
    })
}

fn check_quasi_iso_witness<F: FiniteField + WireField>(
    field: &F,
    p: &Payload,
    b: &Budgets,
    witness: &Value,
) -> CliResult<bool> {
    let m = p.chain_map(field)?;
    let w: QuasiIsoWitness = from_value(witness)?;
    let arr = ArrowCategory::new(ChainCategory::with_budget(field.clone(), b.search_budget));
    if let Some(c) = w.enumerative.as_ref().and_then(|e| e.counterexample.as_ref()) {
        // a is a cycle and db = fa
        let a: Vec<F::Elem> = c.a.iter().map(|s| field.from_scalar(s)).collect::<CliResult<_>>()?;
        let bv: Vec<F::Elem> = c.b.iter().map(|s| field.from_scalar(s)).collect::<CliResult<_>>()?;
        let (x, y) = (&m.source, &m.target);
        if a.len() != x.rank(c.degree) || bv.len() != y.rank(c.degree + 1) {
            return Ok(false);
        }
        let da = x.d(c.degree).apply(field, &a);
        if da.iter().any(|v| !field.is_zero(v)) || y.d(c.degree + 1).apply(field, &bv) != m.component(c.degree).apply(field, &a) {
            return Ok(false);
        }
    }
    for d in w.injectivity.iter().flatten() {
        let sdi = build_sdi(field.clone(), d.degree)?;
        let v = injectivity_from_wire(&arr, &d.verdict, &sdi.square, &m)?;
        if !replay_injective(&arr, &sdi.square, &m, &v)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WeEntryWire {
    n: usize,
    m: usize,
    legs: usize,
    complete: bool,
    verdict: ConeWire<SquareWire<Vec<Vec<Simplex>>>>,
}

fn we_bounds(b: &Budgets) -> WeBounds {
    WeBounds {
        n_max: b.n_max,
        m_max: b.m_max,
        k_max: b.k_max,
    }
}

/// Refuted if any cone refutes, verified if all verify.
fn aggregate(statuses: impl IntoIterator<Item = Status>) -> Status {
    let mut out = Status::Verified;
    for s in statuses {
        match s {
            Status::RefutedExhaustive => return Status::RefutedExhaustive,
            Status::UnknownAtBound => out = Status::UnknownAtBound,
            Status::Verified => {}
        }
    }
    out
}

fn check_we(p: &Payload, b: &Budgets) -> CliResult<Outcome> {
    let f = p.simplicial_map()?;
    let entries = is_we_bounded(&f, we_bounds(b), b.search_budget)?;
    let arr = ArrowCategory::new(SSet { budget: b.search_budget });
    let wires = entries
        .iter()
        .map(|e| {
            Ok(WeEntryWire {
                n: e.n,
                m: e.m,
                legs: e.cone.legs.len(),
                complete: e.cone.complete,
                verdict: cone_to_wire(&arr, &e.verdict)?,
            })
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(Outcome {
        status: aggregate(entries.iter().map(|e| e.verdict.status)),
        verdicts: entries
            .iter()
            .map(|e| named(format!("C_{{{},{}}}", e.n, e.m), e.verdict.status))
            .collect(),
        witness: to_value(&wires)?,
    })
}

fn check_we_witness(p: &Payload, b: &Budgets, witness: &Value) -> CliResult<bool> {
    let f = p.simplicial_map()?;
    let wires: Vec<WeEntryWire> = from_value(witness)?;
    let entries = is_we_bounded(&f, we_bounds(b), b.search_budget)?;
    if wires.len() != entries.len() {
        return Ok(false);
    }
    let arr = ArrowCategory::new(SSet { budget: b.search_budget });
    for (w, e) in wires.iter().zip(&entries) {
        if (w.n, w.m, w.legs, w.complete) != (e.n, e.m, e.cone.legs.len(), e.cone.complete) {
            return Ok(false);
        }
        let v = cone_from_wire(&arr, &w.verdict, &e.cone.legs, &f)?;
        if !replay_cone(&arr, &e.cone, &f, &v)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PurityWitness {
    size_bound: usize,
    squares: usize,
    failing_square: Option<usize>,
    checked: Vec<InjectivityWire<SquareWire<Vec<usize>>>>,
}

fn check_pure_mono(p: &Payload, b: &Budgets) -> CliResult<Outcome> {
    let f = p.finset_map()?;
    let family = build_purity_squares(b.dim_bound)?;
    let v = is_pure_mono_against(&f, &family)?;
    let arr = ArrowCategory::new(FinSet::new());
    let w = PurityWitness {
        size_bound: v.size_bound,
        squares: family.squares.len(),
        failing_square: v.failing_square,
        checked: v.checked.iter().map(|c| injectivity_to_wire(&arr, c)).collect::<CliResult<_>>()?,
    };
    Ok(Outcome {
        status: v.status,
        verdicts: vec![named("pure-mono", v.status)],
        witness: to_value(&w)?,
    })
}

fn check_pure_mono_witness(p: &Payload, b: &Budgets, witness: &Value) -> CliResult<bool> {
    let f = p.finset_map()?;
    let w: PurityWitness = from_value(witness)?;
    let family = build_purity_squares(b.dim_bound)?;
    if w.size_bound != b.dim_bound || w.squares != family.squares.len() || w.checked.len() > family.squares.len() {
        return Ok(false);
    }
    let arr = ArrowCategory::new(FinSet::new());
    for (sq, c) in family.squares.iter().zip(&w.checked) {
        let v = injectivity_from_wire(&arr, c, sq, &f)?;
        if !replay_injective(&arr, sq, &f, &v)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProbeWire {
    carrier: usize,
    structure: Vec<usize>,
    map: Vec<usize>,
    universal: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FreeWitness {
    stages: Vec<usize>,
    steps: Vec<Vec<usize>>,
    structure: Vec<Vec<usize>>,
    stabilized_at: Option<usize>,
    /// Structure map of the free algebra on `stages[stabilized_at]`.
    algebra: Option<Vec<usize>>,
    /// `fillers[j]` lists `(f, c(j, f))` over attempts in canonical order.
    fillers: Option<Vec<Vec<ExtensionWire<Vec<usize>>>>>,
    round_trip: Option<bool>,
    probes: Vec<ProbeWire>,
}

/// An algebra on `size` with fillers drawn at random, if `size` is injective.
fn random_algebra(
    r: &RConstruction<FinSet>,
    rng: &mut ChaCha8Rng,
    size: usize,
) -> CliResult<Option<Algebra<usize, FinSetMap>>> {
    let fs = &r.base;
    let mut table = Vec::new();
    for j in &r.generators {
        let mut row = Vec::new();
        for f in fs.homs(&j.source, &size)? {
            let ext = fs.extensions(&[(j.clone(), f.clone())], &j.target, &size, None)?;
            if ext.is_empty() {
                return Ok(None);
            }
            let filler = ext[rng.gen_range(0..ext.len())].clone();
            row.push(Extension { attempt: f, filler });
        }
        table.push(row);
    }
    let w = AlgInjWitness {
        carrier: size,
        generators: r.generators.clone(),
        table,
    };
    Ok(Some(r.algebra_from_witness(&w)?))
}

fn free_injective(p: &Payload, b: &Budgets, seed: u64) -> CliResult<Outcome> {
    let (gens, carrier) = p.endofunctor()?;
    let r = RConstruction::new(FinSet { budget: b.search_budget }, gens);
    let result = free_chain(&r, &carrier, b.stage_bound)?;
    let chain = &result.chain;
    let laws = chain.validate(&r).is_ok();
    let mut w = FreeWitness {
        stages: chain.stages.clone(),
        steps: chain.steps.iter().map(|m| m.table.clone()).collect(),
        structure: chain.structure.iter().map(|m| m.table.clone()).collect(),
        stabilized_at: result.stabilized_at,
        algebra: None,
        fillers: None,
        round_trip: None,
        probes: Vec::new(),
    };
    let mut verdicts = vec![named(
        "stabilized",
        if result.algebra.is_some() {
            Status::Verified
        } else {
            Status::UnknownAtBound
        },
    )];
    verdicts.push(named("chain-laws", holds(laws)));
    let Some(alg) = &result.algebra else {
        return Ok(Outcome {
            status: Status::UnknownAtBound,
            verdicts,
            witness: to_value(&w)?,
        });
    };
    let aw = r.witness_from_algebra(alg)?;
    let round_trip = aw.replay(&r.base)? && r.algebra_from_witness(&aw)? == *alg;
    w.algebra = Some(alg.structure.table.clone());
    w.fillers = Some(
        aw.table
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| ExtensionWire {
                        attempt: e.attempt.table.clone(),
                        filler: e.filler.table.clone(),
                    })
                    .collect()
            })
            .collect(),
    );
    w.round_trip = Some(round_trip);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..PROBES {
        let mut probe = None;
        for _ in 0..16 {
            let size = rng.gen_range(1..=4);
            if let Some(a) = random_algebra(&r, &mut rng, size)? {
                probe = Some(a);
                break;
            }
        }
        let Some(probe) = probe else { continue };
        let table: Vec<usize> = (0..carrier).map(|_| rng.gen_range(0..probe.carrier)).collect();
        let f = FinSetMap::new(carrier, probe.carrier, table)?;
        let universal = verify_universal_property(&r, &result, &probe, &f)?;
        w.probes.push(ProbeWire {
            carrier: probe.carrier,
            structure: probe.structure.table.clone(),
            map: f.table,
            universal,
        });
    }
    let universal = w.probes.iter().all(|p| p.universal);
    verdicts.push(named("round-trip", holds(round_trip)));
    verdicts.push(named("universal-property", holds(universal)));
    Ok(Outcome {
        status: holds(laws && round_trip && universal),
        verdicts,
        witness: to_value(&w)?,
    })
}

fn check_free_witness(p: &Payload, witness: &Value) -> CliResult<bool> {
    let (gens, carrier) = p.endofunctor()?;
    let w: FreeWitness = from_value(witness)?;
    let fs = FinSet::new();
    if w.stages.first() != Some(&carrier)
        || w.steps.len() + 1 != w.stages.len()
        || w.structure.len() != w.steps.len()
    {
        return Ok(false);
    }
    for (n, step) in w.steps.iter().enumerate() {
        if FinSetMap::new(w.stages[n], w.stages[n + 1], step.clone()).is_err() {
            return Ok(false);
        }
    }
    let (Some(s), Some(fillers)) = (w.stabilized_at, &w.fillers) else {
        return Ok(w.algebra.is_none() && w.fillers.is_none());
    };
    let Some(&top) = w.stages.get(s) else {
        return Ok(false);
    };
    if fillers.len() != gens.len() {
        return Ok(false);
    }
    let table = gens
        .iter()
        .zip(fillers)
        .map(|(j, row)| {
            row.iter()
                .map(|e| {
                    Ok(Extension {
                        attempt: fs.from_wire(&e.attempt, &j.source, &top)?,
                        filler: fs.from_wire(&e.filler, &j.target, &top)?,
                    })
                })
                .collect::<CliResult<Vec<_>>>()
        })
        .collect::<CliResult<Vec<_>>>()?;
    let aw = AlgInjWitness {
        carrier: top,
        generators: gens,
        table,
    };
    Ok(aw.replay(&fs)?)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "of", rename_all = "kebab-case", deny_unknown_fields)]
enum SubdivideWitness {
    Set {
        counts: Vec<Vec<usize>>,
        set: SSetWire,
        /// The composite of last-vertex maps down to the input.
        last_vertex: Vec<Vec<Simplex>>,
    },
    Map {
        source: SSetWire,
        target: SSetWire,
        images: Vec<Vec<Simplex>>,
    },
}

fn subdivide(p: &Payload, b: &Budgets) -> CliResult<Outcome> {
    let k = b.k_max;
    let w = match p {
        Payload::SimplicialMap { .. } => {
            let f = p.simplicial_map()?;
            let (ts, tt) = (Tower::new(&f.source, k)?, Tower::new(&f.target, k)?);
            let g = ts.map(&f, &tt, k)?;
            SubdivideWitness::Map {
                source: SSetWire::from_core(&g.source),
                target: SSetWire::from_core(&g.target),
                images: g.images,
            }
        }
        _ => {
            let x = Arc::new(p.simplicial_set()?);
            let t = Tower::new(&x, k)?;
            SubdivideWitness::Set {
                counts: t.stages.iter().map(|s| s.counts()).collect(),
                set: SSetWire::from_core(t.stage(k)),
                last_vertex: t.p(k, 0)?.images,
            }
        }
    };
    Ok(Outcome {
        status: Status::Verified,
        verdicts: vec![named("subdivided", Status::Verified)],
        witness: to_value(&w)?,
    })
}

fn check_subdivide_witness(p: &Payload, witness: &Value) -> CliResult<bool> {
    match from_value(witness)? {
        SubdivideWitness::Set {
            counts,
            set,
            last_vertex,
        } => {
            let x = Arc::new(p.simplicial_set()?);
            let top = Arc::new(FinSimplicialSet::new(set.faces)?);
            let ok = counts.first() == Some(&x.counts()) && counts.last() == Some(&top.counts());
            Ok(ok && SimplicialMap::new(top, x, last_vertex).is_ok())
        }
        SubdivideWitness::Map {
            source,
            target,
            images,
        } => {
            p.simplicial_map()?;
            let s = Arc::new(FinSimplicialSet::new(source.faces)?);
            let t = Arc::new(FinSimplicialSet::new(target.faces)?);
            Ok(SimplicialMap::new(s, t, images).is_ok())
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ExWitness {
    counts: Vec<Vec<usize>>,
    stages: Vec<SSetWire>,
    /// `q` from each stage to the next.
    connecting: Vec<Vec<Vec<Simplex>>>,
}

fn ex(p: &Payload, b: &Budgets) -> CliResult<Outcome> {
    let x = Arc::new(p.simplicial_set()?);
    let e = ex_infty(&x, b.stage_bound, b.dim_bound, b.search_budget)?;
    let w = ExWitness {
        counts: e.stages.iter().map(|s| s.counts()).collect(),
        stages: e.stages[1..].iter().map(|s| SSetWire::from_core(s)).collect(),
        connecting: e.connecting.iter().map(|q| q.images.clone()).collect(),
    };
    Ok(Outcome {
        status: Status::Verified,
        verdicts: vec![named("ex", Status::Verified)],
        witness: to_value(&w)?,
    })
}

fn check_ex_witness(p: &Payload, witness: &Value) -> CliResult<bool> {
    let w: ExWitness = from_value(witness)?;
    let mut prev = Arc::new(p.simplicial_set()?);
    if w.stages.len() != w.connecting.len() || w.counts.len() != w.stages.len() + 1 {
        return Ok(false);
    }
    for (i, (s, q)) in w.stages.iter().zip(&w.connecting).enumerate() {
        let next = Arc::new(FinSimplicialSet::new(s.faces.clone())?);
        if w.counts[i] != prev.counts() || SimplicialMap::new(prev, next.clone(), q.clone()).is_err() {
            return Ok(false);
        }
        prev = next;
    }
    Ok(w.counts.last() == Some(&prev.counts()))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Pi0Witness {
    source: Components,
    target: Option<Components>,
    map: Option<Vec<usize>>,
}

fn pi0_command(p: &Payload) -> CliResult<Outcome> {
    let (w, status) = match p {
        Payload::SimplicialMap { .. } => {
            let f = p.simplicial_map()?;
            let w = Pi0Witness {
                source: pi0(&f.source),
                target: Some(pi0(&f.target)),
                map: Some(pi0_map(&f)),
            };
            (w, holds(pi0_surjective(&f)))
        }
        Payload::Graph { .. } => {
            let w = Pi0Witness {
                source: pi0(&skeleton(&p.graph()?)),
                target: None,
                map: None,
            };
            (w, Status::Verified)
        }
        _ => {
            let w = Pi0Witness {
                source: pi0(&p.simplicial_set()?),
                target: None,
                map: None,
            };
            (w, Status::Verified)
        }
    };
    let name = if w.map.is_some() { "surjective" } else { "components" };
    Ok(Outcome {
        status,
        verdicts: vec![named(name, status)],
        witness: to_value(&w)?,
    })
}

/// Labels are onto `0..count` and constant along every edge.
fn labels_fit(x: &FinSimplicialSet, c: &Components) -> bool {
    let onto = c.label.len() == x.count(0)
        && (0..c.count).all(|k| c.label.contains(&k))
        && c.label.iter().all(|&l| l < c.count);
    onto && (0..x.count(1)).all(|e| {
        let f = x.faces_of(1, e);
        c.label[f[0].cell] == c.label[f[1].cell]
    })
}

fn check_pi0_witness(p: &Payload, witness: &Value) -> CliResult<bool> {
    let w: Pi0Witness = from_value(witness)?;
    match p {
        Payload::SimplicialMap { .. } => {
            let f = p.simplicial_map()?;
            let (Some(t), Some(map)) = (&w.target, &w.map) else {
                return Ok(false);
            };
            let fits = labels_fit(&f.source, &w.source) && labels_fit(&f.target, t) && map.len() == w.source.count;
            Ok(fits
                && f.images.first().into_iter().flatten().enumerate().all(|(v, img)| {
                    map.get(w.source.label[v]) == Some(&t.label[img.cell])
                }))
        }
        Payload::Graph { .. } => Ok(labels_fit(&skeleton(&p.graph()?), &w.source)),
        _ => Ok(labels_fit(&p.simplicial_set()?, &w.source)),
    }
}
