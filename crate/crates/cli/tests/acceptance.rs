//! One PASS/FAIL line per acceptance criterion. Every suite goes through the
//! certificate-emitting front end; criteria 9 and 10 reuse all of their jobs.

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::ThreadPool;
use serde_json::Value;
use weqtk::{replay, replay_text, BudgetOverrides, Certificate, Command, FieldSpec, InputDoc, JobSpec, Payload};
use weqtk_core::cat_equivalence::{functor_corpus, small_category_corpus};
use weqtk_core::chain::corpus::random_map as random_chain_map;
use weqtk_core::chain::{BoundedComplex, ChainMap, Field, PrimeField};
use weqtk_core::kernel::{Category, FinSet, FinSetMap};
use weqtk_core::lifting::{AlgInjWitness, Extension, Status};
use weqtk_core::pointed::{Algebra, RConstruction};
use weqtk_core::pure_mono::split_mono_oracle;
use weqtk_core::simplicial::corpus::{random_map as random_sset_map, random_sset};
use weqtk_core::simplicial::{
    linear_zigzag_length, rh, search_maps, standard_simplex, zigzag_diameter, FinSimplicialSet, SSet,
};

const BUDGET: usize = 1 << 22;

struct Suite {
    jobs: Vec<JobSpec>,
    certs: Vec<Certificate>,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Suite {
    fn new() -> Self {
        Suite {
            jobs: Vec::new(),
            certs: Vec::new(),
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn run(&mut self, pool: &ThreadPool, job: JobSpec) -> Certificate {
        let cert = pool.install(|| weqtk::run(&job)).unwrap_or_else(|e| panic!("{} failed: {e}", job.command));
        self.jobs.push(job);
        self.certs.push(cert.clone());
        cert
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok && self.failures.len() < 5 {
            self.failures.push(what());
        }
    }
}

fn job(command: Command, input: InputDoc, o: BudgetOverrides) -> JobSpec {
    JobSpec::new(command, input).unwrap().with_budgets(&o).unwrap()
}

fn verdict(c: &Certificate, name: &str) -> Option<Status> {
    c.verdicts.iter().find(|v| v.name == name).map(|v| v.status)
}

fn all_finset_maps(max: usize) -> Vec<FinSetMap> {
    let fs = FinSet::new();
    let mut out = Vec::new();
    for s in 0..=max {
        for t in 0..=max {
            out.extend(fs.homs(&s, &t).unwrap());
        }
    }
    out
}

fn field_override(p: u32) -> BudgetOverrides {
    BudgetOverrides {
        field: Some(FieldSpec::Prime(p)),
        ..Default::default()
    }
}

fn lifting_vs_injectivity(pool: &ThreadPool) -> Suite {
    let mut s = Suite::new();
    let maps = all_finset_maps(3);
    for j in &maps {
        for g in &maps {
            let input = InputDoc::new(Payload::from_finset_map(g)).against(Payload::from_finset_map(j));
            let c = s.run(pool, job(Command::CheckRlp, input, Default::default()));
            let (a, b) = (verdict(&c, "rlp"), verdict(&c, "arrow-injectivity"));
            s.check(a.is_some() && a == b, || format!("{j:?} vs {g:?}: {a:?} / {b:?}"));
        }
    }
    let finset_pairs = s.certs.len();
    let functors = functor_corpus(&small_category_corpus()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut outcomes = [0usize; 2];
    for _ in 0..200 {
        let j = &functors[rng.gen_range(0..functors.len())];
        let g = &functors[rng.gen_range(0..functors.len())];
        let input = InputDoc::new(Payload::from_fin_functor(g)).against(Payload::from_fin_functor(j));
        let c = s.run(pool, job(Command::CheckRlp, input, Default::default()));
        let (a, b) = (verdict(&c, "rlp"), verdict(&c, "arrow-injectivity"));
        s.check(a.is_some() && a == b, || format!("functor pair: {a:?} / {b:?}"));
        outcomes[usize::from(a == Some(Status::Verified))] += 1;
    }
    s.notes.push(format!(
        "{finset_pairs} FinSet pairs, 200 FinCat pairs ({} lift, {} do not)",
        outcomes[1], outcomes[0]
    ));
    s
}

fn cat_equivalence(pool: &ThreadPool) -> Suite {
    let mut s = Suite::new();
    let functors = functor_corpus(&small_category_corpus()).unwrap();
    let mut equivalences = 0;
    for f in &functors {
        let c = s.run(
            pool,
            job(Command::CheckEquivalence, InputDoc::new(Payload::from_fin_functor(f)), Default::default()),
        );
        let (a, b) = (verdict(&c, "direct"), verdict(&c, "injectivity"));
        s.check(a.is_some() && a == b && a != Some(Status::UnknownAtBound), || {
            format!("functor {f:?}: {a:?} / {b:?}")
        });
        equivalences += usize::from(a == Some(Status::Verified));
    }
    s.notes
        .push(format!("{} functors, {equivalences} equivalences", functors.len()));
    s
}

fn quasi_iso_case<F: Field>(s: &mut Suite, pool: &ThreadPool, m: &ChainMap<F>, p: u32, expect: Option<Status>)
where
    F: weqtk::payload::WireField,
{
    let c = s.run(
        pool,
        job(Command::CheckQuasiIso, InputDoc::new(Payload::from_chain_map(m).unwrap()), field_override(p)),
    );
    let names = ["homology", "enumerative", "linear", "injectivity"];
    let statuses: Vec<_> = names.iter().map(|n| verdict(&c, n)).collect();
    let agree = statuses.iter().all(|v| v.is_some() && *v == statuses[0]);
    s.check(agree && expect.is_none_or(|e| statuses[0] == Some(e)), || {
        format!("over Z/{p}: {statuses:?}, expected {expect:?}")
    });
}

fn quasi_iso(pool: &ThreadPool) -> Suite {
    let mut s = Suite::new();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut qis = 0;
    for i in 0..200 {
        let p = if i % 2 == 0 { 2 } else { 3 };
        let field = PrimeField::new(p).unwrap();
        let m = random_chain_map(&field, &mut rng, 5, 3);
        quasi_iso_case(&mut s, pool, &m, p, None);
        qis += usize::from(s.certs.last().unwrap().status == Status::Verified);
    }
    for p in [2, 3] {
        let field = PrimeField::new(p).unwrap();
        let zero = Arc::new(BoundedComplex::zero(field));
        for n in 0..=3 {
            let sphere = Arc::new(BoundedComplex::sphere(field, n));
            let disk = Arc::new(BoundedComplex::disk(field, n));
            let cases = [
                (ChainMap::zero(sphere.clone(), zero.clone()), Status::RefutedExhaustive),
                (ChainMap::zero(disk.clone(), zero.clone()), Status::Verified),
                (ChainMap::identity(sphere), Status::Verified),
                (ChainMap::identity(disk), Status::Verified),
            ];
            for (m, expect) in cases {
                quasi_iso_case(&mut s, pool, &m, p, Some(expect));
            }
        }
    }
    s.notes
        .push(format!("200 random maps ({qis} quasi-isomorphisms), 32 standard maps"));
    s
}

fn endofunctor_job(gens: &[FinSetMap], carrier: usize, stage_bound: usize, seed: u64) -> JobSpec {
    let o = BudgetOverrides {
        stage_bound: Some(stage_bound),
        ..Default::default()
    };
    let mut j = job(
        Command::FreeInjective,
        InputDoc::new(Payload::from_endofunctor(gens, carrier)),
        o,
    );
    j.seed = seed;
    j
}

fn empty_to_one() -> FinSetMap {
    FinSetMap::new(0, 1, vec![]).unwrap()
}

fn point_to_two() -> FinSetMap {
    FinSetMap::new(1, 2, vec![0]).unwrap()
}

fn free_chain_suite(pool: &ThreadPool) -> Suite {
    let mut s = Suite::new();
    for x in 0..=4usize {
        let c = s.run(pool, endofunctor_job(&[empty_to_one()], x, 3, 40 + x as u64));
        let w = &c.witness;
        let stab = w["stabilized_at"].as_u64().map(|v| v as usize);
        let carrier = stab.and_then(|t| w["stages"][t].as_u64());
        let probes = w["probes"].as_array().cloned().unwrap_or_default();
        let all_verified = c.verdicts.iter().all(|v| v.status == Status::Verified);
        s.check(
            c.status == Status::Verified
                && all_verified
                && verdict(&c, "chain-laws") == Some(Status::Verified)
                && stab.is_some_and(|t| t <= 3)
                && carrier == Some(x as u64 + 1)
                && probes.len() == 20
                && probes.iter().all(|p| p["universal"] == Value::Bool(true)),
            || format!("carrier {x}: stabilized at {stab:?}, free carrier {carrier:?}, {} probes", probes.len()),
        );
    }
    s.notes.push("carriers 0..=4, 20 probes each".into());
    s
}

/// Every choice of one filler per attempt.
fn all_witnesses(r: &RConstruction<FinSet>, n: usize) -> Vec<AlgInjWitness<usize, FinSetMap>> {
    let fs = &r.base;
    let mut tables: Vec<Vec<Vec<Extension<FinSetMap>>>> = vec![Vec::new()];
    for j in &r.generators {
        let mut rows: Vec<Vec<Extension<FinSetMap>>> = vec![Vec::new()];
        for f in fs.homs(&j.source, &n).unwrap() {
            let fillers = fs.extensions(&[(j.clone(), f.clone())], &j.target, &n, None).unwrap();
            rows = rows
                .into_iter()
                .flat_map(|row| {
                    let f = f.clone();
                    fillers.iter().map(move |c| {
                        let mut row = row.clone();
                        row.push(Extension {
                            attempt: f.clone(),
                            filler: c.clone(),
                        });
                        row
                    })
                })
                .collect();
        }
        tables = tables
            .into_iter()
            .flat_map(|t| {
                rows.iter().map(move |row| {
                    let mut t = t.clone();
                    t.push(row.clone());
                    t
                })
            })
            .collect();
    }
    tables
        .into_iter()
        .map(|table| AlgInjWitness {
            carrier: n,
            generators: r.generators.clone(),
            table,
        })
        .collect()
}

fn correspondence(pool: &ThreadPool) -> Suite {
    let mut s = Suite::new();
    let fs = FinSet::new();
    let mut total = 0;
    for gens in [vec![empty_to_one()], vec![point_to_two()]] {
        let r = RConstruction::new(FinSet::new(), gens.clone());
        for n in 0..=3usize {
            let witnesses = all_witnesses(&r, n);
            let mut from_witnesses = BTreeSet::new();
            for w in &witnesses {
                let ok = w.replay(&fs).unwrap();
                let alg = r.algebra_from_witness(w).unwrap();
                let back = r.witness_from_algebra(&alg).unwrap();
                s.check(ok && alg.check_law(&r).is_ok() && back == *w, || {
                    format!("witness on {n} does not round-trip")
                });
                from_witnesses.insert(alg.structure.table.clone());
            }
            let tn = r.stage(&n).unwrap().pushout.apex;
            let mut algebras = 0;
            for st in fs.homs(&tn, &n).unwrap() {
                let alg = Algebra {
                    carrier: n,
                    structure: st,
                };
                if alg.check_law(&r).is_err() {
                    continue;
                }
                algebras += 1;
                let w = r.witness_from_algebra(&alg).unwrap();
                s.check(r.algebra_from_witness(&w).unwrap() == alg, || {
                    format!("algebra on {n} does not round-trip")
                });
                s.check(from_witnesses.contains(&alg.structure.table), || {
                    format!("algebra on {n} has no witness")
                });
            }
            s.check(algebras == witnesses.len() && algebras == from_witnesses.len(), || {
                format!("{algebras} algebras but {} witnesses on {n}", witnesses.len())
            });
            total += algebras;
            let c = s.run(pool, endofunctor_job(&gens, n, 3, 50 + n as u64));
            if c.witness["stabilized_at"].is_u64() {
                s.check(verdict(&c, "round-trip") == Some(Status::Verified), || {
                    format!("free algebra on {n} does not round-trip")
                });
            }
        }
    }
    s.notes.push(format!("{total} algebras across both generator sets"));
    s
}

fn sset(v: &Value) -> Arc<FinSimplicialSet> {
    let faces = serde_json::from_value(v["faces"].clone()).unwrap();
    Arc::new(FinSimplicialSet::new(faces).unwrap())
}

fn sset_input(x: &FinSimplicialSet) -> InputDoc {
    InputDoc::new(Payload::from_simplicial_set(x))
}

fn counts_of(v: &Value) -> Vec<Vec<usize>> {
    serde_json::from_value(v["counts"].clone()).unwrap()
}

fn simplicial_goldens(pool: &ThreadPool) -> Suite {
    let mut s = Suite::new();
    let delta: Vec<_> = (0..=2).map(|n| standard_simplex(n).unwrap()).collect();
    let subdivide = |k: usize| BudgetOverrides {
        k_max: Some(k),
        ..Default::default()
    };

    let c = s.run(pool, job(Command::Subdivide, sset_input(&delta[0]), subdivide(1)));
    s.check(*sset(&c.witness["set"]) == delta[0], || "Sd Δ_0 is not Δ_0".into());
    let c = s.run(pool, job(Command::Subdivide, sset_input(&delta[1]), subdivide(1)));
    let sd1 = sset(&c.witness["set"]);
    s.check(sd1.counts() == [3, 2] && linear_zigzag_length(&sd1) == Some(2), || {
        format!("Sd Δ_1 has counts {:?}", sd1.counts())
    });
    let c = s.run(pool, job(Command::Subdivide, sset_input(&delta[2]), subdivide(1)));
    s.check(sset(&c.witness["set"]).count(0) == 7, || "Sd Δ_2 does not have 7 vertices".into());

    let mut lengths = Vec::new();
    for k in 1..=4 {
        let c = s.run(pool, job(Command::Subdivide, sset_input(&delta[1]), subdivide(k)));
        let sdk = sset(&c.witness["set"]);
        let len = linear_zigzag_length(&sdk);
        s.check(len.is_some() && len == Some(sdk.count(1)), || {
            format!("Sd_{k} Δ_1 is not a zigzag")
        });
        lengths.push(len.unwrap_or(0));
    }
    s.check(lengths == [2, 4, 8, 16], || format!("zigzag lengths {lengths:?}"));

    let rh0 = rh(0).unwrap().apex;
    let d1 = Arc::new(delta[1].clone());
    let isos = search_maps(&rh0, &d1, &[], None, BUDGET)
        .unwrap()
        .into_iter()
        .filter(|f| SSet::default().inverse(f).unwrap().is_some())
        .count();
    s.check(isos == 1, || format!("{isos} isomorphisms RH_0 -> Δ_1"));

    let ex = BudgetOverrides {
        stage_bound: Some(1),
        dim_bound: Some(1),
        ..Default::default()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut corpus: Vec<FinSimplicialSet> = delta.clone();
    while corpus.len() < 10 {
        corpus.push(random_sset(&mut rng, 6));
    }
    for x in &corpus {
        let bound = BudgetOverrides {
            dim_bound: Some(x.dim().unwrap_or(0).max(1)),
            ..ex.clone()
        };
        let c = s.run(pool, job(Command::Ex, sset_input(x), bound));
        let counts = counts_of(&c.witness);
        let q: Vec<Vec<Value>> = serde_json::from_value(c.witness["connecting"][0].clone()).unwrap();
        let hit: BTreeSet<u64> = q[0].iter().filter_map(|v| v["cell"].as_u64()).collect();
        let n = x.count(0);
        s.check(
            counts[1][0] == n && hit.len() == n && q[0].iter().all(|v| v["sigma"].as_array().is_some_and(|a| a.len() == 1)),
            || format!("(Ex X)_0 has {} vertices for |X_0| = {n}", counts[1][0]),
        );
    }

    // a map 0 -> 01 <- 1 into 0 -> 1 is a triple (a, c, b) with a, b <= c
    let mut oracle = 0;
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                oracle += usize::from(a <= c && b <= c);
            }
        }
    }
    let c = s.run(pool, job(Command::Ex, sset_input(&delta[1]), ex));
    let ex1 = sset(&c.witness["stages"][0]).level(1).len();
    s.check(ex1 == oracle, || format!("(Ex Δ_1)_1 has {ex1} simplices, oracle {oracle}"));

    let c = s.run(pool, job(Command::Pi0, sset_input(&sd1), Default::default()));
    s.check(c.witness["source"]["count"] == 1, || "Sd Δ_1 is not connected".into());
    s.notes.push(format!("zigzag lengths {lengths:?}, (Ex Δ_1)_1 = {oracle}"));
    s
}

fn cone_suite(pool: &ThreadPool) -> Suite {
    let mut s = Suite::new();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut outcomes = [0usize; 2];
    let mut instances = 0;
    let we = BudgetOverrides {
        k_max: Some(4),
        ..Default::default()
    };
    while instances < 50 {
        let x = Arc::new(random_sset(&mut rng, 10));
        let y = Arc::new(random_sset(&mut rng, 10));
        if zigzag_diameter(&x) > 4 || zigzag_diameter(&y) > 4 {
            continue;
        }
        let Some(f) = random_sset_map(&mut rng, &x, &y, BUDGET).unwrap() else { continue };
        instances += 1;
        let input = InputDoc::new(Payload::from_simplicial_map(&f));
        let cone = s.run(pool, job(Command::CheckWeSset, input.clone(), we.clone()));
        let pi = s.run(pool, job(Command::Pi0, input, Default::default()));
        let c00 = verdict(&cone, "C_{0,0}");
        let surj = verdict(&pi, "surjective");
        s.check(
            c00.is_some() && c00 == surj && c00 != Some(Status::UnknownAtBound),
            || format!("C_{{0,0}} {c00:?} vs Π_0 {surj:?}"),
        );
        outcomes[usize::from(surj == Some(Status::Verified))] += 1;
    }
    s.notes.push(format!(
        "50 maps ({} Π_0-surjective, {} not)",
        outcomes[1], outcomes[0]
    ));
    s
}

fn pure_mono(pool: &ThreadPool) -> Suite {
    let mut s = Suite::new();
    let o = BudgetOverrides {
        dim_bound: Some(3),
        ..Default::default()
    };
    let maps = all_finset_maps(3);
    for f in &maps {
        let c = s.run(
            pool,
            job(Command::CheckPureMono, InputDoc::new(Payload::from_finset_map(f)), o.clone()),
        );
        let expect = if split_mono_oracle(f) {
            Status::Verified
        } else {
            Status::RefutedExhaustive
        };
        s.check(c.status == expect, || format!("{f:?}: {:?}, oracle {expect:?}", c.status));
    }
    s.notes.push(format!("{} maps", maps.len()));
    s
}

/// Flips one alphanumeric byte inside the witness to another of its class.
fn corrupt(text: &str, rng: &mut ChaCha8Rng) -> String {
    let start = text.find("\"witness\":").expect("witness field") + "\"witness\":".len();
    let positions: Vec<usize> = text.as_bytes()[start..]
        .iter()
        .enumerate()
        .filter(|(_, b)| b.is_ascii_alphanumeric())
        .map(|(i, _)| start + i)
        .collect();
    let at = positions[rng.gen_range(0..positions.len())];
    let mut bytes = text.as_bytes().to_vec();
    let b = bytes[at];
    bytes[at] = match b {
        b'0'..=b'8' | b'a'..=b'y' | b'A'..=b'Y' => b + 1,
        b'9' => b'0',
        b'z' => b'a',
        _ => b'A',
    };
    String::from_utf8(bytes).unwrap()
}

fn line(n: usize, name: &str, ok: bool, detail: &str) -> bool {
    println!("criterion {n:>2}: {} {name}: {detail}", if ok { "PASS" } else { "FAIL" });
    ok
}

fn main() {
    let pool = |n| rayon::ThreadPoolBuilder::new().num_threads(n).build().unwrap();
    let (one, eight) = (pool(1), pool(8));
    type SuiteFn = fn(&ThreadPool) -> Suite;
    let suites: [(&str, SuiteFn, u64); 8] = [
        ("lifting agrees with arrow injectivity", lifting_vs_injectivity, 120),
        ("categorical equivalence", cat_equivalence, 600),
        ("quasi-isomorphism four-way agreement", quasi_iso, 600),
        ("free chain for the empty generator", free_chain_suite, 120),
        ("algebraic injective correspondence", correspondence, 60),
        ("simplicial goldens", simplicial_goldens, 300),
        ("components and the zigzag cone", cone_suite, 300),
        ("pure monomorphisms", pure_mono, 60),
    ];
    let mut passed = 0;
    let mut ran = Vec::new();
    for (i, (name, suite, limit)) in suites.into_iter().enumerate() {
        let t = Instant::now();
        let s = suite(&eight);
        let elapsed = t.elapsed();
        let in_time = elapsed <= Duration::from_secs(limit);
        let mut detail = format!("{}; {:.2?} (limit {limit}s)", s.notes.join("; "), elapsed);
        if !s.failures.is_empty() {
            detail.push_str(&format!("; failures: {}", s.failures.join(" | ")));
        }
        passed += usize::from(line(i + 1, name, s.failures.is_empty() && in_time, &detail));
        ran.push(s);
    }

    let t = Instant::now();
    let mut differing = Vec::new();
    let mut total = 0;
    for s in &ran {
        for (j, c) in s.jobs.iter().zip(&s.certs) {
            total += 1;
            let again = one.install(|| weqtk::run(j)).unwrap();
            if again.to_json().unwrap() != c.to_json().unwrap() {
                differing.push(j.command.name());
            }
        }
    }
    passed += usize::from(line(
        9,
        "determinism across 1 and 8 threads",
        differing.is_empty(),
        &format!("{total} certificates, {} differ {:?}; {:.2?}", differing.len(), differing.first(), t.elapsed()),
    ));

    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let (mut replayed, mut rejected) = (0, 0);
    let mut leaks = Vec::new();
    for c in ran.iter().flat_map(|s| &s.certs) {
        replayed += usize::from(eight.install(|| replay(c)).unwrap());
        let bad = corrupt(&c.to_json().unwrap(), &mut rng);
        match eight.install(|| replay_text(&bad)) {
            Ok(false) => rejected += 1,
            other => {
                if leaks.len() < 3 {
                    leaks.push(format!("{}: {other:?}", c.command));
                }
            }
        }
    }
    passed += usize::from(line(
        10,
        "replay and tamper detection",
        replayed == total && rejected == total,
        &format!("{replayed}/{total} replay, {rejected}/{total} corrupted rejected {leaks:?}; {:.2?}", t.elapsed()),
    ));
    println!("acceptance: {passed}/10 criteria pass");
    if passed != 10 {
        std::process::exit(1);
    }
}
