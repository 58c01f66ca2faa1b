//! Corrupts spread-out alphanumeric witness bytes of one certificate per command.

use std::sync::Arc;

use weqtk::{replay_text, run, BudgetOverrides, Command, FieldSpec, InputDoc, JobSpec, Payload};
use weqtk_core::cat_equivalence::{functor_corpus, small_category_corpus};
use weqtk_core::chain::{BoundedComplex, ChainMap, PrimeField};
use weqtk_core::kernel::FinSetMap;
use weqtk_core::simplicial::constructions::vertex;
use weqtk_core::simplicial::{standard_simplex, zigzag, ReflexiveGraph};

fn jobs() -> Vec<JobSpec> {
    let job = |c, input, o: BudgetOverrides| JobSpec::new(c, input).unwrap().with_budgets(&o).unwrap();
    let map = |s, t, table: &[usize]| Payload::from_finset_map(&FinSetMap::new(s, t, table.to_vec()).unwrap());
    let functors = functor_corpus(&small_category_corpus()).unwrap();
    let z3 = PrimeField::new(3).unwrap();
    let s1 = Arc::new(BoundedComplex::sphere(z3, 1));
    let d1 = Arc::new(BoundedComplex::disk(z3, 1));
    let z3o = BudgetOverrides {
        field: Some(FieldSpec::Prime(3)),
        ..Default::default()
    };
    let point = vertex(&Arc::new(zigzag(1)), 1);
    let mut out = vec![
        job(Command::CheckRlp, InputDoc::new(map(3, 2, &[0, 1, 1])).against(map(1, 2, &[0])), Default::default()),
        job(Command::CheckRlp, InputDoc::new(map(2, 2, &[0, 0])).against(map(0, 1, &[])), Default::default()),
        job(
            Command::CheckRlp,
            InputDoc::new(Payload::from_fin_functor(&functors[9])).against(Payload::from_fin_functor(&functors[30])),
            Default::default(),
        ),
        job(Command::CheckQuasiIso, InputDoc::new(Payload::from_chain_map(&ChainMap::zero(s1.clone(), d1.clone())).unwrap()), z3o.clone()),
        job(Command::CheckQuasiIso, InputDoc::new(Payload::from_chain_map(&ChainMap::identity(d1)).unwrap()), z3o),
        job(Command::CheckWeSset, InputDoc::new(Payload::from_simplicial_map(&point)), BudgetOverrides {
            k_max: Some(2),
            ..Default::default()
        }),
        job(Command::Pi0, InputDoc::new(Payload::from_simplicial_map(&point)), Default::default()),
        job(Command::Pi0, InputDoc::new(Payload::from_graph(&ReflexiveGraph::new(4, &[(0, 1), (3, 2)]).unwrap())), Default::default()),
        job(Command::CheckPureMono, InputDoc::new(map(2, 3, &[2, 0])), Default::default()),
        job(Command::CheckPureMono, InputDoc::new(map(2, 1, &[0, 0])), Default::default()),
        job(
            Command::FreeInjective,
            InputDoc::new(Payload::from_endofunctor(&[FinSetMap::new(0, 1, vec![]).unwrap()], 2)),
            BudgetOverrides {
                stage_bound: Some(3),
                ..Default::default()
            },
        ),
        job(
            Command::FreeInjective,
            InputDoc::new(Payload::from_endofunctor(&[FinSetMap::new(1, 2, vec![0]).unwrap()], 1)),
            BudgetOverrides {
                stage_bound: Some(2),
                ..Default::default()
            },
        ),
        job(Command::Subdivide, InputDoc::new(Payload::from_simplicial_set(&standard_simplex(1).unwrap())), Default::default()),
        job(Command::Subdivide, InputDoc::new(Payload::from_simplicial_map(&point)), Default::default()),
        job(Command::Ex, InputDoc::new(Payload::from_simplicial_set(&standard_simplex(1).unwrap())), Default::default()),
    ];
    for f in functors.iter().step_by(400) {
        out.push(job(Command::CheckEquivalence, InputDoc::new(Payload::from_fin_functor(f)), Default::default()));
    }
    out
}

#[test]
fn every_witness_byte_is_load_bearing() {
    let mut tried = 0;
    for j in jobs() {
        let text = run(&j).unwrap().to_json().unwrap();
        assert!(replay_text(&text).unwrap(), "{} does not replay", j.command);
        let start = text.find("\"witness\":").unwrap() + 10;
        let positions: Vec<usize> = (start..text.len())
            .filter(|&i| text.as_bytes()[i].is_ascii_alphanumeric())
            .collect();
        let stride = positions.len().div_ceil(120).max(1);
        for &at in positions.iter().step_by(stride) {
            let b = text.as_bytes()[at];
            let repl = match b {
                b'0'..=b'8' | b'a'..=b'y' | b'A'..=b'Y' => b + 1,
                b'9' => b'0',
                _ => b'a',
            };
            let mut bytes = text.clone().into_bytes();
            bytes[at] = repl;
            let bad = String::from_utf8(bytes).unwrap();
            tried += 1;
            assert!(!replay_text(&bad).unwrap(), "{}: byte {at} -> {} accepted", j.command, repl as char);
        }
    }
    assert!(tried > 500, "{tried}");
}
