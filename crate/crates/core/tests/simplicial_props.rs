use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use weqtk_core::kernel::{ArrowCategory, Category};
use weqtk_core::lifting::{cone_injective, replay_cone, Status};
use weqtk_core::simplicial::corpus::{random_map, random_sset};
use weqtk_core::simplicial::{
    cone_cnm, ex_infty, graph_a, linear_zigzag_length, pi0, pi0_cone_for, pi0_surjective, product, rh, sd_k,
    search_maps, skeleton, standard_simplex, zigzag, Ex, FinSimplicialSet, ReflexiveGraph, SSet, SimplicialMap,
    Subdivision,
};

const BUDGET: usize = 1 << 22;

type Set = Arc<FinSimplicialSet>;

fn sets(seed: u64, count: usize, max_cells: usize) -> Vec<Set> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| Arc::new(random_sset(&mut rng, max_cells))).collect()
}

fn composable(seed: u64, max_cells: usize) -> Option<(SimplicialMap, SimplicialMap)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x = Arc::new(random_sset(&mut rng, max_cells));
    let y = Arc::new(random_sset(&mut rng, max_cells));
    let z = Arc::new(random_sset(&mut rng, max_cells));
    let f = random_map(&mut rng, &x, &y, BUDGET).unwrap()?;
    let g = random_map(&mut rng, &y, &z, BUDGET).unwrap()?;
    Some((f, g))
}

fn check_sd(f: &SimplicialMap, g: &SimplicialMap) {
    let sx = Subdivision::new(&f.source).unwrap();
    let sy = Subdivision::new(&f.target).unwrap();
    let sz = Subdivision::new(&g.target).unwrap();
    let sdf = sx.map(f, &sy).unwrap();
    let sdg = sy.map(g, &sz).unwrap();
    sdf.validate().unwrap();
    assert_eq!(sx.map(&g.after(f).unwrap(), &sz).unwrap(), sdg.after(&sdf).unwrap());
    let id = SimplicialMap::identity(f.source.clone());
    assert_eq!(sx.map(&id, &sx).unwrap(), SimplicialMap::identity(sx.set.clone()));
    assert_eq!(sy.last_vertex.after(&sdf).unwrap(), f.after(&sx.last_vertex).unwrap());
}

fn check_ex(f: &SimplicialMap, g: &SimplicialMap, bound: usize) {
    let ex = |x: &Set| Ex::new(x, bound, BUDGET).unwrap();
    let (ex_x, ex_y, ex_z) = (ex(&f.source), ex(&f.target), ex(&g.target));
    let exf = ex_x.map(f, &ex_y).unwrap();
    let exg = ex_y.map(g, &ex_z).unwrap();
    exf.validate().unwrap();
    assert_eq!(ex_x.map(&g.after(f).unwrap(), &ex_z).unwrap(), exg.after(&exf).unwrap());
    let id = SimplicialMap::identity(f.source.clone());
    assert_eq!(ex_x.map(&id, &ex_x).unwrap(), SimplicialMap::identity(ex_x.set.clone()));
    let (qx, qy) = (ex_x.q().unwrap(), ex_y.q().unwrap());
    assert_eq!(exf.after(qx).unwrap(), qy.after(f).unwrap());
}

fn check_adjunction(x: &Set, y: &Set) {
    let sd_x = Subdivision::new(x).unwrap();
    let ex_y = Ex::new(y, x.dim().unwrap_or(0), BUDGET).unwrap();
    let left = search_maps(&sd_x.set, y, &[], None, BUDGET).unwrap();
    let right = search_maps(x, &ex_y.set, &[], None, BUDGET).unwrap();
    assert_eq!(left.len(), right.len());
    let mut images = std::collections::HashSet::new();
    for g in &left {
        let t = ex_y.transpose(g, &sd_x).unwrap();
        t.validate().unwrap();
        assert_eq!(&ex_y.untranspose(&t, &sd_x).unwrap(), g);
        assert!(images.insert(t));
    }
    assert!(right.iter().all(|h| images.contains(h)));
}

#[test]
fn subdivision_is_functorial_and_p_is_natural() {
    let mut checked = 0;
    for seed in 0..40 {
        if let Some((f, g)) = composable(seed, 8) {
            check_sd(&f, &g);
            checked += 1;
        }
    }
    assert!(checked >= 30);
}

#[test]
fn ex_is_functorial_and_q_is_natural() {
    let mut checked = 0;
    for seed in 100..125 {
        if let Some((f, g)) = composable(seed, 7) {
            check_ex(&f, &g, 2);
            checked += 1;
        }
    }
    assert!(checked >= 15);
}

#[test]
fn adjunction_is_a_bijection() {
    let xs = sets(5, 12, 10);
    let ys = sets(6, 12, 10);
    for (x, y) in xs.iter().zip(&ys) {
        check_adjunction(x, y);
    }
}

#[test]
fn transpose_of_p_is_q() {
    for x in sets(9, 15, 10) {
        let sd = Subdivision::new(&x).unwrap();
        let ex = Ex::new(&x, x.dim().unwrap_or(0), BUDGET).unwrap();
        assert_eq!(&ex.transpose(&sd.last_vertex, &sd).unwrap(), ex.q().unwrap());
    }
}

#[test]
fn ex_level_zero_is_vertices() {
    for x in sets(11, 10, 10) {
        let ex = Ex::new(&x, 1, BUDGET).unwrap();
        assert_eq!(ex.set.level(0).len(), x.count(0));
        assert_eq!(ex.set.level(0).len(), x.level(0).len());
    }
}

fn golden(name: &str) -> Vec<usize> {
    let path = format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(path)
        .unwrap()
        .split_whitespace()
        .map(|t| t.parse().unwrap())
        .collect()
}

#[test]
fn interval_edges_in_ex_match_enumeration() {
    // a map from 0 -> 01 <- 1 into 0 -> 1 is a triple (a, c, b) with a, b <= c
    let mut oracle = 0;
    for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                oracle += usize::from(a <= c && b <= c);
            }
        }
    }
    let d1 = Arc::new(standard_simplex(1).unwrap());
    let ex = Ex::new(&d1, 1, BUDGET).unwrap();
    assert_eq!(ex.set.level(1).len(), oracle);
    assert_eq!(oracle, 5);
}

#[test]
fn golden_counts() {
    let d1 = Arc::new(standard_simplex(1).unwrap());
    let chain = ex_infty(&d1, 2, 1, BUDGET).unwrap();
    for (q, ex) in chain.connecting.iter().zip(&chain.functors) {
        q.validate().unwrap();
        ex.set.validate().unwrap();
    }
    let ex2 = &chain.stages[2];
    assert_eq!(vec![ex2.level(0).len(), ex2.level(1).len()], golden("ex2_delta1_levels.txt"));
    assert_eq!(rh(1).unwrap().apex.counts(), golden("rh1_counts.txt"));
}

#[test]
fn subdivided_simplices() {
    let d0 = Arc::new(standard_simplex(0).unwrap());
    assert_eq!(*sd_k(&d0, 1).unwrap(), *d0);
    let d1 = Arc::new(standard_simplex(1).unwrap());
    assert_eq!(sd_k(&d1, 1).unwrap().counts(), vec![3, 2]);
    let d2 = Arc::new(standard_simplex(2).unwrap());
    assert_eq!(sd_k(&d2, 1).unwrap().count(0), 7);
}

#[test]
fn iterated_subdivision_of_interval_is_a_zigzag() {
    // Sd of a graph is the nerve of its cell poset: vertices and edges
    // become vertices, and each edge contributes two new edges.
    let (mut v, mut e) = (2usize, 1usize);
    let d1 = Arc::new(standard_simplex(1).unwrap());
    for k in 0..=4 {
        let s = sd_k(&d1, k).unwrap();
        assert_eq!(s.counts(), vec![v, e]);
        assert_eq!(linear_zigzag_length(&s), Some(e));
        (v, e) = (v + e, 2 * e);
    }
}

#[test]
fn components_of_products_multiply() {
    let xs = sets(21, 20, 8);
    for pair in xs.chunks(2) {
        let p = product(&pair[0], &pair[1]).unwrap();
        assert_eq!(pi0(&p.apex).count, pi0(&pair[0]).count * pi0(&pair[1]).count);
    }
    let d0 = Arc::new(standard_simplex(0).unwrap());
    for x in &xs {
        let p = product(&d0, x).unwrap();
        assert!(SSet::default().inverse(&p.right).unwrap().is_some());
    }
}

#[test]
fn skeleton_components_match_graph() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        use rand::Rng;
        let n = rng.gen_range(1..7);
        let edges: Vec<(usize, usize)> =
            (0..rng.gen_range(0..6)).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect();
        let g = ReflexiveGraph::new(n, &edges).unwrap();
        let s = skeleton(&g);
        s.validate().unwrap();
        assert_eq!(pi0(&s).count, g.components());
    }
    let a = skeleton(&graph_a(3));
    assert_eq!((a.counts(), pi0(&a).count), (vec![4, 3], 1));
}

#[test]
fn c00_legs_are_the_zigzag_cone() {
    let fam = cone_cnm(0, 0).unwrap().materialize(3, BUDGET).unwrap();
    let sset = SSet::default();
    for k in 1..=3 {
        let leg = fam.leg(k).unwrap();
        let n = 1 << (k - 1);
        let z = Arc::new(zigzag(n));
        let p = leg.target_arrow.target.clone();
        let ends = [
            (leg.target_arrow.clone(), weqtk_core::simplicial::constructions::vertex(&z, 0)),
            (leg.bottom.clone(), weqtk_core::simplicial::constructions::vertex(&z, 2 * n)),
        ];
        let isos: Vec<_> = sset
            .extensions(&ends, &p, &z, None)
            .unwrap()
            .into_iter()
            .filter(|g| sset.inverse(g).unwrap().is_some())
            .collect();
        assert_eq!(isos.len(), 1);
    }
}

#[test]
fn zigzag_cone_detects_component_surjectivity() {
    let arr = ArrowCategory::new(SSet { budget: BUDGET });
    let mut rng = ChaCha8Rng::seed_from_u64(44);
    let mut outcomes = [0, 0];
    for _ in 0..40 {
        let x = Arc::new(random_sset(&mut rng, 5));
        let y = Arc::new(random_sset(&mut rng, 8));
        let Some(f) = random_map(&mut rng, &x, &y, BUDGET).unwrap() else { continue };
        let cone = pi0_cone_for(&f, 4).unwrap();
        assert!(cone.complete);
        let v = cone_injective(&arr, &cone, &f).unwrap();
        assert_ne!(v.status, Status::UnknownAtBound);
        assert_eq!(v.is_verified(), pi0_surjective(&f));
        assert!(replay_cone(&arr, &cone, &f, &v).unwrap());
        outcomes[usize::from(v.is_verified())] += 1;
    }
    assert!(outcomes[0] > 3 && outcomes[1] > 3, "{outcomes:?}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn sd_functoriality(seed in any::<u64>()) {
        if let Some((f, g)) = composable(seed, 7) {
            check_sd(&f, &g);
        }
    }

    #[test]
    fn ex_naturality(seed in any::<u64>()) {
        if let Some((f, g)) = composable(seed, 5) {
            check_ex(&f, &g, 1.max(f.source.dim().unwrap_or(0)).max(f.target.dim().unwrap_or(0)));
        }
    }

    #[test]
    fn adjunction(seed in any::<u64>()) {
        let xs = sets(seed, 2, 8);
        check_adjunction(&xs[0], &xs[1]);
    }
}
