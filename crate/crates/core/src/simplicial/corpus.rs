//! Seeded random simplicial sets of dimension at most 2 and maps between them.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use super::search::search_maps;
use super::set::{FinSimplicialSet, SimplicialMap};
use super::simplex::Simplex;
use crate::error::Result;

/// Vertices, edges (possibly loops) and triangles filling some commuting
/// triples, at most `max_cells` nondegenerate simplices in all.
pub fn random_sset<R: Rng>(rng: &mut R, max_cells: usize) -> FinSimplicialSet {
    let max_cells = max_cells.max(1);
    let verts = rng.gen_range(1..=max_cells.min(4));
    let mut room = max_cells - verts;
    let mut pairs: Vec<(usize, usize)> = (0..verts)
        .flat_map(|a| (0..verts).map(move |b| (a, b)))
        .filter(|&(a, b)| a != b)
        .collect();
    pairs.shuffle(rng);
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let wanted = rng.gen_range(0..=room.min(pairs.len()));
    for &(a, b) in pairs.iter().take(wanted) {
        if !edges.contains(&(b, a)) || rng.gen_bool(0.3) {
            edges.push((a, b));
        }
    }
    if room > edges.len() && rng.gen_bool(0.15) {
        let v = rng.gen_range(0..verts);
        edges.push((v, v));
    }
    edges.sort();
    room -= edges.len();
    let v = |c| Simplex::nondegenerate(c, 0);
    let e = |c| Simplex::nondegenerate(c, 1);
    let find = |a, b| edges.iter().position(|&p| p == (a, b));
    let mut triangles = Vec::new();
    for (i, &(a, b)) in edges.iter().enumerate() {
        for (k, &(b2, c)) in edges.iter().enumerate() {
            if b2 != b || a == b || b == c || a == c {
                continue;
            }
            if let Some(l) = find(a, c) {
                if room > 0 && rng.gen_bool(0.5) {
                    triangles.push(vec![e(k), e(l), e(i)]);
                    room -= 1;
                }
            }
        }
    }
    let mut faces = vec![vec![Vec::new(); verts]];
    faces.push(edges.iter().map(|&(a, b)| vec![v(b), v(a)]).collect());
    faces.push(triangles);
    FinSimplicialSet::new(faces).expect("generated set satisfies the simplicial identities")
}

/// A uniformly chosen map `x -> y`, or `None` when there is none.
pub fn random_map<R: Rng>(
    rng: &mut R,
    x: &Arc<FinSimplicialSet>,
    y: &Arc<FinSimplicialSet>,
    budget: usize,
) -> Result<Option<SimplicialMap>> {
    let homs = search_maps(x, y, &[], None, budget)?;
    Ok(homs.choose(rng).cloned())
}
