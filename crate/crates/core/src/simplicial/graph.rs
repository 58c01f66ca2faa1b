use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::set::{FinSimplicialSet, SimplicialMap};
use super::simplex::Simplex;
use crate::error::{Error, Result};
use crate::kernel::UnionFind;

/// Path components of the undirected 1-skeleton. Components are numbered by
/// their least vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Components {
    pub count: usize,
    pub label: Vec<usize>,
}

fn edges(x: &FinSimplicialSet) -> impl Iterator<Item = (usize, usize)> + '_ {
    (0..x.count(1)).map(|e| {
        let f = x.faces_of(1, e);
        (f[1].cell, f[0].cell)
    })
}

pub fn pi0(x: &FinSimplicialSet) -> Components {
    let n = x.count(0);
    let mut uf = UnionFind::new(n);
    for (a, b) in edges(x) {
        uf.union(a, b);
    }
    let (count, label) = uf.classes();
    Components { count, label }
}

/// `Π_0 f` as a table on component labels.
pub fn pi0_map(f: &SimplicialMap) -> Vec<usize> {
    let (px, py) = (pi0(&f.source), pi0(&f.target));
    let mut out = vec![0; px.count];
    for (v, img) in f.images.first().into_iter().flatten().enumerate() {
        out[px.label[v]] = py.label[img.cell];
    }
    out
}

pub fn pi0_surjective(f: &SimplicialMap) -> bool {
    let mut hit = vec![false; pi0(&f.target).count];
    for c in pi0_map(f) {
        hit[c] = true;
    }
    hit.into_iter().all(|h| h)
}

/// Largest undirected edge distance between two vertices in one component.
pub fn zigzag_diameter(x: &FinSimplicialSet) -> usize {
    let n = x.count(0);
    let mut adj = vec![Vec::new(); n];
    for (a, b) in edges(x) {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut best = 0;
    for s in 0..n {
        let mut dist = vec![usize::MAX; n];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            best = best.max(dist[v]);
            for &w in &adj[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
    }
    best
}

/// Edge count when `x` is a path whose edges alternate in orientation, so
/// that every inner vertex is the source of both its edges or the target of
/// both.
pub fn linear_zigzag_length(x: &FinSimplicialSet) -> Option<usize> {
    if x.dim().is_some_and(|d| d > 1) || x.count(0) == 0 || pi0(x).count != 1 {
        return None;
    }
    let n = x.count(0);
    if x.count(1) + 1 != n {
        return None;
    }
    let mut out = vec![0usize; n];
    let mut inn = vec![0usize; n];
    for (a, b) in edges(x) {
        if a == b {
            return None;
        }
        out[a] += 1;
        inn[b] += 1;
    }
    let shaped = (0..n).all(|v| out[v] + inn[v] <= 2 && (out[v] == 0 || inn[v] == 0));
    shaped.then_some(n - 1)
}

/// A presheaf on `Δ_1`: edges with endpoints, the first `vertices` edges
/// being the identity loops.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ReflexiveGraph {
    vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl ReflexiveGraph {
    /// Adds an identity loop for every vertex in front of `edges`.
    pub fn new(vertices: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if edges.iter().any(|&(a, b)| a >= vertices || b >= vertices) {
            return Err(Error::invalid("edge endpoint out of range"));
        }
        let mut all: Vec<_> = (0..vertices).map(|v| (v, v)).collect();
        all.extend_from_slice(edges);
        Ok(ReflexiveGraph { vertices, edges: all })
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    /// All edges, identity loops first.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn identity(&self, v: usize) -> usize {
        v
    }

    pub fn non_identity_edges(&self) -> &[(usize, usize)] {
        &self.edges[self.vertices..]
    }

    /// Connected components ignoring orientation.
    pub fn components(&self) -> usize {
        let mut uf = UnionFind::new(self.vertices);
        let mut count = self.vertices;
        for &(a, b) in self.non_identity_edges() {
            if uf.find(a) != uf.find(b) {
                uf.union(a, b);
                count -= 1;
            }
        }
        count
    }
}

/// Left Kan extension along `Δ_1 -> Δ`: identity loops become degenerate.
pub fn skeleton(g: &ReflexiveGraph) -> FinSimplicialSet {
    let v = |c| Simplex::nondegenerate(c, 0);
    let edges: Vec<Vec<Simplex>> = g.non_identity_edges().iter().map(|&(a, b)| vec![v(b), v(a)]).collect();
    let mut faces = vec![vec![Vec::new(); g.vertices]];
    if !edges.is_empty() {
        faces.push(edges);
    }
    FinSimplicialSet::from_faces_unchecked(faces)
}

/// `A_n`: vertices `0..=n`, an edge `i -> i+1` for each `i < n`.
pub fn graph_a(n: usize) -> ReflexiveGraph {
    let edges: Vec<_> = (0..n).map(|i| (i, i + 1)).collect();
    ReflexiveGraph::new(n + 1, &edges).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::constructions::{standard_simplex, zigzag};

    #[test]
    fn small_components() {
        for n in 0..4 {
            assert_eq!(pi0(&standard_simplex(n).unwrap()).count, 1);
        }
        for n in 0..=5 {
            let z = zigzag(n);
            assert_eq!(pi0(&z).count, 1);
            assert_eq!(zigzag_diameter(&z), 2 * n);
        }
        let two = FinSimplicialSet::from_faces_unchecked(vec![vec![vec![], vec![]]]);
        assert_eq!(pi0(&two).count, 2);
        assert_eq!(linear_zigzag_length(&zigzag(3)), Some(6));
        assert_eq!(linear_zigzag_length(&skeleton(&graph_a(2))), None);
    }

    #[test]
    fn skeleta() {
        let loop_only = ReflexiveGraph::new(1, &[]).unwrap();
        assert_eq!(skeleton(&loop_only), standard_simplex(0).unwrap());
        let a3 = skeleton(&graph_a(3));
        a3.validate().unwrap();
        assert_eq!(a3.counts(), vec![4, 3]);
        assert_eq!(pi0(&a3).count, 1);
        assert_eq!(graph_a(3).edges()[..4], [(0, 0), (1, 1), (2, 2), (3, 3)]);
    }
}
