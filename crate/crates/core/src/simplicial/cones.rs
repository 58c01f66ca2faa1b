use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::constructions::{boundary, constant, product, product_map, standard_simplex, vertex, zigzag};
use super::graph::zigzag_diameter;
use super::search::SSet;
use super::set::{FinSimplicialSet, SimplicialMap};
use super::subdivision::Tower;
use crate::error::{Error, Result};
use crate::kernel::{ArrowCategory, Category, FiniteColimits, Pushout, SquareMorphism};
use crate::lifting::{cone_injective, Cone, ConeVerdict};

pub type Square = SquareMorphism<SimplicialMap>;

/// `RH_n` with its two maps `l_n, r_n: Δ_n -> RH_n`.
#[derive(Debug, Clone)]
pub struct RelHomotopy {
    pub n: usize,
    pub j: SimplicialMap,
    pub apex: Arc<FinSimplicialSet>,
    /// `Δ_n × Δ_1 -> RH_n`.
    pub quotient: SimplicialMap,
    pub l: SimplicialMap,
    pub r: SimplicialMap,
}

pub fn rh(n: usize) -> Result<RelHomotopy> {
    let (_, j) = boundary(n)?;
    let (bd, delta) = (j.source.clone(), j.target.clone());
    let d1 = Arc::new(standard_simplex(1)?);
    let pb = product(&bd, &d1)?;
    let pd = product(&delta, &d1)?;
    let j1 = product_map(&j, &SimplicialMap::identity(d1.clone()), &pb, &pd)?;
    let po = SSet::default().pushout(&pb.left, &j1)?;
    let id = SimplicialMap::identity(delta.clone());
    let end = |v| po.right.after(&pd.pairing(&id, &constant(&delta, &d1, v))?);
    Ok(RelHomotopy {
        n,
        j,
        apex: po.apex.clone(),
        l: end(0)?,
        r: end(1)?,
        quotient: po.right,
    })
}

/// `α_n = (j_n, r_n): j_n -> l_n`.
pub fn alpha(h: &RelHomotopy) -> Result<Square> {
    SquareMorphism::new(&SSet::default(), h.j.clone(), h.l.clone(), h.j.clone(), h.r.clone())
}

fn empty_to_point() -> Result<SimplicialMap> {
    Ok(SimplicialMap::from_empty(Arc::new(standard_simplex(0)?)))
}

/// The squares `(!_0, j_0): !_0 -> j_{2n}` for `n = 0..=n_max`.
pub fn cone_pi0(n_max: usize) -> Result<Vec<Square>> {
    let bang = empty_to_point()?;
    (0..=n_max)
        .map(|n| {
            let z = Arc::new(zigzag(n));
            Ok(SquareMorphism {
                source_arrow: bang.clone(),
                target_arrow: vertex(&z, 2 * n),
                top: bang.clone(),
                bottom: vertex(&z, 0),
            })
        })
        .collect()
}

/// [`cone_pi0`] as a cone for testing `f`; complete once every zigzag needed
/// in the codomain fits.
pub fn pi0_cone_for(f: &SimplicialMap, n_max: usize) -> Result<Cone<Square>> {
    Ok(Cone {
        legs: cone_pi0(n_max)?,
        complete: n_max >= zigzag_diameter(&f.target),
    })
}

/// The family `C_{n,m}`; legs are produced on demand.
#[derive(Debug, Clone)]
pub struct ConeFamilySpec {
    pub n: usize,
    pub m: usize,
    pub rh: RelHomotopy,
}

pub fn cone_cnm(n: usize, m: usize) -> Result<ConeFamilySpec> {
    Ok(ConeFamilySpec { n, m, rh: rh(n)? })
}

/// Legs of `C_{n,m}` for `k = m..=k_max`, with the subdivision towers they
/// were built from.
#[derive(Debug, Clone)]
pub struct ConeFamily {
    pub n: usize,
    pub m: usize,
    /// `Sd_m j_n`.
    pub apex: SimplicialMap,
    pub legs: Vec<Square>,
    pushouts: Vec<Pushout<SimplicialMap, Square>>,
    delta: Tower,
    rh: Tower,
}

impl ConeFamilySpec {
    pub fn materialize(&self, k_max: usize, budget: usize) -> Result<ConeFamily> {
        let m = self.m;
        if k_max < m {
            return Err(Error::invalid("cone legs start at k = m"));
        }
        let h = &self.rh;
        let bd = Tower::new(&h.j.source, k_max)?;
        let delta = Tower::new(&h.j.target, k_max)?;
        let rh = Tower::new(&h.apex, k_max)?;
        let arr = ArrowCategory::new(SSet { budget });
        let apex = bd.map(&h.j, &delta, m)?;
        let mut legs = Vec::new();
        let mut pushouts = Vec::new();
        for k in m..=k_max {
            let sd_j = bd.map(&h.j, &delta, k)?;
            let sd_alpha = SquareMorphism {
                source_arrow: sd_j.clone(),
                target_arrow: delta.map(&h.l, &rh, k)?,
                top: sd_j.clone(),
                bottom: delta.map(&h.r, &rh, k)?,
            };
            let p = SquareMorphism {
                source_arrow: sd_j,
                target_arrow: apex.clone(),
                top: bd.p(k, m)?,
                bottom: delta.p(k, m)?,
            };
            let po = arr.pushout(&p, &sd_alpha)?;
            legs.push(po.left.clone());
            pushouts.push(po);
        }
        Ok(ConeFamily {
            n: self.n,
            m,
            apex,
            legs,
            pushouts,
            delta,
            rh,
        })
    }

    /// The single leg at `k`.
    pub fn materialize_leg(&self, k: usize, budget: usize) -> Result<Square> {
        Ok(self.materialize(k, budget)?.legs.pop().unwrap())
    }
}

impl ConeFamily {
    pub fn leg(&self, k: usize) -> Option<&Square> {
        k.checked_sub(self.m).and_then(|i| self.legs.get(i))
    }

    pub fn k_max(&self) -> usize {
        self.m + self.legs.len() - 1
    }

    /// The map `P_{m,n,k'} -> P_{m,n,k}` induced by `p_{k',k}`, for `k <= k'`.
    pub fn comparison(&self, k: usize, k2: usize, budget: usize) -> Result<Square> {
        if k < self.m || k > k2 || k2 > self.k_max() {
            return Err(Error::invalid(format!("no comparison from leg {k2} to leg {k}")));
        }
        let arr = ArrowCategory::new(SSet { budget });
        let (lo, hi) = (&self.pushouts[k - self.m], &self.pushouts[k2 - self.m]);
        let q = SquareMorphism {
            source_arrow: hi.summands[1].clone(),
            target_arrow: lo.summands[1].clone(),
            top: self.delta.p(k2, k)?,
            bottom: self.rh.p(k2, k)?,
        };
        let u = arr.compose(&lo.right, &q)?;
        arr.pushout_mediate(hi, &lo.left, &u)
    }

    pub fn cone(&self, complete: bool) -> Cone<Square> {
        Cone {
            legs: self.legs.clone(),
            complete,
        }
    }
}

/// One cell of the `is_we_bounded` matrix.
#[derive(Debug, Clone)]
pub struct WeEntry {
    pub n: usize,
    pub m: usize,
    pub cone: Cone<Square>,
    pub verdict: ConeVerdict<Square>,
}

impl WeEntry {
    /// The `k` of the leg used by each witness.
    pub fn leg_k(&self, witness: usize) -> usize {
        self.m + self.verdict.witnesses[witness].leg
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeBounds {
    pub n_max: usize,
    pub m_max: usize,
    pub k_max: usize,
}

/// Cone injectivity of `f` against `C_{n,m}` for `n <= n_max`, `m <= m_max`,
/// legs `m <= k <= k_max`. Only the `n = 0` cones can be exhausted: their legs
/// are zigzags, and once `2^k_max` covers twice the codomain's diameter no
/// further leg adds a factorization.
pub fn is_we_bounded(f: &SimplicialMap, bounds: WeBounds, budget: usize) -> Result<Vec<WeEntry>> {
    let arr = ArrowCategory::new(SSet { budget });
    let diameter = zigzag_diameter(&f.target);
    let mut out = Vec::new();
    for n in 0..=bounds.n_max {
        let spec = cone_cnm(n, 0)?;
        for m in 0..=bounds.m_max.min(bounds.k_max) {
            let spec = ConeFamilySpec { m, ..spec.clone() };
            let family = spec.materialize(bounds.k_max, budget)?;
            let complete = n == 0 && (1usize << bounds.k_max.min(usize::BITS as usize - 2)) >= 2 * diameter;
            let cone = family.cone(complete);
            let verdict = cone_injective(&arr, &cone, f)?;
            out.push(WeEntry { n, m, cone, verdict });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lifting::{replay_cone, Status};
    use crate::simplicial::constructions::standard_simplex;

    const BUDGET: usize = 1 << 22;

    #[test]
    fn rh0_is_interval() {
        let h = rh(0).unwrap();
        let d1 = Arc::new(standard_simplex(1).unwrap());
        let iso = SSet::default().homs(&h.apex, &d1).unwrap();
        assert_eq!(h.apex.counts(), vec![2, 1]);
        assert!(iso.iter().any(|g| g.after(&h.l).unwrap() == vertex(&d1, 0) && g.after(&h.r).unwrap() == vertex(&d1, 1)));
    }

    #[test]
    fn rh1_counts_and_alpha() {
        assert_eq!(rh(1).unwrap().apex.counts(), vec![2, 3, 2]);
        for n in 0..=2 {
            let h = rh(n).unwrap();
            h.apex.validate().unwrap();
            h.l.validate().unwrap();
            alpha(&h).unwrap();
        }
    }

    #[test]
    fn n0_right_face_is_left_face() {
        let fam = cone_cnm(0, 0).unwrap().materialize(3, BUDGET).unwrap();
        for (i, leg) in fam.legs.iter().enumerate() {
            assert_eq!(leg.target_arrow.target.counts(), vec![(1 << i) + 1, 1 << i]);
            assert_eq!(leg.top.target.counts(), vec![1]);
        }
    }

    #[test]
    fn comparisons_are_coherent() {
        let arr = ArrowCategory::new(SSet { budget: BUDGET });
        for (n, m, k_max) in [(0, 0, 3), (1, 0, 2), (1, 1, 2)] {
            let fam = cone_cnm(n, m).unwrap().materialize(k_max, BUDGET).unwrap();
            for k in m..=k_max {
                for k2 in k..=k_max {
                    let c = fam.comparison(k, k2, BUDGET).unwrap();
                    c.validate(&arr.base).unwrap();
                    assert_eq!(&arr.compose(&c, fam.leg(k2).unwrap()).unwrap(), fam.leg(k).unwrap());
                }
            }
        }
    }

    #[test]
    fn we_examples() {
        let arr = ArrowCategory::new(SSet { budget: BUDGET });
        let d0 = Arc::new(standard_simplex(0).unwrap());
        let bounds = WeBounds { n_max: 1, m_max: 1, k_max: 1 };
        for x in [d0.clone(), Arc::new(zigzag(1))] {
            let id = SimplicialMap::identity(x.clone());
            for e in is_we_bounded(&id, bounds, BUDGET).unwrap() {
                assert_eq!(e.verdict.status, Status::Verified);
                assert!(e.verdict.witnesses.iter().all(|w| w.leg == 0));
                assert!(replay_cone(&arr, &e.cone, &id, &e.verdict).unwrap());
            }
        }
        let two = Arc::new(FinSimplicialSet::from_faces_unchecked(vec![vec![vec![], vec![]]]));
        let into_two = vertex(&two, 0);
        let bounds0 = WeBounds { n_max: 0, m_max: 0, k_max: 2 };
        let e = &is_we_bounded(&into_two, bounds0, BUDGET).unwrap()[0];
        assert_eq!(e.verdict.status, Status::RefutedExhaustive);
        assert!(replay_cone(&arr, &e.cone, &into_two, &e.verdict).unwrap());
        let z1 = Arc::new(zigzag(1));
        let end = vertex(&z1, 0);
        let e = &is_we_bounded(&end, bounds0, BUDGET).unwrap()[0];
        assert_eq!(e.verdict.status, Status::Verified);
        let used = (0..e.verdict.witnesses.len()).map(|w| e.leg_k(w)).max();
        assert_eq!(used, Some(1));
    }
}
