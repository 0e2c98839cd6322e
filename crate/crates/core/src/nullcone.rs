//! Null-cone strata of a highest-weight module: characteristics, open-orbit
//! tests, the closure order with certificates, and stabilizer types.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use itertools::Itertools;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::convex::{self, HullVerdict, Metric};
use crate::error::{Error, Result};
use crate::hwmod::{stabilizer_in_g, Weight, WeightModule};
use crate::liealg::LieAlgebra;
use crate::linalg::{self, Vector};
use crate::orbits::task_seed;
use crate::rational::Rat;
use crate::rootsys::{unit, CartanVector, RootSystem, WeylPermutation};
#[cfg(test)]
use crate::rootsys::SimpleType;
use crate::sparse::SparseMat;
use crate::subalg::{self, SemisimpleType};

/// Redraws of the random point before an open-orbit test gives up.
pub const OPEN_ORBIT_BUDGET: usize = 20;
pub const OPEN_ORBIT_RANGE: i64 = 100;
/// Distinct dominant candidates tolerated before enumeration is abandoned.
pub const CANDIDATE_BUDGET: usize = 1_000_000;

/// A characteristic `h` of a stratum together with the stratum dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Characteristic {
    pub h: CartanVector,
    pub stratum_dim: usize,
    pub norm_sq: Rat,
}

/// Outcome of the open-orbit test on `V_2(h)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OpenOrbit {
    /// A point whose `z(h)`-orbit is open, certified by the rank.
    Open(Vector),
    Undetermined,
}

/// A module of a simple Lie algebra together with everything the null-cone
/// algorithms need.
pub struct NullCone {
    pub g: LieAlgebra,
    pub module: WeightModule,
    rep: Vec<SparseMat>,
    metric: Metric,
}

impl NullCone {
    pub fn new(g: LieAlgebra, highest_weight: &[i64], max_dim: usize) -> Result<NullCone> {
        let module = WeightModule::new(&g.roots, highest_weight, max_dim)?;
        let rep = g.represent(&module);
        let l = g.rank();
        let metric = Metric::new(
            (0..l)
                .map(|i| (0..l).map(|j| g.roots.killing_pair(&unit(l, i), &unit(l, j))).collect())
                .collect(),
        );
        Ok(NullCone { g, module, rep, metric })
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    pub fn metric(&self) -> &Metric {
        &self.metric
    }

    pub fn representation(&self) -> &[SparseMat] {
        &self.rep
    }

    pub fn weight_value(&self, b: usize, h: &[Rat]) -> Rat {
        RootSystem::weight_value(&self.module.weights[b], h)
    }

    /// Basis of `V_2(h)`.
    pub fn v2(&self, h: &[Rat]) -> Vec<usize> {
        self.module.eigenslice(h, &Rat::int(2))
    }

    /// Basis of `V_{>=2}(h)`.
    pub fn v_geq2(&self, h: &[Rat]) -> Vec<usize> {
        self.module.eigenslice_at_least(h, &Rat::int(2))
    }

    /// Action of `x in g` on a module vector.
    pub fn act(&self, x: &[Rat], v: &[Rat]) -> Vector {
        let mut out = linalg::zero_vec(self.dim());
        for (b, c) in x.iter().enumerate() {
            if !c.is_zero() {
                linalg::axpy(&mut out, c, &self.rep[b].apply(v));
            }
        }
        out
    }

    /// Basis indices of `g` spanning the centralizer `z(h)` of a Cartan element.
    pub fn centralizer_basis(&self, h: &[Rat]) -> Vec<usize> {
        let nr = self.g.roots.num_roots();
        (0..self.g.dim())
            .filter(|&b| b >= nr || self.g.roots.root_value(b, h).is_zero())
            .collect()
    }

    /// `dim` of the parabolic `p(h) = sum of g_t(h), t >= 0`.
    pub fn parabolic_dim(&self, h: &[Rat]) -> usize {
        let nr = self.g.roots.num_roots();
        self.g.rank() + (0..nr).filter(|&k| !self.g.roots.root_value(k, h).is_negative()).count()
    }

    pub fn stratum_dim(&self, h: &[Rat]) -> usize {
        self.v_geq2(h).len() + self.g.dim() - self.parabolic_dim(h)
    }

    /// Shortest `h` with `v in V_{>=2}(h)` among elements of the fixed Cartan
    /// subalgebra, from the nearest point of the hull of the support weights.
    pub fn characteristic_of_vector(&self, v: &[Rat]) -> Result<Option<CartanVector>> {
        let support: BTreeSet<&Weight> = (0..self.dim())
            .filter(|&b| !v[b].is_zero())
            .map(|b| &self.module.weights[b])
            .collect();
        if support.is_empty() {
            return Err(Error::Hypothesis("characteristic of the zero vector".into()));
        }
        let pts: Vec<Vector> = support.into_iter().map(|w| self.g.roots.weight_to_cartan(w)).collect();
        let near = convex::nearest_point(&pts, &self.metric);
        let n = self.metric.norm_sq(&near.point);
        if n.is_zero() {
            return Ok(None);
        }
        let f = &Rat::int(2) / &n;
        Ok(Some(linalg::scale(&near.point, &f)))
    }

    /// Random point of `V_2(h)` whose `z(h)`-orbit is open, if one is found.
    pub fn open_orbit_check(&self, h: &[Rat], rng: &mut ChaCha8Rng) -> Result<OpenOrbit> {
        let v2 = self.v2(h);
        if v2.is_empty() {
            return Err(Error::Hypothesis("V_2(h) is empty".into()));
        }
        let zh = self.centralizer_basis(h);
        for _ in 0..OPEN_ORBIT_BUDGET {
            let mut v = linalg::zero_vec(self.dim());
            for &b in &v2 {
                v[b] = Rat::int(rng.gen_range(-OPEN_ORBIT_RANGE..=OPEN_ORBIT_RANGE));
            }
            if self.orbit_is_open(&zh, &v2, &v) {
                return Ok(OpenOrbit::Open(v));
            }
        }
        Ok(OpenOrbit::Undetermined)
    }

    /// `dim z(h).v = dim V_2(h)`, certified by a rank modulo the prime.
    fn orbit_is_open(&self, zh: &[usize], v2: &[usize], v: &[Rat]) -> bool {
        let rows: Vec<Vector> = zh
            .iter()
            .map(|&b| {
                let img = self.rep[b].apply(v);
                v2.iter().map(|&c| img[c].clone()).collect()
            })
            .collect();
        linalg::rank_mod_p(&rows) == v2.len()
    }

    /// Exact version of the open-orbit rank condition, for replaying witnesses.
    pub fn orbit_is_open_exact(&self, h: &[Rat], v: &[Rat]) -> bool {
        let v2 = self.v2(h);
        let zh = self.centralizer_basis(h);
        let rows: Vec<Vector> = zh.iter().map(|&b| self.rep[b].apply(v)).collect();
        v2.iter().all(|&c| self.weight_value(c, h) == Rat::int(2))
            && (0..self.dim()).all(|c| v[c].is_zero() || v2.contains(&c))
            && linalg::rank(&rows, self.dim()) == v2.len()
    }

    fn describe(&self, h: CartanVector) -> Characteristic {
        let norm_sq = self.metric.norm_sq(&h);
        let stratum_dim = self.stratum_dim(&h);
        Characteristic { h, stratum_dim, norm_sq }
    }

    /// Characteristics of the strata, sorted by stratum dimension and norm.
    ///
    /// Candidates are the shortest solutions of `mu(x) = 2` over independent
    /// sets of weights, up to the Weyl group. A candidate is kept when a random
    /// vector of full support in `V_{>=2}(h)` has characteristic `h`, and a
    /// generic point of `V_2(h)` is not swept out by a shorter characteristic.
    pub fn characteristics_of_strata(&self, seed: u64) -> Result<Vec<Characteristic>> {
        let mut cands: Vec<Characteristic> = self
            .candidate_characteristics()?
            .into_iter()
            .map(|h| self.describe(h))
            .collect();
        cands.sort_by(|a, b| (&a.norm_sq, &a.h).cmp(&(&b.norm_sq, &b.h)));
        let mut rng = ChaCha8Rng::seed_from_u64(task_seed(seed, 0));
        let mut accepted: Vec<(Characteristic, Orbit)> = Vec::new();
        for (k, c) in cands.into_iter().enumerate() {
            if !self.hull_validates(&c.h, &mut rng)? {
                continue;
            }
            let swept = accepted
                .iter()
                .filter(|(a, _)| a.norm_sq < c.norm_sq)
                .any(|(_, orbit)| self.swept_by(&c.h, orbit, task_seed(seed, k as u64 + 1)));
            if !swept {
                let orbit = Orbit::new(&self.g.roots, &c.h);
                accepted.push((c, orbit));
            }
        }
        let mut out: Vec<Characteristic> = accepted.into_iter().map(|(c, _)| c).collect();
        out.sort_by(|a, b| (a.stratum_dim, &a.norm_sq, &a.h).cmp(&(b.stratum_dim, &b.norm_sq, &b.h)));
        Ok(out)
    }

    /// A random vector of full support in `V_{>=2}(h)` has characteristic
    /// conjugate to `h`.
    fn hull_validates(&self, h: &[Rat], rng: &mut ChaCha8Rng) -> Result<bool> {
        let mut v = linalg::zero_vec(self.dim());
        for b in self.v_geq2(h) {
            let c = rng.gen_range(1..=OPEN_ORBIT_RANGE);
            v[b] = Rat::int(if rng.gen() { c } else { -c });
        }
        Ok(match self.characteristic_of_vector(&v)? {
            Some(found) => self.g.roots.dominant_representative(&found).0 == h,
            None => false,
        })
    }

    /// Whether `Z(h) (V_2(h) cap V_{>=2}(w h'))` is dense in `V_2(h)` for some
    /// `w h'` in the orbit, certified by a full rank modulo the prime.
    fn swept_by(&self, h: &[Rat], orbit: &Orbit, seed: u64) -> bool {
        let v2 = self.v2(h);
        let zh = self.centralizer_basis(h);
        let sets = orbit.distinct_slices(&self.module.weights, &v2);
        sets.par_iter().enumerate().any(|(i, (u, _))| {
            let mut rng = ChaCha8Rng::seed_from_u64(task_seed(seed, i as u64));
            let mut v = linalg::zero_vec(self.dim());
            for &b in u {
                v[b] = Rat::int(rng.gen_range(-OPEN_ORBIT_RANGE..=OPEN_ORBIT_RANGE));
            }
            let mut rows: Vec<Vector> = zh
                .iter()
                .map(|&b| {
                    let img = self.rep[b].apply(&v);
                    v2.iter().map(|&c| img[c].clone()).collect()
                })
                .collect();
            for &b in u {
                rows.push(v2.iter().map(|&c| if c == b { Rat::ONE } else { Rat::ZERO }).collect());
            }
            linalg::rank_mod_p(&rows) == v2.len()
        })
    }

    /// Dominant candidates from all independent weight sets of size at most
    /// the rank, enumerated up to the Weyl group.
    pub fn candidate_characteristics(&self) -> Result<Vec<CartanVector>> {
        let rs = &self.g.roots;
        let l = rs.rank();
        let weights: Vec<Weight> = self
            .module
            .weights
            .iter()
            .filter(|w| w.iter().any(|&x| x != 0))
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let n = weights.len();
        let gram_q: Vec<Vec<Rat>> = weights
            .iter()
            .map(|a| {
                weights
                    .iter()
                    .map(|b| RootSystem::weight_value(a, &rs.weight_to_cartan(b)))
                    .collect()
            })
            .collect();
        let mut scale: i128 = 1;
        for row in &gram_q {
            for x in row {
                let d: i128 = x.to_big().denom().try_into().map_err(|_| Error::TooLarge("form denominator".into()))?;
                scale = lcm(scale, d);
            }
        }
        let gram: Vec<Vec<i128>> = gram_q
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| {
                        let y = x * &Rat::from_i128(scale, 1);
                        y.to_big().numer().try_into().expect("scaled form is integral")
                    })
                    .collect()
            })
            .collect();
        let ctx = Enumeration {
            weights: &weights,
            gram: &gram,
            scale,
            cartan: &rs.cartan,
            max_size: l,
        };
        let mut tasks: Vec<Vec<usize>> = Vec::new();
        for (i, w) in weights.iter().enumerate() {
            if w.iter().all(|&x| x >= 0) {
                tasks.push(vec![i]);
                for (j, u) in weights.iter().enumerate() {
                    let stab_dominant = w.iter().zip(u).all(|(&a, &b)| a != 0 || b >= 0);
                    if j != i && stab_dominant {
                        tasks.push(vec![i, j]);
                    }
                }
            }
        }
        let found: Vec<HashSet<(Vec<i128>, i128)>> = tasks
            .par_iter()
            .map(|t| {
                let mut set = HashSet::new();
                if t.len() == 1 {
                    ctx.record(t, &mut set);
                } else {
                    let mut cur = t.clone();
                    ctx.extend(&mut cur, 0, n, &mut set);
                }
                set
            })
            .collect();
        let mut all: HashSet<(Vec<i128>, i128)> = HashSet::new();
        for s in found {
            all.extend(s);
            if all.len() > CANDIDATE_BUDGET {
                return Err(Error::TooLarge(format!("more than {CANDIDATE_BUDGET} candidate characteristics")));
            }
        }
        let mut out: Vec<CartanVector> = all
            .into_iter()
            .map(|(num, den)| {
                let num64: Vec<i64> = num.iter().map(|&x| x as i64).collect();
                let h = rs.weight_to_cartan(&num64);
                linalg::scale(&h, &Rat::from_i128(1, den))
            })
            .collect();
        out.sort();
        Ok(out)
    }
}

/// Random points drawn per slice before the closure test turns to certificates.
pub const CLOSURE_DRAWS: usize = 5;
pub const CLOSURE_RANGE: i64 = 30;
/// Subsets of `V_2(h)` basis vectors tried when searching for a representative.
pub const REPRESENTATIVE_BUDGET: usize = 200_000;

/// Certified answer to whether one stratum lies in the closure of another.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum InclusionCertificate {
    /// `u` lies in `V_2(h_small) cap V_{>=2}(w h_big)` and its
    /// `z(h_small)`-orbit is open in `V_2(h_small)`.
    Included { w: WeylPermutation, image: CartanVector, u: Vector },
    /// One separator per distinct slice `V_2(h_small) cap V_{>=2}(w h_big)`.
    NotIncluded { separators: Vec<SliceSeparator> },
}

impl InclusionCertificate {
    pub fn is_included(&self) -> bool {
        matches!(self, InclusionCertificate::Included { .. })
    }
}

/// Normal vector strictly separating `tau h_small` from the hull of the
/// weights of a slice, for the first orbit point `image` producing it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SliceSeparator {
    pub image: CartanVector,
    pub slice: Vec<usize>,
    pub normal: Vector,
}

/// Closure order on the strata.
#[derive(Clone, Debug, Serialize)]
pub struct HasseDiagram {
    pub nodes: Vec<Characteristic>,
    /// All pairs `(a, b)` with stratum `a` in the closure of stratum `b`.
    pub inclusions: Vec<(usize, usize)>,
    /// Covering relations.
    pub edges: Vec<(usize, usize)>,
    /// Certificate for every compared pair.
    #[serde(skip)]
    pub certificates: Vec<((usize, usize), InclusionCertificate)>,
}

impl HasseDiagram {
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph closures {\n  rankdir=BT;\n");
        for (i, n) in self.nodes.iter().enumerate() {
            out.push_str(&format!("  S{} [label=\"S{} (dim {})\"];\n", i + 1, i + 1, n.stratum_dim));
        }
        for (a, b) in &self.edges {
            out.push_str(&format!("  S{} -> S{};\n", a + 1, b + 1));
        }
        out.push_str("}\n");
        out
    }
}

/// Stabilizer `s + t ⋉ u` of a point: semisimple type, torus rank, unipotent dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilizerType {
    pub semisimple: SemisimpleType,
    pub torus_rank: usize,
    pub unipotent_dim: usize,
}

impl StabilizerType {
    pub fn dim(&self) -> usize {
        self.semisimple.dim() + self.torus_rank + self.unipotent_dim
    }
}

impl fmt::Display for StabilizerType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if !self.semisimple.is_empty() {
            parts.push(self.semisimple.to_string());
        }
        if self.torus_rank > 0 {
            parts.push(format!("T{}", self.torus_rank));
        }
        let unipotent = format!("U{}", self.unipotent_dim);
        match (parts.is_empty(), self.unipotent_dim > 0) {
            (true, true) => write!(f, "{unipotent}"),
            (true, false) => write!(f, "0"),
            (false, true) => write!(f, "{} ⋉ {unipotent}", parts.join("+")),
            (false, false) => write!(f, "{}", parts.join("+")),
        }
    }
}

/// A stratum with a representative and the type of its stabilizer.
#[derive(Clone, Debug, Serialize)]
pub struct StabilizerRow {
    pub stratum: Characteristic,
    /// Basis indices of `V_2(h)` whose sum is the representative.
    pub representative: Vec<usize>,
    pub stabilizer_dim: usize,
    pub stabilizer: StabilizerType,
}

impl NullCone {
    /// Decides whether the stratum of `small` lies in the closure of the
    /// stratum of `big`, returning an error when neither random witnesses nor
    /// hull certificates settle it.
    pub fn closure_includes(&self, small: &[Rat], big: &[Rat], seed: u64) -> Result<InclusionCertificate> {
        let mut rng = ChaCha8Rng::seed_from_u64(task_seed(seed, 0));
        for h in [small, big] {
            if self.open_orbit_check(h, &mut rng)? == OpenOrbit::Undetermined {
                return Err(Error::Hypothesis(format!("no open orbit found in V_2 of {}", show(h))));
            }
        }
        let v2 = self.v2(small);
        let zh = self.centralizer_basis(small);
        let orbit = Orbit::new(&self.g.roots, big);
        let slices = orbit.distinct_slices(&self.module.weights, &v2);
        let witness = slices.par_iter().enumerate().find_map_first(|(i, (u, k))| {
            let mut rng = ChaCha8Rng::seed_from_u64(task_seed(seed, i as u64 + 1));
            (0..CLOSURE_DRAWS).find_map(|_| {
                let mut v = linalg::zero_vec(self.dim());
                for &b in u {
                    v[b] = Rat::int(rng.gen_range(-CLOSURE_RANGE..=CLOSURE_RANGE));
                }
                self.orbit_is_open(&zh, &v2, &v).then(|| InclusionCertificate::Included {
                    w: orbit.element(*k).clone(),
                    image: orbit.point(*k),
                    u: v,
                })
            })
        });
        if let Some(cert) = witness {
            return Ok(cert);
        }
        let target = self.hull_target(small);
        let separators: Vec<Option<SliceSeparator>> = slices
            .par_iter()
            .map(|(u, k)| {
                match convex::hull_contains(&self.slice_points(u), &target, &self.metric) {
                    HullVerdict::Outside(normal) => Some(SliceSeparator {
                        image: orbit.point(*k),
                        slice: u.clone(),
                        normal,
                    }),
                    HullVerdict::Inside(_) => None,
                }
            })
            .collect();
        let separators: Option<Vec<SliceSeparator>> = separators.into_iter().collect();
        separators.map(|separators| InclusionCertificate::NotIncluded { separators }).ok_or_else(|| {
            Error::Undetermined(format!("closure of {} in {}", show(small), show(big)))
        })
    }

    /// `tau h` with `(h, tau h) = 2`.
    fn hull_target(&self, h: &[Rat]) -> CartanVector {
        let tau = &Rat::int(2) / &self.metric.norm_sq(h);
        linalg::scale(h, &tau)
    }

    fn slice_points(&self, slice: &[usize]) -> Vec<Vector> {
        slice
            .iter()
            .map(|&b| self.module.weights[b].clone())
            .collect::<BTreeSet<Weight>>()
            .iter()
            .map(|w| self.g.roots.weight_to_cartan(w))
            .collect()
    }

    /// Replays a certificate exactly.
    pub fn verify_inclusion(&self, small: &[Rat], big: &[Rat], cert: &InclusionCertificate) -> bool {
        let v2 = self.v2(small);
        match cert {
            InclusionCertificate::Included { w, image, u } => {
                let geq = self.v_geq2(image);
                self.g.roots.weyl_act_cartan(w, big) == *image
                    && (0..self.dim()).all(|b| u[b].is_zero() || (v2.contains(&b) && geq.contains(&b)))
                    && self.orbit_is_open_exact(small, u)
            }
            InclusionCertificate::NotIncluded { separators } => {
                let orbit = Orbit::new(&self.g.roots, big);
                let target = self.hull_target(small);
                let slices = orbit.distinct_slices(&self.module.weights, &v2);
                slices.len() == separators.len()
                    && slices.iter().zip(separators).all(|((u, k), sep)| {
                        *u == sep.slice
                            && orbit.point(*k) == sep.image
                            && convex::verify_hull_verdict(
                                &self.slice_points(u),
                                &target,
                                &self.metric,
                                &HullVerdict::Outside(sep.normal.clone()),
                            )
                    })
            }
        }
    }

    /// Closure order on the given strata. Strata of equal dimension are
    /// incomparable; every other pair must be decided.
    pub fn hasse_diagram(&self, nodes: Vec<Characteristic>, seed: u64) -> Result<HasseDiagram> {
        let n = nodes.len();
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| nodes[a].stratum_dim < nodes[b].stratum_dim)
            .collect();
        let certs: Vec<InclusionCertificate> = pairs
            .par_iter()
            .map(|&(a, b)| {
                let s = task_seed(seed, (a * n + b) as u64);
                self.closure_includes(&nodes[a].h, &nodes[b].h, s)
            })
            .collect::<Result<_>>()?;
        let certificates: Vec<((usize, usize), InclusionCertificate)> = pairs.into_iter().zip(certs).collect();
        let inclusions: Vec<(usize, usize)> =
            certificates.iter().filter(|(_, c)| c.is_included()).map(|(p, _)| *p).collect();
        let rel: HashSet<(usize, usize)> = inclusions.iter().copied().collect();
        for &(a, b) in &inclusions {
            for c in 0..n {
                if rel.contains(&(b, c)) && !rel.contains(&(a, c)) {
                    return Err(Error::Inconsistent(format!(
                        "closure order is not transitive at S{}, S{}, S{}",
                        a + 1,
                        b + 1,
                        c + 1
                    )));
                }
            }
        }
        let edges = inclusions
            .iter()
            .copied()
            .filter(|&(a, b)| !(0..n).any(|c| rel.contains(&(a, c)) && rel.contains(&(c, b))))
            .collect();
        Ok(HasseDiagram { nodes, inclusions, edges, certificates })
    }

    /// `g_v` split as `s + t ⋉ u`.
    pub fn stabilizer_type(&self, v: &[Rat]) -> Result<StabilizerType> {
        let gv = stabilizer_in_g(&self.rep, v);
        let (levi, radical) = subalg::levi_decomposition(&self.g, &gv)?;
        let semisimple = subalg::semisimple_type(&self.g, &levi)?;
        let unipotent = subalg::unipotent_part(&self.g, &radical);
        Ok(StabilizerType {
            semisimple,
            torus_rank: radical.dim() - unipotent.dim(),
            unipotent_dim: unipotent.dim(),
        })
    }

    /// Sum of the fewest basis vectors of `V_2(h)` lying in the open
    /// `z(h)`-orbit and having a stabilizer of recognisable type.
    pub fn stratum_representative(&self, h: &[Rat]) -> Result<(Vec<usize>, StabilizerType)> {
        let v2 = self.v2(h);
        let zh = self.centralizer_basis(h);
        let mut tried = 0;
        for k in 1..=v2.len() {
            for subset in v2.iter().copied().combinations(k) {
                tried += 1;
                if tried > REPRESENTATIVE_BUDGET {
                    return Err(Error::RetryExhausted(format!("no representative for {}", show(h))));
                }
                let v = self.sum_of_basis(&subset);
                if !self.orbit_is_open(&zh, &v2, &v) {
                    continue;
                }
                if let Ok(t) = self.stabilizer_type(&v) {
                    return Ok((subset, t));
                }
            }
        }
        Err(Error::RetryExhausted(format!("no representative for {}", show(h))))
    }

    pub fn sum_of_basis(&self, subset: &[usize]) -> Vector {
        let mut v = linalg::zero_vec(self.dim());
        for &b in subset {
            v[b] = Rat::ONE;
        }
        v
    }

    /// Representative and stabilizer type for every stratum.
    pub fn stabilizer_table(&self, strata: &[Characteristic]) -> Result<Vec<StabilizerRow>> {
        strata
            .par_iter()
            .map(|c| {
                let (representative, stabilizer) = self.stratum_representative(&c.h)?;
                let stabilizer_dim = stabilizer.dim();
                if stabilizer_dim + c.stratum_dim != self.g.dim() {
                    return Err(Error::Inconsistent(format!(
                        "stabilizer of dimension {stabilizer_dim} for a stratum of dimension {}",
                        c.stratum_dim
                    )));
                }
                Ok(StabilizerRow { stratum: c.clone(), representative, stabilizer_dim, stabilizer })
            })
            .collect()
    }
}

/// Cartan coordinates as a parenthesised list of rationals.
pub fn show(h: &[Rat]) -> String {
    let parts: Vec<String> = h.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

/// Weyl orbit of a Cartan element, scaled to integers, in breadth-first order.
pub struct Orbit {
    den: i64,
    points: Vec<Vec<i64>>,
    elements: Vec<WeylPermutation>,
}

impl Orbit {
    pub fn new(rs: &RootSystem, h: &[Rat]) -> Orbit {
        let den = h.iter().fold(1i128, |acc, x| {
            let d: i128 = x.to_big().denom().try_into().expect("small denominator");
            lcm(acc, d)
        });
        let start: Vec<i64> = h
            .iter()
            .map(|x| {
                let y = x * &Rat::from_i128(den, 1);
                y.to_i64().expect("integral after scaling")
            })
            .collect();
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        seen.insert(start.clone());
        let mut points = vec![start];
        let mut elements = vec![rs.identity()];
        let mut k = 0;
        while k < points.len() {
            for i in 0..rs.rank() {
                let a: i64 = rs.cartan[i].iter().zip(&points[k]).map(|(c, x)| c * x).sum();
                if a == 0 {
                    continue;
                }
                let mut p = points[k].clone();
                p[i] -= a;
                if seen.insert(p.clone()) {
                    elements.push(rs.simple_reflection(i).compose(&elements[k]));
                    points.push(p);
                }
            }
            k += 1;
        }
        Orbit { den: den as i64, points, elements }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, k: usize) -> CartanVector {
        self.points[k].iter().map(|&x| Rat::new(x, self.den)).collect()
    }

    pub fn element(&self, k: usize) -> &WeylPermutation {
        &self.elements[k]
    }

    /// Distinct nonempty sets `{b in slice : mu_b(w h) >= 2}` over the orbit,
    /// each with the first orbit index producing it.
    pub fn distinct_slices(&self, weights: &[Weight], slice: &[usize]) -> Vec<(Vec<usize>, usize)> {
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let mut out = Vec::new();
        for (k, p) in self.points.iter().enumerate() {
            let u: Vec<usize> = slice
                .iter()
                .copied()
                .filter(|&b| weights[b].iter().zip(p).map(|(m, x)| m * x).sum::<i64>() >= 2 * self.den)
                .collect();
            if !u.is_empty() && seen.insert(u.clone()) {
                out.push((u, k));
            }
        }
        out
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn lcm(a: i128, b: i128) -> i128 {
    a / gcd(a, b) * b
}

struct Enumeration<'a> {
    weights: &'a [Weight],
    gram: &'a [Vec<i128>],
    scale: i128,
    cartan: &'a [Vec<i64>],
    max_size: usize,
}

impl Enumeration<'_> {
    /// Depth-first over supersets of `cur` using weights with index >= `from`.
    fn extend(&self, cur: &mut Vec<usize>, from: usize, n: usize, set: &mut HashSet<(Vec<i128>, i128)>) {
        if !self.record(cur, set) {
            return;
        }
        if cur.len() == self.max_size {
            return;
        }
        for k in from..n {
            if cur.contains(&k) {
                continue;
            }
            cur.push(k);
            self.extend(cur, k + 1, n, set);
            cur.pop();
        }
    }

    /// Records the dominant shortest solution for an independent set;
    /// returns false when the set is dependent.
    fn record(&self, s: &[usize], set: &mut HashSet<(Vec<i128>, i128)>) -> bool {
        let Some((y, den)) = self.solve(s) else {
            return false;
        };
        let l = self.cartan.len();
        let mut num = vec![0i128; l];
        for (c, &i) in y.iter().zip(s) {
            for (x, &m) in num.iter_mut().zip(&self.weights[i]) {
                *x += c * m as i128;
            }
        }
        let (mut num, mut den) = (num, den);
        if den < 0 {
            den = -den;
            num.iter_mut().for_each(|x| *x = -*x);
        }
        let g = num.iter().fold(den, |acc, &x| gcd(acc, x));
        num.iter_mut().for_each(|x| *x /= g);
        den /= g;
        while let Some(i) = num.iter().position(|&x| x < 0) {
            let c = num[i];
            for (x, &a) in num.iter_mut().zip(&self.cartan[i]) {
                *x -= c * a as i128;
            }
        }
        set.insert((num, den));
        true
    }

    /// Solves `G c = 2` on the chosen weights by fraction-free elimination;
    /// returns `den * c` and `den`.
    fn solve(&self, s: &[usize]) -> Option<(Vec<i128>, i128)> {
        let k = s.len();
        let mut a: Vec<Vec<i128>> = s
            .iter()
            .map(|&i| {
                let mut r: Vec<i128> = s.iter().map(|&j| self.gram[i][j]).collect();
                r.push(2 * self.scale);
                r
            })
            .collect();
        let mut prev = 1i128;
        for col in 0..k {
            let p = (col..k).find(|&r| a[r][col] != 0)?;
            a.swap(p, col);
            for r in col + 1..k {
                for c in col + 1..=k {
                    a[r][c] = (a[r][c] * a[col][col] - a[r][col] * a[col][c]) / prev;
                }
                a[r][col] = 0;
            }
            prev = a[col][col];
        }
        let den = a[k - 1][k - 1];
        let mut y = vec![0i128; k];
        for i in (0..k).rev() {
            let mut num = den * a[i][k];
            for j in i + 1..k {
                num -= a[i][j] * y[j];
            }
            y[i] = num / a[i][i];
        }
        Some((y, den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cone(t: &str, hw: &[i64]) -> NullCone {
        NullCone::new(LieAlgebra::parse(t).unwrap(), hw, 1000).unwrap()
    }

    #[test]
    fn sl2_adjoint() {
        let nc = cone("A1", &[2]);
        let strata = nc.characteristics_of_strata(3).unwrap();
        assert_eq!(strata.len(), 1);
        assert_eq!(strata[0].stratum_dim, 2);
        assert_eq!(strata[0].h, vec![Rat::int(1)]);
        let mut x = linalg::zero_vec(3);
        x[nc.v2(&strata[0].h)[0]] = Rat::ONE;
        assert_eq!(nc.characteristic_of_vector(&x).unwrap(), Some(strata[0].h.clone()));
        assert!(nc.characteristic_of_vector(&linalg::zero_vec(3)).is_err());
    }

    #[test]
    fn binary_cubics() {
        let nc = cone("A1", &[3]);
        let strata = nc.characteristics_of_strata(5).unwrap();
        let dims: Vec<usize> = strata.iter().map(|c| c.stratum_dim).collect();
        assert_eq!(dims, [2, 3]);
        let cert = nc.closure_includes(&strata[0].h, &strata[1].h, 1).unwrap();
        assert!(cert.is_included());
        assert!(nc.verify_inclusion(&strata[0].h, &strata[1].h, &cert));
        let back = nc.closure_includes(&strata[1].h, &strata[0].h, 1).unwrap();
        assert!(!back.is_included());
        assert!(nc.verify_inclusion(&strata[1].h, &strata[0].h, &back));
        let types: Vec<String> = nc
            .stabilizer_table(&strata)
            .unwrap()
            .iter()
            .map(|r| r.stabilizer.to_string())
            .collect();
        assert_eq!(types, ["U1", "0"]);
    }

    #[test]
    fn sl3_adjoint_closure_order() {
        let nc = cone("A2", &[1, 1]);
        let strata = nc.characteristics_of_strata(2).unwrap();
        let dims: Vec<usize> = strata.iter().map(|c| c.stratum_dim).collect();
        assert_eq!(dims, [4, 6]);
        let hd = nc.hasse_diagram(strata, 9).unwrap();
        assert_eq!(hd.edges, [(0, 1)]);
        assert!(hd.to_dot().contains("S1 -> S2"));
        let self_inc = nc.closure_includes(&hd.nodes[0].h, &hd.nodes[0].h, 4).unwrap();
        match &self_inc {
            InclusionCertificate::Included { w, .. } => assert_eq!(*w, nc.g.roots.identity()),
            other => panic!("expected inclusion, got {other:?}"),
        }
    }

    #[test]
    fn orbit_of_regular_element_is_the_whole_group() {
        let rs = RootSystem::build('B', 3).unwrap();
        let rho: CartanVector = vec![Rat::new(1, 2), Rat::int(3), Rat::new(7, 3)];
        assert!((0..rs.num_roots()).all(|k| !rs.root_value(k, &rho).is_zero()));
        let orbit = Orbit::new(&rs, &rho);
        assert_eq!(orbit.len(), 48);
        for k in [0, 7, 47] {
            assert_eq!(rs.weyl_act_cartan(orbit.element(k), &rho), orbit.point(k));
        }
    }

    #[test]
    fn stabilizer_type_format() {
        let t = StabilizerType {
            semisimple: SemisimpleType(vec![SimpleType::new('B', 2).unwrap()]),
            torus_rank: 1,
            unipotent_dim: 25,
        };
        assert_eq!(t.to_string(), "B2+T1 ⋉ U25");
        assert_eq!(t.dim(), 36);
    }
}
