//! Nilpotent orbits by weighted Dynkin diagram.
//!
//! A diagram is accepted when a generic `e` in `g(2)` satisfies
//! `[g(0), e] = g(2)` and `[e, f] = h` is solvable with `f` in `g(-2)`.
//! Genericity is tested with a random element modulo a large prime; the
//! representative finally kept has small integer coordinates and its rank
//! condition is certified (full rank modulo `p` forces full rank over Q).

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cache::Cache;
use crate::error::{Error, Result};
use crate::hwmod::{weyl_dimension, WeightModule};
use crate::liealg::LieAlgebra;
use crate::linalg::{self, Echelon, Vector};
use crate::modp;
use crate::rational::Rat;
use crate::rootsys::CartanVector;
use crate::sparse::SparseMat;

/// Number of integer draws tried before a diagram's representative search gives up.
pub const RETRY_BUDGET: usize = 50;
/// Integer coefficient range for random draws.
pub const COEFF_RANGE: i64 = 100;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Diagram(pub Vec<u8>);

impl Diagram {
    pub fn labels(&self) -> &[u8] {
        &self.0
    }

    pub fn parse(s: &str) -> Result<Diagram> {
        let body = s.trim().trim_start_matches('[').trim_end_matches(']');
        body.split(',')
            .map(|x| {
                x.trim()
                    .parse::<u8>()
                    .ok()
                    .filter(|v| *v <= 2)
                    .ok_or_else(|| Error::InvalidType(format!("bad diagram label {x:?}")))
            })
            .collect::<Result<Vec<u8>>>()
            .map(Diagram)
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u8::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Cartan element `h` with `alpha_i(h) = labels[i]`.
pub fn cartan_from_labels(g: &LieAlgebra, labels: &[Rat]) -> CartanVector {
    let c: Vec<Vector> = g
        .roots
        .cartan
        .iter()
        .map(|r| r.iter().map(|&x| Rat::int(x)).collect())
        .collect();
    linalg::solve(&c, labels, g.rank()).expect("Cartan matrix is invertible")
}

/// Eigenvalue of `ad h` on each basis vector, for `h` with integral root values.
pub fn basis_degrees(g: &LieAlgebra, h: &[Rat]) -> Result<Vec<i64>> {
    let nr = g.roots.num_roots();
    (0..g.dim())
        .map(|b| {
            if b < nr {
                g.roots
                    .root_value(b, h)
                    .to_i64()
                    .ok_or_else(|| Error::InvalidType("non-integral ad h eigenvalue".into()))
            } else {
                Ok(0)
            }
        })
        .collect()
}

/// Basis indices of each graded piece `g(k)`.
pub fn sl2_grading(g: &LieAlgebra, h: &[Rat]) -> Result<BTreeMap<i64, Vec<usize>>> {
    let mut out: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (b, k) in basis_degrees(g, h)?.into_iter().enumerate() {
        out.entry(k).or_default().push(b);
    }
    Ok(out)
}

/// Multiset of `ad h` eigenvalues.
pub fn eigen_multiset(g: &LieAlgebra, h: &[Rat]) -> Result<BTreeMap<i64, usize>> {
    Ok(sl2_grading(g, h)?.into_iter().map(|(k, v)| (k, v.len())).collect())
}

/// `rank (ad e)^j` for `j = 0, 1, ...` until zero, read off the sl2-module
/// structure of `g` given by the eigenvalue multiset.
pub fn ad_power_ranks(mult: &BTreeMap<i64, usize>) -> Vec<usize> {
    let get = |k: i64| mult.get(&k).copied().unwrap_or(0);
    let mut blocks = Vec::new();
    for (&k, _) in mult.range(0..) {
        let count = get(k) - get(k + 2);
        blocks.extend(std::iter::repeat((k + 1) as usize).take(count));
    }
    let top = blocks.iter().copied().max().unwrap_or(0);
    (0..=top)
        .map(|j| blocks.iter().map(|&s| s.saturating_sub(j)).sum())
        .collect()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NilpotentOrbit {
    pub diagram: Diagram,
    pub h: CartanVector,
    pub e: Vector,
    pub f: Vector,
    pub dim_centralizer: usize,
    pub orbit_dim: usize,
}

impl NilpotentOrbit {
    pub fn triple(&self, g: &LieAlgebra) -> (Vector, Vector, Vector) {
        (self.f.clone(), g.cartan_element(&self.h), self.e.clone())
    }
}

/// Exact check of `[e,f]=h, [h,e]=2e, [h,f]=-2f`.
pub fn is_sl2_triple(g: &LieAlgebra, f: &[Rat], h: &[Rat], e: &[Rat]) -> bool {
    let two = Rat::int(2);
    g.bracket(e, f) == h
        && g.bracket(h, e) == linalg::scale(e, &two)
        && g.bracket(h, f) == linalg::scale(f, &-two)
}

fn residues(x: &[Rat]) -> Option<Vec<u64>> {
    x.iter().map(|c| c.mod_p(modp::P)).collect()
}

/// Rank modulo `p` of `x -> [x, e]` from the span of `domain` into `g`.
fn bracket_rank_modp(g: &LieAlgebra, e: &[u64], domain: &[usize]) -> usize {
    modp::rank(g.ad_matrix_modp(e, domain), modp::P)
}

/// Solves `[e, f] = target` for `f` in the span of `domain`.
pub fn solve_bracket(g: &LieAlgebra, e: &[Rat], target: &[Rat], domain: &[usize]) -> Option<Vector> {
    let m = g.ad_on(e, domain);
    let x = linalg::solve(&m, target, domain.len())?;
    let mut f = linalg::zero_vec(g.dim());
    for (c, &b) in x.into_iter().zip(domain) {
        f[b] = c;
    }
    Some(f)
}

/// Tries to realise a diagram; `Ok(None)` when it is not the diagram of an orbit.
pub fn realise_diagram(g: &LieAlgebra, labels: &[u8], rng: &mut ChaCha8Rng) -> Result<Option<NilpotentOrbit>> {
    let lab: Vec<Rat> = labels.iter().map(|&x| Rat::int(x as i64)).collect();
    let h = cartan_from_labels(g, &lab);
    let grading = sl2_grading(g, &h)?;
    let empty = Vec::new();
    let g0 = grading.get(&0).unwrap_or(&empty);
    let g1 = grading.get(&1).unwrap_or(&empty);
    let g2 = grading.get(&2).unwrap_or(&empty);
    let gm2 = grading.get(&-2).unwrap_or(&empty);
    if g2.is_empty() || g2.len() > g0.len() {
        return Ok(None);
    }
    let d = g.dim();
    // generic test with a uniform residue vector
    let mut er = vec![0u64; d];
    for &b in g2 {
        er[b] = rng.gen_range(1..modp::P);
    }
    if bracket_rank_modp(g, &er, g0) < g2.len() {
        return Ok(None);
    }
    let mut found = None;
    for _ in 0..RETRY_BUDGET {
        let mut e = linalg::zero_vec(d);
        for &b in g2 {
            e[b] = Rat::int(rng.gen_range(-COEFF_RANGE..=COEFF_RANGE));
        }
        let full = |e: &[Rat]| bracket_rank_modp(g, &residues(e).unwrap(), g0) == g2.len();
        if !full(&e) {
            continue;
        }
        for &b in g2 {
            let keep = e[b].clone();
            e[b] = Rat::ZERO;
            if full(&e) {
                continue;
            }
            e[b] = Rat::ONE;
            if !full(&e) {
                e[b] = keep;
            }
        }
        found = Some(e);
        break;
    }
    let e = found.ok_or_else(|| {
        Error::RetryExhausted(format!("no certified representative for diagram {labels:?}"))
    })?;
    let hv = g.cartan_element(&h);
    let Some(f) = solve_bracket(g, &e, &hv, gm2) else {
        return Ok(None);
    };
    let dim_centralizer = g0.len() + g1.len();
    Ok(Some(NilpotentOrbit {
        diagram: Diagram(labels.to_vec()),
        h,
        e,
        f,
        dim_centralizer,
        orbit_dim: d - dim_centralizer,
    }))
}

fn all_diagrams(l: usize) -> Vec<Vec<u8>> {
    let total = 3usize.pow(l as u32);
    (0..total)
        .map(|mut k| {
            let mut v = vec![0u8; l];
            for i in (0..l).rev() {
                v[i] = (k % 3) as u8;
                k /= 3;
            }
            v
        })
        .filter(|v| v.iter().any(|&x| x != 0))
        .collect()
}

/// Derives a per-task seed from a run seed and a task index.
pub fn task_seed(seed: u64, task: u64) -> u64 {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(task);
    r.gen()
}

/// Classified nilpotent orbits of a simple Lie algebra.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OrbitTable {
    pub orbits: Vec<NilpotentOrbit>,
    /// Groups of diagrams sharing an eigenvalue multiset (classical types only).
    pub collisions: Vec<Vec<Diagram>>,
}

impl OrbitTable {
    pub fn find(&self, d: &Diagram) -> Option<usize> {
        self.orbits.iter().position(|o| &o.diagram == d)
    }

    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }
}

/// `classify_nilpotent_orbits` through an optional cache.
pub fn classify_cached(g: &LieAlgebra, seed: u64, cache: Option<&Cache>) -> Result<OrbitTable> {
    match cache {
        Some(c) => c.get_or_compute(&format!("orbits-{}-{seed}", g.roots.simple_type), || {
            classify_nilpotent_orbits(g, seed)
        }),
        None => classify_nilpotent_orbits(g, seed),
    }
}

/// All nonzero nilpotent orbits, sorted by orbit dimension then diagram.
pub fn classify_nilpotent_orbits(g: &LieAlgebra, seed: u64) -> Result<OrbitTable> {
    let diagrams = all_diagrams(g.rank());
    let results: Vec<Result<Option<NilpotentOrbit>>> = diagrams
        .par_iter()
        .enumerate()
        .map(|(k, d)| {
            let mut rng = ChaCha8Rng::seed_from_u64(task_seed(seed, k as u64));
            realise_diagram(g, d, &mut rng)
        })
        .collect();
    let mut orbits = Vec::new();
    for r in results {
        if let Some(o) = r? {
            orbits.push(o);
        }
    }
    orbits.sort_by(|a, b| (a.orbit_dim, &a.diagram).cmp(&(b.orbit_dim, &b.diagram)));
    let mut groups: BTreeMap<BTreeMap<i64, usize>, Vec<Diagram>> = BTreeMap::new();
    for o in &orbits {
        groups.entry(eigen_multiset(g, &o.h)?).or_default().push(o.diagram.clone());
    }
    let collisions: Vec<Vec<Diagram>> = groups.into_values().filter(|v| v.len() > 1).collect();
    let exceptional = matches!(g.roots.simple_type.letter, 'E' | 'F' | 'G');
    if exceptional && !collisions.is_empty() {
        return Err(Error::Ambiguous(format!(
            "diagrams {:?} share an eigenvalue multiset",
            collisions[0].iter().map(Diagram::to_string).collect::<Vec<_>>()
        )));
    }
    Ok(OrbitTable { orbits, collisions })
}

/// `ad x` matrix over all of `g`, as rows.
fn full_ad(g: &LieAlgebra, x: &[Rat]) -> Vec<Vector> {
    g.ad_matrix(x)
}

/// An sl2-triple `(f, h, e)` through the nilpotent element `e`.
pub fn jacobson_morozov(g: &LieAlgebra, e: &[Rat]) -> Result<(Vector, Vector, Vector)> {
    let d = g.dim();
    let ad = full_ad(g, e);
    // nilpotency: ranks of powers must reach zero
    let mut pw = ad.clone();
    let mut prev = d + 1;
    loop {
        let r = linalg::rank_mod_p(&pw);
        if r == 0 {
            break;
        }
        if r >= prev {
            return Err(Error::NotNilpotent("ad e is not nilpotent".into()));
        }
        prev = r;
        pw = linalg::mat_mul(&ad, &pw);
    }
    if linalg::is_zero_vec(e) {
        let z = linalg::zero_vec(d);
        return Ok((z.clone(), z.clone(), z));
    }
    let ad2 = linalg::mat_mul(&ad, &ad);
    let target: Vector = e.iter().map(|x| x * &Rat::int(-2)).collect();
    let z = linalg::solve(&ad2, &target, d)
        .ok_or_else(|| Error::Inconsistent("no neutral element for e".into()))?;
    let h = linalg::mat_vec(&ad, &z);
    // [e,f] = h and [h,f] = -2f
    let adh = full_ad(g, &h);
    let mut rows = ad.clone();
    let mut rhs = h.clone();
    for (i, r) in adh.iter().enumerate() {
        let mut row = r.clone();
        row[i] += Rat::int(2);
        rows.push(row);
        rhs.push(Rat::ZERO);
    }
    let f = linalg::solve(&rows, &rhs, d)
        .ok_or_else(|| Error::Inconsistent("no completing element for the triple".into()))?;
    Ok((f, h, e.to_vec()))
}

/// Dimension of each eigenspace of `ad x` for the integer eigenvalues in `range`.
fn eigen_nullities(g: &LieAlgebra, x: &[Rat], range: std::ops::RangeInclusive<i64>) -> BTreeMap<i64, usize> {
    let ad = full_ad(g, x);
    let d = g.dim();
    let mut out = BTreeMap::new();
    for k in range {
        let mut m = ad.clone();
        for (i, row) in m.iter_mut().enumerate() {
            row[i] -= Rat::int(k);
        }
        // nullity modulo p bounds the rational nullity from above
        let null = d - linalg::rank_mod_p(&m);
        if null > 0 {
            out.insert(k, null);
        }
    }
    out
}

/// Diagram of the orbit through the nilpotent element `e`.
pub fn identify_orbit(g: &LieAlgebra, table: &OrbitTable, e: &[Rat]) -> Result<Diagram> {
    if linalg::is_zero_vec(e) {
        return Ok(Diagram(vec![0; g.rank()]));
    }
    let (_, h, _) = jacobson_morozov(g, e)?;
    let top = 2 * g.roots.height(g.roots.highest_root());
    let mut mult = eigen_nullities(g, &h, -top..=top);
    if mult.values().sum::<usize>() != g.dim() {
        // fall back to exact ranks
        mult = BTreeMap::new();
        let ad = full_ad(g, &h);
        for k in -top..=top {
            let mut m = ad.clone();
            for (i, row) in m.iter_mut().enumerate() {
                row[i] -= Rat::int(k);
            }
            let null = g.dim() - linalg::rank(&m, g.dim());
            if null > 0 {
                mult.insert(k, null);
            }
        }
    }
    let hits: Vec<&NilpotentOrbit> = table
        .orbits
        .iter()
        .filter(|o| eigen_multiset(g, &o.h).map(|m| m == mult).unwrap_or(false))
        .collect();
    match hits.as_slice() {
        [o] => Ok(o.diagram.clone()),
        [] => Err(Error::Inconsistent("element matches no classified orbit".into())),
        _ => {
            let cands: Vec<Diagram> = hits.iter().map(|o| o.diagram.clone()).collect();
            disambiguate(g, table, &cands, e)
        }
    }
}

/// Fundamental modules small enough for rank profiles.
const PROFILE_DIM_BOUND: u128 = 300;

fn profile_modules(g: &LieAlgebra) -> Result<Vec<Vec<SparseMat>>> {
    let l = g.rank();
    let mut out = Vec::new();
    for i in 0..l {
        let mut w = vec![0; l];
        w[i] = 1;
        if weyl_dimension(&g.roots, &w) <= PROFILE_DIM_BOUND {
            let m = WeightModule::new(&g.roots, &w, PROFILE_DIM_BOUND as usize)?;
            out.push(g.represent(&m));
        }
    }
    Ok(out)
}

fn module_element(mats: &[SparseMat], x: &[Rat]) -> SparseMat {
    let n = mats[0].nrows;
    let mut acc = SparseMat::zero(n, n);
    for (b, c) in x.iter().enumerate() {
        if !c.is_zero() {
            acc = acc.add_scaled(&mats[b], c);
        }
    }
    acc
}

/// Ranks of the powers of `x` on each module; exact, or modulo `p` (lower bounds).
fn rank_profile(modules: &[Vec<SparseMat>], x: &[Rat], exact: bool) -> Vec<Vec<usize>> {
    modules
        .iter()
        .map(|mats| {
            let a = module_element(mats, x);
            let n = a.nrows;
            let mut pw = a.clone();
            let mut ranks = Vec::new();
            loop {
                let rows = pw.to_dense_rows();
                let r = if exact { linalg::rank(&rows, n) } else { linalg::rank_mod_p(&rows) };
                ranks.push(r);
                if r == 0 || ranks.len() > n {
                    break;
                }
                pw = a.mul(&pw);
            }
            ranks
        })
        .collect()
}

/// Separates orbits with equal eigenvalue multisets by the exact Jordan
/// types of `x` on the small fundamental modules.
pub fn disambiguate(g: &LieAlgebra, table: &OrbitTable, cands: &[Diagram], x: &[Rat]) -> Result<Diagram> {
    let modules = profile_modules(g)?;
    let seen = rank_profile(&modules, x, true);
    let mut survivors = Vec::new();
    for d in cands {
        let k = table
            .find(d)
            .ok_or_else(|| Error::Inconsistent(format!("unknown diagram {d}")))?;
        let fits = rank_profile(&modules, &table.orbits[k].e, true) == seen;
        if fits {
            survivors.push(d.clone());
        }
    }
    match survivors.len() {
        1 => Ok(survivors.pop().unwrap()),
        0 => Err(Error::Inconsistent("element matches no candidate orbit".into())),
        _ => Err(Error::Ambiguous(format!(
            "element matches several orbits: {:?}",
            survivors.iter().map(Diagram::to_string).collect::<Vec<_>>()
        ))),
    }
}

/// Centralizer `g_e`, split by degree of the grading of the orbit's `h`.
pub fn graded_centralizer(g: &LieAlgebra, o: &NilpotentOrbit) -> Result<BTreeMap<i64, Echelon>> {
    let grading = sl2_grading(g, &o.h)?;
    let d = g.dim();
    let mut out = BTreeMap::new();
    for (&k, basis) in grading.range(0..) {
        let m = g.ad_on(&o.e, basis);
        let kernel = linalg::nullspace(&m, basis.len());
        let ech = Echelon::from_rows(
            d,
            kernel.into_iter().map(|c| {
                let mut v = linalg::zero_vec(d);
                for (x, &b) in c.into_iter().zip(basis) {
                    v[b] = x;
                }
                v
            }),
        );
        if ech.dim() > 0 {
            out.insert(k, ech);
        }
    }
    Ok(out)
}

/// Span of brackets between graded pieces, returned by degree.
fn graded_brackets(
    g: &LieAlgebra,
    a: &BTreeMap<i64, Echelon>,
    b: &BTreeMap<i64, Echelon>,
) -> BTreeMap<i64, Echelon> {
    let d = g.dim();
    let mut out: BTreeMap<i64, Echelon> = BTreeMap::new();
    for (&i, ei) in a {
        for (&j, ej) in b {
            let ent = out.entry(i + j).or_insert_with(|| Echelon::new(d));
            for x in ei.rows() {
                for y in ej.rows() {
                    ent.insert(g.bracket(x, y));
                }
            }
        }
    }
    out.retain(|_, e| e.dim() > 0);
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReachabilityReport {
    pub diagram: Diagram,
    pub dim_centralizer: usize,
    pub dim_derived: usize,
    pub reachable: bool,
    pub strongly_reachable: bool,
    pub almost_reachable: bool,
    pub panyushev: bool,
}

pub fn reachability_report(g: &LieAlgebra, o: &NilpotentOrbit) -> Result<ReachabilityReport> {
    let ge = graded_centralizer(g, o)?;
    let dim_centralizer: usize = ge.values().map(Echelon::dim).sum();
    if dim_centralizer != o.dim_centralizer {
        return Err(Error::Inconsistent(format!(
            "centralizer of {} has dimension {dim_centralizer}, expected {}",
            o.diagram, o.dim_centralizer
        )));
    }
    let derived = graded_brackets(g, &ge, &ge);
    let dim_derived: usize = derived.values().map(Echelon::dim).sum();
    let reachable = derived.get(&2).is_some_and(|e| e.contains(&o.e));
    let strongly_reachable = dim_derived == dim_centralizer;
    let almost_reachable = dim_derived + 1 == dim_centralizer && !reachable;
    Ok(ReachabilityReport {
        diagram: o.diagram.clone(),
        dim_centralizer,
        dim_derived,
        reachable,
        strongly_reachable,
        almost_reachable,
        panyushev: panyushev_from(g, &ge),
    })
}

fn panyushev_from(g: &LieAlgebra, ge: &BTreeMap<i64, Echelon>) -> bool {
    let d = g.dim();
    let top = ge.keys().copied().max().unwrap_or(0);
    let mut gen: BTreeMap<i64, Echelon> = BTreeMap::new();
    if let Some(e1) = ge.get(&1) {
        gen.insert(1, e1.clone());
    }
    for k in 2..=top {
        let mut ek = Echelon::new(d);
        for i in 1..k {
            let (Some(a), Some(b)) = (gen.get(&i), gen.get(&(k - i))) else {
                continue;
            };
            for x in a.rows() {
                for y in b.rows() {
                    ek.insert(g.bracket(x, y));
                }
            }
        }
        if ek.dim() > 0 {
            gen.insert(k, ek);
        }
    }
    (1..=top).all(|k| gen.get(&k).map_or(0, Echelon::dim) == ge.get(&k).map_or(0, Echelon::dim))
}

/// Whether `g(>=1)_e` is generated by `g(1)_e`.
pub fn panyushev_check(g: &LieAlgebra, o: &NilpotentOrbit) -> Result<bool> {
    Ok(panyushev_from(g, &graded_centralizer(g, o)?))
}

/// `dim g_e - dim [g_e, g_e]`
pub fn c_e_dimension(g: &LieAlgebra, o: &NilpotentOrbit) -> Result<usize> {
    let r = reachability_report(g, o)?;
    Ok(r.dim_centralizer - r.dim_derived)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(t: &str) -> (LieAlgebra, OrbitTable) {
        let g = LieAlgebra::parse(t).unwrap();
        let tb = classify_nilpotent_orbits(&g, 1).unwrap();
        (g, tb)
    }

    fn partitions(n: usize, max: usize) -> usize {
        if n == 0 {
            return 1;
        }
        (1..=max.min(n)).map(|k| partitions(n - k, k)).sum()
    }

    #[test]
    fn type_a_counts_match_partitions() {
        for n in 1..=4 {
            let (_, tb) = table(&format!("A{n}"));
            assert_eq!(tb.len(), partitions(n + 1, n + 1) - 1, "A{n}");
        }
    }

    #[test]
    fn a1_regular() {
        let (g, tb) = table("A1");
        assert_eq!(tb.orbits[0].diagram, Diagram(vec![2]));
        let (f, h, e) = tb.orbits[0].triple(&g);
        assert!(is_sl2_triple(&g, &f, &h, &e));
        let r = reachability_report(&g, &tb.orbits[0]).unwrap();
        assert!(!r.reachable);
    }

    #[test]
    fn triples_and_round_trip() {
        let (g, tb) = table("G2");
        assert_eq!(tb.len(), 4);
        for o in &tb.orbits {
            let (f, h, e) = o.triple(&g);
            assert!(is_sl2_triple(&g, &f, &h, &e));
            assert_eq!(identify_orbit(&g, &tb, &o.e).unwrap(), o.diagram);
            let (f2, h2, e2) = jacobson_morozov(&g, &o.e).unwrap();
            assert!(is_sl2_triple(&g, &f2, &h2, &e2));
            assert_eq!(o.orbit_dim % 2, 0);
        }
    }

    #[test]
    fn power_ranks_for_regular_sl2() {
        let m: BTreeMap<i64, usize> = [(-2, 1), (0, 1), (2, 1)].into_iter().collect();
        assert_eq!(ad_power_ranks(&m), vec![3, 2, 1, 0]);
    }

    #[test]
    fn minimal_orbit_of_a2() {
        let (g, tb) = table("A2");
        assert_eq!(tb.orbits[0].diagram, Diagram(vec![1, 1]));
        let mut e = linalg::zero_vec(g.dim());
        e[0] = Rat::ONE;
        assert_eq!(identify_orbit(&g, &tb, &e).unwrap(), Diagram(vec![1, 1]));
    }

    #[test]
    fn diagram_parse_display() {
        let d = Diagram::parse("[0,0,0,1,0,0]").unwrap();
        assert_eq!(d.to_string(), "[0,0,0,1,0,0]");
        assert!(Diagram::parse("[3]").is_err());
    }
}
