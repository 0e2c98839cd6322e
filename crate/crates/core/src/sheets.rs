//! Standard Levi subalgebras, induction of nilpotent orbits, rigid orbits and sheets.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::RwLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cache::Cache;
use crate::error::{Error, Result};
use crate::liealg::LieAlgebra;
use crate::linalg::{self, Vector};
use crate::modp;
use crate::orbits::{self, ad_power_ranks, classify_cached, eigen_multiset, task_seed, Diagram, OrbitTable};
use crate::rational::Rat;
use crate::rootsys::{recognize_cartan, RootSystem, SimpleType};

/// Consecutive draws failing the dimension identity before induction gives up.
pub const INDUCTION_BUDGET: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeviClass {
    /// Simple-root indices of the chosen representative.
    pub pi: Vec<usize>,
    /// Semisimple type, e.g. `"A1+D4"`, or `"0"` for the Cartan subalgebra.
    pub semisimple_type: String,
    pub centre_dim: usize,
    /// All standard subsets in the class.
    pub members: Vec<Vec<usize>>,
}

type RootSet = Vec<u64>;

fn root_set(rs: &RootSystem, pi: &[usize]) -> RootSet {
    let nr = rs.num_roots();
    let mut bits = vec![0u64; nr.div_ceil(64)];
    for k in 0..nr {
        let r = rs.root(k);
        if r.iter().enumerate().all(|(i, &c)| c == 0 || pi.contains(&i)) {
            bits[k / 64] |= 1 << (k % 64);
        }
    }
    bits
}

fn reflect_set(rs: &RootSystem, s: &RootSet, i: usize) -> RootSet {
    let perm = rs.simple_reflection(i);
    let mut out = vec![0u64; s.len()];
    for (w, &word) in s.iter().enumerate() {
        let mut x = word;
        while x != 0 {
            let b = x.trailing_zeros() as usize;
            x &= x - 1;
            let k = perm.image(w * 64 + b);
            out[k / 64] |= 1 << (k % 64);
        }
    }
    out
}

/// Semisimple type string of the subsystem spanned by `pi`.
pub fn subsystem_type(rs: &RootSystem, pi: &[usize]) -> Result<(String, Vec<(SimpleType, Vec<usize>)>)> {
    if pi.is_empty() {
        return Ok(("0".to_string(), Vec::new()));
    }
    let sub: Vec<Vec<i64>> = pi.iter().map(|&i| pi.iter().map(|&j| rs.cartan[i][j]).collect()).collect();
    let comps: Vec<(SimpleType, Vec<usize>)> = recognize_cartan(&sub)?
        .into_iter()
        .map(|(t, nodes)| (t, nodes.into_iter().map(|k| pi[k]).collect()))
        .collect();
    let mut names: Vec<String> = comps.iter().map(|(t, _)| t.to_string()).collect();
    names.sort();
    Ok((names.join("+"), comps))
}

/// One representative per conjugacy class of standard Levi subalgebras.
pub fn standard_levis(rs: &RootSystem) -> Result<Vec<LeviClass>> {
    let l = rs.rank();
    let mut subsets: Vec<Vec<usize>> = (0u32..(1 << l))
        .map(|m| (0..l).filter(|i| m & (1 << i) != 0).collect())
        .collect();
    subsets.sort_by(|a: &Vec<usize>, b| (a.len(), a).cmp(&(b.len(), b)));
    let by_set: HashMap<RootSet, usize> = subsets
        .iter()
        .enumerate()
        .map(|(k, s)| (root_set(rs, s), k))
        .collect();
    let mut class_of: Vec<Option<usize>> = vec![None; subsets.len()];
    let mut out = Vec::new();
    for k in 0..subsets.len() {
        if class_of[k].is_some() {
            continue;
        }
        let start = root_set(rs, &subsets[k]);
        let mut seen: HashSet<RootSet> = HashSet::new();
        seen.insert(start.clone());
        let mut stack = vec![start];
        let mut members = Vec::new();
        while let Some(s) = stack.pop() {
            if let Some(&m) = by_set.get(&s) {
                class_of[m] = Some(out.len());
                members.push(subsets[m].clone());
            }
            for i in 0..l {
                let t = reflect_set(rs, &s, i);
                if seen.insert(t.clone()) {
                    stack.push(t);
                }
            }
        }
        members.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        let (semisimple_type, _) = subsystem_type(rs, &subsets[k])?;
        out.push(LeviClass {
            pi: subsets[k].clone(),
            semisimple_type,
            centre_dim: l - subsets[k].len(),
            members,
        });
    }
    Ok(out)
}

/// Root indices of the subsystem spanned by `pi`, and of the nilradical
/// of the standard parabolic.
fn levi_roots(rs: &RootSystem, pi: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let n = rs.num_positive();
    let mut levi = Vec::new();
    let mut nil = Vec::new();
    for k in 0..rs.num_roots() {
        let r = rs.root(k);
        let inside = r.iter().enumerate().all(|(i, &c)| c == 0 || pi.contains(&i));
        if inside {
            levi.push(k);
        } else if k < n {
            nil.push(k);
        }
    }
    (levi, nil)
}

/// Cartan element of the Levi with `alpha_i(h) = labels[i]` for `i` in `pi`
/// and lying in the span of the `h_i`, `i` in `pi`.
fn levi_neutral(rs: &RootSystem, pi: &[usize], labels: &[u8]) -> Vec<Rat> {
    let sub: Vec<Vector> = pi
        .iter()
        .map(|&j| pi.iter().map(|&i| Rat::int(rs.cartan[j][i])).collect())
        .collect();
    let rhs: Vector = pi.iter().map(|&j| Rat::int(labels[j] as i64)).collect();
    let c = linalg::solve(&sub, &rhs, pi.len()).expect("Cartan submatrix is invertible");
    let mut h = linalg::zero_vec(rs.rank());
    for (x, &i) in c.into_iter().zip(pi) {
        h[i] = x;
    }
    h
}

fn residues(x: &[Rat]) -> Vec<u64> {
    x.iter().map(|c| c.mod_p(modp::P).expect("small integers")).collect()
}

fn rank_powers_modp(g: &LieAlgebra, x: &[u64]) -> Vec<usize> {
    let d = g.dim();
    let all: Vec<usize> = (0..d).collect();
    let ad = g.ad_matrix_modp(x, &all);
    let p = modp::P;
    let mut out = vec![d];
    let mut pw = ad.clone();
    loop {
        let r = modp::rank(pw.clone(), p);
        out.push(r);
        if r == 0 {
            break;
        }
        // pw <- ad * pw
        let mut next = vec![vec![0u64; d]; d];
        for i in 0..d {
            for k in 0..d {
                let a = ad[i][k];
                if a == 0 {
                    continue;
                }
                for j in 0..d {
                    if pw[k][j] != 0 {
                        next[i][j] = modp::add(next[i][j], modp::mul(a, pw[k][j], p), p);
                    }
                }
            }
        }
        pw = next;
    }
    out
}

/// Outcome of an induction: the induced orbit and a certified generic point.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Induction {
    pub induced: Diagram,
    pub witness: Vector,
    pub orbit_dim: usize,
}

/// Induces the orbit with diagram `labels` (read on the nodes of `pi`) of the
/// standard Levi `pi` to `g`.
pub fn induce_orbit(
    g: &LieAlgebra,
    table: &OrbitTable,
    pi: &[usize],
    labels: &[u8],
    rng: &mut ChaCha8Rng,
) -> Result<Induction> {
    let rs = &g.roots;
    let d = g.dim();
    let l = rs.rank();
    let hp = levi_neutral(rs, pi, labels);
    let (levi, nil) = levi_roots(rs, pi);
    let mut lgrade: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for &k in &levi {
        let v = rs.root_value(k, &hp).to_i64().expect("integral labels");
        lgrade.entry(v).or_default().push(k);
    }
    let mut l0 = lgrade.remove(&0).unwrap_or_default();
    l0.extend((0..l).map(|i| g.cartan_index(i)));
    let l1 = lgrade.get(&1).cloned().unwrap_or_default();
    let l2 = lgrade.get(&2).cloned().unwrap_or_default();

    let mut ep = linalg::zero_vec(d);
    if !l2.is_empty() {
        let mut ok = false;
        for _ in 0..orbits::RETRY_BUDGET {
            for &b in &l2 {
                ep[b] = Rat::int(rng.gen_range(-orbits::COEFF_RANGE..=orbits::COEFF_RANGE));
            }
            if modp::rank(g.ad_matrix_modp(&residues(&ep), &l0), modp::P) == l2.len() {
                ok = true;
                break;
            }
        }
        if !ok {
            return Err(Error::RetryExhausted(format!("no generic Levi representative for {labels:?} on {pi:?}")));
        }
    }
    let levi_dim = levi.len() + l;
    let target = levi_dim - (l0.len() + l1.len()) + 2 * nil.len();
    if nil.is_empty() {
        let dg = Diagram(labels.to_vec());
        return Ok(Induction { induced: dg, witness: ep, orbit_dim: target });
    }
    for _ in 0..INDUCTION_BUDGET {
        let mut x = ep.clone();
        for &b in &nil {
            x[b] = Rat::int(rng.gen_range(-orbits::COEFF_RANGE..=orbits::COEFF_RANGE));
        }
        let ranks = rank_powers_modp(g, &residues(&x));
        if ranks[1] > target {
            return Err(Error::Inconsistent(format!(
                "orbit dimension {} exceeds the induced dimension {target}",
                ranks[1]
            )));
        }
        if ranks[1] < target {
            continue;
        }
        // push coordinates towards 0/1 while the certified dimension persists
        let all: Vec<usize> = (0..d).collect();
        let full = |x: &[Rat]| modp::rank(g.ad_matrix_modp(&residues(x), &all), modp::P) == target;
        for &b in &nil {
            let keep = x[b].clone();
            x[b] = Rat::ZERO;
            if full(&x) {
                continue;
            }
            x[b] = Rat::ONE;
            if !full(&x) {
                x[b] = keep;
            }
        }
        let ranks = rank_powers_modp(g, &residues(&x));
        let mut survivors = Vec::new();
        for o in &table.orbits {
            if o.orbit_dim != target {
                continue;
            }
            let r = ad_power_ranks(&eigen_multiset(g, &o.h)?);
            let fits = ranks.iter().enumerate().all(|(j, &rp)| r.get(j).copied().unwrap_or(0) >= rp);
            if fits {
                survivors.push(o.diagram.clone());
            }
        }
        let induced = match survivors.len() {
            1 => survivors.pop().unwrap(),
            0 => return Err(Error::Inconsistent("induced point matches no orbit".into())),
            _ => orbits::disambiguate(g, table, &survivors, &x)?,
        };
        return Ok(Induction { induced, witness: x, orbit_dim: target });
    }
    Err(Error::RetryExhausted(format!(
        "{INDUCTION_BUDGET} draws missed the induced dimension {target} for {labels:?} on {pi:?}"
    )))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sheet {
    pub levi: Vec<usize>,
    pub levi_type: String,
    /// Labels of the rigid orbit on the nodes of the Levi (0 elsewhere).
    pub rigid_labels: Vec<u8>,
    pub sheet_diagram: Vec<u8>,
    pub rank: usize,
    pub induced: Diagram,
    /// Whether the Levi is proper, i.e. the sheet's orbit is induced.
    pub proper: bool,
}

/// Sheets of a simple algebra, with rigid orbits cached per simple type.
pub struct SheetEngine {
    seed: u64,
    cache: Option<Cache>,
    rigid: RwLock<HashMap<String, Vec<Diagram>>>,
    tables: RwLock<HashMap<String, std::sync::Arc<(LieAlgebra, OrbitTable)>>>,
}

impl SheetEngine {
    pub fn new(seed: u64) -> SheetEngine {
        SheetEngine::with_cache(seed, None)
    }

    pub fn with_cache(seed: u64, cache: Option<Cache>) -> SheetEngine {
        SheetEngine {
            seed,
            cache,
            rigid: RwLock::new(HashMap::new()),
            tables: RwLock::new(HashMap::new()),
        }
    }

    /// Algebra and orbit table for a type, computed once.
    pub fn table(&self, t: SimpleType) -> Result<std::sync::Arc<(LieAlgebra, OrbitTable)>> {
        let key = t.to_string();
        if let Some(x) = self.tables.read().unwrap().get(&key) {
            return Ok(x.clone());
        }
        let g = LieAlgebra::new(t)?;
        let tb = classify_cached(&g, self.seed, self.cache.as_ref())?;
        let arc = std::sync::Arc::new((g, tb));
        self.tables.write().unwrap().insert(key, arc.clone());
        Ok(arc)
    }

    /// Rigid orbits of a simple type, zero orbit included.
    pub fn rigid_orbits(&self, t: SimpleType) -> Result<Vec<Diagram>> {
        let key = t.to_string();
        if let Some(x) = self.rigid.read().unwrap().get(&key) {
            return Ok(x.clone());
        }
        Ok(self
            .sheets(t)?
            .into_iter()
            .filter(|s| !s.proper)
            .map(|s| s.induced)
            .collect())
    }

    /// Rigid orbits of the Levi `pi` of `g`, as full-length label vectors.
    fn levi_rigid_labels(&self, rs: &RootSystem, pi: &[usize]) -> Result<Vec<Vec<u8>>> {
        let (_, comps) = subsystem_type(rs, pi)?;
        let mut acc: Vec<Vec<u8>> = vec![vec![0; rs.rank()]];
        for (t, nodes) in comps {
            let rig = self.rigid_orbits(t)?;
            let mut next = Vec::new();
            for base in &acc {
                for dgm in &rig {
                    let mut v = base.clone();
                    for (k, &node) in nodes.iter().enumerate() {
                        v[node] = dgm.0[k];
                    }
                    next.push(v);
                }
            }
            acc = next;
        }
        Ok(acc)
    }

    /// Every sheet: one per (Levi class, rigid orbit of the Levi). The
    /// Levi equal to `g` contributes its rigid orbits with `proper = false`.
    pub fn sheets(&self, t: SimpleType) -> Result<Vec<Sheet>> {
        let arc = self.table(t)?;
        let (g, table) = (&arc.0, &arc.1);
        let rs = &g.roots;
        let l = rs.rank();
        let levis = standard_levis(rs)?;
        let mut tasks: Vec<(LeviClass, Vec<u8>)> = Vec::new();
        for lc in &levis {
            if lc.pi.len() == l {
                continue;
            }
            for lab in self.levi_rigid_labels(rs, &lc.pi)? {
                tasks.push((lc.clone(), lab));
            }
        }
        let seed = self.seed;
        let results: Vec<Result<Sheet>> = tasks
            .par_iter()
            .enumerate()
            .map(|(k, (lc, lab))| {
                let mut rng = ChaCha8Rng::seed_from_u64(task_seed(seed, 1_000_000 + k as u64));
                let ind = induce_orbit(g, table, &lc.pi, lab, &mut rng)?;
                let sheet_diagram: Vec<u8> = (0..l).map(|i| if lc.pi.contains(&i) { lab[i] } else { 2 }).collect();
                Ok(Sheet {
                    levi: lc.pi.clone(),
                    levi_type: lc.semisimple_type.clone(),
                    rigid_labels: lab.clone(),
                    sheet_diagram,
                    rank: lc.centre_dim,
                    induced: ind.induced,
                    proper: true,
                })
            })
            .collect();
        let mut out: Vec<Sheet> = results.into_iter().collect::<Result<_>>()?;
        let induced: HashSet<Diagram> = out.iter().map(|s| s.induced.clone()).collect();
        let full: Vec<usize> = (0..l).collect();
        let mut rigid: Vec<Diagram> = vec![Diagram(vec![0; l])];
        rigid.extend(table.orbits.iter().filter(|o| !induced.contains(&o.diagram)).map(|o| o.diagram.clone()));
        for d in rigid {
            out.push(Sheet {
                levi: full.clone(),
                levi_type: t.to_string(),
                rigid_labels: d.0.clone(),
                sheet_diagram: d.0.clone(),
                rank: 0,
                induced: d,
                proper: false,
            });
        }
        self.rigid.write().unwrap().insert(
            t.to_string(),
            out.iter().filter(|s| !s.proper).map(|s| s.induced.clone()).collect(),
        );
        Ok(out)
    }
}

/// A Prop 4.1 style exception: orbit in a unique sheet whose rank differs from `dim c_e`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankException {
    pub diagram: Diagram,
    pub sheet_diagram: Vec<u8>,
    pub rank: usize,
    pub dim_c_e: usize,
}

/// `dim c_e` for the orbit of each diagram occurring among the sheets.
pub fn c_e_dimensions(g: &LieAlgebra, table: &OrbitTable, sheets: &[Sheet]) -> Result<BTreeMap<Diagram, usize>> {
    let mut out = BTreeMap::new();
    for s in sheets {
        if out.contains_key(&s.induced) {
            continue;
        }
        let v = match table.find(&s.induced) {
            Some(k) => orbits::c_e_dimension(g, &table.orbits[k])?,
            None => 0,
        };
        out.insert(s.induced.clone(), v);
    }
    Ok(out)
}

/// Induced orbits lying in a unique (proper) sheet whose rank differs from `dim c_e`.
pub fn proposition_41_check(g: &LieAlgebra, table: &OrbitTable, sheets: &[Sheet]) -> Result<Vec<RankException>> {
    let proper: Vec<&Sheet> = sheets.iter().filter(|s| s.proper).collect();
    let owned: Vec<Sheet> = proper.iter().map(|s| (*s).clone()).collect();
    let dims = c_e_dimensions(g, table, &owned)?;
    let mut count: HashMap<&Diagram, usize> = HashMap::new();
    for s in &proper {
        *count.entry(&s.induced).or_insert(0) += 1;
    }
    Ok(proper
        .iter()
        .filter(|s| count[&s.induced] == 1 && s.rank != dims[&s.induced])
        .map(|s| RankException {
            diagram: s.induced.clone(),
            sheet_diagram: s.sheet_diagram.clone(),
            rank: s.rank,
            dim_c_e: dims[&s.induced],
        })
        .collect())
}

/// Orbits lying in several proper sheets whose maximal rank is not below `dim c_e`.
pub fn proposition_42_violations(g: &LieAlgebra, table: &OrbitTable, sheets: &[Sheet]) -> Result<Vec<Diagram>> {
    let proper: Vec<Sheet> = sheets.iter().filter(|s| s.proper).cloned().collect();
    let dims = c_e_dimensions(g, table, &proper)?;
    let mut by_orbit: BTreeMap<&Diagram, Vec<usize>> = BTreeMap::new();
    for s in &proper {
        by_orbit.entry(&s.induced).or_default().push(s.rank);
    }
    Ok(by_orbit
        .into_iter()
        .filter(|(d, r)| r.len() > 1 && *r.iter().max().unwrap() >= dims[*d])
        .map(|(d, _)| d.clone())
        .collect())
}

pub fn proposition_42_check(g: &LieAlgebra, table: &OrbitTable, sheets: &[Sheet]) -> Result<bool> {
    Ok(proposition_42_violations(g, table, sheets)?.is_empty())
}
