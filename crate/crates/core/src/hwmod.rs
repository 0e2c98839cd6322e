//! Irreducible highest-weight modules, built directly from the Cartan matrix.
//!
//! The module is generated from a highest-weight vector by the lowering
//! operators `f_i`. A monomial `f_i u` of weight `mu != lambda` vanishes
//! exactly when every raising operator kills it, so linear relations among
//! the candidates at a weight are read off from their images under the
//! `e_j`. This yields a weight basis and exact matrices for `e_i, f_i, h_i`.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::linalg::{self, Echelon, Vector};
use crate::rational::Rat;
use crate::rootsys::RootSystem;
use crate::sparse::SparseMat;

/// Weight in fundamental-weight coordinates.
pub type Weight = Vec<i64>;

/// Root coordinates of a weight given in fundamental coordinates.
fn to_root_coords(rs: &RootSystem, mu: &[i64]) -> Vec<Rat> {
    let l = rs.rank();
    let c: Vec<Vector> = rs
        .cartan
        .iter()
        .map(|r| r.iter().map(|&x| Rat::int(x)).collect())
        .collect();
    let cinv = linalg::inverse(&c).expect("Cartan matrix is invertible");
    (0..l)
        .map(|j| {
            let mut s = Rat::ZERO;
            for i in 0..l {
                if mu[i] != 0 {
                    s += &Rat::int(mu[i]) * &cinv[i][j];
                }
            }
            s
        })
        .collect()
}

/// `(mu, nu)` in the normalisation where short roots have squared length 2.
pub fn weight_inner(rs: &RootSystem, mu: &[i64], nu: &[i64]) -> Rat {
    let r = to_root_coords(rs, mu);
    let mut s = Rat::ZERO;
    for j in 0..rs.rank() {
        if nu[j] != 0 && !r[j].is_zero() {
            s += &r[j] * &Rat::new(nu[j] * rs.simple_norms[j], 2);
        }
    }
    s
}

/// Weyl dimension formula.
pub fn weyl_dimension(rs: &RootSystem, lambda: &[i64]) -> u128 {
    let mut num = Rat::ONE;
    for b in &rs.positive_roots {
        let top: i64 = (0..rs.rank())
            .map(|j| b[j] * (lambda[j] + 1) * rs.simple_norms[j])
            .sum();
        let bottom: i64 = (0..rs.rank()).map(|j| b[j] * rs.simple_norms[j]).sum();
        num *= &Rat::new(top, bottom);
    }
    assert!(num.is_integer());
    num.to_big().to_integer().try_into().expect("dimension fits in u128")
}

/// Dominant representative of a weight (fundamental coordinates).
pub fn dominant_weight(rs: &RootSystem, mu: &[i64]) -> Weight {
    let mut m = mu.to_vec();
    while let Some(i) = m.iter().position(|&x| x < 0) {
        let c = m[i];
        for (k, a) in rs.cartan[i].iter().enumerate() {
            m[k] -= c * a;
        }
    }
    m
}

/// Multiplicities of the dominant weights of `L(lambda)` by Freudenthal's formula.
pub fn freudenthal_dominant(rs: &RootSystem, lambda: &[i64]) -> BTreeMap<Weight, u64> {
    let l = rs.rank();
    let sub = |mu: &[i64], b: &[i64]| -> Weight {
        let mut out = mu.to_vec();
        for j in 0..l {
            if b[j] != 0 {
                for k in 0..l {
                    out[k] -= b[j] * rs.cartan[j][k];
                }
            }
        }
        out
    };
    // Dominant weights below lambda, grouped by depth.
    let mut depth_of: HashMap<Weight, i64> = HashMap::new();
    depth_of.insert(lambda.to_vec(), 0);
    let mut order: Vec<Weight> = vec![lambda.to_vec()];
    let mut k = 0;
    while k < order.len() {
        let mu = order[k].clone();
        let d = depth_of[&mu];
        for b in &rs.positive_roots {
            let nu = sub(&mu, b);
            if nu.iter().all(|&x| x >= 0) {
                let nd = d + b.iter().sum::<i64>();
                let e = depth_of.entry(nu.clone()).or_insert(i64::MAX);
                if *e == i64::MAX {
                    order.push(nu);
                }
                *e = (*e).min(nd);
            }
        }
        k += 1;
    }
    order.sort_by_key(|w| (depth_of[w], std::cmp::Reverse(w.clone())));

    let rho = vec![1i64; l];
    let plus = |a: &[i64], b: &[i64]| -> Weight { a.iter().zip(b).map(|(x, y)| x + y).collect() };
    let lr = plus(lambda, &rho);
    let top = weight_inner(rs, &lr, &lr);
    let roots_w: Vec<Weight> = rs
        .positive_roots
        .iter()
        .map(|b| sub(&vec![0; l], b).iter().map(|x| -x).collect())
        .collect();

    let mut mult: BTreeMap<Weight, u64> = BTreeMap::new();
    mult.insert(lambda.to_vec(), 1);
    for mu in order.iter().skip(1) {
        let mut s = Rat::ZERO;
        for a in &roots_w {
            let mut nu = plus(mu, a);
            loop {
                let dom = dominant_weight(rs, &nu);
                let Some(&m) = mult.get(&dom) else { break };
                if m == 0 {
                    break;
                }
                s += &Rat::int(m as i64) * &weight_inner(rs, &nu, a);
                nu = plus(&nu, a);
            }
        }
        let mr = plus(mu, &rho);
        let denom = &top - &weight_inner(rs, &mr, &mr);
        let m = &(&s * &Rat::int(2)) / &denom;
        let m = m.to_i64().expect("integral multiplicity");
        mult.insert(mu.clone(), m as u64);
    }
    mult.retain(|_, m| *m > 0);
    mult
}

/// Size of the Weyl orbit of a dominant weight.
pub fn weyl_orbit_size(rs: &RootSystem, mu: &[i64]) -> usize {
    let l = rs.rank();
    let mut seen: std::collections::HashSet<Weight> = std::collections::HashSet::new();
    let mut stack = vec![mu.to_vec()];
    seen.insert(mu.to_vec());
    while let Some(w) = stack.pop() {
        for i in 0..l {
            if w[i] > 0 {
                let mut n = w.clone();
                let c = w[i];
                for k in 0..l {
                    n[k] -= c * rs.cartan[i][k];
                }
                if seen.insert(n.clone()) {
                    stack.push(n);
                }
            }
        }
    }
    seen.len()
}

/// `{x in g : x.v = 0}` given the matrices of all basis elements of `g`.
pub fn stabilizer_in_g(rep: &[SparseMat], v: &[Rat]) -> Echelon {
    let d = rep.len();
    let images: Vec<Vector> = rep.iter().map(|m| m.apply(v)).collect();
    let rows: Vec<Vector> = (0..v.len())
        .map(|r| images.iter().map(|img| img[r].clone()).collect())
        .filter(|row: &Vector| !linalg::is_zero_vec(row))
        .collect();
    Echelon::from_rows(d, linalg::nullspace(&rows, d))
}

/// Irreducible module with a weight basis and Chevalley generators.
#[derive(Clone, Debug)]
pub struct WeightModule {
    pub highest_weight: Weight,
    /// Weight of each basis vector, in fundamental coordinates.
    pub weights: Vec<Weight>,
    /// Distance of each basis vector from the highest weight (height of `lambda - mu`).
    pub depth: Vec<usize>,
    pub e: Vec<SparseMat>,
    pub f: Vec<SparseMat>,
}

impl WeightModule {
    /// Builds `L(lambda)`; refuses when the Weyl dimension exceeds `max_dim`.
    pub fn new(rs: &RootSystem, lambda: &[i64], max_dim: usize) -> Result<WeightModule> {
        let l = rs.rank();
        if lambda.len() != l || lambda.iter().any(|&x| x < 0) {
            return Err(Error::InvalidType(format!(
                "highest weight {lambda:?} is not dominant of rank {l}"
            )));
        }
        let expected = weyl_dimension(rs, lambda);
        if expected > max_dim as u128 {
            return Err(Error::TooLarge(format!(
                "module of dimension {expected} exceeds the limit {max_dim}"
            )));
        }
        let mut weights: Vec<Weight> = vec![lambda.to_vec()];
        let mut depth = vec![0usize];
        let mut ecols: Vec<Vec<Vec<(u32, Rat)>>> = vec![vec![Vec::new()]; l];
        let mut fcols: Vec<Vec<Vec<(u32, Rat)>>> = vec![Vec::new(); l];
        let mut level: Vec<usize> = vec![0];
        let mut d = 0;
        while !level.is_empty() {
            let mut groups: BTreeMap<std::cmp::Reverse<Weight>, Vec<(usize, usize)>> = BTreeMap::new();
            for &u in &level {
                for i in 0..l {
                    let mu: Weight = (0..l).map(|k| weights[u][k] - rs.cartan[i][k]).collect();
                    groups.entry(std::cmp::Reverse(mu)).or_default().push((i, u));
                }
            }
            for i in 0..l {
                fcols[i].resize(weights.len(), Vec::new());
            }
            let mut next = Vec::new();
            for (std::cmp::Reverse(mu), cands) in groups {
                // e-images of each candidate f_i u, as sparse vectors over existing indices
                let images: Vec<Vec<(u32, Rat)>> = cands
                    .iter()
                    .map(|&(i, u)| {
                        let mut acc: BTreeMap<u32, Rat> = BTreeMap::new();
                        for j in 0..l {
                            for (w, c) in &ecols[j][u] {
                                for (t, x) in &fcols[i][*w as usize] {
                                    *acc.entry(*t).or_insert(Rat::ZERO) += c * x;
                                }
                            }
                            if i == j && weights[u][i] != 0 {
                                *acc.entry(u as u32).or_insert(Rat::ZERO) += Rat::int(weights[u][i]);
                            }
                        }
                        acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
                    })
                    .collect();
                let mut cols: Vec<u32> = images.iter().flatten().map(|(t, _)| *t).collect();
                cols.sort_unstable();
                cols.dedup();
                let pos: HashMap<u32, usize> = cols.iter().enumerate().map(|(k, &t)| (t, k)).collect();
                let dense = |img: &[(u32, Rat)]| -> Vector {
                    let mut v = linalg::zero_vec(cols.len());
                    for (t, x) in img {
                        v[pos[t]] = x.clone();
                    }
                    v
                };
                let mut ech = linalg::Echelon::new(cols.len());
                let mut chosen: Vec<(usize, Vector)> = Vec::new();
                for (k, img) in images.iter().enumerate() {
                    let v = dense(img);
                    if ech.insert(v.clone()) {
                        chosen.push((k, v));
                    }
                }
                let base = weights.len();
                for (slot, (k, _)) in chosen.iter().enumerate() {
                    let b = base + slot;
                    weights.push(mu.clone());
                    depth.push(d + 1);
                    next.push(b);
                    let (i, u) = cands[*k];
                    fcols[i][u] = vec![(b as u32, Rat::ONE)];
                    // split the image by raising operator: weight of each target identifies j
                    for j in 0..l {
                        let target: Weight = (0..l).map(|q| mu[q] + rs.cartan[j][q]).collect();
                        let col: Vec<(u32, Rat)> = images[*k]
                            .iter()
                            .filter(|(t, _)| weights[*t as usize] == target)
                            .cloned()
                            .collect();
                        ecols[j].push(col);
                    }
                }
                if chosen.len() < cands.len() {
                    let a_rows = linalg::transpose(&chosen.iter().map(|(_, v)| v.clone()).collect::<Vec<_>>());
                    for (k, img) in images.iter().enumerate() {
                        if chosen.iter().any(|(c, _)| *c == k) {
                            continue;
                        }
                        let (i, u) = cands[k];
                        if img.is_empty() {
                            fcols[i][u] = Vec::new();
                            continue;
                        }
                        let x = linalg::solve(&a_rows, &dense(img), chosen.len())
                            .ok_or_else(|| Error::Inconsistent("lowering relation not solvable".into()))?;
                        fcols[i][u] = x
                            .into_iter()
                            .enumerate()
                            .filter(|(_, c)| !c.is_zero())
                            .map(|(s, c)| ((base + s) as u32, c))
                            .collect();
                    }
                }
                if weights.len() > max_dim {
                    return Err(Error::Inconsistent("module exceeds its Weyl dimension".into()));
                }
            }
            level = next;
            d += 1;
        }
        let n = weights.len();
        if n as u128 != expected {
            return Err(Error::Inconsistent(format!(
                "constructed dimension {n} differs from Weyl dimension {expected}"
            )));
        }
        for i in 0..l {
            fcols[i].resize(n, Vec::new());
        }
        let to_mat = |cols: Vec<Vec<(u32, Rat)>>| SparseMat { nrows: n, cols };
        Ok(WeightModule {
            highest_weight: lambda.to_vec(),
            weights,
            depth,
            e: ecols.into_iter().map(to_mat).collect(),
            f: fcols.into_iter().map(to_mat).collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn rank(&self) -> usize {
        self.e.len()
    }

    /// Diagonal action of `h_i`.
    pub fn h(&self, i: usize) -> SparseMat {
        SparseMat::diagonal(&self.weights.iter().map(|w| Rat::int(w[i])).collect::<Vec<_>>())
    }

    /// Action of a Cartan element given on `h_1..h_l`.
    pub fn cartan_action(&self, h: &[Rat]) -> SparseMat {
        SparseMat::diagonal(
            &self
                .weights
                .iter()
                .map(|w| RootSystem::weight_value(w, h))
                .collect::<Vec<_>>(),
        )
    }

    /// Basis indices spanning the `k`-eigenspace of a Cartan element.
    pub fn eigenslice(&self, h: &[Rat], k: &Rat) -> Vec<usize> {
        (0..self.dim())
            .filter(|&b| &RootSystem::weight_value(&self.weights[b], h) == k)
            .collect()
    }

    /// Basis indices of weight vectors with eigenvalue at least `k`.
    pub fn eigenslice_at_least(&self, h: &[Rat], k: &Rat) -> Vec<usize> {
        (0..self.dim())
            .filter(|&b| &RootSystem::weight_value(&self.weights[b], h) >= k)
            .collect()
    }

    /// Multiset of weights, keyed by weight.
    pub fn weight_multiplicities(&self) -> BTreeMap<Weight, u64> {
        let mut m = BTreeMap::new();
        for w in &self.weights {
            *m.entry(w.clone()).or_insert(0) += 1;
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::SimpleType;

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(SimpleType::parse(s).unwrap())
    }

    fn check_relations(m: &WeightModule, r: &RootSystem) {
        let l = r.rank();
        for i in 0..l {
            for j in 0..l {
                let c = m.e[i].commutator(&m.f[j]);
                if i == j {
                    assert_eq!(c, m.h(i), "[e{i},f{i}]");
                } else {
                    assert!(c.is_zero(), "[e{i},f{j}]");
                }
                // Serre: ad(e_i)^{1-a_ji}(e_j) = 0
                if i != j {
                    let mut x = m.e[j].clone();
                    for _ in 0..(1 - r.cartan[j][i]) {
                        x = m.e[i].commutator(&x);
                    }
                    assert!(x.is_zero(), "Serre e{i} e{j}");
                    let mut y = m.f[j].clone();
                    for _ in 0..(1 - r.cartan[j][i]) {
                        y = m.f[i].commutator(&y);
                    }
                    assert!(y.is_zero(), "Serre f{i} f{j}");
                }
            }
        }
    }

    #[test]
    fn weyl_dimensions() {
        assert_eq!(weyl_dimension(&rs("A1"), &[4]), 5);
        assert_eq!(weyl_dimension(&rs("B6"), &[0, 0, 0, 0, 0, 1]), 64);
        assert_eq!(weyl_dimension(&rs("E6"), &[1, 0, 0, 0, 0, 0]), 27);
        assert_eq!(weyl_dimension(&rs("E7"), &[0, 0, 0, 0, 0, 0, 1]), 56);
        assert_eq!(weyl_dimension(&rs("E8"), &[1, 0, 0, 0, 0, 0, 0, 0]), 3875);
        assert_eq!(weyl_dimension(&rs("E8"), &[0, 0, 0, 0, 0, 0, 0, 1]), 248);
        assert_eq!(weyl_dimension(&rs("F4"), &[0, 0, 0, 1]), 26);
        assert_eq!(weyl_dimension(&rs("G2"), &[1, 0]), 7);
        assert_eq!(weyl_dimension(&rs("A2"), &[1, 1]), 8);
    }

    #[test]
    fn freudenthal_matches_weyl() {
        for (t, lam) in [
            ("A2", vec![1, 1]),
            ("G2", vec![0, 1]),
            ("B3", vec![1, 0, 1]),
            ("F4", vec![1, 0, 0, 0]),
            ("E6", vec![0, 1, 0, 0, 0, 0]),
        ] {
            let r = rs(t);
            let dom = freudenthal_dominant(&r, &lam);
            let total: u128 = dom
                .iter()
                .map(|(w, m)| *m as u128 * weyl_orbit_size(&r, w) as u128)
                .sum();
            assert_eq!(total, weyl_dimension(&r, &lam), "{t} {lam:?}");
        }
        // adjoint of G2 has zero weight with multiplicity 2
        let g2 = rs("G2");
        assert_eq!(freudenthal_dominant(&g2, &[0, 1])[&vec![0, 0]], 2);
    }

    #[test]
    fn modules_satisfy_relations() {
        for (t, lam) in [
            ("A1", vec![3]),
            ("A2", vec![1, 1]),
            ("B2", vec![0, 1]),
            ("C3", vec![0, 1, 0]),
            ("G2", vec![1, 0]),
            ("G2", vec![0, 1]),
            ("B3", vec![0, 0, 1]),
        ] {
            let r = rs(t);
            let m = WeightModule::new(&r, &lam, 1000).unwrap();
            assert_eq!(m.dim() as u128, weyl_dimension(&r, &lam));
            check_relations(&m, &r);
        }
    }

    #[test]
    fn weights_agree_with_freudenthal() {
        let r = rs("B3");
        let lam = [1, 0, 1];
        let m = WeightModule::new(&r, &lam, 1000).unwrap();
        let dom = freudenthal_dominant(&r, &lam);
        let wm = m.weight_multiplicities();
        for (w, k) in &dom {
            assert_eq!(wm[w], *k);
        }
    }

    #[test]
    fn refuses_oversized() {
        let r = rs("E8");
        assert!(matches!(
            WeightModule::new(&r, &[1, 0, 0, 0, 0, 0, 0, 0], 1000),
            Err(Error::TooLarge(_))
        ));
    }
}
