//! Root systems of simple type, the rational Cartan space, and the Weyl
//! group acting on root indices.
//!
//! Root indexing: `0..n` are the positive roots in height order (simple roots
//! first, ties broken by descending lexicographic order of coordinates),
//! `n..2n` are their negatives in the same order.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, Vector};
use crate::rational::Rat;

/// A simple type such as `E7` or `B6`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SimpleType {
    pub letter: char,
    pub rank: usize,
}

impl SimpleType {
    pub fn new(letter: char, rank: usize) -> Result<SimpleType> {
        let letter = letter.to_ascii_uppercase();
        let ok = match letter {
            'A' => rank >= 1,
            'B' => rank >= 2,
            'C' => rank >= 3,
            'D' => rank >= 4,
            'E' => (6..=8).contains(&rank),
            'F' => rank == 4,
            'G' => rank == 2,
            _ => false,
        };
        if ok {
            Ok(SimpleType { letter, rank })
        } else {
            Err(Error::InvalidType(format!("{letter}{rank}")))
        }
    }

    /// Parses labels like `"E7"` or `"b6"`.
    pub fn parse(s: &str) -> Result<SimpleType> {
        let s = s.trim();
        let mut chars = s.chars();
        let letter = chars.next().ok_or_else(|| Error::InvalidType(s.into()))?;
        let rank: usize = chars.as_str().parse().map_err(|_| Error::InvalidType(s.into()))?;
        SimpleType::new(letter, rank)
    }

    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut c = vec![vec![0i64; n]; n];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize| {
            c[i][j] = -1;
            c[j][i] = -1;
        };
        match self.letter {
            'A' | 'B' | 'C' => {
                for i in 0..n - 1 {
                    link(i, i + 1);
                }
            }
            'D' => {
                for i in 0..n - 2 {
                    link(i, i + 1);
                }
                link(n - 3, n - 1);
            }
            'E' => {
                link(0, 2);
                link(1, 3);
                for i in 2..n - 1 {
                    link(i, i + 1);
                }
            }
            'F' => {
                link(0, 1);
                link(1, 2);
                link(2, 3);
            }
            'G' => link(0, 1),
            _ => unreachable!(),
        }
        // c[i][j] = <alpha_i, alpha_j^vee>
        match self.letter {
            'B' => c[n - 2][n - 1] = -2,
            'C' => c[n - 1][n - 2] = -2,
            'F' => c[1][2] = -2,
            'G' => c[1][0] = -3,
            _ => {}
        }
        c
    }

    /// Order of the Weyl group by the classical formulas.
    pub fn weyl_order_formula(&self) -> u128 {
        let fact = |k: usize| (1..=k as u128).product::<u128>();
        match (self.letter, self.rank) {
            ('A', n) => fact(n + 1),
            ('B', n) | ('C', n) => (1u128 << n) * fact(n),
            ('D', n) => (1u128 << (n - 1)) * fact(n),
            ('E', 6) => 51_840,
            ('E', 7) => 2_903_040,
            ('E', 8) => 696_729_600,
            ('F', 4) => 1_152,
            ('G', 2) => 12,
            _ => unreachable!(),
        }
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.letter, self.rank)
    }
}

/// Coordinates on the basis `h_1..h_l` of the Cartan subalgebra.
pub type CartanVector = Vec<Rat>;

/// Image of each root index under a Weyl group element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeylPermutation(pub Box<[u8]>);

impl WeylPermutation {
    pub fn identity(nroots: usize) -> WeylPermutation {
        WeylPermutation((0..nroots).map(|i| i as u8).collect())
    }

    #[inline]
    pub fn image(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    /// `(self * other)(i) = self(other(i))`
    pub fn compose(&self, other: &WeylPermutation) -> WeylPermutation {
        WeylPermutation(other.0.iter().map(|&j| self.0[j as usize]).collect())
    }

    pub fn inverse(&self) -> WeylPermutation {
        let mut inv = vec![0u8; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j as usize] = i as u8;
        }
        WeylPermutation(inv.into_boxed_slice())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RootSystem {
    pub simple_type: SimpleType,
    /// `cartan[i][j] = <alpha_i, alpha_j^vee> = alpha_i(h_j)`
    pub cartan: Vec<Vec<i64>>,
    pub positive_roots: Vec<Vec<i64>>,
    /// Symmetrised squared lengths `(alpha_i, alpha_i)` with the shortest equal to 2.
    pub simple_norms: Vec<i64>,
    /// Killing form on `h_1..h_l`.
    pub form: Vec<Vec<Rat>>,
    #[serde(skip)]
    index: HashMap<Vec<i64>, usize>,
    #[serde(skip)]
    coroots: Vec<CartanVector>,
    #[serde(skip)]
    simple_reflections: Vec<WeylPermutation>,
    #[serde(skip)]
    form_inverse: Vec<Vec<Rat>>,
}

impl RootSystem {
    pub fn new(t: SimpleType) -> RootSystem {
        RootSystem::from_cartan(t, t.cartan_matrix())
    }

    pub fn build(letter: char, rank: usize) -> Result<RootSystem> {
        Ok(RootSystem::new(SimpleType::new(letter, rank)?))
    }

    fn from_cartan(t: SimpleType, cartan: Vec<Vec<i64>>) -> RootSystem {
        let l = cartan.len();
        let simple_norms = symmetrizer(&cartan);

        let pairing = |b: &[i64], i: usize| -> i64 { (0..l).map(|j| b[j] * cartan[j][i]).sum() };
        let mut by_height: Vec<Vec<Vec<i64>>> = vec![(0..l)
            .map(|i| {
                let mut v = vec![0; l];
                v[i] = 1;
                v
            })
            .collect()];
        let mut known: HashSet<Vec<i64>> = by_height[0].iter().cloned().collect();
        loop {
            let mut next: Vec<Vec<i64>> = Vec::new();
            for b in by_height.last().unwrap() {
                for i in 0..l {
                    // alpha_i-string through b: b - p alpha_i, ..., b + q alpha_i
                    let mut p = 0;
                    let mut c = b.clone();
                    loop {
                        c[i] -= 1;
                        if known.contains(&c) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    let q = p - pairing(b, i);
                    if q > 0 {
                        let mut nb = b.clone();
                        nb[i] += 1;
                        if !next.contains(&nb) {
                            next.push(nb);
                        }
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            next.sort_by(|a, b| b.cmp(a));
            known.extend(next.iter().cloned());
            by_height.push(next);
        }
        let positive_roots: Vec<Vec<i64>> = by_height.into_iter().flatten().collect();
        let n = positive_roots.len();
        let mut index = HashMap::new();
        for (k, r) in positive_roots.iter().enumerate() {
            index.insert(r.clone(), k);
            index.insert(r.iter().map(|x| -x).collect(), k + n);
        }

        let mut rs = RootSystem {
            simple_type: t,
            cartan,
            positive_roots,
            simple_norms,
            form: Vec::new(),
            index,
            coroots: Vec::new(),
            simple_reflections: Vec::new(),
            form_inverse: Vec::new(),
        };
        rs.coroots = (0..2 * n).map(|k| rs.coroot_of(k)).collect();
        rs.form = rs.trace_form();
        rs.form_inverse = linalg::inverse(&rs.form).expect("Killing form is nondegenerate");
        rs.simple_reflections = (0..l).map(|i| rs.reflection_perm(i)).collect();
        rs
    }

    /// Restores the derived tables after deserialisation.
    pub fn rehydrate(self) -> RootSystem {
        RootSystem::from_cartan(self.simple_type, self.cartan)
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn num_positive(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn num_roots(&self) -> usize {
        2 * self.positive_roots.len()
    }

    /// Simple-root coordinates of root index `k` (negatives included).
    pub fn root(&self, k: usize) -> Vec<i64> {
        let n = self.num_positive();
        if k < n {
            self.positive_roots[k].clone()
        } else {
            self.positive_roots[k - n].iter().map(|x| -x).collect()
        }
    }

    pub fn root_index(&self, coords: &[i64]) -> Option<usize> {
        self.index.get(coords).copied()
    }

    pub fn negate_index(&self, k: usize) -> usize {
        let n = self.num_positive();
        if k < n {
            k + n
        } else {
            k - n
        }
    }

    pub fn height(&self, k: usize) -> i64 {
        self.root(k).iter().sum()
    }

    /// `(alpha, beta)` in the normalisation where short simple roots have length 2.
    pub fn root_inner(&self, a: &[i64], b: &[i64]) -> i64 {
        let l = self.rank();
        let mut s = 0;
        for i in 0..l {
            if a[i] == 0 {
                continue;
            }
            for j in 0..l {
                // (alpha_i, alpha_j) = cartan[i][j] * |alpha_j|^2 / 2
                s += a[i] * b[j] * self.cartan[i][j] * self.simple_norms[j] / 2;
            }
        }
        s
    }

    /// `<beta, alpha_i^vee> = beta(h_i)`
    pub fn pairing_simple(&self, beta: &[i64], i: usize) -> i64 {
        (0..self.rank()).map(|j| beta[j] * self.cartan[j][i]).sum()
    }

    fn coroot_of(&self, k: usize) -> CartanVector {
        let b = self.root(k);
        let nb = self.root_inner(&b, &b);
        (0..self.rank())
            .map(|i| Rat::new(b[i] * self.simple_norms[i], nb))
            .collect()
    }

    /// `h_beta` expanded on `h_1..h_l`.
    pub fn coroot(&self, k: usize) -> &CartanVector {
        &self.coroots[k]
    }

    /// `beta(h)` for root index `k`.
    pub fn root_value(&self, k: usize, h: &[Rat]) -> Rat {
        let b = self.root(k);
        let mut s = Rat::ZERO;
        for i in 0..self.rank() {
            let c = self.pairing_simple(&b, i);
            if c != 0 && !h[i].is_zero() {
                s += &h[i] * &Rat::int(c);
            }
        }
        s
    }

    /// `alpha_i(h)` for the simple roots.
    pub fn simple_values(&self, h: &[Rat]) -> Vec<Rat> {
        (0..self.rank()).map(|i| self.root_value(i, h)).collect()
    }

    /// Weight `mu` (fundamental-weight coordinates) evaluated on `h`.
    pub fn weight_value(mu: &[i64], h: &[Rat]) -> Rat {
        let mut s = Rat::ZERO;
        for (m, x) in mu.iter().zip(h) {
            if *m != 0 && !x.is_zero() {
                s += &Rat::int(*m) * x;
            }
        }
        s
    }

    fn trace_form(&self) -> Vec<Vec<Rat>> {
        let l = self.rank();
        let n = self.num_positive();
        let mut f = vec![vec![0i64; l]; l];
        for k in 0..n {
            let b = &self.positive_roots[k];
            let vals: Vec<i64> = (0..l).map(|i| self.pairing_simple(b, i)).collect();
            for i in 0..l {
                for j in 0..l {
                    f[i][j] += 2 * vals[i] * vals[j];
                }
            }
        }
        f.into_iter().map(|r| r.into_iter().map(Rat::int).collect()).collect()
    }

    pub fn killing_pair(&self, h: &[Rat], k: &[Rat]) -> Rat {
        let l = self.rank();
        let mut s = Rat::ZERO;
        for i in 0..l {
            if h[i].is_zero() {
                continue;
            }
            for j in 0..l {
                if !k[j].is_zero() {
                    s += &(&h[i] * &self.form[i][j]) * &k[j];
                }
            }
        }
        s
    }

    /// `nu^{-1}(mu)`: the Cartan element `x` with `(x, y) = mu(y)` for all `y`.
    pub fn weight_to_cartan(&self, mu: &[i64]) -> CartanVector {
        let l = self.rank();
        (0..l)
            .map(|i| {
                let mut s = Rat::ZERO;
                for j in 0..l {
                    if mu[j] != 0 {
                        s += &self.form_inverse[i][j] * &Rat::int(mu[j]);
                    }
                }
                s
            })
            .collect()
    }

    fn reflection_perm(&self, i: usize) -> WeylPermutation {
        let perm: Vec<u8> = (0..self.num_roots())
            .map(|k| {
                let mut b = self.root(k);
                let c = self.pairing_simple(&b, i);
                b[i] -= c;
                self.root_index(&b).expect("reflection preserves roots") as u8
            })
            .collect();
        WeylPermutation(perm.into_boxed_slice())
    }

    pub fn simple_reflection(&self, i: usize) -> &WeylPermutation {
        &self.simple_reflections[i]
    }

    pub fn identity(&self) -> WeylPermutation {
        WeylPermutation::identity(self.num_roots())
    }

    /// `w h`, using `w h_alpha = h_{w alpha}`.
    pub fn weyl_act_cartan(&self, w: &WeylPermutation, h: &[Rat]) -> CartanVector {
        let l = self.rank();
        let mut out = linalg::zero_vec(l);
        for (j, c) in h.iter().enumerate() {
            if !c.is_zero() {
                linalg::axpy(&mut out, c, self.coroot(w.image(j)));
            }
        }
        out
    }

    /// Weyl element as the action on simple-root coordinates of roots.
    pub fn weyl_act_root(&self, w: &WeylPermutation, k: usize) -> usize {
        w.image(k)
    }

    /// Dominant Weyl conjugate `h' = w h` together with `w`.
    pub fn dominant_representative(&self, h: &[Rat]) -> (CartanVector, WeylPermutation) {
        let mut cur = h.to_vec();
        let mut w = self.identity();
        'outer: loop {
            for i in 0..self.rank() {
                let v = self.root_value(i, &cur);
                if v.is_negative() {
                    // s_i h = h - alpha_i(h) h_i
                    cur[i] -= &v;
                    w = self.simple_reflections[i].compose(&w);
                    continue 'outer;
                }
            }
            break;
        }
        (cur, w)
    }

    pub fn is_dominant(&self, h: &[Rat]) -> bool {
        (0..self.rank()).all(|i| !self.root_value(i, h).is_negative())
    }

    /// All Weyl group elements, breadth first by word length.
    ///
    /// Refuses groups larger than `limit` elements.
    pub fn weyl_group(&self, limit: u128) -> Result<Vec<WeylPermutation>> {
        let order = self.simple_type.weyl_order_formula();
        if order > limit {
            return Err(Error::TooLarge(format!(
                "Weyl group of {} has {} elements (limit {})",
                self.simple_type, order, limit
            )));
        }
        let id = self.identity();
        let mut seen: HashSet<WeylPermutation> = HashSet::with_capacity(order as usize);
        let mut out = Vec::with_capacity(order as usize);
        let mut queue = VecDeque::new();
        seen.insert(id.clone());
        queue.push_back(id);
        while let Some(w) = queue.pop_front() {
            for s in &self.simple_reflections {
                let ws = w.compose(s);
                if seen.insert(ws.clone()) {
                    queue.push_back(ws);
                }
            }
            out.push(w);
        }
        Ok(out)
    }

    /// Size of the Weyl orbit of rho, which equals the group order.
    pub fn weyl_order_by_orbit(&self) -> u128 {
        let l = self.rank();
        assert!(l <= 8);
        let pack = |v: &[i64]| -> u64 {
            v.iter()
                .enumerate()
                .fold(0u64, |acc, (i, &x)| acc | (((x as i8) as u8 as u64) << (8 * i)))
        };
        let start = vec![1i64; l];
        let mut seen = HashSet::new();
        seen.insert(pack(&start));
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for i in 0..l {
                let c = v[i];
                let mut nv = v.clone();
                for j in 0..l {
                    nv[j] -= c * self.cartan[i][j];
                }
                if seen.insert(pack(&nv)) {
                    stack.push(nv);
                }
            }
        }
        seen.len() as u128
    }

    /// Highest root index (the last positive root).
    pub fn highest_root(&self) -> usize {
        self.num_positive() - 1
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "schema": "rootsys/1",
            "type": self.simple_type.to_string(),
            "cartan": self.cartan,
            "positive_roots": self.positive_roots,
            "form": self.form,
        })
    }
}

/// Squared lengths `d_i` with `d_i * cartan[i][j] = d_j * cartan[j][i]`,
/// scaled so the shortest simple root has length 2 on each component.
fn symmetrizer(c: &[Vec<i64>]) -> Vec<i64> {
    let l = c.len();
    let mut d: Vec<Option<Rat>> = vec![None; l];
    for start in 0..l {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(Rat::ONE);
        let mut stack = vec![start];
        let mut comp = vec![start];
        while let Some(i) = stack.pop() {
            for j in 0..l {
                if i != j && c[i][j] != 0 && d[j].is_none() {
                    // (a_i,a_j) = c[i][j] d_j / 2 * ... symmetric => d_j = d_i c[j][i] / c[i][j]
                    let dj = d[i].clone().unwrap() * Rat::new(c[j][i], c[i][j]);
                    d[j] = Some(dj);
                    stack.push(j);
                    comp.push(j);
                }
            }
        }
        let min = comp.iter().map(|&i| d[i].clone().unwrap()).min().unwrap();
        for &i in &comp {
            let v = d[i].clone().unwrap() / &min;
            d[i] = Some(v);
        }
    }
    d.into_iter()
        .map(|x| {
            let v = x.unwrap() * Rat::int(2);
            v.to_i64().expect("integral root lengths")
        })
        .collect()
}

/// Cartan matrix of an arbitrary semisimple type given as components.
pub fn block_cartan(types: &[SimpleType]) -> Vec<Vec<i64>> {
    let total: usize = types.iter().map(|t| t.rank).sum();
    let mut m = vec![vec![0; total]; total];
    let mut off = 0;
    for t in types {
        let c = t.cartan_matrix();
        for i in 0..t.rank {
            for j in 0..t.rank {
                m[off + i][off + j] = c[i][j];
            }
        }
        off += t.rank;
    }
    m
}

/// Recognises the simple components of a Cartan matrix.
///
/// Returns, for each connected component, its type and the list of node
/// indices ordered so that they match the standard numbering of that type.
pub fn recognize_cartan(c: &[Vec<i64>]) -> Result<Vec<(SimpleType, Vec<usize>)>> {
    let l = c.len();
    let mut seen = vec![false; l];
    let mut out = Vec::new();
    for s in 0..l {
        if seen[s] {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut k = 0;
        while k < comp.len() {
            let i = comp[k];
            for j in 0..l {
                if !seen[j] && c[i][j] != 0 {
                    seen[j] = true;
                    comp.push(j);
                }
            }
            k += 1;
        }
        comp.sort();
        let sub: Vec<Vec<i64>> = comp.iter().map(|&i| comp.iter().map(|&j| c[i][j]).collect()).collect();
        let (t, order) = recognize_connected(&sub)
            .ok_or_else(|| Error::Recognition(format!("unrecognised Cartan matrix {sub:?}")))?;
        out.push((t, order.into_iter().map(|i| comp[i]).collect()));
    }
    Ok(out)
}

fn candidate_types(rank: usize) -> Vec<SimpleType> {
    let mut v = Vec::new();
    for letter in ['A', 'B', 'C', 'D', 'E', 'F', 'G'] {
        if let Ok(t) = SimpleType::new(letter, rank) {
            v.push(t);
        }
    }
    v
}

fn recognize_connected(c: &[Vec<i64>]) -> Option<(SimpleType, Vec<usize>)> {
    let n = c.len();
    for t in candidate_types(n) {
        let std = t.cartan_matrix();
        // Find bijection pos -> node with c[node_i][node_j] == std[i][j].
        let mut assign: Vec<usize> = Vec::with_capacity(n);
        let mut used = vec![false; n];
        if match_nodes(c, &std, &mut assign, &mut used) {
            return Some((t, assign));
        }
    }
    None
}

fn match_nodes(c: &[Vec<i64>], std: &[Vec<i64>], assign: &mut Vec<usize>, used: &mut [bool]) -> bool {
    let n = c.len();
    let k = assign.len();
    if k == n {
        return true;
    }
    for node in 0..n {
        if used[node] {
            continue;
        }
        let ok = (0..k).all(|i| c[assign[i]][node] == std[i][k] && c[node][assign[i]] == std[k][i]);
        if ok {
            used[node] = true;
            assign.push(node);
            if match_nodes(c, std, assign, used) {
                return true;
            }
            assign.pop();
            used[node] = false;
        }
    }
    false
}

/// `alpha_i`s expressed in fundamental-weight coordinates (rows of the Cartan matrix).
pub fn simple_root_weight(rs: &RootSystem, i: usize) -> Vec<i64> {
    rs.cartan[i].clone()
}

/// Cartan-space vector with unit coordinate `i`.
pub fn unit(l: usize, i: usize) -> Vector {
    let mut v = linalg::zero_vec(l);
    v[i] = Rat::ONE;
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(SimpleType::parse(s).unwrap())
    }

    #[test]
    fn positive_root_counts() {
        for (t, n) in [
            ("A1", 1),
            ("A4", 10),
            ("B6", 36),
            ("C3", 9),
            ("D4", 12),
            ("E6", 36),
            ("E7", 63),
            ("E8", 120),
            ("F4", 24),
            ("G2", 6),
        ] {
            assert_eq!(rs(t).num_positive(), n, "{t}");
        }
    }

    #[test]
    fn invalid_types() {
        assert!(SimpleType::new('E', 9).is_err());
        assert!(SimpleType::new('D', 3).is_err());
        assert!(SimpleType::parse("Q2").is_err());
        assert!(SimpleType::parse("F").is_err());
    }

    #[test]
    fn height_order_with_simple_first() {
        for t in ["B6", "E6", "F4", "G2"] {
            let r = rs(t);
            for i in 0..r.rank() {
                let mut e = vec![0; r.rank()];
                e[i] = 1;
                assert_eq!(r.positive_roots[i], e);
            }
            for k in 1..r.num_positive() {
                assert!(r.height(k - 1) <= r.height(k));
            }
        }
    }

    #[test]
    fn b6_cartan_indices() {
        let r = rs("B6");
        // 1-based Cartan basis 73..78 in a 78-dimensional algebra
        assert_eq!(2 * r.num_positive() + 1, 73);
        assert_eq!(2 * r.num_positive() + r.rank(), 78);
    }

    #[test]
    fn e7_roots_by_reflection_closure() {
        // Independent oracle: close the simple roots under simple reflections.
        let r = rs("E7");
        let l = r.rank();
        let mut set: HashSet<Vec<i64>> = HashSet::new();
        let mut stack: Vec<Vec<i64>> = (0..l).map(|i| unit_i(l, i)).collect();
        while let Some(b) = stack.pop() {
            if !set.insert(b.clone()) {
                continue;
            }
            for i in 0..l {
                let c: i64 = (0..l).map(|j| b[j] * r.cartan[j][i]).sum();
                let mut nb = b.clone();
                nb[i] -= c;
                if !set.contains(&nb) {
                    stack.push(nb);
                }
            }
        }
        let pos = set.iter().filter(|b| b.iter().all(|&x| x >= 0)).count();
        assert_eq!(pos, 63);
    }

    fn unit_i(l: usize, i: usize) -> Vec<i64> {
        let mut v = vec![0; l];
        v[i] = 1;
        v
    }

    #[test]
    fn weyl_orders() {
        assert_eq!(rs("A1").weyl_group(100).unwrap().len(), 2);
        assert_eq!(rs("G2").weyl_group(100).unwrap().len(), 12);
        for t in ["A1", "A2", "A3", "A4", "B2", "B3", "C3", "D4", "F4", "G2", "E6"] {
            let r = rs(t);
            assert_eq!(r.weyl_order_by_orbit(), r.simple_type.weyl_order_formula(), "{t}");
        }
    }

    #[test]
    fn weyl_group_limit() {
        assert!(rs("E8").weyl_group(1_000_000).is_err());
    }

    #[test]
    fn simple_reflection_negates_coroot() {
        let r = rs("B3");
        for i in 0..3 {
            let h = unit(3, i);
            let img = r.weyl_act_cartan(r.simple_reflection(i), &h);
            assert_eq!(img, h.iter().map(|x| -x).collect::<Vec<_>>());
        }
        let id = r.identity();
        let h = vec![Rat::new(1, 3), Rat::int(-2), Rat::int(5)];
        assert_eq!(r.weyl_act_cartan(&id, &h), h);
    }

    #[test]
    fn dominant_basic() {
        let r = rs("A1");
        let (h, w) = r.dominant_representative(&[Rat::int(-1)]);
        assert_eq!(h, vec![Rat::int(1)]);
        assert_eq!(&w, r.simple_reflection(0));
        let (h2, w2) = r.dominant_representative(&[Rat::int(3)]);
        assert_eq!(h2, vec![Rat::int(3)]);
        assert_eq!(w2, r.identity());
    }

    #[test]
    fn recognise_permuted_components() {
        // A2 + G2 with shuffled node order
        let m = block_cartan(&[SimpleType::new('G', 2).unwrap(), SimpleType::new('A', 2).unwrap()]);
        let perm = [2, 0, 3, 1];
        let pm: Vec<Vec<i64>> = (0..4).map(|i| (0..4).map(|j| m[perm[i]][perm[j]]).collect()).collect();
        let comps = recognize_cartan(&pm).unwrap();
        let mut names: Vec<String> = comps.iter().map(|(t, _)| t.to_string()).collect();
        names.sort();
        assert_eq!(names, vec!["A2", "G2"]);
        for (t, nodes) in comps {
            let std = t.cartan_matrix();
            for i in 0..t.rank {
                for j in 0..t.rank {
                    assert_eq!(pm[nodes[i]][nodes[j]], std[i][j]);
                }
            }
        }
    }

    #[test]
    fn b6_spinor_preimages_equal_norm() {
        let r = rs("B6");
        let mu = vec![0, 0, 0, 0, 0, 1];
        let x = r.weight_to_cartan(&mu);
        let n0 = r.killing_pair(&x, &x);
        // walk the orbit of the highest weight
        let mut seen = HashSet::new();
        let mut stack = vec![mu];
        while let Some(m) = stack.pop() {
            if !seen.insert(m.clone()) {
                continue;
            }
            let y = r.weight_to_cartan(&m);
            assert_eq!(r.killing_pair(&y, &y), n0);
            for i in 0..6 {
                let c = m[i];
                let nm: Vec<i64> = (0..6).map(|j| m[j] - c * r.cartan[i][j]).collect();
                stack.push(nm);
            }
        }
        assert_eq!(seen.len(), 64);
    }

    #[test]
    fn weight_to_cartan_defining_property() {
        let r = rs("F4");
        let mu = vec![1, -2, 0, 3];
        let x = r.weight_to_cartan(&mu);
        for j in 0..4 {
            let y = unit(4, j);
            assert_eq!(r.killing_pair(&x, &y), Rat::int(mu[j]));
        }
        assert!(r.weight_to_cartan(&[0, 0, 0, 0]).iter().all(Rat::is_zero));
    }
}
