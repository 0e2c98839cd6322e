//! Simple Lie algebras in a Chevalley basis.
//!
//! Root vectors are realised as matrices on the smallest fundamental module:
//! simple root vectors act by the module's `e_i, f_i`, and every other root
//! vector is a normalised commutator of a simple one with a lower one. All
//! structure constants are then read off from matrix commutators, so they are
//! integers and satisfy the Chevalley normalisation by construction.

use crate::error::{Error, Result};
use crate::hwmod::{weyl_dimension, WeightModule};
use crate::linalg::{self, Echelon, Vector};
use crate::modp;
use crate::rational::Rat;
use crate::rootsys::{RootSystem, SimpleType};
use crate::sparse::SparseMat;

/// How a root vector is obtained from lower ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Recipe {
    /// `e_i` (positive) or `f_i` (negative).
    Simple(usize),
    /// `x = [x_simple, x_rest] / divisor`, with `simple` and `rest` root indices.
    Bracket { simple: usize, rest: usize, divisor: i64 },
}

/// A basis element `[x_a, x_b]` expanded on the basis.
type Bracket = Vec<(u32, i64)>;

#[derive(Clone, Debug)]
pub struct LieAlgebra {
    pub roots: RootSystem,
    recipes: Vec<Recipe>,
    /// `table[a * dim + b] = [b_a, b_b]`
    table: Vec<Bracket>,
}

/// Basis of `g`: root vectors for the positive roots, then for the negative
/// roots, then the coroots `h_1..h_l`.
impl LieAlgebra {
    pub fn new(t: SimpleType) -> Result<LieAlgebra> {
        let roots = RootSystem::new(t);
        let module = faithful_module(&roots)?;
        LieAlgebra::from_module(roots, &module)
    }

    pub fn parse(s: &str) -> Result<LieAlgebra> {
        LieAlgebra::new(SimpleType::parse(s)?)
    }

    fn from_module(roots: RootSystem, module: &WeightModule) -> Result<LieAlgebra> {
        let n = roots.num_positive();
        let l = roots.rank();
        let nr = 2 * n;
        let mut recipes = vec![Recipe::Simple(0); nr];
        let mut mats: Vec<Option<SparseMat>> = vec![None; nr];
        for i in 0..l {
            recipes[i] = Recipe::Simple(i);
            recipes[i + n] = Recipe::Simple(i);
            mats[i] = Some(module.e[i].clone());
            mats[i + n] = Some(module.f[i].clone());
        }
        for k in l..n {
            let r = roots.root(k);
            let (i, beta) = (0..l)
                .find_map(|i| {
                    let mut b = r.clone();
                    b[i] -= 1;
                    roots.root_index(&b).filter(|&bi| bi < n).map(|bi| (i, bi))
                })
                .ok_or_else(|| Error::Inconsistent(format!("root {r:?} has no predecessor")))?;
            let mut p = 0;
            let mut b = roots.root(beta);
            loop {
                b[i] -= 1;
                if roots.root_index(&b).is_some() {
                    p += 1;
                } else {
                    break;
                }
            }
            let div = p + 1;
            let xp = mats[i].as_ref().unwrap().commutator(mats[beta].as_ref().unwrap());
            let xp = xp.scale(&Rat::new(1, div));
            let xn = mats[i + n]
                .as_ref()
                .unwrap()
                .commutator(mats[beta + n].as_ref().unwrap())
                .scale(&Rat::new(1, div));
            let hk = module.cartan_action(roots.coroot(k));
            let c = xp.commutator(&xn);
            let sign = if c == hk {
                1
            } else if c == hk.scale(&Rat::int(-1)) {
                -1
            } else {
                return Err(Error::Inconsistent(format!("root vector for {r:?} is not normalised")));
            };
            recipes[k] = Recipe::Bracket { simple: i, rest: beta, divisor: div };
            recipes[k + n] = Recipe::Bracket { simple: i + n, rest: beta + n, divisor: sign * div };
            mats[k] = Some(xp);
            mats[k + n] = Some(if sign == 1 { xn } else { xn.scale(&Rat::int(-1)) });
        }
        let mats: Vec<SparseMat> = mats.into_iter().map(Option::unwrap).collect();

        let dim = nr + l;
        let mut table: Vec<Bracket> = vec![Vec::new(); dim * dim];
        for a in 0..nr {
            let ra = roots.root(a);
            for b in 0..nr {
                let rb = roots.root(b);
                let sum: Vec<i64> = ra.iter().zip(&rb).map(|(x, y)| x + y).collect();
                if sum.iter().all(|&x| x == 0) {
                    let (pos, sgn) = if a < n { (a, 1) } else { (a - n, -1) };
                    let h = roots.coroot(pos);
                    table[a * dim + b] = h
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(i, c)| ((nr + i) as u32, sgn * c.to_i64().expect("integral coroot")))
                        .collect();
                } else if let Some(g) = roots.root_index(&sum) {
                    let (row, col, val) = mats[g].first_nonzero().expect("nonzero root vector");
                    let v = vec![(col as u32, Rat::ONE)];
                    let ab = mats[a].apply_sparse(&mats[b].apply_sparse(&v));
                    let ba = mats[b].apply_sparse(&mats[a].apply_sparse(&v));
                    let get = |s: &[(u32, Rat)]| {
                        s.iter().find(|(r, _)| *r as usize == row).map_or(Rat::ZERO, |(_, x)| x.clone())
                    };
                    let nab = &(&get(&ab) - &get(&ba)) / &val;
                    let nab = nab
                        .to_i64()
                        .ok_or_else(|| Error::Inconsistent("non-integral structure constant".into()))?;
                    table[a * dim + b] = vec![(g as u32, nab)];
                }
            }
            for i in 0..l {
                let v = roots.pairing_simple(&ra, i);
                if v != 0 {
                    table[(nr + i) * dim + a] = vec![(a as u32, v)];
                    table[a * dim + nr + i] = vec![(a as u32, -v)];
                }
            }
        }
        Ok(LieAlgebra { roots, recipes, table })
    }

    pub fn rank(&self) -> usize {
        self.roots.rank()
    }

    pub fn dim(&self) -> usize {
        self.roots.num_roots() + self.roots.rank()
    }

    pub fn num_positive(&self) -> usize {
        self.roots.num_positive()
    }

    /// Basis index of the root vector for root index `k`.
    pub fn root_vector(&self, k: usize) -> usize {
        k
    }

    /// Basis index of `h_i`.
    pub fn cartan_index(&self, i: usize) -> usize {
        self.roots.num_roots() + i
    }

    /// Root index of a basis element, `None` for Cartan elements.
    pub fn root_of(&self, b: usize) -> Option<usize> {
        (b < self.roots.num_roots()).then_some(b)
    }

    pub fn recipe(&self, k: usize) -> Recipe {
        self.recipes[k]
    }

    /// Brackets of all basis pairs, row-major, as sparse integer expansions.
    pub fn structure_constants(&self) -> &[Vec<(u32, i64)>] {
        &self.table
    }

    pub fn basis_bracket(&self, a: usize, b: usize) -> &[(u32, i64)] {
        &self.table[a * self.dim() + b]
    }

    pub fn basis_vector(&self, b: usize) -> Vector {
        let mut v = linalg::zero_vec(self.dim());
        v[b] = Rat::ONE;
        v
    }

    /// Embeds a Cartan element given on `h_1..h_l`.
    pub fn cartan_element(&self, h: &[Rat]) -> Vector {
        let mut v = linalg::zero_vec(self.dim());
        let nr = self.roots.num_roots();
        v[nr..].clone_from_slice(h);
        v
    }

    pub fn bracket(&self, x: &[Rat], y: &[Rat]) -> Vector {
        let d = self.dim();
        let mut out = linalg::zero_vec(d);
        let ys: Vec<(usize, &Rat)> = y.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for &(b, yb) in &ys {
                let br = &self.table[a * d + b];
                if br.is_empty() {
                    continue;
                }
                let c = xa * yb;
                for (t, k) in br {
                    out[*t as usize] += &c * &Rat::int(*k);
                }
            }
        }
        out
    }

    /// Matrix of `ad x` by rows: entry `(r, c)` is the `r`-coordinate of `[x, b_c]`.
    pub fn ad_matrix(&self, x: &[Rat]) -> Vec<Vector> {
        let d = self.dim();
        let mut m = vec![linalg::zero_vec(d); d];
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for c in 0..d {
                for (t, k) in &self.table[a * d + c] {
                    m[*t as usize][c] += xa * &Rat::int(*k);
                }
            }
        }
        m
    }

    /// `ad x` restricted to the span of basis indices `cols`, as rows over all of `g`.
    pub fn ad_on(&self, x: &[Rat], cols: &[usize]) -> Vec<Vector> {
        let d = self.dim();
        let mut m = vec![linalg::zero_vec(cols.len()); d];
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (j, &c) in cols.iter().enumerate() {
                for (t, k) in &self.table[a * d + c] {
                    m[*t as usize][j] += xa * &Rat::int(*k);
                }
            }
        }
        m
    }

    /// `ad x` modulo the prime, for `x` given by residues.
    pub fn ad_matrix_modp(&self, x: &[u64], cols: &[usize]) -> Vec<Vec<u64>> {
        let d = self.dim();
        let p = modp::P;
        let mut m = vec![vec![0u64; cols.len()]; d];
        for (a, &xa) in x.iter().enumerate() {
            if xa == 0 {
                continue;
            }
            for (j, &c) in cols.iter().enumerate() {
                for (t, k) in &self.table[a * d + c] {
                    let cell = &mut m[*t as usize][j];
                    *cell = modp::add(*cell, modp::mul(xa, modp::from_i64(*k, p), p), p);
                }
            }
        }
        m
    }

    /// Killing form, from the root-sum formula on the Cartan subalgebra and
    /// invariance on root vectors.
    pub fn killing(&self, x: &[Rat], y: &[Rat]) -> Rat {
        let nr = self.roots.num_roots();
        let n = self.num_positive();
        let mut s = self.roots.killing_pair(&x[nr..], &y[nr..]);
        for a in 0..nr {
            let b = self.roots.negate_index(a);
            if x[a].is_zero() || y[b].is_zero() {
                continue;
            }
            let pos = if a < n { a } else { b };
            let hc = self.roots.coroot(pos);
            let kv = &self.roots.killing_pair(hc, hc) / &Rat::int(2);
            s += &(&x[a] * &y[b]) * &kv;
        }
        s
    }

    /// Killing form via traces of adjoint matrices.
    pub fn killing_by_trace(&self, x: &[Rat], y: &[Rat]) -> Rat {
        let ax = self.ad_matrix(x);
        let ay = self.ad_matrix(y);
        let d = self.dim();
        let mut s = Rat::ZERO;
        for i in 0..d {
            s += linalg::dot(&ax[i], &(0..d).map(|j| ay[j][i].clone()).collect::<Vec<_>>());
        }
        s
    }

    /// Elements of `within` (or all of `g`) commuting with every element of `xs`.
    pub fn centralizer(&self, xs: &[Vector], within: Option<&Echelon>) -> Echelon {
        let d = self.dim();
        let span: Vec<Vector> = match within {
            Some(e) => e.rows().to_vec(),
            None => (0..d).map(|b| self.basis_vector(b)).collect(),
        };
        let mut rows: Vec<Vector> = Vec::new();
        for x in xs {
            let imgs: Vec<Vector> = span.iter().map(|s| self.bracket(x, s)).collect();
            for r in 0..d {
                rows.push(imgs.iter().map(|v| v[r].clone()).collect());
            }
        }
        let coeffs = linalg::nullspace(&rows, span.len());
        Echelon::from_rows(
            d,
            coeffs.into_iter().map(|c| {
                let mut v = linalg::zero_vec(d);
                for (ci, s) in c.iter().zip(&span) {
                    linalg::axpy(&mut v, ci, s);
                }
                v
            }),
        )
    }

    /// Matrices of every basis element acting on a module of this algebra.
    pub fn represent(&self, m: &WeightModule) -> Vec<SparseMat> {
        let n = self.num_positive();
        let nr = 2 * n;
        let mut mats: Vec<SparseMat> = Vec::with_capacity(self.dim());
        for k in 0..nr {
            let x = match self.recipes[k] {
                Recipe::Simple(i) => {
                    if k < n {
                        m.e[i].clone()
                    } else {
                        m.f[i].clone()
                    }
                }
                Recipe::Bracket { simple, rest, divisor } => {
                    mats[simple].commutator(&mats[rest]).scale(&Rat::new(1, divisor))
                }
            };
            mats.push(x);
        }
        for i in 0..self.rank() {
            mats.push(m.h(i));
        }
        mats
    }
}

/// Smallest fundamental module.
pub fn faithful_module(rs: &RootSystem) -> Result<WeightModule> {
    let l = rs.rank();
    let best = (0..l)
        .min_by_key(|&i| {
            let mut w = vec![0; l];
            w[i] = 1;
            weyl_dimension(rs, &w)
        })
        .expect("rank at least one");
    let mut w = vec![0; l];
    w[best] = 1;
    WeightModule::new(rs, &w, usize::MAX)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_element(g: &LieAlgebra, rng: &mut ChaCha8Rng) -> Vector {
        (0..g.dim()).map(|_| Rat::int(rng.gen_range(-3..=3))).collect()
    }

    #[test]
    fn dimensions() {
        for (t, d) in [("A1", 3), ("A3", 15), ("B6", 78), ("G2", 14), ("F4", 52), ("E6", 78)] {
            assert_eq!(LieAlgebra::parse(t).unwrap().dim(), d, "{t}");
        }
    }

    #[test]
    fn jacobi_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for t in ["A2", "B3", "C3", "G2", "F4"] {
            let g = LieAlgebra::parse(t).unwrap();
            for _ in 0..3 {
                let (x, y, z) = (random_element(&g, &mut rng), random_element(&g, &mut rng), random_element(&g, &mut rng));
                let mut s = g.bracket(&x, &g.bracket(&y, &z));
                linalg::axpy(&mut s, &Rat::ONE, &g.bracket(&y, &g.bracket(&z, &x)));
                linalg::axpy(&mut s, &Rat::ONE, &g.bracket(&z, &g.bracket(&x, &y)));
                assert!(linalg::is_zero_vec(&s), "{t}");
            }
        }
    }

    #[test]
    fn chevalley_normalisation() {
        for t in ["B3", "G2", "F4", "D4"] {
            let g = LieAlgebra::parse(t).unwrap();
            let nr = g.roots.num_roots();
            for a in 0..nr {
                for b in 0..nr {
                    let br = g.basis_bracket(a, b);
                    let (ra, rb) = (g.roots.root(a), g.roots.root(b));
                    let sum: Vec<i64> = ra.iter().zip(&rb).map(|(x, y)| x + y).collect();
                    if let Some(c) = g.roots.root_index(&sum) {
                        // N = +-(p+1) for the b-string through a
                        let mut p = 0;
                        let mut s = rb.clone();
                        loop {
                            for (si, ai) in s.iter_mut().zip(&ra) {
                                *si -= ai;
                            }
                            if g.roots.root_index(&s).is_some() {
                                p += 1;
                            } else {
                                break;
                            }
                        }
                        assert_eq!(br.len(), 1);
                        assert_eq!(br[0].0 as usize, c);
                        assert_eq!(br[0].1.abs(), p + 1, "{t} {ra:?} {rb:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn killing_form_matches_traces() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for t in ["A2", "G2", "B3"] {
            let g = LieAlgebra::parse(t).unwrap();
            for _ in 0..3 {
                let (x, y) = (random_element(&g, &mut rng), random_element(&g, &mut rng));
                assert_eq!(g.killing(&x, &y), g.killing_by_trace(&x, &y), "{t}");
            }
        }
    }

    #[test]
    fn representation_property_on_spinor() {
        let g = LieAlgebra::parse("B3").unwrap();
        let m = WeightModule::new(&g.roots, &[0, 0, 1], 100).unwrap();
        let rho = g.represent(&m);
        let d = g.dim();
        for a in 0..d {
            for b in 0..d {
                let mut expect = SparseMat::zero(m.dim(), m.dim());
                for (t, k) in g.basis_bracket(a, b) {
                    expect = expect.add_scaled(&rho[*t as usize], &Rat::int(*k));
                }
                assert_eq!(rho[a].commutator(&rho[b]), expect);
            }
        }
    }

    #[test]
    fn centralizer_of_regular_cartan() {
        let g = LieAlgebra::parse("A2").unwrap();
        let h = g.cartan_element(&[Rat::int(1), Rat::int(3)]);
        assert_eq!(g.centralizer(&[h], None).dim(), 2);
    }
}
