//! Subalgebras of a simple Lie algebra, held as echelon subspaces of `g`.
//!
//! Structure questions (radical, Levi factor, type) are answered with the help
//! of the torus of `h` normalising the subalgebra: everything is graded by its
//! weights, which keeps the linear systems small and the Cartan subalgebras
//! split over the rationals.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::liealg::LieAlgebra;
use crate::linalg::{self, Echelon, Frame, Vector};
use crate::rational::Rat;
use crate::rootsys::{recognize_cartan, unit, CartanVector, RootSystem, SimpleType};

type TorusWeight = Vec<Rat>;

pub fn is_subalgebra(g: &LieAlgebra, a: &Echelon) -> bool {
    let rows = a.rows();
    (0..rows.len()).all(|i| (i + 1..rows.len()).all(|j| a.contains(&g.bracket(&rows[i], &rows[j]))))
}

/// Span of `[x, y]` over basis vectors `x` of `a` and `y` of `b`.
pub fn bracket_span(g: &LieAlgebra, a: &Echelon, b: &Echelon) -> Echelon {
    let mut out = Echelon::new(g.dim());
    let same = a == b;
    for (i, x) in a.rows().iter().enumerate() {
        let start = if same { i + 1 } else { 0 };
        for y in &b.rows()[start..] {
            out.insert(g.bracket(x, y));
        }
    }
    out
}

pub fn derived_subalgebra(g: &LieAlgebra, a: &Echelon) -> Result<Echelon> {
    let d = bracket_span(g, a, a);
    if !d.is_subspace_of(a) {
        return Err(Error::NotSubalgebra(format!("subspace of dimension {}", a.dim())));
    }
    Ok(d)
}

/// Smallest subalgebra containing `gens`.
pub fn subalgebra_generated_by(g: &LieAlgebra, gens: &[Vector]) -> Echelon {
    let mut span = Echelon::new(g.dim());
    let mut basis: Vec<Vector> = Vec::new();
    for x in gens {
        if span.insert(x.clone()) {
            basis.push(x.clone());
        }
    }
    let mut k = 0;
    while k < basis.len() {
        for j in 0..k {
            let b = g.bracket(&basis[j], &basis[k]);
            if span.insert(b.clone()) {
                basis.push(b);
            }
        }
        k += 1;
    }
    span
}

/// Basis of `{t in h : [t, a] in a}`, as coordinates on `h_1..h_l`.
pub fn normalizing_torus(g: &LieAlgebra, a: &Echelon) -> Vec<CartanVector> {
    let l = g.rank();
    let images: Vec<Vec<Vector>> = (0..l)
        .map(|i| {
            let h = g.cartan_element(&unit(l, i));
            a.rows().iter().map(|x| a.reduce(&g.bracket(&h, x))).collect()
        })
        .collect();
    let mut eqs: Vec<Vector> = Vec::new();
    for r in 0..a.dim() {
        for c in 0..g.dim() {
            let row: Vector = (0..l).map(|i| images[i][r][c].clone()).collect();
            if !linalg::is_zero_vec(&row) {
                eqs.push(row);
            }
        }
    }
    linalg::nullspace(&eqs, l)
}

/// Weight of every basis element of `g` under a torus.
pub fn basis_weights(g: &LieAlgebra, torus: &[CartanVector]) -> Vec<TorusWeight> {
    let nr = g.roots.num_roots();
    (0..g.dim())
        .map(|b| {
            if b < nr {
                torus.iter().map(|t| g.roots.root_value(b, t)).collect()
            } else {
                vec![Rat::ZERO; torus.len()]
            }
        })
        .collect()
}

/// Weight-space decomposition of a subspace stable under the torus.
///
/// A stable subspace is the sum of its weight components, so each component
/// is spanned by the projections of the basis.
pub fn weight_spaces(a: &Echelon, weights: &[TorusWeight]) -> BTreeMap<TorusWeight, Echelon> {
    let mut groups: BTreeMap<&TorusWeight, Vec<usize>> = BTreeMap::new();
    for (b, w) in weights.iter().enumerate() {
        groups.entry(w).or_default().push(b);
    }
    let d = a.width();
    let mut out = BTreeMap::new();
    for (w, idx) in groups {
        let space = Echelon::from_rows(
            d,
            a.rows().iter().map(|r| {
                let mut v = linalg::zero_vec(d);
                for &b in &idx {
                    v[b] = r[b].clone();
                }
                v
            }),
        );
        if space.dim() > 0 {
            out.insert(w.clone(), space);
        }
    }
    out
}

/// Gram matrix of the Killing form of `a` itself (traces of `ad_a`).
pub fn intrinsic_killing_form(g: &LieAlgebra, a: &Echelon) -> Result<Vec<Vector>> {
    let n = a.dim();
    let rows = a.rows();
    // ad[i][k][j]: coefficient of basis k in [a_i, a_j]
    let mut ad = vec![vec![linalg::zero_vec(n); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let c = a
                .coords(&g.bracket(&rows[i], &rows[j]))
                .ok_or_else(|| Error::NotSubalgebra(format!("subspace of dimension {n}")))?;
            for (k, ck) in c.into_iter().enumerate() {
                if !ck.is_zero() {
                    ad[j][k][i] = -ck.clone();
                    ad[i][k][j] = ck;
                }
            }
        }
    }
    let sparse: Vec<Vec<(usize, usize, Rat)>> = ad
        .iter()
        .map(|m| {
            let mut s = Vec::new();
            for (k, row) in m.iter().enumerate() {
                for (j, c) in row.iter().enumerate() {
                    if !c.is_zero() {
                        s.push((k, j, c.clone()));
                    }
                }
            }
            s
        })
        .collect();
    let mut gram = vec![linalg::zero_vec(n); n];
    for i in 0..n {
        for j in i..n {
            let mut s = Rat::ZERO;
            for (k, l, c) in &sparse[i] {
                let other = &ad[j][*l][*k];
                if !other.is_zero() {
                    s += c * other;
                }
            }
            gram[j][i] = s.clone();
            gram[i][j] = s;
        }
    }
    Ok(gram)
}

/// Solvable radical: the orthogonal complement of `[a, a]` for the Killing
/// form of `a`.
pub fn solvable_radical(g: &LieAlgebra, a: &Echelon) -> Result<Echelon> {
    let gram = intrinsic_killing_form(g, a)?;
    let derived = derived_subalgebra(g, a)?;
    let eqs: Vec<Vector> = derived
        .rows()
        .iter()
        .map(|x| {
            let c = a.coords(x).expect("derived algebra lies in the algebra");
            linalg::mat_vec(&gram, &c)
        })
        .collect();
    Ok(combine(a, linalg::nullspace(&eqs, a.dim())))
}

/// Vectors of `a` given by coefficient vectors on its basis.
fn combine(a: &Echelon, coeffs: Vec<Vector>) -> Echelon {
    Echelon::from_rows(
        a.width(),
        coeffs.into_iter().map(|c| {
            let mut v = linalg::zero_vec(a.width());
            for (ci, r) in c.iter().zip(a.rows()) {
                linalg::axpy(&mut v, ci, r);
            }
            v
        }),
    )
}

/// Radical of the Killing form of `g` restricted to a solvable subalgebra.
///
/// For the radical of an algebraic subalgebra this is its nilpotent part:
/// the torus part pairs nondegenerately, the nilpotent ideal pairs to zero.
pub fn unipotent_part(g: &LieAlgebra, r: &Echelon) -> Echelon {
    let rows = r.rows();
    let gram: Vec<Vector> = rows
        .iter()
        .map(|x| rows.iter().map(|y| g.killing(x, y)).collect())
        .collect();
    combine(r, linalg::nullspace(&gram, r.dim()))
}

fn add_weights(a: &TorusWeight, b: &TorusWeight) -> TorusWeight {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Levi decomposition `a = s + r` with `r` the solvable radical and `s` a
/// semisimple subalgebra.
///
/// A complement of `r` is lifted through the derived series of `r`, one
/// abelian layer at a time, keeping everything homogeneous for the
/// normalising torus.
pub fn levi_decomposition(g: &LieAlgebra, a: &Echelon) -> Result<(Echelon, Echelon)> {
    let d = g.dim();
    let r = solvable_radical(g, a)?;
    if r.dim() == 0 {
        return Ok((a.clone(), r));
    }
    if r.dim() == a.dim() {
        return Ok((Echelon::new(d), r));
    }
    let torus = normalizing_torus(g, a);
    let weights = basis_weights(g, &torus);
    let a_sp = weight_spaces(a, &weights);
    let r_sp = weight_spaces(&r, &weights);
    let empty = Echelon::new(d);

    let mut ys: Vec<Vector> = Vec::new();
    let mut ywt: Vec<TorusWeight> = Vec::new();
    let mut frames: BTreeMap<TorusWeight, (usize, Frame)> = BTreeMap::new();
    for (lam, al) in &a_sp {
        let rl = r_sp.get(lam).unwrap_or(&empty);
        let mut span = rl.clone();
        let mut local: Vec<Vector> = Vec::new();
        for row in al.rows() {
            if span.insert(row.clone()) {
                local.push(row.clone());
            }
        }
        let nloc = local.len();
        let mut basis = local.clone();
        basis.extend(rl.rows().iter().cloned());
        let frame = Frame::new(d, &basis).ok_or_else(|| Error::Inconsistent("weight basis".into()))?;
        frames.insert(lam.clone(), (nloc, frame));
        for v in local {
            ys.push(v);
            ywt.push(lam.clone());
        }
    }
    let s = ys.len();
    let index_of: BTreeMap<(TorusWeight, usize), usize> = {
        let mut m = BTreeMap::new();
        let mut count: BTreeMap<TorusWeight, usize> = BTreeMap::new();
        for (i, w) in ywt.iter().enumerate() {
            let c = count.entry(w.clone()).or_insert(0);
            m.insert((w.clone(), *c), i);
            *c += 1;
        }
        m
    };

    // structure constants of a / r on the complement
    let mut consts: Vec<Vec<Vec<(usize, Rat)>>> = vec![vec![Vec::new(); s]; s];
    for i in 0..s {
        for j in i + 1..s {
            let br = g.bracket(&ys[i], &ys[j]);
            if linalg::is_zero_vec(&br) {
                continue;
            }
            let mu = add_weights(&ywt[i], &ywt[j]);
            let (nloc, frame) = frames
                .get(&mu)
                .ok_or_else(|| Error::NotSubalgebra("bracket leaves the algebra".into()))?;
            let c = frame
                .coords(&br)
                .ok_or_else(|| Error::NotSubalgebra("bracket leaves the algebra".into()))?;
            consts[i][j] = c[..*nloc]
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(k, x)| (index_of[&(mu.clone(), k)], x.clone()))
                .collect();
        }
    }

    let error_term = |lifted: &[Vector], i: usize, j: usize| -> Vector {
        let mut e = g.bracket(&lifted[i], &lifted[j]);
        for (k, c) in &consts[i][j] {
            linalg::axpy(&mut e, &-c, &lifted[*k]);
        }
        e
    };

    let mut series = vec![r.clone()];
    while series.last().is_some_and(|x| x.dim() > 0) {
        let cur = series.last().expect("nonempty");
        let next = bracket_span(g, cur, cur);
        if next.dim() == cur.dim() {
            return Err(Error::Inconsistent("radical is not solvable".into()));
        }
        series.push(next);
    }

    let mut lifted = ys.clone();
    for layer in series.windows(2) {
        let top = weight_spaces(&layer[0], &weights);
        let low = weight_spaces(&layer[1], &weights);
        let mut quot: BTreeMap<TorusWeight, (Vec<Vector>, Frame)> = BTreeMap::new();
        for (mu, t) in &top {
            let lo = low.get(mu).unwrap_or(&empty);
            let mut span = lo.clone();
            let mut q: Vec<Vector> = Vec::new();
            for row in t.rows() {
                if span.insert(row.clone()) {
                    q.push(row.clone());
                }
            }
            let mut basis = q.clone();
            basis.extend(lo.rows().iter().cloned());
            let frame = Frame::new(d, &basis).ok_or_else(|| Error::Inconsistent("layer basis".into()))?;
            quot.insert(mu.clone(), (q, frame));
        }
        let qdim = |w: &TorusWeight| quot.get(w).map_or(0, |(q, _)| q.len());
        let mut offset = Vec::with_capacity(s);
        let mut nunk = 0;
        for w in &ywt {
            offset.push(nunk);
            nunk += qdim(w);
        }
        let mut eqs: Vec<Vector> = Vec::new();
        let mut rhs: Vec<Rat> = Vec::new();
        for i in 0..s {
            for j in i + 1..s {
                let mu = add_weights(&ywt[i], &ywt[j]);
                let Some((q_mu, frame)) = quot.get(&mu) else {
                    continue;
                };
                let qn = q_mu.len();
                if qn == 0 {
                    continue;
                }
                let in_layer = |v: &Vector| -> Result<Vector> {
                    let c = frame
                        .coords(v)
                        .ok_or_else(|| Error::Inconsistent("Levi lift left the radical layer".into()))?;
                    Ok(c[..qn].to_vec())
                };
                let e = in_layer(&error_term(&lifted, i, j))?;
                let mut block = vec![linalg::zero_vec(nunk); qn];
                if let Some((qj, _)) = quot.get(&ywt[j]) {
                    for (b, qv) in qj.iter().enumerate() {
                        let c = in_layer(&g.bracket(&lifted[i], qv))?;
                        for (row, x) in block.iter_mut().zip(c) {
                            row[offset[j] + b] += x;
                        }
                    }
                }
                if let Some((qi, _)) = quot.get(&ywt[i]) {
                    for (b, qv) in qi.iter().enumerate() {
                        let c = in_layer(&g.bracket(&lifted[j], qv))?;
                        for (row, x) in block.iter_mut().zip(c) {
                            row[offset[i] + b] -= x;
                        }
                    }
                }
                for (k, c) in &consts[i][j] {
                    for (b, row) in block.iter_mut().enumerate() {
                        row[offset[*k] + b] -= c;
                    }
                }
                for (row, x) in block.into_iter().zip(e) {
                    eqs.push(row);
                    rhs.push(-x);
                }
            }
        }
        if nunk == 0 {
            if rhs.iter().any(|x| !x.is_zero()) {
                return Err(Error::Inconsistent("Levi lift has no room to correct".into()));
            }
            continue;
        }
        let u = linalg::solve(&eqs, &rhs, nunk)
            .ok_or_else(|| Error::Inconsistent("Levi lift system is inconsistent".into()))?;
        for i in 0..s {
            if let Some((qi, _)) = quot.get(&ywt[i]) {
                for (b, qv) in qi.iter().enumerate() {
                    linalg::axpy(&mut lifted[i], &u[offset[i] + b], qv);
                }
            }
        }
    }
    for i in 0..s {
        for j in i + 1..s {
            if !linalg::is_zero_vec(&error_term(&lifted, i, j)) {
                return Err(Error::Inconsistent("lifted complement is not closed".into()));
            }
        }
    }
    Ok((Echelon::from_rows(d, lifted), r))
}

/// Type of a semisimple Lie algebra as a sum of simple types.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SemisimpleType(pub Vec<SimpleType>);

impl SemisimpleType {
    pub fn dim(&self) -> usize {
        self.0
            .iter()
            .map(|t| {
                let rs = RootSystem::new(*t);
                rs.num_roots() + rs.rank()
            })
            .sum()
    }

    pub fn rank(&self) -> usize {
        self.0.iter().map(|t| t.rank).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for SemisimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|t| t.to_string()).collect();
        write!(f, "{}", parts.join("+"))
    }
}

/// Type of the root system formed by a finite set of vectors.
pub fn root_data_type(roots: &[TorusWeight]) -> Result<SemisimpleType> {
    let set: BTreeSet<&TorusWeight> = roots.iter().collect();
    let is_positive = |v: &TorusWeight| v.iter().find(|x| !x.is_zero()).is_some_and(Rat::is_positive);
    let positive: Vec<&TorusWeight> = roots.iter().filter(|v| is_positive(v)).collect();
    if positive.len() * 2 != roots.len() {
        return Err(Error::Recognition("weights are not symmetric".into()));
    }
    let pos_set: BTreeSet<&TorusWeight> = positive.iter().copied().collect();
    let simple: Vec<&TorusWeight> = positive
        .iter()
        .copied()
        .filter(|a| {
            !positive.iter().any(|b| {
                let diff: TorusWeight = a.iter().zip(b.iter()).map(|(x, y)| x - y).collect();
                pos_set.contains(&diff)
            })
        })
        .collect();
    let step = |v: &TorusWeight, a: &TorusWeight, sgn: i64| -> TorusWeight {
        v.iter().zip(a).map(|(x, y)| x + &(y * &Rat::int(sgn))).collect()
    };
    let string_len = |b: &TorusWeight, a: &TorusWeight, sgn: i64| -> i64 {
        let mut cur = step(b, a, sgn);
        let mut n = 0;
        while set.contains(&cur) {
            n += 1;
            cur = step(&cur, a, sgn);
        }
        n
    };
    let n = simple.len();
    let cartan: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        2
                    } else {
                        string_len(simple[i], simple[j], -1) - string_len(simple[i], simple[j], 1)
                    }
                })
                .collect()
        })
        .collect();
    let mut comps: Vec<SimpleType> = recognize_cartan(&cartan)?.into_iter().map(|(t, _)| t).collect();
    comps.sort();
    let ty = SemisimpleType(comps);
    if ty.dim() - ty.rank() != roots.len() {
        return Err(Error::Recognition(format!(
            "{} roots do not form a root system of type {ty}",
            roots.len()
        )));
    }
    Ok(ty)
}

/// Type of a semisimple subalgebra, read off from the weights of its
/// normalising torus in `h`.
///
/// Fails with a recognition error when that torus does not cut out a split
/// Cartan subalgebra.
pub fn semisimple_type(g: &LieAlgebra, s: &Echelon) -> Result<SemisimpleType> {
    if s.dim() == 0 {
        return Ok(SemisimpleType::default());
    }
    let gram = intrinsic_killing_form(g, s)?;
    if linalg::rank(&gram, s.dim()) < s.dim() {
        return Err(Error::NotSemisimple(format!("degenerate Killing form on dimension {}", s.dim())));
    }
    let torus = normalizing_torus(g, s);
    let weights = basis_weights(g, &torus);
    let spaces = weight_spaces(s, &weights);
    let zero = vec![Rat::ZERO; torus.len()];
    let cartan_dim = spaces.get(&zero).map_or(0, Echelon::dim);
    let mut roots = Vec::new();
    for (w, sp) in &spaces {
        if *w == zero {
            continue;
        }
        if sp.dim() != 1 {
            return Err(Error::Recognition(format!("weight space of dimension {}", sp.dim())));
        }
        roots.push(w.clone());
    }
    let ty = root_data_type(&roots)?;
    if ty.rank() != cartan_dim {
        return Err(Error::Recognition(format!(
            "zero weight space of dimension {cartan_dim} for type {ty}"
        )));
    }
    Ok(ty)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn span(g: &LieAlgebra, idx: &[usize]) -> Echelon {
        Echelon::from_rows(g.dim(), idx.iter().map(|&b| g.basis_vector(b)))
    }

    #[test]
    fn derived_and_generated() {
        let g = LieAlgebra::parse("A2").unwrap();
        let full = Echelon::full(g.dim());
        assert_eq!(derived_subalgebra(&g, &full).unwrap(), full);
        let cartan = span(&g, &[6, 7]);
        assert_eq!(derived_subalgebra(&g, &cartan).unwrap().dim(), 0);
        let gens = [g.basis_vector(0), g.basis_vector(3)];
        assert_eq!(subalgebra_generated_by(&g, &gens).dim(), 3);
        let gens = [g.basis_vector(0), g.basis_vector(1), g.basis_vector(3), g.basis_vector(4)];
        assert_eq!(subalgebra_generated_by(&g, &gens), full);
        assert!(derived_subalgebra(&g, &span(&g, &[0, 3])).is_err());
    }

    #[test]
    fn levi_of_parabolic() {
        // Borel plus the A1 for the first simple root in B3.
        let g = LieAlgebra::parse("B3").unwrap();
        let n = g.num_positive();
        let mut idx: Vec<usize> = (0..n).collect();
        idx.push(n);
        idx.extend(2 * n..2 * n + 3);
        let p = span(&g, &idx);
        assert!(is_subalgebra(&g, &p));
        let (s, r) = levi_decomposition(&g, &p).unwrap();
        assert_eq!(s.dim(), 3);
        assert_eq!(r.dim(), p.dim() - 3);
        assert!(is_subalgebra(&g, &s));
        assert_eq!(semisimple_type(&g, &s).unwrap().to_string(), "A1");
        assert_eq!(unipotent_part(&g, &r).dim(), n - 1);
    }

    #[test]
    fn semisimple_types() {
        let g = LieAlgebra::parse("B2").unwrap();
        let full = Echelon::full(g.dim());
        assert_eq!(semisimple_type(&g, &full).unwrap().to_string(), "B2");
        let g = LieAlgebra::parse("A3").unwrap();
        // x_{a1}, x_{a3} and their negatives generate A1+A1
        let n = g.num_positive();
        let sub = subalgebra_generated_by(&g, &[0, 2, n, n + 2].map(|b| g.basis_vector(b)));
        assert_eq!(sub.dim(), 6);
        assert_eq!(semisimple_type(&g, &sub).unwrap().to_string(), "A1+A1");
        let (s, r) = levi_decomposition(&g, &sub).unwrap();
        assert_eq!((s.dim(), r.dim()), (6, 0));
        let cartan = span(&g, &[2 * n, 2 * n + 1]);
        assert!(semisimple_type(&g, &cartan).is_err());
    }

    #[test]
    fn twisted_levi_factor() {
        // A parabolic moved by exp(ad x_{-a2}) is no longer spanned by basis vectors.
        let g = LieAlgebra::parse("A2").unwrap();
        let n = g.num_positive();
        let x = g.basis_vector(n + 1);
        let conj = |v: &Vector| {
            let mut out = v.clone();
            let b1 = g.bracket(&x, v);
            let b2 = g.bracket(&x, &b1);
            linalg::axpy(&mut out, &Rat::ONE, &b1);
            linalg::axpy(&mut out, &Rat::new(1, 2), &b2);
            out
        };
        let idx = [0, 1, 2, n, 2 * n, 2 * n + 1];
        let p = Echelon::from_rows(g.dim(), idx.iter().map(|&b| conj(&g.basis_vector(b))));
        assert!(is_subalgebra(&g, &p));
        let (s, r) = levi_decomposition(&g, &p).unwrap();
        assert_eq!((s.dim(), r.dim()), (3, 3));
        assert!(is_subalgebra(&g, &s));
        assert!(s.intersect(&r).dim() == 0);
        assert_eq!(semisimple_type(&g, &s).unwrap().to_string(), "A1");
    }
}
