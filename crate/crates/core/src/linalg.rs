//! Dense exact linear algebra over [`Rat`].
//!
//! Subspaces are held in reduced row echelon form with unit pivots, which is
//! canonical: two subspaces are equal iff their echelon matrices are equal.

use crate::modp;
use crate::rational::Rat;

pub type Vector = Vec<Rat>;

pub fn zero_vec(n: usize) -> Vector {
    vec![Rat::ZERO; n]
}

pub fn is_zero_vec(v: &[Rat]) -> bool {
    v.iter().all(Rat::is_zero)
}

/// `y += a * x`
pub fn axpy(y: &mut [Rat], a: &Rat, x: &[Rat]) {
    if a.is_zero() {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi += a * xi;
        }
    }
}

pub fn scale(v: &[Rat], a: &Rat) -> Vector {
    v.iter().map(|x| x * a).collect()
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    let mut s = Rat::ZERO;
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            s += x * y;
        }
    }
    s
}

/// Incrementally maintained reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Echelon {
    width: usize,
    /// Rows sorted by pivot column; each row has a 1 at its pivot and zeros
    /// in every other row's pivot column.
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(width: usize) -> Echelon {
        Echelon {
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_rows<I: IntoIterator<Item = Vector>>(width: usize, rows: I) -> Echelon {
        let mut e = Echelon::new(width);
        for r in rows {
            e.insert(r);
            if e.dim() == width {
                break;
            }
        }
        e
    }

    pub fn full(width: usize) -> Echelon {
        let mut e = Echelon::new(width);
        for i in 0..width {
            let mut v = zero_vec(width);
            v[i] = Rat::ONE;
            e.rows.push(v);
            e.pivots.push(i);
        }
        e
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Residual of `v` after eliminating all pivot columns.
    pub fn reduce(&self, v: &[Rat]) -> Vector {
        let mut r = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !r[p].is_zero() {
                let f = -r[p].clone();
                axpy(&mut r, &f, row);
            }
        }
        r
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        is_zero_vec(&self.reduce(v))
    }

    /// Coordinates of `v` in terms of the echelon rows, if `v` lies in the span.
    pub fn coords(&self, v: &[Rat]) -> Option<Vector> {
        let c: Vector = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut r = v.to_vec();
        for (row, ci) in self.rows.iter().zip(&c) {
            if !ci.is_zero() {
                axpy(&mut r, &-ci, row);
            }
        }
        is_zero_vec(&r).then_some(c)
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: Vector) -> bool {
        let mut r = self.reduce(&v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].recip();
        if !inv.is_one() {
            for x in r.iter_mut() {
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
        }
        for row in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let f = -row[p].clone();
                axpy(row, &f, &r);
            }
        }
        let pos = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(pos, p);
        self.rows.insert(pos, r);
        true
    }

    pub fn intersect(&self, other: &Echelon) -> Echelon {
        // Solve sum a_i r_i = sum b_j s_j via the nullspace of the stacked rows.
        let n = self.dim();
        let stacked: Vec<Vector> = self
            .rows
            .iter()
            .cloned()
            .chain(other.rows.iter().map(|r| r.iter().map(|x| -x).collect()))
            .collect();
        let kernel = left_nullspace(&stacked);
        let mut out = Echelon::new(self.width);
        for k in kernel {
            let mut v = zero_vec(self.width);
            for (i, c) in k.iter().take(n).enumerate() {
                axpy(&mut v, c, &self.rows[i]);
            }
            out.insert(v);
        }
        out
    }

    pub fn sum(&self, other: &Echelon) -> Echelon {
        let mut out = self.clone();
        for r in &other.rows {
            out.insert(r.clone());
        }
        out
    }

    pub fn is_subspace_of(&self, other: &Echelon) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    /// Basis of a complement spanned by unit vectors on non-pivot columns.
    pub fn complement_units(&self) -> Vec<usize> {
        (0..self.width).filter(|c| !self.pivots.contains(c)).collect()
    }
}

/// Coordinates with respect to a fixed list of independent vectors.
#[derive(Clone, Debug)]
pub struct Frame {
    width: usize,
    len: usize,
    aug: Echelon,
}

impl Frame {
    /// `None` if the vectors are dependent.
    pub fn new(width: usize, vectors: &[Vector]) -> Option<Frame> {
        let len = vectors.len();
        let mut aug = Echelon::new(width + len);
        for (i, v) in vectors.iter().enumerate() {
            let mut row = v.clone();
            row.extend((0..len).map(|j| if i == j { Rat::ONE } else { Rat::ZERO }));
            aug.insert(row);
        }
        if aug.pivots.iter().any(|&p| p >= width) {
            return None;
        }
        Some(Frame { width, len, aug })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Coefficients of `v` on the frame vectors, if `v` lies in their span.
    pub fn coords(&self, v: &[Rat]) -> Option<Vector> {
        let mut row = v.to_vec();
        row.extend(std::iter::repeat_n(Rat::ZERO, self.len));
        let r = self.aug.reduce(&row);
        if !is_zero_vec(&r[..self.width]) {
            return None;
        }
        Some(r[self.width..].iter().map(|x| -x).collect())
    }
}

/// Reduced row echelon form of a matrix given by rows; returns (rows, pivots).
pub fn rref(rows: &[Vector], width: usize) -> Echelon {
    Echelon::from_rows(width, rows.iter().cloned())
}

pub fn rank(rows: &[Vector], width: usize) -> usize {
    rref(rows, width).dim()
}

/// Basis of `{x : M x = 0}` where `M` is given by its rows of length `width`.
pub fn nullspace(rows: &[Vector], width: usize) -> Vec<Vector> {
    let e = rref(rows, width);
    let free: Vec<usize> = e.complement_units();
    free.iter()
        .map(|&f| {
            let mut x = zero_vec(width);
            x[f] = Rat::ONE;
            for (row, &p) in e.rows.iter().zip(&e.pivots) {
                if !row[f].is_zero() {
                    x[p] = -row[f].clone();
                }
            }
            x
        })
        .collect()
}

/// Basis of `{y : y^T M = 0}` for `M` given by rows.
pub fn left_nullspace(rows: &[Vector]) -> Vec<Vector> {
    if rows.is_empty() {
        return Vec::new();
    }
    let m = rows.len();
    let n = rows[0].len();
    let cols: Vec<Vector> = (0..n).map(|j| (0..m).map(|i| rows[i][j].clone()).collect()).collect();
    nullspace(&cols, m)
}

/// Solves `M x = b` (M by rows); returns one solution if consistent.
pub fn solve(rows: &[Vector], b: &[Rat], width: usize) -> Option<Vector> {
    let aug: Vec<Vector> = rows
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut v = r.clone();
            v.push(bi.clone());
            v
        })
        .collect();
    let e = rref(&aug, width + 1);
    if e.pivots.last() == Some(&width) {
        return None;
    }
    let mut x = zero_vec(width);
    for (row, &p) in e.rows.iter().zip(&e.pivots) {
        x[p] = row[width].clone();
    }
    Some(x)
}

/// Lower bound for the rank over Q, computed modulo a large prime.
/// Rows containing a denominator divisible by the prime are dropped, so the
/// bound stays valid.
pub fn rank_mod_p(rows: &[Vector]) -> usize {
    let p = modp::P;
    let m: Vec<Vec<u64>> = rows
        .iter()
        .filter_map(|r| r.iter().map(|x| x.mod_p(p)).collect::<Option<Vec<u64>>>())
        .collect();
    modp::rank(m, p)
}

pub fn mat_vec(rows: &[Vector], v: &[Rat]) -> Vector {
    rows.iter().map(|r| dot(r, v)).collect()
}

pub fn mat_mul(a: &[Vector], b: &[Vector]) -> Vec<Vector> {
    let n = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            let mut out = zero_vec(n);
            for (k, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    axpy(&mut out, x, &b[k]);
                }
            }
            out
        })
        .collect()
}

pub fn transpose(a: &[Vector]) -> Vec<Vector> {
    if a.is_empty() {
        return Vec::new();
    }
    let n = a[0].len();
    (0..n).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Inverse of a square matrix, if nonsingular.
pub fn inverse(a: &[Vector]) -> Option<Vec<Vector>> {
    let n = a.len();
    let aug: Vec<Vector> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut v = r.clone();
            v.extend((0..n).map(|j| if i == j { Rat::ONE } else { Rat::ZERO }));
            v
        })
        .collect();
    let e = rref(&aug, 2 * n);
    if e.dim() < n || e.pivots[n - 1] != n - 1 {
        return None;
    }
    Some(e.rows.iter().map(|r| r[n..].to_vec()).collect())
}

/// Determinant by fraction-free elimination on rationals.
pub fn det(a: &[Vector]) -> Rat {
    let n = a.len();
    let mut m: Vec<Vector> = a.to_vec();
    let mut d = Rat::ONE;
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return Rat::ZERO;
        };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d *= &m[c][c];
        let inv = m[c][c].recip();
        for r in c + 1..n {
            if m[r][c].is_zero() {
                continue;
            }
            let f = -(&m[r][c] * &inv);
            let pivot = m[c].clone();
            axpy(&mut m[r], &f, &pivot);
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| Rat::int(x)).collect()
    }

    #[test]
    fn nullspace_of_rank_one() {
        let m = vec![v(&[1, 2, 3]), v(&[2, 4, 6])];
        let ns = nullspace(&m, 3);
        assert_eq!(ns.len(), 2);
        for x in &ns {
            assert!(is_zero_vec(&mat_vec(&m, x)));
        }
    }

    #[test]
    fn echelon_is_canonical() {
        let a = Echelon::from_rows(3, [v(&[1, 1, 0]), v(&[0, 1, 1])]);
        let b = Echelon::from_rows(3, [v(&[1, 2, 1]), v(&[1, 0, -1])]);
        assert_eq!(a, b);
        assert!(a.contains(&v(&[2, 3, 1])));
        assert!(!a.contains(&v(&[0, 0, 1])));
    }

    #[test]
    fn intersection_and_solve() {
        let a = Echelon::from_rows(3, [v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let b = Echelon::from_rows(3, [v(&[0, 1, 0]), v(&[0, 0, 1])]);
        let i = a.intersect(&b);
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&v(&[0, 5, 0])));
        let m = vec![v(&[2, 1]), v(&[1, -1])];
        let x = solve(&m, &v(&[3, 0]), 2).unwrap();
        assert_eq!(x, v(&[1, 1]));
        assert!(solve(&vec![v(&[1, 1]), v(&[1, 1])], &v(&[1, 2]), 2).is_none());
    }

    #[test]
    fn frame_coordinates() {
        let f = Frame::new(3, &[v(&[1, 1, 0]), v(&[0, 1, 1])]).unwrap();
        assert_eq!(f.coords(&v(&[2, 5, 3])), Some(v(&[2, 3])));
        assert_eq!(f.coords(&v(&[0, 0, 1])), None);
        assert!(Frame::new(2, &[v(&[1, 2]), v(&[2, 4])]).is_none());
    }

    #[test]
    fn inverse_and_det() {
        let m = vec![v(&[2, 1]), v(&[5, 3])];
        assert_eq!(det(&m), Rat::ONE);
        let inv = inverse(&m).unwrap();
        assert_eq!(inv, vec![v(&[3, -1]), v(&[-5, 2])]);
        assert_eq!(rank_mod_p(&m), 2);
    }
}
