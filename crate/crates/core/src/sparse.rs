//! Column-sparse rational matrices.

use crate::linalg::{self, Vector};
use crate::rational::Rat;

/// `cols[b]` lists the nonzero entries `(row, value)` of column `b`, sorted by row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMat {
    pub nrows: usize,
    pub cols: Vec<Vec<(u32, Rat)>>,
}

fn merge_add(a: &[(u32, Rat)], b: &[(u32, Rat)], fb: &Rat) -> Vec<(u32, Rat)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, &b[j].1 * fb));
            j += 1;
        } else {
            let v = &a[i].1 + &(&b[j].1 * fb);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl SparseMat {
    pub fn zero(nrows: usize, ncols: usize) -> SparseMat {
        SparseMat {
            nrows,
            cols: vec![Vec::new(); ncols],
        }
    }

    pub fn identity(n: usize) -> SparseMat {
        SparseMat {
            nrows: n,
            cols: (0..n).map(|i| vec![(i as u32, Rat::ONE)]).collect(),
        }
    }

    pub fn diagonal(d: &[Rat]) -> SparseMat {
        SparseMat {
            nrows: d.len(),
            cols: d
                .iter()
                .enumerate()
                .map(|(i, x)| if x.is_zero() { Vec::new() } else { vec![(i as u32, x.clone())] })
                .collect(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    pub fn get(&self, r: usize, c: usize) -> Rat {
        match self.cols[c].binary_search_by_key(&(r as u32), |e| e.0) {
            Ok(k) => self.cols[c][k].1.clone(),
            Err(_) => Rat::ZERO,
        }
    }

    /// Adds `a * col` (sparse) into `acc` (sparse), keeping sort order.
    fn accumulate(acc: &mut Vec<(u32, Rat)>, col: &[(u32, Rat)], a: &Rat) {
        if a.is_zero() || col.is_empty() {
            return;
        }
        *acc = merge_add(acc, col, a);
    }

    pub fn apply(&self, v: &[Rat]) -> Vector {
        let mut out = linalg::zero_vec(self.nrows);
        for (c, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (r, y) in &self.cols[c] {
                out[*r as usize] += x * y;
            }
        }
        out
    }

    /// Image of basis vector `c` as a sparse column.
    pub fn column(&self, c: usize) -> &[(u32, Rat)] {
        &self.cols[c]
    }

    pub fn apply_sparse(&self, v: &[(u32, Rat)]) -> Vec<(u32, Rat)> {
        let mut acc = Vec::new();
        for (c, x) in v {
            SparseMat::accumulate(&mut acc, &self.cols[*c as usize], x);
        }
        acc
    }

    /// `self * other`
    pub fn mul(&self, other: &SparseMat) -> SparseMat {
        SparseMat {
            nrows: self.nrows,
            cols: other.cols.iter().map(|col| self.apply_sparse(col)).collect(),
        }
    }

    pub fn add_scaled(&self, other: &SparseMat, a: &Rat) -> SparseMat {
        SparseMat {
            nrows: self.nrows,
            cols: self
                .cols
                .iter()
                .zip(&other.cols)
                .map(|(x, y)| if a.is_zero() { x.clone() } else { merge_add(x, y, a) })
                .collect(),
        }
    }

    pub fn scale(&self, a: &Rat) -> SparseMat {
        if a.is_zero() {
            return SparseMat::zero(self.nrows, self.ncols());
        }
        SparseMat {
            nrows: self.nrows,
            cols: self
                .cols
                .iter()
                .map(|c| c.iter().map(|(r, x)| (*r, x * a)).collect())
                .collect(),
        }
    }

    /// `[self, other] = self*other - other*self`
    pub fn commutator(&self, other: &SparseMat) -> SparseMat {
        self.mul(other).add_scaled(&other.mul(self), &Rat::int(-1))
    }

    /// First nonzero entry in column-major order.
    pub fn first_nonzero(&self) -> Option<(usize, usize, Rat)> {
        self.cols
            .iter()
            .enumerate()
            .find_map(|(c, col)| col.first().map(|(r, x)| (*r as usize, c, x.clone())))
    }

    pub fn to_dense_rows(&self) -> Vec<Vector> {
        let mut rows = vec![linalg::zero_vec(self.ncols()); self.nrows];
        for (c, col) in self.cols.iter().enumerate() {
            for (r, x) in col {
                rows[*r as usize][c] = x.clone();
            }
        }
        rows
    }

    pub fn trace(&self) -> Rat {
        (0..self.ncols().min(self.nrows)).map(|i| self.get(i, i)).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn commutator_of_sl2_generators() {
        // e = [[0,1],[0,0]], f = [[0,0],[1,0]]
        let e = SparseMat {
            nrows: 2,
            cols: vec![vec![], vec![(0, Rat::ONE)]],
        };
        let f = SparseMat {
            nrows: 2,
            cols: vec![vec![(1, Rat::ONE)], vec![]],
        };
        let h = e.commutator(&f);
        assert_eq!(h, SparseMat::diagonal(&[Rat::ONE, Rat::int(-1)]));
        assert!(e.commutator(&e).is_zero());
        assert_eq!(e.apply(&[Rat::int(3), Rat::int(5)]), vec![Rat::int(5), Rat::ZERO]);
    }
}
