//! Exact convex geometry in a rational inner-product space: nearest points of
//! polytopes and hull membership with certificates.

use serde::Serialize;

use crate::linalg::{self, Vector};
use crate::rational::Rat;

/// Positive definite inner product given by its Gram matrix.
#[derive(Clone, Debug)]
pub struct Metric {
    gram: Vec<Vector>,
}

impl Metric {
    pub fn new(gram: Vec<Vector>) -> Metric {
        Metric { gram }
    }

    pub fn euclidean(n: usize) -> Metric {
        Metric::new((0..n).map(|i| crate::rootsys::unit(n, i)).collect())
    }

    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    pub fn inner(&self, x: &[Rat], y: &[Rat]) -> Rat {
        let mut s = Rat::ZERO;
        for (xi, row) in x.iter().zip(&self.gram) {
            if !xi.is_zero() {
                s += xi * &linalg::dot(row, y);
            }
        }
        s
    }

    pub fn norm_sq(&self, x: &[Rat]) -> Rat {
        self.inner(x, x)
    }
}

/// Point of a polytope nearest to the origin, with a convex combination of
/// affinely independent vertices producing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NearestPoint {
    pub point: Vector,
    pub combination: Vec<(usize, Rat)>,
}

fn combine(points: &[Vector], idx: &[usize], coeffs: &[Rat]) -> Vector {
    let mut x = linalg::zero_vec(points[idx[0]].len());
    for (&i, c) in idx.iter().zip(coeffs) {
        linalg::axpy(&mut x, c, &points[i]);
    }
    x
}

/// Minimiser of the norm on the affine hull of the chosen points.
fn affine_minimizer(points: &[Vector], idx: &[usize], metric: &Metric) -> Vector {
    let k = idx.len();
    let mut rows: Vec<Vector> = idx
        .iter()
        .map(|&i| {
            let mut r: Vector = idx.iter().map(|&j| metric.inner(&points[i], &points[j])).collect();
            r.push(Rat::ONE);
            r
        })
        .collect();
    let mut last = vec![Rat::ONE; k];
    last.push(Rat::ZERO);
    rows.push(last);
    let mut rhs = linalg::zero_vec(k);
    rhs.push(Rat::ONE);
    let sol = linalg::solve(&rows, &rhs, k + 1).expect("corral points are affinely independent");
    sol[..k].to_vec()
}

/// Wolfe's nearest point algorithm in exact arithmetic.
pub fn nearest_point(points: &[Vector], metric: &Metric) -> NearestPoint {
    assert!(!points.is_empty(), "nearest point of an empty polytope");
    let start = (0..points.len())
        .min_by(|&a, &b| metric.norm_sq(&points[a]).cmp(&metric.norm_sq(&points[b])))
        .expect("nonempty");
    let mut corral = vec![start];
    let mut lam = vec![Rat::ONE];
    let mut x = points[start].clone();
    loop {
        let xx = metric.norm_sq(&x);
        let (j, val) = points
            .iter()
            .enumerate()
            .map(|(j, p)| (j, metric.inner(&x, p)))
            .min_by(|a, b| a.1.cmp(&b.1))
            .expect("nonempty");
        if val >= xx || corral.contains(&j) {
            break;
        }
        corral.push(j);
        lam.push(Rat::ZERO);
        loop {
            let alpha = affine_minimizer(points, &corral, metric);
            if alpha.iter().all(Rat::is_positive) {
                lam = alpha;
                break;
            }
            let mut theta = Rat::ONE;
            for (l, a) in lam.iter().zip(&alpha) {
                if !a.is_positive() {
                    let d = l - a;
                    if d.is_positive() {
                        let t = l / &d;
                        if t < theta {
                            theta = t;
                        }
                    }
                }
            }
            let one_minus = &Rat::ONE - &theta;
            lam = lam.iter().zip(&alpha).map(|(l, a)| &(&one_minus * l) + &(&theta * a)).collect();
            let keep: Vec<bool> = lam.iter().map(Rat::is_positive).collect();
            corral = corral.iter().zip(&keep).filter(|(_, k)| **k).map(|(c, _)| *c).collect();
            lam = lam.into_iter().zip(&keep).filter(|(_, k)| **k).map(|(l, _)| l).collect();
        }
        x = combine(points, &corral, &lam);
    }
    NearestPoint {
        point: x,
        combination: corral.into_iter().zip(lam).collect(),
    }
}

/// Outcome of a hull membership test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum HullVerdict {
    /// Convex combination `(index, weight)` of the points equal to the target.
    Inside(Vec<(usize, Rat)>),
    /// Vector `s` with `(s, q - p) > 0` for every point `q` and the target `p`.
    Outside(Vector),
}

impl HullVerdict {
    pub fn is_inside(&self) -> bool {
        matches!(self, HullVerdict::Inside(_))
    }
}

/// Decides whether `target` lies in the convex hull of `points`.
///
/// The nearest point of the translated polytope is the origin exactly when the
/// target is inside; otherwise it is a strictly separating normal.
pub fn hull_contains(points: &[Vector], target: &[Rat], metric: &Metric) -> HullVerdict {
    let shifted: Vec<Vector> = points
        .iter()
        .map(|p| p.iter().zip(target).map(|(a, b)| a - b).collect())
        .collect();
    let near = nearest_point(&shifted, metric);
    if linalg::is_zero_vec(&near.point) {
        HullVerdict::Inside(near.combination)
    } else {
        HullVerdict::Outside(near.point)
    }
}

/// Re-checks a verdict exactly.
pub fn verify_hull_verdict(points: &[Vector], target: &[Rat], metric: &Metric, v: &HullVerdict) -> bool {
    match v {
        HullVerdict::Inside(comb) => {
            if comb.is_empty() || comb.iter().any(|(i, c)| *i >= points.len() || c.is_negative()) {
                return false;
            }
            let total: Rat = comb.iter().map(|(_, c)| c.clone()).sum();
            let mut x = linalg::zero_vec(target.len());
            for (i, c) in comb {
                linalg::axpy(&mut x, c, &points[*i]);
            }
            total.is_one() && x == target
        }
        HullVerdict::Outside(s) => {
            let level = metric.inner(s, target);
            points.iter().all(|q| metric.inner(s, q) > level)
        }
    }
}
