use std::collections::{BTreeMap, BTreeSet};

use liecore::hwmod::{self, WeightModule};
use liecore::liealg::LieAlgebra;
use liecore::rootsys::{RootSystem, SimpleType};
use liecore::{linalg, Rat};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Positive roots by closing the simple roots under simple reflections,
/// computed from the Cartan matrix alone.
fn brute_force_positive_roots(cartan: &[Vec<i64>]) -> usize {
    let l = cartan.len();
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut stack: Vec<Vec<i64>> = (0..l).map(|i| (0..l).map(|j| i64::from(i == j)).collect()).collect();
    while let Some(r) = stack.pop() {
        if !seen.insert(r.clone()) {
            continue;
        }
        for i in 0..l {
            // <r, alpha_i^vee> = sum_j r_j cartan[j][i]
            let p: i64 = (0..l).map(|j| r[j] * cartan[j][i]).sum();
            let mut s = r.clone();
            s[i] -= p;
            if s.iter().all(|&x| x >= 0) && s.iter().any(|&x| x > 0) {
                stack.push(s);
            }
        }
    }
    seen.len()
}

#[test]
fn dimensions_of_simple_algebras() {
    for (t, dim) in [("A1", 3), ("G2", 14), ("B6", 78), ("F4", 52), ("E6", 78), ("E7", 133), ("E8", 248)] {
        let rs = RootSystem::new(SimpleType::parse(t).unwrap());
        assert_eq!(rs.rank() + rs.num_roots(), dim, "{t}");
        assert_eq!(rs.num_positive(), brute_force_positive_roots(&rs.cartan), "{t}");
    }
    let g = LieAlgebra::parse("B6").unwrap();
    assert_eq!(g.dim(), 78);
    assert_eq!(g.num_positive(), 36);
}

#[test]
fn weyl_group_orders() {
    for (t, order) in [("A3", 24u128), ("B3", 48), ("G2", 12), ("D4", 192), ("B6", 46080)] {
        let rs = RootSystem::new(SimpleType::parse(t).unwrap());
        let w = rs.weyl_group(100_000).unwrap();
        assert_eq!(w.len() as u128, order, "{t}");
        assert_eq!(rs.simple_type.weyl_order_formula(), order);
        let distinct: BTreeSet<&[u8]> = w.iter().map(|x| &*x.0).collect();
        assert_eq!(distinct.len(), w.len());
    }
    for (t, order) in [("F4", 1152u128), ("E6", 51_840), ("E7", 2_903_040)] {
        let rs = RootSystem::new(SimpleType::parse(t).unwrap());
        assert_eq!(rs.weyl_order_by_orbit(), order, "{t}");
        assert_eq!(rs.simple_type.weyl_order_formula(), order, "{t}");
    }
    assert_eq!(SimpleType::parse("E8").unwrap().weyl_order_formula(), 696_729_600);
}

#[test]
fn module_dimensions_match_weyl_formula() {
    let cases: [(&str, &[i64], usize); 6] = [
        ("B6", &[0, 0, 0, 0, 0, 1], 64),
        ("E6", &[1, 0, 0, 0, 0, 0], 27),
        ("G2", &[1, 0], 7),
        ("A2", &[2, 1], 15),
        ("C3", &[0, 1, 0], 14),
        ("F4", &[0, 0, 0, 1], 26),
    ];
    for (t, hw, dim) in cases {
        let rs = RootSystem::new(SimpleType::parse(t).unwrap());
        assert_eq!(hwmod::weyl_dimension(&rs, hw), dim as u128, "{t}");
        let m = WeightModule::new(&rs, hw, 1000).unwrap();
        assert_eq!(m.dim(), dim, "{t}");
    }
    let e8 = RootSystem::new(SimpleType::parse("E8").unwrap());
    assert_eq!(hwmod::weyl_dimension(&e8, &[1, 0, 0, 0, 0, 0, 0, 0]), 3875);
}

#[test]
fn weight_multiplicities_match_freudenthal() {
    for (t, hw) in [("A2", vec![2, 1]), ("B3", vec![1, 0, 1]), ("G2", vec![1, 1]), ("C3", vec![0, 1, 0])] {
        let rs = RootSystem::new(SimpleType::parse(t).unwrap());
        let m = WeightModule::new(&rs, &hw, 2000).unwrap();
        let dominant: BTreeMap<Vec<i64>, u64> = m
            .weight_multiplicities()
            .into_iter()
            .filter(|(w, _)| w.iter().all(|&x| x >= 0))
            .collect();
        assert_eq!(dominant, hwmod::freudenthal_dominant(&rs, &hw), "{t}");
    }
}

#[test]
fn spinor_weights_form_one_orbit() {
    let rs = RootSystem::new(SimpleType::parse("B6").unwrap());
    let hw = [0, 0, 0, 0, 0, 1];
    let m = WeightModule::new(&rs, &hw, 100).unwrap();
    assert!(m.weight_multiplicities().values().all(|&k| k == 1));
    assert_eq!(hwmod::weyl_orbit_size(&rs, &hw), 64);
}

fn random_element(rng: &mut ChaCha8Rng, n: usize, nonzero: usize) -> Vec<Rat> {
    let mut x = linalg::zero_vec(n);
    for _ in 0..nonzero {
        x[rng.gen_range(0..n)] = Rat::int(rng.gen_range(-5..=5));
    }
    x
}

#[test]
fn spinor_representation_property_on_samples() {
    let g = LieAlgebra::parse("B6").unwrap();
    let m = WeightModule::new(&g.roots, &[0, 0, 0, 0, 0, 1], 100).unwrap();
    let rep = g.represent(&m);
    let act = |x: &[Rat], v: &[Rat]| {
        let mut out = linalg::zero_vec(v.len());
        for (b, c) in x.iter().enumerate() {
            if !c.is_zero() {
                linalg::axpy(&mut out, c, &rep[b].apply(v));
            }
        }
        out
    };
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..1000 {
        let x = random_element(&mut rng, g.dim(), 4);
        let y = random_element(&mut rng, g.dim(), 4);
        let v = random_element(&mut rng, m.dim(), 6);
        let lhs = act(&g.bracket(&x, &y), &v);
        let mut rhs = act(&x, &act(&y, &v));
        linalg::axpy(&mut rhs, &Rat::int(-1), &act(&y, &act(&x, &v)));
        assert_eq!(lhs, rhs);
    }
}
