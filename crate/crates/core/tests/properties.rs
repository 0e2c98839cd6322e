use liecore::convex::{hull_contains, verify_hull_verdict, HullVerdict, Metric};
use liecore::liealg::LieAlgebra;
use liecore::linalg::{self, Vector};
use liecore::rootsys::{RootSystem, SimpleType, WeylPermutation};
use liecore::Rat;
use proptest::prelude::*;
use std::sync::OnceLock;

fn b6() -> &'static (RootSystem, Vec<WeylPermutation>) {
    static CELL: OnceLock<(RootSystem, Vec<WeylPermutation>)> = OnceLock::new();
    CELL.get_or_init(|| {
        let rs = RootSystem::new(SimpleType::parse("B6").unwrap());
        let w = rs.weyl_group(50_000).unwrap();
        (rs, w)
    })
}

fn f4() -> &'static LieAlgebra {
    static CELL: OnceLock<LieAlgebra> = OnceLock::new();
    CELL.get_or_init(|| LieAlgebra::parse("F4").unwrap())
}

fn rat_vec(len: usize, range: i64) -> impl Strategy<Value = Vector> {
    proptest::collection::vec((-range..=range, 1i64..=4), len)
        .prop_map(|v| v.into_iter().map(|(n, d)| Rat::new(n, d)).collect())
}

fn jacobiator(g: &LieAlgebra, x: &[Rat], y: &[Rat], z: &[Rat]) -> Vector {
    let mut s = g.bracket(x, &g.bracket(y, z));
    linalg::axpy(&mut s, &Rat::ONE, &g.bracket(y, &g.bracket(z, x)));
    linalg::axpy(&mut s, &Rat::ONE, &g.bracket(z, &g.bracket(x, y)));
    s
}

#[test]
fn jacobi_identity_on_basis_triples_up_to_rank_three() {
    for t in ["A1", "A2", "B2", "G2", "A3", "B3", "C3"] {
        let g = LieAlgebra::parse(t).unwrap();
        let basis: Vec<Vector> = (0..g.dim()).map(|b| g.basis_vector(b)).collect();
        for a in 0..g.dim() {
            for b in a + 1..g.dim() {
                for c in b + 1..g.dim() {
                    assert!(
                        linalg::is_zero_vec(&jacobiator(&g, &basis[a], &basis[b], &basis[c])),
                        "{t}: basis triple ({a}, {b}, {c})"
                    );
                }
            }
        }
    }
}

/// Brute-force hull membership: the target is a convex combination of at
/// most `d + 1` affinely independent points.
fn brute_force_inside(points: &[Vector], target: &[Rat]) -> bool {
    let d = target.len();
    let n = points.len();
    (1u32..(1 << n)).filter(|m| m.count_ones() as usize <= d + 1).any(|mask| {
        let idx: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let mut rows: Vec<Vector> = (0..d)
            .map(|r| idx.iter().map(|&i| points[i][r].clone()).collect())
            .collect();
        rows.push(vec![Rat::ONE; idx.len()]);
        let mut rhs = target.to_vec();
        rhs.push(Rat::ONE);
        match linalg::solve(&rows, &rhs, idx.len()) {
            Some(lam) => {
                let check = linalg::mat_vec(&rows, &lam);
                check == rhs && lam.iter().all(|x| !x.is_negative())
            }
            None => false,
        }
    })
}

fn int_points(dim: usize) -> impl Strategy<Value = (Vec<Vector>, Vector)> {
    let pt = move || proptest::collection::vec(-3i64..=3, dim).prop_map(|v| v.into_iter().map(Rat::int).collect());
    (proptest::collection::vec(pt(), 1..=8), pt())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn jacobi_identity_sampled_in_f4(x in rat_vec(52, 3), y in rat_vec(52, 3), z in rat_vec(52, 3)) {
        prop_assert!(linalg::is_zero_vec(&jacobiator(f4(), &x, &y, &z)));
    }

    #[test]
    fn killing_form_is_weyl_invariant(h in rat_vec(6, 9), k in rat_vec(6, 9), i in 0usize..46080) {
        let (rs, group) = b6();
        let w = &group[i];
        prop_assert_eq!(
            rs.killing_pair(&rs.weyl_act_cartan(w, &h), &rs.weyl_act_cartan(w, &k)),
            rs.killing_pair(&h, &k)
        );
    }

    #[test]
    fn dominant_representative_is_idempotent_and_conjugate(h in rat_vec(6, 9), i in 0usize..46080) {
        let (rs, group) = b6();
        let (dom, w) = rs.dominant_representative(&h);
        prop_assert!(rs.is_dominant(&dom));
        prop_assert_eq!(rs.weyl_act_cartan(&w, &h), dom.clone());
        prop_assert_eq!(rs.dominant_representative(&dom).0, dom.clone());
        let moved = rs.weyl_act_cartan(&group[i], &h);
        prop_assert_eq!(rs.dominant_representative(&moved).0, dom);
    }

    #[test]
    fn hull_matches_brute_force_in_2d((points, target) in int_points(2)) {
        let metric = Metric::euclidean(2);
        let verdict = hull_contains(&points, &target, &metric);
        prop_assert_eq!(verdict.is_inside(), brute_force_inside(&points, &target));
        prop_assert!(verify_hull_verdict(&points, &target, &metric, &verdict));
    }

    #[test]
    fn hull_matches_brute_force_in_3d((points, target) in int_points(3)) {
        let metric = Metric::euclidean(3);
        let verdict = hull_contains(&points, &target, &metric);
        prop_assert_eq!(verdict.is_inside(), brute_force_inside(&points, &target));
        prop_assert!(verify_hull_verdict(&points, &target, &metric, &verdict));
    }

    #[test]
    fn hull_contains_every_vertex_and_midpoint((points, _) in int_points(3), i in 0usize..8, j in 0usize..8) {
        let metric = Metric::euclidean(3);
        let (a, b) = (&points[i % points.len()], &points[j % points.len()]);
        prop_assert!(hull_contains(&points, a, &metric).is_inside());
        let mid: Vector = a.iter().zip(b).map(|(x, y)| &(x + y) * &Rat::new(1, 2)).collect();
        prop_assert!(hull_contains(&points, &mid, &metric).is_inside());
    }

    #[test]
    fn hull_in_a_skewed_metric_agrees_with_euclidean_membership((points, target) in int_points(2)) {
        let skew = Metric::new(vec![
            vec![Rat::int(2), Rat::int(1)],
            vec![Rat::int(1), Rat::int(3)],
        ]);
        let verdict = hull_contains(&points, &target, &skew);
        prop_assert_eq!(verdict.is_inside(), brute_force_inside(&points, &target));
        if let HullVerdict::Outside(_) = verdict {
            prop_assert!(verify_hull_verdict(&points, &target, &skew, &verdict));
        }
    }
}
