use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use proptest::prelude::*;

use splitcert::collapse::{elementary_collapse, free_faces, greedy_collapse, replay, SearchBudget};
use splitcert::group::{smith_diagonal, Letter, Word};
use splitcert::hyperbolic::{hyp_distance, reflection, rotation, DiskPoint, DEFAULT_TOL};
use splitcert::simplicial::{Simplex, SimplicialComplex};
use splitcert::splitting::{distinguishable, multiset_of, Count, FactorMultiset, SumDescription};

fn complex() -> impl Strategy<Value = SimplicialComplex> {
    prop::collection::vec(prop::collection::btree_set(0u8..6, 1..=3), 1..8).prop_map(|sets| {
        SimplicialComplex::build(
            "k",
            sets.into_iter().map(|s| {
                let names: Vec<String> = s.iter().map(|v| format!("v{v}")).collect();
                Simplex::from_names(names.iter().map(String::as_str)).unwrap()
            }),
        )
    })
}

fn word() -> impl Strategy<Value = Word> {
    prop::collection::vec((0usize..3, any::<bool>()), 0..12).prop_map(|ls| {
        Word::from_letters(
            ls.into_iter()
                .map(|(g, inv)| Letter::new(["a", "b", "c"][g], if inv { -1 } else { 1 }))
                .collect(),
        )
    })
}

fn disk_point() -> impl Strategy<Value = DiskPoint> {
    (0.0f64..0.9, 0.0f64..std::f64::consts::TAU)
        .prop_map(|(r, t)| DiskPoint::new(Complex64::from_polar(r, t)).unwrap())
}

fn multiset() -> impl Strategy<Value = FactorMultiset> {
    prop::collection::btree_map(0u8..5, prop::option::of(1u64..4), 0..5).prop_map(|m| {
        FactorMultiset::new(
            m.into_iter()
                .map(|(l, c)| (format!("J{l}"), c.map_or(Count::Omega, Count::Finite))),
        )
        .unwrap()
    })
}

proptest! {
    #[test]
    fn built_complexes_are_face_closed(k in complex()) {
        prop_assert!(k.is_face_closed());
        for m in k.maximal_simplices() {
            prop_assert!(k.contains(&m));
        }
    }

    #[test]
    fn collapses_keep_euler_characteristic(k in complex()) {
        let chi = k.euler_characteristic();
        for f in free_faces(&k) {
            prop_assert_eq!(elementary_collapse(&k, &f).unwrap().euler_characteristic(), chi);
        }
        let g = greedy_collapse(&k, &SearchBudget::default());
        let r = replay(&k, &g.cert).unwrap();
        prop_assert!(r.trace.iter().all(|s| s.euler == chi));
        prop_assert_eq!(r.final_complex, g.residual);
    }

    #[test]
    fn free_reduction_is_idempotent(w in word()) {
        let r = w.free_reduce();
        prop_assert!(r.is_reduced());
        prop_assert_eq!(r.free_reduce(), r.clone());
        prop_assert!((&w * &w.inverse()).free_reduce().is_empty());
    }

    #[test]
    fn substitution_is_a_homomorphism(u in word(), v in word(), img in prop::collection::vec(word(), 3)) {
        let map: BTreeMap<String, Word> = ["a", "b", "c"].iter().map(|s| s.to_string()).zip(img).collect();
        let lhs = (&u * &v).substitute(&map).unwrap();
        let rhs = (&u.substitute(&map).unwrap() * &v.substitute(&map).unwrap()).free_reduce();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn smith_form_ignores_row_operations(rows in prop::collection::vec(prop::collection::vec(-9i64..10, 3), 1..4), k in -3i64..4) {
        let m: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let mut shuffled = m.clone();
        if shuffled.len() > 1 {
            let add: Vec<BigInt> = shuffled[1].iter().map(|x| x * k).collect();
            for (a, b) in shuffled[0].iter_mut().zip(add) {
                *a += b;
            }
            shuffled.swap(0, 1);
        }
        prop_assert_eq!(smith_diagonal(&m), smith_diagonal(&shuffled));
    }

    #[test]
    fn isometries_preserve_distance(c in disk_point(), p in disk_point(), q in disk_point(), theta in -7.0f64..7.0) {
        let rot = rotation(c, theta, DEFAULT_TOL);
        prop_assert!((hyp_distance(rot.apply(p), rot.apply(q)) - hyp_distance(p, q)).abs() < 1e-7);
        prop_assert!(rot.compose(&rot.inverse()).is_identity());
        if hyp_distance(c, p) > 1e-3 {
            let r = reflection(c, p, DEFAULT_TOL).unwrap();
            prop_assert!((hyp_distance(r.apply(q), r.apply(c)) - hyp_distance(q, c)).abs() < 1e-7);
            prop_assert!(r.compose(&rot).inverse().compose(&r.compose(&rot)).is_identity());
        }
    }

    #[test]
    fn distinguishable_is_symmetric_and_irreflexive(m1 in multiset(), m2 in multiset()) {
        prop_assert!(!distinguishable(&m1, &m1));
        prop_assert_eq!(distinguishable(&m1, &m2), distinguishable(&m2, &m1));
        prop_assert_eq!(FactorMultiset::parse(&m1.to_string()).unwrap(), m1);
    }

    #[test]
    fn prefix_order_does_not_change_counts(prefix in prop::collection::vec(0u8..4, 0..8), rot in 0usize..8) {
        let labels: Vec<String> = prefix.iter().map(|l| format!("J{l}")).collect();
        let mut rotated = labels.clone();
        if !rotated.is_empty() {
            let k = rot % rotated.len();
            rotated.rotate_left(k);
        }
        let period = vec!["J9".to_string()];
        let a = SumDescription::Sequence { prefix: labels, period: period.clone() };
        let b = SumDescription::Sequence { prefix: rotated, period };
        prop_assert_eq!(multiset_of(&a), multiset_of(&b));
    }
}
