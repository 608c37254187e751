mod common;

use proptest::prelude::*;

use antialgebra::algebra::Parity;
use antialgebra::extensions::ExtType;
use antialgebra::geometry::{Coord, GrassmannPoly, Space};
use antialgebra::json::{algebra_from_json, algebra_to_json};
use antialgebra::linalg::QMatrix;
use antialgebra::meataxe::{module_irreducible, Irreducibility};
use antialgebra::scalar::Scalar;

fn small_rational() -> impl Strategy<Value = (i64, i64)> {
    (-20i64..=20, 1i64..=9)
}

fn qsqrt2() -> impl Strategy<Value = Scalar> {
    (small_rational(), small_rational()).prop_map(|((a, b), (c, d))| {
        let re = Scalar::from_ratio(a, b);
        let im = &Scalar::from_ratio(c, d) * &Scalar::sqrt(2).unwrap();
        &re + &im
    })
}

fn rational() -> impl Strategy<Value = Scalar> {
    small_rational().prop_map(|(a, b)| Scalar::from_ratio(a, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalar_field_axioms(a in qsqrt2(), b in qsqrt2(), c in qsqrt2()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv()).is_one());
        }
    }

    #[test]
    fn scalar_text_round_trip(a in qsqrt2()) {
        let s = a.to_string();
        prop_assert_eq!(s.parse::<Scalar>().unwrap(), a);
    }

    #[test]
    fn reduction_is_a_ring_map(a in qsqrt2(), b in qsqrt2(), p in prop::sample::select(vec![5u64, 7, 11, 13])) {
        // denominators ≤ 9 may vanish mod 5 and 7; those inputs have no image
        if let (Ok(ra), Ok(rb)) = (a.reduce_mod(p), b.reduce_mod(p)) {
            prop_assert_eq!((&a * &b).reduce_mod(p).unwrap(), ra.mul(&rb));
            prop_assert_eq!((&a + &b).reduce_mod(p).unwrap(), ra.add(&rb));
        }
    }

    #[test]
    fn rank_plus_nullity(rows in 1usize..5, cols in 1usize..5, entries in prop::collection::vec(-3i64..=3, 25)) {
        let data: Vec<Vec<Scalar>> = (0..rows).map(|i| (0..cols).map(|j| Scalar::from_int(entries[i * 5 + j])).collect()).collect();
        let m = QMatrix::from_rows(data.clone(), cols, &Scalar::zero());
        let ker = m.kernel();
        prop_assert_eq!(m.rank() + ker.len(), cols);
        prop_assert_eq!(m.rank(), common::rank(&data));
        for v in &ker {
            prop_assert!(m.apply(v).iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn partial_derivatives_obey_super_leibniz(
        f_terms in prop::collection::vec((rational(), -2i64..3, -2i64..3, 0u8..8), 1..4),
        g_terms in prop::collection::vec((rational(), -2i64..3, -2i64..3, 0u8..8), 1..4),
        f_odd in any::<bool>(),
    ) {
        let sp = Space::new(&["x", "y"], &["s", "t", "u"]);
        let build = |terms: &[(Scalar, i64, i64, u8)], parity: Option<bool>| {
            let mut p = sp.zero();
            for (c, e0, e1, mask) in terms {
                let odd: Vec<usize> = (0..3).filter(|k| mask & (1 << k) != 0).collect();
                if parity.is_some_and(|want| (odd.len() % 2 == 1) != want) {
                    continue;
                }
                p = p.add(&sp.mono(c.clone(), &[*e0, *e1], &odd));
            }
            p
        };
        let f: GrassmannPoly = build(&f_terms, Some(f_odd));
        let g = build(&g_terms, None);
        let fg = f.mul(&g);
        for u in sp.coords() {
            let sign = if f_odd && u.parity() == Parity::Odd { Scalar::from_int(-1) } else { Scalar::one() };
            let rhs = sp.partial(&f, u).mul(&g).add(&f.mul(&sp.partial(&g, u)).scale(&sign));
            prop_assert_eq!(sp.partial(&fg, u), rhs);
        }
        // odd variables square to zero and anticommute
        let (s, t) = (sp.var(Coord::Odd(0)), sp.var(Coord::Odd(1)));
        prop_assert!(s.mul(&s).is_zero());
        prop_assert!(s.mul(&t).add(&t.mul(&s)).is_zero());
    }

    #[test]
    fn cocycle_space_matches_naive_solver(p in 0usize..=2, q in 0usize..=3, entries in prop::collection::vec(-2i64..=2, 1..40)) {
        let a = common::random_table(p, q, &entries);
        for kind in [ExtType::I, ExtType::II] {
            if let Err(e) = common::cocycles_agree(&a, kind) {
                prop_assert!(false, "type {}: {}", kind.as_str(), e);
            }
        }
    }

    #[test]
    fn meataxe_matches_exhaustive_search(dim in 1usize..=3, ngens in 0usize..=2, entries in prop::collection::vec(0u64..5, 18)) {
        let gens: Vec<_> = (0..ngens).map(|g| common::gf_matrix(5, dim, &entries[g * 9..])).collect();
        let oracle = common::has_invariant_subspace(&gens, dim, 5);
        match module_irreducible(&gens, dim, 5) {
            Irreducibility::Irreducible => prop_assert!(!oracle),
            Irreducibility::Reducible(w) => {
                prop_assert!(oracle);
                prop_assert!(common::is_invariant_witness(&gens, &w, dim, 5));
            }
            Irreducibility::Inconclusive => prop_assert!(false, "inconclusive in dim {}", dim),
        }
    }

    #[test]
    fn algebra_json_round_trip(p in 0usize..=2, q in 0usize..=3, entries in prop::collection::vec(-2i64..=2, 1..40)) {
        let a = common::random_table(p, q, &entries);
        let v = algebra_to_json(&a);
        prop_assert_eq!(algebra_from_json(&v).unwrap(), a);
    }
}
