use num_complex::Complex64;
use proptest::prelude::*;

use modknot::braid3::{alexander, braid_of_word, burau};
use modknot::charvar::CrossingSet;
use modknot::linking::{cos_a, intersection_number, lk, lk_oracle};
use modknot::modgroup::{reduce_to_cycle, st_factor, word_to_matrix, Conjugacy, MatZ};
use modknot::qdeform::{deform, fricke_trace, q_matrix};
use modknot::qmbasis::{defect_term, mas, Mas, QuasiMorphism, Rad};
use modknot::words::{canonicalize, coprime, transpose, CyclicWord, Letter, Word};

fn word(max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(prop::bool::ANY, 1..=max).prop_map(|bits| {
        Word::new(
            bits.into_iter()
                .map(|b| if b { Letter::R } else { Letter::L })
                .collect(),
        )
    })
}

fn hyperbolic_class(max: usize) -> impl Strategy<Value = CyclicWord> {
    word(max)
        .prop_map(|w| canonicalize(&w).unwrap())
        .prop_filter("hyperbolic", |c| c.is_hyperbolic())
}

fn primitive_class(max: usize) -> impl Strategy<Value = CyclicWord> {
    hyperbolic_class(max).prop_filter("primitive", |c| c.is_primitive())
}

fn matrix() -> impl Strategy<Value = MatZ> {
    word(10).prop_flat_map(|w| {
        (Just(w), prop::collection::vec(0u8..3, 0..8)).prop_map(|(w, conj)| {
            let mut m = word_to_matrix(&w);
            for g in conj {
                let h = match g {
                    0 => MatZ::s(),
                    1 => MatZ::t(),
                    _ => MatZ::r(),
                };
                m = m.conjugate_by(&h);
            }
            m
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn conjugates_reduce_to_the_same_class(w in word(10), g in matrix()) {
        let m = word_to_matrix(&w);
        let expect = reduce_to_cycle(&m);
        prop_assert_eq!(reduce_to_cycle(&m.conjugate_by(&g)), expect.clone());
        prop_assert_eq!(Conjugacy::Cycle(canonicalize(&w).unwrap()), expect);
    }

    #[test]
    fn st_factor_evaluates_back(m in matrix()) {
        prop_assert_eq!(st_factor(&m).evaluate(), m.clone());
        let at_one = deform(&m).eval_at(Complex64::new(1.0, 0.0)).unwrap();
        let exact: Vec<f64> = m.to_i64().unwrap().iter().map(|&v| v as f64).collect();
        let same = |sign: f64| at_one.iter().zip(&exact).all(|(z, e)| (z - sign * e).norm() < 1e-9);
        prop_assert!(same(1.0) || same(-1.0), "{} vs {:?}", m, at_one);
    }

    #[test]
    fn inverse_class_is_the_transpose(m in matrix()) {
        if let Conjugacy::Cycle(c) = reduce_to_cycle(&m) {
            prop_assert_eq!(reduce_to_cycle(&m.inverse()), Conjugacy::Cycle(transpose(&c)));
        }
    }

    #[test]
    fn lk_symmetric_and_matches_oracle(a in primitive_class(7), b in primitive_class(7)) {
        prop_assume!(coprime(&a, &b));
        let v = lk(&a, &b).unwrap();
        prop_assert_eq!(lk(&b, &a).unwrap(), v);
        prop_assert_eq!(lk_oracle(&a, &b).unwrap(), v);
        prop_assert_eq!(lk(&transpose(&a), &transpose(&b)).unwrap(), v);
    }

    #[test]
    fn intersection_and_cos_relations(a in primitive_class(6), b in primitive_class(6)) {
        let i = intersection_number(&a, &b).unwrap();
        prop_assert_eq!(i, intersection_number(&a, &transpose(&b)).unwrap());
        prop_assert_eq!(cos_a(&a, &b).unwrap(), -cos_a(&a, &transpose(&b)).unwrap());
        prop_assert_eq!(CrossingSet::new(&a, &b).unwrap().intersection_number() as i64, i);
    }

    #[test]
    fn fricke_trace_specialises(a in hyperbolic_class(10)) {
        let tr = fricke_trace(&a);
        prop_assert!(tr.is_reciprocal());
        let direct = q_matrix(a.word()).trace();
        prop_assert_eq!(tr, direct);
    }

    #[test]
    fn alexander_is_rotation_invariant(w in word(9), k in 0usize..9) {
        let c = canonicalize(&w).unwrap();
        let rotated = w.rotate(k % w.len());
        let det = burau(&braid_of_word(&rotated)).det();
        prop_assert_eq!(det, burau(&braid_of_word(&w)).det());
        prop_assert!(alexander(&c).is_ok());
    }

    #[test]
    fn mas_is_antisymmetric_and_homogeneous(p in word(4), a in word(8), n in 1usize..4) {
        let a = canonicalize(&a).unwrap();
        let v = mas(&p, &a).unwrap();
        prop_assert_eq!(mas(&p.transpose(), &a).unwrap(), -v);
        prop_assert_eq!(mas(&p, &a.pow(n)).unwrap(), n as i64 * v);
    }

    #[test]
    fn homogeneous_functions_vanish_on_inverse_pairs(m in matrix(), p in word(3)) {
        for f in [&Rad as &dyn QuasiMorphism, &Mas(p)] {
            prop_assert_eq!(defect_term(f, &m, &m.inverse()).unwrap(), 0);
        }
    }
}
