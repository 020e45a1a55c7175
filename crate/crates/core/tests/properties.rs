use num_traits::{Signed, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tenfold::cli::random_family;
use tenfold::groups::{cokernel, cokernel_hnf, smith_normal_form, AbelianGroup, IntMatrix};
use tenfold::homotopy::{conjugate_family, difference_class, direct_sum_swap_check, winding};
use tenfold::kcalc::{lattice_classify, KSequence};
use tenfold::symmetry::{
    exterior_transform, pm1_reduce, random_valid_cocycle, reduce_antiunitaries, standardize, validate_cocycle, Series,
    Sign, TenfoldClass, UnitPhase,
};

fn matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(-9i64..10, c), r)
            .prop_map(move |rows| IntMatrix::from_rows_with_cols(&rows, c))
    })
}

fn group() -> impl Strategy<Value = AbelianGroup> {
    (0usize..3, proptest::collection::vec(2u64..13, 0..4)).prop_map(|(f, t)| AbelianGroup::new(f, t))
}

fn class() -> impl Strategy<Value = TenfoldClass> {
    (0usize..10).prop_map(|i| TenfoldClass::ALL[i])
}

fn sign() -> impl Strategy<Value = Sign> {
    any::<bool>().prop_map(|b| if b { Sign::Minus } else { Sign::Plus })
}

fn ksequence(series: Series) -> impl Strategy<Value = KSequence> {
    proptest::collection::vec(group(), series.period()).prop_map(move |g| KSequence::new(series, g).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn smith_and_hermite_cokernels_agree(m in matrix()) {
        prop_assert_eq!(cokernel(&m), cokernel_hnf(&m));
    }

    #[test]
    fn smith_form_is_a_unimodular_diagonalisation(m in matrix()) {
        let snf = smith_normal_form(&m);
        let d = snf.left.mul(&m).mul(&snf.right);
        prop_assert_eq!(&d, &snf.diagonal_matrix(m.rows(), m.cols()));
        prop_assert!(snf.left.determinant().abs() == 1.into());
        prop_assert!(snf.right.determinant().abs() == 1.into());
        for w in snf.diagonal.windows(2) {
            let ok = if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() };
            prop_assert!(ok, "{} does not divide {}", w[0], w[1]);
        }
    }

    #[test]
    fn direct_sum_is_commutative_and_associative(a in group(), b in group(), c in group()) {
        prop_assert_eq!(a.direct_sum(&b), b.direct_sum(&a));
        prop_assert_eq!(a.direct_sum(&b).direct_sum(&c), a.direct_sum(&b.direct_sum(&c)));
        prop_assert_eq!(a.direct_sum(&AbelianGroup::trivial()), a.clone());
    }

    #[test]
    fn group_strings_round_trip(a in group()) {
        prop_assert_eq!(a.to_string().parse::<AbelianGroup>().unwrap(), a.clone());
        prop_assert_eq!(a.to_machine_string().parse::<AbelianGroup>().unwrap(), a);
    }

    #[test]
    fn bott_periodicity(k in class(), d in 0usize..12) {
        let p = k.series().period();
        let a = lattice_classify(&k.spec().with_dims(d, 0)).unwrap();
        let b = lattice_classify(&k.spec().with_dims(d + p, 0)).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn binomial_formula_matches_iterated_sequence(
        k in class(),
        real in ksequence(Series::Real),
        complex in ksequence(Series::Complex),
        cont in 0usize..4,
        lattice in 0usize..6,
    ) {
        let base = if k.series() == Series::Real { real } else { complex };
        let spec = tenfold::symmetry::SymmetrySpec { base_k: Some(base.clone()), ..k.spec() }.with_dims(cont, lattice);
        let mut seq = base;
        for _ in 0..lattice {
            seq = seq.crossed_with_z();
        }
        prop_assert_eq!(&lattice_classify(&spec).unwrap(), seq.get(k.degree() as i64 - cont as i64));
    }

    #[test]
    fn antiunitary_squares_are_class_invariants(
        seed in any::<u64>(),
        phi in proptest::collection::vec(sign(), 1..5),
        grading in proptest::collection::vec(sign(), 4),
        turns in proptest::collection::vec(0i64..16, 16),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = grading[..phi.len()].to_vec();
        let d = random_valid_cocycle(&mut rng, phi, c);
        prop_assert!(validate_cocycle(&d));
        let mut lambda: Vec<UnitPhase> = (0..d.order() as usize).map(|x| UnitPhase::from_turns(turns[x], 16)).collect();
        lambda[0] = UnitPhase::ONE;
        let moved = exterior_transform(&d, &lambda).unwrap();
        prop_assert!(validate_cocycle(&moved));
        let a = standardize(&reduce_antiunitaries(&d).0).unwrap();
        let b = standardize(&reduce_antiunitaries(&moved).0).unwrap();
        prop_assert_eq!(&a.a_squares, &b.a_squares);
        prop_assert!(a.u_squares.iter().all(|s| *s == Sign::Plus));
        // standardising twice changes nothing
        let again = standardize(&a.data).unwrap();
        prop_assert_eq!(again.data, a.data);
    }

    #[test]
    fn sign_reduction_gives_signs(
        seed in any::<u64>(),
        rest in proptest::collection::vec(sign(), 0..4),
        grading in proptest::collection::vec(sign(), 4),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut phi = vec![Sign::Minus];
        phi.extend(rest);
        let c = grading[..phi.len()].to_vec();
        let d = random_valid_cocycle(&mut rng, phi, c);
        let r = pm1_reduce(&d, 1).unwrap();
        prop_assert!(validate_cocycle(&r));
        prop_assert!(r.sigma_table().iter().all(|p| p.as_sign().is_some()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn difference_classes_compose(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f: Vec<_> = (0..3).map(|_| random_family(&mut rng, 256)).collect();
        let dc = |a: usize, b: usize| difference_class(&f[a], &f[b]).unwrap();
        prop_assert_eq!(dc(0, 1) + dc(1, 2), dc(0, 2));
        prop_assert_eq!(dc(0, 1), -dc(1, 0));
        prop_assert!(direct_sum_swap_check(&f[0], &f[1]).unwrap());
    }

    #[test]
    fn gauge_shift_is_uniform(seed in any::<u64>(), k in -3i64..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_family(&mut rng, 256);
        prop_assert_eq!(winding(&conjugate_family(&f, k)).unwrap() - winding(&f).unwrap(), k);
    }
}
