use detcheck::catalog::chu_vandermonde_check;
use detcheck::field::DEGREE;
use detcheck::hyper::{pochhammer, q_pochhammer};
use detcheck::par::Exec;
use detcheck::ortho::LaurentPoly;
use detcheck::qseries::TruncatedQSeries;
use detcheck::{ExactMatrix, FieldElement as Fe, Rational};
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=6).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn element() -> impl Strategy<Value = Fe> {
    proptest::array::uniform8(small_rational()).prop_map(|c: [Rational; DEGREE]| Fe::from_coeffs(&c))
}

fn sparse_element() -> impl Strategy<Value = Fe> {
    (small_rational(), 0i64..24).prop_map(|(r, k)| Fe::zeta_pow(k) * Fe::from_rational(&r))
}

fn cofactor(m: &[Vec<Fe>]) -> Fe {
    if m.is_empty() {
        return Fe::one();
    }
    let mut acc = Fe::zero();
    for j in 0..m.len() {
        let minor: Vec<Vec<Fe>> =
            m[1..].iter().map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, x)| x.clone()).collect()).collect();
        let term = &m[0][j] * &cofactor(&minor);
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

fn matrix(max: usize) -> impl Strategy<Value = Vec<Vec<Fe>>> {
    (0..=max).prop_flat_map(|n| proptest::collection::vec(proptest::collection::vec(sparse_element(), n), n))
}

fn series(order: usize) -> impl Strategy<Value = TruncatedQSeries> {
    proptest::collection::vec(proptest::collection::vec((-2i64..=2, -3i64..=3), 0..3), order + 1).prop_map(
        move |coeffs| {
            let laurent: Vec<LaurentPoly> = coeffs
                .into_iter()
                .map(|terms| LaurentPoly::from_terms(terms.into_iter().map(|(e, c)| (e, Fe::from_int(c)))))
                .collect();
            TruncatedQSeries::from_coeffs(laurent).expect("nonempty")
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn field_ring_axioms(a in element(), b in element(), c in element()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Fe::one(), a.clone());
    }

    #[test]
    fn field_inverse(a in element()) {
        prop_assume!(!a.is_zero());
        prop_assert!((&a * &a.invert().unwrap()).is_one());
    }

    #[test]
    fn galois_action_is_a_ring_map(a in element(), b in element(), k in prop::sample::select(vec![5i64, 7, 11, 13])) {
        prop_assert_eq!((&a * &b).galois(k), &a.galois(k) * &b.galois(k));
        prop_assert_eq!((&a + &b).galois(k), &a.galois(k) + &b.galois(k));
    }

    #[test]
    fn determinant_matches_cofactor_expansion(rows in matrix(4)) {
        prop_assert_eq!(ExactMatrix::from_rows(rows.clone()).determinant(), cofactor(&rows));
    }

    #[test]
    fn determinant_is_multiplicative_on_diagonal_scaling(rows in matrix(4), d in sparse_element()) {
        let m = ExactMatrix::from_rows(rows);
        let n = m.size();
        prop_assume!(n > 0);
        let scaled = m.scale_row(0, &d);
        prop_assert_eq!(scaled.determinant(), &m.determinant() * &d);
    }

    #[test]
    fn q_pochhammer_splits(a in small_rational(), q in small_rational(), m in 0usize..6, n in 0usize..6) {
        let (a, q) = (Fe::from_rational(&a), Fe::from_rational(&q));
        let aqm = &a * &q.pow(m as u32);
        prop_assert_eq!(q_pochhammer(&a, &q, m + n), &q_pochhammer(&a, &q, m) * &q_pochhammer(&aqm, &q, n));
    }

    #[test]
    fn pochhammer_splits(a in small_rational(), m in 0usize..8, n in 0usize..8) {
        let a = Fe::from_rational(&a);
        let am = &a + &Fe::from_int(m as i64);
        prop_assert_eq!(pochhammer(&a, m + n), &pochhammer(&a, m) * &pochhammer(&am, n));
    }

    #[test]
    fn chu_vandermonde(m in 0usize..10, n in 0usize..10, b in (1i64..=20, 1i64..=4)) {
        let b = Fe::from_rational(&Rational::new(b.0.into(), b.1.into()));
        prop_assert!(chu_vandermonde_check(m, n, &b).unwrap());
    }

    #[test]
    fn series_product_commutes_and_associates(a in series(5), b in series(5), c in series(5)) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn series_product_is_execution_independent(a in series(6), b in series(6)) {
        prop_assert_eq!(a.mul_with(&b, Exec::Sequential), a.mul_with(&b, Exec::Parallel));
    }
}
