use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use weyl_equidist_core::{
    build_root_datum, build_stability_operator, char_mu_m, cokernel, compute_h, dualize,
    freudenthal, geometric_factor, s_values, smith_normal_form, weyl_dim, weyl_group_elements,
    CharElement, GaloisAction, IntMatrix, LatticeChoice, RootDatum, Weight,
};

const RANK2: [&str; 4] = ["A2", "B2", "C2", "G2"];

fn datum(ty: &str, lattice: LatticeChoice) -> RootDatum {
    build_root_datum(&ty.parse().unwrap(), &lattice).unwrap()
}

fn small_char(rank: usize) -> impl Strategy<Value = CharElement> {
    prop::collection::vec((prop::collection::vec(-3i64..=3, rank), -4i64..=4), 0..6).prop_map(
        move |terms| {
            CharElement::from_terms(
                rank,
                terms.into_iter().map(|(e, c)| (Weight(e), BigInt::from(c))),
            )
            .unwrap()
        },
    )
}

fn matrix(max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max, 1..=max)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-9i64..=9, c), r))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in small_char(2), b in small_char(2), c in small_char(2)) {
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(a.mul(&b).unwrap().dimension(), a.dimension() * b.dimension());
        prop_assert_eq!(dualize(&a.mul(&b).unwrap()), dualize(&a).mul(&dualize(&b)).unwrap());
    }

    #[test]
    fn geometric_window_matches_convolution(
        a in small_char(3),
        alpha in prop::collection::vec(-3i64..=3, 3).prop_filter("nonzero", |v| v.iter().any(|&x| x != 0)),
        m in 0u32..4,
    ) {
        let alpha = Weight(alpha);
        let slow = a.mul(&geometric_factor(&alpha, m).unwrap()).unwrap();
        prop_assert_eq!(a.mul_geometric(&alpha, m).unwrap(), slow);
    }

    #[test]
    fn freudenthal_dimension_is_weyl_dimension(
        ty in prop::sample::select(RANK2.to_vec()),
        a in 0i64..4,
        b in 0i64..4,
    ) {
        let rd = datum(ty, LatticeChoice::Weight);
        let mu = Weight(vec![a, b]);
        let ch = freudenthal(&rd, &mu).unwrap();
        prop_assert_eq!(ch.dimension(), weyl_dim(&rd, &mu).unwrap());
        prop_assert_eq!(ch.coeff(&mu), BigInt::one());
        let w = weyl_group_elements(&rd).unwrap();
        for g in &w {
            prop_assert_eq!(ch.apply_weyl(g), ch.clone());
        }
    }

    #[test]
    fn char_mu_m_is_self_dual_and_invariant(
        ty in prop::sample::select(vec!["A1", "A2", "B2", "G2", "A3", "A1xA1"]),
        m in 0u32..3,
    ) {
        let rd = datum(ty, LatticeChoice::Root);
        let ch = char_mu_m(&rd, m);
        prop_assert_eq!(dualize(&ch), ch.clone());
        for g in weyl_group_elements(&rd).unwrap() {
            prop_assert_eq!(ch.apply_weyl(&g), ch.clone());
        }
        let k = rd.positive_roots().len() as u32;
        prop_assert_eq!(ch.dimension(), BigInt::from(4 * m + 1).pow(k));
    }

    #[test]
    fn smith_normal_form_is_a_valid_decomposition(rows in matrix(5)) {
        let a = IntMatrix::from_rows(rows[0].len(), &rows).unwrap();
        let snf = smith_normal_form(&a);
        prop_assert_eq!(snf.u.mul(&a).unwrap().mul(&snf.v).unwrap(), snf.d.clone());
        prop_assert!(snf.u.is_unimodular() && snf.v.is_unimodular() && snf.d.is_diagonal());
        prop_assert_eq!(snf.u.mul(&snf.u_inv).unwrap(), IntMatrix::identity(a.rows()));
        prop_assert_eq!(snf.v.mul(&snf.v_inv).unwrap(), IntMatrix::identity(a.cols()));
        let f = snf.invariant_factors();
        for w in f.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
    }

    #[test]
    fn cokernel_order_is_determinant(rows in (1usize..=4).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(-6i64..=6, n), n))) {
        let a = IntMatrix::from_rows(rows.len(), &rows).unwrap();
        let det = a.det().unwrap();
        let g = cokernel(&a);
        if det.is_zero() {
            prop_assert!(!g.group().is_finite());
        } else {
            prop_assert_eq!(g.group().order().unwrap(), det.abs());
        }
    }

    #[test]
    fn s_values_are_a_probability_vector(
        case in prop::sample::select(vec![0usize, 1, 2, 3]),
        m in 0u32..6,
    ) {
        let act = match case {
            0 => GaloisAction::new(datum("A1", LatticeChoice::Root), vec![vec![vec![-1]]]),
            1 => GaloisAction::new(datum("A2", LatticeChoice::Root), vec![vec![vec![0, -1], vec![1, -1]]]),
            2 => GaloisAction::new(datum("B2", LatticeChoice::Root), vec![vec![vec![-1, 0], vec![0, -1]]]),
            _ => GaloisAction::new(datum("A1xA1", LatticeChoice::Root), vec![vec![vec![0, 1], vec![1, 0]], vec![vec![-1, 0], vec![0, -1]]]),
        }.unwrap();
        let hg = compute_h(&act).unwrap();
        let s = s_values(&hg, m);
        prop_assert_eq!(s.total(), BigRational::one());
        prop_assert!(s.values.iter().all(|v| !v.is_negative()));
        let op = build_stability_operator(&hg, m);
        prop_assert!(op.is_row_stochastic() && op.is_circulant());
        prop_assert!(op.spectrum_matches(1e-9));
        // Self-duality of the character makes the symbol even.
        for h in 0..hg.order() {
            prop_assert_eq!(&s.values[h], &s.values[hg.neg(h)]);
        }
        prop_assert!(op.is_symmetric());
    }
}
