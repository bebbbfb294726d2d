use nefcone_core::algebra::{discriminant, int, is_squarefree, resultant, MultiPoly, UniPoly};
use nefcone_core::parse_poly;
use proptest::prelude::*;

const VARS: [&str; 3] = ["x", "y", "t"];

fn poly(max_terms: usize, max_exp: u32) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec(
        ((0..=max_exp, 0..=max_exp, 0..=max_exp), -6i64..=6),
        0..=max_terms,
    )
    .prop_map(|terms| {
        MultiPoly::from_terms(
            &VARS,
            terms
                .into_iter()
                .map(|((a, b, c), k)| (vec![a, b, c], int(k))),
        )
    })
}

/// A polynomial in `x` over `t` with nonzero constant leading coefficient
/// `x^deg`, so that specializing `t` never drops the degree.
fn monic_in_x(max_deg: u32) -> impl Strategy<Value = MultiPoly> {
    (
        1..=max_deg,
        prop::collection::vec((0..4u32, 0..3u32, -4i64..=4), 0..5),
    )
        .prop_map(|(deg, terms)| {
            let lead = MultiPoly::from_terms(&VARS, [(vec![deg, 0, 0], int(1))]);
            let rest = MultiPoly::from_terms(
                &VARS,
                terms
                    .into_iter()
                    .map(|(a, c, k)| (vec![a % deg, 0, c], int(k))),
            );
            lead + rest
        })
}

fn univariate(max_deg: usize) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec(-5i64..=5, 2..=max_deg + 1).prop_filter_map("degree >= 2", |coeffs| {
        let u = UniPoly::new(coeffs.into_iter().map(int).collect());
        (u.degree().unwrap_or(0) >= 2).then(|| u.to_multi("x"))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn ring_axioms(f in poly(5, 3), g in poly(5, 3), h in poly(5, 3)) {
        prop_assert_eq!(&(&f + &g) + &h, &f + &(&g + &h));
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&(&f + &g) - &g, f.clone());
    }

    #[test]
    fn degree_is_additive(f in poly(4, 3), g in poly(4, 3)) {
        prop_assume!(!f.is_zero() && !g.is_zero());
        prop_assert_eq!((&f * &g).total_degree(), Some(f.total_degree().unwrap() + g.total_degree().unwrap()));
    }

    #[test]
    fn print_parse_roundtrip(f in poly(6, 4)) {
        let text = f.to_string();
        prop_assert_eq!(parse_poly(&text, &VARS).unwrap(), f);
    }

    #[test]
    fn partial_derivative_is_linear(f in poly(4, 3), g in poly(4, 3)) {
        prop_assert_eq!((&f + &g).partial("x").unwrap(), &f.partial("x").unwrap() + &g.partial("x").unwrap());
        prop_assert_eq!((&f * &g).partial("y").unwrap(),
            &(&f.partial("y").unwrap() * &g) + &(&f * &g.partial("y").unwrap()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn resultant_is_multiplicative(f in monic_in_x(3), g in monic_in_x(2), h in monic_in_x(2)) {
        let lhs = resultant(&f, &(&g * &h), "x").unwrap();
        let rhs = &resultant(&f, &g, "x").unwrap() * &resultant(&f, &h, "x").unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn resultant_commutes_with_specialization(f in monic_in_x(3), g in monic_in_x(3), t in -3i64..=3) {
        let t = int(t);
        let before = resultant(&f, &g, "x").unwrap().specialize("t", &t).unwrap();
        let after = resultant(&f.specialize("t", &t).unwrap(), &g.specialize("t", &t).unwrap(), "x").unwrap();
        prop_assert_eq!(before, after);
    }

    #[test]
    fn common_factor_kills_resultant(f in monic_in_x(2), g in monic_in_x(2), h in monic_in_x(2)) {
        prop_assert!(resultant(&(&f * &g), &(&f * &h), "x").unwrap().is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn squarefree_iff_nonzero_discriminant(f in univariate(8)) {
        let report = is_squarefree(&f, "x").unwrap();
        let disc = discriminant(&f, "x").unwrap();
        prop_assert_eq!(report.squarefree, !disc.is_zero());
    }

    #[test]
    fn squares_are_not_squarefree(f in univariate(4)) {
        let sq = &f * &f;
        prop_assert!(!is_squarefree(&sq, "x").unwrap().squarefree);
        let part = is_squarefree(&sq, "x").unwrap().part;
        prop_assert!(is_squarefree(&part, "x").unwrap().squarefree);
    }
}
