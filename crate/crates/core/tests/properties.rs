//! Randomized invariants of the arithmetic stack: differentiation, resultants,
//! kernels, canonical forms, and the geometric identities that survive any
//! choice of curve.

#![allow(clippy::needless_range_loop)]

use proptest::prelude::*;

use oscdual_core::bryant::{conormal_lift, theta_pushforward};
use oscdual_core::catalog::{monomial_contact_form, monomial_curve, MonomialSpec};
use oscdual_core::contact::{legendrian_check, pfaffian, standard_b};
use oscdual_core::exactmath::{parse_poly, poly_gcd, rat, rat_int, resultant};
use oscdual_core::osculation::osculating_dual;
use oscdual_core::{MultiPoly, ParamVariety, PolyMatrix};

fn poly_from_terms(vars: &[&str], terms: Vec<(Vec<u32>, i64)>) -> MultiPoly {
    terms.into_iter().fold(MultiPoly::zero(vars), |acc, (exps, c)| {
        &acc + &MultiPoly::monomial(vars, &exps, rat_int(c))
    })
}

fn univariate(max_degree: u32, max_terms: usize) -> impl Strategy<Value = MultiPoly> {
    proptest::collection::vec((0..=max_degree, -9i64..=9), 1..=max_terms)
        .prop_map(|terms| {
            poly_from_terms(&["t"], terms.into_iter().map(|(e, c)| (vec![e], c)).collect())
        })
}

fn univariate_nonzero(max_degree: u32, max_terms: usize) -> impl Strategy<Value = MultiPoly> {
    univariate(max_degree, max_terms).prop_filter("nonzero", |p| !p.is_zero())
}

fn bivariate(max_degree: u32, max_terms: usize) -> impl Strategy<Value = MultiPoly> {
    proptest::collection::vec((0..=max_degree, 0..=max_degree, -9i64..=9), 1..=max_terms)
        .prop_map(|terms| {
            poly_from_terms(
                &["t", "u"],
                terms.into_iter().map(|(e1, e2, c)| (vec![e1, e2], c)).collect(),
            )
        })
}

proptest! {
    #[test]
    fn products_differentiate_by_the_leibniz_rule(
        p in bivariate(4, 4),
        q in bivariate(4, 4),
    ) {
        for var in ["t", "u"] {
            let product = &p * &q;
            let lhs = product.differentiate(var).unwrap();
            let rhs = &(&p.differentiate(var).unwrap() * &q)
                + &(&p * &q.differentiate(var).unwrap());
            prop_assert_eq!(&lhs, &rhs);
        }
    }

    #[test]
    fn resultant_vanishes_exactly_on_a_common_factor(
        p in univariate_nonzero(4, 3),
        q in univariate_nonzero(4, 3),
        root in -5i64..=5,
    ) {
        let positive_degree = |f: &MultiPoly| f.total_degree().is_some_and(|d| d >= 1);
        prop_assume!(positive_degree(&p) && positive_degree(&q));

        let res = resultant(&p, &q, "t").unwrap();
        let gcd_nonconstant = !poly_gcd(&p, &q).is_constant();
        prop_assert_eq!(res.is_zero(), gcd_nonconstant);

        // Forcing a shared root forces the resultant to vanish.
        let factor = poly_from_terms(&["t"], vec![(vec![1], 1), (vec![0], -root)]);
        let shared = resultant(&(&p * &factor), &(&q * &factor), "t").unwrap();
        prop_assert!(shared.is_zero());
    }

    #[test]
    fn elimination_kernels_annihilate_every_row(
        entries in proptest::collection::vec(univariate(1, 2), 15),
    ) {
        let rows: Vec<Vec<MultiPoly>> = entries.chunks(5).map(|c| c.to_vec()).collect();
        let matrix = PolyMatrix::from_rows(rows.clone()).unwrap();
        let (rank, kernel) = matrix.rank_kernel();
        prop_assert_eq!(rank + kernel.len(), 5);
        for vector in &kernel {
            for row in &rows {
                let dot = row
                    .iter()
                    .zip(vector)
                    .fold(MultiPoly::zero(&["t"]), |acc, (a, b)| &acc + &(a * b));
                prop_assert!(dot.is_zero());
            }
        }
    }

    #[test]
    fn display_round_trips_through_the_parser(p in bivariate(5, 5)) {
        let reparsed = parse_poly(&p.to_string(), &["t", "u"]).unwrap();
        prop_assert_eq!(&reparsed, &p);
    }

    #[test]
    fn canonical_coordinates_ignore_common_factors(
        coords in proptest::collection::vec(univariate_nonzero(3, 3), 3),
        exp in 0u32..=3,
        num in 1i64..=9,
        den in 1i64..=9,
        negate in proptest::bool::ANY,
    ) {
        let sign = if negate { -1 } else { 1 };
        let factor = MultiPoly::monomial(&["t"], &[exp], rat(sign * num, den));
        let scaled: Vec<MultiPoly> = coords.iter().map(|c| c * &factor).collect();
        let plain = ParamVariety::new(vec!["t".into()], coords).unwrap();
        let rescaled = ParamVariety::new(vec!["t".into()], scaled).unwrap();
        prop_assert_eq!(&plain, &rescaled);
    }

    #[test]
    fn pfaffians_square_to_determinants(
        upper in proptest::collection::vec(univariate(1, 2), 6),
    ) {
        let zero = MultiPoly::zero(&["t"]);
        let mut rows = vec![vec![zero; 4]; 4];
        let mut it = upper.into_iter();
        for i in 0..4 {
            for j in (i + 1)..4 {
                let p = it.next().unwrap();
                rows[j][i] = -&p;
                rows[i][j] = p;
            }
        }
        let matrix = PolyMatrix::from_rows(rows).unwrap();
        let pf = pfaffian(&matrix).unwrap();
        prop_assert_eq!(&(&pf * &pf), &matrix.det().unwrap());
    }

    #[test]
    fn symmetric_monomial_tangents_pair_to_zero(
        a in 1u32..=3,
        step in 1u32..=4,
        num in -20i64..=20,
        den in 1i64..=10,
    ) {
        let b = a + step;
        prop_assume!(num_integer::Integer::gcd(&a, &b) == 1);
        let spec = MonomialSpec::new(a, b, a + b).unwrap();
        let curve = monomial_curve(&spec);
        let form = monomial_contact_form(&spec).unwrap();

        let t0 = [rat(num, den)];
        let position: Vec<_> =
            curve.coords().iter().map(|c| c.eval(&t0).unwrap()).collect();
        let velocity: Vec<_> = curve
            .coords()
            .iter()
            .map(|c| c.differentiate("t").unwrap().eval(&t0).unwrap())
            .collect();
        prop_assert_eq!(form.pair_rational(&position, &velocity).unwrap(), rat_int(0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn osculating_duals_annihilate_second_order_jets(
        coords in proptest::collection::vec(univariate(6, 4), 4),
    ) {
        prop_assume!(coords.iter().any(|c| !c.is_zero()));
        let curve = ParamVariety::new(vec!["t".into()], coords);
        prop_assume!(curve.is_ok());
        let curve = curve.unwrap();
        let dual = osculating_dual(&curve);
        prop_assume!(dual.is_ok());
        let dual = dual.unwrap();

        let mut jet = curve.coords().to_vec();
        for _ in 0..3 {
            let dot = dual
                .coords()
                .iter()
                .zip(&jet)
                .fold(MultiPoly::zero(&["t"]), |acc, (l, v)| &acc + &(l * v));
            prop_assert!(dot.is_zero());
            jet = jet.iter().map(|v| v.differentiate("t").unwrap()).collect();
        }
    }

    #[test]
    fn plane_curve_pushforwards_are_always_legendrian(
        coords in proptest::collection::vec(univariate(4, 3), 3),
    ) {
        prop_assume!(coords.iter().any(|c| !c.is_zero()));
        let curve = ParamVariety::new(vec!["t".into()], coords);
        prop_assume!(curve.is_ok());
        let lift = conormal_lift(&curve.unwrap());
        prop_assume!(lift.is_ok());
        let push = theta_pushforward(&lift.unwrap());
        prop_assume!(push.is_ok());

        let cert = legendrian_check(&push.unwrap(), &standard_b(2).unwrap()).unwrap();
        prop_assert!(cert.passed, "residuals: {:?}", cert.residuals);
    }
}
