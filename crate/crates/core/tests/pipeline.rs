//! End-to-end chains across modules: plane curve to conormal lift to
//! pushforward to certificate, and the catalog families through their duality
//! witnesses.

use oscdual_core::bryant::{
    conormal_lift, degree_root_counts, expected_degrees, genericity_a, genericity_b,
    parametric_curve_degree, theta_pushforward,
};
use oscdual_core::catalog::{v_family, v_family_contact_form, v_family_duality};
use oscdual_core::contact::{legendrian_check, standard_b, SkewForm};
use oscdual_core::exactmath::{parse_poly, rat_int};
use oscdual_core::osculation::{osculating_dual, selfdual_certificate};
use oscdual_core::projective::hyperplane_containment;
use oscdual_core::ParamVariety;

fn curve(coords: &[&str]) -> ParamVariety {
    ParamVariety::parse(&["t"], coords).unwrap()
}

#[test]
fn conic_runs_the_whole_pipeline() {
    let conic = curve(&["1 + t^2", "1 - t^2", "2*t"]);
    assert!(genericity_a(&conic).unwrap().passed);
    assert!(genericity_b(&conic).unwrap().passed);

    let lift = conormal_lift(&conic).unwrap();
    let expected_ell: Vec<_> = ["2 + 2*t^2", "2*t^2 - 2", "-4*t"]
        .iter()
        .map(|s| parse_poly(s, &["t"]).unwrap())
        .collect();
    assert_eq!(lift.ell(), expected_ell.as_slice());

    let push = theta_pushforward(&lift).unwrap();
    assert_eq!(push, curve(&["t^4 - 1", "-t^4 - 1", "2*t^3 - 2*t", "t^3 + t"]));

    let b = standard_b(2).unwrap();
    assert!(legendrian_check(&push, &b).unwrap().passed);
    assert!(hyperplane_containment(&push).is_empty());

    assert_eq!(parametric_curve_degree(&push).unwrap(), 4);
    assert_eq!(degree_root_counts(&push).unwrap(), vec![4, 4, 4]);
    let formulas = expected_degrees(2, 0).unwrap();
    assert_eq!(formulas.nodes, 0);
    assert_eq!(formulas.legendrian_degree, 4);

    let report = selfdual_certificate(&push, &b).unwrap();
    assert!(report.legendrian);
    assert!(!report.in_hyperplane);
    assert_eq!(report.osc2_generic_dim, 2);
    assert!(report.selfdual, "residuals: {:?}", report.residuals);
}

#[test]
fn figure_eight_fails_only_the_bitangent_hypothesis_downstream() {
    let gerono = curve(&["t^4 + 2*t^2 + 1", "1 - t^4", "2*t - 2*t^3"]);
    let report = genericity_b(&gerono).unwrap();
    assert!(!report.passed);
    let failing: Vec<_> = report.checks.iter().filter(|c| !c.passed).collect();
    assert!(failing
        .iter()
        .any(|c| c.witness.as_deref() == Some("t2^6 - 5*t2^4 - 5*t2^2 + 1")));

    // The pushforward is Legendrian whether or not the genericity hypotheses
    // hold; only injectivity of the image is at stake.
    let push = theta_pushforward(&conormal_lift(&gerono).unwrap()).unwrap();
    assert!(legendrian_check(&push, &standard_b(2).unwrap()).unwrap().passed);
}

#[test]
fn parabola_drops_degree_through_the_pushforward() {
    let parabola = curve(&["1", "t", "t^2"]);
    assert!(!genericity_a(&parabola).unwrap().passed);

    let push = theta_pushforward(&conormal_lift(&parabola).unwrap()).unwrap();
    assert_eq!(push, curve(&["4*t", "3*t^2", "4*t^3", "1"]));
    assert_eq!(parametric_curve_degree(&push).unwrap(), 3);
    let formulas = expected_degrees(2, 0).unwrap();
    assert_ne!(parametric_curve_degree(&push).unwrap(), formulas.legendrian_degree);
}

#[test]
fn twisted_cubic_certifies_against_the_displayed_matrix() {
    let cubic = curve(&["1", "t", "t^2", "t^3"]);
    let displayed =
        SkewForm::from_upper_entries(4, &[(0, 3, rat_int(-1)), (1, 2, rat_int(3))]).unwrap();
    assert!(legendrian_check(&cubic, &displayed).unwrap().passed);

    let report = selfdual_certificate(&cubic, &displayed).unwrap();
    assert!(report.legendrian && report.selfdual && !report.in_hyperplane);
    assert_eq!(report.osc2_generic_dim, 2);

    let polarity_image = displayed.polarity().unwrap().apply(&cubic).unwrap();
    assert_eq!(polarity_image, curve(&["-t^3", "3*t^2", "-3*t", "1"]));
    assert_eq!(polarity_image, osculating_dual(&cubic).unwrap());
}

#[test]
fn fermat_hypersurface_curves_certify_for_degrees_three_and_four() {
    for d in [3u32, 4] {
        let f = parse_poly(&format!("x2^{} + x3^{}", d, d), &["x2", "x3"]).unwrap();
        let x = oscdual_core::catalog::hypersurface_family_curve(3, &f).unwrap();
        let report = selfdual_certificate(&x, &standard_b(3).unwrap()).unwrap();
        assert!(report.legendrian, "d = {}", d);
        assert!(!report.in_hyperplane, "d = {}", d);
        assert_eq!(report.osc2_generic_dim, 4, "d = {}", d);
        assert!(report.selfdual, "d = {}: residuals {:?}", d, report.residuals);
    }
}

#[test]
fn cubic_sum_family_certifies_and_carries_a_shear_witness() {
    for k in [2usize, 3] {
        let v = v_family(k).unwrap();
        let b = v_family_contact_form(k).unwrap();
        let report = selfdual_certificate(&v, &b).unwrap();
        assert!(report.legendrian, "k = {}", k);
        assert!(!report.in_hyperplane, "k = {}", k);
        assert_eq!(report.osc2_generic_dim, 2 * k, "k = {}", k);
        assert!(report.selfdual, "k = {}: residuals {:?}", k, report.residuals);

        let duality = v_family_duality(k).unwrap();
        assert!(duality.correction.is_zero(), "k = {}", k);
        assert!(duality.witness.apply(&duality.dual).unwrap().proj_equal(&v).unwrap());
    }
}
