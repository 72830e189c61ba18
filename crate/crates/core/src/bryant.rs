//! The birational correspondence between the point-hyperplane incidence
//! variety of `P^n` and `P^(2n-1)`, and the curve pipeline built on it:
//! conormal lifts of plane curves, pushforward to space curves, genericity
//! certificates for immersion and injectivity, and degree accounting.
//!
//! The forward map sends an incidence pair `(x, y)` with `sum x_i y_i = 0` to
//!
//! `z0 = x0 y1,  z1 = (x1 y1 - x0 y0)/2,  z_(2k-2) = x_k y1,  z_(2k-1) = -x0 y_k / 2`
//!
//! for `2 <= k <= n`; it is undefined exactly on `x0 = y1 = 0`. The inverse
//! substitutes `z` back out. Both are implemented once over polynomials, so
//! point evaluation and symbolic identity checks share a single code path.

use num_traits::Zero;
use thiserror::Error;

use crate::contact::ContactError;
use crate::exactmath::{
    poly_gcd, poly_gcd_many, rat, rat_int, resultant, squarefree_part, ExactMathError,
    MultiPoly, PolyMatrix, Rational,
};
use crate::projective::{ParamVariety, ProjPoint, ProjectiveError};

#[derive(Debug, Error, PartialEq)]
pub enum BryantError {
    #[error("the point lies in the projection center (x0 = 0 and y1 = 0)")]
    CenterPoint,
    #[error("the inverse map is undefined here: every output coordinate vanishes")]
    UndefinedPoint,
    #[error("ambient dimensions differ: point side {point}, hyperplane side {hyperplane}")]
    MixedAmbient { point: usize, hyperplane: usize },
    #[error("pair is not incident: sum x_i y_i = {pairing}")]
    NotIncident { pairing: Rational },
    #[error("expected 2n coordinates with n >= 2, got {coords}")]
    WrongAmbient { coords: usize },
    #[error("supported half-dimensions are 2 <= n <= {max}, got {n}")]
    HalfDimOutOfRange { n: usize, max: usize },
    #[error("expected a plane curve (3 coordinates, 1 parameter), got {coords} coordinates and {params} parameters")]
    NotAPlaneCurve { coords: usize, params: usize },
    #[error("tangent direction degenerates: gamma x gamma' = 0")]
    DegenerateTangent,
    #[error("the curve is a line: its tangent line is constant")]
    LineInput,
    #[error("the lift lies inside the projection center")]
    CenterImage,
    #[error("expected a curve (1 parameter), got {params}")]
    NotACurve { params: usize },
    #[error("degree must be at least 2, got {d}")]
    DegreeTooSmall { d: u32 },
    #[error("genus {g} is out of range for degree {d}: 0 <= g <= {max}")]
    GenusOutOfRange { d: u32, g: u32, max: u32 },
    #[error(transparent)]
    Contact(#[from] ContactError),
    #[error(transparent)]
    Projective(#[from] ProjectiveError),
    #[error(transparent)]
    Math(#[from] ExactMathError),
}

/// A point of the incidence variety: `x` in `P^n`, `y` a hyperplane through it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IncidencePoint {
    x: ProjPoint,
    y: ProjPoint,
}

impl IncidencePoint {
    pub fn new(x: ProjPoint, y: ProjPoint) -> Result<Self, BryantError> {
        if x.coords().len() != y.coords().len() {
            return Err(BryantError::MixedAmbient {
                point: x.coords().len(),
                hyperplane: y.coords().len(),
            });
        }
        if x.coords().len() < 3 {
            return Err(BryantError::WrongAmbient { coords: x.coords().len() });
        }
        let pairing: Rational = x
            .coords()
            .iter()
            .zip(y.coords())
            .map(|(a, b)| a * b)
            .sum();
        if !pairing.is_zero() {
            return Err(BryantError::NotIncident { pairing });
        }
        Ok(IncidencePoint { x, y })
    }

    pub fn x(&self) -> &ProjPoint {
        &self.x
    }

    pub fn y(&self) -> &ProjPoint {
        &self.y
    }
}

fn half() -> Rational {
    rat(1, 2)
}

/// Forward coordinates on `P^(2n-1)` from incidence coordinates; `x` and `y`
/// must have equal length `n + 1 >= 3` over one variable list.
pub fn theta_coords(x: &[MultiPoly], y: &[MultiPoly]) -> Vec<MultiPoly> {
    assert_eq!(x.len(), y.len(), "incidence sides must share an ambient");
    let n = x.len() - 1;
    assert!(n >= 2, "ambient P^n needs n >= 2");
    let mut z = Vec::with_capacity(2 * n);
    z.push(&x[0] * &y[1]);
    z.push((&(&x[1] * &y[1]) - &(&x[0] * &y[0])).scale(&half()));
    for k in 2..=n {
        z.push(&x[k] * &y[1]);
        z.push((&x[0] * &y[k]).scale(&-half()));
    }
    z
}

/// Inverse coordinates: from `z` in `P^(2n-1)` back to an incidence pair.
pub fn beta_coords(z: &[MultiPoly]) -> (Vec<MultiPoly>, Vec<MultiPoly>) {
    assert!(z.len() >= 4 && z.len().is_multiple_of(2), "ambient must be P^(2n-1), n >= 2");
    let n = z.len() / 2;
    let mut sigma = MultiPoly::zero_over(z[0].vars());
    for j in 1..n {
        sigma = &sigma + &(&z[2 * j] * &z[2 * j + 1]);
    }
    let z0z1 = &z[0] * &z[1];
    let mut x = Vec::with_capacity(n + 1);
    let mut y = Vec::with_capacity(n + 1);
    x.push(&z[0] * &z[0]);
    x.push(&z0z1 + &sigma);
    y.push(&sigma - &z0z1);
    y.push(&z[0] * &z[0]);
    for k in 2..=n {
        x.push(&z[0] * &z[2 * k - 2]);
        y.push((&z[0] * &z[2 * k - 1]).scale(&rat_int(-2)));
    }
    (x, y)
}

fn constants(values: &[Rational]) -> Vec<MultiPoly> {
    values.iter().map(|v| MultiPoly::constant(&[], v.clone())).collect()
}

fn constant_values(polys: &[MultiPoly]) -> Vec<Rational> {
    polys
        .iter()
        .map(|p| p.constant_value().expect("constant polynomial over empty variable list"))
        .collect()
}

/// Image of an incidence point in `P^(2n-1)`; errors on the center.
pub fn theta_point(p: &IncidencePoint) -> Result<ProjPoint, BryantError> {
    if p.x.coords()[0].is_zero() && p.y.coords()[1].is_zero() {
        return Err(BryantError::CenterPoint);
    }
    let z = theta_coords(&constants(p.x.coords()), &constants(p.y.coords()));
    Ok(ProjPoint::new(constant_values(&z))?)
}

/// Preimage of a point of `P^(2n-1)`; errors where every output coordinate
/// vanishes (`z0 = 0` and `sum z_(2j) z_(2j+1) = 0`).
pub fn beta_point(z: &ProjPoint) -> Result<IncidencePoint, BryantError> {
    let coords = z.coords();
    if coords.len() < 4 || !coords.len().is_multiple_of(2) {
        return Err(BryantError::WrongAmbient { coords: coords.len() });
    }
    let (x, y) = beta_coords(&constants(coords));
    let xv = constant_values(&x);
    let yv = constant_values(&y);
    if xv.iter().all(Rational::is_zero) || yv.iter().all(Rational::is_zero) {
        return Err(BryantError::UndefinedPoint);
    }
    IncidencePoint::new(ProjPoint::new(xv)?, ProjPoint::new(yv)?)
}

/// Outcome of the symbolic verification that the forward and inverse maps are
/// mutually inverse and exchange the two standard contact forms. `residuals`
/// lists only the identities that failed, as `label = polynomial` strings.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PullbackReport {
    pub passed: bool,
    pub residuals: Vec<String>,
}

/// Checks, as polynomial identities for a given half-dimension `n`:
/// the inverse map pulls the incidence one-form back to the chart one-form on
/// `z0 = 1`; forward-after-inverse is multiplication by `z0^3`; and
/// inverse-after-forward is the identity on the chart `x0 = 1, y1 = 1`.
pub fn verify_pullback(n: usize) -> Result<PullbackReport, BryantError> {
    if !(2..=4).contains(&n) {
        return Err(BryantError::HalfDimOutOfRange { n, max: 4 });
    }
    let mut residuals = Vec::new();

    // One-form pullback on the chart z0 = 1. With x0 = y1 = 1 the chart
    // functions are xi_k = y_k, so the pullback coefficient on dz_m is
    // d(x1)/dz_m + sum_k y_k d(x_k)/dz_m.
    let z_names: Vec<String> = (1..2 * n).map(|i| format!("z{}", i)).collect();
    let z_vars: Vec<&str> = z_names.iter().map(|s| s.as_str()).collect();
    let mut chart_z = vec![MultiPoly::one(&z_vars)];
    for name in &z_names {
        chart_z.push(MultiPoly::var(&z_vars, name)?);
    }
    let (omega, _eta) = crate::contact::standard_forms(n)?;
    let (bx, by) = beta_coords(&chart_z);
    for (m, name) in z_names.iter().enumerate() {
        let mut coeff = bx[1].differentiate(name)?;
        for k in 2..=n {
            coeff = &coeff + &(&by[k] * &bx[k].differentiate(name)?);
        }
        let r = &coeff - &omega.coeffs[m];
        if !r.is_zero() {
            residuals.push(format!("pullback minus chart form: d{} coefficient = {}", name, r));
        }
    }

    // Forward after inverse is z0^3 * z on all of P^(2n-1).
    let all_names: Vec<String> = (0..2 * n).map(|i| format!("z{}", i)).collect();
    let all_vars: Vec<&str> = all_names.iter().map(|s| s.as_str()).collect();
    let zs: Vec<MultiPoly> = all_names
        .iter()
        .map(|name| MultiPoly::var(&all_vars, name))
        .collect::<Result<_, _>>()?;
    let (bx, by) = beta_coords(&zs);
    let back = theta_coords(&bx, &by);
    let cube = zs[0].pow(3);
    for (i, (got, z)) in back.iter().zip(&zs).enumerate() {
        let r = got - &(&cube * z);
        if !r.is_zero() {
            residuals.push(format!("forward(inverse(z))_{} - z0^3 z_{} = {}", i, i, r));
        }
    }

    // Inverse after forward is the identity on the incidence chart
    // x0 = 1, y1 = 1, where incidence pins y0 = -(x1 + sum x_k y_k).
    let mut names: Vec<String> = (1..=n).map(|i| format!("x{}", i)).collect();
    names.extend((2..=n).map(|i| format!("y{}", i)));
    let vars: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let one = MultiPoly::one(&vars);
    let mut xs = vec![one.clone()];
    for i in 1..=n {
        xs.push(MultiPoly::var(&vars, &format!("x{}", i))?);
    }
    let mut y0 = -&xs[1];
    let mut ys_tail = Vec::new();
    for k in 2..=n {
        let yk = MultiPoly::var(&vars, &format!("y{}", k))?;
        y0 = &y0 - &(&xs[k] * &yk);
        ys_tail.push(yk);
    }
    let mut ys = vec![y0, one];
    ys.extend(ys_tail);
    let z = theta_coords(&xs, &ys);
    let (bx, by) = beta_coords(&z);
    for i in 0..=n {
        let rx = &bx[i] - &xs[i];
        if !rx.is_zero() {
            residuals.push(format!("inverse(forward(x, y)): x{} residual = {}", i, rx));
        }
        let ry = &by[i] - &ys[i];
        if !ry.is_zero() {
            residuals.push(format!("inverse(forward(x, y)): y{} residual = {}", i, ry));
        }
    }

    Ok(PullbackReport { passed: residuals.is_empty(), residuals })
}

/// A plane curve together with its moving tangent line: `ell = gamma x gamma'`
/// reduced by the common polynomial factor only. Integer content is kept, so
/// the stored representative is exactly the cross product up to a polynomial
/// unit; `ell . gamma = 0` and `ell . gamma' = 0` identically.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConormalLift {
    base: ParamVariety,
    ell: Vec<MultiPoly>,
}

impl ConormalLift {
    pub fn base(&self) -> &ParamVariety {
        &self.base
    }

    pub fn gamma(&self) -> &[MultiPoly] {
        self.base.coords()
    }

    pub fn ell(&self) -> &[MultiPoly] {
        &self.ell
    }

    pub fn param(&self) -> &str {
        &self.base.params()[0]
    }
}

/// Lifts a parametrized plane curve to its conormal pair `(gamma, ell)`.
pub fn conormal_lift(c: &ParamVariety) -> Result<ConormalLift, BryantError> {
    if c.coords().len() != 3 || c.params().len() != 1 {
        return Err(BryantError::NotAPlaneCurve {
            coords: c.coords().len(),
            params: c.params().len(),
        });
    }
    let t = c.params()[0].clone();
    let g = c.coords();
    let dg: Vec<MultiPoly> = g
        .iter()
        .map(|p| p.differentiate(&t).expect("own parameter"))
        .collect();
    let mut ell = vec![
        &(&g[1] * &dg[2]) - &(&g[2] * &dg[1]),
        &(&g[2] * &dg[0]) - &(&g[0] * &dg[2]),
        &(&g[0] * &dg[1]) - &(&g[1] * &dg[0]),
    ];
    if ell.iter().all(MultiPoly::is_zero) {
        return Err(BryantError::DegenerateTangent);
    }
    let common = poly_gcd_many(&ell);
    if !common.is_constant() {
        for e in &mut ell {
            *e = e.div_exact(&common).expect("gcd divides each component");
        }
    }
    if ell.iter().all(MultiPoly::is_constant) {
        return Err(BryantError::LineInput);
    }
    for (label, other) in [("gamma", g), ("gamma'", &dg[..])] {
        let pairing = ell
            .iter()
            .zip(other)
            .fold(MultiPoly::zero_over(g[0].vars()), |acc, (a, b)| &acc + &(a * b));
        assert!(pairing.is_zero(), "tangent line must annihilate {}", label);
    }
    Ok(ConormalLift { base: c.clone(), ell })
}

/// Pushes a conormal lift forward to a space curve in `P^3`.
pub fn theta_pushforward(l: &ConormalLift) -> Result<ParamVariety, BryantError> {
    let z = theta_coords(l.gamma(), l.ell());
    if z.iter().all(MultiPoly::is_zero) {
        return Err(BryantError::CenterImage);
    }
    Ok(ParamVariety::new(l.base().params().to_vec(), z)?)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Lemma {
    A,
    B,
}

/// One genericity hypothesis evaluated in one parameter chart. `witness`
/// carries the certifying value on a pass (resultant, Wronskian, eliminant)
/// and the offending factor on a failure.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HypothesisCheck {
    pub index: usize,
    pub chart: String,
    pub description: String,
    pub passed: bool,
    pub witness: Option<String>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GenericityReport {
    pub lemma: Lemma,
    pub checks: Vec<HypothesisCheck>,
    pub passed: bool,
}

struct Chart {
    label: String,
    gamma: Vec<MultiPoly>,
    ell: Vec<MultiPoly>,
    param: String,
}

/// Both parameter charts of a plane curve: the given one and the one obtained
/// by inverting the parameter, so behavior at parameter infinity is covered.
fn charts(c: &ParamVariety) -> Result<[Chart; 2], BryantError> {
    let finite = conormal_lift(c)?;
    let inverted_curve = c.parameter_inversion()?;
    let inverted = conormal_lift(&inverted_curve)?;
    let param = c.params()[0].clone();
    Ok([
        Chart {
            label: param.clone(),
            gamma: finite.gamma().to_vec(),
            ell: finite.ell().to_vec(),
            param: param.clone(),
        },
        Chart {
            label: format!("1/{}", param),
            gamma: inverted.gamma().to_vec(),
            ell: inverted.ell().to_vec(),
            param,
        },
    ])
}

fn squarefree_check(chart: &Chart) -> HypothesisCheck {
    let x0 = &chart.gamma[0];
    let (passed, witness) = if x0.is_zero() {
        (false, Some("0".to_string()))
    } else if x0.is_constant() {
        (true, None)
    } else {
        let g = poly_gcd(x0, &x0.differentiate(&chart.param).expect("own parameter"));
        if g.is_constant() {
            (true, None)
        } else {
            (false, Some(g.to_string()))
        }
    };
    HypothesisCheck {
        index: 1,
        chart: chart.label.clone(),
        description: "x0 is squarefree: the curve meets the line x0 = 0 transversally".into(),
        passed,
        witness,
    }
}

fn resultant_check(
    chart: &Chart,
    index: usize,
    other: &MultiPoly,
    description: &str,
) -> HypothesisCheck {
    let (passed, witness) = match resultant(&chart.gamma[0], other, &chart.param) {
        Ok(r) if !r.is_zero() => (true, Some(r.to_string())),
        Ok(_) => (false, Some("0".to_string())),
        Err(_) => (false, Some("0".to_string())),
    };
    HypothesisCheck {
        index,
        chart: chart.label.clone(),
        description: description.into(),
        passed,
        witness,
    }
}

fn inflection_check(chart: &Chart) -> HypothesisCheck {
    let d1: Vec<MultiPoly> = chart
        .gamma
        .iter()
        .map(|p| p.differentiate(&chart.param).expect("own parameter"))
        .collect();
    let d2: Vec<MultiPoly> = d1
        .iter()
        .map(|p| p.differentiate(&chart.param).expect("own parameter"))
        .collect();
    let w = PolyMatrix::from_rows(vec![chart.gamma.clone(), d1, d2])
        .and_then(|m| m.det())
        .expect("3x3 determinant over one variable");
    let (passed, witness) = if w.is_zero() {
        (false, Some("0".to_string()))
    } else {
        let g = poly_gcd(&w, &chart.ell[1]);
        if g.is_constant() {
            (true, Some(w.to_string()))
        } else {
            (false, Some(g.to_string()))
        }
    };
    HypothesisCheck {
        index: 3,
        chart: chart.label.clone(),
        description: "no tangent at an inflection point passes through (0:1:0)".into(),
        passed,
        witness,
    }
}

/// Re-expresses a one-variable polynomial over a two-variable list, placing
/// its variable at `position`.
fn embed_univariate(p: &MultiPoly, vars: &[&str], position: usize) -> MultiPoly {
    let mut out = MultiPoly::zero(vars);
    for (exps, coeff) in p.terms() {
        let mut e = vec![0; vars.len()];
        e[position] = exps[0];
        out = &out + &MultiPoly::monomial(vars, &e, coeff.clone());
    }
    out
}

/// No two distinct tangency parameters (roots of `ell1`) may carry the same
/// tangent line. With `D(t1, t2) = ell0(t1) ell2(t2) - ell0(t2) ell2(t1)`
/// stripped of all diagonal factors and `Q` the divided difference of `ell1`,
/// the eliminant `E = Res_(t1)(Q, D)` vanishes at exactly the pairing
/// parameters; the check passes when `gcd(E, ell1(t2))` is constant. Double
/// roots of `ell1` pair with themselves and fail conservatively.
fn bitangent_check(chart: &Chart) -> HypothesisCheck {
    let description =
        "no bitangent through (0:1:0): distinct tangency parameters have distinct tangents";
    let ell = &chart.ell;
    let done = |passed: bool, witness: Option<String>| HypothesisCheck {
        index: 3,
        chart: chart.label.clone(),
        description: description.into(),
        passed,
        witness,
    };
    if ell[1].is_constant() && !ell[1].is_zero() {
        return done(true, None);
    }
    let names = [format!("{}1", chart.param), format!("{}2", chart.param)];
    let vars: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let at = |i: usize, pos: usize| embed_univariate(&ell[i], &vars, pos);
    let diag = &MultiPoly::var(&vars, &names[0]).expect("fresh variable")
        - &MultiPoly::var(&vars, &names[1]).expect("fresh variable");
    let mut d = &(&at(0, 0) * &at(2, 1)) - &(&at(0, 1) * &at(2, 0));
    if d.is_zero() {
        return done(false, Some("0".to_string()));
    }
    while let Some(q) = d.div_exact(&diag) {
        d = q;
    }
    let q = (&at(1, 0) - &at(1, 1))
        .div_exact(&diag)
        .expect("divided difference is exact");
    if q.is_zero() {
        return done(false, Some("0".to_string()));
    }
    let e = match resultant(&q, &d, &names[0]) {
        Ok(e) if !e.is_zero() => e,
        _ => return done(false, Some("0".to_string())),
    };
    let w = poly_gcd(&e, &at(1, 1));
    if w.is_constant() {
        done(true, Some(e.to_string()))
    } else {
        done(false, Some(w.to_string()))
    }
}

/// The cross-chart pairing the per-chart eliminations cannot see: a finite
/// tangency parameter sharing its tangent with the one at parameter infinity.
fn mixed_bitangent_check(finite: &Chart, inverted: &Chart) -> HypothesisCheck {
    let description = "no bitangent pairs a finite tangency parameter with infinity";
    let done = |passed: bool, witness: Option<String>| HypothesisCheck {
        index: 3,
        chart: "mixed".to_string(),
        description: description.into(),
        passed,
        witness,
    };
    let zero = rat_int(0);
    let at_infinity: Vec<Rational> = inverted
        .ell
        .iter()
        .map(|p| p.eval(std::slice::from_ref(&zero)).expect("single parameter"))
        .collect();
    if !at_infinity[1].is_zero() {
        return done(true, None);
    }
    if finite.ell[1].is_constant() && !finite.ell[1].is_zero() {
        return done(true, None);
    }
    let parallel = &finite.ell[0].scale(&at_infinity[2]) - &finite.ell[2].scale(&at_infinity[0]);
    if parallel.is_zero() {
        return done(false, Some("0".to_string()));
    }
    let w = poly_gcd(&finite.ell[1], &parallel);
    if w.is_constant() {
        done(true, None)
    } else {
        done(false, Some(w.to_string()))
    }
}

/// Immersion genericity: four hypotheses, each evaluated in both parameter
/// charts. All failures are reported; nothing is thrown for a failing curve.
pub fn genericity_a(c: &ParamVariety) -> Result<GenericityReport, BryantError> {
    let charts = charts(c)?;
    let mut checks = Vec::new();
    for chart in &charts {
        checks.push(squarefree_check(chart));
        checks.push(resultant_check(
            chart,
            2,
            &chart.ell[1],
            "no tangent at a point of x0 = 0 passes through (0:1:0)",
        ));
        checks.push(inflection_check(chart));
        checks.push(resultant_check(
            chart,
            4,
            &chart.gamma[1],
            "the curve avoids the point (0:0:1)",
        ));
    }
    checks.sort_by_key(|c| c.index);
    let passed = checks.iter().all(|c| c.passed);
    Ok(GenericityReport { lemma: Lemma::A, checks, passed })
}

/// Injectivity genericity: squarefree and tangent hypotheses as in the
/// immersion lemma, plus the bitangent eliminations in both charts and the
/// mixed finite-infinity pairing.
pub fn genericity_b(c: &ParamVariety) -> Result<GenericityReport, BryantError> {
    let charts = charts(c)?;
    let mut checks = Vec::new();
    for chart in &charts {
        checks.push(squarefree_check(chart));
        checks.push(resultant_check(
            chart,
            2,
            &chart.ell[1],
            "no tangent at a point of x0 = 0 passes through (0:1:0)",
        ));
        checks.push(bitangent_check(chart));
    }
    checks.push(mixed_bitangent_check(&charts[0], &charts[1]));
    checks.sort_by_key(|c| c.index);
    let passed = checks.iter().all(|c| c.passed);
    Ok(GenericityReport { lemma: Lemma::B, checks, passed })
}

/// Degree of the image of a parametrized curve: the common degree of the
/// homogenized coordinates. Coordinates are stored with their common factor
/// removed, so this is the maximal coordinate degree.
pub fn parametric_curve_degree(x: &ParamVariety) -> Result<u32, BryantError> {
    if x.params().len() != 1 {
        return Err(BryantError::NotACurve { params: x.params().len() });
    }
    Ok(x.coords()
        .iter()
        .filter_map(|p| p.total_degree())
        .max()
        .unwrap_or(0))
}

/// Root-counting cross-check for the degree: for three fixed covectors,
/// counts the distinct roots of the hyperplane pullback, plus the point at
/// parameter infinity when the pullback drops degree. Each count is at most
/// the curve degree, with equality for a covector in general position.
pub fn degree_root_counts(x: &ParamVariety) -> Result<Vec<u32>, BryantError> {
    let d = parametric_curve_degree(x)?;
    let t = &x.params()[0];
    let m = x.coords().len();
    let covectors: [Vec<Rational>; 3] = [
        (0..m).map(|_| rat_int(1)).collect(),
        (0..m).map(|i| rat_int(i as i64 + 1)).collect(),
        (0..m).map(|i| rat_int(1 << i.min(62))).collect(),
    ];
    let mut counts = Vec::with_capacity(3);
    for h in &covectors {
        let section = x
            .coords()
            .iter()
            .zip(h)
            .fold(MultiPoly::zero_over(x.coords()[0].vars()), |acc, (c, w)| {
                &acc + &c.scale(w)
            });
        if section.is_zero() {
            counts.push(0);
            continue;
        }
        let distinct = squarefree_part(&section, t)?
            .total_degree()
            .unwrap_or(0);
        let at_infinity = u32::from(section.total_degree().unwrap_or(0) < d);
        counts.push(distinct + at_infinity);
    }
    Ok(counts)
}

/// Node count, dual degree, and space-curve degree for a nodal plane curve of
/// degree `d` and genus `g`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ExpectedDegrees {
    pub nodes: u32,
    pub dual_degree: u32,
    pub legendrian_degree: u32,
}

pub fn expected_degrees(d: u32, g: u32) -> Result<ExpectedDegrees, BryantError> {
    if d < 2 {
        return Err(BryantError::DegreeTooSmall { d });
    }
    let max = (d - 1) * (d - 2) / 2;
    if g > max {
        return Err(BryantError::GenusOutOfRange { d, g, max });
    }
    Ok(ExpectedDegrees {
        nodes: max - g,
        dual_degree: 2 * d + 2 * g - 2,
        legendrian_degree: 3 * d + 2 * g - 2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contact::{legendrian_check, standard_b};
    use crate::exactmath::{parse_poly, rat_int};

    fn point(coords: &[i64]) -> ProjPoint {
        ProjPoint::new(coords.iter().map(|&c| rat_int(c)).collect()).unwrap()
    }

    fn incidence(x: &[i64], y: &[i64]) -> IncidencePoint {
        IncidencePoint::new(point(x), point(y)).unwrap()
    }

    fn curve(coords: &[&str]) -> ParamVariety {
        ParamVariety::parse(&["t"], coords).unwrap()
    }

    fn poly(s: &str) -> MultiPoly {
        parse_poly(s, &["t"]).unwrap()
    }

    #[test]
    fn forward_map_on_rational_points() {
        let p = incidence(&[1, 1, 1], &[1, 1, -2]);
        assert_eq!(theta_point(&p).unwrap(), point(&[1, 0, 1, 1]));

        let sparse = incidence(&[1, 0, 0], &[0, 1, 0]);
        assert_eq!(theta_point(&sparse).unwrap(), point(&[1, 0, 0, 0]));

        let center = incidence(&[0, 1, 0], &[1, 0, 0]);
        assert_eq!(theta_point(&center), Err(BryantError::CenterPoint));
    }

    #[test]
    fn inverse_map_on_rational_points() {
        let p = beta_point(&point(&[1, 0, 1, 1])).unwrap();
        assert_eq!(p, incidence(&[1, 1, 1], &[1, 1, -2]));

        let sparse = beta_point(&point(&[1, 0, 0, 0])).unwrap();
        assert_eq!(sparse, incidence(&[1, 0, 0], &[0, 1, 0]));

        assert_eq!(beta_point(&point(&[0, 1, 0, 0])), Err(BryantError::UndefinedPoint));
        assert_eq!(
            beta_point(&point(&[1, 2, 3])),
            Err(BryantError::WrongAmbient { coords: 3 })
        );
    }

    #[test]
    fn round_trip_through_both_maps() {
        for coords in [&[1, 2, 3, 4, 5, 6][..], &[2, 0, 1, 7, -1, 3][..]] {
            let z = point(coords);
            let back = theta_point(&beta_point(&z).unwrap()).unwrap();
            assert!(back.proj_equal(&z).unwrap(), "{:?} came back as {:?}", z, back);
        }
    }

    #[test]
    fn incidence_is_validated() {
        assert_eq!(
            IncidencePoint::new(point(&[1, 0, 0]), point(&[1, 0, 0])),
            Err(BryantError::NotIncident { pairing: rat_int(1) })
        );
        assert_eq!(
            IncidencePoint::new(point(&[1, 0, 0]), point(&[0, 1, 0, 0])),
            Err(BryantError::MixedAmbient { point: 3, hyperplane: 4 })
        );
    }

    #[test]
    fn pullback_identities_hold_up_to_dimension_four() {
        for n in 2..=4 {
            let report = verify_pullback(n).unwrap();
            assert!(report.passed, "n = {}: {:?}", n, report.residuals);
        }
        assert_eq!(
            verify_pullback(5),
            Err(BryantError::HalfDimOutOfRange { n: 5, max: 4 })
        );
    }

    #[test]
    fn forward_map_vanishes_exactly_on_the_center() {
        // On x0 = y1 = 0 every output coordinate is identically zero.
        let vars = ["x1", "x2", "y0", "y2"];
        let zero = MultiPoly::zero(&vars);
        let x = [
            zero.clone(),
            MultiPoly::var(&vars, "x1").unwrap(),
            MultiPoly::var(&vars, "x2").unwrap(),
        ];
        let y = [
            MultiPoly::var(&vars, "y0").unwrap(),
            zero.clone(),
            MultiPoly::var(&vars, "y2").unwrap(),
        ];
        assert!(theta_coords(&x, &y).iter().all(MultiPoly::is_zero));

        // On the chart x0 = 1, vanishing output forces y = 0: the output
        // coordinates are triangular in y1, y0, y2.
        let one = MultiPoly::one(&vars);
        let xc = [one, x[1].clone(), x[2].clone()];
        let z = theta_coords(&xc, &y);
        assert_eq!(z[0], zero);
        assert_eq!(z[1], y[0].scale(&rat(-1, 2)));
        assert_eq!(z[3], y[2].scale(&rat(-1, 2)));
    }

    #[test]
    fn conormal_lift_keeps_the_raw_cross_product() {
        let conic = curve(&["1 + t^2", "1 - t^2", "2*t"]);
        let lift = conormal_lift(&conic).unwrap();
        assert_eq!(lift.ell()[0], poly("2 + 2*t^2"));
        assert_eq!(lift.ell()[1], poly("2*t^2 - 2"));
        assert_eq!(lift.ell()[2], poly("-4*t"));

        let parabola = curve(&["1", "t", "t^2"]);
        let lift = conormal_lift(&parabola).unwrap();
        assert_eq!(lift.ell(), &[poly("t^2"), poly("-2*t"), poly("1")]);

        let cubic = curve(&["1", "-t^3", "t"]);
        let lift = conormal_lift(&cubic).unwrap();
        assert_eq!(lift.ell(), &[poly("2*t^3"), poly("-1"), poly("-3*t^2")]);
    }

    #[test]
    fn conormal_lift_rejects_degenerate_inputs() {
        let line = curve(&["1 + t", "2*t", "3 + t"]);
        assert_eq!(conormal_lift(&line), Err(BryantError::LineInput));

        let space = ParamVariety::parse(&["t"], &["1", "t", "t^2", "t^3"]).unwrap();
        assert_eq!(
            conormal_lift(&space),
            Err(BryantError::NotAPlaneCurve { coords: 4, params: 1 })
        );
    }

    #[test]
    fn lift_annihilates_position_and_velocity() {
        let gerono = curve(&["t^4 + 2*t^2 + 1", "1 - t^4", "2*t - 2*t^3"]);
        let lift = conormal_lift(&gerono).unwrap();
        let t = "t";
        for other in [lift.gamma().to_vec(), {
            lift.gamma().iter().map(|p| p.differentiate(t).unwrap()).collect()
        }] {
            let pairing = lift
                .ell()
                .iter()
                .zip(&other)
                .fold(MultiPoly::zero(&[t]), |acc, (a, b)| &acc + &(a * b));
            assert!(pairing.is_zero());
        }
    }

    #[test]
    fn pushforward_of_the_conic_and_parabola() {
        let conic = curve(&["1 + t^2", "1 - t^2", "2*t"]);
        let push = theta_pushforward(&conormal_lift(&conic).unwrap()).unwrap();
        let expected = curve(&["t^4 - 1", "-t^4 - 1", "2*t^3 - 2*t", "t^3 + t"]);
        assert_eq!(push, expected);
        assert!(legendrian_check(&push, &standard_b(2).unwrap()).unwrap().passed);

        let parabola = curve(&["1", "t", "t^2"]);
        let push = theta_pushforward(&conormal_lift(&parabola).unwrap()).unwrap();
        assert_eq!(push, curve(&["4*t", "3*t^2", "4*t^3", "1"]));
        // The contact pairing vanishes even though genericity fails below.
        assert!(legendrian_check(&push, &standard_b(2).unwrap()).unwrap().passed);

        let cubic = curve(&["1", "-t^3", "t"]);
        let push = theta_pushforward(&conormal_lift(&cubic).unwrap()).unwrap();
        assert!(push.proj_equal(&curve(&["2", "t^3", "2*t", "-3*t^2"])).unwrap());
    }

    #[test]
    fn immersion_genericity_of_the_conic() {
        let report = genericity_a(&curve(&["1 + t^2", "1 - t^2", "2*t"])).unwrap();
        assert!(report.passed, "{:?}", report.checks);
        assert_eq!(report.checks.len(), 8);
        let finite: Vec<&HypothesisCheck> =
            report.checks.iter().filter(|c| c.chart == "t").collect();
        assert_eq!(finite[1].witness.as_deref(), Some("16"));
        assert_eq!(finite[2].witness.as_deref(), Some("8"));
        assert_eq!(finite[3].witness.as_deref(), Some("4"));
    }

    #[test]
    fn immersion_genericity_fails_for_the_parabola() {
        let report = genericity_a(&curve(&["1", "t", "t^2"])).unwrap();
        assert!(!report.passed);
        let failing: Vec<(usize, &str)> = report
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| (c.index, c.chart.as_str()))
            .collect();
        // All failures sit in the inverted chart: the closure point at
        // parameter infinity is (0:0:1), a tangency point on x0 = 0.
        assert_eq!(failing, vec![(1, "1/t"), (2, "1/t"), (4, "1/t")]);
    }

    #[test]
    fn injectivity_genericity_of_conics() {
        let report = genericity_b(&curve(&["1 + t^2", "1 - t^2", "2*t"])).unwrap();
        assert!(report.passed, "{:?}", report.checks);
        assert_eq!(report.checks.len(), 7);
        let eliminant = report
            .checks
            .iter()
            .find(|c| c.index == 3 && c.chart == "t")
            .unwrap();
        assert_eq!(eliminant.witness.as_deref(), Some("16*t2^2 + 16"));

        // Swapping x1 and x2 moves the tangency parameters to 0 and infinity;
        // their tangents stay distinct, so the mixed pairing also passes.
        let swapped = genericity_b(&curve(&["1 + t^2", "2*t", "1 - t^2"])).unwrap();
        assert!(swapped.passed, "{:?}", swapped.checks);
    }

    #[test]
    fn bitangents_of_the_figure_eight_are_detected() {
        let gerono = curve(&["t^4 + 2*t^2 + 1", "1 - t^4", "2*t - 2*t^3"]);
        let report = genericity_b(&gerono).unwrap();
        assert!(!report.passed);
        let finite = report
            .checks
            .iter()
            .find(|c| c.index == 3 && c.chart == "t")
            .unwrap();
        assert!(!finite.passed);
        assert_eq!(
            finite.witness.as_deref(),
            Some("t2^6 - 5*t2^4 - 5*t2^2 + 1"),
            "tangency pairs: {:?}",
            finite
        );
    }

    #[test]
    fn double_tangency_roots_fail_conservatively() {
        let inflected = curve(&["1", "t", "t^3"]);
        let report = genericity_b(&inflected).unwrap();
        let finite = report
            .checks
            .iter()
            .find(|c| c.index == 3 && c.chart == "t")
            .unwrap();
        assert!(!finite.passed);
        assert_eq!(finite.witness.as_deref(), Some("t2^2"));
    }

    #[test]
    fn image_degrees_and_their_root_count_cross_check() {
        let cubic = ParamVariety::parse(&["t"], &["1", "t", "t^2", "t^3"]).unwrap();
        assert_eq!(parametric_curve_degree(&cubic).unwrap(), 3);

        let conic_push = curve(&["t^4 - 1", "-t^4 - 1", "2*t^3 - 2*t", "t^3 + t"]);
        assert_eq!(parametric_curve_degree(&conic_push).unwrap(), 4);
        let counts = degree_root_counts(&conic_push).unwrap();
        assert_eq!(counts.iter().max(), Some(&4));
        assert!(counts.iter().all(|&c| c <= 4));

        let parabola_push = curve(&["4*t", "3*t^2", "4*t^3", "1"]);
        assert_eq!(parametric_curve_degree(&parabola_push).unwrap(), 3);

        let surface = ParamVariety::parse(&["t1", "t2"], &["1", "t1", "t2"]).unwrap();
        assert_eq!(
            parametric_curve_degree(&surface),
            Err(BryantError::NotACurve { params: 2 })
        );
    }

    #[test]
    fn degree_formulas_for_nodal_curves() {
        let conic = expected_degrees(2, 0).unwrap();
        assert_eq!((conic.nodes, conic.dual_degree, conic.legendrian_degree), (0, 2, 4));

        let smooth_cubic = expected_degrees(3, 1).unwrap();
        assert_eq!(
            (smooth_cubic.nodes, smooth_cubic.dual_degree, smooth_cubic.legendrian_degree),
            (0, 6, 9)
        );

        let rational_quartic = expected_degrees(4, 0).unwrap();
        assert_eq!(
            (
                rational_quartic.nodes,
                rational_quartic.dual_degree,
                rational_quartic.legendrian_degree
            ),
            (3, 6, 10)
        );

        // The dual degree agrees with the class formula d(d-1) - 2*nodes.
        for d in 2..=6u32 {
            for g in 0..=(d - 1) * (d - 2) / 2 {
                let e = expected_degrees(d, g).unwrap();
                assert_eq!(e.dual_degree, d * (d - 1) - 2 * e.nodes);
                assert_eq!(e.legendrian_degree, d + e.dual_degree);
            }
        }

        assert_eq!(expected_degrees(1, 0), Err(BryantError::DegreeTooSmall { d: 1 }));
        assert_eq!(
            expected_degrees(3, 2),
            Err(BryantError::GenusOutOfRange { d: 3, g: 2, max: 1 })
        );
    }
}
