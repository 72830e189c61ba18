//! Constructors for the explicit families of osculating self-dual varieties:
//! monomial curves in `P^3`, Legendrian curves cut out by a hypersurface
//! equation, and the k-parameter family with a cubic last coordinate. Each
//! family ships with its duality data: the computed osculating dual and an
//! explicit projective map sending the dual back onto the original.

use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::contact::{ContactError, SkewForm};
use crate::exactmath::{rat, rat_int, ExactMathError, MultiPoly, Rational};
use crate::osculation::{osculating_dual, OsculationError};
use crate::projective::{ParamVariety, ProjMap, ProjectiveError};

#[derive(Debug, Error, PartialEq)]
pub enum CatalogError {
    #[error("exponents must be positive, got a = 0")]
    ZeroExponent,
    #[error("exponents must satisfy a < b < c, got ({a}, {b}, {c})")]
    NotStrictlyIncreasing { a: u32, b: u32, c: u32 },
    #[error("exponents must be coprime, gcd({a}, {b}, {c}) = {gcd}")]
    NotCoprime { a: u32, b: u32, c: u32, gcd: u32 },
    #[error("ambient P^(2n-1) needs n >= 2, got {n}")]
    AmbientTooSmall { n: usize },
    #[error("the family needs at least 2 parameters, got {k}")]
    TooFewParameters { k: usize },
    #[error("the defining polynomial is zero")]
    ZeroPolynomial,
    #[error("the defining polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("the defining polynomial must have degree at least 3, got {d}")]
    DegreeTooSmall { d: u32 },
    #[error("expected a polynomial in {expected} variables, got {got}")]
    WrongVariableCount { expected: usize, got: usize },
    #[error("computed dual does not have the expected shape: {detail}")]
    UnexpectedDualShape { detail: String },
    #[error(transparent)]
    Contact(#[from] ContactError),
    #[error(transparent)]
    Osculation(#[from] OsculationError),
    #[error(transparent)]
    Projective(#[from] ProjectiveError),
    #[error(transparent)]
    Math(#[from] ExactMathError),
}

/// Exponents of a monomial curve `(1 : t^a : t^b : t^c)`: positive, strictly
/// increasing, and coprime.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct MonomialSpec {
    a: u32,
    b: u32,
    c: u32,
}

impl MonomialSpec {
    pub fn new(a: u32, b: u32, c: u32) -> Result<Self, CatalogError> {
        if a == 0 {
            return Err(CatalogError::ZeroExponent);
        }
        if !(a < b && b < c) {
            return Err(CatalogError::NotStrictlyIncreasing { a, b, c });
        }
        let gcd = a.gcd(&b).gcd(&c);
        if gcd != 1 {
            return Err(CatalogError::NotCoprime { a, b, c, gcd });
        }
        Ok(MonomialSpec { a, b, c })
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    pub fn c(&self) -> u32 {
        self.c
    }
}

pub fn monomial_curve(s: &MonomialSpec) -> ParamVariety {
    let vars = ["t"];
    let coords = vec![
        MultiPoly::one(&vars),
        MultiPoly::monomial(&vars, &[s.a], rat_int(1)),
        MultiPoly::monomial(&vars, &[s.b], rat_int(1)),
        MultiPoly::monomial(&vars, &[s.c], rat_int(1)),
    ];
    ParamVariety::new(vec!["t".into()], coords).expect("monomial coordinates are valid")
}

/// Exponent sequence of the osculating dual, in ascending order, and whether
/// it matches the curve's own sequence `(0, a, b, c)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct DualExponents {
    pub exponents: [u32; 4],
    pub symmetric: bool,
}

pub fn monomial_dual_exponents(s: &MonomialSpec) -> DualExponents {
    let exponents = [0, s.c - s.b, s.c - s.a, s.c];
    DualExponents { exponents, symmetric: exponents == [0, s.a, s.b, s.c] }
}

/// The contact form making the monomial curve Legendrian, which exists
/// exactly when the exponent sequence is symmetric (`c = a + b`): the form
/// with `p03 = a - b` and `p12 = c`.
pub fn monomial_contact_form(s: &MonomialSpec) -> Option<SkewForm> {
    if s.c != s.a + s.b {
        return None;
    }
    let p03 = rat_int(i64::from(s.a) - i64::from(s.b));
    let p12 = rat_int(i64::from(s.c));
    Some(
        SkewForm::from_upper_entries(4, &[(0, 3, p03), (1, 2, p12)])
            .expect("a < b makes the form nondegenerate"),
    )
}

/// Self-duality data of a monomial curve. The dual is again a monomial curve;
/// `rescale` clears its coefficients, after which reading the exponents in
/// reverse order and substituting `t = 1/s` restores the original curve. The
/// constructor verifies that round trip before returning.
#[derive(Clone, PartialEq, Debug)]
pub struct MonomialDuality {
    pub dual: ParamVariety,
    pub dual_exponents: [u32; 4],
    pub rescale: ProjMap,
}

pub fn monomial_duality(s: &MonomialSpec) -> Result<MonomialDuality, CatalogError> {
    let curve = monomial_curve(s);
    let dual = osculating_dual(&curve)?;
    let mut coeffs = Vec::with_capacity(4);
    let mut exps = Vec::with_capacity(4);
    for p in dual.coords() {
        if p.num_terms() != 1 {
            return Err(CatalogError::UnexpectedDualShape {
                detail: format!("coordinate {} is not a monomial", p),
            });
        }
        let (e, k) = p.terms().next().expect("single term");
        coeffs.push(k.clone());
        exps.push(e[0]);
    }
    let rescale = ProjMap::diagonal(coeffs.iter().map(|k| k.recip()).collect())?;
    let cleared = rescale.apply(&dual)?;
    let restored = cleared.parameter_inversion()?;
    if !restored.proj_equal(&curve)? {
        return Err(CatalogError::UnexpectedDualShape {
            detail: format!("reversal and reparametrization give {:?}", restored.coords()),
        });
    }
    exps.reverse();
    Ok(MonomialDuality {
        dual,
        dual_exponents: [exps[0], exps[1], exps[2], exps[3]],
        rescale,
    })
}

/// The Legendrian curve attached to the hypersurface `x1 + F(x2, ..., xn) = 0`
/// for homogeneous `F` of degree `d >= 3`: in the coordinates of `P^(2n-1)`,
///
/// `(1, (d-2)/2 F, x2, -1/2 dF/dx2, ..., xn, -1/2 dF/dxn)`
///
/// parametrized by the variables of `F` themselves.
pub fn hypersurface_family_curve(n: usize, f: &MultiPoly) -> Result<ParamVariety, CatalogError> {
    if n < 2 {
        return Err(CatalogError::AmbientTooSmall { n });
    }
    if f.vars().len() != n - 1 {
        return Err(CatalogError::WrongVariableCount { expected: n - 1, got: f.vars().len() });
    }
    if f.is_zero() {
        return Err(CatalogError::ZeroPolynomial);
    }
    let d = f.total_degree().expect("nonzero polynomial");
    if f.terms().any(|(e, _)| e.iter().sum::<u32>() != d) {
        return Err(CatalogError::NotHomogeneous);
    }
    if d < 3 {
        return Err(CatalogError::DegreeTooSmall { d });
    }
    let vars = f.vars().to_vec();
    let var_refs: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
    let mut coords = Vec::with_capacity(2 * n);
    coords.push(MultiPoly::one(&var_refs));
    coords.push(f.scale(&rat(i64::from(d) - 2, 2)));
    for name in &vars {
        coords.push(MultiPoly::var(&var_refs, name).expect("own variable"));
        coords.push(f.differentiate(name)?.scale(&rat(-1, 2)));
    }
    Ok(ParamVariety::new(vars, coords)?)
}

/// The k-parameter family `(1, t_1, ..., t_k, t_1^2, ..., t_k^2,
/// t_1^3 + ... + t_k^3)` in `P^(2k+1)`.
pub fn v_family(k: usize) -> Result<ParamVariety, CatalogError> {
    if k < 2 {
        return Err(CatalogError::TooFewParameters { k });
    }
    let names: Vec<String> = (1..=k).map(|i| format!("t{}", i)).collect();
    let vars: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let mut coords = Vec::with_capacity(2 * k + 2);
    coords.push(MultiPoly::one(&vars));
    for name in &names {
        coords.push(MultiPoly::var(&vars, name).expect("own variable"));
    }
    for name in &names {
        coords.push(MultiPoly::var(&vars, name).expect("own variable").pow(2));
    }
    let cubic = names.iter().fold(MultiPoly::zero(&vars), |acc, name| {
        &acc + &MultiPoly::var(&vars, name).expect("own variable").pow(3)
    });
    coords.push(cubic);
    Ok(ParamVariety::new(names, coords)?)
}

/// The contact form for which `v_family(k)` is Legendrian: `p_(0, 2k+1) = 1`
/// and `p_(i, k+i) = -3` for `i = 1, ..., k`.
pub fn v_family_contact_form(k: usize) -> Result<SkewForm, CatalogError> {
    if k < 2 {
        return Err(CatalogError::TooFewParameters { k });
    }
    let mut entries = vec![(0, 2 * k + 1, rat_int(1))];
    for i in 1..=k {
        entries.push((i, k + i, rat_int(-3)));
    }
    Ok(SkewForm::from_upper_entries(2 * k + 2, &entries)?)
}

/// Self-duality data of `v_family(k)`. Inverting the contact polarity maps
/// the osculating dual to a parametrization that matches the family except
/// for a correction term `P` added to the last coordinate, supported on the
/// monomials `1`, `t_i`, `t_i^2`; the shear subtracting `P` completes the
/// witness. The constructor verifies `witness(dual) = v_family(k)` before
/// returning.
#[derive(Clone, PartialEq, Debug)]
pub struct VFamilyDuality {
    pub dual: ParamVariety,
    pub correction: MultiPoly,
    pub witness: ProjMap,
}

pub fn v_family_duality(k: usize) -> Result<VFamilyDuality, CatalogError> {
    let v = v_family(k)?;
    let form = v_family_contact_form(k)?;
    let dual = osculating_dual(&v)?;
    let polarity_inverse = ProjMap::new(form.inverse_matrix()?)?;
    let straightened = polarity_inverse.apply(&dual)?;
    if straightened.coords()[0].constant_value() != Some(Rational::one()) {
        return Err(CatalogError::UnexpectedDualShape {
            detail: format!("leading dual coordinate is {}", straightened.coords()[0]),
        });
    }
    let vars: Vec<&str> = straightened.params().iter().map(|s| s.as_str()).collect();
    let cubic = vars.iter().fold(MultiPoly::zero(&vars), |acc, name| {
        &acc + &MultiPoly::var(&vars, name).expect("own variable").pow(3)
    });
    let correction = &straightened.coords()[2 * k + 1] - &cubic;

    // Read off P's coefficients on 1, t_i, t_i^2; anything else is a shape
    // violation. The shear subtracts c * z_j from the last coordinate for the
    // coordinate j carrying the matching monomial.
    let mut last_row = vec![Rational::zero(); 2 * k + 2];
    last_row[2 * k + 1] = Rational::one();
    for (exps, coeff) in correction.terms() {
        let support: Vec<(usize, u32)> = exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (i, e))
            .collect();
        let column = match support.as_slice() {
            [] => 0,
            [(i, 1)] => 1 + i,
            [(i, 2)] => 1 + k + i,
            _ => {
                return Err(CatalogError::UnexpectedDualShape {
                    detail: format!("correction term {} is not linear in t_i, t_i^2", correction),
                })
            }
        };
        last_row[column] = -coeff.clone();
    }
    let mut shear_matrix: Vec<Vec<Rational>> = (0..2 * k + 2)
        .map(|i| {
            let mut row = vec![Rational::zero(); 2 * k + 2];
            row[i] = Rational::one();
            row
        })
        .collect();
    shear_matrix[2 * k + 1] = last_row;
    let shear = ProjMap::new(shear_matrix)?;
    let witness = shear.compose(&polarity_inverse)?;
    if !witness.apply(&dual)?.proj_equal(&v)? {
        return Err(CatalogError::UnexpectedDualShape {
            detail: "shear witness does not restore the family".into(),
        });
    }
    Ok(VFamilyDuality { dual, correction, witness })
}
