//! Polynomial gcd via primitive pseudo-remainder sequences, and the
//! squarefree part built on it.

use num_traits::One;

use super::{ExactMathError, MultiPoly, Rational};

fn coeff_of_power(p: &MultiPoly, var: &str, k: u32) -> MultiPoly {
    let coeffs = p.coefficients_in(var).expect("variable present");
    coeffs
        .get(k as usize)
        .cloned()
        .unwrap_or_else(|| MultiPoly::zero_over(p.vars()))
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `var`.
fn content_wrt(p: &MultiPoly, var: &str) -> MultiPoly {
    let mut cont = MultiPoly::zero_over(p.vars());
    for c in p.coefficients_in(var).expect("variable present") {
        if !c.is_zero() {
            cont = poly_gcd(&cont, &c);
        }
    }
    cont
}

fn primitive_wrt(p: &MultiPoly, var: &str) -> MultiPoly {
    if p.is_zero() {
        return p.clone();
    }
    let cont = content_wrt(p, var);
    p.div_exact(&cont).expect("content divides")
}

/// Pseudo-remainder of `u` by `v` in `var`; both must be nonzero with
/// `deg(u) >= deg(v)`. Exact up to a factor that the primitive reduction in
/// the caller removes.
fn pseudo_rem(u: &MultiPoly, v: &MultiPoly, var: &str) -> MultiPoly {
    let n = v.degree_in(var).expect("variable present").expect("nonzero divisor");
    let lc_v = coeff_of_power(v, var, n);
    let mut r = u.clone();
    loop {
        let m = match r.degree_in(var).expect("variable present") {
            None => return r,
            Some(m) if m < n => return r,
            Some(m) => m,
        };
        let lc_r = coeff_of_power(&r, var, m);
        let var_idx = r.vars().iter().position(|w| w == var).expect("variable present");
        let mut shift_exps = vec![0u32; r.vars().len()];
        shift_exps[var_idx] = m - n;
        let shift = MultiPoly::monomial(
            &r.vars().iter().map(|s| s.as_str()).collect::<Vec<_>>(),
            &shift_exps,
            Rational::one(),
        );
        r = &(&lc_v * &r) - &(&lc_r * &(&shift * v));
    }
}

/// Gcd of two polynomials over the same variable list, normalized to coprime
/// integer coefficients with positive graded-lex leading coefficient.
/// `poly_gcd(0, 0) = 0`; a nonzero constant on either side gives `1`.
pub fn poly_gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return b.normalize_primitive();
    }
    if b.is_zero() {
        return a.normalize_primitive();
    }
    if a.is_constant() || b.is_constant() {
        let ones: Vec<&str> = a.vars().iter().map(|s| s.as_str()).collect();
        return MultiPoly::one(&ones);
    }
    let var = a
        .vars()
        .iter()
        .find(|v| {
            a.degree_in(v).expect("own variable").unwrap_or(0) > 0
                || b.degree_in(v).expect("own variable").unwrap_or(0) > 0
        })
        .expect("nonconstant polynomial has an active variable")
        .clone();

    let cont_a = content_wrt(a, &var);
    let cont_b = content_wrt(b, &var);
    let g_cont = poly_gcd(&cont_a, &cont_b);

    // Rational content must be stripped at every step: pseudo-remainders
    // multiply by leading coefficients, and without the renormalization the
    // numerators and denominators grow doubly exponentially along the
    // remainder sequence.
    let mut u = a.div_exact(&cont_a).expect("content divides").normalize_primitive();
    let mut v = b.div_exact(&cont_b).expect("content divides").normalize_primitive();
    if u.degree_in(&var).expect("variable present").unwrap_or(0)
        < v.degree_in(&var).expect("variable present").unwrap_or(0)
    {
        std::mem::swap(&mut u, &mut v);
    }
    while !v.is_zero() {
        let r = pseudo_rem(&u, &v, &var);
        u = v;
        v = if r.is_zero() { r } else { primitive_wrt(&r, &var).normalize_primitive() };
    }
    (&g_cont * &primitive_wrt(&u, &var)).normalize_primitive()
}

/// Gcd of a nonempty list of polynomials; zero when every entry is zero.
pub fn poly_gcd_many(polys: &[MultiPoly]) -> MultiPoly {
    let mut acc: Option<MultiPoly> = None;
    for p in polys {
        acc = Some(match acc {
            None => p.normalize_primitive(),
            Some(g) => poly_gcd(&g, p),
        });
        if let Some(g) = &acc {
            if g.is_constant() && !g.is_zero() {
                break;
            }
        }
    }
    acc.expect("gcd fold needs a nonempty list")
}

/// Product of the distinct irreducible factors of a univariate polynomial:
/// `p / gcd(p, dp/dvar)`, normalized to coprime integer coefficients with
/// positive leading coefficient.
pub fn squarefree_part(p: &MultiPoly, var: &str) -> Result<MultiPoly, ExactMathError> {
    if p.is_zero() {
        return Err(ExactMathError::SquarefreeOfZero);
    }
    p.degree_in(var)?;
    for other in p.vars() {
        if other != var && p.degree_in(other)?.unwrap_or(0) > 0 {
            return Err(ExactMathError::NotUnivariate(var.to_string()));
        }
    }
    let dp = p.differentiate(var)?;
    let g = poly_gcd(p, &dp);
    let sf = p.div_exact(&g).expect("gcd divides");
    Ok(sf.normalize_primitive())
}
