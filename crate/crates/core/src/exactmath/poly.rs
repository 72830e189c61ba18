//! Sparse multivariate polynomials with exact rational coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{ExactMathError, Rational};

/// Graded lexicographic order on exponent vectors: total degree first, then
/// lexicographic with earlier variables weighing more.
pub fn cmp_grlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

pub(crate) fn rat_pow(base: &Rational, exp: u32) -> Rational {
    let mut result = Rational::one();
    let mut sq = base.clone();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            result *= &sq;
        }
        e >>= 1;
        if e > 0 {
            sq = &sq * &sq;
        }
    }
    result
}

/// Formats a rational as `n` or `n/d`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `n` or `n/d` with optional leading sign.
pub fn parse_rational(s: &str) -> Result<Rational, ExactMathError> {
    let parse_int = |t: &str, pos: usize| -> Result<BigInt, ExactMathError> {
        t.trim().parse::<BigInt>().map_err(|_| ExactMathError::Parse {
            position: pos,
            message: format!("expected an integer, found `{}`", t.trim()),
        })
    };
    match s.find('/') {
        None => Ok(Rational::from_integer(parse_int(s, 0)?)),
        Some(idx) => {
            let num = parse_int(&s[..idx], 0)?;
            let den = parse_int(&s[idx + 1..], idx + 1)?;
            if den.is_zero() {
                return Err(ExactMathError::Parse {
                    position: idx + 1,
                    message: "zero denominator".into(),
                });
            }
            Ok(Rational::new(num, den))
        }
    }
}

/// Sparse polynomial over a fixed, ordered list of variables.
///
/// The term map has one entry per monomial with a nonzero coefficient, keyed
/// by the exponent vector (same length and order as `vars`). Two polynomials
/// are equal exactly when their variable lists and term maps coincide;
/// arithmetic between polynomials over different variable lists is a
/// programming error and panics.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl MultiPoly {
    pub fn zero(vars: &[&str]) -> Self {
        MultiPoly {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            terms: BTreeMap::new(),
        }
    }

    pub fn zero_over(vars: &[String]) -> Self {
        MultiPoly { vars: vars.to_vec(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &[&str], value: Rational) -> Self {
        let mut p = Self::zero(vars);
        if !value.is_zero() {
            p.terms.insert(vec![0; p.vars.len()], value);
        }
        p
    }

    pub fn constant_over(vars: &[String], value: Rational) -> Self {
        let mut p = Self::zero_over(vars);
        if !value.is_zero() {
            p.terms.insert(vec![0; p.vars.len()], value);
        }
        p
    }

    pub fn one(vars: &[&str]) -> Self {
        Self::constant(vars, Rational::one())
    }

    pub fn var(vars: &[&str], name: &str) -> Result<Self, ExactMathError> {
        let mut p = Self::zero(vars);
        let idx = p.index_of(name)?;
        let mut exps = vec![0; p.vars.len()];
        exps[idx] = 1;
        p.terms.insert(exps, Rational::one());
        Ok(p)
    }

    /// Single term with the given exponent vector. Panics if the exponent
    /// vector length differs from the variable count.
    pub fn monomial(vars: &[&str], exps: &[u32], coeff: Rational) -> Self {
        let mut p = Self::zero(vars);
        assert_eq!(exps.len(), p.vars.len(), "exponent vector length must match variable count");
        if !coeff.is_zero() {
            p.terms.insert(exps.to_vec(), coeff);
        }
        p
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty()
            || (self.terms.len() == 1 && self.terms.keys().next().unwrap().iter().all(|&e| e == 0))
    }

    /// The constant value if the polynomial has no nonconstant term.
    pub fn constant_value(&self) -> Option<Rational> {
        if self.terms.is_empty() {
            return Some(Rational::zero());
        }
        if self.is_constant() {
            return Some(self.terms.values().next().unwrap().clone());
        }
        None
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    fn index_of(&self, var: &str) -> Result<usize, ExactMathError> {
        self.vars
            .iter()
            .position(|v| v == var)
            .ok_or_else(|| ExactMathError::UnknownVariable(var.to_string()))
    }

    fn assert_same_vars(&self, other: &Self) {
        assert_eq!(
            self.vars, other.vars,
            "polynomial arithmetic requires identical variable lists"
        );
    }

    fn insert_add(terms: &mut BTreeMap<Vec<u32>, Rational>, exps: Vec<u32>, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero_over(&self.vars);
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut result = Self::constant_over(&self.vars, Rational::one());
        for _ in 0..exp {
            result = &result * self;
        }
        result
    }

    pub fn differentiate(&self, var: &str) -> Result<Self, ExactMathError> {
        let idx = self.index_of(var)?;
        let mut terms = BTreeMap::new();
        for (exps, coeff) in &self.terms {
            let e = exps[idx];
            if e == 0 {
                continue;
            }
            let mut new_exps = exps.clone();
            new_exps[idx] = e - 1;
            Self::insert_add(&mut terms, new_exps, coeff * Rational::from_integer(BigInt::from(e)));
        }
        Ok(MultiPoly { vars: self.vars.clone(), terms })
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational, ExactMathError> {
        if point.len() != self.vars.len() {
            return Err(ExactMathError::PointLength {
                expected: self.vars.len(),
                got: point.len(),
            });
        }
        let mut acc = Rational::zero();
        for (exps, coeff) in &self.terms {
            let mut term = coeff.clone();
            for (i, &e) in exps.iter().enumerate() {
                if e > 0 {
                    term *= rat_pow(&point[i], e);
                }
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Substitutes a polynomial (over the same variable list) for `var`.
    pub fn substitute(&self, var: &str, replacement: &Self) -> Result<Self, ExactMathError> {
        if replacement.vars != self.vars {
            return Err(ExactMathError::VariableMismatch);
        }
        let coeffs = self.coefficients_in(var)?;
        let mut result = Self::zero_over(&self.vars);
        for c in coeffs.iter().rev() {
            result = &(&result * replacement) + c;
        }
        Ok(result)
    }

    pub fn subst_rational(&self, var: &str, value: &Rational) -> Result<Self, ExactMathError> {
        self.substitute(var, &Self::constant_over(&self.vars, value.clone()))
    }

    /// Coefficients of powers of `var`, ascending, as polynomials over the
    /// same variable list (with the `var` exponent zeroed). Empty for the
    /// zero polynomial.
    pub fn coefficients_in(&self, var: &str) -> Result<Vec<Self>, ExactMathError> {
        let idx = self.index_of(var)?;
        let deg = match self.degree_at(idx) {
            None => return Ok(Vec::new()),
            Some(d) => d,
        };
        let mut coeffs = vec![Self::zero_over(&self.vars); deg as usize + 1];
        for (exps, coeff) in &self.terms {
            let e = exps[idx];
            let mut rest = exps.clone();
            rest[idx] = 0;
            Self::insert_add(&mut coeffs[e as usize].terms, rest, coeff.clone());
        }
        Ok(coeffs)
    }

    /// Rebuilds `sum coeffs[k] * var^k`. Coefficients must not involve `var`.
    pub fn from_coefficients(
        var: &str,
        coeffs: &[MultiPoly],
    ) -> Result<Self, ExactMathError> {
        let vars = match coeffs.first() {
            Some(c) => c.vars.clone(),
            None => return Err(ExactMathError::UnknownVariable(var.to_string())),
        };
        let mut result = Self::zero_over(&vars);
        let idx = result.index_of(var)?;
        for (k, c) in coeffs.iter().enumerate() {
            result.assert_same_vars(c);
            for (exps, coeff) in &c.terms {
                assert_eq!(exps[idx], 0, "coefficient polynomials must not involve the series variable");
                let mut e = exps.clone();
                e[idx] = k as u32;
                Self::insert_add(&mut result.terms, e, coeff.clone());
            }
        }
        Ok(result)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
    }

    fn degree_at(&self, idx: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[idx]).max()
    }

    /// Degree in one variable; `None` for the zero polynomial.
    pub fn degree_in(&self, var: &str) -> Result<Option<u32>, ExactMathError> {
        let idx = self.index_of(var)?;
        Ok(self.degree_at(idx))
    }

    /// Graded-lexicographically largest term.
    pub fn leading_term_grlex(&self) -> Option<(&Vec<u32>, &Rational)> {
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| cmp_grlex(a, b))
    }

    /// Positive rational `c` such that `self / c` has coprime integer
    /// coefficients; zero for the zero polynomial.
    pub fn rational_content(&self) -> Rational {
        if self.terms.is_empty() {
            return Rational::zero();
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for coeff in self.terms.values() {
            num_gcd = num_gcd.gcd(coeff.numer());
            den_lcm = den_lcm.lcm(coeff.denom());
        }
        Rational::new(num_gcd, den_lcm)
    }

    /// Scales to coprime integer coefficients with the graded-lex leading
    /// coefficient positive. Zero stays zero.
    pub fn normalize_primitive(&self) -> Self {
        if self.terms.is_empty() {
            return self.clone();
        }
        let mut content = self.rational_content();
        if self.leading_term_grlex().unwrap().1.is_negative() {
            content = -content;
        }
        let inv = content.recip();
        self.scale(&inv)
    }

    /// Exact multivariate division; `None` when the divisor does not divide
    /// `self`. Panics if the divisor is zero.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        self.assert_same_vars(divisor);
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let (lead_exps, lead_coeff) = divisor.leading_term_grlex().unwrap();
        let lead_exps = lead_exps.clone();
        let lead_coeff = lead_coeff.clone();
        let mut rem = self.clone();
        let mut quot = Self::zero_over(&self.vars);
        while !rem.is_zero() {
            let (r_exps, r_coeff) = rem.leading_term_grlex().unwrap();
            if !lead_exps.iter().zip(r_exps.iter()).all(|(d, r)| d <= r) {
                return None;
            }
            let q_exps: Vec<u32> = r_exps.iter().zip(lead_exps.iter()).map(|(r, d)| r - d).collect();
            let q_coeff = r_coeff / &lead_coeff;
            let q_term = MultiPoly {
                vars: self.vars.clone(),
                terms: BTreeMap::from([(q_exps.clone(), q_coeff.clone())]),
            };
            rem = &rem - &(&q_term * divisor);
            Self::insert_add(&mut quot.terms, q_exps, q_coeff);
        }
        Some(quot)
    }
}

impl std::ops::Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, other: &MultiPoly) -> MultiPoly {
        self.assert_same_vars(other);
        let mut terms = self.terms.clone();
        for (exps, coeff) in &other.terms {
            MultiPoly::insert_add(&mut terms, exps.clone(), coeff.clone());
        }
        MultiPoly { vars: self.vars.clone(), terms }
    }
}

impl std::ops::Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, other: &MultiPoly) -> MultiPoly {
        self.assert_same_vars(other);
        let mut terms = self.terms.clone();
        for (exps, coeff) in &other.terms {
            MultiPoly::insert_add(&mut terms, exps.clone(), -coeff.clone());
        }
        MultiPoly { vars: self.vars.clone(), terms }
    }
}

impl std::ops::Mul for &MultiPoly {
    type Output = MultiPoly;
    // Exponent vectors add under multiplication.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, other: &MultiPoly) -> MultiPoly {
        self.assert_same_vars(other);
        let mut terms = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps: Vec<u32> = ea.iter().zip(eb.iter()).map(|(x, y)| x + y).collect();
                MultiPoly::insert_add(&mut terms, exps, ca * cb);
            }
        }
        MultiPoly { vars: self.vars.clone(), terms }
    }
}

impl std::ops::Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<&Vec<u32>> = self.terms.keys().collect();
        keys.sort_by(|a, b| cmp_grlex(b, a));
        for (i, exps) in keys.iter().enumerate() {
            let coeff = &self.terms[*exps];
            let negative = coeff.is_negative();
            let abs = coeff.abs();
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mono: Vec<String> = exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| {
                    if e == 1 {
                        self.vars[v].clone()
                    } else {
                        format!("{}^{}", self.vars[v], e)
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{}", format_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", format_rational(&abs), mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[{}]({})", self.vars.join(","), self)
    }
}
