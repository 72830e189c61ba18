//! Constant-coefficient symplectic/contact data: antisymmetric forms, their
//! Pfaffians, Legendrian certificates for parametrized cones, search for a
//! contact form making a given variety Legendrian, and reduction of a
//! Legendrian cone to one fewer symplectic block.
//!
//! A variety `x` in `P^(2n-1)` with `n-1` parameters is Legendrian for an
//! antisymmetric form `B` when `B(v, dv/dt_i)` vanishes identically for all
//! parameters, together with `B(dv/dt_i, dv/dt_j)`. The first family of
//! identities implies the second by differentiation, but certificates verify
//! both so the output never leans on that implication.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactmath::{
    normalize_rational_vector, ExactMathError, MultiPoly, PolyMatrix, Rational,
};
use crate::projective::{LinearSubspace, ParamVariety, ProjMap, ProjPoint, ProjectiveError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ContactError {
    #[error("antisymmetric form must have even size, got {0}")]
    OddDimension(usize),
    #[error("matrix is not antisymmetric")]
    NotAntisymmetric,
    #[error("form size {expected} does not match vector length {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("antisymmetric form is degenerate")]
    DegenerateForm,
    #[error("contact-form search supports half-dimension up to {max}, got {n}")]
    UnsupportedDimension { n: usize, max: usize },
    #[error("Legendrian data in half-dimension {n} needs {expected} parameters, got {got}")]
    WrongParameterCount { n: usize, expected: usize, got: usize },
    #[error("chart one-forms need half-dimension at least 2, got {0}")]
    HalfDimTooSmall(usize),
    #[error("variety is not Legendrian for this form")]
    NotLegendrian,
    #[error("variety is not contained in the given hyperplane")]
    NotInHyperplane,
    #[error("hyperplane vector must be nonzero")]
    ZeroHyperplane,
    #[error(transparent)]
    Projective(#[from] ProjectiveError),
    #[error(transparent)]
    Math(#[from] ExactMathError),
}

/// Constant antisymmetric bilinear form on a 2n-dimensional coordinate space.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SkewForm {
    n: usize,
    matrix: Vec<Vec<Rational>>,
}

impl SkewForm {
    pub fn new(matrix: Vec<Vec<Rational>>) -> Result<Self, ContactError> {
        let size = matrix.len();
        if size == 0 || !size.is_multiple_of(2) {
            return Err(ContactError::OddDimension(size));
        }
        for row in &matrix {
            if row.len() != size {
                return Err(ContactError::DimensionMismatch { expected: size, got: row.len() });
            }
        }
        for i in 0..size {
            for j in 0..size {
                if matrix[i][j] != -matrix[j][i].clone() {
                    return Err(ContactError::NotAntisymmetric);
                }
            }
        }
        Ok(SkewForm { n: size / 2, matrix })
    }

    /// Assembles a form from its strictly upper-triangular entries, keyed by
    /// coordinate pairs `(i, j)` with `i < j`; unlisted pairs are zero.
    pub fn from_upper_entries(
        size: usize,
        entries: &[(usize, usize, Rational)],
    ) -> Result<Self, ContactError> {
        if size == 0 || !size.is_multiple_of(2) {
            return Err(ContactError::OddDimension(size));
        }
        let mut matrix = vec![vec![Rational::zero(); size]; size];
        for (i, j, v) in entries {
            if *i >= *j || *j >= size {
                return Err(ContactError::DimensionMismatch { expected: size, got: *j + 1 });
            }
            matrix[*i][*j] = v.clone();
            matrix[*j][*i] = -v.clone();
        }
        Self::new(matrix)
    }

    pub fn half_dim(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        2 * self.n
    }

    pub fn matrix(&self) -> &[Vec<Rational>] {
        &self.matrix
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.matrix[i][j]
    }

    /// Pairs two rational vectors: `B(v, w) = sum B_ij v_i w_j`.
    pub fn pair_rational(&self, v: &[Rational], w: &[Rational]) -> Result<Rational, ContactError> {
        if v.len() != self.size() || w.len() != self.size() {
            return Err(ContactError::DimensionMismatch {
                expected: self.size(),
                got: if v.len() != self.size() { v.len() } else { w.len() },
            });
        }
        let mut acc = Rational::zero();
        for i in 0..self.size() {
            for j in 0..self.size() {
                if !self.matrix[i][j].is_zero() {
                    acc += &self.matrix[i][j] * &(&v[i] * &w[j]);
                }
            }
        }
        Ok(acc)
    }

    /// Pairs two polynomial vectors over a shared variable list.
    pub fn pair_poly(&self, v: &[MultiPoly], w: &[MultiPoly]) -> Result<MultiPoly, ContactError> {
        if v.len() != self.size() || w.len() != self.size() {
            return Err(ContactError::DimensionMismatch {
                expected: self.size(),
                got: if v.len() != self.size() { v.len() } else { w.len() },
            });
        }
        let mut acc = MultiPoly::zero_over(v[0].vars());
        for i in 0..self.size() {
            for j in 0..self.size() {
                if !self.matrix[i][j].is_zero() {
                    acc = &acc + &(&v[i] * &w[j]).scale(&self.matrix[i][j]);
                }
            }
        }
        Ok(acc)
    }

    pub fn pfaffian(&self) -> Rational {
        let rows: Vec<Vec<MultiPoly>> = self
            .matrix
            .iter()
            .map(|r| r.iter().map(|c| MultiPoly::constant(&[], c.clone())).collect())
            .collect();
        pfaffian_of(&rows)
            .constant_value()
            .expect("Pfaffian of a constant matrix is constant")
    }

    pub fn is_nondegenerate(&self) -> bool {
        !self.pfaffian().is_zero()
    }

    /// The polarity `x -> B x` as a projective-linear map; the form must be
    /// nondegenerate.
    pub fn polarity(&self) -> Result<ProjMap, ContactError> {
        if !self.is_nondegenerate() {
            return Err(ContactError::DegenerateForm);
        }
        Ok(ProjMap::new(self.matrix.clone()).expect("nondegenerate form is invertible"))
    }

    /// Inverse matrix; the form must be nondegenerate.
    pub fn inverse_matrix(&self) -> Result<Vec<Vec<Rational>>, ContactError> {
        rational_inverse(&self.matrix).ok_or(ContactError::DegenerateForm)
    }
}

/// Standard contact form on `P^(2n-1)`: for each block `i = 0..n`,
/// `B(e_(2i), e_(2i+1)) = 1`. Its Pfaffian is 1.
pub fn standard_b(n: usize) -> Result<SkewForm, ContactError> {
    if n == 0 {
        return Err(ContactError::OddDimension(0));
    }
    let entries: Vec<(usize, usize, Rational)> =
        (0..n).map(|i| (2 * i, 2 * i + 1, Rational::one())).collect();
    SkewForm::from_upper_entries(2 * n, &entries)
}

/// Pfaffian of an antisymmetric polynomial matrix given as rows, by
/// expansion along the first row.
fn pfaffian_of(m: &[Vec<MultiPoly>]) -> MultiPoly {
    let size = m.len();
    if size == 0 {
        return MultiPoly::one(&[]);
    }
    let vars = m[0][0].vars().to_vec();
    if size == 0 {
        return MultiPoly::constant_over(&vars, Rational::one());
    }
    if !size.is_multiple_of(2) {
        return MultiPoly::zero_over(&vars);
    }
    if size == 2 {
        return m[0][1].clone();
    }
    let mut acc = MultiPoly::zero_over(&vars);
    for j in 1..size {
        if m[0][j].is_zero() {
            continue;
        }
        let keep: Vec<usize> = (1..size).filter(|&r| r != j).collect();
        let minor: Vec<Vec<MultiPoly>> = keep
            .iter()
            .map(|&r| keep.iter().map(|&c| m[r][c].clone()).collect())
            .collect();
        let term = &m[0][j] * &pfaffian_of(&minor);
        if j % 2 == 1 {
            acc = &acc + &term;
        } else {
            acc = &acc - &term;
        }
    }
    acc
}

/// Pfaffian of an antisymmetric polynomial matrix.
pub fn pfaffian(m: &PolyMatrix) -> Result<MultiPoly, ContactError> {
    if m.rows() != m.cols() || !m.rows().is_multiple_of(2) {
        return Err(ContactError::OddDimension(m.rows()));
    }
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if !(m.at(i, j) + m.at(j, i)).is_zero() {
                return Err(ContactError::NotAntisymmetric);
            }
        }
    }
    Ok(pfaffian_of(&m.row_vecs()))
}

/// A one-form written in an affine chart: `sum coeffs[i] * d(differentials[i])`
/// on the chart where `chart = 1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChartOneForm {
    pub chart: String,
    pub differentials: Vec<String>,
    pub coeffs: Vec<MultiPoly>,
}

impl ChartOneForm {
    pub fn display(&self) -> String {
        let mut out = String::new();
        for (c, d) in self.coeffs.iter().zip(&self.differentials) {
            if c.is_zero() {
                continue;
            }
            // single-term coefficients carry their sign into the join
            let (negative, body) = if c.num_terms() == 1 {
                let shown = c.to_string();
                match shown.strip_prefix('-') {
                    Some(rest) => (true, rest.to_string()),
                    None => (false, shown),
                }
            } else {
                (false, format!("({})", c))
            };
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            if body == "1" {
                out.push_str(&format!("d{}", d));
            } else {
                out.push_str(&format!("{}*d{}", body, d));
            }
        }
        out
    }
}

/// The standard contact one-form on the chart `z0 = 1` of `P^(2n-1)` and the
/// tautological incidence one-form on the chart `x0 = 1, y1 = 1` (with
/// `xi_j = y_j / y_1` as chart functions):
///
/// `omega = dz1 + sum_(i=1..n-1) (z_(2i) dz_(2i+1) - z_(2i+1) dz_(2i))`
/// `eta   = dx1 + sum_(j=2..n) xi_j dx_j`
pub fn standard_forms(n: usize) -> Result<(ChartOneForm, ChartOneForm), ContactError> {
    if n < 2 {
        return Err(ContactError::HalfDimTooSmall(n));
    }
    let z_names: Vec<String> = (1..2 * n).map(|i| format!("z{}", i)).collect();
    let z_vars: Vec<&str> = z_names.iter().map(|s| s.as_str()).collect();
    let mut omega_coeffs = vec![MultiPoly::zero(&z_vars); 2 * n - 1];
    omega_coeffs[0] = MultiPoly::one(&z_vars);
    for i in 1..n {
        // coefficient of dz_(2i) is -z_(2i+1), of dz_(2i+1) is z_(2i)
        omega_coeffs[2 * i - 1] = -&MultiPoly::var(&z_vars, &format!("z{}", 2 * i + 1))?;
        omega_coeffs[2 * i] = MultiPoly::var(&z_vars, &format!("z{}", 2 * i))?;
    }
    let omega = ChartOneForm {
        chart: "z0".into(),
        differentials: z_names.clone(),
        coeffs: omega_coeffs,
    };

    let xi_names: Vec<String> = (2..=n).map(|j| format!("xi{}", j)).collect();
    let xi_vars: Vec<&str> = xi_names.iter().map(|s| s.as_str()).collect();
    let mut eta_coeffs = vec![MultiPoly::one(&xi_vars)];
    for name in &xi_names {
        eta_coeffs.push(MultiPoly::var(&xi_vars, name)?);
    }
    let eta = ChartOneForm {
        chart: "x0".into(),
        differentials: (1..=n).map(|j| format!("x{}", j)).collect(),
        coeffs: eta_coeffs,
    };
    Ok((omega, eta))
}

/// Outcome of a Legendrian verification: `residuals` lists the pairings that
/// failed to vanish, as `label = polynomial` strings.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LegendrianCertificate {
    pub passed: bool,
    pub residuals: Vec<String>,
}

fn check_shape(x: &ParamVariety, b: &SkewForm) -> Result<(), ContactError> {
    if x.coords().len() != b.size() {
        return Err(ContactError::DimensionMismatch {
            expected: b.size(),
            got: x.coords().len(),
        });
    }
    let expected = b.half_dim() - 1;
    if x.params().len() != expected {
        return Err(ContactError::WrongParameterCount {
            n: b.half_dim(),
            expected,
            got: x.params().len(),
        });
    }
    Ok(())
}

/// Verifies that the cone over `x` is Legendrian for `b`: every pairing
/// `B(v, dv/dt_i)` and `B(dv/dt_i, dv/dt_j)` must vanish identically.
pub fn legendrian_check(
    x: &ParamVariety,
    b: &SkewForm,
) -> Result<LegendrianCertificate, ContactError> {
    check_shape(x, b)?;
    let v = x.coords();
    let derivs: Vec<Vec<MultiPoly>> = x
        .params()
        .iter()
        .map(|t| v.iter().map(|c| c.differentiate(t).expect("own parameter")).collect())
        .collect();
    let mut residuals = Vec::new();
    for (i, dv) in derivs.iter().enumerate() {
        let r = b.pair_poly(v, dv)?;
        if !r.is_zero() {
            residuals.push(format!("B(v, dv/d{}) = {}", x.params()[i], r));
        }
    }
    for i in 0..derivs.len() {
        for j in i + 1..derivs.len() {
            let r = b.pair_poly(&derivs[i], &derivs[j])?;
            if !r.is_zero() {
                residuals.push(format!(
                    "B(dv/d{}, dv/d{}) = {}",
                    x.params()[i],
                    x.params()[j],
                    r
                ));
            }
        }
    }
    Ok(LegendrianCertificate { passed: residuals.is_empty(), residuals })
}

/// Whether a linear subspace is isotropic for `b`: all pairwise pairings of
/// basis vectors vanish.
pub fn is_isotropic(s: &LinearSubspace, b: &SkewForm) -> Result<bool, ContactError> {
    let rows = s.basis_rows();
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            if !b.pair_rational(&rows[i], &rows[j])?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Result of searching for an antisymmetric form making `x` Legendrian.
///
/// `basis` spans the solution space of the linear system
/// `B(v, dv/dt_i) == 0`; `symbolic_pfaffian` is the Pfaffian of a generic
/// combination `sum l_m basis[m]` in the variables `l0, l1, ...`. `form` is a
/// nondegenerate solution when one exists (`None` when the solution space is
/// empty or consists entirely of degenerate forms).
#[derive(Clone, Debug)]
pub struct ContactFormSearch {
    pub solution_dim: usize,
    pub basis: Vec<SkewForm>,
    pub symbolic_pfaffian: MultiPoly,
    pub form: Option<SkewForm>,
}

/// Coordinate pairs `(i, j)`, `i < j`, in lexicographic order; the unknowns
/// of the contact-form linear system.
pub fn upper_pairs(size: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for i in 0..size {
        for j in i + 1..size {
            pairs.push((i, j));
        }
    }
    pairs
}

/// Searches for antisymmetric forms `B` with `B(v, dv/dt_i) == 0` for every
/// parameter. The conditions are linear in the entries of `B`; the solution
/// space is computed exactly, and a nondegenerate representative is picked by
/// a deterministic integer-point search on the symbolic Pfaffian.
///
/// Supported up to half-dimension 4 (ambient `P^7`).
pub fn find_contact_form(x: &ParamVariety) -> Result<ContactFormSearch, ContactError> {
    let size = x.coords().len();
    if !size.is_multiple_of(2) || size < 4 {
        return Err(ContactError::OddDimension(size));
    }
    let n = size / 2;
    if n > 4 {
        return Err(ContactError::UnsupportedDimension { n, max: 4 });
    }
    if x.params().len() != n - 1 {
        return Err(ContactError::WrongParameterCount {
            n,
            expected: n - 1,
            got: x.params().len(),
        });
    }

    let pairs = upper_pairs(size);
    let v = x.coords();
    // rows of the linear system, one per (parameter, t-monomial) pair
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for t in x.params() {
        let dv: Vec<MultiPoly> =
            v.iter().map(|c| c.differentiate(t).expect("own parameter")).collect();
        let pair_polys: Vec<MultiPoly> = pairs
            .iter()
            .map(|&(i, j)| &(&v[i] * &dv[j]) - &(&v[j] * &dv[i]))
            .collect();
        let mut monomials = std::collections::BTreeSet::new();
        for p in &pair_polys {
            for (exps, _) in p.terms() {
                monomials.insert(exps.clone());
            }
        }
        for exps in monomials {
            rows.push(pair_polys.iter().map(|p| p.coeff(&exps)).collect());
        }
    }

    let kernel = if rows.is_empty() {
        // no conditions at all: every antisymmetric form works
        (0..pairs.len())
            .map(|m| {
                let mut e = vec![MultiPoly::zero(&[]); pairs.len()];
                e[m] = MultiPoly::one(&[]);
                e
            })
            .collect()
    } else {
        PolyMatrix::from_rationals(rows).expect("nonempty system").rank_kernel().1
    };
    let solution_dim = kernel.len();

    let basis: Vec<SkewForm> = kernel
        .iter()
        .map(|vvec| {
            let entries: Vec<(usize, usize, Rational)> = pairs
                .iter()
                .zip(vvec)
                .map(|(&(i, j), p)| (i, j, p.constant_value().expect("constant kernel entry")))
                .collect();
            SkewForm::from_upper_entries(size, &entries).expect("antisymmetric by construction")
        })
        .collect();

    let l_names: Vec<String> = (0..solution_dim).map(|m| format!("l{}", m)).collect();
    let l_vars: Vec<&str> = l_names.iter().map(|s| s.as_str()).collect();
    let mut generic = vec![vec![MultiPoly::zero(&l_vars); size]; size];
    for (m, bm) in basis.iter().enumerate() {
        let lm = MultiPoly::var(&l_vars, &l_names[m]).expect("own variable");
        for i in 0..size {
            for j in 0..size {
                if !bm.entry(i, j).is_zero() {
                    generic[i][j] = &generic[i][j] + &lm.scale(bm.entry(i, j));
                }
            }
        }
    }
    let symbolic_pfaffian = pfaffian_of(&generic);

    let form = if symbolic_pfaffian.is_zero() {
        None
    } else {
        let mut current = symbolic_pfaffian.clone();
        let mut values = vec![Rational::zero(); solution_dim];
        for (m, name) in l_names.iter().enumerate() {
            let deg = current.degree_in(name).expect("own variable").unwrap_or(0);
            let mut chosen = None;
            for c in 0..=deg as i64 {
                let value = Rational::from_integer(c.into());
                let cand = current.subst_rational(name, &value).expect("own variable");
                if !cand.is_zero() {
                    chosen = Some((value, cand));
                    break;
                }
            }
            let (value, next) = chosen.expect("nonzero polynomial has a nonvanishing point");
            values[m] = value;
            current = next;
        }
        let mut matrix = vec![vec![Rational::zero(); size]; size];
        for (m, bm) in basis.iter().enumerate() {
            if values[m].is_zero() {
                continue;
            }
            for i in 0..size {
                for j in 0..size {
                    matrix[i][j] += &values[m] * bm.entry(i, j);
                }
            }
        }
        let flat: Vec<Rational> = matrix.iter().flatten().cloned().collect();
        let normalized = normalize_rational_vector(&flat);
        let matrix: Vec<Vec<Rational>> =
            normalized.chunks(size).map(|c| c.to_vec()).collect();
        Some(SkewForm::new(matrix).expect("normalized antisymmetric combination"))
    };

    Ok(ContactFormSearch { solution_dim, basis, symbolic_pfaffian, form })
}

/// Output of reducing a Legendrian cone with vertex inside a hyperplane.
#[derive(Clone, Debug)]
pub struct ConeReduction {
    pub vertex: ProjPoint,
    pub e1: LinearSubspace,
    pub reduced: ParamVariety,
    pub b1: SkewForm,
}

/// Reduces a Legendrian variety `x` contained in the hyperplane `h` (for a
/// nondegenerate form `b`): the vertex `v = -B^(-1) h` is adjoined, a
/// complementary direction `w` with `B(v, w) != 0` is split off, and `x` is
/// re-expressed in the symplectic subspace `E1 = {z : B(v,z) = B(w,z) = 0}`
/// with the restricted form `b1`.
pub fn cone_reduction(
    x: &ParamVariety,
    b: &SkewForm,
    h: &[Rational],
) -> Result<ConeReduction, ContactError> {
    check_shape(x, b)?;
    if h.len() != b.size() {
        return Err(ContactError::DimensionMismatch { expected: b.size(), got: h.len() });
    }
    if h.iter().all(|c| c.is_zero()) {
        return Err(ContactError::ZeroHyperplane);
    }
    if !legendrian_check(x, b)?.passed {
        return Err(ContactError::NotLegendrian);
    }
    // containment of x in h
    let mut pairing = MultiPoly::zero_over(x.params());
    for (hi, ci) in h.iter().zip(x.coords()) {
        pairing = &pairing + &ci.scale(hi);
    }
    if !pairing.is_zero() {
        return Err(ContactError::NotInHyperplane);
    }

    let b_inv = b.inverse_matrix()?;
    let size = b.size();
    let v: Vec<Rational> = (0..size)
        .map(|i| -(0..size).map(|j| &b_inv[i][j] * &h[j]).sum::<Rational>())
        .collect();
    let vertex = ProjPoint::new(v.clone())?;

    let mut w = None;
    for j in 0..size {
        let mut e = vec![Rational::zero(); size];
        e[j] = Rational::one();
        if !b.pair_rational(&v, &e)?.is_zero() {
            w = Some(e);
            break;
        }
    }
    let w = w.expect("nondegenerate form pairs the vertex with some coordinate vector");

    // E1 = joint kernel of the functionals B(v, .) and B(w, .)
    let rows: Vec<Vec<Rational>> = [&v, &w]
        .iter()
        .map(|u| {
            (0..size)
                .map(|j| (0..size).map(|i| &b.matrix[i][j] * &u[i]).sum::<Rational>())
                .collect()
        })
        .collect();
    let (_, kernel) = PolyMatrix::from_rationals(rows).expect("two functional rows").rank_kernel();
    let f_basis: Vec<Vec<Rational>> = kernel
        .iter()
        .map(|vrow| {
            vrow.iter().map(|p| p.constant_value().expect("constant kernel entry")).collect()
        })
        .collect();
    let e1 = LinearSubspace::from_vectors(f_basis.clone())?;

    let b1_rows: Vec<Vec<Rational>> = f_basis
        .iter()
        .map(|fi| {
            f_basis
                .iter()
                .map(|fj| b.pair_rational(fi, fj).expect("length checked"))
                .collect()
        })
        .collect();
    let b1 = SkewForm::new(b1_rows)?;

    // decomposition x = alpha v + beta w + z with z in E1
    let b_wv = b.pair_rational(&w, &v)?;
    let b_vw = b.pair_rational(&v, &w)?;
    let coords = x.coords();
    let b_w_x = pair_form_poly(b, &w, coords);
    let b_v_x = pair_form_poly(b, &v, coords);
    let alpha = b_w_x.scale(&b_wv.recip());
    let beta = b_v_x.scale(&b_vw.recip());
    let z: Vec<MultiPoly> = (0..size)
        .map(|i| &(coords[i].clone()) - &(&alpha.scale(&v[i]) + &beta.scale(&w[i])))
        .collect();

    // coordinates of z in the f-basis, via the Gram matrix of the basis
    let gram: Vec<Vec<Rational>> = f_basis
        .iter()
        .map(|fi| f_basis.iter().map(|fj| dot_rational(fi, fj)).collect())
        .collect();
    let gram_inv = rational_inverse(&gram).expect("basis Gram matrix is invertible");
    let fz: Vec<MultiPoly> = f_basis
        .iter()
        .map(|fi| {
            fi.iter()
                .zip(&z)
                .fold(MultiPoly::zero_over(x.params()), |acc, (c, p)| &acc + &p.scale(c))
        })
        .collect();
    let reduced_coords: Vec<MultiPoly> = (0..f_basis.len())
        .map(|i| {
            gram_inv[i]
                .iter()
                .zip(&fz)
                .fold(MultiPoly::zero_over(x.params()), |acc, (c, p)| &acc + &p.scale(c))
        })
        .collect();
    // verify the decomposition before handing the coordinates out
    for i in 0..size {
        let mut recomposed = &alpha.scale(&v[i]) + &beta.scale(&w[i]);
        for (c, f) in reduced_coords.iter().zip(&f_basis) {
            recomposed = &recomposed + &c.scale(&f[i]);
        }
        assert_eq!(recomposed, coords[i], "cone decomposition must recompose the variety");
    }
    let reduced = ParamVariety::new(x.params().to_vec(), reduced_coords)?;

    Ok(ConeReduction { vertex, e1, reduced, b1 })
}

fn dot_rational(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn pair_form_poly(b: &SkewForm, u: &[Rational], v: &[MultiPoly]) -> MultiPoly {
    let mut acc = MultiPoly::zero_over(v[0].vars());
    for i in 0..u.len() {
        if u[i].is_zero() {
            continue;
        }
        for j in 0..v.len() {
            if !b.matrix[i][j].is_zero() {
                acc = &acc + &v[j].scale(&(&u[i] * &b.matrix[i][j]));
            }
        }
    }
    acc
}

fn rational_inverse(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut aug: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            for j in 0..n {
                r.push(if i == j { Rational::one() } else { Rational::zero() });
            }
            r
        })
        .collect();
    for c in 0..n {
        let pivot = (c..n).find(|&r| !aug[r][c].is_zero())?;
        aug.swap(c, pivot);
        let inv = aug[c][c].clone().recip();
        for j in 0..2 * n {
            let scaled = &aug[c][j] * &inv;
            aug[c][j] = scaled;
        }
        for r in 0..n {
            if r != c && !aug[r][c].is_zero() {
                let f = aug[r][c].clone();
                for j in 0..2 * n {
                    let sub = &aug[c][j] * &f;
                    aug[r][j] -= sub;
                }
            }
        }
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}
