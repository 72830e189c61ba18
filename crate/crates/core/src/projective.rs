//! Projective points, parametrized varieties, linear subspaces, and
//! projective-linear maps over the rationals.
//!
//! Projective vectors are kept in a canonical representative: coprime integer
//! entries (for polynomials, no common polynomial factor either) with the
//! first nonzero entry positive. Equality tests still go through cross
//! products, so they do not depend on the normalization.

use num_traits::Zero;
use thiserror::Error;

use crate::exactmath::{
    normalize_poly_vector, normalize_rational_vector, ExactMathError, MultiPoly, PolyMatrix,
    Rational,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ProjectiveError {
    #[error("projective vector must have a nonzero coordinate")]
    ZeroVector,
    #[error("ambient dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("operands are parametrized by different parameter lists")]
    ParameterMismatch,
    #[error("invalid parametrized variety: {0}")]
    InvalidVariety(String),
    #[error("every row vanishes at the evaluation point")]
    AllRowsVanish,
    #[error("parametrization evaluates to the zero vector at this point")]
    EvaluatesToZero,
    #[error("projective-linear map must be invertible")]
    SingularMap,
    #[error("operation needs a one-parameter variety, this one has {params} parameters")]
    NotACurve { params: usize },
    #[error(transparent)]
    Math(#[from] ExactMathError),
}

/// Point of projective space with rational coordinates, stored canonically.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProjPoint {
    coords: Vec<Rational>,
}

impl ProjPoint {
    pub fn new(coords: Vec<Rational>) -> Result<Self, ProjectiveError> {
        if coords.iter().all(|c| c.is_zero()) {
            return Err(ProjectiveError::ZeroVector);
        }
        if coords.len() < 2 {
            return Err(ProjectiveError::DimensionMismatch { expected: 2, got: coords.len() });
        }
        Ok(ProjPoint { coords: normalize_rational_vector(&coords) })
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn ambient_dim(&self) -> usize {
        self.coords.len() - 1
    }

    /// Equality as projective points: all cross products vanish.
    pub fn proj_equal(&self, other: &Self) -> Result<bool, ProjectiveError> {
        if self.coords.len() != other.coords.len() {
            return Err(ProjectiveError::DimensionMismatch {
                expected: self.coords.len(),
                got: other.coords.len(),
            });
        }
        Ok(cross_products_vanish_rat(&self.coords, &other.coords))
    }
}

fn cross_products_vanish_rat(a: &[Rational], b: &[Rational]) -> bool {
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            if &a[i] * &b[j] != &a[j] * &b[i] {
                return false;
            }
        }
    }
    true
}

fn cross_products_vanish_poly(a: &[MultiPoly], b: &[MultiPoly]) -> bool {
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            if !(&(&a[i] * &b[j]) - &(&a[j] * &b[i])).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Rational parametrization of a projective variety: one polynomial
/// coordinate per ambient coordinate, all over the parameter list.
///
/// Construction removes any common polynomial factor and scales to coprime
/// integer coefficients, so distinct representatives of the same
/// parametrization construct identical values.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParamVariety {
    params: Vec<String>,
    coords: Vec<MultiPoly>,
}

impl ParamVariety {
    pub fn new(params: Vec<String>, coords: Vec<MultiPoly>) -> Result<Self, ProjectiveError> {
        if coords.len() < 2 {
            return Err(ProjectiveError::InvalidVariety(
                "need at least two coordinates".into(),
            ));
        }
        if params.is_empty() {
            return Err(ProjectiveError::InvalidVariety("need at least one parameter".into()));
        }
        for c in &coords {
            if c.vars() != params.as_slice() {
                return Err(ProjectiveError::InvalidVariety(format!(
                    "coordinate over variables [{}] does not match parameters [{}]",
                    c.vars().join(","),
                    params.join(",")
                )));
            }
        }
        if coords.iter().all(|c| c.is_zero()) {
            return Err(ProjectiveError::ZeroVector);
        }
        Ok(ParamVariety { params, coords: normalize_poly_vector(&coords) })
    }

    /// Builds from the text format, one polynomial per coordinate.
    pub fn parse(params: &[&str], coords: &[&str]) -> Result<Self, ProjectiveError> {
        let polys = coords
            .iter()
            .map(|s| crate::exactmath::parse_poly(s, params))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(params.iter().map(|s| s.to_string()).collect(), polys)
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn coords(&self) -> &[MultiPoly] {
        &self.coords
    }

    pub fn ambient_dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn eval(&self, at: &[Rational]) -> Result<ProjPoint, ProjectiveError> {
        let values = self
            .coords
            .iter()
            .map(|c| c.eval(at))
            .collect::<Result<Vec<_>, _>>()?;
        if values.iter().all(|v| v.is_zero()) {
            return Err(ProjectiveError::EvaluatesToZero);
        }
        ProjPoint::new(values)
    }

    /// Equality as parametrized maps: cross products vanish identically.
    pub fn proj_equal(&self, other: &Self) -> Result<bool, ProjectiveError> {
        if self.params != other.params {
            return Err(ProjectiveError::ParameterMismatch);
        }
        if self.coords.len() != other.coords.len() {
            return Err(ProjectiveError::DimensionMismatch {
                expected: self.coords.len(),
                got: other.coords.len(),
            });
        }
        Ok(cross_products_vanish_poly(&self.coords, &other.coords))
    }

    /// The curve in the chart at infinity: coefficient reversal of every
    /// coordinate at the common maximal degree, i.e. the substitution
    /// `t = 1/s` with denominators cleared (the new parameter keeps the old
    /// name). Only defined for one-parameter varieties.
    pub fn parameter_inversion(&self) -> Result<Self, ProjectiveError> {
        if self.params.len() != 1 {
            return Err(ProjectiveError::NotACurve { params: self.params.len() });
        }
        let var = self.params[0].clone();
        let d = self
            .coords
            .iter()
            .filter_map(|c| c.degree_in(&var).expect("own parameter"))
            .max()
            .expect("nonzero coordinate exists");
        let mut reversed = Vec::with_capacity(self.coords.len());
        for c in self.coords.iter() {
            let coeffs = c.coefficients_in(&var)?;
            let mut padded = vec![MultiPoly::zero_over(&self.params); d as usize + 1];
            for (k, coeff) in coeffs.into_iter().enumerate() {
                padded[d as usize - k] = coeff;
            }
            reversed.push(MultiPoly::from_coefficients(&var, &padded)?);
        }
        Self::new(self.params.clone(), reversed)
    }
}

/// Linear subspace of the ambient vector space, stored as a reduced
/// row-echelon basis with canonically scaled rows.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearSubspace {
    ambient_coords: usize,
    basis: PolyMatrix,
}

impl LinearSubspace {
    pub fn from_vectors(vectors: Vec<Vec<Rational>>) -> Result<Self, ProjectiveError> {
        if vectors.is_empty() || vectors[0].is_empty() {
            return Err(ProjectiveError::ZeroVector);
        }
        let ambient_coords = vectors[0].len();
        for v in &vectors {
            if v.len() != ambient_coords {
                return Err(ProjectiveError::DimensionMismatch {
                    expected: ambient_coords,
                    got: v.len(),
                });
            }
        }
        let reduced = rref(vectors);
        if reduced.is_empty() {
            return Err(ProjectiveError::ZeroVector);
        }
        let rows: Vec<Vec<Rational>> =
            reduced.iter().map(|r| normalize_rational_vector(r)).collect();
        Ok(LinearSubspace {
            ambient_coords,
            basis: PolyMatrix::from_rationals(rows).expect("nonempty echelon basis"),
        })
    }

    /// Linear (vector-space) dimension of the subspace.
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    /// Dimension of the projectivization.
    pub fn projective_dim(&self) -> usize {
        self.basis.rows() - 1
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_coords - 1
    }

    pub fn basis(&self) -> &PolyMatrix {
        &self.basis
    }

    pub fn basis_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.basis.rows())
            .map(|r| {
                self.basis
                    .row(r)
                    .iter()
                    .map(|p| p.constant_value().expect("constant basis entry"))
                    .collect()
            })
            .collect()
    }

    pub fn contains_point(&self, p: &ProjPoint) -> Result<bool, ProjectiveError> {
        if p.coords().len() != self.ambient_coords {
            return Err(ProjectiveError::DimensionMismatch {
                expected: self.ambient_coords,
                got: p.coords().len(),
            });
        }
        let mut rows = self.basis_rows();
        rows.push(p.coords().to_vec());
        let m = PolyMatrix::from_rationals(rows).expect("nonempty");
        let (rank, _) = m.rank_kernel();
        Ok(rank == self.basis.rows())
    }
}

/// Span of the rows of a polynomial matrix evaluated at a parameter point.
/// Rows that vanish at the point are dropped; it is an error for all of them
/// to vanish.
pub fn span_of_rows(m: &PolyMatrix, at: &[Rational]) -> Result<LinearSubspace, ProjectiveError> {
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for r in 0..m.rows() {
        let row = m
            .row(r)
            .iter()
            .map(|p| p.eval(at))
            .collect::<Result<Vec<_>, _>>()?;
        if row.iter().any(|c| !c.is_zero()) {
            rows.push(row);
        }
    }
    if rows.is_empty() {
        return Err(ProjectiveError::AllRowsVanish);
    }
    LinearSubspace::from_vectors(rows)
}

fn rref(mut m: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    let nr = m.len();
    let nc = m[0].len();
    let mut pivot_row = 0;
    for c in 0..nc {
        if pivot_row == nr {
            break;
        }
        let Some(p) = (pivot_row..nr).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(pivot_row, p);
        let inv = m[pivot_row][c].clone().recip();
        for j in c..nc {
            let scaled = &m[pivot_row][j] * &inv;
            m[pivot_row][j] = scaled;
        }
        for r in 0..nr {
            if r != pivot_row && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                for j in c..nc {
                    let sub = &m[pivot_row][j] * &f;
                    m[r][j] -= sub;
                }
            }
        }
        pivot_row += 1;
    }
    m.retain(|row| row.iter().any(|c| !c.is_zero()));
    m
}

/// Invertible projective-linear map, as a square rational matrix acting on
/// coordinate columns.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProjMap {
    matrix: Vec<Vec<Rational>>,
}

impl ProjMap {
    pub fn new(matrix: Vec<Vec<Rational>>) -> Result<Self, ProjectiveError> {
        let n = matrix.len();
        if n == 0 {
            return Err(ProjectiveError::ZeroVector);
        }
        for row in &matrix {
            if row.len() != n {
                return Err(ProjectiveError::DimensionMismatch { expected: n, got: row.len() });
            }
        }
        let det = PolyMatrix::from_rationals(matrix.clone())
            .expect("nonempty square matrix")
            .det()
            .expect("square matrix");
        if det.is_zero() {
            return Err(ProjectiveError::SingularMap);
        }
        Ok(ProjMap { matrix })
    }

    /// Identity on a space with `coords` homogeneous coordinates.
    pub fn identity(coords: usize) -> Self {
        let matrix = (0..coords)
            .map(|i| {
                (0..coords)
                    .map(|j| if i == j { Rational::from_integer(1.into()) } else { Rational::zero() })
                    .collect()
            })
            .collect();
        ProjMap { matrix }
    }

    /// Coordinate reversal `(x_0 : ... : x_N) -> (x_N : ... : x_0)`.
    pub fn reversal(coords: usize) -> Self {
        let matrix = (0..coords)
            .map(|i| {
                (0..coords)
                    .map(|j| {
                        if i + j == coords - 1 {
                            Rational::from_integer(1.into())
                        } else {
                            Rational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        ProjMap { matrix }
    }

    /// Diagonal scaling; every entry must be nonzero.
    pub fn diagonal(entries: Vec<Rational>) -> Result<Self, ProjectiveError> {
        if entries.iter().any(|e| e.is_zero()) {
            return Err(ProjectiveError::SingularMap);
        }
        if entries.is_empty() {
            return Err(ProjectiveError::ZeroVector);
        }
        let n = entries.len();
        let matrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { entries[i].clone() } else { Rational::zero() })
                    .collect()
            })
            .collect();
        Ok(ProjMap { matrix })
    }

    pub fn matrix(&self) -> &[Vec<Rational>] {
        &self.matrix
    }

    pub fn size(&self) -> usize {
        self.matrix.len()
    }

    /// Composition acting as `self` after `other`.
    pub fn compose(&self, other: &Self) -> Result<Self, ProjectiveError> {
        if self.size() != other.size() {
            return Err(ProjectiveError::DimensionMismatch {
                expected: self.size(),
                got: other.size(),
            });
        }
        let n = self.size();
        let matrix: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n).map(|k| &self.matrix[i][k] * &other.matrix[k][j]).sum::<Rational>()
                    })
                    .collect()
            })
            .collect();
        Ok(ProjMap { matrix })
    }

    pub fn apply_point(&self, p: &ProjPoint) -> Result<ProjPoint, ProjectiveError> {
        if p.coords().len() != self.size() {
            return Err(ProjectiveError::DimensionMismatch {
                expected: self.size(),
                got: p.coords().len(),
            });
        }
        let coords = self
            .matrix
            .iter()
            .map(|row| row.iter().zip(p.coords()).map(|(a, b)| a * b).sum::<Rational>())
            .collect();
        ProjPoint::new(coords)
    }

    pub fn apply(&self, x: &ParamVariety) -> Result<ParamVariety, ProjectiveError> {
        if x.coords().len() != self.size() {
            return Err(ProjectiveError::DimensionMismatch {
                expected: self.size(),
                got: x.coords().len(),
            });
        }
        let zero = MultiPoly::zero_over(x.params());
        let coords: Vec<MultiPoly> = self
            .matrix
            .iter()
            .map(|row| {
                row.iter()
                    .zip(x.coords())
                    .fold(zero.clone(), |acc, (a, c)| &acc + &c.scale(a))
            })
            .collect();
        ParamVariety::new(x.params().to_vec(), coords)
    }
}

/// Basis of the space of hyperplanes containing the image of `x`: the kernel
/// of the coefficient matrix (one row per monomial, one column per
/// coordinate). Empty exactly when the variety is nondegenerate.
pub fn hyperplane_containment(x: &ParamVariety) -> Vec<Vec<Rational>> {
    let mut monomials: std::collections::BTreeSet<Vec<u32>> = std::collections::BTreeSet::new();
    for c in x.coords() {
        for (exps, _) in c.terms() {
            monomials.insert(exps.clone());
        }
    }
    let rows: Vec<Vec<Rational>> = monomials
        .iter()
        .map(|exps| x.coords().iter().map(|c| c.coeff(exps)).collect())
        .collect();
    let m = PolyMatrix::from_rationals(rows).expect("variety has at least one monomial");
    let (_, kernel) = m.rank_kernel();
    kernel
        .into_iter()
        .map(|v| {
            v.into_iter()
                .map(|p| p.constant_value().expect("constant kernel entry"))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{parse_poly, rat_int};

    fn pt(coords: &[i64]) -> ProjPoint {
        ProjPoint::new(coords.iter().map(|&c| rat_int(c)).collect()).unwrap()
    }

    #[test]
    fn proj_equal_ignores_scaling() {
        assert!(pt(&[1, 2, 3]).proj_equal(&pt(&[2, 4, 6])).unwrap());
        assert!(!pt(&[1, 0, 0]).proj_equal(&pt(&[0, 1, 0])).unwrap());
        assert!(pt(&[1, 2]).proj_equal(&pt(&[1, 2, 3])).is_err());
    }

    #[test]
    fn points_normalize_to_coprime_integers() {
        let p = ProjPoint::new(vec![rat_int(0), crate::exactmath::rat(-1, 2), rat_int(2)]).unwrap();
        assert_eq!(p.coords(), &[rat_int(0), rat_int(1), rat_int(-4)]);
    }

    #[test]
    fn variety_construction_removes_common_factors() {
        let x = ParamVariety::parse(&["t"], &["2*t^2 + 2*t", "4*t"]).unwrap();
        assert_eq!(x.coords()[0], parse_poly("t + 1", &["t"]).unwrap());
        assert_eq!(x.coords()[1], parse_poly("2", &["t"]).unwrap());
        assert!(ParamVariety::parse(&["t"], &["0", "0"]).is_err());
    }

    #[test]
    fn twisted_cubic_reverses_under_the_reversal_map() {
        let c = ParamVariety::parse(&["t"], &["1", "t", "t^2", "t^3"]).unwrap();
        let rev = ProjMap::reversal(4).apply(&c).unwrap();
        let expected = ParamVariety::parse(&["t"], &["t^3", "t^2", "t", "1"]).unwrap();
        assert_eq!(rev, expected);
        assert!(rev.proj_equal(&expected).unwrap());
    }

    #[test]
    fn parameter_inversion_reverses_coefficients() {
        let c = ParamVariety::parse(&["t"], &["1", "t", "t^2"]).unwrap();
        let inv = c.parameter_inversion().unwrap();
        assert_eq!(inv, ParamVariety::parse(&["t"], &["t^2", "t", "1"]).unwrap());
        let two = ParamVariety::parse(&["t1", "t2"], &["1", "t1", "t2"]).unwrap();
        assert_eq!(two.parameter_inversion(), Err(ProjectiveError::NotACurve { params: 2 }));
    }

    #[test]
    fn evaluation_produces_projective_points() {
        let c = ParamVariety::parse(&["t"], &["1", "t", "t^2", "t^3"]).unwrap();
        assert_eq!(c.eval(&[rat_int(2)]).unwrap(), pt(&[1, 2, 4, 8]));
        let coordinate_pair = ParamVariety::parse(&["t1", "t2"], &["t1", "t2"]).unwrap();
        assert_eq!(
            coordinate_pair.eval(&[rat_int(0), rat_int(0)]),
            Err(ProjectiveError::EvaluatesToZero)
        );
    }

    #[test]
    fn planar_curve_has_its_plane_as_hyperplane() {
        let c = ParamVariety::parse(&["t"], &["1", "t", "t^2", "0"]).unwrap();
        let planes = hyperplane_containment(&c);
        assert_eq!(planes, vec![vec![rat_int(0), rat_int(0), rat_int(0), rat_int(1)]]);
        let cubic = ParamVariety::parse(&["t"], &["1", "t", "t^2", "t^3"]).unwrap();
        assert!(hyperplane_containment(&cubic).is_empty());
    }

    #[test]
    fn subspace_span_and_membership() {
        let m = PolyMatrix::from_rows(vec![
            vec![
                parse_poly("1", &["t"]).unwrap(),
                parse_poly("t", &["t"]).unwrap(),
                parse_poly("t^2", &["t"]).unwrap(),
                parse_poly("t^3", &["t"]).unwrap(),
            ],
            vec![
                parse_poly("0", &["t"]).unwrap(),
                parse_poly("1", &["t"]).unwrap(),
                parse_poly("2*t", &["t"]).unwrap(),
                parse_poly("3*t^2", &["t"]).unwrap(),
            ],
            vec![
                parse_poly("0", &["t"]).unwrap(),
                parse_poly("0", &["t"]).unwrap(),
                parse_poly("2", &["t"]).unwrap(),
                parse_poly("6*t", &["t"]).unwrap(),
            ],
        ])
        .unwrap();
        let s = span_of_rows(&m, &[rat_int(0)]).unwrap();
        assert_eq!(s.dim(), 3);
        assert_eq!(s.projective_dim(), 2);
        assert!(s.contains_point(&pt(&[1, 1, 1, 0])).unwrap());
        assert!(!s.contains_point(&pt(&[0, 0, 0, 1])).unwrap());
        assert_eq!(
            s.basis_rows(),
            vec![
                vec![rat_int(1), rat_int(0), rat_int(0), rat_int(0)],
                vec![rat_int(0), rat_int(1), rat_int(0), rat_int(0)],
                vec![rat_int(0), rat_int(0), rat_int(1), rat_int(0)],
            ]
        );
    }

    #[test]
    fn maps_compose_and_reject_singular_matrices() {
        let rev = ProjMap::reversal(3);
        let diag = ProjMap::diagonal(vec![rat_int(1), rat_int(-1), rat_int(2)]).unwrap();
        let both = rev.compose(&diag).unwrap();
        let p = pt(&[1, 1, 1]);
        let lhs = both.apply_point(&p).unwrap();
        let rhs = rev.apply_point(&diag.apply_point(&p).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        assert!(ProjMap::diagonal(vec![rat_int(1), rat_int(0)]).is_err());
        assert_eq!(
            ProjMap::new(vec![
                vec![rat_int(1), rat_int(2)],
                vec![rat_int(2), rat_int(4)],
            ]),
            Err(ProjectiveError::SingularMap)
        );
    }
}
