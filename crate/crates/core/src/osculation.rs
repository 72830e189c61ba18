//! Jet matrices, osculating spaces, duals by osculating hyperplanes, and the
//! second fundamental form of a parametrized variety.
//!
//! For a variety with k parameters in `P^(2k+1)`, the second-order jet rows
//! generically span a hyperplane; the dual variety records that hyperplane's
//! coordinates. Self-duality is certified by comparing the dual against the
//! image of the variety under a polarity.

use num_traits::Zero;
use thiserror::Error;

use crate::contact::{legendrian_check, ContactError, SkewForm};
use crate::exactmath::{
    normalize_poly_vector, ExactMathError, MultiPoly, PolyMatrix, Rational,
};
use crate::projective::{
    hyperplane_containment, span_of_rows, LinearSubspace, ParamVariety, ProjectiveError,
};

#[derive(Debug, Error, PartialEq)]
pub enum OsculationError {
    #[error("variety with {params} parameters must live in P^(2k+1), got {coords} coordinates")]
    WrongAmbient { coords: usize, params: usize },
    #[error("parametrization vanishes at the evaluation point")]
    BasePointUndefined,
    #[error("first-order jet drops rank at the evaluation point")]
    NonImmersion,
    #[error("second-order jet has generic rank {rank}, need {expected} for a unique osculating hyperplane")]
    DegenerateOsculation { rank: usize, expected: usize },
    #[error("variety is not Legendrian for the given form")]
    NotLegendrian { residuals: Vec<String> },
    #[error("variety is contained in a hyperplane")]
    ContainedInHyperplane,
    #[error(transparent)]
    Contact(#[from] ContactError),
    #[error(transparent)]
    Projective(#[from] ProjectiveError),
    #[error(transparent)]
    Math(#[from] ExactMathError),
}

/// Multi-indices of total degree at most `order` over `k` parameters,
/// graded by degree and lexicographically descending within each degree, so
/// differentiation order is read off row position consistently: for k = 2,
/// `(0,0), (1,0), (0,1), (2,0), (1,1), (0,2)`.
pub fn jet_legend(k: usize, order: u32) -> Vec<Vec<u32>> {
    let mut legend = Vec::new();
    for d in 0..=order {
        let mut level = compositions(k, d);
        level.sort();
        level.reverse();
        legend.extend(level);
    }
    legend
}

fn compositions(k: usize, d: u32) -> Vec<Vec<u32>> {
    if k == 1 {
        return vec![vec![d]];
    }
    let mut out = Vec::new();
    for first in 0..=d {
        for mut rest in compositions(k - 1, d - first) {
            let mut v = vec![first];
            v.append(&mut rest);
            out.push(v);
        }
    }
    out
}

/// Rows of partial derivatives of a parametrization, one row per legend
/// multi-index (the zeroth row is the parametrization itself). Rows that
/// vanish identically are kept, so row position always matches the legend.
#[derive(Clone, Debug)]
pub struct JetMatrix {
    order: u32,
    legend: Vec<Vec<u32>>,
    matrix: PolyMatrix,
}

impl JetMatrix {
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn legend(&self) -> &[Vec<u32>] {
        &self.legend
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.matrix
    }
}

pub fn jet_matrix(x: &ParamVariety, order: u32) -> JetMatrix {
    let legend = jet_legend(x.params().len(), order);
    let rows: Vec<Vec<MultiPoly>> = legend
        .iter()
        .map(|alpha| {
            x.coords()
                .iter()
                .map(|c| {
                    let mut d = c.clone();
                    for (i, &e) in alpha.iter().enumerate() {
                        for _ in 0..e {
                            d = d.differentiate(&x.params()[i]).expect("own parameter");
                        }
                    }
                    d
                })
                .collect()
        })
        .collect();
    JetMatrix {
        order,
        legend,
        matrix: PolyMatrix::from_rows(rows).expect("legend is nonempty"),
    }
}

/// The order-th osculating space at a parameter point: the span of the jet
/// rows evaluated there. The base point must not vanish.
pub fn osculating_space(
    x: &ParamVariety,
    order: u32,
    at: &[Rational],
) -> Result<LinearSubspace, OsculationError> {
    let base = x
        .coords()
        .iter()
        .map(|c| c.eval(at))
        .collect::<Result<Vec<_>, _>>()?;
    if base.iter().all(|v| v.is_zero()) {
        return Err(OsculationError::BasePointUndefined);
    }
    let jet = jet_matrix(x, order);
    Ok(span_of_rows(jet.matrix(), at)?)
}

fn expect_legendrian_ambient(x: &ParamVariety) -> Result<usize, OsculationError> {
    let k = x.params().len();
    if x.coords().len() != 2 * k + 2 {
        return Err(OsculationError::WrongAmbient { coords: x.coords().len(), params: k });
    }
    Ok(k)
}

/// The variety of osculating hyperplanes: for `x` in `P^(2k+1)` whose
/// second-order jet has generic rank exactly `2k+1`, the unique hyperplane
/// containing the second osculating space at a generic point.
///
/// Computed as the signed maximal cofactors of independent jet rows, then
/// cross-checked against the kernel of the full jet matrix.
pub fn osculating_dual(x: &ParamVariety) -> Result<ParamVariety, OsculationError> {
    let k = expect_legendrian_ambient(x)?;
    let target = 2 * k + 1;
    let jet = jet_matrix(x, 2);
    let (rank, kernel) = jet.matrix().rank_kernel();
    if rank != target {
        return Err(OsculationError::DegenerateOsculation { rank, expected: target });
    }
    // greedy selection of a generically independent row set, in legend order
    let all_cols: Vec<usize> = (0..jet.matrix().cols()).collect();
    let mut selected: Vec<usize> = Vec::new();
    for r in 0..jet.matrix().rows() {
        if selected.len() == target {
            break;
        }
        let mut candidate = selected.clone();
        candidate.push(r);
        let sub = jet.matrix().submatrix(&candidate, &all_cols);
        if sub.rank_kernel().0 == candidate.len() {
            selected = candidate;
        }
    }
    assert_eq!(selected.len(), target, "generic rank guarantees a full row selection");
    let sub = jet.matrix().submatrix(&selected, &all_cols);
    let mut h = Vec::with_capacity(2 * k + 2);
    for j in 0..2 * k + 2 {
        let keep: Vec<usize> = (0..2 * k + 2).filter(|&c| c != j).collect();
        let minor = sub.submatrix(&(0..target).collect::<Vec<_>>(), &keep).det()?;
        h.push(if j % 2 == 0 { minor } else { -&minor });
    }
    let h = normalize_poly_vector(&h);

    // independent route: the kernel of the full jet matrix is spanned by the
    // same hyperplane
    assert_eq!(kernel.len(), 1, "corank-one jet has a line of hyperplanes");
    for i in 0..h.len() {
        for j in i + 1..h.len() {
            let cross = &(&h[i] * &kernel[0][j]) - &(&h[j] * &kernel[0][i]);
            assert!(cross.is_zero(), "cofactor dual must span the jet kernel");
        }
    }

    Ok(ParamVariety::new(x.params().to_vec(), h)?)
}

/// Space of second fundamental forms at a point: one symmetric k x k matrix
/// per hyperplane containing the first osculating space, spanned and reduced
/// to a basis.
#[derive(Clone, PartialEq, Debug)]
pub struct QuadFormSpace {
    pub dim: usize,
    pub basis: Vec<Vec<Vec<Rational>>>,
}

impl QuadFormSpace {
    /// Renders each basis form as a quadratic polynomial in the parameters.
    pub fn to_polynomials(&self, params: &[String]) -> Vec<MultiPoly> {
        let vars: Vec<&str> = params.iter().map(|s| s.as_str()).collect();
        self.basis
            .iter()
            .map(|q| {
                let k = q.len();
                let mut acc = MultiPoly::zero(&vars);
                for i in 0..k {
                    for j in 0..k {
                        if q[i][j].is_zero() {
                            continue;
                        }
                        let mut exps = vec![0u32; k];
                        exps[i] += 1;
                        exps[j] += 1;
                        acc = &acc + &MultiPoly::monomial(&vars, &exps, q[i][j].clone());
                    }
                }
                acc
            })
            .collect()
    }
}

/// Second fundamental form of `x` at a parameter point, as the space of
/// hyperplane-contracted Hessians. The point must be an immersion point.
pub fn second_fundamental_form(
    x: &ParamVariety,
    at: &[Rational],
) -> Result<QuadFormSpace, OsculationError> {
    let k = x.params().len();
    let base = x
        .coords()
        .iter()
        .map(|c| c.eval(at))
        .collect::<Result<Vec<_>, _>>()?;
    if base.iter().all(|v| v.is_zero()) {
        return Err(OsculationError::BasePointUndefined);
    }
    let jet1 = jet_matrix(x, 1);
    let rows: Vec<Vec<Rational>> = (0..jet1.matrix().rows())
        .map(|r| {
            jet1.matrix()
                .row(r)
                .iter()
                .map(|p| p.eval(at))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    let m = PolyMatrix::from_rationals(rows).expect("jet has rows");
    let (rank, hyperplanes) = m.rank_kernel();
    if rank != k + 1 {
        return Err(OsculationError::NonImmersion);
    }

    // Hessian of the parametrization at the point: one ambient vector per
    // unordered parameter pair
    let mut hessian = vec![vec![Vec::new(); k]; k];
    for i in 0..k {
        for j in 0..k {
            let values: Vec<Rational> = x
                .coords()
                .iter()
                .map(|c| {
                    c.differentiate(&x.params()[i])
                        .expect("own parameter")
                        .differentiate(&x.params()[j])
                        .expect("own parameter")
                        .eval(at)
                        .expect("point length checked")
                })
                .collect();
            hessian[i][j] = values;
        }
    }

    let mut vectorized: Vec<Vec<Rational>> = Vec::new();
    let mut forms: Vec<Vec<Vec<Rational>>> = Vec::new();
    for h in &hyperplanes {
        let hv: Vec<Rational> = h
            .iter()
            .map(|p| p.constant_value().expect("constant kernel entry"))
            .collect();
        let q: Vec<Vec<Rational>> = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| {
                        hv.iter().zip(&hessian[i][j]).map(|(a, b)| a * b).sum::<Rational>()
                    })
                    .collect()
            })
            .collect();
        let mut flat = Vec::new();
        for i in 0..k {
            for j in i..k {
                flat.push(q[i][j].clone());
            }
        }
        vectorized.push(flat);
        forms.push(q);
    }
    if vectorized.iter().all(|v| v.iter().all(|c| c.is_zero())) {
        return Ok(QuadFormSpace { dim: 0, basis: Vec::new() });
    }
    let span = LinearSubspace::from_vectors(vectorized)?;
    let basis: Vec<Vec<Vec<Rational>>> = span
        .basis_rows()
        .iter()
        .map(|flat| {
            let mut q = vec![vec![Rational::zero(); k]; k];
            let mut idx = 0;
            for i in 0..k {
                for j in i..k {
                    q[i][j] = flat[idx].clone();
                    q[j][i] = flat[idx].clone();
                    idx += 1;
                }
            }
            q
        })
        .collect();
    Ok(QuadFormSpace { dim: span.dim(), basis })
}

/// Verdict of the self-duality certificate. `residuals` holds the cross
/// products that kept the dual from matching the polarity image (empty on
/// success).
#[derive(Clone, PartialEq, Debug)]
pub struct SelfdualReport {
    pub legendrian: bool,
    pub osc2_generic_dim: usize,
    pub in_hyperplane: bool,
    pub selfdual: bool,
    pub residuals: Vec<String>,
}

/// Certifies self-duality of a Legendrian variety: checks the Legendrian
/// identities for `b`, nondegeneracy (not contained in a hyperplane, second
/// osculating spaces generically hyperplanes), computes the osculating dual,
/// and compares it with the polarity image `B x`. Each failed precondition
/// is reported as its own error.
pub fn selfdual_certificate(
    x: &ParamVariety,
    b: &SkewForm,
) -> Result<SelfdualReport, OsculationError> {
    let k = expect_legendrian_ambient(x)?;
    let cert = legendrian_check(x, b)?;
    if !cert.passed {
        return Err(OsculationError::NotLegendrian { residuals: cert.residuals });
    }
    if !hyperplane_containment(x).is_empty() {
        return Err(OsculationError::ContainedInHyperplane);
    }
    let dual = osculating_dual(x)?;
    let polarity = b.polarity()?;
    let image = polarity.apply(x)?;
    let mut residuals = Vec::new();
    for i in 0..dual.coords().len() {
        for j in i + 1..dual.coords().len() {
            let cross = &(&dual.coords()[i] * &image.coords()[j])
                - &(&dual.coords()[j] * &image.coords()[i]);
            if !cross.is_zero() {
                residuals.push(format!("dual x (B v): coords ({i}, {j}) give {cross}"));
            }
        }
    }
    Ok(SelfdualReport {
        legendrian: true,
        osc2_generic_dim: 2 * k,
        in_hyperplane: false,
        selfdual: residuals.is_empty(),
        residuals,
    })
}
