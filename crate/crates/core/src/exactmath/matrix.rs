//! Matrices over `MultiPoly` with fraction-free elimination.
//!
//! Determinant, rank, and kernel all run Bareiss one-step elimination: every
//! intermediate entry is a minor of the input matrix, so the exact divisions
//! it performs cannot fail. Kernels are extracted by back-substitution over
//! polynomial fractions and returned denominator-free.

use num_traits::One;

use super::gcd::{poly_gcd, poly_gcd_many};
use super::{ExactMathError, MultiPoly, Rational};

/// One minor of a matrix: ascending row indices, ascending column indices,
/// and the corresponding subdeterminant.
pub type Minor = (Vec<usize>, Vec<usize>, MultiPoly);

/// Dense row-major matrix of polynomials over one shared variable list.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    vars: Vec<String>,
    entries: Vec<MultiPoly>,
}

impl PolyMatrix {
    pub fn from_rows(rows: Vec<Vec<MultiPoly>>) -> Result<Self, ExactMathError> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(ExactMathError::EmptyMatrix);
        }
        let cols = rows[0].len();
        let vars = rows[0][0].vars().to_vec();
        for row in &rows {
            if row.len() != cols {
                return Err(ExactMathError::RaggedRows);
            }
            for entry in row {
                if entry.vars() != vars.as_slice() {
                    return Err(ExactMathError::VariableMismatch);
                }
            }
        }
        Ok(PolyMatrix {
            rows: rows.len(),
            cols,
            vars,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Matrix of constants, stored as polynomials over no variables.
    pub fn from_rationals(rows: Vec<Vec<Rational>>) -> Result<Self, ExactMathError> {
        let rows = rows
            .into_iter()
            .map(|r| r.into_iter().map(|c| MultiPoly::constant(&[], c)).collect())
            .collect();
        Self::from_rows(rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn at(&self, r: usize, c: usize) -> &MultiPoly {
        &self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[MultiPoly] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<MultiPoly>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.rows * self.cols);
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.at(r, c).clone());
            }
        }
        PolyMatrix { rows: self.cols, cols: self.rows, vars: self.vars.clone(), entries }
    }

    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> Self {
        let mut entries = Vec::with_capacity(row_idx.len() * col_idx.len());
        for &r in row_idx {
            for &c in col_idx {
                entries.push(self.at(r, c).clone());
            }
        }
        PolyMatrix {
            rows: row_idx.len(),
            cols: col_idx.len(),
            vars: self.vars.clone(),
            entries,
        }
    }

    /// Determinant by fraction-free elimination.
    pub fn det(&self) -> Result<MultiPoly, ExactMathError> {
        if self.rows != self.cols {
            return Err(ExactMathError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let mut m = self.entries.clone();
        let idx = |r: usize, c: usize| r * n + c;
        let mut sign = false;
        let mut prev = MultiPoly::constant_over(&self.vars, Rational::one());
        for k in 0..n {
            if m[idx(k, k)].is_zero() {
                let swap = (k + 1..n).find(|&i| !m[idx(i, k)].is_zero());
                match swap {
                    None => return Ok(MultiPoly::zero_over(&self.vars)),
                    Some(i) => {
                        for c in 0..n {
                            m.swap(idx(k, c), idx(i, c));
                        }
                        sign = !sign;
                    }
                }
            }
            if k + 1 == n {
                break;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&m[idx(k, k)] * &m[idx(i, j)]) - &(&m[idx(i, k)] * &m[idx(k, j)]);
                    m[idx(i, j)] = num.div_exact(&prev).expect("Bareiss divisibility");
                }
                m[idx(i, k)] = MultiPoly::zero_over(&self.vars);
            }
            prev = m[idx(k, k)].clone();
        }
        let d = m[idx(n - 1, n - 1)].clone();
        Ok(if sign { -&d } else { d })
    }

    /// Rank over the fraction field, plus a normalized kernel basis (one
    /// vector per free column, ordered by free column index).
    pub fn rank_kernel(&self) -> (usize, Vec<Vec<MultiPoly>>) {
        let mut m = self.entries.clone();
        let idx = |r: usize, c: usize| r * self.cols + c;
        let mut prev = MultiPoly::constant_over(&self.vars, Rational::one());
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut next_row = 0;
        for c in 0..self.cols {
            let pivot = (next_row..self.rows).find(|&i| !m[idx(i, c)].is_zero());
            let Some(p) = pivot else { continue };
            if p != next_row {
                for j in 0..self.cols {
                    m.swap(idx(next_row, j), idx(p, j));
                }
            }
            for i in next_row + 1..self.rows {
                for j in c + 1..self.cols {
                    let num = &(&m[idx(next_row, c)] * &m[idx(i, j)])
                        - &(&m[idx(i, c)] * &m[idx(next_row, j)]);
                    m[idx(i, j)] = num.div_exact(&prev).expect("Bareiss divisibility");
                }
                m[idx(i, c)] = MultiPoly::zero_over(&self.vars);
            }
            prev = m[idx(next_row, c)].clone();
            pivots.push((next_row, c));
            next_row += 1;
        }
        let rank = pivots.len();
        let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        let mut kernel = Vec::new();
        for f in 0..self.cols {
            if pivot_cols.contains(&f) {
                continue;
            }
            let mut x: Vec<PolyFrac> =
                (0..self.cols).map(|_| PolyFrac::zero(&self.vars)).collect();
            x[f] = PolyFrac::one(&self.vars);
            for &(r, c) in pivots.iter().rev() {
                let mut s = PolyFrac::zero(&self.vars);
                for j in c + 1..self.cols {
                    if !x[j].num.is_zero() {
                        s = s.add(&x[j].scale_poly(&m[idx(r, j)]));
                    }
                }
                x[c] = s.neg().div_poly(&m[idx(r, c)]);
            }
            kernel.push(clear_fractions(&x));
        }
        (rank, kernel)
    }

    /// All order-k minors, enumerated lexicographically.
    pub fn all_minors(&self, order: usize) -> Result<Vec<Minor>, ExactMathError> {
        if order == 0 || order > self.rows || order > self.cols {
            return Err(ExactMathError::MinorOrder {
                order,
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut out = Vec::new();
        for row_idx in combinations(self.rows, order) {
            for col_idx in combinations(self.cols, order) {
                let d = self.submatrix(&row_idx, &col_idx).det()?;
                out.push((row_idx.clone(), col_idx, d));
            }
        }
        Ok(out)
    }
}

/// Ascending index combinations of size `k` from `0..n`, lexicographic.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut current: Vec<usize> = (0..k).collect();
    loop {
        out.push(current.clone());
        // advance to the next combination
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if current[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        current[i] += 1;
        for j in i + 1..k {
            current[j] = current[j - 1] + 1;
        }
    }
}

/// Quotient of polynomials, kept reduced by gcd.
struct PolyFrac {
    num: MultiPoly,
    den: MultiPoly,
}

impl PolyFrac {
    fn zero(vars: &[String]) -> Self {
        PolyFrac {
            num: MultiPoly::zero_over(vars),
            den: MultiPoly::constant_over(vars, Rational::one()),
        }
    }

    fn one(vars: &[String]) -> Self {
        PolyFrac {
            num: MultiPoly::constant_over(vars, Rational::one()),
            den: MultiPoly::constant_over(vars, Rational::one()),
        }
    }

    fn reduced(num: MultiPoly, den: MultiPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            let vars = num.vars().to_vec();
            return PolyFrac { num, den: MultiPoly::constant_over(&vars, Rational::one()) };
        }
        let g = poly_gcd(&num, &den);
        if g.is_constant() {
            PolyFrac { num, den }
        } else {
            PolyFrac {
                num: num.div_exact(&g).expect("gcd divides"),
                den: den.div_exact(&g).expect("gcd divides"),
            }
        }
    }

    fn add(&self, other: &Self) -> Self {
        let num = &(&self.num * &other.den) + &(&other.num * &self.den);
        let den = &self.den * &other.den;
        Self::reduced(num, den)
    }

    fn neg(&self) -> Self {
        PolyFrac { num: -&self.num, den: self.den.clone() }
    }

    fn scale_poly(&self, p: &MultiPoly) -> Self {
        Self::reduced(&self.num * p, self.den.clone())
    }

    fn div_poly(&self, p: &MultiPoly) -> Self {
        Self::reduced(self.num.clone(), &self.den * p)
    }
}

/// Common-denominator clearing for a fraction vector, then vector
/// normalization.
fn clear_fractions(x: &[PolyFrac]) -> Vec<MultiPoly> {
    let vars = x[0].num.vars().to_vec();
    let mut den_lcm = MultiPoly::constant_over(&vars, Rational::one());
    for f in x {
        let g = poly_gcd(&den_lcm, &f.den);
        den_lcm = (&den_lcm * &f.den).div_exact(&g).expect("gcd divides");
    }
    let cleared: Vec<MultiPoly> = x
        .iter()
        .map(|f| &f.num * &den_lcm.div_exact(&f.den).expect("lcm divisible by denominator"))
        .collect();
    normalize_poly_vector(&cleared)
}

/// Scales a polynomial vector to its canonical projective representative:
/// common polynomial factor removed, coefficients coprime integers, first
/// nonzero entry with positive graded-lex leading coefficient. The zero
/// vector is returned unchanged.
pub fn normalize_poly_vector(v: &[MultiPoly]) -> Vec<MultiPoly> {
    if v.iter().all(|p| p.is_zero()) {
        return v.to_vec();
    }
    let g = poly_gcd_many(v);
    let mut w: Vec<MultiPoly> = if g.is_constant() {
        v.to_vec()
    } else {
        v.iter()
            .map(|p| {
                if p.is_zero() {
                    p.clone()
                } else {
                    p.div_exact(&g).expect("vector gcd divides")
                }
            })
            .collect()
    };
    let mut content: Option<Rational> = None;
    for p in &w {
        if p.is_zero() {
            continue;
        }
        let c = p.rational_content();
        content = Some(match content {
            None => c,
            Some(acc) => {
                use num_integer::Integer;
                Rational::new(acc.numer().gcd(c.numer()), acc.denom().lcm(c.denom()))
            }
        });
    }
    let content = content.expect("nonzero vector has content");
    let inv = content.recip();
    for p in &mut w {
        *p = p.scale(&inv);
    }
    let first = w.iter().find(|p| !p.is_zero()).expect("nonzero vector");
    if num_traits::Signed::is_negative(first.leading_term_grlex().expect("nonzero").1) {
        for p in &mut w {
            *p = -&*p;
        }
    }
    w
}

/// Canonical projective representative of a rational vector: coprime integer
/// entries, first nonzero entry positive. The zero vector is unchanged.
pub fn normalize_rational_vector(v: &[Rational]) -> Vec<Rational> {
    let polys: Vec<MultiPoly> = v.iter().map(|c| MultiPoly::constant(&[], c.clone())).collect();
    normalize_poly_vector(&polys)
        .into_iter()
        .map(|p| p.constant_value().expect("constant polynomial"))
        .collect()
}

/// Sylvester resultant of `p` and `q` with respect to `var`; the other
/// variables ride along as coefficients. Errors when both inputs are zero.
pub fn resultant(
    p: &MultiPoly,
    q: &MultiPoly,
    var: &str,
) -> Result<MultiPoly, ExactMathError> {
    if p.is_zero() && q.is_zero() {
        return Err(ExactMathError::ResultantBothZero);
    }
    let vars = p.vars().to_vec();
    let dp = p.degree_in(var)?;
    let dq = q.degree_in(var)?;
    let (m, n) = match (dp, dq) {
        (None, _) | (_, None) => return Ok(MultiPoly::zero_over(&vars)),
        (Some(m), Some(n)) => (m as usize, n as usize),
    };
    let cp = p.coefficients_in(var)?;
    let cq = q.coefficients_in(var)?;
    if m == 0 && n == 0 {
        return Ok(MultiPoly::constant_over(&vars, Rational::one()));
    }
    if m == 0 {
        return Ok(cp[0].pow(n as u32));
    }
    if n == 0 {
        return Ok(cq[0].pow(m as u32));
    }
    let size = m + n;
    let zero = MultiPoly::zero_over(&vars);
    let mut rows: Vec<Vec<MultiPoly>> = Vec::with_capacity(size);
    for shift in 0..n {
        let mut row = vec![zero.clone(); size];
        for (k, c) in cp.iter().enumerate() {
            row[shift + m - k] = c.clone();
        }
        rows.push(row);
    }
    for shift in 0..m {
        let mut row = vec![zero.clone(); size];
        for (k, c) in cq.iter().enumerate() {
            row[shift + n - k] = c.clone();
        }
        rows.push(row);
    }
    PolyMatrix::from_rows(rows)?.det()
}
