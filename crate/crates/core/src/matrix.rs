//! Matrices of polynomials and their exact determinants.
//!
//! The determinant of a polynomial matrix is found by evaluating every entry
//! at integer nodes `x = 0, 1, ..., D` where `D` bounds the determinant
//! degree, computing the scalar determinants by fraction-free elimination,
//! and interpolating the values back to coefficient form with Newton divided
//! differences. All steps are exact.

use crate::error::Error;
use crate::poly::Polynomial;
use crate::scalar::GaussianRational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    /// Builds a matrix from equally sized rows.
    pub fn from_rows(rows: Vec<Vec<Polynomial>>) -> Result<Self, Error> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::InvalidParams("ragged rows in matrix".into()));
        }
        Ok(PolyMatrix { rows: nrows, cols: ncols, entries: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    /// Entrywise evaluation at `x`.
    pub fn eval(&self, x: &GaussianRational) -> Vec<Vec<GaussianRational>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.entry(i, j).eval(x)).collect())
            .collect()
    }
}

/// Determinant of a scalar matrix by fraction-free (Bareiss) elimination
/// with row pivoting.
pub fn det_scalar(mut m: Vec<Vec<GaussianRational>>) -> Result<GaussianRational, Error> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::NotSquare { rows: n, cols: m.iter().map(Vec::len).max().unwrap_or(0) });
    }
    if n == 0 {
        return Ok(GaussianRational::one());
    }
    let mut sign = GaussianRational::one();
    let mut prev = GaussianRational::one();
    for r in 0..n - 1 {
        if m[r][r].is_zero() {
            let Some(s) = (r + 1..n).find(|&s| !m[s][r].is_zero()) else {
                return Ok(GaussianRational::zero());
            };
            m.swap(r, s);
            sign = -sign;
        }
        for i in r + 1..n {
            for j in r + 1..n {
                let num = &(&m[i][j] * &m[r][r]) - &(&m[i][r] * &m[r][j]);
                m[i][j] = num.div(&prev)?;
            }
            m[i][r] = GaussianRational::zero();
        }
        prev = m[r][r].clone();
    }
    Ok(&sign * &m[n - 1][n - 1])
}

/// Newton interpolation through `(nodes[i], values[i])`; the nodes must be
/// pairwise distinct.
pub fn interpolate(nodes: &[GaussianRational], values: &[GaussianRational]) -> Result<Polynomial, Error> {
    if nodes.len() != values.len() {
        return Err(Error::InvalidParams("interpolation data length mismatch".into()));
    }
    if nodes.is_empty() {
        return Ok(Polynomial::zero());
    }
    let n = nodes.len();
    let mut dd = values.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            let num = &dd[i] - &dd[i - 1];
            let den = &nodes[i] - &nodes[i - level];
            dd[i] = num.div(&den)?;
        }
    }
    let mut poly = Polynomial::constant(dd[n - 1].clone());
    for i in (0..n - 1).rev() {
        let root = Polynomial::from_coeffs(vec![-&nodes[i], GaussianRational::one()]);
        poly = &(&poly * &root) + &Polynomial::constant(dd[i].clone());
    }
    Ok(poly)
}

/// Exact determinant of a square polynomial matrix via node evaluation,
/// scalar elimination and interpolation.
pub fn det_exact(m: &PolyMatrix) -> Result<Polynomial, Error> {
    if m.rows != m.cols {
        return Err(Error::NotSquare { rows: m.rows, cols: m.cols });
    }
    let n = m.rows;
    if n == 0 {
        return Ok(Polynomial::one());
    }
    // Degree of the determinant is bounded by the sum over rows of the
    // largest entry degree in the row, and likewise over columns.
    let mut by_rows = 0usize;
    for i in 0..n {
        let Some(row_deg) = (0..n).filter_map(|j| m.entry(i, j).degree()).max() else {
            return Ok(Polynomial::zero());
        };
        by_rows += row_deg;
    }
    let mut by_cols = 0usize;
    for j in 0..n {
        let Some(col_deg) = (0..n).filter_map(|i| m.entry(i, j).degree()).max() else {
            return Ok(Polynomial::zero());
        };
        by_cols += col_deg;
    }
    let bound = by_rows.min(by_cols);
    let nodes: Vec<GaussianRational> =
        (0..=bound as i64).map(GaussianRational::from_int).collect();
    let values = nodes
        .iter()
        .map(|x| det_scalar(m.eval(x)))
        .collect::<Result<Vec<_>, _>>()?;
    interpolate(&nodes, &values)
}
