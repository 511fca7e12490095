//! Dense complex matrices.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex64;

#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix {
            rows,
            cols,
            data: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    /// Panics unless `data.len() == rows * cols`.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<C64>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        ComplexMatrix { rows, cols, data }
    }

    pub fn from_real(rows: usize, cols: usize, data: &[f64]) -> Self {
        ComplexMatrix::from_vec(rows, cols, data.iter().map(|x| C64::new(*x, 0.0)).collect())
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend_from_slice(row);
        }
        ComplexMatrix::from_vec(r, c, data)
    }

    /// A column vector.
    pub fn column(v: &[C64]) -> Self {
        ComplexMatrix::from_vec(v.len(), 1, v.to_vec())
    }

    /// A row vector.
    pub fn row(v: &[C64]) -> Self {
        ComplexMatrix::from_vec(1, v.len(), v.to_vec())
    }

    pub fn diag(v: &[C64]) -> Self {
        let mut m = ComplexMatrix::zeros(v.len(), v.len());
        for (i, x) in v.iter().enumerate() {
            m[(i, i)] = *x;
        }
        m
    }

    pub fn scalar(z: C64) -> Self {
        ComplexMatrix::from_vec(1, 1, vec![z])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn col(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn matmul(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(self.rows, self.cols, other.rows, other.cols));
        }
        let mut out = ComplexMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.data[k * other.cols + j];
                }
            }
        }
        Ok(out)
    }

    /// Kronecker product, `self` being the more significant factor.
    pub fn kron(&self, other: &ComplexMatrix) -> ComplexMatrix {
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut out = ComplexMatrix::zeros(r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self[(i, j)];
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out[(i * other.rows + k, j * other.cols + l)] = a * other[(k, l)];
                    }
                }
            }
        }
        out
    }

    pub fn kron_all(ms: &[ComplexMatrix]) -> ComplexMatrix {
        ms.iter().fold(ComplexMatrix::scalar(C64::new(1.0, 0.0)), |acc, m| acc.kron(m))
    }

    pub fn adjoint(&self) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn transpose(&self) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    pub fn conj(&self) -> ComplexMatrix {
        ComplexMatrix::from_vec(self.rows, self.cols, self.data.iter().map(|z| z.conj()).collect())
    }

    pub fn scale(&self, z: C64) -> ComplexMatrix {
        ComplexMatrix::from_vec(self.rows, self.cols, self.data.iter().map(|x| x * z).collect())
    }

    pub fn scale_real(&self, r: f64) -> ComplexMatrix {
        self.scale(C64::new(r, 0.0))
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Entrywise max-norm of `self - other`; infinite on shape mismatch.
    pub fn max_diff(&self, other: &ComplexMatrix) -> f64 {
        if self.shape() != other.shape() {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &ComplexMatrix, tol: f64) -> bool {
        self.max_diff(other) <= tol
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.rows == self.cols
            && self
                .adjoint()
                .matmul(self)
                .map(|m| m.approx_eq(&ComplexMatrix::identity(self.rows), tol))
                .unwrap_or(false)
    }

    /// `[[ [re, im], ... ], ...]`, one inner array per row.
    pub fn to_json_value(&self) -> serde_json::Value {
        let rows: Vec<Vec<[f64; 2]>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| [self[(i, j)].re, self[(i, j)].im]).collect())
            .collect();
        serde_json::to_value(rows).expect("finite floats serialize")
    }

    pub fn from_json_value(v: &serde_json::Value) -> Result<ComplexMatrix> {
        let rows: Vec<Vec<[f64; 2]>> =
            serde_json::from_value(v.clone()).map_err(|e| Error::InvalidDiagram(format!("bad matrix json: {e}")))?;
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidDiagram("ragged matrix rows".into()));
        }
        Ok(ComplexMatrix::from_vec(
            r,
            c,
            rows.into_iter().flatten().map(|[re, im]| C64::new(re, im)).collect(),
        ))
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.shape(), rhs.shape(), "shape mismatch in add");
        ComplexMatrix::from_vec(self.rows, self.cols, self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.shape(), rhs.shape(), "shape mismatch in sub");
        ComplexMatrix::from_vec(self.rows, self.cols, self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect())
    }
}

/// Panics on shape mismatch; use [`ComplexMatrix::matmul`] for a checked product.
impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs).expect("shape mismatch in mul")
    }
}

impl fmt::Display for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| {
                    let z = self[(i, j)];
                    format!("{:+.4}{:+.4}i", z.re, z.im)
                })
                .collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CompareMode {
    Exact,
    UpToGlobalScalar,
    UpToGlobalPhase,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Comparison {
    pub equal: bool,
    /// The witness `c` with `a ≈ c·b`.
    pub ratio: Option<C64>,
}

/// Compares `a` against `b`.
///
/// The returned ratio `c` satisfies `a ≈ c·b`; it is read off the entry of
/// `b` with the largest modulus (first such entry in row-major order). So
/// comparing `a` with `2a` gives `c = 1/2`.
pub fn equal_matrices(a: &ComplexMatrix, b: &ComplexMatrix, mode: CompareMode, tol: f64) -> Result<Comparison> {
    if a.shape() != b.shape() {
        return Err(Error::DimensionMismatch(a.rows, a.cols, b.rows, b.cols));
    }
    if mode == CompareMode::Exact {
        let equal = a.approx_eq(b, tol);
        return Ok(Comparison {
            equal,
            ratio: Some(C64::new(1.0, 0.0)),
        });
    }
    let mut best = 0;
    for (k, z) in b.data.iter().enumerate() {
        if z.norm() > b.data[best].norm() {
            best = k;
        }
    }
    if b.data.is_empty() || b.data[best].norm() <= tol {
        // b vanishes: only a vanishing a matches, with any nonzero witness.
        let equal = a.max_abs() <= tol;
        return Ok(Comparison {
            equal,
            ratio: equal.then_some(C64::new(1.0, 0.0)),
        });
    }
    let c = a.data[best] / b.data[best];
    let mut equal = c.norm() > tol && a.approx_eq(&b.scale(c), tol);
    if mode == CompareMode::UpToGlobalPhase && (c.norm() - 1.0).abs() > tol {
        equal = false;
    }
    Ok(Comparison { equal, ratio: Some(c) })
}
