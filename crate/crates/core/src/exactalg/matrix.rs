use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use super::{AlgebraError, IntPolynomial, JsonInt};

/// Dense integer matrix, row-major, arbitrary precision entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self, AlgebraError> {
        if rows * cols != entries.len() {
            return Err(AlgebraError::Dimension(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from nested rows; all rows must share one length.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self, AlgebraError> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().position(|r| r.len() != cols) {
            return Err(AlgebraError::Dimension(format!(
                "row {bad} has length {}, expected {cols}",
                rows[bad].len()
            )));
        }
        let entries = rows
            .iter()
            .flat_map(|r| r.iter().cloned().map(Into::into))
            .collect();
        Self::new(rows.len(), cols, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.entries[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        if self.cols != rhs.rows {
            return Err(AlgebraError::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, v: &[BigInt]) -> Result<Vec<BigInt>, AlgebraError> {
        if v.len() != self.cols {
            return Err(AlgebraError::Dimension(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn trace(&self) -> Result<BigInt, AlgebraError> {
        self.require_square()?;
        Ok((0..self.rows).map(|i| self.get(i, i).clone()).sum())
    }

    fn require_square(&self) -> Result<(), AlgebraError> {
        if self.is_square() {
            Ok(())
        } else {
            Err(AlgebraError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    /// Determinant by Bareiss fraction-free elimination.
    pub fn determinant(&self) -> Result<BigInt, AlgebraError> {
        self.require_square()?;
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.to_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        Ok(sign * &a[n - 1][n - 1])
    }

    /// `det(ζI − self)` by the Samuelson–Berkowitz recurrence; no division
    /// is ever performed.
    pub fn charpoly(&self) -> Result<IntPolynomial, AlgebraError> {
        self.require_square()?;
        let n = self.rows;
        // Coefficients, highest degree first.
        let mut v: Vec<BigInt> = vec![BigInt::one()];
        for r in 0..n {
            // Leading (r+1)x(r+1) block split as [[A, C], [R, a_rr]].
            let mut t = Vec::with_capacity(r + 2);
            t.push(BigInt::one());
            t.push(-self.get(r, r).clone());
            // Column powers A^k C for k = 0..r-1.
            let mut col: Vec<BigInt> = (0..r).map(|i| self.get(i, r).clone()).collect();
            for _ in 0..r {
                let rc: BigInt = (0..r).map(|j| self.get(r, j) * &col[j]).sum();
                t.push(-rc);
                col = (0..r)
                    .map(|i| (0..r).map(|j| self.get(i, j) * &col[j]).sum())
                    .collect();
            }
            let mut next = vec![BigInt::zero(); r + 2];
            for (i, slot) in next.iter_mut().enumerate() {
                for (j, vj) in v.iter().enumerate().take(i + 1) {
                    *slot += &t[i - j] * vj;
                }
            }
            v = next;
        }
        v.reverse();
        Ok(IntPolynomial::new(v))
    }

    /// Primitive integer basis of the rational kernel `{x : self · x = 0}`.
    pub fn kernel_basis(&self) -> Vec<Vec<BigInt>> {
        let mut a = self.to_rows();
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            for i in 0..a.len() {
                if i == r || a[i][c].is_zero() {
                    continue;
                }
                let (f, g) = (a[r][c].clone(), a[i][c].clone());
                let pivot_row = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                    *x = &*x * &f - &g * y;
                }
                primitive(&mut a[i]);
            }
            pivots.push((r, c));
            r += 1;
        }
        let lcm = pivots
            .iter()
            .fold(BigInt::one(), |l, &(r, c)| l.lcm(&a[r][c]));
        let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        (0..self.cols)
            .filter(|c| !pivot_cols.contains(c))
            .map(|free| {
                let mut x = vec![BigInt::zero(); self.cols];
                x[free] = lcm.clone();
                for &(r, c) in &pivots {
                    x[c] = -(&a[r][free] * &lcm) / &a[r][c];
                }
                primitive(&mut x);
                x
            })
            .collect()
    }

    /// `selfᵀ · form · self == form`.
    pub fn preserves_form(&self, form: &IntMatrix) -> Result<bool, AlgebraError> {
        let lhs = self.transpose().checked_mul(form)?.checked_mul(self)?;
        Ok(&lhs == form)
    }
}

/// Divide a vector by the gcd of its entries.
fn primitive(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x /= &g;
        }
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        self.checked_mul(rhs).expect("matrix dimensions must agree")
    }
}

/// Serialized as a list of rows.
impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<JsonInt>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(JsonInt).collect())
            .collect();
        rows.serialize(s)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(ToString::to_string).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for i in 0..self.rows {
            let line: Vec<String> = (0..self.cols)
                .map(|j| format!("{:>width$}", cells[i * self.cols + j]))
                .collect();
            writeln!(f, "[ {} ]", line.join("  "))?;
        }
        Ok(())
    }
}
