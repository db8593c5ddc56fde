#![allow(clippy::needless_range_loop)]
//! Exact integer linear algebra: determinants, Smith normal form, and the
//! inertia (signature, nullity) of symmetric integer matrices.
//!
//! Entries are stored as `i64`; every elimination runs over arbitrary
//! precision integers or rationals so intermediate growth never overflows.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<i64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        Ok(IntMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn diagonal(entries: &[i64]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, &e) in entries.iter().enumerate() {
            m.set(i, i, e);
        }
        m
    }

    /// Builds a matrix from rows; all rows must have equal length.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::Dimension("ragged rows".into()));
            }
            data.extend_from_slice(r);
        }
        Ok(IntMatrix { rows: rows.len(), cols, data })
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

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// `selfᵀ · self`.
    pub fn gram(&self) -> IntMatrix {
        let mut g = IntMatrix::zeros(self.cols, self.cols);
        for a in 0..self.cols {
            for b in a..self.cols {
                let s: i64 = (0..self.rows).map(|i| self.get(i, a) * self.get(i, b)).sum();
                g.set(a, b, s);
                g.set(b, a, s);
            }
        }
        g
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Copy with row and column `k` removed.
    pub fn delete_row_col(&self, k: usize) -> IntMatrix {
        let keep: Vec<usize> = (0..self.rows).filter(|&i| i != k).collect();
        let keep_c: Vec<usize> = (0..self.cols).filter(|&j| j != k).collect();
        let mut out = IntMatrix::zeros(keep.len(), keep_c.len());
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep_c.iter().enumerate() {
                out.set(a, b, self.get(i, j));
            }
        }
        out
    }

    fn to_big(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|&v| BigInt::from(v)).collect()).collect()
    }
}

impl fmt::Display for IntMatrix {
    /// Bracket layout, one row per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.data.iter().map(|v| v.to_string().len()).max().unwrap_or(1);
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:>width$}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Square symmetric integer matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "IntMatrix", into = "IntMatrix")]
pub struct IntSymMatrix(IntMatrix);

impl IntSymMatrix {
    pub fn new(m: IntMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotSquare { rows: m.rows, cols: m.cols });
        }
        if !m.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        Ok(IntSymMatrix(m))
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Self::new(IntMatrix::from_rows(rows)?)
    }

    pub fn zeros(n: usize) -> Self {
        IntSymMatrix(IntMatrix::zeros(n, n))
    }

    pub fn dim(&self) -> usize {
        self.0.rows
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.0.get(i, j)
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.0
    }

    /// Adds `delta` to diagonal entry `i`.
    pub fn bump_diagonal(&self, i: usize, delta: i64) -> IntSymMatrix {
        let mut m = self.0.clone();
        m.set(i, i, m.get(i, i) + delta);
        IntSymMatrix(m)
    }

    /// `PᵀMP` for the permutation sending basis vector `j` to `perm[j]`.
    pub fn permute(&self, perm: &[usize]) -> IntSymMatrix {
        let n = self.dim();
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, self.get(perm[i], perm[j]));
            }
        }
        IntSymMatrix(m)
    }
}

impl TryFrom<IntMatrix> for IntSymMatrix {
    type Error = Error;
    fn try_from(m: IntMatrix) -> Result<Self> {
        IntSymMatrix::new(m)
    }
}

impl From<IntSymMatrix> for IntMatrix {
    fn from(m: IntSymMatrix) -> IntMatrix {
        m.0
    }
}

impl fmt::Display for IntSymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn det_exact(m: &IntMatrix) -> Result<BigInt> {
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.rows, cols: m.cols });
    }
    let n = m.rows;
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a = m.to_big();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
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

/// Invariant factors of an integer matrix.
///
/// `invariant_factors` has length `min(rows, cols)`: the nonzero factors in
/// divisibility order followed by zeros.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnfResult {
    pub invariant_factors: Vec<BigInt>,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.invariant_factors.iter().filter(|f| !f.is_zero()).count()
    }

    /// Factors as `i64`, or `None` if any does not fit.
    pub fn factors_i64(&self) -> Option<Vec<i64>> {
        self.invariant_factors.iter().map(|f| f.to_i64()).collect()
    }

    /// True iff every invariant factor equals 1.
    pub fn is_unimodular_chain(&self) -> bool {
        self.invariant_factors.iter().all(|f| f.is_one())
    }
}

impl fmt::Display for SnfResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.invariant_factors.iter().map(|x| x.to_string()).collect();
        write!(f, "diag({})", parts.join(","))
    }
}

/// Smith normal form by elimination with a minimal-|entry| pivot.
pub fn snf(m: &IntMatrix) -> SnfResult {
    let (r, c) = (m.rows, m.cols);
    let mut a = m.to_big();
    let steps = r.min(c);
    let mut t = 0;
    while t < steps {
        // smallest nonzero entry of the trailing block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..r {
            for j in t..c {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }

        loop {
            let mut clean = true;
            for i in t + 1..r {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..c {
                    let v = &a[t][j] * &q;
                    a[i][j] -= v;
                }
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..c {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let v = &row[t] * &q;
                    row[j] -= v;
                }
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                // a remainder is smaller than the pivot: move it in and repeat
                let mut best = (t, t);
                for i in t..r {
                    if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t..c {
                    if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                a.swap(t, best.0);
                for row in a.iter_mut() {
                    row.swap(t, best.1);
                }
                continue;
            }
            // divisibility fix-up
            let bad = (t + 1..r)
                .flat_map(|i| (t + 1..c).map(move |j| (i, j)))
                .find(|&(i, j)| !(&a[i][j] % &a[t][t]).is_zero());
            match bad {
                Some((i, _)) => {
                    for j in t..c {
                        let v = a[i][j].clone();
                        a[t][j] += v;
                    }
                }
                None => break,
            }
        }
        t += 1;
    }
    let invariant_factors = (0..steps).map(|i| if i < t { a[i][i].abs() } else { BigInt::zero() }).collect();
    SnfResult { invariant_factors }
}

/// Signature, nullity and rank of a real symmetric matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct InertiaResult {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl InertiaResult {
    pub fn signature(&self) -> i64 {
        self.positive as i64 - self.negative as i64
    }

    pub fn nullity(&self) -> usize {
        self.zero
    }

    pub fn rank(&self) -> usize {
        self.positive + self.negative
    }

    pub fn is_positive_definite(&self) -> bool {
        self.negative == 0 && self.zero == 0
    }
}

/// Inertia by congruence diagonalization over the rationals.
///
/// A nonzero diagonal pivot is used when one exists; otherwise a 2×2 block
/// `[[0,b],[b,0]]` is split off, contributing one positive and one negative
/// square.
pub fn inertia(m: &IntSymMatrix) -> InertiaResult {
    let n = m.dim();
    let mut a: Vec<Vec<BigRational>> =
        (0..n).map(|i| (0..n).map(|j| BigRational::from_integer(m.get(i, j).into())).collect()).collect();
    let mut res = InertiaResult { positive: 0, negative: 0, zero: 0 };
    let mut k = 0;
    while k < n {
        if let Some(p) = (k..n).find(|&i| !a[i][i].is_zero()) {
            swap_sym(&mut a, k, p);
            let piv = a[k][k].clone();
            if piv.is_positive() {
                res.positive += 1;
            } else {
                res.negative += 1;
            }
            for i in k + 1..n {
                if a[i][k].is_zero() {
                    continue;
                }
                let f = &a[i][k] / &piv;
                for j in k..n {
                    let v = &f * &a[k][j];
                    a[i][j] -= v;
                }
                for j in k..n {
                    let v = &f * &a[j][k];
                    a[j][i] -= v;
                }
            }
            k += 1;
            continue;
        }
        let off = (k..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| !a[i][j].is_zero());
        let Some((i, j)) = off else {
            res.zero += n - k;
            break;
        };
        swap_sym(&mut a, k, i);
        swap_sym(&mut a, k + 1, j);
        let b = a[k][k + 1].clone();
        // block inverse of [[0,b],[b,0]] is [[0,1/b],[1/b,0]]
        for r in k + 2..n {
            let c0 = &a[r][k + 1] / &b;
            let c1 = &a[r][k] / &b;
            if c0.is_zero() && c1.is_zero() {
                continue;
            }
            for col in k..n {
                let v = &c0 * &a[k][col] + &c1 * &a[k + 1][col];
                a[r][col] -= v;
            }
            for row in k..n {
                let v = &c0 * &a[row][k] + &c1 * &a[row][k + 1];
                a[row][r] -= v;
            }
        }
        res.positive += 1;
        res.negative += 1;
        k += 2;
    }
    res
}

fn swap_sym<T>(a: &mut [Vec<T>], i: usize, j: usize) {
    if i == j {
        return;
    }
    a.swap(i, j);
    for row in a.iter_mut() {
        row.swap(i, j);
    }
}

/// Whether `ℤⁿ / Mℤⁿ` is a finite cyclic group.
pub fn presents_cyclic(m: &IntMatrix) -> Result<bool> {
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.rows, cols: m.cols });
    }
    let s = snf(m);
    let f = &s.invariant_factors;
    Ok(match f.split_last() {
        None => true,
        Some((last, init)) => !last.is_zero() && init.iter().all(|x| x.is_one()),
    })
}
