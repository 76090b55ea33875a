//! Exact integer linear algebra: dense big-integer matrices and vectors,
//! saturated integer kernels, rank over the rationals and content (gcd).
//!
//! Everything here works on [`BigInt`]. Graver completion and the recursive
//! certificate families produce values that outgrow machine words, and the
//! primitivity checks downstream must never be wrong because of overflow.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An integer vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IntVector(Vec<BigInt>);

impl IntVector {
    pub fn new(entries: Vec<BigInt>) -> Self {
        IntVector(entries)
    }

    pub fn zeros(len: usize) -> Self {
        IntVector(vec![BigInt::zero(); len])
    }

    pub fn from_i64s(entries: &[i64]) -> Self {
        IntVector(entries.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<BigInt> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Sum of absolute values.
    pub fn norm1(&self) -> BigInt {
        self.0.iter().map(|x| x.abs()).sum()
    }

    /// Largest absolute value (0 for the empty vector).
    pub fn norm_inf(&self) -> BigInt {
        self.0.iter().map(|x| x.abs()).max().unwrap_or_default()
    }

    pub fn scaled(&self, c: &BigInt) -> IntVector {
        IntVector(self.0.iter().map(|x| x * c).collect())
    }

    /// `self += c * other`, entrywise. Lengths must agree.
    pub fn add_scaled(&mut self, c: &BigInt, other: &IntVector) {
        debug_assert_eq!(self.len(), other.len());
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a += c * b;
        }
    }

    /// Indices of nonzero entries.
    pub fn support(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    /// Entries as `i64`, if they all fit.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.0.iter().map(|x| i64::try_from(x).ok()).collect()
    }
}

impl From<Vec<BigInt>> for IntVector {
    fn from(v: Vec<BigInt>) -> Self {
        IntVector(v)
    }
}

impl std::ops::Index<usize> for IntVector {
    type Output = BigInt;
    fn index(&self, i: usize) -> &BigInt {
        &self.0[i]
    }
}

impl Add for &IntVector {
    type Output = IntVector;
    fn add(self, rhs: &IntVector) -> IntVector {
        debug_assert_eq!(self.len(), rhs.len());
        IntVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &IntVector {
    type Output = IntVector;
    fn sub(self, rhs: &IntVector) -> IntVector {
        debug_assert_eq!(self.len(), rhs.len());
        IntVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &IntVector {
    type Output = IntVector;
    fn neg(self) -> IntVector {
        IntVector(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

/// Greatest common divisor of the absolute values of the entries; 0 for the
/// zero vector.
pub fn gcd_of(v: &IntVector) -> BigInt {
    v.entries().iter().fold(BigInt::zero(), |acc, x| acc.gcd(x))
}

/// Dense integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n_rows: usize,
    n_cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(n_rows: usize, n_cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if n_rows == 0 || n_cols == 0 {
            return Err(Error::Dimension(format!(
                "matrix must have at least one row and column, got {n_rows}x{n_cols}"
            )));
        }
        if entries.len() != n_rows * n_cols {
            return Err(Error::Dimension(format!(
                "{n_rows}x{n_cols} matrix needs {} entries, got {}",
                n_rows * n_cols,
                entries.len()
            )));
        }
        Ok(IntMatrix {
            n_rows,
            n_cols,
            entries,
        })
    }

    pub fn zeros(n_rows: usize, n_cols: usize) -> Result<Self> {
        Self::new(n_rows, n_cols, vec![BigInt::zero(); n_rows * n_cols])
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut m = Self::zeros(n, n)?;
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        Ok(m)
    }

    /// Builds a matrix from rows of anything convertible to `BigInt`.
    pub fn from_rows<T: Clone + Into<BigInt>>(rows: &[Vec<T>]) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        if let Some((i, row)) = rows.iter().enumerate().find(|(_, r)| r.len() != n_cols) {
            return Err(Error::Dimension(format!(
                "row {i} has {} entries, expected {n_cols}",
                row.len()
            )));
        }
        let entries = rows.iter().flatten().cloned().map(Into::into).collect();
        Self::new(n_rows, n_cols, entries)
    }

    /// The matrix whose columns are `columns`.
    pub fn from_columns(columns: &[IntVector]) -> Result<Self> {
        let n_cols = columns.len();
        let n_rows = columns.first().map_or(0, IntVector::len);
        if columns.iter().any(|c| c.len() != n_rows) {
            return Err(Error::Dimension("columns have unequal lengths".into()));
        }
        let mut m = Self::zeros(n_rows, n_cols)?;
        for (j, c) in columns.iter().enumerate() {
            for (i, x) in c.entries().iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.n_cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.entries[i * self.n_cols + j] = value;
    }

    pub fn row(&self, i: usize) -> IntVector {
        IntVector(self.entries[i * self.n_cols..(i + 1) * self.n_cols].to_vec())
    }

    pub fn column(&self, j: usize) -> IntVector {
        IntVector((0..self.n_rows).map(|i| self.get(i, j).clone()).collect())
    }

    pub fn columns(&self) -> Vec<IntVector> {
        (0..self.n_cols).map(|j| self.column(j)).collect()
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &IntVector) -> Result<IntVector> {
        if v.len() != self.n_cols {
            return Err(Error::Dimension(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.n_cols
            )));
        }
        Ok(IntVector(
            (0..self.n_rows)
                .map(|i| {
                    self.entries[i * self.n_cols..(i + 1) * self.n_cols]
                        .iter()
                        .zip(v.entries())
                        .filter(|(_, b)| !b.is_zero())
                        .map(|(a, b)| a * b)
                        .sum()
                })
                .collect(),
        ))
    }

    /// True iff `self * v == 0`.
    pub fn annihilates(&self, v: &IntVector) -> Result<bool> {
        Ok(self.mul_vec(v)?.is_zero())
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        rank(self)
    }

    pub fn integer_kernel_basis(&self) -> Vec<IntVector> {
        integer_kernel_basis(self)
    }
}

/// Rank over the rationals by fraction-free (Bareiss) elimination.
///
/// Each step divides exactly by the previous pivot, so all intermediate
/// values stay integral and bounded by minors of the input.
pub fn rank(m: &IntMatrix) -> usize {
    let (rows, cols) = (m.n_rows(), m.n_cols());
    let mut a: Vec<Vec<BigInt>> = (0..rows).map(|i| m.row(i).into_entries()).collect();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                a[i][j] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

/// A lattice basis of `ker_Z(m)`.
///
/// Column operations on `m` stacked over the identity reduce `m` to column
/// echelon form (a column Hermite form without the off-pivot reduction).
/// The transformation is unimodular, so the identity-part of every column
/// whose `m`-part vanished is a member of a *saturated* kernel basis.
pub fn integer_kernel_basis(m: &IntMatrix) -> Vec<IntVector> {
    let (rows, cols) = (m.n_rows(), m.n_cols());
    // each working column is (top: m-part, bottom: transform)
    let mut top: Vec<Vec<BigInt>> = m.columns().into_iter().map(IntVector::into_entries).collect();
    let mut bottom: Vec<Vec<BigInt>> = (0..cols)
        .map(|j| {
            let mut e = vec![BigInt::zero(); cols];
            e[j] = BigInt::one();
            e
        })
        .collect();

    let mut pivot = 0;
    for r in 0..rows {
        if pivot == cols {
            break;
        }
        loop {
            // smallest nonzero |entry| in row r among the unpivoted columns
            let best = (pivot..cols)
                .filter(|&j| !top[j][r].is_zero())
                .min_by(|&a, &b| top[a][r].abs().cmp(&top[b][r].abs()));
            let Some(best) = best else { break };
            top.swap(pivot, best);
            bottom.swap(pivot, best);
            let mut done = true;
            for j in pivot + 1..cols {
                if top[j][r].is_zero() {
                    continue;
                }
                let q = top[j][r].div_floor(&top[pivot][r]);
                let (head, tail) = top.split_at_mut(j);
                for (x, p) in tail[0].iter_mut().zip(&head[pivot]) {
                    *x -= &q * p;
                }
                let (head, tail) = bottom.split_at_mut(j);
                for (x, p) in tail[0].iter_mut().zip(&head[pivot]) {
                    *x -= &q * p;
                }
                if !top[j][r].is_zero() {
                    done = false;
                }
            }
            if done {
                pivot += 1;
                break;
            }
        }
    }
    bottom.drain(pivot..).map(IntVector).collect()
}

impl fmt::Display for IntMatrix {
    /// The matrix text format: a `<rows> <cols>` header then one line per row.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.n_rows, self.n_cols)?;
        for i in 0..self.n_rows {
            writeln!(f, "{}", self.row(i))?;
        }
        Ok(())
    }
}

impl FromStr for IntMatrix {
    type Err = Error;

    /// Parses the matrix text format. Trailing blank lines are ignored;
    /// errors carry 1-based line numbers.
    fn from_str(text: &str) -> Result<Self> {
        let err = |line: usize, message: String| Error::MatrixParse { line, message };
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));

        let (hline, header) = lines.next().ok_or_else(|| err(1, "empty input".into()))?;
        let dims: Vec<&str> = header.split_whitespace().collect();
        if dims.len() != 2 {
            return Err(err(
                hline,
                format!("expected \"<n_rows> <n_cols>\", got {header:?}"),
            ));
        }
        let parse_dim = |s: &str| -> Result<usize> {
            match s.parse::<usize>() {
                Ok(n) if n > 0 => Ok(n),
                _ => Err(err(hline, format!("invalid dimension {s:?}"))),
            }
        };
        let (n_rows, n_cols) = (parse_dim(dims[0])?, parse_dim(dims[1])?);

        let mut entries = Vec::with_capacity(n_rows * n_cols);
        for row in 0..n_rows {
            let (lno, line) = lines
                .next()
                .ok_or_else(|| err(hline + row + 1, format!("missing row {} of {n_rows}", row + 1)))?;
            let before = entries.len();
            for tok in line.split_whitespace() {
                let x = BigInt::from_str(tok).map_err(|_| err(lno, format!("not an integer: {tok:?}")))?;
                entries.push(x);
            }
            let got = entries.len() - before;
            if got != n_cols {
                return Err(err(lno, format!("expected {n_cols} entries, got {got}")));
            }
        }
        if let Some((lno, extra)) = lines.find(|(_, l)| !l.is_empty()) {
            return Err(err(lno, format!("unexpected trailing content {extra:?}")));
        }
        IntMatrix::new(n_rows, n_cols, entries)
    }
}
