//! Exact integer linear algebra.
//!
//! Everything here works over arbitrary-precision integers. Systems are solved
//! through a column Hermite reduction `M * U = H` with `U` unimodular, which
//! yields both a particular solution and a basis of the integer kernel.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("ragged matrix: row {row} has {found} entries, expected {expected}")]
    Ragged {
        row: usize,
        expected: usize,
        found: usize,
    },
}

/// Dense integer matrix stored row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Builds a matrix from rows of machine integers. Panics on ragged input;
    /// use [`IntMatrix::try_from_rows`] for untrusted data.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        Self::try_from_rows(rows).expect("ragged matrix")
    }

    pub fn try_from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self, LatticeError> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(LatticeError::Ragged {
                    row: i,
                    expected: cols,
                    found: row.len(),
                });
            }
            entries.extend(row.iter().cloned().map(Into::into));
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[BigInt]) -> Result<Vec<BigInt>, LatticeError> {
        if v.len() != self.cols {
            return Err(LatticeError::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows).map(|r| dot(self.row(r), v)).collect())
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.entries.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Replaces columns `(a, b)` by `(p*a + q*b, r*a + s*b)`.
    fn combine_cols(&mut self, a: usize, b: usize, p: &BigInt, q: &BigInt, r: &BigInt, s: &BigInt) {
        for row in 0..self.rows {
            let ia = row * self.cols + a;
            let ib = row * self.cols + b;
            let va = &self.entries[ia];
            let vb = &self.entries[ib];
            let na = p * va + q * vb;
            let nb = r * va + s * vb;
            self.entries[ia] = na;
            self.entries[ib] = nb;
        }
    }

    /// Replaces rows `(a, b)` by `(p*a + q*b, r*a + s*b)`.
    fn combine_rows(&mut self, a: usize, b: usize, p: &BigInt, q: &BigInt, r: &BigInt, s: &BigInt) {
        for col in 0..self.cols {
            let ia = a * self.cols + col;
            let ib = b * self.cols + col;
            let va = &self.entries[ia];
            let vb = &self.entries[ib];
            let na = p * va + q * vb;
            let nb = r * va + s * vb;
            self.entries[ia] = na;
            self.entries[ib] = nb;
        }
    }

    fn column(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Solution set of `M x = b` over the integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolutionSet {
    /// `None` when the system has no integer solution.
    pub particular: Option<Vec<BigInt>>,
    /// Basis of the integer kernel of `M`. Not canonicalized.
    pub kernel: Vec<Vec<BigInt>>,
}

impl AffineSolutionSet {
    pub fn is_empty(&self) -> bool {
        self.particular.is_none()
    }

    pub fn rank(&self) -> usize {
        self.kernel.len()
    }

    /// `particular + sum(coeffs[i] * kernel[i])`.
    pub fn point(&self, coeffs: &[BigInt]) -> Option<Vec<BigInt>> {
        let mut v = self.particular.clone()?;
        for (c, k) in coeffs.iter().zip(&self.kernel) {
            for (vi, ki) in v.iter_mut().zip(k) {
                *vi += c * ki;
            }
        }
        Some(v)
    }
}

/// Solves `M x = b` over the integers.
pub fn solve_integer_system(m: &IntMatrix, b: &[BigInt]) -> Result<AffineSolutionSet, LatticeError> {
    IntegerSolver::new(m).solve(b)
}

/// Column-reduced form of a fixed matrix, reusable for many right-hand sides.
#[derive(Clone, Debug)]
pub struct IntegerSolver {
    h: IntMatrix,
    u: IntMatrix,
    pivots: Vec<(usize, usize)>,
    kernel: Vec<Vec<BigInt>>,
}

impl IntegerSolver {
    pub fn new(m: &IntMatrix) -> Self {
        let (h, u, pivots) = hermite_columns(m);
        let kernel = (pivots.len()..m.cols).map(|c| u.column(c)).collect();
        IntegerSolver { h, u, pivots, kernel }
    }

    /// Basis of the integer kernel.
    pub fn kernel(&self) -> &[Vec<BigInt>] {
        &self.kernel
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// A single integer solution, if one exists.
    pub fn particular(&self, b: &[BigInt]) -> Result<Option<Vec<BigInt>>, LatticeError> {
        let h = &self.h;
        if b.len() != h.rows {
            return Err(LatticeError::DimensionMismatch {
                expected: h.rows,
                found: b.len(),
            });
        }
        let rank = self.pivots.len();
        let mut y = vec![BigInt::zero(); h.cols];
        let mut next = 0;
        for row in 0..h.rows {
            let mut residual = b[row].clone();
            for (c, yc) in y.iter().enumerate().take(next) {
                residual -= h.get(row, c) * yc;
            }
            if next < rank && self.pivots[next].0 == row {
                let (q, r) = residual.div_rem(h.get(row, next));
                if !r.is_zero() {
                    return Ok(None);
                }
                y[next] = q;
                next += 1;
            } else if !residual.is_zero() {
                return Ok(None);
            }
        }
        Ok(Some(self.u.apply(&y).expect("square transform")))
    }

    pub fn solve(&self, b: &[BigInt]) -> Result<AffineSolutionSet, LatticeError> {
        Ok(AffineSolutionSet {
            particular: self.particular(b)?,
            kernel: self.kernel.clone(),
        })
    }
}

fn hermite_columns(m: &IntMatrix) -> (IntMatrix, IntMatrix, Vec<(usize, usize)>) {
    let (mut h, mut u, pivots) = column_echelon_raw(m);
    for &(row, col) in &pivots {
        if h.get(row, col).is_negative() {
            negate_col(&mut h, col);
            negate_col(&mut u, col);
        }
    }
    (h, u, pivots)
}

fn negate_col(m: &mut IntMatrix, c: usize) {
    for r in 0..m.rows {
        let i = r * m.cols + c;
        let v = std::mem::take(&mut m.entries[i]);
        m.entries[i] = -v;
    }
}

fn column_echelon_raw(m: &IntMatrix) -> (IntMatrix, IntMatrix, Vec<(usize, usize)>) {
    let n = m.cols;
    let mut h = m.clone();
    let mut u = IntMatrix::identity(n);
    let mut pivots = Vec::new();
    let mut pc = 0;
    for row in 0..m.rows {
        if pc == n {
            break;
        }
        // bring some nonzero entry to the pivot column first
        if h.get(row, pc).is_zero() {
            if let Some(j) = (pc + 1..n).find(|&j| !h.get(row, j).is_zero()) {
                h.swap_cols(pc, j);
                u.swap_cols(pc, j);
            } else {
                continue;
            }
        }
        for j in pc + 1..n {
            if h.get(row, j).is_zero() {
                continue;
            }
            let a = h.get(row, pc).clone();
            let b = h.get(row, j).clone();
            let eg = a.extended_gcd(&b);
            let a_g = &a / &eg.gcd;
            let neg_b_g = -(&b / &eg.gcd);
            h.combine_cols(pc, j, &eg.x, &eg.y, &neg_b_g, &a_g);
            u.combine_cols(pc, j, &eg.x, &eg.y, &neg_b_g, &a_g);
        }
        pivots.push((row, pc));
        pc += 1;
    }
    (h, u, pivots)
}

/// gcd of `{ f . k : k in span_Z(basis) }`; zero when `f` vanishes on the lattice.
pub fn gcd_over_lattice(basis: &[Vec<BigInt>], f: &[BigInt]) -> Result<BigInt, LatticeError> {
    let mut g = BigInt::zero();
    for k in basis {
        if k.len() != f.len() {
            return Err(LatticeError::DimensionMismatch {
                expected: f.len(),
                found: k.len(),
            });
        }
        g = g.gcd(&dot(k, f));
    }
    Ok(g)
}

/// Invariant factors `d1 | d2 | ...` of the Smith normal form, zeros last.
/// The list has `min(rows, cols)` entries.
pub fn smith_invariants(m: &IntMatrix) -> Vec<BigInt> {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for r in t..rows {
            for c in t..cols {
                let v = a.get(r, c);
                if v.is_zero() {
                    continue;
                }
                if best.is_none_or(|(br, bc)| v.abs() < a.get(br, bc).abs()) {
                    best = Some((r, c));
                }
            }
        }
        let Some((br, bc)) = best else { break };
        a.swap_rows(t, br);
        a.swap_cols(t, bc);

        let mut clean = true;
        let p = a.get(t, t).clone();
        for r in t + 1..rows {
            let q = a.get(r, t).div_floor(&p);
            if !q.is_zero() {
                let neg_q = -q;
                a.combine_rows(r, t, &BigInt::one(), &neg_q, &BigInt::zero(), &BigInt::one());
            }
            if !a.get(r, t).is_zero() {
                clean = false;
            }
        }
        for c in t + 1..cols {
            let q = a.get(t, c).div_floor(&p);
            if !q.is_zero() {
                let neg_q = -q;
                a.combine_cols(c, t, &BigInt::one(), &neg_q, &BigInt::zero(), &BigInt::one());
            }
            if !a.get(t, c).is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // enforce divisibility against the rest of the block
        if let Some((r, _)) = (t + 1..rows)
            .flat_map(|r| (t + 1..cols).map(move |c| (r, c)))
            .find(|&(r, c)| !a.get(r, c).is_multiple_of(&p))
        {
            let one = BigInt::one();
            let zero = BigInt::zero();
            a.combine_rows(t, r, &one, &one, &zero, &one);
            continue;
        }
        diag.push(p.abs());
        t += 1;
    }
    diag.resize(rows.min(cols), BigInt::zero());
    diag
}
