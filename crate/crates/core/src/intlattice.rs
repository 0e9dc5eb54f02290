//! Exact integer matrices: Smith normal form, saturated kernels and a
//! fraction-free rank computation that shares no code with the Smith path.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Dense integer matrix with arbitrary-precision entries, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        IntMatrix { rows, cols, data }
    }

    /// Builds a matrix from machine-integer rows. Panics on ragged input.
    pub fn from_rows<T: Into<BigInt> + Copy>(rows: &[Vec<T>]) -> Self {
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        Self::from_fn(rows.len(), ncols, |r, c| rows[r][c].into())
    }

    pub fn diagonal<T: Into<BigInt> + Copy>(rows: usize, cols: usize, diag: &[T]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (t, d) in diag.iter().enumerate().take(rows.min(cols)) {
            m[(t, t)] = (*d).into();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    /// Exact product. Panics when inner dimensions disagree.
    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = &rhs[(k, c)];
                    if !b.is_zero() {
                        out[(r, c)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, x: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, x.len(), "dimension mismatch in product");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(x)
                    .fold(BigInt::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// Determinant by fraction-free elimination. Panics on non-square input.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for t in 0..n {
            if a[(t, t)].is_zero() {
                match (t + 1..n).find(|&r| !a[(r, t)].is_zero()) {
                    Some(r) => {
                        a.swap_rows(t, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for r in t + 1..n {
                for c in t + 1..n {
                    let v = (&a[(r, c)] * &a[(t, t)] - &a[(r, t)] * &a[(t, c)]) / &prev;
                    a[(r, c)] = v;
                }
                a[(r, t)] = BigInt::zero();
            }
            prev = a[(t, t)].clone();
        }
        sign * a[(n - 1, n - 1)].clone()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// row[dst] += q * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let v = &self[(src, c)] * q;
            self[(dst, c)] += v;
        }
    }

    /// col[dst] += q * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let v = &self[(r, src)] * q;
            self[(r, dst)] += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -std::mem::take(&mut self[(r, c)]);
            self[(r, c)] = v;
        }
    }

    fn negate_col(&mut self, c: usize) {
        for r in 0..self.rows {
            let v = -std::mem::take(&mut self[(r, c)]);
            self[(r, c)] = v;
        }
    }

    /// Serializes as `rows cols` followed by one line of space-separated
    /// integers per row.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.rows, self.cols);
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::parse("header", "missing `rows cols` line"))?;
        let dims: Vec<&str> = header.split_whitespace().collect();
        if dims.len() != 2 {
            return Err(Error::parse("header", format!("expected `rows cols`, got `{header}`")));
        }
        let parse_dim = |s: &str, what: &str| {
            s.parse::<usize>()
                .map_err(|e| Error::parse(format!("header.{what}"), e.to_string()))
        };
        let rows = parse_dim(dims[0], "rows")?;
        let cols = parse_dim(dims[1], "cols")?;
        let mut data = Vec::with_capacity(rows * cols);
        if cols > 0 {
            for r in 0..rows {
                let line = lines
                    .next()
                    .ok_or_else(|| Error::parse(format!("row[{r}]"), "missing row"))?;
                let before = data.len();
                for (c, tok) in line.split_whitespace().enumerate() {
                    let v = tok
                        .parse::<BigInt>()
                        .map_err(|e| Error::parse(format!("row[{r}][{c}]"), e.to_string()))?;
                    data.push(v);
                }
                if data.len() - before != cols {
                    return Err(Error::parse(
                        format!("row[{r}]"),
                        format!("expected {cols} entries, found {}", data.len() - before),
                    ));
                }
            }
        }
        if let Some(extra) = lines.next() {
            return Err(Error::parse("trailer", format!("unexpected line `{extra}`")));
        }
        Ok(IntMatrix { rows, cols, data })
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (r, c): (usize, usize)) -> &BigInt {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of bounds");
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut BigInt {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of bounds");
        &mut self.data[r * self.cols + c]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", line.join(", "))?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// `u * a * v == s` with `u`, `v` unimodular and `s` diagonal with
/// invariant factors `d_1 | d_2 | ...`, nonnegative, zeros last.
///
/// The inverses of `u` and `v` are tracked alongside so callers can change
/// coordinates in both directions without a second elimination.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
    pub rank: usize,
}

impl SmithDecomposition {
    /// The nonzero diagonal entries, in order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|t| self.s[(t, t)].clone()).collect()
    }

    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariant_factors().into_iter().filter(|d| !d.is_one()).collect()
    }

    /// Re-multiplies `u * a * v` and compares with `s`.
    pub fn verify(&self, a: &IntMatrix) -> bool {
        self.u.mul(a).mul(&self.v) == self.s
    }
}

struct SmithWork {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl SmithWork {
    fn swap_rows(&mut self, x: usize, y: usize) {
        self.a.swap_rows(x, y);
        self.u.swap_rows(x, y);
        self.u_inv.swap_cols(x, y);
    }

    fn swap_cols(&mut self, x: usize, y: usize) {
        self.a.swap_cols(x, y);
        self.v.swap_cols(x, y);
        self.v_inv.swap_rows(x, y);
    }

    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.a.add_row_multiple(dst, src, q);
        self.u.add_row_multiple(dst, src, q);
        self.u_inv.add_col_multiple(src, dst, &-q);
    }

    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.a.add_col_multiple(dst, src, q);
        self.v.add_col_multiple(dst, src, q);
        self.v_inv.add_row_multiple(src, dst, &-q);
    }

    fn negate_row(&mut self, r: usize) {
        self.a.negate_row(r);
        self.u.negate_row(r);
        self.u_inv.negate_col(r);
    }

    /// Smallest nonzero |entry| in the trailing block starting at (t, t);
    /// ties go to the lexicographically lowest (row, col).
    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<((usize, usize), &BigInt)> = None;
        for r in t..self.a.rows {
            for c in t..self.a.cols {
                let e = &self.a[(r, c)];
                if e.is_zero() {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some((_, b)) => e.abs() < b.abs(),
                };
                if better {
                    best = Some(((r, c), e));
                }
            }
        }
        best.map(|(idx, _)| idx)
    }
}

/// Smith normal form by elementary unimodular operations.
pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let (m, n) = (a.rows(), a.cols());
    let mut w = SmithWork {
        a: a.clone(),
        u: IntMatrix::identity(m),
        u_inv: IntMatrix::identity(m),
        v: IntMatrix::identity(n),
        v_inv: IntMatrix::identity(n),
    };

    let mut t = 0;
    while t < m.min(n) {
        let Some((pr, pc)) = w.min_pivot(t) else {
            break;
        };
        w.swap_rows(t, pr);
        w.swap_cols(t, pc);

        loop {
            let pivot = w.a[(t, t)].clone();
            let mut remainder = false;
            for r in t + 1..m {
                if w.a[(r, t)].is_zero() {
                    continue;
                }
                let q = w.a[(r, t)].div_floor(&pivot);
                w.add_row(r, t, &-q);
                remainder |= !w.a[(r, t)].is_zero();
            }
            for c in t + 1..n {
                if w.a[(t, c)].is_zero() {
                    continue;
                }
                let q = w.a[(t, c)].div_floor(&pivot);
                w.add_col(c, t, &-q);
                remainder |= !w.a[(t, c)].is_zero();
            }
            if remainder {
                // a strictly smaller entry now sits in row or column t
                let (pr, pc) = w.min_pivot(t).expect("nonzero block has a pivot");
                w.swap_rows(t, pr);
                w.swap_cols(t, pc);
                continue;
            }
            let offender = (t + 1..m).find(|&r| (t + 1..n).any(|c| !w.a[(r, c)].is_multiple_of(&pivot)));
            match offender {
                Some(r) => w.add_row(t, r, &BigInt::one()),
                None => break,
            }
        }
        if w.a[(t, t)].is_negative() {
            w.negate_row(t);
        }
        t += 1;
    }

    SmithDecomposition {
        rank: t,
        u: w.u,
        s: w.a,
        v: w.v,
        u_inv: w.u_inv,
        v_inv: w.v_inv,
    }
}

/// A basis of the integer kernel `{x : a x = 0}`. The returned lattice is
/// saturated: it is a direct summand of `Z^cols`.
pub fn integer_kernel_basis(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(a);
    (snf.rank..a.cols()).map(|c| snf.v.column(c)).collect()
}

/// Rank over the rationals via Bareiss fraction-free elimination.
pub fn rational_rank(a: &IntMatrix) -> usize {
    let mut m = a.clone();
    let (rows, cols) = (m.rows(), m.cols());
    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !m[(r, c)].is_zero()) else {
            continue;
        };
        m.swap_rows(rank, p);
        for r in rank + 1..rows {
            for cc in c + 1..cols {
                let v = (&m[(r, cc)] * &m[(rank, c)] - &m[(r, c)] * &m[(rank, cc)]) / &prev;
                m[(r, cc)] = v;
            }
            m[(r, c)] = BigInt::zero();
        }
        prev = m[(rank, c)].clone();
        rank += 1;
    }
    rank
}
