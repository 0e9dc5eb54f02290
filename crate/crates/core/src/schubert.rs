//! Signed Schubert cells `e±(i,j,k)` of the Grassmannian of oriented
//! 3-planes in `R^N`, and the cellular boundary operator on them.
//!
//! Cells are ordered lexicographically on `(i, j, k)` with `+` before `-`.
//! Every matrix built here uses that order, so output is reproducible.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intlattice::IntMatrix;

/// Which of the two lifts of an unoriented cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_f64(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// A signed Schubert cell. Pivot columns are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CellIndex {
    i: usize,
    j: usize,
    k: usize,
    sign: Sign,
    n: usize,
}

impl CellIndex {
    pub fn new(i: usize, j: usize, k: usize, sign: Sign, n: usize) -> Result<Self> {
        if !(1 <= i && i < j && j < k && k <= n) {
            return Err(Error::InvalidArgument(format!(
                "cell e{}({i},{j},{k}) needs 1 <= i < j < k <= N = {n}",
                sign.symbol()
            )));
        }
        Ok(CellIndex { i, j, k, sign, n })
    }

    pub fn plus(i: usize, j: usize, k: usize, n: usize) -> Result<Self> {
        Self::new(i, j, k, Sign::Plus, n)
    }

    pub fn minus(i: usize, j: usize, k: usize, n: usize) -> Result<Self> {
        Self::new(i, j, k, Sign::Minus, n)
    }

    pub fn i(&self) -> usize {
        self.i
    }

    pub fn j(&self) -> usize {
        self.j
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn pivots(&self) -> [usize; 3] {
        [self.i, self.j, self.k]
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        self.i + self.j + self.k - 6
    }

    pub fn flipped(&self) -> CellIndex {
        CellIndex {
            sign: self.sign.flip(),
            ..*self
        }
    }

    /// The same cell viewed inside a larger ambient space.
    pub fn with_ambient(&self, n: usize) -> Result<CellIndex> {
        Self::new(self.i, self.j, self.k, self.sign, n)
    }

    /// Boundary of the cell as a chain one dimension lower.
    ///
    /// Six terms, one same-sign and one opposite-sign cell for each pivot
    /// moved one column left. Terms whose pivots would collide or leave the
    /// matrix are absent.
    pub fn boundary(&self) -> Chain {
        let (i, j, k) = (self.i as i64, self.j as i64, self.k as i64);
        let pm = |e: i64| if e.rem_euclid(2) == 0 { 1 } else { -1 };
        let same = self.sign;
        let other = self.sign.flip();
        let terms = [
            ((i - 1, j, k), same, pm(i)),
            ((i - 1, j, k), other, -1),
            ((i, j - 1, k), same, pm(i + j + 1)),
            ((i, j - 1, k), other, pm(i)),
            ((i, j, k - 1), same, pm(i + j + k + 1)),
            ((i, j, k - 1), other, pm(i + j)),
        ];
        let mut chain = Chain::zero(self.n, self.dimension().saturating_sub(1));
        for ((a, b, c), sign, coeff) in terms {
            if 1 <= a && a < b && b < c {
                let cell = CellIndex {
                    i: a as usize,
                    j: b as usize,
                    k: c as usize,
                    sign,
                    n: self.n,
                };
                chain.add_term(cell, coeff);
            }
        }
        chain
    }
}

impl fmt::Display for CellIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}({},{},{})", self.sign.symbol(), self.i, self.j, self.k)
    }
}

/// Integer combination of cells sharing one ambient `N` and one dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    n: usize,
    degree: usize,
    terms: BTreeMap<CellIndex, i64>,
}

impl Chain {
    pub fn zero(n: usize, degree: usize) -> Self {
        Chain {
            n,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_cell(cell: CellIndex) -> Self {
        let mut c = Chain::zero(cell.n, cell.dimension());
        c.add_term(cell, 1);
        c
    }

    /// Builds a chain from `(cell, coefficient)` pairs; all cells must share
    /// `N` and dimension.
    pub fn from_terms(n: usize, degree: usize, terms: impl IntoIterator<Item = (CellIndex, i64)>) -> Result<Self> {
        let mut chain = Chain::zero(n, degree);
        for (cell, coeff) in terms {
            if cell.n != n || cell.dimension() != degree {
                return Err(Error::InvalidArgument(format!(
                    "{cell} (N = {}, dim {}) does not belong to a degree-{degree} chain on N = {n}",
                    cell.n,
                    cell.dimension()
                )));
            }
            chain.add_term(cell, coeff);
        }
        Ok(chain)
    }

    /// Inverse of [`Chain::coordinates`].
    pub fn from_coordinates(n: usize, degree: usize, coords: &[BigInt]) -> Result<Self> {
        let basis = enumerate_cells(n, Some(degree))?;
        if basis.len() != coords.len() {
            return Err(Error::InvalidArgument(format!(
                "{} coordinates for {} cells of dimension {degree}",
                coords.len(),
                basis.len()
            )));
        }
        let mut chain = Chain::zero(n, degree);
        for (cell, x) in basis.into_iter().zip(coords) {
            let coeff = x
                .to_i64()
                .ok_or_else(|| Error::InvalidArgument(format!("coefficient {x} does not fit in i64")))?;
            chain.add_term(cell, coeff);
        }
        Ok(chain)
    }

    fn add_term(&mut self, cell: CellIndex, coeff: i64) {
        debug_assert_eq!(cell.n, self.n);
        debug_assert_eq!(cell.dimension(), self.degree);
        let entry = self.terms.entry(cell).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.terms.remove(&cell);
        }
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, cell: &CellIndex) -> i64 {
        self.terms.get(cell).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CellIndex, &i64)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn scaled(&self, factor: i64) -> Chain {
        let mut out = Chain::zero(self.n, self.degree);
        for (cell, c) in &self.terms {
            out.add_term(*cell, c * factor);
        }
        out
    }

    /// Panics if the chains live in different groups.
    pub fn plus(&self, other: &Chain) -> Chain {
        assert_eq!(
            (self.n, self.degree),
            (other.n, other.degree),
            "adding chains of different groups"
        );
        let mut out = self.clone();
        for (cell, c) in &other.terms {
            out.add_term(*cell, *c);
        }
        out
    }

    /// Swaps `e+` and `e-` in every term.
    pub fn sign_flipped(&self) -> Chain {
        let mut out = Chain::zero(self.n, self.degree);
        for (cell, c) in &self.terms {
            out.add_term(cell.flipped(), *c);
        }
        out
    }

    pub fn boundary(&self) -> Chain {
        let mut out = Chain::zero(self.n, self.degree.saturating_sub(1));
        if self.degree == 0 {
            return out;
        }
        for (cell, c) in &self.terms {
            for (face, d) in &cell.boundary().terms {
                out.add_term(*face, c * d);
            }
        }
        out
    }

    /// Coefficients in `enumerate_cells(N, degree)` order.
    pub fn coordinates(&self) -> Vec<BigInt> {
        let basis = enumerate_cells(self.n, Some(self.degree)).expect("chain has valid N");
        basis.iter().map(|c| BigInt::from(self.coefficient(c))).collect()
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (cell, c)) in self.terms.iter().enumerate() {
            match (n, *c < 0) {
                (0, false) => {}
                (0, true) => f.write_str("-")?,
                (_, false) => f.write_str(" + ")?,
                (_, true) => f.write_str(" - ")?,
            }
            if c.abs() != 1 {
                write!(f, "{}*", c.abs())?;
            }
            write!(f, "{cell}")?;
        }
        Ok(())
    }
}

fn check_ambient(n: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("N must be at least 3, got {n}")));
    }
    Ok(())
}

/// Top cell dimension `3(N - 3)`.
pub fn top_dimension(n: usize) -> usize {
    3 * n.saturating_sub(3)
}

/// All signed cells for ambient `n`, optionally restricted to one dimension.
pub fn enumerate_cells(n: usize, dim: Option<usize>) -> Result<Vec<CellIndex>> {
    check_ambient(n)?;
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                if dim.is_some_and(|d| i + j + k != d + 6) {
                    continue;
                }
                for sign in [Sign::Plus, Sign::Minus] {
                    out.push(CellIndex { i, j, k, sign, n });
                }
            }
        }
    }
    Ok(out)
}

/// Number of cells of each dimension `0..=3(N-3)`.
pub fn cell_counts(n: usize) -> Result<Vec<usize>> {
    let mut counts = vec![0; top_dimension(n) + 1];
    for c in enumerate_cells(n, None)? {
        counts[c.dimension()] += 1;
    }
    Ok(counts)
}

/// Matrix of the boundary map from degree `q` to degree `q - 1`; columns
/// are the degree-`q` cells, rows the degree-`(q-1)` cells.
pub fn boundary_matrix(n: usize, q: usize) -> Result<IntMatrix> {
    check_ambient(n)?;
    if q == 0 {
        return Err(Error::InvalidArgument("boundary_matrix needs q >= 1".into()));
    }
    let cols = enumerate_cells(n, Some(q))?;
    let rows = enumerate_cells(n, Some(q - 1))?;
    let row_of: BTreeMap<CellIndex, usize> = rows.iter().enumerate().map(|(r, c)| (*c, r)).collect();
    let mut m = IntMatrix::zeros(rows.len(), cols.len());
    for (col, cell) in cols.iter().enumerate() {
        for (face, coeff) in cell.boundary().terms() {
            m[(row_of[face], col)] = BigInt::from(*coeff);
        }
    }
    Ok(m)
}

/// The degree-4 cycle `e+(1,4,5) + e+(1,3,6) - e+(1,2,7)`.
pub fn s_cycle(n: usize) -> Result<Chain> {
    if n < 7 {
        return Err(Error::InvalidArgument(format!(
            "s_cycle needs N >= 7: cell e+(1,2,7) does not exist for N = {n}"
        )));
    }
    Chain::from_terms(
        n,
        4,
        [
            (CellIndex::plus(1, 4, 5, n)?, 1),
            (CellIndex::plus(1, 3, 6, n)?, 1),
            (CellIndex::plus(1, 2, 7, n)?, -1),
        ],
    )
}

/// Writes `d{q}.txt` (plain-text integer matrix) and `cells{q}.txt` (one
/// cell per line, column order) for every `q` in `1..=qmax`, plus
/// `cells0.txt`.
pub fn export_boundary_matrices(n: usize, qmax: usize, dir: &Path) -> Result<Vec<std::path::PathBuf>> {
    check_ambient(n)?;
    fs::create_dir_all(dir)?;
    let qmax = qmax.min(top_dimension(n));
    let mut written = Vec::new();
    for q in 0..=qmax {
        let listing: String = enumerate_cells(n, Some(q))?.iter().map(|c| format!("{c}\n")).collect();
        let path = dir.join(format!("cells{q}.txt"));
        fs::write(&path, listing)?;
        written.push(path);
        if q >= 1 {
            let path = dir.join(format!("d{q}.txt"));
            fs::write(&path, boundary_matrix(n, q)?.to_text())?;
            written.push(path);
        }
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(i: usize, j: usize, k: usize, n: usize) -> CellIndex {
        CellIndex::plus(i, j, k, n).unwrap()
    }

    fn m(i: usize, j: usize, k: usize, n: usize) -> CellIndex {
        CellIndex::minus(i, j, k, n).unwrap()
    }

    #[test]
    fn cell_validation() {
        assert!(CellIndex::plus(1, 1, 2, 5).is_err());
        assert!(CellIndex::plus(0, 1, 2, 5).is_err());
        assert!(CellIndex::plus(1, 2, 6, 5).is_err());
        assert_eq!(p(1, 4, 5, 7).dimension(), 4);
        assert_eq!(p(1, 4, 5, 7).to_string(), "e+(1,4,5)");
    }

    #[test]
    fn enumerate_small_cases() {
        assert_eq!(enumerate_cells(3, None).unwrap(), vec![p(1, 2, 3, 3), m(1, 2, 3, 3)]);
        assert!(enumerate_cells(2, None).is_err());

        let four = enumerate_cells(7, Some(4)).unwrap();
        let expected: Vec<CellIndex> = [(1, 2, 7), (1, 3, 6), (1, 4, 5), (2, 3, 5)]
            .into_iter()
            .flat_map(|(i, j, k)| [p(i, j, k, 7), m(i, j, k, 7)])
            .collect();
        assert_eq!(four, expected);

        assert_eq!(enumerate_cells(10, None).unwrap().len(), 240);
    }

    #[test]
    fn boundary_examples() {
        assert!(p(1, 2, 3, 5).boundary().is_empty());

        let d = p(1, 4, 5, 7).boundary();
        assert_eq!(d.len(), 2);
        assert_eq!(d.coefficient(&p(1, 3, 5, 7)), 1);
        assert_eq!(d.coefficient(&m(1, 3, 5, 7)), -1);

        let d = p(2, 3, 4, 7).boundary();
        assert_eq!(d.len(), 2);
        assert_eq!(d.coefficient(&p(1, 3, 4, 7)), 1);
        assert_eq!(d.coefficient(&m(1, 3, 4, 7)), -1);
    }

    #[test]
    fn boundary_matrix_examples() {
        let d = boundary_matrix(3, 1).unwrap();
        assert_eq!((d.rows(), d.cols()), (2, 0));

        let d = boundary_matrix(4, 1).unwrap();
        assert_eq!(d.cols(), 2);
        assert_eq!(d.column(0), vec![BigInt::from(1), BigInt::from(-1)]);

        assert!(boundary_matrix(2, 1).is_err());
        assert!(boundary_matrix(5, 0).is_err());
    }

    #[test]
    fn boundary_squared_vanishes() {
        for n in 3..=10 {
            for q in 2..=top_dimension(n) {
                let a = boundary_matrix(n, q - 1).unwrap();
                let b = boundary_matrix(n, q).unwrap();
                assert!(a.mul(&b).is_zero(), "d{}*d{} != 0 for N = {n}", q - 1, q);
            }
        }
    }

    #[test]
    fn s_cycle_shape() {
        let s = s_cycle(7).unwrap();
        assert_eq!(s.degree(), 4);
        assert_eq!(s.coefficient(&p(1, 4, 5, 7)), 1);
        assert_eq!(s.coefficient(&p(1, 3, 6, 7)), 1);
        assert_eq!(s.coefficient(&p(1, 2, 7, 7)), -1);
        assert_eq!(s.len(), 3);
        assert!(s.boundary().is_empty());

        let err = s_cycle(6).unwrap_err().to_string();
        assert!(err.contains("e+(1,2,7)"), "{err}");
    }

    #[test]
    fn boundary_is_independent_of_ambient() {
        for n in 5..=10 {
            for cell in enumerate_cells(n, None).unwrap() {
                let small = cell.boundary();
                for big in n..=10 {
                    let lifted = cell.with_ambient(big).unwrap().boundary();
                    let same: Vec<_> = small.terms().map(|(c, v)| (c.pivots(), c.sign(), *v)).collect();
                    let other: Vec<_> = lifted.terms().map(|(c, v)| (c.pivots(), c.sign(), *v)).collect();
                    assert_eq!(same, other);
                }
            }
        }
    }

    #[test]
    fn sign_flip_commutes_with_boundary() {
        for cell in enumerate_cells(8, None).unwrap() {
            assert_eq!(cell.boundary().sign_flipped(), cell.flipped().boundary());
        }
    }

    #[test]
    fn cell_counts_are_palindromic() {
        for n in 3..=12 {
            let counts = cell_counts(n).unwrap();
            let mut rev = counts.clone();
            rev.reverse();
            assert_eq!(counts, rev, "N = {n}");
            assert_eq!(counts.iter().sum::<usize>(), n * (n - 1) * (n - 2) / 3);
        }
    }

    #[test]
    fn chain_display() {
        assert_eq!(s_cycle(7).unwrap().to_string(), "-e+(1,2,7) + e+(1,3,6) + e+(1,4,5)");
        assert_eq!(
            s_cycle(7).unwrap().scaled(-2).to_string(),
            "2*e+(1,2,7) - 2*e+(1,3,6) - 2*e+(1,4,5)"
        );
        assert_eq!(Chain::zero(5, 2).to_string(), "0");
    }

    #[test]
    fn export_writes_all_degrees() {
        let dir = tempfile::tempdir().unwrap();
        let files = export_boundary_matrices(5, 3, dir.path()).unwrap();
        assert_eq!(files.len(), 7);
        let d2 = fs::read_to_string(dir.path().join("d2.txt")).unwrap();
        assert_eq!(IntMatrix::parse_text(&d2).unwrap(), boundary_matrix(5, 2).unwrap());
        let cells1 = fs::read_to_string(dir.path().join("cells1.txt")).unwrap();
        assert_eq!(cells1, "e+(1,2,4)\ne-(1,2,4)\n");
    }
}
