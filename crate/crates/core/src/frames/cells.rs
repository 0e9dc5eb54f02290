use nalgebra::{DMatrix, Matrix3, Matrix3xX};
use serde::{Deserialize, Serialize};

use super::FrameMatrix;
use crate::error::{Error, Result};
use crate::schubert::{CellIndex, Sign};
use crate::tolerance::{singular_values, RankTolerance};

/// Singular values within this factor of the rank threshold (either side)
/// make a pivot decision ambiguous.
pub const AMBIGUITY_BAND: f64 = 1e3;

/// A point of an open Schubert cell in its canonical coordinates.
///
/// `coords` follows the cell's orientation order: `x_1..x_{i-1}`, then
/// `y_1..y_{j-1}` without `y_i`, then `z_1..z_{k-1}` without `z_i, z_j`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CellPoint {
    cell: CellIndex,
    coords: Vec<f64>,
}

impl CellPoint {
    pub fn new(cell: CellIndex, coords: Vec<f64>) -> Result<Self> {
        if coords.len() != cell.dimension() {
            return Err(Error::InvalidArgument(format!(
                "{cell} has {} free coordinates, got {}",
                cell.dimension(),
                coords.len()
            )));
        }
        Ok(CellPoint { cell, coords })
    }

    pub fn origin(cell: CellIndex) -> Self {
        CellPoint {
            cell,
            coords: vec![0.0; cell.dimension()],
        }
    }

    pub fn cell(&self) -> CellIndex {
        self.cell
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }
}

/// `(row, column)` of each free coordinate of the canonical matrix, 0-based,
/// in coordinate order.
pub fn free_positions(cell: &CellIndex) -> Vec<(usize, usize)> {
    let [i, j, k] = cell.pivots();
    let mut out = Vec::with_capacity(cell.dimension());
    out.extend((1..i).map(|c| (0, c - 1)));
    out.extend((1..j).filter(|&c| c != i).map(|c| (1, c - 1)));
    out.extend((1..k).filter(|&c| c != i && c != j).map(|c| (2, c - 1)));
    out
}

/// The canonical matrix of a cell point: pivots `x_i = y_j = z_k = 1`, zeros
/// in pivot columns and to the right of each pivot, negated for `e-` cells.
pub fn embed_cell_point(point: &CellPoint) -> FrameMatrix {
    FrameMatrix::from_entries_unchecked(canonical_matrix(&point.cell, &point.coords))
}

pub(crate) fn canonical_matrix(cell: &CellIndex, coords: &[f64]) -> Matrix3xX<f64> {
    let mut m = Matrix3xX::zeros(cell.ambient());
    for (row, pivot) in cell.pivots().into_iter().enumerate() {
        m[(row, pivot - 1)] = 1.0;
    }
    for (&(r, c), &v) in free_positions(cell).iter().zip(coords) {
        m[(r, c)] = v;
    }
    if cell.sign() == Sign::Minus {
        m = -m;
    }
    m
}

/// Locates the Schubert cell containing the oriented row span of `frame`
/// and its canonical coordinates.
///
/// Pivots are the columns where the rank of the trailing block
/// `frame[:, c..N]` increases as `c` moves left. The sign is the sign of the
/// determinant of the pivot columns.
pub fn classify_cell(frame: &FrameMatrix, tol: RankTolerance) -> Result<CellPoint> {
    let f = frame.entries();
    let n = frame.ambient();
    let scale = frame.singular_values()[0];
    let threshold = tol.threshold(scale);
    let s3 = frame.singular_values()[2];
    if s3 <= threshold {
        return Err(Error::DegenerateFrame { sigma3: s3, threshold });
    }

    let mut pivots = Vec::with_capacity(3);
    let mut prev_rank = 0;
    for c in (0..n).rev() {
        let block = DMatrix::from_iterator(3, n - c, f.columns(c, n - c).iter().copied());
        let sigma = singular_values(&block);
        if let Some(&s) = sigma
            .iter()
            .find(|&&s| s > threshold / AMBIGUITY_BAND && s <= threshold * AMBIGUITY_BAND)
        {
            return Err(Error::IllConditioned(format!(
                "singular value {s:e} of trailing block from column {} is within a factor {AMBIGUITY_BAND} of the threshold {threshold:e}",
                c + 1
            )));
        }
        let rank = sigma.iter().filter(|&&s| s > threshold).count();
        if rank > prev_rank {
            if rank != prev_rank + 1 {
                return Err(Error::IllConditioned(format!(
                    "rank jumps by {} at column {}",
                    rank - prev_rank,
                    c + 1
                )));
            }
            pivots.push(c + 1);
            prev_rank = rank;
            if rank == 3 {
                break;
            }
        }
    }
    if pivots.len() != 3 {
        return Err(Error::IllConditioned(format!(
            "found only {} pivot columns",
            pivots.len()
        )));
    }
    pivots.reverse();
    let (i, j, k) = (pivots[0], pivots[1], pivots[2]);

    let p = Matrix3::from_fn(|r, c| f[(r, pivots[c] - 1)]);
    let det = p.determinant();
    let p_inv = p
        .try_inverse()
        .ok_or_else(|| Error::IllConditioned("pivot columns are singular".into()))?;
    let canonical = p_inv * f;
    let sign = if det > 0.0 { Sign::Plus } else { Sign::Minus };
    let cell = CellIndex::new(i, j, k, sign, n)?;
    let coords = free_positions(&cell).iter().map(|&(r, c)| canonical[(r, c)]).collect();
    CellPoint::new(cell, coords)
}
