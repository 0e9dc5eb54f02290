use nalgebra::{Matrix3, Matrix4, Vector3};
use serde::{Deserialize, Serialize};

use super::cells::{canonical_matrix, free_positions, CellPoint};
use super::FrameMatrix;
use crate::error::{Error, Result};
use crate::schubert::{s_cycle, CellIndex};
use crate::tolerance::{singular_values3, RankTolerance};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NuMembership {
    pub member: bool,
    /// second singular value of the leading 3×3 block
    pub residual: f64,
    pub sigma: [f64; 3],
}

/// Whether the first three columns of the frame have rank at most one.
pub fn nu_membership(frame: &FrameMatrix, tol: RankTolerance) -> NuMembership {
    block_membership(&frame.leading_block(), tol)
}

fn block_membership(block: &Matrix3<f64>, tol: RankTolerance) -> NuMembership {
    let sigma = singular_values3(block);
    NuMembership {
        member: sigma[1] <= tol.threshold(sigma[0]),
        residual: sigma[1],
        sigma,
    }
}

fn leading_block_of(cell: &CellIndex, coords: &[f64]) -> Matrix3<f64> {
    canonical_matrix(cell, coords).fixed_columns::<3>(0).into_owned()
}

/// Points of the open 4-cell whose canonical matrix lies in the rank-one
/// variety.
///
/// The leading block of a canonical matrix holds the pivots that fall in
/// the first three columns and otherwise independent coordinates or zeros.
/// Two pivots in the block give an identity 2×2 minor, so no solutions. One
/// pivot in row `r` forces every other row of the block to vanish, which
/// pins the coordinates sitting there to zero; the solution is a single
/// point exactly when that pins all coordinates.
pub fn nu_intersect_cell(cell: &CellIndex) -> Result<Vec<CellPoint>> {
    if cell.dimension() != 4 {
        return Err(Error::InvalidArgument(format!(
            "{cell} has dimension {}, only 4-cells are analysed in closed form",
            cell.dimension()
        )));
    }
    let block_pivots: Vec<usize> = cell
        .pivots()
        .iter()
        .enumerate()
        .filter(|(_, &p)| p <= 3)
        .map(|(row, _)| row)
        .collect();
    match block_pivots.as_slice() {
        [] => Err(Error::Internal(format!("{cell} has no pivot in the leading block"))),
        [row] => {
            let positions = free_positions(cell);
            let pinned = positions.iter().all(|&(r, c)| c < 3 && r != *row);
            if !pinned {
                return Err(Error::Internal(format!(
                    "{cell} meets the rank-one variety in a positive-dimensional set"
                )));
            }
            Ok(vec![CellPoint::origin(*cell)])
        }
        _ => Ok(Vec::new()),
    }
}

/// Result of evaluating the leading-block residual on a regular grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridScan {
    pub nodes: usize,
    /// grid nodes classified as members
    pub hits: Vec<Vec<f64>>,
    /// smallest residual over nodes that are not among the supplied solutions
    pub min_residual_off_solutions: f64,
    /// a grid never certifies that nothing lies between its nodes
    pub exhaustive: bool,
}

/// Evaluates membership on the grid `[-half_width, half_width]^dim` with
/// `per_axis` nodes per axis.
pub fn scan_cell_grid(
    cell: &CellIndex,
    half_width: f64,
    per_axis: usize,
    tol: RankTolerance,
    solutions: &[CellPoint],
) -> Result<GridScan> {
    let dim = cell.dimension();
    if per_axis < 2 {
        return Err(Error::InvalidArgument("grid needs at least two nodes per axis".into()));
    }
    let nodes = (per_axis as f64).powi(dim as i32);
    if nodes > 5e7 {
        return Err(Error::InvalidArgument(format!(
            "grid with {nodes:e} nodes is too large"
        )));
    }
    let nodes = nodes as usize;
    let axis: Vec<f64> = (0..per_axis)
        .map(|t| -half_width + 2.0 * half_width * t as f64 / (per_axis - 1) as f64)
        .collect();
    let positions = free_positions(cell);
    let base = leading_block_of(cell, &vec![0.0; dim]);
    let sign = cell.sign().as_f64();

    let mut hits = Vec::new();
    let mut min_off = f64::INFINITY;
    let mut index = vec![0usize; dim];
    let mut coords = vec![0.0; dim];
    for _ in 0..nodes {
        let mut block = base;
        for (t, &(r, c)) in positions.iter().enumerate() {
            coords[t] = axis[index[t]];
            if c < 3 {
                block[(r, c)] = sign * coords[t];
            }
        }
        let m = block_membership(&block, tol);
        if m.member {
            hits.push(coords.clone());
        }
        let is_solution = solutions
            .iter()
            .any(|s| s.coords().iter().zip(&coords).all(|(a, b)| (a - b).abs() < 1e-12));
        if !is_solution {
            min_off = min_off.min(m.residual);
        }
        for slot in index.iter_mut() {
            *slot += 1;
            if *slot < per_axis {
                break;
            }
            *slot = 0;
        }
    }
    Ok(GridScan {
        nodes,
        hits,
        min_residual_off_solutions: min_off,
        exhaustive: false,
    })
}

/// Co-orientation of the rank-one variety.
///
/// Near a rank-one block `B0 = s u v^T` the variety is cut out by the Schur
/// complement of `U^T B V` with respect to its `(0,0)` entry, where
/// `U = [u u2 u3]`, `V = [v v2 v3]` are orthonormal. `MinorLex` orders the
/// four defining functions as `(u2,v2), (u2,v3), (u3,v2), (u3,v3)`. The
/// resulting orientation of the normal space `u⊥ ⊗ v⊥` does not depend on
/// how `u⊥` and `v⊥` are oriented, since both factors are 2-dimensional.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Coorientation {
    MinorLex,
    ReversedMinorLex,
}

impl Coorientation {
    pub fn factor(self) -> i32 {
        match self {
            Coorientation::MinorLex => 1,
            Coorientation::ReversedMinorLex => -1,
        }
    }

    pub fn reversed(self) -> Self {
        match self {
            Coorientation::MinorLex => Coorientation::ReversedMinorLex,
            Coorientation::ReversedMinorLex => Coorientation::MinorLex,
        }
    }
}

/// Orthonormal basis `[u, a, b]`, obtained by orthogonalizing the standard
/// basis vectors against `u` in order.
fn complete_basis(u: &Vector3<f64>) -> [Vector3<f64>; 3] {
    let mut basis = vec![*u];
    for e in [Vector3::x(), Vector3::y(), Vector3::z()] {
        if basis.len() == 3 {
            break;
        }
        let mut w = e;
        for b in &basis {
            w -= b * b.dot(&w);
        }
        if w.norm() > 0.5 {
            basis.push(w.normalize());
        }
    }
    [basis[0], basis[1], basis[2]]
}

struct LocalFrame {
    u: [Vector3<f64>; 3],
    v: [Vector3<f64>; 3],
}

impl LocalFrame {
    fn at(block: &Matrix3<f64>, tol: RankTolerance) -> Result<Self> {
        let svd = block.svd(true, true);
        let (idx, s1) = svd
            .singular_values
            .iter()
            .copied()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .expect("three singular values");
        let sigma = singular_values3(block);
        let thr = tol.threshold(sigma[0]);
        if sigma[1] > thr {
            return Err(Error::PreconditionViolation(format!(
                "block has rank 2 or more (sigma2 = {:e})",
                sigma[1]
            )));
        }
        if s1 <= thr {
            return Err(Error::TransversalityFailure { det: 0.0, tol: thr });
        }
        let u: Vector3<f64> = svd.u.expect("requested").column(idx).into_owned();
        let v = block.transpose() * u / s1;
        Ok(LocalFrame {
            u: complete_basis(&u),
            v: complete_basis(&v),
        })
    }

    /// Linearization of the four defining functions applied to `db`.
    fn linear(&self, db: &Matrix3<f64>) -> [f64; 4] {
        let f = |a: usize, b: usize| self.u[a].dot(&(db * self.v[b]));
        [f(1, 1), f(1, 2), f(2, 1), f(2, 2)]
    }

    /// Schur complement of `U^T B V` at its `(0,0)` entry, minor-lex order.
    #[cfg(test)]
    fn defining_functions(&self, b: &Matrix3<f64>) -> [f64; 4] {
        let e = |a: usize, c: usize| self.u[a].dot(&(b * self.v[c]));
        let s = |a: usize, c: usize| e(a, c) - e(a, 0) * e(0, c) / e(0, 0);
        [s(1, 1), s(1, 2), s(2, 1), s(2, 2)]
    }
}

/// Below this `|det|` the intersection is declared non-transverse.
const TRANSVERSALITY_TOL: f64 = 1e-12;

/// Local intersection sign of the rank-one variety with a 4-cell at a point
/// of their intersection: the sign of the Jacobian of the defining
/// functions with respect to the cell's oriented coordinates.
pub fn intersection_sign_real(point: &CellPoint, coorientation: Coorientation) -> Result<i32> {
    let cell = point.cell();
    if cell.dimension() != 4 {
        return Err(Error::InvalidArgument(format!("{cell} is not a 4-cell")));
    }
    let tol = RankTolerance::default();
    let block = leading_block_of(&cell, point.coords());
    let frame = LocalFrame::at(&block, tol)?;
    let zero = leading_block_of(&cell, &[0.0; 4]);
    let mut jac = Matrix4::zeros();
    for t in 0..4 {
        let mut e = [0.0; 4];
        e[t] = 1.0;
        let db = leading_block_of(&cell, &e) - zero;
        for (row, value) in frame.linear(&db).into_iter().enumerate() {
            jac[(row, t)] = value;
        }
    }
    let det = jac.determinant();
    if det.abs() <= TRANSVERSALITY_TOL {
        return Err(Error::TransversalityFailure {
            det,
            tol: TRANSVERSALITY_TOL,
        });
    }
    Ok(det.signum() as i32 * coorientation.factor())
}

/// Signed count of the rank-one variety against the degree-4 cycle
/// `e+(1,4,5) + e+(1,3,6) - e+(1,2,7)`.
pub fn nu_dot_s(n: usize, coorientation: Coorientation) -> Result<i32> {
    let cycle = s_cycle(n)?;
    let mut total = 0;
    for (cell, coeff) in cycle.terms() {
        for point in nu_intersect_cell(cell)? {
            total += *coeff as i32 * intersection_sign_real(&point, coorientation)?;
        }
    }
    Ok(total)
}

/// The co-orientation under which the signed count equals the ledger's
/// required value (the first Pontryagin class orientation).
pub fn calibrated_coorientation(n: usize) -> Result<Coorientation> {
    let target = super::orientation_ledger()?.nu_dot_s;
    let raw = nu_dot_s(n, Coorientation::MinorLex)?;
    if raw == target {
        Ok(Coorientation::MinorLex)
    } else if raw == -target {
        Ok(Coorientation::ReversedMinorLex)
    } else {
        Err(Error::Internal(format!(
            "signed count {raw} cannot be calibrated to {target}"
        )))
    }
}
