//! Connections on a ball in `R^4` with values in `(R^3, ×)`, their curvature
//! at a point, the anti-self-dual projection and the pointwise reducibility
//! test. The metric is flat and Euclidean.

mod boundary;
mod connection;
mod curvature;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use boundary::{classify_boundary_case, BoundaryCase};
pub use connection::{ConnectionKind, ConnectionSpec, Evaluator, Jacobian, JacobianFn, LinearCoefficients, Potential};
pub use curvature::{
    asd_project, curvature_at, fd_convergence_order, hodge_star, radial_gauge_residual, radial_gauge_residual_seeded,
    reducibility, AsdProjection, ConvergenceReport, Curvature, CurvatureMatrix, CurvatureOptions, Derivative,
    Reducibility, Stencil, RADIAL_SAMPLE_SEED,
};

use crate::error::Result;
use crate::tolerance::RankTolerance;

pub type Point = [f64; 4];

/// `B_1 = dx¹∧dx² − dx³∧dx⁴`, `B_2 = dx¹∧dx³ − dx⁴∧dx²`,
/// `B_3 = dx¹∧dx⁴ − dx²∧dx³` as antisymmetric `4 × 4` arrays.
pub fn asd_basis() -> [[[f64; 4]; 4]; 3] {
    let mut b = [[[0.0; 4]; 4]; 3];
    for (a, (i, j, k, l)) in [(0, 1, 2, 3), (0, 2, 3, 1), (0, 3, 1, 2)].into_iter().enumerate() {
        b[a][i][j] = 1.0;
        b[a][j][i] = -1.0;
        b[a][k][l] = -1.0;
        b[a][l][k] = 1.0;
    }
    b
}

pub(crate) fn levi_civita() -> [[[[f64; 4]; 4]; 4]; 4] {
    let mut eps = [[[[0.0; 4]; 4]; 4]; 4];
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let idx = [a, b, c, d];
                    let mut inversions = 0;
                    let mut distinct = true;
                    for s in 0..4 {
                        for t in s + 1..4 {
                            if idx[s] == idx[t] {
                                distinct = false;
                            }
                            if idx[s] > idx[t] {
                                inversions += 1;
                            }
                        }
                    }
                    if distinct {
                        eps[a][b][c][d] = if inversions % 2 == 0 { 1.0 } else { -1.0 };
                    }
                }
            }
        }
    }
    eps
}

/// One row of a reducibility scan.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub params: BTreeMap<String, f64>,
    pub sigma2: f64,
    pub in_nu_p: bool,
}

/// Reducibility at `steps + 1` evenly spaced points of the segment from the
/// connection's base point to `end`.
pub fn scan_segment(
    conn: &ConnectionSpec,
    end: &Point,
    steps: usize,
    tol: RankTolerance,
    opts: &CurvatureOptions,
) -> Result<Vec<ScanRow>> {
    let base = conn.base();
    (0..=steps)
        .into_par_iter()
        .map(|s| {
            let t = if steps == 0 { 0.0 } else { s as f64 / steps as f64 };
            let p: Point = [0, 1, 2, 3].map(|i| base[i] + t * (end[i] - base[i]));
            let r = reducibility(conn, &p, tol, opts)?;
            let mut params = BTreeMap::new();
            params.insert("t".to_string(), t);
            for (i, v) in p.iter().enumerate() {
                params.insert(format!("x{}", i + 1), *v);
            }
            Ok(ScanRow {
                params,
                sigma2: r.residual,
                in_nu_p: r.in_nu_p,
            })
        })
        .collect()
}

/// Reducibility at the base point along `(1 - t) c0 + t c1` for linear
/// connections.
pub fn scan_linear_family(
    c0: &LinearCoefficients,
    c1: &LinearCoefficients,
    ts: &[f64],
    tol: RankTolerance,
) -> Result<Vec<ScanRow>> {
    ts.iter()
        .map(|&t| {
            let mut c = *c0;
            for a in 0..3 {
                for mu in 0..4 {
                    for nu in 0..4 {
                        c[a][mu][nu] = (1.0 - t) * c0[a][mu][nu] + t * c1[a][mu][nu];
                    }
                }
            }
            let conn = ConnectionSpec::linear(c)?;
            let r = reducibility(&conn, &conn.base(), tol, &CurvatureOptions::default())?;
            Ok(ScanRow {
                params: BTreeMap::from([("t".to_string(), t)]),
                sigma2: r.residual,
                in_nu_p: r.in_nu_p,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn levi_civita_signs() {
        let eps = levi_civita();
        assert_eq!(eps[0][1][2][3], 1.0);
        assert_eq!(eps[1][0][2][3], -1.0);
        assert_eq!(eps[3][0][1][2], -1.0);
        assert_eq!(eps[0][0][2][3], 0.0);
    }

    #[test]
    fn basis_is_orthogonal() {
        let b = asd_basis();
        for x in 0..3 {
            for y in 0..3 {
                let dot: f64 = (0..4)
                    .flat_map(|m| (0..4).map(move |n| (m, n)))
                    .map(|(m, n)| b[x][m][n] * b[y][m][n])
                    .sum();
                assert_eq!(dot, if x == y { 4.0 } else { 0.0 });
            }
        }
    }

    #[test]
    fn linear_family_leaves_the_variety() {
        let b = asd_basis();
        let mut c0 = [[[0.0; 4]; 4]; 3];
        let mut c1 = c0;
        for mu in 0..4 {
            for nu in 0..4 {
                c0[0][mu][nu] = 0.5 * b[0][mu][nu];
                c1[0][mu][nu] = 0.5 * b[0][mu][nu];
                c1[1][mu][nu] = 0.5 * b[1][mu][nu];
            }
        }
        let rows = scan_linear_family(&c0, &c1, &[0.0, 0.5, 1.0], RankTolerance::default()).unwrap();
        assert!(rows[0].in_nu_p);
        assert!(!rows[1].in_nu_p && !rows[2].in_nu_p);
        assert!((rows[2].sigma2 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn bpst_segment_scan() {
        let conn = ConnectionSpec::bpst([0.0; 4], 1.0).unwrap();
        let rows = scan_segment(
            &conn,
            &[0.5, 0.0, 0.0, 0.0],
            4,
            RankTolerance::default(),
            &CurvatureOptions::default(),
        )
        .unwrap();
        assert_eq!(rows.len(), 5);
        assert!(rows.iter().all(|r| !r.in_nu_p));
        assert_eq!(rows[4].params["x1"], 0.5);
    }
}
