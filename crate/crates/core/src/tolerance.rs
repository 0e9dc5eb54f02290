//! Numerical rank rule shared by frames and curvature matrices.

use serde::{Deserialize, Serialize};

/// A singular value counts as zero when it is at most `atol + rtol * sigma_max`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RankTolerance {
    pub atol: f64,
    pub rtol: f64,
}

impl Default for RankTolerance {
    fn default() -> Self {
        RankTolerance {
            atol: 1e-12,
            rtol: 1e-9,
        }
    }
}

impl RankTolerance {
    pub fn new(atol: f64, rtol: f64) -> Self {
        RankTolerance { atol, rtol }
    }

    pub fn threshold(&self, sigma_max: f64) -> f64 {
        self.atol + self.rtol * sigma_max
    }

    /// Number of singular values above the threshold. `sigma` must be sorted
    /// in decreasing order.
    pub fn rank(&self, sigma: &[f64]) -> usize {
        let Some(&top) = sigma.first() else {
            return 0;
        };
        let thr = self.threshold(top);
        sigma.iter().filter(|&&s| s > thr).count()
    }
}

/// Singular values of a dense matrix, largest first.
pub(crate) fn singular_values(m: &nalgebra::DMatrix<f64>) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    let mut s: Vec<f64> = m.singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Singular values of a 3×3 matrix, largest first.
pub(crate) fn singular_values3(m: &nalgebra::Matrix3<f64>) -> [f64; 3] {
    let mut s: [f64; 3] = m.singular_values().into();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}
