//! Real 3×N frames: Gram–Schmidt, the canonical Schubert-cell form, the
//! rank-one variety on the first three columns, and orientation checks.

mod cells;
mod nu;
mod orientation;

pub use cells::{classify_cell, embed_cell_point, free_positions, CellPoint, AMBIGUITY_BAND};
pub use nu::{
    calibrated_coorientation, intersection_sign_real, nu_dot_s, nu_intersect_cell, nu_membership, scan_cell_grid,
    Coorientation, GridScan, NuMembership,
};
pub use orientation::{
    colinearity_residual, intersection_sign_complex, intersection_sign_complex_with, orientation_ledger,
    y_membership_complex, ComplexSignOptions, Fraction, OrientationLedger,
};

use nalgebra::{DMatrix, Matrix3, Matrix3xX};

use crate::error::{Error, Result};
use crate::tolerance::{singular_values, RankTolerance};

/// A rank-3 real `3 × N` matrix; rows are the spanning vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct FrameMatrix {
    entries: Matrix3xX<f64>,
}

impl FrameMatrix {
    /// Validates rank 3 under the default tolerance.
    pub fn new(entries: Matrix3xX<f64>) -> Result<Self> {
        Self::with_tolerance(entries, RankTolerance::default())
    }

    pub fn with_tolerance(entries: Matrix3xX<f64>, tol: RankTolerance) -> Result<Self> {
        let frame = FrameMatrix { entries };
        frame.check_rank(tol)?;
        Ok(frame)
    }

    /// Skips the rank check; for matrices that are full rank by construction.
    pub(crate) fn from_entries_unchecked(entries: Matrix3xX<f64>) -> Self {
        FrameMatrix { entries }
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        if rows.len() != 3 {
            return Err(Error::parse("rows", format!("expected 3 rows, found {}", rows.len())));
        }
        let n = rows[0].len();
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::parse(
                    format!("rows[{r}]"),
                    format!("expected {n} entries, found {}", row.len()),
                ));
            }
        }
        Self::new(Matrix3xX::from_fn(n, |r, c| rows[r][c]))
    }

    /// Three lines of whitespace-separated decimals.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for (r, line) in text.lines().filter(|l| !l.trim().is_empty()).enumerate() {
            let row = line
                .split_whitespace()
                .enumerate()
                .map(|(c, tok)| {
                    tok.parse::<f64>()
                        .map_err(|e| Error::parse(format!("rows[{r}][{c}]"), e.to_string()))
                })
                .collect::<Result<Vec<f64>>>()?;
            rows.push(row);
        }
        Self::from_rows(&rows)
    }

    /// A JSON array of three equal-length numeric arrays.
    pub fn parse_json(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let rows: Vec<Vec<f64>> = serde_path_to_error::deserialize(de)
            .map_err(|e| Error::parse(e.path().to_string(), e.inner().to_string()))?;
        Self::from_rows(&rows)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.rows()).expect("finite floats serialize")
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..3).map(|r| self.entries.row(r).iter().copied().collect()).collect()
    }

    pub fn ambient(&self) -> usize {
        self.entries.ncols()
    }

    pub fn entries(&self) -> &Matrix3xX<f64> {
        &self.entries
    }

    /// Singular values, largest first.
    pub fn singular_values(&self) -> [f64; 3] {
        let s = singular_values(&DMatrix::from_iterator(3, self.ambient(), self.entries.iter().copied()));
        [s[0], s[1], s[2]]
    }

    fn check_rank(&self, tol: RankTolerance) -> Result<()> {
        if self.ambient() < 3 {
            return Err(Error::InvalidArgument(format!(
                "a 3-frame needs at least 3 columns, found {}",
                self.ambient()
            )));
        }
        let s = self.singular_values();
        let threshold = tol.threshold(s[0]);
        if s[2] <= threshold {
            return Err(Error::DegenerateFrame {
                sigma3: s[2],
                threshold,
            });
        }
        Ok(())
    }

    /// Left multiplication by a 3×3 matrix (a change of spanning vectors).
    pub fn left_mul(&self, g: &Matrix3<f64>) -> FrameMatrix {
        FrameMatrix {
            entries: g * &self.entries,
        }
    }

    pub fn negated(&self) -> FrameMatrix {
        FrameMatrix {
            entries: -&self.entries,
        }
    }

    /// First three columns.
    pub fn leading_block(&self) -> Matrix3<f64> {
        self.entries.fixed_columns::<3>(0).into_owned()
    }
}

/// Orthonormalizes the rows by Gram–Schmidt (two passes per row).
///
/// The change of basis from input to output is lower triangular with a
/// positive diagonal, so the oriented span is unchanged.
pub fn gram_schmidt(frame: &FrameMatrix) -> Result<FrameMatrix> {
    let tol = RankTolerance::default();
    let scale = frame.singular_values()[0];
    let threshold = tol.threshold(scale);
    let mut q = frame.entries.clone();
    for r in 0..3 {
        let mut row = q.row(r).into_owned();
        for _ in 0..2 {
            for prev in 0..r {
                let p = q.row(prev);
                let dot = row.dot(&p);
                row -= p * dot;
            }
        }
        let norm = row.norm();
        if norm <= threshold {
            return Err(Error::DegenerateFrame {
                sigma3: norm,
                threshold,
            });
        }
        q.set_row(r, &(row / norm));
    }
    Ok(FrameMatrix { entries: q })
}

/// Maximum deviation of `Q Q^T` from the identity.
pub fn orthonormality_defect(frame: &FrameMatrix) -> f64 {
    let gram = &frame.entries * frame.entries.transpose();
    (gram - Matrix3::identity()).abs().max()
}

/// Largest residual of projecting each frame's rows onto the other's row
/// span. Zero iff the spans agree. Both inputs are orthonormalized first.
pub fn span_distance(a: &FrameMatrix, b: &FrameMatrix) -> Result<f64> {
    let qa = gram_schmidt(a)?;
    let qb = gram_schmidt(b)?;
    let project = |x: &Matrix3xX<f64>, basis: &Matrix3xX<f64>| {
        let coeffs = x * basis.transpose();
        (x - coeffs * basis).abs().max()
    };
    Ok(project(&qa.entries, &qb.entries).max(project(&qb.entries, &qa.entries)))
}

/// Determinant of the 3×3 matrix `C` with `b = C a` on row spans, assuming
/// equal spans. Positive iff the two frames induce the same orientation.
pub fn change_of_basis_determinant(a: &FrameMatrix, b: &FrameMatrix) -> Result<f64> {
    let qa = gram_schmidt(a)?;
    // b = C a  =>  C = b a^+, and with a = T q_a: C = (b q_a^T) T^{-1}
    let t = &a.entries * qa.entries.transpose();
    let bq = &b.entries * qa.entries.transpose();
    Ok(bq.determinant() / t.determinant())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_frame(rng: &mut ChaCha8Rng, n: usize) -> FrameMatrix {
        FrameMatrix::new(Matrix3xX::from_fn(n, |_, _| rng.gen_range(-1.0..1.0))).unwrap()
    }

    #[test]
    fn rank_deficient_frames_are_rejected() {
        let rows = vec![
            vec![1.0, 0.0, 0.0, 0.0],
            vec![2.0, 0.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0, 0.0],
        ];
        assert!(matches!(
            FrameMatrix::from_rows(&rows),
            Err(Error::DegenerateFrame { .. })
        ));
        assert!(FrameMatrix::from_rows(&rows[..2]).is_err());
    }

    #[test]
    fn gram_schmidt_fixes_orthonormal_frames() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let q = gram_schmidt(&random_frame(&mut rng, 7)).unwrap();
        let again = gram_schmidt(&q).unwrap();
        assert!((q.entries() - again.entries()).abs().max() < 1e-14);
    }

    #[test]
    fn gram_schmidt_ignores_positive_row_scaling() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let f = random_frame(&mut rng, 6);
        let scaled = f.left_mul(&Matrix3::from_diagonal(&nalgebra::Vector3::new(2.0, 0.5, 7.0)));
        let a = gram_schmidt(&f).unwrap();
        let b = gram_schmidt(&scaled).unwrap();
        assert!((a.entries() - b.entries()).abs().max() < 1e-12);
    }

    #[test]
    fn gram_schmidt_random_property() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..200 {
            let f = random_frame(&mut rng, 7);
            let q = gram_schmidt(&f).unwrap();
            assert!(orthonormality_defect(&q) < 1e-12);
            assert!(span_distance(&f, &q).unwrap() < 1e-10);
            assert!(change_of_basis_determinant(&f, &q).unwrap() > 0.0);
        }
    }

    #[test]
    fn orientation_detects_reflection() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let f = random_frame(&mut rng, 5);
        let flip = Matrix3::from_diagonal(&nalgebra::Vector3::new(1.0, 1.0, -1.0));
        assert!(change_of_basis_determinant(&f, &f.left_mul(&flip)).unwrap() < 0.0);
        assert!(change_of_basis_determinant(&f, &f.negated()).unwrap() < 0.0);
    }

    #[test]
    fn parse_text_and_json() {
        let f = FrameMatrix::parse_text("1 0 0 0\n0 0 1 0\n0 0 0 1\n").unwrap();
        assert_eq!(f.ambient(), 4);
        let g = FrameMatrix::parse_json(&f.to_json()).unwrap();
        assert_eq!(f, g);

        let err = FrameMatrix::parse_json(r#"[[1,0,0],[0,"x",0],[0,0,1]]"#).unwrap_err();
        assert!(err.to_string().contains("[1]"), "{err}");
        let err = FrameMatrix::parse_text("1 0 0\n0 1\n0 0 1\n").unwrap_err();
        assert!(err.to_string().contains("rows[1]"), "{err}");
    }
}
