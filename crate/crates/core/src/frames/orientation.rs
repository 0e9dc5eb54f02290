use std::fmt;

use nalgebra::{Complex, Matrix4, Vector3, Vector4};
use serde::{Deserialize, Serialize, Serializer};

use super::cells::canonical_matrix;
use super::FrameMatrix;
use crate::error::{Error, Result};
use crate::schubert::CellIndex;

type C64 = Complex<f64>;

/// The two complex 3-vectors `(x1 + i x4, y1 + i y4, z1 + i z4)` and
/// `(x2 + i x3, y2 + i y3, z2 + i z3)` built from a frame's rows.
fn complex_pair(frame: &FrameMatrix) -> Result<(Vector3<C64>, Vector3<C64>)> {
    if frame.ambient() < 4 {
        return Err(Error::InvalidArgument(format!(
            "complex test needs N >= 4, got {}",
            frame.ambient()
        )));
    }
    let f = frame.entries();
    let a = Vector3::from_fn(|r, _| C64::new(f[(r, 0)], f[(r, 3)]));
    let b = Vector3::from_fn(|r, _| C64::new(f[(r, 1)], f[(r, 2)]));
    Ok((a, b))
}

/// Norm of the complex cross product `a × b` (bilinear, no conjugation).
pub fn colinearity_residual(frame: &FrameMatrix) -> Result<f64> {
    let (a, b) = complex_pair(frame)?;
    let cross = Vector3::new(
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    );
    Ok(cross.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
}

/// Whether the complex span of the frame meets the codimension-2 subspace
/// `{w1 + i w4 = w2 + i w3 = 0}` of `C^N` in at least two dimensions.
pub fn y_membership_complex(frame: &FrameMatrix, tol: f64) -> Result<bool> {
    Ok(colinearity_residual(frame)? <= tol)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComplexSignOptions {
    /// reverse the orientation of the source cell
    pub source_reversed: bool,
    /// cell coordinates are `reparametrization * s` for the source variable `s`
    pub reparametrization: Matrix4<f64>,
}

impl Default for ComplexSignOptions {
    fn default() -> Self {
        ComplexSignOptions {
            source_reversed: false,
            reparametrization: Matrix4::identity(),
        }
    }
}

/// Intersection sign of `e+(1,4,5)` with the complex cycle at its single
/// common point, with the target `C^2` oriented as
/// `(Re v2, Im v2, Re v3, Im v3)`.
pub fn intersection_sign_complex() -> Result<i32> {
    intersection_sign_complex_with(&ComplexSignOptions::default())
}

pub fn intersection_sign_complex_with(opts: &ComplexSignOptions) -> Result<i32> {
    let cell = CellIndex::plus(1, 4, 5, 7)?;
    // (v2, v3) = (b2 - b1 a2/a1, b3 - b1 a3/a1); they vanish exactly when b ∥ a,
    // given a1 != 0 near the point
    let defining = |s: &Vector4<f64>| -> Result<Vector4<f64>> {
        let coords = opts.reparametrization * s;
        let frame = FrameMatrix::from_entries_unchecked(canonical_matrix(&cell, coords.as_slice()));
        let (a, b) = complex_pair(&frame)?;
        let v2 = b[1] - b[0] * a[1] / a[0];
        let v3 = b[2] - b[0] * a[2] / a[0];
        Ok(Vector4::new(v2.re, v2.im, v3.re, v3.im))
    };

    let origin = Vector4::zeros();
    let at_origin = defining(&origin)?;
    if at_origin.norm() > 1e-12 {
        return Err(Error::Internal(
            "origin of e+(1,4,5) is not on the complex cycle".into(),
        ));
    }
    let h = 1e-4;
    let mut jac = Matrix4::zeros();
    for t in 0..4 {
        let mut e = Vector4::zeros();
        e[t] = h;
        let column = (defining(&(origin + e))? - defining(&(origin - e))?) / (2.0 * h);
        jac.set_column(t, &column);
    }
    let det = jac.determinant();
    if det.abs() < 1e-12 {
        return Err(Error::Internal(format!("degenerate complex Jacobian (det = {det:e})")));
    }
    let sign = det.signum() as i32;
    Ok(if opts.source_reversed { -sign } else { sign })
}

/// An exact rational number, serialized as `"p/q"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
pub struct Fraction {
    pub numer: i64,
    pub denom: i64,
}

impl Fraction {
    pub fn to_f64(self) -> f64 {
        self.numer as f64 / self.denom as f64
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer, self.denom)
    }
}

impl Serialize for Fraction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Pontryagin class versus second Chern class of the complexification.
pub const P1_VS_C2: i32 = -1;

/// How the rank-one variety must be oriented, and its coefficient in the
/// point class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OrientationLedger {
    /// intersection of the complex `c2` cycle with the degree-4 generator
    pub complex_sign: i32,
    pub p1_vs_c2: i32,
    /// required intersection of the `p1`-oriented variety with the generator
    #[serde(rename = "nu_dot_S")]
    pub nu_dot_s: i32,
    pub mu_coefficient: Fraction,
}

impl OrientationLedger {
    pub fn is_consistent(&self) -> bool {
        self.nu_dot_s == self.complex_sign * self.p1_vs_c2 && self.mu_coefficient == Fraction { numer: -1, denom: 4 }
    }
}

pub fn orientation_ledger() -> Result<OrientationLedger> {
    let complex_sign = intersection_sign_complex()?;
    Ok(OrientationLedger {
        complex_sign,
        p1_vs_c2: P1_VS_C2,
        nu_dot_s: complex_sign * P1_VS_C2,
        mu_coefficient: Fraction { numer: -1, denom: 4 },
    })
}
