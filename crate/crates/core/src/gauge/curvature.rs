use nalgebra::Matrix3;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::connection::{ConnectionSpec, Jacobian};
use super::{asd_basis, levi_civita, Point};
use crate::error::{Error, Result};
use crate::tolerance::{singular_values3, RankTolerance};

/// `F^a_{μν}`, indexed `[a][μ][ν]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Curvature {
    pub components: [[[f64; 4]; 4]; 3],
}

impl Curvature {
    pub fn zero() -> Self {
        Curvature {
            components: [[[0.0; 4]; 4]; 3],
        }
    }

    /// Largest `|F^a_{μν} + F^a_{νμ}|`.
    pub fn antisymmetry_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for block in &self.components {
            for mu in 0..4 {
                for nu in 0..4 {
                    worst = worst.max((block[mu][nu] + block[nu][mu]).abs());
                }
            }
        }
        worst
    }

    /// Frobenius norm over all components.
    pub fn norm(&self) -> f64 {
        self.components
            .iter()
            .flatten()
            .flatten()
            .map(|v| v * v)
            .sum::<f64>()
            .sqrt()
    }

    fn map2(&self, other: &Curvature, f: impl Fn(f64, f64) -> f64) -> Curvature {
        let mut out = Curvature::zero();
        for a in 0..3 {
            for mu in 0..4 {
                for nu in 0..4 {
                    out.components[a][mu][nu] = f(self.components[a][mu][nu], other.components[a][mu][nu]);
                }
            }
        }
        out
    }

    pub fn max_abs_difference(&self, other: &Curvature) -> f64 {
        self.map2(other, |x, y| x - y)
            .components
            .iter()
            .flatten()
            .flatten()
            .fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// `(*F)_{μν} = ½ ε_{μνρσ} F_{ρσ}` for the Euclidean metric and orientation
/// `dx¹∧dx²∧dx³∧dx⁴`.
pub fn hodge_star(f: &Curvature) -> Curvature {
    let eps = levi_civita();
    let mut out = Curvature::zero();
    for a in 0..3 {
        for mu in 0..4 {
            for nu in 0..4 {
                let mut s = 0.0;
                for rho in 0..4 {
                    for sigma in 0..4 {
                        s += eps[mu][nu][rho][sigma] * f.components[a][rho][sigma];
                    }
                }
                out.components[a][mu][nu] = 0.5 * s;
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stencil {
    /// `(f(x+h) - f(x-h)) / 2h`
    Central2,
    /// `(-f(x+2h) + 8f(x+h) - 8f(x-h) + f(x-2h)) / 12h`
    Central4,
}

impl Stencil {
    fn reach(self) -> f64 {
        match self {
            Stencil::Central2 => 1.0,
            Stencil::Central4 => 2.0,
        }
    }

    fn order(self) -> i32 {
        match self {
            Stencil::Central2 => 2,
            Stencil::Central4 => 4,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Derivative {
    /// analytic Jacobian when the connection has one, else finite differences
    Auto,
    Analytic,
    FiniteDifference,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurvatureOptions {
    /// step; `None` means `1e-3` of the ball radius
    pub h: Option<f64>,
    pub stencil: Stencil,
    pub derivative: Derivative,
    /// combine steps `h` and `h/2` to cancel the leading error term
    pub richardson: bool,
}

impl Default for CurvatureOptions {
    fn default() -> Self {
        CurvatureOptions {
            h: None,
            stencil: Stencil::Central4,
            derivative: Derivative::Auto,
            richardson: false,
        }
    }
}

impl CurvatureOptions {
    pub fn finite_difference(h: f64, stencil: Stencil) -> Self {
        CurvatureOptions {
            h: Some(h),
            stencil,
            derivative: Derivative::FiniteDifference,
            richardson: false,
        }
    }

    pub fn analytic() -> Self {
        CurvatureOptions {
            derivative: Derivative::Analytic,
            ..Default::default()
        }
    }
}

fn fd_jacobian(conn: &ConnectionSpec, p: &Point, h: f64, stencil: Stencil) -> Jacobian {
    let mut out = [[[0.0; 3]; 4]; 4];
    let shifted = |mu: usize, t: f64| {
        let mut x = *p;
        x[mu] += t;
        conn.potential(&x)
    };
    for (mu, slot) in out.iter_mut().enumerate() {
        let (p1, m1) = (shifted(mu, h), shifted(mu, -h));
        match stencil {
            Stencil::Central2 => {
                for nu in 0..4 {
                    for a in 0..3 {
                        slot[nu][a] = (p1[nu][a] - m1[nu][a]) / (2.0 * h);
                    }
                }
            }
            Stencil::Central4 => {
                let (p2, m2) = (shifted(mu, 2.0 * h), shifted(mu, -2.0 * h));
                for nu in 0..4 {
                    for a in 0..3 {
                        slot[nu][a] = (-p2[nu][a] + 8.0 * p1[nu][a] - 8.0 * m1[nu][a] + m2[nu][a]) / (12.0 * h);
                    }
                }
            }
        }
    }
    out
}

fn richardson(coarse: &Jacobian, fine: &Jacobian, order: i32) -> Jacobian {
    let w = 2f64.powi(order);
    let mut out = *fine;
    for mu in 0..4 {
        for nu in 0..4 {
            for a in 0..3 {
                out[mu][nu][a] = (w * fine[mu][nu][a] - coarse[mu][nu][a]) / (w - 1.0);
            }
        }
    }
    out
}

/// `F^a_{μν}(p) = ∂_μ A^a_ν − ∂_ν A^a_μ + (A_μ × A_ν)^a`.
///
/// Each component is computed once for `μ < ν` and mirrored, so the result
/// is exactly antisymmetric.
pub fn curvature_at(conn: &ConnectionSpec, p: &Point, opts: &CurvatureOptions) -> Result<Curvature> {
    let distance = conn.distance_from_base(p);
    let radius = conn.radius();
    let analytic = match opts.derivative {
        Derivative::Auto => conn.has_analytic_jacobian(),
        Derivative::Analytic => {
            if !conn.has_analytic_jacobian() {
                return Err(Error::InvalidArgument("connection has no analytic Jacobian".into()));
            }
            true
        }
        Derivative::FiniteDifference => false,
    };
    let jac = if analytic {
        if distance > radius {
            return Err(Error::StencilOutOfDomain {
                distance,
                reach: 0.0,
                radius,
            });
        }
        conn.analytic_jacobian(p).expect("checked above")
    } else {
        let h = opts.h.unwrap_or(1e-3 * radius);
        if !(h > 0.0 && h.is_finite()) {
            return Err(Error::InvalidArgument(format!("step must be positive, got {h}")));
        }
        let reach = opts.stencil.reach() * h;
        if distance + reach > radius {
            return Err(Error::StencilOutOfDomain {
                distance,
                reach,
                radius,
            });
        }
        let coarse = fd_jacobian(conn, p, h, opts.stencil);
        if opts.richardson {
            let fine = fd_jacobian(conn, p, 0.5 * h, opts.stencil);
            richardson(&coarse, &fine, opts.stencil.order())
        } else {
            coarse
        }
    };

    let a = conn.potential(p);
    let mut f = Curvature::zero();
    for mu in 0..4 {
        for nu in mu + 1..4 {
            let (x, y) = (a[mu], a[nu]);
            let cross = [
                x[1] * y[2] - x[2] * y[1],
                x[2] * y[0] - x[0] * y[2],
                x[0] * y[1] - x[1] * y[0],
            ];
            for l in 0..3 {
                let v = jac[mu][nu][l] - jac[nu][mu][l] + cross[l];
                f.components[l][mu][nu] = v;
                f.components[l][nu][mu] = -v;
            }
        }
    }
    Ok(f)
}

/// `3 × 3` matrix of the anti-self-dual curvature: rows are Lie-algebra
/// components, columns the basis `B_1, B_2, B_3`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(into = "MatrixRepr", from = "MatrixRepr")]
pub struct CurvatureMatrix {
    pub m: Matrix3<f64>,
    pub sigma: [f64; 3],
}

impl CurvatureMatrix {
    pub fn new(m: Matrix3<f64>) -> Self {
        CurvatureMatrix {
            m,
            sigma: singular_values3(&m),
        }
    }

    pub fn rank(&self, tol: RankTolerance) -> usize {
        tol.rank(&self.sigma)
    }

    pub fn is_reducible(&self, tol: RankTolerance) -> bool {
        self.sigma[1] <= tol.threshold(self.sigma[0])
    }

    /// Action of a gauge rotation on the Lie index.
    pub fn rotated(&self, r: &Matrix3<f64>) -> CurvatureMatrix {
        CurvatureMatrix::new(r * self.m)
    }

    pub fn rows(&self) -> [[f64; 3]; 3] {
        [0, 1, 2].map(|a| [0, 1, 2].map(|b| self.m[(a, b)]))
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    m: [[f64; 3]; 3],
    sigma: [f64; 3],
}

impl From<CurvatureMatrix> for MatrixRepr {
    fn from(c: CurvatureMatrix) -> Self {
        MatrixRepr {
            m: c.rows(),
            sigma: c.sigma,
        }
    }
}

impl From<MatrixRepr> for CurvatureMatrix {
    fn from(r: MatrixRepr) -> Self {
        CurvatureMatrix::new(Matrix3::from_fn(|a, b| r.m[a][b]))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AsdProjection {
    pub matrix: CurvatureMatrix,
    /// Frobenius norm of `F⁺ = (F + *F)/2` over all components
    pub f_plus_norm: f64,
}

/// `M_{ab} = ¼ Σ F^{−,a}_{μν} (B_b)_{μν}` with `F⁻ = (F − *F)/2`.
pub fn asd_project(f: &Curvature) -> AsdProjection {
    let star = hodge_star(f);
    let minus = f.map2(&star, |x, y| 0.5 * (x - y));
    let plus = f.map2(&star, |x, y| 0.5 * (x + y));
    let basis = asd_basis();
    let m = Matrix3::from_fn(|a, b| {
        let mut s = 0.0;
        for mu in 0..4 {
            for nu in 0..4 {
                s += minus.components[a][mu][nu] * basis[b][mu][nu];
            }
        }
        0.25 * s
    });
    AsdProjection {
        matrix: CurvatureMatrix::new(m),
        f_plus_norm: plus.norm(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Reducibility {
    pub in_nu_p: bool,
    /// σ₂ of the curvature matrix
    pub residual: f64,
    pub matrix: CurvatureMatrix,
    pub f_plus_norm: f64,
}

/// Whether the anti-self-dual curvature at `p` has colinear Lie-algebra
/// components, i.e. `rank M <= 1`.
pub fn reducibility(
    conn: &ConnectionSpec,
    p: &Point,
    tol: RankTolerance,
    opts: &CurvatureOptions,
) -> Result<Reducibility> {
    let proj = asd_project(&curvature_at(conn, p, opts)?);
    Ok(Reducibility {
        in_nu_p: proj.matrix.is_reducible(tol),
        residual: proj.matrix.sigma[1],
        matrix: proj.matrix,
        f_plus_norm: proj.f_plus_norm,
    })
}

/// Seed used by [`radial_gauge_residual`].
pub const RADIAL_SAMPLE_SEED: u64 = 0x5eed;

/// Largest `|Σ_μ (x − base)^μ A^a_μ(x)|` over sampled points of the
/// connection's ball, with `base` as the centre of the radial structure.
pub fn radial_gauge_residual(conn: &ConnectionSpec, base: &Point, samples: usize) -> Result<f64> {
    radial_gauge_residual_seeded(conn, base, samples, RADIAL_SAMPLE_SEED)
}

pub fn radial_gauge_residual_seeded(conn: &ConnectionSpec, base: &Point, samples: usize, seed: u64) -> Result<f64> {
    if samples == 0 {
        return Err(Error::InvalidArgument("need at least one sample".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let centre = conn.base();
    let radius = conn.radius();
    let mut worst: f64 = 0.0;
    let mut taken = 0;
    while taken < samples {
        let u: [f64; 4] = [(); 4].map(|_| rng.gen_range(-1.0..1.0));
        if u.iter().map(|v| v * v).sum::<f64>() > 1.0 {
            continue;
        }
        taken += 1;
        let x: Point = [0, 1, 2, 3].map(|i| centre[i] + radius * u[i]);
        let a = conn.potential(&x);
        for l in 0..3 {
            let contraction: f64 = (0..4).map(|mu| (x[mu] - base[mu]) * a[mu][l]).sum();
            worst = worst.max(contraction.abs());
        }
    }
    Ok(worst)
}

/// Observed order of the finite-difference curvature against the analytic
/// one, from the error ratio at steps `h` and `h/2`.
pub fn fd_convergence_order(conn: &ConnectionSpec, p: &Point, h: f64, stencil: Stencil) -> Result<ConvergenceReport> {
    let exact = curvature_at(conn, p, &CurvatureOptions::analytic())?;
    let coarse = curvature_at(conn, p, &CurvatureOptions::finite_difference(h, stencil))?;
    let fine = curvature_at(conn, p, &CurvatureOptions::finite_difference(0.5 * h, stencil))?;
    let error_h = coarse.max_abs_difference(&exact);
    let error_half = fine.max_abs_difference(&exact);
    Ok(ConvergenceReport {
        h,
        error_h,
        error_half,
        order: (error_h / error_half).log2(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub h: f64,
    pub error_h: f64,
    pub error_half: f64,
    pub order: f64,
}
