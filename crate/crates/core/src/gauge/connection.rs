use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{asd_basis, Point};
use crate::error::{Error, Result};

/// `A^a_μ(x)`, indexed `[μ][a]`.
pub type Potential = [[f64; 3]; 4];

/// `∂_μ A^a_ν(x)`, indexed `[μ][ν][a]`.
pub type Jacobian = [[[f64; 3]; 4]; 4];

/// Coefficients `c^a_{μν}` of a linear connection, indexed `[a][μ][ν]`.
pub type LinearCoefficients = [[[f64; 4]; 4]; 3];

pub type Evaluator = Arc<dyn Fn(&Point) -> Potential + Send + Sync>;
pub type JacobianFn = Arc<dyn Fn(&Point) -> Jacobian + Send + Sync>;

#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ConnectionKind {
    Flat,
    Linear { c: LinearCoefficients },
    Bpst { center: Point, lambda: f64 },
    Custom,
}

/// A Lie-algebra valued 1-form on a closed ball in `R^4`.
///
/// The evaluator must be stateless: curvature and scans may call it from
/// several threads.
#[derive(Clone)]
pub struct ConnectionSpec {
    kind: ConnectionKind,
    evaluator: Evaluator,
    jacobian: Option<JacobianFn>,
    base: Point,
    radius: f64,
}

impl fmt::Debug for ConnectionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ConnectionSpec")
            .field("kind", &self.kind)
            .field("analytic_jacobian", &self.jacobian.is_some())
            .field("base", &self.base)
            .field("radius", &self.radius)
            .finish()
    }
}

fn sub(x: &Point, y: &Point) -> Point {
    [x[0] - y[0], x[1] - y[1], x[2] - y[2], x[3] - y[3]]
}

impl ConnectionSpec {
    /// `A ≡ 0` on the unit ball about the origin.
    pub fn flat() -> Self {
        ConnectionSpec {
            kind: ConnectionKind::Flat,
            evaluator: Arc::new(|_| [[0.0; 3]; 4]),
            jacobian: Some(Arc::new(|_| [[[0.0; 3]; 4]; 4])),
            base: [0.0; 4],
            radius: 1.0,
        }
    }

    /// `A^a_ν(x) = c^a_{νμ} (x - base)^μ`. Antisymmetry of `c` in `(μ, ν)` is
    /// required; it is the radial gauge condition for linear potentials.
    pub fn linear(c: LinearCoefficients) -> Result<Self> {
        for (a, block) in c.iter().enumerate() {
            for mu in 0..4 {
                for nu in 0..4 {
                    let defect = (block[mu][nu] + block[nu][mu]).abs();
                    if !block[mu][nu].is_finite() || defect > 1e-12 * (1.0 + block[mu][nu].abs()) {
                        return Err(Error::parse(
                            format!("c[{a}][{mu}][{nu}]"),
                            format!(
                                "coefficients must be antisymmetric in the form indices: c[{a}][{mu}][{nu}] = {}, c[{a}][{nu}][{mu}] = {}",
                                block[mu][nu], block[nu][mu]
                            ),
                        ));
                    }
                }
            }
        }
        let base = [0.0; 4];
        Ok(ConnectionSpec {
            kind: ConnectionKind::Linear { c },
            evaluator: Arc::new(move |x| {
                let y = sub(x, &base);
                let mut out = [[0.0; 3]; 4];
                for (a, block) in c.iter().enumerate() {
                    for nu in 0..4 {
                        out[nu][a] = (0..4).map(|mu| block[nu][mu] * y[mu]).sum();
                    }
                }
                out
            }),
            jacobian: Some(Arc::new(move |_| {
                let mut out = [[[0.0; 3]; 4]; 4];
                for (a, block) in c.iter().enumerate() {
                    for mu in 0..4 {
                        for nu in 0..4 {
                            out[mu][nu][a] = block[nu][mu];
                        }
                    }
                }
                out
            })),
            base,
            radius: 1.0,
        })
    }

    /// The charge-one instanton
    /// `A^a_μ = -2 (B_a)_{μν} (x - c)^ν / (|x - c|^2 + λ^2)`
    /// in regular gauge. Base point is the center.
    pub fn bpst(center: Point, lambda: f64) -> Result<Self> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::parse(
                "lambda",
                format!("scale must be positive and finite, got {lambda}"),
            ));
        }
        if let Some(i) = center.iter().position(|v| !v.is_finite()) {
            return Err(Error::parse(format!("center[{i}]"), "coordinate is not finite"));
        }
        let b = asd_basis();
        let l2 = lambda * lambda;
        Ok(ConnectionSpec {
            kind: ConnectionKind::Bpst { center, lambda },
            evaluator: Arc::new(move |x| {
                let y = sub(x, &center);
                let d = y.iter().map(|v| v * v).sum::<f64>() + l2;
                let mut out = [[0.0; 3]; 4];
                for (a, ba) in b.iter().enumerate() {
                    for mu in 0..4 {
                        out[mu][a] = -2.0 * (0..4).map(|nu| ba[mu][nu] * y[nu]).sum::<f64>() / d;
                    }
                }
                out
            }),
            jacobian: Some(Arc::new(move |x| {
                let y = sub(x, &center);
                let d = y.iter().map(|v| v * v).sum::<f64>() + l2;
                let mut out = [[[0.0; 3]; 4]; 4];
                for (a, ba) in b.iter().enumerate() {
                    for nu in 0..4 {
                        let by: f64 = (0..4).map(|s| ba[nu][s] * y[s]).sum();
                        for rho in 0..4 {
                            out[rho][nu][a] = -2.0 * ba[nu][rho] / d + 4.0 * by * y[rho] / (d * d);
                        }
                    }
                }
                out
            })),
            base: center,
            radius: 1.0,
        })
    }

    pub fn custom(evaluator: Evaluator, jacobian: Option<JacobianFn>) -> Self {
        ConnectionSpec {
            kind: ConnectionKind::Custom,
            evaluator,
            jacobian,
            base: [0.0; 4],
            radius: 1.0,
        }
    }

    /// Moves the ball the connection is defined on. For linear connections
    /// the potential is re-centred so that it still vanishes at the base.
    pub fn with_ball(mut self, base: Point, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::parse(
                "radius",
                format!("must be positive and finite, got {radius}"),
            ));
        }
        if let Some(i) = base.iter().position(|v| !v.is_finite()) {
            return Err(Error::parse(format!("base[{i}]"), "coordinate is not finite"));
        }
        if let ConnectionKind::Linear { c } = self.kind {
            let jac = self.jacobian.clone();
            let shifted = Self::linear(c)?;
            let eval = shifted.evaluator;
            self.evaluator = Arc::new(move |x| eval(&sub(x, &base)));
            self.jacobian = jac;
        }
        self.base = base;
        self.radius = radius;
        Ok(self)
    }

    pub fn kind(&self) -> &ConnectionKind {
        &self.kind
    }

    pub fn base(&self) -> Point {
        self.base
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn potential(&self, x: &Point) -> Potential {
        (self.evaluator)(x)
    }

    pub fn has_analytic_jacobian(&self) -> bool {
        self.jacobian.is_some()
    }

    pub fn analytic_jacobian(&self, x: &Point) -> Option<Jacobian> {
        self.jacobian.as_ref().map(|j| j(x))
    }

    pub(crate) fn distance_from_base(&self, x: &Point) -> f64 {
        sub(x, &self.base).iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// Parses a JSON descriptor such as `{"kind":"bpst","center":[0,0,0,0],"lambda":1}`
    /// or `{"kind":"linear","c":[...]}`. `base` and `radius` are optional.
    pub fn from_json(text: &str) -> Result<Self> {
        let mut value: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::parse(".", e.to_string()))?;
        let map = value
            .as_object_mut()
            .ok_or_else(|| Error::parse(".", "descriptor must be a JSON object"))?;
        let kind = match map.remove("kind") {
            Some(serde_json::Value::String(k)) => k,
            Some(other) => return Err(Error::parse("kind", format!("expected a string, found {other}"))),
            None => return Err(Error::parse("kind", "missing field")),
        };
        fn fields<T: serde::de::DeserializeOwned>(value: serde_json::Value) -> Result<T> {
            serde_path_to_error::deserialize(value)
                .map_err(|e| Error::parse(e.path().to_string(), e.inner().to_string()))
        }
        let (spec, base, radius) = match kind.as_str() {
            "flat" => {
                let d: FlatFields = fields(value)?;
                (ConnectionSpec::flat(), d.base, d.radius)
            }
            "linear" => {
                let d: LinearFields = fields(value)?;
                (ConnectionSpec::linear(d.c)?, d.base, d.radius)
            }
            "bpst" => {
                let d: BpstFields = fields(value)?;
                (ConnectionSpec::bpst(d.center, d.lambda)?, Some(d.center), d.radius)
            }
            other => {
                return Err(Error::parse(
                    "kind",
                    format!("unknown kind `{other}`, expected one of flat, linear, bpst"),
                ))
            }
        };
        let base = base.unwrap_or(spec.base());
        spec.with_ball(base, radius.unwrap_or(1.0))
    }

    /// Descriptor JSON for the built-in kinds; `None` for custom connections.
    pub fn to_json(&self) -> Option<String> {
        let mut value = match &self.kind {
            ConnectionKind::Custom => return None,
            kind => serde_json::to_value(kind).expect("descriptor serializes"),
        };
        let map = value.as_object_mut().expect("tagged enum is an object");
        if !matches!(self.kind, ConnectionKind::Bpst { .. }) {
            map.insert("base".into(), serde_json::to_value(self.base).expect("finite"));
        }
        map.insert("radius".into(), serde_json::to_value(self.radius).expect("finite"));
        Some(value.to_string())
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FlatFields {
    base: Option<Point>,
    radius: Option<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LinearFields {
    c: LinearCoefficients,
    base: Option<Point>,
    radius: Option<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BpstFields {
    center: Point,
    lambda: f64,
    radius: Option<f64>,
}
