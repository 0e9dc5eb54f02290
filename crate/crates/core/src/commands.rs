//! Batch commands behind the `grassmann-mu` binary. Each command turns a
//! [`RunConfig`] into a JSON report plus a short human summary; identical
//! configurations give byte-identical reports.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frames::{
    calibrated_coorientation, intersection_sign_complex, intersection_sign_real, nu_dot_s, nu_intersect_cell,
    orientation_ledger, scan_cell_grid, Coorientation, OrientationLedger,
};
use crate::gauge::{
    radial_gauge_residual_seeded, reducibility, scan_segment, ConnectionSpec, CurvatureOptions, Point, ScanRow,
};
use crate::homology::{euler_consistency, is_cycle, EulerReport, HomologyBasis};
use crate::intlattice::smith_normal_form;
use crate::schubert::{boundary_matrix, export_boundary_matrices, s_cycle, top_dimension};
use crate::tolerance::RankTolerance;
use crate::VERSION;

/// Largest `N` accepted unless `GRASSMANN_MU_CAP` says otherwise.
pub const DEFAULT_CAP: usize = 12;
pub const CAP_ENV: &str = "GRASSMANN_MU_CAP";

/// Sample count for the radial-gauge residual in curvature reports.
pub const RADIAL_SAMPLES: usize = 256;

/// Nodes per axis of the grid scan in `nu` reports, over `[-2, 2]`.
pub const NU_GRID_PER_AXIS: usize = 21;
pub const NU_GRID_HALF_WIDTH: f64 = 2.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Homology,
    Generator,
    Nu,
    Curvature,
    Scan,
    Export,
}

/// Fully resolved inputs of one run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: Command,
    pub n: Option<usize>,
    pub qmax: Option<usize>,
    pub atol: f64,
    pub rtol: f64,
    pub h: Option<f64>,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub connection: Option<PathBuf>,
    pub point: Option<Point>,
    pub steps: usize,
    pub cap: usize,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        let tol = RankTolerance::default();
        RunConfig {
            command,
            n: None,
            qmax: None,
            atol: tol.atol,
            rtol: tol.rtol,
            h: None,
            seed: 0,
            out: None,
            connection: None,
            point: None,
            steps: 10,
            cap: cap_from_env(),
        }
    }

    pub fn tolerance(&self) -> RankTolerance {
        RankTolerance::new(self.atol, self.rtol)
    }

    fn require_n(&self, min: usize) -> Result<usize> {
        let n = self
            .n
            .ok_or_else(|| Error::InvalidArgument(format!("{:?} needs --n", self.command).to_lowercase()))?;
        if n < min {
            return Err(Error::InvalidArgument(format!("N = {n} is below the minimum {min}")));
        }
        if n > self.cap {
            return Err(Error::ResourceLimit { n, cap: self.cap });
        }
        Ok(n)
    }

    fn curvature_options(&self) -> CurvatureOptions {
        CurvatureOptions {
            h: self.h,
            ..Default::default()
        }
    }

    fn load_connection(&self) -> Result<ConnectionSpec> {
        let path = self
            .connection
            .as_ref()
            .ok_or_else(|| Error::InvalidArgument("--connection <json-file> is required".into()))?;
        ConnectionSpec::from_json(&std::fs::read_to_string(path)?)
    }
}

/// `GRASSMANN_MU_CAP` if set to a number, else [`DEFAULT_CAP`].
pub fn cap_from_env() -> usize {
    std::env::var(CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_CAP)
}

/// Parses `x1,x2,x3,x4`.
pub fn parse_point(text: &str) -> Result<Point> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        return Err(Error::parse(
            "point",
            format!("expected 4 comma-separated numbers, found {}", parts.len()),
        ));
    }
    let mut p = [0.0; 4];
    for (i, s) in parts.iter().enumerate() {
        p[i] = s
            .parse()
            .map_err(|e: std::num::ParseFloatError| Error::parse(format!("point[{i}]"), e.to_string()))?;
    }
    Ok(p)
}

#[derive(Serialize)]
struct Report<'a, T: Serialize> {
    version: &'static str,
    config: &'a RunConfig,
    certificates: &'a BTreeMap<&'static str, bool>,
    result: &'a T,
}

/// A finished run.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub json: String,
    pub summary: String,
    /// every internal certificate passed
    pub ok: bool,
}

fn finish<T: Serialize>(
    config: &RunConfig,
    certificates: BTreeMap<&'static str, bool>,
    result: &T,
    summary: String,
) -> Outcome {
    let report = Report {
        version: VERSION,
        config,
        certificates: &certificates,
        result,
    };
    let mut json = serde_json::to_string_pretty(&report).expect("reports serialize");
    json.push('\n');
    let ok = certificates.values().all(|&c| c);
    let mut summary = summary;
    for (name, passed) in &certificates {
        let _ = writeln!(summary, "certificate {name}: {}", if *passed { "pass" } else { "FAIL" });
    }
    Outcome { json, summary, ok }
}

pub fn run(config: &RunConfig) -> Result<Outcome> {
    match config.command {
        Command::Homology => cmd_homology(config),
        Command::Generator => cmd_generator(config),
        Command::Nu => cmd_nu(config),
        Command::Curvature => cmd_curvature(config),
        Command::Scan => cmd_scan(config),
        Command::Export => cmd_export(config),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeEntry {
    pub q: usize,
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HomologyResult {
    pub n: usize,
    pub groups: Vec<DegreeEntry>,
    pub euler: EulerReport,
}

/// Homology groups for `q` in `0..=qmax` with chain-complex, Smith-form and
/// Euler-characteristic certificates.
pub fn cmd_homology(config: &RunConfig) -> Result<Outcome> {
    let n = config.require_n(3)?;
    let top = top_dimension(n);
    let qmax = config.qmax.unwrap_or(top).min(top);

    let groups = (0..=qmax)
        .into_par_iter()
        .map(|q| {
            let g = HomologyBasis::compute(n, q)?.group();
            Ok(DegreeEntry {
                q,
                free_rank: g.free_rank,
                torsion: g.torsion,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let last = (qmax + 1).min(top);
    let matrices = (1..=last).map(|q| boundary_matrix(n, q)).collect::<Result<Vec<_>>>()?;
    let dd_zero = matrices.windows(2).all(|w| w[0].mul(&w[1]).is_zero());
    let snf_ok = matrices.par_iter().all(|d| smith_normal_form(d).verify(d));
    let euler = euler_consistency(n)?;

    let mut summary = format!("H_q(G_{n}; Z), q = 0..{qmax}\n");
    for g in &groups {
        let _ = writeln!(summary, "  H_{} = {}", g.q, describe_group(g));
    }
    let certificates = BTreeMap::from([
        ("boundary_squared_zero", dd_zero),
        ("smith_remultiplication", snf_ok),
        ("euler_consistency", euler.consistent),
    ]);
    Ok(finish(
        config,
        certificates,
        &HomologyResult { n, groups, euler },
        summary,
    ))
}

fn describe_group(g: &DegreeEntry) -> String {
    let mut parts = Vec::new();
    match g.free_rank {
        0 => {}
        1 => parts.push("Z".to_string()),
        r => parts.push(format!("Z^{r}")),
    }
    parts.extend(g.torsion.iter().map(|t| format!("Z/{t}")));
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorResult {
    pub n: usize,
    pub cycle: String,
    pub is_cycle: bool,
    pub group: DegreeEntry,
    /// coordinates of the class in the free part of `H_4`
    pub free_coordinates: Vec<i64>,
    /// the single free coordinate when `H_4` has free rank one
    pub class_coordinate: Option<i64>,
    pub is_generator: bool,
    pub is_primitive: bool,
}

/// Class of the degree-4 cycle `S_N` in `H_4(G_N)`.
pub fn cmd_generator(config: &RunConfig) -> Result<Outcome> {
    let n = config.require_n(7)?;
    let cycle = s_cycle(n)?;
    let cycle_ok = is_cycle(&cycle);
    let basis = HomologyBasis::compute(n, 4)?;
    let group = basis.group();
    let class = basis.class_of(&cycle)?;
    let free_coordinates = class
        .free
        .iter()
        .map(|c| {
            c.to_i64()
                .ok_or_else(|| Error::Internal("class coordinate overflows i64".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let result = GeneratorResult {
        n,
        cycle: cycle.to_string(),
        is_cycle: cycle_ok,
        group: DegreeEntry {
            q: 4,
            free_rank: group.free_rank,
            torsion: group.torsion,
        },
        class_coordinate: (free_coordinates.len() == 1).then(|| free_coordinates[0]),
        free_coordinates,
        is_generator: class.is_generator(),
        is_primitive: class.is_primitive(),
    };
    let summary = format!(
        "S_{n} = {}\n  H_4 = {}, coordinates {:?}, generator: {}, primitive: {}\n",
        result.cycle,
        describe_group(&result.group),
        result.free_coordinates,
        result.is_generator,
        result.is_primitive
    );
    let certificates = BTreeMap::from([("is_cycle", cycle_ok)]);
    Ok(finish(config, certificates, &result, summary))
}

#[derive(Clone, Debug, Serialize)]
pub struct NuCellReport {
    pub coefficient: i64,
    /// free coordinates of each intersection point
    pub points: Vec<Vec<f64>>,
    pub raw_signs: Vec<i32>,
    pub signs: Vec<i32>,
    pub grid_nodes: usize,
    pub grid_hits: usize,
    pub residual_min_off_point: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct NuResult {
    pub n: usize,
    pub cells: BTreeMap<String, NuCellReport>,
    pub coorientation: Coorientation,
    pub complex_sign: i32,
    #[serde(rename = "nu_dot_S")]
    pub nu_dot_s: i32,
    pub ledger: OrientationLedger,
}

/// Intersections of the rank-one variety with the cells of `S_N` and the
/// orientation ledger.
pub fn cmd_nu(config: &RunConfig) -> Result<Outcome> {
    let n = config.require_n(7)?;
    let tol = config.tolerance();
    let cycle = s_cycle(n)?;
    let coorientation = calibrated_coorientation(n)?;
    let terms: Vec<_> = cycle.terms().map(|(c, k)| (*c, *k)).collect();
    let cells = terms
        .par_iter()
        .map(|(cell, coefficient)| {
            let points = nu_intersect_cell(cell)?;
            let raw_signs = points
                .iter()
                .map(|p| intersection_sign_real(p, Coorientation::MinorLex))
                .collect::<Result<Vec<_>>>()?;
            let signs = points
                .iter()
                .map(|p| intersection_sign_real(p, coorientation))
                .collect::<Result<Vec<_>>>()?;
            let grid = scan_cell_grid(cell, NU_GRID_HALF_WIDTH, NU_GRID_PER_AXIS, tol, &points)?;
            Ok((
                cell.to_string(),
                NuCellReport {
                    coefficient: *coefficient,
                    points: points.iter().map(|p| p.coords().to_vec()).collect(),
                    raw_signs,
                    signs,
                    grid_nodes: grid.nodes,
                    grid_hits: grid.hits.len(),
                    residual_min_off_point: grid.min_residual_off_solutions,
                },
            ))
        })
        .collect::<Result<BTreeMap<_, _>>>()?;
    let complex_sign = intersection_sign_complex()?;
    let count = nu_dot_s(n, coorientation)?;
    let ledger = orientation_ledger()?;

    let mut summary = format!("rank-one variety against S_{n} ({coorientation:?})\n");
    for (name, c) in &cells {
        let _ = writeln!(
            summary,
            "  {name}: {} point(s), signs {:?}, grid residual off points >= {:e}",
            c.points.len(),
            c.signs,
            c.residual_min_off_point
        );
    }
    let _ = writeln!(
        summary,
        "  complex sign {complex_sign}, nu.S = {count}, mu coefficient {}",
        ledger.mu_coefficient
    );
    let grid_clean = cells
        .values()
        .all(|c| c.residual_min_off_point > 0.0 && c.grid_hits == c.points.len());
    let certificates = BTreeMap::from([
        ("ledger_consistent", ledger.is_consistent()),
        ("signed_count_matches_ledger", count == ledger.nu_dot_s),
        ("grid_clean", grid_clean),
    ]);
    let result = NuResult {
        n,
        cells,
        coorientation,
        complex_sign,
        nu_dot_s: count,
        ledger,
    };
    Ok(finish(config, certificates, &result, summary))
}

#[derive(Clone, Debug, Serialize)]
pub struct CurvatureResult {
    pub point: Point,
    #[serde(rename = "M")]
    pub m: [[f64; 3]; 3],
    pub sigma: [f64; 3],
    pub in_nu_p: bool,
    pub f_plus_norm: f64,
    pub radial_residual: f64,
}

/// Curvature matrix and reducibility of a connection at `--point`
/// (default: its base point).
pub fn cmd_curvature(config: &RunConfig) -> Result<Outcome> {
    let conn = config.load_connection()?;
    let point = config.point.unwrap_or(conn.base());
    let r = reducibility(&conn, &point, config.tolerance(), &config.curvature_options())?;
    let radial_residual = radial_gauge_residual_seeded(&conn, &conn.base(), RADIAL_SAMPLES, config.seed)?;
    let result = CurvatureResult {
        point,
        m: r.matrix.rows(),
        sigma: r.matrix.sigma,
        in_nu_p: r.in_nu_p,
        f_plus_norm: r.f_plus_norm,
        radial_residual,
    };
    let summary = format!(
        "curvature at {point:?}\n  sigma = {:?}\n  in nu_p: {}\n  |F+| = {:e}, radial residual = {:e}\n",
        result.sigma, result.in_nu_p, result.f_plus_norm, result.radial_residual
    );
    Ok(finish(config, BTreeMap::new(), &result, summary))
}

/// Reducibility along the segment from the base point to `--point`.
pub fn cmd_scan(config: &RunConfig) -> Result<Outcome> {
    let conn = config.load_connection()?;
    let end = config
        .point
        .ok_or_else(|| Error::InvalidArgument("scan needs --point for the segment end".into()))?;
    let rows: Vec<ScanRow> = scan_segment(
        &conn,
        &end,
        config.steps,
        config.tolerance(),
        &config.curvature_options(),
    )?;
    let reducible = rows.iter().filter(|r| r.in_nu_p).count();
    let summary = format!("scanned {} points, {reducible} reducible\n", rows.len());
    Ok(finish(config, BTreeMap::new(), &rows, summary))
}

#[derive(Clone, Debug, Serialize)]
pub struct ExportResult {
    pub n: usize,
    pub qmax: usize,
    pub files: Vec<PathBuf>,
}

/// Writes cell listings and boundary matrices into the `--out` directory.
pub fn cmd_export(config: &RunConfig) -> Result<Outcome> {
    let n = config.require_n(3)?;
    let dir = config
        .out
        .as_ref()
        .ok_or_else(|| Error::InvalidArgument("export needs --out <dir>".into()))?;
    let qmax = config.qmax.unwrap_or(top_dimension(n)).min(top_dimension(n));
    let files = export_boundary_matrices(n, qmax, dir)?;
    let summary = format!("wrote {} files to {}\n", files.len(), dir.display());
    Ok(finish(
        config,
        BTreeMap::new(),
        &ExportResult { n, qmax, files },
        summary,
    ))
}
