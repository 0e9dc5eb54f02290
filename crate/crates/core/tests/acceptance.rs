//! One test per acceptance criterion. Each prints a `PASS`/`FAIL` line
//! (straight to stderr, so it shows even when output is captured) and then
//! asserts.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

use std::io::Write;
use std::time::{Duration, Instant};

use grassmann_mu::frames::{
    change_of_basis_determinant, classify_cell, embed_cell_point, gram_schmidt, intersection_sign_complex,
    nu_intersect_cell, orientation_ledger, orthonormality_defect, scan_cell_grid, span_distance, CellPoint,
    FrameMatrix,
};
use grassmann_mu::gauge::{
    asd_basis, fd_convergence_order, reducibility, ConnectionSpec, CurvatureOptions, Point, Stencil,
};
use grassmann_mu::homology::{class_of, euler_consistency, homology_group, is_cycle, rational_betti};
use grassmann_mu::schubert::{boundary_matrix, enumerate_cells, s_cycle, top_dimension, CellIndex};
use grassmann_mu::tolerance::RankTolerance;
use nalgebra::{Matrix3, Matrix3xX, Rotation3, Vector3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

fn report(id: u32, name: &str, failures: &[String]) {
    let status = if failures.is_empty() { "PASS" } else { "FAIL" };
    let mut err = std::io::stderr().lock();
    let _ = writeln!(err, "acceptance {id} [{status}] {name}");
    for f in failures {
        let _ = writeln!(err, "    {f}");
    }
    assert!(failures.is_empty(), "criterion {id} failed:\n{}", failures.join("\n"));
}

fn check_budget(failures: &mut Vec<String>, start: Instant, budget: Duration) {
    let elapsed = start.elapsed();
    if elapsed > budget {
        failures.push(format!("runtime {elapsed:?} exceeds {budget:?}"));
    }
}

#[test]
fn criterion_1_boundary_squares_to_zero() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for n in 3..=10 {
        let top = top_dimension(n);
        let matrices: Vec<_> = (1..=top).map(|q| boundary_matrix(n, q).unwrap()).collect();
        for (q, pair) in matrices.windows(2).enumerate() {
            if !pair[0].mul(&pair[1]).is_zero() {
                failures.push(format!("N = {n}: d_{} d_{} != 0", q + 1, q + 2));
            }
        }
    }
    check_budget(&mut failures, start, Duration::from_secs(60));
    report(1, "d_q d_(q+1) = 0 exactly for N in 3..=10, all degrees", &failures);
}

#[test]
fn criterion_2_h4_is_infinite_cyclic() {
    let mut failures = Vec::new();
    for n in 7..=10 {
        let g = homology_group(n, 4).unwrap();
        if !(g.free_rank == 1 && g.torsion.is_empty()) {
            failures.push(format!(
                "N = {n}: H_4 has free rank {} and torsion {:?}",
                g.free_rank, g.torsion
            ));
        }
    }
    report(2, "H_4(G_N) = Z for N in 7..=10", &failures);
}

#[test]
fn criterion_3_s_cycle_generates() {
    let mut failures = Vec::new();
    for n in 7..=10 {
        let s = s_cycle(n).unwrap();
        if !is_cycle(&s) {
            failures.push(format!("N = {n}: S_N is not a cycle"));
            continue;
        }
        let class = class_of(&s, n).unwrap();
        if !class.is_generator() {
            let coords: Vec<String> = class.free.iter().map(|c| c.to_string()).collect();
            failures.push(format!("N = {n}: class coordinates {coords:?} are not a single +-1"));
        }
    }
    report(3, "S_N is a cycle with class coordinate +-1 for N in 7..=10", &failures);
}

#[test]
fn criterion_4_intersection_pattern() {
    let mut failures = Vec::new();
    let tol = RankTolerance::default();
    for (i, j, k, expected) in [(1, 4, 5, 1), (1, 3, 6, 0), (1, 2, 7, 0)] {
        let cell = CellIndex::plus(i, j, k, 7).unwrap();
        let points = nu_intersect_cell(&cell).unwrap();
        if points.len() != expected {
            failures.push(format!("{cell}: {} points, expected {expected}", points.len()));
        }
        if points.iter().any(|p| p.coords().iter().any(|&c| c != 0.0)) {
            failures.push(format!("{cell}: intersection point is not the origin"));
        }
        let grid = scan_cell_grid(&cell, 2.0, 21, tol, &points).unwrap();
        if grid.nodes != 21usize.pow(4) {
            failures.push(format!("{cell}: grid has {} nodes", grid.nodes));
        }
        if !(grid.min_residual_off_solutions > 0.0) {
            failures.push(format!(
                "{cell}: residual {} at a non-solution node",
                grid.min_residual_off_solutions
            ));
        }
        if grid.hits.len() != expected {
            failures.push(format!("{cell}: {} grid hits", grid.hits.len()));
        }
    }
    report(
        4,
        "rank-one variety meets e+(1,4,5) once at the origin, misses e+(1,3,6), e+(1,2,7)",
        &failures,
    );
}

#[test]
fn criterion_5_orientation_ledger() {
    let mut failures = Vec::new();
    let complex = intersection_sign_complex().unwrap();
    if complex != 1 {
        failures.push(format!("complex sign {complex}"));
    }
    let ledger = orientation_ledger().unwrap();
    if ledger.nu_dot_s != -1 {
        failures.push(format!("nu_dot_S = {}", ledger.nu_dot_s));
    }
    if ledger.mu_coefficient.to_string() != "-1/4" {
        failures.push(format!("mu coefficient {}", ledger.mu_coefficient));
    }
    report(5, "complex sign +1, nu_dot_S = -1, mu coefficient -1/4", &failures);
}

#[test]
fn criterion_6_cross_path_homology() {
    let mut failures = Vec::new();
    for n in 3..=9 {
        for q in 0..=top_dimension(n) {
            let snf = homology_group(n, q).unwrap().free_rank;
            let rat = rational_betti(n, q).unwrap();
            if snf != rat {
                failures.push(format!("N = {n}, q = {q}: Smith rank {snf} vs rational {rat}"));
            }
        }
        let e = euler_consistency(n).unwrap();
        if !e.consistent {
            failures.push(format!("N = {n}: euler report {e:?}"));
        }
    }
    report(
        6,
        "Smith-form and rational Betti numbers agree, Euler characteristic checks, N <= 9",
        &failures,
    );
}

fn linear_from_basis(scale: [f64; 3]) -> ConnectionSpec {
    let b = asd_basis();
    let mut c = [[[0.0; 4]; 4]; 3];
    for a in 0..3 {
        for mu in 0..4 {
            for nu in 0..4 {
                c[a][mu][nu] = scale[a] * b[a][mu][nu];
            }
        }
    }
    ConnectionSpec::linear(c).unwrap()
}

fn quintic() -> ConnectionSpec {
    let eval = |x: &Point| {
        let mut out = [[0.0; 3]; 4];
        for nu in 0..4 {
            for a in 0..3 {
                out[nu][a] = x[(nu + a) % 4].powi(5) - 0.5 * x[nu] * x[a].powi(2);
            }
        }
        out
    };
    let jac = |x: &Point| {
        let mut out = [[[0.0; 3]; 4]; 4];
        for mu in 0..4 {
            for nu in 0..4 {
                for a in 0..3 {
                    let mut v = 0.0;
                    if mu == (nu + a) % 4 {
                        v += 5.0 * x[mu].powi(4);
                    }
                    if mu == nu {
                        v -= 0.5 * x[a].powi(2);
                    }
                    if mu == a {
                        v -= x[nu] * x[a];
                    }
                    out[mu][nu][a] = v;
                }
            }
        }
        out
    };
    ConnectionSpec::custom(Arc::new(eval), Some(Arc::new(jac)))
}

#[test]
fn criterion_7_gauge_suite() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let tol = RankTolerance::default();
    let origin = [0.0; 4];
    let fd = CurvatureOptions::finite_difference(1e-3, Stencil::Central4);

    let flat = reducibility(&ConnectionSpec::flat(), &origin, tol, &fd).unwrap();
    if !(flat.in_nu_p && flat.residual <= 1e-12) {
        failures.push(format!("flat: in_nu_p {} sigma2 {:e}", flat.in_nu_p, flat.residual));
    }

    let lin = reducibility(&linear_from_basis([0.5, 0.0, 0.0]), &origin, tol, &fd).unwrap();
    if !(lin.in_nu_p && lin.residual <= 1e-10) {
        failures.push(format!(
            "rank-one linear: in_nu_p {} sigma2 {:e}",
            lin.in_nu_p, lin.residual
        ));
    }

    let bpst = reducibility(&ConnectionSpec::bpst(origin, 1.0).unwrap(), &origin, tol, &fd).unwrap();
    let ratio = bpst.matrix.sigma[1] / bpst.matrix.sigma[0];
    if !(bpst.f_plus_norm < 1e-6 && ratio > 0.5 && !bpst.in_nu_p) {
        failures.push(format!("instanton: |F+| {:e}, sigma2/sigma1 {ratio}", bpst.f_plus_norm));
    }

    let p = [0.3, -0.2, 0.25, 0.1];
    for (label, conn, h) in [
        ("quintic", quintic(), 0.05),
        ("instanton", ConnectionSpec::bpst(origin, 1.0).unwrap(), 0.05),
    ] {
        let c = fd_convergence_order(&conn, &p, h, Stencil::Central4).unwrap();
        if !(c.order >= 1.9) {
            failures.push(format!("{label}: observed order {:.3} ({c:?})", c.order));
        }
    }
    let lin_conn = linear_from_basis([0.5, -0.25, 1.0]);
    let exact = grassmann_mu::gauge::curvature_at(&lin_conn, &p, &CurvatureOptions::analytic()).unwrap();
    let approx = grassmann_mu::gauge::curvature_at(&lin_conn, &p, &fd).unwrap();
    if exact.max_abs_difference(&approx) > 1e-10 {
        failures.push(format!(
            "linear: differences deviate by {:e}",
            exact.max_abs_difference(&approx)
        ));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let samples = [
        lin,
        bpst,
        reducibility(&linear_from_basis([0.5, 0.2, 0.0]), &origin, tol, &fd).unwrap(),
    ];
    for _ in 0..100 {
        let axis = Vector3::new(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        );
        let rot: Matrix3<f64> =
            Rotation3::new(axis.normalize() * rng.gen_range(0.0..std::f64::consts::PI)).into_inner();
        for s in &samples {
            let moved = s.matrix.rotated(&rot);
            if moved.is_reducible(tol) != s.in_nu_p || (moved.sigma[1] - s.residual).abs() > 1e-10 {
                failures.push(format!(
                    "rotation changed rank data: {:?} -> {:?}",
                    s.matrix.sigma, moved.sigma
                ));
            }
        }
    }

    check_budget(&mut failures, start, Duration::from_secs(30));
    report(
        7,
        "gauge suite: flat, rank-one linear, instanton, convergence order, SO(3) invariance",
        &failures,
    );
}

#[test]
fn criterion_8_round_trips() {
    let mut failures = Vec::new();
    let tol = RankTolerance::default();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let cells = enumerate_cells(7, None).unwrap();
    for _ in 0..1000 {
        let cell = cells[rng.gen_range(0..cells.len())];
        let coords: Vec<f64> = (0..cell.dimension()).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let point = CellPoint::new(cell, coords).unwrap();
        match classify_cell(&embed_cell_point(&point), tol) {
            Ok(back) => {
                let drift = back
                    .coords()
                    .iter()
                    .zip(point.coords())
                    .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
                if back.cell() != cell || drift > 1e-10 {
                    failures.push(format!("{cell} came back as {} with drift {drift:e}", back.cell()));
                }
            }
            Err(e) => failures.push(format!("{cell}: {e}")),
        }
    }
    for _ in 0..1000 {
        let n = rng.gen_range(3..=10);
        let f = FrameMatrix::new(Matrix3xX::from_fn(n, |_, _| rng.gen_range(-1.0..1.0))).unwrap();
        let q = gram_schmidt(&f).unwrap();
        let qq = gram_schmidt(&q).unwrap();
        let idem = (q.entries() - qq.entries()).abs().max();
        let span = span_distance(&f, &q).unwrap();
        let det = change_of_basis_determinant(&f, &q).unwrap();
        if idem > 1e-10 || span > 1e-10 || det <= 0.0 || orthonormality_defect(&q) > 1e-10 {
            failures.push(format!("N = {n}: idempotence {idem:e}, span {span:e}, det {det}"));
        }
    }
    failures.truncate(20);
    report(
        8,
        "classify/embed round-trip on 1000 cell points, Gram-Schmidt on 1000 frames",
        &failures,
    );
}
