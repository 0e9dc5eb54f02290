//! Curvature reducibility for the instanton, a rank-one linear connection,
//! and a family that leaves the reducible locus.
//!
//! ```text
//! cargo run --release --example bpst_reducibility
//! ```

use grassmann_mu::gauge::{
    asd_basis, curvature_at, radial_gauge_residual, reducibility, scan_linear_family, scan_segment, ConnectionSpec,
    CurvatureOptions, Stencil,
};
use grassmann_mu::tolerance::RankTolerance;

fn main() -> grassmann_mu::Result<()> {
    let tol = RankTolerance::default();
    let fd = CurvatureOptions::finite_difference(1e-3, Stencil::Central4);

    for lambda in [0.5, 1.0, 2.0] {
        let bpst = ConnectionSpec::bpst([0.0; 4], lambda)?;
        let r = reducibility(&bpst, &[0.0; 4], tol, &fd)?;
        println!(
            "instanton lambda={lambda}: sigma={:.6?} in nu_p={} |F+|={:.1e} radial residual={:.1e}",
            r.matrix.sigma,
            r.in_nu_p,
            r.f_plus_norm,
            radial_gauge_residual(&bpst, &[0.0; 4], 128)?
        );
    }

    let bpst = ConnectionSpec::from_json(include_str!("data/bpst.json"))?;
    let f = curvature_at(&bpst, &[0.2, -0.1, 0.3, 0.0], &CurvatureOptions::default())?;
    println!(
        "\noff-center curvature norm {:.4}, antisymmetry defect {}",
        f.norm(),
        f.antisymmetry_defect()
    );
    for row in scan_segment(&bpst, &[0.6, 0.0, 0.0, 0.0], 3, tol, &CurvatureOptions::default())? {
        println!(
            "  t={:.2} sigma2={:.4} in nu_p={}",
            row.params["t"], row.sigma2, row.in_nu_p
        );
    }

    let linear = ConnectionSpec::from_json(include_str!("data/linear_rank1.json"))?;
    let r = reducibility(&linear, &[0.0; 4], tol, &CurvatureOptions::default())?;
    println!(
        "\nrank-one linear connection: M rows {:?}, in nu_p={}",
        r.matrix.rows(),
        r.in_nu_p
    );

    let b = asd_basis();
    let mut c0 = [[[0.0; 4]; 4]; 3];
    let mut c1 = c0;
    for mu in 0..4 {
        for nu in 0..4 {
            c0[0][mu][nu] = 0.5 * b[0][mu][nu];
            c1[0][mu][nu] = 0.5 * b[0][mu][nu];
            c1[2][mu][nu] = 0.5 * b[1][mu][nu];
        }
    }
    println!("family (1-t) c0 + t c1 at the base point:");
    for row in scan_linear_family(&c0, &c1, &[0.0, 1e-6, 0.25, 1.0], tol)? {
        println!("  {}", serde_json::to_string(&row).expect("serializable"));
    }
    Ok(())
}
