//! The three limit strata, and the perturbation bound that keeps limits of
//! reducible curvature matrices reducible.
//!
//! ```text
//! cargo run --example boundary_cases
//! ```

use grassmann_mu::gauge::{classify_boundary_case, CurvatureMatrix};
use grassmann_mu::tolerance::RankTolerance;
use nalgebra::Matrix3;

fn main() {
    for (m, k, at_p, reducible) in [
        (1, 3, false, true),
        (3, 3, false, true),
        (2, 5, true, false),
        (1, 3, false, false),
        (4, 3, false, true),
    ] {
        match classify_boundary_case(m, k, at_p, reducible) {
            Ok(case) => println!(
                "m={m} k={k} p in bubbles={at_p} reducible limit={reducible}: case {}",
                case.case_id
            ),
            Err(e) => println!("m={m} k={k} p in bubbles={at_p} reducible limit={reducible}: {e}"),
        }
    }

    // a sequence of irreducible matrices converging to a rank-one limit
    let limit = Matrix3::new(1.0, 2.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0);
    println!();
    for j in 1..=5 {
        let eps = 10f64.powi(-2 * j);
        let m = CurvatureMatrix::new(limit + Matrix3::from_diagonal_element(eps));
        println!(
            "eps={eps:.0e}: sigma2={:.3e} reducible={}",
            m.sigma[1],
            m.is_reducible(RankTolerance::default())
        );
    }
    println!(
        "limit reducible: {}",
        CurvatureMatrix::new(limit).is_reducible(RankTolerance::default())
    );
}
