//! Where the rank-one variety meets the cells of S_7, the local signs under
//! both co-orientations, and the orientation ledger.
//!
//! ```text
//! cargo run --release --example nu_orientation
//! ```

use grassmann_mu::frames::{
    calibrated_coorientation, intersection_sign_complex, intersection_sign_real, nu_dot_s, nu_intersect_cell,
    orientation_ledger, scan_cell_grid, Coorientation,
};
use grassmann_mu::schubert::s_cycle;
use grassmann_mu::tolerance::RankTolerance;

fn main() -> grassmann_mu::Result<()> {
    let n = 7;
    let co = calibrated_coorientation(n)?;
    println!("calibrated co-orientation: {co:?}");
    for (cell, coeff) in s_cycle(n)?.terms() {
        let points = nu_intersect_cell(cell)?;
        // a coarse grid is enough to see the isolated zero
        let grid = scan_cell_grid(cell, 2.0, 9, RankTolerance::default(), &points)?;
        print!(
            "{coeff:+} {cell}: {} point(s), grid min residual off points {:.3}",
            points.len(),
            grid.min_residual_off_solutions
        );
        for p in &points {
            print!(
                ", at {:?} sign {} (minor-lex {})",
                p.coords(),
                intersection_sign_real(p, co)?,
                intersection_sign_real(p, Coorientation::MinorLex)?
            );
        }
        println!();
    }
    println!("signed count nu . S_{n} = {}", nu_dot_s(n, co)?);
    println!("complex c2 cycle . S_{n} = {}", intersection_sign_complex()?);
    let ledger = orientation_ledger()?;
    println!("{}", serde_json::to_string_pretty(&ledger).expect("serializable"));
    Ok(())
}
