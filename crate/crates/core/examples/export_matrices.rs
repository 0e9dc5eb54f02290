//! Writes the cell listings and boundary matrices of G_6 to a directory and
//! reads one back.
//!
//! ```text
//! cargo run --example export_matrices [dir]
//! ```

use grassmann_mu::intlattice::{smith_normal_form, IntMatrix};
use grassmann_mu::schubert::export_boundary_matrices;

fn main() -> grassmann_mu::Result<()> {
    let dir = std::env::args()
        .nth(1)
        .map(Into::into)
        .unwrap_or_else(|| std::env::temp_dir().join("grassmann-mu-export"));
    let files = export_boundary_matrices(6, 9, &dir)?;
    println!("wrote {} files under {}", files.len(), dir.display());

    let d2 = IntMatrix::parse_text(&std::fs::read_to_string(dir.join("d2.txt"))?)?;
    let snf = smith_normal_form(&d2);
    println!(
        "d2 is {}x{}, invariant factors {:?}",
        d2.rows(),
        d2.cols(),
        snf.invariant_factors()
    );
    print!("{}", std::fs::read_to_string(dir.join("cells2.txt"))?);
    Ok(())
}
