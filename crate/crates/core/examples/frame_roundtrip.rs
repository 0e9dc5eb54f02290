//! Random frames through Gram-Schmidt and the canonical Schubert-cell form.
//!
//! ```text
//! cargo run --example frame_roundtrip
//! ```

use grassmann_mu::frames::{
    change_of_basis_determinant, classify_cell, embed_cell_point, gram_schmidt, nu_membership, orthonormality_defect,
    span_distance, FrameMatrix,
};
use grassmann_mu::tolerance::RankTolerance;
use nalgebra::Matrix3xX;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> grassmann_mu::Result<()> {
    let tol = RankTolerance::default();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..5 {
        let frame = FrameMatrix::new(Matrix3xX::from_fn(7, |_, _| rng.gen_range(-1.0..1.0)))?;
        let point = classify_cell(&frame, tol)?;
        let back = embed_cell_point(&point);
        let q = gram_schmidt(&frame)?;
        println!(
            "{}  span distance {:.1e}  orientation {:+.0}  orthonormality defect {:.1e}",
            point.cell(),
            span_distance(&frame, &back)?,
            change_of_basis_determinant(&frame, &back)?.signum(),
            orthonormality_defect(&q)
        );
    }

    // a frame in the rank-one variety, parsed from text
    let f = FrameMatrix::parse_text("1 0 0 0 0 0 0\n0 0 0 1 0 0 0\n0 0 0 0 1 0 0\n")?;
    let m = nu_membership(&f, tol);
    println!(
        "\n{} lies in {}; rank-one block: {} (sigma = {:?})",
        f.to_json(),
        classify_cell(&f, tol)?.cell(),
        m.member,
        m.sigma
    );
    Ok(())
}
