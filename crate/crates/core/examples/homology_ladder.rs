//! Integer homology of the oriented Grassmannian of 3-planes in R^N for a
//! range of N, showing where low degrees stabilize.
//!
//! ```text
//! cargo run --release --example homology_ladder
//! ```

use grassmann_mu::homology::{euler_consistency, homology_group};
use grassmann_mu::schubert::{cell_counts, top_dimension};

fn show(free_rank: usize, torsion: &[u64]) -> String {
    let mut parts = Vec::new();
    if free_rank == 1 {
        parts.push("Z".to_string());
    } else if free_rank > 1 {
        parts.push(format!("Z^{free_rank}"));
    }
    parts.extend(torsion.iter().map(|t| format!("Z/{t}")));
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("+")
    }
}

fn main() -> grassmann_mu::Result<()> {
    println!("{:>3}  {:>6}  H_0 .. H_6", "N", "cells");
    for n in 3..=10 {
        let cells: usize = cell_counts(n)?.iter().sum();
        let row: Vec<String> = (0..=6.min(top_dimension(n)))
            .map(|q| homology_group(n, q).map(|g| show(g.free_rank, &g.torsion)))
            .collect::<Result<_, _>>()?;
        println!("{n:>3}  {cells:>6}  {}", row.join("  "));
    }

    let e = euler_consistency(7)?;
    println!(
        "\nN = 7: cell Euler characteristic {}, Betti Euler characteristic {}, Betti numbers {:?}",
        e.cell_euler, e.betti_euler, e.betti_snf
    );
    Ok(())
}
