//! The degree-4 cycle S_N = e+(1,4,5) + e+(1,3,6) - e+(1,2,7) and its class
//! in H_4.
//!
//! ```text
//! cargo run --release --example generator
//! ```

use grassmann_mu::homology::{is_cycle, HomologyBasis};
use grassmann_mu::schubert::s_cycle;

fn main() -> grassmann_mu::Result<()> {
    for n in 7..=10 {
        let s = s_cycle(n)?;
        let basis = HomologyBasis::compute(n, 4)?;
        let group = basis.group();
        let class = basis.class_of(&s)?;
        println!(
            "N = {n:>2}: {s}  cycle={} H_4 free rank {} coords {:?} generator={} primitive={}",
            is_cycle(&s),
            group.free_rank,
            class.free.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            class.is_generator(),
            class.is_primitive()
        );
    }
    Ok(())
}
