use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which stratum of the compactified moduli space a limit of reducible
/// connections lands in, given `m` bubbles out of charge `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryCase {
    pub case_id: u8,
    pub m: usize,
    pub k: usize,
    pub p_in_bubble_set: bool,
    pub limit_reducible: bool,
}

/// Case 2 when a bubble sits at `p`; otherwise case 3 when all charge
/// bubbles off, else case 1, which needs the limit to stay reducible at `p`.
pub fn classify_boundary_case(
    m: usize,
    k: usize,
    p_in_bubble_set: bool,
    limit_reducible: bool,
) -> Result<BoundaryCase> {
    if m == 0 || m > k {
        return Err(Error::InvalidArgument(format!("need 0 < m <= k, got m = {m}, k = {k}")));
    }
    let case_id = if p_in_bubble_set {
        2
    } else if m == k {
        3
    } else if limit_reducible {
        1
    } else {
        return Err(Error::InconsistentLimit(format!(
            "m = {m} < k = {k} with p outside the bubble set requires a reducible limit"
        )));
    };
    Ok(BoundaryCase {
        case_id,
        m,
        k,
        p_in_bubble_set,
        limit_reducible,
    })
}
