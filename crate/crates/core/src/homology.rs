//! Integer cellular homology of the oriented 3-plane Grassmannian built from
//! the Schubert chain complex.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intlattice::{rational_rank, smith_normal_form, IntMatrix};
use crate::schubert::{boundary_matrix, enumerate_cells, top_dimension, Chain};

/// `H_q` as a free rank plus torsion invariant factors (each > 1, in
/// divisibility order).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyGroup {
    pub degree: usize,
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

impl HomologyGroup {
    pub fn is_infinite_cyclic(&self) -> bool {
        self.free_rank == 1 && self.torsion.is_empty()
    }
}

/// Coordinates of a homology class: the free part, then one residue per
/// torsion summand (reduced into `0..modulus`).
///
/// The sign of free coordinates depends on the basis the Smith reduction
/// happens to pick; only magnitudes and primitivity are meaningful.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyClass {
    pub degree: usize,
    pub free: Vec<BigInt>,
    pub torsion: Vec<(BigInt, BigInt)>,
}

impl HomologyClass {
    pub fn is_zero(&self) -> bool {
        self.free.iter().all(Zero::is_zero) && self.torsion.iter().all(|(_, r)| r.is_zero())
    }

    /// True iff the class generates a free rank-one group: one free
    /// coordinate equal to ±1 and no torsion component.
    pub fn is_generator(&self) -> bool {
        self.free.len() == 1 && self.free[0].abs().is_one() && self.torsion.iter().all(|(_, r)| r.is_zero())
    }

    /// gcd of the free coordinates is 1.
    pub fn is_primitive(&self) -> bool {
        self.free.iter().fold(BigInt::zero(), |g, x| g.gcd(x)).is_one()
    }
}

/// Everything needed to write a degree-`q` cycle in a basis of `H_q`.
#[derive(Clone, Debug)]
pub struct HomologyBasis {
    n: usize,
    degree: usize,
    /// rows `rank(d_q)..` of `V^{-1}` from the Smith form of `d_q`:
    /// sends a cycle to its coordinates in the saturated kernel basis
    to_kernel: IntMatrix,
    /// left transform of the Smith form of the image inside the kernel
    to_snf: IntMatrix,
    invariant_factors: Vec<BigInt>,
    kernel_rank: usize,
}

impl HomologyBasis {
    pub fn compute(n: usize, q: usize) -> Result<Self> {
        check_degree(n, q)?;
        let n_q = enumerate_cells(n, Some(q))?.len();

        let to_kernel = if q == 0 {
            IntMatrix::identity(n_q)
        } else {
            let dq = boundary_matrix(n, q)?;
            let snf = smith_normal_form(&dq);
            IntMatrix::from_fn(n_q - snf.rank, n_q, |r, c| snf.v_inv[(snf.rank + r, c)].clone())
        };
        let kernel_rank = to_kernel.rows();

        let image = if q < top_dimension(n) {
            to_kernel.mul(&boundary_matrix(n, q + 1)?)
        } else {
            IntMatrix::zeros(kernel_rank, 0)
        };
        let snf = smith_normal_form(&image);
        let invariant_factors = snf.invariant_factors();

        Ok(HomologyBasis {
            n,
            degree: q,
            to_kernel,
            to_snf: snf.u,
            invariant_factors,
            kernel_rank,
        })
    }

    pub fn group(&self) -> HomologyGroup {
        HomologyGroup {
            degree: self.degree,
            free_rank: self.kernel_rank - self.invariant_factors.len(),
            torsion: self
                .invariant_factors
                .iter()
                .filter(|d| !d.is_one())
                .map(|d| d.to_u64().expect("torsion factor fits in u64"))
                .collect(),
        }
    }

    pub fn class_of(&self, chain: &Chain) -> Result<HomologyClass> {
        if chain.ambient() != self.n || chain.degree() != self.degree {
            return Err(Error::InvalidArgument(format!(
                "chain of degree {} on N = {} used with H_{} on N = {}",
                chain.degree(),
                chain.ambient(),
                self.degree,
                self.n
            )));
        }
        if !is_cycle(chain) {
            return Err(Error::PreconditionViolation(format!("{chain} is not a cycle")));
        }
        let y = self.to_kernel.mul_vec(&chain.coordinates());
        let z = self.to_snf.mul_vec(&y);
        let rank = self.invariant_factors.len();
        let torsion = self
            .invariant_factors
            .iter()
            .zip(&z)
            .filter(|(d, _)| !d.is_one())
            .map(|(d, v)| (d.clone(), v.mod_floor(d)))
            .collect();
        Ok(HomologyClass {
            degree: self.degree,
            free: z[rank..].to_vec(),
            torsion,
        })
    }
}

fn check_degree(n: usize, q: usize) -> Result<()> {
    enumerate_cells(n, Some(0))?;
    if q > top_dimension(n) {
        return Err(Error::InvalidArgument(format!(
            "degree {q} outside 0..={} for N = {n}",
            top_dimension(n)
        )));
    }
    Ok(())
}

/// `H_q(G_N; Z)` from the Smith forms of `d_q` and `d_{q+1}`.
pub fn homology_group(n: usize, q: usize) -> Result<HomologyGroup> {
    Ok(HomologyBasis::compute(n, q)?.group())
}

/// Betti number `dim C_q - rank d_q - rank d_{q+1}` via fraction-free
/// elimination only.
pub fn rational_betti(n: usize, q: usize) -> Result<usize> {
    check_degree(n, q)?;
    let n_q = enumerate_cells(n, Some(q))?.len();
    let rank_in = if q == 0 {
        0
    } else {
        rational_rank(&boundary_matrix(n, q)?)
    };
    let rank_out = if q < top_dimension(n) {
        rational_rank(&boundary_matrix(n, q + 1)?)
    } else {
        0
    };
    Ok(n_q - rank_in - rank_out)
}

pub fn is_cycle(chain: &Chain) -> bool {
    chain.boundary().is_empty()
}

/// Convenience wrapper building the basis on the fly.
pub fn class_of(chain: &Chain, n: usize) -> Result<HomologyClass> {
    HomologyBasis::compute(n, chain.degree())?.class_of(chain)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerReport {
    pub n: usize,
    pub cell_euler: i64,
    pub betti_euler: i64,
    pub betti_snf: Vec<usize>,
    pub betti_rational: Vec<usize>,
    pub consistent: bool,
}

/// Compares the alternating cell count with the alternating Betti sum, and
/// the Smith-form Betti numbers with the rational-rank ones.
pub fn euler_consistency(n: usize) -> Result<EulerReport> {
    let counts = crate::schubert::cell_counts(n)?;
    let mut betti_snf = Vec::with_capacity(counts.len());
    let mut betti_rational = Vec::with_capacity(counts.len());
    for q in 0..counts.len() {
        betti_snf.push(homology_group(n, q)?.free_rank);
        betti_rational.push(rational_betti(n, q)?);
    }
    let alternating = |v: &[usize]| {
        v.iter()
            .enumerate()
            .map(|(q, &b)| if q % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum::<i64>()
    };
    let cell_euler = alternating(&counts);
    let betti_euler = alternating(&betti_snf);
    Ok(EulerReport {
        n,
        cell_euler,
        betti_euler,
        consistent: cell_euler == betti_euler && betti_snf == betti_rational,
        betti_snf,
        betti_rational,
    })
}
