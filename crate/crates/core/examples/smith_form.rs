//! Smith normal form of a small integer matrix, with the unimodular
//! transforms and a kernel basis.
//!
//! ```text
//! cargo run --example smith_form
//! ```

use grassmann_mu::intlattice::{integer_kernel_basis, rational_rank, smith_normal_form, IntMatrix};

fn main() {
    let a = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
    let snf = smith_normal_form(&a);
    println!("A =\n{a}");
    println!("S = U A V =\n{}", snf.s);
    println!("invariant factors: {:?}", snf.invariant_factors());
    println!("U A V == S and U, V invertible: {}", snf.verify(&a));

    let b = IntMatrix::from_rows(&[vec![1, 2, 3], vec![2, 4, 6]]);
    println!("\nrank of B over Q: {}", rational_rank(&b));
    for v in integer_kernel_basis(&b) {
        let image = b.mul_vec(&v);
        println!("kernel vector {v:?} -> {image:?}");
    }
}
