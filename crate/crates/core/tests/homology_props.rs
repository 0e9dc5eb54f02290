use grassmann_mu::homology::{class_of, HomologyBasis};
use grassmann_mu::intlattice::integer_kernel_basis;
use grassmann_mu::schubert::{boundary_matrix, Chain};
use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;

fn kernel(n: usize, q: usize) -> Vec<Vec<BigInt>> {
    integer_kernel_basis(&boundary_matrix(n, q).unwrap())
}

fn combine(basis: &[Vec<BigInt>], weights: &[i64]) -> Vec<BigInt> {
    let mut out = vec![BigInt::from(0); basis[0].len()];
    for (v, &w) in basis.iter().zip(weights) {
        for (o, x) in out.iter_mut().zip(v) {
            *o += x * w;
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn class_of_is_linear(n in 6usize..=8, q in 2usize..=6, wa in prop::collection::vec(-3i64..=3, 40), wb in prop::collection::vec(-3i64..=3, 40)) {
        let basis = kernel(n, q);
        prop_assume!(!basis.is_empty());
        let za = combine(&basis, &wa);
        let zb = combine(&basis, &wb);
        let sum: Vec<BigInt> = za.iter().zip(&zb).map(|(a, b)| a + b).collect();
        let hb = HomologyBasis::compute(n, q).unwrap();
        let ca = hb.class_of(&Chain::from_coordinates(n, q, &za).unwrap()).unwrap();
        let cb = hb.class_of(&Chain::from_coordinates(n, q, &zb).unwrap()).unwrap();
        let cs = hb.class_of(&Chain::from_coordinates(n, q, &sum).unwrap()).unwrap();
        for i in 0..cs.free.len() {
            prop_assert_eq!(&cs.free[i], &(&ca.free[i] + &cb.free[i]));
        }
        for i in 0..cs.torsion.len() {
            let (m, r) = &cs.torsion[i];
            prop_assert_eq!(r, &(&ca.torsion[i].1 + &cb.torsion[i].1).mod_floor(m));
        }
    }

    #[test]
    fn boundaries_are_null_homologous(n in 5usize..=8, q in 1usize..=5, w in prop::collection::vec(-4i64..=4, 60)) {
        let d = boundary_matrix(n, q + 1).unwrap();
        let x: Vec<BigInt> = (0..d.cols()).map(|i| BigInt::from(w[i % w.len()])).collect();
        let chain = Chain::from_coordinates(n, q, &d.mul_vec(&x)).unwrap();
        prop_assert!(class_of(&chain, n).unwrap().is_zero());
    }
}
