//! Shared fixtures for the pipeline benchmarks.

use pspread::{random_subspace_of, Code, MatF, Received, Rng};

/// The running example: C_2(2,7) with x^2+x+1 and x^3+x+1.
pub fn example_code() -> Code {
    Code::build(2, 2, 7, Some(&[1, 1, 1]), Some(&[1, 1, 0, 1])).unwrap()
}

/// Decodable received words (single-dimension erasures of random codewords).
pub fn erased_words(code: &Code, count: usize, seed: u64) -> Vec<Received> {
    let mut rng = Rng::new(seed);
    (0..count)
        .map(|_| {
            let w = code
                .encode(rng.below(code.cardinality() as u64) as u128)
                .unwrap();
            let h = random_subspace_of(&w.subspace(), 1, &mut rng).unwrap();
            let mut m = h.basis().clone();
            m = m
                .vstack(&MatF::zeros(m.q(), code.k() - m.rows(), m.cols()))
                .unwrap();
            Received::new(code, m).unwrap()
        })
        .collect()
}

/// Random full matrices over F_2 for the elimination benchmark.
pub fn random_matrices(rows: usize, cols: usize, count: usize, seed: u64) -> Vec<MatF> {
    let mut rng = Rng::new(seed);
    (0..count)
        .map(|_| {
            let data: Vec<u32> = (0..rows * cols).map(|_| rng.field_elem(2)).collect();
            MatF::new(2, rows, cols, data).unwrap()
        })
        .collect()
}
