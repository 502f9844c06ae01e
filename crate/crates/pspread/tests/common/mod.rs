//! Helpers shared by the acceptance and invariant suites.

// each test binary compiles this module separately and uses a subset
#![allow(dead_code)]

use pspread::{
    random_disjoint_extension, random_subspace_of, Code, Codeword, CodewordKind, MatF, Received,
    Rng, Subspace,
};

/// Wraps a spanning matrix into the fixed k x n wire shape (zero-padded).
pub fn to_received(code: &Code, basis: &MatF) -> Received {
    let mut m = basis.clone();
    if m.rows() < code.k() {
        m = m
            .vstack(&MatF::zeros(m.q(), code.k() - m.rows(), m.cols()))
            .unwrap();
    }
    Received::new(code, m).unwrap()
}

/// Decodable received words built as H + E with dim H = a inside the sent
/// codeword and dim E = b, b < a <= k and a + b <= k so the word fits the
/// wire; d(V, X) = k - a + b < k by construction.
pub fn sampled_decodable_cases(code: &Code, count: usize, seed: u64) -> Vec<(Codeword, Received)> {
    let k = code.k();
    let pairs: Vec<(usize, usize)> = (1..=k)
        .flat_map(|a| (0..a).map(move |b| (a, b)))
        .filter(|&(a, b)| a + b <= k)
        .collect();
    let mut out = Vec::with_capacity(count);
    for trial in 0..count {
        let mut rng = Rng::substream(seed, trial as u64);
        let index = rng.below(code.cardinality() as u64) as u128;
        let sent = code.encode(index).unwrap();
        let (a, b) = pairs[trial % pairs.len()];
        let h = random_subspace_of(&sent.subspace(), a, &mut rng).unwrap();
        let x = random_disjoint_extension(&h, b, &mut rng).unwrap();
        let recv = to_received(code, x.basis());
        // E avoids H but may still clip V, so d can come in under k - a + b
        let d = sent.subspace().distance(&x).unwrap();
        assert!(d <= k - a + b, "d = {d} exceeds k - a + b");
        out.push((sent, recv));
    }
    out
}

/// Every subspace of F_2^4 with dimension 1 or 2, together with the unique
/// codeword of the 2-spread within distance < 2 when one exists (found by a
/// direct distance scan, independent of the decoders under test).
pub fn exhaustive_spread_cases(code: &Code) -> Vec<(Option<Codeword>, Received)> {
    assert_eq!((code.q(), code.k(), code.n()), (2, 2, 4));
    let words: Vec<(Codeword, Subspace)> = code
        .codewords()
        .map(|w| {
            let s = w.subspace();
            (w, s)
        })
        .collect();
    let mut out = Vec::new();
    for dim in 1..=2usize {
        for x in pspread::enumerate_grassmannian(2, dim, 4, None).unwrap() {
            let near: Vec<&(Codeword, Subspace)> = words
                .iter()
                .filter(|(_, v)| v.distance(&x).unwrap() < code.k())
                .collect();
            assert!(near.len() <= 1, "unique decoding radius violated");
            out.push((
                near.first().map(|(w, _)| w.clone()),
                to_received(code, x.basis()),
            ));
        }
    }
    out
}

/// The identity-block position of a codeword's generator template, if any.
pub fn template_pivot(w: &Codeword) -> Option<usize> {
    match &w.kind {
        CodewordKind::Special => None,
        CodewordKind::Block { i, .. } => Some(*i),
    }
}

/// Received-space span as a Subspace.
pub fn span_received(x: &Received) -> Subspace {
    Subspace::span(x.matrix())
}
