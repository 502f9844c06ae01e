//! Partial spread codes C_q(k,n;p,p') given by block-structured generator
//! matrices, together with their parameters, bounds and exhaustive checks.
//!
//! For n = hk + r the code consists of the row spaces of
//!   [0_k ... 0_k I_k A_{i+1} ... A_{h-1} A_(k)]   (I_k in block i, 1 <= i <= h-1)
//! with the A_j in the companion algebra F_q[P] of a degree-k irreducible p,
//! A in F_q[P'] for a degree-(k+r) irreducible p', A_(k) its last k rows,
//! plus the special codeword [0_k ... 0_k 0_{k x r} I_k].

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::ffcore::{FieldCtx, Fq, MatF, Poly};
use crate::subspace::{enumerate_grassmannian, gaussian_binomial, Subspace};

pub const DEFAULT_PAIRWISE_LIMIT: u128 = 10_000;
pub const DEFAULT_MAXIMALITY_LIMIT: u128 = 100_000;

pub struct Code {
    q: u32,
    k: usize,
    n: usize,
    h: usize,
    r: usize,
    ctx_k: FieldCtx,
    ctx_kr: FieldCtx,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CodewordKind {
    Special,
    /// I_k sits in block `i`; `blocks` are A_{i+1}..A_{h-1}, `tail` is the
    /// full (k+r)x(k+r) algebra element A.
    Block {
        i: usize,
        blocks: Vec<MatF>,
        tail: MatF,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codeword {
    pub kind: CodewordKind,
    pub generator: MatF,
    pub index: u128,
}

impl Codeword {
    pub fn subspace(&self) -> Subspace {
        // generator templates are already in RREF
        Subspace::span(&self.generator)
    }
}

impl Code {
    /// Validates parameters and constructs the code. Omitted polynomials are
    /// auto-selected as the smallest monic irreducibles of the right degree.
    pub fn build(
        q: u32,
        k: usize,
        n: usize,
        p: Option<&[u32]>,
        pp: Option<&[u32]>,
    ) -> Result<Code> {
        Fq::get(q)?;
        if k < 1 {
            return Err(Error::InvalidParams("need k >= 1".into()));
        }
        if n < 2 * k {
            return Err(Error::InvalidParams(format!(
                "need 1 <= k <= n/2 (got k={k}, n={n}); decode the orthogonal complement instead"
            )));
        }
        let h = n / k;
        let r = n % k;
        let ctx_k = FieldCtx::from_q(q, k, p).map_err(|e| match e {
            Error::Reducible => Error::InvalidParams("p is reducible".into()),
            Error::DegreeMismatch { expected, found } => {
                Error::InvalidParams(format!("p must have degree {expected}, got {found}"))
            }
            other => other,
        })?;
        let ctx_kr = FieldCtx::from_q(q, k + r, pp).map_err(|e| match e {
            Error::Reducible => Error::InvalidParams("pp is reducible".into()),
            Error::DegreeMismatch { expected, found } => {
                Error::InvalidParams(format!("pp must have degree {expected}, got {found}"))
            }
            other => other,
        })?;
        Ok(Code {
            q,
            k,
            n,
            h,
            r,
            ctx_k,
            ctx_kr,
        })
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn h(&self) -> usize {
        self.h
    }

    #[inline]
    pub fn r(&self) -> usize {
        self.r
    }

    /// Minimum distance of the code, 2k by construction.
    pub fn min_distance(&self) -> usize {
        2 * self.k
    }

    /// Maximum codeword dimension.
    pub fn max_dim(&self) -> usize {
        self.k
    }

    pub fn p(&self) -> &Poly {
        self.ctx_k.modulus()
    }

    pub fn pp(&self) -> &Poly {
        self.ctx_kr.modulus()
    }

    pub fn ctx_k(&self) -> &FieldCtx {
        &self.ctx_k
    }

    pub fn ctx_kr(&self) -> &FieldCtx {
        &self.ctx_kr
    }

    pub fn companion_p(&self) -> MatF {
        self.ctx_k.companion()
    }

    pub fn companion_pp(&self) -> MatF {
        self.ctx_kr.companion()
    }

    /// (q^n - q^r)/(q^k - 1) - q^r + 1, exactly.
    pub fn cardinality(&self) -> u128 {
        let q = self.q as u128;
        let qn = q.pow(self.n as u32);
        let qr = q.pow(self.r as u32);
        let qk = q.pow(self.k as u32);
        (qn - qr) / (qk - 1) - qr + 1
    }

    fn family_size(&self, i: usize) -> u128 {
        let q = self.q as u128;
        q.pow((self.k * (self.h - 1 - i)) as u32) * q.pow((self.k + self.r) as u32)
    }

    /// Index of the codeword with identity block `i` and the given algebra
    /// keys (A_{i+1}..A_{h-1} first, tail key last; first key most
    /// significant).
    pub(crate) fn index_of_parts(&self, i: usize, block_keys: &[u64], tail_key: u64) -> u128 {
        let q = self.q as u128;
        let qk = q.pow(self.k as u32);
        let qkr = q.pow((self.k + self.r) as u32);
        let mut offset: u128 = 1;
        for fam in 1..i {
            offset += self.family_size(fam);
        }
        let mut within: u128 = 0;
        for &key in block_keys {
            within = within * qk + key as u128;
        }
        within = within * qkr + tail_key as u128;
        offset + within
    }

    /// The special codeword generator [0_k ... 0_k 0_{k x r} I_k].
    pub fn special_generator(&self) -> MatF {
        let mut g = MatF::zeros(self.q, self.k, self.n);
        for i in 0..self.k {
            g.set(i, (self.h - 1) * self.k + self.r + i, 1);
        }
        g
    }

    /// Codeword for a message index in [0, cardinality).
    pub fn encode(&self, index: u128) -> Result<Codeword> {
        let card = self.cardinality();
        if index >= card {
            return Err(Error::IndexOutOfRange {
                index,
                cardinality: card,
            });
        }
        if index == 0 {
            return Ok(Codeword {
                kind: CodewordKind::Special,
                generator: self.special_generator(),
                index: 0,
            });
        }
        let mut rem = index - 1;
        let mut i = 1;
        while rem >= self.family_size(i) {
            rem -= self.family_size(i);
            i += 1;
        }
        let q = self.q as u128;
        let qk = q.pow(self.k as u32);
        let qkr = q.pow((self.k + self.r) as u32);
        let tail_key = (rem % qkr) as u64;
        let mut rest = rem / qkr;
        let mut block_keys = vec![0u64; self.h - 1 - i];
        for slot in block_keys.iter_mut().rev() {
            *slot = (rest % qk) as u64;
            rest /= qk;
        }
        self.codeword_from_parts(i, &block_keys, tail_key)
    }

    fn codeword_from_parts(&self, i: usize, block_keys: &[u64], tail_key: u64) -> Result<Codeword> {
        let blocks: Vec<MatF> = block_keys
            .iter()
            .map(|&key| {
                let a = self.ctx_k.elem_from_code(key)?;
                self.ctx_k.ext_to_algebra(&a)
            })
            .collect::<Result<_>>()?;
        let tail_elem = self.ctx_kr.elem_from_code(tail_key)?;
        let tail = self.ctx_kr.ext_to_algebra(&tail_elem)?;

        let mut g = MatF::zeros(self.q, self.k, (i - 1) * self.k);
        g = g.hstack(&MatF::identity(self.q, self.k))?;
        for b in &blocks {
            g = g.hstack(b)?;
        }
        g = g.hstack(&tail.last_rows(self.k)?)?;
        debug_assert_eq!(g.cols(), self.n);
        Ok(Codeword {
            kind: CodewordKind::Block { i, blocks, tail },
            generator: g,
            index: self.index_of_parts(i, block_keys, tail_key),
        })
    }

    /// Streams all codewords in index order.
    pub fn codewords(&self) -> impl Iterator<Item = Codeword> + '_ {
        (0..self.cardinality()).map(|i| self.encode(i).expect("index in range"))
    }

    /// Recovers the message index from a generator matrix, validating the
    /// block template along the way.
    pub fn decode_index(&self, generator: &MatF) -> Result<u128> {
        if generator.q() != self.q || generator.rows() != self.k || generator.cols() != self.n {
            return Err(Error::NotACodeword);
        }
        if generator == &self.special_generator() {
            return Ok(0);
        }
        let block = |j: usize| generator.submatrix(0, self.k, (j - 1) * self.k, j * self.k);
        let i = (1..=self.h - 1)
            .find(|&j| !block(j).map(|b| b.is_zero()).unwrap_or(false))
            .ok_or(Error::NotACodeword)?;
        if block(i)? != MatF::identity(self.q, self.k) {
            return Err(Error::NotACodeword);
        }
        let mut block_keys = Vec::with_capacity(self.h - 1 - i);
        for j in i + 1..=self.h - 1 {
            let a = self
                .ctx_k
                .algebra_to_ext(&block(j)?)
                .map_err(|_| Error::NotACodeword)?;
            block_keys.push(self.ctx_k.code(&a)?);
        }
        let tail_block = generator.submatrix(0, self.k, (self.h - 1) * self.k, self.n)?;
        let tail = self.ctx_kr.lift_last_rows(&tail_block, self.r)?;
        let tail_key = self.ctx_kr.code(&self.ctx_kr.algebra_to_ext(&tail)?)?;
        Ok(self.index_of_parts(i, &block_keys, tail_key))
    }

    /// Index of `s` if it is a codeword's row space.
    pub fn membership(&self, s: &Subspace) -> Option<u128> {
        if s.q() != self.q || s.ambient() != self.n || s.dim() != self.k {
            return None;
        }
        self.decode_index(s.basis()).ok()
    }

    /// Minimum over all codeword pairs of the subspace distance; must come
    /// out as 2k.
    pub fn min_distance_exhaustive(&self, limit: Option<u128>) -> Result<usize> {
        let limit = limit.unwrap_or(DEFAULT_PAIRWISE_LIMIT);
        let card = self.cardinality();
        if card > limit {
            return Err(Error::LimitExceeded {
                needed: card,
                limit,
            });
        }
        let spaces: Vec<Subspace> = self.codewords().map(|c| c.subspace()).collect();
        let mut best = usize::MAX;
        for a in 0..spaces.len() {
            for b in a + 1..spaces.len() {
                best = best.min(spaces[a].distance(&spaces[b])?);
            }
        }
        Ok(best)
    }

    /// True iff no k-dimensional subspace can be added while keeping all
    /// pairwise intersections trivial; scans the whole Grassmannian.
    pub fn is_maximal_exhaustive(&self, limit: Option<u128>) -> Result<bool> {
        let spaces: Vec<Subspace> = self.codewords().map(|c| c.subspace()).collect();
        is_maximal_partial_spread(self.q, self.k, self.n, &spaces, limit)
    }
}

/// True iff all pairwise intersections among distinct subspaces are trivial.
pub fn is_partial_spread(subspaces: &[Subspace]) -> Result<bool> {
    if let Some(first) = subspaces.first() {
        for s in subspaces {
            if s.q() != first.q() || s.ambient() != first.ambient() {
                return Err(Error::AmbientMismatch);
            }
            if s.dim() != first.dim() {
                return Err(Error::InvalidParams(
                    "partial spreads are constant-dimension".into(),
                ));
            }
        }
    }
    for a in 0..subspaces.len() {
        for b in a + 1..subspaces.len() {
            if subspaces[a] == subspaces[b] {
                continue;
            }
            if subspaces[a].intersection(&subspaces[b])?.dim() > 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// True iff every k-dim subspace outside `spread` meets some member
/// nontrivially.
pub fn is_maximal_partial_spread(
    q: u32,
    k: usize,
    n: usize,
    spread: &[Subspace],
    limit: Option<u128>,
) -> Result<bool> {
    let limit = limit.unwrap_or(DEFAULT_MAXIMALITY_LIMIT);
    let members: HashSet<&Subspace> = spread.iter().collect();
    for w in enumerate_grassmannian(q, k, n, Some(limit))? {
        if members.contains(&w) {
            continue;
        }
        let disjoint_from_all = spread
            .iter()
            .map(|v| w.distance(v))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .all(|d| d == 2 * k);
        if disjoint_from_all {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Size bound for constant-dimension codes of minimum distance d:
/// [n-(d-2)/2 choose max(k, n-k)]_q.
pub fn singleton_bound(q: u32, k: usize, n: usize, d: usize) -> Result<u128> {
    if k < 1 || k >= n {
        return Err(Error::InvalidParams("need 1 <= k < n".into()));
    }
    if d < 2 || !d.is_multiple_of(2) {
        return Err(Error::InvalidParams(
            "constant-dimension minimum distances are even and >= 2".into(),
        ));
    }
    gaussian_binomial(n - (d - 2) / 2, k.max(n - k), q)
}

/// Packing bound for partial k-spreads: (q^n - q^r)/(q^k - 1), r = n mod k.
pub fn partial_spread_upper_bound(q: u32, k: usize, n: usize) -> Result<u128> {
    if k < 1 || k >= n {
        return Err(Error::InvalidParams("need 1 <= k < n".into()));
    }
    let q = q as u128;
    let r = n % k;
    let qn = q.checked_pow(n as u32).ok_or(Error::Overflow)?;
    Ok((qn - q.pow(r as u32)) / (q.pow(k as u32) - 1))
}

/// Attainable lower bound: (q^n - q^r)/(q^k - 1) - q^r + 1.
pub fn beutelspacher_lower_bound(q: u32, k: usize, n: usize) -> Result<u128> {
    let r = n % k;
    Ok(partial_spread_upper_bound(q, k, n)? - (q as u128).pow(r as u32) + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example_code() -> Code {
        Code::build(2, 2, 7, Some(&[1, 1, 1]), Some(&[1, 1, 0, 1])).unwrap()
    }

    #[test]
    fn build_validates_parameters() {
        let c = example_code();
        assert_eq!((c.h(), c.r()), (3, 1));
        assert!(matches!(
            Code::build(2, 3, 5, None, None),
            Err(Error::InvalidParams(_))
        ));
        assert!(matches!(
            Code::build(2, 2, 7, Some(&[1, 0, 1]), None),
            Err(Error::InvalidParams(_))
        ));
    }

    #[test]
    fn spread_code_uses_p_for_both() {
        let c = Code::build(2, 2, 4, None, None).unwrap();
        assert_eq!(c.r(), 0);
        assert_eq!(c.p(), c.pp());
        assert_eq!(c.p().coeffs(), &[1, 1, 1]);
    }

    #[test]
    fn cardinalities() {
        assert_eq!(example_code().cardinality(), 41);
        assert_eq!(Code::build(2, 2, 4, None, None).unwrap().cardinality(), 5);
        assert_eq!(Code::build(2, 2, 5, None, None).unwrap().cardinality(), 9);
        assert_eq!(Code::build(2, 3, 8, None, None).unwrap().cardinality(), 33);
    }

    #[test]
    fn enumeration_matches_cardinality_and_is_distinct() {
        for (q, k, n) in [
            (2u32, 2usize, 4usize),
            (2, 2, 5),
            (2, 2, 7),
            (3, 2, 4),
            (4, 2, 4),
        ] {
            let c = Code::build(q, k, n, None, None).unwrap();
            let spaces: Vec<Subspace> = c.codewords().map(|w| w.subspace()).collect();
            assert_eq!(spaces.len() as u128, c.cardinality());
            let set: HashSet<&Subspace> = spaces.iter().collect();
            assert_eq!(
                set.len(),
                spaces.len(),
                "duplicate codewords for ({q},{k},{n})"
            );
            for (w, s) in c.codewords().zip(&spaces) {
                assert_eq!(w.generator.rank(), k);
                assert_eq!(&w.subspace(), s);
                assert_eq!(w.generator.rref().mat, w.generator, "generator not RREF");
            }
        }
    }

    #[test]
    fn spread_partitions_nonzero_vectors() {
        let c = Code::build(2, 2, 4, None, None).unwrap();
        let mut seen = HashSet::new();
        for w in c.codewords() {
            let s = w.subspace();
            for code in 1u32..16 {
                let v: Vec<u32> = (0..4).map(|b| (code >> b) & 1).collect();
                if s.contains(&v).unwrap() && !seen.insert(v.clone()) {
                    panic!("vector covered twice: {v:?}");
                }
            }
        }
        assert_eq!(seen.len(), 15);
    }

    #[test]
    fn index_zero_is_special() {
        let c = example_code();
        let w = c.encode(0).unwrap();
        assert_eq!(w.kind, CodewordKind::Special);
        assert_eq!(w.generator, c.special_generator());
        assert_eq!(w.generator.row(0), &[0, 0, 0, 0, 0, 1, 0]);
    }

    #[test]
    fn encode_decode_roundtrip() {
        let c = example_code();
        for i in 0..c.cardinality() {
            let w = c.encode(i).unwrap();
            assert_eq!(c.decode_index(&w.generator).unwrap(), i);
        }
        assert!(matches!(c.encode(41), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn membership_rejects_non_codewords() {
        let c = example_code();
        for w in c.codewords() {
            assert_eq!(c.membership(&w.subspace()), Some(w.index));
        }
        // wrong dimension
        let line = Subspace::span(&MatF::from_rows(2, &[vec![1, 0, 0, 0, 0, 0, 0]]).unwrap());
        assert_eq!(c.membership(&line), None);
        // pivot pattern {1,3} (1-based) cannot match any block template
        let bad = Subspace::span(
            &MatF::from_rows(2, &[vec![1, 0, 0, 0, 0, 0, 0], vec![0, 0, 1, 0, 0, 0, 0]]).unwrap(),
        );
        assert_eq!(c.membership(&bad), None);
    }

    #[test]
    fn min_distance_values() {
        assert_eq!(example_code().min_distance_exhaustive(None).unwrap(), 4);
        assert_eq!(
            Code::build(2, 2, 4, None, None)
                .unwrap()
                .min_distance_exhaustive(None)
                .unwrap(),
            4
        );
        assert_eq!(
            Code::build(2, 3, 8, None, None)
                .unwrap()
                .min_distance_exhaustive(None)
                .unwrap(),
            6
        );
        assert!(matches!(
            example_code().min_distance_exhaustive(Some(10)),
            Err(Error::LimitExceeded { .. })
        ));
    }

    #[test]
    fn bounds_for_example_code() {
        assert_eq!(singleton_bound(2, 2, 7, 4).unwrap(), 63);
        assert_eq!(partial_spread_upper_bound(2, 2, 7).unwrap(), 42);
        assert_eq!(beutelspacher_lower_bound(2, 2, 7).unwrap(), 41);
        assert_eq!(
            beutelspacher_lower_bound(2, 2, 7).unwrap(),
            example_code().cardinality()
        );
    }

    #[test]
    fn codewords_form_partial_spread() {
        for (q, k, n) in [(2u32, 2usize, 4usize), (2, 2, 7)] {
            let c = Code::build(q, k, n, None, None).unwrap();
            let spaces: Vec<Subspace> = c.codewords().map(|w| w.subspace()).collect();
            assert!(is_partial_spread(&spaces).unwrap());
        }
        let u = Subspace::span(&MatF::from_rows(2, &[vec![1, 0, 0, 0], vec![0, 1, 0, 0]]).unwrap());
        let v = Subspace::span(&MatF::from_rows(2, &[vec![1, 0, 0, 0], vec![0, 0, 1, 0]]).unwrap());
        assert!(!is_partial_spread(&[u.clone(), v]).unwrap());
        assert!(is_partial_spread(&[u.clone(), u]).unwrap()); // set semantics
    }

    #[test]
    fn maximality() {
        let c5 = Code::build(2, 2, 5, None, None).unwrap();
        assert!(c5.is_maximal_exhaustive(None).unwrap());
        let c4 = Code::build(2, 2, 4, None, None).unwrap();
        assert!(c4.is_maximal_exhaustive(None).unwrap());

        // dropping any codeword leaves room for the dropped one itself
        let c7 = example_code();
        let all: Vec<Subspace> = c7.codewords().map(|w| w.subspace()).collect();
        let holed: Vec<Subspace> = all[1..].to_vec();
        assert!(!is_maximal_partial_spread(2, 2, 7, &holed, None).unwrap());
    }

    #[test]
    fn complement_family_keeps_distance_distribution() {
        let c = Code::build(2, 2, 5, None, None).unwrap();
        let spaces: Vec<Subspace> = c.codewords().map(|w| w.subspace()).collect();
        let comps: Vec<Subspace> = spaces.iter().map(|s| s.orthogonal_complement()).collect();
        let mut d1 = Vec::new();
        let mut d2 = Vec::new();
        for a in 0..spaces.len() {
            for b in a + 1..spaces.len() {
                d1.push(spaces[a].distance(&spaces[b]).unwrap());
                d2.push(comps[a].distance(&comps[b]).unwrap());
            }
        }
        d1.sort_unstable();
        d2.sort_unstable();
        assert_eq!(d1, d2);
    }

    #[test]
    fn bound_chain_on_sweep() {
        for (q, k, n) in [
            (2u32, 2usize, 4usize),
            (2, 2, 5),
            (2, 2, 6),
            (2, 2, 7),
            (3, 2, 5),
            (2, 3, 7),
            (2, 3, 8),
        ] {
            let c = Code::build(q, k, n, None, None).unwrap();
            let card = c.cardinality();
            assert_eq!(card, beutelspacher_lower_bound(q, k, n).unwrap());
            assert_eq!(card, c.codewords().count() as u128);
            let upper = partial_spread_upper_bound(q, k, n).unwrap();
            let singleton = singleton_bound(q, k, n, 2 * k).unwrap();
            assert!(card <= upper && upper <= singleton, "({q},{k},{n})");
        }
    }
}
