//! Operator-channel simulation: erasures, error spaces, the correction
//! guarantee, and seeded Monte Carlo decode experiments.

use crate::code::Code;
use crate::decoder::{decode, DecodeStatus, Received};
use crate::error::{Error, Result};
use crate::ffcore::MatF;
use crate::rng::Rng;
use crate::subspace::{random_disjoint_extension, random_subspace_of, Subspace};

/// What the receiver does with a space of dimension above k: `Full` refuses
/// to run (the wire carries at most k rows), `TruncateToK` samples a k-dim
/// subspace of it, which may lose decodability.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CollectionPolicy {
    Full,
    TruncateToK,
}

#[derive(Debug, Clone)]
pub struct ChannelSpec {
    /// Post-erasure dimension, 1 <= e <= k.
    pub erase_dim: usize,
    /// Error-space dimension.
    pub error_dim: usize,
    pub seed: u64,
    pub policy: CollectionPolicy,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialStats {
    pub trials: u64,
    pub decoded_correct: u64,
    pub decoded_wrong: u64,
    pub not_decodable: u64,
    pub guarantee_holds: bool,
    pub success_rate: f64,
}

/// Replaces V by an e-dimensional subspace of itself.
pub fn erase(v: &Subspace, e: usize, rng: &mut Rng) -> Result<Subspace> {
    if e < 1 || e > v.dim() {
        return Err(Error::InvalidParams(format!(
            "erasure dimension must satisfy 1 <= e <= {}, got {e}",
            v.dim()
        )));
    }
    random_subspace_of(v, e, rng)
}

/// Direct-sums a fresh error space of dimension `t` onto H.
pub fn inject_error(h: &Subspace, t: usize, rng: &mut Rng) -> Result<Subspace> {
    random_disjoint_extension(h, t, rng)
}

/// The minimum-distance correction guarantee 2(t + ell - e) < d.
pub fn correction_guaranteed(e: usize, t_err: usize, ell: usize, d: usize) -> bool {
    2 * (t_err as i64 + ell as i64 - e as i64) < d as i64
}

fn pad_to_rows(basis: &MatF, rows: usize) -> MatF {
    let mut m = basis.clone();
    if m.rows() < rows {
        m = m
            .vstack(&MatF::zeros(m.q(), rows - m.rows(), m.cols()))
            .expect("same width");
    }
    m
}

/// Runs `n` independent channel trials: sample a codeword uniformly, erase,
/// inject the error space, collect per the policy, decode, tally. Trial i
/// draws from a substream of (seed, i), so runs are replayable.
pub fn run_trials(code: &Code, spec: &ChannelSpec, n: u64) -> Result<TrialStats> {
    if n == 0 {
        return Err(Error::InvalidParams("need at least one trial".into()));
    }
    let k = code.k();
    if spec.erase_dim < 1 || spec.erase_dim > k {
        return Err(Error::InvalidParams(format!(
            "erasure dimension must satisfy 1 <= e <= k = {k}"
        )));
    }
    if spec.erase_dim + spec.error_dim > code.n() {
        return Err(Error::InvalidParams(
            "e + t exceeds the ambient dimension".into(),
        ));
    }
    if spec.policy == CollectionPolicy::Full && spec.erase_dim + spec.error_dim > k {
        return Err(Error::InvalidParams(format!(
            "the k-row wire format cannot carry e + t = {} > k = {k}; use the truncate_to_k policy",
            spec.erase_dim + spec.error_dim
        )));
    }
    let card = code.cardinality();
    if card > u64::MAX as u128 {
        return Err(Error::Overflow);
    }

    let mut correct = 0u64;
    let mut wrong = 0u64;
    let mut undecodable = 0u64;
    for trial in 0..n {
        let mut rng = Rng::substream(spec.seed, trial);
        let index = rng.below(card as u64) as u128;
        let sent = code.encode(index)?;
        let v = sent.subspace();
        let h = erase(&v, spec.erase_dim, &mut rng)?;
        let u = inject_error(&h, spec.error_dim, &mut rng)?;
        let collected = match spec.policy {
            CollectionPolicy::Full => u,
            CollectionPolicy::TruncateToK if u.dim() > k => random_subspace_of(&u, k, &mut rng)?,
            CollectionPolicy::TruncateToK => u,
        };
        let x = Received::new(code, pad_to_rows(collected.basis(), k))?;
        let out = decode(code, &x);
        match (out.status, out.index) {
            (DecodeStatus::Decoded, Some(i)) if i == index => correct += 1,
            (DecodeStatus::Decoded, _) => {
                // a wrong answer is only possible outside the decoding radius
                let d = v.distance(&collected)?;
                assert!(
                    d >= k,
                    "decoder returned a different codeword inside the radius (d = {d})"
                );
                wrong += 1;
            }
            _ => undecodable += 1,
        }
    }
    Ok(TrialStats {
        trials: n,
        decoded_correct: correct,
        decoded_wrong: wrong,
        not_decodable: undecodable,
        guarantee_holds: correction_guaranteed(
            spec.erase_dim,
            spec.error_dim,
            code.max_dim(),
            code.min_distance(),
        ),
        success_rate: correct as f64 / n as f64,
    })
}
