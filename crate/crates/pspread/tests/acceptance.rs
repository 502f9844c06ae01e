//! Acceptance suite: one test per release criterion, each printing a
//! pass line (visible with `--nocapture`) and enforcing its runtime budget.
//!
//! Run with: cargo test -p pspread --test acceptance -- --nocapture

mod common;

use std::collections::HashSet;
use std::time::{Duration, Instant};

use common::*;
use pspread::{
    beutelspacher_lower_bound, correction_guaranteed, decode, decode_mindist_oracle,
    decode_mindist_subspace, decode_spread_interpolation, decode_spread_oracle, embed_tail,
    partial_spread_upper_bound, project_tail, project_two_blocks, run_trials, singleton_bound,
    ChannelSpec, Code, CollectionPolicy, DecodeStatus, FieldCtx, MatF, Rng, Subspace,
};

fn example_code() -> Code {
    Code::build(2, 2, 7, Some(&[1, 1, 1]), Some(&[1, 1, 0, 1])).unwrap()
}

fn budget(criterion: u32, start: Instant, bound: Duration) {
    let elapsed = start.elapsed();
    assert!(
        elapsed <= bound,
        "criterion {criterion} exceeded its {bound:?} budget: {elapsed:?}"
    );
    println!("criterion {criterion}: pass ({elapsed:?})");
}

#[test]
fn criterion_01_example_code_has_41_codewords() {
    let start = Instant::now();
    let code = example_code();
    let spaces: HashSet<Subspace> = code.codewords().map(|w| w.subspace()).collect();
    assert_eq!(spaces.len(), 41);
    assert_eq!(code.cardinality(), 41);
    assert_eq!(code.cardinality(), (1 << 2) * (1 << 3) + (1 << 3) + 1);
    budget(1, start, Duration::from_secs(1));
}

#[test]
fn criterion_02_example_minimum_distance_is_4() {
    let start = Instant::now();
    let code = example_code();
    assert_eq!(code.min_distance_exhaustive(None).unwrap(), 4);
    budget(2, start, Duration::from_secs(5));
}

#[test]
fn criterion_03_bound_chain() {
    let start = Instant::now();
    for (q, k, n) in [
        (2u32, 2usize, 4usize),
        (2, 2, 5),
        (2, 2, 6),
        (2, 2, 7),
        (3, 2, 5),
        (2, 3, 7),
        (2, 3, 8),
    ] {
        let code = Code::build(q, k, n, None, None).unwrap();
        let card = code.cardinality();
        let lower = beutelspacher_lower_bound(q, k, n).unwrap();
        let upper = partial_spread_upper_bound(q, k, n).unwrap();
        let single = singleton_bound(q, k, n, 2 * k).unwrap();
        assert_eq!(card, lower, "({q},{k},{n})");
        assert!(card <= upper && upper <= single, "({q},{k},{n})");
    }
    assert_eq!(singleton_bound(2, 2, 7, 4).unwrap(), 63);
    assert_eq!(partial_spread_upper_bound(2, 2, 7).unwrap(), 42);
    budget(3, start, Duration::from_secs(1));
}

#[test]
fn criterion_04_spreads_partition_nonzero_vectors() {
    let start = Instant::now();
    for (q, k, n) in [(2u32, 2usize, 4usize), (2, 2, 6)] {
        let code = Code::build(q, k, n, None, None).unwrap();
        assert_eq!(code.r(), 0);
        let mut seen: HashSet<Vec<u32>> = HashSet::new();
        for w in code.codewords() {
            let basis = w.generator;
            for combo in 1..(q as u64).pow(k as u32) {
                let mut coeffs = Vec::with_capacity(k);
                let mut c = combo;
                for _ in 0..k {
                    coeffs.push((c % q as u64) as u32);
                    c /= q as u64;
                }
                let vec = MatF::new(q, 1, k, coeffs).unwrap().mul(&basis).unwrap();
                assert!(
                    seen.insert(vec.row(0).to_vec()),
                    "({q},{k},{n}): vector covered twice"
                );
            }
        }
        assert_eq!(
            seen.len() as u128,
            (q as u128).pow(n as u32) - 1,
            "({q},{k},{n})"
        );
    }
    budget(4, start, Duration::from_secs(1));
}

#[test]
fn criterion_05_maximality_of_c2_2_5() {
    let start = Instant::now();
    let code = Code::build(2, 2, 5, None, None).unwrap();
    assert_eq!(pspread::gaussian_binomial(5, 2, 2).unwrap(), 155);
    assert!(code.is_maximal_exhaustive(None).unwrap());
    budget(5, start, Duration::from_secs(5));
}

#[test]
fn criterion_06_oracle_equivalence_exhaustive_spread() {
    let start = Instant::now();
    let code = Code::build(2, 2, 4, None, None).unwrap();
    let cases = exhaustive_spread_cases(&code);
    assert_eq!(cases.len(), 15 + 35);
    let mut decodable = 0;
    for (expect, recv) in &cases {
        let piped = decode(&code, recv);
        let oracle = decode_mindist_oracle(&code, recv, None).unwrap();
        assert_eq!(piped.status, oracle.status);
        assert_eq!(piped.index, oracle.index);
        match expect {
            Some(w) => {
                decodable += 1;
                assert_eq!(piped.status, DecodeStatus::Decoded);
                assert_eq!(piped.index, Some(w.index));
            }
            None => assert_eq!(piped.status, DecodeStatus::NotDecodable),
        }
    }
    assert_eq!(decodable, 15 + 5); // every line plus the codewords themselves
    budget(6, start, Duration::from_secs(10));
}

#[test]
fn criterion_07_oracle_equivalence_sampled() {
    let start = Instant::now();
    let sweeps = [
        Code::build(2, 2, 5, None, None).unwrap(),
        Code::build(2, 2, 7, None, None).unwrap(),
        Code::build(2, 3, 8, None, None).unwrap(),
        Code::build(3, 2, 5, None, None).unwrap(),
    ];
    for (which, code) in sweeps.iter().enumerate() {
        for (sent, recv) in sampled_decodable_cases(code, 1000, 0xACCE55 + which as u64) {
            let piped = decode(code, &recv);
            let oracle = decode_mindist_oracle(code, &recv, None).unwrap();
            assert_eq!(piped.status, DecodeStatus::Decoded, "code {which}");
            assert_eq!(piped.index, Some(sent.index), "code {which}");
            assert_eq!(oracle.index, Some(sent.index), "code {which}");
        }
    }
    budget(7, start, Duration::from_secs(120));
}

#[test]
fn criterion_08_guaranteed_channel_regimes_decode_perfectly() {
    let start = Instant::now();
    let code = example_code();
    let k = code.k();
    let mut combos = Vec::new();
    for e in 1..=k {
        for t in 0..=code.n() - e {
            if correction_guaranteed(e, t, code.max_dim(), code.min_distance()) {
                combos.push((e, t));
            }
        }
    }
    assert_eq!(combos, vec![(1, 0), (2, 0), (2, 1)]);
    for (e, t) in combos {
        if e + t <= k {
            let spec = ChannelSpec {
                erase_dim: e,
                error_dim: t,
                seed: 0x7E0E + (e * 10 + t) as u64,
                policy: CollectionPolicy::Full,
            };
            let stats = run_trials(&code, &spec, 1000).unwrap();
            assert!(stats.guarantee_holds);
            assert_eq!(stats.decoded_correct, 1000, "(e,t)=({e},{t})");
            assert_eq!(stats.success_rate, 1.0, "(e,t)=({e},{t})");
        } else {
            // the full received space no longer fits the k-row wire; decode
            // it directly with the minimum-distance decoder
            for trial in 0..1000u64 {
                let mut rng = Rng::substream(0xBEE5 + (e * 10 + t) as u64, trial);
                let index = rng.below(code.cardinality() as u64) as u128;
                let sent = code.encode(index).unwrap();
                let h = pspread::random_subspace_of(&sent.subspace(), e, &mut rng).unwrap();
                let u = pspread::random_disjoint_extension(&h, t, &mut rng).unwrap();
                let out = decode_mindist_subspace(&code, &u, None).unwrap();
                assert_eq!(out.status, DecodeStatus::Decoded, "(e,t)=({e},{t})");
                assert_eq!(out.index, Some(index), "(e,t)=({e},{t})");
            }
        }
    }
    budget(8, start, Duration::from_secs(60));
}

#[test]
fn criterion_09_block_rank_identity_on_decodable_cases() {
    let start = Instant::now();
    let mut checked = 0usize;
    let mut check_case = |code: &Code, sent: &pspread::Codeword, recv: &pspread::Received| {
        let t = recv.rank();
        for i in 1..=code.h() - 1 {
            let s_i = sent
                .generator
                .submatrix(0, code.k(), (i - 1) * code.k(), i * code.k())
                .unwrap();
            let rank_low = 2 * recv.block(i).unwrap().rank() <= t.saturating_sub(1);
            assert_eq!(
                s_i.is_zero(),
                rank_low,
                "block {i}: S_i = 0 must match rk(M_i) <= (t-1)/2"
            );
        }
        checked += 1;
    };

    let spread = Code::build(2, 2, 4, None, None).unwrap();
    for (expect, recv) in exhaustive_spread_cases(&spread) {
        if let Some(sent) = expect {
            check_case(&spread, &sent, &recv);
        }
    }
    let sweeps = [
        Code::build(2, 2, 5, None, None).unwrap(),
        Code::build(2, 2, 7, None, None).unwrap(),
        Code::build(2, 3, 8, None, None).unwrap(),
        Code::build(3, 2, 5, None, None).unwrap(),
    ];
    for (which, code) in sweeps.iter().enumerate() {
        for (sent, recv) in sampled_decodable_cases(code, 1000, 0xACCE55 + which as u64) {
            check_case(code, &sent, &recv);
        }
    }
    assert_eq!(checked, 20 + 4000);
    println!("criterion 9: pass ({:?})", start.elapsed());
}

#[test]
fn criterion_10_algebra_layer() {
    let start = Instant::now();

    // exhaustive field axioms for q^m <= 256
    for (p, e, m) in [
        (2u32, 1u32, 2usize),
        (2, 1, 8),
        (3, 1, 5),
        (2, 2, 2),
        (5, 1, 3),
        (7, 1, 2),
        (3, 2, 2),
    ] {
        let ctx = FieldCtx::new(p, e, m, None).unwrap();
        assert!(ctx.order() <= 256);
        let elems: Vec<_> = ctx.elements().collect();
        for a in &elems {
            assert_eq!(ctx.add(a, &ctx.zero()).unwrap(), *a);
            assert_eq!(ctx.mul(a, &ctx.one()).unwrap(), *a);
            assert_eq!(ctx.add(a, &ctx.neg(a).unwrap()).unwrap(), ctx.zero());
            if !a.is_zero() {
                assert_eq!(ctx.mul(a, &ctx.inv(a).unwrap()).unwrap(), ctx.one());
            }
            for b in &elems {
                assert_eq!(ctx.mul(a, b).unwrap(), ctx.mul(b, a).unwrap());
                for c in &elems {
                    let ab_c = ctx.mul(&ctx.mul(a, b).unwrap(), c).unwrap();
                    let a_bc = ctx.mul(a, &ctx.mul(b, c).unwrap()).unwrap();
                    assert_eq!(ab_c, a_bc);
                    let left = ctx.mul(a, &ctx.add(b, c).unwrap()).unwrap();
                    let right = ctx
                        .add(&ctx.mul(a, b).unwrap(), &ctx.mul(a, c).unwrap())
                        .unwrap();
                    assert_eq!(left, right);
                    let add_assoc1 = ctx.add(&ctx.add(a, b).unwrap(), c).unwrap();
                    let add_assoc2 = ctx.add(a, &ctx.add(b, c).unwrap()).unwrap();
                    assert_eq!(add_assoc1, add_assoc2);
                }
            }
        }

        // companion matrix satisfies its modulus exactly
        let comp = ctx.companion();
        assert!(ctx.modulus().eval_matrix(&comp).unwrap().is_zero());

        // phi / F_q[P] isomorphism, exhaustively
        for a in &elems {
            let ma = ctx.ext_to_algebra(a).unwrap();
            assert_eq!(ma.row(0), ctx.phi(a).unwrap().as_slice());
            assert_eq!(ctx.algebra_to_ext(&ma).unwrap(), *a);
            for b in &elems {
                let mb = ctx.ext_to_algebra(b).unwrap();
                assert_eq!(
                    ma.mul(&mb).unwrap(),
                    ctx.ext_to_algebra(&ctx.mul(a, b).unwrap()).unwrap()
                );
                assert_eq!(
                    ma.add(&mb).unwrap(),
                    ctx.ext_to_algebra(&ctx.add(a, b).unwrap()).unwrap()
                );
            }
        }
    }

    // 10^4 random triples for a field above the exhaustive threshold
    let big = FieldCtx::new(2, 1, 12, None).unwrap();
    assert!(big.order() > 256);
    let mut rng = Rng::new(0xF1E1D);
    for _ in 0..10_000 {
        let a = big.elem_from_code(rng.below(big.order())).unwrap();
        let b = big.elem_from_code(rng.below(big.order())).unwrap();
        let c = big.elem_from_code(rng.below(big.order())).unwrap();
        let ab_c = big.mul(&big.mul(&a, &b).unwrap(), &c).unwrap();
        let a_bc = big.mul(&a, &big.mul(&b, &c).unwrap()).unwrap();
        assert_eq!(ab_c, a_bc);
        let left = big.mul(&a, &big.add(&b, &c).unwrap()).unwrap();
        let right = big
            .add(&big.mul(&a, &b).unwrap(), &big.mul(&a, &c).unwrap())
            .unwrap();
        assert_eq!(left, right);
        if !a.is_zero() {
            assert_eq!(big.mul(&a, &big.inv(&a).unwrap()).unwrap(), big.one());
        }
    }
    assert!(big
        .modulus()
        .eval_matrix(&big.companion())
        .unwrap()
        .is_zero());

    println!("criterion 10: pass ({:?})", start.elapsed());
}

#[test]
fn criterion_11_interpolation_agrees_with_oracle_on_sweeps() {
    let start = Instant::now();

    // every spread input from the exhaustive sweep, decodable or not
    let spread = Code::build(2, 2, 4, None, None).unwrap();
    let ctx = spread.ctx_kr();
    for (_, recv) in exhaustive_spread_cases(&spread) {
        let fast = decode_spread_interpolation(recv.matrix(), ctx).unwrap();
        let slow = decode_spread_oracle(recv.matrix(), ctx).unwrap();
        assert_eq!(fast, slow);
    }

    // the subproblems actually posed by the sampled sweeps
    let sweeps = [
        Code::build(2, 2, 5, None, None).unwrap(),
        Code::build(2, 2, 7, None, None).unwrap(),
        Code::build(2, 3, 8, None, None).unwrap(),
        Code::build(3, 2, 5, None, None).unwrap(),
    ];
    for (which, code) in sweeps.iter().enumerate() {
        for (sent, recv) in sampled_decodable_cases(code, 250, 0x11ACE + which as u64) {
            let Some(i) = template_pivot(&sent) else {
                continue;
            };
            for j in i + 1..=code.h() - 1 {
                let sub = project_two_blocks(&recv, i, j).unwrap();
                if sub.rank() == 0 {
                    continue;
                }
                assert_eq!(
                    decode_spread_interpolation(&sub, code.ctx_k()).unwrap(),
                    decode_spread_oracle(&sub, code.ctx_k()).unwrap()
                );
            }
            let tail_input = if code.r() == 0 {
                project_tail(&recv, i).unwrap()
            } else {
                embed_tail(&recv.block(i).unwrap(), &recv.tail(), code.r()).unwrap()
            };
            if tail_input.rank() > 0 {
                assert_eq!(
                    decode_spread_interpolation(&tail_input, code.ctx_kr()).unwrap(),
                    decode_spread_oracle(&tail_input, code.ctx_kr()).unwrap()
                );
            }
        }
    }
    println!("criterion 11: pass ({:?})", start.elapsed());
}
