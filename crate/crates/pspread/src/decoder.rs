//! Decoding of partial spread codes.
//!
//! The pipeline localizes the identity block of the sent codeword from block
//! ranks of the received matrix, projects the problem onto independent
//! two-block spread subproblems, embeds the remainder block into a larger
//! spread code, and verifies the assembled codeword against the received
//! space before reporting success.
//!
//! The spread subproblems are solved by a linearized-polynomial
//! interpolation fast path that always verifies its candidate and falls back
//! to the exhaustive minimum-distance scan, so results are identical to the
//! brute-force oracle on every input.

use crate::code::{Code, Codeword};
use crate::error::{Error, Result};
use crate::ffcore::{ExtElem, FieldCtx, MatF};
use crate::subspace::Subspace;

pub const DEFAULT_ORACLE_LIMIT: u128 = 10_000;

/// A received word in the fixed k x n wire shape; rows may repeat or vanish.
#[derive(Debug, Clone)]
pub struct Received {
    mat: MatF,
    t: usize,
    k: usize,
    h: usize,
}

impl Received {
    pub fn new(code: &Code, mat: MatF) -> Result<Received> {
        if mat.q() != code.q() || mat.rows() != code.k() || mat.cols() != code.n() {
            return Err(Error::ShapeMismatch(format!(
                "received word must be a {}x{} matrix over F_{}",
                code.k(),
                code.n(),
                code.q()
            )));
        }
        let t = mat.rank();
        Ok(Received {
            mat,
            t,
            k: code.k(),
            h: code.h(),
        })
    }

    pub fn matrix(&self) -> &MatF {
        &self.mat
    }

    /// Rank of the collected rows.
    pub fn rank(&self) -> usize {
        self.t
    }

    /// k x k block M_i, 1 <= i <= h-1.
    pub fn block(&self, i: usize) -> Result<MatF> {
        if i < 1 || i > self.h - 1 {
            return Err(Error::InvalidParams(format!(
                "block index {i} out of range"
            )));
        }
        self.mat.submatrix(0, self.k, (i - 1) * self.k, i * self.k)
    }

    /// The final k x (k+r) block M.
    pub fn tail(&self) -> MatF {
        self.mat
            .submatrix(0, self.k, (self.h - 1) * self.k, self.mat.cols())
            .expect("tail block is in range")
    }

    pub fn block_ranks(&self) -> Vec<usize> {
        (1..=self.h - 1)
            .map(|i| self.block(i).expect("in range").rank())
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecodeStatus {
    Decoded,
    NotDecodable,
    InvalidInput,
}

/// Decoder verdict plus diagnostics. `status == Decoded` implies the
/// reported codeword is within distance k-1 of the received space.
#[derive(Debug, Clone)]
pub struct DecodeOutcome {
    pub status: DecodeStatus,
    pub index: Option<u128>,
    pub codeword: Option<Codeword>,
    /// d(V, X) for the reported or best candidate codeword, when one exists.
    pub distance: Option<usize>,
    /// Chosen pivot block, None on the special-codeword path.
    pub pivot: Option<usize>,
    pub block_ranks: Vec<usize>,
    /// Number of codewords achieving the minimum distance (oracle only).
    pub tie_count: Option<usize>,
}

impl DecodeOutcome {
    fn base(status: DecodeStatus, pivot: Option<usize>, ranks: Vec<usize>) -> DecodeOutcome {
        DecodeOutcome {
            status,
            index: None,
            codeword: None,
            distance: None,
            pivot,
            block_ranks: ranks,
            tie_count: None,
        }
    }
}

fn pivot_from_ranks(ranks: &[usize], t: usize) -> Option<usize> {
    ranks.iter().position(|&rk| 2 * rk >= t).map(|z| z + 1)
}

/// The smallest block index i with rk(M_i) > (t-1)/2, or None when every
/// block satisfies rk(M_i) <= (t-1)/2 (then only the special codeword can be
/// within reach).
pub fn locate_pivot_block(x: &Received) -> Result<Option<usize>> {
    if x.t == 0 {
        return Err(Error::InvalidParams(
            "zero-dimensional received space".into(),
        ));
    }
    Ok(pivot_from_ranks(&x.block_ranks(), x.t))
}

/// Columns of blocks i and j side by side (k x 2k).
pub fn project_two_blocks(x: &Received, i: usize, j: usize) -> Result<MatF> {
    if i >= j || j > x.h - 1 {
        return Err(Error::InvalidParams(format!(
            "need i < j <= h-1, got i={i} j={j}"
        )));
    }
    x.block(i)?.hstack(&x.block(j)?)
}

/// Columns of block i followed by the final k+r columns (k x (2k+r)).
pub fn project_tail(x: &Received, i: usize) -> Result<MatF> {
    x.block(i)?.hstack(&x.tail())
}

/// Embeds a two-block tail subproblem into the ambient of the (k+r)-spread:
/// [M_i | M] becomes [[0,0],[0,M_i] | [0],[M]] with r leading zero rows.
pub fn embed_tail(m_i: &MatF, m: &MatF, r: usize) -> Result<MatF> {
    if r == 0 {
        return Err(Error::InvalidParams(
            "r = 0 decodes directly in the 2k code".into(),
        ));
    }
    let k = m_i.rows();
    if m_i.cols() != k || m.rows() != k || m.cols() != k + r {
        return Err(Error::ShapeMismatch(
            "tail embedding expects a k x k block and a k x (k+r) block".into(),
        ));
    }
    let q = m_i.q();
    let top = MatF::zeros(q, r, 2 * (k + r));
    let bottom = MatF::zeros(q, k, r).hstack(m_i)?.hstack(m)?;
    top.vstack(&bottom)
}

fn span_of(mat: &MatF) -> Subspace {
    Subspace::span(mat)
}

/// Exhaustive spread decoder: scans every A in F_q[P] for the unique
/// codeword rowsp[I | A] within distance < m of the received space.
pub fn decode_spread_oracle(x2: &MatF, ctx: &FieldCtx) -> Result<Option<MatF>> {
    let m = ctx.m();
    if x2.cols() != 2 * m || x2.q() != ctx.q() {
        return Err(Error::ShapeMismatch(format!(
            "expected a matrix with {} columns over F_{}",
            2 * m,
            ctx.q()
        )));
    }
    let x = span_of(x2);
    if x.dim() == 0 {
        return Err(Error::InvalidParams(
            "zero-dimensional received space".into(),
        ));
    }
    let identity = MatF::identity(ctx.q(), m);
    for a in ctx.elements() {
        let alg = ctx.ext_to_algebra(&a)?;
        let v = span_of(&identity.hstack(&alg)?);
        if v.distance(&x)? < m {
            return Ok(Some(alg));
        }
    }
    Ok(None)
}

/// Nonzero kernel vector of a matrix over the extension field, or None if
/// the matrix has full column rank.
fn ext_kernel_vector(ctx: &FieldCtx, rows: &[Vec<ExtElem>]) -> Result<Option<Vec<ExtElem>>> {
    let ncols = match rows.first() {
        Some(r) => r.len(),
        None => return Ok(None),
    };
    let mut mat: Vec<Vec<ExtElem>> = rows.to_vec();
    let mut pivot_cols = Vec::new();
    let mut r = 0usize;
    for c in 0..ncols {
        if r == mat.len() {
            break;
        }
        let Some(pr) = (r..mat.len()).find(|&i| !mat[i][c].is_zero()) else {
            continue;
        };
        mat.swap(r, pr);
        let inv = ctx.inv(&mat[r][c])?;
        for slot in mat[r].iter_mut() {
            *slot = ctx.mul(slot, &inv)?;
        }
        let pivot_row = mat[r].clone();
        for (i, row) in mat.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (slot, p) in row.iter_mut().zip(&pivot_row) {
                *slot = ctx.sub(slot, &ctx.mul(&factor, p)?)?;
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    let Some(free) = (0..ncols).find(|c| !pivot_cols.contains(c)) else {
        return Ok(None);
    };
    let mut x = vec![ctx.zero(); ncols];
    x[free] = ctx.one();
    for (row, &pc) in pivot_cols.iter().enumerate() {
        x[pc] = ctx.neg(&mat[row][free])?;
    }
    Ok(Some(x))
}

/// Reads the sent field element off an interpolation pair (V, W): every j
/// with w_j != 0 must give the same a via v_j + w_j a^{q^j} = 0.
pub(crate) fn recover_from_pair(
    ctx: &FieldCtx,
    v: &[ExtElem],
    w: &[ExtElem],
) -> Result<Option<ExtElem>> {
    let m = ctx.m();
    let mut candidate: Option<ExtElem> = None;
    for (j, wj) in w.iter().enumerate() {
        if wj.is_zero() {
            continue;
        }
        let b = ctx.mul(&ctx.neg(&v[j])?, &ctx.inv(wj)?)?;
        let a = ctx.frobenius(&b, (m - j % m) % m)?;
        match &candidate {
            None => candidate = Some(a),
            Some(prev) if *prev == a => {}
            Some(_) => return Ok(None), // inconsistent recovery
        }
    }
    Ok(candidate)
}

fn interpolation_candidate(x2: &MatF, ctx: &FieldCtx) -> Result<Option<ExtElem>> {
    let m = ctx.m();
    let t = x2.rank();
    let deg = t / 2 + 1; // number of q-coefficients, ceil((t+1)/2)
    let mut rows = Vec::with_capacity(x2.rows());
    for i in 0..x2.rows() {
        let u = ctx.phi_inv(&x2.row(i)[..m])?;
        let y = ctx.phi_inv(&x2.row(i)[m..])?;
        let mut row = Vec::with_capacity(2 * deg);
        for j in 0..deg {
            row.push(ctx.frobenius(&u, j)?);
        }
        for j in 0..deg {
            row.push(ctx.frobenius(&y, j)?);
        }
        rows.push(row);
    }
    let Some(kern) = ext_kernel_vector(ctx, &rows)? else {
        return Ok(None);
    };
    recover_from_pair(ctx, &kern[..deg], &kern[deg..])
}

/// Spread decoding via linearized interpolation with a verified candidate;
/// any failure falls back to [`decode_spread_oracle`], so the result always
/// agrees with the exhaustive scan.
pub fn decode_spread_interpolation(x2: &MatF, ctx: &FieldCtx) -> Result<Option<MatF>> {
    let m = ctx.m();
    if x2.cols() != 2 * m || x2.q() != ctx.q() {
        return Err(Error::ShapeMismatch(format!(
            "expected a matrix with {} columns over F_{}",
            2 * m,
            ctx.q()
        )));
    }
    let x = span_of(x2);
    if x.dim() == 0 {
        return Err(Error::InvalidParams(
            "zero-dimensional received space".into(),
        ));
    }
    if let Some(a) = interpolation_candidate(x2, ctx)? {
        let alg = ctx.ext_to_algebra(&a)?;
        let v = span_of(&MatF::identity(ctx.q(), m).hstack(&alg)?);
        if v.distance(&x)? < m {
            return Ok(Some(alg));
        }
    }
    decode_spread_oracle(x2, ctx)
}

/// One decoded half of a two-block spread problem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpreadFragment {
    /// rowsp[0 | I]
    Special,
    /// rowsp[I | A] for this algebra element A
    Word(MatF),
}

/// Full decoder for a two-block spread code over the given context.
pub fn decode_2k(x2: &MatF, ctx: &FieldCtx) -> Result<SpreadFragment> {
    let m = ctx.m();
    if x2.cols() != 2 * m || x2.q() != ctx.q() {
        return Err(Error::ShapeMismatch(format!(
            "expected a matrix with {} columns over F_{}",
            2 * m,
            ctx.q()
        )));
    }
    let t = x2.rank();
    if t == 0 {
        return Err(Error::InvalidParams(
            "zero-dimensional received space".into(),
        ));
    }
    let left = x2.submatrix(0, x2.rows(), 0, m)?;
    if 2 * left.rank() < t {
        return Ok(SpreadFragment::Special);
    }
    decode_spread_interpolation(x2, ctx)?
        .map(SpreadFragment::Word)
        .ok_or(Error::NotDecodable)
}

/// Decoder for codes with n = 2k + r, 1 <= r <= k-1: branch on the first
/// block rank, embed the rest into the (k+r)-spread, decode there, and strip
/// the first r rows and columns.
pub fn decode_2kr(code: &Code, x: &Received) -> Result<Codeword> {
    if code.r() < 1 || code.h() != 2 {
        return Err(Error::InvalidParams(
            "decode_2kr applies to n = 2k + r with 1 <= r <= k-1".into(),
        ));
    }
    if x.t == 0 {
        return Err(Error::InvalidParams(
            "zero-dimensional received space".into(),
        ));
    }
    if 2 * x.block(1)?.rank() < x.t {
        return code.encode(0);
    }
    let embedded = embed_tail(&x.block(1)?, &x.tail(), code.r())?;
    let a = decode_spread_interpolation(&embedded, code.ctx_kr())?.ok_or(Error::NotDecodable)?;
    let key = code.ctx_kr().code(&code.ctx_kr().algebra_to_ext(&a)?)?;
    code.encode(code.index_of_parts(1, &[], key))
}

/// The full pipeline: localize the pivot block, decode each two-block
/// subproblem and the embedded tail, assemble the codeword, and verify
/// d(V, X) < k before reporting success. Subproblems are pure functions of
/// their projections and independent of each other.
pub fn decode(code: &Code, x: &Received) -> DecodeOutcome {
    let ranks = x.block_ranks();
    if x.t == 0 {
        return DecodeOutcome::base(DecodeStatus::InvalidInput, None, ranks);
    }
    let pivot = pivot_from_ranks(&ranks, x.t);
    let assembled: Result<Codeword> = match pivot {
        None => code.encode(0),
        Some(i) => assemble_block_codeword(code, x, i),
    };
    let Ok(cw) = assembled else {
        return DecodeOutcome::base(DecodeStatus::NotDecodable, pivot, ranks);
    };
    let d = cw
        .subspace()
        .distance(&span_of(&x.mat))
        .expect("same ambient by construction");
    if d < code.k() {
        DecodeOutcome {
            status: DecodeStatus::Decoded,
            index: Some(cw.index),
            distance: Some(d),
            codeword: Some(cw),
            pivot,
            block_ranks: ranks,
            tie_count: None,
        }
    } else {
        let mut out = DecodeOutcome::base(DecodeStatus::NotDecodable, pivot, ranks);
        out.distance = Some(d);
        out
    }
}

fn assemble_block_codeword(code: &Code, x: &Received, i: usize) -> Result<Codeword> {
    let mut block_keys = Vec::with_capacity(code.h() - 1 - i);
    for j in i + 1..=code.h() - 1 {
        let sub = project_two_blocks(x, i, j)?;
        let a = decode_spread_interpolation(&sub, code.ctx_k())?.ok_or(Error::NotDecodable)?;
        block_keys.push(code.ctx_k().code(&code.ctx_k().algebra_to_ext(&a)?)?);
    }
    let tail_key = if code.r() == 0 {
        let sub = project_tail(x, i)?;
        let a = decode_spread_interpolation(&sub, code.ctx_kr())?.ok_or(Error::NotDecodable)?;
        code.ctx_kr().code(&code.ctx_kr().algebra_to_ext(&a)?)?
    } else {
        let embedded = embed_tail(&x.block(i)?, &x.tail(), code.r())?;
        let a =
            decode_spread_interpolation(&embedded, code.ctx_kr())?.ok_or(Error::NotDecodable)?;
        code.ctx_kr().code(&code.ctx_kr().algebra_to_ext(&a)?)?
    };
    code.encode(code.index_of_parts(i, &block_keys, tail_key))
}

/// Ground-truth minimum-distance decoder over an arbitrary received
/// subspace; ties are reported, and anything at distance >= k is refused.
pub fn decode_mindist_subspace(
    code: &Code,
    x: &Subspace,
    limit: Option<u128>,
) -> Result<DecodeOutcome> {
    if x.q() != code.q() || x.ambient() != code.n() {
        return Err(Error::AmbientMismatch);
    }
    let limit = limit.unwrap_or(DEFAULT_ORACLE_LIMIT);
    let card = code.cardinality();
    if card > limit {
        return Err(Error::LimitExceeded {
            needed: card,
            limit,
        });
    }
    if x.dim() == 0 {
        return Ok(DecodeOutcome::base(
            DecodeStatus::InvalidInput,
            None,
            vec![],
        ));
    }
    let mut best: Option<(usize, Codeword)> = None;
    let mut ties = 0usize;
    for cw in code.codewords() {
        let d = cw.subspace().distance(x)?;
        match &best {
            Some((bd, _)) if d > *bd => {}
            Some((bd, _)) if d == *bd => ties += 1,
            _ => {
                best = Some((d, cw));
                ties = 1;
            }
        }
    }
    let (d, cw) = best.expect("codes have at least two codewords");
    let mut out = DecodeOutcome::base(DecodeStatus::NotDecodable, None, vec![]);
    out.distance = Some(d);
    out.tie_count = Some(ties);
    if d < code.k() {
        out.status = DecodeStatus::Decoded;
        out.index = Some(cw.index);
        out.codeword = Some(cw);
    }
    Ok(out)
}

/// Minimum-distance oracle on the wire format; scans every codeword.
pub fn decode_mindist_oracle(
    code: &Code,
    x: &Received,
    limit: Option<u128>,
) -> Result<DecodeOutcome> {
    let mut out = decode_mindist_subspace(code, &span_of(&x.mat), limit)?;
    out.block_ranks = x.block_ranks();
    Ok(out)
}
