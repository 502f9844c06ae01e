//! Subspaces of F_q^n in canonical form, the subspace metric, and
//! Grassmannian utilities.
//!
//! A subspace is stored as the reduced row echelon form of any spanning
//! matrix, with zero rows dropped. RREF is unique, so equality and hashing
//! work directly on the basis.

use crate::error::{Error, Result};
use crate::ffcore::{Fq, MatF};
use crate::rng::Rng;

pub const DEFAULT_GRASSMANNIAN_LIMIT: u128 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: MatF, // RREF, no zero rows
}

impl Subspace {
    /// Row space of an arbitrary matrix.
    pub fn span(m: &MatF) -> Subspace {
        let r = m.rref();
        let basis = r.mat.submatrix(0, r.rank, 0, m.cols()).unwrap();
        Subspace { basis }
    }

    /// Wraps a matrix already known to be a canonical basis.
    pub(crate) fn from_rref_basis(basis: MatF) -> Subspace {
        debug_assert_eq!(basis.rref().mat, basis);
        Subspace { basis }
    }

    pub fn zero(q: u32, n: usize) -> Subspace {
        Subspace {
            basis: MatF::zeros(q, 0, n),
        }
    }

    pub fn full(q: u32, n: usize) -> Subspace {
        Subspace {
            basis: MatF::identity(q, n),
        }
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.basis.q()
    }

    /// Ambient dimension n.
    #[inline]
    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &MatF {
        &self.basis
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.q() != other.q() || self.ambient() != other.ambient() {
            return Err(Error::AmbientMismatch);
        }
        Ok(())
    }

    /// Subspace distance dim U + dim V - 2 dim(U n V).
    pub fn distance(&self, other: &Subspace) -> Result<usize> {
        self.check_compatible(other)?;
        let rank = self.basis.vstack(&other.basis)?.rank();
        Ok(2 * rank - self.dim() - other.dim())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        Ok(Subspace::span(&self.basis.vstack(&other.basis)?))
    }

    /// Zassenhaus intersection: reduce [U | U; V | 0] and read the right
    /// halves of the rows whose left half vanished.
    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let n = self.ambient();
        let top = self.basis.hstack(&self.basis)?;
        let bottom = other.basis.hstack(&MatF::zeros(self.q(), other.dim(), n))?;
        let red = top.vstack(&bottom)?.rref();
        let mut rows = Vec::new();
        for i in 0..red.rank {
            if red.mat.row(i)[..n].iter().all(|&x| x == 0) {
                rows.push(red.mat.row(i)[n..].to_vec());
            }
        }
        if rows.is_empty() {
            return Ok(Subspace::zero(self.q(), n));
        }
        Ok(Subspace::span(&MatF::from_rows(self.q(), &rows)?))
    }

    pub fn contains(&self, v: &[u32]) -> Result<bool> {
        if v.len() != self.ambient() {
            return Err(Error::AmbientMismatch);
        }
        let vm = MatF::new(self.q(), 1, v.len(), v.to_vec())?;
        Ok(self.basis.vstack(&vm)?.rank() == self.dim())
    }

    pub fn contains_subspace(&self, other: &Subspace) -> Result<bool> {
        self.check_compatible(other)?;
        Ok(self.basis.vstack(&other.basis)?.rank() == self.dim())
    }

    /// Kernel of the basis under the standard bilinear form; dim n - dim V.
    pub fn orthogonal_complement(&self) -> Subspace {
        Subspace::span(&self.basis.kernel())
    }
}

/// Gaussian binomial coefficient, the number of k-dimensional subspaces of
/// F_q^n; computed with exact integer arithmetic.
pub fn gaussian_binomial(n: usize, k: usize, q: u32) -> Result<u128> {
    if k > n {
        return Err(Error::InvalidParams(format!(
            "gaussian binomial needs k <= n, got k={k} n={n}"
        )));
    }
    let q = q as u128;
    let mut acc: u128 = 1;
    for i in 1..=k {
        // prefix after step i is [n-k+i choose i]_q, an integer
        let num = q.checked_pow((n - k + i) as u32).ok_or(Error::Overflow)? - 1;
        let den = q.checked_pow(i as u32).ok_or(Error::Overflow)? - 1;
        acc = acc.checked_mul(num).ok_or(Error::Overflow)? / den;
    }
    Ok(acc)
}

/// Streams every k-dimensional subspace of F_q^n exactly once.
///
/// Order: pivot-column sets lexicographically, then the free entries counted
/// base q in row-major position order (first free slot most significant).
pub struct GrassmannianIter {
    q: u32,
    k: usize,
    n: usize,
    pivots: Option<Vec<usize>>,
    counter: u64,
    counter_max: u64,
}

pub fn enumerate_grassmannian(
    q: u32,
    k: usize,
    n: usize,
    limit: Option<u128>,
) -> Result<GrassmannianIter> {
    Fq::get(q)?;
    let total = gaussian_binomial(n, k, q)?;
    let limit = limit.unwrap_or(DEFAULT_GRASSMANNIAN_LIMIT);
    if total > limit {
        return Err(Error::LimitExceeded {
            needed: total,
            limit,
        });
    }
    let pivots: Vec<usize> = (0..k).collect();
    let counter_max = free_count(&pivots, n, q);
    Ok(GrassmannianIter {
        q,
        k,
        n,
        pivots: Some(pivots),
        counter: 0,
        counter_max,
    })
}

fn free_count(pivots: &[usize], n: usize, q: u32) -> u64 {
    let f: u32 = pivots
        .iter()
        .enumerate()
        .map(|(i, &p)| {
            ((p + 1)..n)
                .filter(|c| !pivots[i + 1..].contains(c))
                .count() as u32
        })
        .sum();
    (q as u64).pow(f)
}

fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    if k == 0 {
        return false;
    }
    let mut i = k;
    while i > 0 {
        i -= 1;
        if combo[i] < n - (k - i) {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

impl Iterator for GrassmannianIter {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        let pivots = self.pivots.as_ref()?.clone();
        // lay out the RREF pattern for (pivots, counter)
        let mut mat = MatF::zeros(self.q, self.k, self.n);
        let mut free_slots = Vec::new();
        for (i, &p) in pivots.iter().enumerate() {
            mat.set(i, p, 1);
            for c in (p + 1)..self.n {
                if !pivots[i + 1..].contains(&c) {
                    free_slots.push((i, c));
                }
            }
        }
        let mut rem = self.counter;
        for &(i, c) in free_slots.iter().rev() {
            mat.set(i, c, (rem % self.q as u64) as u32);
            rem /= self.q as u64;
        }
        let out = Subspace::from_rref_basis(mat);

        self.counter += 1;
        if self.counter == self.counter_max {
            self.counter = 0;
            let mut combo = pivots;
            if next_combination(&mut combo, self.n) {
                self.counter_max = free_count(&combo, self.n, self.q);
                self.pivots = Some(combo);
            } else {
                self.pivots = None;
            }
        }
        Some(out)
    }
}

/// Uniformly-seeded e-dimensional subspace of `v` (rejection sampling over
/// full-rank coordinate matrices).
pub fn random_subspace_of(v: &Subspace, e: usize, rng: &mut Rng) -> Result<Subspace> {
    if e > v.dim() {
        return Err(Error::InvalidParams(format!(
            "cannot take a {e}-dimensional subspace of a {}-dimensional space",
            v.dim()
        )));
    }
    if e == 0 {
        return Ok(Subspace::zero(v.q(), v.ambient()));
    }
    if e == v.dim() {
        return Ok(v.clone());
    }
    loop {
        let data: Vec<u32> = (0..e * v.dim()).map(|_| rng.field_elem(v.q())).collect();
        let coords = MatF::new(v.q(), e, v.dim(), data)?;
        if coords.rank() == e {
            return Ok(Subspace::span(&coords.mul(v.basis())?));
        }
    }
}

/// H + E for a fresh t-dimensional error space E with E n H = {0}.
pub fn random_disjoint_extension(h: &Subspace, t: usize, rng: &mut Rng) -> Result<Subspace> {
    if t > h.ambient() - h.dim() {
        return Err(Error::InvalidParams(format!(
            "no {t}-dimensional complement inside ambient dimension {}",
            h.ambient()
        )));
    }
    if t == 0 {
        return Ok(h.clone());
    }
    loop {
        let data: Vec<u32> = (0..t * h.ambient())
            .map(|_| rng.field_elem(h.q()))
            .collect();
        let err = MatF::new(h.q(), t, h.ambient(), data)?;
        let stacked = h.basis().vstack(&err)?;
        if stacked.rank() == h.dim() + t {
            return Ok(Subspace::span(&stacked));
        }
    }
}
