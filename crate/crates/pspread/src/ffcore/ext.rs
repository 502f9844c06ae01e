//! Extension fields F_{q^m} over a base field F_q, given by a monic
//! irreducible modulus, together with the coordinate isomorphism and the
//! companion-algebra maps.
//!
//! Elements carry the coordinates of 1, lambda, ..., lambda^{m-1}, where
//! lambda is the residue class of x. Multiplicative structure is handled by
//! exp/log tables over the element codes, so the whole field must fit in
//! [`MAX_FIELD_ORDER`].

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ffcore::base::{prime_factors, Fq, MAX_FIELD_ORDER};
use crate::ffcore::matf::MatF;
use crate::ffcore::poly::Poly;

/// An element of F_{q^m}, tagged with the id of its owning context.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtElem {
    ctx: u64,
    coords: Vec<u32>,
}

impl ExtElem {
    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

/// F_{q^m} together with its modulus, lambda and arithmetic tables.
pub struct FieldCtx {
    base: Arc<Fq>,
    m: usize,
    modulus: Poly,
    id: u64,
    order: u64,
    exp: Vec<u32>,
    log: Vec<u32>,
}

fn structural_id(q: u32, m: usize, coeffs: &[u32]) -> u64 {
    // FNV-1a over the defining data; stable across runs
    let mut h = 0xcbf29ce484222325u64;
    let mut eat = |x: u64| {
        for b in x.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
    };
    eat(q as u64);
    eat(m as u64);
    for &c in coeffs {
        eat(c as u64);
    }
    h
}

/// Schoolbook coordinate product reduced by a monic modulus over F_q.
fn mul_coords(a: &[u32], b: &[u32], modulus: &[u32], f: &Fq) -> Vec<u32> {
    let m = a.len();
    let mut buf = vec![0u32; 2 * m - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            buf[i + j] = f.add(buf[i + j], f.mul(ai, bj));
        }
    }
    for i in (m..buf.len()).rev() {
        let c = buf[i];
        if c == 0 {
            continue;
        }
        buf[i] = 0;
        for (j, &mj) in modulus.iter().take(m).enumerate() {
            buf[i - m + j] = f.sub(buf[i - m + j], f.mul(c, mj));
        }
    }
    buf.truncate(m);
    buf
}

impl FieldCtx {
    /// Builds F_{(p^e)^m}. This is the constructor behind every field in the
    /// crate; `modulus` defaults to the smallest monic irreducible of degree
    /// `m` over F_{p^e}.
    pub fn new(p: u32, e: u32, m: usize, modulus: Option<&[u32]>) -> Result<FieldCtx> {
        if e == 0 {
            return Err(Error::InvalidParams("base degree e must be >= 1".into()));
        }
        let q = (p as u64)
            .checked_pow(e)
            .filter(|&q| q <= MAX_FIELD_ORDER)
            .ok_or(Error::FieldTooLarge {
                order: (p as u64).saturating_pow(e),
                max: MAX_FIELD_ORDER,
            })? as u32;
        let base = Fq::get(q)?;
        if base.p() != p {
            return Err(Error::NotPrime(p));
        }
        FieldCtx::from_base(base, m, modulus)
    }

    /// Same as [`FieldCtx::new`] with the base field given by its order.
    pub fn from_q(q: u32, m: usize, modulus: Option<&[u32]>) -> Result<FieldCtx> {
        FieldCtx::from_base(Fq::get(q)?, m, modulus)
    }

    fn from_base(base: Arc<Fq>, m: usize, modulus: Option<&[u32]>) -> Result<FieldCtx> {
        if m == 0 {
            return Err(Error::InvalidParams(
                "extension degree m must be >= 1".into(),
            ));
        }
        let q = base.q();
        let order = (q as u64)
            .checked_pow(m as u32)
            .filter(|&n| n <= MAX_FIELD_ORDER)
            .ok_or(Error::FieldTooLarge {
                order: (q as u64).saturating_pow(m as u32),
                max: MAX_FIELD_ORDER,
            })?;

        let modulus = match modulus {
            Some(coeffs) => {
                let p = Poly::new(q, coeffs)?;
                if !p.is_monic() {
                    return Err(Error::NonMonic);
                }
                if p.degree() != Some(m) {
                    return Err(Error::DegreeMismatch {
                        expected: m,
                        found: p.degree().unwrap_or(0),
                    });
                }
                if !p.is_irreducible()? {
                    return Err(Error::Reducible);
                }
                p
            }
            None => Poly::smallest_irreducible(q, m)?,
        };

        let mod_coeffs: Vec<u32> = (0..m).map(|i| modulus.coeff(i)).collect();
        let to_coords = |code: u64| -> Vec<u32> {
            let mut c = code;
            (0..m)
                .map(|_| {
                    let d = (c % q as u64) as u32;
                    c /= q as u64;
                    d
                })
                .collect()
        };
        let to_code = |coords: &[u32]| -> u64 {
            coords
                .iter()
                .rev()
                .fold(0u64, |acc, &c| acc * q as u64 + c as u64)
        };

        // find a primitive element, then lay out exp/log
        let n = order - 1;
        let factors = prime_factors(n);
        let pow_slow = |code: u64, mut k: u64| -> u64 {
            let mut acc = vec![0u32; m];
            acc[0] = 1;
            let mut b = to_coords(code);
            while k > 0 {
                if k & 1 == 1 {
                    acc = mul_coords(&acc, &b, &mod_coeffs, &base);
                }
                b = mul_coords(&b, &b, &mod_coeffs, &base);
                k >>= 1;
            }
            to_code(&acc)
        };
        let gen = (1..order)
            .find(|&g| factors.iter().all(|&f| pow_slow(g, n / f) != 1))
            .expect("multiplicative group of a finite field is cyclic");

        let mut exp = vec![0u32; n as usize];
        let mut log = vec![u32::MAX; order as usize];
        let gen_coords = to_coords(gen);
        let mut acc = vec![0u32; m];
        acc[0] = 1;
        for (i, slot) in exp.iter_mut().enumerate() {
            let code = to_code(&acc) as u32;
            *slot = code;
            log[code as usize] = i as u32;
            acc = mul_coords(&acc, &gen_coords, &mod_coeffs, &base);
        }

        let id = structural_id(q, m, modulus.coeffs());
        Ok(FieldCtx {
            base,
            m,
            modulus,
            id,
            order,
            exp,
            log,
        })
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.base.q()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    /// q^m, the number of elements.
    #[inline]
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn base(&self) -> &Arc<Fq> {
        &self.base
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    fn check(&self, a: &ExtElem) -> Result<()> {
        if a.ctx != self.id {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    pub fn elem(&self, coords: &[u32]) -> Result<ExtElem> {
        if coords.len() != self.m {
            return Err(Error::ShapeMismatch(format!(
                "expected {} coordinates, got {}",
                self.m,
                coords.len()
            )));
        }
        if coords.iter().any(|&c| c >= self.q()) {
            return Err(Error::Format(format!(
                "coordinate out of range for F_{}",
                self.q()
            )));
        }
        Ok(ExtElem {
            ctx: self.id,
            coords: coords.to_vec(),
        })
    }

    pub fn elem_from_code(&self, code: u64) -> Result<ExtElem> {
        if code >= self.order {
            return Err(Error::IndexOutOfRange {
                index: code as u128,
                cardinality: self.order as u128,
            });
        }
        let mut c = code;
        let coords = (0..self.m)
            .map(|_| {
                let d = (c % self.q() as u64) as u32;
                c /= self.q() as u64;
                d
            })
            .collect();
        Ok(ExtElem {
            ctx: self.id,
            coords,
        })
    }

    pub fn code(&self, a: &ExtElem) -> Result<u64> {
        self.check(a)?;
        Ok(a.coords
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * self.q() as u64 + c as u64))
    }

    pub fn zero(&self) -> ExtElem {
        ExtElem {
            ctx: self.id,
            coords: vec![0; self.m],
        }
    }

    pub fn one(&self) -> ExtElem {
        let mut coords = vec![0; self.m];
        coords[0] = 1;
        ExtElem {
            ctx: self.id,
            coords,
        }
    }

    /// The residue class of x. For m = 1 this is the base-field element -c_0.
    pub fn lambda(&self) -> ExtElem {
        let mut coords = vec![0; self.m];
        if self.m == 1 {
            coords[0] = self.base.neg(self.modulus.coeff(0));
        } else {
            coords[1] = 1;
        }
        ExtElem {
            ctx: self.id,
            coords,
        }
    }

    /// Iterates every element once, in code order.
    pub fn elements(&self) -> impl Iterator<Item = ExtElem> + '_ {
        (0..self.order).map(|c| self.elem_from_code(c).unwrap())
    }

    pub fn add(&self, a: &ExtElem, b: &ExtElem) -> Result<ExtElem> {
        self.check(a)?;
        self.check(b)?;
        let coords = a
            .coords
            .iter()
            .zip(&b.coords)
            .map(|(&x, &y)| self.base.add(x, y))
            .collect();
        Ok(ExtElem {
            ctx: self.id,
            coords,
        })
    }

    pub fn neg(&self, a: &ExtElem) -> Result<ExtElem> {
        self.check(a)?;
        let coords = a.coords.iter().map(|&x| self.base.neg(x)).collect();
        Ok(ExtElem {
            ctx: self.id,
            coords,
        })
    }

    pub fn sub(&self, a: &ExtElem, b: &ExtElem) -> Result<ExtElem> {
        self.add(a, &self.neg(b)?)
    }

    pub fn mul(&self, a: &ExtElem, b: &ExtElem) -> Result<ExtElem> {
        self.check(a)?;
        self.check(b)?;
        let (ca, cb) = (self.code(a)?, self.code(b)?);
        if ca == 0 || cb == 0 {
            return Ok(self.zero());
        }
        let n = self.order - 1;
        let i = (self.log[ca as usize] as u64 + self.log[cb as usize] as u64) % n;
        self.elem_from_code(self.exp[i as usize] as u64)
    }

    /// Scales by a base-field element.
    pub fn scale(&self, c: u32, a: &ExtElem) -> Result<ExtElem> {
        self.check(a)?;
        if c >= self.q() {
            return Err(Error::Format("scalar out of range".into()));
        }
        let coords = a.coords.iter().map(|&x| self.base.mul(c, x)).collect();
        Ok(ExtElem {
            ctx: self.id,
            coords,
        })
    }

    pub fn inv(&self, a: &ExtElem) -> Result<ExtElem> {
        self.check(a)?;
        let ca = self.code(a)?;
        if ca == 0 {
            return Err(Error::ZeroInverse);
        }
        let n = self.order - 1;
        let i = (n - self.log[ca as usize] as u64) % n;
        self.elem_from_code(self.exp[i as usize] as u64)
    }

    /// a^n for any integer n; negative exponents go through the inverse.
    pub fn pow(&self, a: &ExtElem, n: i128) -> Result<ExtElem> {
        self.check(a)?;
        let ca = self.code(a)?;
        if ca == 0 {
            return match n {
                0 => Ok(self.one()),
                n if n > 0 => Ok(self.zero()),
                _ => Err(Error::ZeroInverse),
            };
        }
        let group = (self.order - 1) as i128;
        let e = n.rem_euclid(group) as u64;
        let i = self.log[ca as usize] as u64 * e % (self.order - 1);
        self.elem_from_code(self.exp[i as usize] as u64)
    }

    /// The Frobenius power a^{q^j}.
    pub fn frobenius(&self, a: &ExtElem, j: usize) -> Result<ExtElem> {
        self.check(a)?;
        let j = j % self.m;
        if j == 0 {
            return Ok(a.clone());
        }
        let e = (self.q() as u128).pow(j as u32);
        self.pow(a, e as i128)
    }

    /// Coordinates of a over 1, lambda, ..., lambda^{m-1}; maps lambda^i to
    /// the (i+1)-th standard basis vector.
    pub fn phi(&self, a: &ExtElem) -> Result<Vec<u32>> {
        self.check(a)?;
        Ok(a.coords.clone())
    }

    pub fn phi_inv(&self, v: &[u32]) -> Result<ExtElem> {
        self.elem(v)
    }

    /// Companion matrix of the modulus.
    pub fn companion(&self) -> MatF {
        MatF::companion(&self.modulus).expect("modulus was validated at construction")
    }

    /// The matrix of multiplication by `a` in the algebra F_q[P]:
    /// row i holds phi(lambda^{i-1} * a).
    pub fn ext_to_algebra(&self, a: &ExtElem) -> Result<MatF> {
        self.check(a)?;
        let lambda = self.lambda();
        let mut rows = Vec::with_capacity(self.m);
        let mut cur = a.clone();
        for _ in 0..self.m {
            rows.push(cur.coords.clone());
            cur = self.mul(&cur, &lambda)?;
        }
        MatF::from_rows(self.q(), &rows)
    }

    /// Inverse of [`FieldCtx::ext_to_algebra`]; fails if the matrix is not an
    /// algebra element (checked by rebuilding from the first row).
    pub fn algebra_to_ext(&self, mat: &MatF) -> Result<ExtElem> {
        if mat.rows() != self.m || mat.cols() != self.m {
            return Err(Error::ShapeMismatch(format!(
                "expected a {0}x{0} matrix",
                self.m
            )));
        }
        if mat.q() != self.q() {
            return Err(Error::ContextMismatch);
        }
        let a = self.elem(mat.row(0))?;
        if &self.ext_to_algebra(&a)? != mat {
            return Err(Error::NotAlgebraElement);
        }
        Ok(a)
    }

    /// Recovers the unique A in F_q[P] whose last `k` rows equal `last`,
    /// where k = m - r. The first row of `last` is row r+1 of A, which equals
    /// phi(lambda^r * a); verification failure means the block is corrupted.
    pub fn lift_last_rows(&self, last: &MatF, r: usize) -> Result<MatF> {
        let k = self
            .m
            .checked_sub(r)
            .filter(|&k| k >= 1)
            .ok_or_else(|| Error::InvalidParams("need r <= m - 1".into()))?;
        if last.rows() != k || last.cols() != self.m {
            return Err(Error::ShapeMismatch(format!(
                "expected a {k}x{} last-rows block",
                self.m
            )));
        }
        let first = self.phi_inv(last.row(0))?;
        let a = self.mul(&self.pow(&self.lambda(), -(r as i128))?, &first)?;
        let full = self.ext_to_algebra(&a)?;
        if &full.last_rows(k)? != last {
            return Err(Error::NotACodeword);
        }
        Ok(full)
    }
}
