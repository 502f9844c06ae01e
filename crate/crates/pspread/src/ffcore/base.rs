//! Arithmetic tables for base fields F_q with q = p^e.
//!
//! Elements are encoded as integers in 0..q-1: the base-p digits of the code
//! are the coordinates of the element over F_p (constant digit first).
//! Multiplication and inversion go through exp/log tables for a fixed
//! primitive element, addition is digit-wise mod p.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::ffcore::poly::Poly;

/// Largest supported field order, for both base fields and extensions.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

/// A base field F_q, immutable after construction and shared via [`Fq::get`].
pub struct Fq {
    p: u32,
    e: u32,
    q: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

fn cache() -> &'static Mutex<HashMap<u32, Arc<Fq>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Fq>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Splits q into (p, e) with p prime, or fails.
pub fn factor_prime_power(q: u32) -> Result<(u32, u32)> {
    if q < 2 {
        return Err(Error::NotPrimePower(q));
    }
    let mut p = 0;
    for d in 2..=q {
        if d as u64 * d as u64 > q as u64 {
            p = q; // q itself is prime
            break;
        }
        if q.is_multiple_of(d) {
            p = d;
            break;
        }
    }
    let mut e = 0;
    let mut rest = q;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    if rest != 1 {
        return Err(Error::NotPrimePower(q));
    }
    Ok((p, e))
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n as u64 {
        if (n as u64).is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factors of n, without multiplicity.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// digit-vector arithmetic over F_p, used only while building tables for e > 1
fn code_to_digits(mut code: u32, p: u32, e: usize) -> Vec<u32> {
    let mut d = vec![0u32; e];
    for slot in d.iter_mut() {
        *slot = code % p;
        code /= p;
    }
    d
}

fn digits_to_code(d: &[u32], p: u32) -> u32 {
    let mut code = 0u64;
    for &x in d.iter().rev() {
        code = code * p as u64 + x as u64;
    }
    code as u32
}

/// Schoolbook product of digit vectors modulo a monic modulus over F_p.
fn mul_mod_p(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let e = a.len();
    let mut buf = vec![0u64; 2 * e - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            buf[i + j] = (buf[i + j] + ai as u64 * bj as u64) % p as u64;
        }
    }
    // reduce from the top: x^e = -(m_0 + m_1 x + ... + m_{e-1} x^{e-1})
    for i in (e..buf.len()).rev() {
        let c = buf[i];
        if c == 0 {
            continue;
        }
        buf[i] = 0;
        for (j, &mj) in modulus.iter().take(e).enumerate() {
            let sub = c * mj as u64 % p as u64;
            buf[i - e + j] = (buf[i - e + j] + p as u64 - sub) % p as u64;
        }
    }
    buf.iter().take(e).map(|&x| x as u32).collect()
}

impl Fq {
    /// Returns the shared context for F_q, building the tables on first use.
    pub fn get(q: u32) -> Result<Arc<Fq>> {
        if let Some(f) = cache().lock().unwrap().get(&q) {
            return Ok(f.clone());
        }
        let built = Arc::new(Fq::build(q)?);
        let mut guard = cache().lock().unwrap();
        Ok(guard.entry(q).or_insert(built).clone())
    }

    fn build(q: u32) -> Result<Fq> {
        if q as u64 > MAX_FIELD_ORDER {
            return Err(Error::FieldTooLarge {
                order: q as u64,
                max: MAX_FIELD_ORDER,
            });
        }
        let (p, e) = factor_prime_power(q)?;

        // multiplication of codes, before any table exists
        let mul_slow: Box<dyn Fn(u32, u32) -> u32> = if e == 1 {
            Box::new(move |a, b| (a as u64 * b as u64 % p as u64) as u32)
        } else {
            let modulus = Poly::smallest_irreducible(p, e as usize)?;
            let digits: Vec<u32> = modulus.coeffs().to_vec();
            Box::new(move |a, b| {
                let av = code_to_digits(a, p, e as usize);
                let bv = code_to_digits(b, p, e as usize);
                digits_to_code(&mul_mod_p(&av, &bv, &digits, p), p)
            })
        };
        let pow_slow = |mut base: u32, mut n: u64| -> u32 {
            let mut acc = 1u32;
            while n > 0 {
                if n & 1 == 1 {
                    acc = mul_slow(acc, base);
                }
                base = mul_slow(base, base);
                n >>= 1;
            }
            acc
        };

        let order = q as u64 - 1;
        let factors = prime_factors(order);
        let gen = (1..q)
            .find(|&g| factors.iter().all(|&f| pow_slow(g, order / f) != 1))
            .expect("multiplicative group of a finite field is cyclic");

        let mut exp = vec![0u32; order as usize];
        let mut log = vec![u32::MAX; q as usize];
        let mut acc = 1u32;
        for (i, slot) in exp.iter_mut().enumerate() {
            *slot = acc;
            log[acc as usize] = i as u32;
            acc = mul_slow(acc, gen);
        }
        debug_assert_eq!(acc, 1);
        Ok(Fq { p, e, q, exp, log })
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn e(&self) -> u32 {
        self.e
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        if self.e == 1 {
            return ((a as u64 + b as u64) % self.p as u64) as u32;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.e {
            out += (a + b) % self.p * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if self.p == 2 {
            return a;
        }
        if self.e == 1 {
            return if a == 0 { 0 } else { self.p - a };
        }
        let mut a = a;
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.e {
            let d = a % self.p;
            out += if d == 0 { 0 } else { self.p - d } * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.q as u64 - 1;
        let i = (self.log[a as usize] as u64 + self.log[b as usize] as u64) % n;
        self.exp[i as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let n = self.q as u64 - 1;
        let i = (n - self.log[a as usize] as u64) % n;
        Some(self.exp[i as usize])
    }
}
