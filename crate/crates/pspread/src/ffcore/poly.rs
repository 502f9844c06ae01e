//! Dense univariate polynomials over a base field F_q.
//!
//! Coefficients are stored constant-term first. Irreducibility is decided by
//! exhaustive divisor search, which is exact at the degrees this crate
//! supports.

use crate::error::{Error, Result};
use crate::ffcore::base::Fq;
use crate::ffcore::matf::MatF;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    q: u32,
    coeffs: Vec<u32>, // c_0 first, no trailing zeros; empty = zero polynomial
}

impl Poly {
    pub fn new(q: u32, coeffs: &[u32]) -> Result<Poly> {
        if coeffs.iter().any(|&c| c >= q) {
            return Err(Error::Format(format!(
                "polynomial coefficient out of range for F_{q}"
            )));
        }
        let mut coeffs = coeffs.to_vec();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Ok(Poly { q, coeffs })
    }

    pub fn zero(q: u32) -> Poly {
        Poly { q, coeffs: vec![] }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly> {
        if self.q != other.q {
            return Err(Error::ContextMismatch);
        }
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Ok(Poly::zero(self.q));
        }
        let f = Fq::get(self.q)?;
        let mut out = vec![0u32; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::new(self.q, &out)
    }

    /// Remainder of `self` divided by a nonzero `divisor`.
    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        if self.q != divisor.q {
            return Err(Error::ContextMismatch);
        }
        let d = divisor
            .degree()
            .ok_or_else(|| Error::InvalidParams("division by zero polynomial".into()))?;
        let f = Fq::get(self.q)?;
        let lead_inv = f.inv(*divisor.coeffs.last().unwrap()).unwrap();
        let mut rem = self.coeffs.clone();
        while rem.len() > d {
            let c = f.mul(*rem.last().unwrap(), lead_inv);
            let top = rem.len() - 1;
            if c != 0 {
                for (j, &m) in divisor.coeffs.iter().enumerate() {
                    let idx = top - d + j;
                    rem[idx] = f.sub(rem[idx], f.mul(c, m));
                }
            }
            rem.pop();
            while rem.last() == Some(&0) {
                rem.pop();
            }
        }
        Ok(Poly {
            q: self.q,
            coeffs: rem,
        })
    }

    /// True iff the polynomial is irreducible over F_q.
    ///
    /// Requires a monic input of degree >= 1; decided by trial division with
    /// every monic polynomial of degree up to half the input degree.
    pub fn is_irreducible(&self) -> Result<bool> {
        if !self.is_monic() {
            return Err(Error::NonMonic);
        }
        let deg = self.degree().unwrap();
        if deg == 0 {
            return Err(Error::InvalidParams("degree must be >= 1".into()));
        }
        for d in 1..=deg / 2 {
            let mut divisor = vec![0u32; d + 1];
            divisor[d] = 1;
            let count = (self.q as u64).pow(d as u32);
            for code in 0..count {
                let mut c = code;
                for slot in divisor.iter_mut().take(d) {
                    *slot = (c % self.q as u64) as u32;
                    c /= self.q as u64;
                }
                let g = Poly {
                    q: self.q,
                    coeffs: divisor.clone(),
                };
                if self.rem(&g)?.coeffs.is_empty() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// The monic irreducible of the given degree whose coefficient list,
    /// read as a base-q integer with c_0 least significant, is smallest.
    pub fn smallest_irreducible(q: u32, degree: usize) -> Result<Poly> {
        if degree == 0 {
            return Err(Error::InvalidParams("degree must be >= 1".into()));
        }
        let count = (q as u64)
            .checked_pow(degree as u32)
            .ok_or(Error::Overflow)?;
        let mut coeffs = vec![0u32; degree + 1];
        coeffs[degree] = 1;
        for code in 0..count {
            let mut c = code;
            for slot in coeffs.iter_mut().take(degree) {
                *slot = (c % q as u64) as u32;
                c /= q as u64;
            }
            let cand = Poly {
                q,
                coeffs: coeffs.clone(),
            };
            if cand.is_irreducible()? {
                return Ok(cand);
            }
        }
        unreachable!("irreducible polynomials exist in every degree over F_q")
    }

    /// Evaluates the polynomial at a square matrix over the same field.
    pub fn eval_matrix(&self, m: &MatF) -> Result<MatF> {
        if m.rows() != m.cols() {
            return Err(Error::ShapeMismatch("matrix must be square".into()));
        }
        if m.q() != self.q {
            return Err(Error::ContextMismatch);
        }
        let n = m.rows();
        let mut acc = MatF::zeros(self.q, n, n);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(m)?;
            if c != 0 {
                acc = acc.add(&MatF::identity(self.q, n).scale(c)?)?;
            }
        }
        Ok(acc)
    }
}
