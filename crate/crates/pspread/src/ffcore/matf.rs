//! Dense matrices over F_q with exact linear algebra.
//!
//! Entries are field codes in 0..q-1, stored row-major. All operations are
//! pure; the field tables are fetched from the shared cache per call.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ffcore::base::Fq;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MatF {
    q: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Result of a reduced-row-echelon-form computation.
#[derive(Debug, Clone)]
pub struct Rref {
    pub mat: MatF,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl MatF {
    pub fn new(q: u32, rows: usize, cols: usize, data: Vec<u32>) -> Result<MatF> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        if data.iter().any(|&x| x >= q) {
            return Err(Error::Format(format!("entry out of range for F_{q}")));
        }
        Ok(MatF {
            q,
            rows,
            cols,
            data,
        })
    }

    pub fn from_rows(q: u32, rows: &[Vec<u32>]) -> Result<MatF> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        MatF::new(q, rows.len(), cols, rows.concat())
    }

    pub fn zeros(q: u32, rows: usize, cols: usize) -> MatF {
        MatF {
            q,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(q: u32, n: usize) -> MatF {
        let mut m = MatF::zeros(q, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Companion matrix of a monic irreducible polynomial: superdiagonal of
    /// ones, last row the negated coefficients.
    pub fn companion(modulus: &crate::ffcore::poly::Poly) -> Result<MatF> {
        if !modulus.is_monic() {
            return Err(Error::NonMonic);
        }
        if !modulus.is_irreducible()? {
            return Err(Error::Reducible);
        }
        let q = modulus.q();
        let m = modulus.degree().unwrap();
        let f = Fq::get(q)?;
        let mut out = MatF::zeros(q, m, m);
        for i in 0..m.saturating_sub(1) {
            out.data[i * m + i + 1] = 1;
        }
        for j in 0..m {
            out.data[(m - 1) * m + j] = f.neg(modulus.coeff(j));
        }
        Ok(out)
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        debug_assert!(v < self.q);
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    fn field(&self) -> Arc<Fq> {
        Fq::get(self.q).expect("entries were range-checked against a valid q")
    }

    fn check_same_field(&self, other: &MatF) -> Result<()> {
        if self.q != other.q {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &MatF) -> Result<MatF> {
        self.check_same_field(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!(
                "add {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = self.field();
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Ok(MatF {
            q: self.q,
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scale(&self, c: u32) -> Result<MatF> {
        if c >= self.q {
            return Err(Error::Format(format!(
                "scalar out of range for F_{}",
                self.q
            )));
        }
        let f = self.field();
        let data = self.data.iter().map(|&a| f.mul(a, c)).collect();
        Ok(MatF {
            q: self.q,
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn mul(&self, other: &MatF) -> Result<MatF> {
        self.check_same_field(other)?;
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "mul {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = self.field();
        let mut out = MatF::zeros(self.q, self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(l, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn vstack(&self, other: &MatF) -> Result<MatF> {
        self.check_same_field(other)?;
        if self.cols != other.cols {
            return Err(Error::ShapeMismatch("vstack column mismatch".into()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(MatF {
            q: self.q,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn hstack(&self, other: &MatF) -> Result<MatF> {
        self.check_same_field(other)?;
        if self.rows != other.rows {
            return Err(Error::ShapeMismatch("hstack row mismatch".into()));
        }
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(other.row(i));
        }
        Ok(MatF {
            q: self.q,
            rows: self.rows,
            cols,
            data,
        })
    }

    /// Copies the half-open row and column ranges into a new matrix.
    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Result<MatF> {
        if r1 > self.rows || c1 > self.cols || r0 > r1 || c0 > c1 {
            return Err(Error::ShapeMismatch("submatrix range out of bounds".into()));
        }
        let mut data = Vec::with_capacity((r1 - r0) * (c1 - c0));
        for i in r0..r1 {
            data.extend_from_slice(&self.data[i * self.cols + c0..i * self.cols + c1]);
        }
        Ok(MatF {
            q: self.q,
            rows: r1 - r0,
            cols: c1 - c0,
            data,
        })
    }

    /// The last `k` rows, written A_(k) for algebra elements.
    pub fn last_rows(&self, k: usize) -> Result<MatF> {
        if k > self.rows {
            return Err(Error::ShapeMismatch("fewer rows than requested".into()));
        }
        self.submatrix(self.rows - k, self.rows, 0, self.cols)
    }

    pub fn transpose(&self) -> MatF {
        let mut out = MatF::zeros(self.q, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j);
            }
        }
        out
    }

    pub fn pow(&self, mut n: u64) -> Result<MatF> {
        if self.rows != self.cols {
            return Err(Error::ShapeMismatch(
                "matrix power needs a square matrix".into(),
            ));
        }
        let mut acc = MatF::identity(self.q, self.rows);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            base = base.mul(&base)?;
            n >>= 1;
        }
        Ok(acc)
    }

    /// The unique reduced row echelon form, with rank and pivot columns.
    pub fn rref(&self) -> Rref {
        let f = self.field();
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    let tmp = m.get(r, j);
                    m.set(r, j, m.get(pr, j));
                    m.set(pr, j, tmp);
                }
            }
            let inv = f.inv(m.get(r, c)).unwrap();
            if inv != 1 {
                for j in c..m.cols {
                    let v = f.mul(m.get(r, j), inv);
                    m.set(r, j, v);
                }
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor == 0 {
                    continue;
                }
                for j in c..m.cols {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref {
            mat: m,
            rank: r,
            pivots,
        }
    }

    /// Rank via forward elimination only.
    pub fn rank(&self) -> usize {
        let f = self.field();
        let mut m = self.clone();
        let mut r = 0usize;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in c..m.cols {
                    let tmp = m.get(r, j);
                    m.set(r, j, m.get(pr, j));
                    m.set(pr, j, tmp);
                }
            }
            let pivot_inv = f.inv(m.get(r, c)).unwrap();
            for i in r + 1..m.rows {
                let factor = f.mul(m.get(i, c), pivot_inv);
                if factor == 0 {
                    continue;
                }
                for j in c..m.cols {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            r += 1;
        }
        r
    }

    /// A basis (as rows) of the right kernel { x : self * x^T = 0 }.
    pub fn kernel(&self) -> MatF {
        let f = self.field();
        let Rref { mat, rank, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = MatF::zeros(self.q, free.len(), self.cols);
        for (row, &fc) in free.iter().enumerate() {
            out.set(row, fc, 1);
            for (j, &pc) in pivots.iter().enumerate().take(rank) {
                out.set(row, pc, f.neg(mat.get(j, fc)));
            }
        }
        out
    }
}

/// The algebra element sum c_i P^i for a companion matrix P; its first row
/// equals the coefficient vector.
pub fn algebra_element(p: &MatF, coeffs: &[u32]) -> Result<MatF> {
    if p.rows() != p.cols() {
        return Err(Error::ShapeMismatch(
            "companion matrix must be square".into(),
        ));
    }
    if coeffs.len() != p.rows() {
        return Err(Error::ShapeMismatch(format!(
            "expected {} coefficients, got {}",
            p.rows(),
            coeffs.len()
        )));
    }
    let mut acc = MatF::zeros(p.q(), p.rows(), p.rows());
    let mut pw = MatF::identity(p.q(), p.rows());
    for (i, &c) in coeffs.iter().enumerate() {
        if c != 0 {
            acc = acc.add(&pw.scale(c)?)?;
        }
        if i + 1 < coeffs.len() {
            pw = pw.mul(p)?;
        }
    }
    Ok(acc)
}
