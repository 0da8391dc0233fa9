//! The torus quotient `Z_q^n`: cell indexing and the `TorusCode` type.
//!
//! Codes on `Z_q^n` stand for q-periodic codes of `Z^n`; every verification
//! below works on the finite quotient.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Coord, Point};

/// Hard cap on the number of torus cells handled in memory.
pub const MAX_CELLS: u128 = 1 << 28;

/// Mixed-radix indexing of `Z_q^n`: cell `x` has index `sum x_i * q^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Torus {
    pub n: usize,
    pub q: i64,
    pub cells: usize,
}

impl Torus {
    pub fn new(n: usize, q: i64) -> Result<Torus> {
        if n == 0 || q < 1 {
            return Err(Error::InvalidParameter(format!("bad torus Z_{q}^{n}")));
        }
        let mut cells: u128 = 1;
        for _ in 0..n {
            cells *= q as u128;
            if cells > MAX_CELLS {
                return Err(Error::ResourceLimit(format!(
                    "torus Z_{q}^{n} exceeds {MAX_CELLS} cells"
                )));
            }
        }
        Ok(Torus { n, q, cells: cells as usize })
    }

    #[inline]
    pub fn index(&self, p: &[Coord]) -> usize {
        debug_assert_eq!(p.len(), self.n);
        let mut idx = 0usize;
        for &c in p.iter().rev() {
            idx = idx * self.q as usize + c.rem_euclid(self.q) as usize;
        }
        idx
    }

    pub fn point(&self, mut idx: usize) -> Point {
        let mut p = vec![0i64; self.n];
        for c in p.iter_mut() {
            *c = (idx % self.q as usize) as i64;
            idx /= self.q as usize;
        }
        p
    }

    /// Index of `cell + t` for a lattice translation `t`.
    #[inline]
    pub fn translate(&self, idx: usize, t: &[Coord]) -> usize {
        let q = self.q as usize;
        let mut rem = idx;
        let mut out = 0usize;
        let mut stride = 1usize;
        for &ti in t.iter() {
            let digit = rem % q;
            rem /= q;
            let shifted = (digit as i64 + ti).rem_euclid(self.q) as usize;
            out += shifted * stride;
            stride *= q;
        }
        out
    }

    /// Index of the cellwise sum of two cells.
    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        let q = self.q as usize;
        let (mut ra, mut rb) = (a, b);
        let mut out = 0usize;
        let mut stride = 1usize;
        for _ in 0..self.n {
            let s = (ra % q + rb % q) % q;
            ra /= q;
            rb /= q;
            out += s * stride;
            stride *= q;
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        let q = self.q as usize;
        let (mut ra, mut rb) = (a, b);
        let mut out = 0usize;
        let mut stride = 1usize;
        for _ in 0..self.n {
            let s = (ra % q + q - rb % q) % q;
            ra /= q;
            rb /= q;
            out += s * stride;
            stride *= q;
        }
        out
    }
}

/// Dense membership bitmap over the torus cells.
#[derive(Debug, Clone)]
pub struct CellSet {
    pub bits: Vec<u64>,
    pub len: usize,
}

impl CellSet {
    pub fn empty(cells: usize) -> CellSet {
        CellSet { bits: vec![0u64; cells.div_ceil(64)], len: 0 }
    }

    #[inline]
    pub fn contains(&self, idx: usize) -> bool {
        self.bits[idx / 64] >> (idx % 64) & 1 == 1
    }

    /// Returns true if the bit was newly set.
    #[inline]
    pub fn insert(&mut self, idx: usize) -> bool {
        let w = &mut self.bits[idx / 64];
        let mask = 1u64 << (idx % 64);
        if *w & mask != 0 {
            return false;
        }
        *w |= mask;
        self.len += 1;
        true
    }
}

/// A code (equivalently a set of tile translates) on `Z_q^n`.
///
/// Codewords are stored reduced to `[0,q)`, sorted, and pairwise distinct.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusCode {
    pub n: usize,
    pub q: i64,
    pub codewords: Vec<Point>,
}

impl TorusCode {
    pub fn new(n: usize, q: i64, codewords: Vec<Point>) -> Result<TorusCode> {
        let torus = Torus::new(n, q)?;
        let mut reduced: Vec<Point> = Vec::with_capacity(codewords.len());
        for c in &codewords {
            if c.len() != n {
                return Err(Error::DimensionMismatch(c.len(), n));
            }
            reduced.push(c.iter().map(|&x| x.rem_euclid(q)).collect());
        }
        reduced.sort();
        let before = reduced.len();
        reduced.dedup();
        if reduced.len() != before {
            return Err(Error::InvalidParameter(
                "codewords are not pairwise distinct modulo q".into(),
            ));
        }
        if reduced.is_empty() {
            return Err(Error::InvalidParameter("code must be nonempty".into()));
        }
        let _ = torus;
        Ok(TorusCode { n, q, codewords: reduced })
    }

    pub fn torus(&self) -> Torus {
        Torus::new(self.n, self.q).expect("validated at construction")
    }

    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }

    pub fn membership(&self) -> CellSet {
        let torus = self.torus();
        let mut set = CellSet::empty(torus.cells);
        for c in &self.codewords {
            set.insert(torus.index(c));
        }
        set
    }

    pub fn indices(&self) -> Vec<usize> {
        let torus = self.torus();
        self.codewords.iter().map(|c| torus.index(c)).collect()
    }

    /// The same periodic code on the finer torus `Z_{kq}^n`: every codeword
    /// is lifted to all `k^n` of its representatives.
    pub fn periodic_extension(&self, k: i64) -> Result<TorusCode> {
        if k < 1 {
            return Err(Error::InvalidParameter("extension factor must be >= 1".into()));
        }
        let mut lifted = Vec::new();
        let mut shift = vec![0i64; self.n];
        loop {
            for c in &self.codewords {
                lifted.push(c.iter().zip(&shift).map(|(&x, &s)| x + s * self.q).collect());
            }
            // next shift vector in [0,k)^n
            let mut axis = 0;
            loop {
                if axis == self.n {
                    return TorusCode::new(self.n, self.q * k, lifted);
                }
                shift[axis] += 1;
                if shift[axis] < k {
                    break;
                }
                shift[axis] = 0;
                axis += 1;
            }
        }
    }

    /// Kernel-style constructor: keep every cell accepted by `keep`.
    pub fn from_predicate(n: usize, q: i64, keep: impl Fn(&[Coord]) -> bool) -> Result<TorusCode> {
        let torus = Torus::new(n, q)?;
        let mut cws = Vec::new();
        let mut p = vec![0i64; n];
        for _ in 0..torus.cells {
            if keep(&p) {
                cws.push(p.clone());
            }
            let mut axis = 0;
            while axis < n {
                p[axis] += 1;
                if p[axis] < q {
                    break;
                }
                p[axis] = 0;
                axis += 1;
            }
        }
        TorusCode::new(n, q, cws)
    }
}

/// The lattice code `{x : sum_i w_i x_i = 0 mod q}` on `Z_q^n`.
pub fn cyclic_syndrome_code(n: usize, q: i64, weights: &[i64]) -> Result<TorusCode> {
    if weights.len() != n {
        return Err(Error::DimensionMismatch(weights.len(), n));
    }
    TorusCode::from_predicate(n, q, |x| {
        x.iter().zip(weights).map(|(&a, &w)| a * w).sum::<i64>().rem_euclid(q) == 0
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_roundtrip() {
        let t = Torus::new(3, 5).unwrap();
        assert_eq!(t.cells, 125);
        for idx in 0..t.cells {
            assert_eq!(t.index(&t.point(idx)), idx);
        }
        assert_eq!(t.index(&[-1, 0, 0]), t.index(&[4, 0, 0]));
        let a = t.index(&[3, 4, 1]);
        assert_eq!(t.translate(a, &[4, 2, 0]), t.index(&[2, 1, 1]));
        assert_eq!(t.add(t.index(&[3, 4, 1]), t.index(&[4, 2, 0])), t.index(&[2, 1, 1]));
        assert_eq!(t.sub(t.index(&[2, 1, 1]), t.index(&[4, 2, 0])), t.index(&[3, 4, 1]));
    }

    #[test]
    fn code_reduction_and_distinctness() {
        let c = TorusCode::new(2, 5, vec![vec![6, -1], vec![0, 0]]).unwrap();
        assert_eq!(c.codewords, vec![vec![0, 0], vec![1, 4]]);
        assert!(TorusCode::new(2, 5, vec![vec![6, 4], vec![1, -1]]).is_err());
    }

    #[test]
    fn linear_code_size() {
        let c = cyclic_syndrome_code(3, 7, &[1, 2, 3]).unwrap();
        assert_eq!(c.len(), 49);
    }

    #[test]
    fn periodic_extension_size() {
        let c = cyclic_syndrome_code(3, 7, &[1, 2, 3]).unwrap();
        let e = c.periodic_extension(2).unwrap();
        assert_eq!(e.q, 14);
        assert_eq!(e.len(), 49 * 8);
    }
}
