//! Exact arithmetic in the cyclotomic ring `Z[zeta_m]`: integer coefficient
//! vectors reduced modulo the m-th cyclotomic polynomial. Zero is decided by
//! reduction, never by a floating-point threshold; a float shadow is carried
//! for diagnostics only.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficients of a polynomial, lowest degree first.
type Poly = Vec<i128>;

fn poly_trim(p: &mut Poly) {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
}

/// Exact division of integer polynomials; panics if not exact (never happens
/// for cyclotomic factors of `x^m - 1`).
fn poly_div_exact(num: &Poly, den: &Poly) -> Poly {
    let mut rem = num.clone();
    let dn = den.len() - 1;
    assert_eq!(*den.last().unwrap(), 1, "divisor must be monic");
    if rem.len() <= dn {
        assert!(rem.iter().all(|&c| c == 0));
        return vec![0];
    }
    let mut quot = vec![0i128; rem.len() - dn];
    for i in (dn..rem.len()).rev() {
        let c = rem[i];
        if c == 0 {
            continue;
        }
        quot[i - dn] = c;
        for (j, &d) in den.iter().enumerate() {
            rem[i - dn + j] -= c * d;
        }
    }
    assert!(rem.iter().all(|&c| c == 0), "division was not exact");
    poly_trim(&mut quot);
    quot
}

/// The m-th cyclotomic polynomial, computed by peeling the proper divisors
/// out of `x^m - 1`.
pub fn cyclotomic_polynomial(m: u32) -> Poly {
    assert!(m >= 1);
    let mut memo: Vec<Option<Poly>> = vec![None; m as usize + 1];
    for d in 1..=m {
        if m % d != 0 {
            continue;
        }
        // x^d - 1
        let mut num = vec![0i128; d as usize + 1];
        num[0] = -1;
        num[d as usize] = 1;
        let mut phi = num;
        for e in 1..d {
            if d % e == 0 {
                phi = poly_div_exact(&phi, memo[e as usize].as_ref().unwrap());
            }
        }
        memo[d as usize] = Some(phi);
    }
    memo[m as usize].take().unwrap()
}

/// An element of `Z[zeta_m]`, stored reduced modulo the m-th cyclotomic
/// polynomial (degree < phi(m)).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycInt {
    pub modulus: u32,
    /// Coordinates on the basis `1, zeta, ..., zeta^(phi(m)-1)`.
    pub coeffs: Vec<i128>,
}

impl CycInt {
    /// Reduce `sum_r counts[r] * zeta^r` into the ring.
    pub fn from_exponent_counts(m: u32, counts: &[i128]) -> Result<CycInt> {
        if counts.len() != m as usize {
            return Err(Error::InvalidParameter(format!(
                "need exactly m = {m} exponent counts, got {}",
                counts.len()
            )));
        }
        let phi = cyclotomic_polynomial(m);
        let deg = phi.len() - 1;
        let mut rem: Poly = counts.to_vec();
        if rem.is_empty() {
            rem.push(0);
        }
        for i in (deg..rem.len()).rev() {
            let c = rem[i];
            if c == 0 {
                continue;
            }
            rem[i] = 0;
            for (j, &d) in phi.iter().enumerate().take(deg) {
                rem[i - deg + j] -= c * d;
            }
        }
        rem.truncate(deg.max(1));
        rem.resize(deg.max(1), 0);
        Ok(CycInt { modulus: m, coeffs: rem })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Floating-point shadow `sum_j coeffs[j] e^(2 pi i j / m)`.
    pub fn approx(&self) -> (f64, f64) {
        let mut re = 0f64;
        let mut im = 0f64;
        for (j, &c) in self.coeffs.iter().enumerate() {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / self.modulus as f64;
            re += c as f64 * theta.cos();
            im += c as f64 * theta.sin();
        }
        (re, im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(5), vec![1, 1, 1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn degree_is_euler_phi() {
        let phi = |m: u32| (1..=m).filter(|k| num::integer::gcd(*k, m) == 1).count();
        for m in 1..=36 {
            assert_eq!(cyclotomic_polynomial(m).len() - 1, phi(m), "m = {m}");
        }
    }

    #[test]
    fn zero_detection_prime_modulus() {
        // 1 + z + z^2 + z^3 + z^4 = 0 at a primitive 5th root
        let x = CycInt::from_exponent_counts(5, &[1, 1, 1, 1, 1]).unwrap();
        assert!(x.is_zero());
        let y = CycInt::from_exponent_counts(5, &[2, 1, 1, 1, 1]).unwrap();
        assert!(!y.is_zero());
        let (re, im) = y.approx();
        assert!((re - 1.0).abs() < 1e-9 && im.abs() < 1e-9);
    }

    #[test]
    fn zero_detection_composite_modulus() {
        // 1 + z^2 + z^4 = 0 at a primitive 6th root, although the counts
        // are not all equal: the counting shortcut is prime-only.
        let x = CycInt::from_exponent_counts(6, &[1, 0, 1, 0, 1, 0]).unwrap();
        assert!(x.is_zero());
        // 1 + z^3 = 0 as well (z^3 = -1)
        let y = CycInt::from_exponent_counts(6, &[1, 0, 0, 1, 0, 0]).unwrap();
        assert!(y.is_zero());
        let z = CycInt::from_exponent_counts(6, &[1, 1, 0, 0, 0, 0]).unwrap();
        assert!(!z.is_zero());
    }
}
