//! Finite abelian groups in invariant-factor form, with flat-index element
//! arithmetic and enumeration of all isomorphism classes of a given order.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `Z_{d1} x ... x Z_{dk}` with `d1 | d2 | ... | dk`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroup {
    pub factors: Vec<u64>,
}

impl AbelianGroup {
    pub fn new(factors: Vec<u64>) -> Result<AbelianGroup> {
        if factors.is_empty() || factors.iter().any(|&d| d < 1) {
            return Err(Error::InvalidParameter("invalid invariant factors".into()));
        }
        for w in factors.windows(2) {
            if w[1] % w[0] != 0 {
                return Err(Error::InvalidParameter(format!(
                    "invariant factors must form a divisibility chain: {factors:?}"
                )));
            }
        }
        Ok(AbelianGroup { factors })
    }

    pub fn cyclic(m: u64) -> AbelianGroup {
        AbelianGroup { factors: vec![m] }
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    pub fn exponent(&self) -> u64 {
        *self.factors.last().unwrap()
    }

    pub fn is_cyclic(&self) -> bool {
        self.factors.len() == 1
    }

    pub fn name(&self) -> String {
        self.factors
            .iter()
            .map(|d| format!("Z_{d}"))
            .collect::<Vec<_>>()
            .join(" x ")
    }

    pub fn decode(&self, mut x: u64) -> Vec<u64> {
        self.factors
            .iter()
            .map(|&d| {
                let r = x % d;
                x /= d;
                r
            })
            .collect()
    }

    pub fn encode(&self, coords: &[u64]) -> u64 {
        let mut acc = 0u64;
        let mut stride = 1u64;
        for (&c, &d) in coords.iter().zip(&self.factors) {
            acc += (c % d) * stride;
            stride *= d;
        }
        acc
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let (mut ra, mut rb) = (a, b);
        let mut acc = 0u64;
        let mut stride = 1u64;
        for &d in &self.factors {
            acc += ((ra % d + rb % d) % d) * stride;
            ra /= d;
            rb /= d;
            stride *= d;
        }
        acc
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        let mut ra = a;
        let mut acc = 0u64;
        let mut stride = 1u64;
        for &d in &self.factors {
            let r = ra % d;
            acc += (if r == 0 { 0 } else { d - r }) * stride;
            ra /= d;
            stride *= d;
        }
        acc
    }

    /// `k * a` for a signed integer `k`.
    #[inline]
    pub fn scalar(&self, a: u64, k: i64) -> u64 {
        let mut ra = a;
        let mut acc = 0u64;
        let mut stride = 1u64;
        for &d in &self.factors {
            let r = (ra % d) as i128;
            let v = (r * k as i128).rem_euclid(d as i128) as u64;
            acc += v * stride;
            ra /= d;
            stride *= d;
        }
        acc
    }
}

/// Prime factorization by trial division. Orders here are desk scale.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut a = 0;
            while n % p == 0 {
                n /= p;
                a += 1;
            }
            out.push((p, a));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == vec![(n, 1)]
}

/// Squarefree kernel `rad(n)`.
pub fn radical(n: u64) -> u64 {
    factorize(n).iter().map(|&(p, _)| p).product()
}

fn partitions(n: u32) -> Vec<Vec<u32>> {
    // partitions in weakly decreasing order
    fn rec(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=max.min(n)).rev() {
            cur.push(part);
            rec(n - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Every abelian group of order `n`, one per isomorphism class, in
/// invariant-factor form. Deterministic order.
pub fn abelian_groups_of_order(n: u64) -> Vec<AbelianGroup> {
    if n == 1 {
        return vec![AbelianGroup::cyclic(1)];
    }
    let fact = factorize(n);
    // choose a partition of the exponent for each prime
    let per_prime: Vec<(u64, Vec<Vec<u32>>)> =
        fact.iter().map(|&(p, a)| (p, partitions(a))).collect();
    let mut groups = Vec::new();
    let mut choice = vec![0usize; per_prime.len()];
    loop {
        // combine: invariant factor #i (from the largest down) multiplies
        // p^{lambda_i} over all primes
        let rows = per_prime
            .iter()
            .zip(&choice)
            .map(|((_, parts), &c)| &parts[c])
            .collect::<Vec<_>>();
        let k = rows.iter().map(|r| r.len()).max().unwrap();
        let mut factors = vec![1u64; k];
        for ((p, _), row) in per_prime.iter().zip(rows.iter().map(|r| (*r).clone())) {
            for (i, &a) in row.iter().enumerate() {
                factors[i] *= p.pow(a);
            }
        }
        factors.reverse(); // ascending, d1 | d2 | ...
        groups.push(AbelianGroup::new(factors).expect("constructed chain is valid"));
        // next choice vector
        let mut i = 0;
        loop {
            if i == choice.len() {
                groups.sort_by_key(|g| g.factors.clone());
                return groups;
            }
            choice[i] += 1;
            if choice[i] < per_prime[i].1.len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}
