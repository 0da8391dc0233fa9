//! Radius-1 alphabet condition: a linear perfect radius-1 code on `Z_q^n`
//! exists iff `rad(2n+1)` divides `q`. When it does, the code is built from
//! a splitting of the sphere over the elementary abelian group of order
//! `2n+1` and verified.

use serde::{Deserialize, Serialize};

use super::group::{factorize, radical, AbelianGroup};
use super::splitting::SplittingHom;
use crate::error::{Error, Result};
use crate::geometry::lee_sphere;
use crate::torus::{Torus, TorusCode};
use crate::verify::verify_perfect;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Radius1Report {
    pub n: usize,
    pub q: i64,
    pub sphere_order: u64,
    pub radical: u64,
    /// The alphabet condition `rad(2n+1) | q`.
    pub condition: bool,
    pub hom: Option<SplittingHom>,
    /// Splitting verified: sphere images pairwise distinct and exhaustive.
    pub hom_verified: Option<bool>,
    /// Full torus verification, run when `q^n` is materializable.
    pub code: Option<TorusCode>,
    pub perfect_verified: Option<bool>,
}

/// The elementary abelian group of order `2n+1` (exponent = radical).
fn elementary_group(order: u64) -> AbelianGroup {
    let fact = factorize(order);
    let k = fact.iter().map(|&(_, a)| a).max().unwrap_or(1);
    // invariant factor i (ascending) collects primes with multiplicity > k-i-1
    let mut factors = Vec::new();
    for i in (0..k).rev() {
        let d: u64 = fact.iter().filter(|&&(_, a)| a > i).map(|&(p, _)| p).product();
        factors.push(d);
    }
    AbelianGroup::new(factors).expect("elementary chain is a divisibility chain")
}

/// Test `rad(2n+1) | q`; when the condition holds and `q >= 3`, construct
/// the linear code (one weight per `{x,-x}` pair of the group) and verify.
pub fn radius1_alphabet_condition(n: usize, q: i64) -> Result<Radius1Report> {
    if n == 0 || q < 1 {
        return Err(Error::InvalidParameter("need n >= 1 and q >= 1".into()));
    }
    let order = 2 * n as u64 + 1;
    let rad = radical(order);
    let condition = q as u64 % rad == 0;
    let mut report = Radius1Report {
        n,
        q,
        sphere_order: order,
        radical: rad,
        condition,
        hom: None,
        hom_verified: None,
        code: None,
        perfect_verified: None,
    };
    if !condition || q < 3 {
        return Ok(report);
    }

    let group = elementary_group(order);
    // one representative of each {x, -x} pair; the group has odd order so
    // the pairing has no nonzero fixed points
    let mut weights = Vec::with_capacity(n);
    for x in 1..group.order() {
        if x <= group.neg(x) {
            weights.push(x);
        }
    }
    debug_assert_eq!(weights.len(), n);
    let hom = SplittingHom { group: group.clone(), weights: weights.clone() };
    let sphere = lee_sphere(n, 1);
    report.hom_verified = Some(hom.verify(&sphere));

    // The syndrome map x -> sum x_i w_i is well defined on Z_q^n because the
    // group exponent is rad(2n+1), which divides q.
    debug_assert_eq!(q as u64 % group.exponent(), 0);
    if Torus::new(n, q).is_ok() {
        let code = TorusCode::from_predicate(n, q, |x| hom.apply(x) == 0)?;
        let rep = verify_perfect(&code, &sphere, Some(1))?;
        report.perfect_verified = Some(rep.covered_exactly_once && rep.min_distance_ok.unwrap_or(true));
        report.code = Some(code);
    }
    report.hom = Some(hom);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pl_4_1_3_exists() {
        // 2n+1 = 9, rad = 3 divides q = 3
        let rep = radius1_alphabet_condition(4, 3).unwrap();
        assert!(rep.condition);
        assert_eq!(rep.radical, 3);
        assert_eq!(rep.hom.as_ref().unwrap().group.factors, vec![3, 3]);
        assert_eq!(rep.hom_verified, Some(true));
        assert_eq!(rep.perfect_verified, Some(true));
        assert_eq!(rep.code.unwrap().len(), 9);
    }

    #[test]
    fn rad7_does_not_divide_5() {
        let rep = radius1_alphabet_condition(3, 5).unwrap();
        assert!(!rep.condition);
        assert!(rep.code.is_none());
    }

    #[test]
    fn n12_q10() {
        // 2n+1 = 25, rad = 5 divides 10; torus Z_10^12 is too large to
        // materialize, so only the splitting is verified.
        let rep = radius1_alphabet_condition(12, 10).unwrap();
        assert!(rep.condition);
        assert_eq!(rep.hom.as_ref().unwrap().group.factors, vec![5, 5]);
        assert_eq!(rep.hom_verified, Some(true));
        assert!(rep.code.is_none());
    }

    #[test]
    fn classical_large_alphabet() {
        let rep = radius1_alphabet_condition(3, 7).unwrap();
        assert!(rep.condition);
        assert_eq!(rep.perfect_verified, Some(true));
        assert_eq!(rep.code.unwrap().len(), 49);
    }

    #[test]
    fn elementary_group_shapes() {
        assert_eq!(elementary_group(9).factors, vec![3, 3]);
        assert_eq!(elementary_group(45).factors, vec![3, 15]);
        assert_eq!(elementary_group(7).factors, vec![7]);
    }
}
