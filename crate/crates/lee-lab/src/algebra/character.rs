//! Character sums of tiles at roots of unity: exact evaluation of the
//! Laurent indicator `Q_V` at points whose coordinates are m-th roots of
//! unity, the common-zero witness scan, and the prime-order finiteness
//! check that certifies periodicity of all tilings by a prime-size tile.

use num::integer::gcd;
use serde::{Deserialize, Serialize};

use super::cyclotomic::CycInt;
use super::group::is_prime;
use super::primetile::generates_zn;
use crate::error::{Error, Result};
use crate::geometry::Tile;

/// Evaluation point `x_j = zeta_m^(alpha_j)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterPoint {
    pub modulus: u32,
    pub exponents: Vec<u64>,
}

impl CharacterPoint {
    pub fn new(modulus: u32, exponents: Vec<u64>) -> Result<CharacterPoint> {
        if modulus == 0 {
            return Err(Error::InvalidParameter("modulus must be >= 1".into()));
        }
        let m = modulus as u64;
        Ok(CharacterPoint { modulus, exponents: exponents.into_iter().map(|a| a % m).collect() })
    }

    /// The a-th power point `x -> x^a`.
    pub fn power(&self, a: i64) -> CharacterPoint {
        let m = self.modulus as i64;
        CharacterPoint {
            modulus: self.modulus,
            exponents: self
                .exponents
                .iter()
                .map(|&e| ((e as i64 * a).rem_euclid(m)) as u64)
                .collect(),
        }
    }
}

/// How often each residue class mod m occurs among `{ -v . alpha : v in V }`.
/// This is the independent counting oracle for the zero test at prime m.
pub fn residue_counts(tile: &Tile, pt: &CharacterPoint) -> Result<Vec<i128>> {
    if pt.exponents.len() != tile.n {
        return Err(Error::DimensionMismatch(pt.exponents.len(), tile.n));
    }
    let m = pt.modulus as i64;
    let mut counts = vec![0i128; pt.modulus as usize];
    for v in &tile.points {
        let mut dot = 0i64;
        for (&c, &a) in v.iter().zip(&pt.exponents) {
            dot = (dot - c * (a as i64)).rem_euclid(m);
        }
        counts[dot as usize] += 1;
    }
    Ok(counts)
}

/// `Q_V` at the point: `sum over a in (-V) of x^a`, exact in `Z[zeta_m]`.
pub fn character_sum(tile: &Tile, pt: &CharacterPoint) -> Result<CycInt> {
    let counts = residue_counts(tile, pt)?;
    CycInt::from_exponent_counts(pt.modulus, &counts)
}

/// Reduced residue system of `1..modulus` coprime to `size`.
fn coprime_residues(size: u64) -> Vec<i64> {
    (1..size).filter(|&a| gcd(a, size) == 1).map(|a| a as i64).collect()
}

/// Is `pt` a common zero of `Q_V(x^a)` over all `a` coprime to `|V|`?
pub fn is_common_zero(tile: &Tile, pt: &CharacterPoint) -> Result<bool> {
    for a in coprime_residues(tile.size() as u64) {
        if !character_sum(tile, &pt.power(a))?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WitnessScan {
    pub witness: Option<CharacterPoint>,
    pub orders_scanned: Vec<u32>,
    pub points_scanned: u64,
}

/// Scan character points of the given orders for a simultaneous zero of
/// `Q_V(x^a)` over every `a` in a reduced residue system mod `|V|`. Returns
/// the lexicographically first witness of the smallest order, or none within
/// the scanned family (which is reported verbatim).
pub fn theorem_d_witness_search(tile: &Tile, orders: &[u32]) -> Result<WitnessScan> {
    if tile.size() < 2 {
        return Err(Error::Precondition("tile must have at least 2 elements".into()));
    }
    let mut points_scanned = 0u64;
    for &m in orders {
        if m == 0 {
            return Err(Error::InvalidParameter("character order must be >= 1".into()));
        }
        let mut exps = vec![0u64; tile.n];
        'points: loop {
            // advance to next exponent vector (skipping the all-zero point)
            let mut axis = 0;
            loop {
                if axis == tile.n {
                    break 'points;
                }
                exps[axis] += 1;
                if exps[axis] < m as u64 {
                    break;
                }
                exps[axis] = 0;
                axis += 1;
            }
            points_scanned += 1;
            let pt = CharacterPoint { modulus: m, exponents: exps.clone() };
            if is_common_zero(tile, &pt)? {
                return Ok(WitnessScan {
                    witness: Some(pt),
                    orders_scanned: orders.to_vec(),
                    points_scanned,
                });
            }
        }
    }
    Ok(WitnessScan { witness: None, orders_scanned: orders.to_vec(), points_scanned })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FourierReport {
    pub prime: u64,
    /// Points of modulus-p exponents that kill `Q_V(x^a)` for all coprime a.
    pub common_zero_count: u64,
    /// True when the nonzero tile points generate `Z^n`, which confines all
    /// common zeros of the system to modulus-p points; the scan is then
    /// complete and finiteness follows.
    pub scan_complete: bool,
    /// `Some(true)` when the finiteness conclusion applies to every tiling.
    pub all_tilings_periodic: Option<bool>,
}

/// Count common zeros among character points of prime modulus `p = |V|`.
///
/// For prime modulus the zero test reduces to equality of the residue
/// counts, and that condition is invariant under the substitution
/// `x -> x^a` for `a` coprime to p, so scanning `a = 1` decides all of them.
pub fn fourier_finiteness_prime(tile: &Tile) -> Result<FourierReport> {
    let p = tile.size() as u64;
    if !is_prime(p) {
        return Err(Error::NotApplicable(format!(
            "tile size {p} is not prime; general torus zero sets are out of scope"
        )));
    }
    let canon = tile.translated_to_origin();
    let nonzero: Vec<Vec<i64>> =
        canon.points.iter().filter(|v| v.iter().any(|&c| c != 0)).cloned().collect();
    let scan_complete = generates_zn(canon.n, &nonzero);

    // incremental lexicographic walk over exponent vectors in Z_p^n,
    // maintaining the dot products of every tile point
    let m = p as i64;
    let npts = canon.points.len();
    let mut dots = vec![0i64; npts];
    let mut exps = vec![0u64; canon.n];
    let mut count = 0u64;
    let per_class = npts as i64 / m; // = 1 for prime p = |V|
    let mut counts = vec![0i64; p as usize];
    'walk: loop {
        let mut axis = 0;
        loop {
            if axis == canon.n {
                break 'walk;
            }
            exps[axis] += 1;
            // stepping exponent alpha_axis by 1 (or wrapping by -(p-1),
            // which is +1 mod p) shifts every dot by -v_axis
            for (d, v) in dots.iter_mut().zip(&canon.points) {
                *d = (*d - v[axis]).rem_euclid(m);
            }
            if exps[axis] < p {
                break;
            }
            exps[axis] = 0;
            axis += 1;
        }
        counts.iter_mut().for_each(|c| *c = 0);
        for &d in &dots {
            counts[d as usize] += 1;
        }
        if counts.iter().all(|&c| c == per_class) {
            count += 1;
        }
    }

    Ok(FourierReport {
        prime: p,
        common_zero_count: count,
        scan_complete,
        all_tilings_periodic: if scan_complete { Some(true) } else { None },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{lee_sphere, semicross, Tile};

    #[test]
    fn trivial_point_gives_tile_size() {
        let tile = lee_sphere(3, 2);
        let pt = CharacterPoint::new(5, vec![0, 0, 0]).unwrap();
        let s = character_sum(&tile, &pt).unwrap();
        assert!(!s.is_zero());
        assert_eq!(s.coeffs[0], 25);
    }

    #[test]
    fn sphere_3_2_zero_at_example_point() {
        let tile = lee_sphere(3, 2);
        let pt = CharacterPoint::new(5, vec![0, 1, 2]).unwrap();
        assert!(character_sum(&tile, &pt).unwrap().is_zero());
        assert!(is_common_zero(&tile, &pt).unwrap());
        // counting oracle agrees: all residue classes equally filled
        let counts = residue_counts(&tile, &pt).unwrap();
        assert!(counts.iter().all(|&c| c == 5));
    }

    #[test]
    fn domino_witness() {
        let tile = Tile::new(2, vec![vec![0, 0], vec![1, 0]]).unwrap();
        let scan = theorem_d_witness_search(&tile, &[2]).unwrap();
        let w = scan.witness.unwrap();
        assert_eq!(w.exponents, vec![1, 0]);
    }

    #[test]
    fn sphere_witness_scan() {
        let tile = lee_sphere(3, 2);
        let scan = theorem_d_witness_search(&tile, &[5]).unwrap();
        let w = scan.witness.unwrap();
        // lexicographic walk increments axis 0 first
        assert!(is_common_zero(&tile, &w).unwrap());
    }

    #[test]
    fn semicross_fourier_count() {
        let sc = semicross(4).unwrap();
        let report = fourier_finiteness_prime(&sc).unwrap();
        assert_eq!(report.prime, 5);
        assert!(report.scan_complete);
        assert_eq!(report.common_zero_count, 24);
        assert_eq!(report.all_tilings_periodic, Some(true));
    }

    #[test]
    fn domino_fourier_scope_limited() {
        let tile = Tile::new(2, vec![vec![0, 0], vec![1, 0]]).unwrap();
        let report = fourier_finiteness_prime(&tile).unwrap();
        assert!(!report.scan_complete);
        assert_eq!(report.common_zero_count, 2);
        assert_eq!(report.all_tilings_periodic, None);
    }

    #[test]
    fn composite_size_not_applicable() {
        let tile = lee_sphere(3, 2); // 25 points
        assert!(matches!(fourier_finiteness_prime(&tile), Err(Error::NotApplicable(_))));
    }
}
