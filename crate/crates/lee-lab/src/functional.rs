//! Polynomial-method checks on concrete tilings: the placement-counting
//! functional, blowout tilings, and shift exclusion.
//!
//! For a tiling `{V + l}` of `Z_q^n` and `gcd(a,|V|) = 1`, the count
//! `|(-aV + m) ∩ L|` equals 1 for every `m`; the blowout `{aV + l}` is again
//! a tiling; and `l + a(v-w)` is never a codeword for `v != w` in `V`.
//! These are necessary conditions every verified tiling must pass, and a
//! violation is reported with an explicit witness.

use num::integer::gcd;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{Point, Tile};
use crate::torus::{CellSet, TorusCode};

fn require_coprime(a: i64, tile: &Tile) -> Result<()> {
    let g = gcd(a.unsigned_abs(), tile.size() as u64);
    if g != 1 {
        return Err(Error::Precondition(format!(
            "gcd(a, |V|) = gcd({a}, {}) = {g} != 1",
            tile.size()
        )));
    }
    Ok(())
}

/// `|(-a V + m) ∩ L|` on the torus.
pub fn t_functional(code: &TorusCode, tile: &Tile, m: &[i64], a: i64) -> Result<u64> {
    require_coprime(a, tile)?;
    if m.len() != code.n {
        return Err(Error::DimensionMismatch(m.len(), code.n));
    }
    let torus = code.torus();
    let members = code.membership();
    let base = torus.index(m);
    let mut count = 0u64;
    for v in &tile.points {
        let shift: Point = v.iter().map(|&c| -a * c).collect();
        if members.contains(torus.translate(base, &shift)) {
            count += 1;
        }
    }
    Ok(count)
}

#[derive(Debug, Clone)]
pub struct FunctionalSweep {
    pub all_one: bool,
    pub checked: u64,
    pub exhaustive: bool,
    pub counterexample: Option<(Point, u64)>,
}

/// Check `t_functional == 1` for every `m` when `q^n <= exhaustive_limit`,
/// otherwise for `samples` pseudorandom `m` drawn from a fixed-seed stream.
pub fn t_functional_sweep(
    code: &TorusCode,
    tile: &Tile,
    a: i64,
    exhaustive_limit: usize,
    samples: u64,
) -> Result<FunctionalSweep> {
    require_coprime(a, tile)?;
    let torus = code.torus();
    let members = code.membership();
    let shifts: Vec<Point> = tile
        .points
        .iter()
        .map(|v| v.iter().map(|&c| -a * c).collect())
        .collect();
    let count_at = |base: usize| -> u64 {
        shifts
            .iter()
            .filter(|s| members.contains(torus.translate(base, s)))
            .count() as u64
    };
    if torus.cells <= exhaustive_limit {
        for base in 0..torus.cells {
            let c = count_at(base);
            if c != 1 {
                return Ok(FunctionalSweep {
                    all_one: false,
                    checked: base as u64 + 1,
                    exhaustive: true,
                    counterexample: Some((torus.point(base), c)),
                });
            }
        }
        Ok(FunctionalSweep {
            all_one: true,
            checked: torus.cells as u64,
            exhaustive: true,
            counterexample: None,
        })
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0x1ee_1ab);
        for k in 0..samples {
            let base = rng.gen_range(0..torus.cells);
            let c = count_at(base);
            if c != 1 {
                return Ok(FunctionalSweep {
                    all_one: false,
                    checked: k + 1,
                    exhaustive: false,
                    counterexample: Some((torus.point(base), c)),
                });
            }
        }
        Ok(FunctionalSweep { all_one: true, checked: samples, exhaustive: false, counterexample: None })
    }
}

/// Do the translates of the blowout tile `aV` by the same codewords tile
/// `Z_q^n`? The blowout must embed without collapse; `gcd(a,q) > 1` cases
/// that collapse points are refused rather than reported as falsifications.
pub fn blowout_check(code: &TorusCode, tile: &Tile, a: i64) -> Result<bool> {
    require_coprime(a, tile)?;
    let blown = tile.blowout(a)?;
    let torus = code.torus();
    let blown_cells = crate::verify::embed_tile(&blown, &torus)?;
    if (code.len() as u128) * (blown.size() as u128) != torus.cells as u128 {
        return Ok(false);
    }
    let mut seen = CellSet::empty(torus.cells);
    for c in &code.codewords {
        let base = torus.index(c);
        for &t in &blown_cells {
            if !seen.insert(torus.add(base, t)) {
                return Ok(false);
            }
        }
    }
    Ok(seen.len == torus.cells)
}

#[derive(Debug, Clone)]
pub struct ShiftExclusionReport {
    pub holds: bool,
    /// `(l, v, w)` with `l + a(v-w)` a codeword, when violated.
    pub witness: Option<(Point, Point, Point)>,
}

/// No codeword plus `a(v-w)`, `v != w` in the tile, may be a codeword.
pub fn shift_exclusion_check(code: &TorusCode, tile: &Tile, a: i64) -> Result<ShiftExclusionReport> {
    require_coprime(a, tile)?;
    let torus = code.torus();
    let members = code.membership();
    let mut deltas: Vec<(Point, &Point, &Point)> = Vec::new();
    for v in &tile.points {
        for w in &tile.points {
            if v != w {
                let d: Point = v.iter().zip(w).map(|(&x, &y)| a * (x - y)).collect();
                deltas.push((d, v, w));
            }
        }
    }
    for c in &code.codewords {
        let base = torus.index(c);
        for (d, v, w) in &deltas {
            if members.contains(torus.translate(base, d)) {
                return Ok(ShiftExclusionReport {
                    holds: false,
                    witness: Some((c.clone(), (*v).clone(), (*w).clone())),
                });
            }
        }
    }
    Ok(ShiftExclusionReport { holds: true, witness: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::lee_sphere;
    use crate::torus::cyclic_syndrome_code;
    use crate::torus::TorusCode;

    fn pl317() -> TorusCode {
        cyclic_syndrome_code(3, 7, &[1, 2, 3]).unwrap()
    }

    #[test]
    fn functional_is_one_on_tilings() {
        let code = pl317();
        let tile = lee_sphere(3, 1);
        for a in [1i64, 2, 3, 4] {
            let sweep = t_functional_sweep(&code, &tile, a, 1 << 16, 0).unwrap();
            assert!(sweep.all_one && sweep.exhaustive, "a = {a}");
        }
        assert_eq!(t_functional(&code, &tile, &[4, 2, 6], 2).unwrap(), 1);
    }

    #[test]
    fn functional_detects_corruption() {
        let mut words = pl317().codewords;
        words[3] = vec![words[3][0] + 1, words[3][1], words[3][2]];
        let corrupted = TorusCode::new(3, 7, words).unwrap();
        let sweep = t_functional_sweep(&corrupted, &lee_sphere(3, 1), 1, 1 << 16, 0).unwrap();
        assert!(!sweep.all_one);
        assert!(sweep.counterexample.is_some());
    }

    #[test]
    fn coprimality_is_enforced() {
        let code = pl317();
        let tile = lee_sphere(3, 1);
        assert!(matches!(t_functional(&code, &tile, &[0, 0, 0], 7), Err(Error::Precondition(_))));
        assert!(matches!(blowout_check(&code, &tile, 14), Err(Error::Precondition(_))));
    }

    #[test]
    fn blowout_tilings() {
        let code = pl317();
        let tile = lee_sphere(3, 1);
        assert!(blowout_check(&code, &tile, 1).unwrap());
        assert!(blowout_check(&code, &tile, 2).unwrap());
        assert!(blowout_check(&code, &tile, 3).unwrap());
        // a = 7 collapses the blowout tile mod 7 and also shares |V|;
        // a = 9 is coprime to 7 = |V| but 9V collapses: 9*e_i = 2*e_i stays
        // injective, so it must still tile.
        assert!(blowout_check(&code, &tile, 9).unwrap());
    }

    #[test]
    fn shift_exclusion() {
        let code = pl317();
        let tile = lee_sphere(3, 1);
        for a in [1i64, 2, 4] {
            assert!(shift_exclusion_check(&code, &tile, a).unwrap().holds, "a = {a}");
        }
        // corrupt one codeword: a placement overlap appears
        let mut words = code.codewords.clone();
        words[5] = vec![words[5][0] + 1, words[5][1], words[5][2]];
        let corrupted = TorusCode::new(3, 7, words).unwrap();
        let rep = shift_exclusion_check(&corrupted, &tile, 1).unwrap();
        assert!(!rep.holds && rep.witness.is_some());
    }
}
