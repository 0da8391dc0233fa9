//! Verification of perfect / quasi-perfect / diameter-perfect codes on the
//! torus. The exact-cover test and the distance statistics are computed by
//! independent routes: cover by explicit placement walking, distances by
//! multi-source breadth-first search on the grid graph.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{double_sphere, lee_sphere, Point, Tile};
use crate::torus::{Torus, TorusCode};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationReport {
    pub covered_exactly_once: bool,
    /// First doubly-covered or uncovered cell, with its cover multiplicity.
    pub first_violation: Option<(Point, usize)>,
    /// `None` for a single codeword.
    pub min_distance: Option<u64>,
    pub covering_radius: u64,
    /// When a radius `e` was supplied: whether `min_distance >= 2e+1`.
    pub min_distance_ok: Option<bool>,
}

/// Check the tile embeds injectively into `Z_q^n`; returns the reduced cell
/// indices of the tile points.
pub fn embed_tile(tile: &Tile, torus: &Torus) -> Result<Vec<usize>> {
    if tile.n != torus.n {
        return Err(Error::DimensionMismatch(tile.n, torus.n));
    }
    let mut idx: Vec<(usize, usize)> = tile
        .points
        .iter()
        .enumerate()
        .map(|(i, p)| (torus.index(p), i))
        .collect();
    idx.sort_unstable();
    for w in idx.windows(2) {
        if w[0].0 == w[1].0 {
            return Err(Error::TileOverlapModQ(
                tile.points[w[0].1].clone(),
                tile.points[w[1].1].clone(),
                torus.q,
            ));
        }
    }
    Ok(idx.into_iter().map(|(i, _)| i).collect())
}

/// Cell -> covering codeword index, or the first violation found.
///
/// Walks every placement `tile + c`; a cell hit twice is a violation, and if
/// the placements do not exhaust the torus the first uncovered cell is the
/// violation.
pub fn build_coverer(code: &TorusCode, tile: &Tile) -> Result<std::result::Result<Vec<u32>, (Point, usize)>> {
    let torus = code.torus();
    let tile_cells = embed_tile(tile, &torus)?;
    const FREE: u32 = u32::MAX;
    let mut coverer = vec![FREE; torus.cells];
    for (ci, c) in code.codewords.iter().enumerate() {
        let base = torus.index(c);
        for &t in &tile_cells {
            let cell = torus.add(base, t);
            if coverer[cell] != FREE {
                // count multiplicity for the report
                let mult = code
                    .codewords
                    .iter()
                    .filter(|cw| {
                        let b = torus.index(cw);
                        tile_cells.iter().any(|&tc| torus.add(b, tc) == cell)
                    })
                    .count();
                return Ok(Err((torus.point(cell), mult)));
            }
            coverer[cell] = ci as u32;
        }
    }
    if let Some(cell) = coverer.iter().position(|&c| c == FREE) {
        return Ok(Err((torus.point(cell), 0)));
    }
    Ok(Ok(coverer))
}

/// Multi-source BFS statistics on the torus grid graph.
#[derive(Debug, Clone)]
pub struct DistanceStats {
    pub covering_radius: u64,
    /// Minimum pairwise Lee distance between distinct codewords.
    pub min_distance: Option<u64>,
}

/// Single-label multi-source BFS: distance and nearest-source per cell, then
/// `min_distance = min over edges (x,y) with different nearest sources of
/// dist(x) + 1 + dist(y)`. Any pair realizing the code's minimum distance is
/// witnessed by such an edge on a geodesic, so the edge scan is exact.
pub fn distance_stats(code: &TorusCode) -> DistanceStats {
    let torus = code.torus();
    const UNSET: u32 = u32::MAX;
    let mut dist = vec![u16::MAX; torus.cells];
    let mut src = vec![UNSET; torus.cells];
    let mut frontier: Vec<usize> = Vec::with_capacity(code.len());
    for (ci, c) in code.codewords.iter().enumerate() {
        let idx = torus.index(c);
        dist[idx] = 0;
        src[idx] = ci as u32;
        frontier.push(idx);
    }
    let mut level: u16 = 0;
    let mut covering_radius = 0u64;
    let mut next = Vec::new();
    while !frontier.is_empty() {
        level += 1;
        next.clear();
        for &x in &frontier {
            for axis in 0..torus.n {
                let mut step = vec![0i64; torus.n];
                for delta in [1i64, -1] {
                    step[axis] = delta;
                    let y = torus.translate(x, &step);
                    if dist[y] == u16::MAX {
                        dist[y] = level;
                        src[y] = src[x];
                        next.push(y);
                    }
                }
            }
        }
        if !next.is_empty() {
            covering_radius = level as u64;
        }
        std::mem::swap(&mut frontier, &mut next);
    }

    let min_distance = if code.len() < 2 {
        None
    } else {
        let mut best = u64::MAX;
        let mut step = vec![0i64; torus.n];
        for x in 0..torus.cells {
            for axis in 0..torus.n {
                step.iter_mut().for_each(|s| *s = 0);
                step[axis] = 1;
                let y = torus.translate(x, &step);
                if src[x] != src[y] {
                    best = best.min(dist[x] as u64 + 1 + dist[y] as u64);
                }
            }
        }
        Some(best)
    };
    DistanceStats { covering_radius, min_distance }
}

/// Does `{tile + c : c in code}` partition `Z_q^n`?
///
/// The size identity `|C| * |V| = q^n` and the no-double-cover walk are
/// checked independently; distance statistics come from BFS, a third route.
pub fn verify_perfect(code: &TorusCode, tile: &Tile, e: Option<u64>) -> Result<VerificationReport> {
    let torus = code.torus();
    let size_ok = (code.len() as u128) * (tile.size() as u128) == torus.cells as u128;
    let cover = build_coverer(code, tile)?;
    let stats = distance_stats(code);
    let (covered, violation) = match cover {
        Ok(_) => (true, None),
        Err(v) => (false, Some(v)),
    };
    let min_distance_ok = e.map(|e| match stats.min_distance {
        Some(d) => d >= 2 * e + 1,
        None => true,
    });
    Ok(VerificationReport {
        covered_exactly_once: covered && size_ok,
        first_violation: violation,
        min_distance: stats.min_distance,
        covering_radius: stats.covering_radius,
        min_distance_ok,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuasiPerfectReport {
    pub quasi_perfect: bool,
    pub covering_radius: u64,
    pub min_distance: Option<u64>,
}

/// Quasi-perfect: minimum distance `2e+1` or `2e+2` (vacuous for a single
/// codeword) and covering radius at most `e+1`.
pub fn verify_quasi_perfect(code: &TorusCode, e: u64) -> Result<QuasiPerfectReport> {
    if code.q < (2 * e + 3) as i64 {
        return Err(Error::Precondition(format!(
            "need q >= 2e+3 = {} to decide quasi-perfection, got q = {}",
            2 * e + 3,
            code.q
        )));
    }
    let stats = distance_stats(code);
    let dist_ok = match stats.min_distance {
        None => true,
        Some(d) => d == 2 * e + 1 || d == 2 * e + 2,
    };
    Ok(QuasiPerfectReport {
        quasi_perfect: dist_ok && stats.covering_radius <= e + 1,
        covering_radius: stats.covering_radius,
        min_distance: stats.min_distance,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DiameterReport {
    pub diameter_perfect: bool,
    pub anticode_is_double_sphere: bool,
    pub partition_ok: bool,
    pub min_distance: Option<u64>,
}

/// Diameter-`d` perfection against the maximum anticode of diameter `d-1`:
/// the Lee sphere `S(n,(d-1)/2)` for odd `d`, the double-sphere
/// `DS(n,d/2-1)` for even `d`. The code must be a transversal of the
/// anticode tiling (placements centered at codewords) with pairwise
/// distances >= d.
pub fn verify_diameter_perfect(code: &TorusCode, d: u64) -> Result<DiameterReport> {
    if d < 1 {
        return Err(Error::InvalidParameter("diameter must be >= 1".into()));
    }
    let (anticode, is_ds) = if d % 2 == 1 {
        (lee_sphere(code.n, (d - 1) / 2), false)
    } else {
        (double_sphere(code.n, d / 2 - 1), true)
    };
    let torus = code.torus();
    let size_ok = (code.len() as u128) * (anticode.size() as u128) == torus.cells as u128;
    let partition_ok = size_ok && matches!(build_coverer(code, &anticode)?, Ok(_));
    let stats = distance_stats(code);
    let dist_ok = match stats.min_distance {
        None => true,
        Some(md) => md >= d,
    };
    Ok(DiameterReport {
        diameter_perfect: partition_ok && dist_ok,
        anticode_is_double_sphere: is_ds,
        partition_ok,
        min_distance: stats.min_distance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus::cyclic_syndrome_code;

    #[test]
    fn linear_pl317_is_perfect() {
        let code = cyclic_syndrome_code(3, 7, &[1, 2, 3]).unwrap();
        let report = verify_perfect(&code, &lee_sphere(3, 1), Some(1)).unwrap();
        assert!(report.covered_exactly_once);
        assert_eq!(report.min_distance, Some(3));
        assert_eq!(report.covering_radius, 1);
        assert_eq!(report.min_distance_ok, Some(true));
    }

    #[test]
    fn trivial_q1_code_is_perfect() {
        let code = TorusCode::new(1, 1, vec![vec![0]]).unwrap();
        let tile = Tile::new(1, vec![vec![0]]).unwrap();
        let report = verify_perfect(&code, &tile, None).unwrap();
        assert!(report.covered_exactly_once);
        assert_eq!(report.covering_radius, 0);
        assert_eq!(report.min_distance, None);
    }

    #[test]
    fn overlapping_spheres_violate() {
        let code = TorusCode::new(2, 5, vec![vec![0, 0], vec![1, 0]]).unwrap();
        let report = verify_perfect(&code, &lee_sphere(2, 1), Some(1)).unwrap();
        assert!(!report.covered_exactly_once);
        assert!(report.first_violation.is_some());
        assert_eq!(report.min_distance, Some(1));
    }

    #[test]
    fn sphere_must_embed() {
        // S(2,1) does not embed in Z_2^2: e_1 = -e_1 mod 2.
        let code = TorusCode::new(2, 2, vec![vec![0, 0]]).unwrap();
        assert!(matches!(
            verify_perfect(&code, &lee_sphere(2, 1), None),
            Err(Error::TileOverlapModQ(..))
        ));
    }

    #[test]
    fn quasi_perfect_singleton() {
        let code = TorusCode::new(1, 5, vec![vec![0]]).unwrap();
        let report = verify_quasi_perfect(&code, 1).unwrap();
        assert!(report.quasi_perfect);
        assert_eq!(report.covering_radius, 2);
    }

    #[test]
    fn perfect_code_is_quasi_perfect() {
        let code = cyclic_syndrome_code(3, 7, &[1, 2, 3]).unwrap();
        let report = verify_quasi_perfect(&code, 1).unwrap();
        assert!(report.quasi_perfect);
        assert_eq!(report.min_distance, Some(3));
    }

    #[test]
    fn diameter_perfect_examples() {
        // d = 2 in Z_2: the double-sphere {0,1} tiles with C = {0}.
        let code = TorusCode::new(1, 2, vec![vec![0]]).unwrap();
        let report = verify_diameter_perfect(&code, 2).unwrap();
        assert!(report.diameter_perfect && report.anticode_is_double_sphere);

        // a perfect PL(3,1,7) code is diameter-3 perfect
        let code = cyclic_syndrome_code(3, 7, &[1, 2, 3]).unwrap();
        let report = verify_diameter_perfect(&code, 3).unwrap();
        assert!(report.diameter_perfect && !report.anticode_is_double_sphere);
    }

    #[test]
    fn min_distance_matches_brute_force() {
        let code = TorusCode::new(2, 7, vec![vec![0, 0], vec![2, 3], vec![5, 1], vec![3, 6]]).unwrap();
        let stats = distance_stats(&code);
        let mut best = u64::MAX;
        for (i, a) in code.codewords.iter().enumerate() {
            for b in code.codewords.iter().skip(i + 1) {
                best = best.min(crate::geometry::lee_distance_mod(a, b, 7).unwrap());
            }
        }
        assert_eq!(stats.min_distance, Some(best));
    }
}
