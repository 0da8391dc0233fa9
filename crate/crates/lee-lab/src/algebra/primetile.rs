//! Prime-size tiles: the Smith-form generation test and the reduction of
//! tiling existence to a splitting homomorphism onto `Z_p`.

use serde::{Deserialize, Serialize};

use super::group::{is_prime, AbelianGroup};
use super::splitting::{find_splitting_hom, SplittingHom};
use crate::error::Result;
use crate::geometry::Tile;

/// Diagonal of the Smith normal form of an integer matrix (values taken
/// nonnegative; trailing zeros kept).
pub fn smith_diagonal(mat: &[Vec<i64>]) -> Vec<i64> {
    if mat.is_empty() {
        return Vec::new();
    }
    let rows = mat.len();
    let cols = mat[0].len();
    let mut a: Vec<Vec<i128>> =
        mat.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut diag = Vec::new();
    let (mut r0, mut c0) = (0usize, 0usize);
    while r0 < rows && c0 < cols {
        // pivot: entry of smallest nonzero magnitude in the submatrix
        let mut pivot: Option<(usize, usize)> = None;
        for i in r0..rows {
            for j in c0..cols {
                if a[i][j] != 0
                    && pivot.map_or(true, |(pi, pj)| a[i][j].abs() < a[pi][pj].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap(r0, pi);
        for row in a.iter_mut() {
            row.swap(c0, pj);
        }
        loop {
            let mut clean = true;
            for i in (r0 + 1)..rows {
                let q = a[i][c0].div_euclid(a[r0][c0]);
                if q != 0 {
                    for j in c0..cols {
                        a[i][j] -= q * a[r0][j];
                    }
                }
                if a[i][c0] != 0 {
                    // remainder became the smaller pivot
                    a.swap(r0, i);
                    clean = false;
                }
            }
            for j in (c0 + 1)..cols {
                let q = a[r0][j].div_euclid(a[r0][c0]);
                if q != 0 {
                    for i in r0..rows {
                        a[i][j] -= q * a[i][c0];
                    }
                }
                if a[r0][j] != 0 {
                    for row in a.iter_mut() {
                        row.swap(c0, j);
                    }
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        // divisibility fix: pivot must divide the rest of the submatrix
        let p = a[r0][c0];
        if let Some((i, j)) = (r0 + 1..rows)
            .flat_map(|i| (c0 + 1..cols).map(move |j| (i, j)))
            .find(|&(i, j)| a[i][j] % p != 0)
        {
            let _ = j;
            for k in c0..cols {
                let add = a[i][k];
                a[r0][k] += add;
            }
            continue; // redo elimination with the enlarged pivot row
        }
        diag.push(p.unsigned_abs() as i64);
        r0 += 1;
        c0 += 1;
    }
    while diag.len() < rows.min(cols) {
        diag.push(0);
    }
    diag
}

/// Do the given points generate `Z^n` as an abelian group? Decided by the
/// Smith normal form of the matrix whose rows are the points: every
/// invariant factor must be 1.
pub fn generates_zn(n: usize, points: &[Vec<i64>]) -> bool {
    if points.len() < n {
        return false;
    }
    let diag = smith_diagonal(points);
    diag.len() >= n && diag.iter().take(n).all(|&d| d == 1)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum PrimeTileVerdict {
    /// Preconditions fail: reported, never guessed.
    NotApplicable { reason: String },
    /// A lattice tiling exists, witnessed by the homomorphism.
    LatticeExists { hom: SplittingHom, nodes: u64 },
    /// No tiling at all: the splitting search was exhausted and the
    /// prime-size equivalence upgrades lattice nonexistence to full
    /// nonexistence.
    NoTiling { nodes: u64, symmetry: String },
}

/// For a prime-size tile whose differences generate `Z^n`, tiling existence
/// is equivalent to the existence of a splitting homomorphism onto `Z_p`;
/// run that search and emit the equivalence.
pub fn prime_tile_reduction(tile: &Tile, node_limit: Option<u64>) -> Result<PrimeTileVerdict> {
    let p = tile.size() as u64;
    if !is_prime(p) {
        return Ok(PrimeTileVerdict::NotApplicable {
            reason: format!("tile size {p} is not prime"),
        });
    }
    let canon = tile.translated_to_origin();
    let nonzero: Vec<Vec<i64>> =
        canon.points.iter().filter(|v| v.iter().any(|&c| c != 0)).cloned().collect();
    if !generates_zn(canon.n, &nonzero) {
        return Ok(PrimeTileVerdict::NotApplicable {
            reason: "nonzero tile points do not generate Z^n".into(),
        });
    }
    let res = find_splitting_hom(&canon, &AbelianGroup::cyclic(p), node_limit)?;
    match res.hom {
        Some(hom) => Ok(PrimeTileVerdict::LatticeExists { hom, nodes: res.nodes }),
        None if res.exhausted => Ok(PrimeTileVerdict::NoTiling {
            nodes: res.nodes,
            symmetry: res.symmetry,
        }),
        None => Ok(PrimeTileVerdict::NotApplicable {
            reason: "node limit exhausted before the weight search completed".into(),
        }),
    }
}
