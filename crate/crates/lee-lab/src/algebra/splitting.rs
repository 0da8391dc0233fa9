//! Splitting homomorphisms: group homomorphisms `Z^n -> G` whose restriction
//! to a tile is a bijection onto `G`. Such a homomorphism is exactly a
//! lattice tiling by the tile, so an exhaustive search refusal is a
//! nonexistence certificate for lattice (linear) codes.

use serde::{Deserialize, Serialize};

use super::group::{abelian_groups_of_order, AbelianGroup};
use crate::error::{Error, Result};
use crate::geometry::{lee_sphere, Tile};
use crate::search::Verdict;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SplittingHom {
    pub group: AbelianGroup,
    /// Images of the standard basis vectors, as flat group elements.
    pub weights: Vec<u64>,
}

impl SplittingHom {
    /// Image of a lattice point.
    pub fn apply(&self, p: &[i64]) -> u64 {
        let mut acc = 0u64;
        for (&c, &w) in p.iter().zip(&self.weights) {
            if c != 0 {
                acc = self.group.add(acc, self.group.scalar(w, c));
            }
        }
        acc
    }

    /// Independent re-verification: the tile's images are pairwise distinct
    /// and exhaust the group.
    pub fn verify(&self, tile: &Tile) -> bool {
        if self.weights.len() != tile.n || self.group.order() != tile.size() as u64 {
            return false;
        }
        let mut seen = vec![false; self.group.order() as usize];
        for p in &tile.points {
            let img = self.apply(p) as usize;
            if seen[img] {
                return false;
            }
            seen[img] = true;
        }
        seen.iter().all(|&s| s)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HomSearch {
    pub hom: Option<SplittingHom>,
    pub nodes: u64,
    pub exhausted: bool,
    pub symmetry: String,
}

struct WeightSearch<'a> {
    group: &'a AbelianGroup,
    /// tile points grouped by highest-index nonzero axis
    levels: Vec<Vec<&'a Vec<i64>>>,
    /// same-class-as-previous flag per axis (ordering constraint)
    chain_prev: Vec<bool>,
    /// sign-canonical constraint per axis
    sign_canonical: Vec<bool>,
    /// fix the first weight to the canonical generator
    fix_first: bool,
    weights: Vec<u64>,
    used: Vec<bool>,
    trail: Vec<u64>,
    nodes: u64,
    limit: u64,
    found: Option<Vec<u64>>,
}

impl<'a> WeightSearch<'a> {
    /// Returns false when the node limit was hit.
    fn run(&mut self, level: usize) -> bool {
        let n = self.levels.len();
        if level == n {
            self.found = Some(self.weights.clone());
            return true;
        }
        let order = self.group.order();
        let lo = if level == 0 && self.fix_first { 1 } else { 0 };
        let hi = if level == 0 && self.fix_first { 2 } else { order };
        for w in lo..hi {
            if self.chain_prev[level] && w < self.weights[level - 1] {
                continue;
            }
            if self.sign_canonical[level] && w > self.group.neg(w) {
                continue;
            }
            if self.nodes >= self.limit {
                return false;
            }
            self.nodes += 1;
            // incremental injectivity over the new points
            let mark = self.trail.len();
            self.weights[level] = w;
            let mut ok = true;
            for p in &self.levels[level] {
                let mut img = 0u64;
                for (i, &c) in p.iter().enumerate().take(level + 1) {
                    if c != 0 {
                        img = self.group.add(img, self.group.scalar(self.weights[i], c));
                    }
                }
                if self.used[img as usize] {
                    ok = false;
                    break;
                }
                self.used[img as usize] = true;
                self.trail.push(img);
            }
            if ok {
                if self.run(level + 1) {
                    if self.found.is_some() {
                        return true;
                    }
                } else {
                    return false;
                }
            }
            while self.trail.len() > mark {
                self.used[self.trail.pop().unwrap() as usize] = false;
            }
        }
        true
    }
}

/// Backtracking search for a splitting homomorphism, canonicalized modulo
/// the tile's axis symmetries (interchangeable axes sorted, sign-symmetric
/// axes with sign-canonical weights) and, for prime cyclic targets of tiles
/// containing `0` and every `e_i` on a single axis class, the group's
/// scaling automorphisms (first weight fixed to 1). Each reduction maps any
/// splitting to an enumerated representative, so exhaustion is a
/// nonexistence verdict.
pub fn find_splitting_hom(
    tile: &Tile,
    group: &AbelianGroup,
    node_limit: Option<u64>,
) -> Result<HomSearch> {
    if group.order() != tile.size() as u64 {
        return Err(Error::GroupOrderMismatch {
            group: group.order(),
            tile: tile.size() as u64,
        });
    }
    let n = tile.n;
    let mut levels: Vec<Vec<&Vec<i64>>> = vec![Vec::new(); n];
    let mut has_zero_point = false;
    for p in &tile.points {
        match (0..n).rev().find(|&i| p[i] != 0) {
            Some(top) => levels[top].push(p),
            None => has_zero_point = true,
        }
    }
    // the all-zero point maps to 0 regardless of weights
    let mut used = vec![false; group.order() as usize];
    if has_zero_point {
        used[0] = true;
    }

    let classes = tile.axis_classes();
    let mut chain_prev = vec![false; n];
    for class in &classes {
        for w in class.windows(2) {
            if w[1] == w[0] + 1 {
                chain_prev[w[1]] = true;
            }
        }
    }
    let sign_canonical: Vec<bool> = (0..n).map(|i| tile.sign_symmetric_axis(i)).collect();

    let canon = tile.translated_to_origin();
    let has_origin_and_basis = canon.contains(&vec![0; n])
        && (0..n).all(|i| {
            let mut e = vec![0i64; n];
            e[i] = 1;
            canon.contains(&e) || {
                e[i] = -1;
                canon.contains(&e)
            }
        });
    let fix_first = group.is_cyclic()
        && super::group::is_prime(group.order())
        && classes.len() == 1
        && has_origin_and_basis;

    let symmetry = format!(
        "weights sorted within {} axis class(es); sign-canonical on {} axes{}",
        classes.len(),
        sign_canonical.iter().filter(|&&s| s).count(),
        if fix_first { "; first weight fixed to 1 (prime scaling)" } else { "" }
    );

    let mut search = WeightSearch {
        group,
        levels,
        chain_prev,
        sign_canonical,
        fix_first,
        weights: vec![0; n],
        used,
        trail: Vec::new(),
        nodes: 0,
        limit: node_limit.unwrap_or(u64::MAX),
        found: None,
    };
    let completed = search.run(0);
    let hom = search.found.clone().map(|weights| SplittingHom {
        group: group.clone(),
        weights,
    });
    if let Some(h) = &hom {
        debug_assert!(h.verify(tile));
    }
    Ok(HomSearch {
        hom,
        nodes: search.nodes,
        exhausted: completed,
        symmetry,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupExhaustion {
    pub group: AbelianGroup,
    pub hom: Option<SplittingHom>,
    pub nodes: u64,
    pub exhausted: bool,
    pub symmetry: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LinearCodeReport {
    pub n: usize,
    pub e: u64,
    pub sphere_size: u64,
    pub verdict: Verdict,
    pub entries: Vec<GroupExhaustion>,
}

/// Decide existence of a lattice (linear) perfect code of radius `e` in
/// dimension `n` by exhausting splitting homomorphisms against every
/// abelian group of order `|S(n,e)|`.
pub fn prove_no_linear(n: usize, e: u64, node_limit: Option<u64>) -> Result<LinearCodeReport> {
    let size = crate::geometry::sphere_size(n, e);
    let size: u64 = size
        .try_into()
        .map_err(|_| Error::ResourceLimit(format!("sphere size {size} too large")))?;
    let tile = lee_sphere(n, e);
    let mut entries = Vec::new();
    let mut any_hom = false;
    let mut all_exhausted = true;
    for group in abelian_groups_of_order(size) {
        let res = find_splitting_hom(&tile, &group, node_limit)?;
        any_hom |= res.hom.is_some();
        all_exhausted &= res.exhausted;
        entries.push(GroupExhaustion {
            group,
            hom: res.hom,
            nodes: res.nodes,
            exhausted: res.exhausted,
            symmetry: res.symmetry,
        });
    }
    let verdict = if any_hom {
        Verdict::Exists
    } else if all_exhausted {
        Verdict::Nonexistent
    } else {
        Verdict::Inconclusive
    };
    Ok(LinearCodeReport { n, e, sphere_size: size, verdict, entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::semicross;

    #[test]
    fn sphere_3_1_splits_over_z7() {
        let res = find_splitting_hom(&lee_sphere(3, 1), &AbelianGroup::cyclic(7), None).unwrap();
        let hom = res.hom.expect("the classical radius-1 construction exists");
        assert_eq!(hom.weights, vec![1, 2, 3]);
        assert!(hom.verify(&lee_sphere(3, 1)));
    }

    #[test]
    fn semicross_splits_over_z5() {
        let sc = semicross(4).unwrap();
        let res = find_splitting_hom(&sc, &AbelianGroup::cyclic(5), None).unwrap();
        let hom = res.hom.expect("semi-cross lattice tiling");
        assert_eq!(hom.weights, vec![1, 2, 3, 4]);
    }

    #[test]
    fn sphere_3_2_has_no_splitting() {
        let tile = lee_sphere(3, 2);
        for group in abelian_groups_of_order(25) {
            let res = find_splitting_hom(&tile, &group, None).unwrap();
            assert!(res.hom.is_none(), "group {}", group.name());
            assert!(res.exhausted);
        }
    }

    #[test]
    fn linear_report_directions() {
        let report = prove_no_linear(2, 1, None).unwrap();
        assert_eq!(report.verdict, Verdict::Exists);
        let hom = report.entries[0].hom.as_ref().unwrap();
        assert_eq!(hom.weights, vec![1, 2]);

        let report = prove_no_linear(3, 2, None).unwrap();
        assert_eq!(report.verdict, Verdict::Nonexistent);
        assert_eq!(report.entries.len(), 2);
    }

    #[test]
    fn node_limit_reports_incomplete() {
        let res = find_splitting_hom(&lee_sphere(7, 2), &AbelianGroup::cyclic(113), Some(3)).unwrap();
        assert!(!res.exhausted && res.hom.is_none());
    }
}
