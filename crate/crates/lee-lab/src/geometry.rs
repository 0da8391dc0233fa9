//! Exact lattice geometry: the Lee metric on `Z^n` and `Z_q^n`, Lee spheres
//! and shells, the special tiles (semi-cross, double-sphere, blowout), and
//! orbit bookkeeping for the signed-permutation isometry group `G`.
//!
//! Everything here is integer arithmetic; counts are exact by construction.

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// Lattice coordinate. All geometry works in plain machine integers with
/// overflow checks enabled; desk-scale parameters stay far below the limits.
pub type Coord = i64;

/// A lattice point, one coordinate per axis.
pub type Point = Vec<Coord>;

/// Sum of absolute coordinates (Lee distance from the origin).
pub fn lee_weight(p: &[Coord]) -> u64 {
    p.iter().map(|&c| c.unsigned_abs()).sum()
}

/// Lee distance on `Z^n`.
pub fn lee_distance(u: &[Coord], v: &[Coord]) -> Result<u64> {
    if u.len() != v.len() {
        return Err(Error::DimensionMismatch(u.len(), v.len()));
    }
    Ok(u.iter().zip(v).map(|(&a, &b)| (a - b).unsigned_abs()).sum())
}

/// Lee distance on `Z_q^n`: per coordinate `min(|u_i - v_i|, q - |u_i - v_i|)`.
pub fn lee_distance_mod(u: &[Coord], v: &[Coord], q: i64) -> Result<u64> {
    if u.len() != v.len() {
        return Err(Error::DimensionMismatch(u.len(), v.len()));
    }
    if q < 1 {
        return Err(Error::InvalidParameter(format!("modulus q = {q} must be >= 1")));
    }
    Ok(u.iter()
        .zip(v)
        .map(|(&a, &b)| {
            let d = (a - b).rem_euclid(q) as u64;
            d.min(q as u64 - d)
        })
        .sum())
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// `|S(n,e)|` in closed form: `sum_i 2^i C(n,i) C(e,i)`.
///
/// The grid enumeration (`lee_sphere`) is the independent cross-check; the
/// two are asserted equal in the test suite.
pub fn sphere_size(n: usize, e: u64) -> u128 {
    let mut total = 0u128;
    for i in 0..=(n as u64).min(e) {
        total += (1u128 << i) * binomial(n as u64, i) * binomial(e, i);
    }
    total
}

fn enumerate_ball(n: usize, e: u64, out: &mut Vec<Point>) {
    let mut cur = vec![0i64; n];
    fn rec(axis: usize, budget: i64, cur: &mut Point, out: &mut Vec<Point>) {
        if axis == cur.len() {
            out.push(cur.clone());
            return;
        }
        for v in -budget..=budget {
            cur[axis] = v;
            rec(axis + 1, budget - v.abs(), cur, out);
        }
        cur[axis] = 0;
    }
    rec(0, e as i64, &mut cur, out);
}

/// All points of `Z^n` at Lee distance exactly `e` from the origin.
pub fn shell(n: usize, e: u64) -> Vec<Point> {
    let mut pts = Vec::new();
    enumerate_ball(n, e, &mut pts);
    pts.retain(|p| lee_weight(p) == e);
    pts
}

/// A finite set of lattice points with a distinguished ambient dimension.
///
/// Points are kept sorted lexicographically with no duplicates, so equal
/// tiles compare equal and hash alike.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tile {
    pub n: usize,
    pub points: Vec<Point>,
}

impl Tile {
    pub fn new(n: usize, mut points: Vec<Point>) -> Result<Tile> {
        if n == 0 {
            return Err(Error::InvalidParameter("dimension must be >= 1".into()));
        }
        if points.is_empty() {
            return Err(Error::InvalidParameter("tile must be nonempty".into()));
        }
        for p in &points {
            if p.len() != n {
                return Err(Error::DimensionMismatch(p.len(), n));
            }
        }
        points.sort();
        points.dedup();
        Ok(Tile { n, points })
    }

    pub fn size(&self) -> usize {
        self.points.len()
    }

    pub fn contains(&self, p: &[Coord]) -> bool {
        self.points.binary_search_by(|q| q.as_slice().cmp(p)).is_ok()
    }

    /// Translate so the lexicographically smallest point sits at the origin.
    pub fn canonical(&self) -> Tile {
        let base = self.points[0].clone();
        let pts = self
            .points
            .iter()
            .map(|p| p.iter().zip(&base).map(|(a, b)| a - b).collect())
            .collect();
        Tile { n: self.n, points: pts }
    }

    /// Translate so that the origin is a tile point, preferring an existing
    /// origin. Needed by the prime-tile machinery, which is stated for tiles
    /// containing 0.
    pub fn translated_to_origin(&self) -> Tile {
        if self.contains(&vec![0; self.n]) {
            return self.clone();
        }
        self.canonical()
    }

    /// The blowout `aV = {a v : v in V}`.
    pub fn blowout(&self, a: i64) -> Result<Tile> {
        if a == 0 {
            return Err(Error::InvalidParameter("blowout factor must be nonzero".into()));
        }
        let pts = self.points.iter().map(|p| p.iter().map(|&c| a * c).collect()).collect();
        Tile::new(self.n, pts)
    }

    /// Axes `i`, `j` are interchangeable if swapping them maps the tile onto
    /// itself. The relation's classes drive symmetry reduction in searches.
    pub fn axis_classes(&self) -> Vec<Vec<usize>> {
        let set: BTreeSet<&Point> = self.points.iter().collect();
        let mut class_of = (0..self.n).collect::<Vec<_>>();
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if class_of[j] != j {
                    continue;
                }
                let swapped_ok = self.points.iter().all(|p| {
                    let mut q = p.clone();
                    q.swap(i, j);
                    set.contains(&q)
                });
                if swapped_ok && class_of[i] == class_of[class_of[i]] {
                    class_of[j] = class_of[i];
                }
            }
        }
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for i in 0..self.n {
            if class_of[i] == i {
                classes.push(vec![i]);
            } else {
                let root = class_of[i];
                classes.iter_mut().find(|c| c[0] == root).unwrap().push(i);
            }
        }
        classes
    }

    /// Whether negating coordinate `axis` maps the tile onto itself.
    pub fn sign_symmetric_axis(&self, axis: usize) -> bool {
        let set: BTreeSet<&Point> = self.points.iter().collect();
        self.points.iter().all(|p| {
            let mut q = p.clone();
            q[axis] = -q[axis];
            set.contains(&q)
        })
    }

    /// Whether the tile is symmetric under global negation `x -> -x`.
    pub fn centrally_symmetric(&self) -> bool {
        let set: BTreeSet<&Point> = self.points.iter().collect();
        self.points.iter().all(|p| {
            let q: Point = p.iter().map(|&c| -c).collect();
            set.contains(&q)
        })
    }
}

impl fmt::Display for Tile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "tile(n={}, |V|={})", self.n, self.points.len())
    }
}

/// The Lee sphere `S(n,e)`: all points at Lee distance <= e from the origin.
pub fn lee_sphere(n: usize, e: u64) -> Tile {
    let mut pts = Vec::new();
    enumerate_ball(n, e, &mut pts);
    Tile::new(n, pts).expect("sphere is nonempty")
}

/// The semi-cross `{0, e_1, ..., e_k}` in `Z^k`.
pub fn semicross(k: usize) -> Result<Tile> {
    if k == 0 {
        return Err(Error::InvalidParameter("semi-cross arm count must be >= 1".into()));
    }
    let mut pts = vec![vec![0i64; k]];
    for i in 0..k {
        let mut p = vec![0i64; k];
        p[i] = 1;
        pts.push(p);
    }
    Tile::new(k, pts)
}

/// The double-sphere `DS(n,e) = S(n,e) u (S(n,e) + e_1)`.
pub fn double_sphere(n: usize, e: u64) -> Tile {
    let s = lee_sphere(n, e);
    let mut pts = s.points.clone();
    for p in &s.points {
        let mut q = p.clone();
        q[0] += 1;
        pts.push(q);
    }
    Tile::new(n, pts).expect("double sphere is nonempty")
}

/// G-orbit representative of a point: the multiset of nonzero coordinate
/// magnitudes, stored sorted. Two points lie in the same orbit of the
/// signed-permutation group iff their representatives agree.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct OrbitRep {
    /// Sorted nonzero magnitudes, repeats kept.
    pub magnitudes: Vec<u64>,
}

impl OrbitRep {
    pub fn new(mut magnitudes: Vec<u64>) -> Result<OrbitRep> {
        if magnitudes.iter().any(|&m| m == 0) {
            return Err(Error::InvalidParameter("orbit magnitudes must be positive".into()));
        }
        magnitudes.sort_unstable();
        Ok(OrbitRep { magnitudes })
    }

    pub fn support(&self) -> usize {
        self.magnitudes.len()
    }

    pub fn weight(&self) -> u64 {
        self.magnitudes.iter().sum()
    }

    /// A representative point of the orbit in dimension `n`.
    pub fn point(&self, n: usize) -> Result<Point> {
        if self.support() > n {
            return Err(Error::InvalidParameter(format!(
                "support {} exceeds dimension {n}",
                self.support()
            )));
        }
        let mut p = vec![0i64; n];
        for (i, &m) in self.magnitudes.iter().enumerate() {
            p[i] = m as i64;
        }
        Ok(p)
    }

    /// Exponent notation `(m1^a1, m2^a2, ...)`.
    pub fn notation(&self) -> String {
        if self.magnitudes.is_empty() {
            return "()".to_string();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.magnitudes.len() {
            let m = self.magnitudes[i];
            let mut mult = 0;
            while i < self.magnitudes.len() && self.magnitudes[i] == m {
                mult += 1;
                i += 1;
            }
            parts.push(format!("{m}^{mult}"));
        }
        format!("({})", parts.join(","))
    }
}

pub fn orbit_rep(p: &[Coord]) -> OrbitRep {
    let mut mags: Vec<u64> = p.iter().filter(|&&c| c != 0).map(|&c| c.unsigned_abs()).collect();
    mags.sort_unstable();
    OrbitRep { magnitudes: mags }
}

/// Number of distinct images of a point with this representative under the
/// signed-permutation group in dimension `n`:
/// `2^k * n! / ((n-k)! * prod(mult_j!))` with `k` the support size.
pub fn orbit_size(rep: &OrbitRep, n: usize) -> Result<u128> {
    let k = rep.support();
    if k > n {
        return Err(Error::InvalidParameter(format!("support {k} exceeds dimension {n}")));
    }
    // Falling factorial n! / (n-k)! divided by multiplicities, times 2^k.
    let mut acc: u128 = 1u128 << k;
    let mut i = 0usize;
    let mut axis = n as u128;
    while i < k {
        let m = rep.magnitudes[i];
        let mut mult = 0u128;
        while i < k && rep.magnitudes[i] == m {
            mult += 1;
            i += 1;
        }
        // choose(axis_remaining, mult) arrangement for this magnitude
        let mut num: u128 = 1;
        for j in 0..mult {
            num *= axis - j;
        }
        let mut den: u128 = 1;
        for j in 1..=mult {
            den *= j;
        }
        acc = acc * num / den;
        axis -= mult;
    }
    Ok(acc)
}

/// All orbit representatives with weight exactly `w` and support <= n:
/// partitions of `w` into at most `n` parts.
pub fn orbit_reps_of_weight(n: usize, w: u64) -> Vec<OrbitRep> {
    let mut out = Vec::new();
    let mut parts: Vec<u64> = Vec::new();
    fn rec(remaining: u64, max_part: u64, slots: usize, parts: &mut Vec<u64>, out: &mut Vec<OrbitRep>) {
        if remaining == 0 {
            let mut mags = parts.clone();
            mags.sort_unstable();
            out.push(OrbitRep { magnitudes: mags });
            return;
        }
        if slots == 0 {
            return;
        }
        for part in (1..=max_part.min(remaining)).rev() {
            parts.push(part);
            rec(remaining - part, part, slots - 1, parts, out);
            parts.pop();
        }
    }
    rec(w, w.max(1), n, &mut parts, &mut out);
    if w == 0 {
        return vec![OrbitRep { magnitudes: vec![] }];
    }
    out
}

/// Enumerate every point in the orbit of `rep` within dimension `n`,
/// invoking `f` on each. Used by the exact-convolution cross-checks.
pub fn for_each_orbit_point<F: FnMut(&[Coord])>(rep: &OrbitRep, n: usize, mut f: F) -> Result<()> {
    let k = rep.support();
    if k > n {
        return Err(Error::InvalidParameter(format!("support {k} exceeds dimension {n}")));
    }
    // Distinct magnitude groups with multiplicities.
    let mut groups: Vec<(u64, usize)> = Vec::new();
    for &m in &rep.magnitudes {
        match groups.last_mut() {
            Some((gm, cnt)) if *gm == m => *cnt += 1,
            _ => groups.push((m, 1)),
        }
    }
    let mut point = vec![0i64; n];
    let mut free: Vec<usize> = (0..n).collect();
    // Choose axis subsets per magnitude group, then sign patterns.
    fn place<F: FnMut(&[Coord])>(
        groups: &[(u64, usize)],
        free: &mut Vec<usize>,
        point: &mut Vec<i64>,
        f: &mut F,
    ) {
        let Some(&(mag, count)) = groups.first() else {
            f(point);
            return;
        };
        // all `count`-subsets of `free`, in index order
        let m = free.len();
        let mut idx: Vec<usize> = (0..count).collect();
        loop {
            let chosen: Vec<usize> = idx.iter().map(|&i| free[i]).collect();
            let rest: Vec<usize> = (0..m).filter(|i| !idx.contains(i)).map(|i| free[i]).collect();
            // sign patterns over the chosen axes
            for signs in 0u32..(1u32 << count) {
                for (b, &ax) in chosen.iter().enumerate() {
                    let s = if signs >> b & 1 == 1 { -1 } else { 1 };
                    point[ax] = s * mag as i64;
                }
                let mut rest_v = rest.clone();
                place(&groups[1..], &mut rest_v, point, f);
            }
            for &ax in &chosen {
                point[ax] = 0;
            }
            // next combination
            let mut i = count;
            loop {
                if i == 0 {
                    return;
                }
                i -= 1;
                if idx[i] != i + m - count {
                    idx[i] += 1;
                    for j in (i + 1)..count {
                        idx[j] = idx[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }
    place(&groups, &mut free, &mut point, &mut f);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lee_distance_basics() {
        assert_eq!(lee_distance(&[0, 0], &[0, 0]).unwrap(), 0);
        assert_eq!(lee_distance(&[0, 0, 0], &[1, -2, 0]).unwrap(), 3);
        assert_eq!(lee_distance_mod(&[0, 0], &[6, 1], 7).unwrap(), 2);
        assert!(lee_distance(&[0], &[0, 0]).is_err());
    }

    #[test]
    fn sphere_sizes_match_enumeration() {
        for n in 1..=6 {
            for e in 0..=6 {
                let tile = lee_sphere(n, e);
                assert_eq!(sphere_size(n, e), tile.size() as u128, "n={n} e={e}");
            }
        }
    }

    #[test]
    fn sphere_size_closed_forms() {
        // radius 2: 2n^2 + 2n + 1; radius 3: (2n+1)(2n^2+2n+3)/3
        for n in 1..=12u64 {
            assert_eq!(sphere_size(n as usize, 2), (2 * n * n + 2 * n + 1) as u128);
            assert_eq!(
                3 * sphere_size(n as usize, 3),
                ((2 * n + 1) * (2 * n * n + 2 * n + 3)) as u128
            );
        }
        assert_eq!(sphere_size(2, 2), 13);
        assert_eq!(sphere_size(6, 2), 85);
        assert_eq!(sphere_size(4, 3), 129);
    }

    #[test]
    fn sphere_small_cases() {
        let s = lee_sphere(1, 2);
        assert_eq!(s.points, vec![vec![-2], vec![-1], vec![0], vec![1], vec![2]]);
        assert_eq!(lee_sphere(3, 1).size(), 7);
        assert_eq!(lee_sphere(3, 2).size(), 25);
    }

    #[test]
    fn shells_partition_sphere() {
        for n in 1..=4 {
            for e in 0..=4 {
                let total: usize = (0..=e).map(|j| shell(n, j).len()).sum();
                assert_eq!(total as u128, sphere_size(n, e));
                assert_eq!(
                    shell(n, e).len() as u128,
                    sphere_size(n, e) - if e == 0 { 0 } else { sphere_size(n, e - 1) }
                );
            }
        }
        assert_eq!(shell(2, 1).len(), 4);
        assert_eq!(shell(3, 2).len(), 18);
        assert_eq!(shell(1, 0), vec![vec![0]]);
    }

    #[test]
    fn special_tiles() {
        let sc = semicross(4).unwrap();
        assert_eq!(sc.size(), 5);
        assert!(sc.contains(&[0, 0, 0, 0]) && sc.contains(&[0, 0, 1, 0]));

        // |DS(2,1)| = 8: the two spheres overlap in {0, e_1}.
        let ds = double_sphere(2, 1);
        assert_eq!(ds.size(), 8);
        assert_eq!(double_sphere(1, 0).size(), 2);

        let b = lee_sphere(2, 1).blowout(2).unwrap();
        assert_eq!(b.size(), 5);
        assert!(b.contains(&[2, 0]) && b.contains(&[0, -2]) && b.contains(&[0, 0]));
    }

    #[test]
    fn orbit_reps_and_sizes() {
        assert_eq!(orbit_rep(&[0, 0, 0]).magnitudes, Vec::<u64>::new());
        assert_eq!(orbit_size(&orbit_rep(&[0, 0, 0]), 3).unwrap(), 1);

        let r = orbit_rep(&[1, -1, 0]);
        assert_eq!(r.magnitudes, vec![1, 1]);
        assert_eq!(orbit_size(&r, 3).unwrap(), 12);

        let p = vec![3, 1, 1, 1];
        assert_eq!(orbit_rep(&p).notation(), "(1^3,3^1)");
    }

    #[test]
    fn orbit_sizes_sum_to_sphere_size() {
        for n in 1..=6usize {
            for e in 0..=6u64 {
                let mut total = 0u128;
                for w in 0..=e {
                    for rep in orbit_reps_of_weight(n, w) {
                        if rep.support() <= n {
                            total += orbit_size(&rep, n).unwrap();
                        }
                    }
                }
                assert_eq!(total, sphere_size(n, e), "n={n} e={e}");
            }
        }
    }

    #[test]
    fn orbit_enumeration_matches_size() {
        for rep in orbit_reps_of_weight(4, 3) {
            let mut count = 0u128;
            for_each_orbit_point(&rep, 4, |_| count += 1).unwrap();
            assert_eq!(count, orbit_size(&rep, 4).unwrap(), "{}", rep.notation());
        }
    }

    #[test]
    fn sphere_is_g_invariant() {
        let s = lee_sphere(3, 2);
        // a few sampled signed permutations
        let perms: [[usize; 3]; 3] = [[1, 2, 0], [2, 1, 0], [0, 2, 1]];
        let signs: [[i64; 3]; 3] = [[-1, 1, 1], [1, -1, -1], [-1, -1, -1]];
        for (perm, sign) in perms.iter().zip(&signs) {
            let mapped: Vec<Point> = s
                .points
                .iter()
                .map(|p| (0..3).map(|i| sign[i] * p[perm[i]]).collect())
                .collect();
            let t = Tile::new(3, mapped).unwrap();
            assert_eq!(t, s);
        }
    }

    #[test]
    fn tile_canonicalization() {
        let t = Tile::new(2, vec![vec![5, 5], vec![5, 6], vec![6, 5]]).unwrap();
        let c = t.canonical();
        assert_eq!(c.points, vec![vec![0, 0], vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn axis_symmetries() {
        let s = lee_sphere(3, 2);
        assert_eq!(s.axis_classes(), vec![vec![0, 1, 2]]);
        assert!(s.sign_symmetric_axis(0) && s.centrally_symmetric());

        let sc = semicross(3).unwrap();
        assert_eq!(sc.axis_classes(), vec![vec![0, 1, 2]]);
        assert!(!sc.sign_symmetric_axis(0) && !sc.centrally_symmetric());

        let ds = double_sphere(2, 1);
        assert_eq!(ds.axis_classes(), vec![vec![0], vec![1]]);
        assert!(!ds.sign_symmetric_axis(0) && ds.sign_symmetric_axis(1));
    }
}
