//! Period detection for torus codes.
//!
//! The period group of a code `C` on `Z_q^n` is `{s : C + s = C}`. Every
//! period lies in `C - c0` for any fixed codeword `c0`, so the candidate set
//! is finite; candidates are screened with cheap probes, and verified
//! periods are closed into a subgroup incrementally so that large lattice
//! codes do not pay a quadratic full scan.

use crate::geometry::Point;
use crate::torus::{CellSet, TorusCode};

#[derive(Debug, Clone)]
pub struct PeriodGroup {
    /// A generating set of the period group (as cells of `Z_q^n`).
    pub generators: Vec<Point>,
    /// Order of the period group as a subgroup of `Z_q^n`. The full period
    /// group of the induced q-periodic code of `Z^n` is the preimage under
    /// reduction, which always contains `q Z^n`.
    pub order: u64,
}

fn subgroup_closure(torus: &crate::torus::Torus, members: &mut CellSet, list: &mut Vec<usize>, gen: usize) {
    let mut frontier: Vec<usize> = list.clone();
    if members.insert(gen) {
        list.push(gen);
        frontier.push(gen);
    }
    while let Some(x) = frontier.pop() {
        let y = torus.add(x, gen);
        if members.insert(y) {
            list.push(y);
            frontier.push(y);
        }
    }
    // adding `gen` to every known member until stable
    let mut i = 0;
    while i < list.len() {
        let y = torus.add(list[i], gen);
        if members.insert(y) {
            list.push(y);
        }
        i += 1;
    }
}

/// All periods of the code, returned as a generating set plus the group
/// order. Exact: every candidate is either verified against all codewords
/// or rejected by a probe that exhibits a mismatch.
pub fn detect_periods(code: &TorusCode) -> PeriodGroup {
    let torus = code.torus();
    let members = code.membership();
    let idx: Vec<usize> = code.indices();
    let c0 = idx[0];

    let mut group = CellSet::empty(torus.cells);
    let mut group_list: Vec<usize> = Vec::new();
    group.insert(0);
    group_list.push(0);
    let mut generators: Vec<Point> = Vec::new();

    // deterministic probe positions spread across the codeword list
    let probes: Vec<usize> = {
        let m = idx.len();
        let count = 8.min(m);
        (0..count).map(|k| idx[k * m / count.max(1)]).collect()
    };

    for &c in &idx {
        let s = torus.sub(c, c0);
        if group.contains(s) {
            continue;
        }
        let probe_ok = probes.iter().all(|&p| members.contains(torus.add(p, s)));
        if !probe_ok {
            continue;
        }
        let full_ok = idx.iter().all(|&p| members.contains(torus.add(p, s)));
        if full_ok {
            generators.push(torus.point(s));
            subgroup_closure(&torus, &mut group, &mut group_list, s);
        }
    }

    PeriodGroup { generators, order: group_list.len() as u64 }
}

/// True iff some translate of the codeword set is a subgroup of `Z_q^n`,
/// i.e. the period group is the whole translated code.
pub fn is_lattice(code: &TorusCode) -> bool {
    detect_periods(code).order == code.len() as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus::cyclic_syndrome_code;
    use crate::torus::TorusCode;

    #[test]
    fn linear_code_is_its_own_period_group() {
        let code = cyclic_syndrome_code(3, 7, &[1, 2, 3]).unwrap();
        let periods = detect_periods(&code);
        assert_eq!(periods.order, 49);
        assert!(is_lattice(&code));
    }

    #[test]
    fn shifted_lattice_is_still_lattice() {
        let code = cyclic_syndrome_code(2, 5, &[1, 2]).unwrap();
        let shifted: Vec<_> = code
            .codewords
            .iter()
            .map(|c| vec![c[0] + 1, c[1] + 3])
            .collect();
        let shifted = TorusCode::new(2, 5, shifted).unwrap();
        assert!(is_lattice(&shifted));
    }

    #[test]
    fn non_lattice_code() {
        let code = TorusCode::new(1, 6, vec![vec![0], vec![1], vec![3]]).unwrap();
        let periods = detect_periods(&code);
        assert_eq!(periods.order, 1);
        assert!(!is_lattice(&code));
    }

    #[test]
    fn period_group_of_periodic_extension() {
        let code = cyclic_syndrome_code(2, 5, &[1, 2]).unwrap().periodic_extension(2).unwrap();
        // on Z_10^2 the code is still a subgroup of order 20
        assert_eq!(detect_periods(&code).order, 20);
        assert!(is_lattice(&code));
    }
}
