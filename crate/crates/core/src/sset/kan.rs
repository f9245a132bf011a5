//! Horn filling checked in dimensions `1..=cap`.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use super::{SSetMap, TruncSSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HornFailure {
    pub dim: usize,
    pub missing_face: usize,
    /// Faces `d_i` for `i != missing_face`, in order.
    pub horn: Vec<usize>,
    pub base: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KanVerdict {
    pub holds: bool,
    pub cap: usize,
    pub horns_checked: usize,
    pub failure: Option<HornFailure>,
}

/// Whether `p: e -> b` has the right lifting property against
/// `Λ^m_k -> Δ[m]` for all `m <= check_dim` (clamped to the cap).
pub fn is_kan_fibration_capped(e: &TruncSSet, b: &TruncSSet, p: &SSetMap, check_dim: usize) -> KanVerdict {
    let cap = check_dim.min(e.cap());
    let mut horns_checked = 0;
    for m in 1..=cap {
        // faces_by[j][v] = (m-1)-simplices y with d_j y = v
        let by_face: Vec<HashMap<usize, Vec<usize>>> = if m >= 2 {
            (0..m)
                .map(|j| {
                    let mut idx: HashMap<usize, Vec<usize>> = HashMap::new();
                    for y in 0..e.count(m - 1) {
                        idx.entry(e.face(m - 1, j, y)).or_default().push(y);
                    }
                    idx
                })
                .collect()
        } else {
            Vec::new()
        };
        for k in 0..=m {
            let horn_key = |x: &dyn Fn(usize) -> usize| -> Vec<usize> { (0..=m).filter(|&i| i != k).map(x).collect() };
            let mut fillers: HashMap<Vec<usize>, HashSet<usize>> = HashMap::new();
            for x in 0..e.count(m) {
                fillers.entry(horn_key(&|i| e.face(m, i, x))).or_default().insert(p.apply(m, x));
            }
            let mut bases: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
            for x in 0..b.count(m) {
                bases.entry(horn_key(&|i| b.face(m, i, x))).or_default().push(x);
            }
            let idx: Vec<usize> = (0..=m).filter(|&i| i != k).collect();
            let mut failure = None;
            let mut on_horn = |horn: &[usize]| -> bool {
                horns_checked += 1;
                let image: Vec<usize> = horn.iter().map(|&y| p.apply(m - 1, y)).collect();
                let Some(bs) = bases.get(&image) else { return true };
                let lifts = fillers.get(horn);
                for &bx in bs {
                    if !lifts.is_some_and(|l| l.contains(&bx)) {
                        failure = Some(HornFailure { dim: m, missing_face: k, horn: horn.to_vec(), base: bx });
                        return false;
                    }
                }
                true
            };
            enumerate_horns(e, m, &idx, &by_face, &mut Vec::new(), &mut on_horn);
            if let Some(f) = failure {
                return KanVerdict { holds: false, cap, horns_checked, failure: Some(f) };
            }
        }
    }
    KanVerdict { holds: true, cap, horns_checked, failure: None }
}

pub fn is_kan_complex_capped(x: &TruncSSet, check_dim: usize) -> KanVerdict {
    let pt = TruncSSet::point(x.cap());
    is_kan_fibration_capped(x, &pt, &SSetMap::to_point(x), check_dim)
}

/// Calls `visit` on each compatible tuple `(y_i)_{i in idx}`; stops when it returns false.
fn enumerate_horns(
    e: &TruncSSet,
    m: usize,
    idx: &[usize],
    by_face: &[HashMap<usize, Vec<usize>>],
    chosen: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    let pos = chosen.len();
    if pos == idx.len() {
        return visit(chosen);
    }
    let i = idx[pos];
    // compatibility with earlier j < i: d_j y_i = d_{i-1} y_j
    let candidates: Vec<usize> = if pos == 0 {
        (0..e.count(m - 1)).collect()
    } else {
        let j0 = idx[0];
        let want = e.face(m - 1, i - 1, chosen[0]);
        by_face[j0].get(&want).cloned().unwrap_or_default()
    };
    'outer: for y in candidates {
        for (q, &j) in idx[..pos].iter().enumerate() {
            if e.face(m - 1, j, y) != e.face(m - 1, i - 1, chosen[q]) {
                continue 'outer;
            }
        }
        chosen.push(y);
        let go_on = enumerate_horns(e, m, idx, by_face, chosen, visit);
        chosen.pop();
        if !go_on {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::{indiscrete, standard_boundary, standard_simplex, zero_skeleton};

    #[test]
    fn kan_complexes() {
        assert!(is_kan_complex_capped(&indiscrete(2, 3), 3).holds);
        assert!(is_kan_complex_capped(&TruncSSet::discrete(3, 3), 3).holds);
        assert!(is_kan_complex_capped(&zero_skeleton(&standard_simplex(2, 2)), 2).holds);
    }

    #[test]
    fn non_kan() {
        let v = is_kan_complex_capped(&standard_simplex(1, 2), 2);
        assert!(!v.holds);
        let f = v.failure.unwrap();
        assert_eq!(f.dim, 2);
        assert!(is_kan_complex_capped(&standard_simplex(1, 2), 1).holds);
        assert!(!is_kan_complex_capped(&standard_boundary(2, 2), 2).holds);
        // the two vertices of the 0-skeleton of Δ[1] admit no edge filler
        let s = standard_simplex(1, 2);
        let (z, incl) = s.subcomplex(&s.skeleton_flags(0)).unwrap();
        assert!(!is_kan_fibration_capped(&z, &s, &incl, 1).holds);
    }

    #[test]
    fn identity_is_fibration() {
        let s = standard_simplex(2, 2);
        assert!(is_kan_fibration_capped(&s, &s, &SSetMap::identity(&s), 0).holds);
        assert!(is_kan_fibration_capped(&s, &s, &SSetMap::identity(&s), 2).holds);
    }
}
