//! Rational homology of the normalized chain complex.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::TruncSSet;

/// A sparse integer row: column index to nonzero coefficient.
pub type SparseRow = BTreeMap<usize, i64>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct BettiProfile {
    /// Reduced rational Betti numbers in dimensions `0..cap`; the top
    /// dimension is omitted because the boundaries landing there are unknown.
    pub betti: Vec<usize>,
    pub components: usize,
    pub nondegenerate: Vec<usize>,
    /// `ranks[m]` is the rank of the boundary out of dimension `m` (`ranks[0] = 0`).
    pub ranks: Vec<usize>,
}

impl BettiProfile {
    /// Connected and acyclic in every reported dimension.
    pub fn is_acyclic(&self) -> bool {
        self.components == 1 && self.betti.iter().all(|&b| b == 0)
    }
}

/// Rows of the normalized boundary out of dimension `m >= 1`, indexed over
/// nondegenerate simplices on both sides.
pub fn boundary_rows(x: &TruncSSet, m: usize) -> Vec<SparseRow> {
    let nd_hi = x.nondegenerate(m);
    let nd_lo = x.nondegenerate(m - 1);
    let mut lo_index = vec![usize::MAX; nd_lo.len()];
    let mut next = 0;
    for (y, &nd) in nd_lo.iter().enumerate() {
        if nd {
            lo_index[y] = next;
            next += 1;
        }
    }
    let mut rows = Vec::new();
    for (s, &nd) in nd_hi.iter().enumerate() {
        if !nd {
            continue;
        }
        let mut row = SparseRow::new();
        for i in 0..=m {
            let f = x.face(m, i, s);
            if lo_index[f] != usize::MAX {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                *row.entry(lo_index[f]).or_insert(0) += sign;
            }
        }
        row.retain(|_, c| *c != 0);
        rows.push(row);
    }
    rows
}

/// Rational Betti numbers. The edge boundary rank comes from path
/// components; higher ranks are taken mod a prime when that already meets
/// the upper bound `dim ker ∂_{m-1}` (a mod-p rank never exceeds the
/// rational one), and computed over Q otherwise.
pub fn betti(x: &TruncSSet) -> BettiProfile {
    let cap = x.cap();
    let nondegenerate = x.nondegenerate_counts();
    let mut ranks = vec![0; cap + 1];
    if cap >= 1 {
        ranks[1] = nondegenerate[0] - super::path_components(x).count;
    }
    for m in 2..=cap {
        let rows = boundary_rows(x, m);
        let bound = rows.len().min(nondegenerate[m - 1] - ranks[m - 1]);
        let r = rank_mod_p(&rows, PRIME, bound);
        ranks[m] = if r == bound { r } else { rank_over_rationals(&rows) };
    }
    let unreduced: Vec<usize> = (0..=cap).map(|m| nondegenerate[m] - ranks[m] - ranks.get(m + 1).unwrap_or(&0)).collect();
    let components = unreduced[0];
    let mut betti: Vec<usize> = unreduced[..cap].to_vec();
    if let Some(b0) = betti.first_mut() {
        *b0 = b0.saturating_sub(1);
    }
    BettiProfile { betti, components, nondegenerate, ranks }
}

/// Exact rank over Q by fraction-free elimination, in `i128` with a
/// `BigInt` restart on overflow.
pub fn rank_over_rationals(rows: &[SparseRow]) -> usize {
    match rank_i128(rows) {
        Some(r) => r,
        None => rank_big(rows),
    }
}

const PRIME: u64 = 2_147_483_647;

/// Rank over `Z/p`, stopping early once `stop_at` is reached.
pub fn rank_mod_p(rows: &[SparseRow], p: u64, stop_at: usize) -> usize {
    let inv = |a: u64| {
        let (mut base, mut e, mut acc) = (a % p, p - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        acc
    };
    let mut pivots: HashMap<usize, Vec<(usize, u64)>> = HashMap::new();
    for row in rows {
        if pivots.len() >= stop_at {
            break;
        }
        let mut r: Vec<(usize, u64)> =
            row.iter().map(|(&c, &v)| (c, v.rem_euclid(p as i64) as u64)).filter(|&(_, v)| v != 0).collect();
        while let Some(&(col, a)) = r.first() {
            let Some(piv) = pivots.get(&col) else {
                let s = inv(a);
                for e in &mut r {
                    e.1 = e.1 * s % p;
                }
                pivots.insert(col, r);
                break;
            };
            // r -= a * piv, both sorted by column
            let mut out = Vec::with_capacity(r.len() + piv.len());
            let (mut i, mut j) = (0, 0);
            while i < r.len() || j < piv.len() {
                let take_r = j == piv.len() || (i < r.len() && r[i].0 < piv[j].0);
                let take_p = i == r.len() || (j < piv.len() && piv[j].0 < r[i].0);
                if take_r {
                    out.push(r[i]);
                    i += 1;
                } else if take_p {
                    out.push((piv[j].0, (p - a * piv[j].1 % p) % p));
                    j += 1;
                } else {
                    let v = (r[i].1 + p - a * piv[j].1 % p) % p;
                    if v != 0 {
                        out.push((r[i].0, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
            r = out;
        }
    }
    pivots.len()
}

fn rank_i128(rows: &[SparseRow]) -> Option<usize> {
    let mut pivots: BTreeMap<usize, BTreeMap<usize, i128>> = BTreeMap::new();
    for row in rows {
        let mut r: BTreeMap<usize, i128> = row.iter().map(|(&c, &v)| (c, v as i128)).collect();
        while let Some((&col, &a)) = r.iter().next() {
            let Some(p) = pivots.get(&col) else { break };
            let b = p[&col];
            let g = a.gcd(&b);
            let (ma, mb) = (b / g, a / g);
            let mut out = BTreeMap::new();
            for (&c, &v) in &r {
                out.insert(c, v.checked_mul(ma)?);
            }
            for (&c, &v) in p {
                let e = out.entry(c).or_insert(0);
                *e = e.checked_sub(v.checked_mul(mb)?)?;
            }
            out.retain(|_, v| *v != 0);
            normalize_i128(&mut out);
            r = out;
        }
        if let Some((&col, _)) = r.iter().next() {
            pivots.insert(col, r);
        }
    }
    Some(pivots.len())
}

fn normalize_i128(r: &mut BTreeMap<usize, i128>) {
    let g = r.values().fold(0i128, |g, v| g.gcd(v));
    if g > 1 {
        for v in r.values_mut() {
            *v /= g;
        }
    }
}

fn rank_big(rows: &[SparseRow]) -> usize {
    let mut pivots: BTreeMap<usize, BTreeMap<usize, BigInt>> = BTreeMap::new();
    for row in rows {
        let mut r: BTreeMap<usize, BigInt> = row.iter().map(|(&c, &v)| (c, BigInt::from(v))).collect();
        while let Some((&col, a)) = r.iter().next() {
            let Some(p) = pivots.get(&col) else { break };
            let b = &p[&col];
            let g = a.gcd(b);
            let (ma, mb) = (b / &g, a / &g);
            let mut out: BTreeMap<usize, BigInt> = r.iter().map(|(&c, v)| (c, v * &ma)).collect();
            for (&c, v) in p {
                let e = out.entry(c).or_insert_with(BigInt::zero);
                *e -= v * &mb;
            }
            out.retain(|_, v| !v.is_zero());
            let g = out.values().fold(BigInt::zero(), |g, v| g.gcd(v));
            if g.abs() > BigInt::from(1) {
                for v in out.values_mut() {
                    *v /= &g;
                }
            }
            r = out;
        }
        if let Some((&col, _)) = r.iter().next() {
            pivots.insert(col, r);
        }
    }
    pivots.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::{indiscrete, TruncSSet, product, standard_boundary, standard_simplex};

    fn row(entries: &[(usize, i64)]) -> SparseRow {
        entries.iter().copied().collect()
    }

    #[test]
    fn small_ranks() {
        assert_eq!(rank_over_rationals(&[]), 0);
        let rows = vec![row(&[(0, 1), (1, -1)]), row(&[(1, 1), (2, -1)]), row(&[(0, 1), (2, -1)])];
        assert_eq!(rank_over_rationals(&rows), 2);
        let rows = vec![row(&[(0, 2), (1, 4)]), row(&[(0, 3), (1, 6)]), row(&[(1, 5)])];
        assert_eq!(rank_over_rationals(&rows), 2);
    }

    #[test]
    fn mod_p_rank_is_a_lower_bound() {
        let rows = vec![row(&[(0, 2), (1, 4)]), row(&[(0, 3), (1, 6)]), row(&[(1, 5)])];
        assert_eq!(rank_mod_p(&rows, 5, usize::MAX), 1);
        assert_eq!(rank_mod_p(&rows, 7, usize::MAX), 2);
        assert_eq!(rank_mod_p(&rows, 7, 1), 1);
    }

    #[test]
    fn big_fallback_agrees() {
        let big = 1i64 << 40;
        let rows = vec![
            row(&[(0, big), (1, big - 1), (2, 3)]),
            row(&[(0, big - 7), (1, big), (2, big + 5)]),
            row(&[(0, 1), (1, big - 3), (2, big)]),
            row(&[(1, big), (2, 1)]),
        ];
        assert_eq!(rank_big(&rows), 3);
        assert_eq!(rank_over_rationals(&rows), 3);
    }

    #[test]
    fn simplices_are_acyclic() {
        for k in 0..=3 {
            let p = betti(&standard_simplex(k, 3));
            assert_eq!(p.betti, vec![0, 0, 0], "Δ[{k}]");
            assert!(p.is_acyclic());
        }
        let e = betti(&indiscrete(3, 3));
        assert_eq!(e.betti, vec![0, 0, 0]);
        let d = betti(&TruncSSet::discrete(2, 1));
        assert_eq!(d.betti, vec![1]);
        assert_eq!(d.components, 2);
    }

    #[test]
    fn circle_and_sphere() {
        let c = betti(&standard_boundary(2, 2));
        assert_eq!(c.betti, vec![0, 1]);
        let s = betti(&standard_boundary(3, 3));
        assert_eq!(s.betti, vec![0, 0, 1]);
        let s1 = standard_boundary(2, 3);
        let torus = betti(&product(&[&s1, &s1]).unwrap());
        assert_eq!(torus.betti, vec![0, 2, 1]);
    }
}
