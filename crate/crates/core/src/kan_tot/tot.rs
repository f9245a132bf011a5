use std::collections::HashMap;

use serde::Serialize;

use super::kan::{multi_standard, unit_alpha};
use crate::cosimplicial::{diagonal, MultiCosimplicial};
use crate::diagrams::{end_hom, End};
use crate::error::{Error, Result};
use crate::sset::{product_map, standard_simplex, SSetMap, TruncSSet};

/// The truncated total object `hom(Δ^(n), X)`.
pub fn tot(x: &MultiCosimplicial, limit: usize) -> Result<End> {
    let standard = multi_standard(x.arity(), x.trunc(), x.cap())?;
    end_hom(standard.diagram(), x.diagram(), limit)
}

/// Re-expresses every simplex of `from`, a family of components indexed by
/// the objects of its shape, as a simplex of `to`.
pub(crate) fn map_between_ends(from: &End, to: &End, remap: impl Fn(usize, &[SSetMap]) -> Vec<SSetMap>) -> Result<SSetMap> {
    let cap = from.object.cap();
    let mut tables = Vec::with_capacity(cap + 1);
    for m in 0..=cap {
        let index: HashMap<&Vec<SSetMap>, u32> = to.simplices[m].iter().enumerate().map(|(i, s)| (s, i as u32)).collect();
        let table = from.simplices[m]
            .iter()
            .map(|s| index.get(&remap(m, s)).copied().ok_or_else(|| Error::NotSimplicial(format!("image of a {m}-simplex is not in the target end"))))
            .collect::<Result<Vec<u32>>>()?;
        tables.push(table);
    }
    SSetMap::new(&from.object, &to.object, tables)
}

/// `f × id_{Δ[m]}`.
pub(crate) fn times_simplex(f: &SSetMap, src: &TruncSSet, tgt: &TruncSSet, m: usize) -> SSetMap {
    let s = standard_simplex(m, src.cap());
    product_map(&[src, &s], &[tgt, &s], &[f, &SSetMap::identity(&s)])
}

#[derive(Clone, Debug, Serialize)]
pub struct TotDiagonalVerdict {
    pub arity: usize,
    pub trunc: usize,
    pub cap: usize,
    pub tot_counts: Vec<usize>,
    pub diagonal_counts: Vec<usize>,
    pub isomorphism: bool,
    #[serde(skip)]
    pub map: Option<SSetMap>,
}

/// `Tot X -> Tot diag X`, restricting a family to the diagonal and
/// precomposing with `α × id`.
pub fn tot_iso_diagonal(x: &MultiCosimplicial, limit: usize) -> Result<TotDiagonalVerdict> {
    let (n, trunc, cap) = (x.arity(), x.trunc(), x.cap());
    let full = tot(x, limit)?;
    let dx = diagonal(x)?;
    let diag = tot(&dx, limit)?;
    let standard = multi_standard(n, trunc, cap)?;
    let pre: Vec<Vec<SSetMap>> = (0..=trunc)
        .map(|k| {
            let alpha = unit_alpha(k, n, cap);
            let src = standard_simplex(k, cap);
            (0..=cap).map(|m| times_simplex(&alpha, &src, standard.value(&vec![k; n]), m)).collect()
        })
        .collect();
    let objects: Vec<usize> = (0..=trunc).map(|k| x.object(&vec![k; n]).expect("in range")).collect();
    let map = map_between_ends(&full, &diag, |m, s| (0..=trunc).map(|k| s[objects[k]].after(&pre[k][m])).collect()).ok();
    let isomorphism = map.as_ref().is_some_and(|f| f.is_isomorphism(&diag.object));
    Ok(TotDiagonalVerdict {
        arity: n,
        trunc,
        cap,
        tot_counts: full.object.counts().to_vec(),
        diagonal_counts: diag.object.counts().to_vec(),
        isomorphism,
        map,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cosimplicial::terminal;
    use crate::kan_tot::cosimplicial_standard;
    use crate::cosimplicial::zero_skeleton_degreewise;
    use crate::sset::indiscrete;

    #[test]
    fn small_totals() {
        let t = terminal(2, 2, 2).unwrap();
        assert_eq!(tot(&t, 10).unwrap().object.counts(), &[1, 1, 1]);
        let d = cosimplicial_standard(2, 2).unwrap();
        assert_eq!(tot(&d, 1000).unwrap().object.count(0), 1);
        let x = multi_standard(2, 2, 2).unwrap();
        let e = tot(&x, 100_000).unwrap();
        let id: Vec<SSetMap> = (0..x.shape().num_objects())
            .map(|o| {
                let v = x.diagram().value(o);
                crate::sset::product_with_projections(&[v, &standard_simplex(0, 2)]).unwrap().1[0].clone()
            })
            .collect();
        assert!(e.index_of(0, &id).is_some());
    }

    #[test]
    fn diagonal_totals_agree() {
        let e = indiscrete(2, 2);
        let c = MultiCosimplicial::constant(2, 2, &e).unwrap();
        let v = tot_iso_diagonal(&c, 100_000).unwrap();
        assert!(v.isomorphism);
        assert_eq!(v.tot_counts, e.counts());
        let x = multi_standard(2, 2, 2).unwrap();
        assert!(tot_iso_diagonal(&x, 100_000).unwrap().isomorphism);
        let z = zero_skeleton_degreewise(&x).unwrap();
        let v = tot_iso_diagonal(&z, 100_000).unwrap();
        assert!(v.isomorphism, "{v:?}");
    }
}
