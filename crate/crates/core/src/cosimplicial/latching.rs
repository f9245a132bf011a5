use std::sync::Arc;

use serde::Serialize;

use super::{standard_product_map, MultiCosimplicial};
use crate::delta::{all_maps, latching_objects_at, MonotoneMap, MultiMap};
use crate::diagrams::{colimit, Diagram, FinCat, Generators};
use crate::error::{Error, Result};
use crate::sset::{product, product_components, standard_simplex, SSetMap, TruncSSet};

#[derive(Clone, Debug, Serialize)]
pub struct LatchingVerdict {
    pub degrees: Vec<usize>,
    pub latching_counts: Vec<usize>,
    pub injective: bool,
    /// The image is exactly the simplices failing to be surjective in some coordinate.
    pub image_is_boundary: bool,
    pub image_nondegenerate: Vec<usize>,
    pub holds: bool,
}

/// `w` with `b ∘ w = a`, for monomorphisms `a`, `b` into the same target.
fn factor_mono(a: &MultiMap, b: &MultiMap) -> Option<MultiMap> {
    let mut comps = Vec::with_capacity(a.arity());
    for (ca, cb) in a.components().iter().zip(b.components()) {
        let imgs = cb.images();
        let w: Option<Vec<usize>> = (0..=ca.dom()).map(|i| imgs.iter().position(|&y| y == ca.apply(i))).collect();
        comps.push(MonotoneMap::new(&w?, cb.dom()).ok()?);
    }
    Some(MultiMap::new(comps))
}

/// The latching object of `x` at `degrees` and the latching map into the value there.
#[derive(Clone, Debug)]
pub struct LatchingMap {
    pub object: TruncSSet,
    pub map: SSetMap,
    pub injective: bool,
}

fn latching_shape(degrees: &[usize]) -> Result<(Arc<FinCat>, Vec<MultiMap>)> {
    let objs = latching_objects_at(degrees);
    let mut mors = Vec::new();
    for (a, ma) in objs.iter().enumerate() {
        for (b, mb) in objs.iter().enumerate() {
            if let Some(w) = factor_mono(ma, mb) {
                mors.push((a, b, w));
            }
        }
    }
    let names = objs.iter().map(|m| format!("{m:?}")).collect();
    Ok((Arc::new(FinCat::from_labels(names, mors, Generators::Indecomposable)?), objs))
}

pub fn latching_map(x: &MultiCosimplicial, degrees: &[usize]) -> Result<LatchingMap> {
    let cap = x.cap();
    let (shape, objs) = latching_shape(degrees)?;
    let values = objs.iter().map(|u| Arc::new(x.value(&u.dom()).clone())).collect();
    let s = shape.clone();
    let d = Diagram::new(shape, values, |g| x.structure_map(s.label(g).expect("labelled")).expect("within truncation"), cap)?;
    let colim = colimit(&d)?;
    let target = x.value(degrees);
    let mut tables: Vec<Vec<u32>> = (0..=cap).map(|m| vec![u32::MAX; colim.object.count(m)]).collect();
    for (o, u) in objs.iter().enumerate() {
        let leg = x.structure_map(u)?;
        for (m, table) in tables.iter_mut().enumerate() {
            for (z, &y) in leg.table(m).iter().enumerate() {
                let slot = &mut table[colim.injections[o].apply(m, z)];
                if *slot != u32::MAX && *slot != y {
                    return Err(Error::NotFunctorial("latching cocone is not well defined".into()));
                }
                *slot = y;
            }
        }
    }
    let map = SSetMap::new(&colim.object, target, tables)?;
    let injective = map.is_injective();
    Ok(LatchingMap { object: colim.object, map, injective })
}

fn product_of_simplices(degrees: &[usize], cap: usize) -> TruncSSet {
    let f: Vec<TruncSSet> = degrees.iter().map(|&d| standard_simplex(d, cap)).collect();
    product(&f.iter().collect::<Vec<_>>()).expect("same caps")
}

/// The latching object of `Δ^(n)` at `[p⃗]` and its map into
/// `Δ[p₁] × .. × Δ[p_n]`, compared with the boundary of the product.
pub fn latching_is_boundary(degrees: &[usize], cap: usize) -> Result<LatchingVerdict> {
    let (shape, objs) = latching_shape(degrees)?;
    let values = objs.iter().map(|u| Arc::new(product_of_simplices(&u.dom(), cap))).collect();
    let s = shape.clone();
    let d = Diagram::new(shape, values, |g| standard_product_map(s.label(g).expect("labelled"), cap), cap)?;
    let colim = colimit(&d)?;
    let target = product_of_simplices(degrees, cap);
    let mut tables: Vec<Vec<u32>> = (0..=cap).map(|m| vec![u32::MAX; colim.object.count(m)]).collect();
    for (o, u) in objs.iter().enumerate() {
        let into = standard_product_map(u, cap);
        for (m, table) in tables.iter_mut().enumerate() {
            for x in 0..d.value(o).count(m) {
                let slot = &mut table[colim.injections[o].apply(m, x)];
                let y = into.apply(m, x) as u32;
                if *slot != u32::MAX && *slot != y {
                    return Err(Error::NotFunctorial("latching cocone is not well defined".into()));
                }
                *slot = y;
            }
        }
    }
    let map = crate::sset::SSetMap::new(&colim.object, &target, tables)?;
    let injective = map.is_injective();
    let image = map.image_flags(&target);
    let factors: Vec<TruncSSet> = degrees.iter().map(|&p| standard_simplex(p, cap)).collect();
    let refs: Vec<&TruncSSet> = factors.iter().collect();
    let mut image_is_boundary = true;
    let mut image_nondegenerate = vec![0; cap + 1];
    let nondeg: Vec<Vec<bool>> = (0..=cap).map(|m| target.nondegenerate(m)).collect();
    for m in 0..=cap {
        let maps: Vec<Vec<MonotoneMap>> = degrees.iter().map(|&p| all_maps(m, p)).collect();
        for x in 0..target.count(m) {
            let parts = product_components(&refs, m, x);
            let interior = parts.iter().enumerate().all(|(i, &c)| maps[i][c].is_epi());
            if image[m][x] == interior {
                image_is_boundary = false;
            }
            if image[m][x] && nondeg[m][x] {
                image_nondegenerate[m] += 1;
            }
        }
    }
    Ok(LatchingVerdict {
        degrees: degrees.to_vec(),
        latching_counts: colim.object.counts().to_vec(),
        injective,
        image_is_boundary,
        image_nondegenerate,
        holds: injective && image_is_boundary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boundaries() {
        let v = latching_is_boundary(&[1], 2).unwrap();
        assert!(v.holds);
        assert_eq!(v.latching_counts[0], 2);
        let v = latching_is_boundary(&[0, 0], 2).unwrap();
        assert!(v.holds);
        assert_eq!(v.latching_counts, vec![0, 0, 0]);
        let v = latching_is_boundary(&[1, 1], 2).unwrap();
        assert!(v.holds, "{v:?}");
        assert_eq!(v.image_nondegenerate.iter().sum::<usize>(), 8);
        assert!(latching_is_boundary(&[2, 1], 3).unwrap().holds);
        let x = MultiCosimplicial::standard(2, 2, 2).unwrap();
        let l = latching_map(&x, &[1, 1]).unwrap();
        assert!(l.injective);
        assert_eq!(l.object.nondegenerate_counts().iter().sum::<usize>(), 8);
    }
}
