use std::sync::Arc;

use super::diagram::Diagram;
use super::fincat::{FinCat, Generators, ObjId};
use super::limits::{colimit, Colimit};
use crate::delta::{all_maps, lex_rank, MultiMap};
use crate::error::{Error, Result};
use crate::sset::{standard_map, standard_simplex, SSetMap, TruncSSet};

/// The category of simplices of `k` up to its cap. Objects are pairs
/// `(m, x)` numbered dimension by dimension; a morphism `(m', y) -> (m, x)`
/// is a map `θ: [m'] -> [m]` with `x·θ = y`, labelled by `θ`.
pub fn category_of_simplices(k: &TruncSSet) -> Result<(FinCat, Vec<(usize, usize)>)> {
    let cap = k.cap();
    let objects: Vec<(usize, usize)> = (0..=cap).flat_map(|m| (0..k.count(m)).map(move |x| (m, x))).collect();
    let mut offset = vec![0; cap + 2];
    for m in 0..=cap {
        offset[m + 1] = offset[m] + k.count(m);
    }
    let mut mors = Vec::new();
    for &(m, x) in &objects {
        for mp in 0..=cap {
            for th in all_maps(mp, m) {
                let y = k.act(x, &th);
                mors.push((offset[mp] + y, offset[m] + x, MultiMap::single(th)));
            }
        }
    }
    let names = objects.iter().map(|(m, x)| format!("({m}, {x})")).collect();
    let c = FinCat::from_labels(names, mors, Generators::Elementary)?;
    Ok((c, objects))
}

/// The standard-simplex diagram `(m, x) ↦ Δ[m]` on the category of simplices.
pub fn simplex_diagram(c: Arc<FinCat>, objects: &[(usize, usize)], cap: usize) -> Result<Diagram> {
    let values = objects.iter().map(|&(m, _)| Arc::new(standard_simplex(m, cap))).collect();
    let shape = c.clone();
    Diagram::new(c, values, |g| standard_map(shape.label(g).expect("labelled").component(0), cap), cap)
}

#[derive(Clone, Debug)]
pub struct Reconstruction {
    pub colimit: Colimit,
    /// The comparison `colim Δ[m] -> K`, checked to be an isomorphism.
    pub comparison: SSetMap,
}

/// Rebuilds `k` as the colimit of standard simplices over its category of
/// simplices and checks the canonical comparison map is an isomorphism.
pub fn reconstruct(k: &TruncSSet) -> Result<Reconstruction> {
    let cap = k.cap();
    let (c, objects) = category_of_simplices(k)?;
    let d = simplex_diagram(Arc::new(c), &objects, cap)?;
    let colim = colimit(&d)?;
    let mut tables: Vec<Vec<u32>> = (0..=cap).map(|j| vec![u32::MAX; colim.object.count(j)]).collect();
    for (o, &(m, x)) in objects.iter().enumerate() {
        for (j, table) in tables.iter_mut().enumerate() {
            for u in all_maps(j, m) {
                let slot = colim.injections[o].apply(j, lex_rank(&u));
                let v = k.act(x, &u) as u32;
                if table[slot] != u32::MAX && table[slot] != v {
                    return Err(Error::NotFunctorial("cocone into K is not well defined".into()));
                }
                table[slot] = v;
            }
        }
    }
    let comparison = SSetMap::new(&colim.object, k, tables)?;
    if !comparison.is_isomorphism(k) {
        return Err(Error::NotSimplicial(format!(
            "reconstruction has counts {:?}, expected {:?}",
            colim.object.counts(),
            k.counts()
        )));
    }
    Ok(Reconstruction { colimit: colim, comparison })
}

/// The object `(m, x)` of [`category_of_simplices`].
pub fn simplex_object(k: &TruncSSet, m: usize, x: usize) -> ObjId {
    (0..m).map(|d| k.count(d)).sum::<usize>() + x
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::{indiscrete, product, standard_boundary};

    #[test]
    fn small_categories_of_simplices() {
        let (c, _) = category_of_simplices(&standard_simplex(0, 1)).unwrap();
        assert_eq!(c.num_objects(), 2);
        let (c, _) = category_of_simplices(&standard_boundary(1, 0)).unwrap();
        assert_eq!(c.num_objects(), 2);
        assert_eq!(c.num_morphisms(), 2);
        let k = standard_simplex(1, 1);
        let (c, _) = category_of_simplices(&k).unwrap();
        let top = simplex_object(&k, 1, 1);
        assert_eq!(c.in_morphisms(top).len(), 2 + 3);
    }

    #[test]
    fn reconstruction_recovers_the_input() {
        let s1 = standard_simplex(1, 2);
        for k in [standard_simplex(1, 2), standard_boundary(2, 2), indiscrete(2, 2), product(&[&s1, &s1]).unwrap()] {
            let r = reconstruct(&k).unwrap();
            assert_eq!(r.colimit.object.counts(), k.counts());
        }
    }
}
