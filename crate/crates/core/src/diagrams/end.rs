use std::collections::HashMap;

use super::diagram::Diagram;
use super::limits::{from_families, set_limit};
use crate::delta::MonotoneMap;
use crate::error::{Error, Result};
use crate::sset::{exponential_with_labels, product, product_map, standard_map, standard_simplex, MapSystem, SSetMap, TruncSSet};

/// An end `hom^C(K, X)` together with its simplices: `simplices[m][i]`
/// lists, per object of `C`, the components `K_α × Δ[m] -> X_α` of the
/// `i`-th `m`-simplex.
#[derive(Clone, Debug)]
pub struct End {
    pub object: TruncSSet,
    pub simplices: Vec<Vec<Vec<SSetMap>>>,
}

impl End {
    pub fn index_of(&self, m: usize, components: &[SSetMap]) -> Option<usize> {
        self.simplices[m].iter().position(|s| s.as_slice() == components)
    }
}

fn check_same_shape(k: &Diagram, x: &Diagram) -> Result<()> {
    let (a, b) = (k.shape(), x.shape());
    if a.num_objects() != b.num_objects() || a.num_morphisms() != b.num_morphisms() || a.generators() != b.generators() {
        return Err(Error::Category("end needs two diagrams on the same shape".into()));
    }
    if k.cap() != x.cap() {
        return Err(Error::CapMismatch(k.cap(), x.cap()));
    }
    Ok(())
}

/// Operators `θ ↦ id × θ_*` on `K_α × Δ[·]`, for cofaces and codegeneracies.
fn induced_operators(k: &Diagram, simplices: &[TruncSSet]) -> HashMap<MonotoneMap, Vec<SSetMap>> {
    let cap = k.cap();
    let n = k.shape().num_objects();
    let mut out = HashMap::new();
    for m in 0..=cap {
        let mut ops = Vec::new();
        if m >= 1 {
            ops.extend((0..=m).map(|i| MonotoneMap::coface(m, i)));
        }
        if m < cap {
            ops.extend((0..=m).map(|i| MonotoneMap::codegeneracy(m, i)));
        }
        for th in ops {
            let sm = standard_map(&th, cap);
            let per: Vec<SSetMap> = (0..n)
                .map(|o| {
                    let ko = k.value(o);
                    let id = SSetMap::identity(ko);
                    product_map(&[ko, &simplices[th.dom()]], &[ko, &simplices[th.cod()]], &[&id, &sm])
                })
                .collect();
            out.insert(th, per);
        }
    }
    out
}

/// All natural transformations `K -> X`, components in object order.
pub fn natural_maps(k: &Diagram, x: &Diagram, limit: usize) -> Result<Vec<Vec<SSetMap>>> {
    check_same_shape(k, x)?;
    let c = k.shape();
    let n = c.num_objects();
    let mut sys = MapSystem::new((0..n).map(|o| k.value(o)).collect(), (0..n).map(|o| x.value(o)).collect())?;
    for &g in c.generators() {
        sys.link(c.src(g), c.tgt(g), k.generator_map(g), x.generator_map(g));
    }
    sys.solve(limit)
}

/// The end by constraint propagation over natural maps `K × Δ[m] -> X`.
pub fn end_hom(k: &Diagram, x: &Diagram, limit: usize) -> Result<End> {
    check_same_shape(k, x)?;
    let cap = k.cap();
    let c = k.shape();
    let n = c.num_objects();
    let simplices: Vec<TruncSSet> = (0..=cap).map(|m| standard_simplex(m, cap)).collect();
    let mut per_dim = Vec::with_capacity(cap + 1);
    for sm in &simplices {
        let sources: Vec<TruncSSet> = (0..n).map(|o| product(&[k.value(o), sm])).collect::<Result<_>>()?;
        let id = SSetMap::identity(sm);
        let kmaps: Vec<SSetMap> = c
            .generators()
            .iter()
            .map(|&g| product_map(&[k.value(c.src(g)), sm], &[k.value(c.tgt(g)), sm], &[k.generator_map(g), &id]))
            .collect();
        let mut sys = MapSystem::new(sources.iter().collect(), (0..n).map(|o| x.value(o)).collect())?;
        for (gi, &g) in c.generators().iter().enumerate() {
            sys.link(c.src(g), c.tgt(g), &kmaps[gi], x.generator_map(g));
        }
        per_dim.push(sys.solve(limit)?);
    }
    let ops = induced_operators(k, &simplices);
    let object = TruncSSet::from_action(cap, per_dim.clone(), |f: &Vec<SSetMap>, th| {
        f.iter().zip(&ops[th]).map(|(fo, op)| fo.after(op)).collect()
    })?;
    Ok(End { object, simplices: per_dim })
}

/// The end as the equalizer of `∏_α Map(K_α, X_α) ⇉ ∏_{σ: α -> α'} Map(K_α, X_α')`,
/// taken over every morphism of the shape. Meant as an independent check
/// on small shapes.
pub fn end_hom_via_products(k: &Diagram, x: &Diagram, limit: usize) -> Result<End> {
    check_same_shape(k, x)?;
    let cap = k.cap();
    let c = k.shape();
    let n = c.num_objects();
    let exps: Vec<(TruncSSet, Vec<Vec<SSetMap>>)> =
        (0..n).map(|o| exponential_with_labels(k.value(o), x.value(o), limit)).collect::<Result<_>>()?;
    let simplices: Vec<TruncSSet> = (0..=cap).map(|m| standard_simplex(m, cap)).collect();
    let non_identity: Vec<usize> = (0..c.num_morphisms()).filter(|&f| !c.is_identity(f)).collect();
    let kmor: Vec<SSetMap> = non_identity.iter().map(|&f| k.map_of(f)).collect();
    let xmor: Vec<SSetMap> = non_identity.iter().map(|&f| x.map_of(f)).collect();
    let mut families = Vec::with_capacity(cap + 1);
    for (m, sm) in simplices.iter().enumerate() {
        let id = SSetMap::identity(sm);
        // one target set per morphism, holding both composites
        let mut sizes: Vec<usize> = (0..n).map(|o| exps[o].1[m].len()).collect();
        let mut tables: Vec<(usize, usize, Vec<u32>)> = Vec::new();
        for (i, &f) in non_identity.iter().enumerate() {
            let (a, b) = (c.src(f), c.tgt(f));
            let pre = product_map(&[k.value(a), sm], &[k.value(b), sm], &[&kmor[i], &id]);
            let mut codes: HashMap<SSetMap, u32> = HashMap::new();
            let mut code = |h: SSetMap| {
                let next = codes.len() as u32;
                *codes.entry(h).or_insert(next)
            };
            let post: Vec<u32> = exps[a].1[m].iter().map(|fa| code(xmor[i].after(fa))).collect();
            let precomp: Vec<u32> = exps[b].1[m].iter().map(|fb| code(fb.after(&pre))).collect();
            let node = sizes.len();
            sizes.push(codes.len());
            tables.push((a, node, post));
            tables.push((b, node, precomp));
        }
        let edges: Vec<(usize, usize, &[u32])> = tables.iter().map(|(a, b, t)| (*a, *b, t.as_slice())).collect();
        let fams: Vec<Vec<u32>> = set_limit(&sizes, &edges).into_iter().map(|mut f| {
            f.truncate(n);
            f
        })
        .collect();
        families.push(fams);
    }
    let values: Vec<&TruncSSet> = exps.iter().map(|e| &e.0).collect();
    let lim = from_families(cap, &values, families);
    let simplices_out = (0..=cap)
        .map(|m| {
            (0..lim.object.count(m))
                .map(|s| (0..n).map(|o| exps[o].1[m][lim.projections[o].apply(m, s)].clone()).collect())
                .collect()
        })
        .collect();
    Ok(End { object: lim.object, simplices: simplices_out })
}

/// Matches two computations of the same end simplex by simplex and checks
/// the matching is an isomorphism.
pub fn ends_agree(a: &End, b: &End) -> Result<SSetMap> {
    let cap = a.object.cap();
    let mut maps = Vec::with_capacity(cap + 1);
    for m in 0..=cap {
        let idx: HashMap<&Vec<SSetMap>, usize> = b.simplices[m].iter().enumerate().map(|(i, s)| (s, i)).collect();
        let t = a.simplices[m]
            .iter()
            .map(|s| idx.get(s).map(|&i| i as u32).ok_or_else(|| Error::NotSimplicial(format!("simplex missing in dimension {m}"))))
            .collect::<Result<Vec<u32>>>()?;
        maps.push(t);
    }
    let f = SSetMap::new(&a.object, &b.object, maps)?;
    if !f.is_isomorphism(&b.object) {
        return Err(Error::NotSimplicial("ends differ in size".into()));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::diagrams::fincat::{FinCat, Generators};
    use crate::diagrams::shapes::delta_trunc;
    use crate::sset::{exponential, indiscrete};

    fn one_object() -> Arc<FinCat> {
        Arc::new(FinCat::from_table(vec!["*".into()], vec![(0, 0)], vec![0], HashMap::new(), Generators::AllNonIdentity).unwrap())
    }

    fn cosimplicial_standard(trunc: usize, cap: usize) -> Diagram {
        let shape = Arc::new(delta_trunc(trunc));
        let values = (0..=trunc).map(|k| Arc::new(standard_simplex(k, cap))).collect();
        let s = shape.clone();
        Diagram::new(shape, values, |g| standard_map(s.label(g).unwrap().component(0), cap), cap).unwrap()
    }

    #[test]
    fn one_object_end_is_exponential() {
        let k = Arc::new(standard_simplex(1, 2));
        let x = Arc::new(indiscrete(2, 2));
        let kd = Diagram::constant(one_object(), k.clone());
        let xd = Diagram::constant(one_object(), x.clone());
        let e = end_hom(&kd, &xd, 10_000).unwrap();
        assert_eq!(e.object.counts(), exponential(&k, &x, 10_000).unwrap().counts());
        let o = end_hom_via_products(&kd, &xd, 10_000).unwrap();
        ends_agree(&e, &o).unwrap();
    }

    #[test]
    fn end_into_point_is_point() {
        let k = cosimplicial_standard(1, 1);
        let x = Diagram::constant(k.shape_arc(), Arc::new(TruncSSet::point(1)));
        let e = end_hom(&k, &x, 100).unwrap();
        assert_eq!(e.object, TruncSSet::point(1));
    }

    #[test]
    fn tot_of_standard_simplex() {
        // natural self-maps of the truncated cosimplicial standard simplex
        let small = cosimplicial_standard(1, 1);
        let e = end_hom(&small, &small, 10_000).unwrap();
        let o = end_hom_via_products(&small, &small, 10_000).unwrap();
        ends_agree(&e, &o).unwrap();
        let d = cosimplicial_standard(2, 2);
        let e = end_hom(&d, &d, 10_000).unwrap();
        assert!(e.object.count(0) >= 1);
        // the identity, as projections Δ[k] × Δ[0] -> Δ[k]
        let pt = standard_simplex(0, 2);
        let ids: Vec<SSetMap> = (0..3)
            .map(|k| crate::sset::product_with_projections(&[&standard_simplex(k, 2), &pt]).unwrap().1.swap_remove(0))
            .collect();
        assert!(e.index_of(0, &ids).is_some());
    }
}
