use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use serde::Serialize;

use crate::delta::{lex_rank, MonotoneMap};
use crate::diagrams::{category_of_simplices, end_hom, limit, natural_maps, simplex_object, Diagram, Limit};
use crate::error::{Error, Result};
use crate::sset::{
    exponential_with_labels, hom_set, product, product_components, product_index, product_map, standard_map, standard_simplex, SSetMap,
    TruncSSet,
};

/// The standard frame `m ↦ Map(Δ[m], X)`, with the simplices of every level.
#[derive(Clone, Debug)]
pub struct StandardFrame {
    levels: Vec<TruncSSet>,
    /// `labels[m][j]`: maps `Δ[m] × Δ[j] -> X`.
    labels: Vec<Vec<Vec<SSetMap>>>,
    index: Vec<Vec<HashMap<SSetMap, u32>>>,
    simplices: Vec<TruncSSet>,
}

impl StandardFrame {
    pub fn new(x: &TruncSSet, limit: usize) -> Result<Self> {
        let cap = x.cap();
        let simplices: Vec<TruncSSet> = (0..=cap).map(|m| standard_simplex(m, cap)).collect();
        let mut levels = Vec::new();
        let mut labels = Vec::new();
        for s in &simplices {
            let (obj, l) = exponential_with_labels(s, x, limit)?;
            levels.push(obj);
            labels.push(l);
        }
        let index = labels
            .iter()
            .map(|per| per.iter().map(|maps| maps.iter().enumerate().map(|(i, f)| (f.clone(), i as u32)).collect()).collect())
            .collect();
        Ok(Self { levels, labels, index, simplices })
    }

    pub fn cap(&self) -> usize {
        self.simplices.len() - 1
    }

    pub fn level(&self, m: usize) -> &TruncSSet {
        &self.levels[m]
    }

    /// The `j`-simplex `i` of level `m`, as a map `Δ[m] × Δ[j] -> X`.
    pub fn label(&self, m: usize, j: usize, i: usize) -> &SSetMap {
        &self.labels[m][j][i]
    }

    fn lookup(&self, m: usize, j: usize, f: &SSetMap) -> Result<u32> {
        self.index[m][j].get(f).copied().ok_or_else(|| Error::NotSimplicial(format!("map missing from level {m}, dimension {j}")))
    }

    /// `θ^*: Map(Δ[m], X) -> Map(Δ[m'], X)` for `θ: [m'] -> [m]`.
    pub fn induced(&self, th: &MonotoneMap) -> Result<SSetMap> {
        let (a, b) = (th.dom(), th.cod());
        let sm = standard_map(th, self.cap());
        let tables = (0..=self.cap())
            .map(|j| {
                let sj = &self.simplices[j];
                let pre = product_map(&[&self.simplices[a], sj], &[&self.simplices[b], sj], &[&sm, &SSetMap::identity(sj)]);
                self.labels[b][j].iter().map(|f| self.lookup(a, j, &f.after(&pre))).collect::<Result<Vec<u32>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        SSetMap::new(&self.levels[b], &self.levels[a], tables)
    }

    /// `g_*: Map(Δ[m], X) -> Map(Δ[m], Y)` for `g: X -> Y`.
    pub fn postcompose(&self, to: &StandardFrame, g: &SSetMap, m: usize) -> Result<SSetMap> {
        let tables = (0..=self.cap())
            .map(|j| self.labels[m][j].iter().map(|f| to.lookup(m, j, &g.after(f))).collect::<Result<Vec<u32>>>())
            .collect::<Result<Vec<_>>>()?;
        SSetMap::new(&self.levels[m], &to.levels[m], tables)
    }

    /// Evaluates the `j`-simplex `i` of level `m` at `(τ, ι_j)`, `τ ∈ Δ[m]_j`.
    fn evaluate(&self, m: usize, j: usize, i: usize, tau: usize) -> usize {
        let iota = lex_rank(&MonotoneMap::identity(j));
        let at = product_index(&[&self.simplices[m], &self.simplices[j]], j, &[tau, iota]);
        self.labels[m][j][i].apply(j, at)
    }
}

fn operators(cap: usize) -> Vec<MonotoneMap> {
    let mut ops = Vec::new();
    for m in 0..=cap {
        if m >= 1 {
            ops.extend((0..=m).map(|i| MonotoneMap::coface(m, i)));
        }
        if m < cap {
            ops.extend((0..=m).map(|i| MonotoneMap::codegeneracy(m, i)));
        }
    }
    ops
}

/// `X^K` for the standard frame: the limit over the opposite category of
/// simplices of `K` of `(m, x) ↦ Map(Δ[m], X)`.
#[derive(Clone, Debug)]
pub struct Cotensor {
    pub object: TruncSSet,
    pub limit: Limit,
    /// Objects `(m, x)` of the category of simplices.
    pub objects: Vec<(usize, usize)>,
    /// Comparison with `Map(K, X)`.
    pub comparison: SSetMap,
    pub isomorphic: bool,
}

pub fn homotopy_cotensor(x: &TruncSSet, k: &TruncSSet, frame: &StandardFrame, limit_size: usize) -> Result<Cotensor> {
    let cap = x.cap();
    let (cat, objects) = category_of_simplices(k)?;
    let shape = Arc::new(cat.opposite());
    let values = objects.iter().map(|&(m, _)| Arc::new(frame.level(m).clone())).collect();
    let s = shape.clone();
    let d = Diagram::new(shape, values, |g| frame.induced(s.label(g).expect("labelled").component(0)).expect("frame map"), cap)?;
    let lim = limit(&d)?;
    let (exp, labels) = exponential_with_labels(k, x, limit_size)?;
    let exp_index: Vec<HashMap<&SSetMap, u32>> =
        labels.iter().map(|per| per.iter().enumerate().map(|(i, f)| (f, i as u32)).collect()).collect();
    let mut tables = Vec::with_capacity(cap + 1);
    for j in 0..=cap {
        let sj = standard_simplex(j, cap);
        let prod_counts: Vec<usize> = (0..=cap).map(|d| k.count(d) * sj.count(d)).collect();
        let mut table = Vec::with_capacity(lim.object.count(j));
        for s in 0..lim.object.count(j) {
            let fam = lim.family(j, s);
            let maps: Vec<Vec<u32>> = (0..=cap)
                .map(|d| {
                    (0..prod_counts[d])
                        .map(|z| {
                            let parts = product_components(&[k, &sj], d, z);
                            let o = simplex_object(k, d, parts[0]);
                            eval_at(frame, d, j, fam[o] as usize, parts[1]) as u32
                        })
                        .collect()
                })
                .collect();
            let g = SSetMap::from_raw(maps);
            let idx = exp_index[j].get(&g).copied().ok_or_else(|| Error::NotSimplicial("cotensor simplex has no exponential counterpart".into()))?;
            table.push(idx);
        }
        tables.push(table);
    }
    let comparison = SSetMap::new(&lim.object, &exp, tables)?;
    let isomorphic = comparison.is_isomorphism(&exp);
    Ok(Cotensor { object: lim.object.clone(), limit: lim, objects, comparison, isomorphic })
}

/// `f(ι_d, τ)` for the `j`-simplex `i` of level `d`, read as `Δ[d] × Δ[j] -> X`.
fn eval_at(frame: &StandardFrame, d: usize, j: usize, i: usize, tau: usize) -> usize {
    let iota = lex_rank(&MonotoneMap::identity(d));
    let at = product_index(&[&frame.simplices[d], &frame.simplices[j]], d, &[iota, tau]);
    frame.label(d, j, i).apply(d, at)
}

/// `map(W, X)_m = SS(W, Map(Δ[m], X))`.
#[derive(Clone, Debug)]
pub struct MappingComplex {
    pub object: TruncSSet,
    pub simplices: Vec<Vec<SSetMap>>,
    pub comparison: SSetMap,
    pub isomorphic: bool,
}

pub fn mapping_complex(w: &TruncSSet, x: &TruncSSet, frame: &StandardFrame, limit_size: usize) -> Result<MappingComplex> {
    let cap = x.cap();
    let simplices: Vec<Vec<SSetMap>> = (0..=cap).map(|m| hom_set(w, frame.level(m), limit_size)).collect::<Result<_>>()?;
    let ops: HashMap<MonotoneMap, SSetMap> = operators(cap).into_iter().map(|th| frame.induced(&th).map(|f| (th, f))).collect::<Result<_>>()?;
    let object = TruncSSet::from_action(cap, simplices.clone(), |f: &SSetMap, th| ops[th].after(f))?;
    let (exp, labels) = exponential_with_labels(w, x, limit_size)?;
    let exp_index: Vec<HashMap<&SSetMap, u32>> =
        labels.iter().map(|per| per.iter().enumerate().map(|(i, f)| (f, i as u32)).collect()).collect();
    let mut tables = Vec::with_capacity(cap + 1);
    for (m, maps) in simplices.iter().enumerate() {
        let sm = standard_simplex(m, cap);
        let mut table = Vec::with_capacity(maps.len());
        for f in maps {
            let g = SSetMap::from_raw(
                (0..=cap)
                    .map(|d| {
                        (0..w.count(d) * sm.count(d))
                            .map(|z| {
                                let parts = product_components(&[w, &sm], d, z);
                                frame.evaluate(m, d, f.apply(d, parts[0]), parts[1]) as u32
                            })
                            .collect()
                    })
                    .collect(),
            );
            let idx = exp_index[m].get(&g).copied().ok_or_else(|| Error::NotSimplicial("mapping complex simplex has no exponential counterpart".into()))?;
            table.push(idx);
        }
        tables.push(table);
    }
    let comparison = SSetMap::new(&object, &exp, tables)?;
    let isomorphic = comparison.is_isomorphism(&exp);
    Ok(MappingComplex { object, simplices, comparison, isomorphic })
}

/// `f(ι_d, ι_d)` for a `d`-simplex of level `d`.
fn evaluate_top(frame: &StandardFrame, d: usize, i: usize) -> usize {
    eval_at(frame, d, d, i, lex_rank(&MonotoneMap::identity(d)))
}

/// The map `K × W -> X` determined by a family of top evaluations.
fn pairing(k: &TruncSSet, w: &TruncSSet, value: impl Fn(usize, usize, usize) -> usize) -> SSetMap {
    SSetMap::from_raw(
        (0..=k.cap())
            .map(|d| {
                (0..k.count(d) * w.count(d))
                    .map(|z| {
                        let parts = product_components(&[k, w], d, z);
                        value(d, parts[0], parts[1]) as u32
                    })
                    .collect()
            })
            .collect(),
    )
}

#[derive(Clone, Debug, Serialize)]
pub struct CotensorAdjunctionVerdict {
    /// `|SS(K, map(W, X))|`.
    pub left: usize,
    /// `|SS(W, X^K)|`.
    pub right: usize,
    /// `|SS(K × W, X)|`.
    pub pairings: usize,
    pub bijective: bool,
}

fn bijects(images: &[SSetMap], onto: &HashSet<&SSetMap>) -> bool {
    let set: HashSet<&SSetMap> = images.iter().collect();
    set.len() == images.len() && set.len() == onto.len() && set.iter().all(|f| onto.contains(f))
}

/// Both sides of `SS(K, map(W, X)) ≅ SS(W, X^K)` enumerated and matched
/// through their common description as maps `K × W -> X`.
pub fn cotensor_adjunction(k: &TruncSSet, w: &TruncSSet, x: &TruncSSet, limit_size: usize) -> Result<CotensorAdjunctionVerdict> {
    let frame = StandardFrame::new(x, limit_size)?;
    let mc = mapping_complex(w, x, &frame, limit_size)?;
    let ct = homotopy_cotensor(x, k, &frame, limit_size)?;
    let left = hom_set(k, &mc.object, limit_size)?;
    let right = hom_set(w, &ct.object, limit_size)?;
    let kw = product(&[k, w])?;
    let all = hom_set(&kw, x, limit_size)?;
    let all_set: HashSet<&SSetMap> = all.iter().collect();
    let from_left: Vec<SSetMap> = left
        .iter()
        .map(|f| pairing(k, w, |d, a, b| evaluate_top(&frame, d, mc.simplices[d][f.apply(d, a)].apply(d, b))))
        .collect();
    let from_right: Vec<SSetMap> = right
        .iter()
        .map(|g| {
            pairing(k, w, |d, a, b| {
                let fam = ct.limit.family(d, g.apply(d, b));
                evaluate_top(&frame, d, fam[simplex_object(k, d, a)] as usize)
            })
        })
        .collect();
    Ok(CotensorAdjunctionVerdict {
        left: left.len(),
        right: right.len(),
        pairings: all.len(),
        bijective: bijects(&from_left, &all_set) && bijects(&from_right, &all_set),
    })
}

/// `α ↦ map(W, X_α)` on the shape of `x`.
pub fn mapping_diagram(w: &TruncSSet, x: &Diagram, limit_size: usize) -> Result<(Diagram, Vec<StandardFrame>, Vec<MappingComplex>)> {
    let c = x.shape();
    let n = c.num_objects();
    let frames: Vec<StandardFrame> = (0..n).map(|o| StandardFrame::new(x.value(o), limit_size)).collect::<Result<_>>()?;
    let complexes: Vec<MappingComplex> = (0..n).map(|o| mapping_complex(w, x.value(o), &frames[o], limit_size)).collect::<Result<_>>()?;
    let mut maps = HashMap::new();
    for &g in c.generators() {
        let (a, b) = (c.src(g), c.tgt(g));
        let post: Vec<SSetMap> =
            (0..=x.cap()).map(|m| frames[a].postcompose(&frames[b], x.generator_map(g), m)).collect::<Result<_>>()?;
        let index: Vec<HashMap<&SSetMap, u32>> =
            complexes[b].simplices.iter().map(|per| per.iter().enumerate().map(|(i, f)| (f, i as u32)).collect()).collect();
        let tables = complexes[a]
            .simplices
            .iter()
            .enumerate()
            .map(|(m, per)| {
                per.iter()
                    .map(|f| index[m].get(&post[m].after(f)).copied().ok_or_else(|| Error::NotFunctorial("postcomposition leaves the complex".into())))
                    .collect::<Result<Vec<u32>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        maps.insert(g, SSetMap::new(&complexes[a].object, &complexes[b].object, tables)?);
    }
    let values = complexes.iter().map(|m| Arc::new(m.object.clone())).collect();
    let d = Diagram::new(x.shape_arc(), values, |g| maps[&g].clone(), x.cap())?;
    Ok((d, frames, complexes))
}

#[derive(Clone, Debug, Serialize)]
pub struct EndAdjunctionVerdict {
    pub objects: usize,
    /// `|SS(W, hom^C(K, X))|`.
    pub left: usize,
    /// `|SS^C(K, map(W, X))|`.
    pub right: usize,
    pub bijective: bool,
}

/// `SS(W, hom^C(K, X)) ≅ SS^C(K, map(W, X))`, both enumerated and matched
/// through natural families `K_α × W -> X_α`.
pub fn end_adjunction(k: &Diagram, x: &Diagram, w: &TruncSSet, limit_size: usize) -> Result<EndAdjunctionVerdict> {
    let c = k.shape();
    let n = c.num_objects();
    let end = end_hom(k, x, limit_size)?;
    let left = hom_set(w, &end.object, limit_size)?;
    let (md, frames, complexes) = mapping_diagram(w, x, limit_size)?;
    let right = natural_maps(k, &md, limit_size)?;
    let cap = x.cap();
    let simplices: Vec<TruncSSet> = (0..=cap).map(|m| standard_simplex(m, cap)).collect();
    let from_left: Vec<Vec<SSetMap>> = left
        .iter()
        .map(|f| {
            (0..n)
                .map(|o| {
                    let ko = k.value(o);
                    pairing(ko, w, |d, a, b| {
                        let comp = &end.simplices[d][f.apply(d, b)][o];
                        let iota = lex_rank(&MonotoneMap::identity(d));
                        comp.apply(d, product_index(&[ko, &simplices[d]], d, &[a, iota]))
                    })
                })
                .collect()
        })
        .collect();
    let from_right: Vec<Vec<SSetMap>> = right
        .iter()
        .map(|g| {
            (0..n)
                .map(|o| {
                    pairing(k.value(o), w, |d, a, b| {
                        let f = &complexes[o].simplices[d][g[o].apply(d, a)];
                        evaluate_top(&frames[o], d, f.apply(d, b))
                    })
                })
                .collect()
        })
        .collect();
    let l: HashSet<&Vec<SSetMap>> = from_left.iter().collect();
    let r: HashSet<&Vec<SSetMap>> = from_right.iter().collect();
    let bijective = l.len() == left.len() && r.len() == right.len() && l == r;
    Ok(EndAdjunctionVerdict { objects: n, left: left.len(), right: right.len(), bijective })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cosimplicial::MultiCosimplicial;
    use crate::sset::{indiscrete, standard_boundary};

    #[test]
    fn cotensor_small_cases() {
        let x = standard_simplex(1, 2);
        let frame = StandardFrame::new(&x, 10_000).unwrap();
        let c = homotopy_cotensor(&x, &standard_simplex(0, 2), &frame, 10_000).unwrap();
        assert!(c.isomorphic);
        assert_eq!(c.object.counts(), x.counts());
        let c = homotopy_cotensor(&x, &standard_simplex(1, 2), &frame, 10_000).unwrap();
        assert!(c.isomorphic);
        assert_eq!(c.object.count(0), 3);
        let c = homotopy_cotensor(&x, &standard_boundary(1, 2), &frame, 10_000).unwrap();
        assert!(c.isomorphic);
        assert_eq!(c.object.count(0), 4);
    }

    #[test]
    fn mapping_complex_small_cases() {
        let x = indiscrete(2, 2);
        let frame = StandardFrame::new(&x, 10_000).unwrap();
        let m = mapping_complex(&standard_simplex(0, 2), &x, &frame, 10_000).unwrap();
        assert!(m.isomorphic);
        assert_eq!(m.object.counts(), x.counts());
        let m = mapping_complex(&standard_boundary(1, 2), &x, &frame, 10_000).unwrap();
        assert!(m.isomorphic);
        let pt = TruncSSet::point(2);
        let pf = StandardFrame::new(&pt, 10).unwrap();
        let m = mapping_complex(&standard_simplex(1, 2), &pt, &pf, 10).unwrap();
        assert_eq!(m.object.counts(), pt.counts());
    }

    #[test]
    fn adjunctions() {
        let v = cotensor_adjunction(&standard_simplex(1, 2), &standard_boundary(1, 2), &indiscrete(2, 2), 100_000).unwrap();
        assert!(v.bijective, "{v:?}");
        assert_eq!(v.left, v.pairings);
        let x = MultiCosimplicial::standard(1, 1, 1).unwrap();
        let k = MultiCosimplicial::constant(1, 1, &TruncSSet::point(1)).unwrap();
        let v = end_adjunction(k.diagram(), x.diagram(), &standard_simplex(1, 1), 100_000).unwrap();
        assert!(v.bijective, "{v:?}");
        let v = end_adjunction(x.diagram(), x.diagram(), &TruncSSet::point(1), 100_000).unwrap();
        assert!(v.bijective && v.left == 1, "{v:?}");
    }
}
