use std::collections::HashMap;

use super::diagram::Diagram;
use super::fincat::ObjId;
use crate::error::{Error, Result};
use crate::sset::{SSetMap, TruncSSet};
use crate::unionfind::DisjointSets;

/// A limit as the set of compatible families, with projections.
#[derive(Clone, Debug)]
pub struct Limit {
    pub object: TruncSSet,
    pub projections: Vec<SSetMap>,
    index: Vec<HashMap<Vec<u32>, u32>>,
}

impl Limit {
    /// The simplex whose family of components is `family`, if compatible.
    pub fn index_of(&self, m: usize, family: &[u32]) -> Option<usize> {
        self.index[m].get(family).map(|&i| i as usize)
    }

    pub fn family(&self, m: usize, x: usize) -> Vec<u32> {
        self.projections.iter().map(|p| p.table(m)[x]).collect()
    }

    /// The map into this limit induced by a cone `legs[o]: source -> D(o)`.
    pub fn induced_map(&self, source: &TruncSSet, legs: &[&SSetMap]) -> Result<SSetMap> {
        let maps = (0..=source.cap())
            .map(|m| {
                (0..source.count(m))
                    .map(|x| {
                        let fam: Vec<u32> = legs.iter().map(|l| l.table(m)[x]).collect();
                        self.index_of(m, &fam)
                            .map(|i| i as u32)
                            .ok_or_else(|| Error::NotFunctorial(format!("legs do not form a cone at simplex {x} of dimension {m}")))
                    })
                    .collect::<Result<Vec<u32>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SSetMap::from_raw(maps))
    }

    /// The canonical map to the limit over a subcategory, given as the
    /// ambient object of each of its objects.
    pub fn restriction_to(&self, small: &Limit, obj_map: &[ObjId]) -> Result<SSetMap> {
        let legs: Vec<&SSetMap> = obj_map.iter().map(|&o| &self.projections[o]).collect();
        small.induced_map(&self.object, &legs)
    }
}

/// Compatible families for a finite diagram of sets, presented by
/// generator functions `(a, b, f)` with `f: values(a) -> values(b)`.
pub fn set_limit(sizes: &[usize], edges: &[(usize, usize, &[u32])]) -> Vec<Vec<u32>> {
    let n = sizes.len();
    let order = sinks_first(n, edges);
    let mut position = vec![0; n];
    for (p, &o) in order.iter().enumerate() {
        position[o] = p;
    }
    // per position: a forcing edge, a preimage edge, and edges to check
    let mut forcing: Vec<Option<usize>> = vec![None; n];
    let mut pulling: Vec<Option<usize>> = vec![None; n];
    let mut checks: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (e, &(a, b, _)) in edges.iter().enumerate() {
        let (pa, pb) = (position[a], position[b]);
        let later = pa.max(pb);
        if pa == later && pb < pa && forcing[pa].is_none() {
            // b is already assigned; a draws from a preimage
            if pulling[pa].is_none() {
                pulling[pa] = Some(e);
                continue;
            }
        } else if pb == later && pa < pb && forcing[pb].is_none() {
            forcing[pb] = Some(e);
            continue;
        }
        checks[later].push(e);
    }
    let mut preimages: HashMap<usize, Vec<Vec<u32>>> = HashMap::new();
    for p in 0..n {
        if forcing[p].is_none() {
            if let Some(e) = pulling[p] {
                let (_, b, f) = edges[e];
                let mut pre = vec![Vec::new(); sizes[b]];
                for (x, &y) in f.iter().enumerate() {
                    pre[y as usize].push(x as u32);
                }
                preimages.insert(e, pre);
            }
        } else if let Some(e) = pulling[p].take() {
            checks[p].push(e);
        }
    }
    let mut vals = vec![u32::MAX; n];
    let mut out = Vec::new();
    let consistent = |vals: &[u32], p: usize| -> bool {
        checks[p].iter().all(|&e| {
            let (a, b, f) = edges[e];
            f[vals[a] as usize] == vals[b]
        })
    };
    if n == 0 {
        return vec![Vec::new()];
    }
    struct Frame {
        cands: Vec<u32>,
        next: usize,
    }
    let candidates = |vals: &[u32], p: usize| -> Vec<u32> {
        let o = order[p];
        if let Some(e) = forcing[p] {
            let (a, _, f) = edges[e];
            vec![f[vals[a] as usize]]
        } else if let Some(e) = pulling[p] {
            let (_, b, _) = edges[e];
            preimages[&e][vals[b] as usize].clone()
        } else {
            (0..sizes[o] as u32).collect()
        }
    };
    let mut stack = vec![Frame { cands: candidates(&vals, 0), next: 0 }];
    while !stack.is_empty() {
        let p = stack.len() - 1;
        let o = order[p];
        let top = stack.last_mut().unwrap();
        if top.next >= top.cands.len() {
            vals[o] = u32::MAX;
            stack.pop();
            continue;
        }
        vals[o] = top.cands[top.next];
        top.next += 1;
        if !consistent(&vals, p) {
            continue;
        }
        if p + 1 == n {
            out.push(vals.clone());
        } else {
            let cands = candidates(&vals, p + 1);
            stack.push(Frame { cands, next: 0 });
        }
    }
    out.sort();
    out
}

/// Objects ordered so that strongly connected components come sinks first.
fn sinks_first(n: usize, edges: &[(usize, usize, &[u32])]) -> Vec<usize> {
    let mut adj = vec![Vec::new(); n];
    for &(a, b, _) in edges {
        adj[a].push(b);
    }
    // iterative Tarjan; components are emitted in reverse topological order
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut next_index = 0;
    let mut order = Vec::with_capacity(n);
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut i)) = call.last_mut() {
            if *i < adj[v].len() {
                let w = adj[v][*i];
                *i += 1;
                if index[w] == usize::MAX {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w] = false;
                        order.push(w);
                        if w == v {
                            break;
                        }
                    }
                }
            }
        }
    }
    order
}

/// Limit of a diagram of truncated simplicial sets, dimension by dimension.
pub fn limit(d: &Diagram) -> Result<Limit> {
    let c = d.shape();
    let cap = d.cap();
    let n = c.num_objects();
    let mut families: Vec<Vec<Vec<u32>>> = Vec::with_capacity(cap + 1);
    for m in 0..=cap {
        let sizes: Vec<usize> = (0..n).map(|o| d.value(o).count(m)).collect();
        let edges: Vec<(usize, usize, &[u32])> =
            c.generators().iter().map(|&g| (c.src(g), c.tgt(g), d.generator_map(g).table(m))).collect();
        families.push(set_limit(&sizes, &edges));
    }
    let values: Vec<&TruncSSet> = (0..n).map(|o| d.value(o)).collect();
    Ok(from_families(cap, &values, families))
}

/// Assembles the sub-object of a product given by closed sets of families.
pub(crate) fn from_families(cap: usize, values: &[&TruncSSet], families: Vec<Vec<Vec<u32>>>) -> Limit {
    let index: Vec<HashMap<Vec<u32>, u32>> =
        families.iter().map(|fs| fs.iter().enumerate().map(|(i, f)| (f.clone(), i as u32)).collect()).collect();
    let look = |m: usize, fam: Vec<u32>| -> u32 { *index[m].get(&fam).expect("families closed under operators") };
    let mut faces = vec![Vec::new()];
    let mut degens = Vec::new();
    for m in 0..=cap {
        if m >= 1 {
            faces.push(
                (0..=m)
                    .map(|i| {
                        families[m]
                            .iter()
                            .map(|f| look(m - 1, f.iter().zip(values).map(|(&x, v)| v.face(m, i, x as usize) as u32).collect()))
                            .collect()
                    })
                    .collect(),
            );
        }
        if m < cap {
            degens.push(
                (0..=m)
                    .map(|i| {
                        families[m]
                            .iter()
                            .map(|f| look(m + 1, f.iter().zip(values).map(|(&x, v)| v.degen(m, i, x as usize) as u32).collect()))
                            .collect()
                    })
                    .collect(),
            );
        } else {
            degens.push(Vec::new());
        }
    }
    let counts = families.iter().map(Vec::len).collect();
    let object = TruncSSet::from_tables(cap, counts, faces, degens).expect("limits are simplicial");
    let projections = (0..values.len())
        .map(|o| SSetMap::from_raw(families.iter().map(|fs| fs.iter().map(|f| f[o]).collect()).collect()))
        .collect();
    Limit { object, projections, index }
}

#[derive(Clone, Debug)]
pub struct Colimit {
    pub object: TruncSSet,
    pub injections: Vec<SSetMap>,
}

/// Quotient of the disjoint union along generator maps.
pub fn colimit(d: &Diagram) -> Result<Colimit> {
    let c = d.shape();
    let cap = d.cap();
    let n = c.num_objects();
    let mut class_of: Vec<Vec<u32>> = Vec::with_capacity(cap + 1);
    let mut reps: Vec<Vec<(usize, usize)>> = Vec::with_capacity(cap + 1);
    let mut offsets: Vec<Vec<usize>> = Vec::with_capacity(cap + 1);
    for m in 0..=cap {
        let mut offset = vec![0; n + 1];
        for o in 0..n {
            offset[o + 1] = offset[o] + d.value(o).count(m);
        }
        let mut ds = DisjointSets::new(offset[n]);
        for &g in c.generators() {
            let (a, b) = (c.src(g), c.tgt(g));
            for (x, &y) in d.generator_map(g).table(m).iter().enumerate() {
                ds.union(offset[a] + x, offset[b] + y as usize);
            }
        }
        let (count, labels) = ds.labels();
        let mut r = vec![(usize::MAX, 0); count];
        for o in 0..n {
            for x in 0..d.value(o).count(m) {
                let l = labels[offset[o] + x];
                if r[l].0 == usize::MAX {
                    r[l] = (o, x);
                }
            }
        }
        class_of.push(labels.iter().map(|&l| l as u32).collect());
        reps.push(r);
        offsets.push(offset);
    }
    let cls = |m: usize, o: usize, x: usize| class_of[m][offsets[m][o] + x];
    let mut faces = vec![Vec::new()];
    let mut degens = Vec::new();
    for m in 0..=cap {
        if m >= 1 {
            faces.push((0..=m).map(|i| reps[m].iter().map(|&(o, x)| cls(m - 1, o, d.value(o).face(m, i, x))).collect()).collect());
        }
        if m < cap {
            degens.push((0..=m).map(|i| reps[m].iter().map(|&(o, x)| cls(m + 1, o, d.value(o).degen(m, i, x))).collect()).collect());
        } else {
            degens.push(Vec::new());
        }
    }
    let counts = reps.iter().map(Vec::len).collect();
    let object = TruncSSet::from_tables(cap, counts, faces, degens)?;
    let injections = (0..n)
        .map(|o| SSetMap::from_raw((0..=cap).map(|m| (0..d.value(o).count(m)).map(|x| cls(m, o, x)).collect()).collect()))
        .collect();
    Ok(Colimit { object, injections })
}

#[derive(Clone, Debug)]
pub struct Pullback {
    pub object: TruncSSet,
    pub first: SSetMap,
    pub second: SSetMap,
    limit: Limit,
}

impl Pullback {
    /// The simplex with components `(a, b)`, if they agree over the base.
    pub fn index_of(&self, m: usize, a: usize, b: usize) -> Option<usize> {
        self.limit.index_of(m, &[a as u32, b as u32])
    }

    /// The map into the pullback induced by a commuting pair of legs.
    pub fn induced_map(&self, source: &TruncSSet, to_first: &SSetMap, to_second: &SSetMap) -> Result<SSetMap> {
        self.limit.induced_map(source, &[to_first, to_second])
    }
}

/// `A ×_Z B` for `f: A -> Z` and `g: B -> Z`.
pub fn pullback(a: &TruncSSet, f: &SSetMap, b: &TruncSSet, g: &SSetMap, z: &TruncSSet) -> Result<Pullback> {
    f.check(a, z)?;
    g.check(b, z)?;
    let cap = a.cap();
    let mut families = Vec::with_capacity(cap + 1);
    for m in 0..=cap {
        let mut pre: Vec<Vec<u32>> = vec![Vec::new(); z.count(m)];
        for (y, &zy) in g.table(m).iter().enumerate() {
            pre[zy as usize].push(y as u32);
        }
        let mut fams = Vec::new();
        for (x, &zx) in f.table(m).iter().enumerate() {
            for &y in &pre[zx as usize] {
                fams.push(vec![x as u32, y]);
            }
        }
        families.push(fams);
    }
    let limit = from_families(cap, &[a, b], families);
    Ok(Pullback {
        object: limit.object.clone(),
        first: limit.projections[0].clone(),
        second: limit.projections[1].clone(),
        limit,
    })
}

#[cfg(test)]
mod tests {
    use std::collections::HashMap as Map;
    use std::sync::Arc;

    use super::*;
    use crate::diagrams::fincat::{FinCat, Generators};
    use crate::sset::{betti, path_components, product, standard_boundary, standard_simplex};

    fn discrete_shape(n: usize) -> Arc<FinCat> {
        let names = (0..n).map(|i| format!("o{i}")).collect();
        let mors = (0..n).map(|i| (i, i)).collect();
        Arc::new(FinCat::from_table(names, mors, (0..n).collect(), Map::new(), Generators::AllNonIdentity).unwrap())
    }

    fn cospan_shape() -> Arc<FinCat> {
        let names = vec!["a".into(), "b".into(), "c".into()];
        let mors = vec![(0, 0), (1, 1), (2, 2), (0, 2), (1, 2)];
        Arc::new(FinCat::from_table(names, mors, vec![0, 1, 2], Map::new(), Generators::AllNonIdentity).unwrap())
    }

    #[test]
    fn empty_and_discrete_limits() {
        let d = Diagram::new(discrete_shape(0), vec![], |_| unreachable!(), 2).unwrap();
        assert_eq!(limit(&d).unwrap().object, TruncSSet::point(2));
        let s1 = Arc::new(standard_simplex(1, 2));
        let s2 = Arc::new(standard_simplex(2, 2));
        let d = Diagram::new(discrete_shape(2), vec![s1.clone(), s2.clone()], |_| unreachable!(), 2).unwrap();
        let l = limit(&d).unwrap();
        assert_eq!(l.object.counts(), product(&[&s1, &s2]).unwrap().counts());
        let c = colimit(&d).unwrap();
        assert_eq!(c.object.count(0), 5);
        assert_eq!(path_components(&c.object).count, 2);
    }

    #[test]
    fn cospan_limit_matches_pullback() {
        let a = Arc::new(TruncSSet::discrete(2, 1));
        let pt = Arc::new(TruncSSet::point(1));
        let shape = cospan_shape();
        let d = Diagram::new(shape, vec![a.clone(), a.clone(), pt.clone()], |_| SSetMap::to_point(&a), 1).unwrap();
        let l = limit(&d).unwrap();
        assert_eq!(l.object.count(0), 4);
        let f = SSetMap::to_point(&a);
        let p = pullback(&a, &f, &a, &f, &pt).unwrap();
        assert_eq!(p.object.counts(), l.object.counts());
        // along an identity
        let s = standard_simplex(2, 2);
        let id = SSetMap::identity(&s);
        let p = pullback(&s, &id, &s, &id, &s).unwrap();
        assert!(p.first.is_isomorphism(&s));
    }

    fn span_shape() -> Arc<FinCat> {
        let names = vec!["c".into(), "a".into(), "b".into()];
        let mors = vec![(0, 0), (1, 1), (2, 2), (0, 1), (0, 2)];
        Arc::new(FinCat::from_table(names, mors, vec![0, 1, 2], Map::new(), Generators::AllNonIdentity).unwrap())
    }

    #[test]
    fn pushouts() {
        let b = Arc::new(standard_boundary(1, 2));
        let pt = Arc::new(TruncSSet::point(2));
        let to_pt = SSetMap::to_point(&b);
        // Δ[0] <- ∂Δ[1] -> Δ[0] glues everything to a point
        let d = Diagram::new(span_shape(), vec![b.clone(), pt.clone(), pt.clone()], |_| to_pt.clone(), 2).unwrap();
        assert_eq!(colimit(&d).unwrap().object, TruncSSet::point(2));
        // Δ[1] <- ∂Δ[1] -> Δ[0] is a circle
        let s1 = Arc::new(standard_simplex(1, 2));
        let (_, incl) = s1.subcomplex(&s1.skeleton_flags(0)).unwrap();
        let d = Diagram::new(span_shape(), vec![b.clone(), s1.clone(), pt.clone()], |g| if g == 3 { incl.clone() } else { to_pt.clone() }, 2)
            .unwrap();
        let c = colimit(&d).unwrap();
        assert_eq!(c.object.nondegenerate_counts(), vec![1, 1, 0]);
        let p = betti(&c.object);
        assert_eq!(p.betti, vec![0, 1]);
        assert_eq!(path_components(&c.object).count, 1);
    }

    #[test]
    fn set_limit_cycles() {
        // an endomorphism loop: fixed points
        let f: Vec<u32> = vec![1, 1, 0];
        let fams = set_limit(&[3], &[(0, 0, &f)]);
        assert_eq!(fams, vec![vec![1]]);
        // equalizer of two maps between two objects
        let g: Vec<u32> = vec![0, 1, 1];
        let h: Vec<u32> = vec![0, 0, 1];
        let fams = set_limit(&[3, 2], &[(0, 1, &g), (0, 1, &h)]);
        assert_eq!(fams, vec![vec![0, 0], vec![2, 1]]);
    }
}
