use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use serde::Serialize;

use crate::cosimplicial::{diagonal, CosimplicialMap, MultiCosimplicial};
use crate::delta::{all_maps, lex_rank, MultiMap};
use crate::diagrams::shapes::{delta_power, diagonal_overcategory, power_degrees, power_index};
use crate::diagrams::{colimit, natural_maps, Colimit, Diagram};
use crate::error::{out_of_range, Error, Result};
use crate::sset::{product, product_index, standard_simplex, SSetMap, TruncSSet};

/// `Δ`: `[k] ↦ Δ[k]` on `Δ≤N`.
pub fn cosimplicial_standard(trunc: usize, cap: usize) -> Result<MultiCosimplicial> {
    MultiCosimplicial::standard(1, trunc, cap)
}

/// `Δ^(n)`: `[p⃗] ↦ Δ[p₁] × .. × Δ[p_n]`.
pub fn multi_standard(arity: usize, trunc: usize, cap: usize) -> Result<MultiCosimplicial> {
    MultiCosimplicial::standard(arity, trunc, cap)
}

/// The pointwise left Kan extension along the diagonal, with the colimit
/// presentation at every degree tuple.
#[derive(Clone, Debug)]
pub struct KanExtension {
    pub object: MultiCosimplicial,
    /// Objects `(k, m: [k]^n -> [p⃗])` of each indexing overcategory.
    pub overcategories: Vec<Vec<(usize, MultiMap)>>,
    pub colimits: Vec<Colimit>,
}

pub fn left_kan_extend(c: &MultiCosimplicial, arity: usize) -> Result<KanExtension> {
    if c.arity() != 1 {
        return Err(out_of_range("arity", c.arity() as i64, "1 for the extended object"));
    }
    let (trunc, cap) = (c.trunc(), c.cap());
    let shape = Arc::new(delta_power(arity, trunc));
    let mut overcategories = Vec::new();
    let mut colimits = Vec::new();
    let mut indices: Vec<HashMap<MultiMap, usize>> = Vec::new();
    for o in 0..shape.num_objects() {
        let p = power_degrees(arity, trunc, o);
        let (cat, objs) = diagonal_overcategory(&p, trunc);
        let cat = Arc::new(cat);
        let values = objs.iter().map(|(k, _)| c.diagram().value_arc(*k)).collect();
        let s = cat.clone();
        let d = Diagram::new(cat, values, |g| c.structure_map(s.label(g).expect("labelled")).expect("within truncation"), cap)?;
        colimits.push(colimit(&d)?);
        indices.push(objs.iter().enumerate().map(|(i, (_, m))| (m.clone(), i)).collect());
        overcategories.push(objs);
    }
    let mut induced: HashMap<MultiMap, SSetMap> = HashMap::new();
    for &g in shape.generators() {
        let u = shape.label(g).expect("labelled");
        let (a, b) = (shape.src(g), shape.tgt(g));
        let (from, to) = (&colimits[a], &colimits[b]);
        let mut tables: Vec<Vec<u32>> = (0..=cap).map(|m| vec![u32::MAX; from.object.count(m)]).collect();
        for (j, (k, m)) in overcategories[a].iter().enumerate() {
            let j2 = indices[b][&u.after(m)?];
            for (dim, table) in tables.iter_mut().enumerate() {
                for x in 0..c.value(&[*k]).count(dim) {
                    let slot = &mut table[from.injections[j].apply(dim, x)];
                    let y = to.injections[j2].apply(dim, x) as u32;
                    if *slot != u32::MAX && *slot != y {
                        return Err(Error::NotFunctorial("induced map on colimits is not well defined".into()));
                    }
                    *slot = y;
                }
            }
        }
        induced.insert(u.clone(), SSetMap::new(&from.object, &to.object, tables)?);
    }
    let object = MultiCosimplicial::with_shape(
        shape,
        arity,
        trunc,
        cap,
        |p| colimits[power_index(trunc, p)].object.clone(),
        |u| induced[u].clone(),
    )?;
    Ok(KanExtension { object, overcategories, colimits })
}

impl KanExtension {
    /// The map out of the colimit at object `o` induced by a cocone, given
    /// per overcategory object.
    pub fn induced_from_cocone(&self, o: usize, target: &TruncSSet, leg: impl Fn(usize, &MultiMap) -> SSetMap) -> Result<SSetMap> {
        let colim = &self.colimits[o];
        let cap = colim.object.cap();
        let mut tables: Vec<Vec<u32>> = (0..=cap).map(|m| vec![u32::MAX; colim.object.count(m)]).collect();
        for (j, (k, m)) in self.overcategories[o].iter().enumerate() {
            let l = leg(*k, m);
            for (dim, table) in tables.iter_mut().enumerate() {
                for (x, &y) in l.table(dim).iter().enumerate() {
                    let slot = &mut table[colim.injections[j].apply(dim, x)];
                    if *slot != u32::MAX && *slot != y {
                        return Err(Error::NotFunctorial("cocone is not compatible".into()));
                    }
                    *slot = y;
                }
            }
        }
        SSetMap::new(&colim.object, target, tables)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct KanComparison {
    pub degrees: Vec<usize>,
    pub colimit_counts: Vec<usize>,
    pub product_counts: Vec<usize>,
    pub isomorphism: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct KanStandardVerdict {
    pub arity: usize,
    pub trunc: usize,
    pub cap: usize,
    pub per_object: Vec<KanComparison>,
    /// The comparison maps commute with all generating structure maps.
    pub natural: bool,
    pub holds: bool,
}

fn simplex_product(degrees: &[usize], cap: usize) -> Vec<TruncSSet> {
    degrees.iter().map(|&p| standard_simplex(p, cap)).collect()
}

/// Extends `Δ` along the diagonal and compares the result with `Δ^(n)`
/// through the cocone `θ ↦ (m₁θ, .., m_nθ)`.
pub fn check_kan_extension_of_standard(arity: usize, trunc: usize, cap: usize) -> Result<KanStandardVerdict> {
    let delta = cosimplicial_standard(trunc, cap)?;
    let kan = left_kan_extend(&delta, arity)?;
    let target = multi_standard(arity, trunc, cap)?;
    let shape = target.shape();
    let mut comparisons = Vec::new();
    let mut per_object = Vec::new();
    for o in 0..shape.num_objects() {
        let p = power_degrees(arity, trunc, o);
        let factors = simplex_product(&p, cap);
        let refs: Vec<&TruncSSet> = factors.iter().collect();
        let value = target.value(&p);
        let cmp = kan.induced_from_cocone(o, value, |k, m| {
            let src = standard_simplex(k, cap);
            SSetMap::from_fn(&src, value, |dim, x| {
                let th = &all_maps(dim, k)[x];
                let parts: Vec<usize> = m.components().iter().map(|mi| lex_rank(&mi.after(th).expect("composable"))).collect();
                product_index(&refs, dim, &parts)
            })
            .expect("simplicial")
        })?;
        per_object.push(KanComparison {
            degrees: p,
            colimit_counts: kan.colimits[o].object.counts().to_vec(),
            product_counts: value.counts().to_vec(),
            isomorphism: cmp.is_isomorphism(value),
        });
        comparisons.push(cmp);
    }
    let natural = shape.generators().iter().all(|&g| {
        let (a, b) = (shape.src(g), shape.tgt(g));
        comparisons[b].after(kan.object.diagram().generator_map(g)) == target.diagram().generator_map(g).after(&comparisons[a])
    });
    let holds = natural && per_object.iter().all(|c| c.isomorphism);
    Ok(KanStandardVerdict { arity, trunc, cap, per_object, natural, holds })
}

/// `α_k: Δ[k] -> Δ[k]^n`, `θ ↦ (θ, .., θ)`.
pub fn unit_alpha(k: usize, arity: usize, cap: usize) -> SSetMap {
    let s = standard_simplex(k, cap);
    let factors = vec![s.clone(); arity];
    let refs: Vec<&TruncSSet> = factors.iter().collect();
    let target = product(&refs).expect("same caps");
    SSetMap::from_fn(&s, &target, |m, x| product_index(&refs, m, &vec![x; arity])).expect("diagonal is simplicial")
}

/// `α: Δ -> diag Δ^(n)` as a checked map of cosimplicial objects.
pub fn unit_transformation(arity: usize, trunc: usize, cap: usize) -> Result<CosimplicialMap> {
    let f = CosimplicialMap { components: (0..=trunc).map(|k| unit_alpha(k, arity, cap)).collect() };
    f.check(&cosimplicial_standard(trunc, cap)?, &diagonal(&multi_standard(arity, trunc, cap)?)?)?;
    Ok(f)
}

#[derive(Clone, Debug, Serialize)]
pub struct AdjunctionVerdict {
    pub arity: usize,
    pub trunc: usize,
    /// `|Hom(Δ^(n), X)|`.
    pub left: usize,
    /// `|Hom(Δ, diag X)|`.
    pub right: usize,
    pub injective: bool,
    pub surjective: bool,
    pub bijective: bool,
    #[serde(skip)]
    pub left_maps: Vec<CosimplicialMap>,
    #[serde(skip)]
    pub right_maps: Vec<CosimplicialMap>,
}

/// The transpose `(diag f) ∘ α` of a map `f: Δ^(n) -> X`.
pub fn transpose(x: &MultiCosimplicial, f: &CosimplicialMap) -> CosimplicialMap {
    let n = x.arity();
    CosimplicialMap {
        components: (0..=x.trunc()).map(|k| f.component(x, &vec![k; n]).after(&unit_alpha(k, n, x.cap()))).collect(),
    }
}

/// Enumerates both hom-sets and checks `f ↦ (diag f) ∘ α` is a bijection.
pub fn adjunction_bijection(x: &MultiCosimplicial, limit: usize) -> Result<AdjunctionVerdict> {
    let (n, trunc, cap) = (x.arity(), x.trunc(), x.cap());
    let standard = multi_standard(n, trunc, cap)?;
    let left: Vec<CosimplicialMap> =
        natural_maps(standard.diagram(), x.diagram(), limit)?.into_iter().map(|components| CosimplicialMap { components }).collect();
    let dx = diagonal(x)?;
    let right: Vec<CosimplicialMap> = natural_maps(cosimplicial_standard(trunc, cap)?.diagram(), dx.diagram(), limit)?
        .into_iter()
        .map(|components| CosimplicialMap { components })
        .collect();
    let right_set: HashSet<&Vec<SSetMap>> = right.iter().map(|f| &f.components).collect();
    let images: Vec<Vec<SSetMap>> = left.iter().map(|f| transpose(x, f).components).collect();
    let image_set: HashSet<&Vec<SSetMap>> = images.iter().collect();
    let injective = image_set.len() == images.len();
    let surjective = images.iter().all(|i| right_set.contains(i)) && image_set.len() == right_set.len();
    Ok(AdjunctionVerdict {
        arity: n,
        trunc,
        left: left.len(),
        right: right.len(),
        injective,
        surjective,
        bijective: injective && surjective,
        left_maps: left,
        right_maps: right,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cosimplicial::terminal;
    use crate::delta::MonotoneMap;
    use crate::sset::standard_map;

    #[test]
    fn extension_along_identity_is_the_same_object() {
        let d = cosimplicial_standard(2, 2).unwrap();
        let k = left_kan_extend(&d, 1).unwrap();
        for p in 0..=2 {
            assert_eq!(k.object.value(&[p]).counts(), d.value(&[p]).counts());
        }
        assert!(check_kan_extension_of_standard(1, 2, 2).unwrap().holds);
    }

    #[test]
    fn extension_of_standard_is_product() {
        let v = check_kan_extension_of_standard(2, 1, 1).unwrap();
        assert!(v.holds, "{v:?}");
        let v = check_kan_extension_of_standard(2, 2, 2).unwrap();
        assert!(v.holds);
        let sq = v.per_object.iter().find(|c| c.degrees == [1, 1]).unwrap();
        assert_eq!(sq.colimit_counts, vec![4, 9, 16]);
    }

    #[test]
    fn unit_on_edges() {
        assert!(unit_alpha(0, 2, 2).is_isomorphism(&TruncSSet::point(2)));
        let a = unit_alpha(1, 2, 1);
        let s1 = standard_simplex(1, 1);
        let edge = lex_rank(&MonotoneMap::identity(1));
        assert_eq!(a.apply(1, edge), product_index(&[&s1, &s1], 1, &[edge, edge]));
        // naturality for σ: [1] -> [0]
        let sigma = MonotoneMap::codegeneracy(0, 0);
        let s0 = standard_simplex(0, 1);
        let lhs = unit_alpha(0, 2, 1).after(&standard_map(&sigma, 1));
        let sm = standard_map(&sigma, 1);
        let rhs = crate::sset::product_map(&[&s1, &s1], &[&s0, &s0], &[&sm, &sm]).after(&a);
        assert_eq!(lhs, rhs);
        unit_transformation(3, 2, 2).unwrap();
    }

    #[test]
    fn adjunction_on_small_objects() {
        let t = terminal(2, 2, 2).unwrap();
        let v = adjunction_bijection(&t, 1000).unwrap();
        assert_eq!((v.left, v.right), (1, 1));
        assert!(v.bijective);
        let two = MultiCosimplicial::constant(2, 2, &TruncSSet::discrete(2, 2)).unwrap();
        let v = adjunction_bijection(&two, 1000).unwrap();
        assert_eq!((v.left, v.right), (2, 2));
        assert!(v.bijective);
        let x = multi_standard(2, 2, 2).unwrap();
        let v = adjunction_bijection(&x, 100_000).unwrap();
        assert!(v.bijective, "{} vs {}", v.left, v.right);
        assert!(v.left_maps.iter().any(|f| f.components == CosimplicialMap::identity(&x).components));
    }
}
