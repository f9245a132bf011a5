use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use super::{CosimplicialMap, MultiCosimplicial};
use crate::delta::{filtration_stage, matching_objects_at, primed_stage, split_new_objects, MultiMap};
use crate::diagrams::shapes::labelled_under_poset;
use crate::diagrams::{is_left_cofinal, limit, pullback, Diagram, FinCat, Functor, Limit, Pullback};
use crate::error::{out_of_range, Error, Result};
use crate::sset::{SSetMap, TruncSSet};

/// A limit of `X` over a full subcategory of the matching category at
/// `base`, with the canonical map out of `X^base`.
#[derive(Clone, Debug)]
pub struct MatchingObject {
    pub base: Vec<usize>,
    pub objects: Vec<MultiMap>,
    pub shape: Arc<FinCat>,
    pub limit: Limit,
    pub map: SSetMap,
}

impl MatchingObject {
    pub fn object(&self) -> &TruncSSet {
        &self.limit.object
    }

    fn position(&self, u: &MultiMap) -> Option<usize> {
        self.objects.iter().position(|o| o == u)
    }
}

fn poset_diagram(x: &MultiCosimplicial, objects: Vec<MultiMap>) -> Result<(Arc<FinCat>, Vec<MultiMap>, Diagram)> {
    let (cat, objs) = labelled_under_poset(objects);
    let cat = Arc::new(cat);
    let values = objs.iter().map(|u| x.object(&u.cod()).map(|o| x.diagram().value_arc(o))).collect::<Result<Vec<_>>>()?;
    let maps: HashMap<usize, SSetMap> = cat
        .generators()
        .iter()
        .map(|&g| Ok((g, x.structure_map(cat.label(g).expect("labelled"))?)))
        .collect::<Result<_>>()?;
    let d = Diagram::new(cat.clone(), values, |g| maps[&g].clone(), x.cap())?;
    Ok((cat, objs, d))
}

/// The limit of `X` over the given objects of the matching category at
/// `base` (all of them when `objects` is `None`).
pub fn matching_at(x: &MultiCosimplicial, base: &[usize], objects: Option<Vec<MultiMap>>) -> Result<MatchingObject> {
    let src = x.object(base)?;
    let objects = objects.unwrap_or_else(|| matching_objects_at(base));
    let (shape, objects, d) = poset_diagram(x, objects)?;
    let lim = limit(&d)?;
    let legs = objects.iter().map(|u| x.structure_map(u)).collect::<Result<Vec<_>>>()?;
    let map = lim.induced_map(x.diagram().value(src), &legs.iter().collect::<Vec<_>>())?;
    Ok(MatchingObject { base: base.to_vec(), objects, shape, limit: lim, map })
}

/// `M_{([k],..,[k])} X` and the matching map.
pub fn matching_object(x: &MultiCosimplicial, k: usize) -> Result<MatchingObject> {
    if k > x.trunc() {
        return Err(out_of_range("matching degree", k as i64, format!("0..={}", x.trunc())));
    }
    matching_at(x, &vec![k; x.arity()], None)
}

/// Which full subcategory of the matching category at `([k],..,[k])` a
/// relative matching pullback is taken over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum StageVariant {
    /// The whole matching category.
    Full,
    /// The image of the matching category of the diagonal.
    Diagonal,
    /// `C_i`.
    Stage(i64),
    /// `C'_j = C_{j-1} ∪ S_j`.
    Primed(i64),
}

pub fn stage_objects(n: usize, k: usize, variant: StageVariant) -> Result<Vec<MultiMap>> {
    let maps = |objs: Vec<crate::delta::MatchingCatObject>| objs.into_iter().map(|o| o.map).collect();
    Ok(match variant {
        StageVariant::Full => matching_objects_at(&vec![k; n]),
        StageVariant::Diagonal => maps(filtration_stage(n, k, -1)?.objects),
        StageVariant::Stage(i) => maps(filtration_stage(n, k, i)?.objects),
        StageVariant::Primed(j) => maps(primed_stage(n, k, j - 1)?.objects),
    })
}

/// The pullback `P = M X ×_{M Y} Y^base` with the relative matching map.
#[derive(Clone, Debug)]
pub struct RelativeMatchingData {
    pub base: Vec<usize>,
    pub variant: StageVariant,
    pub matching_x: MatchingObject,
    pub matching_y: MatchingObject,
    /// `M X -> M Y` induced by the map.
    pub matching_f: SSetMap,
    pub p: Pullback,
    /// `X^base -> P`.
    pub relative_map: SSetMap,
}

pub fn build_p(
    x: &MultiCosimplicial,
    y: &MultiCosimplicial,
    f: &CosimplicialMap,
    base: &[usize],
    variant: StageVariant,
) -> Result<RelativeMatchingData> {
    let objects = match variant {
        StageVariant::Full => None,
        _ => {
            let k = base[0];
            if base.iter().any(|&b| b != k) {
                return Err(Error::Category("filtration stages exist only at diagonal degrees".into()));
            }
            Some(stage_objects(x.arity(), k, variant)?)
        }
    };
    let mx = matching_at(x, base, objects.clone())?;
    let my = matching_at(y, base, objects)?;
    let legs: Vec<SSetMap> = mx
        .objects
        .iter()
        .enumerate()
        .map(|(o, u)| Ok(f.components[x.object(&u.cod())?].after(&mx.limit.projections[o])))
        .collect::<Result<_>>()?;
    let matching_f = my.limit.induced_map(mx.object(), &legs.iter().collect::<Vec<_>>())?;
    let yb = y.value(base);
    let p = pullback(mx.object(), &matching_f, yb, &my.map, my.object())?;
    let relative_map = p.induced_map(x.value(base), &mx.map, &f.components[x.object(base)?])?;
    Ok(RelativeMatchingData { base: base.to_vec(), variant, matching_x: mx, matching_y: my, matching_f, p, relative_map })
}

/// The canonical map `P_big -> P_small` for nested object sets.
pub fn p_comparison(big: &RelativeMatchingData, small: &RelativeMatchingData) -> Result<SSetMap> {
    let obj_map = small
        .matching_x
        .objects
        .iter()
        .map(|u| big.matching_x.position(u).ok_or_else(|| Error::Category("stages are not nested".into())))
        .collect::<Result<Vec<_>>>()?;
    let r = big.matching_x.limit.restriction_to(&small.matching_x.limit, &obj_map)?;
    let first = r.after(&big.p.first);
    small.p.induced_map(&big.p.object, &first, &big.p.second)
}

/// The factorization `P_{nk-1} -> .. -> P_{-1}` and the direct map.
#[derive(Clone, Debug)]
pub struct Tower {
    pub stages: Vec<RelativeMatchingData>,
    /// `steps[j]: P_{j} -> P_{j-1}`, stage `j` stored at `stages[j + 1]`.
    pub steps: Vec<SSetMap>,
    pub direct: SSetMap,
    pub composite_agrees: bool,
}

pub fn tower(x: &MultiCosimplicial, y: &MultiCosimplicial, f: &CosimplicialMap, k: usize) -> Result<Tower> {
    let n = x.arity();
    let top = (n * k) as i64 - 1;
    let base = vec![k; n];
    let stages = (-1..=top.max(-1))
        .map(|i| build_p(x, y, f, &base, StageVariant::Stage(i)))
        .collect::<Result<Vec<_>>>()?;
    let steps = (1..stages.len()).map(|j| p_comparison(&stages[j], &stages[j - 1])).collect::<Result<Vec<_>>>()?;
    let full = build_p(x, y, f, &base, StageVariant::Full)?;
    let diag = build_p(x, y, f, &base, StageVariant::Diagonal)?;
    let direct = p_comparison(&full, &diag)?;
    let top_to_full = p_comparison(stages.last().expect("nonempty"), &full)?;
    let mut composite = SSetMap::identity(&stages.last().expect("nonempty").p.object);
    for s in steps.iter().rev() {
        composite = s.after(&composite);
    }
    let bottom_to_diag = p_comparison(&stages[0], &diag)?;
    let composite_agrees = top_to_full.is_isomorphism(&full.p.object)
        && bottom_to_diag.is_isomorphism(&diag.p.object)
        && bottom_to_diag.after(&composite) == direct.after(&top_to_full);
    Ok(Tower { stages, steps, direct, composite_agrees })
}

#[derive(Clone, Debug, Serialize)]
pub struct PrimeStageVerdict {
    pub arity: usize,
    pub k: usize,
    pub i: i64,
    pub isomorphism: bool,
    pub primed_counts: Vec<usize>,
    pub stage_counts: Vec<usize>,
    pub limits_restrict_isomorphically: bool,
    pub cofinal: bool,
    /// Terminal objects of the overcategories at objects of `S_{i+1}`.
    pub witnesses: Vec<(String, Option<String>)>,
}

fn inclusion_functor<'a>(small: &'a FinCat, big: &'a FinCat, small_objs: &[MultiMap], big_objs: &[MultiMap]) -> Result<Functor<'a>> {
    let objects = small_objs
        .iter()
        .map(|u| big_objs.iter().position(|v| v == u).ok_or_else(|| Error::Category("not a subcategory".into())))
        .collect::<Result<Vec<_>>>()?;
    Functor::from_generators(small, big, objects.clone(), |g| {
        big.find(objects[small.src(g)], objects[small.tgt(g)], small.label(g).expect("labelled")).expect("full subcategory")
    })
}

/// `P'_{i+1} -> P_i` is an isomorphism, with both limits computed
/// independently, and `C_i ⊂ C'_{i+1}` is left cofinal.
pub fn check_prime_stage_iso(
    x: &MultiCosimplicial,
    y: &MultiCosimplicial,
    f: &CosimplicialMap,
    k: usize,
    i: i64,
) -> Result<PrimeStageVerdict> {
    let base = vec![k; x.arity()];
    let primed = build_p(x, y, f, &base, StageVariant::Primed(i + 1))?;
    let stage = build_p(x, y, f, &base, StageVariant::Stage(i))?;
    let map = p_comparison(&primed, &stage)?;
    let isomorphism = map.is_isomorphism(&stage.p.object);
    let restrict = |big: &MatchingObject, small: &MatchingObject| -> Result<bool> {
        let obj_map: Vec<usize> = small.objects.iter().map(|u| big.position(u).expect("nested")).collect();
        Ok(big.limit.restriction_to(&small.limit, &obj_map)?.is_isomorphism(small.object()))
    };
    let limits_restrict_isomorphically =
        restrict(&primed.matching_x, &stage.matching_x)? && restrict(&primed.matching_y, &stage.matching_y)?;
    let fun = inclusion_functor(&stage.matching_x.shape, &primed.matching_x.shape, &stage.matching_x.objects, &primed.matching_x.objects)?;
    let verdict = is_left_cofinal(&fun)?;
    let (s_new, _) = split_new_objects(x.arity(), k, i)?;
    let witnesses = s_new
        .iter()
        .map(|o| {
            let pos = primed.matching_x.position(&o.map).expect("S lies in C'");
            (format!("{:?}", o.map), verdict.reports[pos].terminal.clone())
        })
        .collect();
    Ok(PrimeStageVerdict {
        arity: x.arity(),
        k,
        i,
        isomorphism,
        primed_counts: primed.p.object.counts().to_vec(),
        stage_counts: stage.p.object.counts().to_vec(),
        limits_restrict_isomorphically,
        cofinal: verdict.cofinal,
        witnesses,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct StageCofinality {
    pub arity: usize,
    pub k: usize,
    pub i: i64,
    pub cofinal: bool,
    /// Objects of `S_{i+1}` with a terminal object of their overcategory.
    pub witnesses: Vec<(String, Option<String>)>,
    pub reports: Vec<crate::diagrams::OverReport>,
}

/// `C_i ⊂ C'_{i+1}` is left cofinal, by overcategories in the matching
/// category alone.
pub fn stage_cofinality(n: usize, k: usize, i: i64) -> Result<StageCofinality> {
    let (big, big_objs) = labelled_under_poset(stage_objects(n, k, StageVariant::Primed(i + 1))?);
    let (small, small_objs) = labelled_under_poset(stage_objects(n, k, StageVariant::Stage(i))?);
    let fun = inclusion_functor(&small, &big, &small_objs, &big_objs)?;
    let verdict = is_left_cofinal(&fun)?;
    let (s_new, _) = split_new_objects(n, k, i)?;
    let witnesses = s_new
        .iter()
        .map(|o| {
            let pos = big_objs.iter().position(|u| u == &o.map).expect("S lies in C'");
            (format!("{:?}", o.map), verdict.reports[pos].terminal.clone())
        })
        .collect();
    Ok(StageCofinality { arity: n, k, i, cofinal: verdict.cofinal, witnesses, reports: verdict.reports })
}

#[derive(Clone, Debug, Serialize)]
pub struct PullbackSquareVerdict {
    pub arity: usize,
    pub k: usize,
    pub i: i64,
    pub t_size: usize,
    pub commutes: bool,
    pub injective: bool,
    /// Simplices of `lim_{C_{i+1}} X` per dimension.
    pub limit_counts: Vec<usize>,
    /// Simplices of the pullback per dimension, counted fibrewise.
    pub pullback_counts: Vec<usize>,
    pub holds: bool,
}

/// `lim_{C_{i+1}} X` is the pullback of `lim_{C'_{i+1}} X -> ∏_T M_p X <- ∏_T X_p`.
/// Checked element-wise: the canonical map commutes with both legs, is
/// injective, and hits as many simplices as the pullback has, counted as
/// `Σ_{l'} ∏_t |fibre of the matching map over v_t(l')|`.
pub fn check_pullback_square(x: &MultiCosimplicial, k: usize, i: i64) -> Result<PullbackSquareVerdict> {
    let n = x.arity();
    let base = vec![k; n];
    let (_, t_objs) = split_new_objects(n, k, i)?;
    let whole = matching_at(x, &base, Some(stage_objects(n, k, StageVariant::Stage(i + 1))?))?;
    let primed = matching_at(x, &base, Some(stage_objects(n, k, StageVariant::Primed(i + 1))?))?;
    let obj_map: Vec<usize> = primed.objects.iter().map(|u| whole.position(u).expect("C' ⊂ C")).collect();
    let s = whole.limit.restriction_to(&primed.limit, &obj_map)?;
    let mut u_maps = Vec::new();
    let mut v_maps = Vec::new();
    let mut matchings = Vec::new();
    for t in &t_objs {
        let p = t.map.cod();
        let m = matching_at(x, &p, None)?;
        let legs = m
            .objects
            .iter()
            .map(|w| {
                let composite = w.after(&t.map)?;
                primed
                    .position(&composite)
                    .map(|o| primed.limit.projections[o].clone())
                    .ok_or_else(|| Error::Category("matching object of an element of T is not in C'".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        v_maps.push(m.limit.induced_map(primed.object(), &legs.iter().collect::<Vec<_>>())?);
        u_maps.push(whole.limit.projections[whole.position(&t.map).expect("T ⊂ C")].clone());
        matchings.push(m);
    }
    let cap = x.cap();
    let (mut commutes, mut injective) = (true, true);
    let mut limit_counts = Vec::with_capacity(cap + 1);
    let mut pullback_counts = Vec::with_capacity(cap + 1);
    for m in 0..=cap {
        let mut fibres: Vec<HashMap<u32, usize>> = vec![HashMap::new(); t_objs.len()];
        for (t, mo) in matchings.iter().enumerate() {
            for &z in mo.map.table(m) {
                *fibres[t].entry(z).or_insert(0) += 1;
            }
        }
        let expected: usize = (0..primed.object().count(m))
            .map(|l| (0..t_objs.len()).map(|t| fibres[t].get(&(v_maps[t].table(m)[l])).copied().unwrap_or(0)).product::<usize>())
            .sum();
        let mut seen = std::collections::HashSet::new();
        for l in 0..whole.object().count(m) {
            let sl = s.apply(m, l);
            let mut key = vec![sl as u32];
            for t in 0..t_objs.len() {
                let ul = u_maps[t].apply(m, l);
                if matchings[t].map.apply(m, ul) != v_maps[t].apply(m, sl) {
                    commutes = false;
                }
                key.push(ul as u32);
            }
            injective &= seen.insert(key);
        }
        limit_counts.push(whole.object().count(m));
        pullback_counts.push(expected);
    }
    let holds = commutes && injective && limit_counts == pullback_counts;
    Ok(PullbackSquareVerdict { arity: n, k, i, t_size: t_objs.len(), commutes, injective, limit_counts, pullback_counts, holds })
}

#[cfg(test)]
mod tests {
    use super::super::{terminal, CosimplicialMap, MultiCosimplicial};
    use super::*;
    use crate::sset::standard_simplex;

    #[test]
    fn small_matching_objects() {
        let d1 = MultiCosimplicial::standard(1, 2, 2).unwrap();
        let m0 = matching_object(&d1, 0).unwrap();
        assert_eq!(m0.object(), &TruncSSet::point(2));
        let m1 = matching_object(&d1, 1).unwrap();
        assert_eq!(m1.object(), &standard_simplex(0, 2));
        assert!(matches!(matching_object(&d1, 3), Err(Error::OutOfRange { .. })));
        let d2 = MultiCosimplicial::standard(2, 1, 2).unwrap();
        let m = matching_object(&d2, 1).unwrap();
        assert_eq!(m.objects.len(), 3);
        // three objects over the cospan Δ[1]x Δ[0] -> Δ[0] x Δ[0] <- Δ[0] x Δ[1]
        assert_eq!(m.object().count(0), 4);
    }

    #[test]
    fn p_over_terminal_is_matching_object() {
        let x = MultiCosimplicial::standard(2, 1, 1).unwrap();
        let t = terminal(2, 1, 1).unwrap();
        let f = CosimplicialMap::to_terminal(&x);
        let data = build_p(&x, &t, &f, &[1, 1], StageVariant::Full).unwrap();
        assert_eq!(data.p.object.counts(), data.matching_x.object().counts());
        let low = build_p(&x, &t, &f, &[1, 1], StageVariant::Stage(-1)).unwrap();
        let diag = build_p(&x, &t, &f, &[1, 1], StageVariant::Diagonal).unwrap();
        assert_eq!(low.p.object, diag.p.object);
        let top = build_p(&x, &t, &f, &[1, 1], StageVariant::Stage(1)).unwrap();
        assert_eq!(top.p.object, data.p.object);
    }

    #[test]
    fn prime_stage_isomorphisms_and_tower() {
        let x = MultiCosimplicial::standard(2, 2, 2).unwrap();
        let t = terminal(2, 2, 2).unwrap();
        let f = CosimplicialMap::to_terminal(&x);
        for k in 1..=2 {
            for i in -1..=(2 * k as i64 - 2) {
                let v = check_prime_stage_iso(&x, &t, &f, k, i).unwrap();
                assert!(v.isomorphism && v.cofinal && v.limits_restrict_isomorphically, "{v:?}");
                assert!(v.witnesses.iter().all(|(_, w)| w.is_some()));
            }
            assert!(tower(&x, &t, &f, k).unwrap().composite_agrees);
        }
    }

    #[test]
    fn pullback_squares() {
        let x = MultiCosimplicial::standard(2, 2, 2).unwrap();
        let v = check_pullback_square(&x, 1, 0).unwrap();
        assert_eq!(v.t_size, 2);
        assert!(v.holds, "{v:?}");
        for i in -1..=2 {
            let v = check_pullback_square(&x, 2, i).unwrap();
            assert!(v.holds, "{v:?}");
        }
    }
}
