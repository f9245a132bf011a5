//! The degreewise 0-skeleton of the cosimplicial standard simplex, its
//! left Kan extension to bicosimplicial objects and the object constant in
//! the second index. Their path components at `(1,1)` differ.

use serde::Serialize;

use crate::cosimplicial::{diagonal, latching_map, zero_skeleton_degreewise, CosimplicialMap, MultiCosimplicial};
use crate::delta::MultiMap;
use crate::diagrams::shapes::power_degrees;
use crate::error::{out_of_range, Result};
use crate::kan_tot::{cosimplicial_standard, left_kan_extend, multi_standard, KanExtension};
use crate::sset::{path_components, product_index, standard_simplex, SSetMap, TruncSSet};

#[derive(Clone, Debug)]
pub struct CounterexampleBundle {
    pub x: MultiCosimplicial,
    pub w: MultiCosimplicial,
    pub lx: KanExtension,
    pub report: CounterexampleReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct CounterexampleReport {
    pub trunc: usize,
    pub cap: usize,
    pub pi0_lx_11: usize,
    pub pi0_w_11: usize,
    /// Every value of the Kan extension is discrete.
    pub lx_discrete: bool,
    /// The identity components form a map `X -> diag W`.
    pub x_is_diagonal_of_w: bool,
    /// The Kan extension agrees with the degreewise 0-skeleton of `Δ^(2)`.
    pub lx_is_skeleton_of_product: bool,
}

/// `W^(p,q) = X^p`.
pub fn constant_in_second_index(x: &MultiCosimplicial) -> Result<MultiCosimplicial> {
    MultiCosimplicial::new(
        2,
        x.trunc(),
        x.cap(),
        |d| x.value(&d[..1]).clone(),
        |u| x.structure_map(&MultiMap::single(u.component(0).clone())).expect("within truncation"),
    )
}

pub fn build_counterexample(trunc: usize, cap: usize) -> Result<CounterexampleBundle> {
    if trunc < 1 || cap < 1 {
        return Err(out_of_range("truncation", trunc.min(cap) as i64, "at least 1"));
    }
    let x = zero_skeleton_degreewise(&cosimplicial_standard(trunc, cap)?)?;
    let w = constant_in_second_index(&x)?;
    let lx = left_kan_extend(&x, 2)?;
    let lx_discrete = lx.colimits.iter().all(|c| c.object.is_discrete());
    let pi0_lx_11 = path_components(lx.object.value(&[1, 1])).count;
    let pi0_w_11 = path_components(w.value(&[1, 1])).count;
    let x_is_diagonal_of_w = CosimplicialMap::identity(&x).check(&x, &diagonal(&w)?).is_ok();
    let lx_is_skeleton_of_product = matches_skeleton(&lx, trunc, cap)?;
    let report = CounterexampleReport { trunc, cap, pi0_lx_11, pi0_w_11, lx_discrete, x_is_diagonal_of_w, lx_is_skeleton_of_product };
    Ok(CounterexampleBundle { x, w, lx, report })
}

/// Compares `L X` with `(Δ^(2))⁰` through the cocone sending a vertex `v`
/// of `Δ[k]` over `m: [k]² -> [p⃗]` to the vertex `(m₁ v, m₂ v)`.
fn matches_skeleton(lx: &KanExtension, trunc: usize, cap: usize) -> Result<bool> {
    let z = zero_skeleton_degreewise(&multi_standard(2, trunc, cap)?)?;
    let shape = z.shape();
    let mut comparisons = Vec::new();
    for o in 0..shape.num_objects() {
        let p = power_degrees(2, trunc, o);
        let factors: Vec<TruncSSet> = p.iter().map(|&pi| standard_simplex(pi, cap)).collect();
        let refs: Vec<&TruncSSet> = factors.iter().collect();
        let target = z.value(&p);
        let cmp = lx.induced_from_cocone(o, target, |k, m| {
            let src = TruncSSet::discrete(k + 1, cap);
            SSetMap::from_fn(&src, target, |_, v| {
                let parts: Vec<usize> = m.components().iter().map(|mi| mi.apply(v)).collect();
                product_index(&refs, 0, &parts)
            })
            .expect("maps of discrete sets")
        })?;
        if !cmp.is_isomorphism(target) {
            return Ok(false);
        }
        comparisons.push(cmp);
    }
    Ok(shape.generators().iter().all(|&g| {
        let (a, b) = (shape.src(g), shape.tgt(g));
        comparisons[b].after(lx.object.diagram().generator_map(g)) == z.diagram().generator_map(g).after(&comparisons[a])
    }))
}

#[derive(Clone, Debug, Serialize)]
pub struct CofibrancyCertificate {
    /// Latching map counts and injectivity per degree.
    pub latching: Vec<(usize, Vec<usize>, bool)>,
    /// Simplices of `X⁰` on which the two cofaces into `X¹` agree.
    pub coface_equalizer: usize,
    pub holds: bool,
}

/// Latching maps of a cosimplicial object are injective in every degree,
/// and the two cofaces out of degree 0 agree nowhere.
pub fn cofibrancy_certificate(x: &MultiCosimplicial) -> Result<CofibrancyCertificate> {
    let mut latching = Vec::new();
    for k in 0..=x.trunc() {
        let l = latching_map(x, &[k])?;
        latching.push((k, l.object.counts().to_vec(), l.injective));
    }
    let coface_equalizer = if x.trunc() >= 1 {
        let d0 = x.structure_map(&MultiMap::single(crate::delta::MonotoneMap::coface(1, 0)))?;
        let d1 = x.structure_map(&MultiMap::single(crate::delta::MonotoneMap::coface(1, 1)))?;
        let x0 = x.value(&[0]);
        (0..=x.cap()).map(|m| (0..x0.count(m)).filter(|&s| d0.apply(m, s) == d1.apply(m, s)).count()).sum()
    } else {
        0
    };
    let holds = latching.iter().all(|l| l.2) && coface_equalizer == 0;
    Ok(CofibrancyCertificate { latching, coface_equalizer, holds })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn component_counts() {
        let b = build_counterexample(1, 1).unwrap();
        let r = &b.report;
        assert_eq!((r.pi0_lx_11, r.pi0_w_11), (4, 2));
        assert!(r.lx_discrete && r.x_is_diagonal_of_w && r.lx_is_skeleton_of_product);
        let b = build_counterexample(2, 2).unwrap();
        assert_eq!((b.report.pi0_lx_11, b.report.pi0_w_11), (4, 2));
        assert!(b.report.lx_is_skeleton_of_product);
    }

    #[test]
    fn skeleton_is_cofibrant() {
        let b = build_counterexample(2, 2).unwrap();
        let c = cofibrancy_certificate(&b.x).unwrap();
        assert!(c.holds, "{c:?}");
        assert_eq!(c.latching[0].1, vec![0, 0, 0]);
        assert_eq!(c.latching[1].1[0], 2);
    }
}
