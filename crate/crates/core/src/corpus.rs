//! Test objects: standard simplices and their skeleta, constants at small
//! Kan and non-Kan complexes, and seeded sub/quotient perturbations.

use std::collections::HashMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cosimplicial::{zero_skeleton_degreewise, CosimplicialMap, MultiCosimplicial};
use crate::diagrams::{colimit, Diagram, FinCat, Generators};
use crate::delta::MonotoneMap;
use crate::error::Result;
use crate::sset::{indiscrete, product, product_map, product_with_projections, standard_boundary, standard_simplex, SSetMap, TruncSSet};

pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Clone, Debug)]
pub struct Named<T> {
    pub name: String,
    pub value: T,
}

fn named<T>(name: impl Into<String>, value: T) -> Named<T> {
    Named { name: name.into(), value }
}

/// The subcomplex generated by the given simplices.
pub fn generated_subcomplex(base: &TruncSSet, seeds: &[(usize, usize)]) -> TruncSSet {
    let cap = base.cap();
    let mut keep: Vec<Vec<bool>> = (0..=cap).map(|m| vec![false; base.count(m)]).collect();
    for &(m, x) in seeds {
        keep[m][x] = true;
    }
    for m in (1..=cap).rev() {
        for x in 0..base.count(m) {
            if keep[m][x] {
                for i in 0..=m {
                    keep[m - 1][base.face(m, i, x)] = true;
                }
            }
        }
    }
    for m in 0..cap {
        for x in 0..base.count(m) {
            if keep[m][x] {
                for i in 0..=m {
                    keep[m + 1][base.degen(m, i, x)] = true;
                }
            }
        }
    }
    base.subcomplex(&keep).expect("closed under faces and degeneracies").0
}

/// A random subcomplex keeping every vertex and each nondegenerate simplex
/// of positive dimension with probability one half.
pub fn random_subcomplex(base: &TruncSSet, rng: &mut impl Rng) -> TruncSSet {
    let mut seeds: Vec<(usize, usize)> = (0..base.count(0)).map(|v| (0, v)).collect();
    for m in 1..=base.cap() {
        for (x, nd) in base.nondegenerate(m).into_iter().enumerate() {
            if nd && rng.gen_bool(0.5) {
                seeds.push((m, x));
            }
        }
    }
    generated_subcomplex(base, &seeds)
}

/// The coequalizer of two vertices `Δ[0] ⇉ base`.
pub fn identify_vertices(base: &TruncSSet, a: usize, b: usize) -> Result<TruncSSet> {
    let cap = base.cap();
    let names = vec!["point".to_string(), "base".to_string()];
    let morphisms = vec![(0, 0), (1, 1), (0, 1), (0, 1)];
    let table: HashMap<(usize, usize), usize> =
        [((0, 0), 0), ((1, 1), 1), ((2, 0), 2), ((3, 0), 3), ((1, 2), 2), ((1, 3), 3)].into_iter().collect();
    let shape = Arc::new(FinCat::from_table(names, morphisms, vec![0, 1], table, Generators::AllNonIdentity)?);
    let point = TruncSSet::point(cap);
    let at = |v: usize| SSetMap::from_fn(&point, base, |m, _| base.act(v, &MonotoneMap::constant(m, 0, 0))).expect("constant simplices");
    let d = Diagram::new(shape, vec![Arc::new(point.clone()), Arc::new(base.clone())], |g| at(if g == 2 { a } else { b }), cap)?;
    Ok(colimit(&d)?.object)
}

/// Small simplicial sets: Kan, non-Kan and seeded perturbations.
pub fn sset_corpus(cap: usize, seed: u64) -> Vec<Named<TruncSSet>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let square = product(&[&standard_simplex(1, cap), &standard_simplex(1, cap)]).expect("same caps");
    let mut out = vec![
        named("point", TruncSSet::point(cap)),
        named("discrete(2)", TruncSSet::discrete(2, cap)),
        named("simplex(1)", standard_simplex(1, cap)),
        named("simplex(2)", standard_simplex(2, cap)),
        named("boundary(2)", standard_boundary(2, cap)),
        named("indiscrete(2)", indiscrete(2, cap)),
        named("indiscrete(3)", indiscrete(3, cap)),
    ];
    for i in 0..2 {
        let base = if i == 0 { standard_simplex(2, cap) } else { square.clone() };
        out.push(named(format!("sub(seed {seed}, #{i})"), random_subcomplex(&base, &mut rng)));
    }
    let bases = [standard_boundary(2, cap), standard_simplex(2, cap)];
    for (i, base) in bases.iter().enumerate() {
        let mut vs: Vec<usize> = (0..base.count(0)).collect();
        vs.shuffle(&mut rng);
        let q = identify_vertices(base, vs[0], vs[1]).expect("coequalizer of simplicial sets");
        out.push(named(format!("quotient(seed {seed}, #{i})"), q));
    }
    out
}

/// `[p⃗] ↦ X^p⃗ × K`.
pub fn times_constant(x: &MultiCosimplicial, k: &TruncSSet) -> Result<MultiCosimplicial> {
    let id = SSetMap::identity(k);
    x.map_values(
        |a| product(&[a, k]).expect("same caps"),
        |a, b, f, _, _| product_map(&[a, k], &[b, k], &[f, &id]),
    )
}

/// The degreewise `j`-skeleton.
pub fn skeleton_degreewise(x: &MultiCosimplicial, j: usize) -> Result<MultiCosimplicial> {
    x.map_values(
        |a| a.skeleton(j),
        |a, b, f, na, nb| {
            let (_, ia) = a.subcomplex(&a.skeleton_flags(j)).expect("closed");
            let (_, ib) = b.subcomplex(&b.skeleton_flags(j)).expect("closed");
            let back: Vec<HashMap<u32, u32>> =
                ib.tables().iter().map(|t| t.iter().enumerate().map(|(i, &y)| (y, i as u32)).collect()).collect();
            SSetMap::from_fn(na, nb, |m, x| back[m][&(f.apply(m, ia.apply(m, x)) as u32)] as usize).expect("skeleta are functorial")
        },
    )
}

/// Multicosimplicial test objects of the given shape.
pub fn multi_corpus(arity: usize, trunc: usize, cap: usize, seed: u64) -> Result<Vec<Named<MultiCosimplicial>>> {
    let standard = MultiCosimplicial::standard(arity, trunc, cap)?;
    let mut out = vec![
        named("standard", standard.clone()),
        named("standard 0-skeleton", zero_skeleton_degreewise(&standard)?),
        named("standard 1-skeleton", skeleton_degreewise(&standard, 1)?),
        named("standard x discrete(2)", times_constant(&standard, &TruncSSet::discrete(2, cap))?),
    ];
    for k in sset_corpus(cap, seed) {
        if k.name == "indiscrete(3)" {
            continue;
        }
        out.push(named(format!("constant {}", k.name), MultiCosimplicial::constant(arity, trunc, &k.value)?));
    }
    Ok(out)
}

/// A map `f: X -> Y` of multicosimplicial objects.
#[derive(Clone, Debug)]
pub struct MapInstance {
    pub x: MultiCosimplicial,
    pub y: MultiCosimplicial,
    pub f: CosimplicialMap,
}

/// Maps to the terminal object and product projections.
pub fn map_corpus(arity: usize, trunc: usize, cap: usize, seed: u64) -> Result<Vec<Named<MapInstance>>> {
    let objects = multi_corpus(arity, trunc, cap, seed)?;
    let point = crate::cosimplicial::terminal(arity, trunc, cap)?;
    let mut out = Vec::new();
    for o in &objects {
        let f = CosimplicialMap::to_terminal(&o.value);
        out.push(named(format!("{} -> point", o.name), MapInstance { x: o.value.clone(), y: point.clone(), f }));
    }
    let standard = &objects[0].value;
    for o in objects.iter().filter(|o| o.name.starts_with("constant") && o.value.value(&vec![0; arity]).count(0) > 1) {
        let k = o.value.value(&vec![0; arity]).clone();
        let x = times_constant(standard, &k)?;
        let f = CosimplicialMap {
            components: (0..x.shape().num_objects())
                .map(|i| product_with_projections(&[standard.diagram().value(i), &k]).expect("same caps").1.swap_remove(0))
                .collect(),
        };
        out.push(named(format!("standard x {} -> standard", &o.name["constant ".len()..]), MapInstance { x, y: standard.clone(), f }));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::path_components;

    #[test]
    fn seeded_corpus_is_deterministic() {
        let a = sset_corpus(2, 7);
        let b = sset_corpus(2, 7);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.value.counts(), y.value.counts());
            x.value.validate().unwrap();
        }
    }

    #[test]
    fn quotient_identifies_vertices() {
        let q = identify_vertices(&standard_simplex(1, 2), 0, 1).unwrap();
        assert_eq!(q.count(0), 1);
        assert_eq!(q.nondegenerate_counts(), vec![1, 1, 0]);
        assert_eq!(path_components(&q).count, 1);
    }

    #[test]
    fn multi_corpus_is_functorial() {
        let c = multi_corpus(2, 1, 2, DEFAULT_SEED).unwrap();
        assert!(c.len() >= 10);
        for m in map_corpus(2, 1, 2, DEFAULT_SEED).unwrap() {
            m.value.f.check(&m.value.x, &m.value.y).unwrap();
        }
    }
}
