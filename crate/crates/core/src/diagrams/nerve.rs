use std::collections::HashMap;

use serde::Serialize;
use smallvec::SmallVec;

use super::fincat::{FinCat, Generators, MorId, ObjId};
use crate::delta::MonotoneMap;
use crate::error::{Error, Result};
use crate::sset::{betti, BettiProfile, TruncSSet};
use crate::unionfind::DisjointSets;

/// A chain `a_0 -> a_1 -> .. -> a_m`, stored as `[a_0, f_1, .., f_m]`.
pub type Chain = SmallVec<[u32; 6]>;

/// The nerve of `c` in dimensions `0..=cap`.
pub fn nerve(c: &FinCat, cap: usize) -> TruncSSet {
    nerve_with_chains(c, cap).0
}

/// The nerve together with the chain behind every simplex, in simplex order.
pub fn nerve_with_chains(c: &FinCat, cap: usize) -> (TruncSSet, Vec<Vec<Chain>>) {
    let mut simplices: Vec<Vec<Chain>> = Vec::with_capacity(cap + 1);
    simplices.push((0..c.num_objects()).map(|o| Chain::from_slice(&[o as u32])).collect());
    for m in 1..=cap {
        let mut next = Vec::new();
        for ch in &simplices[m - 1] {
            let end = chain_vertex(c, ch, m - 1);
            for &f in c.out_morphisms(end) {
                let mut longer = ch.clone();
                longer.push(f as u32);
                next.push(longer);
            }
        }
        simplices.push(next);
    }
    let x = TruncSSet::from_action(cap, simplices.clone(), |ch, th| act(c, ch, th)).expect("nerve satisfies the simplicial identities");
    (x, simplices)
}

/// The `j`-th object of a chain.
pub fn chain_vertex(c: &FinCat, ch: &Chain, j: usize) -> ObjId {
    if j == 0 {
        ch[0] as ObjId
    } else {
        c.tgt(ch[j] as MorId)
    }
}

fn act(c: &FinCat, ch: &Chain, th: &MonotoneMap) -> Chain {
    let mut out = Chain::new();
    out.push(chain_vertex(c, ch, th.apply(0)) as u32);
    for j in 1..=th.dom() {
        let (lo, hi) = (th.apply(j - 1), th.apply(j));
        let mut f = c.identity(chain_vertex(c, ch, lo));
        for step in lo + 1..=hi {
            f = c.compose(ch[step] as MorId, f).expect("chain is composable");
        }
        out.push(f as u32);
    }
    out
}

/// The overcategory `(F ↓ α)` of a functor `F: small -> big`: objects `(s, f: F s -> α)`, morphisms `u: s -> s'`
/// with `f' ∘ F u = f`.
#[derive(Clone, Debug)]
pub struct Overcategory {
    pub category: FinCat,
    pub objects: Vec<(ObjId, MorId)>,
    /// Underlying morphism of `small` for every morphism.
    pub underlying: Vec<MorId>,
}

/// A functor between finite categories, on objects and on all morphisms.
#[derive(Clone, Debug)]
pub struct Functor<'a> {
    pub source: &'a FinCat,
    pub target: &'a FinCat,
    pub objects: Vec<ObjId>,
    pub morphisms: Vec<MorId>,
}

impl<'a> Functor<'a> {
    /// Extends the image of generators along factorizations.
    pub fn from_generators(source: &'a FinCat, target: &'a FinCat, objects: Vec<ObjId>, on_generator: impl Fn(MorId) -> MorId) -> Result<Self> {
        let gen: HashMap<MorId, MorId> = source.generators().iter().map(|&g| (g, on_generator(g))).collect();
        let mut morphisms = Vec::with_capacity(source.num_morphisms());
        for f in 0..source.num_morphisms() {
            let mut acc = target.identity(objects[source.src(f)]);
            for g in source.factorization(f) {
                acc = target
                    .compose(gen[&g], acc)
                    .ok_or_else(|| Error::NotFunctorial(format!("image of generator {g} does not compose")))?;
            }
            morphisms.push(acc);
        }
        let fun = Self { source, target, objects, morphisms };
        fun.check()?;
        Ok(fun)
    }

    /// The inclusion of a full subcategory built by [`FinCat::full_subcategory`].
    pub fn inclusion(source: &'a FinCat, target: &'a FinCat, objects: Vec<ObjId>, ambient: &[MorId]) -> Result<Self> {
        let fun = Self { source, target, objects, morphisms: ambient.to_vec() };
        fun.check()?;
        Ok(fun)
    }

    pub fn identity(c: &'a FinCat) -> Self {
        Self { source: c, target: c, objects: (0..c.num_objects()).collect(), morphisms: (0..c.num_morphisms()).collect() }
    }

    fn check(&self) -> Result<()> {
        let (s, t) = (self.source, self.target);
        for f in 0..s.num_morphisms() {
            let g = self.morphisms[f];
            if t.src(g) != self.objects[s.src(f)] || t.tgt(g) != self.objects[s.tgt(f)] {
                return Err(Error::NotFunctorial(format!("morphism {f} sent to a morphism with wrong ends")));
            }
        }
        for f in 0..s.num_morphisms() {
            for &g in s.out_morphisms(s.tgt(f)) {
                let h = s.compose(g, f).expect("composable");
                if t.compose(self.morphisms[g], self.morphisms[f]) != Some(self.morphisms[h]) {
                    return Err(Error::NotFunctorial(format!("composite of {g} and {f} not preserved")));
                }
            }
        }
        Ok(())
    }
}

pub fn overcategory(fun: &Functor, alpha: ObjId) -> Result<Overcategory> {
    let (small, big) = (fun.source, fun.target);
    let mut objects = Vec::new();
    let mut index: HashMap<(ObjId, MorId), ObjId> = HashMap::new();
    for s in 0..small.num_objects() {
        for f in big.hom(fun.objects[s], alpha) {
            index.insert((s, f), objects.len());
            objects.push((s, f));
        }
    }
    if small.is_opposite() {
        return Err(Error::Category("overcategory of an opposite category".into()));
    }
    let gens: std::collections::HashSet<MorId> = small.generators().iter().copied().collect();
    let mut ends = Vec::new();
    let mut underlying = Vec::new();
    let mut generator_ids = Vec::new();
    for (b, &(sb, fb)) in objects.iter().enumerate() {
        for &u in small.in_morphisms(sb) {
            let f = big.compose(fb, fun.morphisms[u]).expect("composable");
            if gens.contains(&u) {
                generator_ids.push(ends.len());
            }
            ends.push((index[&(small.src(u), f)], b));
            underlying.push(u);
        }
    }
    let names = objects.iter().map(|&(s, f)| format!("{} -> {} ({f})", small.name(s), big.name(alpha))).collect();
    let generators = Generators::Explicit(generator_ids);
    let category = if small.label(0).is_some() || small.num_morphisms() == 0 {
        let mors = ends.iter().zip(&underlying).map(|(&(a, b), &u)| (a, b, small.label(u).expect("labelled").clone())).collect();
        FinCat::from_labels(names, mors, generators)?
    } else {
        // composites lie over composites of the underlying morphisms
        let mut by_ends: HashMap<(ObjId, ObjId, MorId), MorId> = HashMap::new();
        for (m, (&(a, b), &u)) in ends.iter().zip(&underlying).enumerate() {
            by_ends.insert((a, b, u), m);
        }
        let mut identity = vec![0; objects.len()];
        let mut table = HashMap::new();
        for (m1, (&(a, b), &u1)) in ends.iter().zip(&underlying).enumerate() {
            if small.is_identity(u1) {
                identity[a] = m1;
            }
            for (m2, (&(b2, c), &u2)) in ends.iter().zip(&underlying).enumerate() {
                if b2 == b {
                    let u = small.compose(u2, u1).expect("composable");
                    table.insert((m2, m1), by_ends[&(a, c, u)]);
                }
            }
        }
        FinCat::from_table(names, ends, identity, table, generators)?
    };
    Ok(Overcategory { category, objects, underlying })
}

/// Per-target outcome of a cofinality check.
#[derive(Clone, Debug, Serialize)]
pub struct OverReport {
    pub target: String,
    pub objects: usize,
    pub components: usize,
    /// A terminal object of the overcategory, when one exists.
    pub terminal: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CofinalityVerdict {
    pub cofinal: bool,
    pub reports: Vec<OverReport>,
}

/// An object receiving exactly one morphism from every object.
pub fn terminal_object(c: &FinCat) -> Option<ObjId> {
    (0..c.num_objects()).find(|&t| {
        let mut seen = vec![0usize; c.num_objects()];
        for &f in c.in_morphisms(t) {
            seen[c.src(f)] += 1;
        }
        seen.iter().all(|&k| k == 1)
    })
}

/// Left cofinality: every overcategory `(F ↓ α)` is nonempty and connected.
/// Terminal objects are looked for first and reported as witnesses.
pub fn is_left_cofinal(fun: &Functor) -> Result<CofinalityVerdict> {
    let mut reports = Vec::with_capacity(fun.target.num_objects());
    for alpha in 0..fun.target.num_objects() {
        let over = overcategory(fun, alpha)?;
        let c = &over.category;
        let terminal = terminal_object(c);
        let components = if terminal.is_some() {
            1
        } else {
            let mut ds = DisjointSets::new(c.num_objects());
            for &g in c.generators() {
                ds.union(c.src(g), c.tgt(g));
            }
            ds.labels().0
        };
        reports.push(OverReport {
            target: fun.target.name(alpha).to_string(),
            objects: c.num_objects(),
            components,
            terminal: terminal.map(|t| c.name(t).to_string()),
        });
    }
    let cofinal = reports.iter().all(|r| r.components == 1);
    Ok(CofinalityVerdict { cofinal, reports })
}

#[derive(Clone, Debug, Serialize, serde::Deserialize)]
pub struct HomotopyReport {
    pub target: String,
    pub nerve_counts: Vec<usize>,
    pub betti: BettiProfile,
    pub has_terminal: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct HomotopyCofinalityVerdict {
    pub cap: usize,
    pub holds: bool,
    pub reports: Vec<HomotopyReport>,
}

/// Contractibility proxy: every overcategory nerve, truncated at `cap`, is
/// connected with vanishing reduced Betti numbers below `cap`.
pub fn is_homotopy_left_cofinal_proxy(fun: &Functor, cap: usize) -> Result<HomotopyCofinalityVerdict> {
    let mut reports = Vec::new();
    for alpha in 0..fun.target.num_objects() {
        let over = overcategory(fun, alpha)?;
        reports.push(nerve_report(fun.target.name(alpha), &over.category, cap));
    }
    let holds = reports.iter().all(|r| r.betti.is_acyclic());
    Ok(HomotopyCofinalityVerdict { cap, holds, reports })
}

pub fn nerve_report(target: &str, c: &FinCat, cap: usize) -> HomotopyReport {
    let n = nerve(c, cap);
    HomotopyReport {
        target: target.to_string(),
        nerve_counts: n.counts().to_vec(),
        betti: betti(&n),
        has_terminal: terminal_object(c).is_some(),
    }
}

/// Outcome of comparing `(∏ C_i) ↓ α` with `∏ (C_i ↓ α_i)`.
#[derive(Clone, Debug, Serialize)]
pub struct ProductOverVerdict {
    pub objects: usize,
    pub morphisms: usize,
    pub isomorphic: bool,
    pub nerve_counts: (Vec<usize>, Vec<usize>),
}

/// Builds both sides over labelled covariant factors and checks the
/// canonical bijection on objects and morphisms, then compares nerves.
pub fn overcategory_product_iso(cats: &[&FinCat], alpha: &[ObjId], cap: usize) -> Result<ProductOverVerdict> {
    if cats.len() != alpha.len() || cats.is_empty() {
        return Err(Error::Category("one target object per factor required".into()));
    }
    let prod = super::shapes::product(cats)?;
    let sizes: Vec<usize> = cats.iter().map(|c| c.num_objects()).collect();
    let encode = |parts: &[usize], sizes: &[usize]| parts.iter().zip(sizes).fold(0, |acc, (&p, &s)| acc * s + p);
    let whole = overcategory(&Functor::identity(&prod), encode(alpha, &sizes))?;
    let overs: Vec<Overcategory> = cats
        .iter()
        .zip(alpha)
        .map(|(c, &a)| overcategory(&Functor::identity(c), a))
        .collect::<Result<_>>()?;
    let over_cats: Vec<&FinCat> = overs.iter().map(|o| &o.category).collect();
    let right = super::shapes::product(&over_cats)?;
    let over_sizes: Vec<usize> = overs.iter().map(|o| o.objects.len()).collect();
    let arities: Vec<usize> = cats.iter().map(|c| c.label(c.identity(0)).map_or(0, |l| l.arity())).collect();
    // an object (s, f) of the left side corresponds to the tuple of (s_i, f_i)
    let mut obj_map = Vec::with_capacity(whole.objects.len());
    for &(s, f) in &whole.objects {
        let label = prod.label(f).expect("labelled");
        let s_parts = decode(s, &sizes);
        let mut parts = Vec::with_capacity(cats.len());
        let mut offset = 0;
        for (i, c) in cats.iter().enumerate() {
            let share = crate::MultiMap::new(label.components()[offset..offset + arities[i]].to_vec());
            offset += arities[i];
            let fi = c.find(s_parts[i], alpha[i], &share).ok_or_else(|| Error::Category("factor morphism missing".into()))?;
            let o = overs[i].objects.iter().position(|&(a, b)| a == s_parts[i] && b == fi).expect("object present");
            parts.push(o);
        }
        obj_map.push(encode(&parts, &over_sizes));
    }
    let mut bijective = obj_map.len() == right.num_objects();
    let mut hit = vec![false; right.num_objects()];
    for &o in &obj_map {
        bijective &= !std::mem::replace(&mut hit[o], true);
    }
    if bijective {
        for f in 0..whole.category.num_morphisms() {
            let (a, b) = (obj_map[whole.category.src(f)], obj_map[whole.category.tgt(f)]);
            let label = whole.category.label(f).expect("labelled");
            if right.find(a, b, label).is_none() {
                bijective = false;
                break;
            }
        }
        bijective &= whole.category.num_morphisms() == right.num_morphisms();
    }
    let left_counts = nerve(&whole.category, cap).counts().to_vec();
    let right_counts = nerve(&right, cap).counts().to_vec();
    let isomorphic = bijective && left_counts == right_counts;
    Ok(ProductOverVerdict {
        objects: whole.objects.len(),
        morphisms: whole.category.num_morphisms(),
        isomorphic,
        nerve_counts: (left_counts, right_counts),
    })
}

fn decode(mut o: usize, sizes: &[usize]) -> Vec<usize> {
    let mut parts = vec![0; sizes.len()];
    for (slot, &s) in parts.iter_mut().zip(sizes).rev() {
        *slot = o % s;
        o /= s;
    }
    parts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::shapes::{delta_power, delta_trunc, diagonal_overcategory};
    use crate::sset::standard_simplex;

    fn poset_one() -> FinCat {
        FinCat::from_table(vec!["0".into(), "1".into()], vec![(0, 0), (1, 1), (0, 1)], vec![0, 1], HashMap::new(), Generators::AllNonIdentity)
            .unwrap()
    }

    #[test]
    fn small_nerves() {
        let one = FinCat::from_table(vec!["*".into()], vec![(0, 0)], vec![0], HashMap::new(), Generators::AllNonIdentity).unwrap();
        assert_eq!(nerve(&one, 3), TruncSSet::point(3));
        let p = nerve(&poset_one(), 3);
        assert_eq!(p.counts(), standard_simplex(1, 3).counts());
        assert_eq!(p.nondegenerate_counts(), vec![2, 1, 0, 0]);
    }

    #[test]
    fn over_delta_is_contractible() {
        let d = delta_trunc(2);
        let over = overcategory(&Functor::identity(&d), 1).unwrap();
        assert!(terminal_object(&over.category).is_some());
        let r = nerve_report("[1]", &over.category, 2);
        assert!(r.betti.is_acyclic());
    }

    #[test]
    fn diagonal_overcategories_are_acyclic() {
        for p in [[1, 1], [1, 2]] {
            let (c, _) = diagonal_overcategory(&p, 2);
            let r = nerve_report("p", &c, 2);
            assert_eq!(r.betti.betti, vec![0, 0]);
            assert_eq!(r.betti.components, 1);
        }
    }

    #[test]
    fn generic_overcategory_matches_diagonal_shape() {
        let small = delta_trunc(2);
        let big = delta_power(2, 2);
        let objects: Vec<ObjId> = (0..3).map(|k| crate::diagrams::shapes::power_index(2, &[k, k])).collect();
        let fun = Functor::from_generators(&small, &big, objects.clone(), |g| {
            let l = small.label(g).unwrap().component(0);
            let (a, b) = (objects[small.src(g)], objects[small.tgt(g)]);
            big.find(a, b, &crate::delta::diagonal_embed(l, 2)).unwrap()
        })
        .unwrap();
        let alpha = crate::diagrams::shapes::power_index(2, &[1, 2]);
        let over = overcategory(&fun, alpha).unwrap();
        let (direct, _) = diagonal_overcategory(&[1, 2], 2);
        assert_eq!(over.category.num_objects(), direct.num_objects());
        assert_eq!(over.category.num_morphisms(), direct.num_morphisms());
        assert_eq!(nerve(&over.category, 2).counts(), nerve(&direct, 2).counts());
    }

    #[test]
    fn identity_is_cofinal_and_discrete_pair_is_not() {
        let d = delta_trunc(1);
        let v = is_left_cofinal(&Functor::identity(&d)).unwrap();
        assert!(v.cofinal);
        assert!(v.reports.iter().all(|r| r.terminal.is_some()));
        // cospan a -> c <- b, discrete {a, b} inside it
        let names = vec!["a".into(), "b".into(), "c".into()];
        let mors = vec![(0, 0), (1, 1), (2, 2), (0, 2), (1, 2)];
        let cospan = FinCat::from_table(names, mors, vec![0, 1, 2], HashMap::new(), Generators::AllNonIdentity).unwrap();
        let (disc, ambient) = cospan.full_subcategory(&[0, 1], Generators::AllNonIdentity).unwrap();
        let fun = Functor::inclusion(&disc, &cospan, vec![0, 1], &ambient).unwrap();
        let v = is_left_cofinal(&fun).unwrap();
        assert!(!v.cofinal);
        assert_eq!(v.reports[2].components, 2);
        assert!(v.reports[0].terminal.is_some());
    }

    #[test]
    fn product_overcategory_iso() {
        let d = delta_trunc(2);
        let v = overcategory_product_iso(&[&d], &[1], 2).unwrap();
        assert!(v.isomorphic);
        let v = overcategory_product_iso(&[&d, &d], &[1, 1], 2).unwrap();
        assert!(v.isomorphic, "{v:?}");
        assert_eq!(v.nerve_counts.0, v.nerve_counts.1);
    }
}
