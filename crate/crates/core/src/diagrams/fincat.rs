use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::delta::{MonotoneMap, MultiMap};
use crate::error::{Error, Result};

pub type ObjId = usize;
pub type MorId = usize;

/// How composition is computed.
#[derive(Clone, Debug)]
enum Composer {
    /// Explicit table `(g, f) -> g ∘ f`.
    Table(HashMap<(MorId, MorId), MorId>),
    /// Morphisms carry simplex-category labels and are determined by
    /// `(source, target, label)`. With `op` set, labels compose in reverse.
    Labels { labels: Vec<MultiMap>, lookup: HashMap<(ObjId, ObjId, MultiMap), MorId>, op: bool },
}

/// Which non-identity morphisms form the generating set.
#[derive(Clone, Debug)]
pub enum Generators {
    /// Labels that are a single coface or codegeneracy in one coordinate.
    Elementary,
    /// Morphisms that are not composites of two non-identity morphisms.
    /// These generate only when no identity factors through a non-identity
    /// pair, as in posets.
    Indecomposable,
    AllNonIdentity,
    Explicit(Vec<MorId>),
}

/// An explicit finite category.
#[derive(Clone, Debug)]
pub struct FinCat {
    names: Vec<String>,
    src: Vec<ObjId>,
    tgt: Vec<ObjId>,
    identity: Vec<MorId>,
    out_mors: Vec<Vec<MorId>>,
    in_mors: Vec<Vec<MorId>>,
    generators: Vec<MorId>,
    /// `f = g ∘ prefix` with `g` a generator; `None` for identities.
    factor: Vec<Option<(MorId, MorId)>>,
    composer: Composer,
}

#[derive(Clone, Debug, Serialize)]
pub struct FinCatJson {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismJson>,
    pub compose: Vec<[MorId; 3]>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MorphismJson {
    pub id: MorId,
    pub src: ObjId,
    pub tgt: ObjId,
}

impl FinCat {
    /// Builds from an explicit composition table and checks the axioms.
    pub fn from_table(
        names: Vec<String>,
        morphisms: Vec<(ObjId, ObjId)>,
        identity: Vec<MorId>,
        table: HashMap<(MorId, MorId), MorId>,
        generators: Generators,
    ) -> Result<Self> {
        let mut c = Self::skeleton(names, &morphisms, identity, Composer::Table(table))?;
        c.finish(generators)?;
        c.check_axioms()?;
        Ok(c)
    }

    /// Builds from labelled morphisms; a morphism `a -> b` labelled `u`
    /// must be unique with that label. Identities are the morphisms
    /// `a -> a` with identity label.
    pub fn from_labels(names: Vec<String>, morphisms: Vec<(ObjId, ObjId, MultiMap)>, generators: Generators) -> Result<Self> {
        Self::from_labels_op(names, morphisms, generators, false)
    }

    fn from_labels_op(
        names: Vec<String>,
        morphisms: Vec<(ObjId, ObjId, MultiMap)>,
        generators: Generators,
        op: bool,
    ) -> Result<Self> {
        let mut identity = vec![usize::MAX; names.len()];
        let mut lookup = HashMap::with_capacity(morphisms.len());
        let mut labels = Vec::with_capacity(morphisms.len());
        let mut ends = Vec::with_capacity(morphisms.len());
        for (id, (a, b, u)) in morphisms.into_iter().enumerate() {
            if a == b && u.is_identity() {
                identity[a] = id;
            }
            if lookup.insert((a, b, u.clone()), id).is_some() {
                return Err(Error::Category(format!("duplicate morphism {a} -> {b} labelled {u:?}")));
            }
            labels.push(u);
            ends.push((a, b));
        }
        if let Some(o) = identity.iter().position(|&i| i == usize::MAX) {
            return Err(Error::Category(format!("object {o} has no identity")));
        }
        let mut c = Self::skeleton(names, &ends, identity, Composer::Labels { labels, lookup, op })?;
        c.finish(generators)?;
        Ok(c)
    }

    fn skeleton(names: Vec<String>, morphisms: &[(ObjId, ObjId)], identity: Vec<MorId>, composer: Composer) -> Result<Self> {
        let n = names.len();
        let mut out_mors = vec![Vec::new(); n];
        let mut in_mors = vec![Vec::new(); n];
        for (id, &(a, b)) in morphisms.iter().enumerate() {
            if a >= n || b >= n {
                return Err(Error::Category(format!("morphism {id} has an endpoint outside the object set")));
            }
            out_mors[a].push(id);
            in_mors[b].push(id);
        }
        if identity.len() != n {
            return Err(Error::Category("one identity per object required".into()));
        }
        for (o, &i) in identity.iter().enumerate() {
            if i >= morphisms.len() || morphisms[i] != (o, o) {
                return Err(Error::Category(format!("identity of object {o} is not an endomorphism of it")));
            }
        }
        Ok(Self {
            names,
            src: morphisms.iter().map(|m| m.0).collect(),
            tgt: morphisms.iter().map(|m| m.1).collect(),
            identity,
            out_mors,
            in_mors,
            generators: Vec::new(),
            factor: Vec::new(),
            composer,
        })
    }

    fn finish(&mut self, rule: Generators) -> Result<()> {
        let is_identity = |c: &Self, f: MorId| c.identity[c.src[f]] == f;
        self.generators = match rule {
            Generators::Explicit(g) => g,
            Generators::AllNonIdentity => (0..self.num_morphisms()).filter(|&f| !is_identity(self, f)).collect(),
            Generators::Elementary => {
                let Composer::Labels { labels, .. } = &self.composer else {
                    return Err(Error::Category("elementary generators need labelled morphisms".into()));
                };
                (0..labels.len()).filter(|&f| is_elementary(&labels[f])).collect()
            }
            Generators::Indecomposable => {
                let mut decomposable = vec![false; self.num_morphisms()];
                for b in 0..self.num_objects() {
                    for &f in &self.in_mors[b] {
                        if is_identity(self, f) {
                            continue;
                        }
                        for &g in &self.out_mors[b] {
                            if is_identity(self, g) {
                                continue;
                            }
                            let h = self.compose(g, f).ok_or_else(|| Error::Category("composite missing".into()))?;
                            decomposable[h] = true;
                        }
                    }
                }
                (0..self.num_morphisms()).filter(|&f| !is_identity(self, f) && !decomposable[f]).collect()
            }
        };
        // breadth-first factorization of every morphism into generators
        let mut gens_out = vec![Vec::new(); self.num_objects()];
        for &g in &self.generators {
            gens_out[self.src[g]].push(g);
        }
        let mut factor: Vec<Option<Option<(MorId, MorId)>>> = vec![None; self.num_morphisms()];
        let mut queue = VecDeque::new();
        for &i in &self.identity {
            factor[i] = Some(None);
            queue.push_back(i);
        }
        while let Some(f) = queue.pop_front() {
            for &g in &gens_out[self.tgt[f]] {
                let h = self.compose(g, f).ok_or_else(|| Error::Category("composite missing".into()))?;
                if factor[h].is_none() {
                    factor[h] = Some(Some((f, g)));
                    queue.push_back(h);
                }
            }
        }
        if let Some(f) = factor.iter().position(Option::is_none) {
            return Err(Error::Category(format!("generators do not reach morphism {f}")));
        }
        self.factor = factor.into_iter().map(Option::unwrap).collect();
        Ok(())
    }

    pub fn num_objects(&self) -> usize {
        self.names.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.src.len()
    }

    pub fn name(&self, o: ObjId) -> &str {
        &self.names[o]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn src(&self, f: MorId) -> ObjId {
        self.src[f]
    }

    pub fn tgt(&self, f: MorId) -> ObjId {
        self.tgt[f]
    }

    pub fn identity(&self, o: ObjId) -> MorId {
        self.identity[o]
    }

    pub fn is_identity(&self, f: MorId) -> bool {
        self.identity[self.src[f]] == f
    }

    pub fn out_morphisms(&self, o: ObjId) -> &[MorId] {
        &self.out_mors[o]
    }

    pub fn in_morphisms(&self, o: ObjId) -> &[MorId] {
        &self.in_mors[o]
    }

    pub fn hom(&self, a: ObjId, b: ObjId) -> Vec<MorId> {
        self.out_mors[a].iter().copied().filter(|&f| self.tgt[f] == b).collect()
    }

    pub fn generators(&self) -> &[MorId] {
        &self.generators
    }

    /// Generators listed in application order: `f = g_last ∘ .. ∘ g_first`.
    pub fn factorization(&self, f: MorId) -> Vec<MorId> {
        let mut out = Vec::new();
        let mut cur = f;
        while let Some((prefix, g)) = self.factor[cur] {
            out.push(g);
            cur = prefix;
        }
        out.reverse();
        out
    }

    pub fn label(&self, f: MorId) -> Option<&MultiMap> {
        match &self.composer {
            Composer::Labels { labels, .. } => Some(&labels[f]),
            Composer::Table(_) => None,
        }
    }

    pub fn is_opposite(&self) -> bool {
        matches!(self.composer, Composer::Labels { op: true, .. })
    }

    /// Looks up the morphism `a -> b` with the given label.
    pub fn find(&self, a: ObjId, b: ObjId, label: &MultiMap) -> Option<MorId> {
        match &self.composer {
            Composer::Labels { lookup, .. } => lookup.get(&(a, b, label.clone())).copied(),
            Composer::Table(_) => None,
        }
    }

    /// `g ∘ f`, or `None` when not composable.
    pub fn compose(&self, g: MorId, f: MorId) -> Option<MorId> {
        if self.tgt[f] != self.src[g] {
            return None;
        }
        match &self.composer {
            Composer::Table(t) => {
                if self.is_identity(f) {
                    return Some(g);
                }
                if self.is_identity(g) {
                    return Some(f);
                }
                t.get(&(g, f)).copied()
            }
            Composer::Labels { labels, lookup, op } => {
                let label = if *op { labels[f].after(&labels[g]) } else { labels[g].after(&labels[f]) }.ok()?;
                lookup.get(&(self.src[f], self.tgt[g], label)).copied()
            }
        }
    }

    /// Exhaustive associativity and unit check.
    pub fn check_axioms(&self) -> Result<()> {
        for f in 0..self.num_morphisms() {
            let (a, b) = (self.src[f], self.tgt[f]);
            if self.compose(f, self.identity[a]) != Some(f) || self.compose(self.identity[b], f) != Some(f) {
                return Err(Error::Category(format!("identity law fails at morphism {f}")));
            }
            for &g in &self.out_mors[b] {
                let gf = self.compose(g, f).ok_or_else(|| Error::Category(format!("no composite of {g} and {f}")))?;
                if self.src[gf] != a || self.tgt[gf] != self.tgt[g] {
                    return Err(Error::Category(format!("composite of {g} and {f} has wrong endpoints")));
                }
                for &h in &self.out_mors[self.tgt[g]] {
                    let hgf = self.compose(h, gf);
                    let hg = self.compose(h, g).and_then(|hg| self.compose(hg, f));
                    if hgf.is_none() || hgf != hg {
                        return Err(Error::Category(format!("associativity fails for ({h}, {g}, {f})")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn opposite(&self) -> FinCat {
        let composer = match &self.composer {
            Composer::Table(t) => Composer::Table(t.iter().map(|(&(g, f), &h)| ((f, g), h)).collect()),
            Composer::Labels { labels, lookup, op } => Composer::Labels {
                labels: labels.clone(),
                lookup: lookup.iter().map(|((a, b, u), &id)| ((*b, *a, u.clone()), id)).collect(),
                op: !op,
            },
        };
        let mut c = FinCat {
            names: self.names.clone(),
            src: self.tgt.clone(),
            tgt: self.src.clone(),
            identity: self.identity.clone(),
            out_mors: self.in_mors.clone(),
            in_mors: self.out_mors.clone(),
            generators: Vec::new(),
            factor: Vec::new(),
            composer,
        };
        c.finish(Generators::Explicit(self.generators.clone())).expect("opposite generators");
        c
    }

    /// The full subcategory on `objects` (in that order), with the
    /// morphism ids of the ambient category for each new morphism.
    pub fn full_subcategory(&self, objects: &[ObjId], generators: Generators) -> Result<(FinCat, Vec<MorId>)> {
        let mut new_id = vec![usize::MAX; self.num_objects()];
        for (i, &o) in objects.iter().enumerate() {
            new_id[o] = i;
        }
        let names: Vec<String> = objects.iter().map(|&o| self.names[o].clone()).collect();
        let mut mor_map = Vec::new();
        let mut mor_new = HashMap::new();
        for &a in objects {
            for &f in &self.out_mors[a] {
                if new_id[self.tgt[f]] != usize::MAX {
                    mor_new.insert(f, mor_map.len());
                    mor_map.push(f);
                }
            }
        }
        let sub = match &self.composer {
            Composer::Labels { labels, op, .. } => {
                let mors = mor_map.iter().map(|&f| (new_id[self.src[f]], new_id[self.tgt[f]], labels[f].clone())).collect();
                Self::from_labels_op(names, mors, generators, *op)?
            }
            Composer::Table(_) => {
                let mors: Vec<(ObjId, ObjId)> = mor_map.iter().map(|&f| (new_id[self.src[f]], new_id[self.tgt[f]])).collect();
                let identity = objects.iter().map(|&o| mor_new[&self.identity[o]]).collect();
                let mut table = HashMap::new();
                for (nf, &f) in mor_map.iter().enumerate() {
                    for &g in &self.out_mors[self.tgt[f]] {
                        if let Some(&ng) = mor_new.get(&g) {
                            let h = self.compose(g, f).unwrap();
                            table.insert((ng, nf), mor_new[&h]);
                        }
                    }
                }
                let mut c = Self::skeleton(names, &mors, identity, Composer::Table(table))?;
                c.finish(generators)?;
                c
            }
        };
        Ok((sub, mor_map))
    }

    pub fn to_json(&self) -> FinCatJson {
        let mut compose = Vec::new();
        for f in 0..self.num_morphisms() {
            for &g in &self.out_mors[self.tgt[f]] {
                if let Some(h) = self.compose(g, f) {
                    compose.push([g, f, h]);
                }
            }
        }
        FinCatJson {
            objects: self.names.clone(),
            morphisms: (0..self.num_morphisms()).map(|id| MorphismJson { id, src: self.src[id], tgt: self.tgt[id] }).collect(),
            compose,
        }
    }
}

/// A single coface or codegeneracy in one coordinate, identities elsewhere.
pub fn is_elementary(u: &MultiMap) -> bool {
    let mut moved = 0;
    for c in u.components() {
        if c.is_identity() {
            continue;
        }
        let (d, e) = (c.dom(), c.cod());
        let elementary = (e == d + 1 && c.is_mono()) || (d == e + 1 && c.is_epi());
        if !elementary {
            return false;
        }
        moved += 1;
    }
    moved == 1
}

/// Labelled categories over the simplex category.
pub mod shapes {
    use super::*;
    use crate::delta::{all_maps, cartesian, matching_objects_at};

    /// `Δ≤N` with all monotone maps.
    pub fn delta_trunc(trunc: usize) -> FinCat {
        delta_power(1, trunc)
    }

    /// Degree tuple of object `o` in [`delta_power`].
    pub fn power_degrees(n: usize, trunc: usize, o: ObjId) -> Vec<usize> {
        let mut d = vec![0; n];
        let mut x = o;
        for slot in d.iter_mut().rev() {
            *slot = x % (trunc + 1);
            x /= trunc + 1;
        }
        d
    }

    pub fn power_index(trunc: usize, degrees: &[usize]) -> ObjId {
        degrees.iter().fold(0, |acc, &d| acc * (trunc + 1) + d)
    }

    /// `(Δ≤N)^n`; objects are degree tuples in mixed-radix order.
    pub fn delta_power(n: usize, trunc: usize) -> FinCat {
        let count = (trunc + 1).pow(n as u32);
        let objs: Vec<Vec<usize>> = (0..count).map(|o| power_degrees(n, trunc, o)).collect();
        let names = objs.iter().map(|d| format!("{d:?}")).collect();
        let mut mors = Vec::new();
        for (a, da) in objs.iter().enumerate() {
            for (b, db) in objs.iter().enumerate() {
                let comps: Vec<Vec<MonotoneMap>> = da.iter().zip(db).map(|(&x, &y)| all_maps(x, y)).collect();
                for tuple in cartesian(&comps) {
                    mors.push((a, b, MultiMap::new(tuple)));
                }
            }
        }
        FinCat::from_labels(names, mors, Generators::Elementary).expect("simplex category power")
    }

    /// The matching category of `(Δ)^n` at `([k],..,[k])`: objects are the
    /// non-identity epimorphism tuples out of it, morphisms `a -> b` are the
    /// maps `u` with `u ∘ a = b`.
    pub fn matching_category(n: usize, k: usize) -> (FinCat, Vec<MultiMap>) {
        let objs: Vec<MultiMap> = matching_objects_at(&vec![k; n]);
        labelled_under_poset(objs)
    }

    /// The full subcategory of an under-category of epimorphisms on the given objects.
    pub fn labelled_under_poset(objs: Vec<MultiMap>) -> (FinCat, Vec<MultiMap>) {
        let names = objs.iter().map(|m| format!("{m:?}")).collect();
        let mut mors = Vec::new();
        for (a, ma) in objs.iter().enumerate() {
            for (b, mb) in objs.iter().enumerate() {
                if let Some(u) = factor_through(ma, mb) {
                    mors.push((a, b, u));
                }
            }
        }
        let cat = FinCat::from_labels(names, mors, Generators::Indecomposable).expect("matching category");
        (cat, objs)
    }

    /// The unique `u` with `u ∘ a = b` for epimorphism tuples, if any.
    pub fn factor_through(a: &MultiMap, b: &MultiMap) -> Option<MultiMap> {
        let mut comps = Vec::with_capacity(a.arity());
        for (ca, cb) in a.components().iter().zip(b.components()) {
            let mut img = vec![usize::MAX; ca.cod() + 1];
            for i in 0..=ca.dom() {
                let slot = &mut img[ca.apply(i)];
                if *slot == usize::MAX {
                    *slot = cb.apply(i);
                } else if *slot != cb.apply(i) {
                    return None;
                }
            }
            comps.push(MonotoneMap::new(&img, cb.cod()).ok()?);
        }
        Some(MultiMap::new(comps))
    }

    /// The overcategory `D ↓ [p⃗]` of the diagonal `Δ≤N -> (Δ≤N)^n`:
    /// objects `(k, m)` with `m: ([k],..,[k]) -> [p⃗]`, morphisms the maps
    /// `θ: [k] -> [k']` with `m' ∘ (θ,..,θ) = m`.
    pub fn diagonal_overcategory(p: &[usize], trunc: usize) -> (FinCat, Vec<(usize, MultiMap)>) {
        let mut objs = Vec::new();
        for k in 0..=trunc {
            let comps: Vec<Vec<MonotoneMap>> = p.iter().map(|&pi| all_maps(k, pi)).collect();
            for tuple in cartesian(&comps) {
                objs.push((k, MultiMap::new(tuple)));
            }
        }
        let mut index: HashMap<MultiMap, ObjId> = HashMap::new();
        for (i, (_, m)) in objs.iter().enumerate() {
            index.insert(m.clone(), i);
        }
        let mut mors = Vec::new();
        for (b, (kb, mb)) in objs.iter().enumerate() {
            for ka in 0..=trunc {
                for th in all_maps(ka, *kb) {
                    let ma = mb.after(&crate::delta::diagonal_embed(&th, p.len())).expect("composable");
                    mors.push((index[&ma], b, MultiMap::single(th)));
                }
            }
        }
        let names = objs.iter().map(|(k, m)| format!("[{k}] {m:?}")).collect();
        let cat = FinCat::from_labels(names, mors, Generators::Elementary).expect("diagonal overcategory");
        (cat, objs)
    }

    /// Product of labelled, covariant categories; objects in mixed-radix order.
    pub fn product(cats: &[&FinCat]) -> Result<FinCat> {
        let sizes: Vec<usize> = cats.iter().map(|c| c.num_objects()).collect();
        let count: usize = sizes.iter().product();
        let decode = |mut o: usize| {
            let mut parts = vec![0; sizes.len()];
            for (slot, &s) in parts.iter_mut().zip(&sizes).rev() {
                *slot = o % s;
                o /= s;
            }
            parts
        };
        let encode = |parts: &[usize]| parts.iter().zip(&sizes).fold(0, |acc, (&p, &s)| acc * s + p);
        let mut names = Vec::with_capacity(count);
        let mut mors = Vec::new();
        let mut generator_ids = Vec::new();
        for o in 0..count {
            let parts = decode(o);
            names.push(parts.iter().zip(cats).map(|(&p, c)| c.name(p).to_string()).collect::<Vec<_>>().join(" x "));
            let lists: Vec<Vec<MorId>> = parts.iter().zip(cats).map(|(&p, c)| c.out_morphisms(p).to_vec()).collect();
            for tuple in cartesian(&lists) {
                let mut comps = Vec::new();
                for (&f, c) in tuple.iter().zip(cats) {
                    if c.is_opposite() {
                        return Err(Error::Category("products of opposite categories are not supported".into()));
                    }
                    let l = c.label(f).ok_or_else(|| Error::Category("product needs labelled factors".into()))?;
                    comps.extend(l.components().iter().cloned());
                }
                let tgt: Vec<usize> = tuple.iter().zip(cats).map(|(&f, c)| c.tgt(f)).collect();
                // a generator in one coordinate, identities elsewhere
                let moving: Vec<usize> = (0..cats.len()).filter(|&i| !cats[i].is_identity(tuple[i])).collect();
                if moving.len() == 1 && cats[moving[0]].generators().contains(&tuple[moving[0]]) {
                    generator_ids.push(mors.len());
                }
                mors.push((o, encode(&tgt), MultiMap::new(comps)));
            }
        }
        FinCat::from_labels(names, mors, Generators::Explicit(generator_ids))
    }
}

#[cfg(test)]
mod tests {
    use super::shapes::*;
    use super::*;

    #[test]
    fn delta_power_sizes() {
        let d = delta_trunc(2);
        assert_eq!(d.num_objects(), 3);
        assert_eq!(d.num_morphisms(), 31);
        d.check_axioms().unwrap();
        // cofaces and codegeneracies between adjacent degrees
        assert_eq!(d.generators().len(), 2 + 3 + 1 + 2);
        let d2 = delta_power(2, 1);
        assert_eq!(d2.num_objects(), 4);
        assert_eq!(d2.num_morphisms(), 49);
        d2.check_axioms().unwrap();
        for f in 0..d2.num_morphisms() {
            let path = d2.factorization(f);
            let mut acc = d2.identity(d2.src(f));
            for g in path {
                acc = d2.compose(g, acc).unwrap();
            }
            assert_eq!(acc, f);
        }
    }

    #[test]
    fn matching_categories() {
        let (c, objs) = matching_category(2, 1);
        assert_eq!(objs.len(), 3);
        c.check_axioms().unwrap();
        // (σ, id) -> (σ, σ) and (id, σ) -> (σ, σ)
        assert_eq!(c.num_morphisms(), 3 + 2);
        assert_eq!(c.generators().len(), 2);
        let (c, _) = matching_category(1, 0);
        assert_eq!(c.num_objects(), 0);
        let (c, _) = matching_category(3, 2);
        assert_eq!(c.num_objects(), 63);
        c.check_axioms().unwrap();
    }

    #[test]
    fn overcategory_and_opposite() {
        let (c, objs) = diagonal_overcategory(&[1, 1], 2);
        assert_eq!(objs.len(), 4 + 9 + 16);
        c.check_axioms().unwrap();
        let o = c.opposite();
        o.check_axioms().unwrap();
        assert_eq!(o.num_morphisms(), c.num_morphisms());
        for f in 0..o.num_morphisms() {
            assert_eq!(o.src(f), c.tgt(f));
        }
    }

    #[test]
    fn table_category_and_subcategory() {
        // cospan a -> c <- b
        let names = vec!["a".into(), "b".into(), "c".into()];
        let mors = vec![(0, 0), (1, 1), (2, 2), (0, 2), (1, 2)];
        let c = FinCat::from_table(names, mors, vec![0, 1, 2], HashMap::new(), Generators::AllNonIdentity).unwrap();
        assert_eq!(c.generators(), &[3, 4]);
        let (sub, map) = c.full_subcategory(&[0, 1], Generators::AllNonIdentity).unwrap();
        assert_eq!(sub.num_morphisms(), 2);
        assert_eq!(map, vec![0, 1]);
        let bad = FinCat::from_table(vec!["a".into()], vec![(0, 0), (0, 0)], vec![0], HashMap::new(), Generators::AllNonIdentity);
        assert!(bad.is_err());
    }

    #[test]
    fn products_of_labelled_categories() {
        let d = delta_trunc(1);
        let p = product(&[&d, &d]).unwrap();
        assert_eq!(p.num_objects(), 4);
        assert_eq!(p.num_morphisms(), 49);
        assert_eq!(p.generators().len(), delta_power(2, 1).generators().len());
        p.check_axioms().unwrap();
    }
}
