use std::collections::HashMap;
use std::sync::Arc;

use super::fincat::{FinCat, MorId, ObjId};
use crate::error::{Error, Result};
use crate::sset::{SSetMap, TruncSSet};

/// A functor from a finite category to truncated simplicial sets, stored
/// on generating morphisms.
#[derive(Clone, Debug)]
pub struct Diagram {
    shape: Arc<FinCat>,
    values: Vec<Arc<TruncSSet>>,
    maps: HashMap<MorId, Arc<SSetMap>>,
    cap: usize,
}

impl Diagram {
    /// `gen_map(g)` is evaluated on every generator and type-checked;
    /// functoriality is checked separately by [`Diagram::check_functorial`].
    pub fn new(
        shape: Arc<FinCat>,
        values: Vec<Arc<TruncSSet>>,
        gen_map: impl Fn(MorId) -> SSetMap,
        cap: usize,
    ) -> Result<Self> {
        if values.len() != shape.num_objects() {
            return Err(Error::NotFunctorial("one value per object required".into()));
        }
        if let Some(v) = values.iter().find(|v| v.cap() != cap) {
            return Err(Error::CapMismatch(cap, v.cap()));
        }
        let mut maps = HashMap::with_capacity(shape.generators().len());
        for &g in shape.generators() {
            let f = gen_map(g);
            f.check(&values[shape.src(g)], &values[shape.tgt(g)])
                .map_err(|e| Error::NotFunctorial(format!("generator {g}: {e}")))?;
            maps.insert(g, Arc::new(f));
        }
        Ok(Self { shape, values, maps, cap })
    }

    pub fn constant(shape: Arc<FinCat>, value: Arc<TruncSSet>) -> Self {
        let cap = value.cap();
        let values = vec![value.clone(); shape.num_objects()];
        let id = Arc::new(SSetMap::identity(&value));
        let maps = shape.generators().iter().map(|&g| (g, id.clone())).collect();
        Self { shape, values, maps, cap }
    }

    pub fn shape(&self) -> &FinCat {
        &self.shape
    }

    pub fn shape_arc(&self) -> Arc<FinCat> {
        self.shape.clone()
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn value(&self, o: ObjId) -> &TruncSSet {
        &self.values[o]
    }

    pub fn value_arc(&self, o: ObjId) -> Arc<TruncSSet> {
        self.values[o].clone()
    }

    pub fn generator_map(&self, g: MorId) -> &SSetMap {
        &self.maps[&g]
    }

    /// The value on an arbitrary morphism, composed along its factorization.
    pub fn map_of(&self, f: MorId) -> SSetMap {
        let mut acc = SSetMap::identity(&self.values[self.shape.src(f)]);
        for g in self.shape.factorization(f) {
            acc = self.maps[&g].after(&acc);
        }
        acc
    }

    /// Every relation among generators holds: for each object `a`, the
    /// maps assigned to morphisms out of `a` agree along every generator path.
    pub fn check_functorial(&self) -> Result<()> {
        let c = &*self.shape;
        let mut gens_out = vec![Vec::new(); c.num_objects()];
        for &g in c.generators() {
            gens_out[c.src(g)].push(g);
        }
        for a in 0..c.num_objects() {
            let mut assigned: HashMap<MorId, SSetMap> = HashMap::new();
            let id = c.identity(a);
            assigned.insert(id, SSetMap::identity(&self.values[a]));
            let mut stack = vec![id];
            while let Some(f) = stack.pop() {
                let mf = assigned[&f].clone();
                for &g in &gens_out[c.tgt(f)] {
                    let h = c.compose(g, f).ok_or_else(|| Error::Category(format!("no composite of {g} and {f}")))?;
                    let candidate = self.maps[&g].after(&mf);
                    match assigned.get(&h) {
                        Some(existing) if *existing != candidate => {
                            return Err(Error::NotFunctorial(format!(
                                "two generator paths from {} to {} give different maps",
                                c.name(a),
                                c.name(c.tgt(h))
                            )));
                        }
                        Some(_) => {}
                        None => {
                            assigned.insert(h, candidate);
                            stack.push(h);
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Restriction along a functor `sub -> shape` given on objects and on
    /// the generators of `sub` (as morphisms of `shape`).
    pub fn restrict(&self, sub: Arc<FinCat>, obj_map: &[ObjId], mor_map: impl Fn(MorId) -> MorId) -> Result<Diagram> {
        let values = obj_map.iter().map(|&o| self.values[o].clone()).collect();
        Diagram::new(sub, values, |g| self.map_of(mor_map(g)), self.cap)
    }

    /// Restriction to a full subcategory produced by [`FinCat::full_subcategory`].
    pub fn restrict_full(&self, sub: Arc<FinCat>, obj_map: &[ObjId], sub_mors: &[MorId]) -> Result<Diagram> {
        self.restrict(sub, obj_map, |g| sub_mors[g])
    }
}

/// A natural transformation between diagrams on the same shape.
#[derive(Clone, Debug)]
pub struct NatTrans {
    pub components: Vec<SSetMap>,
}

impl NatTrans {
    pub fn check(&self, from: &Diagram, to: &Diagram) -> Result<()> {
        let c = from.shape();
        for o in 0..c.num_objects() {
            self.components[o].check(from.value(o), to.value(o))?;
        }
        for &g in c.generators() {
            let (a, b) = (c.src(g), c.tgt(g));
            if self.components[b].after(from.generator_map(g)) != to.generator_map(g).after(&self.components[a]) {
                return Err(Error::NotFunctorial(format!("naturality fails along generator {g}")));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::shapes::delta_trunc;
    use crate::sset::{standard_map, standard_simplex};

    #[test]
    fn cosimplicial_standard_simplex_is_functorial() {
        let shape = Arc::new(delta_trunc(2));
        let values: Vec<Arc<TruncSSet>> = (0..3).map(|k| Arc::new(standard_simplex(k, 2))).collect();
        let s = shape.clone();
        let d = Diagram::new(shape, values, |g| standard_map(s.label(g).unwrap().component(0), 2), 2).unwrap();
        d.check_functorial().unwrap();
        for f in 0..d.shape().num_morphisms() {
            assert_eq!(d.map_of(f), standard_map(d.shape().label(f).unwrap().component(0), 2));
        }
    }

    #[test]
    fn broken_relation_detected() {
        // send both cofaces [0] -> [1] to the same vertex: s ∘ d = id still
        // holds, but d_1 d_0 = d_0 d_0 fails one level up
        let shape = Arc::new(delta_trunc(2));
        let values: Vec<Arc<TruncSSet>> = (0..3).map(|k| Arc::new(standard_simplex(k, 2))).collect();
        let s = shape.clone();
        let d = Diagram::new(
            shape,
            values,
            |g| {
                let mut u = s.label(g).unwrap().component(0).clone();
                if u.dom() == 0 && u.cod() == 1 {
                    u = crate::delta::MonotoneMap::coface(1, 0);
                }
                standard_map(&u, 2)
            },
            2,
        )
        .unwrap();
        assert!(matches!(d.check_functorial(), Err(Error::NotFunctorial(_))));
    }
}
