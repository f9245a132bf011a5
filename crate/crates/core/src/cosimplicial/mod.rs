//! Truncated multicosimplicial simplicial sets, their diagonals, matching
//! and latching objects, the relative matching pullbacks and capped Reedy
//! fibrancy checks.

mod latching;
mod matching;
mod reedy;

pub use latching::{latching_is_boundary, latching_map, LatchingMap, LatchingVerdict};
pub use matching::{
    build_p, check_prime_stage_iso, check_pullback_square, matching_at, matching_object, p_comparison, stage_cofinality, stage_objects, tower,
    MatchingObject, PrimeStageVerdict, PullbackSquareVerdict, RelativeMatchingData, StageCofinality, StageVariant, Tower,
};
pub use reedy::{
    check_diagonal_preserves_fibration, is_reedy_fibration_capped, reedy_lemma_instance, DiagonalFibrationReport, ReedyLemmaReport,
    ReedyVerdict,
};

use std::sync::Arc;

use crate::delta::{diagonal_embed, MultiMap};
use crate::diagrams::shapes::{delta_power, delta_trunc, power_degrees, power_index};
use crate::diagrams::{Diagram, FinCat, MorId, NatTrans, ObjId};
use crate::error::{out_of_range, Error, Result};
use crate::sset::{product, product_map, standard_map, standard_simplex, SSetMap, TruncSSet};

/// A functor `(Δ≤N)^n -> truncated simplicial sets`.
#[derive(Clone, Debug)]
pub struct MultiCosimplicial {
    arity: usize,
    trunc: usize,
    diagram: Diagram,
}

impl MultiCosimplicial {
    /// Builds from values on degree tuples and maps on elementary
    /// morphisms, then checks functoriality exhaustively.
    pub fn new(
        arity: usize,
        trunc: usize,
        cap: usize,
        value: impl Fn(&[usize]) -> TruncSSet,
        on_generator: impl Fn(&MultiMap) -> SSetMap,
    ) -> Result<Self> {
        Self::with_shape(Arc::new(delta_power(arity, trunc)), arity, trunc, cap, value, on_generator)
    }

    /// As [`MultiCosimplicial::new`], reusing an already built shape.
    pub fn with_shape(
        shape: Arc<FinCat>,
        arity: usize,
        trunc: usize,
        cap: usize,
        value: impl Fn(&[usize]) -> TruncSSet,
        on_generator: impl Fn(&MultiMap) -> SSetMap,
    ) -> Result<Self> {
        if arity == 0 {
            return Err(out_of_range("arity", 0, "at least 1"));
        }
        let values = (0..shape.num_objects()).map(|o| Arc::new(value(&power_degrees(arity, trunc, o)))).collect();
        let s = shape.clone();
        let diagram = Diagram::new(shape, values, |g| on_generator(s.label(g).expect("labelled")), cap)?;
        diagram.check_functorial()?;
        Ok(Self { arity, trunc, diagram })
    }

    pub fn from_diagram(arity: usize, trunc: usize, diagram: Diagram) -> Result<Self> {
        if diagram.shape().num_objects() != (trunc + 1).pow(arity as u32) {
            return Err(Error::Category("diagram shape is not a power of the truncated simplex category".into()));
        }
        diagram.check_functorial()?;
        Ok(Self { arity, trunc, diagram })
    }

    /// `Δ^(n)`: `[p⃗] ↦ Δ[p₁] × .. × Δ[p_n]`.
    pub fn standard(arity: usize, trunc: usize, cap: usize) -> Result<Self> {
        Self::new(
            arity,
            trunc,
            cap,
            |p| {
                let factors: Vec<TruncSSet> = p.iter().map(|&pi| standard_simplex(pi, cap)).collect();
                product(&factors.iter().collect::<Vec<_>>()).expect("same caps")
            },
            |u| standard_product_map(u, cap),
        )
    }

    pub fn constant(arity: usize, trunc: usize, value: &TruncSSet) -> Result<Self> {
        let id = SSetMap::identity(value);
        Self::new(arity, trunc, value.cap(), |_| value.clone(), |_| id.clone())
    }

    /// Applies a functor degreewise, given on values and on structure maps.
    pub fn map_values(
        &self,
        value: impl Fn(&TruncSSet) -> TruncSSet,
        on_map: impl Fn(&TruncSSet, &TruncSSet, &SSetMap, &TruncSSet, &TruncSSet) -> SSetMap,
    ) -> Result<Self> {
        let shape = self.diagram.shape_arc();
        let new_values: Vec<Arc<TruncSSet>> = (0..shape.num_objects()).map(|o| Arc::new(value(self.diagram.value(o)))).collect();
        let cap = new_values.first().map_or(self.cap(), |v| v.cap());
        let nv = new_values.clone();
        let s = shape.clone();
        let diagram = Diagram::new(
            shape,
            new_values,
            |g| {
                let (a, b) = (s.src(g), s.tgt(g));
                on_map(self.diagram.value(a), self.diagram.value(b), self.diagram.generator_map(g), &nv[a], &nv[b])
            },
            cap,
        )?;
        Self::from_diagram(self.arity, self.trunc, diagram)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn cap(&self) -> usize {
        self.diagram.cap()
    }

    pub fn diagram(&self) -> &Diagram {
        &self.diagram
    }

    pub fn shape(&self) -> &FinCat {
        self.diagram.shape()
    }

    pub fn object(&self, degrees: &[usize]) -> Result<ObjId> {
        if degrees.len() != self.arity || degrees.iter().any(|&d| d > self.trunc) {
            let worst = degrees.iter().copied().max().unwrap_or(0) as i64;
            return Err(out_of_range("degree", worst, format!("{} entries, each ≤ {}", self.arity, self.trunc)));
        }
        Ok(power_index(self.trunc, degrees))
    }

    pub fn degrees(&self, o: ObjId) -> Vec<usize> {
        power_degrees(self.arity, self.trunc, o)
    }

    pub fn value(&self, degrees: &[usize]) -> &TruncSSet {
        self.diagram.value(self.object(degrees).expect("degrees in range"))
    }

    pub fn morphism(&self, u: &MultiMap) -> Result<MorId> {
        let (a, b) = (self.object(&u.dom())?, self.object(&u.cod())?);
        self.shape().find(a, b, u).ok_or_else(|| Error::InvalidMap(format!("{u:?} is not a morphism of the shape")))
    }

    /// `X(u)` for any morphism tuple within the truncation.
    pub fn structure_map(&self, u: &MultiMap) -> Result<SSetMap> {
        Ok(self.diagram.map_of(self.morphism(u)?))
    }
}

/// `θ₁_* × .. × θ_n_*` between products of standard simplices.
pub fn standard_product_map(u: &MultiMap, cap: usize) -> SSetMap {
    let src: Vec<TruncSSet> = u.dom().iter().map(|&d| standard_simplex(d, cap)).collect();
    let tgt: Vec<TruncSSet> = u.cod().iter().map(|&d| standard_simplex(d, cap)).collect();
    let maps: Vec<SSetMap> = u.components().iter().map(|c| standard_map(c, cap)).collect();
    product_map(&src.iter().collect::<Vec<_>>(), &tgt.iter().collect::<Vec<_>>(), &maps.iter().collect::<Vec<_>>())
}

/// A map of multicosimplicial objects, one component per degree tuple.
#[derive(Clone, Debug)]
pub struct CosimplicialMap {
    pub components: Vec<SSetMap>,
}

impl CosimplicialMap {
    pub fn check(&self, x: &MultiCosimplicial, y: &MultiCosimplicial) -> Result<()> {
        if x.arity != y.arity || x.trunc != y.trunc || self.components.len() != x.shape().num_objects() {
            return Err(Error::NotFunctorial("map between objects of different shapes".into()));
        }
        NatTrans { components: self.components.clone() }.check(&x.diagram, &y.diagram)
    }

    pub fn identity(x: &MultiCosimplicial) -> Self {
        let d = x.diagram();
        Self { components: (0..d.shape().num_objects()).map(|o| SSetMap::identity(d.value(o))).collect() }
    }

    pub fn to_terminal(x: &MultiCosimplicial) -> Self {
        let d = x.diagram();
        Self { components: (0..d.shape().num_objects()).map(|o| SSetMap::to_point(d.value(o))).collect() }
    }

    pub fn component(&self, x: &MultiCosimplicial, degrees: &[usize]) -> &SSetMap {
        &self.components[x.object(degrees).expect("degrees in range")]
    }

    /// Restriction along the diagonal.
    pub fn diagonal(&self, x: &MultiCosimplicial) -> Self {
        Self { components: (0..=x.trunc).map(|k| self.component(x, &vec![k; x.arity]).clone()).collect() }
    }
}

/// The terminal multicosimplicial object of the given shape.
pub fn terminal(arity: usize, trunc: usize, cap: usize) -> Result<MultiCosimplicial> {
    MultiCosimplicial::constant(arity, trunc, &TruncSSet::point(cap))
}

/// `X ↦ X⁰` in every degree, each value a discrete set on the vertices.
pub fn zero_skeleton_degreewise(x: &MultiCosimplicial) -> Result<MultiCosimplicial> {
    x.map_values(
        |a| TruncSSet::discrete(a.count(0), a.cap()),
        |_, _, f, na, nb| SSetMap::from_fn(na, nb, |_, v| f.apply(0, v)).expect("maps of discrete sets"),
    )
}

/// `(diag X)^k = X^(k,..,k)`, with structure maps restricted along `θ ↦ (θ,..,θ)`.
pub fn diagonal(x: &MultiCosimplicial) -> Result<MultiCosimplicial> {
    let shape = Arc::new(delta_trunc(x.trunc));
    let objects: Vec<ObjId> = (0..=x.trunc).map(|k| power_index(x.trunc, &vec![k; x.arity])).collect();
    let s = shape.clone();
    let d = x.diagram.restrict(shape, &objects, |g| {
        let th = s.label(g).expect("labelled").component(0);
        x.morphism(&diagonal_embed(th, x.arity)).expect("diagonal morphism")
    })?;
    MultiCosimplicial::from_diagram(1, x.trunc, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delta::MonotoneMap;
    use crate::sset::indiscrete;

    #[test]
    fn standard_objects_are_functorial() {
        let d2 = MultiCosimplicial::standard(2, 2, 2).unwrap();
        assert_eq!(d2.value(&[1, 2]).count(0), 6);
        let diag = diagonal(&d2).unwrap();
        let s1 = standard_simplex(1, 2);
        assert_eq!(diag.value(&[1]).counts(), product(&[&s1, &s1]).unwrap().counts());
        let one = MultiCosimplicial::standard(1, 2, 2).unwrap();
        let same = diagonal(&one).unwrap();
        for k in 0..=2 {
            assert_eq!(same.value(&[k]), one.value(&[k]));
        }
    }

    #[test]
    fn constant_diagonal_is_constant() {
        let e = indiscrete(2, 2);
        let c = MultiCosimplicial::constant(2, 1, &e).unwrap();
        let d = diagonal(&c).unwrap();
        let u = MultiMap::single(MonotoneMap::coface(1, 0));
        assert_eq!(d.structure_map(&u).unwrap(), SSetMap::identity(&e));
    }

    #[test]
    fn maps_are_checked() {
        let x = MultiCosimplicial::standard(2, 1, 1).unwrap();
        let t = terminal(2, 1, 1).unwrap();
        CosimplicialMap::to_terminal(&x).check(&x, &t).unwrap();
        CosimplicialMap::identity(&x).check(&x, &x).unwrap();
    }
}
