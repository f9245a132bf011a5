use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use super::kan::{multi_standard, unit_alpha};
use super::tot::{map_between_ends, times_simplex, tot, tot_iso_diagonal};
use crate::cosimplicial::{diagonal, CosimplicialMap, MultiCosimplicial};
use crate::delta::{all_maps, cartesian, lex_rank, MonotoneMap, MultiMap};
use crate::diagrams::shapes::{delta_power, power_degrees, power_index};
use crate::diagrams::{chain_vertex, end_hom, nerve_with_chains, Chain, Diagram, End, FinCat, Generators, MorId, ObjId};
use crate::error::{Error, Result};
use crate::sset::{path_components, product, product_index, standard_simplex, SSetMap, TruncSSet};

/// `Δⁿ≤N ↓ [p⃗]`: objects `(i⃗, τ⃗: [i⃗] -> [p⃗])`, morphisms `σ⃗` with
/// `τ⃗' ∘ σ⃗ = τ⃗`, labelled by `σ⃗`.
pub fn power_overcategory(p: &[usize], trunc: usize) -> (FinCat, Vec<MultiMap>) {
    let n = p.len();
    let tuples: Vec<Vec<usize>> = (0..(trunc + 1).pow(n as u32)).map(|o| power_degrees(n, trunc, o)).collect();
    let mut objs = Vec::new();
    for i in &tuples {
        let comps: Vec<Vec<MonotoneMap>> = i.iter().zip(p).map(|(&a, &b)| all_maps(a, b)).collect();
        objs.extend(cartesian(&comps).into_iter().map(MultiMap::new));
    }
    let index: HashMap<&MultiMap, ObjId> = objs.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut mors = Vec::new();
    for (b, tb) in objs.iter().enumerate() {
        for i in &tuples {
            let comps: Vec<Vec<MonotoneMap>> = i.iter().zip(tb.dom()).map(|(&a, c)| all_maps(a, c)).collect();
            for sigma in cartesian(&comps) {
                let sigma = MultiMap::new(sigma);
                let ta = tb.after(&sigma).expect("composable");
                mors.push((index[&ta], b, sigma));
            }
        }
    }
    let names = objs.iter().map(|m| format!("{m:?}")).collect();
    let cat = FinCat::from_labels(names, mors, Generators::Elementary).expect("overcategory of a power of the simplex category");
    (cat, objs)
}

/// The nerve of `Δⁿ≤N ↓ [p⃗]` with its chains.
#[derive(Clone, Debug)]
pub struct BkNerve {
    pub degrees: Vec<usize>,
    pub category: FinCat,
    /// `τ⃗` for every object.
    pub objects: Vec<MultiMap>,
    pub nerve: TruncSSet,
    pub chains: Vec<Vec<Chain>>,
    index: Vec<HashMap<Chain, u32>>,
    object_index: HashMap<MultiMap, ObjId>,
}

impl BkNerve {
    pub fn new(p: &[usize], trunc: usize, cap: usize) -> Self {
        let (category, objects) = power_overcategory(p, trunc);
        let (nerve, chains) = nerve_with_chains(&category, cap);
        let index = chains.iter().map(|per| per.iter().enumerate().map(|(i, c)| (c.clone(), i as u32)).collect()).collect();
        let object_index = objects.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        Self { degrees: p.to_vec(), category, objects, nerve, chains, index, object_index }
    }

    pub fn chain_index(&self, m: usize, ch: &Chain) -> Option<usize> {
        self.index[m].get(ch).map(|&i| i as usize)
    }

    pub fn object_of(&self, tau: &MultiMap) -> Option<ObjId> {
        self.object_index.get(tau).copied()
    }

    /// The `τ⃗` at each vertex of a chain.
    pub fn vertices(&self, ch: &Chain, m: usize) -> Vec<&MultiMap> {
        (0..=m).map(|j| &self.objects[chain_vertex(&self.category, ch, j)]).collect()
    }
}

/// Transports a chain of `from` along a map on objects, keeping labels.
fn transport(from: &FinCat, to: &FinCat, ch: &Chain, m: usize, on_object: impl Fn(ObjId) -> ObjId, on_label: impl Fn(&MultiMap) -> MultiMap) -> Option<Chain> {
    let mut out = Chain::new();
    out.push(on_object(ch[0] as ObjId) as u32);
    for j in 1..=m {
        let f = ch[j] as MorId;
        let (a, b) = (on_object(from.src(f)), on_object(from.tgt(f)));
        out.push(to.find(a, b, &on_label(from.label(f)?))? as u32);
    }
    Some(out)
}

/// The Bousfield-Kan simplex of a chain: vertex `j` is `τ_j(i_j)`, per coordinate.
pub fn bk_vertices(vertices: &[&MultiMap], coordinate: usize) -> MonotoneMap {
    let tau_n = vertices.last().expect("nonempty chain").component(coordinate);
    let imgs: Vec<usize> = vertices.iter().map(|t| t.component(coordinate).apply(t.component(coordinate).dom())).collect();
    MonotoneMap::new(&imgs, tau_n.cod()).expect("Bousfield-Kan vertices are monotone")
}

/// `φ_k: B(Δ≤N ↓ [k]) -> Δ[k]`, or for arity `n` the product map `φⁿ`
/// evaluated coordinatewise.
pub fn bk_map(b: &BkNerve, cap: usize) -> SSetMap {
    let factors: Vec<TruncSSet> = b.degrees.iter().map(|&p| standard_simplex(p, cap)).collect();
    let refs: Vec<&TruncSSet> = factors.iter().collect();
    let target = product(&refs).expect("same caps");
    SSetMap::from_fn(&b.nerve, &target, |m, x| {
        let v = b.vertices(&b.chains[m][x], m);
        let parts: Vec<usize> = (0..b.degrees.len()).map(|l| lex_rank(&bk_vertices(&v, l))).collect();
        product_index(&refs, m, &parts)
    })
    .expect("Bousfield-Kan map is simplicial")
}

/// The nerves `B(Δⁿ≤N ↓ [p⃗])` as an `n`-cosimplicial object, with the
/// Bousfield-Kan map into `Δ^(n)`.
#[derive(Clone, Debug)]
pub struct BkData {
    pub arity: usize,
    pub trunc: usize,
    pub cap: usize,
    pub nerves: Vec<BkNerve>,
    pub object: MultiCosimplicial,
    pub phi: CosimplicialMap,
}

pub fn bk_data(arity: usize, trunc: usize, cap: usize) -> Result<BkData> {
    let shape = Arc::new(delta_power(arity, trunc));
    let nerves: Vec<BkNerve> = (0..shape.num_objects()).map(|o| BkNerve::new(&power_degrees(arity, trunc, o), trunc, cap)).collect();
    let mut maps = HashMap::new();
    for &g in shape.generators() {
        let u = shape.label(g).expect("labelled");
        let (from, to) = (&nerves[shape.src(g)], &nerves[shape.tgt(g)]);
        let on_object = |o: ObjId| to.object_of(&u.after(&from.objects[o]).expect("composable")).expect("object in range");
        let tables = (0..=cap)
            .map(|m| {
                from.chains[m]
                    .iter()
                    .map(|ch| {
                        transport(&from.category, &to.category, ch, m, on_object, MultiMap::clone)
                            .and_then(|c| to.chain_index(m, &c))
                            .map(|i| i as u32)
                            .ok_or_else(|| Error::NotFunctorial("chain leaves the target nerve".into()))
                    })
                    .collect::<Result<Vec<u32>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        maps.insert(g, SSetMap::new(&from.nerve, &to.nerve, tables)?);
    }
    let values = nerves.iter().map(|b| Arc::new(b.nerve.clone())).collect();
    let d = Diagram::new(shape, values, |g| maps[&g].clone(), cap)?;
    let object = MultiCosimplicial::from_diagram(arity, trunc, d)?;
    let phi = CosimplicialMap { components: nerves.iter().map(|b| bk_map(b, cap)).collect() };
    phi.check(&object, &multi_standard(arity, trunc, cap)?)?;
    Ok(BkData { arity, trunc, cap, nerves, object, phi })
}

impl BkData {
    fn nerve_at(&self, p: &[usize]) -> &BkNerve {
        &self.nerves[power_index(self.trunc, p)]
    }

    /// `D_*: B(Δ ↓ [k]) -> B(Δⁿ ↓ [k]^n)` from the data of arity one.
    pub fn diagonal_map(&self, one: &BkData, k: usize) -> Result<SSetMap> {
        let n = self.arity;
        let (from, to) = (one.nerve_at(&[k]), self.nerve_at(&vec![k; n]));
        let widen = |t: &MultiMap| MultiMap::new(vec![t.component(0).clone(); n]);
        let tables = (0..=self.cap)
            .map(|m| {
                from.chains[m]
                    .iter()
                    .map(|ch| {
                        transport(&from.category, &to.category, ch, m, |o| to.object_of(&widen(&from.objects[o])).expect("diagonal object"), widen)
                            .and_then(|c| to.chain_index(m, &c))
                            .map(|i| i as u32)
                            .ok_or_else(|| Error::NotFunctorial("diagonal chain missing".into()))
                    })
                    .collect::<Result<Vec<u32>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        SSetMap::new(&from.nerve, &to.nerve, tables)
    }

    /// The comparison `B(Δⁿ ↓ [p⃗]) -> ∏ B(Δ ↓ [p_l])` from coordinate
    /// projections, and whether `φⁿ` factors as `∏φ` through it.
    pub fn product_decomposition(&self, one: &BkData, p: &[usize]) -> Result<(SSetMap, bool, bool)> {
        let b = self.nerve_at(p);
        let parts: Vec<&BkNerve> = p.iter().map(|&pl| one.nerve_at(&[pl])).collect();
        let refs: Vec<&TruncSSet> = parts.iter().map(|q| &q.nerve).collect();
        let target = product(&refs)?;
        let tables = (0..=self.cap)
            .map(|m| {
                b.chains[m]
                    .iter()
                    .map(|ch| {
                        let coords: Option<Vec<usize>> = parts
                            .iter()
                            .enumerate()
                            .map(|(l, q)| {
                                let single = |t: &MultiMap| MultiMap::single(t.component(l).clone());
                                transport(&b.category, &q.category, ch, m, |o| q.object_of(&single(&b.objects[o])).expect("coordinate object"), single)
                                    .and_then(|c| q.chain_index(m, &c))
                            })
                            .collect();
                        coords.map(|c| product_index(&refs, m, &c) as u32).ok_or_else(|| Error::NotFunctorial("coordinate chain missing".into()))
                    })
                    .collect::<Result<Vec<u32>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let iso = SSetMap::new(&b.nerve, &target, tables)?;
        let is_iso = iso.is_isomorphism(&target);
        let phis: Vec<&SSetMap> = p.iter().map(|&pl| &one.phi.components[power_index(one.trunc, &[pl])]).collect();
        let factors: Vec<TruncSSet> = p.iter().map(|&pl| standard_simplex(pl, self.cap)).collect();
        let prod_phi = crate::sset::product_map(&refs, &factors.iter().collect::<Vec<_>>(), &phis);
        let factors_through = prod_phi.after(&iso) == self.phi.components[power_index(self.trunc, p)];
        Ok((iso, is_iso, factors_through))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BkSquareDegree {
    pub k: usize,
    pub simplices: Vec<usize>,
    pub commutes: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct BkSquareVerdict {
    pub arity: usize,
    pub trunc: usize,
    pub cap: usize,
    pub per_degree: Vec<BkSquareDegree>,
    pub holds: bool,
}

/// `φⁿ ∘ D_* = α ∘ φ` on every simplex of `B(Δ≤N ↓ [k])`. The diagonal
/// chain is built in `Δⁿ≤N ↓ [k]^n` and `φⁿ` is evaluated through its
/// coordinate projections, so the nerve of the larger category is never
/// materialised.
pub fn check_bk_square(arity: usize, cap: usize, one: &BkData) -> Result<BkSquareVerdict> {
    let mut per_degree = Vec::new();
    for k in 0..=one.trunc {
        let composite = via_product(one, k, arity, cap)?;
        let direct = unit_alpha(k, arity, cap).after(&one.phi.components[k]);
        per_degree.push(BkSquareDegree { k, simplices: one.nerve_at(&[k]).nerve.counts().to_vec(), commutes: composite == direct });
    }
    let holds = per_degree.iter().all(|d| d.commutes);
    Ok(BkSquareVerdict { arity, trunc: one.trunc, cap, per_degree, holds })
}

/// `holim X = hom(B(Δⁿ ↓ -), X)`.
pub fn holim(x: &MultiCosimplicial, bk: &BkData, limit: usize) -> Result<End> {
    if bk.arity != x.arity() || bk.trunc != x.trunc() || bk.cap != x.cap() {
        return Err(Error::Category("nerve data does not match the object".into()));
    }
    end_hom(bk.object.diagram(), x.diagram(), limit)
}

/// The Bousfield-Kan map `Tot X -> holim X`, precomposition with `φⁿ × id`.
pub fn tot_to_holim(x: &MultiCosimplicial, bk: &BkData, tot_x: &End, holim_x: &End) -> Result<SSetMap> {
    let standard = multi_standard(x.arity(), x.trunc(), x.cap())?;
    let pre: Vec<Vec<SSetMap>> = (0..bk.nerves.len())
        .map(|o| (0..=x.cap()).map(|m| times_simplex(&bk.phi.components[o], &bk.nerves[o].nerve, standard.diagram().value(o), m)).collect())
        .collect();
    map_between_ends(tot_x, holim_x, |m, s| s.iter().enumerate().map(|(o, f)| f.after(&pre[o][m])).collect())
}

/// `holim_{Δⁿ} X -> holim_Δ diag X`, restriction along the diagonal.
pub fn holim_restriction_map(x: &MultiCosimplicial, bk: &BkData, one: &BkData, holim_x: &End, holim_diag: &End) -> Result<SSetMap> {
    let n = x.arity();
    let pre: Vec<Vec<SSetMap>> = (0..=x.trunc())
        .map(|k| {
            let d = bk.diagonal_map(one, k)?;
            let (src, tgt) = (&one.nerve_at(&[k]).nerve, &bk.nerve_at(&vec![k; n]).nerve);
            Ok((0..=x.cap()).map(|m| times_simplex(&d, src, tgt, m)).collect())
        })
        .collect::<Result<_>>()?;
    let objects: Vec<usize> = (0..=x.trunc()).map(|k| x.object(&vec![k; n]).expect("in range")).collect();
    map_between_ends(holim_x, holim_diag, |m, s| (0..=x.trunc()).map(|k| s[objects[k]].after(&pre[k][m])).collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct HolimSquareVerdict {
    pub arity: usize,
    pub trunc: usize,
    pub cap: usize,
    pub tot_counts: Vec<usize>,
    pub holim_counts: Vec<usize>,
    pub holim_diagonal_counts: Vec<usize>,
    pub tot_iso_diagonal: bool,
    /// `holim_{Δⁿ} X -> holim_Δ diag X` is an isomorphism at this truncation.
    pub restriction_iso: bool,
    /// The restriction induces a bijection on path components.
    pub restriction_pi0_bijective: bool,
    pub commutes: bool,
}

/// Builds all four corners and checks the square commutes on every simplex
/// of `Tot X`.
pub fn check_holimdiag_square(x: &MultiCosimplicial, bk: &BkData, one: &BkData, limit: usize) -> Result<HolimSquareVerdict> {
    let dx = diagonal(x)?;
    let tot_x = tot(x, limit)?;
    let tot_d = tot(&dx, limit)?;
    let holim_x = holim(x, bk, limit)?;
    let holim_d = holim(&dx, one, limit)?;
    let iso = tot_iso_diagonal(x, limit)?;
    let across = iso.map.clone().ok_or_else(|| Error::NotSimplicial("Tot comparison undefined".into()))?;
    let top = tot_to_holim(x, bk, &tot_x, &holim_x)?;
    let bottom = tot_to_holim(&dx, one, &tot_d, &holim_d)?;
    let right = holim_restriction_map(x, bk, one, &holim_x, &holim_d)?;
    Ok(HolimSquareVerdict {
        arity: x.arity(),
        trunc: x.trunc(),
        cap: x.cap(),
        tot_counts: tot_x.object.counts().to_vec(),
        holim_counts: holim_x.object.counts().to_vec(),
        holim_diagonal_counts: holim_d.object.counts().to_vec(),
        tot_iso_diagonal: iso.isomorphism,
        restriction_iso: right.is_isomorphism(&holim_d.object),
        restriction_pi0_bijective: pi0_bijective(&right, &holim_x.object, &holim_d.object),
        commutes: right.after(&top) == bottom.after(&across),
    })
}

/// Whether `f` induces a bijection on path components.
pub fn pi0_bijective(f: &SSetMap, source: &TruncSSet, target: &TruncSSet) -> bool {
    let (a, b) = (path_components(source), path_components(target));
    let mut image = vec![usize::MAX; a.count];
    let mut hit = vec![false; b.count];
    for v in 0..source.count(0) {
        let c = b.labels[f.apply(0, v)];
        let slot = &mut image[a.labels[v]];
        if *slot != usize::MAX && *slot != c {
            return false;
        }
        *slot = c;
        hit[c] = true;
    }
    let distinct: std::collections::HashSet<usize> = image.iter().copied().collect();
    distinct.len() == a.count && hit.iter().all(|&h| h)
}

/// The square on vertices without `holim_{Δⁿ}`: for every map
/// `f: Δ^(n) -> X`, compares `diag f ∘ α ∘ φ` with `diag f ∘ φⁿ ∘ D_*`,
/// the latter computed through coordinate projections. Returns the number
/// of maps checked.
pub fn hom_square_commutes(x: &MultiCosimplicial, one: &BkData, limit: usize) -> Result<(usize, bool)> {
    let n = x.arity();
    let tot_x = tot(x, limit)?;
    let mut ok = true;
    for k in 0..=x.trunc() {
        let direct = unit_alpha(k, n, x.cap()).after(&one.phi.components[k]);
        let composite = via_product(one, k, n, x.cap())?;
        let o = x.object(&vec![k; n])?;
        // components of a vertex are maps K × Δ[0] -> X, indexed like K
        for s in &tot_x.simplices[0] {
            if s[o].after(&direct) != s[o].after(&composite) {
                ok = false;
            }
        }
    }
    Ok((tot_x.simplices[0].len(), ok))
}

/// `φⁿ ∘ D_*: B(Δ ↓ [k]) -> Δ[k]^n` via coordinate projections.
fn via_product(one: &BkData, k: usize, n: usize, cap: usize) -> Result<SSetMap> {
    let b = one.nerve_at(&[k]);
    let trunc = one.trunc;
    let (big, big_objects) = power_overcategory(&vec![k; n], trunc);
    let big_index: HashMap<&MultiMap, ObjId> = big_objects.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let widen = |t: &MultiMap| MultiMap::new(vec![t.component(0).clone(); n]);
    let factors = vec![standard_simplex(k, cap); n];
    let refs: Vec<&TruncSSet> = factors.iter().collect();
    let target = product(&refs)?;
    let phi = &one.phi.components[k];
    let tables = (0..=cap)
        .map(|m| {
            b.chains[m]
                .iter()
                .map(|ch| {
                    let wide = transport(&b.category, &big, ch, m, |o| big_index[&widen(&b.objects[o])], widen)
                        .ok_or_else(|| Error::NotFunctorial("diagonal chain missing".into()))?;
                    let parts = (0..n)
                        .map(|l| {
                            let single = |t: &MultiMap| MultiMap::single(t.component(l).clone());
                            transport(&big, &b.category, &wide, m, |o| b.object_of(&single(&big_objects[o])).expect("coordinate"), single)
                                .and_then(|c| b.chain_index(m, &c))
                                .map(|i| phi.apply(m, i))
                                .ok_or_else(|| Error::NotFunctorial("coordinate chain missing".into()))
                        })
                        .collect::<Result<Vec<usize>>>()?;
                    Ok(product_index(&refs, m, &parts) as u32)
                })
                .collect::<Result<Vec<u32>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    SSetMap::new(&b.nerve, &target, tables)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cosimplicial::terminal;
    use crate::sset::{betti, indiscrete};

    #[test]
    fn bk_map_values() {
        let one = bk_data(1, 2, 2).unwrap();
        let b = &one.nerves[1];
        // the vertex τ: [2] -> [1], τ = (0, 1, 1), lands on τ(2) = 1
        let tau = MultiMap::single(MonotoneMap::new(&[0, 1, 1], 1).unwrap());
        let v = b.object_of(&tau).unwrap();
        assert_eq!(one.phi.components[1].apply(0, v), 1);
        // k = 0: the nerve is contractible and maps to the point
        let b0 = &one.nerves[0].nerve;
        assert_eq!(path_components(b0).count, 1);
        assert!(betti(b0).is_acyclic());
        for k in 0..=2 {
            assert!(betti(&one.nerves[k].nerve).is_acyclic());
        }
    }

    #[test]
    fn product_maps_and_square() {
        let one = bk_data(1, 1, 2).unwrap();
        let two = bk_data(2, 1, 2).unwrap();
        let (_, iso, factors) = two.product_decomposition(&one, &[1, 1]).unwrap();
        assert!(iso && factors);
        assert!(check_bk_square(2, 2, &one).unwrap().holds);
        let one2 = bk_data(1, 2, 2).unwrap();
        assert!(check_bk_square(2, 2, &one2).unwrap().holds);
    }

    #[test]
    fn holim_of_constants() {
        let one = bk_data(1, 2, 2).unwrap();
        let t = terminal(1, 2, 2).unwrap();
        assert_eq!(holim(&t, &one, 10).unwrap().object.counts(), &[1, 1, 1]);
        let two_points = MultiCosimplicial::constant(1, 2, &TruncSSet::discrete(2, 2)).unwrap();
        assert_eq!(holim(&two_points, &one, 100).unwrap().object.count(0), 2);
    }

    #[test]
    fn holim_square() {
        let one = bk_data(1, 1, 1).unwrap();
        let two = bk_data(2, 1, 1).unwrap();
        let e = indiscrete(2, 1);
        let x = MultiCosimplicial::constant(2, 1, &e).unwrap();
        let v = check_holimdiag_square(&x, &two, &one, 100_000).unwrap();
        assert!(v.commutes && v.tot_iso_diagonal && v.restriction_pi0_bijective, "{v:?}");
        // holim of a constant diagram is Map(BC, E), so only π₀ is preserved here
        assert!(!v.restriction_iso);
        let d = MultiCosimplicial::constant(2, 1, &TruncSSet::discrete(2, 1)).unwrap();
        let v = check_holimdiag_square(&d, &two, &one, 100_000).unwrap();
        assert!(v.commutes && v.restriction_iso, "{v:?}");
        let s = multi_standard(2, 1, 1).unwrap();
        let v = check_holimdiag_square(&s, &two, &one, 100_000).unwrap();
        assert!(v.commutes, "{v:?}");
        let one2 = bk_data(1, 2, 2).unwrap();
        let (count, ok) = hom_square_commutes(&multi_standard(2, 2, 2).unwrap(), &one2, 100_000).unwrap();
        assert!(ok && count >= 1);
    }
}
