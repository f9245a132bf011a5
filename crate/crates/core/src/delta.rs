//! The simplex category and its finite powers.
//!
//! Morphisms of the simplex category are weakly monotone maps `[m] -> [n]`,
//! stored as explicit image sequences. Epimorphisms out of `[k]` are in
//! bijection with subsets `U` of `{0, .., k-1}` (the adjacencies they
//! collapse); that encoding is what makes terminal factorizations through
//! the diagonal a plain set intersection.

use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{out_of_range, Error, Result};

/// A weakly monotone map `[m] -> [n]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonotoneMap {
    cod: u8,
    img: SmallVec<[u8; 6]>,
}

impl MonotoneMap {
    pub fn new(images: &[usize], codomain: usize) -> Result<Self> {
        if images.is_empty() {
            return Err(Error::InvalidMap("empty image sequence".into()));
        }
        if codomain > u8::MAX as usize || images.len() > u8::MAX as usize {
            return Err(Error::InvalidMap("degree too large".into()));
        }
        for w in images.windows(2) {
            if w[0] > w[1] {
                return Err(Error::InvalidMap(format!("{images:?} is not weakly increasing")));
            }
        }
        if let Some(&bad) = images.iter().find(|&&v| v > codomain) {
            return Err(Error::InvalidMap(format!("image {bad} exceeds codomain [{codomain}]")));
        }
        Ok(Self { cod: codomain as u8, img: images.iter().map(|&v| v as u8).collect() })
    }

    pub fn identity(n: usize) -> Self {
        Self { cod: n as u8, img: (0..=n as u8).collect() }
    }

    /// The coface `[n-1] -> [n]` whose image misses `i`.
    pub fn coface(n: usize, i: usize) -> Self {
        assert!(n >= 1 && i <= n, "coface δ^{i} into [{n}]");
        let img = (0..n as u8).map(|t| if (t as usize) < i { t } else { t + 1 }).collect();
        Self { cod: n as u8, img }
    }

    /// The codegeneracy `[n+1] -> [n]` that hits `i` twice.
    pub fn codegeneracy(n: usize, i: usize) -> Self {
        assert!(i <= n, "codegeneracy σ^{i} onto [{n}]");
        let img = (0..=(n + 1) as u8).map(|t| if (t as usize) <= i { t } else { t - 1 }).collect();
        Self { cod: n as u8, img }
    }

    pub fn constant(m: usize, n: usize, value: usize) -> Self {
        assert!(value <= n);
        Self { cod: n as u8, img: std::iter::repeat_n(value as u8, m + 1).collect() }
    }

    pub fn dom(&self) -> usize {
        self.img.len() - 1
    }

    pub fn cod(&self) -> usize {
        self.cod as usize
    }

    pub fn apply(&self, i: usize) -> usize {
        self.img[i] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.img.iter().map(|&v| v as usize).collect()
    }

    pub(crate) fn raw(&self) -> &[u8] {
        &self.img
    }

    pub fn is_epi(&self) -> bool {
        self.img[0] == 0
            && *self.img.last().unwrap() == self.cod
            && self.img.windows(2).all(|w| w[1] <= w[0] + 1)
    }

    pub fn is_mono(&self) -> bool {
        self.img.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_identity(&self) -> bool {
        self.dom() == self.cod() && self.is_mono()
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &MonotoneMap) -> Result<MonotoneMap> {
        compose(self, f)
    }

    /// Collapsed adjacencies `{ i : f(i) = f(i+1) }` as a bitmask.
    pub fn collapse_set(&self) -> u32 {
        let mut mask = 0u32;
        for (i, w) in self.img.windows(2).enumerate() {
            if w[0] == w[1] {
                mask |= 1 << i;
            }
        }
        mask
    }

    /// The epimorphism out of `[k]` collapsing exactly the adjacencies in `mask`.
    pub fn epi_from_collapse_set(k: usize, mask: u32) -> Self {
        let mut img = SmallVec::with_capacity(k + 1);
        let mut v = 0u8;
        img.push(0);
        for i in 0..k {
            if mask & (1 << i) == 0 {
                v += 1;
            }
            img.push(v);
        }
        Self { cod: v, img }
    }
}

impl fmt::Debug for MonotoneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.img.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "):[{}]→[{}]", self.dom(), self.cod)
    }
}

impl fmt::Display for MonotoneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

// Serialized as the bare image array. The codomain is not recoverable from
// the images alone; deserialization assumes the smallest possible one and
// containers that need more carry the target degree separately.
impl Serialize for MonotoneMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.images().serialize(s)
    }
}

impl<'de> Deserialize<'de> for MonotoneMap {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let images = Vec::<usize>::deserialize(d)?;
        let cod = images.iter().copied().max().unwrap_or(0);
        MonotoneMap::new(&images, cod).map_err(serde::de::Error::custom)
    }
}

/// `g ∘ f`.
pub fn compose(g: &MonotoneMap, f: &MonotoneMap) -> Result<MonotoneMap> {
    if f.cod() != g.dom() {
        return Err(Error::Composition { left: f.cod(), right: g.dom() });
    }
    Ok(MonotoneMap { cod: g.cod, img: f.img.iter().map(|&v| g.img[v as usize]).collect() })
}

/// Unique factorization `f = mono ∘ epi`.
pub fn epi_mono_factor(f: &MonotoneMap) -> (MonotoneMap, MonotoneMap) {
    let mut distinct: SmallVec<[u8; 6]> = SmallVec::new();
    let mut epi: SmallVec<[u8; 6]> = SmallVec::new();
    for &v in &f.img {
        if distinct.last() != Some(&v) {
            distinct.push(v);
        }
        epi.push((distinct.len() - 1) as u8);
    }
    let r = (distinct.len() - 1) as u8;
    (MonotoneMap { cod: r, img: epi }, MonotoneMap { cod: f.cod, img: distinct })
}

/// All monotone maps `[m] -> [n]`, in lexicographic order of images.
pub fn all_maps(m: usize, n: usize) -> Vec<MonotoneMap> {
    let mut out = Vec::new();
    let mut cur: SmallVec<[u8; 6]> = SmallVec::new();
    fn rec(m: usize, n: u8, lo: u8, cur: &mut SmallVec<[u8; 6]>, out: &mut Vec<MonotoneMap>) {
        if cur.len() == m + 1 {
            out.push(MonotoneMap { cod: n, img: cur.clone() });
            return;
        }
        for v in lo..=n {
            cur.push(v);
            rec(m, n, v, cur, out);
            cur.pop();
        }
    }
    rec(m, n as u8, 0, &mut cur, &mut out);
    out
}

/// Position of `f` in [`all_maps`]`(f.dom(), f.cod())`.
pub fn lex_rank(f: &MonotoneMap) -> usize {
    let (m, n) = (f.dom(), f.cod());
    let mut rank = 0;
    let mut lo = 0;
    for (i, &v) in f.img.iter().enumerate() {
        let rest = m - i;
        for w in lo..v as usize {
            rank += binomial(n - w + rest, rest);
        }
        lo = v as usize;
    }
    rank
}

/// All epimorphisms `[k] -> [p]`; empty when `p > k`.
pub fn enumerate_epis(k: usize, p: usize) -> Vec<MonotoneMap> {
    if p > k {
        return Vec::new();
    }
    let mut out: Vec<MonotoneMap> = (0u32..1 << k)
        .filter(|m| m.count_ones() as usize == k - p)
        .map(|mask| MonotoneMap::epi_from_collapse_set(k, mask))
        .collect();
    out.sort();
    out
}

pub fn binomial(n: usize, r: usize) -> usize {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    (0..r).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// A morphism of the n-fold power of the simplex category.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiMap(pub SmallVec<[MonotoneMap; 3]>);

impl MultiMap {
    pub fn new(components: Vec<MonotoneMap>) -> Self {
        assert!(!components.is_empty(), "a multimap has at least one component");
        Self(components.into())
    }

    pub fn single(f: MonotoneMap) -> Self {
        let mut v = SmallVec::new();
        v.push(f);
        Self(v)
    }

    pub fn identity(degrees: &[usize]) -> Self {
        Self(degrees.iter().map(|&p| MonotoneMap::identity(p)).collect())
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn components(&self) -> &[MonotoneMap] {
        &self.0
    }

    pub fn component(&self, i: usize) -> &MonotoneMap {
        &self.0[i]
    }

    pub fn dom(&self) -> Vec<usize> {
        self.0.iter().map(MonotoneMap::dom).collect()
    }

    pub fn cod(&self) -> Vec<usize> {
        self.0.iter().map(MonotoneMap::cod).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(MonotoneMap::is_identity)
    }

    pub fn all_epi(&self) -> bool {
        self.0.iter().all(MonotoneMap::is_epi)
    }

    pub fn all_mono(&self) -> bool {
        self.0.iter().all(MonotoneMap::is_mono)
    }

    pub fn is_diagonal(&self) -> bool {
        self.0.iter().all(|c| c == &self.0[0])
    }

    /// Componentwise `self ∘ f`.
    pub fn after(&self, f: &MultiMap) -> Result<MultiMap> {
        if self.arity() != f.arity() {
            return Err(Error::InvalidMap(format!(
                "arity mismatch {} vs {}",
                self.arity(),
                f.arity()
            )));
        }
        let comps = self.0.iter().zip(f.0.iter()).map(|(g, f)| compose(g, f)).collect::<Result<_>>()?;
        Ok(MultiMap(comps))
    }

    pub fn total_target_degree(&self) -> usize {
        self.0.iter().map(MonotoneMap::cod).sum()
    }
}

impl fmt::Debug for MultiMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

/// `(φ, .., φ)` with `n` components.
pub fn diagonal_embed(phi: &MonotoneMap, n: usize) -> MultiMap {
    assert!(n >= 1);
    MultiMap(std::iter::repeat_n(phi.clone(), n).collect())
}

/// An object of the matching category of the n-fold power at `([k], .., [k])`:
/// a tuple of epimorphisms out of `[k]`, not all identities.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct MatchingCatObject {
    pub k: usize,
    pub target: Vec<usize>,
    pub map: MultiMap,
}

impl MatchingCatObject {
    pub fn from_map(map: MultiMap) -> Result<Self> {
        if !map.all_epi() || map.is_identity() {
            return Err(Error::InvalidMap(format!("{map:?} is not a matching-category object")));
        }
        let dom = map.dom();
        if dom.iter().any(|&d| d != dom[0]) {
            return Err(Error::InvalidMap(format!("{map:?} does not start at a diagonal object")));
        }
        Ok(Self { k: dom[0], target: map.cod(), map })
    }

    pub fn total_degree(&self) -> usize {
        self.target.iter().sum()
    }
}

/// Tuples of epimorphisms out of `source`, excluding the identity tuple.
pub fn matching_objects_at(source: &[usize]) -> Vec<MultiMap> {
    let per: Vec<Vec<MonotoneMap>> =
        source.iter().map(|&p| (0..=p).flat_map(|q| enumerate_epis(p, q)).collect()).collect();
    let mut out = Vec::new();
    for tuple in cartesian(&per) {
        let m = MultiMap(tuple.into());
        if !m.is_identity() {
            out.push(m);
        }
    }
    out.sort_by(|a, b| b.total_target_degree().cmp(&a.total_target_degree()).then(a.cmp(b)));
    out
}

/// Tuples of monomorphisms into `target`, excluding the identity tuple.
pub fn latching_objects_at(target: &[usize]) -> Vec<MultiMap> {
    let per: Vec<Vec<MonotoneMap>> = target
        .iter()
        .map(|&p| (0..=p).flat_map(|q| all_maps(q, p).into_iter().filter(MonotoneMap::is_mono)).collect())
        .collect();
    let mut out = Vec::new();
    for tuple in cartesian(&per) {
        let m = MultiMap(tuple.into());
        if !m.is_identity() {
            out.push(m);
        }
    }
    out.sort_by(|a, b| a.dom().iter().sum::<usize>().cmp(&b.dom().iter().sum()).then(a.cmp(b)));
    out
}

/// Objects of the matching category at `([k], .., [k])`.
pub fn matching_objects(n: usize, k: usize) -> Vec<MatchingCatObject> {
    matching_objects_at(&vec![k; n])
        .into_iter()
        .map(|m| MatchingCatObject { k, target: m.cod(), map: m })
        .collect()
}

pub(crate) fn cartesian<T: Clone>(lists: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut acc: Vec<Vec<T>> = vec![Vec::new()];
    for list in lists {
        let mut next = Vec::with_capacity(acc.len() * list.len());
        for prefix in &acc {
            for item in list {
                let mut v = prefix.clone();
                v.push(item.clone());
                next.push(v);
            }
        }
        acc = next;
    }
    acc
}

/// Factorization `m = rest ∘ (β, .., β)` through the diagonal that every
/// other diagonal factorization factors through uniquely. `β` collapses
/// exactly the adjacencies collapsed by every component.
pub fn terminal_factorization(m: &MultiMap) -> Result<(MonotoneMap, MultiMap)> {
    let k = m.component(0).dom();
    if !m.all_epi() || m.dom().iter().any(|&d| d != k) {
        return Err(Error::InvalidMap(format!("{m:?} is not a tuple of epis from a diagonal object")));
    }
    let u = m.components().iter().fold(u32::MAX, |acc, c| acc & c.collapse_set());
    let beta = MonotoneMap::epi_from_collapse_set(k, u);
    let q = beta.cod();
    let mut rest = SmallVec::new();
    for c in m.components() {
        let mut img: SmallVec<[u8; 6]> = smallvec::smallvec![0; q + 1];
        for s in 0..=k {
            img[beta.apply(s)] = c.raw()[s];
        }
        rest.push(MonotoneMap { cod: c.cod() as u8, img });
    }
    Ok((beta, MultiMap(rest)))
}

/// Every factorization `m = rest' ∘ (γ, .., γ)` with `γ` an epimorphism,
/// found by trying all epis and all candidate `rest'` components.
pub fn diagonal_factorizations_brute(m: &MultiMap) -> Vec<(MonotoneMap, MultiMap)> {
    let k = m.component(0).dom();
    let mut out = Vec::new();
    for r in 0..=k {
        for gamma in all_maps(k, r).into_iter().filter(MonotoneMap::is_epi) {
            let mut comps = Vec::new();
            for c in m.components() {
                let found = all_maps(r, c.cod())
                    .into_iter()
                    .find(|h| compose(h, &gamma).map(|hg| &hg == c).unwrap_or(false));
                match found {
                    Some(h) => comps.push(h),
                    None => break,
                }
            }
            if comps.len() == m.arity() {
                out.push((gamma, MultiMap::new(comps)));
            }
        }
    }
    out
}

/// Outcome of checking a terminal factorization against brute force.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TerminalCertificate {
    pub object: MultiMap,
    pub beta: MonotoneMap,
    pub factorizations_checked: usize,
    /// A factorization with zero or several mediating maps, if any.
    pub violation: Option<(MonotoneMap, usize)>,
}

impl TerminalCertificate {
    pub fn holds(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks that every diagonal factorization `(γ, rest')` of `m` factors through
/// the terminal one by exactly one `δ` with `δγ = β` and `rest' = rest ∘ Dδ`.
pub fn certify_terminal(m: &MultiMap) -> Result<TerminalCertificate> {
    let (beta, rest) = terminal_factorization(m)?;
    let found = diagonal_factorizations_brute(m);
    let n = m.arity();
    let mut violation = None;
    for (gamma, rest2) in &found {
        let count = all_maps(gamma.cod(), beta.cod())
            .into_iter()
            .filter(|delta| {
                compose(delta, gamma).map(|dg| dg == beta).unwrap_or(false)
                    && rest.after(&diagonal_embed(delta, n)).map(|r| &r == rest2).unwrap_or(false)
            })
            .count();
        if count != 1 {
            violation = Some((gamma.clone(), count));
            break;
        }
    }
    Ok(TerminalCertificate { object: m.clone(), beta, factorizations_checked: found.len(), violation })
}

/// A stage `C_i` of the filtration of the matching category at `([k], .., [k])`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiltrationStage {
    pub i: i64,
    pub objects: Vec<MatchingCatObject>,
}

impl FiltrationStage {
    pub fn contains(&self, m: &MultiMap) -> bool {
        self.objects.iter().any(|o| &o.map == m)
    }
}

fn in_stage(o: &MatchingCatObject, i: i64) -> bool {
    (o.total_degree() as i64) <= i || o.map.is_diagonal()
}

fn check_stage_index(n: usize, k: usize, i: i64, hi: i64) -> Result<()> {
    if i < -1 || i > hi {
        return Err(out_of_range("filtration index", i, format!("-1..={hi} for n={n}, k={k}")));
    }
    Ok(())
}

/// `C_i`: objects of total target degree at most `i`, together with the diagonal ones.
pub fn filtration_stage(n: usize, k: usize, i: i64) -> Result<FiltrationStage> {
    let top = (n * k) as i64 - 1;
    check_stage_index(n, k, i, top.max(-1))?;
    let objects = matching_objects(n, k).into_iter().filter(|o| in_stage(o, i)).collect();
    Ok(FiltrationStage { i, objects })
}

/// Splits the objects of `C_{i+1}` missing from `C_i` into `S_{i+1}` (those
/// factoring through a proper diagonal epimorphism) and `T_{i+1}`.
pub fn split_new_objects(n: usize, k: usize, i: i64) -> Result<(Vec<MatchingCatObject>, Vec<MatchingCatObject>)> {
    let top = (n * k) as i64 - 2;
    check_stage_index(n, k, i, top)?;
    let mut s = Vec::new();
    let mut t = Vec::new();
    for o in matching_objects(n, k) {
        if in_stage(&o, i + 1) && !in_stage(&o, i) {
            let (beta, _) = terminal_factorization(&o.map)?;
            if beta.is_identity() {
                t.push(o);
            } else {
                s.push(o);
            }
        }
    }
    Ok((s, t))
}

/// `C'_{i+1} = C_i ∪ S_{i+1}`.
pub fn primed_stage(n: usize, k: usize, i: i64) -> Result<FiltrationStage> {
    let mut stage = filtration_stage(n, k, i)?;
    let (s, _) = split_new_objects(n, k, i)?;
    stage.objects.extend(s);
    stage.i = i + 1;
    Ok(stage)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lex_rank_matches_enumeration() {
        for m in 0..=3 {
            for n in 0..=3 {
                for (i, f) in all_maps(m, n).iter().enumerate() {
                    assert_eq!(lex_rank(f), i);
                }
            }
        }
    }

    fn mm(images: &[usize], cod: usize) -> MonotoneMap {
        MonotoneMap::new(images, cod).unwrap()
    }

    #[test]
    fn compose_examples() {
        assert_eq!(compose(&mm(&[0, 1], 1), &mm(&[0, 0], 1)).unwrap(), mm(&[0, 0], 1));
        assert_eq!(compose(&mm(&[0, 0, 1], 1), &mm(&[0, 2, 2], 2)).unwrap(), mm(&[0, 1, 1], 1));
        for f in all_maps(2, 3) {
            assert_eq!(compose(&MonotoneMap::identity(3), &f).unwrap(), f);
        }
        assert!(matches!(
            compose(&mm(&[0, 1], 1), &mm(&[0, 2], 2)),
            Err(Error::Composition { .. })
        ));
    }

    #[test]
    fn constructor_rejects_bad_maps() {
        assert!(MonotoneMap::new(&[1, 0], 1).is_err());
        assert!(MonotoneMap::new(&[0, 3], 2).is_err());
        assert!(MonotoneMap::new(&[], 2).is_err());
    }

    #[test]
    fn factor_examples() {
        let (e, m) = epi_mono_factor(&mm(&[0, 0], 1));
        assert_eq!(e, mm(&[0, 0], 0));
        assert_eq!(m, mm(&[0], 1));
        let inj = mm(&[0, 2], 3);
        assert_eq!(epi_mono_factor(&inj), (MonotoneMap::identity(1), inj.clone()));
        let surj = mm(&[0, 0, 1], 1);
        assert_eq!(epi_mono_factor(&surj), (surj.clone(), MonotoneMap::identity(1)));
    }

    #[test]
    fn factorization_is_unique_by_enumeration() {
        let f = mm(&[0, 0], 1);
        let mut pairs = 0;
        for r in 0..=1 {
            for e in all_maps(1, r).into_iter().filter(MonotoneMap::is_epi) {
                for m in all_maps(r, 1).into_iter().filter(MonotoneMap::is_mono) {
                    if compose(&m, &e).unwrap() == f {
                        pairs += 1;
                    }
                }
            }
        }
        assert_eq!(pairs, 1);
    }

    #[test]
    fn coface_and_codegeneracy() {
        assert_eq!(MonotoneMap::coface(2, 1), mm(&[0, 2], 2));
        assert_eq!(MonotoneMap::codegeneracy(1, 0), mm(&[0, 0, 1], 1));
        assert!(MonotoneMap::coface(3, 0).is_mono());
        assert!(MonotoneMap::codegeneracy(2, 2).is_epi());
    }

    #[test]
    fn epi_counts() {
        assert_eq!(enumerate_epis(1, 0), vec![mm(&[0, 0], 0)]);
        assert_eq!(enumerate_epis(2, 1), vec![mm(&[0, 0, 1], 1), mm(&[0, 1, 1], 1)]);
        assert_eq!(enumerate_epis(3, 1).len(), 3);
        assert!(enumerate_epis(1, 2).is_empty());
        for k in 0..=4 {
            for p in 0..=k {
                let brute = all_maps(k, p).into_iter().filter(MonotoneMap::is_epi).count();
                assert_eq!(enumerate_epis(k, p).len(), brute);
                assert_eq!(brute, binomial(k, k - p));
            }
        }
    }

    #[test]
    fn matching_category_sizes() {
        assert_eq!(matching_objects(1, 1).len(), 1);
        assert_eq!(matching_objects(1, 1)[0].map, MultiMap::single(mm(&[0, 0], 0)));
        assert_eq!(matching_objects(2, 1).len(), 3);
        assert!(matching_objects(1, 0).is_empty());
        assert!(matching_objects(3, 0).is_empty());
        // (2^k)^n - 1 objects
        assert_eq!(matching_objects(2, 2).len(), 15);
        assert_eq!(matching_objects(3, 2).len(), 63);
    }

    #[test]
    fn terminal_factorization_examples() {
        let m = MultiMap::new(vec![mm(&[0, 0, 1], 1), mm(&[0, 1, 1], 1)]);
        let (beta, rest) = terminal_factorization(&m).unwrap();
        assert!(beta.is_identity() && beta.cod() == 2);
        assert_eq!(rest, m);

        let a = mm(&[0, 0, 1], 1);
        let (beta, rest) = terminal_factorization(&diagonal_embed(&a, 3)).unwrap();
        assert_eq!(beta, a);
        assert!(rest.is_identity());

        let m = MultiMap::new(vec![mm(&[0, 0, 1, 1], 1), mm(&[0, 0, 0, 1], 1)]);
        let (beta, rest) = terminal_factorization(&m).unwrap();
        assert_eq!(beta, mm(&[0, 0, 1, 2], 2));
        assert_eq!(rest.after(&diagonal_embed(&beta, 2)).unwrap(), m);
        assert!(certify_terminal(&m).unwrap().holds());
    }

    #[test]
    fn filtration_small_cases() {
        let sigma = mm(&[0, 0], 0);
        let id = MonotoneMap::identity(1);
        let st = filtration_stage(2, 1, -1).unwrap();
        assert_eq!(st.objects.len(), 1);
        assert_eq!(st.objects[0].map, diagonal_embed(&sigma, 2));

        let full = filtration_stage(2, 1, 1).unwrap();
        assert_eq!(full.objects.len(), 3);
        let (s, t) = split_new_objects(2, 1, 0).unwrap();
        assert!(s.is_empty());
        let maps: Vec<_> = t.iter().map(|o| o.map.clone()).collect();
        assert!(maps.contains(&MultiMap::new(vec![id.clone(), sigma.clone()])));
        assert!(maps.contains(&MultiMap::new(vec![sigma.clone(), id.clone()])));
        assert_eq!(maps.len(), 2);

        for k in 0..=3 {
            let lo = filtration_stage(1, k, -1).unwrap();
            assert_eq!(lo.objects.len(), matching_objects(1, k).len());
        }
        assert!(filtration_stage(2, 1, 2).is_err());
        assert!(filtration_stage(2, 1, -2).is_err());
        assert!(split_new_objects(2, 1, 1).is_err());
    }

    #[test]
    fn diagonal_embed_is_functorial() {
        for f in all_maps(1, 2) {
            for g in all_maps(2, 2) {
                let lhs = diagonal_embed(&compose(&g, &f).unwrap(), 3);
                let rhs = diagonal_embed(&g, 3).after(&diagonal_embed(&f, 3)).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
        assert!(diagonal_embed(&MonotoneMap::identity(2), 3).is_identity());
    }

    #[test]
    fn serde_round_trip() {
        let m = mm(&[0, 1, 1], 1);
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, "[0,1,1]");
        assert_eq!(serde_json::from_str::<MonotoneMap>(&s).unwrap(), m);
        let mmap = MultiMap::new(vec![m.clone(), MonotoneMap::identity(2)]);
        assert_eq!(serde_json::to_string(&mmap).unwrap(), "[[0,1,1],[0,1,2]]");
    }
}
