//! Enumeration of compatible families of simplicial maps.
//!
//! A [`MapSystem`] asks for maps `f_α: K_α -> X_α`, one per index, such that
//! `f_β ∘ k = x ∘ f_α` for every registered link `(α, β, k, x)`. Hom sets,
//! ends, Tot and homotopy limits are all instances.

use std::collections::HashMap;

use super::{product, product_map, standard_map, standard_simplex, SSetMap, TruncSSet};
use crate::delta::MonotoneMap;
use crate::error::{Error, Result};

const UNSET: u32 = u32::MAX;

pub struct Link<'a> {
    pub from: usize,
    pub to: usize,
    pub source_map: &'a SSetMap,
    pub target_map: &'a SSetMap,
}

pub struct MapSystem<'a> {
    sources: Vec<&'a TruncSSet>,
    targets: Vec<&'a TruncSSet>,
    links: Vec<Link<'a>>,
    fixed: Vec<(usize, usize, usize, usize)>,
}

impl<'a> MapSystem<'a> {
    pub fn new(sources: Vec<&'a TruncSSet>, targets: Vec<&'a TruncSSet>) -> Result<Self> {
        if sources.len() != targets.len() {
            return Err(Error::Category("each source needs a target".into()));
        }
        if let Some(first) = sources.first() {
            let cap = first.cap();
            for s in sources.iter().chain(targets.iter()) {
                if s.cap() != cap {
                    return Err(Error::CapMismatch(cap, s.cap()));
                }
            }
        }
        Ok(Self { sources, targets, links: Vec::new(), fixed: Vec::new() })
    }

    /// Requires `f_to ∘ source_map = target_map ∘ f_from`.
    pub fn link(&mut self, from: usize, to: usize, source_map: &'a SSetMap, target_map: &'a SSetMap) {
        self.links.push(Link { from, to, source_map, target_map });
    }

    /// Requires `f_α(x) = v` for an `m`-simplex `x`.
    pub fn fix(&mut self, alpha: usize, m: usize, x: usize, v: usize) {
        self.fixed.push((alpha, m, x, v));
    }

    pub fn len(&self) -> usize {
        self.sources.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sources.is_empty()
    }

    /// Visits each solution as per-index tables `[α][m][x]`; the visitor
    /// returns false to stop early.
    pub fn for_each(&self, mut visit: impl FnMut(&[Vec<Vec<u32>>]) -> bool) {
        let mut st = Solver::new(self);
        for &(a, m, x, v) in &self.fixed {
            if !st.assign(a, m, x, v as u32) {
                return;
            }
        }
        let order = self.search_order(st.cap);
        struct Frame {
            pos: usize,
            cands: Vec<u32>,
            next: usize,
            mark: usize,
        }
        let mut stack: Vec<Frame> = Vec::new();
        let mut pos = 0;
        loop {
            while pos < order.len() && st.is_set(order[pos]) {
                pos += 1;
            }
            if pos == order.len() {
                if !visit(&st.vals) {
                    return;
                }
            } else {
                let cands = st.candidates(order[pos]);
                stack.push(Frame { pos, cands, next: 0, mark: st.trail.len() });
            }
            loop {
                let Some(top) = stack.last_mut() else { return };
                st.undo(top.mark);
                if top.next >= top.cands.len() {
                    stack.pop();
                    continue;
                }
                let v = top.cands[top.next];
                top.next += 1;
                let (a, m, x) = order[top.pos];
                if st.assign(a, m, x, v) {
                    pos = top.pos + 1;
                    break;
                }
            }
        }
    }

    /// Nondegenerate simplices, each placed right after its faces so that
    /// top-dimensional constraints prune as early as possible.
    fn search_order(&self, cap: usize) -> Vec<(usize, usize, usize)> {
        fn visit(s: &TruncSSet, nd: &[Vec<bool>], seen: &mut [Vec<bool>], a: usize, m: usize, x: usize, out: &mut Vec<(usize, usize, usize)>) {
            if seen[m][x] {
                return;
            }
            seen[m][x] = true;
            if m >= 1 {
                for i in 0..=m {
                    visit(s, nd, seen, a, m - 1, s.face(m, i, x), out);
                }
            }
            if nd[m][x] {
                out.push((a, m, x));
            }
        }
        let mut out = Vec::new();
        for (a, s) in self.sources.iter().enumerate() {
            let nd: Vec<Vec<bool>> = (0..=cap).map(|m| s.nondegenerate(m)).collect();
            let mut seen: Vec<Vec<bool>> = (0..=cap).map(|m| vec![false; s.count(m)]).collect();
            for m in (0..=cap).rev() {
                for x in 0..s.count(m) {
                    if nd[m][x] {
                        visit(s, &nd, &mut seen, a, m, x, &mut out);
                    }
                }
            }
        }
        out
    }

    /// All solutions, failing with [`Error::TooLarge`] past `limit`.
    pub fn solve(&self, limit: usize) -> Result<Vec<Vec<SSetMap>>> {
        let mut out = Vec::new();
        let mut over = false;
        self.for_each(|vals| {
            if out.len() == limit {
                over = true;
                return false;
            }
            out.push(vals.iter().map(|t| SSetMap::from_raw(t.clone())).collect());
            true
        });
        if over {
            Err(Error::TooLarge(limit))
        } else {
            Ok(out)
        }
    }

    pub fn count(&self, limit: usize) -> Result<usize> {
        let mut n = 0;
        self.for_each(|_| {
            n += 1;
            n <= limit
        });
        if n > limit {
            Err(Error::TooLarge(limit))
        } else {
            Ok(n)
        }
    }

    pub fn first(&self) -> Option<Vec<SSetMap>> {
        let mut found = None;
        self.for_each(|vals| {
            found = Some(vals.iter().map(|t| SSetMap::from_raw(t.clone())).collect());
            false
        });
        found
    }
}

struct Solver<'s, 'a> {
    sys: &'s MapSystem<'a>,
    cap: usize,
    vals: Vec<Vec<Vec<u32>>>,
    trail: Vec<(usize, usize, usize)>,
    queue: Vec<(usize, usize, usize, u32)>,
    links_from: Vec<Vec<usize>>,
    face_index: Vec<Vec<Option<HashMap<Vec<u32>, Vec<u32>>>>>,
}

impl<'s, 'a> Solver<'s, 'a> {
    fn new(sys: &'s MapSystem<'a>) -> Self {
        let cap = sys.sources.first().map(|s| s.cap()).unwrap_or(0);
        let vals = sys.sources.iter().map(|s| s.counts().iter().map(|&c| vec![UNSET; c]).collect()).collect();
        let mut links_from = vec![Vec::new(); sys.sources.len()];
        for (i, l) in sys.links.iter().enumerate() {
            links_from[l.from].push(i);
        }
        let face_index = sys.sources.iter().map(|_| vec![None; cap + 1]).collect();
        Self { sys, cap, vals, trail: Vec::new(), queue: Vec::new(), links_from, face_index }
    }

    fn is_set(&self, (a, m, x): (usize, usize, usize)) -> bool {
        self.vals[a][m][x] != UNSET
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (a, m, x) = self.trail.pop().unwrap();
            self.vals[a][m][x] = UNSET;
        }
    }

    fn candidates(&mut self, (a, m, x): (usize, usize, usize)) -> Vec<u32> {
        let tgt = self.sys.targets[a];
        if m == 0 {
            return (0..tgt.count(0) as u32).collect();
        }
        let src = self.sys.sources[a];
        let key: Vec<u32> = (0..=m).map(|i| self.vals[a][m - 1][src.face(m, i, x)]).collect();
        debug_assert!(key.iter().all(|&v| v != UNSET));
        let index = self.face_index[a][m].get_or_insert_with(|| {
            let mut idx: HashMap<Vec<u32>, Vec<u32>> = HashMap::new();
            for y in 0..tgt.count(m) {
                let k = (0..=m).map(|i| tgt.face(m, i, y) as u32).collect();
                idx.entry(k).or_default().push(y as u32);
            }
            idx
        });
        index.get(&key).cloned().unwrap_or_default()
    }

    /// Assigns and propagates; on conflict returns false (caller undoes).
    fn assign(&mut self, a: usize, m: usize, x: usize, v: u32) -> bool {
        self.queue.clear();
        if !self.set(a, m, x, v) {
            return false;
        }
        while let Some((a, m, x, v)) = self.queue.pop() {
            let src = self.sys.sources[a];
            let tgt = self.sys.targets[a];
            let v = v as usize;
            if m >= 1 {
                for i in 0..=m {
                    if !self.set(a, m - 1, src.face(m, i, x), tgt.face(m, i, v) as u32) {
                        return false;
                    }
                }
            }
            if m < self.cap {
                for i in 0..=m {
                    if !self.set(a, m + 1, src.degen(m, i, x), tgt.degen(m, i, v) as u32) {
                        return false;
                    }
                }
            }
            for li in 0..self.links_from[a].len() {
                let l = &self.sys.links[self.links_from[a][li]];
                let (to, kx, xv) = (l.to, l.source_map.apply(m, x), l.target_map.apply(m, v) as u32);
                if !self.set(to, m, kx, xv) {
                    return false;
                }
            }
        }
        true
    }

    fn set(&mut self, a: usize, m: usize, x: usize, v: u32) -> bool {
        let cur = self.vals[a][m][x];
        if cur == UNSET {
            self.vals[a][m][x] = v;
            self.trail.push((a, m, x));
            self.queue.push((a, m, x, v));
            true
        } else {
            cur == v
        }
    }
}

/// All simplicial maps `k -> x`.
pub fn hom_set(k: &TruncSSet, x: &TruncSSet, limit: usize) -> Result<Vec<SSetMap>> {
    let sys = MapSystem::new(vec![k], vec![x])?;
    Ok(sys.solve(limit)?.into_iter().map(|mut v| v.pop().unwrap()).collect())
}

/// `Map(K, X)` with its simplices: `labels[m]` lists the maps `K × Δ[m] -> X`
/// in the order used by the returned object.
pub fn exponential_with_labels(k: &TruncSSet, x: &TruncSSet, limit: usize) -> Result<(TruncSSet, Vec<Vec<SSetMap>>)> {
    let cap = k.cap();
    if x.cap() != cap {
        return Err(Error::CapMismatch(cap, x.cap()));
    }
    let simplices: Vec<TruncSSet> = (0..=cap).map(|m| standard_simplex(m, cap)).collect();
    let prods: Vec<TruncSSet> = simplices.iter().map(|s| product(&[k, s])).collect::<Result<_>>()?;
    let labels: Vec<Vec<SSetMap>> = prods.iter().map(|p| hom_set(p, x, limit)).collect::<Result<_>>()?;
    let id = SSetMap::identity(k);
    let mut induced: HashMap<MonotoneMap, SSetMap> = HashMap::new();
    for m in 0..=cap {
        let mut ops = Vec::new();
        if m >= 1 {
            ops.extend((0..=m).map(|i| MonotoneMap::coface(m, i)));
        }
        if m < cap {
            ops.extend((0..=m).map(|i| MonotoneMap::codegeneracy(m, i)));
        }
        for th in ops {
            let (a, b) = (th.dom(), th.cod());
            let f = product_map(&[k, &simplices[a]], &[k, &simplices[b]], &[&id, &standard_map(&th, cap)]);
            induced.insert(th, f);
        }
    }
    let obj = TruncSSet::from_action(cap, labels.clone(), |f: &SSetMap, th| f.after(&induced[th]))?;
    Ok((obj, labels))
}

pub fn exponential(k: &TruncSSet, x: &TruncSSet, limit: usize) -> Result<TruncSSet> {
    Ok(exponential_with_labels(k, x, limit)?.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delta::all_maps;
    use crate::sset::{indiscrete, product, standard_boundary, standard_simplex};

    #[test]
    fn yoneda_counts() {
        // maps Δ[k] -> X are the k-simplices of X
        let x = indiscrete(2, 3);
        for k in 0..=3 {
            let maps = hom_set(&standard_simplex(k, 3), &x, 10_000).unwrap();
            assert_eq!(maps.len(), x.count(k));
        }
        for k in 0..=2 {
            for n in 0..=2 {
                let maps = hom_set(&standard_simplex(k, 2), &standard_simplex(n, 2), 1000).unwrap();
                assert_eq!(maps.len(), all_maps(k, n).len());
            }
        }
    }

    #[test]
    fn boundary_maps() {
        // maps ∂Δ[2] -> Δ[1] are monotone vertex assignments
        let b = standard_boundary(2, 2);
        let maps = hom_set(&b, &standard_simplex(1, 2), 100).unwrap();
        assert_eq!(maps.len(), 4);
        let maps = hom_set(&b, &standard_boundary(2, 2), 1000).unwrap();
        assert!(maps.contains(&SSetMap::identity(&b)));
        for f in &maps {
            f.check(&b, &standard_boundary(2, 2)).unwrap();
        }
    }

    #[test]
    fn exponential_examples() {
        let s1 = standard_simplex(1, 2);
        let e = exponential(&s1, &s1, 1000).unwrap();
        assert_eq!(e.count(0), 3);
        let pt = TruncSSet::point(2);
        let x = indiscrete(2, 2);
        // Map(Δ[0], X) ≅ X and Map(K, Δ[0]) ≅ Δ[0]
        assert_eq!(exponential(&pt, &x, 1000).unwrap().counts(), x.counts());
        assert_eq!(exponential(&s1, &pt, 1000).unwrap().counts(), pt.counts());
        // Map(∂Δ[1], X) ≅ X × X
        let b = standard_boundary(1, 2);
        let xx = product(&[&x, &x]).unwrap();
        assert_eq!(exponential(&b, &x, 10_000).unwrap().counts(), xx.counts());
    }

    #[test]
    fn limit_and_links() {
        let s = standard_simplex(1, 2);
        let sq = product(&[&s, &s]).unwrap();
        assert!(matches!(hom_set(&sq, &sq, 3), Err(Error::TooLarge(3))));
        // f_1 ∘ id = id ∘ f_0 forces f_0 = f_1
        let id = SSetMap::identity(&s);
        let mut sys = MapSystem::new(vec![&s, &s], vec![&s, &s]).unwrap();
        sys.link(0, 1, &id, &id);
        assert_eq!(sys.count(100).unwrap(), 3);
        sys.fix(0, 0, 0, 1);
        assert_eq!(sys.count(100).unwrap(), 1);
    }
}
