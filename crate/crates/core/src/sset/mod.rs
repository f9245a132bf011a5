//! Finite truncated simplicial sets.
//!
//! A [`TruncSSet`] stores every simplex (degenerate ones included) in
//! dimensions `0..=cap`, with face and degeneracy tables. Simplices are
//! plain indices; whatever labels a construction used are discarded once
//! the tables are built.

mod hom;
mod homology;
mod kan;

pub use hom::{exponential, exponential_with_labels, hom_set, Link, MapSystem};
pub use homology::{betti, boundary_rows, rank_mod_p, rank_over_rationals, BettiProfile, SparseRow};
pub use crate::diagrams::{category_of_simplices, reconstruct};
pub use kan::{is_kan_complex_capped, is_kan_fibration_capped, HornFailure, KanVerdict};

use std::collections::HashMap;
use std::hash::Hash;

use serde::Serialize;

use crate::delta::{all_maps, epi_mono_factor, lex_rank, MonotoneMap};
use crate::error::{Error, Result};
use crate::unionfind::DisjointSets;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSSet {
    cap: usize,
    counts: Vec<usize>,
    /// `faces[m][i][x]` for `1 <= m <= cap`; `faces[0]` is empty.
    faces: Vec<Vec<Vec<u32>>>,
    /// `degens[m][i][x]` for `m < cap`; `degens[cap]` is empty.
    degens: Vec<Vec<Vec<u32>>>,
}

impl TruncSSet {
    /// Builds from raw tables and checks every simplicial identity.
    pub fn from_tables(
        cap: usize,
        counts: Vec<usize>,
        faces: Vec<Vec<Vec<u32>>>,
        degens: Vec<Vec<Vec<u32>>>,
    ) -> Result<Self> {
        let s = Self { cap, counts, faces, degens };
        s.validate()?;
        Ok(s)
    }

    /// Builds from labelled simplices and a right action `act(x, θ) = x·θ`
    /// of monotone maps `θ: [m'] -> [m]` on `m`-simplices.
    pub fn from_action<K, F>(cap: usize, simplices: Vec<Vec<K>>, act: F) -> Result<Self>
    where
        K: Hash + Eq,
        F: Fn(&K, &MonotoneMap) -> K,
    {
        assert_eq!(simplices.len(), cap + 1, "one simplex list per dimension");
        let index: Vec<HashMap<&K, u32>> = simplices
            .iter()
            .map(|dim| dim.iter().enumerate().map(|(i, k)| (k, i as u32)).collect())
            .collect();
        let lookup = |m: usize, key: &K| -> Result<u32> {
            index[m].get(key).copied().ok_or_else(|| {
                Error::SimplicialIdentity(format!("operator result missing from dimension {m}"))
            })
        };
        let mut faces = vec![Vec::new()];
        let mut degens = Vec::new();
        for m in 0..=cap {
            if m >= 1 {
                let mut fm = Vec::with_capacity(m + 1);
                for i in 0..=m {
                    let d = MonotoneMap::coface(m, i);
                    fm.push(simplices[m].iter().map(|x| lookup(m - 1, &act(x, &d))).collect::<Result<Vec<_>>>()?);
                }
                faces.push(fm);
            }
            if m < cap {
                let mut sm = Vec::with_capacity(m + 1);
                for i in 0..=m {
                    let s = MonotoneMap::codegeneracy(m, i);
                    sm.push(simplices[m].iter().map(|x| lookup(m + 1, &act(x, &s))).collect::<Result<Vec<_>>>()?);
                }
                degens.push(sm);
            } else {
                degens.push(Vec::new());
            }
        }
        let counts = simplices.iter().map(Vec::len).collect();
        Self::from_tables(cap, counts, faces, degens)
    }

    pub fn empty(cap: usize) -> Self {
        let counts = vec![0; cap + 1];
        let faces = (0..=cap).map(|m| if m == 0 { Vec::new() } else { vec![Vec::new(); m + 1] }).collect();
        let degens = (0..=cap).map(|m| if m == cap { Vec::new() } else { vec![Vec::new(); m + 1] }).collect();
        Self { cap, counts, faces, degens }
    }

    /// The discrete simplicial set on `n` points.
    pub fn discrete(n: usize, cap: usize) -> Self {
        let simplices = (0..=cap).map(|_| (0..n).collect()).collect();
        Self::from_action(cap, simplices, |x: &usize, _| *x).expect("discrete")
    }

    pub fn point(cap: usize) -> Self {
        Self::discrete(1, cap)
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn count(&self, m: usize) -> usize {
        self.counts[m]
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }

    pub fn face(&self, m: usize, i: usize, x: usize) -> usize {
        self.faces[m][i][x] as usize
    }

    pub fn degen(&self, m: usize, i: usize, x: usize) -> usize {
        self.degens[m][i][x] as usize
    }

    pub(crate) fn face_table(&self, m: usize, i: usize) -> &[u32] {
        &self.faces[m][i]
    }

    pub(crate) fn degen_table(&self, m: usize, i: usize) -> &[u32] {
        &self.degens[m][i]
    }

    /// `x·θ` for an `m`-simplex `x` and `θ: [m'] -> [m]`, `m = θ.cod()`.
    pub fn act(&self, x: usize, theta: &MonotoneMap) -> usize {
        let (epi, mono) = epi_mono_factor(theta);
        let y = self.act_mono(x, &mono);
        self.act_epi(y, &epi)
    }

    fn act_mono(&self, x: usize, mono: &MonotoneMap) -> usize {
        let mut x = x;
        let mut img = mono.images();
        let mut m = mono.cod();
        while img.len() < m + 1 {
            // peel off the largest missing vertex
            let missing = (0..=m).rev().find(|v| !img.contains(v)).unwrap();
            x = self.face(m, missing, x);
            for v in img.iter_mut() {
                if *v > missing {
                    *v -= 1;
                }
            }
            m -= 1;
        }
        x
    }

    fn act_epi(&self, x: usize, epi: &MonotoneMap) -> usize {
        let mut img = epi.images();
        let mut ops = Vec::new();
        while img.len() > epi.cod() + 1 {
            let i = img.windows(2).position(|w| w[0] == w[1]).unwrap();
            img.remove(i + 1);
            ops.push((img.len() - 1, i));
        }
        // epi = σ^{i_1} ∘ .. so x·epi applies the degeneracies innermost first
        let mut x = x;
        for &(m, i) in ops.iter().rev() {
            x = self.degen(m, i, x);
        }
        x
    }

    /// The `j`-th vertex of an `m`-simplex.
    pub fn vertex(&self, m: usize, x: usize, j: usize) -> usize {
        let mut x = x;
        let mut dim = m;
        let mut j = j;
        while dim > 0 {
            // drop a vertex other than j
            let drop = if j == dim { 0 } else { dim };
            x = self.face(dim, drop, x);
            if drop < j {
                j -= 1;
            }
            dim -= 1;
        }
        x
    }

    pub fn vertices_of(&self, m: usize, x: usize) -> Vec<usize> {
        (0..=m).map(|j| self.vertex(m, x, j)).collect()
    }

    /// Marks the simplices of dimension `m` not in the image of any degeneracy.
    pub fn nondegenerate(&self, m: usize) -> Vec<bool> {
        let mut flags = vec![true; self.counts[m]];
        if m > 0 {
            for i in 0..m {
                for &y in &self.degens[m - 1][i] {
                    flags[y as usize] = false;
                }
            }
        }
        flags
    }

    pub fn nondegenerate_counts(&self) -> Vec<usize> {
        (0..=self.cap).map(|m| self.nondegenerate(m).iter().filter(|&&b| b).count()).collect()
    }

    /// Checks the simplicial identities and that degeneracies are injective.
    pub fn validate(&self) -> Result<()> {
        let cap = self.cap;
        let bad = |msg: String| Err(Error::SimplicialIdentity(msg));
        if self.counts.len() != cap + 1 || self.faces.len() != cap + 1 || self.degens.len() != cap + 1 {
            return bad("table lengths do not match the cap".into());
        }
        for m in 1..=cap {
            if self.faces[m].len() != m + 1 {
                return bad(format!("dimension {m} needs {} face maps", m + 1));
            }
            for (i, f) in self.faces[m].iter().enumerate() {
                if f.len() != self.counts[m] || f.iter().any(|&y| y as usize >= self.counts[m - 1]) {
                    return bad(format!("face d_{i} on dimension {m} is not a function into dimension {}", m - 1));
                }
            }
        }
        for m in 0..cap {
            if self.degens[m].len() != m + 1 {
                return bad(format!("dimension {m} needs {} degeneracy maps", m + 1));
            }
            for (i, s) in self.degens[m].iter().enumerate() {
                if s.len() != self.counts[m] || s.iter().any(|&y| y as usize >= self.counts[m + 1]) {
                    return bad(format!("degeneracy s_{i} on dimension {m} is not a function into dimension {}", m + 1));
                }
            }
        }
        // d_i d_j = d_{j-1} d_i for i < j
        for m in 2..=cap {
            for x in 0..self.counts[m] {
                for j in 1..=m {
                    for i in 0..j {
                        if self.face(m - 1, i, self.face(m, j, x)) != self.face(m - 1, j - 1, self.face(m, i, x)) {
                            return bad(format!("d_{i} d_{j} = d_{} d_{i} fails on simplex {x} of dimension {m}", j - 1));
                        }
                    }
                }
            }
        }
        for m in 0..cap {
            for x in 0..self.counts[m] {
                for j in 0..=m {
                    let sx = self.degen(m, j, x);
                    for i in 0..=m + 1 {
                        let lhs = self.face(m + 1, i, sx);
                        let rhs = if i < j {
                            self.degen(m - 1, j - 1, self.face(m, i, x))
                        } else if i == j || i == j + 1 {
                            x
                        } else {
                            self.degen(m - 1, j, self.face(m, i - 1, x))
                        };
                        if lhs != rhs {
                            return bad(format!("d_{i} s_{j} fails on simplex {x} of dimension {m}"));
                        }
                    }
                    if m + 1 < cap {
                        for i in 0..=j {
                            let lhs = self.degen(m + 1, i, sx);
                            let rhs = self.degen(m + 1, j + 1, self.degen(m, i, x));
                            if lhs != rhs {
                                return bad(format!("s_{i} s_{j} = s_{} s_{i} fails on simplex {x} of dimension {m}", j + 1));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The sub-simplicial set on the flagged simplices, with its inclusion.
    pub fn subcomplex(&self, keep: &[Vec<bool>]) -> Result<(TruncSSet, SSetMap)> {
        let mut new_index: Vec<Vec<u32>> = Vec::with_capacity(self.cap + 1);
        let mut incl: Vec<Vec<u32>> = Vec::with_capacity(self.cap + 1);
        for m in 0..=self.cap {
            let mut idx = vec![u32::MAX; self.counts[m]];
            let mut inc = Vec::new();
            for x in 0..self.counts[m] {
                if keep[m][x] {
                    idx[x] = inc.len() as u32;
                    inc.push(x as u32);
                }
            }
            new_index.push(idx);
            incl.push(inc);
        }
        let remap = |m: usize, y: u32| -> Result<u32> {
            let v = new_index[m][y as usize];
            if v == u32::MAX {
                Err(Error::SimplicialIdentity(format!("subcomplex is not closed: simplex {y} of dimension {m} missing")))
            } else {
                Ok(v)
            }
        };
        let mut faces = vec![Vec::new()];
        let mut degens = Vec::new();
        for m in 0..=self.cap {
            if m >= 1 {
                let fm = (0..=m)
                    .map(|i| incl[m].iter().map(|&x| remap(m - 1, self.faces[m][i][x as usize])).collect())
                    .collect::<Result<Vec<Vec<u32>>>>()?;
                faces.push(fm);
            }
            if m < self.cap {
                let sm = (0..=m)
                    .map(|i| incl[m].iter().map(|&x| remap(m + 1, self.degens[m][i][x as usize])).collect())
                    .collect::<Result<Vec<Vec<u32>>>>()?;
                degens.push(sm);
            } else {
                degens.push(Vec::new());
            }
        }
        let counts = incl.iter().map(Vec::len).collect();
        let sub = TruncSSet { cap: self.cap, counts, faces, degens };
        Ok((sub, SSetMap { maps: incl }))
    }

    /// The simplices that are degeneracies of simplices of dimension at most `j`.
    pub fn skeleton_flags(&self, j: usize) -> Vec<Vec<bool>> {
        let mut flags: Vec<Vec<bool>> = Vec::with_capacity(self.cap + 1);
        for m in 0..=self.cap {
            if m <= j {
                flags.push(vec![true; self.counts[m]]);
                continue;
            }
            let mut f = vec![false; self.counts[m]];
            for i in 0..m {
                for y in 0..self.counts[m - 1] {
                    if flags[m - 1][y] {
                        f[self.degen(m - 1, i, y)] = true;
                    }
                }
            }
            flags.push(f);
        }
        flags
    }

    pub fn skeleton(&self, j: usize) -> TruncSSet {
        self.subcomplex(&self.skeleton_flags(j)).expect("skeleta are closed").0
    }

    /// Every face and degeneracy operator is a bijection.
    pub fn is_discrete(&self) -> bool {
        self.counts.iter().all(|&c| c == self.counts[0]) && self.nondegenerate_counts().iter().skip(1).all(|&c| c == 0)
    }
}

/// A map of truncated simplicial sets, one index function per dimension.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SSetMap {
    maps: Vec<Vec<u32>>,
}

impl SSetMap {
    pub fn new(source: &TruncSSet, target: &TruncSSet, maps: Vec<Vec<u32>>) -> Result<Self> {
        let f = Self { maps };
        f.check(source, target)?;
        Ok(f)
    }

    pub(crate) fn from_raw(maps: Vec<Vec<u32>>) -> Self {
        Self { maps }
    }

    /// Builds from a function on simplices, checked for compatibility.
    pub fn from_fn(source: &TruncSSet, target: &TruncSSet, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let maps = (0..=source.cap).map(|m| (0..source.count(m)).map(|x| f(m, x) as u32).collect()).collect();
        Self::new(source, target, maps)
    }

    pub fn identity(x: &TruncSSet) -> Self {
        Self { maps: x.counts.iter().map(|&c| (0..c as u32).collect()).collect() }
    }

    /// The unique map to a one-point object.
    pub fn to_point(x: &TruncSSet) -> Self {
        Self { maps: x.counts.iter().map(|&c| vec![0; c]).collect() }
    }

    pub fn apply(&self, m: usize, x: usize) -> usize {
        self.maps[m][x] as usize
    }

    pub fn table(&self, m: usize) -> &[u32] {
        &self.maps[m]
    }

    pub fn tables(&self) -> &[Vec<u32>] {
        &self.maps
    }

    /// `self ∘ f`.
    pub fn after(&self, f: &SSetMap) -> SSetMap {
        SSetMap {
            maps: f.maps.iter().enumerate().map(|(m, t)| t.iter().map(|&x| self.maps[m][x as usize]).collect()).collect(),
        }
    }

    pub fn check(&self, source: &TruncSSet, target: &TruncSSet) -> Result<()> {
        if source.cap != target.cap {
            return Err(Error::CapMismatch(source.cap, target.cap));
        }
        if self.maps.len() != source.cap + 1 {
            return Err(Error::NotSimplicial("wrong number of dimensions".into()));
        }
        for m in 0..=source.cap {
            if self.maps[m].len() != source.count(m) || self.maps[m].iter().any(|&y| y as usize >= target.count(m)) {
                return Err(Error::NotSimplicial(format!("dimension {m} is not a function between the simplex sets")));
            }
        }
        for m in 0..=source.cap {
            for x in 0..source.count(m) {
                let fx = self.apply(m, x);
                if m >= 1 {
                    for i in 0..=m {
                        if self.apply(m - 1, source.face(m, i, x)) != target.face(m, i, fx) {
                            return Err(Error::NotSimplicial(format!("fails to commute with d_{i} on simplex {x} of dimension {m}")));
                        }
                    }
                }
                if m < source.cap {
                    for i in 0..=m {
                        if self.apply(m + 1, source.degen(m, i, x)) != target.degen(m, i, fx) {
                            return Err(Error::NotSimplicial(format!("fails to commute with s_{i} on simplex {x} of dimension {m}")));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_injective(&self) -> bool {
        self.maps.iter().all(|t| {
            let mut seen = std::collections::HashSet::with_capacity(t.len());
            t.iter().all(|y| seen.insert(*y))
        })
    }

    pub fn is_isomorphism(&self, target: &TruncSSet) -> bool {
        self.maps.iter().enumerate().all(|(m, t)| t.len() == target.count(m)) && self.is_injective()
    }

    /// Per-dimension image flags in the target.
    pub fn image_flags(&self, target: &TruncSSet) -> Vec<Vec<bool>> {
        (0..=target.cap)
            .map(|m| {
                let mut f = vec![false; target.count(m)];
                for &y in &self.maps[m] {
                    f[y as usize] = true;
                }
                f
            })
            .collect()
    }
}

/// The standard `k`-simplex: `m`-simplices are the monotone maps `[m] -> [k]`.
pub fn standard_simplex(k: usize, cap: usize) -> TruncSSet {
    let simplices = (0..=cap).map(|m| all_maps(m, k)).collect();
    TruncSSet::from_action(cap, simplices, |x: &MonotoneMap, th| x.after(th).expect("composable"))
        .expect("standard simplex")
}

/// `θ_*: Δ[m'] -> Δ[m]` for `θ: [m'] -> [m]`, by postcomposition.
pub fn standard_map(theta: &MonotoneMap, cap: usize) -> SSetMap {
    SSetMap {
        maps: (0..=cap)
            .map(|j| all_maps(j, theta.dom()).iter().map(|u| lex_rank(&theta.after(u).expect("composable")) as u32).collect())
            .collect(),
    }
}

/// Index of the simplex `u: [m] -> [k]` in [`standard_simplex`].
pub fn standard_index(u: &MonotoneMap) -> usize {
    lex_rank(u)
}

/// The boundary of the standard `k`-simplex (non-surjective maps).
pub fn standard_boundary(k: usize, cap: usize) -> TruncSSet {
    let simplices = (0..=cap)
        .map(|m| all_maps(m, k).into_iter().filter(|x| !x.is_epi()).collect())
        .collect();
    TruncSSet::from_action(cap, simplices, |x: &MonotoneMap, th| x.after(th).expect("composable"))
        .expect("boundary of a standard simplex")
}

/// The nerve of the indiscrete groupoid on `n` objects (a Kan complex).
pub fn indiscrete(n: usize, cap: usize) -> TruncSSet {
    let simplices = (0..=cap).map(|m| words(n, m + 1)).collect();
    TruncSSet::from_action(cap, simplices, |x: &Vec<usize>, th| th.images().iter().map(|&i| x[i]).collect())
        .expect("indiscrete nerve")
}

fn words(n: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..n).map(move |c| {
                    let mut v = w.clone();
                    v.push(c);
                    v
                })
            })
            .collect();
    }
    out
}

/// Mixed-radix index helpers for dimensionwise products.
fn encode(parts: &[usize], radices: &[usize]) -> usize {
    parts.iter().zip(radices).fold(0, |acc, (&p, &r)| acc * r + p)
}

fn decode(mut idx: usize, radices: &[usize]) -> Vec<usize> {
    let mut parts = vec![0; radices.len()];
    for (slot, &r) in parts.iter_mut().zip(radices).rev() {
        *slot = idx % r;
        idx /= r;
    }
    parts
}

/// Dimensionwise product of finitely many factors, with its projections.
pub fn product_with_projections(factors: &[&TruncSSet]) -> Result<(TruncSSet, Vec<SSetMap>)> {
    let cap = factors.first().map(|f| f.cap).unwrap_or(0);
    for f in factors {
        if f.cap != cap {
            return Err(Error::CapMismatch(cap, f.cap));
        }
    }
    let radices: Vec<Vec<usize>> = (0..=cap).map(|m| factors.iter().map(|f| f.count(m)).collect()).collect();
    let counts: Vec<usize> = radices.iter().map(|r| r.iter().product()).collect();
    let mut faces = vec![Vec::new()];
    let mut degens = Vec::new();
    for m in 0..=cap {
        if m >= 1 {
            let fm = (0..=m)
                .map(|i| {
                    (0..counts[m])
                        .map(|x| {
                            let parts = decode(x, &radices[m]);
                            let img: Vec<usize> = parts.iter().zip(factors).map(|(&p, f)| f.face(m, i, p)).collect();
                            encode(&img, &radices[m - 1]) as u32
                        })
                        .collect()
                })
                .collect();
            faces.push(fm);
        }
        if m < cap {
            let sm = (0..=m)
                .map(|i| {
                    (0..counts[m])
                        .map(|x| {
                            let parts = decode(x, &radices[m]);
                            let img: Vec<usize> = parts.iter().zip(factors).map(|(&p, f)| f.degen(m, i, p)).collect();
                            encode(&img, &radices[m + 1]) as u32
                        })
                        .collect()
                })
                .collect();
            degens.push(sm);
        } else {
            degens.push(Vec::new());
        }
    }
    let prod = TruncSSet { cap, counts: counts.clone(), faces, degens };
    let projections = (0..factors.len())
        .map(|j| SSetMap {
            maps: (0..=cap).map(|m| (0..counts[m]).map(|x| decode(x, &radices[m])[j] as u32).collect()).collect(),
        })
        .collect();
    Ok((prod, projections))
}

pub fn product(factors: &[&TruncSSet]) -> Result<TruncSSet> {
    Ok(product_with_projections(factors)?.0)
}

/// Index of the simplex with the given components in `product(factors)`.
pub fn product_index(factors: &[&TruncSSet], m: usize, parts: &[usize]) -> usize {
    let radices: Vec<usize> = factors.iter().map(|f| f.count(m)).collect();
    encode(parts, &radices)
}

pub fn product_components(factors: &[&TruncSSet], m: usize, x: usize) -> Vec<usize> {
    let radices: Vec<usize> = factors.iter().map(|f| f.count(m)).collect();
    decode(x, &radices)
}

/// `f_1 × .. × f_n` between products built by [`product`].
pub fn product_map(sources: &[&TruncSSet], targets: &[&TruncSSet], maps: &[&SSetMap]) -> SSetMap {
    let cap = sources[0].cap;
    SSetMap {
        maps: (0..=cap)
            .map(|m| {
                let total: usize = sources.iter().map(|s| s.count(m)).product();
                (0..total)
                    .map(|x| {
                        let parts = product_components(sources, m, x);
                        let img: Vec<usize> = parts.iter().zip(maps).map(|(&p, f)| f.apply(m, p)).collect();
                        product_index(targets, m, &img) as u32
                    })
                    .collect()
            })
            .collect(),
    }
}

/// Flags for the simplices that are iterated degeneracies of vertices.
pub fn zero_skeleton_flags(a: &TruncSSet) -> Vec<Vec<bool>> {
    a.skeleton_flags(0)
}

/// The degreewise 0-skeleton: only iterated degeneracies of vertices remain.
pub fn zero_skeleton(a: &TruncSSet) -> TruncSSet {
    a.skeleton(0)
}

/// Path components computed from 1-simplex endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Components {
    pub count: usize,
    /// Component label of every vertex, numbered by first occurrence.
    pub labels: Vec<usize>,
    /// Set when the cap is 0, so no edges were available.
    pub cap_limited: bool,
}

pub fn path_components(a: &TruncSSet) -> Components {
    let n = a.count(0);
    let mut ds = DisjointSets::new(n);
    if a.cap >= 1 {
        for e in 0..a.count(1) {
            ds.union(a.face(1, 0, e), a.face(1, 1, e));
        }
    }
    let (count, labels) = ds.labels();
    Components { count, labels, cap_limited: a.cap == 0 }
}

/// Builds simplices of `K × Δ[m]` keyed by `(k, θ)` so maps out of it can
/// be expressed with an explicit second coordinate.
pub fn times_standard(k: &TruncSSet, m: usize) -> Result<(TruncSSet, TruncSSet)> {
    let simplex = standard_simplex(m, k.cap);
    let prod = product(&[k, &simplex])?;
    Ok((prod, simplex))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delta::MonotoneMap;

    #[test]
    fn standard_simplex_counts() {
        let p = standard_simplex(0, 3);
        assert_eq!(p.counts(), &[1, 1, 1, 1]);
        let s1 = standard_simplex(1, 1);
        assert_eq!(s1.counts(), &[2, 3]);
        assert_eq!(s1.nondegenerate_counts(), vec![2, 1]);
        let s2 = standard_simplex(2, 2);
        assert_eq!(s2.count(2), 10);
    }

    #[test]
    fn product_counts() {
        let s1 = standard_simplex(1, 2);
        let sq = product(&[&s1, &s1]).unwrap();
        assert_eq!(sq.count(0), 4);
        assert_eq!(sq.count(1), 9);
        assert_eq!(sq.nondegenerate_counts(), vec![4, 5, 2]);
        let s1 = standard_simplex(1, 3);
        let s2 = standard_simplex(2, 3);
        let prism = product(&[&s1, &s2]).unwrap();
        assert_eq!(prism.nondegenerate_counts()[3], 3);
        let pt = TruncSSet::point(3);
        let a = product(&[&s2, &pt]).unwrap();
        assert_eq!(a, s2);
        assert!(matches!(product(&[&s1, &standard_simplex(1, 2)]), Err(Error::CapMismatch(3, 2))));
    }

    #[test]
    fn operator_action_matches_composition() {
        let s = standard_simplex(2, 3);
        let simplices: Vec<Vec<MonotoneMap>> = (0..=3).map(|m| all_maps(m, 2)).collect();
        for m in 0..=3 {
            for (x, label) in simplices[m].iter().enumerate() {
                for m2 in 0..=3 {
                    for th in all_maps(m2, m) {
                        let expect = label.after(&th).unwrap();
                        let got = s.act(x, &th);
                        assert_eq!(simplices[m2][got], expect);
                    }
                }
            }
        }
    }

    #[test]
    fn zero_skeleton_components() {
        let s1 = standard_simplex(1, 2);
        assert_eq!(path_components(&zero_skeleton(&s1)).count, 2);
        let pt = standard_simplex(0, 2);
        assert_eq!(zero_skeleton(&pt), pt);
        let sq = product(&[&s1, &s1]).unwrap();
        assert_eq!(path_components(&zero_skeleton(&sq)).count, 4);
        for k in 0..=3 {
            assert_eq!(path_components(&standard_simplex(k, 2)).count, 1);
        }
        let c = path_components(&TruncSSet::discrete(3, 0));
        assert_eq!(c.count, 3);
        assert!(c.cap_limited);
    }

    #[test]
    fn vertices_of_simplices() {
        let s = standard_simplex(3, 2);
        let labels = all_maps(2, 3);
        for (x, l) in labels.iter().enumerate() {
            let vs = s.vertices_of(2, x);
            let expected: Vec<usize> = l.images();
            let vlabels = all_maps(0, 3);
            let got: Vec<usize> = vs.iter().map(|&v| vlabels[v].apply(0)).collect();
            assert_eq!(got, expected);
        }
    }

    #[test]
    fn corrupt_faces_rejected() {
        let s = standard_simplex(1, 1);
        let mut faces = s.faces.clone();
        faces[1][0].swap(0, 2);
        let err = TruncSSet::from_tables(1, s.counts.clone(), faces, s.degens.clone()).unwrap_err();
        assert!(matches!(err, Error::SimplicialIdentity(_)), "{err}");
    }

    #[test]
    fn indiscrete_is_valid() {
        let e = indiscrete(2, 3);
        assert_eq!(e.counts(), &[2, 4, 8, 16]);
        assert_eq!(path_components(&e).count, 1);
    }

    #[test]
    fn boundary_and_discreteness() {
        let b = standard_boundary(1, 2);
        assert!(b.is_discrete());
        assert_eq!(b.count(0), 2);
        assert!(!standard_simplex(1, 2).is_discrete());
    }

    #[test]
    fn map_composition_and_check() {
        let s = standard_simplex(1, 2);
        let pt = TruncSSet::point(2);
        let f = SSetMap::to_point(&s);
        f.check(&s, &pt).unwrap();
        let id = SSetMap::identity(&s);
        assert_eq!(f.after(&id), f);
        let bad = SSetMap::from_raw(vec![vec![0, 1], vec![0, 0, 0], (0..4).collect()]);
        assert!(bad.check(&s, &s).is_err());
    }
}
