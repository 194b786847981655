//! The finite model `R/M`, `M = Π_{𝔭 ∈ S} 𝔭^k`.
//!
//! A set `(b + 𝔞) × T` is seen through the residues of its additive part and
//! of those `x ∈ T` with `v_𝔮(x) < k` for every `𝔮 ∈ S`. Membership in
//! `b + 𝔞`, `𝔞` or `𝔞 ∖ 𝔭𝔞` only depends on `x mod M` once `k` exceeds every
//! valuation, so inclusions and intersections are decided exactly.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::bits::BitSet;
use super::{meet, ConstructibleSet, Support};
use crate::error::{Error, Result};

/// Residue counts above this are refused.
const MAX_RESIDUES: usize = 1 << 22;

type Cache = HashMap<(Vec<i64>, Option<usize>), Arc<(Vec<usize>, BitSet)>>;

pub struct Level {
    support: Arc<Support>,
    k: u32,
    n: usize,
    /// Hermite basis of `M`.
    h: Vec<Vec<i64>>,
    strides: Vec<usize>,
    size: usize,
    /// `min(v_𝔭(r), k)` for residue `r` and prime `𝔭`, flattened.
    vals: Vec<u8>,
    cache: Mutex<Cache>,
}

/// The residues of a set's additive and multiplicative parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelImage {
    pub additive: BitSet,
    pub multiplicative: BitSet,
}

impl LevelImage {
    pub fn is_empty(&self) -> bool {
        self.additive.is_empty() || self.multiplicative.is_empty()
    }

    pub fn is_subset(&self, other: &LevelImage) -> bool {
        self.is_empty()
            || (self.additive.is_subset(&other.additive)
                && self.multiplicative.is_subset(&other.multiplicative))
    }

    pub fn same_set(&self, other: &LevelImage) -> bool {
        (self.is_empty() && other.is_empty()) || self == other
    }

    pub fn intersection(&self, other: &LevelImage) -> LevelImage {
        let mut out = self.clone();
        out.additive.intersect_with(&other.additive);
        out.multiplicative.intersect_with(&other.multiplicative);
        out
    }

    /// Number of pairs `(b, a)`.
    pub fn pair_count(&self) -> usize {
        if self.is_empty() {
            0
        } else {
            self.additive.count() * self.multiplicative.count()
        }
    }

    pub fn contains(&self, b: usize, a: usize) -> bool {
        self.additive.contains(b) && self.multiplicative.contains(a)
    }

    /// The pairs `(b, a)` as residue indices.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let mult: Vec<usize> = if self.is_empty() {
            Vec::new()
        } else {
            self.multiplicative.iter().collect()
        };
        self.additive
            .iter()
            .flat_map(move |b| mult.clone().into_iter().map(move |a| (b, a)))
    }
}

/// Image of `x` in `R/M × R/M`, `M = Π_{𝔭 ∈ S} 𝔭^k`.
pub fn enumerate_at_level(
    x: &ConstructibleSet,
    support: &Arc<Support>,
    k: u32,
) -> Result<LevelImage> {
    Level::new(support, k)?.image(x)
}

fn to_i64(v: &BigInt) -> i64 {
    v.to_i64().expect("residue coordinates fit in i64")
}

/// Hermite coordinates test in `i64` for an upper triangular basis.
fn member(basis: &[Vec<i64>], v: &[i64]) -> bool {
    let mut t = v.to_vec();
    for (i, row) in basis.iter().enumerate() {
        if t[i] % row[i] != 0 {
            return false;
        }
        let q = t[i] / row[i];
        for (tv, hv) in t.iter_mut().zip(row) {
            *tv -= q * hv;
        }
    }
    true
}

impl Level {
    pub fn new(support: &Arc<Support>, k: u32) -> Result<Level> {
        if k == 0 {
            return Err(Error::LevelTooSmall {
                level: 0,
                needed: 1,
            });
        }
        let n = support.field().degree();
        let modulus = support.ideal(&vec![k as i64; support.len()])?;
        let size = modulus
            .norm()
            .to_usize()
            .filter(|&s| s <= MAX_RESIDUES)
            .ok_or_else(|| {
                Error::InvalidSet(format!("R/M has more than {MAX_RESIDUES} residues"))
            })?;
        let h: Vec<Vec<i64>> = modulus
            .basis()
            .rows()
            .iter()
            .map(|r| r.iter().map(to_i64).collect())
            .collect();
        let mut strides = vec![1usize; n];
        for i in (0..n.saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * h[i + 1][i + 1] as usize;
        }
        let mut level = Level {
            support: support.clone(),
            k,
            n,
            h,
            strides,
            size,
            vals: Vec::new(),
            cache: Mutex::new(HashMap::new()),
        };
        let powers: Vec<Vec<Vec<Vec<i64>>>> = support
            .primes()
            .iter()
            .map(|pr| {
                (1..=k)
                    .map(|j| {
                        pr.ideal.pow(j).map(|a| {
                            a.basis()
                                .rows()
                                .iter()
                                .map(|r| r.iter().map(to_i64).collect())
                                .collect()
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        let mut vals = Vec::with_capacity(size * support.len());
        for r in 0..size {
            let v = level.vector(r);
            for pp in &powers {
                let e = pp.iter().take_while(|b| member(b, &v)).count();
                vals.push(e as u8);
            }
        }
        level.vals = vals;
        Ok(level)
    }

    pub fn support(&self) -> &Arc<Support> {
        &self.support
    }

    pub fn level(&self) -> u32 {
        self.k
    }

    /// `|R/M|`.
    pub fn size(&self) -> usize {
        self.size
    }

    /// Canonical coordinates of residue `idx`.
    pub fn vector(&self, idx: usize) -> Vec<i64> {
        (0..self.n)
            .map(|i| ((idx / self.strides[i]) % self.h[i][i] as usize) as i64)
            .collect()
    }

    /// Index of `v mod M`.
    pub fn index(&self, v: &[i64]) -> usize {
        let mut t = v.to_vec();
        for (i, row) in self.h.iter().enumerate() {
            let q = t[i].div_euclid(row[i]);
            if q != 0 {
                for (tv, hv) in t.iter_mut().zip(row) {
                    *tv -= q * hv;
                }
            }
        }
        t.iter()
            .zip(&self.strides)
            .map(|(&c, &s)| c as usize * s)
            .sum()
    }

    fn index_big(&self, v: &[BigInt]) -> usize {
        let h = crate::exactmath::IntMatrix::from_rows(
            self.h
                .iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        );
        let r: Vec<i64> = h.reduce_mod_rows(v).iter().map(to_i64).collect();
        self.index(&r)
    }

    /// `min(v_𝔭(r), k)` for each support prime.
    pub fn valuations(&self, idx: usize) -> &[u8] {
        let s = self.support.len();
        &self.vals[idx * s..(idx + 1) * s]
    }

    /// Residues of `𝔞` and the truncated multiplicative set (`𝔞ˣ`, or
    /// `𝔞 ∖ 𝔭𝔞` when `marked` is set).
    fn parts(&self, a: &[i64], marked: Option<usize>) -> Arc<(Vec<usize>, BitSet)> {
        let key = (a.to_vec(), marked);
        if let Some(hit) = self.cache.lock().unwrap().get(&key) {
            return hit.clone();
        }
        let k = self.k as u8;
        let mut lattice = Vec::new();
        let mut mult = BitSet::new(self.size);
        for r in 0..self.size {
            let v = self.valuations(r);
            if v.iter().zip(a).all(|(&x, &y)| x as i64 >= y) {
                lattice.push(r);
                let exact = marked.is_none_or(|p| v[p] as i64 == a[p]);
                if exact && v.iter().all(|&x| x < k) {
                    mult.insert(r);
                }
            }
        }
        let out = Arc::new((lattice, mult));
        self.cache.lock().unwrap().insert(key, out.clone());
        out
    }

    pub fn image(&self, x: &ConstructibleSet) -> Result<LevelImage> {
        let (rep, ideal, marked) = match x {
            ConstructibleSet::Empty => {
                return Ok(LevelImage {
                    additive: BitSet::new(self.size),
                    multiplicative: BitSet::new(self.size),
                })
            }
            ConstructibleSet::Full { rep, ideal } => (rep, ideal, None),
            ConstructibleSet::PDiff { rep, ideal, marked } => (rep, ideal, Some(*marked)),
        };
        if ideal.support() != &self.support {
            return Err(Error::InvalidSet(
                "set and level have different supports".into(),
            ));
        }
        let needed = x.needed_level();
        if needed > self.k {
            return Err(Error::LevelTooSmall {
                level: self.k,
                needed,
            });
        }
        let parts = self.parts(ideal.valuations(), marked);
        let b = self.vector(self.index_big(rep));
        let mut additive = BitSet::new(self.size);
        for &y in &parts.0 {
            let w: Vec<i64> = self.vector(y).iter().zip(&b).map(|(p, q)| p + q).collect();
            additive.insert(self.index(&w));
        }
        Ok(LevelImage {
            additive,
            multiplicative: parts.1.clone(),
        })
    }
}

/// Whether multiplicative parts take part in the check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndependenceMode {
    Full,
    /// Compare additive cosets only.
    AdditiveOnly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndependenceReport {
    pub independent: bool,
    /// A member and the members it properly contains whose union is it.
    pub witness: Option<(usize, Vec<usize>)>,
}

/// True iff no member is the union of the members it properly contains.
pub fn independence_check(
    family: &[ConstructibleSet],
    level: &Level,
    mode: IndependenceMode,
) -> Result<IndependenceReport> {
    let mut images = family
        .iter()
        .map(|x| level.image(x))
        .collect::<Result<Vec<_>>>()?;
    if mode == IndependenceMode::AdditiveOnly {
        for im in images.iter_mut() {
            if !im.additive.is_empty() {
                im.multiplicative = BitSet::full(level.size());
            }
        }
    }
    for (i, x) in images.iter().enumerate() {
        if x.is_empty() {
            continue;
        }
        let inside: Vec<usize> = images
            .iter()
            .enumerate()
            .filter(|(j, y)| *j != i && !y.is_empty() && y.is_subset(x) && !y.same_set(x))
            .map(|(j, _)| j)
            .collect();
        if !inside.is_empty() && covers(x, &inside, &images) {
            return Ok(IndependenceReport {
                independent: false,
                witness: Some((i, inside)),
            });
        }
    }
    Ok(IndependenceReport {
        independent: true,
        witness: None,
    })
}

/// `A × T ⊆ ∪ Aᵢ × Tᵢ`: for each `t ∈ T` the `Aᵢ` with `t ∈ Tᵢ` must cover
/// `A`. Residues `t` are grouped by which distinct `Tᵢ` contain them.
fn covers(x: &LevelImage, parts: &[usize], images: &[LevelImage]) -> bool {
    let mut ts: Vec<&BitSet> = Vec::new();
    let mut unions: Vec<BitSet> = Vec::new();
    for &j in parts {
        let y = &images[j];
        match ts.iter().position(|t| **t == y.multiplicative) {
            Some(p) => unions[p].union_with(&y.additive),
            None => {
                ts.push(&y.multiplicative);
                unions.push(y.additive.clone());
            }
        }
    }
    let mut seen: HashMap<Vec<bool>, bool> = HashMap::new();
    for t in x.multiplicative.iter() {
        let sig: Vec<bool> = ts.iter().map(|s| s.contains(t)).collect();
        let ok = *seen.entry(sig.clone()).or_insert_with(|| {
            let mut acc = BitSet::new(x.additive.len());
            for (u, _) in unions.iter().zip(&sig).filter(|(_, &b)| b) {
                acc.union_with(u);
            }
            x.additive.is_subset(&acc)
        });
        if !ok {
            return false;
        }
    }
    true
}

/// A finite universe of sets and the indices of a candidate filter in it.
#[derive(Debug, Clone)]
pub struct FilterTruncation {
    pub universe: Vec<ConstructibleSet>,
    pub members: Vec<usize>,
}

impl FilterTruncation {
    /// `{X ∈ universe : X ⊇ universe[base]}`.
    pub fn principal(universe: Vec<ConstructibleSet>, base: usize, level: &Level) -> Result<Self> {
        let images = universe
            .iter()
            .map(|x| level.image(x))
            .collect::<Result<Vec<_>>>()?;
        let b = images
            .get(base)
            .ok_or(Error::InvalidSet("base outside the universe".into()))?;
        let members = (0..universe.len())
            .filter(|&j| b.is_subset(&images[j]))
            .collect();
        Ok(FilterTruncation { universe, members })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilterReport {
    pub is_filter: bool,
    pub violation: Option<String>,
}

/// Checks at the given level that the members avoid `∅`, are closed upward
/// within the universe, and are closed under intersection.
pub fn is_filter(f: &FilterTruncation, level: &Level) -> Result<FilterReport> {
    let images = f
        .universe
        .iter()
        .map(|x| level.image(x))
        .collect::<Result<Vec<_>>>()?;
    let in_f: Vec<bool> = (0..f.universe.len())
        .map(|j| f.members.contains(&j))
        .collect();
    let fail = |msg: String| {
        Ok(FilterReport {
            is_filter: false,
            violation: Some(msg),
        })
    };
    if let Some(&i) = f.members.iter().find(|&&i| i >= f.universe.len()) {
        return Err(Error::InvalidSet(format!(
            "member {i} outside the universe"
        )));
    }
    for &i in &f.members {
        if images[i].is_empty() {
            return fail(format!("member {i} is empty"));
        }
    }
    for &i in &f.members {
        for j in 0..f.universe.len() {
            if !in_f[j] && images[i].is_subset(&images[j]) {
                return fail(format!("member {i} is contained in non-member {j}"));
            }
        }
    }
    for &i in &f.members {
        for &j in &f.members {
            if j < i {
                continue;
            }
            let m = meet(&f.universe[i], &f.universe[j])?;
            let im = level.image(&m)?;
            debug_assert!(im.same_set(&images[i].intersection(&images[j])));
            if !f.members.iter().any(|&l| images[l].same_set(&im)) {
                return fail(format!(
                    "intersection of members {i} and {j} is not a member"
                ));
            }
        }
    }
    Ok(FilterReport {
        is_filter: true,
        violation: None,
    })
}
