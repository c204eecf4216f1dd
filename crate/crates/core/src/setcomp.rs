//! Set compositions, bijections of label sets and permutations of lumps.
//!
//! A composition `F = (S_1 | … | S_k)` is read as the surjection `I → (k)`
//! sending `i` to the position of its lump; position 1 is the first lump.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::label::{GroundSet, Label};

/// Largest ground set accepted by [`Composition::enumerate`].
pub const MAX_ENUMERATE: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<GroundSet>", into = "Vec<GroundSet>")]
pub struct Composition {
    lumps: Vec<GroundSet>,
    ground: GroundSet,
}

impl TryFrom<Vec<GroundSet>> for Composition {
    type Error = Error;

    fn try_from(lumps: Vec<GroundSet>) -> Result<Self> {
        Composition::new(lumps)
    }
}

impl From<Composition> for Vec<GroundSet> {
    fn from(c: Composition) -> Self {
        c.lumps
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, s) in self.lumps.iter().enumerate() {
            if i > 0 {
                write!(f, "|")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, ")")
    }
}

impl Composition {
    pub fn new(lumps: Vec<GroundSet>) -> Result<Self> {
        let mut ground = GroundSet::empty();
        for s in &lumps {
            if s.is_empty() {
                return Err(Error::InvalidComposition("empty lump".into()));
            }
            ground = ground.disjoint_union(s).map_err(|_| Error::InvalidComposition(format!("lumps overlap at {s}")))?;
        }
        Ok(Composition { lumps, ground })
    }

    /// Convenience constructor from raw label lists.
    pub fn from_lumps<L: Into<Label>>(lumps: Vec<Vec<L>>) -> Result<Self> {
        let lumps = lumps.into_iter().map(GroundSet::new).collect::<Result<Vec<_>>>()?;
        Composition::new(lumps)
    }

    /// The one-lump composition `(I)`, or `( )` when `I` is empty.
    pub fn single(ground: &GroundSet) -> Self {
        let lumps = if ground.is_empty() { vec![] } else { vec![ground.clone()] };
        Composition { lumps, ground: ground.clone() }
    }

    /// The composition into singletons following the canonical order.
    pub fn singletons(ground: &GroundSet) -> Self {
        let lumps = ground.iter().map(|l| GroundSet::from_sorted_unchecked(vec![l.clone()])).collect();
        Composition { lumps, ground: ground.clone() }
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn lumps(&self) -> &[GroundSet] {
        &self.lumps
    }

    pub fn len(&self) -> usize {
        self.lumps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lumps.is_empty()
    }

    /// Zero-based position of the lump containing `l`.
    pub fn lump_index(&self, l: &Label) -> Option<usize> {
        self.lumps.iter().position(|s| s.contains(l))
    }

    fn same_ground(&self, other: &Composition) -> Result<()> {
        if self.ground != other.ground {
            return Err(Error::GroundMismatch(format!("{} vs {}", self.ground, other.ground)));
        }
        Ok(())
    }

    /// `FG = G|_{S_1}; …; G|_{S_k}`.
    pub fn tits_product(&self, g: &Composition) -> Result<Composition> {
        self.same_ground(g)?;
        let mut lumps = Vec::with_capacity(self.len() * g.len());
        for s in &self.lumps {
            for t in &g.lumps {
                let x = t.intersection(s);
                if !x.is_empty() {
                    lumps.push(x);
                }
            }
        }
        Ok(Composition { lumps, ground: self.ground.clone() })
    }

    pub fn concatenate(&self, k: &Composition) -> Result<Composition> {
        let ground = self.ground.disjoint_union(&k.ground)?;
        let lumps = self.lumps.iter().chain(k.lumps.iter()).cloned().collect();
        Ok(Composition { lumps, ground })
    }

    pub fn concatenate_all<'a>(parts: impl IntoIterator<Item = &'a Composition>) -> Result<Composition> {
        parts.into_iter().try_fold(Composition::single(&GroundSet::empty()), |acc, c| acc.concatenate(c))
    }

    /// `H|_S`, dropping lumps that become empty.
    pub fn restrict(&self, s: &GroundSet) -> Result<Composition> {
        self.ground.check_subset(s)?;
        let lumps = self.lumps.iter().map(|x| x.intersection(s)).filter(|x| !x.is_empty()).collect();
        Ok(Composition { lumps, ground: s.clone() })
    }

    /// `self ≤ f`: `self` arises from `f` by merging contiguous lumps.
    pub fn leq(&self, f: &Composition) -> Result<bool> {
        self.same_ground(f)?;
        Ok(self.merge_ranges_unchecked(f).is_some())
    }

    /// For `self ≤ f`, the range of `f`-lumps merged into each lump of `self`.
    pub fn merge_ranges(&self, f: &Composition) -> Result<Vec<Range<usize>>> {
        self.same_ground(f)?;
        self.merge_ranges_unchecked(f).ok_or_else(|| Error::NotRefinement(format!("{self} is not ≤ {f}")))
    }

    fn merge_ranges_unchecked(&self, f: &Composition) -> Option<Vec<Range<usize>>> {
        let mut out = Vec::with_capacity(self.len());
        let mut j = 0;
        for g in &self.lumps {
            let start = j;
            let mut seen = 0;
            while seen < g.len() {
                let s = f.lumps.get(j)?;
                if !s.is_subset(g) {
                    return None;
                }
                seen += s.len();
                j += 1;
            }
            out.push(start..j);
        }
        Some(out)
    }

    /// All `G` with `G ≤ self`, in a fixed order (one per subset of the `k-1` gaps).
    pub fn coarsenings(&self) -> Vec<Composition> {
        let k = self.len();
        if k == 0 {
            return vec![self.clone()];
        }
        (0..1u64 << (k - 1))
            .map(|cuts| {
                let mut lumps = Vec::new();
                let mut cur = self.lumps[0].clone();
                for i in 1..k {
                    if cuts >> (i - 1) & 1 == 1 {
                        lumps.push(std::mem::replace(&mut cur, self.lumps[i].clone()));
                    } else {
                        cur = cur.union(&self.lumps[i]);
                    }
                }
                lumps.push(cur);
                Composition { lumps, ground: self.ground.clone() }
            })
            .collect()
    }

    /// `F ∘ σ` for `σ: J → I`: lumps become their preimages, order kept.
    pub fn relabel(&self, sigma: &Bijection) -> Result<Composition> {
        if sigma.target() != &self.ground {
            return Err(Error::GroundMismatch(format!("bijection target {} vs {}", sigma.target(), self.ground)));
        }
        let lumps = self.lumps.iter().map(|s| sigma.preimage(s)).collect::<Result<Vec<_>>>()?;
        Ok(Composition { lumps, ground: sigma.source().clone() })
    }

    /// `β ∘ F`: the lump at position `i` moves to position `β(i)`.
    pub fn permute_lumps(&self, beta: &Perm) -> Result<Composition> {
        if beta.degree() != self.len() {
            return Err(Error::DegreeMismatch { expected: self.len(), got: beta.degree() });
        }
        let mut lumps = vec![GroundSet::empty(); self.len()];
        for (i, s) in self.lumps.iter().enumerate() {
            lumps[beta.apply(i)] = s.clone();
        }
        Ok(Composition { lumps, ground: self.ground.clone() })
    }

    /// Every composition of `ground`, ordered by length then lexicographically
    /// by the lump-index word of the canonical label order.
    pub fn enumerate(ground: &GroundSet) -> Result<Vec<Composition>> {
        let n = ground.len();
        if n > MAX_ENUMERATE {
            return Err(Error::TooLarge(format!("|I| = {n} > {MAX_ENUMERATE}")));
        }
        if n == 0 {
            return Ok(vec![Composition::single(ground)]);
        }
        let mut out = Vec::new();
        for k in 1..=n {
            for code in 0..k.pow(n as u32) {
                // digit i of `code` in base k is the lump of label i, first label most significant
                let mut word = vec![0usize; n];
                let mut c = code;
                for w in word.iter_mut().rev() {
                    *w = c % k;
                    c /= k;
                }
                let mut lumps: Vec<Vec<Label>> = vec![Vec::new(); k];
                for (i, &w) in word.iter().enumerate() {
                    lumps[w].push(ground.labels()[i].clone());
                }
                if lumps.iter().all(|l| !l.is_empty()) {
                    let lumps = lumps.into_iter().map(GroundSet::from_sorted_unchecked).collect();
                    out.push(Composition { lumps, ground: ground.clone() });
                }
            }
        }
        Ok(out)
    }
}

/// `β̂ ∈ Sym_k` with `β̂ ∘ F = (β ∘ G) F`, for `G ≤ F` and `β ∈ Sym_{len G}`.
///
/// Solved by search over `Sym_k`; lengths here are small.
pub fn hat_beta(beta: &Perm, f: &Composition, g: &Composition) -> Result<Perm> {
    g.merge_ranges(f)?;
    if beta.degree() != g.len() {
        return Err(Error::DegreeMismatch { expected: g.len(), got: beta.degree() });
    }
    if f.len() > MAX_ENUMERATE {
        return Err(Error::TooLarge(format!("length {} > {MAX_ENUMERATE}", f.len())));
    }
    let target = g.permute_lumps(beta)?.tits_product(f)?;
    Perm::all(f.len())
        .into_iter()
        .find(|gamma| f.permute_lumps(gamma).map(|x| x == target).unwrap_or(false))
        .ok_or_else(|| Error::Precondition("no permutation solves the defining equation".into()))
}

/// A permutation of `{1, …, k}`, stored zero-based; JSON uses one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Perm(Vec<usize>);

impl TryFrom<Vec<usize>> for Perm {
    type Error = Error;

    fn try_from(one_line: Vec<usize>) -> Result<Self> {
        Perm::from_one_line(&one_line)
    }
}

impl From<Perm> for Vec<usize> {
    fn from(p: Perm) -> Self {
        p.one_line()
    }
}

impl Perm {
    pub fn identity(k: usize) -> Self {
        Perm((0..k).collect())
    }

    /// From one-line notation `[β(1), …, β(k)]`, one-based.
    pub fn from_one_line(one_line: &[usize]) -> Result<Self> {
        let k = one_line.len();
        let mut seen = vec![false; k];
        let mut map = Vec::with_capacity(k);
        for &v in one_line {
            if v == 0 || v > k || seen[v - 1] {
                return Err(Error::InvalidPerm(format!("{one_line:?}")));
            }
            seen[v - 1] = true;
            map.push(v - 1);
        }
        Ok(Perm(map))
    }

    /// From a zero-based image vector.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let one: Vec<usize> = images.iter().map(|i| i + 1).collect();
        Perm::from_one_line(&one)
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.0.iter().map(|i| i + 1).collect()
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// Zero-based image of the zero-based position `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Perm(inv)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Perm) -> Result<Perm> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch { expected: self.degree(), got: other.degree() });
        }
        Ok(Perm(other.0.iter().map(|&j| self.0[j]).collect()))
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// All of `Sym_k` in lexicographic order of one-line notation.
    pub fn all(k: usize) -> Vec<Perm> {
        let mut cur: Vec<usize> = (0..k).collect();
        let mut out = vec![Perm(cur.clone())];
        loop {
            let Some(i) = (1..k).rev().find(|&i| cur[i - 1] < cur[i]) else {
                return out;
            };
            let j = (i..k).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
            out.push(Perm(cur.clone()));
        }
    }
}

/// A bijection `σ: J → I` between label sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bijection {
    source: GroundSet,
    target: GroundSet,
    map: BTreeMap<Label, Label>,
}

impl Bijection {
    pub fn new(map: BTreeMap<Label, Label>) -> Result<Self> {
        let source = GroundSet::new(map.keys().cloned())?;
        let target = GroundSet::new(map.values().cloned()).map_err(|e| Error::InvalidBijection(format!("not injective: {e}")))?;
        Ok(Bijection { source, target, map })
    }

    pub fn from_pairs<A: Into<Label>, B: Into<Label>>(pairs: impl IntoIterator<Item = (A, B)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (a, b) in pairs {
            let a = a.into();
            if map.insert(a.clone(), b.into()).is_some() {
                return Err(Error::InvalidBijection(format!("{a} mapped twice")));
            }
        }
        Bijection::new(map)
    }

    pub fn identity(ground: &GroundSet) -> Self {
        let map = ground.iter().map(|l| (l.clone(), l.clone())).collect();
        Bijection { source: ground.clone(), target: ground.clone(), map }
    }

    pub fn source(&self) -> &GroundSet {
        &self.source
    }

    pub fn target(&self) -> &GroundSet {
        &self.target
    }

    pub fn map(&self) -> &BTreeMap<Label, Label> {
        &self.map
    }

    pub fn apply(&self, j: &Label) -> Option<&Label> {
        self.map.get(j)
    }

    pub fn inverse(&self) -> Bijection {
        let map = self.map.iter().map(|(a, b)| (b.clone(), a.clone())).collect();
        Bijection { source: self.target.clone(), target: self.source.clone(), map }
    }

    /// `self ∘ other`, where `other: K → J` and `self: J → I`.
    pub fn compose(&self, other: &Bijection) -> Result<Bijection> {
        if other.target != self.source {
            return Err(Error::GroundMismatch(format!("{} vs {}", other.target, self.source)));
        }
        let map = other.map.iter().map(|(k, j)| (k.clone(), self.map[j].clone())).collect();
        Ok(Bijection { source: other.source.clone(), target: self.target.clone(), map })
    }

    /// `σ^{-1}(S)` for `S ⊆ I`.
    pub fn preimage(&self, s: &GroundSet) -> Result<GroundSet> {
        self.target.check_subset(s)?;
        let v: Vec<Label> = self.map.iter().filter(|(_, i)| s.contains(i)).map(|(j, _)| j.clone()).collect();
        Ok(GroundSet::from_sorted_unchecked(v))
    }

    /// The restriction `σ^{-1}(S) → S`.
    pub fn restrict_to_target(&self, s: &GroundSet) -> Result<Bijection> {
        let source = self.preimage(s)?;
        let map = source.iter().map(|j| (j.clone(), self.map[j].clone())).collect();
        Ok(Bijection { source, target: s.clone(), map })
    }
}

impl Serialize for Bijection {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let m: BTreeMap<String, &Label> = self.map.iter().map(|(k, v)| (k.key(), v)).collect();
        m.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Bijection {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let m: BTreeMap<String, Label> = BTreeMap::deserialize(de)?;
        let map = m.into_iter().map(|(k, v)| (Label::from_key(&k), v)).collect();
        Bijection::new(map).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(l: Vec<Vec<i64>>) -> Composition {
        Composition::from_lumps(l).unwrap()
    }

    #[test]
    fn tits_example() {
        let f = c(vec![vec![1, 2], vec![3]]);
        let g = c(vec![vec![1, 3], vec![2]]);
        assert_eq!(f.tits_product(&g).unwrap(), c(vec![vec![1], vec![2], vec![3]]));
    }

    #[test]
    fn restrict_example() {
        let h = c(vec![vec![1, 2], vec![3], vec![4, 5]]);
        let s = GroundSet::new([2, 3, 5]).unwrap();
        assert_eq!(h.restrict(&s).unwrap(), c(vec![vec![2], vec![3], vec![5]]));
        assert_eq!(h.restrict(&GroundSet::empty()).unwrap().len(), 0);
    }

    #[test]
    fn refines_examples() {
        let f = c(vec![vec![1], vec![2], vec![3]]);
        assert!(c(vec![vec![1, 2], vec![3]]).leq(&f).unwrap());
        assert!(!c(vec![vec![1, 3], vec![2]]).leq(&f).unwrap());
        assert!(f.leq(&f).unwrap());
    }

    #[test]
    fn relabel_example() {
        let sigma = Bijection::from_pairs([("a", 1), ("b", 2), ("c", 3)]).unwrap();
        let f = c(vec![vec![1, 2], vec![3]]);
        let expected = Composition::from_lumps(vec![vec!["a", "b"], vec!["c"]]).unwrap();
        assert_eq!(f.relabel(&sigma).unwrap(), expected);
    }

    #[test]
    fn permute_example() {
        let beta = Perm::from_one_line(&[2, 1]).unwrap();
        let f = c(vec![vec![1], vec![2, 3]]);
        assert_eq!(f.permute_lumps(&beta).unwrap(), c(vec![vec![2, 3], vec![1]]));
    }

    #[test]
    fn hat_beta_swap_example() {
        let f = c(vec![vec![1], vec![2], vec![3]]);
        let g = c(vec![vec![1, 2], vec![3]]);
        let beta = Perm::from_one_line(&[2, 1]).unwrap();
        let hb = hat_beta(&beta, &f, &g).unwrap();
        // (β∘G)F = ({3}|{1,2}) F = ({3}|{1}|{2}): lump {1} goes to position 2
        assert_eq!(hb.one_line(), vec![2, 3, 1]);
        assert_eq!(f.permute_lumps(&hb).unwrap(), c(vec![vec![3], vec![1], vec![2]]));
    }

    #[test]
    fn composition_counts() {
        // ordered Bell numbers
        let counts: Vec<usize> = (0..=5).map(|n| Composition::enumerate(&GroundSet::range(n)).unwrap().len()).collect();
        assert_eq!(counts, [1, 1, 3, 13, 75, 541]);
    }

    #[test]
    fn coarsenings_are_exactly_the_leq_set() {
        let g = GroundSet::range(4);
        let all = Composition::enumerate(&g).unwrap();
        for f in &all {
            let mut cs = f.coarsenings();
            cs.sort();
            let mut brute: Vec<_> = all.iter().filter(|x| x.leq(f).unwrap()).cloned().collect();
            brute.sort();
            assert_eq!(cs, brute);
        }
    }

    #[test]
    fn perm_all_is_sym() {
        assert_eq!(Perm::all(4).len(), 24);
        assert_eq!(Perm::all(0).len(), 1);
        let p = Perm::from_one_line(&[3, 1, 2]).unwrap();
        assert!(p.compose(&p.inverse()).unwrap().is_identity());
    }

    #[test]
    fn bijection_json_keys() {
        let sigma: Bijection = serde_json::from_str(r#"{"1": "a", "2": "b"}"#).unwrap();
        assert_eq!(sigma.apply(&Label::Int(1)), Some(&Label::from("a")));
        let back: Bijection = serde_json::from_str(&serde_json::to_string(&sigma).unwrap()).unwrap();
        assert_eq!(back, sigma);
    }
}
