//! Preposets and the pointed family `O•`.
//!
//! A preposet on `I` is stored as its strict part: the pairs `(i1, i2)` with
//! `i1 ≠ i2` and `i1 ≥ i2`. Row `a` of the bit matrix holds every `b` with
//! `(a, b)` in the relation. The order on preposets is reverse inclusion:
//! `q ≤ p` iff `p ⊆ q`. The total preposet of a composition puts earlier
//! lumps above later ones.

use std::fmt;

use crate::error::{Error, Result};
use crate::label::{GroundSet, Label};
use crate::setcomp::{Bijection, Composition};

/// Largest ground set accepted by [`Preposet::enumerate`].
pub const MAX_ENUMERATE: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Preposet {
    ground: GroundSet,
    rows: Vec<u64>,
}

impl fmt::Display for Preposet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:[", self.ground)?;
        for (i, (a, b)) in self.pairs().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "({a},{b})")?;
        }
        write!(f, "]")
    }
}

fn check_size(ground: &GroundSet) -> Result<()> {
    if ground.len() > 64 {
        return Err(Error::TooLarge(format!("|I| = {} > 64", ground.len())));
    }
    Ok(())
}

impl Preposet {
    /// Builds a preposet from its strict pairs, rejecting non-transitive input.
    pub fn new<A: Into<Label>, B: Into<Label>>(ground: GroundSet, pairs: impl IntoIterator<Item = (A, B)>) -> Result<Self> {
        check_size(&ground)?;
        let mut rows = vec![0u64; ground.len()];
        for (a, b) in pairs {
            let (a, b) = (a.into(), b.into());
            let ia = ground.index_of(&a).ok_or_else(|| Error::NotSubset(format!("{a} ∉ {ground}")))?;
            let ib = ground.index_of(&b).ok_or_else(|| Error::NotSubset(format!("{b} ∉ {ground}")))?;
            if ia == ib {
                continue;
            }
            rows[ia] |= 1 << ib;
        }
        let p = Preposet { ground, rows };
        if let Some((a, b, c)) = p.transitivity_violation() {
            return Err(Error::NotTransitive(format!("({a},{b}) and ({b},{c}) but not ({a},{c})")));
        }
        Ok(p)
    }

    pub(crate) fn from_rows(ground: GroundSet, rows: Vec<u64>) -> Self {
        debug_assert!(rows_transitive(&rows));
        Preposet { ground, rows }
    }

    pub fn antichain(ground: &GroundSet) -> Self {
        Preposet { ground: ground.clone(), rows: vec![0; ground.len()] }
    }

    pub fn complete(ground: &GroundSet) -> Self {
        let full = ground.full_mask();
        let rows = (0..ground.len()).map(|i| full & !(1 << i)).collect();
        Preposet { ground: ground.clone(), rows }
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    fn transitivity_violation(&self) -> Option<(Label, Label, Label)> {
        let l = self.ground.labels();
        for a in 0..self.rows.len() {
            for b in bits(self.rows[a]) {
                let missing = self.rows[b] & !self.rows[a] & !(1 << a);
                if missing != 0 {
                    let c = missing.trailing_zeros() as usize;
                    return Some((l[a].clone(), l[b].clone(), l[c].clone()));
                }
            }
        }
        None
    }

    /// Whether `(a, b)` is in the relation (always true for `a = b`).
    pub fn relates(&self, a: &Label, b: &Label) -> bool {
        match (self.ground.index_of(a), self.ground.index_of(b)) {
            (Some(i), Some(j)) => i == j || self.rows[i] >> j & 1 == 1,
            _ => false,
        }
    }

    pub fn pairs(&self) -> Vec<(Label, Label)> {
        let l = self.ground.labels();
        let mut out = Vec::new();
        for (a, &row) in self.rows.iter().enumerate() {
            for b in bits(row) {
                out.push((l[a].clone(), l[b].clone()));
            }
        }
        out
    }

    pub fn num_pairs(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    /// `rel(self) ⊆ rel(other)` on a common ground.
    pub fn is_subrelation(&self, other: &Preposet) -> Result<bool> {
        self.same_ground(other)?;
        Ok(self.rows.iter().zip(&other.rows).all(|(a, b)| a & !b == 0))
    }

    fn same_ground(&self, other: &Preposet) -> Result<()> {
        if self.ground != other.ground {
            return Err(Error::GroundMismatch(format!("{} vs {}", self.ground, other.ground)));
        }
        Ok(())
    }

    /// `q ≤ p` iff `p ⊆ q`.
    pub fn leq(&self, p: &Preposet) -> Result<bool> {
        p.is_subrelation(self)
    }

    pub fn restrict(&self, s: &GroundSet) -> Result<Preposet> {
        let mask = self.ground.mask_of(s)?;
        let idx: Vec<usize> = bits(mask).collect();
        let rows = idx.iter().map(|&a| idx.iter().enumerate().filter(|(_, &b)| self.rows[a] >> b & 1 == 1).fold(0u64, |r, (j, _)| r | 1 << j)).collect();
        Ok(Preposet { ground: s.clone(), rows })
    }

    /// Disjoint union of relations over `S ⊔ T`.
    pub fn disjoint_union(&self, other: &Preposet) -> Result<Preposet> {
        let ground = self.ground.disjoint_union(&other.ground)?;
        check_size(&ground)?;
        let pairs = self.pairs().into_iter().chain(other.pairs());
        Preposet::new(ground, pairs)
    }

    /// Total preposet of `F`: `(i1, i2)` whenever the lump of `i1` comes no later than that of `i2`.
    pub fn total_of(f: &Composition) -> Result<Preposet> {
        let ground = f.ground().clone();
        check_size(&ground)?;
        let pos: Vec<usize> = ground.iter().map(|l| f.lump_index(l).unwrap()).collect();
        let rows = (0..ground.len()).map(|a| (0..ground.len()).filter(|&b| b != a && pos[a] <= pos[b]).fold(0u64, |r, b| r | 1 << b)).collect();
        Ok(Preposet { ground, rows })
    }

    pub fn is_total(&self) -> bool {
        let n = self.rows.len();
        (0..n).all(|a| (0..n).all(|b| a == b || self.rows[a] >> b & 1 == 1 || self.rows[b] >> a & 1 == 1))
    }

    /// Inverse of [`Preposet::total_of`] on total preposets.
    pub fn to_composition(&self) -> Result<Composition> {
        if !self.is_total() {
            return Err(Error::NotTotal(format!("{self}")));
        }
        // in a total preposet the number of elements strictly below `a` ranks its lump
        let n = self.rows.len();
        let below = |a: usize| (0..n).filter(|&b| b != a && self.rows[a] >> b & 1 == 1 && self.rows[b] >> a & 1 == 0).count();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&a| std::cmp::Reverse(below(a)));
        let mut lumps: Vec<Vec<Label>> = Vec::new();
        let mut last: Option<usize> = None;
        for a in order {
            match last {
                Some(b) if self.rows[a] >> b & 1 == 1 && self.rows[b] >> a & 1 == 1 => lumps.last_mut().unwrap().push(self.ground.labels()[a].clone()),
                _ => lumps.push(vec![self.ground.labels()[a].clone()]),
            }
            last = Some(a);
        }
        Composition::from_lumps(lumps)
    }

    /// `(S, T) ≤ p` for a decomposition `S ⊔ T = I` given as the mask of `S`:
    /// no pair of the relation goes from `T` up to `S`.
    pub fn admits_mask(&self, s_mask: u64) -> bool {
        let t_mask = self.ground.full_mask() & !s_mask;
        bits(t_mask).all(|t| self.rows[t] & s_mask == 0)
    }

    /// `(S, T) ≤ p`. Holds vacuously when a block is empty.
    pub fn admits(&self, s: &GroundSet, t: &GroundSet) -> Result<bool> {
        self.ground.check_decomposition(s, t)?;
        Ok(self.admits_mask(self.ground.mask_of(s)?))
    }

    /// Same test through the ordering primitive: `rel(p) ⊆ rel(total (S|T))`.
    pub fn admits_via_total(&self, s: &GroundSet, t: &GroundSet) -> Result<bool> {
        self.ground.check_decomposition(s, t)?;
        let st = Composition::new([s, t].into_iter().filter(|x| !x.is_empty()).cloned().collect())?;
        self.is_subrelation(&Preposet::total_of(&st)?)
    }

    /// Whether `S` is upward closed: `s ∈ S` and `(t, s) ∈ p` force `t ∈ S`.
    pub fn is_upward_closed(&self, s: &GroundSet) -> Result<bool> {
        let m = self.ground.mask_of(s)?;
        Ok((0..self.rows.len()).all(|t| m >> t & 1 == 1 || self.rows[t] & m == 0))
    }

    /// Masks of all `S` with `(S, I∖S) ≤ p` and both blocks nonempty.
    pub fn upward_masks(&self) -> Vec<u64> {
        let full = self.ground.full_mask();
        (1..full).filter(|&m| self.admits_mask(m)).collect()
    }

    pub fn upward_pairs(&self) -> Vec<(GroundSet, GroundSet)> {
        let full = self.ground.full_mask();
        self.upward_masks().into_iter().map(|m| (self.ground.subset_from_mask(m), self.ground.subset_from_mask(full & !m))).collect()
    }

    /// Pullback along `σ: J → I`: `(j1, j2) ∈ p'` iff `(σ j1, σ j2) ∈ p`.
    pub fn relabel(&self, sigma: &Bijection) -> Result<Preposet> {
        if sigma.target() != &self.ground {
            return Err(Error::GroundMismatch(format!("{} vs {}", sigma.target(), self.ground)));
        }
        let inv = sigma.inverse();
        let pairs = self.pairs().into_iter().map(|(a, b)| (inv.apply(&a).unwrap().clone(), inv.apply(&b).unwrap().clone()));
        Preposet::new(sigma.source().clone(), pairs)
    }

    /// Every preposet on `ground`, ordered by the bitmask of the off-diagonal relation.
    pub fn enumerate(ground: &GroundSet) -> Result<Vec<Preposet>> {
        let n = ground.len();
        if n > MAX_ENUMERATE {
            return Err(Error::TooLarge(format!("|I| = {n} > {MAX_ENUMERATE}")));
        }
        let slots: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b))).collect();
        let mut out = Vec::new();
        for code in 0u64..1 << slots.len() {
            let mut rows = vec![0u64; n];
            for (k, &(a, b)) in slots.iter().enumerate() {
                if code >> k & 1 == 1 {
                    rows[a] |= 1 << b;
                }
            }
            if rows_transitive(&rows) {
                out.push(Preposet { ground: ground.clone(), rows });
            }
        }
        Ok(out)
    }
}

fn rows_transitive(rows: &[u64]) -> bool {
    (0..rows.len()).all(|a| bits(rows[a]).all(|b| rows[b] & !rows[a] & !(1 << a) == 0))
}

pub(crate) fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

/// A preposet or the distinguished bottom `•` on a ground set.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AugPreposet {
    Preposet(Preposet),
    Bottom(GroundSet),
}

impl fmt::Display for AugPreposet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AugPreposet::Preposet(p) => write!(f, "{p}"),
            AugPreposet::Bottom(g) => write!(f, "{g}:•"),
        }
    }
}

impl From<Preposet> for AugPreposet {
    fn from(p: Preposet) -> Self {
        AugPreposet::Preposet(p)
    }
}

impl AugPreposet {
    pub fn ground(&self) -> &GroundSet {
        match self {
            AugPreposet::Preposet(p) => p.ground(),
            AugPreposet::Bottom(g) => g,
        }
    }

    pub fn is_bottom(&self) -> bool {
        matches!(self, AugPreposet::Bottom(_))
    }

    pub fn as_preposet(&self) -> Option<&Preposet> {
        match self {
            AugPreposet::Preposet(p) => Some(p),
            AugPreposet::Bottom(_) => None,
        }
    }

    pub fn total_of(f: &Composition) -> Result<AugPreposet> {
        Preposet::total_of(f).map(AugPreposet::Preposet)
    }

    /// `q ≤ p`, with `• ≤` everything.
    pub fn leq(&self, p: &AugPreposet) -> Result<bool> {
        if self.ground() != p.ground() {
            return Err(Error::GroundMismatch(format!("{} vs {}", self.ground(), p.ground())));
        }
        Ok(match (self, p) {
            (AugPreposet::Bottom(_), _) => true,
            (_, AugPreposet::Bottom(_)) => false,
            (AugPreposet::Preposet(q), AugPreposet::Preposet(p)) => q.leq(p)?,
        })
    }

    /// `(p | q)`; absorbing on `•`.
    pub fn mul(&self, q: &AugPreposet) -> Result<AugPreposet> {
        let ground = self.ground().disjoint_union(q.ground())?;
        match (self, q) {
            (AugPreposet::Preposet(a), AugPreposet::Preposet(b)) => a.disjoint_union(b).map(AugPreposet::Preposet),
            _ => Ok(AugPreposet::Bottom(ground)),
        }
    }

    /// `(p⇂_S, p⫽_T)`: the restrictions when `(S, T) ≤ p`, otherwise `(•, •)`.
    pub fn comul(&self, s: &GroundSet, t: &GroundSet) -> Result<(AugPreposet, AugPreposet)> {
        self.ground().check_decomposition(s, t)?;
        let bottoms = || (AugPreposet::Bottom(s.clone()), AugPreposet::Bottom(t.clone()));
        match self {
            AugPreposet::Bottom(_) => Ok(bottoms()),
            AugPreposet::Preposet(p) => {
                if p.admits(s, t)? {
                    Ok((AugPreposet::Preposet(p.restrict(s)?), AugPreposet::Preposet(p.restrict(t)?)))
                } else {
                    Ok(bottoms())
                }
            }
        }
    }

    pub fn relabel(&self, sigma: &Bijection) -> Result<AugPreposet> {
        match self {
            AugPreposet::Preposet(p) => p.relabel(sigma).map(AugPreposet::Preposet),
            AugPreposet::Bottom(g) => {
                if sigma.target() != g {
                    return Err(Error::GroundMismatch(format!("{} vs {}", sigma.target(), g)));
                }
                Ok(AugPreposet::Bottom(sigma.source().clone()))
            }
        }
    }

    /// `O•[I]`: every preposet followed by `•`.
    pub fn enumerate(ground: &GroundSet) -> Result<Vec<AugPreposet>> {
        let mut v: Vec<AugPreposet> = Preposet::enumerate(ground)?.into_iter().map(AugPreposet::Preposet).collect();
        v.push(AugPreposet::Bottom(ground.clone()));
        Ok(v)
    }
}
