//! Coroot cones `σ°_p` in the coweight lattice.
//!
//! Membership uses the halfspace description: `h ∈ σ°_p` iff `⟨h, λ_S⟩ ≤ 0`
//! for every `(S, T) ≤ p`. The cone of `•` is empty.

use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::label::{GroundSet, Label};
use crate::preposet::{AugPreposet, Preposet};
use crate::vector::{window_points, AffinePoint, Scalar};

/// A zero-sum vector of `M_I` (integer by default).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct CoweightVector<T: Scalar = i64>(AffinePoint<T>);

impl<T: Scalar> Deref for CoweightVector<T> {
    type Target = AffinePoint<T>;

    fn deref(&self) -> &AffinePoint<T> {
        &self.0
    }
}

impl<'de, T: Scalar + Deserialize<'de>> Deserialize<'de> for CoweightVector<T> {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let p = AffinePoint::<T>::deserialize(de)?;
        CoweightVector::try_from(p).map_err(serde::de::Error::custom)
    }
}

impl<T: Scalar> TryFrom<AffinePoint<T>> for CoweightVector<T> {
    type Error = Error;

    fn try_from(p: AffinePoint<T>) -> Result<Self> {
        if !p.sum().is_zero() {
            return Err(Error::Invalid(format!("coordinate sum {:?} ≠ 0", p.sum())));
        }
        Ok(CoweightVector(p))
    }
}

impl<T: Scalar> CoweightVector<T> {
    pub fn new(ground: GroundSet, coords: Vec<T>) -> Result<Self> {
        AffinePoint::new(ground, coords)?.try_into()
    }

    pub fn zero(ground: &GroundSet) -> Self {
        CoweightVector(AffinePoint::zero(ground))
    }

    /// `h_{i1 i2}`: `+1` at `i1`, `−1` at `i2`.
    pub fn coroot(i1: &Label, i2: &Label, ground: &GroundSet) -> Result<Self> {
        if i1 == i2 {
            return Err(Error::Precondition(format!("coroot needs distinct labels, got {i1} twice")));
        }
        let mut coords = vec![T::zero(); ground.len()];
        let a = ground.index_of(i1).ok_or_else(|| Error::NotSubset(format!("{i1} ∉ {ground}")))?;
        let b = ground.index_of(i2).ok_or_else(|| Error::NotSubset(format!("{i2} ∉ {ground}")))?;
        coords[a] = T::one();
        coords[b] = -T::one();
        Ok(CoweightVector(AffinePoint::new(ground.clone(), coords)?))
    }

    pub fn as_affine(&self) -> &AffinePoint<T> {
        &self.0
    }

    pub fn into_affine(self) -> AffinePoint<T> {
        self.0
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(CoweightVector(self.0.add(&other.0)?))
    }

    pub fn scale(&self, c: T) -> Self {
        let coords = self.coords().iter().map(|x| x.clone() * c.clone()).collect();
        CoweightVector(AffinePoint::new(self.ground().clone(), coords).unwrap())
    }

    pub fn relabel(&self, sigma: &crate::setcomp::Bijection) -> Result<Self> {
        Ok(CoweightVector(self.0.relabel(sigma)?))
    }
}

/// L∞ window of radius `bound` used to enumerate lattice points of unbounded cones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeBox {
    pub bound: u32,
}

impl Default for LatticeBox {
    fn default() -> Self {
        LatticeBox { bound: 3 }
    }
}

impl LatticeBox {
    pub fn new(bound: u32) -> Self {
        LatticeBox { bound }
    }
}

fn check_ground(p: &GroundSet, h: &GroundSet) -> Result<()> {
    if p != h {
        return Err(Error::GroundMismatch(format!("{p} vs {h}")));
    }
    Ok(())
}

/// Membership in `σ°_p` against precomputed upward masks.
pub fn contains_with_masks<T: Scalar>(masks: &[u64], h: &AffinePoint<T>) -> bool {
    masks.iter().all(|&m| h.pairing_mask(m) <= T::zero())
}

pub fn cone_contains<T: Scalar>(p: &AugPreposet, h: &CoweightVector<T>) -> Result<bool> {
    check_ground(p.ground(), h.ground())?;
    Ok(match p {
        AugPreposet::Bottom(_) => false,
        AugPreposet::Preposet(p) => contains_with_masks(&p.upward_masks(), h),
    })
}

/// Integer points of `σ°_p` with `‖h‖∞ ≤ B`, in lexicographic order.
pub fn cone_lattice_points(p: &AugPreposet, window: LatticeBox) -> Vec<CoweightVector> {
    let AugPreposet::Preposet(q) = p else {
        return Vec::new();
    };
    let masks = q.upward_masks();
    let center = vec![0; q.ground().len()];
    window_points(q.ground(), &center, window.bound as i64, 0).into_iter().filter(|h| contains_with_masks(&masks, h)).map(CoweightVector).collect()
}

/// `m_{(S,T)}`: juxtaposition of coordinates.
pub fn cone_product_map<T: Scalar>(h1: &CoweightVector<T>, h2: &CoweightVector<T>) -> Result<CoweightVector<T>> {
    Ok(CoweightVector(h1.0.juxtapose(&h2.0)?))
}

/// The preposet indexing the `λ_S`-face of `σ°_p`: `(p⇂_S | p⫽_T)` when
/// `(S, T) ≤ p`, otherwise `•`.
pub fn cone_face(p: &Preposet, s: &GroundSet, t: &GroundSet) -> Result<AugPreposet> {
    if !p.admits(s, t)? {
        return Ok(AugPreposet::Bottom(p.ground().clone()));
    }
    Ok(AugPreposet::Preposet(p.restrict(s)?.disjoint_union(&p.restrict(t)?)?))
}

/// When `(S, T) ≰ p`, a coroot of `σ°_p` pairing positively with `λ_S`.
pub fn face_obstruction(p: &Preposet, s: &GroundSet, t: &GroundSet) -> Result<Option<CoweightVector>> {
    p.ground().check_decomposition(s, t)?;
    for a in t.iter() {
        for b in s.iter() {
            if p.relates(a, b) {
                // (t, s) ∈ p puts h_{s t} in the cone
                return CoweightVector::coroot(b, a, p.ground()).map(Some);
            }
        }
    }
    Ok(None)
}
