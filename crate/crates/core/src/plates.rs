//! Plates `[[H]]_z`, affine semisimple flats and `F`-faces.
//!
//! `[[H]]_z` is the set of `h` with `Σ h = hei(z)` and `⟨h, λ_Ā⟩ ≤ z(Ā)` for
//! every proper nonempty initial segment `Ā` of `H`. Plates are unbounded, so
//! lattice points are listed inside an L∞ window around a point of the
//! maximal affine flat.

use serde::{Deserialize, Serialize};

use crate::boolfun::BooleanFunction;
use crate::cones::{face_obstruction, CoweightVector, LatticeBox};
use crate::error::{Error, Result};
use crate::label::GroundSet;
use crate::preposet::Preposet;
use crate::setcomp::Composition;
use crate::vector::{window_points, AffinePoint, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Plate {
    #[serde(rename = "H")]
    comp: Composition,
    z: BooleanFunction,
}

/// `T_{F,(a_1,…,a_k)}`: points whose coordinate sum over lump `i` is `a_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FlatSpec {
    #[serde(rename = "F")]
    pub comp: Composition,
    pub heights: Vec<i64>,
}

/// Masks of the proper nonempty initial segments of `h`.
pub fn segment_masks(h: &Composition) -> Vec<u64> {
    let mut m = 0u64;
    let mut out = Vec::new();
    let k = h.len();
    for s in h.lumps().iter().take(k.saturating_sub(1)) {
        m |= h.ground().mask_of(s).unwrap();
        out.push(m);
    }
    out
}

/// `⟨h, λ_A⟩ ≤ z(A)`.
pub fn halfspace_contains<T: Scalar>(a: &GroundSet, z: &BooleanFunction, h: &AffinePoint<T>) -> Result<bool> {
    if h.ground() != z.ground() {
        return Err(Error::GroundMismatch(format!("{} vs {}", h.ground(), z.ground())));
    }
    Ok(h.pairing(a)? <= T::from_int(z.value(a)?))
}

impl Plate {
    pub fn new(comp: Composition, z: BooleanFunction) -> Result<Self> {
        if comp.ground() != z.ground() {
            return Err(Error::GroundMismatch(format!("{} vs {}", comp.ground(), z.ground())));
        }
        Ok(Plate { comp, z })
    }

    pub fn composition(&self) -> &Composition {
        &self.comp
    }

    pub fn z(&self) -> &BooleanFunction {
        &self.z
    }

    pub fn ground(&self) -> &GroundSet {
        self.comp.ground()
    }

    pub fn contains<T: Scalar>(&self, h: &AffinePoint<T>) -> Result<bool> {
        if h.ground() != self.ground() {
            return Err(Error::GroundMismatch(format!("{} vs {}", h.ground(), self.ground())));
        }
        Ok(self.contains_unchecked(&segment_masks(&self.comp), h))
    }

    fn contains_unchecked<T: Scalar>(&self, masks: &[u64], h: &AffinePoint<T>) -> bool {
        h.sum() == T::from_int(self.z.height()) && masks.iter().all(|&m| h.pairing_mask(m) <= T::from_int(self.z.value_mask(m)))
    }

    /// `T_{H, hei(Δ_H z)}`, the largest affine subspace inside the plate.
    pub fn max_affine_flat(&self) -> FlatSpec {
        let heights = self.z.comul_along(&self.comp).unwrap().iter().map(BooleanFunction::height).collect();
        FlatSpec { comp: self.comp.clone(), heights }
    }

    /// Membership in the `F`-face `[[H]]_z ∩ T_{F, hei(Δ_F z)}`; empty unless `F ≤ H`.
    pub fn f_face_contains<T: Scalar>(&self, f: &Composition, h: &AffinePoint<T>) -> Result<bool> {
        if !f.leq(&self.comp)? {
            return Ok(false);
        }
        let heights = self.z.comul_along(f)?.iter().map(BooleanFunction::height).collect();
        let flat = FlatSpec { comp: f.clone(), heights };
        Ok(self.contains(h)? && flat.contains(h)?)
    }

    /// For `F ≰ H`: an initial segment `S̄` of `F` together with a coroot of
    /// `σ°_H` along which `λ_S̄` grows without bound on the plate.
    pub fn f_face_witness(&self, f: &Composition) -> Result<Option<(GroundSet, CoweightVector)>> {
        if f.leq(&self.comp)? {
            return Ok(None);
        }
        let total = Preposet::total_of(&self.comp)?;
        let mut seg = GroundSet::empty();
        for s in f.lumps() {
            seg = seg.union(s);
            let rest = self.ground().difference(&seg);
            if let Some(c) = face_obstruction(&total, &seg, &rest)? {
                return Ok(Some((seg, c)));
            }
        }
        Err(Error::Precondition(format!("{f} ≰ {} but every initial segment is upward closed", self.comp)))
    }

    /// Per-lump equal split of the maximal flat's heights; the first labels of
    /// a lump absorb the remainder so the point lies on the flat.
    pub fn default_center(&self) -> Vec<i64> {
        let flat = self.max_affine_flat();
        let mut center = vec![0i64; self.ground().len()];
        for (s, &a) in flat.comp.lumps().iter().zip(&flat.heights) {
            let k = s.len() as i64;
            let (q, r) = (a.div_euclid(k), a.rem_euclid(k));
            for (j, l) in s.iter().enumerate() {
                center[self.ground().index_of(l).unwrap()] = q + i64::from((j as i64) < r);
            }
        }
        center
    }

    pub fn lattice_points(&self, window: LatticeBox) -> Vec<AffinePoint> {
        self.lattice_points_around(&self.default_center(), window)
    }

    /// Integer points of the plate with `‖h − center‖∞ ≤ B`, in lexicographic order.
    pub fn lattice_points_around(&self, center: &[i64], window: LatticeBox) -> Vec<AffinePoint> {
        let masks = segment_masks(&self.comp);
        window_points(self.ground(), center, window.bound as i64, self.z.height()).into_iter().filter(|h| self.contains_unchecked(&masks, h)).collect()
    }
}

impl FlatSpec {
    pub fn new(comp: Composition, heights: Vec<i64>) -> Result<Self> {
        if comp.len() != heights.len() {
            return Err(Error::Invalid(format!("{} heights for {} lumps", heights.len(), comp.len())));
        }
        Ok(FlatSpec { comp, heights })
    }

    pub fn contains<T: Scalar>(&self, h: &AffinePoint<T>) -> Result<bool> {
        if h.ground() != self.comp.ground() {
            return Err(Error::GroundMismatch(format!("{} vs {}", h.ground(), self.comp.ground())));
        }
        for (s, &a) in self.comp.lumps().iter().zip(&self.heights) {
            if h.pairing(s)? != T::from_int(a) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `m_{F,a}`: juxtaposes one point per lump, lump `i` having coordinate sum `a_i`.
    pub fn flat_mul<T: Scalar>(&self, parts: &[AffinePoint<T>]) -> Result<AffinePoint<T>> {
        if parts.len() != self.comp.len() {
            return Err(Error::Invalid(format!("{} parts for {} lumps", parts.len(), self.comp.len())));
        }
        for ((p, s), &a) in parts.iter().zip(self.comp.lumps()).zip(&self.heights) {
            if p.ground() != s {
                return Err(Error::GroundMismatch(format!("{} vs {}", p.ground(), s)));
            }
            if p.sum() != T::from_int(a) {
                return Err(Error::Precondition(format!("part over {s} has sum {:?}, expected {a}", p.sum())));
            }
        }
        AffinePoint::juxtapose_all(parts)
    }
}
