//! Lattice-point bialgebras.
//!
//! Two families of monomials live here. A [`Monomial`] is an exponent `h` in
//! the coroot cone `σ°_p`; the product juxtaposes exponents and the coproduct
//! projects onto the `λ_S`-face. A [`Section`] is an integer point of the
//! polytope `P_z` cut out by all subset inequalities of a Boolean function;
//! the coproduct keeps points on the `(S, T)`-face.

use serde::{Deserialize, Serialize};

use crate::boolfun::BooleanFunction;
use crate::cones::{cone_contains, cone_face, cone_product_map, CoweightVector};
use crate::error::{Error, Result};
use crate::label::GroundSet;
use crate::preposet::AugPreposet;
use crate::vector::{window_points, AffinePoint};

/// Either the formal zero or a word of basis elements, one per block.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TensorWord<M> {
    Zero,
    Word(Vec<M>),
}

impl<M> TensorWord<M> {
    pub fn is_zero(&self) -> bool {
        matches!(self, TensorWord::Zero)
    }
}

/// `f^h` with `h ∈ σ°_p`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Monomial {
    pub p: AugPreposet,
    pub exponent: CoweightVector,
}

impl Monomial {
    pub fn new(p: AugPreposet, exponent: CoweightVector) -> Result<Self> {
        if !cone_contains(&p, &exponent)? {
            return Err(Error::Precondition(format!("exponent is not in the cone of {p}")));
        }
        Ok(Monomial { p, exponent })
    }

    pub fn ground(&self) -> &GroundSet {
        self.p.ground()
    }
}

/// `f^{h1} ⊗ f^{h2} ↦ f^{m(h1, h2)}` over `(p | q)`.
pub fn co_mul(a: &Monomial, b: &Monomial) -> Result<Monomial> {
    let p = a.p.mul(&b.p)?;
    let h = cone_product_map(&a.exponent, &b.exponent)?;
    debug_assert!(cone_contains(&p, &h).unwrap());
    Ok(Monomial { p, exponent: h })
}

/// `f^h ↦ f^{h|_S} ⊗ f^{h|_T}` when `h` lies on the `λ_S`-face of `σ°_p`, else zero.
pub fn co_comul(m: &Monomial, s: &GroundSet, t: &GroundSet) -> Result<TensorWord<Monomial>> {
    m.ground().check_decomposition(s, t)?;
    let AugPreposet::Preposet(p) = &m.p else {
        return Ok(TensorWord::Zero);
    };
    let face = cone_face(p, s, t)?;
    if !cone_contains(&face, &m.exponent)? {
        return Ok(TensorWord::Zero);
    }
    let (ps, pt) = m.p.comul(s, t)?;
    let hs = CoweightVector::try_from(m.exponent.restrict(s)?)?;
    let ht = CoweightVector::try_from(m.exponent.restrict(t)?)?;
    Ok(TensorWord::Word(vec![Monomial { p: ps, exponent: hs }, Monomial { p: pt, exponent: ht }]))
}

/// Basis of `Γ(O_z)`: the integer points of `P_z`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SectionBasis {
    pub z: BooleanFunction,
    pub points: Vec<AffinePoint>,
}

/// A basis element `s^h` of `Γ(O_z)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Section {
    pub z: BooleanFunction,
    pub point: AffinePoint,
}

/// `Σ h = hei(z)` and `⟨h, λ_A⟩ ≤ z(A)` for every nonempty proper `A`.
pub fn is_section(z: &BooleanFunction, h: &AffinePoint) -> Result<bool> {
    if z.ground() != h.ground() {
        return Err(Error::GroundMismatch(format!("{} vs {}", z.ground(), h.ground())));
    }
    let full = z.ground().full_mask();
    Ok(h.sum() == z.height() && (1..full).all(|m| h.pairing_mask(m) <= z.value_mask(m)))
}

/// All integer points of `P_z`, using `z(I) − z(I∖i) ≤ h_i ≤ z(i)` as the search box.
pub fn global_sections(z: &BooleanFunction) -> SectionBasis {
    let g = z.ground();
    let n = g.len();
    let full = g.full_mask();
    let lo: Vec<i64> = (0..n).map(|i| z.height() - z.value_mask(full & !(1 << i))).collect();
    let hi: Vec<i64> = (0..n).map(|i| z.value_mask(1 << i)).collect();
    let points = if n > 0 && lo.iter().zip(&hi).any(|(a, b)| a > b) {
        Vec::new()
    } else {
        // window_points takes a symmetric radius; enlarge to the widest coordinate range and filter
        let radius = lo.iter().zip(&hi).map(|(a, b)| (b - a + 1) / 2).max().unwrap_or(0);
        let center: Vec<i64> = lo.iter().zip(&hi).map(|(a, b)| a + (b - a) / 2).collect();
        window_points(g, &center, radius + 1, z.height())
            .into_iter()
            .filter(|h| h.coords().iter().zip(lo.iter().zip(&hi)).all(|(c, (a, b))| a <= c && c <= b))
            .filter(|h| (1..full).all(|m| h.pairing_mask(m) <= z.value_mask(m)))
            .collect()
    };
    SectionBasis { z: z.clone(), points }
}

impl SectionBasis {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Basis of `Γ(O_{z1|z2})` assembled from products of points.
    pub fn mul(&self, other: &SectionBasis) -> Result<SectionBasis> {
        let z = self.z.mul(&other.z)?;
        let mut points = Vec::with_capacity(self.len() * other.len());
        for a in &self.points {
            for b in &other.points {
                points.push(a.juxtapose(b)?);
            }
        }
        points.sort();
        Ok(SectionBasis { z, points })
    }

    /// `s^h ↦ s^{h|_S} ⊗ s^{h|_T}` when `⟨h, λ_S⟩ = z(S)`, else zero.
    pub fn comul(&self, h: &AffinePoint, s: &GroundSet, t: &GroundSet) -> Result<TensorWord<AffinePoint>> {
        if !self.points.contains(h) {
            return Err(Error::Precondition("point is not a section of this basis".into()));
        }
        Ok(match section_comul(&Section { z: self.z.clone(), point: h.clone() }, s, t)? {
            TensorWord::Zero => TensorWord::Zero,
            TensorWord::Word(w) => TensorWord::Word(w.into_iter().map(|x| x.point).collect()),
        })
    }
}

pub fn section_mul(a: &Section, b: &Section) -> Result<Section> {
    Ok(Section { z: a.z.mul(&b.z)?, point: a.point.juxtapose(&b.point)? })
}

pub fn section_comul(x: &Section, s: &GroundSet, t: &GroundSet) -> Result<TensorWord<Section>> {
    let (zs, zt) = x.z.comul(s, t)?;
    if x.point.pairing(s)? != x.z.value(s)? {
        return Ok(TensorWord::Zero);
    }
    Ok(TensorWord::Word(vec![Section { z: zs, point: x.point.restrict(s)? }, Section { z: zt, point: x.point.restrict(t)? }]))
}
