//! The species checked by the harness, each with an optional deliberately
//! broken comultiplication used to confirm that the harness catches errors.

use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use super::Instance;
use crate::boolfun::BooleanFunction;
use crate::cones::{cone_lattice_points, CoweightVector, LatticeBox};
use crate::error::Result;
use crate::label::GroundSet;
use crate::points::PermPoint;
use crate::preposet::{AugPreposet, Preposet};
use crate::random;
use crate::sections::{co_comul, co_mul, global_sections, section_comul, section_mul, Monomial, Section, TensorWord};
use crate::setcomp::{Bijection, Composition, Perm};
use crate::vector::AffinePoint;
use rand::Rng;

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).unwrap_or(Value::Null)
}

fn reversal(k: usize) -> Perm {
    Perm::from_images((0..k).rev().collect()).unwrap()
}

/// Set compositions under concatenation and restriction.
#[derive(Clone, Copy, Debug, Default)]
pub struct Sigma {
    pub mutant: bool,
}

impl Instance for Sigma {
    type Elem = Composition;

    fn name(&self) -> String {
        "sigma".into()
    }

    fn ground(&self, x: &Composition) -> GroundSet {
        x.ground().clone()
    }

    fn unit(&self) -> Composition {
        Composition::single(&GroundSet::empty())
    }

    fn enumerate(&self, ground: &GroundSet) -> Option<Vec<Composition>> {
        (ground.len() <= 5).then(|| Composition::enumerate(ground).ok()).flatten()
    }

    fn sample(&self, ground: &GroundSet, rng: &mut ChaCha8Rng) -> Composition {
        random::composition(ground, rng)
    }

    fn mul(&self, a: &Composition, b: &Composition) -> Result<Composition> {
        a.concatenate(b)
    }

    fn comul(&self, x: &Composition, s: &GroundSet, t: &GroundSet) -> Result<(Composition, Composition)> {
        x.ground().check_decomposition(s, t)?;
        let (a, b) = (x.restrict(s)?, x.restrict(t)?);
        if self.mutant {
            return Ok((a.permute_lumps(&reversal(a.len()))?, b.permute_lumps(&reversal(b.len()))?));
        }
        Ok((a, b))
    }

    fn relabel(&self, sigma: &Bijection, x: &Composition) -> Result<Composition> {
        x.relabel(sigma)
    }

    fn to_json(&self, x: &Composition) -> Value {
        to_value(x)
    }
}

/// Preposets with the absorbing bottom. The mutant skips the obstruction
/// check when `S` is a singleton.
#[derive(Clone, Copy, Debug, Default)]
pub struct OBullet {
    pub mutant: bool,
}

impl Instance for OBullet {
    type Elem = AugPreposet;

    fn name(&self) -> String {
        "o-bullet".into()
    }

    fn ground(&self, x: &AugPreposet) -> GroundSet {
        x.ground().clone()
    }

    fn unit(&self) -> AugPreposet {
        Preposet::antichain(&GroundSet::empty()).into()
    }

    fn zero(&self, ground: &GroundSet) -> Option<AugPreposet> {
        Some(AugPreposet::Bottom(ground.clone()))
    }

    fn is_zero(&self, x: &AugPreposet) -> bool {
        x.is_bottom()
    }

    fn enumerate(&self, ground: &GroundSet) -> Option<Vec<AugPreposet>> {
        (ground.len() <= 4).then(|| AugPreposet::enumerate(ground).ok()).flatten()
    }

    fn sample(&self, ground: &GroundSet, rng: &mut ChaCha8Rng) -> AugPreposet {
        random::aug_preposet(ground, rng)
    }

    fn mul(&self, a: &AugPreposet, b: &AugPreposet) -> Result<AugPreposet> {
        a.mul(b)
    }

    fn comul(&self, x: &AugPreposet, s: &GroundSet, t: &GroundSet) -> Result<(AugPreposet, AugPreposet)> {
        if !self.mutant {
            return x.comul(s, t);
        }
        x.ground().check_decomposition(s, t)?;
        match x {
            AugPreposet::Preposet(p) if s.len() == 1 || p.admits(s, t)? => Ok((p.restrict(s)?.into(), p.restrict(t)?.into())),
            _ => Ok((AugPreposet::Bottom(s.clone()), AugPreposet::Bottom(t.clone()))),
        }
    }

    fn relabel(&self, sigma: &Bijection, x: &AugPreposet) -> Result<AugPreposet> {
        x.relabel(sigma)
    }

    fn to_json(&self, x: &AugPreposet) -> Value {
        crate::json::aug_to_json(x)
    }
}

/// Integer Boolean functions under `(z1 | z2)` and `(z⇂_S, z⫽_T)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct BoolFun {
    pub mutant: bool,
}

impl Instance for BoolFun {
    type Elem = BooleanFunction;

    fn name(&self) -> String {
        "bf".into()
    }

    fn ground(&self, x: &BooleanFunction) -> GroundSet {
        x.ground().clone()
    }

    fn unit(&self) -> BooleanFunction {
        BooleanFunction::zero(&GroundSet::empty()).unwrap()
    }

    fn enumerate(&self, ground: &GroundSet) -> Option<Vec<BooleanFunction>> {
        ground.is_empty().then(|| vec![self.unit()])
    }

    fn sample(&self, ground: &GroundSet, rng: &mut ChaCha8Rng) -> BooleanFunction {
        random::boolean_function(ground, 3, rng)
    }

    fn mul(&self, a: &BooleanFunction, b: &BooleanFunction) -> Result<BooleanFunction> {
        a.mul(b)
    }

    fn comul(&self, x: &BooleanFunction, s: &GroundSet, t: &GroundSet) -> Result<(BooleanFunction, BooleanFunction)> {
        let (a, b) = x.comul(s, t)?;
        if !self.mutant {
            return Ok((a, b));
        }
        let zs = x.value(s)?;
        let b = BooleanFunction::from_fn(t, |m| b.value_mask(m) + zs)?;
        Ok((a, b))
    }

    fn relabel(&self, sigma: &Bijection, x: &BooleanFunction) -> Result<BooleanFunction> {
        x.relabel(sigma)
    }

    fn to_json(&self, x: &BooleanFunction) -> Value {
        to_value(x)
    }
}

/// Rational points of permutohedral space.
#[derive(Clone, Copy, Debug, Default)]
pub struct Points {
    pub mutant: bool,
}

impl Instance for Points {
    type Elem = PermPoint;

    fn name(&self) -> String {
        "points".into()
    }

    fn ground(&self, x: &PermPoint) -> GroundSet {
        x.ground().clone()
    }

    fn unit(&self) -> PermPoint {
        PermPoint::base_point(Composition::single(&GroundSet::empty()))
    }

    fn enumerate(&self, ground: &GroundSet) -> Option<Vec<PermPoint>> {
        ground.is_empty().then(|| vec![self.unit()])
    }

    fn sample(&self, ground: &GroundSet, rng: &mut ChaCha8Rng) -> PermPoint {
        random::perm_point(ground, rng)
    }

    fn mul(&self, a: &PermPoint, b: &PermPoint) -> Result<PermPoint> {
        a.mul(b)
    }

    fn comul(&self, x: &PermPoint, s: &GroundSet, t: &GroundSet) -> Result<(PermPoint, PermPoint)> {
        let (a, b) = x.comul(s, t)?;
        if !self.mutant {
            return Ok((a, b));
        }
        let orbit = b.orbit().permute_lumps(&reversal(b.orbit().len()))?;
        let b = PermPoint::new(orbit, b.coords().clone())?;
        Ok((a, b))
    }

    fn relabel(&self, sigma: &Bijection, x: &PermPoint) -> Result<PermPoint> {
        x.relabel(sigma)
    }

    fn to_json(&self, x: &PermPoint) -> Value {
        to_value(x)
    }
}

/// A basis element of a pointed lattice-point bialgebra, or its zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Pointed<M> {
    Elem(M),
    Zero(GroundSet),
}

fn pointed_json<M: Serialize>(x: &Pointed<M>) -> Value {
    match x {
        Pointed::Elem(m) => to_value(m),
        Pointed::Zero(g) => json!({"zero": true, "ground": g}),
    }
}

fn split<M>(w: TensorWord<M>, s: &GroundSet, t: &GroundSet) -> (Pointed<M>, Pointed<M>) {
    match w {
        TensorWord::Zero => (Pointed::Zero(s.clone()), Pointed::Zero(t.clone())),
        TensorWord::Word(v) => {
            let mut it = v.into_iter();
            (Pointed::Elem(it.next().unwrap()), Pointed::Elem(it.next().unwrap()))
        }
    }
}

/// Monomials `f^h` over the cones of preposets.
#[derive(Clone, Copy, Debug)]
pub struct ConeMonomials {
    /// Sup-norm bound of the enumerated exponents.
    pub bound: u32,
}

impl Default for ConeMonomials {
    fn default() -> Self {
        ConeMonomials { bound: 2 }
    }
}

impl Instance for ConeMonomials {
    type Elem = Pointed<Monomial>;

    fn name(&self) -> String {
        "co".into()
    }

    fn ground(&self, x: &Self::Elem) -> GroundSet {
        match x {
            Pointed::Elem(m) => m.ground().clone(),
            Pointed::Zero(g) => g.clone(),
        }
    }

    fn unit(&self) -> Self::Elem {
        let e = GroundSet::empty();
        Pointed::Elem(Monomial::new(Preposet::antichain(&e).into(), CoweightVector::zero(&e)).unwrap())
    }

    fn zero(&self, ground: &GroundSet) -> Option<Self::Elem> {
        Some(Pointed::Zero(ground.clone()))
    }

    fn is_zero(&self, x: &Self::Elem) -> bool {
        matches!(x, Pointed::Zero(_))
    }

    fn enumerate(&self, ground: &GroundSet) -> Option<Vec<Self::Elem>> {
        if ground.len() > 3 {
            return None;
        }
        let mut out = Vec::new();
        for p in Preposet::enumerate(ground).ok()? {
            let p = AugPreposet::from(p);
            for h in cone_lattice_points(&p, LatticeBox::new(self.bound)) {
                out.push(Pointed::Elem(Monomial { p: p.clone(), exponent: h }));
            }
        }
        out.push(Pointed::Zero(ground.clone()));
        Some(out)
    }

    fn sample(&self, ground: &GroundSet, rng: &mut ChaCha8Rng) -> Self::Elem {
        if rng.gen_bool(0.05) {
            return Pointed::Zero(ground.clone());
        }
        let p = AugPreposet::from(random::preposet(ground, rng));
        let pts = cone_lattice_points(&p, LatticeBox::new(self.bound));
        let h = pts[rng.gen_range(0..pts.len())].clone();
        Pointed::Elem(Monomial { p, exponent: h })
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(match (a, b) {
            (Pointed::Elem(x), Pointed::Elem(y)) => Pointed::Elem(co_mul(x, y)?),
            _ => Pointed::Zero(self.ground(a).disjoint_union(&self.ground(b))?),
        })
    }

    fn comul(&self, x: &Self::Elem, s: &GroundSet, t: &GroundSet) -> Result<(Self::Elem, Self::Elem)> {
        match x {
            Pointed::Elem(m) => Ok(split(co_comul(m, s, t)?, s, t)),
            Pointed::Zero(g) => {
                g.check_decomposition(s, t)?;
                Ok((Pointed::Zero(s.clone()), Pointed::Zero(t.clone())))
            }
        }
    }

    fn relabel(&self, sigma: &Bijection, x: &Self::Elem) -> Result<Self::Elem> {
        Ok(match x {
            Pointed::Elem(m) => Pointed::Elem(Monomial::new(m.p.relabel(sigma)?, m.exponent.relabel(sigma)?)?),
            Pointed::Zero(_) => Pointed::Zero(sigma.source().clone()),
        })
    }

    fn to_json(&self, x: &Self::Elem) -> Value {
        match x {
            Pointed::Elem(m) => json!({"p": crate::json::aug_to_json(&m.p), "exponent": m.exponent}),
            Pointed::Zero(_) => pointed_json(x),
        }
    }
}

/// Global sections `s^h` of the line bundles of submodular functions.
#[derive(Clone, Copy, Debug, Default)]
pub struct Sections;

impl Instance for Sections {
    type Elem = Pointed<Section>;

    fn name(&self) -> String {
        "cbf".into()
    }

    fn ground(&self, x: &Self::Elem) -> GroundSet {
        match x {
            Pointed::Elem(s) => s.z.ground().clone(),
            Pointed::Zero(g) => g.clone(),
        }
    }

    fn unit(&self) -> Self::Elem {
        let e = GroundSet::empty();
        Pointed::Elem(Section { z: BooleanFunction::zero(&e).unwrap(), point: AffinePoint::zero(&e) })
    }

    fn zero(&self, ground: &GroundSet) -> Option<Self::Elem> {
        Some(Pointed::Zero(ground.clone()))
    }

    fn is_zero(&self, x: &Self::Elem) -> bool {
        matches!(x, Pointed::Zero(_))
    }

    fn enumerate(&self, ground: &GroundSet) -> Option<Vec<Self::Elem>> {
        ground.is_empty().then(|| vec![self.unit(), Pointed::Zero(ground.clone())])
    }

    fn sample(&self, ground: &GroundSet, rng: &mut ChaCha8Rng) -> Self::Elem {
        if rng.gen_bool(0.05) {
            return Pointed::Zero(ground.clone());
        }
        let z = random::submodular(ground, rng);
        let basis = global_sections(&z);
        let point = basis.points[rng.gen_range(0..basis.len())].clone();
        Pointed::Elem(Section { z, point })
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(match (a, b) {
            (Pointed::Elem(x), Pointed::Elem(y)) => Pointed::Elem(section_mul(x, y)?),
            _ => Pointed::Zero(self.ground(a).disjoint_union(&self.ground(b))?),
        })
    }

    fn comul(&self, x: &Self::Elem, s: &GroundSet, t: &GroundSet) -> Result<(Self::Elem, Self::Elem)> {
        match x {
            Pointed::Elem(sec) => Ok(split(section_comul(sec, s, t)?, s, t)),
            Pointed::Zero(g) => {
                g.check_decomposition(s, t)?;
                Ok((Pointed::Zero(s.clone()), Pointed::Zero(t.clone())))
            }
        }
    }

    fn relabel(&self, sigma: &Bijection, x: &Self::Elem) -> Result<Self::Elem> {
        Ok(match x {
            Pointed::Elem(s) => Pointed::Elem(Section { z: s.z.relabel(sigma)?, point: s.point.relabel(sigma)? }),
            Pointed::Zero(_) => Pointed::Zero(sigma.source().clone()),
        })
    }

    fn to_json(&self, x: &Self::Elem) -> Value {
        pointed_json(x)
    }
}
