//! Torus-orbit model of permutohedral space over the rationals.
//!
//! A point of the orbit `V_H` is a nonzero scalar per label, modulo an
//! independent rescaling of each lump of `H`. The representative stored here
//! has the least label of every lump at 1, so equality is structural.
//!
//! Complex points are not modeled. Every identity checked against this model
//! is polynomial in the scalars with rational structure constants, so it holds
//! over the complex numbers as well.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::cones::{cone_contains, CoweightVector};
use crate::error::{Error, Result};
use crate::label::{GroundSet, Label};
use crate::preposet::AugPreposet;
use crate::setcomp::{Bijection, Composition};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PermPoint {
    orbit: Composition,
    coords: BTreeMap<Label, BigRational>,
}

impl PermPoint {
    /// Normalizes `coords` per lump of `orbit`; every scalar must be nonzero.
    pub fn new(orbit: Composition, coords: BTreeMap<Label, BigRational>) -> Result<Self> {
        let keys = GroundSet::new(coords.keys().cloned())?;
        if &keys != orbit.ground() {
            return Err(Error::GroundMismatch(format!("coords on {keys}, orbit on {}", orbit.ground())));
        }
        if let Some((l, _)) = coords.iter().find(|(_, c)| c.is_zero()) {
            return Err(Error::Invalid(format!("scalar at {l} is zero")));
        }
        Ok(Self::normalized(orbit, coords))
    }

    fn normalized(orbit: Composition, mut coords: BTreeMap<Label, BigRational>) -> Self {
        for s in orbit.lumps() {
            let lead = coords[&s.labels()[0]].clone();
            if lead.is_one() {
                continue;
            }
            for l in s.iter() {
                let c = coords.get_mut(l).unwrap();
                *c = &*c / &lead;
            }
        }
        PermPoint { orbit, coords }
    }

    /// The unique point of `V_H` with all scalars equal to 1.
    pub fn base_point(orbit: Composition) -> Self {
        let coords = orbit.ground().iter().map(|l| (l.clone(), BigRational::one())).collect();
        PermPoint { orbit, coords }
    }

    pub fn orbit(&self) -> &Composition {
        &self.orbit
    }

    pub fn ground(&self) -> &GroundSet {
        self.orbit.ground()
    }

    pub fn coords(&self) -> &BTreeMap<Label, BigRational> {
        &self.coords
    }

    /// `V_H × V_K → V_{H;K}`.
    pub fn mul(&self, other: &PermPoint) -> Result<PermPoint> {
        let orbit = self.orbit.concatenate(&other.orbit)?;
        let coords = self.coords.iter().chain(&other.coords).map(|(l, c)| (l.clone(), c.clone())).collect();
        Ok(PermPoint { orbit, coords })
    }

    /// Forget the labels outside `s` and stabilize: orbit `H|_S`, coordinates renormalized.
    pub fn restrict(&self, s: &GroundSet) -> Result<PermPoint> {
        let orbit = self.orbit.restrict(s)?;
        let coords = s.iter().map(|l| (l.clone(), self.coords[l].clone())).collect();
        Ok(Self::normalized(orbit, coords))
    }

    /// `V_H → V_{H|_S} × V_{H|_T}`.
    pub fn comul(&self, s: &GroundSet, t: &GroundSet) -> Result<(PermPoint, PermPoint)> {
        self.ground().check_decomposition(s, t)?;
        Ok((self.restrict(s)?, self.restrict(t)?))
    }

    /// Pullback along `σ: J → I`.
    pub fn relabel(&self, sigma: &Bijection) -> Result<PermPoint> {
        let orbit = self.orbit.relabel(sigma)?;
        let coords = sigma.map().iter().map(|(j, i)| (j.clone(), self.coords[i].clone())).collect();
        Ok(Self::normalized(orbit, coords))
    }

    /// `x(f^h)` for `x` in the chart `U_H` (orbit `K ≤ H`) and `h ∈ σ°_H`.
    ///
    /// The value is 0 unless `h` sums to zero on every lump of `K`; then it is
    /// `∏ c_i^{h_i}`, which does not depend on the per-lump scaling.
    pub fn evaluate(&self, chart: &Composition, h: &CoweightVector) -> Result<BigRational> {
        if !self.orbit.leq(chart)? {
            return Err(Error::Precondition(format!("orbit {} is not in the chart of {chart}", self.orbit)));
        }
        if !cone_contains(&AugPreposet::total_of(chart)?, h)? {
            return Err(Error::Precondition(format!("exponent is outside the cone of {chart}")));
        }
        for s in self.orbit.lumps() {
            if h.pairing(s)? != 0 {
                return Ok(BigRational::zero());
            }
        }
        let mut v = BigRational::one();
        for (l, &e) in h.ground().iter().zip(h.coords()) {
            let c = &self.coords[l];
            let p = pow(c, e.unsigned_abs());
            v = if e >= 0 { v * p } else { v / p };
        }
        Ok(v)
    }
}

fn pow(c: &BigRational, e: u64) -> BigRational {
    let mut out = BigRational::one();
    for _ in 0..e {
        out *= c;
    }
    out
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Invalid(format!("bad rational {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Serialize, Deserialize)]
struct PointDto {
    orbit: Composition,
    coords: BTreeMap<String, String>,
}

impl Serialize for PermPoint {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let coords = self.coords.iter().map(|(l, c)| (l.key(), format_rational(c))).collect();
        PointDto { orbit: self.orbit.clone(), coords }.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for PermPoint {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let dto = PointDto::deserialize(de)?;
        let err = serde::de::Error::custom;
        let mut coords = BTreeMap::new();
        for (k, v) in dto.coords {
            coords.insert(Label::from_key(&k), parse_rational(&v).map_err(err)?);
        }
        PermPoint::new(dto.orbit, coords).map_err(err)
    }
}
