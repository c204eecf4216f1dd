//! Coordinate vectors on a label set.

use std::collections::BTreeMap;
use std::fmt::Debug;

use num_traits::{FromPrimitive, Num, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::label::{GroundSet, Label};
use crate::setcomp::Bijection;

/// Scalars used for coordinates: `i64` or an exact rational.
pub trait Scalar: Num + Signed + FromPrimitive + Clone + PartialOrd + Debug {
    fn from_int(i: i64) -> Self {
        Self::from_i64(i).expect("integer fits the scalar type")
    }
}

impl<T: Num + Signed + FromPrimitive + Clone + PartialOrd + Debug> Scalar for T {}

/// A point of `R I` with coordinates aligned to the canonical label order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffinePoint<T = i64> {
    ground: GroundSet,
    coords: Vec<T>,
}

impl<T: Scalar> AffinePoint<T> {
    pub fn new(ground: GroundSet, coords: Vec<T>) -> Result<Self> {
        if ground.len() != coords.len() {
            return Err(Error::Invalid(format!("{} coordinates for {} labels", coords.len(), ground.len())));
        }
        Ok(AffinePoint { ground, coords })
    }

    pub fn from_map(map: BTreeMap<Label, T>) -> Self {
        let ground = GroundSet::from_sorted_unchecked(map.keys().cloned().collect());
        AffinePoint { ground, coords: map.into_values().collect() }
    }

    pub fn zero(ground: &GroundSet) -> Self {
        AffinePoint { ground: ground.clone(), coords: vec![T::zero(); ground.len()] }
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn get(&self, l: &Label) -> Option<&T> {
        self.ground.index_of(l).map(|i| &self.coords[i])
    }

    pub fn sum(&self) -> T {
        self.coords.iter().cloned().fold(T::zero(), |a, b| a + b)
    }

    /// `⟨h, λ_S⟩ = Σ_{i∈S} h_i`.
    pub fn pairing(&self, s: &GroundSet) -> Result<T> {
        self.ground.check_subset(s)?;
        Ok(s.iter().map(|l| self.get(l).unwrap().clone()).fold(T::zero(), |a, b| a + b))
    }

    /// Pairing with the subset given by a bitmask over this ground.
    pub fn pairing_mask(&self, mask: u64) -> T {
        self.coords.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).fold(T::zero(), |a, (_, c)| a + c.clone())
    }

    pub fn restrict(&self, s: &GroundSet) -> Result<Self> {
        self.ground.check_subset(s)?;
        let coords = s.iter().map(|l| self.get(l).unwrap().clone()).collect();
        Ok(AffinePoint { ground: s.clone(), coords })
    }

    /// Coordinate-wise juxtaposition over the disjoint union of the grounds.
    pub fn juxtapose(&self, other: &Self) -> Result<Self> {
        let ground = self.ground.disjoint_union(&other.ground)?;
        let coords = ground.iter().map(|l| self.get(l).or_else(|| other.get(l)).unwrap().clone()).collect();
        Ok(AffinePoint { ground, coords })
    }

    pub fn juxtapose_all<'a>(parts: impl IntoIterator<Item = &'a Self>) -> Result<Self>
    where
        T: 'a,
    {
        parts.into_iter().try_fold(AffinePoint::zero(&GroundSet::empty()), |acc, p| acc.juxtapose(p))
    }

    /// Pullback along `σ: J → I`: `h'_j = h_{σ(j)}`.
    pub fn relabel(&self, sigma: &Bijection) -> Result<Self> {
        if sigma.target() != &self.ground {
            return Err(Error::GroundMismatch(format!("{} vs {}", sigma.target(), self.ground)));
        }
        let coords = sigma.source().iter().map(|j| self.get(sigma.apply(j).unwrap()).unwrap().clone()).collect();
        Ok(AffinePoint { ground: sigma.source().clone(), coords })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a - b)
    }

    fn zip(&self, other: &Self, f: impl Fn(T, T) -> T) -> Result<Self> {
        if self.ground != other.ground {
            return Err(Error::GroundMismatch(format!("{} vs {}", self.ground, other.ground)));
        }
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| f(a.clone(), b.clone())).collect();
        Ok(AffinePoint { ground: self.ground.clone(), coords })
    }

    pub fn linf_distance(&self, other: &Self) -> Result<T> {
        let d = self.sub(other)?;
        Ok(d.coords.iter().map(|c| c.abs()).fold(T::zero(), |a, b| if b > a { b } else { a }))
    }

    pub fn to_map(&self) -> BTreeMap<Label, T> {
        self.ground.iter().cloned().zip(self.coords.iter().cloned()).collect()
    }
}

impl<T: Scalar + Serialize> Serialize for AffinePoint<T> {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Dto<'a, T> {
            coords: BTreeMap<String, &'a T>,
        }
        let coords = self.ground.iter().map(|l| l.key()).zip(self.coords.iter()).collect();
        Dto { coords }.serialize(ser)
    }
}

impl<'de, T: Scalar + Deserialize<'de>> Deserialize<'de> for AffinePoint<T> {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Dto<T> {
            coords: BTreeMap<String, T>,
        }
        let dto: Dto<T> = Dto::deserialize(de)?;
        let mut map = BTreeMap::new();
        for (k, v) in dto.coords {
            if map.insert(Label::from_key(&k), v).is_some() {
                return Err(serde::de::Error::custom(format!("duplicate label {k}")));
            }
        }
        Ok(AffinePoint::from_map(map))
    }
}

/// Every integer vector on `ground` with `|h_i − center_i| ≤ radius` and
/// coordinate sum `total`, in lexicographic order.
pub fn window_points(ground: &GroundSet, center: &[i64], radius: i64, total: i64) -> Vec<AffinePoint<i64>> {
    let n = ground.len();
    let mut out = Vec::new();
    if n == 0 {
        if total == 0 {
            out.push(AffinePoint::zero(ground));
        }
        return out;
    }
    let lo: Vec<i64> = center.iter().map(|c| c - radius).collect();
    let hi: Vec<i64> = center.iter().map(|c| c + radius).collect();
    // suffix bounds let us prune partial assignments that cannot reach `total`
    let mut min_suffix = vec![0i64; n + 1];
    let mut max_suffix = vec![0i64; n + 1];
    for i in (0..n).rev() {
        min_suffix[i] = min_suffix[i + 1] + lo[i];
        max_suffix[i] = max_suffix[i + 1] + hi[i];
    }
    let mut cur = vec![0i64; n];
    #[allow(clippy::too_many_arguments)]
    fn rec(
        i: usize,
        acc: i64,
        cur: &mut Vec<i64>,
        lo: &[i64],
        hi: &[i64],
        min_suffix: &[i64],
        max_suffix: &[i64],
        total: i64,
        ground: &GroundSet,
        out: &mut Vec<AffinePoint<i64>>,
    ) {
        let n = cur.len();
        if i == n - 1 {
            let last = total - acc;
            if last >= lo[i] && last <= hi[i] {
                cur[i] = last;
                out.push(AffinePoint { ground: ground.clone(), coords: cur.clone() });
            }
            return;
        }
        for v in lo[i]..=hi[i] {
            let rest = total - acc - v;
            if rest < min_suffix[i + 1] || rest > max_suffix[i + 1] {
                continue;
            }
            cur[i] = v;
            rec(i + 1, acc + v, cur, lo, hi, min_suffix, max_suffix, total, ground, out);
        }
    }
    rec(0, 0, &mut cur, &lo, &hi, &min_suffix, &max_suffix, total, ground, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn window_counts_match_brute_force() {
        for n in 0..=4usize {
            let g = GroundSet::range(n);
            let center = vec![1i64; n];
            let pts = window_points(&g, &center, 2, n as i64);
            let mut brute = 0;
            let span = 5i64.pow(n as u32);
            for code in 0..span {
                let mut c = code;
                let mut sum = 0;
                for _ in 0..n {
                    sum += c % 5 - 2 + 1;
                    c /= 5;
                }
                if sum == n as i64 {
                    brute += 1;
                }
            }
            assert_eq!(pts.len(), brute, "n = {n}");
        }
    }

    #[test]
    fn pairing_example() {
        let h = AffinePoint::new(GroundSet::range(3), vec![-2i64, 1, 1]).unwrap();
        assert_eq!(h.pairing(&GroundSet::new([1, 2]).unwrap()).unwrap(), -1);
        assert_eq!(h.pairing(&GroundSet::range(3)).unwrap(), 0);
    }

    #[test]
    fn json_shape() {
        let h = AffinePoint::new(GroundSet::range(2), vec![1i64, -1]).unwrap();
        let s = serde_json::to_string(&h).unwrap();
        assert_eq!(s, r#"{"coords":{"1":1,"2":-1}}"#);
        assert_eq!(serde_json::from_str::<AffinePoint>(&s).unwrap(), h);
    }
}
