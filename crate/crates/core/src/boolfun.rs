//! Integer-valued Boolean functions `z: 2^I → Z` with `z(∅) = 0`.
//!
//! Values are stored densely, indexed by the bitmask of the subset relative
//! to the canonical label order.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::label::{GroundSet, Label};
use crate::setcomp::{Bijection, Composition};
use crate::vector::AffinePoint;

pub const MAX_GROUND: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BooleanFunction {
    ground: GroundSet,
    values: Vec<i64>,
}

fn check_ground(g: &GroundSet) -> Result<()> {
    if g.len() > MAX_GROUND {
        return Err(Error::TooLarge(format!("|I| = {} > {MAX_GROUND}", g.len())));
    }
    Ok(())
}

impl BooleanFunction {
    pub fn new(ground: GroundSet, values: Vec<i64>) -> Result<Self> {
        check_ground(&ground)?;
        if values.len() != 1 << ground.len() {
            return Err(Error::Invalid(format!("expected {} values, got {}", 1 << ground.len(), values.len())));
        }
        if values[0] != 0 {
            return Err(Error::Invalid(format!("z(∅) = {} ≠ 0", values[0])));
        }
        Ok(BooleanFunction { ground, values })
    }

    /// Builds `z` from a function of the subset mask; the value at `∅` is forced to 0.
    pub fn from_fn(ground: &GroundSet, mut f: impl FnMut(u64) -> i64) -> Result<Self> {
        check_ground(ground)?;
        let values = (0..1u64 << ground.len()).map(|m| if m == 0 { 0 } else { f(m) }).collect();
        Ok(BooleanFunction { ground: ground.clone(), values })
    }

    pub fn zero(ground: &GroundSet) -> Result<Self> {
        BooleanFunction::from_fn(ground, |_| 0)
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn value_mask(&self, mask: u64) -> i64 {
        self.values[mask as usize]
    }

    pub fn value(&self, a: &GroundSet) -> Result<i64> {
        Ok(self.values[self.ground.mask_of(a)? as usize])
    }

    /// `hei(z) = z(I)`.
    pub fn height(&self) -> i64 {
        *self.values.last().unwrap()
    }

    fn same_ground(&self, other: &Self) -> Result<()> {
        if self.ground != other.ground {
            return Err(Error::GroundMismatch(format!("{} vs {}", self.ground, other.ground)));
        }
        Ok(())
    }

    /// Maps a mask over `sub` to the mask over `self.ground`.
    fn lift_mask(&self, sub: &GroundSet) -> Vec<usize> {
        sub.iter().map(|l| self.ground.index_of(l).unwrap()).collect()
    }

    /// `(z1 | z2)(A) = z1(A ∩ S) + z2(A ∩ T)`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let ground = self.ground.disjoint_union(&other.ground)?;
        check_ground(&ground)?;
        let a_pos: Vec<usize> = self.ground.iter().map(|l| ground.index_of(l).unwrap()).collect();
        let b_pos: Vec<usize> = other.ground.iter().map(|l| ground.index_of(l).unwrap()).collect();
        let project = |m: u64, pos: &[usize]| pos.iter().enumerate().filter(|(_, &p)| m >> p & 1 == 1).fold(0u64, |r, (i, _)| r | 1 << i);
        let values = (0..1u64 << ground.len()).map(|m| self.values[project(m, &a_pos) as usize] + other.values[project(m, &b_pos) as usize]).collect();
        Ok(BooleanFunction { ground, values })
    }

    /// `(z⇂_S, z⫽_T)` with `z⇂_S(A) = z(A)` and `z⫽_T(A) = z(A ⊔ S) − z(S)`.
    pub fn comul(&self, s: &GroundSet, t: &GroundSet) -> Result<(Self, Self)> {
        self.ground.check_decomposition(s, t)?;
        let s_mask = self.ground.mask_of(s)?;
        let zs = self.values[s_mask as usize];
        let left = self.pullback_sub(s, |m| self.values[m as usize]);
        let right = self.pullback_sub(t, |m| self.values[(m | s_mask) as usize] - zs);
        Ok((left, right))
    }

    /// Function on `sub` whose value at `A` is `f(mask of A in self.ground)`.
    fn pullback_sub(&self, sub: &GroundSet, f: impl Fn(u64) -> i64) -> Self {
        let pos = self.lift_mask(sub);
        let values = (0..1u64 << sub.len())
            .map(|m| {
                let big = pos.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).fold(0u64, |r, (_, &p)| r | 1 << p);
                f(big)
            })
            .collect();
        BooleanFunction { ground: sub.clone(), values }
    }

    /// The iterated comultiplication along `F`:
    /// `z_i(A) = z(S̄_{i−1} ⊔ A) − z(S̄_{i−1})` with `S̄_j = S_1 ⊔ … ⊔ S_j`.
    pub fn comul_along(&self, f: &Composition) -> Result<Vec<Self>> {
        if f.ground() != &self.ground {
            return Err(Error::GroundMismatch(format!("{} vs {}", f.ground(), self.ground)));
        }
        let mut prefix = 0u64;
        let mut out = Vec::with_capacity(f.len());
        for s in f.lumps() {
            let base = self.values[prefix as usize];
            let p = prefix;
            out.push(self.pullback_sub(s, |m| self.values[(m | p) as usize] - base));
            prefix |= self.ground.mask_of(s)?;
        }
        Ok(out)
    }

    /// `z_h(A) = Σ_{i∈A} h_i`.
    pub fn of_point(h: &AffinePoint<i64>) -> Result<Self> {
        BooleanFunction::from_fn(h.ground(), |m| h.pairing_mask(m))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_ground(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        Ok(BooleanFunction { ground: self.ground.clone(), values })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_ground(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect();
        Ok(BooleanFunction { ground: self.ground.clone(), values })
    }

    /// Whether `z` is modular, returning its `h` with `z = z_h`.
    pub fn as_modular(&self) -> Option<AffinePoint<i64>> {
        let coords = (0..self.ground.len()).map(|i| self.values[1 << i]).collect();
        let h = AffinePoint::new(self.ground.clone(), coords).ok()?;
        (0..self.values.len() as u64).all(|m| self.values[m as usize] == h.pairing_mask(m)).then_some(h)
    }

    /// The `h` with `other = self + z_h`, if any.
    pub fn equivalent(&self, other: &Self) -> Result<Option<AffinePoint<i64>>> {
        Ok(other.sub(self)?.as_modular())
    }

    /// `z(A) + z(B) ≥ z(A ∪ B) + z(A ∩ B)` for all `A, B`.
    pub fn is_submodular(&self) -> bool {
        let n = self.values.len() as u64;
        (0..n).all(|a| (a + 1..n).all(|b| self.values[a as usize] + self.values[b as usize] >= self.values[(a | b) as usize] + self.values[(a & b) as usize]))
    }

    /// Generalized permutohedra are the submodular functions.
    pub fn is_generalized_permutohedron(&self) -> bool {
        self.is_submodular()
    }

    /// Pullback along `σ: J → I`: `z'(A) = z(σ(A))`.
    pub fn relabel(&self, sigma: &Bijection) -> Result<Self> {
        if sigma.target() != &self.ground {
            return Err(Error::GroundMismatch(format!("{} vs {}", sigma.target(), self.ground)));
        }
        let pos: Vec<usize> = sigma.source().iter().map(|j| self.ground.index_of(sigma.apply(j).unwrap()).unwrap()).collect();
        let values = (0..1u64 << pos.len())
            .map(|m| {
                let big = pos.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).fold(0u64, |r, (_, &p)| r | 1 << p);
                self.values[big as usize]
            })
            .collect();
        Ok(BooleanFunction { ground: sigma.source().clone(), values })
    }

    /// Subset-string key such as `{1,2}`.
    pub fn subset_key(&self, mask: u64) -> String {
        self.ground.subset_from_mask(mask).to_string()
    }
}

impl Serialize for BooleanFunction {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Dto<'a> {
            ground: &'a GroundSet,
            values: BTreeMap<u64, i64>,
        }
        let values = self.values.iter().enumerate().map(|(m, &v)| (m as u64, v)).collect();
        Dto { ground: &self.ground, values }.serialize(ser)
    }
}

fn parse_subset_key(ground: &GroundSet, key: &str) -> Result<u64> {
    let k = key.trim();
    if let Ok(m) = k.parse::<u64>() {
        if m > ground.full_mask() {
            return Err(Error::Invalid(format!("bitmask {m} out of range")));
        }
        return Ok(m);
    }
    let inner = k.strip_prefix('{').and_then(|x| x.strip_suffix('}')).ok_or_else(|| Error::Invalid(format!("bad subset key {key:?}")))?;
    let labels: Vec<Label> = inner.split(',').map(str::trim).filter(|s| !s.is_empty()).map(Label::from_key).collect();
    ground.mask_of(&GroundSet::new(labels)?)
}

impl<'de> Deserialize<'de> for BooleanFunction {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Dto {
            ground: GroundSet,
            values: BTreeMap<String, i64>,
        }
        let dto = Dto::deserialize(de)?;
        let err = serde::de::Error::custom;
        check_ground(&dto.ground).map_err(err)?;
        let mut values: Vec<Option<i64>> = vec![None; 1 << dto.ground.len()];
        for (k, v) in dto.values {
            let m = parse_subset_key(&dto.ground, &k).map_err(err)?;
            if values[m as usize].replace(v).is_some() {
                return Err(serde::de::Error::custom(format!("subset {k} given twice")));
            }
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(m, v)| v.ok_or_else(|| serde::de::Error::custom(format!("missing value for {}", dto.ground.subset_from_mask(m as u64)))))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        BooleanFunction::new(dto.ground, values).map_err(err)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[i64]) -> GroundSet {
        GroundSet::new(v.iter().copied()).unwrap()
    }

    #[test]
    fn comul_example() {
        let z = BooleanFunction::new(GroundSet::range(2), vec![0, 1, 1, 2]).unwrap();
        let (a, b) = z.comul(&set(&[1]), &set(&[2])).unwrap();
        assert_eq!(a.values(), &[0, 1]);
        assert_eq!(b.values(), &[0, 1]);
        let (a, b) = z.comul(&GroundSet::range(2), &GroundSet::empty()).unwrap();
        assert_eq!(a, z);
        assert_eq!(b.values(), &[0]);
    }

    #[test]
    fn of_point_example() {
        let h = AffinePoint::new(GroundSet::range(2), vec![1, 1]).unwrap();
        assert_eq!(BooleanFunction::of_point(&h).unwrap().values(), &[0, 1, 1, 2]);
    }

    #[test]
    fn equivalence_examples() {
        let g = GroundSet::range(2);
        let zero = BooleanFunction::zero(&g).unwrap();
        let h = AffinePoint::new(g.clone(), vec![1, 1]).unwrap();
        let zh = BooleanFunction::of_point(&h).unwrap();
        assert_eq!(zero.equivalent(&zh).unwrap(), Some(h));
        let bump = BooleanFunction::new(g, vec![0, 0, 0, 1]).unwrap();
        assert_eq!(zero.equivalent(&bump).unwrap(), None);
    }

    #[test]
    fn submodularity_examples() {
        let perm = BooleanFunction::from_fn(&GroundSet::range(3), |m| match m.count_ones() {
            1 => 3,
            2 => 5,
            _ => 6,
        })
        .unwrap();
        assert!(perm.is_generalized_permutohedron());
        let bad = BooleanFunction::new(GroundSet::range(2), vec![0, 0, 0, 1]).unwrap();
        assert!(!bad.is_generalized_permutohedron());
    }

    #[test]
    fn json_accepts_subset_strings_and_masks() {
        let s = r#"{"ground":[1,2],"values":{"{}":0,"{1}":1,"2":1,"{1,2}":2}}"#;
        let z: BooleanFunction = serde_json::from_str(s).unwrap();
        assert_eq!(z.values(), &[0, 1, 1, 2]);
        let back: BooleanFunction = serde_json::from_str(&serde_json::to_string(&z).unwrap()).unwrap();
        assert_eq!(back, z);
        assert!(serde_json::from_str::<BooleanFunction>(r#"{"ground":[1],"values":{"0":1,"1":0}}"#).is_err());
        assert!(serde_json::from_str::<BooleanFunction>(r#"{"ground":[1],"values":{"0":0}}"#).is_err());
    }
}
