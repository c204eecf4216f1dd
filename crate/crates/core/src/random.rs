//! Seeded generators for the sampled law checks.

use std::collections::BTreeMap;

use num_rational::BigRational;
use rand::Rng;

use crate::boolfun::BooleanFunction;
use crate::error::Result;
use crate::label::GroundSet;
use crate::points::PermPoint;
use crate::preposet::{AugPreposet, Preposet};
use crate::setcomp::Composition;
use crate::vector::AffinePoint;

/// A composition of `ground`: each label picks a block, empty blocks are dropped.
pub fn composition<R: Rng + ?Sized>(ground: &GroundSet, rng: &mut R) -> Composition {
    let n = ground.len().max(1);
    let mut blocks: Vec<Vec<crate::label::Label>> = vec![Vec::new(); n];
    for l in ground.iter() {
        blocks[rng.gen_range(0..n)].push(l.clone());
    }
    Composition::from_lumps(blocks.into_iter().filter(|b| !b.is_empty()).collect()).unwrap()
}

/// A random preposet: the transitive closure of a random relation.
pub fn preposet<R: Rng + ?Sized>(ground: &GroundSet, rng: &mut R) -> Preposet {
    let n = ground.len();
    let density = rng.gen_range(0.0..0.6);
    let mut rows = vec![0u64; n];
    for (a, row) in rows.iter_mut().enumerate() {
        for b in 0..n {
            if a != b && rng.gen_bool(density) {
                *row |= 1 << b;
            }
        }
    }
    // Warshall closure on the bit rows, diagonal dropped
    for k in 0..n {
        for a in 0..n {
            if rows[a] >> k & 1 == 1 {
                rows[a] |= rows[k];
            }
        }
    }
    for (a, row) in rows.iter_mut().enumerate() {
        *row &= !(1 << a);
    }
    Preposet::from_rows(ground.clone(), rows)
}

pub fn aug_preposet<R: Rng + ?Sized>(ground: &GroundSet, rng: &mut R) -> AugPreposet {
    if rng.gen_bool(0.1) {
        AugPreposet::Bottom(ground.clone())
    } else {
        preposet(ground, rng).into()
    }
}

/// Arbitrary Boolean function with values in `[-r, r]`.
pub fn boolean_function<R: Rng + ?Sized>(ground: &GroundSet, r: i64, rng: &mut R) -> BooleanFunction {
    BooleanFunction::from_fn(ground, |_| rng.gen_range(-r..=r)).unwrap()
}

/// Submodular function: a modular part plus nonnegative multiples of truncated
/// cardinality functions `A ↦ min(|A ∩ W|, r)`.
pub fn submodular<R: Rng + ?Sized>(ground: &GroundSet, rng: &mut R) -> BooleanFunction {
    let n = ground.len();
    let h: Vec<i64> = (0..n).map(|_| rng.gen_range(-2..=2)).collect();
    let terms: Vec<(u64, u32, i64)> = (0..rng.gen_range(1..=3))
        .map(|_| {
            let w = rng.gen_range(0..=ground.full_mask());
            (w, rng.gen_range(1..=n.max(1) as u32), rng.gen_range(1..=2))
        })
        .collect();
    BooleanFunction::from_fn(ground, |m| {
        let modular: i64 = (0..n).filter(|i| m >> i & 1 == 1).map(|i| h[i]).sum();
        let concave: i64 = terms.iter().map(|&(w, r, c)| c * i64::from((m & w).count_ones().min(r))).sum();
        modular + concave
    })
    .unwrap()
}

pub fn integer_point<R: Rng + ?Sized>(ground: &GroundSet, r: i64, rng: &mut R) -> AffinePoint {
    AffinePoint::new(ground.clone(), (0..ground.len()).map(|_| rng.gen_range(-r..=r)).collect()).unwrap()
}

/// Nonzero rational with numerator and denominator at most 5 in size.
pub fn nonzero_rational<R: Rng + ?Sized>(rng: &mut R) -> BigRational {
    let mut n: i64 = rng.gen_range(1..=5);
    if rng.gen_bool(0.5) {
        n = -n;
    }
    BigRational::new(n.into(), rng.gen_range(1i64..=5).into())
}

pub fn perm_point_in<R: Rng + ?Sized>(orbit: Composition, rng: &mut R) -> Result<PermPoint> {
    let coords: BTreeMap<_, _> = orbit.ground().iter().map(|l| (l.clone(), nonzero_rational(rng))).collect();
    PermPoint::new(orbit, coords)
}

pub fn perm_point<R: Rng + ?Sized>(ground: &GroundSet, rng: &mut R) -> PermPoint {
    perm_point_in(composition(ground, rng), rng).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generators_respect_invariants() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 0..=5 {
            let g = GroundSet::range(n);
            for _ in 0..50 {
                assert_eq!(composition(&g, &mut rng).ground(), &g);
                let p = preposet(&g, &mut rng);
                assert!(Preposet::new(g.clone(), p.pairs()).is_ok());
                assert!(submodular(&g, &mut rng).is_submodular());
            }
        }
    }
}
