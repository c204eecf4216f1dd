//! Torus-invariant opens of products of permutohedral spaces.
//!
//! An open of shape `F = (S_1 | … | S_k)` is a down-closed family of orbit
//! tuples `(H_1, …, H_k)` with `H_j ∈ Σ[S_j]`: if a tuple is present then so
//! is every coarser tuple. `U_p` collects the orbits `H ≤ p`.
//!
//! Only torus-invariant opens exist here. Each `U_p` is a union of orbits, so
//! nothing about the indexing by preposets needs general Zariski opens.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::label::GroundSet;
use crate::preposet::{AugPreposet, Preposet};
use crate::setcomp::{Composition, Perm};

pub type OrbitTuple = Vec<Composition>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ToricOpen {
    shape: Composition,
    orbits: BTreeSet<OrbitTuple>,
}

/// Every tuple of compositions over the lumps of `shape`.
pub fn all_tuples(shape: &Composition) -> Result<Vec<OrbitTuple>> {
    let mut out: Vec<OrbitTuple> = vec![Vec::new()];
    for s in shape.lumps() {
        let cs = Composition::enumerate(s)?;
        out = out
            .into_iter()
            .flat_map(|t| {
                cs.iter().map(move |c| {
                    let mut t = t.clone();
                    t.push(c.clone());
                    t
                })
            })
            .collect();
    }
    Ok(out)
}

fn check_tuple(shape: &Composition, t: &OrbitTuple) -> Result<()> {
    if t.len() != shape.len() || t.iter().zip(shape.lumps()).any(|(h, s)| h.ground() != s) {
        return Err(Error::GroundMismatch(format!("orbit tuple does not match shape {shape}")));
    }
    Ok(())
}

impl ToricOpen {
    /// Builds the smallest open of `shape` containing `orbits`.
    pub fn new(shape: Composition, orbits: impl IntoIterator<Item = OrbitTuple>) -> Result<Self> {
        let mut closed = BTreeSet::new();
        let mut stack: Vec<OrbitTuple> = Vec::new();
        for t in orbits {
            check_tuple(&shape, &t)?;
            stack.push(t);
        }
        while let Some(t) = stack.pop() {
            if closed.contains(&t) {
                continue;
            }
            for j in 0..t.len() {
                for c in t[j].coarsenings() {
                    if c != t[j] {
                        let mut u = t.clone();
                        u[j] = c;
                        if !closed.contains(&u) {
                            stack.push(u);
                        }
                    }
                }
            }
            closed.insert(t);
        }
        Ok(ToricOpen { shape, orbits: closed })
    }

    pub fn empty(shape: Composition) -> Self {
        ToricOpen { shape, orbits: BTreeSet::new() }
    }

    pub fn whole(shape: Composition) -> Result<Self> {
        let orbits = all_tuples(&shape)?.into_iter().collect();
        Ok(ToricOpen { shape, orbits })
    }

    pub fn shape(&self) -> &Composition {
        &self.shape
    }

    pub fn orbits(&self) -> &BTreeSet<OrbitTuple> {
        &self.orbits
    }

    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    pub fn contains(&self, t: &OrbitTuple) -> bool {
        self.orbits.contains(t)
    }

    pub fn is_down_closed(&self) -> bool {
        self.orbits.iter().all(|t| {
            (0..t.len()).all(|j| {
                t[j].coarsenings().into_iter().all(|c| {
                    let mut u = t.clone();
                    u[j] = c;
                    self.orbits.contains(&u)
                })
            })
        })
    }

    /// `U_p = ⊔_{H ≤ p} V_H` as an open of shape `(I)`; `U_• = ∅`.
    pub fn of_preposet(p: &AugPreposet) -> Result<Self> {
        let shape = Composition::single(p.ground());
        let AugPreposet::Preposet(q) = p else {
            return Ok(ToricOpen::empty(shape));
        };
        let mut orbits = BTreeSet::new();
        for h in Composition::enumerate(p.ground())? {
            if Preposet::total_of(&h)?.leq(q)? {
                orbits.insert(if shape.is_empty() { vec![] } else { vec![h] });
            }
        }
        Ok(ToricOpen { shape, orbits })
    }

    /// `U_1 × ⋯ × U_k` over the concatenated shape.
    pub fn product(parts: &[ToricOpen]) -> Result<Self> {
        let shape = Composition::concatenate_all(parts.iter().map(|u| &u.shape))?;
        let mut orbits: BTreeSet<OrbitTuple> = [Vec::new()].into_iter().collect();
        for u in parts {
            orbits = orbits
                .iter()
                .flat_map(|t| {
                    u.orbits.iter().map(move |v| {
                        let mut t = t.clone();
                        t.extend(v.iter().cloned());
                        t
                    })
                })
                .collect();
        }
        Ok(ToricOpen { shape, orbits })
    }

    /// `Δ_{F,G}^{-1}(U)` for `U` of shape `F` and `G ≤ F`: orbit tuples over `G`
    /// whose restrictions to the lumps of `F` lie in `U`.
    pub fn pullback_comul(&self, g: &Composition) -> Result<ToricOpen> {
        let ranges = g.merge_ranges(&self.shape)?;
        let mut orbits = BTreeSet::new();
        for t in all_tuples(g)? {
            let mut image = Vec::with_capacity(self.shape.len());
            for (h, r) in t.iter().zip(&ranges) {
                for s in &self.shape.lumps()[r.clone()] {
                    image.push(h.restrict(s)?);
                }
            }
            if self.orbits.contains(&image) {
                orbits.insert(t);
            }
        }
        Ok(ToricOpen { shape: g.clone(), orbits })
    }

    /// `μ_{F,G}^{-1}(U)` for `U` of shape `G` and `G ≤ F`: orbit tuples over `F`
    /// whose concatenations within each lump of `G` lie in `U`.
    pub fn pullback_mul(&self, f: &Composition) -> Result<ToricOpen> {
        let ranges = self.shape.merge_ranges(f)?;
        let mut orbits = BTreeSet::new();
        for t in all_tuples(f)? {
            let image = ranges.iter().map(|r| Composition::concatenate_all(&t[r.clone()])).collect::<Result<Vec<_>>>()?;
            if self.orbits.contains(&image) {
                orbits.insert(t);
            }
        }
        Ok(ToricOpen { shape: f.clone(), orbits })
    }

    /// The open of shape `β∘F` obtained by moving the factor at position `i` to `β(i)`.
    pub fn permute(&self, beta: &Perm) -> Result<ToricOpen> {
        let shape = self.shape.permute_lumps(beta)?;
        let orbits = self
            .orbits
            .iter()
            .map(|t| {
                let mut u = vec![Composition::single(&GroundSet::empty()); t.len()];
                for (i, h) in t.iter().enumerate() {
                    u[beta.apply(i)] = h.clone();
                }
                u
            })
            .collect();
        Ok(ToricOpen { shape, orbits })
    }

    /// Reorders factors to `target`, which must have the same lumps as the shape.
    pub fn reorder_to(&self, target: &Composition) -> Result<ToricOpen> {
        let images = self
            .shape
            .lumps()
            .iter()
            .map(|s| target.lumps().iter().position(|t| t == s))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Invalid(format!("{} and {target} have different lumps", self.shape)))?;
        if target.len() != self.shape.len() {
            return Err(Error::Invalid(format!("{} and {target} have different lumps", self.shape)));
        }
        self.permute(&Perm::from_images(images)?)
    }
}

impl<'de> Deserialize<'de> for ToricOpen {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Dto {
            shape: Composition,
            orbits: Vec<OrbitTuple>,
        }
        let dto = Dto::deserialize(de)?;
        ToricOpen::new(dto.shape, dto.orbits).map_err(serde::de::Error::custom)
    }
}

/// Comultiplication of `O•` along `F`, used by the indexing check.
pub type LiftedComul<'a> = dyn Fn(&AugPreposet, &Composition) -> Result<Vec<AugPreposet>> + 'a;

/// Iterated comultiplication of `O•` along `F`: `(p⇂_{S_1}, …)` when `F ≤ p`, else all `•`.
pub fn o_comul_along(p: &AugPreposet, f: &Composition) -> Result<Vec<AugPreposet>> {
    let mut out = Vec::with_capacity(f.len());
    let mut rest = p.clone();
    for (i, s) in f.lumps().iter().enumerate() {
        if i + 1 == f.len() {
            out.push(rest);
            break;
        }
        let t = rest.ground().difference(s);
        let (a, b) = rest.comul(s, &t)?;
        out.push(a);
        rest = b;
    }
    if out.iter().any(AugPreposet::is_bottom) {
        out = f.lumps().iter().map(|s| AugPreposet::Bottom(s.clone())).collect();
    }
    Ok(out)
}

/// Outcome of [`check_indexing`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IndexingReport {
    pub size: usize,
    pub comul_cases: usize,
    pub mul_cases: usize,
    pub counterexample: Option<serde_json::Value>,
}

impl IndexingReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Checks that `p ↦ U_p` turns the operations of `O•` into pullbacks, for every
/// preposet and every pair `G ≤ F` of compositions of `ground`:
///
/// * `Δ_{F,G}^{-1}(U_{p_1} × ⋯ × U_{p_k}) = ∏_j U_{μ(p's inside lump j of G)}`
/// * `μ_{F,G}^{-1}(U_{q_1} × ⋯ × U_{q_l}) = ∏_j ∏ U_{Δ_{F|T_j}(q_j)}`
pub fn check_indexing(ground: &GroundSet) -> Result<IndexingReport> {
    check_indexing_with(ground, &o_comul_along)
}

/// [`check_indexing`] with the lifted comultiplication of `O•` supplied by the caller.
pub fn check_indexing_with(ground: &GroundSet, comul: &LiftedComul<'_>) -> Result<IndexingReport> {
    if ground.len() > 4 {
        return Err(Error::TooLarge(format!("|I| = {} > 4", ground.len())));
    }
    let mut report = IndexingReport { size: ground.len(), comul_cases: 0, mul_cases: 0, counterexample: None };
    let mut o_cache = std::collections::BTreeMap::new();
    let mut ob = |s: &GroundSet| -> Result<Vec<AugPreposet>> {
        if let Some(v) = o_cache.get(s) {
            return Ok(Clone::clone(v));
        }
        let v = AugPreposet::enumerate(s)?;
        o_cache.insert(s.clone(), v.clone());
        Ok(v)
    };
    let mut u_cache = std::collections::BTreeMap::<AugPreposet, ToricOpen>::new();
    let mut u_of = |p: &AugPreposet| -> Result<ToricOpen> {
        if let Some(u) = u_cache.get(p) {
            return Ok(u.clone());
        }
        let u = ToricOpen::of_preposet(p)?;
        u_cache.insert(p.clone(), u.clone());
        Ok(u)
    };
    for f in Composition::enumerate(ground)? {
        for g in f.coarsenings() {
            let ranges = g.merge_ranges(&f)?;
            // multiplication side: tuples of preposets over the lumps of F
            let mut tuples: Vec<Vec<AugPreposet>> = vec![Vec::new()];
            for s in f.lumps() {
                let opts = ob(s)?;
                tuples = tuples
                    .into_iter()
                    .flat_map(|t| {
                        opts.iter().map(move |p| {
                            let mut t = t.clone();
                            t.push(p.clone());
                            t
                        })
                    })
                    .collect();
            }
            for ps in &tuples {
                report.comul_cases += 1;
                let us = ps.iter().map(&mut u_of).collect::<Result<Vec<_>>>()?;
                let lhs = ToricOpen::product(&us)?.pullback_comul(&g)?;
                let mut factors = Vec::with_capacity(g.len());
                for r in &ranges {
                    let q = ps[r.clone()].iter().skip(1).try_fold(ps[r.start].clone(), |acc, p| acc.mul(p))?;
                    factors.push(u_of(&q)?);
                }
                let rhs = ToricOpen::product(&factors)?;
                if lhs != rhs {
                    report.counterexample = Some(serde_json::json!({
                        "identity": "comul",
                        "F": f, "G": g,
                        "preposets": ps.iter().map(crate::json::aug_to_json).collect::<Vec<_>>(),
                        "lhs_orbits": lhs.len(), "rhs_orbits": rhs.len(),
                    }));
                    return Ok(report);
                }
            }
            // comultiplication side: tuples of preposets over the lumps of G
            let mut qtuples: Vec<Vec<AugPreposet>> = vec![Vec::new()];
            for t in g.lumps() {
                let opts = ob(t)?;
                qtuples = qtuples
                    .into_iter()
                    .flat_map(|v| {
                        opts.iter().map(move |p| {
                            let mut v = v.clone();
                            v.push(p.clone());
                            v
                        })
                    })
                    .collect();
            }
            for qs in &qtuples {
                report.mul_cases += 1;
                let us = qs.iter().map(&mut u_of).collect::<Result<Vec<_>>>()?;
                let lhs = ToricOpen::product(&us)?.pullback_mul(&f)?;
                let mut factors = Vec::with_capacity(f.len());
                for (q, r) in qs.iter().zip(&ranges) {
                    let sub = Composition::new(f.lumps()[r.clone()].to_vec())?;
                    for p in comul(q, &sub)? {
                        factors.push(u_of(&p)?);
                    }
                }
                let rhs = ToricOpen::product(&factors)?;
                if lhs != rhs {
                    report.counterexample = Some(serde_json::json!({
                        "identity": "mul",
                        "F": f, "G": g,
                        "preposets": qs.iter().map(crate::json::aug_to_json).collect::<Vec<_>>(),
                        "lhs_orbits": lhs.len(), "rhs_orbits": rhs.len(),
                    }));
                    return Ok(report);
                }
            }
        }
    }
    Ok(report)
}
