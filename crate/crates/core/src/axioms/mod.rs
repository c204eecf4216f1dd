//! Generic bimonoid law harness.
//!
//! An [`Instance`] supplies the binary multiplication `μ_{S,T}`, the binary
//! comultiplication `Δ_{S,T}`, relabeling along bijections, and a way to
//! produce elements. The harness builds the higher operations `μ_{F,G}` and
//! `Δ_{F,G}` for `G ≤ F` by chains of adjacent merges (or splits) and checks:
//!
//! * the five diagrams of a Joyal-theoretic bimonoid: naturality of `μ` and
//!   `Δ` under relabeling, associativity, coassociativity and the bimonoid
//!   square, with empty blocks allowed everywhere;
//! * unitality with respect to the element over `∅`, and absorption of the
//!   zero for pointed instances;
//! * independence of the lifted operations from the merge chain;
//! * naturality of the lifted operations under permutations of lumps, using
//!   `β̂` from [`crate::setcomp::hat_beta`];
//! * the bimonoid axiom `Δ_G ∘ μ_F = μ_{GF,G} ∘ β ∘ Δ_{FG,F}` for arbitrary
//!   compositions `F`, `G` of `I`.
//!
//! When the number of cases for a law fits in the budget the law is checked
//! exhaustively; otherwise `budget` cases are drawn with a seeded generator.

pub mod instances;

use std::collections::HashMap;
use std::fmt::Debug;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::label::{GroundSet, Label};
use crate::setcomp::{hat_beta, Bijection, Composition, Perm};

pub trait Instance {
    type Elem: Clone + PartialEq + Debug;

    fn name(&self) -> String;

    /// Ground set of an element.
    fn ground(&self, x: &Self::Elem) -> GroundSet;

    /// The element over `∅` acting as the unit.
    fn unit(&self) -> Self::Elem;

    /// The zero over `ground` for pointed instances.
    fn zero(&self, _ground: &GroundSet) -> Option<Self::Elem> {
        None
    }

    fn is_zero(&self, _x: &Self::Elem) -> bool {
        false
    }

    /// Every element over `ground`, when that set is finite and small.
    fn enumerate(&self, ground: &GroundSet) -> Option<Vec<Self::Elem>>;

    fn sample(&self, ground: &GroundSet, rng: &mut ChaCha8Rng) -> Self::Elem;

    /// `μ_{S,T}(a, b)` for `a` over `S` and `b` over `T`.
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;

    /// `Δ_{S,T}(x)`.
    fn comul(&self, x: &Self::Elem, s: &GroundSet, t: &GroundSet) -> Result<(Self::Elem, Self::Elem)>;

    /// Pullback along `σ: J → I`.
    fn relabel(&self, sigma: &Bijection, x: &Self::Elem) -> Result<Self::Elem>;

    fn to_json(&self, x: &Self::Elem) -> Value;

    fn pointed(&self) -> bool {
        self.zero(&GroundSet::empty()).is_some()
    }
}

/// Replaces a tuple containing a zero by the all-zero tuple (smash product).
pub fn normalize<I: Instance>(inst: &I, t: Vec<I::Elem>) -> Vec<I::Elem> {
    if t.iter().any(|x| inst.is_zero(x)) {
        t.iter().map(|x| inst.zero(&inst.ground(x)).unwrap()).collect()
    } else {
        t
    }
}

/// Every chain of adjacent merges from `f` down to `g`, as the merged positions.
pub fn merge_chains(f: &Composition, g: &Composition) -> Result<Vec<Vec<usize>>> {
    let ranges = g.merge_ranges(f)?;
    // owner[i] = lump of g containing lump i of f
    let owner: Vec<usize> = ranges.iter().enumerate().flat_map(|(j, r)| r.clone().map(move |_| j)).collect();
    let mut out = Vec::new();
    fn rec(owner: &mut Vec<usize>, chain: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let mergeable: Vec<usize> = (0..owner.len().saturating_sub(1)).filter(|&i| owner[i] == owner[i + 1]).collect();
        if mergeable.is_empty() {
            out.push(chain.clone());
            return;
        }
        for i in mergeable {
            let removed = owner.remove(i + 1);
            chain.push(i);
            rec(owner, chain, out);
            chain.pop();
            owner.insert(i + 1, removed);
        }
    }
    let mut owner = owner;
    rec(&mut owner, &mut Vec::new(), &mut out);
    Ok(out)
}

/// The left-to-right merge chain.
fn default_chain(f: &Composition, g: &Composition) -> Result<Vec<usize>> {
    let ranges = g.merge_ranges(f)?;
    let mut chain = Vec::new();
    for (j, r) in ranges.iter().enumerate() {
        for _ in 1..r.len() {
            chain.push(j);
        }
    }
    Ok(chain)
}

/// `μ_{F,G}` along a given merge chain.
pub fn lift_mul_chain<I: Instance>(inst: &I, f: &Composition, t: &[I::Elem], chain: &[usize]) -> Result<Vec<I::Elem>> {
    check_tuple(inst, f, t)?;
    let mut cur = t.to_vec();
    for &i in chain {
        let b = cur.remove(i + 1);
        cur[i] = inst.mul(&cur[i], &b)?;
        cur = normalize(inst, cur);
    }
    Ok(cur)
}

/// `Δ_{F,G}` along the reverse of a merge chain from `F` to `G`.
pub fn lift_comul_chain<I: Instance>(inst: &I, f: &Composition, g: &Composition, t: &[I::Elem], chain: &[usize]) -> Result<Vec<I::Elem>> {
    check_tuple(inst, g, t)?;
    // compositions along the merge chain, from f to g
    let mut comps = vec![f.lumps().to_vec()];
    for &i in chain {
        let mut c = comps.last().unwrap().clone();
        let b = c.remove(i + 1);
        c[i] = c[i].union(&b);
        comps.push(c);
    }
    let mut cur = t.to_vec();
    for (step, &i) in chain.iter().enumerate().rev() {
        let finer = &comps[step];
        let (a, b) = inst.comul(&cur[i], &finer[i], &finer[i + 1])?;
        cur[i] = a;
        cur.insert(i + 1, b);
        cur = normalize(inst, cur);
    }
    Ok(cur)
}

pub fn lift_mul<I: Instance>(inst: &I, f: &Composition, g: &Composition, t: &[I::Elem]) -> Result<Vec<I::Elem>> {
    lift_mul_chain(inst, f, t, &default_chain(f, g)?)
}

pub fn lift_comul<I: Instance>(inst: &I, f: &Composition, g: &Composition, t: &[I::Elem]) -> Result<Vec<I::Elem>> {
    lift_comul_chain(inst, f, g, t, &default_chain(f, g)?)
}

fn check_tuple<I: Instance>(inst: &I, f: &Composition, t: &[I::Elem]) -> Result<()> {
    if t.len() != f.len() || t.iter().zip(f.lumps()).any(|(x, s)| &inst.ground(x) != s) {
        return Err(Error::GroundMismatch(format!("tuple does not match the lumps of {f}")));
    }
    Ok(())
}

/// Moves the entry at position `i` to position `β(i)`.
pub fn permute_tuple<E: Clone>(beta: &Perm, t: &[E]) -> Vec<E> {
    let mut out = t.to_vec();
    for (i, x) in t.iter().enumerate() {
        out[beta.apply(i)] = x.clone();
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Law {
    MulNaturality,
    ComulNaturality,
    Associativity,
    Coassociativity,
    Bimonoid,
    Unitality,
    Absorption,
    MergeIndependenceMul,
    MergeIndependenceComul,
    BetaNaturalityMul,
    BetaNaturalityComul,
    GeneralBimonoid,
}

impl Law {
    pub const JOYAL: [Law; 5] = [Law::MulNaturality, Law::ComulNaturality, Law::Associativity, Law::Coassociativity, Law::Bimonoid];

    pub const LIFTED: [Law; 5] =
        [Law::MergeIndependenceMul, Law::MergeIndependenceComul, Law::BetaNaturalityMul, Law::BetaNaturalityComul, Law::GeneralBimonoid];

    pub const ALL: [Law; 12] = [
        Law::MulNaturality,
        Law::ComulNaturality,
        Law::Associativity,
        Law::Coassociativity,
        Law::Bimonoid,
        Law::Unitality,
        Law::Absorption,
        Law::MergeIndependenceMul,
        Law::MergeIndependenceComul,
        Law::BetaNaturalityMul,
        Law::BetaNaturalityComul,
        Law::GeneralBimonoid,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Law::MulNaturality => "mul-naturality",
            Law::ComulNaturality => "comul-naturality",
            Law::Associativity => "associativity",
            Law::Coassociativity => "coassociativity",
            Law::Bimonoid => "bimonoid",
            Law::Unitality => "unitality",
            Law::Absorption => "absorption",
            Law::MergeIndependenceMul => "merge-independence-mul",
            Law::MergeIndependenceComul => "merge-independence-comul",
            Law::BetaNaturalityMul => "beta-naturality-mul",
            Law::BetaNaturalityComul => "beta-naturality-comul",
            Law::GeneralBimonoid => "general-bimonoid",
        }
    }
}

/// Result of checking one law.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LawReport {
    pub law: String,
    pub instance: String,
    pub size: usize,
    pub cases: u64,
    pub exhaustive: bool,
    pub passed: bool,
    pub counterexample: Option<Value>,
}

/// Parameters of one case apart from the elements.
#[derive(Clone, Debug)]
pub struct Shape {
    blocks: Vec<GroundSet>,
    sigma: Option<Bijection>,
    f: Option<Composition>,
    g: Option<Composition>,
    beta: Option<Perm>,
    hat: Option<Perm>,
    inputs: Vec<GroundSet>,
}

impl Shape {
    fn blocks(blocks: Vec<GroundSet>, inputs: Vec<GroundSet>) -> Self {
        Shape { blocks, sigma: None, f: None, g: None, beta: None, hat: None, inputs }
    }

    fn to_json(&self) -> Value {
        let mut m = serde_json::Map::new();
        if !self.blocks.is_empty() {
            m.insert("blocks".into(), json!(self.blocks));
        }
        if let Some(s) = &self.sigma {
            m.insert("sigma".into(), json!(s));
        }
        if let Some(f) = &self.f {
            m.insert("F".into(), json!(f));
        }
        if let Some(g) = &self.g {
            m.insert("G".into(), json!(g));
        }
        if let Some(b) = &self.beta {
            m.insert("beta".into(), json!(b));
        }
        Value::Object(m)
    }
}

/// All ordered decompositions of `ground` into `k` possibly empty blocks.
pub fn decompositions(ground: &GroundSet, k: usize) -> Vec<Vec<GroundSet>> {
    let n = ground.len();
    let mut out = Vec::new();
    for code in 0..k.pow(n as u32) {
        let mut blocks: Vec<Vec<Label>> = vec![Vec::new(); k];
        let mut c = code;
        for l in ground.iter() {
            blocks[c % k].push(l.clone());
            c /= k;
        }
        out.push(blocks.into_iter().map(|b| GroundSet::new(b).unwrap()).collect());
    }
    out
}

/// Bijections onto `ground` from a primed copy of it, one per permutation.
pub fn bijections_onto(ground: &GroundSet) -> Vec<Bijection> {
    let labels = ground.labels();
    Perm::all(labels.len())
        .into_iter()
        .map(|p| Bijection::from_pairs(labels.iter().enumerate().map(|(i, l)| (Label::Name(format!("{l}'")), labels[p.apply(i)].clone()))).unwrap())
        .collect()
}

fn shapes(law: Law, ground: &GroundSet, pointed: bool) -> Result<Vec<Shape>> {
    let whole = || vec![ground.clone()];
    Ok(match law {
        Law::MulNaturality => {
            let mut v = Vec::new();
            for sigma in bijections_onto(ground) {
                for d in decompositions(ground, 2) {
                    let mut s = Shape::blocks(d.clone(), d);
                    s.sigma = Some(sigma.clone());
                    v.push(s);
                }
            }
            v
        }
        Law::ComulNaturality => {
            let mut v = Vec::new();
            for sigma in bijections_onto(ground) {
                for d in decompositions(ground, 2) {
                    let mut s = Shape::blocks(d, whole());
                    s.sigma = Some(sigma.clone());
                    v.push(s);
                }
            }
            v
        }
        Law::Associativity => decompositions(ground, 3).into_iter().map(|d| Shape::blocks(d.clone(), d)).collect(),
        Law::Coassociativity => decompositions(ground, 3).into_iter().map(|d| Shape::blocks(d, whole())).collect(),
        Law::Bimonoid => decompositions(ground, 4)
            .into_iter()
            .map(|d| {
                let inputs = vec![d[0].union(&d[1]), d[2].union(&d[3])];
                Shape::blocks(d, inputs)
            })
            .collect(),
        Law::Unitality => vec![Shape::blocks(vec![], whole())],
        Law::Absorption => {
            if !pointed {
                vec![]
            } else {
                decompositions(ground, 2).into_iter().map(|d| Shape::blocks(d.clone(), d)).collect()
            }
        }
        Law::MergeIndependenceMul | Law::MergeIndependenceComul | Law::GeneralBimonoid => {
            let comps = Composition::enumerate(ground)?;
            let mut v = Vec::new();
            for f in &comps {
                let partners: Vec<Composition> = if law == Law::GeneralBimonoid { comps.clone() } else { f.coarsenings() };
                for g in partners {
                    let inputs = if law == Law::MergeIndependenceComul { g.lumps().to_vec() } else { f.lumps().to_vec() };
                    let mut s = Shape::blocks(vec![], inputs);
                    s.f = Some(f.clone());
                    s.g = Some(g);
                    v.push(s);
                }
            }
            v
        }
        Law::BetaNaturalityMul | Law::BetaNaturalityComul => {
            let mut v = Vec::new();
            for f in Composition::enumerate(ground)? {
                for g in f.coarsenings() {
                    for beta in Perm::all(g.len()) {
                        let hat = hat_beta(&beta, &f, &g)?;
                        let inputs = if law == Law::BetaNaturalityMul { f.lumps().to_vec() } else { g.lumps().to_vec() };
                        let mut s = Shape::blocks(vec![], inputs);
                        s.f = Some(f.clone());
                        s.g = Some(g.clone());
                        s.beta = Some(beta);
                        s.hat = Some(hat);
                        v.push(s);
                    }
                }
            }
            v
        }
    })
}

type Mismatch = Option<(Value, Value)>;

fn tuple_json<I: Instance>(inst: &I, t: &[I::Elem]) -> Value {
    Value::Array(t.iter().map(|x| inst.to_json(x)).collect())
}

fn compare<I: Instance>(inst: &I, lhs: Vec<I::Elem>, rhs: Vec<I::Elem>) -> Mismatch {
    let (l, r) = (normalize(inst, lhs), normalize(inst, rhs));
    if l == r {
        None
    } else {
        Some((tuple_json(inst, &l), tuple_json(inst, &r)))
    }
}

fn check_case<I: Instance>(inst: &I, law: Law, sh: &Shape, x: &[I::Elem]) -> Result<Mismatch> {
    let b = &sh.blocks;
    Ok(match law {
        Law::MulNaturality => {
            let sigma = sh.sigma.as_ref().unwrap();
            let lhs = inst.relabel(sigma, &inst.mul(&x[0], &x[1])?)?;
            let a = inst.relabel(&sigma.restrict_to_target(&b[0])?, &x[0])?;
            let c = inst.relabel(&sigma.restrict_to_target(&b[1])?, &x[1])?;
            compare(inst, vec![lhs], vec![inst.mul(&a, &c)?])
        }
        Law::ComulNaturality => {
            let sigma = sh.sigma.as_ref().unwrap();
            let (s2, t2) = (sigma.preimage(&b[0])?, sigma.preimage(&b[1])?);
            let (l1, l2) = inst.comul(&inst.relabel(sigma, &x[0])?, &s2, &t2)?;
            let (r1, r2) = inst.comul(&x[0], &b[0], &b[1])?;
            let r1 = inst.relabel(&sigma.restrict_to_target(&b[0])?, &r1)?;
            let r2 = inst.relabel(&sigma.restrict_to_target(&b[1])?, &r2)?;
            compare(inst, vec![l1, l2], vec![r1, r2])
        }
        Law::Associativity => {
            let lhs = inst.mul(&inst.mul(&x[0], &x[1])?, &x[2])?;
            let rhs = inst.mul(&x[0], &inst.mul(&x[1], &x[2])?)?;
            compare(inst, vec![lhs], vec![rhs])
        }
        Law::Coassociativity => {
            let (st, u) = (b[0].union(&b[1]), &b[2]);
            let (a, c) = inst.comul(&x[0], &st, u)?;
            let (a1, a2) = inst.comul(&a, &b[0], &b[1])?;
            let tu = b[1].union(&b[2]);
            let (d, e) = inst.comul(&x[0], &b[0], &tu)?;
            let (e1, e2) = inst.comul(&e, &b[1], &b[2])?;
            compare(inst, normalize(inst, vec![a1, a2, c]), normalize(inst, vec![d, e1, e2]))
        }
        Law::Bimonoid => {
            let (s, t, u, v) = (&b[0], &b[1], &b[2], &b[3]);
            let m = inst.mul(&x[0], &x[1])?;
            let (l1, l2) = inst.comul(&m, &s.union(u), &t.union(v))?;
            let (a1, a2) = inst.comul(&x[0], s, t)?;
            let (c1, c2) = inst.comul(&x[1], u, v)?;
            let four = normalize(inst, vec![a1, a2, c1, c2]);
            let r1 = inst.mul(&four[0], &four[2])?;
            let r2 = inst.mul(&four[1], &four[3])?;
            compare(inst, vec![l1, l2], vec![r1, r2])
        }
        Law::Unitality => {
            let e = inst.unit();
            let g = inst.ground(&x[0]);
            let mut bad = compare(inst, vec![inst.mul(&x[0], &e)?], vec![x[0].clone()]);
            bad = bad.or(compare(inst, vec![inst.mul(&e, &x[0])?], vec![x[0].clone()]));
            let (a, c) = inst.comul(&x[0], &g, &GroundSet::empty())?;
            bad = bad.or(compare(inst, vec![a, c], vec![x[0].clone(), e.clone()]));
            let (a, c) = inst.comul(&x[0], &GroundSet::empty(), &g)?;
            bad.or(compare(inst, vec![a, c], vec![e, x[0].clone()]))
        }
        Law::Absorption => {
            let z0 = inst.zero(&b[0]).unwrap();
            let z1 = inst.zero(&b[1]).unwrap();
            let m1 = inst.mul(&x[0], &z1)?;
            let m2 = inst.mul(&z0, &x[1])?;
            let whole = b[0].union(&b[1]);
            let (d1, d2) = inst.comul(&inst.zero(&whole).unwrap(), &b[0], &b[1])?;
            let ok = inst.is_zero(&m1) && inst.is_zero(&m2) && inst.is_zero(&d1) && inst.is_zero(&d2);
            if ok {
                None
            } else {
                Some((tuple_json(inst, &[m1, m2, d1, d2]), json!("all zero")))
            }
        }
        Law::MergeIndependenceMul | Law::MergeIndependenceComul => {
            let (f, g) = (sh.f.as_ref().unwrap(), sh.g.as_ref().unwrap());
            let chains = merge_chains(f, g)?;
            let run = |c: &[usize]| {
                if law == Law::MergeIndependenceMul {
                    lift_mul_chain(inst, f, x, c)
                } else {
                    lift_comul_chain(inst, f, g, x, c)
                }
            };
            let first = run(&chains[0])?;
            let mut bad = None;
            for c in &chains[1..] {
                if let Some(m) = compare(inst, first.clone(), run(c)?) {
                    bad = Some((json!({"chain": chains[0], "value": m.0}), json!({"chain": c, "value": m.1})));
                    break;
                }
            }
            bad
        }
        Law::BetaNaturalityMul => {
            let (f, g) = (sh.f.as_ref().unwrap(), sh.g.as_ref().unwrap());
            let (beta, hat) = (sh.beta.as_ref().unwrap(), sh.hat.as_ref().unwrap());
            let lhs = permute_tuple(beta, &lift_mul(inst, f, g, x)?);
            let gt = g.permute_lumps(beta)?;
            let gtf = gt.tits_product(f)?;
            let rhs = lift_mul(inst, &gtf, &gt, &permute_tuple(hat, x))?;
            compare(inst, lhs, rhs)
        }
        Law::BetaNaturalityComul => {
            let (f, g) = (sh.f.as_ref().unwrap(), sh.g.as_ref().unwrap());
            let (beta, hat) = (sh.beta.as_ref().unwrap(), sh.hat.as_ref().unwrap());
            let gt = g.permute_lumps(beta)?;
            let gtf = gt.tits_product(f)?;
            let lhs = lift_comul(inst, &gtf, &gt, &permute_tuple(beta, x))?;
            let rhs = permute_tuple(hat, &lift_comul(inst, f, g, x)?);
            compare(inst, lhs, rhs)
        }
        Law::GeneralBimonoid => {
            let (f, g) = (sh.f.as_ref().unwrap(), sh.g.as_ref().unwrap());
            let top = Composition::single(f.ground());
            let lhs = lift_comul(inst, g, &top, &lift_mul(inst, f, &top, x)?)?;
            let fg = f.tits_product(g)?;
            let gf = g.tits_product(f)?;
            let split = lift_comul(inst, &fg, f, x)?;
            // FG and GF have the same lumps; move each factor to its place in GF
            let images = fg
                .lumps()
                .iter()
                .map(|s| gf.lumps().iter().position(|t| t == s))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| Error::Precondition("FG and GF differ as sets of lumps".into()))?;
            let reordered = permute_tuple(&Perm::from_images(images)?, &split);
            let rhs = lift_mul(inst, &gf, g, &reordered)?;
            compare(inst, lhs, rhs)
        }
    })
}

/// Cache of per-ground enumerations.
struct Pool<'a, I: Instance> {
    inst: &'a I,
    cache: HashMap<GroundSet, Option<Vec<I::Elem>>>,
}

impl<'a, I: Instance> Pool<'a, I> {
    fn get(&mut self, g: &GroundSet) -> &Option<Vec<I::Elem>> {
        if !self.cache.contains_key(g) {
            let v = self.inst.enumerate(g);
            self.cache.insert(g.clone(), v);
        }
        &self.cache[g]
    }

    fn count(&mut self, inputs: &[GroundSet]) -> Option<u128> {
        let mut c: u128 = 1;
        for g in inputs {
            c = c.saturating_mul(self.get(g).as_ref()?.len() as u128);
        }
        Some(c)
    }

    fn draw(&mut self, g: &GroundSet, rng: &mut ChaCha8Rng) -> I::Elem {
        match self.get(g) {
            Some(v) if !v.is_empty() => v[rng.gen_range(0..v.len())].clone(),
            _ => self.inst.sample(g, rng),
        }
    }
}

/// Checks one law over `ground`.
pub fn check_law<I: Instance>(inst: &I, law: Law, ground: &GroundSet, budget: u64, seed: u64) -> Result<LawReport> {
    let shapes = shapes(law, ground, inst.pointed())?;
    let mut pool = Pool { inst, cache: HashMap::new() };
    let total: Option<u128> = shapes.iter().try_fold(0u128, |acc, s| pool.count(&s.inputs).map(|c| acc.saturating_add(c)));
    let mut report =
        LawReport { law: law.name().into(), instance: inst.name(), size: ground.len(), cases: 0, exhaustive: false, passed: true, counterexample: None };
    let fail = |sh: &Shape, x: &[I::Elem], m: (Value, Value), report: &mut LawReport| {
        report.passed = false;
        report.counterexample = Some(json!({
            "shape": sh.to_json(),
            "inputs": tuple_json(inst, x),
            "lhs": m.0,
            "rhs": m.1,
        }));
    };
    if shapes.is_empty() {
        report.exhaustive = true;
        return Ok(report);
    }
    match total {
        Some(t) if t <= budget as u128 => {
            report.exhaustive = true;
            for sh in &shapes {
                let lists: Vec<Vec<I::Elem>> = sh.inputs.iter().map(|g| pool.get(g).clone().unwrap()).collect();
                let mut idx = vec![0usize; lists.len()];
                if lists.iter().any(Vec::is_empty) {
                    continue;
                }
                loop {
                    let x: Vec<I::Elem> = idx.iter().zip(&lists).map(|(&i, l)| l[i].clone()).collect();
                    report.cases += 1;
                    if let Some(m) = check_case(inst, law, sh, &x)? {
                        fail(sh, &x, m, &mut report);
                        return Ok(report);
                    }
                    let mut k = idx.len();
                    loop {
                        if k == 0 {
                            break;
                        }
                        k -= 1;
                        idx[k] += 1;
                        if idx[k] < lists[k].len() {
                            break;
                        }
                        idx[k] = 0;
                        if k == 0 {
                            k = usize::MAX;
                            break;
                        }
                    }
                    if k == usize::MAX || idx.is_empty() {
                        break;
                    }
                }
            }
        }
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (law as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
            for _ in 0..budget {
                let sh = &shapes[rng.gen_range(0..shapes.len())];
                let x: Vec<I::Elem> = sh.inputs.iter().map(|g| pool.draw(g, &mut rng)).collect();
                report.cases += 1;
                if let Some(m) = check_case(inst, law, sh, &x)? {
                    fail(sh, &x, m, &mut report);
                    return Ok(report);
                }
            }
        }
    }
    Ok(report)
}

/// Checks every law in `laws` over `ground`, in the given order.
pub fn check_laws<I: Instance>(inst: &I, laws: &[Law], ground: &GroundSet, budget: u64, seed: u64) -> Result<Vec<LawReport>> {
    laws.iter().map(|&l| check_law(inst, l, ground, budget, seed)).collect()
}

/// All laws; absorption is skipped for unpointed instances.
pub fn check_all<I: Instance>(inst: &I, ground: &GroundSet, budget: u64, seed: u64) -> Result<Vec<LawReport>> {
    let laws: Vec<Law> = Law::ALL.iter().copied().filter(|&l| l != Law::Absorption || inst.pointed()).collect();
    check_laws(inst, &laws, ground, budget, seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(l: Vec<Vec<i64>>) -> Composition {
        Composition::from_lumps(l).unwrap()
    }

    #[test]
    fn chain_counts() {
        let f = c(vec![vec![1], vec![2], vec![3], vec![4]]);
        let top = Composition::single(f.ground());
        assert_eq!(merge_chains(&f, &top).unwrap().len(), 6);
        let g = c(vec![vec![1, 2], vec![3, 4]]);
        assert_eq!(merge_chains(&f, &g).unwrap().len(), 2);
        assert_eq!(merge_chains(&f, &f).unwrap(), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn decomposition_counts() {
        assert_eq!(decompositions(&GroundSet::range(3), 4).len(), 64);
        assert_eq!(decompositions(&GroundSet::empty(), 2).len(), 1);
    }
}
