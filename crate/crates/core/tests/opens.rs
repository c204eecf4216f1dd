use std::collections::BTreeSet;

use permutokit::label::GroundSet;
use permutokit::opens::{all_tuples, check_indexing, check_indexing_with, o_comul_along, ToricOpen};
use permutokit::points::PermPoint;
use permutokit::preposet::AugPreposet;
use permutokit::random;
use permutokit::setcomp::Composition;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn comps(n: usize) -> Vec<Composition> {
    Composition::enumerate(&GroundSet::range(n)).unwrap()
}

/// Every product `U_{p_1} × ⋯ × U_{p_k}` over the lumps of `shape`.
fn preposet_opens(shape: &Composition) -> Vec<ToricOpen> {
    let mut out = vec![Vec::new()];
    for s in shape.lumps() {
        let us: Vec<ToricOpen> = AugPreposet::enumerate(s).unwrap().iter().map(|p| ToricOpen::of_preposet(p).unwrap()).collect();
        out = out
            .into_iter()
            .flat_map(|t: Vec<ToricOpen>| {
                us.iter().map(move |u| {
                    let mut t = t.clone();
                    t.push(u.clone());
                    t
                })
            })
            .collect();
    }
    out.iter().map(|parts| ToricOpen::product(parts).unwrap()).collect()
}

#[test]
fn preposet_opens_are_distinct_and_down_closed() {
    for n in 0..=4 {
        let g = GroundSet::range(n);
        let ps = AugPreposet::enumerate(&g).unwrap();
        let us: BTreeSet<Vec<Vec<Composition>>> = ps
            .iter()
            .map(|p| {
                let u = ToricOpen::of_preposet(p).unwrap();
                assert!(u.is_down_closed());
                assert_eq!(u.is_empty(), p.is_bottom());
                u.orbits().iter().cloned().collect()
            })
            .collect();
        assert_eq!(us.len(), ps.len(), "n = {n}");
    }
}

#[test]
fn pullbacks_compose() {
    for n in 0..=3 {
        for f in comps(n) {
            for u in preposet_opens(&f) {
                for g in f.coarsenings() {
                    let ug = u.pullback_comul(&g).unwrap();
                    assert!(ug.is_down_closed());
                    for h in g.coarsenings() {
                        assert_eq!(ug.pullback_comul(&h).unwrap(), u.pullback_comul(&h).unwrap());
                    }
                }
            }
            // multiplication side: opens of a coarse shape pulled back to finer ones
            for u in preposet_opens(&f) {
                let finer: Vec<Composition> = comps(n).into_iter().filter(|k| f.leq(k).unwrap()).collect();
                for g in &finer {
                    let ug = u.pullback_mul(g).unwrap();
                    assert!(ug.is_down_closed());
                    for k in finer.iter().filter(|k| g.leq(k).unwrap()) {
                        assert_eq!(ug.pullback_mul(k).unwrap(), u.pullback_mul(k).unwrap());
                    }
                }
            }
        }
    }
}

#[test]
fn pullback_bimonoid_square() {
    for n in 0..=3 {
        let all = comps(n);
        let single = Composition::single(&GroundSet::range(n));
        for g in &all {
            for u in preposet_opens(g) {
                for f in &all {
                    let lhs = u.pullback_comul(&single).unwrap().pullback_mul(f).unwrap();
                    let fg = f.tits_product(g).unwrap();
                    let gf = g.tits_product(f).unwrap();
                    let rhs = u.pullback_mul(&gf).unwrap().reorder_to(&fg).unwrap().pullback_comul(f).unwrap();
                    assert_eq!(lhs, rhs, "F = {f}, G = {g}");
                }
            }
        }
    }
}

#[test]
fn orbit_formulas_agree_with_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in 0..=4 {
        for f in comps(n) {
            let opens = preposet_opens(&f);
            for g in f.coarsenings() {
                let ranges = g.merge_ranges(&f).unwrap();
                for t in all_tuples(&g).unwrap() {
                    let u = &opens[rand::Rng::gen_range(&mut rng, 0..opens.len())];
                    let xs: Vec<PermPoint> = t.iter().map(|h| random::perm_point_in(h.clone(), &mut rng).unwrap()).collect();
                    let image: Vec<Composition> =
                        xs.iter().zip(&ranges).flat_map(|(x, r)| f.lumps()[r.clone()].iter().map(move |s| x.restrict(s).unwrap().orbit().clone())).collect();
                    assert_eq!(u.pullback_comul(&g).unwrap().contains(&t), u.contains(&image));
                }
                let coarse = preposet_opens(&g);
                for t in all_tuples(&f).unwrap() {
                    let u = &coarse[rand::Rng::gen_range(&mut rng, 0..coarse.len())];
                    let xs: Vec<PermPoint> = t.iter().map(|h| random::perm_point_in(h.clone(), &mut rng).unwrap()).collect();
                    let image: Vec<Composition> = ranges
                        .iter()
                        .map(|r| {
                            let first = xs[r.start].clone();
                            xs[r.clone()].iter().skip(1).fold(first, |a, b| a.mul(b).unwrap()).orbit().clone()
                        })
                        .collect();
                    assert_eq!(u.pullback_mul(&f).unwrap().contains(&t), u.contains(&image));
                }
            }
        }
    }
}

#[test]
fn indexing_holds_and_catches_a_broken_comultiplication() {
    for n in 0..=3 {
        let r = check_indexing(&GroundSet::range(n)).unwrap();
        assert!(r.passed(), "{r:?}");
    }
    // plain restriction, with no obstruction check, breaks the identity
    let broken = |p: &AugPreposet, f: &Composition| -> permutokit::Result<Vec<AugPreposet>> {
        match p {
            AugPreposet::Preposet(q) => f.lumps().iter().map(|s| Ok(AugPreposet::Preposet(q.restrict(s)?))).collect(),
            AugPreposet::Bottom(_) => o_comul_along(p, f),
        }
    };
    assert!(!check_indexing_with(&GroundSet::range(2), &broken).unwrap().passed());
    assert!(check_indexing(&GroundSet::range(5)).is_err());
}

#[test]
fn json_input_is_down_closed() {
    let open: ToricOpen = serde_json::from_str(r#"{"shape":[[1,2]],"orbits":[[[[1],[2]]]]}"#).unwrap();
    assert_eq!(open.len(), 2);
    assert!(open.contains(&vec![Composition::single(&GroundSet::range(2))]));
    assert!(serde_json::from_str::<ToricOpen>(r#"{"shape":[[1,2]],"orbits":[[[[1]]]]}"#).is_err());
}
