use std::collections::BTreeSet;

use permutokit::axioms::instances::Sigma;
use permutokit::axioms::{check_law, Law};
use permutokit::label::{GroundSet, Label};
use permutokit::setcomp::{Bijection, Composition, Perm};
use proptest::prelude::*;

fn all(n: usize) -> Vec<Composition> {
    Composition::enumerate(&GroundSet::range(n)).unwrap()
}

/// Ordered Bell numbers by the recurrence `a(n) = Σ_k C(n,k) a(n-k)`.
fn fubini(n: usize) -> usize {
    let mut a = vec![1usize];
    for m in 1..=n {
        let mut binom = 1usize;
        let mut s = 0;
        for k in 1..=m {
            binom = binom * (m - k + 1) / k;
            s += binom * a[m - k];
        }
        a.push(s);
    }
    a[n]
}

#[test]
fn enumeration_counts_match_ordered_bell_numbers() {
    for n in 0..=6 {
        let comps = all(n);
        assert_eq!(comps.len(), fubini(n), "n = {n}");
        let distinct: BTreeSet<_> = comps.iter().collect();
        assert_eq!(distinct.len(), comps.len());
    }
}

#[test]
fn tits_product_is_associative_and_unital() {
    for n in 0..=4 {
        let comps = all(n);
        let top = Composition::single(&GroundSet::range(n));
        for f in &comps {
            assert_eq!(f.tits_product(&top).unwrap(), *f);
            assert_eq!(top.tits_product(f).unwrap(), *f);
            for g in &comps {
                let fg = f.tits_product(g).unwrap();
                for h in &comps {
                    assert_eq!(fg.tits_product(h).unwrap(), f.tits_product(&g.tits_product(h).unwrap()).unwrap());
                }
            }
        }
    }
}

#[test]
fn fg_and_gf_have_the_same_lumps() {
    for n in 0..=4 {
        let comps = all(n);
        for f in &comps {
            for g in &comps {
                let a: BTreeSet<_> = f.tits_product(g).unwrap().lumps().iter().cloned().collect();
                let b: BTreeSet<_> = g.tits_product(f).unwrap().lumps().iter().cloned().collect();
                assert_eq!(a, b);
            }
        }
    }
}

/// `G ≤ F` by definition: every lump of `G` is a union of a contiguous run of lumps of `F`.
fn merges(g: &Composition, f: &Composition) -> bool {
    let mut j = 0;
    for lump in g.lumps() {
        let mut acc = GroundSet::empty();
        while acc.len() < lump.len() {
            match f.lumps().get(j) {
                Some(s) => acc = acc.union(s),
                None => return false,
            }
            j += 1;
        }
        if &acc != lump {
            return false;
        }
    }
    j == f.len()
}

#[test]
fn refinement_agrees_with_merging_and_tits_characterization() {
    for n in 0..=4 {
        let comps = all(n);
        for f in &comps {
            for g in &comps {
                let leq = g.leq(f).unwrap();
                assert_eq!(leq, merges(g, f), "{g} ≤ {f}");
                // G ≤ F iff GF = F
                assert_eq!(leq, g.tits_product(f).unwrap() == *f, "{g} ≤ {f}");
            }
            let coarse: BTreeSet<_> = f.coarsenings().into_iter().collect();
            let expected: BTreeSet<_> = comps.iter().filter(|g| g.leq(f).unwrap()).cloned().collect();
            assert_eq!(coarse, expected);
        }
    }
}

#[test]
fn sigma_bimonoid_square_is_exhaustive_at_four() {
    let r = check_law(&Sigma::default(), Law::Bimonoid, &GroundSet::range(4), 10_000_000, 0).unwrap();
    assert!(r.exhaustive && r.passed, "{r:?}");
}

#[test]
fn hat_beta_solves_its_defining_equation() {
    for n in 1..=4 {
        for f in all(n) {
            for g in f.coarsenings() {
                for beta in Perm::all(g.len()) {
                    let hat = permutokit::setcomp::hat_beta(&beta, &f, &g).unwrap();
                    let lhs = f.permute_lumps(&hat).unwrap();
                    let rhs = g.permute_lumps(&beta).unwrap().tits_product(&f).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}

fn composition_strategy(max: usize) -> impl Strategy<Value = Composition> {
    (0..=max).prop_flat_map(|n| proptest::collection::vec(0..n.max(1), n)).prop_map(|word| {
        let k = word.iter().copied().max().map_or(0, |m| m + 1);
        let mut lumps = vec![Vec::new(); k];
        for (i, &w) in word.iter().enumerate() {
            lumps[w].push(i as i64 + 1);
        }
        Composition::from_lumps(lumps.into_iter().filter(|l: &Vec<i64>| !l.is_empty()).collect()).unwrap()
    })
}

proptest! {
    #[test]
    fn relabel_and_permute_commute(f in composition_strategy(6), seed in any::<u64>()) {
        let labels = f.ground().labels().to_vec();
        let mut shuffled = labels.clone();
        let mut s = seed;
        for i in (1..shuffled.len()).rev() {
            shuffled.swap(i, (s % (i as u64 + 1)) as usize);
            s /= i as u64 + 1;
        }
        let sigma = Bijection::from_pairs(shuffled.iter().zip(&labels).map(|(j, i)| (Label::Name(format!("x{j}")), i.clone()))).unwrap();
        let k = f.len();
        let beta = Perm::from_images((0..k).map(|i| (i + (seed as usize % k.max(1))) % k.max(1)).collect()).unwrap();
        let a = f.relabel(&sigma).unwrap().permute_lumps(&beta).unwrap();
        let b = f.permute_lumps(&beta).unwrap().relabel(&sigma).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn json_round_trip(f in composition_strategy(6)) {
        let s = serde_json::to_string(&f).unwrap();
        prop_assert_eq!(serde_json::from_str::<Composition>(&s).unwrap(), f);
    }

    #[test]
    fn restriction_of_concatenation_splits(f in composition_strategy(5), g in composition_strategy(3)) {
        let g = g.relabel(&Bijection::from_pairs(g.ground().iter().map(|l| (Label::Name(format!("y{l}")), l.clone()))).unwrap()).unwrap();
        let fg = f.concatenate(&g).unwrap();
        prop_assert_eq!(fg.restrict(f.ground()).unwrap(), f.clone());
        prop_assert_eq!(fg.restrict(g.ground()).unwrap(), g);
    }
}
