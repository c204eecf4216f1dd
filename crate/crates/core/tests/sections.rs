use std::collections::BTreeSet;

use permutokit::axioms::instances::{ConeMonomials, Sections};
use permutokit::axioms::{check_all, check_laws, decompositions, Law};
use permutokit::boolfun::BooleanFunction;
use permutokit::cones::{cone_contains, CoweightVector};
use permutokit::label::{GroundSet, Label};
use permutokit::plates::Plate;
use permutokit::preposet::{AugPreposet, Preposet};
use permutokit::random;
use permutokit::sections::{co_comul, co_mul, global_sections, is_section, Monomial, TensorWord};
use permutokit::setcomp::Composition;
use permutokit::vector::{window_points, AffinePoint};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn pt(v: Vec<i64>) -> AffinePoint {
    AffinePoint::new(GroundSet::range(v.len()), v).unwrap()
}

fn permutohedron() -> BooleanFunction {
    BooleanFunction::from_fn(&GroundSet::range(3), |m| [0, 3, 5, 6][m.count_ones() as usize]).unwrap()
}

fn set(v: &[i64]) -> GroundSet {
    GroundSet::new(v.iter().copied()).unwrap()
}

#[test]
fn worked_section_examples() {
    let z = permutohedron();
    let basis = global_sections(&z);
    assert_eq!(basis.len(), 7);
    assert!(basis.points.contains(&pt(vec![2, 2, 2])));
    assert!(basis.points.contains(&pt(vec![3, 1, 2])));

    let split = basis.comul(&pt(vec![3, 2, 1]), &set(&[1]), &set(&[2, 3])).unwrap();
    let TensorWord::Word(w) = split else { panic!("expected a word") };
    assert_eq!(w[0].coords(), &[3]);
    assert_eq!(w[1].coords(), &[2, 1]);
    assert!(basis.comul(&pt(vec![2, 2, 2]), &set(&[1]), &set(&[2, 3])).unwrap().is_zero());

    let two = BooleanFunction::new(GroundSet::range(2), vec![0, 1, 1, 1]).unwrap();
    assert_eq!(global_sections(&two).points, vec![pt(vec![0, 1]), pt(vec![1, 0])]);

    let h = pt(vec![4, -1, 2]);
    let modular = BooleanFunction::of_point(&h).unwrap();
    assert_eq!(global_sections(&modular).points, vec![h]);

    let non_gp = BooleanFunction::new(GroundSet::range(2), vec![0, 0, 0, 1]).unwrap();
    assert!(global_sections(&non_gp).is_empty());
}

#[test]
fn worked_monomial_examples() {
    let g = GroundSet::range(3);
    let chain = AugPreposet::from(Preposet::total_of(&Composition::singletons(&g)).unwrap());
    let h = CoweightVector::coroot(&Label::from(2), &Label::from(1), &g).unwrap();
    let m = Monomial::new(chain, h).unwrap();
    let TensorWord::Word(w) = co_comul(&m, &set(&[1, 2]), &set(&[3])).unwrap() else { panic!("expected a word") };
    assert_eq!(w[0].exponent.coords(), &[-1, 1]);
    assert_eq!(w[1].exponent.coords(), &[0]);

    let g2 = GroundSet::range(2);
    let chain2 = AugPreposet::from(Preposet::total_of(&Composition::singletons(&g2)).unwrap());
    let m2 = Monomial::new(chain2, CoweightVector::new(g2.clone(), vec![-1, 1]).unwrap()).unwrap();
    assert!(co_comul(&m2, &set(&[1]), &set(&[2])).unwrap().is_zero());

    let left = Monomial::new(
        Preposet::total_of(&Composition::singletons(&g2)).unwrap().into(),
        CoweightVector::coroot(&Label::from(2), &Label::from(1), &GroundSet::range(2)).unwrap(),
    )
    .unwrap();
    let right = Monomial::new(Preposet::antichain(&set(&[3])).into(), CoweightVector::zero(&set(&[3]))).unwrap();
    let prod = co_mul(&left, &right).unwrap();
    assert_eq!(prod.exponent.coords(), &[-1, 1, 0]);
    assert!(cone_contains(&prod.p, &prod.exponent).unwrap());
}

#[test]
fn cone_monomial_laws_hold_exhaustively() {
    let inst = ConeMonomials { bound: 3 };
    for n in 0..=3 {
        for r in check_laws(&inst, &Law::JOYAL, &GroundSet::range(n), 2_000_000, 0).unwrap() {
            assert!(r.passed, "{r:?}");
            assert!(r.exhaustive || r.cases >= 100_000, "{r:?}");
        }
    }
}

#[test]
fn section_laws_hold_up_to_four() {
    for n in 0..=4 {
        for r in check_all(&Sections, &GroundSet::range(n), 400, 3).unwrap() {
            assert!(r.passed, "{r:?}");
        }
    }
}

#[test]
fn all_subsets_agree_with_intersecting_every_plate() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 0..=3 {
        let g = GroundSet::range(n);
        let comps = Composition::enumerate(&g).unwrap();
        for _ in 0..25 {
            let z = random::submodular(&g, &mut rng);
            let plates: Vec<Plate> = comps.iter().map(|h| Plate::new(h.clone(), z.clone()).unwrap()).collect();
            let expected: Vec<AffinePoint> =
                window_points(&g, &vec![0; n], 16, z.height()).into_iter().filter(|x| plates.iter().all(|p| p.contains(x).unwrap())).collect();
            assert_eq!(global_sections(&z).points, expected, "{z:?}");
        }
    }
}

/// A linear order whose first lumps exhaust `s`.
fn linear_order_through(s: &GroundSet, t: &GroundSet) -> Composition {
    let lumps: Vec<GroundSet> = s.iter().chain(t.iter()).map(|l| GroundSet::new([l.clone()]).unwrap()).collect();
    Composition::new(lumps).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn comul_keeps_exactly_the_face(seed in any::<u64>(), n in 1usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = GroundSet::range(n);
        let z = random::submodular(&g, &mut rng);
        let basis = global_sections(&z);
        for st in decompositions(&g, 2) {
            let (s, t) = (&st[0], &st[1]);
            let plate = Plate::new(linear_order_through(s, t), z.clone()).unwrap();
            let f = Composition::new([s.clone(), t.clone()].into_iter().filter(|x| !x.is_empty()).collect()).unwrap();
            let kept: BTreeSet<&AffinePoint> = basis.points.iter().filter(|h| !basis.comul(h, s, t).unwrap().is_zero()).collect();
            let face: BTreeSet<&AffinePoint> = basis.points.iter().filter(|h| plate.f_face_contains(&f, *h).unwrap()).collect();
            prop_assert_eq!(kept, face);
        }
    }

    #[test]
    fn products_of_sections_are_sections_of_products(seed in any::<u64>(), n1 in 0usize..3, n2 in 0usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g1 = GroundSet::range(n1);
        let g2 = GroundSet::new((0..n2).map(|i| Label::Name(format!("b{i}")))).unwrap();
        let z1 = random::submodular(&g1, &mut rng);
        let z2 = random::submodular(&g2, &mut rng);
        let (b1, b2) = (global_sections(&z1), global_sections(&z2));
        let prod = b1.mul(&b2).unwrap();
        let direct = global_sections(&z1.mul(&z2).unwrap());
        prop_assert_eq!(prod.len(), b1.len() * b2.len());
        prop_assert_eq!(&prod.points, &direct.points);
        for h in &prod.points {
            prop_assert!(is_section(&prod.z, h).unwrap());
        }
    }

    #[test]
    fn submodular_functions_have_distinct_sections(seed in any::<u64>(), n in 0usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = GroundSet::range(n);
        let z = random::submodular(&g, &mut rng);
        let basis = global_sections(&z);
        prop_assert!(!basis.is_empty());
        let sorted: BTreeSet<_> = basis.points.iter().collect();
        prop_assert_eq!(sorted.len(), basis.len());
    }
}
