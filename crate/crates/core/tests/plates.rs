use permutokit::boolfun::BooleanFunction;
use permutokit::cones::{CoweightVector, LatticeBox};
use permutokit::label::GroundSet;
use permutokit::plates::{halfspace_contains, segment_masks, FlatSpec, Plate};
use permutokit::preposet::Preposet;
use permutokit::random;
use permutokit::setcomp::Composition;
use permutokit::vector::AffinePoint;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(l: Vec<Vec<i64>>) -> Composition {
    Composition::from_lumps(l).unwrap()
}

fn pt(v: Vec<i64>) -> AffinePoint {
    AffinePoint::new(GroundSet::range(v.len()), v).unwrap()
}

#[test]
fn worked_examples() {
    let g = GroundSet::range(2);
    let zero = BooleanFunction::zero(&g).unwrap();
    let whole = Plate::new(Composition::single(&g), zero.clone()).unwrap();
    let split = Plate::new(c(vec![vec![1], vec![2]]), zero.clone()).unwrap();
    assert!(whole.contains(&pt(vec![1, -1])).unwrap());
    assert!(!split.contains(&pt(vec![1, -1])).unwrap());
    assert!(split.contains(&pt(vec![-1, 1])).unwrap());
    assert_eq!(split.lattice_points(LatticeBox::new(2)), vec![pt(vec![-2, 2]), pt(vec![-1, 1]), pt(vec![0, 0])]);
    assert_eq!(whole.lattice_points(LatticeBox::new(1)).len(), 3);

    let z = BooleanFunction::new(g.clone(), vec![0, 1, 1, 2]).unwrap();
    let p = Plate::new(c(vec![vec![1], vec![2]]), z.clone()).unwrap();
    assert_eq!(p.max_affine_flat().heights, vec![1, 1]);
    assert_eq!(Plate::new(Composition::single(&g), z).unwrap().max_affine_flat().heights, vec![2]);

    let flat = FlatSpec::new(c(vec![vec![1], vec![2]]), vec![2, 3]).unwrap();
    let parts = [AffinePoint::new(GroundSet::new([1]).unwrap(), vec![2]).unwrap(), AffinePoint::new(GroundSet::new([2]).unwrap(), vec![3]).unwrap()];
    assert_eq!(flat.flat_mul(&parts).unwrap(), pt(vec![2, 3]));
    assert!(flat.flat_mul(&[parts[1].clone(), parts[0].clone()]).is_err());
}

#[test]
fn origin_lies_on_every_zero_plate_and_faces_behave() {
    for n in 0..=4 {
        let g = GroundSet::range(n);
        let zero = BooleanFunction::zero(&g).unwrap();
        let o = AffinePoint::<i64>::zero(&g);
        for h in Composition::enumerate(&g).unwrap() {
            let plate = Plate::new(h.clone(), zero.clone()).unwrap();
            assert!(plate.contains(&o).unwrap());
            for f in Composition::enumerate(&g).unwrap() {
                assert_eq!(plate.f_face_contains(&f, &o).unwrap(), f.leq(&h).unwrap());
                assert_eq!(plate.f_face_witness(&f).unwrap().is_some(), !f.leq(&h).unwrap());
            }
        }
    }
}

#[test]
fn face_witness_direction_is_unbounded_on_the_plate() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in 2..=4 {
        let g = GroundSet::range(n);
        for h in Composition::enumerate(&g).unwrap() {
            let z = random::submodular(&g, &mut rng);
            let plate = Plate::new(h.clone(), z.clone()).unwrap();
            let start = AffinePoint::new(g.clone(), plate.default_center()).unwrap();
            assert!(plate.contains(&start).unwrap());
            for f in Composition::enumerate(&g).unwrap() {
                if let Some((seg, dir)) = plate.f_face_witness(&f).unwrap() {
                    assert!(permutokit::cones::cone_contains(&Preposet::total_of(&h).unwrap().into(), &dir).unwrap());
                    let far = start.add(&dir.scale(50).into_affine()).unwrap();
                    assert!(plate.contains(&far).unwrap());
                    assert!(far.pairing(&seg).unwrap() > start.pairing(&seg).unwrap());
                }
            }
        }
    }
}

fn setup(seed: u64, n: usize) -> (ChaCha8Rng, GroundSet, Composition, BooleanFunction) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = GroundSet::range(n);
    let h = random::composition(&g, &mut rng);
    let z = random::boolean_function(&g, 3, &mut rng);
    (rng, g, h, z)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn plate_is_a_module_over_its_cone(seed in any::<u64>(), n in 1usize..5) {
        let (mut rng, g, h, z) = setup(seed, n);
        let plate = Plate::new(h.clone(), z).unwrap();
        let total = Preposet::total_of(&h).unwrap();
        let gens: Vec<CoweightVector> = total.pairs().into_iter().map(|(b, a)| CoweightVector::coroot(&a, &b, &g).unwrap()).collect();
        for x in plate.lattice_points(LatticeBox::new(2)) {
            if gens.is_empty() {
                break;
            }
            let e = &gens[rng.gen_range(0..gens.len())];
            prop_assert!(plate.contains(&x.add(e.as_affine()).unwrap()).unwrap());
        }
    }

    #[test]
    fn translating_z_translates_the_plate(seed in any::<u64>(), n in 0usize..5) {
        let (mut rng, g, h, z) = setup(seed, n);
        let d = random::integer_point(&g, 3, &mut rng);
        let moved = Plate::new(h.clone(), z.add(&BooleanFunction::of_point(&d).unwrap()).unwrap()).unwrap();
        let plate = Plate::new(h, z).unwrap();
        for _ in 0..20 {
            let x = random::integer_point(&g, 4, &mut rng);
            prop_assert_eq!(moved.contains(&x).unwrap(), plate.contains(&x.sub(&d).unwrap()).unwrap());
        }
    }

    #[test]
    fn trivial_segments_are_redundant(seed in any::<u64>(), n in 0usize..5) {
        let (mut rng, g, h, z) = setup(seed, n);
        let plate = Plate::new(h.clone(), z.clone()).unwrap();
        let masks = segment_masks(&h);
        prop_assert_eq!(masks.len(), h.len().saturating_sub(1));
        for _ in 0..30 {
            let mut v = random::integer_point(&g, 2, &mut rng).coords().to_vec();
            // land on the ambient hyperplane half of the time
            if n > 0 && rng.gen_bool(0.5) {
                v[0] += z.height() - v.iter().sum::<i64>();
            }
            let x = AffinePoint::new(g.clone(), v).unwrap();
            let with_all = plate.contains(&x).unwrap()
                && halfspace_contains(&GroundSet::empty(), &z, &x).unwrap()
                && halfspace_contains(&g, &z, &x).unwrap();
            prop_assert_eq!(with_all, plate.contains(&x).unwrap());
        }
    }

    #[test]
    fn maximal_flat_points_are_tight_on_every_segment(seed in any::<u64>(), n in 1usize..5) {
        let (_, g, h, z) = setup(seed, n);
        let plate = Plate::new(h.clone(), z.clone()).unwrap();
        let flat = plate.max_affine_flat();
        let x = AffinePoint::new(g.clone(), plate.default_center()).unwrap();
        prop_assert!(flat.contains(&x).unwrap());
        prop_assert!(plate.contains(&x).unwrap());
        for m in segment_masks(&h) {
            prop_assert_eq!(x.pairing_mask(m), z.value_mask(m));
        }
        prop_assert!(plate.f_face_contains(&h, &x).unwrap());
    }
}
