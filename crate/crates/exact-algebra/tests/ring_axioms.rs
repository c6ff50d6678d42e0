use exact_algebra::ring::Ring;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn corpus() -> Vec<Ring> {
    vec![
        Ring::fp(5),
        Ring::fp(7),
        Ring::fq(5, 2),
        Ring::gr(5, 2, 1),
        Ring::gr(7, 3, 1),
        Ring::gr(5, 2, 2),
        Ring::rat(),
        Ring::quad(2).unwrap(),
        Ring::quad(5).unwrap(),
        Ring::cyclo(5).unwrap(),
        Ring::sq_zero(Ring::fp(5), 2).unwrap(),
        Ring::rat_func(Ring::fp(5)).unwrap(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_axioms_hold(seed in any::<u64>(), which in 0usize..12) {
        let rings = corpus();
        let ring = &rings[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = ring.sample(&mut rng);
        let b = ring.sample(&mut rng);
        let c = ring.sample(&mut rng);

        // additive group
        prop_assert!(ring.eq(&ring.add(&ring.add(&a, &b), &c), &ring.add(&a, &ring.add(&b, &c))));
        prop_assert!(ring.eq(&ring.add(&a, &b), &ring.add(&b, &a)));
        prop_assert!(ring.is_zero(&ring.add(&a, &ring.neg(&a))));
        prop_assert!(ring.eq(&ring.add(&a, &ring.zero()), &a));

        // multiplicative monoid, commutative
        prop_assert!(ring.eq(&ring.mul(&ring.mul(&a, &b), &c), &ring.mul(&a, &ring.mul(&b, &c))));
        prop_assert!(ring.eq(&ring.mul(&a, &b), &ring.mul(&b, &a)));
        prop_assert!(ring.eq(&ring.mul(&a, &ring.one()), &a));

        // distributivity
        prop_assert!(ring.eq(
            &ring.mul(&a, &ring.add(&b, &c)),
            &ring.add(&ring.mul(&a, &b), &ring.mul(&a, &c))
        ));

        // units invert exactly
        if ring.is_unit(&a) {
            let inv = ring.inv(&a).unwrap();
            prop_assert!(ring.eq(&ring.mul(&a, &inv), &ring.one()));
        }
    }

    #[test]
    fn canonical_strings_parse_back(seed in any::<u64>(), which in 0usize..12) {
        let rings = corpus();
        let ring = &rings[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = ring.sample(&mut rng);
        let text = ring.canon_string(&a);
        let parsed = ring.parse(&text).unwrap();
        prop_assert!(ring.eq(&parsed, &a), "round trip failed for {text:?}");
    }

    #[test]
    fn field_division_is_exact(seed in any::<u64>(), which in 0usize..12) {
        let rings = corpus();
        let ring = &rings[which];
        if !ring.is_field() {
            return Ok(());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = ring.sample(&mut rng);
        let b = ring.sample(&mut rng);
        if ring.is_zero(&b) {
            return Ok(());
        }
        let quot = ring.div(&a, &b).unwrap();
        prop_assert!(ring.eq(&ring.mul(&quot, &b), &a));
    }
}

#[test]
fn enumerate_matches_cardinality() {
    for ring in [
        Ring::fp(3),
        Ring::fq(2, 3),
        Ring::gr(3, 2, 1),
        Ring::sq_zero(Ring::fp(3), 1).unwrap(),
    ] {
        let card = ring.cardinality().unwrap();
        let all = ring.enumerate(10_000).unwrap();
        assert_eq!(all.len().to_string(), card.to_string());
        for (i, x) in all.iter().enumerate() {
            for y in &all[i + 1..] {
                assert!(!ring.eq(x, y));
            }
        }
    }
}

#[test]
fn galois_ring_units_and_residue() {
    let gr = Ring::gr(5, 2, 2); // 625 elements
    let all = gr.enumerate(1000).unwrap();
    let mut units = 0usize;
    for x in &all {
        if gr.is_unit(x) {
            units += 1;
            let inv = gr.inv(x).unwrap();
            assert!(gr.eq(&gr.mul(x, &inv), &gr.one()));
        } else {
            assert!(gr.inv(x).is_err());
            assert_eq!(gr.in_max_ideal(x), Some(true));
        }
    }
    // |GR(25, f=2)^x| = 625 - 625/25
    assert_eq!(units, 600);
}
