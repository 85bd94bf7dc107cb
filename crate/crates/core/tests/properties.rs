use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use layerlat::chain::laws::{check_triple, random_element};
use layerlat::decompose::roundtrip_table;
use layerlat::densify::{densify, fill_gap, insert_above, insert_below};
use layerlat::embed::{check_embedding, EmbeddingSpec};
use layerlat::oracle::check_flea_axioms;
use layerlat::standardize::{cantor_map, monotonicity_violations, rational_grid, SupExtension};
use layerlat::{fixtures, Bunch, Chain, Error, LayerClass};

fn bunch_from(seed: u64) -> Bunch {
    fixtures::random_bunch(&mut ChaCha8Rng::seed_from_u64(seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn group_laws(seed in any::<u64>()) {
        let b = bunch_from(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 1);
        for u in 0..b.len() {
            let g = b.group(u);
            let (x, y, z) = (g.random_elem(&mut rng, 5), g.random_elem(&mut rng, 5), g.random_elem(&mut rng, 5));
            let xy = g.op(&x, &y).unwrap();
            prop_assert_eq!(&xy, &g.op(&y, &x).unwrap());
            prop_assert_eq!(g.op(&xy, &z).unwrap(), g.op(&x, &g.op(&y, &z).unwrap()).unwrap());
            prop_assert_eq!(g.op(&x, &g.inverse(&x).unwrap()).unwrap(), g.unit());
            prop_assert_eq!(g.op(&g.unit(), &x).unwrap(), x.clone());
            if g.compare(&x, &y).unwrap().is_le() {
                prop_assert!(g.compare(&g.op(&x, &z).unwrap(), &g.op(&y, &z).unwrap()).unwrap().is_le());
            }
            if g.is_discrete() && !g.is_trivial() {
                let down = g.cover_down(&x).unwrap().unwrap();
                prop_assert_eq!(g.cover_up(&down).unwrap().unwrap(), x);
            }
        }
    }

    #[test]
    fn transitions_compose(seed in any::<u64>()) {
        let b = bunch_from(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 2);
        for u in 0..b.len() {
            for v in u..b.len() {
                for w in v..b.len() {
                    let g = b.group(u).random_elem(&mut rng, 5);
                    let direct = b.transition_idx(u, w).unwrap().apply(&g).unwrap();
                    let via = b.transition_idx(v, w).unwrap().apply(&b.transition_idx(u, v).unwrap().apply(&g).unwrap()).unwrap();
                    prop_assert_eq!(direct, via);
                }
            }
        }
    }

    #[test]
    fn chain_laws(seed in any::<u64>()) {
        let c = Chain::new(bunch_from(seed)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 3);
        for _ in 0..50 {
            let (x, y, z) = (random_element(&c, &mut rng, 5), random_element(&c, &mut rng, 5), random_element(&c, &mut rng, 5));
            let bad = check_triple(&c, &x, &y, &z);
            prop_assert!(bad.is_empty(), "{:?} on {} {} {}", bad, c.format_element(&x), c.format_element(&y), c.format_element(&z));
        }
        if c.bunch_type().is_odd() {
            prop_assert_eq!(c.negate(&c.unit()), c.unit());
        }
    }

    #[test]
    fn text_round_trip(seed in any::<u64>()) {
        let b = bunch_from(seed);
        prop_assert_eq!(Bunch::parse(&b.serialize()).unwrap(), b.clone());
        let c = Chain::new(b).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 4);
        let x = random_element(&c, &mut rng, 8);
        prop_assert_eq!(c.parse_element(&c.format_element(&x)).unwrap(), x);
    }

    #[test]
    fn identity_embedding_passes(seed in any::<u64>()) {
        let b = bunch_from(seed);
        let c = Chain::new(b.clone()).unwrap();
        let spec = EmbeddingSpec::coordinatewise_identity(&b, &b, (0..b.len()).collect()).unwrap();
        let report = check_embedding(&c, &c, &spec, 300, seed);
        prop_assert!(report.is_ok(), "{}", report);
    }

    #[test]
    fn fill_gap_separates(seed in any::<u64>()) {
        let b = bunch_from(seed);
        let c = Chain::new(b).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 5);
        let (x, y) = (random_element(&c, &mut rng, 4), random_element(&c, &mut rng, 4));
        let (x, y) = if c.lt(&y, &x) { (y, x) } else { (x, y) };
        match fill_gap(&c, &x, &y) {
            Ok(fill) => {
                let ext = Chain::new(fill.receipt.bunch.clone()).unwrap();
                prop_assert!(ext.lt(&fill.x, &fill.witness) && ext.lt(&fill.witness, &fill.y));
                prop_assert_eq!(ext.bunch_type(), c.bunch_type());
                prop_assert_eq!(fill.receipt.bunch.class(fill.receipt.new_layer), LayerClass::I);
                prop_assert!(check_embedding(&c, &ext, &fill.receipt.embedding, 200, seed).is_ok());
            }
            Err(Error::EvenTypeUnsupported) => prop_assert!(!c.bunch_type().is_odd()),
            Err(Error::NotLess { .. }) => prop_assert_eq!(&x, &y),
            Err(Error::SubgroupObstruction(_)) => {}
            Err(e) => prop_assert!(false, "{}", e),
        }
    }

    #[test]
    fn copies_are_covers(seed in any::<u64>()) {
        let b = bunch_from(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 6);
        let v = rng.gen_range(0..b.len());
        let y = b.group(v).random_elem(&mut rng, 4);
        for r in [insert_above(&b, v), insert_below(&b, v)].into_iter().flatten() {
            let ext = Chain::new(r.bunch.clone()).unwrap();
            let base = r.embed(&layerlat::ChainElement::plain(v, y.clone()));
            let w = r.witness(&y);
            let (lo, hi) = if r.above { (base, w) } else { (w, base) };
            prop_assert!(ext.lt(&lo, &hi));
            for _ in 0..200 {
                let z = random_element(&ext, &mut rng, 4);
                prop_assert!(!(ext.lt(&lo, &z) && ext.lt(&z, &hi)), "{} between", ext.format_element(&z));
            }
        }
    }

    #[test]
    fn finite_chains_satisfy_the_oracle(size in 1usize..=7) {
        for b in fixtures::finite_bunches(size) {
            let (t, _) = Chain::new(b).unwrap().cayley_table().unwrap();
            prop_assert!(check_flea_axioms(&t).is_ok());
            let rt = roundtrip_table(&t).unwrap();
            prop_assert!(rt.decomposition.bunch.validate().is_ok());
        }
    }

    #[test]
    fn placements_preserve_order(prefix in 2usize..40, rounds in 0usize..3, zb in any::<bool>()) {
        let b = if zb { fixtures::zb() } else { fixtures::s3() };
        let d = densify(&Chain::new(b).unwrap(), 6, rounds).unwrap();
        let c = Chain::new(d.bunch).unwrap();
        let p = cantor_map(&c, prefix).unwrap();
        prop_assert!(p.order_violations(&c).is_empty());
        prop_assert!(p.negation_violations(&c).is_empty());
        let grid = rational_grid(6);
        let (lo, hi) = (SupExtension::new(&c, &p, 0), SupExtension::new(&c, &p, prefix));
        prop_assert_eq!(monotonicity_violations(&lo, &hi, &grid), 0);
    }
}
