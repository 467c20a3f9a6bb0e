mod common;

use blackbox_core::corel::Corelation;
use blackbox_core::cospan::Cospan;
use blackbox_core::sample;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

fn corel(seed: u64, left: usize, right: usize) -> Corelation {
    sample::corelation(&mut common::rng(seed), left, right)
}

fn cospan(rng: &mut impl Rng, x: usize, y: usize) -> Cospan {
    let nodes = sample::labels(rng.gen_range(1..=5));
    let pick =
        |rng: &mut _, k| -> Vec<_> { (0..k).map(|_| nodes.choose(rng).unwrap().clone()).collect() };
    let inputs = pick(rng, x);
    let outputs = pick(rng, y);
    Cospan::new(nodes.iter().cloned().collect(), inputs, outputs).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn associative(seed: u64, x in 0usize..4, y in 0usize..4, z in 0usize..4, w in 0usize..4) {
        let (a, b, c) = (corel(seed, x, y), corel(seed ^ 1, y, z), corel(seed ^ 2, z, w));
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn units(seed: u64, x in 0usize..5, y in 0usize..5) {
        let a = corel(seed, x, y);
        prop_assert_eq!(Corelation::identity(x).compose(&a).unwrap(), a.clone());
        prop_assert_eq!(a.compose(&Corelation::identity(y)).unwrap(), a);
    }

    #[test]
    fn dagger_is_contravariant_involution(seed: u64, x in 0usize..4, y in 0usize..4, z in 0usize..4) {
        let (a, b) = (corel(seed, x, y), corel(seed ^ 1, y, z));
        prop_assert_eq!(a.dagger().dagger(), a.clone());
        prop_assert_eq!(
            a.compose(&b).unwrap().dagger(),
            b.dagger().compose(&a.dagger()).unwrap()
        );
    }

    #[test]
    fn interchange(seed: u64, sizes in prop::array::uniform6(0usize..3)) {
        let [x, y, z, u, v, w] = sizes;
        let (a, b) = (corel(seed, x, y), corel(seed ^ 1, y, z));
        let (c, d) = (corel(seed ^ 2, u, v), corel(seed ^ 3, v, w));
        let left = a.tensor(&c).compose(&b.tensor(&d)).unwrap();
        let right = a.compose(&b).unwrap().tensor(&c.compose(&d).unwrap());
        prop_assert_eq!(left, right);
    }

    #[test]
    fn text_round_trip(seed: u64, x in 0usize..5, y in 0usize..5) {
        let a = corel(seed, x, y);
        prop_assert_eq!(a.to_string().parse::<Corelation>().unwrap(), a);
    }

    #[test]
    fn quotient_of_cospans_is_functorial(seed: u64, x in 0usize..4, y in 0usize..4, z in 0usize..4) {
        let mut r = common::rng(seed);
        let (f, g) = (cospan(&mut r, x, y), cospan(&mut r, y, z));
        let glued = f.compose(&g).unwrap().cospan.corelation();
        prop_assert_eq!(glued, f.corelation().compose(&g.corelation()).unwrap());
        let side = f.tensor(&g).cospan.corelation();
        prop_assert_eq!(side, f.corelation().tensor(&g.corelation()));
        prop_assert_eq!(f.dagger().corelation(), f.corelation().dagger());
    }
}
