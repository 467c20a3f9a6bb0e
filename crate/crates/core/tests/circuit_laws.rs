mod common;

use blackbox_core::blackbox::{
    blackbox, cospan_relation, to_dirichlet_cospan, to_lagr_cospan, Behavior,
};
use blackbox_core::circuit::{
    compose_circuits, dagger_circuit, merge_parallel_edges, tensor_circuits, Circuit,
};
use blackbox_core::sample::{self, CircuitShape};
use proptest::prelude::*;
use rand::Rng;

use common::rng;

const SHAPE: CircuitShape = CircuitShape {
    max_nodes: 4,
    max_edges: 5,
    max_inputs: 2,
    max_outputs: 2,
};

fn chain(r: &mut impl Rng, n: usize) -> Vec<Circuit> {
    let mut sizes = vec![r.gen_range(0..=2)];
    for _ in 0..n {
        sizes.push(r.gen_range(0..=2));
    }
    sizes
        .windows(2)
        .map(|w| sample::circuit_with_ports(r, SHAPE, w[0], w[1]))
        .collect()
}

fn factored(g: &Circuit) -> Behavior {
    cospan_relation(&to_lagr_cospan(&to_dirichlet_cospan(g)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn composition_is_associative_on_behaviors(seed: u64) {
        let mut r = rng(seed);
        let c = chain(&mut r, 3);
        let left = compose_circuits(&compose_circuits(&c[0], &c[1]).unwrap(), &c[2]).unwrap();
        let right = compose_circuits(&c[0], &compose_circuits(&c[1], &c[2]).unwrap()).unwrap();
        let (bl, br) = (blackbox(&left), blackbox(&right));
        prop_assert_eq!(&bl, &br);
        let parts = blackbox(&c[0])
            .compose(&blackbox(&c[1]))
            .unwrap()
            .compose(&blackbox(&c[2]))
            .unwrap();
        prop_assert_eq!(bl, parts);
    }

    #[test]
    fn parallel_edges_merge(seed: u64) {
        let mut r = rng(seed);
        let g = sample::circuit(&mut r, SHAPE);
        let merged = Circuit::new(
            merge_parallel_edges(g.graph()),
            g.inputs().to_vec(),
            g.outputs().to_vec(),
        )
        .unwrap();
        prop_assert!(merged.edges().iter().all(|e| !e.is_loop()));
        prop_assert_eq!(blackbox(&merged), blackbox(&g));
    }

    #[test]
    fn dagger_is_an_involution(seed: u64) {
        let mut r = rng(seed);
        let g = sample::circuit(&mut r, SHAPE);
        prop_assert_eq!(dagger_circuit(&dagger_circuit(&g)), g.clone());
        prop_assert_eq!(blackbox(&dagger_circuit(&g)), blackbox(&g).dagger());
    }

    #[test]
    fn factor_functors_agree_and_compose(seed: u64) {
        let mut r = rng(seed);
        let c = chain(&mut r, 2);
        let whole = compose_circuits(&c[0], &c[1]).unwrap();
        let (d0, d1) = (to_dirichlet_cospan(&c[0]), to_dirichlet_cospan(&c[1]));
        prop_assert_eq!(to_dirichlet_cospan(&whole), d0.compose(&d1).unwrap());
        let (l0, l1) = (to_lagr_cospan(&d0), to_lagr_cospan(&d1));
        let glued = l0.compose(&l1).unwrap();
        prop_assert_eq!(cospan_relation(&glued), blackbox(&whole));
        prop_assert_eq!(
            cospan_relation(&glued),
            cospan_relation(&l0).compose(&cospan_relation(&l1)).unwrap()
        );
        prop_assert_eq!(factored(&whole), blackbox(&whole));
        prop_assert_eq!(cospan_relation(&l0.dagger()), cospan_relation(&l0).dagger());
        prop_assert_eq!(d0.dagger(), to_dirichlet_cospan(&dagger_circuit(&c[0])));
        prop_assert_eq!(
            cospan_relation(&l0.tensor(&l1)),
            cospan_relation(&l0).tensor(&cospan_relation(&l1))
        );
        let t = tensor_circuits(&c[0], &c[1]);
        prop_assert_eq!(to_dirichlet_cospan(&t), d0.tensor(&d1));
        prop_assert_eq!(blackbox(&t), blackbox(&c[0]).tensor(&blackbox(&c[1])));
    }
}
