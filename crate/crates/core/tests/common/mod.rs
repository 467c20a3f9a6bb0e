#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use blackbox_core::cospan::{node, NodeId};
use blackbox_core::dirichlet::DirichletForm;
use blackbox_core::field::RatFunc;
use blackbox_core::sample;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Labels `{prefix}0 .. {prefix}{k-1}`.
pub fn named(prefix: &str, k: usize) -> Vec<NodeId> {
    (0..k).map(|i| node(&format!("{prefix}{i}"))).collect()
}

/// Form on `nodes` with random positive constant or admittance-like
/// coefficients.
pub fn form_on(rng: &mut impl Rng, nodes: &[NodeId], density: f64) -> DirichletForm {
    let mut terms = Vec::new();
    for i in 0..nodes.len() {
        for j in i + 1..nodes.len() {
            if rng.gen_bool(density) {
                let c = if rng.gen_bool(0.5) {
                    RatFunc::from_rat(sample::positive_rat(rng))
                } else {
                    sample::component_impedance(rng).inv().unwrap()
                };
                terms.push((nodes[i].clone(), nodes[j].clone(), c));
            }
        }
    }
    DirichletForm::from_terms(nodes.iter().cloned().collect(), terms).unwrap()
}

/// Random small rational constant, possibly zero or negative.
pub fn constant(rng: &mut impl Rng) -> RatFunc {
    RatFunc::from_rat(blackbox_core::field::rat(
        rng.gen_range(-6..=6),
        rng.gen_range(1..=3),
    ))
}

pub fn assignment(rng: &mut impl Rng, nodes: &BTreeSet<NodeId>) -> BTreeMap<NodeId, RatFunc> {
    nodes.iter().map(|n| (n.clone(), constant(rng))).collect()
}
