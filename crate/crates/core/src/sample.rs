//! Random instances for property tests and the acceptance suite.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::circuit::{Circuit, Edge, LabelledGraph};
use crate::corel::Corelation;
use crate::cospan::{node, NodeId};
use crate::dirichlet::DirichletForm;
use crate::field::{impedance, rat, ComponentKind, Rat, RatFunc};

/// Positive rational with small numerator and denominator.
pub fn positive_rat(rng: &mut impl Rng) -> Rat {
    rat(rng.gen_range(1..=9), rng.gen_range(1..=4))
}

/// Impedance of a random resistor, inductor or capacitor.
pub fn component_impedance(rng: &mut impl Rng) -> RatFunc {
    let kind = *[
        ComponentKind::Resistor,
        ComponentKind::Inductor,
        ComponentKind::Capacitor,
    ]
    .choose(rng)
    .expect("nonempty");
    impedance(kind, &positive_rat(rng)).expect("positive value")
}

/// Labels `n0 .. n{k-1}`.
pub fn labels(k: usize) -> Vec<NodeId> {
    (0..k).map(|i| node(&format!("n{i}"))).collect()
}

/// Shape bounds for [`circuit`].
#[derive(Clone, Copy, Debug)]
pub struct CircuitShape {
    pub max_nodes: usize,
    pub max_edges: usize,
    pub max_inputs: usize,
    pub max_outputs: usize,
}

impl CircuitShape {
    pub fn new(max_nodes: usize, max_edges: usize) -> Self {
        CircuitShape {
            max_nodes,
            max_edges,
            max_inputs: 3,
            max_outputs: 3,
        }
    }
}

fn ports(rng: &mut impl Rng, nodes: &[NodeId], count: usize) -> Vec<NodeId> {
    (0..count)
        .map(|_| nodes.choose(rng).expect("nonempty").clone())
        .collect()
}

/// Random circuit with mixed R/L/C edges; ports may repeat or miss nodes
/// and the graph may contain self-loops, parallel edges and floating parts.
pub fn circuit(rng: &mut impl Rng, shape: CircuitShape) -> Circuit {
    let n = rng.gen_range(1..=shape.max_nodes.max(1));
    let nodes = labels(n);
    let m = rng.gen_range(0..=shape.max_edges);
    let edges = (0..m)
        .map(|_| {
            let a = nodes.choose(rng).expect("nonempty").clone();
            let b = nodes.choose(rng).expect("nonempty").clone();
            Edge::new(a, b, component_impedance(rng))
        })
        .collect();
    let x = rng.gen_range(0..=shape.max_inputs);
    let y = rng.gen_range(0..=shape.max_outputs);
    let graph = LabelledGraph::new(nodes.iter().cloned().collect(), edges)
        .expect("edges use declared nodes");
    let inputs = ports(rng, &nodes, x);
    let outputs = ports(rng, &nodes, y);
    Circuit::new(graph, inputs, outputs).expect("ports use declared nodes")
}

/// Random circuit with exactly the given port counts.
pub fn circuit_with_ports(rng: &mut impl Rng, shape: CircuitShape, x: usize, y: usize) -> Circuit {
    let shape = CircuitShape {
        max_inputs: 0,
        max_outputs: 0,
        ..shape
    };
    let g = circuit(rng, shape);
    let nodes: Vec<NodeId> = g.nodes().iter().cloned().collect();
    let inputs = ports(rng, &nodes, x);
    let outputs = ports(rng, &nodes, y);
    Circuit::new(g.graph().clone(), inputs, outputs).expect("ports use declared nodes")
}

/// Two circuits `X → Y → Z` with matching middle port count.
pub fn composable_pair(rng: &mut impl Rng, shape: CircuitShape) -> (Circuit, Circuit) {
    let x = rng.gen_range(0..=shape.max_inputs);
    let y = rng.gen_range(0..=shape.max_outputs);
    let z = rng.gen_range(0..=shape.max_outputs);
    (
        circuit_with_ports(rng, shape, x, y),
        circuit_with_ports(rng, shape, y, z),
    )
}

/// Random Dirichlet form on `labels(n)` with positive constant
/// coefficients; each pair is present with probability `density`.
pub fn constant_form(rng: &mut impl Rng, n: usize, density: f64) -> DirichletForm {
    let nodes = labels(n);
    let mut terms = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                terms.push((
                    nodes[i].clone(),
                    nodes[j].clone(),
                    RatFunc::from_rat(positive_rat(rng)),
                ));
            }
        }
    }
    DirichletForm::from_terms(nodes.into_iter().collect(), terms).expect("terms use the support")
}

/// Like [`constant_form`] but with admittance-style coefficients
/// `1/(2Z)` for random component impedances `Z`.
pub fn symbolic_form(rng: &mut impl Rng, n: usize, density: f64) -> DirichletForm {
    let nodes = labels(n);
    let half = RatFunc::from_rat(rat(1, 2));
    let mut terms = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                let c = &half * &component_impedance(rng).inv().expect("nonzero");
                terms.push((nodes[i].clone(), nodes[j].clone(), c));
            }
        }
    }
    DirichletForm::from_terms(nodes.into_iter().collect(), terms).expect("terms use the support")
}

/// Uniform-ish random partition of `left + right` elements.
pub fn corelation(rng: &mut impl Rng, left: usize, right: usize) -> Corelation {
    let n = left + right;
    let classes = rng.gen_range(1..=n.max(1));
    let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); classes];
    for k in 0..n {
        blocks[rng.gen_range(0..classes)].push(k);
    }
    blocks.retain(|b| !b.is_empty());
    Corelation::from_blocks(left, right, blocks).expect("a partition")
}

/// Random function `domain → codomain` (codomain must be nonempty when
/// domain is).
pub fn function(rng: &mut impl Rng, domain: usize, codomain: usize) -> Vec<usize> {
    (0..domain).map(|_| rng.gen_range(0..codomain)).collect()
}

/// Node set of `labels(n)`.
pub fn label_set(n: usize) -> BTreeSet<NodeId> {
    labels(n).into_iter().collect()
}
