//! Circuits as cospans of finite sets decorated by impedance-labelled
//! graphs, with the composition, tensor and dagger of the category Circ.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::cospan::{Cospan, NodeId, Pushout};
use crate::field::RatFunc;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CircuitError {
    #[error("invalid node label {0:?}")]
    InvalidLabel(String),
    #[error("unknown node {0}")]
    UnknownNode(String),
    #[error("zero impedance on edge {0} - {1}")]
    ZeroImpedance(String, String),
    #[error("cannot compose: {outputs} outputs against {inputs} inputs")]
    PortCountMismatch { outputs: usize, inputs: usize },
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Edge {
    pub src: NodeId,
    pub tgt: NodeId,
    pub impedance: RatFunc,
}

impl Edge {
    pub fn new(src: NodeId, tgt: NodeId, impedance: RatFunc) -> Self {
        Edge {
            src,
            tgt,
            impedance,
        }
    }

    pub fn is_loop(&self) -> bool {
        self.src == self.tgt
    }
}

/// Node set plus edge list; parallel edges and self-loops are allowed.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LabelledGraph {
    nodes: BTreeSet<NodeId>,
    edges: Vec<Edge>,
}

impl LabelledGraph {
    pub fn new(nodes: BTreeSet<NodeId>, edges: Vec<Edge>) -> Result<Self, CircuitError> {
        for e in &edges {
            for n in [&e.src, &e.tgt] {
                if !nodes.contains(n) {
                    return Err(CircuitError::UnknownNode(n.to_string()));
                }
            }
            if e.impedance.is_zero() {
                return Err(CircuitError::ZeroImpedance(
                    e.src.to_string(),
                    e.tgt.to_string(),
                ));
            }
        }
        Ok(LabelledGraph { nodes, edges })
    }

    pub fn nodes(&self) -> &BTreeSet<NodeId> {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Relabels nodes along `f`, which must be total on the node set and land
    /// in `codomain`.
    pub fn pushforward(
        &self,
        f: &BTreeMap<NodeId, NodeId>,
        codomain: &BTreeSet<NodeId>,
    ) -> LabelledGraph {
        let edges = self
            .edges
            .iter()
            .map(|e| Edge::new(f[&e.src].clone(), f[&e.tgt].clone(), e.impedance.clone()))
            .collect();
        LabelledGraph {
            nodes: codomain.clone(),
            edges,
        }
    }
}

/// A circuit `X → Y`: a labelled graph with positional input and output
/// ports.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Circuit {
    graph: LabelledGraph,
    inputs: Vec<NodeId>,
    outputs: Vec<NodeId>,
}

impl Circuit {
    pub fn new(
        graph: LabelledGraph,
        inputs: Vec<NodeId>,
        outputs: Vec<NodeId>,
    ) -> Result<Self, CircuitError> {
        if let Some(n) = inputs
            .iter()
            .chain(&outputs)
            .find(|n| !graph.nodes.contains(n))
        {
            return Err(CircuitError::UnknownNode(n.to_string()));
        }
        Ok(Circuit {
            graph,
            inputs,
            outputs,
        })
    }

    /// A single two-terminal element between `a` (input) and `b` (output).
    pub fn element(a: &str, b: &str, impedance: RatFunc) -> Result<Self, CircuitError> {
        let (a, b) = (NodeId::new(a)?, NodeId::new(b)?);
        let nodes = [a.clone(), b.clone()].into_iter().collect();
        let graph = LabelledGraph::new(nodes, vec![Edge::new(a.clone(), b.clone(), impedance)])?;
        Circuit::new(graph, vec![a], vec![b])
    }

    pub fn graph(&self) -> &LabelledGraph {
        &self.graph
    }

    pub fn nodes(&self) -> &BTreeSet<NodeId> {
        &self.graph.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.graph.edges
    }

    pub fn inputs(&self) -> &[NodeId] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[NodeId] {
        &self.outputs
    }

    pub fn cospan(&self) -> Cospan {
        Cospan {
            nodes: self.graph.nodes.clone(),
            inputs: self.inputs.clone(),
            outputs: self.outputs.clone(),
        }
    }

    /// Terminals `∂N`.
    pub fn boundary(&self) -> BTreeSet<NodeId> {
        self.inputs.iter().chain(&self.outputs).cloned().collect()
    }

    /// Same circuit with edges sorted, for structural comparison that
    /// ignores edge order.
    pub fn canonical(&self) -> Circuit {
        let mut edges = self.graph.edges.clone();
        edges.sort_by(|a, b| (&a.src, &a.tgt, &a.impedance).cmp(&(&b.src, &b.tgt, &b.impedance)));
        Circuit {
            graph: LabelledGraph {
                nodes: self.graph.nodes.clone(),
                edges,
            },
            inputs: self.inputs.clone(),
            outputs: self.outputs.clone(),
        }
    }

    fn glue(p: Pushout, left: &LabelledGraph, right: &LabelledGraph) -> Circuit {
        let mut edges = left.pushforward(&p.left, &p.cospan.nodes).edges;
        edges.extend(right.pushforward(&p.right, &p.cospan.nodes).edges);
        Circuit {
            graph: LabelledGraph {
                nodes: p.cospan.nodes,
                edges,
            },
            inputs: p.cospan.inputs,
            outputs: p.cospan.outputs,
        }
    }
}

/// `g2 ∘ g1`: glue the outputs of `g1` to the inputs of `g2` by pushout and
/// carry both edge lists along.
pub fn compose_circuits(g1: &Circuit, g2: &Circuit) -> Result<Circuit, CircuitError> {
    let p = g1.cospan().compose(&g2.cospan())?;
    Ok(Circuit::glue(p, &g1.graph, &g2.graph))
}

pub fn tensor_circuits(g1: &Circuit, g2: &Circuit) -> Circuit {
    let p = g1.cospan().tensor(&g2.cospan());
    Circuit::glue(p, &g1.graph, &g2.graph)
}

pub fn dagger_circuit(g: &Circuit) -> Circuit {
    Circuit {
        graph: g.graph.clone(),
        inputs: g.outputs.clone(),
        outputs: g.inputs.clone(),
    }
}

/// Edgeless circuit whose nodes are the ports, each both input and output.
/// Labels must be distinct; a repeated label would join two wires.
pub fn identity_circuit(ports: &[NodeId]) -> Circuit {
    debug_assert!(
        ports.iter().collect::<BTreeSet<_>>().len() == ports.len(),
        "identity ports must be distinct"
    );
    Circuit {
        graph: LabelledGraph {
            nodes: ports.iter().cloned().collect(),
            edges: Vec::new(),
        },
        inputs: ports.to_vec(),
        outputs: ports.to_vec(),
    }
}

/// Replaces every bundle of parallel edges (in either direction) by one edge
/// whose admittance is the sum of the bundle's admittances, and deletes
/// self-loops. Surviving edges run from the smaller label to the larger.
pub fn merge_parallel_edges(g: &LabelledGraph) -> LabelledGraph {
    let mut admittance: BTreeMap<(NodeId, NodeId), RatFunc> = BTreeMap::new();
    for e in g.edges.iter().filter(|e| !e.is_loop()) {
        let key = if e.src < e.tgt {
            (e.src.clone(), e.tgt.clone())
        } else {
            (e.tgt.clone(), e.src.clone())
        };
        let y = e.impedance.inv().expect("edge impedances are nonzero");
        admittance
            .entry(key)
            .and_modify(|acc| *acc = &*acc + &y)
            .or_insert(y);
    }
    let edges = admittance
        .into_iter()
        .map(|((a, b), y)| {
            Edge::new(
                a,
                b,
                y.inv().expect("sum of positive admittances is nonzero"),
            )
        })
        .collect();
    LabelledGraph {
        nodes: g.nodes.clone(),
        edges,
    }
}
