//! Cospans of finite sets `X → N ← Y` with node labels, and the pushout
//! composition shared by every decorated-cospan category in the crate.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::circuit::CircuitError;
use crate::corel::Corelation;
use crate::union_find::UnionFind;

/// A node label: nonempty, no whitespace. Labels are ordered
/// lexicographically and that order is the canonical node order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct NodeId(String);

impl NodeId {
    pub fn new(label: impl Into<String>) -> Result<Self, CircuitError> {
        let label = label.into();
        if label.is_empty() || label.chars().any(char::is_whitespace) {
            return Err(CircuitError::InvalidLabel(label));
        }
        Ok(NodeId(label))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Shorthand for tests and literals; panics on an invalid label.
pub fn node(label: &str) -> NodeId {
    NodeId::new(label).expect("valid node label")
}

/// `X → N ← Y` with positional ports: `inputs[k]` is the image of the
/// `k`-th input, and ports may repeat or miss nodes.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cospan {
    pub nodes: BTreeSet<NodeId>,
    pub inputs: Vec<NodeId>,
    pub outputs: Vec<NodeId>,
}

/// Result of gluing two apices: the composite cospan plus the maps from
/// each original apex into the new one.
#[derive(Clone, Debug)]
pub struct Pushout {
    pub cospan: Cospan,
    pub left: BTreeMap<NodeId, NodeId>,
    pub right: BTreeMap<NodeId, NodeId>,
}

impl Cospan {
    pub fn new(
        nodes: BTreeSet<NodeId>,
        inputs: Vec<NodeId>,
        outputs: Vec<NodeId>,
    ) -> Result<Self, CircuitError> {
        if let Some(n) = inputs.iter().chain(&outputs).find(|n| !nodes.contains(n)) {
            return Err(CircuitError::UnknownNode(n.to_string()));
        }
        Ok(Cospan {
            nodes,
            inputs,
            outputs,
        })
    }

    /// Identity cospan on the given ports: `N = X` and both legs identities.
    pub fn identity(ports: &[NodeId]) -> Self {
        Cospan {
            nodes: ports.iter().cloned().collect(),
            inputs: ports.to_vec(),
            outputs: ports.to_vec(),
        }
    }

    pub fn dagger(&self) -> Self {
        Cospan {
            nodes: self.nodes.clone(),
            inputs: self.outputs.clone(),
            outputs: self.inputs.clone(),
        }
    }

    /// Terminals `∂N = i(X) ∪ o(Y)`, sorted.
    pub fn boundary(&self) -> BTreeSet<NodeId> {
        self.inputs.iter().chain(&self.outputs).cloned().collect()
    }

    /// Position of `n` in the canonical node order.
    pub fn index_of(&self, n: &NodeId) -> usize {
        self.nodes.range(..n).count()
    }

    /// `[i, o] : X + Y → N` as positions in the canonical node order.
    pub fn leg_indices(&self) -> (Vec<usize>, Vec<usize>) {
        let index: BTreeMap<&NodeId, usize> =
            self.nodes.iter().enumerate().map(|(k, n)| (n, k)).collect();
        (
            self.inputs.iter().map(|n| index[n]).collect(),
            self.outputs.iter().map(|n| index[n]).collect(),
        )
    }

    /// The corelation `X → Y` this cospan defines.
    pub fn corelation(&self) -> Corelation {
        let (i, o) = self.leg_indices();
        Corelation::from_cospan(&i, &o)
    }

    /// Pushout composition `self ; other` (first `self : X → Y`, then
    /// `other : Y → Z`). Each merge class is named by its least label, after
    /// right-hand labels that collide with left-hand ones are primed.
    pub fn compose(&self, other: &Cospan) -> Result<Pushout, CircuitError> {
        if self.outputs.len() != other.inputs.len() {
            return Err(CircuitError::PortCountMismatch {
                outputs: self.outputs.len(),
                inputs: other.inputs.len(),
            });
        }
        let rename = disambiguate(&self.nodes, &other.nodes);
        let left: Vec<&NodeId> = self.nodes.iter().collect();
        let right: Vec<&NodeId> = other.nodes.iter().map(|n| &rename[n]).collect();
        let n1 = left.len();
        let mut uf = UnionFind::new(n1 + right.len());
        for (o, i) in self.outputs.iter().zip(&other.inputs) {
            uf.union(self.index_of(o), n1 + other.index_of(i));
        }
        let mut name_of = vec![None; n1 + right.len()];
        for class in uf.classes() {
            let label = class
                .iter()
                .map(|&k| if k < n1 { left[k] } else { right[k - n1] })
                .min()
                .expect("classes are nonempty")
                .clone();
            for k in class {
                name_of[k] = Some(label.clone());
            }
        }
        let name = |k: usize| name_of[k].clone().expect("every element is classified");
        let left_map: BTreeMap<NodeId, NodeId> = self
            .nodes
            .iter()
            .enumerate()
            .map(|(k, n)| (n.clone(), name(k)))
            .collect();
        let right_map: BTreeMap<NodeId, NodeId> = other
            .nodes
            .iter()
            .enumerate()
            .map(|(k, n)| (n.clone(), name(n1 + k)))
            .collect();
        let cospan = Cospan {
            nodes: name_of.iter().flatten().cloned().collect(),
            inputs: self.inputs.iter().map(|n| left_map[n].clone()).collect(),
            outputs: other.outputs.iter().map(|n| right_map[n].clone()).collect(),
        };
        Ok(Pushout {
            cospan,
            left: left_map,
            right: right_map,
        })
    }

    /// Disjoint union; right-hand labels are primed on collision.
    pub fn tensor(&self, other: &Cospan) -> Pushout {
        let rename = disambiguate(&self.nodes, &other.nodes);
        let left: BTreeMap<NodeId, NodeId> =
            self.nodes.iter().map(|n| (n.clone(), n.clone())).collect();
        let cospan = Cospan {
            nodes: self.nodes.iter().chain(rename.values()).cloned().collect(),
            inputs: self
                .inputs
                .iter()
                .chain(other.inputs.iter().map(|n| &rename[n]))
                .cloned()
                .collect(),
            outputs: self
                .outputs
                .iter()
                .chain(other.outputs.iter().map(|n| &rename[n]))
                .cloned()
                .collect(),
        };
        Pushout {
            cospan,
            left,
            right: rename,
        }
    }
}

/// Renames every label of `right` that collides with `left` by appending
/// `'` until it is fresh. Non-colliding labels map to themselves.
fn disambiguate(left: &BTreeSet<NodeId>, right: &BTreeSet<NodeId>) -> BTreeMap<NodeId, NodeId> {
    let mut taken: BTreeSet<String> = left.iter().chain(right).map(|n| n.0.clone()).collect();
    right
        .iter()
        .map(|n| {
            if !left.contains(n) {
                return (n.clone(), n.clone());
            }
            let mut label = format!("{}'", n.0);
            while taken.contains(&label) {
                label.push('\'');
            }
            taken.insert(label.clone());
            (n.clone(), NodeId(label))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(labels: &[&str]) -> BTreeSet<NodeId> {
        labels.iter().map(|l| node(l)).collect()
    }

    fn ids(labels: &[&str]) -> Vec<NodeId> {
        labels.iter().map(|l| node(l)).collect()
    }

    #[test]
    fn rejects_bad_labels() {
        assert!(NodeId::new("").is_err());
        assert!(NodeId::new("a b").is_err());
        assert!(NodeId::new("a'").is_ok());
    }

    #[test]
    fn pushout_names_classes_by_least_label() {
        let f = Cospan::new(set(&["A", "B"]), ids(&["A"]), ids(&["B"])).unwrap();
        let g = Cospan::new(set(&["B", "C"]), ids(&["B"]), ids(&["C"])).unwrap();
        let p = f.compose(&g).unwrap();
        // g's B collides and becomes B', then B ~ B' is named B.
        assert_eq!(p.cospan.nodes, set(&["A", "B", "C"]));
        assert_eq!(p.cospan.inputs, ids(&["A"]));
        assert_eq!(p.cospan.outputs, ids(&["C"]));
        assert_eq!(p.right[&node("B")], node("B"));
    }

    #[test]
    fn fork_composition_merges_duplicated_terminal() {
        // X = 2 ports into one node, Y = 2 ports out of two distinct nodes that
        // the next fork glues back together.
        let split = Cospan::new(set(&["m", "p", "q"]), ids(&["m", "m"]), ids(&["p", "q"])).unwrap();
        let join = Cospan::new(set(&["n"]), ids(&["n", "n"]), ids(&["n"])).unwrap();
        let p = split.compose(&join).unwrap();
        assert_eq!(p.cospan.nodes, set(&["m", "n"]));
        assert_eq!(p.left[&node("p")], p.left[&node("q")]);
        assert_eq!(p.cospan.outputs, ids(&["n"]));
    }

    #[test]
    fn port_count_mismatch() {
        let f = Cospan::identity(&ids(&["a", "b"]));
        let g = Cospan::identity(&ids(&["a"]));
        assert!(matches!(
            f.compose(&g),
            Err(CircuitError::PortCountMismatch { .. })
        ));
    }

    #[test]
    fn tensor_primes_collisions() {
        let f = Cospan::identity(&ids(&["a"]));
        let p = f.tensor(&f);
        assert_eq!(p.cospan.nodes, set(&["a", "a'"]));
        assert_eq!(p.cospan.inputs, ids(&["a", "a'"]));
    }
}
