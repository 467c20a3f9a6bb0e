//! The black box functor from circuits to Lagrangian relations, computed
//! from its definition, through the minimized power functional, and by a
//! direct Kirchhoff/Ohm solve; plus the three factor functors.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::circuit::{Circuit, CircuitError};
use crate::corel::Corelation;
use crate::cospan::{Cospan, NodeId};
use crate::dirichlet::{
    extended_power_functional, power_functional, pushforward_form, DirichletForm,
};
use crate::field::{eval_at, FieldError, Rat, RatFunc};
use crate::lagrel::{
    graph_of_differential, nullspace, pushforward_lagrangian, rref_with_pivots, symplectify,
    LagrelError, LinearRelation, Row, Space,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BlackboxError {
    #[error("behavior is not the graph of a two-terminal impedance: {0}")]
    NotAGraph(String),
    #[error("input and output are not connected (open circuit)")]
    OpenCircuit,
    #[error(transparent)]
    Lagrel(#[from] LagrelError),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// External behavior of a circuit `X → Y`: a relation between the spaces
/// generated by the input and output ports. Equality compares the relation
/// only; port labels are carried for display.
#[derive(Clone, Debug)]
pub struct Behavior {
    inputs: Vec<NodeId>,
    outputs: Vec<NodeId>,
    relation: LinearRelation,
}

impl PartialEq for Behavior {
    fn eq(&self, other: &Self) -> bool {
        self.relation == other.relation
    }
}

impl Eq for Behavior {}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct BehaviorJson {
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
    pub generators: Vec<Vec<String>>,
}

impl Behavior {
    pub fn new(inputs: Vec<NodeId>, outputs: Vec<NodeId>, relation: LinearRelation) -> Self {
        Behavior {
            inputs,
            outputs,
            relation,
        }
    }

    pub fn inputs(&self) -> &[NodeId] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[NodeId] {
        &self.outputs
    }

    pub fn relation(&self) -> &LinearRelation {
        &self.relation
    }

    pub fn rows(&self) -> &[Row] {
        self.relation.rows()
    }

    /// Lagrangian of dimension `|X| + |Y|`.
    pub fn is_well_formed(&self) -> bool {
        self.relation.is_lagrangian()
            && self.relation.dim() == self.inputs.len() + self.outputs.len()
    }

    pub fn compose(&self, next: &Behavior) -> Result<Behavior, BlackboxError> {
        Ok(Behavior {
            inputs: self.inputs.clone(),
            outputs: next.outputs.clone(),
            relation: self.relation.compose(&next.relation)?,
        })
    }

    pub fn tensor(&self, other: &Behavior) -> Behavior {
        Behavior {
            inputs: self.inputs.iter().chain(&other.inputs).cloned().collect(),
            outputs: self.outputs.iter().chain(&other.outputs).cloned().collect(),
            relation: self.relation.tensor(&other.relation),
        }
    }

    pub fn dagger(&self) -> Behavior {
        Behavior {
            inputs: self.outputs.clone(),
            outputs: self.inputs.clone(),
            relation: self.relation.dagger(),
        }
    }

    pub fn identity(ports: &[NodeId]) -> Behavior {
        Behavior {
            inputs: ports.to_vec(),
            outputs: ports.to_vec(),
            relation: LinearRelation::identity(&Space::generated(ports.len())),
        }
    }

    /// Column names in coordinate order.
    pub fn headers(&self) -> Vec<String> {
        let side = |tag: char, n: usize| {
            let phi = (0..n).map(move |k| format!("phi({tag}{k})"));
            let cur = (0..n).map(move |k| format!("i({tag}{k})"));
            phi.chain(cur)
        };
        side('x', self.inputs.len())
            .chain(side('y', self.outputs.len()))
            .collect()
    }

    pub fn to_json(&self) -> BehaviorJson {
        BehaviorJson {
            inputs: self.inputs.iter().map(|n| n.to_string()).collect(),
            outputs: self.outputs.iter().map(|n| n.to_string()).collect(),
            generators: self
                .rows()
                .iter()
                .map(|r| r.iter().map(|c| c.to_string()).collect())
                .collect(),
        }
    }

    /// Generator matrix with every entry evaluated at `s = sigma`.
    pub fn evaluate_at(&self, sigma: &Rat) -> Result<Vec<Vec<Rat>>, FieldError> {
        self.rows()
            .iter()
            .map(|r| r.iter().map(|c| eval_at(c, sigma)).collect())
            .collect()
    }

    /// `Z(s)` when this is the Ohm relation `i = (ψ₂ − ψ₁)/Z` of a
    /// one-input, one-output circuit.
    pub fn as_impedance(&self) -> Result<RatFunc, BlackboxError> {
        if self.inputs.len() != 1 || self.outputs.len() != 1 {
            return Err(BlackboxError::NotAGraph(format!(
                "{} inputs and {} outputs",
                self.inputs.len(),
                self.outputs.len()
            )));
        }
        // Reorder to (φx, φy, ix, iy) so that a graph over the potentials
        // reduces to rows (1, 0, a, c) and (0, 1, b, d).
        let reordered = self
            .rows()
            .iter()
            .map(|r| vec![r[0].clone(), r[2].clone(), r[1].clone(), r[3].clone()]);
        let (rows, pivots) = rref_with_pivots(reordered.collect(), 4);
        if pivots != [0, 1] {
            return Err(BlackboxError::NotAGraph(
                "currents do not depend on potentials".into(),
            ));
        }
        let (a, c) = (&rows[0][2], &rows[0][3]);
        let (b, d) = (&rows[1][2], &rows[1][3]);
        if *a != -b || *c != -b || d != b {
            return Err(BlackboxError::NotAGraph(
                "input and output currents differ".into(),
            ));
        }
        if b.is_zero() {
            return Err(BlackboxError::OpenCircuit);
        }
        Ok(b.inv()?)
    }

    /// Aligned matrix with a header row.
    pub fn pretty(&self) -> String {
        let mut table: Vec<Vec<String>> = vec![self.headers()];
        table.extend(
            self.rows()
                .iter()
                .map(|r| r.iter().map(|c| c.to_string()).collect()),
        );
        render_table(&table)
    }
}

/// Right-aligned columns separated by two spaces.
pub fn render_table(table: &[Vec<String>]) -> String {
    let cols = table.first().map_or(0, Vec::len);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            table
                .iter()
                .map(|r| r[c].chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    table
        .iter()
        .map(|r| {
            r.iter()
                .zip(&widths)
                .map(|(cell, w)| format!("{cell:>w$}"))
                .collect::<Vec<_>>()
                .join("  ")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

impl fmt::Display for Behavior {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}

/// `(S^t X ⊕ S Y) ∘ S[i,o]† ∘ L` for a subspace `L` of the space generated
/// by the apex of `cospan`.
fn relation_of(cospan: &Cospan, l: &LinearRelation) -> Behavior {
    let (i, o) = cospan.leg_indices();
    let legs: Vec<usize> = i.iter().chain(&o).copied().collect();
    let io = symplectify(&Corelation::from_function(&legs, cospan.nodes.len()));
    let (nx, ny) = (i.len(), o.len());
    let twist = LinearRelation::twist(nx).tensor(&LinearRelation::identity(&Space::generated(ny)));
    let name = l
        .compose(&io.dagger())
        .and_then(|n| n.compose(&twist))
        .expect("spaces generated by the apex and the ports line up");
    let relation = LinearRelation::from_name(&name, Space::generated(nx), Space::generated(ny))
        .expect("name lives in conj(SX) + SY");
    Behavior {
        inputs: cospan.inputs.clone(),
        outputs: cospan.outputs.clone(),
        relation,
    }
}

/// `■Γ = (S^t X ⊕ S Y) ∘ S[i,o]† ∘ Graph(dP)` with the full node set.
pub fn blackbox(g: &Circuit) -> Behavior {
    let p = extended_power_functional(g);
    relation_of(&g.cospan(), &graph_of_differential(&p))
}

/// Minimizes the power functional onto the terminals first, then applies
/// the corestricted boundary cospan.
pub fn blackbox_fast(g: &Circuit) -> Behavior {
    let boundary = g.boundary();
    let q = power_functional(&extended_power_functional(g), &boundary)
        .expect("terminals are nodes of the circuit");
    let cospan = Cospan {
        nodes: boundary,
        inputs: g.inputs().to_vec(),
        outputs: g.outputs().to_vec(),
    };
    relation_of(&cospan, &graph_of_differential(&q))
}

/// Solves Ohm's law on every edge and Kirchhoff's current law at every
/// node directly. Unknowns are node potentials, edge currents and one
/// current per port; the solution space is projected to
/// `(φ∘i, −j_X, φ∘o, j_Y)`.
pub fn oracle_behavior(g: &Circuit) -> Behavior {
    let nodes: Vec<&NodeId> = g.nodes().iter().collect();
    let index: BTreeMap<&NodeId, usize> = nodes.iter().enumerate().map(|(k, n)| (*n, k)).collect();
    let (n, e) = (nodes.len(), g.edges().len());
    let ports: Vec<&NodeId> = g.inputs().iter().chain(g.outputs()).collect();
    let unknowns = n + e + ports.len();
    let (phi, cur, port) = (|k: usize| k, |k: usize| n + k, |k: usize| n + e + k);

    let mut eqs: Vec<Row> = Vec::new();
    for (k, edge) in g.edges().iter().enumerate() {
        let mut row = vec![RatFunc::zero(); unknowns];
        row[cur(k)] = edge.impedance.clone();
        let (s, t) = (index[&edge.src], index[&edge.tgt]);
        row[phi(t)] = &row[phi(t)] - &RatFunc::one();
        row[phi(s)] = &row[phi(s)] + &RatFunc::one();
        eqs.push(row);
    }
    for m in 0..n {
        let mut row = vec![RatFunc::zero(); unknowns];
        for (k, edge) in g.edges().iter().enumerate() {
            if index[&edge.tgt] == m {
                row[cur(k)] = &row[cur(k)] + &RatFunc::one();
            }
            if index[&edge.src] == m {
                row[cur(k)] = &row[cur(k)] - &RatFunc::one();
            }
        }
        for (p, node) in ports.iter().enumerate() {
            if index[node] == m {
                row[port(p)] = -RatFunc::one();
            }
        }
        eqs.push(row);
    }

    let nx = g.inputs().len();
    let ny = g.outputs().len();
    let rows = nullspace(&eqs, unknowns)
        .into_iter()
        .map(|v| {
            let mut out = Vec::with_capacity(2 * (nx + ny));
            out.extend(ports[..nx].iter().map(|p| v[phi(index[p])].clone()));
            out.extend((0..nx).map(|k| -&v[port(k)]));
            out.extend(ports[nx..].iter().map(|p| v[phi(index[p])].clone()));
            out.extend((0..ny).map(|k| v[port(nx + k)].clone()));
            out
        })
        .collect();
    let relation = LinearRelation::from_rows(Space::generated(nx), Space::generated(ny), rows);
    Behavior {
        inputs: g.inputs().to_vec(),
        outputs: g.outputs().to_vec(),
        relation,
    }
}

/// A cospan whose apex carries a Dirichlet form on all of its nodes.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DirichletCospan {
    pub cospan: Cospan,
    pub form: DirichletForm,
}

impl DirichletCospan {
    /// Pushout of the cospans; the forms are pushed forward and summed.
    pub fn compose(&self, next: &DirichletCospan) -> Result<DirichletCospan, BlackboxError> {
        let p = self.cospan.compose(&next.cospan)?;
        Ok(DirichletCospan {
            form: glue_forms(&p, &self.form, &next.form),
            cospan: p.cospan,
        })
    }

    pub fn tensor(&self, other: &DirichletCospan) -> DirichletCospan {
        let p = self.cospan.tensor(&other.cospan);
        DirichletCospan {
            form: glue_forms(&p, &self.form, &other.form),
            cospan: p.cospan,
        }
    }

    pub fn dagger(&self) -> DirichletCospan {
        DirichletCospan {
            cospan: self.cospan.dagger(),
            form: self.form.clone(),
        }
    }
}

fn glue_forms(
    p: &crate::cospan::Pushout,
    left: &DirichletForm,
    right: &DirichletForm,
) -> DirichletForm {
    let l = pushforward_form(&p.left, &p.cospan.nodes, left).expect("pushout legs are total");
    let r = pushforward_form(&p.right, &p.cospan.nodes, right).expect("pushout legs are total");
    l.sum(&r)
}

/// A cospan whose apex carries a Lagrangian subspace of the space it
/// generates, held as a relation from zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LagrangianCospan {
    pub cospan: Cospan,
    pub subspace: LinearRelation,
}

impl LagrangianCospan {
    /// Pushout of the cospans; the decoration is `S[j₁, j₂](L₁ ⊕ L₂)`.
    pub fn compose(&self, next: &LagrangianCospan) -> Result<LagrangianCospan, BlackboxError> {
        let p = self.cospan.compose(&next.cospan)?;
        Ok(self.glue(p, next))
    }

    pub fn tensor(&self, other: &LagrangianCospan) -> LagrangianCospan {
        let p = self.cospan.tensor(&other.cospan);
        self.glue(p, other)
    }

    pub fn dagger(&self) -> LagrangianCospan {
        LagrangianCospan {
            cospan: self.cospan.dagger(),
            subspace: self.subspace.clone(),
        }
    }

    fn glue(&self, p: crate::cospan::Pushout, other: &LagrangianCospan) -> LagrangianCospan {
        let target = &p.cospan;
        let j: Vec<usize> = self
            .cospan
            .nodes
            .iter()
            .map(|n| target.index_of(&p.left[n]))
            .chain(
                other
                    .cospan
                    .nodes
                    .iter()
                    .map(|n| target.index_of(&p.right[n])),
            )
            .collect();
        let sum = self.subspace.tensor(&other.subspace);
        let subspace = pushforward_lagrangian(&j, target.nodes.len(), &sum);
        LagrangianCospan {
            cospan: p.cospan,
            subspace,
        }
    }
}

/// Replaces the graph decoration by the extended power functional.
pub fn to_dirichlet_cospan(g: &Circuit) -> DirichletCospan {
    DirichletCospan {
        cospan: g.cospan(),
        form: extended_power_functional(g),
    }
}

/// Replaces the form by the graph of its differential.
pub fn to_lagr_cospan(dc: &DirichletCospan) -> LagrangianCospan {
    LagrangianCospan {
        cospan: dc.cospan.clone(),
        subspace: graph_of_differential(&dc.form),
    }
}

/// `(S^t X ⊕ S Y) ∘ S[i,o]† ∘ L`.
pub fn cospan_relation(lc: &LagrangianCospan) -> Behavior {
    relation_of(&lc.cospan, &lc.subspace)
}
