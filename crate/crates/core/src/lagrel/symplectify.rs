//! The functors `Φ`, `I` and `S = Φ + I` from corelations to linear
//! relations, the graph of a differential, and pushforward of Lagrangian
//! subspaces along functions.

use std::collections::BTreeMap;

use crate::corel::Corelation;
use crate::dirichlet::{gradient, DirichletForm};
use crate::field::RatFunc;

use super::matrix::{nullspace, Row};
use super::relation::LinearRelation;
use super::space::Space;

/// Column layout of a relation between the spaces generated by `left` and
/// `right` ports, indexed by corelation port number.
struct Columns {
    left: usize,
    right: usize,
}

impl Columns {
    fn of(a: &Corelation) -> Self {
        Columns {
            left: a.left(),
            right: a.right(),
        }
    }

    fn width(&self) -> usize {
        2 * (self.left + self.right)
    }

    fn phi(&self, k: usize) -> usize {
        if k < self.left {
            k
        } else {
            2 * self.left + (k - self.left)
        }
    }

    fn iota(&self, k: usize) -> usize {
        if k < self.left {
            self.left + k
        } else {
            2 * self.left + self.right + (k - self.left)
        }
    }
}

fn relation(a: &Corelation, rows: Vec<Row>) -> LinearRelation {
    LinearRelation::from_rows(
        Space::generated(a.left()),
        Space::generated(a.right()),
        rows,
    )
}

fn potential_rows(a: &Corelation) -> Vec<Row> {
    let cols = Columns::of(a);
    a.blocks()
        .iter()
        .map(|b| {
            let mut row = vec![RatFunc::zero(); cols.width()];
            for &k in b {
                row[cols.phi(k)] = RatFunc::one();
            }
            row
        })
        .collect()
}

fn current_rows(a: &Corelation) -> Vec<Row> {
    let cols = Columns::of(a);
    let ports = a.left() + a.right();
    let constraints: Vec<Row> = a
        .blocks()
        .iter()
        .map(|b| {
            let mut row = vec![RatFunc::zero(); ports];
            for &k in b {
                row[k] = if k < a.left() {
                    RatFunc::one()
                } else {
                    -RatFunc::one()
                };
            }
            row
        })
        .collect();
    nullspace(&constraints, ports)
        .into_iter()
        .map(|lambda| {
            let mut row = vec![RatFunc::zero(); cols.width()];
            for (k, v) in lambda.into_iter().enumerate() {
                row[cols.iota(k)] = v;
            }
            row
        })
        .collect()
}

/// `Φ(α)`: potentials constant on each block, zero currents.
pub fn symplectify_potentials(a: &Corelation) -> LinearRelation {
    relation(a, potential_rows(a))
}

/// `I(α)`: zero potentials, currents with `Σ_{A∩X} λ = Σ_{A∩Y} λ` on every
/// block `A`.
pub fn symplectify_currents(a: &Corelation) -> LinearRelation {
    relation(a, current_rows(a))
}

/// `S(α) = Φ(α) ⊕ I(α)`.
pub fn symplectify(a: &Corelation) -> LinearRelation {
    let mut rows = potential_rows(a);
    rows.extend(current_rows(a));
    relation(a, rows)
}

/// `{(φ, dQ_φ)}` as a relation from zero to the space generated by the
/// support of `q`, nodes in canonical order.
pub fn graph_of_differential(q: &DirichletForm) -> LinearRelation {
    let nodes: Vec<_> = q.support().iter().cloned().collect();
    let n = nodes.len();
    let rows = nodes
        .iter()
        .enumerate()
        .map(|(k, _)| {
            let psi: BTreeMap<_, _> = nodes
                .iter()
                .enumerate()
                .map(|(j, m)| {
                    (
                        m.clone(),
                        if j == k {
                            RatFunc::one()
                        } else {
                            RatFunc::zero()
                        },
                    )
                })
                .collect();
            let d = gradient(q, &psi).expect("indicator is total on the support");
            let mut row = vec![RatFunc::zero(); 2 * n];
            row[k] = RatFunc::one();
            for (j, m) in nodes.iter().enumerate() {
                row[n + j] = d.get(m).cloned().unwrap_or_default();
            }
            row
        })
        .collect();
    LinearRelation::from_rows(Space::zero(), Space::generated(n), rows)
}

/// Image of `l : 0 → S(domain)` under `S(f)` for `f : domain → codomain`.
pub fn pushforward_lagrangian(f: &[usize], codomain: usize, l: &LinearRelation) -> LinearRelation {
    l.compose(&symplectify(&Corelation::from_function(f, codomain)))
        .expect("source of S(f) is the space generated by its domain")
}
