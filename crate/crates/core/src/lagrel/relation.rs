//! Linear relations between symplectic spaces and the dagger compact
//! structure of LagrRel.

use std::fmt;

use thiserror::Error;

use crate::field::RatFunc;

use super::matrix::{nullspace, Row};
use super::space::{concat, Block, Space, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LagrelError {
    #[error("cannot compose: target {left:?} does not match source {right:?}")]
    InterfaceMismatch { left: Vec<Block>, right: Vec<Block> },
    #[error("name lives in {found:?}, expected {expected:?}")]
    NameMismatch {
        found: Vec<Block>,
        expected: Vec<Block>,
    },
}

/// A linear relation `V₁ → V₂`, stored as a subspace of `conj(V₁) ⊕ V₂`
/// with coordinates `[source..., target...]`. Those produced by the
/// functors in this crate are Lagrangian; `Φ` and `I` alone are not.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LinearRelation {
    source: Space,
    target: Space,
    space: Subspace,
}

pub type LagrangianRelation = LinearRelation;

fn ambient(source: &Space, target: &Space) -> Vec<Block> {
    source
        .conj()
        .blocks()
        .iter()
        .chain(target.blocks())
        .copied()
        .collect()
}

impl LinearRelation {
    /// Span of `rows` (each of length `source.dim() + target.dim()`).
    pub fn from_rows(source: Space, target: Space, rows: Vec<Row>) -> Self {
        let space = Subspace::new(ambient(&source, &target), rows);
        LinearRelation {
            source,
            target,
            space,
        }
    }

    /// Builds a relation whose source and target are sums of `src` and
    /// `tgt` parts. Each generator lists one vector per part, sources
    /// first.
    pub fn assemble(src: &[&Space], tgt: &[&Space], gens: Vec<Vec<Row>>) -> Self {
        let (source, smaps) = concat(src);
        let (target, tmaps) = concat(tgt);
        let offset = source.dim();
        let n = offset + target.dim();
        let rows = gens
            .into_iter()
            .map(|parts| {
                let mut row = vec![RatFunc::zero(); n];
                for (k, part) in parts.into_iter().enumerate() {
                    let (map, shift) = if k < src.len() {
                        (&smaps[k], 0)
                    } else {
                        (&tmaps[k - src.len()], offset)
                    };
                    for (c, v) in part.into_iter().enumerate() {
                        row[shift + map[c]] = v;
                    }
                }
                row
            })
            .collect();
        LinearRelation::from_rows(source, target, rows)
    }

    pub fn source(&self) -> &Space {
        &self.source
    }

    pub fn target(&self) -> &Space {
        &self.target
    }

    pub fn subspace(&self) -> &Subspace {
        &self.space
    }

    pub fn rows(&self) -> &[Row] {
        self.space.rows()
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn is_lagrangian(&self) -> bool {
        self.space.is_lagrangian()
    }

    pub fn contains(&self, v: &[RatFunc]) -> bool {
        self.space.contains(v)
    }

    pub fn identity(v: &Space) -> Self {
        let n = v.dim();
        let rows = (0..n)
            .map(|k| {
                let mut row = vec![RatFunc::zero(); 2 * n];
                row[k] = RatFunc::one();
                row[n + k] = RatFunc::one();
                row
            })
            .collect();
        LinearRelation::from_rows(v.clone(), v.clone(), rows)
    }

    /// `other ∘ self`: pairs `(v₁, v₃)` with some `v₂` such that
    /// `(v₁, v₂) ∈ self` and `(v₂, v₃) ∈ other`.
    pub fn compose(&self, other: &LinearRelation) -> Result<LinearRelation, LagrelError> {
        if self.target != other.source {
            return Err(LagrelError::InterfaceMismatch {
                left: self.target.blocks().to_vec(),
                right: other.source.blocks().to_vec(),
            });
        }
        let (a, b) = (self.source.dim(), self.target.dim());
        let g = self.rows();
        let h = other.rows();
        let unknowns = g.len() + h.len();
        let constraints: Vec<Row> = (0..b)
            .map(|r| {
                g.iter()
                    .map(|gk| gk[a + r].clone())
                    .chain(h.iter().map(|hl| -&hl[r]))
                    .collect()
            })
            .collect();
        let c = other.target.dim();
        let rows = nullspace(&constraints, unknowns)
            .into_iter()
            .map(|coef| {
                let mut row = vec![RatFunc::zero(); a + c];
                for (x, gk) in coef[..g.len()].iter().zip(g) {
                    if x.is_zero() {
                        continue;
                    }
                    for j in 0..a {
                        row[j] = &row[j] + &(x * &gk[j]);
                    }
                }
                for (y, hl) in coef[g.len()..].iter().zip(h) {
                    if y.is_zero() {
                        continue;
                    }
                    for j in 0..c {
                        row[a + j] = &row[a + j] + &(y * &hl[b + j]);
                    }
                }
                row
            })
            .collect();
        Ok(LinearRelation::from_rows(
            self.source.clone(),
            other.target.clone(),
            rows,
        ))
    }

    /// Direct sum, with sources and targets merged by the normalized sum.
    pub fn tensor(&self, other: &LinearRelation) -> LinearRelation {
        let (a1, b1) = (self.source.dim(), self.target.dim());
        let (a2, b2) = (other.source.dim(), other.target.dim());
        let zeros = |n: usize| vec![RatFunc::zero(); n];
        let mut gens: Vec<Vec<Row>> = Vec::new();
        for r in self.rows() {
            gens.push(vec![
                r[..a1].to_vec(),
                zeros(a2),
                r[a1..].to_vec(),
                zeros(b2),
            ]);
        }
        for r in other.rows() {
            gens.push(vec![
                zeros(a1),
                r[..a2].to_vec(),
                zeros(b1),
                r[a2..].to_vec(),
            ]);
        }
        LinearRelation::assemble(
            &[&self.source, &other.source],
            &[&self.target, &other.target],
            gens,
        )
    }

    /// `(u, v) ↦ (v̄, ū)`, where the bar negates currents. Negation keeps
    /// the dagger compatible with reflecting a circuit, since the twisted
    /// input side counts current flowing in and the output side current
    /// flowing out.
    pub fn dagger(&self) -> LinearRelation {
        let a = self.source.dim();
        let flip: Vec<bool> = current_mask(&self.target)
            .into_iter()
            .chain(current_mask(&self.source))
            .collect();
        let rows = self
            .rows()
            .iter()
            .map(|r| {
                r[a..]
                    .iter()
                    .chain(&r[..a])
                    .zip(&flip)
                    .map(|(x, &neg)| if neg { -x } else { x.clone() })
                    .collect()
            })
            .collect();
        LinearRelation::from_rows(self.target.clone(), self.source.clone(), rows)
    }

    fn diagonal(v: &Space) -> Vec<Vec<Row>> {
        let n = v.dim();
        (0..n)
            .map(|k| {
                let mut e = vec![RatFunc::zero(); n];
                e[k] = RatFunc::one();
                vec![e.clone(), e]
            })
            .collect()
    }

    /// `η : 0 → conj(V) ⊕ V`, the diagonal.
    pub fn cup(v: &Space) -> LinearRelation {
        LinearRelation::assemble(&[], &[&v.conj(), v], LinearRelation::diagonal(v))
    }

    /// `ε : V ⊕ conj(V) → 0`, the diagonal.
    pub fn cap(v: &Space) -> LinearRelation {
        LinearRelation::assemble(&[v, &v.conj()], &[], LinearRelation::diagonal(v))
    }

    /// `(φ, i) ↦ (φ, −i)` from the space generated by `ports` to its
    /// conjugate.
    pub fn twist(ports: usize) -> LinearRelation {
        let v = Space::generated(ports);
        let n = v.dim();
        let rows = (0..n)
            .map(|k| {
                let mut row = vec![RatFunc::zero(); 2 * n];
                row[k] = RatFunc::one();
                row[n + k] = if k < ports {
                    RatFunc::one()
                } else {
                    -RatFunc::one()
                };
                row
            })
            .collect();
        LinearRelation::from_rows(v.clone(), v.conj(), rows)
    }

    /// The relation `V₁ → V₂` named by `name : 0 → conj(V₁) ⊕ V₂`.
    pub fn from_name(
        name: &LinearRelation,
        source: Space,
        target: Space,
    ) -> Result<Self, LagrelError> {
        let conj_source = source.conj();
        let (expected, maps) = concat(&[&conj_source, &target]);
        if !name.source.blocks().is_empty() || name.target != expected {
            return Err(LagrelError::NameMismatch {
                found: name.target.blocks().to_vec(),
                expected: expected.blocks().to_vec(),
            });
        }
        let rows = name
            .rows()
            .iter()
            .map(|v| maps.iter().flatten().map(|&c| v[c].clone()).collect())
            .collect();
        Ok(LinearRelation::from_rows(source, target, rows))
    }

    /// The name `0 → conj(V₁) ⊕ V₂` of this relation.
    pub fn to_name(&self) -> LinearRelation {
        let a = self.source.dim();
        let gens = self
            .rows()
            .iter()
            .map(|r| vec![r[..a].to_vec(), r[a..].to_vec()])
            .collect();
        LinearRelation::assemble(&[], &[&self.source.conj(), &self.target], gens)
    }
}

impl fmt::Display for LinearRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, r) in self.rows().iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = r.iter().map(|c| c.to_string()).collect();
            write!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}
/// `true` at the current coordinates of `v`.
fn current_mask(v: &Space) -> Vec<bool> {
    v.blocks()
        .iter()
        .flat_map(|b| (0..b.dim()).map(move |k| k >= b.ports))
        .collect()
}
