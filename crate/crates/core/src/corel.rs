//! Corelations `X → Y`: partitions of the disjoint union `X + Y`.
//!
//! Index `k < left` is the input `x_k`; index `left + k` is the output `y_k`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::union_find::UnionFind;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorelError {
    #[error("cannot compose: {right} outputs against {left} inputs")]
    SizeMismatch { right: usize, left: usize },
    #[error("blocks do not partition {0} elements")]
    NotAPartition(usize),
    #[error("parse error: {0}")]
    Parse(String),
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Corelation {
    left: usize,
    right: usize,
    blocks: Vec<Vec<usize>>,
}

fn canonical(mut blocks: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    for b in &mut blocks {
        b.sort_unstable();
    }
    blocks.sort_unstable_by_key(|b| b[0]);
    blocks
}

impl Corelation {
    /// Validates and canonicalizes an arbitrary block list.
    pub fn from_blocks(
        left: usize,
        right: usize,
        blocks: Vec<Vec<usize>>,
    ) -> Result<Self, CorelError> {
        let n = left + right;
        let mut seen = vec![false; n];
        for &k in blocks.iter().flatten() {
            if k >= n || seen[k] {
                return Err(CorelError::NotAPartition(n));
            }
            seen[k] = true;
        }
        if blocks.iter().any(Vec::is_empty) || seen.contains(&false) {
            return Err(CorelError::NotAPartition(n));
        }
        Ok(Corelation {
            left,
            right,
            blocks: canonical(blocks),
        })
    }

    fn from_union_find(left: usize, right: usize, uf: &mut UnionFind) -> Self {
        Corelation {
            left,
            right,
            blocks: uf.classes(),
        }
    }

    /// The corelation of a cospan `X → N ← Y` given by node indices:
    /// ports are related iff they land on the same node.
    pub fn from_cospan(i: &[usize], o: &[usize]) -> Self {
        let legs: Vec<usize> = i.iter().chain(o).copied().collect();
        let mut uf = UnionFind::new(legs.len());
        let mut first: std::collections::HashMap<usize, usize> = Default::default();
        for (k, n) in legs.iter().enumerate() {
            if let Some(&j) = first.get(n) {
                uf.union(j, k);
            } else {
                first.insert(*n, k);
            }
        }
        Corelation::from_union_find(i.len(), o.len(), &mut uf)
    }

    /// The corelation of a function `f : X → Y`, seen as the cospan
    /// `X → Y ← Y`.
    pub fn from_function(f: &[usize], codomain: usize) -> Self {
        let o: Vec<usize> = (0..codomain).collect();
        Corelation::from_cospan(f, &o)
    }

    pub fn identity(n: usize) -> Self {
        let blocks = (0..n).map(|k| vec![k, n + k]).collect();
        Corelation {
            left: n,
            right: n,
            blocks,
        }
    }

    /// `0 → X + X`, pairing the two copies.
    pub fn cup(n: usize) -> Self {
        let blocks = (0..n).map(|k| vec![k, n + k]).collect();
        Corelation {
            left: 0,
            right: 2 * n,
            blocks,
        }
    }

    /// `X + X → 0`, pairing the two copies.
    pub fn cap(n: usize) -> Self {
        Corelation::cup(n).dagger()
    }

    pub fn left(&self) -> usize {
        self.left
    }

    pub fn right(&self) -> usize {
        self.right
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// `other ∘ self`: the finest partition of `X + Y + Z` coarser than
    /// both, restricted to `X + Z`.
    pub fn compose(&self, other: &Corelation) -> Result<Corelation, CorelError> {
        if self.right != other.left {
            return Err(CorelError::SizeMismatch {
                right: self.right,
                left: other.left,
            });
        }
        let (x, y, z) = (self.left, self.right, other.right);
        let mut uf = UnionFind::new(x + y + z);
        for b in &self.blocks {
            for w in b.windows(2) {
                uf.union(w[0], w[1]);
            }
        }
        for b in &other.blocks {
            for w in b.windows(2) {
                uf.union(x + w[0], x + w[1]);
            }
        }
        let blocks = uf
            .classes()
            .into_iter()
            .map(|c| {
                c.into_iter()
                    .filter(|&k| k < x || k >= x + y)
                    .map(|k| if k < x { k } else { k - y })
                    .collect::<Vec<_>>()
            })
            .filter(|b| !b.is_empty())
            .collect();
        Ok(Corelation {
            left: x,
            right: z,
            blocks: canonical(blocks),
        })
    }

    pub fn tensor(&self, other: &Corelation) -> Corelation {
        let (x1, y1, x2) = (self.left, self.right, other.left);
        let shift_self = |k: usize| if k < x1 { k } else { k + x2 };
        let shift_other = |k: usize| if k < x2 { x1 + k } else { x1 + y1 + k };
        let blocks = self
            .blocks
            .iter()
            .map(|b| b.iter().map(|&k| shift_self(k)).collect())
            .chain(
                other
                    .blocks
                    .iter()
                    .map(|b| b.iter().map(|&k| shift_other(k)).collect()),
            )
            .collect();
        Corelation {
            left: x1 + x2,
            right: y1 + other.right,
            blocks: canonical(blocks),
        }
    }

    pub fn dagger(&self) -> Corelation {
        let (x, y) = (self.left, self.right);
        let swap = |k: usize| if k < x { y + k } else { k - x };
        let blocks = self
            .blocks
            .iter()
            .map(|b| b.iter().map(|&k| swap(k)).collect())
            .collect();
        Corelation {
            left: y,
            right: x,
            blocks: canonical(blocks),
        }
    }

    fn port_name(&self, k: usize) -> String {
        if k < self.left {
            format!("x{k}")
        } else {
            format!("y{}", k - self.left)
        }
    }
}

impl fmt::Display for Corelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "corel {} -> {} :", self.left, self.right)?;
        for b in &self.blocks {
            let names: Vec<String> = b.iter().map(|&k| self.port_name(k)).collect();
            write!(f, " {{{}}}", names.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for Corelation {
    type Err = CorelError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let bad = |m: &str| CorelError::Parse(m.to_string());
        let rest = text
            .trim()
            .strip_prefix("corel")
            .ok_or_else(|| bad("expected `corel`"))?;
        let (sizes, body) = rest.split_once(':').ok_or_else(|| bad("expected `:`"))?;
        let (l, r) = sizes.split_once("->").ok_or_else(|| bad("expected `->`"))?;
        let left: usize = l.trim().parse().map_err(|_| bad("bad input count"))?;
        let right: usize = r.trim().parse().map_err(|_| bad("bad output count"))?;
        let mut blocks = Vec::new();
        let mut body = body.trim();
        while !body.is_empty() {
            let inner = body.strip_prefix('{').ok_or_else(|| bad("expected `{`"))?;
            let (block, tail) = inner.split_once('}').ok_or_else(|| bad("unclosed block"))?;
            let mut ports = Vec::new();
            for name in block.split_whitespace() {
                let (side, idx) = name.split_at(1);
                let idx: usize = idx.parse().map_err(|_| bad(name))?;
                match side {
                    "x" if idx < left => ports.push(idx),
                    "y" if idx < right => ports.push(left + idx),
                    _ => return Err(bad(name)),
                }
            }
            blocks.push(ports);
            body = tail.trim_start();
        }
        Corelation::from_blocks(left, right, blocks)
    }
}
