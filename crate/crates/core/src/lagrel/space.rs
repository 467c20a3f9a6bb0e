//! Symplectic spaces generated by port sets, their conjugates and sums, and
//! subspaces stored in canonical form.

use crate::field::RatFunc;

use super::matrix::{rank, rref, Row};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// `F^X ⊕ (F^X)*` for `|X| = ports`, with coordinates
/// `[φ_0 .. φ_{n-1}, ι_0 .. ι_{n-1}]`. `Minus` marks the conjugate form.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Block {
    pub ports: usize,
    pub sign: Sign,
}

impl Block {
    pub fn dim(&self) -> usize {
        2 * self.ports
    }
}

/// A direct sum of blocks, kept normalized: no empty blocks and no two
/// adjacent blocks of the same sign. Merging `[φ₁ ι₁] ⊕ [φ₂ ι₂]` gives the
/// block `[φ₁ φ₂ ι₁ ι₂]`, so the space generated by `X` plus the one
/// generated by `Y` is the one generated by `X + Y`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Space {
    blocks: Vec<Block>,
}

impl Space {
    pub fn zero() -> Self {
        Space::default()
    }

    /// The space generated by a set of `ports` elements.
    pub fn generated(ports: usize) -> Self {
        Space::from_blocks(&[Block {
            ports,
            sign: Sign::Plus,
        }])
    }

    pub fn from_blocks(blocks: &[Block]) -> Self {
        concat_blocks(blocks).0
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn conj(&self) -> Space {
        Space {
            blocks: self
                .blocks
                .iter()
                .map(|b| Block {
                    ports: b.ports,
                    sign: b.sign.flip(),
                })
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.blocks.iter().map(Block::dim).sum()
    }

    pub fn ports(&self) -> usize {
        self.blocks.iter().map(|b| b.ports).sum()
    }
}

/// Normalizes a raw block list. For every raw block, returns the map from
/// its local coordinates to coordinates of the normalized space.
fn concat_blocks(raw: &[Block]) -> (Space, Vec<Vec<usize>>) {
    let mut maps: Vec<Vec<usize>> = raw.iter().map(|_| Vec::new()).collect();
    let mut blocks: Vec<Block> = Vec::new();
    let mut offset = 0;
    let mut k = 0;
    while k < raw.len() {
        if raw[k].ports == 0 {
            k += 1;
            continue;
        }
        let sign = raw[k].sign;
        let mut group = vec![k];
        let mut j = k + 1;
        while j < raw.len() && (raw[j].ports == 0 || raw[j].sign == sign) {
            if raw[j].ports > 0 {
                group.push(j);
            }
            j += 1;
        }
        let total: usize = group.iter().map(|&g| raw[g].ports).sum();
        let mut before = 0;
        for &g in &group {
            let n = raw[g].ports;
            let phi = (0..n).map(|p| offset + before + p);
            let iota = (0..n).map(|p| offset + total + before + p);
            maps[g] = phi.chain(iota).collect();
            before += n;
        }
        blocks.push(Block { ports: total, sign });
        offset += 2 * total;
        k = j;
    }
    (Space { blocks }, maps)
}

/// Normalized sum of `parts`, plus each part's coordinate embedding.
pub fn concat(parts: &[&Space]) -> (Space, Vec<Vec<usize>>) {
    let raw: Vec<Block> = parts
        .iter()
        .flat_map(|s| s.blocks.iter().copied())
        .collect();
    let (space, block_maps) = concat_blocks(&raw);
    let mut maps = Vec::with_capacity(parts.len());
    let mut b = 0;
    for part in parts {
        let mut m = Vec::with_capacity(part.dim());
        for _ in &part.blocks {
            m.extend_from_slice(&block_maps[b]);
            b += 1;
        }
        maps.push(m);
    }
    (space, maps)
}

/// A subspace of a (not necessarily normalized) sum of blocks, held as
/// generator rows in reduced row-echelon form.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    ambient: Vec<Block>,
    rows: Vec<Row>,
}

impl Subspace {
    pub fn new(ambient: Vec<Block>, rows: Vec<Row>) -> Self {
        let n = ambient.iter().map(Block::dim).sum();
        debug_assert!(rows.iter().all(|r| r.len() == n));
        Subspace {
            rows: rref(rows, n),
            ambient,
        }
    }

    pub fn ambient(&self) -> &[Block] {
        &self.ambient
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient.iter().map(Block::dim).sum()
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// `Σ_blocks sign · (i'(φ) − i(φ'))`.
    pub fn omega(&self, u: &[RatFunc], v: &[RatFunc]) -> RatFunc {
        let mut acc = RatFunc::zero();
        let mut offset = 0;
        for b in &self.ambient {
            let n = b.ports;
            let mut part = RatFunc::zero();
            for p in 0..n {
                let (phi, iota) = (offset + p, offset + n + p);
                part = part + &(&v[iota] * &u[phi]) - &(&u[iota] * &v[phi]);
            }
            acc = match b.sign {
                Sign::Plus => acc + &part,
                Sign::Minus => acc - &part,
            };
            offset += 2 * n;
        }
        acc
    }

    pub fn is_isotropic(&self) -> bool {
        self.rows.iter().enumerate().all(|(k, u)| {
            self.rows[k + 1..]
                .iter()
                .all(|v| self.omega(u, v).is_zero())
        })
    }

    pub fn is_lagrangian(&self) -> bool {
        2 * self.dim() == self.ambient_dim() && self.is_isotropic()
    }

    pub fn contains(&self, v: &[RatFunc]) -> bool {
        let mut rows = self.rows.clone();
        rows.push(v.to_vec());
        rank(&rows, self.ambient_dim()) == self.dim()
    }
}
