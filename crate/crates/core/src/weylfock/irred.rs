use std::fmt;
use std::ops::Range;

use crate::error::{HhError, Result};
use crate::gausspoly::MultiIndex;
use crate::scalar::binomial;

/// The compact group K acting on ℂⁿ = ℂ^{n₁} ⊕ ⋯: one unitary group per block.
/// `U(n)` is a single block, `U(n₁)×U(n₂)` two blocks.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Family {
    blocks: Vec<usize>,
}

impl Family {
    pub fn un(n: usize) -> Self {
        assert!(n > 0, "block size must be positive");
        Self { blocks: vec![n] }
    }

    pub fn product(n1: usize, n2: usize) -> Self {
        assert!(n1 > 0 && n2 > 0, "block sizes must be positive");
        Self { blocks: vec![n1, n2] }
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn n(&self) -> usize {
        self.blocks.iter().sum()
    }

    pub fn block_range(&self, i: usize) -> Range<usize> {
        let start: usize = self.blocks[..i].iter().sum();
        start..start + self.blocks[i]
    }

    pub fn ranges(&self) -> Vec<Range<usize>> {
        (0..self.blocks.len()).map(|i| self.block_range(i)).collect()
    }

    /// All α with total degree ≤ d.
    pub fn alphas_up_to(&self, d: u32) -> Vec<IrredIndex> {
        let mut out = Vec::new();
        for total in 0..=d {
            for m in MultiIndex::of_degree(self.blocks.len(), total) {
                out.push(IrredIndex {
                    family: self.clone(),
                    m: m.0,
                });
            }
        }
        out
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.blocks.iter().map(|b| format!("U({b})")).collect();
        write!(f, "{}", parts.join("x"))
    }
}

/// Label α of a K-irreducible V_α ⊂ 𝒫(ℂⁿ): the block degrees (k) or (m₁, m₂).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IrredIndex {
    family: Family,
    m: Vec<u32>,
}

impl IrredIndex {
    pub fn new(family: &Family, m: Vec<u32>) -> Result<Self> {
        if m.len() != family.num_blocks() {
            return Err(HhError::Dimension {
                expected: family.num_blocks(),
                got: m.len(),
            });
        }
        Ok(Self {
            family: family.clone(),
            m,
        })
    }

    pub fn un(n: usize, k: u32) -> Self {
        Self {
            family: Family::un(n),
            m: vec![k],
        }
    }

    pub fn product(n1: usize, n2: usize, m1: u32, m2: u32) -> Self {
        Self {
            family: Family::product(n1, n2),
            m: vec![m1, m2],
        }
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn n(&self) -> usize {
        self.family.n()
    }

    /// Block degrees.
    pub fn m(&self) -> &[u32] {
        &self.m
    }

    pub fn degree(&self) -> u32 {
        self.m.iter().sum()
    }

    pub fn dim(&self) -> usize {
        self.family
            .blocks()
            .iter()
            .zip(&self.m)
            .map(|(&b, &k)| {
                let d = binomial(k + b as u32 - 1, k);
                usize::try_from(d).expect("dimension fits in usize")
            })
            .product()
    }

    pub fn contains(&self, nu: &MultiIndex) -> bool {
        nu.len() == self.n()
            && self
                .family
                .ranges()
                .into_iter()
                .zip(&self.m)
                .all(|(r, &k)| nu.block_degree(r) == k)
    }

    /// Holomorphic monomials spanning V_α, in a fixed order.
    pub fn monomials(&self) -> Vec<MultiIndex> {
        let mut out = vec![Vec::new()];
        for (&b, &k) in self.family.blocks().iter().zip(&self.m) {
            let parts = MultiIndex::of_degree(b, k);
            let mut next = Vec::new();
            for prefix in &out {
                for p in &parts {
                    let mut v: Vec<u32> = prefix.clone();
                    v.extend(&p.0);
                    next.push(v);
                }
            }
            out = next;
        }
        out.into_iter().map(MultiIndex).collect()
    }
}

impl fmt::Display for IrredIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.m.iter().map(|k| k.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        assert_eq!(IrredIndex::un(2, 3).dim(), 4);
        assert_eq!(IrredIndex::un(3, 2).dim(), 6);
        assert_eq!(IrredIndex::product(1, 1, 2, 3).dim(), 1);
        assert_eq!(IrredIndex::product(2, 1, 2, 3).dim(), 3);
        for a in Family::un(2).alphas_up_to(4) {
            assert_eq!(a.monomials().len(), a.dim());
            assert!(a.monomials().iter().all(|m| a.contains(m)));
        }
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(Family::un(2).alphas_up_to(3).len(), 4);
        assert_eq!(Family::product(1, 1).alphas_up_to(2).len(), 6);
    }
}
