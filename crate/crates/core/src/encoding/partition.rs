use std::ops::Range;

use serde::Serialize;

use crate::error::{Error, Result};

/// Sub-block layout of a dictionary for sub-block structured encoding.
///
/// Sub-blocks are consecutive column ranges starting at column 0, smallest
/// first; the trailing `unused` columns are never selected.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubBlockPartition {
    sizes: Vec<usize>,
    offsets: Vec<usize>,
    total: usize,
}

/// Splits `l` columns into `k` power-of-two sub-blocks maximizing
/// `sum log2 L_k` subject to `sum L_k <= l`.
///
/// Each size is the largest power of two not exceeding the average of the
/// columns still unassigned.
pub fn partition_subblocks(l: usize, k: usize) -> Result<SubBlockPartition> {
    if k == 0 || k > l {
        return Err(Error::config(format!(
            "cannot split {l} columns into {k} non-empty sub-blocks"
        )));
    }
    let mut sizes = Vec::with_capacity(k);
    let mut remaining = l;
    for blocks_left in (1..=k).rev() {
        let avg = remaining / blocks_left;
        let size = 1usize << avg.ilog2();
        sizes.push(size);
        remaining -= size;
    }
    SubBlockPartition::from_sizes(l, sizes)
}

impl SubBlockPartition {
    /// A partition with explicit sizes laid out from column 0.
    pub fn from_sizes(total: usize, sizes: Vec<usize>) -> Result<Self> {
        if sizes.is_empty() {
            return Err(Error::config("partition needs at least one sub-block"));
        }
        if let Some(bad) = sizes.iter().find(|s| !s.is_power_of_two()) {
            return Err(Error::config(format!("sub-block size {bad} is not a power of 2")));
        }
        let used: usize = sizes.iter().sum();
        if used > total {
            return Err(Error::config(format!(
                "sub-blocks use {used} columns but the dictionary has {total}"
            )));
        }
        let offsets = sizes
            .iter()
            .scan(0, |acc, s| {
                let o = *acc;
                *acc += s;
                Some(o)
            })
            .collect();
        Ok(SubBlockPartition {
            sizes,
            offsets,
            total,
        })
    }

    /// Number of sub-blocks `K`.
    pub fn blocks(&self) -> usize {
        self.sizes.len()
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub fn size(&self, k: usize) -> usize {
        self.sizes[k]
    }

    pub fn range(&self, k: usize) -> Range<usize> {
        self.offsets[k]..self.offsets[k] + self.sizes[k]
    }

    /// Columns in the dictionary, used or not.
    pub fn total_columns(&self) -> usize {
        self.total
    }

    pub fn used_columns(&self) -> usize {
        self.sizes.iter().sum()
    }

    pub fn unused(&self) -> usize {
        self.total - self.used_columns()
    }

    /// `log2 L_k`.
    pub fn index_bits(&self, k: usize) -> u32 {
        self.sizes[k].ilog2()
    }

    /// `sum_k log2 L_k`.
    pub fn total_index_bits(&self) -> u32 {
        (0..self.blocks()).map(|k| self.index_bits(k)).sum()
    }

    /// Sub-block containing `col`, or `None` for unused columns.
    pub fn block_of(&self, col: usize) -> Option<usize> {
        if col >= self.used_columns() {
            return None;
        }
        Some(self.offsets.partition_point(|&o| o <= col) - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_examples() {
        let p = partition_subblocks(23, 3).unwrap();
        assert_eq!(p.sizes(), &[4, 8, 8]);
        assert_eq!(p.unused(), 3);
        assert_eq!(p.offsets(), &[0, 4, 12]);

        let p = partition_subblocks(4096, 6).unwrap();
        assert_eq!(p.sizes(), &[512, 512, 512, 512, 1024, 1024]);
        assert_eq!(p.unused(), 0);

        let p = partition_subblocks(8, 8).unwrap();
        assert_eq!(p.sizes(), &[1; 8]);
        assert_eq!(p.total_index_bits(), 0);
    }

    #[test]
    fn block_lookup() {
        let p = partition_subblocks(23, 3).unwrap();
        assert_eq!(p.block_of(0), Some(0));
        assert_eq!(p.block_of(3), Some(0));
        assert_eq!(p.block_of(4), Some(1));
        assert_eq!(p.block_of(19), Some(2));
        assert_eq!(p.block_of(20), None);
        assert_eq!(p.range(1), 4..12);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(partition_subblocks(4, 0).is_err());
        assert!(partition_subblocks(4, 5).is_err());
        assert!(SubBlockPartition::from_sizes(10, vec![3, 4]).is_err());
        assert!(SubBlockPartition::from_sizes(10, vec![8, 4]).is_err());
    }

    /// Largest achievable `sum log2 L_k` over all power-of-2 multisets.
    fn brute_force_best(l: usize, k: usize) -> u32 {
        fn go(l_left: usize, k_left: usize, min_exp: u32) -> Option<u32> {
            if k_left == 0 {
                return Some(0);
            }
            let mut best = None;
            let mut e = min_exp;
            while (1usize << e) * k_left <= l_left {
                if let Some(rest) = go(l_left - (1 << e), k_left - 1, e) {
                    best = best.max(Some(rest + e));
                }
                e += 1;
            }
            best
        }
        go(l, k, 0).unwrap()
    }

    #[test]
    fn optimal_against_brute_force() {
        for l in 1..=64 {
            for k in 1..=6.min(l) {
                let p = partition_subblocks(l, k).unwrap();
                assert_eq!(p.total_index_bits(), brute_force_best(l, k), "L={l} K={k}");
                let s = p.sizes();
                assert!(s.windows(2).all(|w| w[0] <= w[1]));
                assert!(s[k - 1] <= 2 * s[0]);
                assert_eq!(p.used_columns() + p.unused(), l);
            }
        }
    }
}
