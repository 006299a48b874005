//! Sub-block structured encoding: one column from each sub-block.

use super::bits::{bits_to_u64, push_u64};
use super::codeword::SparseCodeword;
use super::constellation::Modulation;
use super::partition::SubBlockPartition;
use crate::error::{Error, Result};

/// `K log2 M + sum_k log2 L_k`, counting per-block alphabets.
pub fn sse_bit_budget(partition: &SubBlockPartition, modulation: &Modulation) -> u32 {
    (0..partition.blocks())
        .map(|k| sse_block_bits(partition, modulation, k))
        .sum()
}

/// Bits carried by sub-block `k`.
pub fn sse_block_bits(partition: &SubBlockPartition, modulation: &Modulation, k: usize) -> u32 {
    partition.index_bits(k) + modulation.for_block(k).bits_per_symbol()
}

/// Maps bits to one column and symbol per sub-block. For each sub-block in
/// column order the bits hold the column offset (big-endian) followed by
/// the Gray label of the symbol.
pub fn sse_encode(
    bits: &[bool],
    partition: &SubBlockPartition,
    modulation: &Modulation,
) -> Result<SparseCodeword> {
    let all: Vec<usize> = (0..partition.blocks()).collect();
    sse_encode_blocks(bits, partition, modulation, &all)
}

/// [`sse_encode`] restricted to the listed sub-blocks, e.g. those owned by
/// one user. `bits` holds each listed sub-block's field in list order.
pub fn sse_encode_blocks(
    bits: &[bool],
    partition: &SubBlockPartition,
    modulation: &Modulation,
    blocks: &[usize],
) -> Result<SparseCodeword> {
    let budget: u32 = blocks.iter().map(|&k| sse_block_bits(partition, modulation, k)).sum();
    if bits.len() != budget as usize {
        return Err(Error::invalid(format!(
            "expected {budget} message bits, got {}",
            bits.len()
        )));
    }
    if let Some(&bad) = blocks.iter().find(|&&k| k >= partition.blocks()) {
        return Err(Error::invalid(format!("sub-block {bad} does not exist")));
    }
    let mut pos = 0;
    let mut take = |n: u32| {
        let v = bits_to_u64(&bits[pos..pos + n as usize]);
        pos += n as usize;
        v
    };
    let mut entries = Vec::with_capacity(blocks.len());
    for &k in blocks {
        let c = modulation.for_block(k);
        let col = partition.offsets()[k] + take(partition.index_bits(k)) as usize;
        let m = c.index_of_label(take(c.bits_per_symbol()));
        entries.push((col, m, c.symbol(m)));
    }
    SparseCodeword::new(entries)
}

/// Inverse of [`sse_encode`]. Only the support and symbol indices are read.
pub fn sse_decode_bits(
    word: &SparseCodeword,
    partition: &SubBlockPartition,
    modulation: &Modulation,
) -> Result<Vec<bool>> {
    if word.len() != partition.blocks() {
        return Err(Error::invalid(format!(
            "support has {} entries for {} sub-blocks",
            word.len(),
            partition.blocks()
        )));
    }
    let mut out = Vec::with_capacity(sse_bit_budget(partition, modulation) as usize);
    // Sorted support with one entry per block means entry k sits in block k.
    for (k, (col, m, _)) in word.entries().enumerate() {
        if partition.block_of(col) != Some(k) {
            return Err(Error::invalid(format!(
                "column {col} is not the only pick of sub-block {k}"
            )));
        }
        let c = modulation.for_block(k);
        if m >= c.len() {
            return Err(Error::invalid(format!("symbol index {m} outside an alphabet of {}", c.len())));
        }
        push_u64(&mut out, (col - partition.offsets()[k]) as u64, partition.index_bits(k));
        push_u64(&mut out, c.label(m), c.bits_per_symbol());
    }
    Ok(out)
}
