//! Sub-block free encoding: any `K` of the `L` columns.

use num_bigint::BigUint;

use super::bits::{bits_to_u64, push_u64};
use super::codeword::SparseCodeword;
use super::combinatorics::{combination_index_bits, sfe_rank, sfe_unrank, MessageIndex};
use super::constellation::Constellation;
use crate::error::{Error, Result};

/// `K log2 M + floor(log2 C(L, K))`.
pub fn sfe_bit_budget(l: usize, k: usize, constellation: &Constellation) -> u32 {
    combination_index_bits(l, k) + k as u32 * constellation.bits_per_symbol()
}

/// Index bits pick the combination; then one Gray-labelled symbol group per
/// selected column, in increasing column order.
pub fn sfe_encode(
    bits: &[bool],
    l: usize,
    k: usize,
    constellation: &Constellation,
) -> Result<SparseCodeword> {
    if k == 0 || k > l {
        return Err(Error::config(format!("cannot choose {k} of {l} columns")));
    }
    let budget = sfe_bit_budget(l, k, constellation) as usize;
    if bits.len() != budget {
        return Err(Error::invalid(format!(
            "expected {budget} message bits, got {}",
            bits.len()
        )));
    }
    let width = combination_index_bits(l, k) as usize;
    let d = MessageIndex::from_bits(&bits[..width]);
    let support = sfe_unrank(d.value(), l, k)?;
    let q = constellation.bits_per_symbol() as usize;
    let entries = support
        .iter()
        .enumerate()
        .map(|(i, &col)| {
            let from = width + i * q;
            let m = constellation.index_of_label(bits_to_u64(&bits[from..from + q]));
            (col, m, constellation.symbol(m))
        })
        .collect();
    SparseCodeword::new(entries)
}

/// Inverse of [`sfe_encode`]. A decoded combination whose rank needs more
/// than the index width (possible after a decoding error) is rejected.
pub fn sfe_decode_bits(
    word: &SparseCodeword,
    l: usize,
    constellation: &Constellation,
) -> Result<Vec<bool>> {
    let k = word.len();
    let width = combination_index_bits(l, k);
    let rank = sfe_rank(word.support(), l)?;
    if rank >= BigUint::from(1u8) << width {
        return Err(Error::invalid(format!(
            "combination rank {rank} is outside the {width}-bit message range"
        )));
    }
    let mut out = MessageIndex::new(rank, width)?.to_bits();
    for &m in word.symbol_indices() {
        if m >= constellation.len() {
            return Err(Error::invalid(format!(
                "symbol index {m} outside an alphabet of {}",
                constellation.len()
            )));
        }
        push_u64(&mut out, constellation.label(m), constellation.bits_per_symbol());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use num_complex::Complex64;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;

    #[test]
    fn bit_budgets() {
        let qpsk = Constellation::qpsk();
        assert_eq!(sfe_bit_budget(4096, 5, &qpsk), 63);
        assert_eq!(sfe_bit_budget(257, 2, &qpsk), 19);
        assert_eq!(sfe_bit_budget(5, 3, &Constellation::psk(1, 0.0).unwrap()), 3);
    }

    #[test]
    fn all_zero_message() {
        let c = Constellation::qpsk();
        let w = sfe_encode(&[false; 63], 4096, 5, &c).unwrap();
        assert_eq!(w.support(), &[0, 1, 2, 3, 4]);
        assert!(w.values().iter().all(|&v| v == Complex64::new(1.0, 0.0)));
    }

    #[test]
    fn exhaustive_round_trip_small() {
        let c = Constellation::bpsk();
        let nb = sfe_bit_budget(12, 3, &c);
        assert_eq!(nb, 7 + 3);
        let mut seen = std::collections::HashSet::new();
        for v in 0..1u64 << nb {
            let mut bits = Vec::new();
            push_u64(&mut bits, v, nb);
            let w = sfe_encode(&bits, 12, 3, &c).unwrap();
            assert!(seen.insert((w.support().to_vec(), w.symbol_indices().to_vec())));
            assert_eq!(sfe_decode_bits(&w, 12, &c).unwrap(), bits);
        }
    }

    #[test]
    fn random_round_trip_large() {
        let c = Constellation::qpsk();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..10_000 {
            let bits: Vec<bool> = (0..63).map(|_| rng.random()).collect();
            let w = sfe_encode(&bits, 4096, 5, &c).unwrap();
            assert!(w.support().windows(2).all(|p| p[0] < p[1]));
            assert_eq!(sfe_decode_bits(&w, 4096, &c).unwrap(), bits);
        }
    }

    #[test]
    fn rank_beyond_message_range_is_rejected() {
        // C(5,3) = 10 but only 8 indices are used; (2,3,4) has rank 9.
        let c = Constellation::psk(1, 0.0).unwrap();
        let one = Complex64::new(1.0, 0.0);
        let w = SparseCodeword::new(vec![(2, 0, one), (3, 0, one), (4, 0, one)]).unwrap();
        assert!(sfe_decode_bits(&w, 5, &c).is_err());
        assert!(sfe_encode(&[true; 2], 5, 3, &c).is_err());
    }
}
