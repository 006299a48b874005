//! Gold-code dictionaries.
//!
//! The first m-sequence comes from a primitive trinomial `x^n + x^a + 1`; its
//! preferred partner is the decimation by `q = 2^((n+1)/2) + 1`, which is a
//! preferred pair for every odd `n`. The `2^n + 1` Gold sequences are the two
//! m-sequences plus `u xor shift(v, k)` for every `k`, and every circular
//! shift of every sequence becomes one dictionary column.

use super::{DictionaryKind, DictionaryMatrix, Field};
use crate::error::{Error, Result};

/// `(n, a)` for the primitive trinomial `x^n + x^a + 1`.
const TRINOMIALS: [(u32, u32); 4] = [(3, 1), (5, 2), (7, 3), (9, 4)];

pub const SUPPORTED_GOLD_DEGREES: [u32; 4] = [3, 5, 7, 9];

fn check_degree(n: u32) -> Result<u32> {
    TRINOMIALS
        .iter()
        .find(|(d, _)| *d == n)
        .map(|&(_, a)| a)
        .ok_or_else(|| {
            Error::config(format!(
                "Gold dictionary degree n = {n} unsupported; supported values are {SUPPORTED_GOLD_DEGREES:?}"
            ))
        })
}

/// One period (`2^n - 1` bits) of the m-sequence for degree `n`.
pub fn m_sequence(n: u32) -> Result<Vec<u8>> {
    let a = check_degree(n)? as usize;
    let n = n as usize;
    let len = (1usize << n) - 1;
    let mut s = vec![1u8; n];
    s.reserve(len - n);
    for i in 0..len - n {
        let next = s[i + a] ^ s[i];
        s.push(next);
    }
    Ok(s)
}

/// `t(n)` of the three-valued cross-correlation `{-1, -t(n), t(n) - 2}`.
pub fn gold_t(n: u32) -> u64 {
    if n % 2 == 1 {
        1 + (1 << n.div_ceil(2))
    } else {
        1 + (1 << ((n + 2) / 2))
    }
}

/// The `2^n + 1` Gold sequences as `{0, 1}` bit vectors.
pub fn gold_sequences(n: u32) -> Result<Vec<Vec<u8>>> {
    let u = m_sequence(n)?;
    let len = u.len();
    let q = (1usize << n.div_ceil(2)) + 1;
    let v: Vec<u8> = (0..len).map(|i| u[(q * i) % len]).collect();
    let mut set = Vec::with_capacity(len + 2);
    set.push(u.clone());
    set.push(v.clone());
    for k in 0..len {
        set.push((0..len).map(|i| u[i] ^ v[(i + k) % len]).collect());
    }
    Ok(set)
}

/// Gold dictionary: `N = 2^n - 1`, `L = 2^(2n)`.
///
/// Columns `0..L-1` are the unit-normalized `±1/sqrt(N)` sequences (sequence
/// `s` shifted by `j` lands at column `s*N + j`); the last column is `e_0`.
pub fn build_gold_dictionary(n: u32) -> Result<DictionaryMatrix> {
    let seqs = gold_sequences(n)?;
    let len = seqs[0].len();
    let columns = seqs.iter().flat_map(|seq| {
        (0..len).map(move |shift| {
            (0..len)
                .map(|i| 2 * seq[(i + shift) % len])
                .collect::<Vec<u8>>()
        })
    });
    let dict = DictionaryMatrix::from_phase_columns(DictionaryKind::Gold { n }, len, Field::Real, columns);
    let dict = dict.with_identity_column(0)?;
    let mut dict = dict;
    dict.label = format!("gold({n})");
    Ok(dict)
}
