use num_complex::Complex64;
use serde::Serialize;

use crate::dictionary::DictionaryMatrix;
use crate::error::{Error, Result};

/// A `K`-sparse signal `x`: the selected columns and their symbols.
///
/// Entries are kept sorted by column, which is both the per-sub-block order
/// of structured encoding and the lexicographic order of sub-block free
/// encoding.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SparseCodeword {
    support: Vec<usize>,
    symbols: Vec<usize>,
    values: Vec<Complex64>,
}

impl SparseCodeword {
    /// Builds a codeword from `(column, symbol index, symbol value)` triples
    /// in any order. Repeated columns are rejected.
    pub fn new(mut entries: Vec<(usize, usize, Complex64)>) -> Result<Self> {
        entries.sort_by_key(|e| e.0);
        if entries.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::invalid("a column appears twice in the support"));
        }
        Ok(SparseCodeword {
            support: entries.iter().map(|e| e.0).collect(),
            symbols: entries.iter().map(|e| e.1).collect(),
            values: entries.iter().map(|e| e.2).collect(),
        })
    }

    pub fn empty() -> Self {
        SparseCodeword {
            support: Vec::new(),
            symbols: Vec::new(),
            values: Vec::new(),
        }
    }

    /// Number of non-zero entries.
    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    /// Constellation indices, aligned with `support`.
    pub fn symbol_indices(&self) -> &[usize] {
        &self.symbols
    }

    /// Symbol values `beta_k`, aligned with `support`.
    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        self.support
            .iter()
            .zip(&self.symbols)
            .zip(&self.values)
            .map(|((&c, &m), &v)| (c, m, v))
    }

    /// The codeword `s = A x`.
    pub fn codeword(&self, dict: &DictionaryMatrix) -> Vec<Complex64> {
        dict.synthesize(&self.support, &self.values)
    }

    /// The length-`L` vector `x`.
    pub fn to_dense(&self, l: usize) -> Vec<Complex64> {
        let mut x = vec![Complex64::new(0.0, 0.0); l];
        for (c, _, v) in self.entries() {
            x[c] = v;
        }
        x
    }

    /// Same support and symbol indices.
    pub fn same_message(&self, other: &SparseCodeword) -> bool {
        self.support == other.support && self.symbols == other.symbols
    }
}
