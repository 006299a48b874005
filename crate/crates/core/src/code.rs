//! A concrete code: dictionary, encoding scheme and symbol alphabets.

use std::ops::Range;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::dictionary::{
    build_gold_dictionary, build_mub_dictionary, DictionaryMatrix, Field, GramBudget, GramMatrix,
};
use crate::encoding::{
    make_offset_qpsk, partition_subblocks, sfe_bit_budget, sfe_decode_bits, sfe_encode,
    sse_bit_budget, sse_block_bits, sse_decode_bits, sse_encode, Constellation, Modulation, SparseCodeword,
    SubBlockPartition,
};
use crate::error::{Error, Result};

/// How a message selects its columns.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "scheme", rename_all = "lowercase")]
pub enum Scheme {
    /// One column per sub-block.
    Sse(SubBlockPartition),
    /// Any `k` distinct columns.
    Sfe { k: usize },
}

impl Scheme {
    /// Sparsity `K`.
    pub fn k(&self) -> usize {
        match self {
            Scheme::Sse(p) => p.blocks(),
            Scheme::Sfe { k } => *k,
        }
    }

    /// Columns a decoder may pick; SSE never selects unused trailing columns.
    pub fn candidate_columns(&self, l: usize) -> usize {
        match self {
            Scheme::Sse(p) => p.used_columns(),
            Scheme::Sfe { .. } => l,
        }
    }

    /// Columns excluded once `col` has been detected.
    pub fn discard_range(&self, col: usize) -> Range<usize> {
        match self {
            Scheme::Sse(p) => match p.block_of(col) {
                Some(k) => p.range(k),
                None => col..col + 1,
            },
            Scheme::Sfe { .. } => col..col + 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SchemeKind {
    Sse,
    Sfe,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum DictionarySpec {
    Gold { n: u32 },
    Mub { n: u32 },
}

/// Serializable description of a code instance.
///
/// ```json
/// {"dict": {"kind": "mub", "n": 6}, "scheme": "sse", "k": 6, "m": 4, "offset": true}
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeSpec {
    pub dict: DictionarySpec,
    /// Keep only the first `columns` columns.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub columns: Option<usize>,
    /// Append the standard basis vector with this index.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub identity_column: Option<usize>,
    pub scheme: SchemeKind,
    pub k: usize,
    pub m: usize,
    /// Rotate sub-block `k`'s QPSK alphabet by `k pi / (2K)` (SSE, `m = 4`).
    #[serde(default)]
    pub offset: bool,
    /// Explicit SSE sub-block sizes instead of the optimal partition.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partition: Option<Vec<usize>>,
}

impl CodeSpec {
    /// Structural checks that need no dictionary.
    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::config("k must be at least 1"));
        }
        if !self.m.is_power_of_two() {
            return Err(Error::config(format!("m = {} is not a power of 2", self.m)));
        }
        if self.offset && (self.m != 4 || self.scheme != SchemeKind::Sse) {
            return Err(Error::config("offset constellations need the sse scheme with m = 4"));
        }
        if self.partition.is_some() && self.scheme != SchemeKind::Sse {
            return Err(Error::config("an explicit partition only applies to the sse scheme"));
        }
        if let Some(p) = &self.partition {
            if p.len() != self.k {
                return Err(Error::config(format!(
                    "partition has {} sub-blocks but k = {}",
                    p.len(),
                    self.k
                )));
            }
        }
        Ok(())
    }

    pub fn build_dictionary(&self) -> Result<DictionaryMatrix> {
        let mut dict = match self.dict {
            DictionarySpec::Gold { n } => build_gold_dictionary(n)?,
            DictionarySpec::Mub { n } => build_mub_dictionary(n)?,
        };
        if let Some(cols) = self.columns {
            dict = dict.truncated(cols).map_err(|e| Error::config(e.to_string()))?;
        }
        if let Some(i) = self.identity_column {
            dict = dict.with_identity_column(i).map_err(|e| Error::config(e.to_string()))?;
        }
        Ok(dict)
    }

    /// Builds the code, with a gram matrix when it fits `budget`.
    pub fn build(&self, budget: GramBudget) -> Result<Code> {
        self.validate()?;
        self.build_with(Arc::new(self.build_dictionary()?), budget)
    }

    /// Builds the code on an existing dictionary (which must match `dict`).
    pub fn build_with(&self, dict: Arc<DictionaryMatrix>, budget: GramBudget) -> Result<Code> {
        self.validate()?;
        let l = dict.cols();
        let scheme = match self.scheme {
            SchemeKind::Sse => Scheme::Sse(match &self.partition {
                Some(sizes) => SubBlockPartition::from_sizes(l, sizes.clone())?,
                None => partition_subblocks(l, self.k)?,
            }),
            SchemeKind::Sfe => {
                if self.k > l {
                    return Err(Error::config(format!("cannot choose {} of {l} columns", self.k)));
                }
                Scheme::Sfe { k: self.k }
            }
        };
        let modulation = if self.offset {
            Modulation::PerBlock(make_offset_qpsk(self.k)?)
        } else {
            Modulation::Uniform(Constellation::psk(self.m, 0.0)?)
        };
        let code = Code::new(dict, scheme, modulation)?;
        Ok(code.with_gram_budget(budget))
    }
}

/// A code instance ready to encode and decode.
#[derive(Debug, Clone)]
pub struct Code {
    dict: Arc<DictionaryMatrix>,
    gram: Option<Arc<GramMatrix>>,
    scheme: Scheme,
    modulation: Modulation,
}

impl Code {
    pub fn new(dict: Arc<DictionaryMatrix>, scheme: Scheme, modulation: Modulation) -> Result<Self> {
        match (&scheme, &modulation) {
            (Scheme::Sfe { .. }, Modulation::PerBlock(_)) => {
                return Err(Error::config("per-block alphabets need the sse scheme"));
            }
            (Scheme::Sse(p), Modulation::PerBlock(v)) if v.len() != p.blocks() => {
                return Err(Error::config(format!(
                    "{} alphabets for {} sub-blocks",
                    v.len(),
                    p.blocks()
                )));
            }
            (Scheme::Sse(p), _) if p.total_columns() != dict.cols() => {
                return Err(Error::config(format!(
                    "partition covers {} columns but the dictionary has {}",
                    p.total_columns(),
                    dict.cols()
                )));
            }
            _ => {}
        }
        Ok(Code {
            dict,
            gram: None,
            scheme,
            modulation,
        })
    }

    /// Attaches a gram matrix if `L^2` fits the budget; otherwise decoders
    /// recompute correlations directly.
    pub fn with_gram_budget(mut self, budget: GramBudget) -> Self {
        match self.dict.gram(budget) {
            Ok(g) => self.gram = Some(Arc::new(g)),
            Err(e) => log::info!("{}: {e}; using direct correlation", self.dict.label()),
        }
        self
    }

    pub fn with_gram(mut self, gram: Option<Arc<GramMatrix>>) -> Self {
        self.gram = gram;
        self
    }

    /// Same dictionary and scheme, different alphabets (e.g. scaled by a
    /// channel gain).
    pub fn with_modulation(&self, modulation: Modulation) -> Result<Self> {
        Code::new(self.dict.clone(), self.scheme.clone(), modulation).map(|c| c.with_gram(self.gram.clone()))
    }

    pub fn dict(&self) -> &DictionaryMatrix {
        &self.dict
    }

    pub fn dict_arc(&self) -> &Arc<DictionaryMatrix> {
        &self.dict
    }

    pub fn gram(&self) -> Option<&GramMatrix> {
        self.gram.as_deref()
    }

    pub fn scheme(&self) -> &Scheme {
        &self.scheme
    }

    pub fn modulation(&self) -> &Modulation {
        &self.modulation
    }

    pub fn k(&self) -> usize {
        self.scheme.k()
    }

    /// Message length `N_b`.
    pub fn n_bits(&self) -> usize {
        match &self.scheme {
            Scheme::Sse(p) => sse_bit_budget(p, &self.modulation) as usize,
            Scheme::Sfe { k } => {
                sfe_bit_budget(self.dict.cols(), *k, self.modulation.for_block(0)) as usize
            }
        }
    }

    /// Column ranges a decoder scans, each with its alphabet.
    pub fn segments(&self) -> Vec<(Range<usize>, &Constellation)> {
        match &self.scheme {
            Scheme::Sse(p) => (0..p.blocks())
                .map(|k| (p.range(k), self.modulation.for_block(k)))
                .collect(),
            Scheme::Sfe { .. } => vec![(0..self.dict.cols(), self.modulation.for_block(0))],
        }
    }

    /// Alphabet used by `col`.
    pub fn constellation_of(&self, col: usize) -> Option<&Constellation> {
        match &self.scheme {
            Scheme::Sse(p) => p.block_of(col).map(|k| self.modulation.for_block(k)),
            Scheme::Sfe { .. } => (col < self.dict.cols()).then(|| self.modulation.for_block(0)),
        }
    }

    pub fn encode(&self, bits: &[bool]) -> Result<SparseCodeword> {
        match &self.scheme {
            Scheme::Sse(p) => sse_encode(bits, p, &self.modulation),
            Scheme::Sfe { k } => sfe_encode(bits, self.dict.cols(), *k, self.modulation.for_block(0)),
        }
    }

    pub fn decode_bits(&self, word: &SparseCodeword) -> Result<Vec<bool>> {
        match &self.scheme {
            Scheme::Sse(p) => sse_decode_bits(word, p, &self.modulation),
            Scheme::Sfe { .. } => sfe_decode_bits(word, self.dict.cols(), self.modulation.for_block(0)),
        }
    }

    /// Field of the transmitted signal: real only when both the dictionary
    /// and every symbol are real.
    pub fn signal_field(&self) -> Field {
        let real_symbols = (0..self.k().max(1))
            .all(|k| self.modulation.for_block(k).symbols().iter().all(|b| b.im == 0.0));
        if self.dict.field() == Field::Real && real_symbols {
            Field::Real
        } else {
            Field::Complex
        }
    }

    /// Real channel uses per block: `N` for a real signal, `2N` for complex.
    pub fn real_dimensions(&self) -> usize {
        match self.signal_field() {
            Field::Real => self.dict.rows(),
            Field::Complex => 2 * self.dict.rows(),
        }
    }

    pub fn partition(&self) -> Option<&SubBlockPartition> {
        match &self.scheme {
            Scheme::Sse(p) => Some(p),
            Scheme::Sfe { .. } => None,
        }
    }

    /// Message bit positions carried by each sub-block (SSE only).
    pub fn block_bit_ranges(&self) -> Option<Vec<Range<usize>>> {
        let p = self.partition()?;
        let mut start = 0;
        Some(
            (0..p.blocks())
                .map(|k| {
                    let len = sse_block_bits(p, &self.modulation, k) as usize;
                    start += len;
                    start - len..start
                })
                .collect(),
        )
    }
}
