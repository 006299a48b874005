//! Recovering sparse messages from noisy observations.

mod guarantee;
mod mad;
mod ml;
mod omp;
mod pmad;
mod state;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::code::Code;
use crate::encoding::SparseCodeword;
use crate::error::{Error, Result};

pub use guarantee::{check_recovery_guarantee, GuaranteeReport};
pub use mad::{mad_decode, mad_decode_traced};
pub use ml::ml_decode_k1;
pub use omp::omp_decode;
pub use pmad::{pmad_decode, top_seeds};
pub use state::{Candidate, DecoderState, TraceStep};

/// Paths used by `pmad` when no count is given.
pub const DEFAULT_PMAD_PATHS: usize = 16;

/// A decoding algorithm, written `mad`, `pmad-<T>`, `omp` or `ml`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Decoder {
    Mad,
    Pmad { paths: usize },
    Omp,
    /// Exhaustive search; one-sparse codes only.
    Ml,
}

impl Decoder {
    pub fn decode(&self, y: &[Complex64], code: &Code) -> Result<SparseCodeword> {
        match *self {
            Decoder::Mad => mad_decode(y, code, None),
            Decoder::Pmad { paths } => pmad_decode(y, code, paths),
            Decoder::Omp => omp_decode(y, code),
            Decoder::Ml => ml_decode_k1(y, code),
        }
    }
}

impl fmt::Display for Decoder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Decoder::Mad => f.write_str("mad"),
            Decoder::Pmad { paths } => write!(f, "pmad-{paths}"),
            Decoder::Omp => f.write_str("omp"),
            Decoder::Ml => f.write_str("ml"),
        }
    }
}

impl FromStr for Decoder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "mad" => Ok(Decoder::Mad),
            "omp" => Ok(Decoder::Omp),
            "ml" => Ok(Decoder::Ml),
            "pmad" => Ok(Decoder::Pmad {
                paths: DEFAULT_PMAD_PATHS,
            }),
            other => other
                .strip_prefix("pmad-")
                .and_then(|t| t.parse().ok())
                .filter(|&t: &usize| t > 0)
                .map(|paths| Decoder::Pmad { paths })
                .ok_or_else(|| {
                    Error::config(format!("unknown decoder '{s}'; expected mad, pmad-<T>, omp or ml"))
                }),
        }
    }
}
