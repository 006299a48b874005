//! Generalized sparse regression codes.
//!
//! A codeword is a sparse combination `s = A x` of columns of a dictionary
//! `A` (Gold codes or mutually unbiased bases), with the non-zero entries of
//! `x` drawn from a PSK alphabet. Messages select columns either one per
//! sub-block ([`encoding::sse_encode`]) or as any `K`-subset
//! ([`encoding::sfe_encode`]); greedy decoders recover them from noisy
//! observations ([`decoding`]); [`channel`] runs Monte-Carlo block error
//! rate estimates for single- and multi-user AWGN channels.
//!
//! ```
//! use gsparc::{CodeSpec, Decoder, GramBudget};
//!
//! let spec: CodeSpec = serde_json::from_str(
//!     r#"{"dict": {"kind": "mub", "n": 4}, "scheme": "sse", "k": 3, "m": 4}"#,
//! ).unwrap();
//! let code = spec.build(GramBudget::default()).unwrap();
//! let bits = vec![true; code.n_bits()];
//! let word = code.encode(&bits).unwrap();
//! let y = word.codeword(code.dict());
//! let decoded = Decoder::Mad.decode(&y, &code).unwrap();
//! assert_eq!(code.decode_bits(&decoded).unwrap(), bits);
//! ```

pub mod channel;
pub mod code;
pub mod decoding;
pub mod dictionary;
pub mod encoding;
pub mod error;
pub mod experiment;

pub use code::{Code, CodeSpec, Scheme};
pub use decoding::Decoder;
pub use dictionary::{DictionaryMatrix, Field, GramBudget, GramMatrix};
pub use encoding::{Constellation, Modulation, SparseCodeword, SubBlockPartition};
pub use error::{Error, Result};
