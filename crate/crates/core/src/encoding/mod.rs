//! Message bits to sparse codewords and back.

mod bits;
mod codeword;
mod combinatorics;
mod constellation;
mod partition;
mod sfe;
mod sse;

pub use bits::{bits_from_hex, bits_to_hex, bits_to_u64, push_u64};
pub use codeword::SparseCodeword;
pub use combinatorics::{
    binom, combination_index_bits, sfe_rank, sfe_rank_index, sfe_unrank, sfe_unrank_traced,
    MessageIndex, UnrankTrace,
};
pub use constellation::{make_offset_qpsk, Constellation, Modulation};
pub use partition::{partition_subblocks, SubBlockPartition};
pub use sfe::{sfe_bit_budget, sfe_decode_bits, sfe_encode};
pub use sse::{sse_bit_budget, sse_block_bits, sse_decode_bits, sse_encode, sse_encode_blocks};
