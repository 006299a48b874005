//! Bit strings as `Vec<bool>`, most significant bit first.

use crate::error::{Error, Result};

/// Reads `bits` as a big-endian unsigned integer (at most 64 bits).
pub fn bits_to_u64(bits: &[bool]) -> u64 {
    debug_assert!(bits.len() <= 64);
    bits.iter().fold(0, |acc, &b| acc << 1 | u64::from(b))
}

/// Appends the low `width` bits of `value`, most significant first.
pub fn push_u64(out: &mut Vec<bool>, value: u64, width: u32) {
    out.extend((0..width).rev().map(|i| value >> i & 1 == 1));
}

/// Parses a hex string holding a `width`-bit big-endian value. The string
/// may be shorter than `ceil(width / 4)` digits; leading zeros are implied.
pub fn bits_from_hex(hex: &str, width: usize) -> Result<Vec<bool>> {
    let hex = hex.trim().trim_start_matches("0x");
    let mut bits = Vec::with_capacity(hex.len() * 4);
    for c in hex.chars() {
        let v = c
            .to_digit(16)
            .ok_or_else(|| Error::invalid(format!("'{c}' is not a hex digit")))?;
        push_u64(&mut bits, u64::from(v), 4);
    }
    if bits.len() < width {
        let mut padded = vec![false; width - bits.len()];
        padded.extend(bits);
        return Ok(padded);
    }
    let excess = bits.len() - width;
    if bits[..excess].iter().any(|&b| b) {
        return Err(Error::invalid(format!("hex value {hex} does not fit in {width} bits")));
    }
    Ok(bits[excess..].to_vec())
}

/// Formats bits as `ceil(len / 4)` lowercase hex digits (left zero-padded).
pub fn bits_to_hex(bits: &[bool]) -> String {
    let pad = (4 - bits.len() % 4) % 4;
    let padded: Vec<bool> = std::iter::repeat_n(false, pad).chain(bits.iter().copied()).collect();
    padded
        .chunks(4)
        .map(|c| std::char::from_digit(bits_to_u64(c) as u32, 16).unwrap())
        .collect()
}
