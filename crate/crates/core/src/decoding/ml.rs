use num_complex::Complex64;

use crate::code::Code;
use crate::encoding::SparseCodeword;
use crate::error::{Error, Result};

/// Exhaustive minimum-distance decoding of a one-sparse code: compares
/// `||y - b a_i||^2` for every selectable column and symbol. Ties go to the
/// lowest column, then the lowest symbol.
pub fn ml_decode_k1(y: &[Complex64], code: &Code) -> Result<SparseCodeword> {
    if code.k() != 1 {
        return Err(Error::invalid(format!("exhaustive decoding needs K = 1, got {}", code.k())));
    }
    let dict = code.dict();
    if y.len() != dict.rows() {
        return Err(Error::invalid(format!(
            "observation has {} samples, expected {}",
            y.len(),
            dict.rows()
        )));
    }
    let mut best: Option<(f64, usize, usize, Complex64)> = None;
    for (range, alphabet) in code.segments() {
        for col in range {
            let a = dict.column(col);
            for (m, &b) in alphabet.symbols().iter().enumerate() {
                let d: f64 = y.iter().zip(&a).map(|(yi, ai)| (yi - b * ai).norm_sqr()).sum();
                if best.is_none_or(|(bd, ..)| d < bd) {
                    best = Some((d, col, m, b));
                }
            }
        }
    }
    let (_, col, m, b) = best.ok_or_else(|| Error::invalid("code has no selectable column"))?;
    SparseCodeword::new(vec![(col, m, b)])
}
