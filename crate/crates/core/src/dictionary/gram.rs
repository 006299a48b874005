use std::collections::HashMap;

use num_complex::Complex64;

use super::DictionaryMatrix;
use crate::error::{Error, Result};

/// Upper bound on the number of `L x L` gram entries a caller will accept.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GramBudget {
    pub max_entries: u64,
}

impl Default for GramBudget {
    /// 2^26 entries: enough for `mub(6)` (`L = 4096`), not for `gold(7)`.
    fn default() -> Self {
        GramBudget { max_entries: 1 << 26 }
    }
}

impl GramBudget {
    pub fn allows(&self, cols: usize) -> bool {
        (cols as u128) * (cols as u128) <= u128::from(self.max_entries)
    }
}

#[derive(Debug, Clone)]
enum Storage {
    /// Structured dictionaries have few distinct inner products, so entries
    /// are stored as indices into a value table.
    Palette { values: Vec<Complex64>, codes: Vec<u16> },
    Dense(Vec<Complex64>),
}

/// `G[p][q] = <a_p, a_q> = a_q^H a_p`, stored row-major.
#[derive(Debug, Clone)]
pub struct GramMatrix {
    size: usize,
    storage: Storage,
}

impl GramMatrix {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, p: usize, q: usize) -> Complex64 {
        let i = p * self.size + q;
        match &self.storage {
            Storage::Palette { values, codes } => values[codes[i] as usize],
            Storage::Dense(v) => v[i],
        }
    }

    /// Number of distinct stored values, if palette-compressed.
    pub fn distinct_values(&self) -> Option<usize> {
        match &self.storage {
            Storage::Palette { values, .. } => Some(values.len()),
            Storage::Dense(_) => None,
        }
    }

    /// `c[i] -= b * G[p][i]` for every `i`.
    ///
    /// With `c[i] = <r, a_i>` this turns the correlations of `r` into those
    /// of `r - b a_p`.
    #[inline]
    pub fn subtract_scaled_row(&self, p: usize, b: Complex64, c: &mut [Complex64]) {
        let row = p * self.size..(p + 1) * self.size;
        match &self.storage {
            Storage::Palette { values, codes } => {
                let scaled: Vec<Complex64> = values.iter().map(|v| b * v).collect();
                for (ci, &code) in c.iter_mut().zip(&codes[row]) {
                    *ci -= scaled[code as usize];
                }
            }
            Storage::Dense(v) => {
                for (ci, g) in c.iter_mut().zip(&v[row]) {
                    *ci -= b * g;
                }
            }
        }
    }
}

impl DictionaryMatrix {
    /// Materializes the gram matrix, refusing when `L^2` exceeds `budget`.
    pub fn gram(&self, budget: GramBudget) -> Result<GramMatrix> {
        let size = self.cols();
        if !budget.allows(size) {
            return Err(Error::GramBudget {
                entries: (size as u128) * (size as u128),
                budget: u128::from(budget.max_entries),
            });
        }
        let mut values: Vec<Complex64> = Vec::new();
        let mut index: HashMap<(u64, u64), u16> = HashMap::new();
        let mut codes = vec![0u16; size * size];
        let mut dense: Option<Vec<Complex64>> = None;
        for p in 0..size {
            for q in p..size {
                let v = if p == q { Complex64::new(1.0, 0.0) } else { self.inner(p, q) };
                let pairs = [(p * size + q, v), (q * size + p, v.conj())];
                for (i, v) in pairs {
                    if let Some(d) = dense.as_mut() {
                        d[i] = v;
                        continue;
                    }
                    let key = (v.re.to_bits(), v.im.to_bits());
                    let code = match index.get(&key) {
                        Some(&c) => Some(c),
                        None if values.len() < usize::from(u16::MAX) => {
                            let c = values.len() as u16;
                            values.push(v);
                            index.insert(key, c);
                            Some(c)
                        }
                        None => None,
                    };
                    match code {
                        Some(c) => codes[i] = c,
                        None => {
                            // Too many distinct values; expand what we have so far.
                            let mut d: Vec<Complex64> =
                                codes.iter().map(|&c| values[c as usize]).collect();
                            d[i] = v;
                            dense = Some(d);
                        }
                    }
                }
            }
        }
        let storage = match dense {
            Some(d) => Storage::Dense(d),
            None => Storage::Palette { values, codes },
        };
        Ok(GramMatrix { size, storage })
    }
}
