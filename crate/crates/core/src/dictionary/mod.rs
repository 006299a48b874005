//! Dictionary matrices with unit-norm columns.
//!
//! Columns are stored column-major as split real/imaginary planes. Real
//! dictionaries (Gold) keep no imaginary plane, which halves the cost of
//! correlating against a complex observation. Columns drawn from the
//! quarter-phase alphabet `{±1, ±j}/sqrt(N)` additionally carry bit-packed
//! phase codes so that their pairwise inner products are computed exactly.

mod gf2n;
mod gold;
mod gram;
mod mub;
mod packed;

use std::collections::HashMap;
use std::io::Write;
use std::ops::Range;
use std::sync::OnceLock;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use packed::PhaseCodes;

pub use gf2n::Gf2n;
pub use gold::{build_gold_dictionary, gold_sequences, gold_t, m_sequence, SUPPORTED_GOLD_DEGREES};
pub use gram::{GramBudget, GramMatrix};
pub use mub::{build_mub_dictionary, MubPhaseReport, SUPPORTED_MUB_DEGREES};

/// Scalar field of the dictionary entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Real,
    Complex,
}

/// Construction family of a dictionary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum DictionaryKind {
    Gold { n: u32 },
    Mub { n: u32 },
    Custom,
}

/// One distinct pairwise inner-product value and how often it occurs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CensusEntry {
    pub value: Complex64,
    pub count: u64,
}

/// An `N x L` matrix with unit Euclidean norm columns.
#[derive(Debug, Clone)]
pub struct DictionaryMatrix {
    kind: DictionaryKind,
    label: String,
    rows: usize,
    cols: usize,
    re: Vec<f64>,
    im: Option<Vec<f64>>,
    codes: Option<PhaseCodes>,
    coherence: OnceLock<f64>,
}

impl DictionaryMatrix {
    /// Builds a dictionary from column-major data, normalizing every column.
    ///
    /// `im` may be omitted for a real dictionary. Zero columns are rejected.
    pub fn from_columns(rows: usize, re: Vec<f64>, im: Option<Vec<f64>>) -> Result<Self> {
        if rows == 0 || re.is_empty() || re.len() % rows != 0 {
            return Err(Error::invalid(format!(
                "data length {} is not a positive multiple of {rows} rows",
                re.len()
            )));
        }
        if let Some(im) = &im {
            if im.len() != re.len() {
                return Err(Error::invalid("real and imaginary planes differ in length"));
            }
        }
        let cols = re.len() / rows;
        let mut dict = DictionaryMatrix {
            kind: DictionaryKind::Custom,
            label: "custom".into(),
            rows,
            cols,
            re,
            im,
            codes: None,
            coherence: OnceLock::new(),
        };
        for j in 0..cols {
            let norm = dict.column_norm_sq(j).sqrt();
            if !norm.is_finite() || norm <= 0.0 {
                return Err(Error::invalid(format!("column {j} has zero or non-finite norm")));
            }
            let r = j * rows..(j + 1) * rows;
            dict.re[r.clone()].iter_mut().for_each(|x| *x /= norm);
            if let Some(im) = dict.im.as_mut() {
                im[r].iter_mut().for_each(|x| *x /= norm);
            }
        }
        Ok(dict)
    }

    /// Internal constructor for phase-coded families; `exponents` yields
    /// one column of `i^k` exponents at a time.
    pub(crate) fn from_phase_columns<I, C>(
        kind: DictionaryKind,
        rows: usize,
        field: Field,
        columns: I,
    ) -> Self
    where
        I: IntoIterator<Item = C>,
        C: AsRef<[u8]>,
    {
        let scale = 1.0 / (rows as f64).sqrt();
        let mut re = Vec::new();
        let mut im = Vec::new();
        let mut codes = PhaseCodes::new(rows);
        for col in columns {
            let col = col.as_ref();
            debug_assert_eq!(col.len(), rows);
            for &k in col {
                let (r, i) = match k & 3 {
                    0 => (scale, 0.0),
                    1 => (0.0, scale),
                    2 => (-scale, 0.0),
                    _ => (0.0, -scale),
                };
                re.push(r);
                im.push(i);
            }
            codes.push(col.iter().copied());
        }
        let cols = re.len() / rows;
        DictionaryMatrix {
            kind,
            label: match kind {
                DictionaryKind::Gold { n } => format!("gold({n})"),
                DictionaryKind::Mub { n } => format!("mub({n})"),
                DictionaryKind::Custom => "custom".into(),
            },
            rows,
            cols,
            re,
            im: (field == Field::Complex).then_some(im),
            codes: Some(codes),
            coherence: OnceLock::new(),
        }
    }

    /// Appends the standard basis vector `e_index`.
    ///
    /// Against a quarter-phase column its inner product has magnitude
    /// `1/sqrt(N)`, so the coherence of Gold and MUB dictionaries is unchanged.
    pub fn with_identity_column(mut self, index: usize) -> Result<Self> {
        if index >= self.rows {
            return Err(Error::invalid(format!(
                "identity column e_{index} does not exist for N = {}",
                self.rows
            )));
        }
        let start = self.re.len();
        self.re.resize(start + self.rows, 0.0);
        self.re[start + index] = 1.0;
        if let Some(im) = self.im.as_mut() {
            im.resize(start + self.rows, 0.0);
        }
        if let Some(codes) = self.codes.as_mut() {
            codes.push_uncoded();
        }
        self.cols += 1;
        self.label.push_str(&format!("+e{index}"));
        self.coherence = OnceLock::new();
        Ok(self)
    }

    /// Keeps only the first `cols` columns.
    pub fn truncated(mut self, cols: usize) -> Result<Self> {
        if cols == 0 || cols > self.cols {
            return Err(Error::invalid(format!(
                "cannot keep {cols} of {} columns",
                self.cols
            )));
        }
        if cols < self.cols {
            self.re.truncate(cols * self.rows);
            if let Some(im) = self.im.as_mut() {
                im.truncate(cols * self.rows);
            }
            if let Some(codes) = self.codes.as_mut() {
                codes.truncate(cols);
            }
            self.label.push_str(&format!("[..{cols}]"));
            self.cols = cols;
            self.coherence = OnceLock::new();
        }
        Ok(self)
    }

    pub fn kind(&self) -> DictionaryKind {
        self.kind
    }

    /// Human-readable description, e.g. `mub(4)+e0` or `mub(6)[..512]`.
    pub fn label(&self) -> &str {
        &self.label
    }

    /// Column length `N`.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns `L`.
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        if self.im.is_some() {
            Field::Complex
        } else {
            Field::Real
        }
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        let i = col * self.rows + row;
        Complex64::new(self.re[i], self.im.as_ref().map_or(0.0, |im| im[i]))
    }

    pub fn column(&self, col: usize) -> Vec<Complex64> {
        (0..self.rows).map(|n| self.entry(n, col)).collect()
    }

    fn column_norm_sq(&self, col: usize) -> f64 {
        let r = col * self.rows..(col + 1) * self.rows;
        let mut s: f64 = self.re[r.clone()].iter().map(|x| x * x).sum();
        if let Some(im) = &self.im {
            s += im[r].iter().map(|x| x * x).sum::<f64>();
        }
        s
    }

    /// `<y, a_col> = a_col^H y`.
    #[inline]
    pub fn correlate_column(&self, col: usize, y: &[Complex64]) -> Complex64 {
        debug_assert_eq!(y.len(), self.rows);
        let r = col * self.rows..(col + 1) * self.rows;
        let re = &self.re[r.clone()];
        match &self.im {
            None => {
                let (mut sr, mut si) = (0.0, 0.0);
                for (a, v) in re.iter().zip(y) {
                    sr += a * v.re;
                    si += a * v.im;
                }
                Complex64::new(sr, si)
            }
            Some(im) => {
                let im = &im[r];
                let (mut sr, mut si) = (0.0, 0.0);
                for ((ar, ai), v) in re.iter().zip(im).zip(y) {
                    sr += ar * v.re + ai * v.im;
                    si += ar * v.im - ai * v.re;
                }
                Complex64::new(sr, si)
            }
        }
    }

    /// Writes `A^H y` into `out` (length `L`).
    pub fn correlate(&self, y: &[Complex64], out: &mut [Complex64]) {
        debug_assert_eq!(out.len(), self.cols);
        for (j, c) in out.iter_mut().enumerate() {
            *c = self.correlate_column(j, y);
        }
    }

    /// `acc += b * a_col`.
    #[inline]
    pub fn add_scaled_column(&self, col: usize, b: Complex64, acc: &mut [Complex64]) {
        let r = col * self.rows..(col + 1) * self.rows;
        let re = &self.re[r.clone()];
        match &self.im {
            None => {
                for (a, v) in re.iter().zip(acc.iter_mut()) {
                    v.re += b.re * a;
                    v.im += b.im * a;
                }
            }
            Some(im) => {
                for ((ar, ai), v) in re.iter().zip(&im[r]).zip(acc.iter_mut()) {
                    *v += b * Complex64::new(*ar, *ai);
                }
            }
        }
    }

    /// `sum_k values[k] * a_{support[k]}`, accumulated in the given order.
    pub fn synthesize(&self, support: &[usize], values: &[Complex64]) -> Vec<Complex64> {
        let mut s = vec![Complex64::new(0.0, 0.0); self.rows];
        for (&col, &b) in support.iter().zip(values) {
            self.add_scaled_column(col, b, &mut s);
        }
        s
    }

    /// `<a_p, a_q> = a_q^H a_p`. Exact for pairs of phase-coded columns.
    pub fn inner(&self, p: usize, q: usize) -> Complex64 {
        if let Some(codes) = &self.codes {
            if codes.is_coded(p) && codes.is_coded(q) {
                let (re, im) = codes.inner_scaled(p, q);
                let n = self.rows as f64;
                return Complex64::new(re as f64 / n, im as f64 / n);
            }
        }
        let r = p * self.rows..(p + 1) * self.rows;
        self.correlate_column(q, &self.column_slice_complex(r))
    }

    fn column_slice_complex(&self, r: Range<usize>) -> Vec<Complex64> {
        match &self.im {
            None => self.re[r].iter().map(|&x| Complex64::new(x, 0.0)).collect(),
            Some(im) => self.re[r.clone()]
                .iter()
                .zip(&im[r])
                .map(|(&a, &b)| Complex64::new(a, b))
                .collect(),
        }
    }

    /// Mutual coherence: the largest `|<a_p, a_q>|` over distinct columns.
    ///
    /// Computed exactly over all pairs on first use and cached.
    pub fn coherence(&self) -> f64 {
        *self.coherence.get_or_init(|| {
            self.correlation_census(0..self.cols)
                .iter()
                .map(|e| e.value.norm())
                .fold(0.0, f64::max)
        })
    }

    /// Distinct values of `<a_p, a_q>` over pairs `p < q` in `cols`, with counts.
    ///
    /// Values of dense (non phase-coded) pairs are merged when they agree
    /// to within 1e-9. Entries are sorted by real then imaginary part.
    pub fn correlation_census(&self, cols: Range<usize>) -> Vec<CensusEntry> {
        assert!(cols.end <= self.cols);
        let width = 2 * self.rows + 1;
        let n = self.rows as i64;
        let merged = cols
            .clone()
            .into_par_iter()
            .fold(
                || (vec![0u64; width * width], HashMap::<(i64, i64), (Complex64, u64)>::new()),
                |(mut exact, mut dense), p| {
                    for q in p + 1..cols.end {
                        match self.coded_pair(p, q) {
                            Some((re, im)) => {
                                exact[((re + n) as usize) * width + (im + n) as usize] += 1;
                            }
                            None => {
                                let v = self.inner(p, q);
                                let key = ((v.re * 1e9).round() as i64, (v.im * 1e9).round() as i64);
                                let e = dense.entry(key).or_insert((v, 0));
                                e.1 += 1;
                                if (v.re, v.im) < (e.0.re, e.0.im) {
                                    e.0 = v;
                                }
                            }
                        }
                    }
                    (exact, dense)
                },
            )
            .reduce(
                || (vec![0u64; width * width], HashMap::new()),
                |(mut ea, mut da), (eb, db)| {
                    ea.iter_mut().zip(&eb).for_each(|(a, b)| *a += b);
                    for (k, (v, c)) in db {
                        let e = da.entry(k).or_insert((v, 0));
                        e.1 += c;
                        if (v.re, v.im) < (e.0.re, e.0.im) {
                            e.0 = v;
                        }
                    }
                    (ea, da)
                },
            );
        let (exact, dense) = merged;
        let mut by_key: HashMap<(i64, i64), CensusEntry> = HashMap::new();
        for (i, &count) in exact.iter().enumerate().filter(|(_, &c)| c > 0) {
            let re = (i / width) as i64 - n;
            let im = (i % width) as i64 - n;
            let value = Complex64::new(re as f64 / self.rows as f64, im as f64 / self.rows as f64);
            let key = ((value.re * 1e9).round() as i64, (value.im * 1e9).round() as i64);
            by_key.insert(key, CensusEntry { value, count });
        }
        for (key, (value, count)) in dense {
            by_key
                .entry(key)
                .and_modify(|e| e.count += count)
                .or_insert(CensusEntry { value, count });
        }
        let mut out: Vec<CensusEntry> = by_key.into_values().collect();
        out.sort_by(|a, b| {
            (a.value.re, a.value.im)
                .partial_cmp(&(b.value.re, b.value.im))
                .unwrap()
        });
        out
    }

    fn coded_pair(&self, p: usize, q: usize) -> Option<(i64, i64)> {
        let codes = self.codes.as_ref()?;
        (codes.is_coded(p) && codes.is_coded(q)).then(|| codes.inner_scaled(p, q))
    }

    /// Distinct entry values of the matrix (e.g. `{±1/sqrt(N)}` for Gold).
    pub fn entry_alphabet(&self) -> Vec<Complex64> {
        let mut seen: Vec<Complex64> = Vec::new();
        for col in 0..self.cols {
            for row in 0..self.rows {
                let v = self.entry(row, col);
                if !seen.iter().any(|s| (s - v).norm() < 1e-12) {
                    seen.push(v);
                }
            }
        }
        seen.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
        seen
    }

    /// Dumps the matrix row-major as little-endian `f64` (real) or
    /// `(re, im)` `f64` pairs (complex).
    pub fn write_binary<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        for row in 0..self.rows {
            for col in 0..self.cols {
                let v = self.entry(row, col);
                w.write_all(&v.re.to_le_bytes())?;
                if self.im.is_some() {
                    w.write_all(&v.im.to_le_bytes())?;
                }
            }
        }
        Ok(())
    }
}
