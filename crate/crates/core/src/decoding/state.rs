use num_complex::Complex64;
use serde::Serialize;

use crate::code::Code;
use crate::encoding::SparseCodeword;
use crate::error::{Error, Result};

/// A column/symbol pair and its match metric `Re{c conj(b)} - |b|^2 / 2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Candidate {
    pub column: usize,
    pub symbol: usize,
    pub metric: f64,
}

/// One greedy decision, as reported by traced decoding.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TraceStep {
    pub column: usize,
    pub symbol: usize,
    pub metric: f64,
    /// `||r||` after the decision.
    pub residual_norm: f64,
}

/// Working state of a greedy decoder after `t` decisions.
#[derive(Debug, Clone)]
pub struct DecoderState {
    residual: Vec<Complex64>,
    correlations: Vec<Complex64>,
    estimate: Vec<(usize, usize, Complex64)>,
    discarded: Vec<bool>,
}

impl DecoderState {
    /// Fresh state for observation `y`.
    pub fn new(code: &Code, y: &[Complex64]) -> Result<Self> {
        let dict = code.dict();
        if y.len() != dict.rows() {
            return Err(Error::invalid(format!(
                "observation has {} samples, expected {}",
                y.len(),
                dict.rows()
            )));
        }
        let mut c = vec![Complex64::new(0.0, 0.0); dict.cols()];
        dict.correlate(y, &mut c);
        Ok(Self::from_correlations(code, y, c))
    }

    /// Fresh state whose correlations `A^H y` are already known.
    pub fn from_correlations(code: &Code, y: &[Complex64], correlations: Vec<Complex64>) -> Self {
        let l = code.dict().cols();
        let mut discarded = vec![false; l];
        for d in discarded.iter_mut().skip(code.scheme().candidate_columns(l)) {
            *d = true;
        }
        DecoderState {
            residual: y.to_vec(),
            correlations,
            estimate: Vec::with_capacity(code.k()),
            discarded,
        }
    }

    /// Overwrites `self` with `other` without reallocating.
    pub fn copy_from(&mut self, other: &DecoderState) {
        self.residual.clone_from(&other.residual);
        self.correlations.clone_from(&other.correlations);
        self.estimate.clone_from(&other.estimate);
        self.discarded.clone_from(&other.discarded);
    }

    /// `r = y - A x_hat`.
    pub fn residual(&self) -> &[Complex64] {
        &self.residual
    }

    pub fn residual_norm_sqr(&self) -> f64 {
        self.residual.iter().map(|z| z.norm_sqr()).sum()
    }

    /// `<r, a_i>` for every column.
    pub fn correlations(&self) -> &[Complex64] {
        &self.correlations
    }

    /// Decisions so far, in detection order.
    pub fn decisions(&self) -> &[(usize, usize, Complex64)] {
        &self.estimate
    }

    /// Iteration counter `t`.
    pub fn t(&self) -> usize {
        self.estimate.len()
    }

    pub fn is_discarded(&self, col: usize) -> bool {
        self.discarded[col]
    }

    pub fn estimate(&self) -> SparseCodeword {
        SparseCodeword::new(self.estimate.clone()).expect("decisions use distinct columns")
    }

    /// Best column/symbol pair among columns not yet discarded. Ties go to
    /// the lowest column, then the lowest symbol.
    pub fn best_candidate(&self, code: &Code) -> Option<Candidate> {
        let mut best: Option<Candidate> = None;
        let mut best_metric = f64::NEG_INFINITY;
        for (range, alphabet) in code.segments() {
            let symbols = alphabet.symbols();
            let half = alphabet.half_energies();
            for col in range {
                if self.discarded[col] {
                    continue;
                }
                let c = self.correlations[col];
                for (m, (b, h)) in symbols.iter().zip(half).enumerate() {
                    let metric = c.re * b.re + c.im * b.im - h;
                    if metric > best_metric || best.is_none() {
                        best_metric = metric;
                        best = Some(Candidate {
                            column: col,
                            symbol: m,
                            metric,
                        });
                    }
                }
            }
        }
        best
    }

    /// Best symbol for each candidate column, in column order.
    pub fn column_candidates(&self, code: &Code) -> Vec<Candidate> {
        let mut out = Vec::new();
        for (range, alphabet) in code.segments() {
            let symbols = alphabet.symbols();
            let half = alphabet.half_energies();
            for col in range {
                if self.discarded[col] {
                    continue;
                }
                let c = self.correlations[col];
                let mut best = Candidate {
                    column: col,
                    symbol: 0,
                    metric: f64::NEG_INFINITY,
                };
                for (m, (b, h)) in symbols.iter().zip(half).enumerate() {
                    let metric = c.re * b.re + c.im * b.im - h;
                    if metric > best.metric {
                        best.symbol = m;
                        best.metric = metric;
                    }
                }
                out.push(best);
            }
        }
        out
    }

    /// Commits `(col, symbol)`: subtracts `b a_col` from the residual,
    /// updates the correlations and discards the columns the scheme rules
    /// out. Correlations follow the gram recursion when a gram matrix is
    /// attached and are recomputed from the residual otherwise.
    pub fn apply(&mut self, code: &Code, col: usize, symbol: usize) -> Result<()> {
        if col >= self.discarded.len() || self.discarded[col] {
            return Err(Error::invalid(format!(
                "column {col} is not selectable after {:?}",
                self.estimate.iter().map(|e| e.0).collect::<Vec<_>>()
            )));
        }
        let alphabet = code
            .constellation_of(col)
            .ok_or_else(|| Error::invalid(format!("column {col} is outside every sub-block")))?;
        if symbol >= alphabet.len() {
            return Err(Error::invalid(format!(
                "symbol {symbol} outside an alphabet of {}",
                alphabet.len()
            )));
        }
        let b = alphabet.symbol(symbol);
        code.dict().add_scaled_column(col, -b, &mut self.residual);
        match code.gram() {
            Some(g) => g.subtract_scaled_row(col, b, &mut self.correlations),
            None => code.dict().correlate(&self.residual, &mut self.correlations),
        }
        for d in &mut self.discarded[code.scheme().discard_range(col)] {
            *d = true;
        }
        self.estimate.push((col, symbol, b));
        Ok(())
    }
}
