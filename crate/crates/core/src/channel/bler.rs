use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use super::awgn::{awgn, ChannelConfig};
use super::engine::{run_trials, trial_rng, TrialBudget};
use super::stats::PairedComparison;
use crate::code::Code;
use crate::decoding::Decoder;
use crate::encoding::SparseCodeword;
use crate::error::{Error, Result};

/// One simulated transmission: message, sparse signal and observation.
#[derive(Debug, Clone)]
pub struct Trial {
    pub bits: Vec<bool>,
    pub word: SparseCodeword,
    pub y: Vec<Complex64>,
}

/// Draws trial `trial` of the stream `seed`: message bits first, then noise.
pub fn draw_trial(code: &Code, seed: u64, trial: u64, ebn0_db: f64) -> Result<Trial> {
    let mut rng = trial_rng(seed, trial);
    let bits: Vec<bool> = (0..code.n_bits()).map(|_| rng.random()).collect();
    let word = code.encode(&bits)?;
    let y = awgn(&word.codeword(code.dict()), &ChannelConfig::for_code(code, ebn0_db), &mut rng);
    Ok(Trial { bits, word, y })
}

/// Whether decoding `y` fails to reproduce `bits`. Invalid estimates (e.g.
/// a combination outside the message range) count as failures.
pub(crate) fn block_error(code: &Code, decoder: Decoder, y: &[Complex64], bits: &[bool]) -> bool {
    decoder
        .decode(y, code)
        .and_then(|w| code.decode_bits(&w))
        .map_or(true, |b| b != bits)
}

/// Results of several decoders on shared trials at one Eb/N0 point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointResult {
    pub ebn0_db: f64,
    pub trials: u64,
    /// Block errors per decoder.
    pub errors: Vec<u64>,
    /// Bit `d` of entry `t` is set when decoder `d` failed on trial `t`.
    #[serde(skip)]
    pub outcomes: Vec<u64>,
}

impl PointResult {
    pub fn bler(&self, decoder: usize) -> f64 {
        self.errors[decoder] as f64 / self.trials as f64
    }

    /// Trial-by-trial comparison testing whether decoder `worse` fails more
    /// often than decoder `better`.
    pub fn compare(&self, better: usize, worse: usize) -> PairedComparison {
        let (mut only_worse, mut only_better) = (0, 0);
        for &o in &self.outcomes {
            match (o >> better & 1 == 1, o >> worse & 1 == 1) {
                (false, true) => only_worse += 1,
                (true, false) => only_better += 1,
                _ => {}
            }
        }
        PairedComparison::new(only_worse, only_better)
    }
}

/// Monte-Carlo block error rates of `decoders` on `code` at each Eb/N0.
///
/// All decoders see the same trials, which makes their comparison paired. A
/// point stops early once every decoder has `max_errors` block errors.
pub fn run_bler(
    code: &Code,
    decoders: &[Decoder],
    sweep: &[f64],
    budget: TrialBudget,
    seed: u64,
) -> Result<Vec<PointResult>> {
    if decoders.is_empty() || decoders.len() > 64 {
        return Err(Error::config("between 1 and 64 decoders can share a run"));
    }
    if decoders.contains(&Decoder::Ml) && code.k() != 1 {
        return Err(Error::config("the exhaustive decoder needs K = 1"));
    }
    let mut points = Vec::with_capacity(sweep.len());
    for &ebn0_db in sweep {
        let outcomes = run_trials(budget, decoders.len(), |t| {
            let trial = draw_trial(code, seed, t, ebn0_db).expect("message has the code's length");
            decoders
                .iter()
                .map(|&d| block_error(code, d, &trial.y, &trial.bits))
                .collect()
        });
        points.push(summarize(ebn0_db, decoders.len(), &outcomes));
    }
    Ok(points)
}

fn summarize(ebn0_db: f64, decoders: usize, outcomes: &[Vec<bool>]) -> PointResult {
    let mut errors = vec![0; decoders];
    let packed = outcomes
        .iter()
        .map(|o| {
            o.iter().enumerate().fold(0u64, |acc, (d, &e)| {
                errors[d] += u64::from(e);
                acc | u64::from(e) << d
            })
        })
        .collect();
    PointResult {
        ebn0_db,
        trials: outcomes.len() as u64,
        errors,
        outcomes: packed,
    }
}
