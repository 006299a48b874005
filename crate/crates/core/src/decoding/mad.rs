use num_complex::Complex64;

use super::state::{DecoderState, TraceStep};
use crate::code::Code;
use crate::encoding::SparseCodeword;
use crate::error::{Error, Result};

/// Match-and-decode: `K` greedy steps, each committing the column/symbol
/// pair with the largest match metric. `partial` entries are committed
/// first, in the order given.
pub fn mad_decode(
    y: &[Complex64],
    code: &Code,
    partial: Option<&SparseCodeword>,
) -> Result<SparseCodeword> {
    let mut state = DecoderState::new(code, y)?;
    if let Some(p) = partial {
        apply_partial(&mut state, code, p)?;
    }
    run_to_completion(&mut state, code, None);
    Ok(state.estimate())
}

/// [`mad_decode`] that also reports every decision.
pub fn mad_decode_traced(
    y: &[Complex64],
    code: &Code,
    partial: Option<&SparseCodeword>,
) -> Result<(SparseCodeword, Vec<TraceStep>)> {
    let mut state = DecoderState::new(code, y)?;
    if let Some(p) = partial {
        apply_partial(&mut state, code, p)?;
    }
    let mut trace = Vec::with_capacity(code.k());
    run_to_completion(&mut state, code, Some(&mut trace));
    Ok((state.estimate(), trace))
}

fn apply_partial(state: &mut DecoderState, code: &Code, partial: &SparseCodeword) -> Result<()> {
    if partial.len() >= code.k() {
        return Err(Error::invalid(format!(
            "partial estimate has {} entries; it must have fewer than K = {}",
            partial.len(),
            code.k()
        )));
    }
    for (col, m, _) in partial.entries() {
        state.apply(code, col, m)?;
    }
    Ok(())
}

/// Greedy steps until the estimate has `K` entries.
pub(crate) fn run_to_completion(
    state: &mut DecoderState,
    code: &Code,
    mut trace: Option<&mut Vec<TraceStep>>,
) {
    while state.t() < code.k() {
        let Some(best) = state.best_candidate(code) else {
            break;
        };
        state
            .apply(code, best.column, best.symbol)
            .expect("best candidate is selectable");
        if let Some(t) = trace.as_deref_mut() {
            t.push(TraceStep {
                column: best.column,
                symbol: best.symbol,
                metric: best.metric,
                residual_norm: state.residual_norm_sqr().sqrt(),
            });
        }
    }
}
