use num_complex::Complex64;

use super::mad::run_to_completion;
use super::state::{Candidate, DecoderState};
use crate::code::Code;
use crate::encoding::SparseCodeword;
use crate::error::Result;

/// Parallel match-and-decode with `t` paths.
///
/// Path `n` starts from the `n`-th best first-step column (each paired with
/// its best symbol) and continues as plain MAD. The path with the smallest
/// final residual wins; ties go to the better-ranked seed. `t` is clamped to
/// the number of selectable columns.
pub fn pmad_decode(y: &[Complex64], code: &Code, t: usize) -> Result<SparseCodeword> {
    let root = DecoderState::new(code, y)?;
    let seeds = top_seeds(&root, code, t);
    let mut work = root.clone();
    let mut best: Option<(f64, SparseCodeword)> = None;
    for seed in seeds {
        work.copy_from(&root);
        work.apply(code, seed.column, seed.symbol)?;
        run_to_completion(&mut work, code, None);
        let dist = work.residual_norm_sqr();
        if best.as_ref().is_none_or(|(d, _)| dist < *d) {
            best = Some((dist, work.estimate()));
        }
    }
    Ok(best.map(|b| b.1).unwrap_or_else(SparseCodeword::empty))
}

/// The `t` best first-step columns, best first; equal metrics keep column
/// order.
pub fn top_seeds(root: &DecoderState, code: &Code, t: usize) -> Vec<Candidate> {
    let mut cands = root.column_candidates(code);
    let clamped = t.clamp(1, cands.len().max(1));
    if clamped != t {
        log::warn!("path count {t} clamped to {clamped}");
    }
    let order = |a: &Candidate, b: &Candidate| {
        b.metric
            .total_cmp(&a.metric)
            .then(a.column.cmp(&b.column))
    };
    if clamped < cands.len() {
        cands.select_nth_unstable_by(clamped - 1, order);
        cands.truncate(clamped);
    }
    cands.sort_by(order);
    cands
}
