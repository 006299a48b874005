//! Lexicographic ranking of `K`-subsets of `{0, .., L-1}` without tables.
//!
//! Combinations starting with object `i` occupy the index window
//! `[C(L,K) - C(L-i,K), C(L,K) - C(L-i-1,K))`. Unranking finds the first
//! object from a closed-form upper bound on `i`, then walks down until the
//! exact window contains `d`, and recurses on the remaining objects.

use num_bigint::BigUint;
use num_integer::binomial;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A message as a non-negative integer of a fixed bit width.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MessageIndex {
    value: BigUint,
    width: u32,
}

impl MessageIndex {
    pub fn new(value: BigUint, width: u32) -> Result<Self> {
        if value.bits() > u64::from(width) {
            return Err(Error::invalid(format!(
                "value needs {} bits but the width is {width}",
                value.bits()
            )));
        }
        Ok(MessageIndex { value, width })
    }

    /// Big-endian bits.
    pub fn from_bits(bits: &[bool]) -> Self {
        let mut value = BigUint::zero();
        for &b in bits {
            value <<= 1u32;
            if b {
                value += 1u32;
            }
        }
        MessageIndex {
            value,
            width: bits.len() as u32,
        }
    }

    pub fn to_bits(&self) -> Vec<bool> {
        (0..self.width)
            .rev()
            .map(|i| self.value.bit(u64::from(i)))
            .collect()
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn width(&self) -> u32 {
        self.width
    }
}

pub fn binom(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    binomial(BigUint::from(n), BigUint::from(k))
}

/// `floor(log2 C(L, K))`: the number of index bits usable for `K` of `L`.
pub fn combination_index_bits(l: usize, k: usize) -> u32 {
    let c = binom(l, k);
    (c.bits().max(1) - 1) as u32
}

/// `d / total` in double precision, for `d < total` of any size.
fn ratio(d: &BigUint, total: &BigUint) -> f64 {
    let shift = total.bits().saturating_sub(60);
    let num = (d >> shift).to_f64().unwrap_or(0.0);
    let den = (total >> shift).to_f64().unwrap_or(1.0);
    num / den
}

/// Per-level record of an unranking.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct UnrankTrace {
    /// Upper-bound estimate of the first remaining object, relative to the
    /// sub-problem.
    pub estimates: Vec<usize>,
    /// The exact first object, relative to the sub-problem.
    pub exact: Vec<usize>,
    /// Times the estimate was stepped down before the window held.
    pub decrements: Vec<usize>,
    /// Times it had to be stepped up (a floating-point underestimate).
    pub increments: usize,
}

/// The `d`-th `K`-combination of `{0, .., L-1}` in lexicographic order.
pub fn sfe_unrank(d: &BigUint, l: usize, k: usize) -> Result<Vec<usize>> {
    sfe_unrank_traced(d, l, k).map(|(c, _)| c)
}

pub fn sfe_unrank_traced(d: &BigUint, l: usize, k: usize) -> Result<(Vec<usize>, UnrankTrace)> {
    if k == 0 || k > l {
        return Err(Error::invalid(format!("cannot choose {k} of {l} objects")));
    }
    let total = binom(l, k);
    if *d >= total {
        return Err(Error::invalid(format!("index {d} out of range for C({l},{k}) = {total}")));
    }
    let mut out = Vec::with_capacity(k);
    let mut trace = UnrankTrace::default();
    let (mut l, mut k, mut d, mut total) = (l, k, d.clone(), total);
    let mut base = 0;
    while k > 0 {
        let r = ratio(&d, &total);
        let l_bar = l as f64 - (k as f64 - 1.0) / 2.0;
        // The nudge keeps rounding error from pushing an exact integer bound
        // below itself; overshooting only costs an extra decrement.
        let est = (l_bar * (1.0 - (1.0 - r).powf(1.0 / k as f64)) + 1e-9).floor();
        let est = if est.is_finite() && est > 0.0 { est as usize } else { 0 };
        let est = est.min(l - k);
        trace.estimates.push(est);

        let window_start = |i: usize| &total - binom(l - i, k);
        let mut i = est;
        let mut start = window_start(i);
        let mut decrements = 0;
        while start > d {
            i -= 1;
            decrements += 1;
            start = window_start(i);
        }
        loop {
            let next = window_start(i + 1);
            if d < next {
                break;
            }
            i += 1;
            trace.increments += 1;
            start = next;
        }
        trace.decrements.push(decrements);
        trace.exact.push(i);
        out.push(base + i);

        d -= start;
        base += i + 1;
        l -= i + 1;
        k -= 1;
        total = binom(l, k);
    }
    Ok((out, trace))
}

/// Lexicographic index of a strictly increasing `K`-combination.
pub fn sfe_rank(combination: &[usize], l: usize) -> Result<BigUint> {
    let k = combination.len();
    if k == 0 || k > l {
        return Err(Error::invalid(format!("cannot rank {k} of {l} objects")));
    }
    if combination.windows(2).any(|w| w[0] >= w[1]) || combination[k - 1] >= l {
        return Err(Error::invalid(format!(
            "{combination:?} is not a strictly increasing subset of 0..{l}"
        )));
    }
    let mut d = binom(l, k);
    for (j, &b) in combination[..k - 1].iter().enumerate() {
        d -= binom(l - b - 1, k - j);
    }
    d -= BigUint::from(l - combination[k - 1]);
    Ok(d)
}

/// Rank as a `MessageIndex` of the given width.
pub fn sfe_rank_index(combination: &[usize], l: usize, width: u32) -> Result<MessageIndex> {
    MessageIndex::new(sfe_rank(combination, l)?, width)
}
