//! Mutually unbiased bases for `N = 2^n`.
//!
//! Basis `a in GF(2^n)` has vectors indexed by `b in {0,1}^n` with entries
//! `i^(Q_a(x) + 2 b.x) / sqrt(N)`, where `Q_a(x) = x^T S_a x (mod 4)` is
//! evaluated over the integers and `S_a[i][j] = Tr(a w_i w_j)` for the
//! polynomial basis `w_i = x^i`. Because `a -> S_a` is linear and the
//! trace form is non-degenerate, `S_a + S_a'` is invertible for `a != a'`,
//! which makes every cross-basis Gauss sum have magnitude `sqrt(N)`.

use num_complex::Complex64;
use serde::Serialize;

use super::{DictionaryKind, DictionaryMatrix, Field, Gf2n};
use crate::error::{Error, Result};

pub const SUPPORTED_MUB_DEGREES: std::ops::RangeInclusive<u32> = 2..=9;

/// Largest `N` whose cross-basis phases are verified during construction.
const AUTO_PHASE_CHECK_MAX_N: usize = 64;

/// `N` MUB of dimension `N = 2^n`, concatenated: `L = N^2`.
///
/// Column `a*N + b` is vector `b` of basis `a`; basis 0 is the Hadamard basis.
pub fn build_mub_dictionary(n: u32) -> Result<DictionaryMatrix> {
    let field = Gf2n::new(n).filter(|_| SUPPORTED_MUB_DEGREES.contains(&n)).ok_or_else(|| {
        Error::config(format!(
            "MUB dictionary needs N = 2^n with n in {}..={}; got n = {n}",
            SUPPORTED_MUB_DEGREES.start(),
            SUPPORTED_MUB_DEGREES.end()
        ))
    })?;
    let dim = 1usize << n;
    let nu = n as usize;
    let mut columns = Vec::with_capacity(dim * dim);
    for a in 0..dim as u32 {
        let form: Vec<Vec<u32>> = (0..nu)
            .map(|i| {
                (0..nu)
                    .map(|j| field.trace(field.mul(a, field.mul(1 << i, 1 << j))))
                    .collect()
            })
            .collect();
        let quad: Vec<u8> = (0..dim)
            .map(|x| {
                let mut q = 0u32;
                for i in (0..nu).filter(|i| x >> i & 1 == 1) {
                    q += form[i][i];
                    for j in (i + 1..nu).filter(|j| x >> j & 1 == 1) {
                        q += 2 * form[i][j];
                    }
                }
                (q % 4) as u8
            })
            .collect();
        for b in 0..dim {
            columns.push(
                (0..dim)
                    .map(|x| (quad[x] + 2 * ((b & x).count_ones() % 2) as u8) % 4)
                    .collect::<Vec<u8>>(),
            );
        }
    }
    let dict = DictionaryMatrix::from_phase_columns(DictionaryKind::Mub { n }, dim, Field::Complex, columns);
    if dim <= AUTO_PHASE_CHECK_MAX_N {
        let report = dict.check_mub_phases()?;
        if !report.holds() {
            log::warn!(
                "mub({n}): {} cross-basis inner products fall outside the expected root set",
                report.violations
            );
        }
    }
    Ok(dict)
}

/// Result of checking cross-basis inner products of a MUB dictionary.
#[derive(Debug, Clone, Serialize)]
pub struct MubPhaseReport {
    pub n: u32,
    /// 8 for odd `n`, 4 for even `n`.
    pub roots: u32,
    pub checked_pairs: u64,
    /// Pairs whose magnitude is not `1/sqrt(N)` or whose phase is not a
    /// multiple of `2*pi/roots`.
    pub violations: u64,
    pub max_magnitude_error: f64,
}

impl MubPhaseReport {
    pub fn holds(&self) -> bool {
        self.violations == 0
    }
}

impl DictionaryMatrix {
    /// Checks every cross-basis inner product against
    /// `{e^(j 2 pi m / roots) / sqrt(N)}` (8 roots for odd `n`, 4 for even).
    /// Within-basis pairs must be orthogonal and count as violations otherwise.
    pub fn check_mub_phases(&self) -> Result<MubPhaseReport> {
        let n = match self.kind() {
            DictionaryKind::Mub { n } => n,
            _ => return Err(Error::invalid("phase check applies to MUB dictionaries only")),
        };
        let dim = self.rows();
        let bases = self.cols() / dim;
        let roots = if n % 2 == 1 { 8 } else { 4 };
        let scale = (dim as f64).sqrt();
        let mut report = MubPhaseReport {
            n,
            roots,
            checked_pairs: 0,
            violations: 0,
            max_magnitude_error: 0.0,
        };
        for p in 0..bases * dim {
            for q in p + 1..bases * dim {
                let v = self.inner(p, q);
                report.checked_pairs += 1;
                if p / dim == q / dim {
                    if v.norm() > 1e-12 {
                        report.violations += 1;
                    }
                    continue;
                }
                let w = v * scale;
                report.max_magnitude_error = report.max_magnitude_error.max((w.norm() - 1.0).abs());
                let step = std::f64::consts::TAU / f64::from(roots);
                let m = (w.arg() / step).round();
                let nearest = Complex64::from_polar(1.0, m * step);
                if (w - nearest).norm() > 1e-12 {
                    report.violations += 1;
                }
            }
        }
        Ok(report)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn each_basis_is_unitary_with_quarter_phase_entries() {
        for n in 2..=4 {
            let d = build_mub_dictionary(n).unwrap();
            let dim = d.rows();
            assert_eq!(d.cols(), dim * dim);
            for a in 0..dim {
                for i in 0..dim {
                    for j in 0..dim {
                        let v = d.inner(a * dim + i, a * dim + j);
                        let want = if i == j { 1.0 } else { 0.0 };
                        assert!((v - Complex64::new(want, 0.0)).norm() < 1e-12);
                    }
                }
            }
            let alphabet = d.entry_alphabet();
            assert_eq!(alphabet.len(), 4);
            for v in alphabet {
                assert!((v.norm() * (dim as f64).sqrt() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn root_sets_for_small_dimensions() {
        for n in 2..=5 {
            let report = build_mub_dictionary(n).unwrap().check_mub_phases().unwrap();
            assert!(report.holds(), "{report:?}");
            assert_eq!(report.roots, if n % 2 == 1 { 8 } else { 4 });
        }
    }

    #[test]
    fn rejects_unsupported_sizes() {
        assert!(build_mub_dictionary(1).is_err());
        assert!(build_mub_dictionary(10).is_err());
        let gold = super::super::build_gold_dictionary(3).unwrap();
        assert!(gold.check_mub_phases().is_err());
    }
}
