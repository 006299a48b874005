use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::code::Code;
use crate::encoding::SparseCodeword;
use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Relative size below which a new column counts as linearly dependent on
/// the support already chosen.
const RANK_TOL: f64 = 1e-10;

/// Orthogonal matching pursuit: `K` rounds of picking the column with the
/// largest `|<r, a_i>|` (honouring the scheme's discard rule), each followed
/// by a least-squares refit on the whole support. Coefficients are
/// quantized to the nearest symbol of each column's alphabet only at the end.
pub fn omp_decode(y: &[Complex64], code: &Code) -> Result<SparseCodeword> {
    let dict = code.dict();
    let (n, l) = (dict.rows(), dict.cols());
    if y.len() != n {
        return Err(Error::invalid(format!("observation has {} samples, expected {n}", y.len())));
    }
    let mut c0 = vec![ZERO; l];
    dict.correlate(y, &mut c0);
    let mut c = c0.clone();
    let mut discarded = vec![false; l];
    for d in discarded.iter_mut().skip(code.scheme().candidate_columns(l)) {
        *d = true;
    }

    let mut support: Vec<usize> = Vec::with_capacity(code.k());
    // Modified Gram-Schmidt factors of the support columns: A_S = Q R.
    let mut q: Vec<Vec<Complex64>> = Vec::new();
    let mut r: Vec<Vec<Complex64>> = Vec::new();
    let mut qty: Vec<Complex64> = Vec::new();
    let mut deficient = false;
    let mut x: Vec<Complex64> = Vec::new();

    for _ in 0..code.k() {
        let mut pick: Option<(usize, f64)> = None;
        for (i, ci) in c.iter().enumerate() {
            if !discarded[i] && pick.is_none_or(|(_, v)| ci.norm_sqr() > v) {
                pick = Some((i, ci.norm_sqr()));
            }
        }
        let Some((col, _)) = pick else { break };
        support.push(col);
        for d in &mut discarded[code.scheme().discard_range(col)] {
            *d = true;
        }

        if !deficient {
            let mut v = dict.column(col);
            let mut rcol = vec![ZERO; q.len() + 1];
            for (j, qj) in q.iter().enumerate() {
                let proj: Complex64 = qj.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                rcol[j] = proj;
                for (vi, qi) in v.iter_mut().zip(qj) {
                    *vi -= proj * qi;
                }
            }
            let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm < RANK_TOL {
                deficient = true;
            } else {
                v.iter_mut().for_each(|z| *z /= norm);
                rcol[q.len()] = Complex64::new(norm, 0.0);
                qty.push(v.iter().zip(y).map(|(a, b)| a.conj() * b).sum());
                q.push(v);
                r.push(rcol);
            }
        }
        x = if deficient {
            pinv_solve(code, &support, y)
        } else {
            back_substitute(&r, &qty)
        };

        // Correlations of the new residual y - A_S x.
        match code.gram() {
            Some(g) => {
                c.copy_from_slice(&c0);
                for (&s, &xs) in support.iter().zip(&x) {
                    g.subtract_scaled_row(s, xs, &mut c);
                }
            }
            None => {
                let mut res = y.to_vec();
                for (&s, &xs) in support.iter().zip(&x) {
                    dict.add_scaled_column(s, -xs, &mut res);
                }
                dict.correlate(&res, &mut c);
            }
        }
    }

    let entries = support
        .iter()
        .zip(&x)
        .map(|(&col, &coef)| {
            let alphabet = code.constellation_of(col).expect("support lies in a sub-block");
            let m = alphabet.nearest(coef);
            (col, m, alphabet.symbol(m))
        })
        .collect();
    SparseCodeword::new(entries)
}

/// Solves `R x = Q^H y` for upper-triangular `R` stored by columns.
fn back_substitute(r: &[Vec<Complex64>], qty: &[Complex64]) -> Vec<Complex64> {
    let k = qty.len();
    let mut x = vec![ZERO; k];
    for i in (0..k).rev() {
        let mut s = qty[i];
        for j in i + 1..k {
            s -= r[j][i] * x[j];
        }
        x[i] = s / r[i][i];
    }
    x
}

/// Minimum-norm least squares through the SVD pseudo-inverse.
fn pinv_solve(code: &Code, support: &[usize], y: &[Complex64]) -> Vec<Complex64> {
    let dict = code.dict();
    let a = DMatrix::from_fn(dict.rows(), support.len(), |i, j| dict.entry(i, support[j]));
    let pinv = a
        .pseudo_inverse(RANK_TOL)
        .expect("tolerance is non-negative");
    (pinv * DVector::from_column_slice(y)).iter().copied().collect()
}
