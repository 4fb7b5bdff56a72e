//! Multilinear extensions over the Boolean hypercube.
//!
//! A table stores the `2^v` hypercube evaluations of a function. Index bit
//! order is big-endian: variable `x_1` is the most significant bit. For a
//! matrix, the index is `row bits || column bits`, which is row-major order.

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::matrix::Matrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MleTable {
    num_vars: usize,
    evals: Vec<FieldElement>,
}

impl MleTable {
    pub fn new(evals: Vec<FieldElement>) -> Result<Self> {
        if !evals.len().is_power_of_two() {
            return Err(Error::NotPowerOfTwo(evals.len()));
        }
        Ok(Self {
            num_vars: evals.len().trailing_zeros() as usize,
            evals,
        })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn len(&self) -> usize {
        self.evals.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn evals(&self) -> &[FieldElement] {
        &self.evals
    }

    pub fn into_evals(self) -> Vec<FieldElement> {
        self.evals
    }

    pub fn evaluate(&self, point: &[FieldElement]) -> Result<FieldElement> {
        mle_eval(self, point)
    }

    /// Fixes the leading variables to `prefix`, leaving a table over the rest.
    pub fn fix_prefix(&self, prefix: &[FieldElement]) -> Result<MleTable> {
        if prefix.len() > self.num_vars {
            return Err(Error::LengthMismatch {
                expected: self.num_vars,
                found: prefix.len(),
            });
        }
        let mut t = self.evals.clone();
        for r in prefix {
            fold_first_var(&mut t, r);
        }
        MleTable::new(t)
    }

    /// Fixes the trailing variables to `suffix`, leaving a table over the rest.
    pub fn fix_suffix(&self, suffix: &[FieldElement]) -> Result<MleTable> {
        if suffix.len() > self.num_vars {
            return Err(Error::LengthMismatch {
                expected: self.num_vars,
                found: suffix.len(),
            });
        }
        let weights = chi_vector(suffix);
        let out = self
            .evals
            .chunks(weights.len())
            .map(|row| row.iter().zip(&weights).map(|(a, w)| a * w).sum())
            .collect();
        MleTable::new(out)
    }
}

/// Binds the most significant variable to `r` in place, halving the table:
/// `t'[i] = t[i] + r * (t[i + half] - t[i])`.
pub fn fold_first_var(t: &mut Vec<FieldElement>, r: &FieldElement) {
    let half = t.len() / 2;
    for i in 0..half {
        let lo = t[i];
        t[i] = lo + r * &(t[i + half] - lo);
    }
    t.truncate(half);
}

/// `sum_y e(y) * prod_i (z_i y_i + (1 - z_i)(1 - y_i))` in `O(2^v)`.
pub fn mle_eval(tbl: &MleTable, z: &[FieldElement]) -> Result<FieldElement> {
    if z.len() != tbl.num_vars {
        return Err(Error::LengthMismatch {
            expected: tbl.num_vars,
            found: z.len(),
        });
    }
    let mut t = tbl.evals.clone();
    for r in z {
        fold_first_var(&mut t, r);
    }
    Ok(t[0])
}

fn fill_chi(z: &[FieldElement], muls: &mut usize) -> Vec<FieldElement> {
    let mut out = Vec::with_capacity(1 << z.len());
    out.push(FieldElement::ONE);
    for zj in z {
        let n = out.len();
        out.resize(2 * n, FieldElement::ZERO);
        // walk backwards so entry i is read before slots 2i, 2i+1 are written
        for i in (0..n).rev() {
            let hi = out[i] * zj;
            *muls += 1;
            out[2 * i] = out[i] - hi;
            out[2 * i + 1] = hi;
        }
    }
    out
}

/// Lagrange basis evaluations `chi_i(z)` for every `i` in `{0,1}^v`.
pub fn chi_vector(z: &[FieldElement]) -> Vec<FieldElement> {
    fill_chi(z, &mut 0)
}

/// The identity-matrix MLE: `prod_i (s_i r_i + (1 - s_i)(1 - r_i))`.
pub fn eq_eval(s: &[FieldElement], r: &[FieldElement]) -> Result<FieldElement> {
    if s.len() != r.len() {
        return Err(Error::LengthMismatch {
            expected: s.len(),
            found: r.len(),
        });
    }
    Ok(s.iter()
        .zip(r)
        .map(|(a, b)| {
            let ab = a * b;
            ab + ab + FieldElement::ONE - a - b
        })
        .product())
}

/// Hypercube table of a matrix with power-of-two dimensions.
pub fn matrix_to_mle(m: &Matrix) -> Result<MleTable> {
    for d in [m.rows(), m.cols()] {
        if !d.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(d));
        }
    }
    MleTable::new(m.as_slice().to_vec())
}
