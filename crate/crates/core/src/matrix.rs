use crate::error::{Error, Result};
use crate::field::FieldElement;

/// Dense row-major matrix over the field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<FieldElement>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::LengthMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![FieldElement::ZERO; rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> FieldElement) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_i64(rows: usize, cols: usize, vals: &[i64]) -> Result<Self> {
        Self::new(rows, cols, vals.iter().map(|&v| FieldElement::from_i64(v)).collect())
    }

    /// A column vector.
    pub fn column(v: Vec<FieldElement>) -> Self {
        Self {
            rows: v.len(),
            cols: 1,
            data: v,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        self.data[i * self.cols + j] = v;
    }

    pub fn as_slice(&self) -> &[FieldElement] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [FieldElement] {
        &mut self.data
    }

    pub fn into_vec(self) -> Vec<FieldElement> {
        self.data
    }

    pub fn is_pow2_shaped(&self) -> bool {
        self.rows.is_power_of_two() && self.cols.is_power_of_two()
    }

    /// Zero-pads both dimensions up to the next power of two.
    pub fn pad_to_pow2(&self) -> Self {
        let (r, c) = (self.rows.next_power_of_two(), self.cols.next_power_of_two());
        if (r, c) == (self.rows, self.cols) {
            return self.clone();
        }
        Self::from_fn(r, c, |i, j| {
            if i < self.rows && j < self.cols {
                self.get(i, j)
            } else {
                FieldElement::ZERO
            }
        })
    }

    pub fn map(&self, f: impl FnMut(&FieldElement) -> FieldElement) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map(&self, f: impl FnMut(&FieldElement) -> Result<FieldElement>) -> Result<Self> {
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Result<_>>()?,
        })
    }

    /// Field matrix product.
    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let row = &self.data[i * self.cols..(i + 1) * self.cols];
            let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for (l, a) in row.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let brow = &other.data[l * other.cols..(l + 1) * other.cols];
                for (d, b) in dst.iter_mut().zip(brow) {
                    *d += a * b;
                }
            }
        }
        Ok(out)
    }
}
